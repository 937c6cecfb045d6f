#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "bkev/error.hpp"
#include "bkev/solvers.hpp"
#include "spectral_ops.hpp"

namespace bkev {

namespace {

std::array<Complex, kContourPoints> contour_offsets() {
  std::array<Complex, kContourPoints> r{};
  for (int j = 0; j < kContourPoints; ++j)
    r[j] = std::polar(1.0, 2.0 * std::numbers::pi * (j + 0.5) / kContourPoints);
  return r;
}

const std::array<Complex, kContourPoints>& offsets() {
  static const auto r = contour_offsets();
  return r;
}

// {q, f1, f2, f3} divided by h, for z = h*L, by contour averaging.
std::array<double, 4> contour_phis(double z) {
  Complex q = 0, f1 = 0, f2 = 0, f3 = 0;
  for (const Complex& r : offsets()) {
    const Complex w = z + r;
    const Complex ew = std::exp(w);
    const Complex w3 = w * w * w;
    q += (std::exp(w / 2.0) - 1.0) / w;
    f1 += (-4.0 - w + ew * (4.0 - 3.0 * w + w * w)) / w3;
    f2 += (2.0 + w + ew * (-2.0 + w)) / w3;
    f3 += (-4.0 - 3.0 * w - w * w + ew * (4.0 - w)) / w3;
  }
  const double m = kContourPoints;
  return {q.real() / m, f1.real() / m, f2.real() / m, f3.real() / m};
}

}  // namespace

Complex phi1_contour(Complex z) {
  Complex acc = 0;
  for (const Complex& r : offsets()) {
    const Complex w = z + r;
    acc += (std::exp(w) - 1.0) / w;
  }
  return acc / static_cast<double>(kContourPoints);
}

EtdrkCoefficients etdrk_coefficients(std::span<const double> symbol, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error("etdrk_coefficients: dt must be positive");
  EtdrkCoefficients c;
  const std::size_t n = symbol.size();
  c.exp_full.resize(n);
  c.exp_half.resize(n);
  c.q.resize(n);
  c.f1.resize(n);
  c.f2.resize(n);
  c.f3.resize(n);
  // Symbols take few distinct values (functions of |k|²), so memoize the contour sums.
  std::unordered_map<double, std::array<double, 4>> memo;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = symbol[i];
    if (!std::isfinite(s)) throw Error("etdrk_coefficients: non-finite symbol");
    const double z = dt * s;
    auto it = memo.find(z);
    if (it == memo.end()) it = memo.emplace(z, contour_phis(z)).first;
    const auto& p = it->second;
    c.exp_full[i] = std::exp(z);
    c.exp_half[i] = std::exp(z / 2.0);
    c.q[i] = dt * p[0];
    c.f1[i] = dt * p[1];
    c.f2[i] = dt * p[2];
    c.f3[i] = dt * p[3];
  }
  return c;
}

EtdrkStepper::EtdrkStepper(PdeInstance pde, const PeriodicGrid& grid, double dt)
    : pde_(std::move(pde)), grid_(grid), dt_(dt) {
  eval_ = std::make_unique<detail::NonlinearEvaluator>(pde_, grid_);
  for (const auto& sym : linear_symbol(pde_, grid_)) coeffs_.push_back(etdrk_coefficients(sym, dt_));
  const int channels = channel_count(pde_);
  for (int i = 0; i < 7; ++i)
    work_.push_back(Spectrum{grid_, channels, std::vector<Complex>(channels * grid_.spectral_size())});
}

EtdrkStepper::~EtdrkStepper() = default;
EtdrkStepper::EtdrkStepper(EtdrkStepper&&) noexcept = default;
EtdrkStepper& EtdrkStepper::operator=(EtdrkStepper&&) noexcept = default;

void EtdrkStepper::step(Spectrum& v) {
  Spectrum& nv = work_[0];
  Spectrum& na = work_[1];
  Spectrum& nb = work_[2];
  Spectrum& nc = work_[3];
  Spectrum& a = work_[4];
  Spectrum& b = work_[5];
  Spectrum& c = work_[6];
  const int channels = v.channels;
  const std::size_t ns = grid_.spectral_size();

  eval_->evaluate(v, nv);
  for (int ch = 0; ch < channels; ++ch) {
    const auto& k = coeffs_[ch];
    auto vc = v.channel(ch), nvc = nv.channel(ch), ac = a.channel(ch);
    for (std::size_t i = 0; i < ns; ++i) ac[i] = k.exp_half[i] * vc[i] + k.q[i] * nvc[i];
  }
  eval_->evaluate(a, na);
  for (int ch = 0; ch < channels; ++ch) {
    const auto& k = coeffs_[ch];
    auto vc = v.channel(ch), nac = na.channel(ch), bc = b.channel(ch);
    for (std::size_t i = 0; i < ns; ++i) bc[i] = k.exp_half[i] * vc[i] + k.q[i] * nac[i];
  }
  eval_->evaluate(b, nb);
  for (int ch = 0; ch < channels; ++ch) {
    const auto& k = coeffs_[ch];
    auto ac = a.channel(ch), nvc = nv.channel(ch), nbc = nb.channel(ch), cc = c.channel(ch);
    for (std::size_t i = 0; i < ns; ++i) cc[i] = k.exp_half[i] * ac[i] + k.q[i] * (2.0 * nbc[i] - nvc[i]);
  }
  eval_->evaluate(c, nc);
  for (int ch = 0; ch < channels; ++ch) {
    const auto& k = coeffs_[ch];
    auto vc = v.channel(ch), nvc = nv.channel(ch), nac = na.channel(ch), nbc = nb.channel(ch), ncc = nc.channel(ch);
    for (std::size_t i = 0; i < ns; ++i)
      vc[i] = k.exp_full[i] * vc[i] + k.f1[i] * nvc[i] + 2.0 * k.f2[i] * (nac[i] + nbc[i]) + k.f3[i] * ncc[i];
  }
}

namespace {

bool all_finite(const Spectrum& s) {
  return std::ranges::all_of(s.coeffs, [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

}  // namespace

Trajectory simulate(const PdeInstance& pde, const SolverConfig& config, const Field& ic, std::uint64_t seed) {
  validate(pde);
  config.validate();
  const PeriodicGrid& grid = ic.grid();
  if (grid.n() != config.resolution) throw Error("simulate: initial condition resolution does not match config");
  if (grid.dim() != dimension(pde) || ic.channels() != channel_count(pde))
    throw Error("simulate: initial condition does not match the PDE dimension/channels");
  if (grid.edge_length() != edge_length(pde)) throw Error("simulate: initial condition domain does not match the PDE");

  const long steps = config.step_count();
  const long stride = steps / config.n_frames;
  EtdrkStepper stepper(pde, grid, config.dt);
  Spectrum state = forward(ic);

  std::vector<Field> frames;
  std::vector<double> times;
  if (config.include_initial) {
    frames.push_back(inverse(downsample_spectrum(state, config.store_resolution)));
    times.push_back(0.0);
  }
  for (long s = 1; s <= steps; ++s) {
    stepper.step(state);
    const double t = static_cast<double>(s) * config.dt;
    if (!all_finite(state)) throw BlowUpError(s, t);
    if (s % stride == 0) {
      frames.push_back(inverse(downsample_spectrum(state, config.store_resolution)));
      times.push_back(t);
    }
  }
  return Trajectory(pde_id(pde), std::move(frames), std::move(times), seed);
}

}  // namespace bkev
