#include "bkev/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bkev/error.hpp"
#include "bkev/fourier.hpp"
#include "spectral_ops.hpp"

namespace bkev {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
}  // namespace

int dimension(const PdeInstance& pde) {
  return std::visit(overloaded{[](const KuramotoSivashinsky& p) { return p.dim; },
                               [](const NavierStokes2D&) { return 2; }, [](const GrayScott& p) { return p.dim; }},
                    pde);
}

int channel_count(const PdeInstance& pde) { return std::holds_alternative<GrayScott>(pde) ? 2 : 1; }

double edge_length(const PdeInstance& pde) {
  return std::visit([](const auto& p) { return p.edge_length; }, pde);
}

std::string pde_id(const PdeInstance& pde) {
  return std::visit(overloaded{[](const KuramotoSivashinsky& p) { return "KS" + std::to_string(p.dim) + "D"; },
                               [](const NavierStokes2D&) { return std::string("NS"); },
                               [](const GrayScott&) { return std::string("GS"); }},
                    pde);
}

void validate(const PdeInstance& pde) {
  auto finite_positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  std::visit(overloaded{
                 [&](const KuramotoSivashinsky& p) {
                   if (p.dim < 1 || p.dim > 3) throw Error("Kuramoto-Sivashinsky: dim must be 1, 2 or 3");
                   if (!finite_positive(p.edge_length)) throw Error("Kuramoto-Sivashinsky: L must be positive");
                 },
                 [&](const NavierStokes2D& p) {
                   if (!finite_positive(p.nu)) throw Error("Navier-Stokes: nu must be positive");
                   if (!finite_positive(p.edge_length)) throw Error("Navier-Stokes: L must be positive");
                   if (p.forcing && (p.forcing->grid().dim() != 2 || p.forcing->channels() != 1 ||
                                     p.forcing->grid().edge_length() != p.edge_length))
                     throw Error("Navier-Stokes: forcing must be a 1-channel 2D field on the same domain");
                 },
                 [&](const GrayScott& p) {
                   if (p.dim < 1 || p.dim > 3) throw Error("Gray-Scott: dim must be 1, 2 or 3");
                   if (!std::isfinite(p.feed) || !std::isfinite(p.kill)) throw Error("Gray-Scott: F, k must be finite");
                   if (!finite_positive(p.diffusivity_u) || !finite_positive(p.diffusivity_v))
                     throw Error("Gray-Scott: diffusivities must be positive");
                   if (!finite_positive(p.edge_length)) throw Error("Gray-Scott: L must be positive");
                 },
             },
             pde);
}

PeriodicGrid grid_for(const PdeInstance& pde, int n) { return PeriodicGrid(dimension(pde), n, edge_length(pde)); }

long SolverConfig::step_count() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error("SolverConfig: dt must be positive");
  const double ratio = horizon / dt;
  const long steps = std::lround(ratio);
  if (steps < 1 || std::abs(ratio - static_cast<double>(steps)) > 1e-9 * ratio)
    throw Error("SolverConfig: horizon " + std::to_string(horizon) + " is not an integer multiple of dt " +
                std::to_string(dt));
  return steps;
}

void SolverConfig::validate() const {
  if (!(dt > 0.0)) throw Error("SolverConfig: dt must be positive");
  if (!(horizon >= dt)) throw Error("SolverConfig: horizon must be >= dt");
  const long steps = step_count();
  if (n_frames < 1 || n_frames > steps) throw Error("SolverConfig: n_frames must be in [1, T/dt]");
  if (steps % n_frames != 0)
    throw Error("SolverConfig: " + std::to_string(n_frames) + " frames do not divide " + std::to_string(steps) +
                " steps");
  if (store_resolution > resolution) throw Error("SolverConfig: store_resolution exceeds resolution");
  PeriodicGrid(1, resolution, 1.0);
  PeriodicGrid(1, store_resolution, 1.0);
}

CanonicalSpec canonical_spec(Benchmark benchmark, int ks_dim) {
  switch (benchmark) {
    case Benchmark::NavierStokes:
      return {benchmark, NavierStokes2D{}, SolverConfig{256, 1e-3, 1.0, 10, 64, false}};
    case Benchmark::KuramotoSivashinsky:
      return {benchmark, KuramotoSivashinsky{ks_dim, 50.0}, SolverConfig{256, 0.1, 10.0, 50, 64, false}};
    case Benchmark::GrayScott:
      return {benchmark, GrayScott{}, SolverConfig{256, 0.5, 2000.0, 200, 64, false}};
  }
  throw Error("canonical_spec: unknown benchmark");
}

Benchmark parse_benchmark(const std::string& id) {
  std::string s;
  for (char c : id) s += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (s == "NS" || s == "NAVIER-STOKES" || s == "NAVIERSTOKES") return Benchmark::NavierStokes;
  if (s == "KS" || s == "KURAMOTO-SIVASHINSKY" || s == "KURAMOTOSIVASHINSKY") return Benchmark::KuramotoSivashinsky;
  if (s == "GS" || s == "GRAY-SCOTT" || s == "GRAYSCOTT") return Benchmark::GrayScott;
  throw Error("unknown benchmark '" + id + "' (expected NS, KS or GS)");
}

std::string to_string(Benchmark benchmark) {
  switch (benchmark) {
    case Benchmark::NavierStokes: return "NS";
    case Benchmark::KuramotoSivashinsky: return "KS";
    case Benchmark::GrayScott: return "GS";
  }
  return "?";
}

std::vector<std::vector<double>> linear_symbol(const PdeInstance& pde, const PeriodicGrid& grid) {
  if (grid.dim() != dimension(pde)) throw Error("linear_symbol: grid dimension does not match the PDE");
  const auto geo = detail::SpectralGeometry::build(grid);
  const auto& k2 = geo.k2;
  std::vector<std::vector<double>> sym(channel_count(pde), std::vector<double>(k2.size()));
  std::visit(overloaded{
                 [&](const KuramotoSivashinsky&) {
                   for (std::size_t i = 0; i < k2.size(); ++i) sym[0][i] = k2[i] - k2[i] * k2[i];
                 },
                 [&](const NavierStokes2D& p) {
                   for (std::size_t i = 0; i < k2.size(); ++i) sym[0][i] = -p.nu * k2[i];
                 },
                 [&](const GrayScott& p) {
                   for (std::size_t i = 0; i < k2.size(); ++i) {
                     sym[0][i] = -p.diffusivity_u * k2[i] - p.feed;
                     sym[1][i] = -p.diffusivity_v * k2[i] - (p.feed + p.kill);
                   }
                 },
             },
             pde);
  return sym;
}

std::vector<unsigned char> dealias_mask(const PeriodicGrid& grid) { return detail::SpectralGeometry::build(grid).mask; }

Spectrum nonlinear_spectrum(const PdeInstance& pde, const Spectrum& state) {
  detail::NonlinearEvaluator eval(pde, state.grid);
  Spectrum out{state.grid, state.channels, std::vector<Complex>(state.coeffs.size())};
  eval.evaluate(state, out);
  return out;
}

Field nonlinear_term(const PdeInstance& pde, const Field& state) { return inverse(nonlinear_spectrum(pde, forward(state))); }

Field full_rhs(const PdeInstance& pde, const Field& state) {
  Spectrum s = forward(state);
  Spectrum n = nonlinear_spectrum(pde, s);
  const auto sym = linear_symbol(pde, state.grid());
  for (int c = 0; c < s.channels; ++c) {
    auto sc = s.channel(c);
    auto nc = n.channel(c);
    for (std::size_t i = 0; i < sc.size(); ++i) nc[i] += sym[c][i] * sc[i];
  }
  return inverse(n);
}

namespace detail {

SpectralGeometry SpectralGeometry::build(const PeriodicGrid& grid) {
  SpectralGeometry g;
  const int dim = grid.dim();
  const int n = grid.n();
  const int half = n / 2 + 1;
  const double base = 2.0 * std::numbers::pi / grid.edge_length();
  const std::size_t size = grid.spectral_size();
  g.k2.resize(size);
  g.mask.resize(size);
  for (int a = 0; a < dim; ++a) g.deriv[a].resize(size);

  const int e0 = dim >= 3 ? n : 1;
  const int e1 = dim >= 2 ? n : 1;
  std::size_t idx = 0;
  for (int i0 = 0; i0 < e0; ++i0) {
    for (int i1 = 0; i1 < e1; ++i1) {
      for (int j = 0; j < half; ++j, ++idx) {
        int m[3] = {0, 0, 0};
        int axis = 0;
        if (dim >= 3) m[axis++] = signed_frequency(i0, n);
        if (dim >= 2) m[axis++] = signed_frequency(i1, n);
        m[axis] = j;
        double k2 = 0.0;
        bool keep = true;
        for (int a = 0; a < dim; ++a) {
          const double k = base * m[a];
          k2 += k * k;
          // Odd derivatives of the Nyquist mode are not representable on a real grid.
          g.deriv[a][idx] = std::abs(m[a]) == n / 2 ? 0.0 : k;
          if (3 * std::abs(m[a]) >= n) keep = false;
        }
        g.k2[idx] = k2;
        g.mask[idx] = keep ? 1 : 0;
      }
    }
  }
  return g;
}

NonlinearEvaluator::NonlinearEvaluator(const PdeInstance& pde, const PeriodicGrid& grid)
    : pde_(pde), grid_(grid), geo_(SpectralGeometry::build(grid)), fft_(FourierTransform::for_grid(grid)) {
  validate(pde_);
  if (grid.dim() != dimension(pde_)) throw Error("nonlinear term: grid dimension does not match the PDE");
  const std::size_t n = grid.size();
  const std::size_t ns = grid.spectral_size();
  for (auto& w : real_) w.resize(n);
  spec_.resize(ns);
  if (const auto* ns2d = std::get_if<NavierStokes2D>(&pde_); ns2d && ns2d->forcing) {
    const Field& f = *ns2d->forcing;
    if (f.grid().n() < grid.n()) throw Error("Navier-Stokes: forcing grid is coarser than the solver grid");
    forcing_ = downsample_spectrum(forward(f), grid.n()).coeffs;
  }
}

void NonlinearEvaluator::evaluate(const Spectrum& state, Spectrum& out) {
  if (!(state.grid == grid_) || state.channels != channel_count(pde_))
    throw Error("nonlinear term: state does not match the PDE channels/grid");
  const std::size_t ns = grid_.spectral_size();
  const std::size_t n = grid_.size();
  const int dim = grid_.dim();
  const Complex I(0.0, 1.0);

  auto derivative_to_real = [&](std::span<const Complex> in, int axis, std::vector<double>& dst) {
    for (std::size_t i = 0; i < ns; ++i) spec_[i] = I * geo_.deriv[axis][i] * in[i];
    fft_->inverse(spec_, dst);
  };
  auto project = [&](std::span<Complex> dst, double scale) {
    for (std::size_t i = 0; i < ns; ++i) dst[i] = geo_.mask[i] ? scale * dst[i] : Complex(0.0);
  };

  std::visit(overloaded{
                 [&](const KuramotoSivashinsky&) {
                   auto& sq = real_[3];
                   std::fill(sq.begin(), sq.end(), 0.0);
                   for (int a = 0; a < dim; ++a) {
                     derivative_to_real(state.channel(0), a, real_[a]);
                     for (std::size_t i = 0; i < n; ++i) sq[i] += real_[a][i] * real_[a][i];
                   }
                   fft_->forward(sq, out.channel(0));
                   project(out.channel(0), -0.5);
                 },
                 [&](const NavierStokes2D&) {
                   auto w = state.channel(0);
                   // streamfunction: -|k|² ψ = -ω
                   std::vector<Complex>& psi = psi_;
                   psi.resize(ns);
                   for (std::size_t i = 0; i < ns; ++i) psi[i] = geo_.k2[i] > 0.0 ? w[i] / geo_.k2[i] : Complex(0.0);
                   derivative_to_real(psi, 1, real_[0]);  // u = ∂y ψ
                   derivative_to_real(psi, 0, real_[1]);  // -v
                   derivative_to_real(w, 0, real_[2]);    // ∂x ω
                   derivative_to_real(w, 1, real_[3]);    // ∂y ω
                   auto& adv = real_[4];
                   for (std::size_t i = 0; i < n; ++i)
                     adv[i] = -(real_[0][i] * real_[2][i] - real_[1][i] * real_[3][i]);
                   auto o = out.channel(0);
                   fft_->forward(adv, o);
                   project(o, 1.0);
                   if (!forcing_.empty())
                     for (std::size_t i = 0; i < ns; ++i) o[i] += forcing_[i];
                 },
                 [&](const GrayScott& p) {
                   fft_->inverse(state.channel(0), real_[0]);
                   fft_->inverse(state.channel(1), real_[1]);
                   auto& nu = real_[2];
                   auto& nv = real_[3];
                   for (std::size_t i = 0; i < n; ++i) {
                     const double uvv = real_[0][i] * real_[1][i] * real_[1][i];
                     nu[i] = -uvv + p.feed;
                     nv[i] = uvv;
                   }
                   fft_->forward(nu, out.channel(0));
                   fft_->forward(nv, out.channel(1));
                   project(out.channel(0), 1.0);
                   project(out.channel(1), 1.0);
                 },
             },
             pde_);
}

}  // namespace detail

}  // namespace bkev
