#include "bkev/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "bkev/error.hpp"
#include "bkev/fourier.hpp"

namespace bkev {

PeriodicGrid::PeriodicGrid(int dim, int n, double edge_length) : dim_(dim), n_(n), edge_length_(edge_length) {
  if (dim < 1 || dim > 3) throw Error("PeriodicGrid: dim must be 1, 2 or 3, got " + std::to_string(dim));
  if (n < 4 || n % 2 != 0) throw Error("PeriodicGrid: n must be even and >= 4, got " + std::to_string(n));
  if (!(edge_length > 0.0) || !std::isfinite(edge_length)) throw Error("PeriodicGrid: edge length must be positive");
}

std::size_t PeriodicGrid::size() const noexcept {
  std::size_t s = 1;
  for (int a = 0; a < dim_; ++a) s *= static_cast<std::size_t>(n_);
  return s;
}

std::size_t PeriodicGrid::spectral_size() const noexcept {
  std::size_t s = static_cast<std::size_t>(n_ / 2 + 1);
  for (int a = 0; a + 1 < dim_; ++a) s *= static_cast<std::size_t>(n_);
  return s;
}

std::vector<std::vector<double>> wavenumbers(const PeriodicGrid& grid) {
  const double base = 2.0 * std::numbers::pi / grid.edge_length();
  const int n = grid.n();
  std::vector<std::vector<double>> axes;
  for (int a = 0; a < grid.dim(); ++a) {
    std::vector<double> k(static_cast<std::size_t>(grid.spectral_extent(a)));
    const bool last = a == grid.dim() - 1;
    for (int i = 0; i < static_cast<int>(k.size()); ++i) k[i] = base * (last ? i : signed_frequency(i, n));
    axes.push_back(std::move(k));
  }
  return axes;
}

Field::Field(PeriodicGrid grid, int channels)
    : grid_(grid), channels_(channels), values_(static_cast<std::size_t>(channels) * grid.size(), 0.0) {
  if (channels < 1) throw Error("Field: channels must be positive");
}

Field::Field(PeriodicGrid grid, int channels, std::vector<double> values)
    : grid_(grid), channels_(channels), values_(std::move(values)) {
  if (channels < 1) throw Error("Field: channels must be positive");
  if (values_.size() != static_cast<std::size_t>(channels) * grid_.size())
    throw Error("Field: expected " + std::to_string(channels * grid_.size()) + " values, got " +
                std::to_string(values_.size()));
  if (!std::ranges::all_of(values_, [](double v) { return std::isfinite(v); }))
    throw Error("Field: non-finite value");
}

Spectrum forward(const Field& field) {
  const auto& grid = field.grid();
  auto fft = FourierTransform::for_grid(grid);
  Spectrum out{grid, field.channels(), std::vector<Complex>(field.channels() * grid.spectral_size())};
  for (int c = 0; c < field.channels(); ++c) fft->forward(field.channel(c), out.channel(c));
  return out;
}

Field inverse(const Spectrum& spectrum) {
  const auto& grid = spectrum.grid;
  if (spectrum.coeffs.size() != spectrum.channels * grid.spectral_size()) throw Error("inverse: spectrum size mismatch");
  auto fft = FourierTransform::for_grid(grid);
  std::vector<double> values(spectrum.channels * grid.size());
  for (int c = 0; c < spectrum.channels; ++c)
    fft->inverse(spectrum.channel(c), std::span<double>(values).subspan(c * grid.size(), grid.size()));
  return Field(grid, spectrum.channels, std::move(values));
}

namespace {

// Index on a source full axis of length ns for target index it on a full axis
// of length nt < ns; -1 marks the target Nyquist.
int map_full_axis(int it, int nt, int ns) {
  const int m = signed_frequency(it, nt);
  if (m == -nt / 2) return -1;
  return m >= 0 ? m : m + ns;
}

}  // namespace

Spectrum downsample_spectrum(const Spectrum& spectrum, int target_n) {
  const auto& src = spectrum.grid;
  const int ns = src.n();
  if (target_n > ns) throw Error("spectral_downsample: target " + std::to_string(target_n) + " exceeds source " +
                                 std::to_string(ns));
  const PeriodicGrid dst = src.with_resolution(target_n);  // validates evenness and >= 4
  if (target_n == ns) return spectrum;

  const int nt = target_n;
  const int dim = src.dim();
  const int half_t = nt / 2 + 1;
  const int half_s = ns / 2 + 1;
  const double scale = std::pow(static_cast<double>(nt) / ns, dim);

  Spectrum out{dst, spectrum.channels, std::vector<Complex>(spectrum.channels * dst.spectral_size())};
  const int e0 = dim >= 3 ? nt : 1;
  const int e1 = dim >= 2 ? nt : 1;
  for (int c = 0; c < spectrum.channels; ++c) {
    auto in = spectrum.channel(c);
    auto o = out.channel(c);
    std::size_t t = 0;
    for (int i0 = 0; i0 < e0; ++i0) {
      const int s0 = dim >= 3 ? map_full_axis(i0, nt, ns) : 0;
      for (int i1 = 0; i1 < e1; ++i1) {
        const int s1 = dim >= 2 ? map_full_axis(i1, nt, ns) : 0;
        for (int j = 0; j < half_t; ++j, ++t) {
          if (s0 < 0 || s1 < 0 || j == nt / 2) {
            o[t] = 0.0;
            continue;
          }
          const std::size_t s = (static_cast<std::size_t>(s0) * (dim >= 2 ? ns : 1) + s1) * half_s + j;
          o[t] = in[s] * scale;
        }
      }
    }
  }
  return out;
}

Field spectral_downsample(const Field& field, int target_n) {
  if (target_n > field.grid().n())
    throw Error("spectral_downsample: target " + std::to_string(target_n) + " exceeds source " +
                std::to_string(field.grid().n()));
  if (target_n == field.grid().n()) return field;
  return inverse(downsample_spectrum(forward(field), target_n));
}

double energy(const Field& field) {
  double e = 0.0;
  for (double v : field.values()) e += v * v;
  return e;
}

double spectral_energy(const Spectrum& spectrum) {
  const int n = spectrum.grid.n();
  const int half = n / 2 + 1;
  double e = 0.0;
  for (std::size_t i = 0; i < spectrum.coeffs.size(); ++i) {
    const int j = static_cast<int>(i % half);
    const double w = (j == 0 || j == n / 2) ? 1.0 : 2.0;
    e += w * std::norm(spectrum.coeffs[i]);
  }
  return e / static_cast<double>(spectrum.grid.size());
}

Trajectory::Trajectory(std::string pde_id, std::vector<Field> frames, std::vector<double> times, std::uint64_t seed)
    : pde_id_(std::move(pde_id)), frames_(std::move(frames)), times_(std::move(times)), seed_(seed) {
  if (frames_.empty()) throw Error("Trajectory: no frames");
  if (frames_.size() != times_.size()) throw Error("Trajectory: frame/time count mismatch");
  for (const auto& f : frames_)
    if (!(f.grid() == frames_.front().grid()) || f.channels() != frames_.front().channels())
      throw Error("Trajectory: frames do not share grid and channels");
  if (!(times_.front() >= 0.0)) throw Error("Trajectory: times must start at >= 0");
  for (std::size_t i = 1; i < times_.size(); ++i)
    if (!(times_[i] > times_[i - 1])) throw Error("Trajectory: times must be strictly increasing");
}

Trajectory Trajectory::downsampled(int target_n) const {
  std::vector<Field> frames;
  frames.reserve(frames_.size());
  for (const auto& f : frames_) frames.push_back(spectral_downsample(f, target_n));
  return Trajectory(pde_id_, std::move(frames), times_, seed_);
}

}  // namespace bkev
