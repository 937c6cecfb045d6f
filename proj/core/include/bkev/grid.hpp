#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bkev {

using Complex = std::complex<double>;

/// Periodic domain [0, L)^dim sampled with n points per axis.
class PeriodicGrid {
 public:
  /// Throws bkev::Error unless dim in {1,2,3}, n >= 4 and even, L > 0.
  PeriodicGrid(int dim, int n, double edge_length);

  int dim() const noexcept { return dim_; }
  int n() const noexcept { return n_; }
  double edge_length() const noexcept { return edge_length_; }
  double spacing() const noexcept { return edge_length_ / n_; }

  /// Number of real samples, n^dim.
  std::size_t size() const noexcept;
  /// Number of half-spectrum coefficients, n^(dim-1) * (n/2 + 1).
  std::size_t spectral_size() const noexcept;
  /// Length of spectral axis `axis`: n for leading axes, n/2+1 for the last.
  int spectral_extent(int axis) const noexcept { return axis == dim_ - 1 ? n_ / 2 + 1 : n_; }

  /// Same dimension and edge length, different resolution.
  PeriodicGrid with_resolution(int n) const { return PeriodicGrid(dim_, n, edge_length_); }

  friend bool operator==(const PeriodicGrid&, const PeriodicGrid&) = default;

 private:
  int dim_;
  int n_;
  double edge_length_;
};

/// Signed integer frequency of index `i` on a full axis of length n
/// (0, 1, ..., n/2-1, -n/2, ..., -1).
constexpr int signed_frequency(int i, int n) noexcept { return i < n / 2 ? i : i - n; }

/// Angular wavenumbers 2*pi*m/L per axis in transform ordering. Leading axes
/// have n entries; the last (real-transform) axis has n/2+1 entries m = 0..n/2.
std::vector<std::vector<double>> wavenumbers(const PeriodicGrid& grid);

/// Real multi-channel samples on a grid; channel-major, row-major within a channel.
class Field {
 public:
  /// Zero-initialized field.
  Field(PeriodicGrid grid, int channels);
  /// Throws on size mismatch or any non-finite value.
  Field(PeriodicGrid grid, int channels, std::vector<double> values);

  const PeriodicGrid& grid() const noexcept { return grid_; }
  int channels() const noexcept { return channels_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> channel(int c) const noexcept {
    return std::span<const double>(values_).subspan(static_cast<std::size_t>(c) * grid_.size(), grid_.size());
  }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  PeriodicGrid grid_;
  int channels_;
  std::vector<double> values_;
};

/// Half-spectrum coefficients, channel-major, same row-major layout as the
/// real-to-complex transform output (last axis halved).
struct Spectrum {
  PeriodicGrid grid;
  int channels = 1;
  std::vector<Complex> coeffs;

  std::span<Complex> channel(int c) noexcept {
    return std::span<Complex>(coeffs).subspan(static_cast<std::size_t>(c) * grid.spectral_size(), grid.spectral_size());
  }
  std::span<const Complex> channel(int c) const noexcept {
    return std::span<const Complex>(coeffs).subspan(static_cast<std::size_t>(c) * grid.spectral_size(),
                                                    grid.spectral_size());
  }
};

/// Unnormalized forward real DFT of every channel. Rejects non-finite input.
Spectrum forward(const Field& field);
/// Inverse real DFT, divided by n^dim, so inverse(forward(x)) == x.
Field inverse(const Spectrum& spectrum);

/// Keep modes representable at target_n and zero the target Nyquist planes;
/// target_n == n returns the spectrum unchanged. Coefficients are rescaled so
/// the inverse on the coarse grid reproduces the retained trigonometric
/// polynomial.
Spectrum downsample_spectrum(const Spectrum& spectrum, int target_n);
/// Field-level spectral downsampling (forward, truncate, inverse).
Field spectral_downsample(const Field& field, int target_n);

/// Sum of |x|^2 over all samples and channels.
double energy(const Field& field);
/// Physical-space energy computed from a half spectrum (Parseval with
/// doubled interior modes of the last axis), i.e. sum |x|^2.
double spectral_energy(const Spectrum& spectrum);

/// Stored solution frames of one simulation.
class Trajectory {
 public:
  /// Throws unless frames is nonempty, frames share grid and channels, times
  /// are strictly increasing from >= 0 and match the frame count.
  Trajectory(std::string pde_id, std::vector<Field> frames, std::vector<double> times, std::uint64_t seed);

  const std::string& pde_id() const noexcept { return pde_id_; }
  const std::vector<Field>& frames() const noexcept { return frames_; }
  const std::vector<double>& times() const noexcept { return times_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const PeriodicGrid& grid() const noexcept { return frames_.front().grid(); }
  int channels() const noexcept { return frames_.front().channels(); }

  /// Every frame spectrally downsampled to target_n.
  Trajectory downsampled(int target_n) const;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;

 private:
  std::string pde_id_;
  std::vector<Field> frames_;
  std::vector<double> times_;
  std::uint64_t seed_;
};

}  // namespace bkev
