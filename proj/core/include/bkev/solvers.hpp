#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bkev/grid.hpp"

namespace bkev {

/// u_t + Δu + Δ²u + ½|∇u|² = 0 on [0, L)^dim.
struct KuramotoSivashinsky {
  int dim = 2;
  double edge_length = 50.0;
};

/// Vorticity form ω_t + u·∇ω = νΔω + f on [0, L)^2.
struct NavierStokes2D {
  double nu = 1e-3;
  double edge_length = 2.0;
  /// Physical-space forcing on any grid of the same domain; absent means f = 0.
  std::optional<Field> forcing;
};

/// u_t = Du Δu − uv² + F(1−u),  v_t = Dv Δv + uv² − (F+k)v.
struct GrayScott {
  double feed = 0.029;
  double kill = 0.057;
  double diffusivity_u = 2.1e-5;
  double diffusivity_v = 1.1e-5;
  double edge_length = 2.0;
  int dim = 2;
};

using PdeInstance = std::variant<KuramotoSivashinsky, NavierStokes2D, GrayScott>;

int dimension(const PdeInstance& pde);
int channel_count(const PdeInstance& pde);
double edge_length(const PdeInstance& pde);
/// Short identifier: "KS1D", "KS2D", "KS3D", "NS", "GS".
std::string pde_id(const PdeInstance& pde);
/// Throws unless all parameters are finite and diffusivities/viscosity positive.
void validate(const PdeInstance& pde);
PeriodicGrid grid_for(const PdeInstance& pde, int n);

struct SolverConfig {
  int resolution = 256;
  double dt = 0.1;
  double horizon = 10.0;
  int n_frames = 50;
  int store_resolution = 64;
  /// Store the initial state as an extra leading frame at t = 0.
  bool include_initial = false;

  /// Integer number of steps T/dt; throws if T/dt is not integral (relative 1e-9).
  long step_count() const;
  /// Throws unless dt > 0, T >= dt, 1 <= n_frames <= T/dt, frames divide the
  /// step count, and store_resolution <= resolution.
  void validate() const;

  friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

enum class Benchmark { NavierStokes, KuramotoSivashinsky, GrayScott };

/// Reference configuration of one benchmark family.
struct CanonicalSpec {
  Benchmark benchmark;
  PdeInstance pde;
  SolverConfig config;
};

/// Canonical configurations: N-S {256, 1e-3, T=1, L=2, 10 frames}, K-S
/// {256, 0.1, T=10, L=50, 50 frames}, G-S {256, 0.5, T=2000, L=2, 200 frames},
/// all stored at 64. `ks_dim` selects the K-S dimension.
CanonicalSpec canonical_spec(Benchmark benchmark, int ks_dim = 2);
Benchmark parse_benchmark(const std::string& id);
std::string to_string(Benchmark benchmark);

/// Per-channel stiff linear multiplier on the half spectrum:
/// K-S |k|²−|k|⁴, N-S −ν|k|², G-S (−Du|k|²−F, −Dv|k|²−(F+k)).
std::vector<std::vector<double>> linear_symbol(const PdeInstance& pde, const PeriodicGrid& grid);

/// 2/3-rule mask on the half spectrum: 1 where 3|m| < n on every axis.
std::vector<unsigned char> dealias_mask(const PeriodicGrid& grid);

/// Nonlinear (non-stiff) part of the right-hand side, in spectral space and
/// projected onto the dealiased band.
Spectrum nonlinear_spectrum(const PdeInstance& pde, const Spectrum& state);
/// Physical-space nonlinear term.
Field nonlinear_term(const PdeInstance& pde, const Field& state);
/// Full right-hand side, linear + nonlinear, in physical space.
Field full_rhs(const PdeInstance& pde, const Field& state);

/// ETDRK4 (Cox-Matthews) coefficients for one real symbol array.
struct EtdrkCoefficients {
  std::vector<double> exp_full;  ///< e^{hL}
  std::vector<double> exp_half;  ///< e^{hL/2}
  std::vector<double> q;         ///< h φ₁(hL/2) / 2
  std::vector<double> f1, f2, f3;
};

/// Number of contour points used for φ-function evaluation.
inline constexpr int kContourPoints = 32;

/// φ₁(z) = (e^z − 1)/z averaged over a circle of radius 1 around z.
Complex phi1_contour(Complex z);
EtdrkCoefficients etdrk_coefficients(std::span<const double> symbol, double dt);

namespace detail {
class NonlinearEvaluator;
}

/// Pseudo-spectral ETDRK4 integrator for one (pde, grid, dt).
///
/// Coefficient tables are built at construction and never modified; the
/// scratch buffers make a single instance unsuitable for concurrent `step`
/// calls, so concurrent simulations each construct their own stepper.
class EtdrkStepper {
 public:
  EtdrkStepper(PdeInstance pde, const PeriodicGrid& grid, double dt);
  ~EtdrkStepper();
  EtdrkStepper(EtdrkStepper&&) noexcept;
  EtdrkStepper& operator=(EtdrkStepper&&) noexcept;

  void step(Spectrum& state);
  const PeriodicGrid& grid() const noexcept { return grid_; }
  double dt() const noexcept { return dt_; }

 private:
  PdeInstance pde_;
  PeriodicGrid grid_;
  double dt_;
  std::vector<EtdrkCoefficients> coeffs_;  // per channel
  std::unique_ptr<detail::NonlinearEvaluator> eval_;
  std::vector<Spectrum> work_;  // Nv, Na, Nb, Nc, a, b, c
};

/// Integrate from t = 0 to config.horizon and store config.n_frames evenly
/// spaced frames downsampled to config.store_resolution. Throws BlowUpError
/// on the first step producing a non-finite value.
Trajectory simulate(const PdeInstance& pde, const SolverConfig& config, const Field& ic, std::uint64_t seed = 0);

struct InitialConditionOptions {
  int cutoff = 5;               ///< K-S / N-S: max |m| per axis
  int patches = 3;              ///< G-S: number of square perturbations
  double patch_fraction = 0.1;  ///< G-S: patch side / L
};

/// Deterministic in seed. K-S/N-S: unit-RMS random low-mode Fourier field.
/// G-S: (u, v) = (1, 0) with square patches set to (0.5, 0.25).
Field sample_initial_condition(const PdeInstance& pde, const PeriodicGrid& grid, std::uint64_t seed,
                               const InitialConditionOptions& options = {});

}  // namespace bkev
