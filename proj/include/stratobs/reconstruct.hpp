#pragma once

#include "stratobs/certify.hpp"
#include "stratobs/kernels.hpp"
#include "stratobs/mode_map.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace stratobs {

/// Snapshots sharing one system and truncation; each carries its role and time.
struct SnapshotSet {
  std::vector<CoefficientVector> snapshots;
};

struct ModeReport {
  ModeIndex index;
  Complex det;           // closed form for two rows; det of the Gram matrix otherwise
  double abs_det = 0.0;
  double cond = 0.0;     // ||T_k|| ||T_k^{-1}||; infinite when singular
  double inverse_norm = 0.0;
  double residual = 0.0;
  bool singular = false;
  double phase_over_pi = 0.0;
  Complex a, b;
};

struct ReconstructionReport {
  ModalState state;  // travelling-wave coefficients at t = 0
  CoefficientVector y0;
  CoefficientVector y1;
  std::vector<ModeReport> modes;
  std::vector<ModeIndex> singular_modes;
  std::size_t worst_mode = 0;  // flat index of the largest finite condition number
  double worst_cond = 0.0;
  double max_residual = 0.0;
};

/// Per-mode inversion of T_k; singular modes are skipped (zero coefficients) and reported.
ReconstructionReport reconstruct(const SnapshotSet& set, kernels::Execution exec = kernels::Execution::parallel);
/// Same contract for sets containing velocity snapshots.
ReconstructionReport mixed_reconstruct(const SnapshotSet& set,
                                       kernels::Execution exec = kernels::Execution::parallel);

/// Position snapshots of `state` at t0 = pi xi and t1 = 0 (exact times).
SnapshotSet gap_snapshots(const ModalState& state, const ExactReal& xi);

/// Observed floor min k^alpha ||omega_k xi|| over the truncation (plates: the
/// (m^2+n^2)^alpha linear-form floor), on the nearest-integer scale.
double observed_floor(const WaveSystem& system, const ExactReal& xi, double alpha, const ModeLayout& layout,
                      ScanOptions opts = {});

struct SensitivityEntry {
  ModeIndex index;
  double factor = 0.0;  // ||T_k^{-1}||
  bool infinite = false;
  double bound = 0.0;   // k^alpha / (2 c_star)
};
struct SensitivityProfile {
  std::vector<SensitivityEntry> entries;
  double c_star = 0.0;
  bool within_bound = true;
};
/// ||T_k^{-1}|| for the pair (pi xi, 0) and the bound implied by the floor c_star
/// (computed over the truncation when not supplied).
SensitivityProfile sensitivity_profile(const ExactReal& xi, const WaveSystem& system, double alpha,
                                       const ModeLayout& layout, std::optional<double> c_star = std::nullopt);

struct NoiseReport {
  double sigma = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double order = 0.0;
  double alpha = 1.0;
  double mean_error = 0.0;
  double max_error = 0.0;
  double rms_error = 0.0;
  /// sigma sqrt(2) (sum_k (||L_k|| ||T_k^{-1}||)^2)^{1/2}, L_k mapping (a, b) to
  /// weighted (y0, y1) coefficients; the expected error lies in [P/sqrt 2, P].
  double prediction = 0.0;
  /// Same sum with ||T_k^{-1}|| replaced by its floor bound k^alpha/(2 c_star).
  double envelope = 0.0;
  double c_star = 0.0;
  double ratio = 0.0;  // mean_error / prediction
};
/// Adds complex Gaussian noise (E|n|^2 = sigma^2) to both snapshot coefficient
/// vectors, reconstructs, and measures the D^s x D^{s-offset} error. Deterministic in seed.
NoiseReport noise_experiment(const ModalState& state, const ExactReal& xi, double sigma, std::uint64_t trials,
                             std::uint64_t seed, double s = 0.0, double alpha = 1.0,
                             kernels::Execution exec = kernels::Execution::parallel);

/// sqrt(||y0||_s^2 + ||y1||_{s - offset}^2).
double data_norm(const CoefficientVector& y0, const CoefficientVector& y1, double s);

}  // namespace stratobs
