#pragma once

#include "stratobs/continued_fraction.hpp"
#include "stratobs/exact_real.hpp"
#include "stratobs/kernels.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace stratobs {

/// Working precision for scans over float inputs.
enum class FloatPrecision { bits128, bits192 };

struct ScanOptions {
  kernels::Execution execution = kernels::Execution::parallel;
  FloatPrecision precision = FloatPrecision::bits128;
};

/// Result of a min-scan of a weighted nearest-integer distance.
///
/// `value` is the reported minimum; `exact_value` is set when the minimum was
/// computed and compared exactly. For float inputs `lower_bound` is a certified
/// lower bound on the true minimum over the scanned range.
struct FloorResult {
  double value = 0.0;
  std::optional<ExactReal> exact_value;
  double lower_bound = 0.0;
  std::uint64_t argmin = 0;
  std::uint64_t argmin_n = 0;  // second index for two-dimensional scans
  bool zero = false;           // an exact zero distance was proven
  bool precision_warning = false;
};

/// ||x|| = distance from x to the nearest integer.
ExactReal nearest_int_distance(const ExactReal& x);

/// min_{1<=k<=k_max} k^alpha * ||j(k) xi|| with j(k) = k (linear) or k^2 (square).
FloorResult badly_approx_floor(const ExactReal& xi, double alpha, std::uint64_t k_max,
                               ScanOptions opts = {}, kernels::IndexMap map = kernels::IndexMap::linear);

/// Per-k values of ||j(k) xi|| (first) and k^alpha ||j(k) xi|| (second), k = 1..k_max.
struct FloorProfile {
  std::vector<double> distance;
  std::vector<double> scaled;
};
FloorProfile floor_profile(const ExactReal& xi, double alpha, std::uint64_t k_max, ScanOptions opts = {},
                           kernels::IndexMap map = kernels::IndexMap::linear);

/// Guaranteed floor 1/(K+2) for k ||k xi|| when K(xi) = K.
Rational theoretical_floor_from_K(const BigInt& K);

/// K bound valid for both xi and -xi: the smaller of the two partial-quotient
/// suprema (||k xi|| is symmetric in the sign of xi).
PartialQuotientSup symmetric_partial_quotient_sup(const ExactReal& xi, std::size_t depth);

/// `count` distinct convergent denominators k with ||k xi|| < 1/k, each checked
/// exactly (or by enclosure for floats). Throws std::invalid_argument for
/// rational xi and std::runtime_error when a float runs out of certified digits.
std::vector<BigInt> dirichlet_witnesses(const ExactReal& xi, std::size_t count);

struct NuEstimate {
  double estimate = 0.0;  // minimum of q_n ||q_n xi|| over the last window
  std::vector<double> window_minima;
  bool monotone = false;  // window minima form a monotone sequence
  std::vector<double> convergent_values;
};
/// Estimates liminf_k k ||k xi|| along the first `depth` convergent denominators.
NuEstimate nu_liminf_estimate(const ExactReal& xi, std::size_t depth);

/// min over 1<=m<=m_max, 1<=n<=n_max of (m^2+n^2)^beta * ||m^2 x1 + n^2 x2||.
/// Exact when x1 and x2 share a radical; otherwise an extended-precision scan
/// with `precision_warning` set.
FloorResult linear_form_floor(const ExactReal& x1, const ExactReal& x2, double beta, std::uint64_t m_max,
                              std::uint64_t n_max, ScanOptions opts = {});

/// Multi-time floor: min_{k<=k_max} k^{1/(n-1)} max_p ||k tau_p|| over n-1 gap ratios.
struct MultiTimeResult {
  double c_star = 0.0;
  double lower_bound = 0.0;
  std::uint64_t argmin = 0;
  double exponent = 0.0;
};
MultiTimeResult multi_time_floor_ratios(const std::vector<ExactReal>& taus, std::uint64_t k_max,
                                        ScanOptions opts = {});

}  // namespace stratobs
