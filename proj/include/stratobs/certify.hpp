#pragma once

#include "stratobs/diophantine.hpp"
#include "stratobs/wave_system.hpp"

#include <optional>
#include <string>
#include <vector>

namespace stratobs {

enum class Verdict { certified_all_k, certified_up_to_scan, refuted, inconclusive_float };
const char* verdict_name(Verdict v);

/// Loaded-string details: the rational-gap hypothesis check and the
/// small-load perturbation argument.
struct LoadedDetails {
  ExactReal q;
  // Path (i): xi rational and sin(Delta omega_k) != 0 for every k.
  std::string hypothesis;  // "satisfied", "violated", "checked-up-to-kmax", "not-applicable"
  std::vector<std::pair<std::uint64_t, Rational>> perfect_squares;  // (k, sqrt(k^2 + q))
  std::optional<std::uint64_t> violated_at;
  // Numeric floor min k |sin(omega_k Delta)| over the scan.
  double sine_floor = 0.0;
  std::uint64_t sine_argmin = 0;
  // Path (ii): base sine-scale floor c = 2/(K+2), threshold and guaranteed floor.
  bool perturbation_applies = false;
  double base_c = 0.0;
  double q_max = 0.0;
  double q_max_refined = 0.0;
  double c_prime = 0.0;
};

struct StrategicCertificate {
  std::string system;
  ExactReal gap;         // xi = (t0 - t1)/pi, or theta_2 for reduced plates
  std::optional<ExactReal> gap2;  // theta_1 for plates
  double exponent = 1.0;  // r - s for strings and beams, (r - s)/2 for plates
  std::string scale;      // "k", "k^2", "m^2+n^2"
  std::uint64_t k_max = 0;
  std::uint64_t n_max = 0;  // second box bound for plates
  // Observed floor on the nearest-integer scale.
  double c_star = 0.0;
  std::optional<ExactReal> c_star_exact;
  double c_star_lower_bound = 0.0;
  std::uint64_t argmin = 0;
  std::uint64_t argmin_n = 0;
  bool precision_warning = false;
  // Partial-quotient bound and the all-k floor it implies.
  std::optional<BigInt> K;
  bool K_certain = false;
  std::optional<Rational> theoretical_floor;
  std::optional<std::uint64_t> plate_reduction_N;
  Verdict verdict = Verdict::inconclusive_float;
  std::vector<std::string> notes;
  std::vector<BigInt> dirichlet_witnesses;  // recorded when exponent < 1
  std::optional<LoadedDetails> loaded;
};

/// k^alpha ||k xi|| scan; certified for all k when xi is exact, K is certain and alpha >= 1.
StrategicCertificate certify_string(const ExactReal& xi, double alpha, std::uint64_t k_max, ScanOptions opts = {});
/// k^alpha ||k^2 xi|| scan; all-k argument needs alpha >= 2.
StrategicCertificate certify_beam(const ExactReal& xi, double alpha, std::uint64_t k_max, ScanOptions opts = {});
/// (m^2+n^2)^alpha ||m^2 theta1 + n^2 theta2||. When theta1 = N theta2 (b^2 = N a^2)
/// or theta2 = N theta1 the scan reduces to one number and alpha >= 1 allows
/// an all-k floor 1/(N(K+2)).
StrategicCertificate certify_plate_theta(const ExactReal& theta1, const ExactReal& theta2, double alpha,
                                         std::uint64_t m_max, std::uint64_t n_max, ScanOptions opts = {});
/// Plate with sides (a, b): theta_j = pi^2 xi / side_j^2.
StrategicCertificate certify_plate(const ExactReal& xi, const WaveSystem& plate, double alpha, std::uint64_t m_max,
                                   std::uint64_t n_max, ScanOptions opts = {});
/// Loaded string with q > 0 (exponent fixed at 1 on the sine scale).
StrategicCertificate certify_loaded(const ExactReal& xi, const ExactReal& q, std::uint64_t k_max,
                                    ScanOptions opts = {});

/// Nearest-integer-scale floor for mixed position/velocity rows:
/// min k^alpha dist(omega_k xi, Z + 1/2). Scan-limited by design.
StrategicCertificate certify_mixed(const ExactReal& xi, const WaveSystem& system, double alpha, std::uint64_t k_max,
                                   ScanOptions opts = {});

struct LoadedThreshold {
  double c = 0.0;
  double delta = 0.0;
  double q_max = 0.0;
  std::optional<double> q_max_refined;
};
/// q_max = 2c/|Delta|; refined 4/(|Delta|(K+2)) when K is given.
LoadedThreshold loaded_q_threshold(double c, double delta, std::optional<BigInt> K = std::nullopt);

struct PerturbationGap {
  double bound = 0.0;
  double measured = 0.0;
};
/// bound = |Delta| q/(2k), measured = |sin(sqrt(k^2+q) Delta) - sin(k Delta)|.
PerturbationGap perturbation_gap(std::uint64_t k, double q, double delta);

/// Times given as t/pi; tau_p = (t_1 - t_{p+1})/pi. Throws on duplicate times.
MultiTimeResult multi_time_floor(const std::vector<ExactReal>& times_over_pi, std::uint64_t k_max,
                                 ScanOptions opts = {});

}  // namespace stratobs
