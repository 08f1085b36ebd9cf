#pragma once

#include "stratobs/diophantine.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace stratobs {

/// A gap tau' = pi * ratio near tau such that sin(tau' sqrt(k^2 + q)) != 0 for all k >= 1.
struct RationalGapCertificate {
  double tau = 0.0;
  double delta = 0.0;
  ExactReal q;
  std::string branch;  // irrational-q | integer-q-direct | integer-q-perturbed | rational-q-reduced
  Rational base;       // a/b, the simplest rational within delta/2 of tau/pi
  Rational ratio;      // tau'/pi
  std::optional<std::uint64_t> prime;
  std::optional<std::uint64_t> power;
  bool perturbed = false;
  /// Rational q = c/d is handled through sqrt(k^2 d^2 + c d)/d; d = 1 for integers.
  BigInt scale = 1;
  std::vector<std::uint64_t> square_ks;  // k with k^2 + q a rational square
  std::vector<BigInt> x_values;          // sqrt(k^2 d^2 + c d) for those k
  double tau_prime = 0.0;
  double distance = 0.0;  // |tau - tau'|
};

/// Throws std::domain_error for q = 0 (outside the construction's scope) and
/// std::invalid_argument for delta <= 0, negative q or float q.
RationalGapCertificate construct_rational_gap(double tau, double delta, const ExactReal& q);

/// Independent check of a certificate by exact integer arithmetic: the
/// perfect-square set is recomputed and every x value must give a non-integer
/// multiple of tau'/pi. Returns an empty string when valid, else the failure.
std::string verify_rational_gap(const RationalGapCertificate& cert);

/// xi_0 = xi, xi_{n+1} = xi_n / (1 + xi_n), n = 0..n_max.
std::vector<ExactReal> cf_shift_sequence(const ExactReal& xi, std::size_t n_max);

struct LoadedGapResult {
  std::size_t n = 0;
  ExactReal xi_n;
  double gap = 0.0;  // pi xi_n
  double nu = 0.0;   // safety-scaled estimate
  double nu_raw = 0.0;
  double safety = 0.9;
  double margin = 0.0;  // 2 nu - xi_n pi q / 2
  double sine_floor = 0.0;  // min_{k<=k_max} k |sin(omega_k gap)|
  std::uint64_t sine_argmin = 0;
};
/// Smallest n <= n_max with 2 nu(xi) - xi_n pi q/2 > 0 whose gap also has a
/// positive numeric sine floor; nullopt when none exists.
std::optional<LoadedGapResult> loaded_gap_search(const ExactReal& q, const ExactReal& xi, std::size_t n_max,
                                                 std::uint64_t k_max, ScanOptions opts = {});

}  // namespace stratobs
