#include "stratobs/constructions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stratobs {
namespace {

/// Simplest rational (smallest denominator) in the open interval (lo, hi), 0 <= lo < hi.
Rational simplest_between(const WideFloat& lo, const WideFloat& hi) {
  if (lo == 0) {
    // 1/m with the smallest m such that 1/m < hi.
    const BigInt m = BigInt(floor(WideFloat(1) / hi).convert_to<BigInt>()) + 1;
    return Rational(1, m);
  }
  const WideFloat fl = floor(lo);
  const BigInt n = fl.convert_to<BigInt>();
  if (WideFloat(n + 1) < hi) return Rational(n + 1);
  // (lo, hi) lies in (n, n+1]: recurse on the reciprocal of the fractional parts.
  const Rational tail = simplest_between(WideFloat(1) / (hi - fl), WideFloat(1) / (lo - fl));
  return Rational(n) + Rational(tail.den(), tail.num());
}

WideFloat gap_error(double tau, const Rational& ratio) {
  return abs(WideFloat(tau) - wide_pi() * ratio.to_wide());
}

std::uint64_t next_prime(std::uint64_t after) {
  for (std::uint64_t p = after + 1;; ++p) {
    bool prime = p >= 2;
    for (std::uint64_t d = 2; prime && d * d <= p; ++d) prime = p % d != 0;
    if (prime) return p;
  }
}

/// All k >= 1 with k^2 d^2 + c d a perfect square, as (k, root). Uses j + kd <= cd.
std::vector<std::pair<std::uint64_t, BigInt>> square_hits(const BigInt& c, const BigInt& d) {
  std::vector<std::pair<std::uint64_t, BigInt>> out;
  const BigInt cd = c * d;
  const BigInt bound = (cd - 1) / (2 * d);
  for (BigInt k = 1; k <= bound; ++k)
    if (auto j = exact_sqrt(k * k * d * d + cd)) out.emplace_back(static_cast<std::uint64_t>(k), *j);
  return out;
}

}  // namespace

RationalGapCertificate construct_rational_gap(double tau, double delta, const ExactReal& q) {
  if (!(delta > 0)) throw std::invalid_argument("delta must be positive");
  if (!std::isfinite(tau)) throw std::invalid_argument("tau must be finite");
  if (q.is_floating()) throw std::invalid_argument("q must be rational or quadratic, not a float");
  if (q.sign() < 0) throw std::invalid_argument("q must be >= 0");
  if (q.sign() == 0) throw std::domain_error("q = 0 is outside the construction's scope (every k^2 is a square)");

  RationalGapCertificate cert;
  cert.tau = tau;
  cert.delta = delta;
  cert.q = q;

  // a/b: simplest rational with |tau - pi a/b| < delta/2, kept away from 0.
  const WideFloat x = WideFloat(tau) / wide_pi();
  const WideFloat eps = WideFloat(delta) / (2 * wide_pi());
  const bool negative = tau < 0;
  WideFloat lo = abs(x) - eps, hi = abs(x) + eps;
  if (lo < 0) lo = 0;
  Rational base = simplest_between(lo, hi);
  if (negative) base = -base;
  cert.base = base;
  cert.ratio = base;

  if (q.is_quadratic()) {
    // sqrt(k^2 + q) is irrational for every k, so any nonzero rational multiple of pi works.
    cert.branch = "irrational-q";
  } else {
    const Rational& qr = q.as_rational();
    cert.scale = qr.den();
    cert.branch = qr.is_integer() ? "integer-q-direct" : "rational-q-reduced";
    for (auto& [k, j] : square_hits(qr.num(), qr.den())) {
      cert.square_ks.push_back(k);
      cert.x_values.push_back(j);
    }
    if (!cert.x_values.empty()) {
      if (qr.is_integer()) cert.branch = "integer-q-perturbed";
      cert.perturbed = true;
      // Smallest prime dividing none of the x values, then the smallest power n
      // with p^n not dividing a and pi (p^n - 1) a/(p^n b) within delta of tau.
      std::uint64_t p = 2;
      for (;; p = next_prime(p)) {
        bool ok = true;
        for (const auto& xv : cert.x_values)
          if (xv % p == 0) ok = false;
        if (ok) break;
      }
      BigInt pn = p;
      for (std::uint64_t n = 1;; ++n, pn *= p) {
        if (base.num() % pn != 0) {
          const Rational cand = base * Rational(pn - 1, pn);
          if (gap_error(tau, cand) < WideFloat(delta)) {
            cert.prime = p;
            cert.power = n;
            cert.ratio = cand;
            break;
          }
        }
        if (n > 4096) throw std::runtime_error("no admissible prime power found");
      }
    }
  }
  cert.tau_prime = (wide_pi() * cert.ratio.to_wide()).convert_to<double>();
  cert.distance = gap_error(tau, cert.ratio).convert_to<double>();
  if (const std::string err = verify_rational_gap(cert); !err.empty())
    throw std::logic_error("constructed gap failed verification: " + err);
  return cert;
}

std::string verify_rational_gap(const RationalGapCertificate& cert) {
  if (cert.ratio.sign() == 0) return "tau'/pi is zero";
  if (!(gap_error(cert.tau, cert.ratio) < WideFloat(cert.delta))) return "|tau - tau'| >= delta";
  if (cert.q.is_quadratic()) return cert.branch == "irrational-q" ? "" : "wrong branch for irrational q";
  if (!cert.q.is_rational()) return "q must be exact";
  const Rational& qr = cert.q.as_rational();
  const BigInt c = qr.num(), d = qr.den();
  // Recompute the square set by scanning every k allowed by (j - kd)(j + kd) = cd.
  std::vector<std::uint64_t> ks;
  std::vector<BigInt> xs;
  const BigInt cd = c * d;
  for (BigInt k = 1; 2 * k * d < cd; ++k) {
    const BigInt n = k * k * d * d + cd;
    const BigInt r = isqrt(n);
    if (r * r == n) {
      ks.push_back(static_cast<std::uint64_t>(k));
      xs.push_back(r);
    }
  }
  if (ks != cert.square_ks || xs != cert.x_values) return "perfect-square set mismatch";
  for (const auto& x : xs) {
    // tau'/pi * x/d must not be an integer.
    const Rational v = cert.ratio * Rational(x, d);
    if (v.is_integer()) return "sine vanishes at x = " + to_string(x);
  }
  return "";
}

std::vector<ExactReal> cf_shift_sequence(const ExactReal& xi, std::size_t n_max) {
  if (xi.is_rational()) throw std::invalid_argument("shift sequence needs an irrational xi");
  if (!(xi > ExactReal(0)) || !(xi < ExactReal(1))) throw std::invalid_argument("shift sequence needs 0 < xi < 1");
  std::vector<ExactReal> out{xi};
  for (std::size_t n = 0; n < n_max; ++n) out.push_back(out.back() / (ExactReal(1) + out.back()));
  return out;
}

std::optional<LoadedGapResult> loaded_gap_search(const ExactReal& q, const ExactReal& xi, std::size_t n_max,
                                                 std::uint64_t k_max, ScanOptions opts) {
  if (q.sign() <= 0) throw std::invalid_argument("q must be positive");
  const NuEstimate est = nu_liminf_estimate(xi, 40);
  if (!(est.estimate > 0)) throw std::invalid_argument("xi has no positive nu estimate");
  LoadedGapResult r;
  r.nu_raw = est.estimate;
  r.nu = r.safety * est.estimate;
  const double qd = q.to_double();
  const auto seq = cf_shift_sequence(xi, n_max);
  for (std::size_t n = 0; n <= n_max; ++n) {
    const double xn = seq[n].to_double();
    const double margin = 2.0 * r.nu - xn * std::numbers::pi * qd / 2.0;
    if (!(margin > 0)) continue;
    const kernels::LoadedSineEval<Float128> eval{Float128(seq[n].mid()), Float128(q.mid())};
    const auto best = kernels::min_scan(eval, 1, k_max, opts.execution);
    const double floor_value = static_cast<double>(abs(best.value));
    if (!(floor_value > 0)) continue;
    r.n = n;
    r.xi_n = seq[n];
    r.gap = std::numbers::pi * xn;
    r.margin = margin;
    r.sine_floor = floor_value;
    r.sine_argmin = best.index;
    return r;
  }
  return std::nullopt;
}

}  // namespace stratobs
