#pragma once

// Range-scan kernels behind the Diophantine floors and the loaded-string sine
// floors. Every kernel has a serial reference and an OpenMP variant; both
// return the same minimum and the same (smallest) argmin.

#include "stratobs/exact_real.hpp"

#include <boost/math/constants/constants.hpp>
#include <omp.h>

#include <cmath>
#include <cstdint>
#include <exception>
#include <vector>

namespace stratobs::kernels {

enum class Execution { serial, parallel };

template <class V>
struct ScanBest {
  V value{};
  std::uint64_t index = 0;
  bool found = false;
};

namespace detail {

template <class Eval, class V>
void offer(const Eval& eval, ScanBest<V>& best, V&& v, std::uint64_t i) {
  if (!best.found || eval.less(v, best.value)) {
    best.value = std::move(v);
    best.index = i;
    best.found = true;
  }
}

}  // namespace detail

namespace serial {

/// Minimum of eval(i) over first <= i <= last, smallest index on ties.
template <class Eval>
ScanBest<typename Eval::value_type> min_scan(const Eval& eval, std::uint64_t first, std::uint64_t last) {
  ScanBest<typename Eval::value_type> best;
  for (std::uint64_t i = first; i <= last; ++i) detail::offer(eval, best, eval(i), i);
  return best;
}

template <class Eval>
std::vector<double> profile(const Eval& eval, std::uint64_t first, std::uint64_t last) {
  std::vector<double> out;
  out.reserve(last - first + 1);
  for (std::uint64_t i = first; i <= last; ++i) out.push_back(eval.to_double(eval(i)));
  return out;
}

}  // namespace serial

namespace parallel {

template <class Eval>
ScanBest<typename Eval::value_type> min_scan(const Eval& eval, std::uint64_t first, std::uint64_t last) {
  using V = typename Eval::value_type;
  const auto n = static_cast<std::int64_t>(last - first + 1);
  std::vector<ScanBest<V>> partial(static_cast<std::size_t>(omp_get_max_threads()));
  std::exception_ptr failure;
#pragma omp parallel
  {
    ScanBest<V> local;
    try {
#pragma omp for schedule(static)
      for (std::int64_t i = 0; i < n; ++i) {
        const auto idx = first + static_cast<std::uint64_t>(i);
        detail::offer(eval, local, eval(idx), idx);
      }
    } catch (...) {
#pragma omp critical(stratobs_scan_failure)
      if (!failure) failure = std::current_exception();
    }
    partial[static_cast<std::size_t>(omp_get_thread_num())] = std::move(local);
  }
  if (failure) std::rethrow_exception(failure);

  ScanBest<V> best;
  for (auto& p : partial) {
    if (!p.found) continue;
    if (!best.found || eval.less(p.value, best.value) ||
        (!eval.less(best.value, p.value) && p.index < best.index)) {
      best = std::move(p);
    }
  }
  return best;
}

template <class Eval>
std::vector<double> profile(const Eval& eval, std::uint64_t first, std::uint64_t last) {
  const auto n = static_cast<std::int64_t>(last - first + 1);
  std::vector<double> out(static_cast<std::size_t>(n));
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = eval.to_double(eval(first + static_cast<std::uint64_t>(i)));
    } catch (...) {
#pragma omp critical(stratobs_profile_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace parallel

template <class Eval>
ScanBest<typename Eval::value_type> min_scan(const Eval& eval, std::uint64_t first, std::uint64_t last,
                                             Execution exec) {
  return exec == Execution::serial ? serial::min_scan(eval, first, last)
                                   : parallel::min_scan(eval, first, last);
}

template <class Eval>
std::vector<double> profile(const Eval& eval, std::uint64_t first, std::uint64_t last, Execution exec) {
  return exec == Execution::serial ? serial::profile(eval, first, last) : parallel::profile(eval, first, last);
}

// ------------------------------------------------------------------ evaluators

/// How the scan index i maps to the integer multiplier of the scanned number.
enum class IndexMap { linear, square };

inline std::uint64_t apply_index_map(IndexMap map, std::uint64_t i) {
  return map == IndexMap::linear ? i : i * i;
}

/// ||(a + b sqrt d) / r|| as numerator pair over r (r > 0).
struct SurdDistance {
  BigInt x;
  BigInt y;
};

inline SurdDistance surd_distance(const BigInt& a, const BigInt& b, const BigInt& d, const BigInt& r) {
  BigInt f;
  if (b == 0) {
    f = floor_div(a, r);
  } else {
    BigInt s = isqrt(b * b * d);
    f = floor_div(b > 0 ? BigInt(a + s) : BigInt(a - s - 1), r);
  }
  BigInt fx = a - f * r;  // fractional part numerator: (fx + b sqrt d)/r in [0, 1)
  if (surd_sign(2 * fx - r, 2 * b, d) > 0) return {r - fx, -b};
  return {fx, b};
}

/// Exact scan value: weighted distance numerator (x + y sqrt d) over the fixed
/// denominator, plus an extended-precision rendering used when the weight is
/// not an integer power.
struct ExactScanValue {
  BigInt x;
  BigInt y;
  WideFloat approx;
};

/// Shared pieces of exact evaluators: the radical, the denominator, and the
/// weight exponent (exact when it is a small non-negative integer).
struct ExactWeighting {
  BigInt d;
  BigInt r;
  double exponent = 1.0;
  int int_exponent = -1;  // >= 0 when weights are exact integer powers

  static ExactWeighting make(BigInt d, BigInt r, double exponent) {
    ExactWeighting w{std::move(d), std::move(r), exponent, -1};
    if (exponent >= 0 && exponent <= 16 && std::floor(exponent) == exponent) {
      w.int_exponent = static_cast<int>(exponent);
    }
    return w;
  }

  ExactScanValue weigh(SurdDistance dist, std::uint64_t base) const {
    WideFloat value = (WideFloat(dist.x) + WideFloat(dist.y) * sqrt(WideFloat(d))) / WideFloat(r);
    if (int_exponent >= 0) {
      BigInt w = boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(int_exponent));
      return {dist.x * w, dist.y * w, value * WideFloat(w)};
    }
    return {std::move(dist.x), std::move(dist.y), value * pow(WideFloat(base), WideFloat(exponent))};
  }

  bool less(const ExactScanValue& a, const ExactScanValue& b) const {
    if (int_exponent >= 0) return surd_sign(a.x - b.x, a.y - b.y, d) < 0;
    return a.approx < b.approx;
  }
};

/// i -> i^alpha * ||j(i) * x|| for exact x = (p + q sqrt d)/r.
struct ExactFloorEval {
  using value_type = ExactScanValue;
  BigInt p;
  BigInt q;
  ExactWeighting weighting;
  IndexMap map = IndexMap::linear;

  value_type operator()(std::uint64_t i) const {
    BigInt j(apply_index_map(map, i));
    return weighting.weigh(surd_distance(j * p, j * q, weighting.d, weighting.r), i);
  }
  bool less(const value_type& a, const value_type& b) const { return weighting.less(a, b); }
  double to_double(const value_type& v) const { return static_cast<double>(v.approx); }
};

/// Flat index over an m_max x n_max box, m-major, both 1-based.
struct BoxIndex {
  std::uint64_t n_max = 1;
  std::uint64_t m(std::uint64_t flat) const { return flat / n_max + 1; }
  std::uint64_t n(std::uint64_t flat) const { return flat % n_max + 1; }
};

/// (m, n) -> (m^2 + n^2)^beta * ||m^2 x1 + n^2 x2|| for exact x1, x2 on one
/// radical, with p1, q1, p2, q2 already brought over the common denominator.
struct ExactLinearFormEval {
  using value_type = ExactScanValue;
  BigInt p1, q1, p2, q2;
  ExactWeighting weighting;
  BoxIndex box;

  value_type operator()(std::uint64_t flat) const {
    const std::uint64_t m = box.m(flat), n = box.n(flat);
    BigInt mm(m * m), nn(n * n);
    return weighting.weigh(surd_distance(mm * p1 + nn * p2, mm * q1 + nn * q2, weighting.d, weighting.r),
                           m * m + n * n);
  }
  bool less(const value_type& a, const value_type& b) const { return weighting.less(a, b); }
  double to_double(const value_type& v) const { return static_cast<double>(v.approx); }
};

template <class F>
F float_distance(const F& v) {
  return abs(v - round(v));
}

/// Working precision relative error per operation for the scan float type.
template <class F>
F unit_roundoff() {
  return ldexp(F(1), -std::numeric_limits<F>::digits + 2);
}

/// i -> i^alpha * ||j(i) * x|| in the float type F.
template <class F>
struct FloatFloorEval {
  using value_type = F;
  F x;
  F x_rad;
  double alpha = 1.0;
  IndexMap map = IndexMap::linear;

  value_type operator()(std::uint64_t i) const {
    F j(apply_index_map(map, i));
    return pow(F(i), F(alpha)) * float_distance(F(j * x));
  }
  bool less(const F& a, const F& b) const { return a < b; }
  double to_double(const F& v) const { return static_cast<double>(v); }
  /// Error bound of operator()(i); increasing in i.
  F radius(std::uint64_t i) const {
    F j(apply_index_map(map, i));
    F w = pow(F(i), F(alpha));
    return w * (j * x_rad + (abs(j * x) + 2) * unit_roundoff<F>() * 8);
  }
};

template <class F>
struct FloatLinearFormEval {
  using value_type = F;
  F x1, x2;
  F rad1, rad2;
  double beta = 1.0;
  BoxIndex box;

  value_type operator()(std::uint64_t flat) const {
    F mm(box.m(flat) * box.m(flat)), nn(box.n(flat) * box.n(flat));
    return pow(mm + nn, F(beta)) * float_distance(F(mm * x1 + nn * x2));
  }
  bool less(const F& a, const F& b) const { return a < b; }
  double to_double(const F& v) const { return static_cast<double>(v); }
  F radius(std::uint64_t m, std::uint64_t n) const {
    F mm(m * m), nn(n * n);
    return pow(mm + nn, F(beta)) *
           (mm * rad1 + nn * rad2 + (abs(mm * x1) + abs(nn * x2) + 2) * unit_roundoff<F>() * 8);
  }
};

/// k -> k^(1/(n-1)) * max_p ||k tau_p|| over the gap ratios tau_p.
template <class F>
struct MultiTimeEval {
  using value_type = F;
  std::vector<F> taus;
  F exponent;

  value_type operator()(std::uint64_t k) const {
    F worst = 0;
    for (const auto& t : taus) worst = std::max(worst, float_distance(F(F(k) * t)));
    return pow(F(k), exponent) * worst;
  }
  bool less(const F& a, const F& b) const { return a < b; }
  double to_double(const F& v) const { return static_cast<double>(v); }
};

/// k -> k * |sin(pi * xi * sqrt(k^2 + q))|, the loaded-string sine floor.
/// The argument is reduced modulo 1 in F before taking the sine.
template <class F>
struct LoadedSineEval {
  using value_type = F;
  F xi;
  F q;

  F distance(std::uint64_t k) const {
    F kk(k);
    return float_distance(F(xi * sqrt(kk * kk + q)));
  }
  value_type operator()(std::uint64_t k) const {
    return F(k) * sin(boost::math::constants::pi<F>() * distance(k));
  }
  bool less(const F& a, const F& b) const { return a < b; }
  double to_double(const F& v) const { return static_cast<double>(v); }
};

}  // namespace stratobs::kernels
