#include "stratobs/diophantine.hpp"

#include <algorithm>
#include <stdexcept>

namespace stratobs {

using kernels::IndexMap;

namespace {

template <class F>
F enclosure_radius(const ExactReal& x) {
  F mid(x.mid());
  return F(x.radius()) + abs(mid) * kernels::unit_roundoff<F>();
}

template <class F>
FloorResult float_floor(const ExactReal& xi, double alpha, std::uint64_t k_max, const ScanOptions& opts,
                        IndexMap map) {
  kernels::FloatFloorEval<F> eval{F(xi.mid()), enclosure_radius<F>(xi), alpha, map};
  auto best = kernels::min_scan(eval, 1, k_max, opts.execution);
  FloorResult out;
  out.value = static_cast<double>(best.value);
  out.lower_bound = static_cast<double>(best.value - eval.radius(k_max));
  out.argmin = best.index;
  return out;
}

template <class F>
FloorResult float_linear_form(const ExactReal& x1, const ExactReal& x2, double beta, std::uint64_t m_max,
                              std::uint64_t n_max, const ScanOptions& opts) {
  kernels::FloatLinearFormEval<F> eval{F(x1.mid()), F(x2.mid()), enclosure_radius<F>(x1),
                                       enclosure_radius<F>(x2), beta, kernels::BoxIndex{n_max}};
  auto best = kernels::min_scan(eval, 0, m_max * n_max - 1, opts.execution);
  FloorResult out;
  out.value = static_cast<double>(best.value);
  out.lower_bound = static_cast<double>(best.value - eval.radius(m_max, n_max));
  out.argmin = eval.box.m(best.index);
  out.argmin_n = eval.box.n(best.index);
  out.precision_warning = true;
  return out;
}

template <class F>
MultiTimeResult float_multi_time(const std::vector<ExactReal>& taus, std::uint64_t k_max,
                                 const ScanOptions& opts) {
  kernels::MultiTimeEval<F> eval;
  F max_rad = 0, max_abs = 0;
  for (const auto& t : taus) {
    eval.taus.emplace_back(t.mid());
    max_rad = std::max(max_rad, enclosure_radius<F>(t));
    max_abs = std::max(max_abs, F(abs(F(t.mid()))));
  }
  const double exponent = 1.0 / static_cast<double>(taus.size());
  eval.exponent = F(1) / F(static_cast<unsigned>(taus.size()));
  auto best = kernels::min_scan(eval, 1, k_max, opts.execution);
  F kk(k_max);
  F rad = pow(kk, eval.exponent) * (kk * max_rad + (kk * max_abs + 2) * kernels::unit_roundoff<F>() * 8);
  return {static_cast<double>(best.value), static_cast<double>(best.value - rad), best.index, exponent};
}

ExactReal exact_from_scan(const kernels::ExactScanValue& v, const kernels::ExactWeighting& w) {
  return ExactReal::quadratic(v.x, v.y, w.d, w.r);
}

}  // namespace

ExactReal nearest_int_distance(const ExactReal& x) {
  if (x.is_floating()) {
    const auto& f = x.as_floating();
    WideFloat d = abs(f.mid - round(f.mid));
    return ExactReal::floating(d, f.rad + abs(f.mid) * ldexp(WideFloat(1), -250));
  }
  ExactReal frac = x - ExactReal(Rational(x.floor()));
  ExactReal twice = frac * ExactReal(2);
  if ((twice <=> ExactReal(1)) == std::partial_ordering::greater) return ExactReal(1) - frac;
  return frac;
}

FloorResult badly_approx_floor(const ExactReal& xi, double alpha, std::uint64_t k_max, ScanOptions opts,
                               IndexMap map) {
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  if (!(alpha >= 0)) throw std::invalid_argument("exponent must be >= 0");
  if (auto parts = surd_parts(xi)) {
    kernels::ExactFloorEval eval{parts->p, parts->q, kernels::ExactWeighting::make(parts->d, parts->r, alpha), map};
    auto best = kernels::min_scan(eval, 1, k_max, opts.execution);
    FloorResult out;
    out.value = static_cast<double>(best.value.approx);
    out.lower_bound = out.value;
    out.argmin = best.index;
    out.zero = best.value.x == 0 && best.value.y == 0;
    if (eval.weighting.int_exponent >= 0) out.exact_value = exact_from_scan(best.value, eval.weighting);
    return out;
  }
  return opts.precision == FloatPrecision::bits128 ? float_floor<Float128>(xi, alpha, k_max, opts, map)
                                                   : float_floor<Float192>(xi, alpha, k_max, opts, map);
}

FloorProfile floor_profile(const ExactReal& xi, double alpha, std::uint64_t k_max, ScanOptions opts,
                           IndexMap map) {
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  FloorProfile out;
  if (auto parts = surd_parts(xi)) {
    kernels::ExactFloorEval dist{parts->p, parts->q, kernels::ExactWeighting::make(parts->d, parts->r, 0), map};
    kernels::ExactFloorEval scaled{parts->p, parts->q, kernels::ExactWeighting::make(parts->d, parts->r, alpha),
                                   map};
    out.distance = kernels::profile(dist, 1, k_max, opts.execution);
    out.scaled = kernels::profile(scaled, 1, k_max, opts.execution);
    return out;
  }
  kernels::FloatFloorEval<Float128> dist{Float128(xi.mid()), 0, 0.0, map};
  kernels::FloatFloorEval<Float128> scaled{Float128(xi.mid()), 0, alpha, map};
  out.distance = kernels::profile(dist, 1, k_max, opts.execution);
  out.scaled = kernels::profile(scaled, 1, k_max, opts.execution);
  return out;
}

Rational theoretical_floor_from_K(const BigInt& K) {
  if (K < 1) throw std::invalid_argument("K must be >= 1");
  return Rational(1, K + 2);
}

PartialQuotientSup symmetric_partial_quotient_sup(const ExactReal& xi, std::size_t depth) {
  PartialQuotientSup a = partial_quotient_sup(xi, depth);
  PartialQuotientSup b = partial_quotient_sup(-xi, depth);
  if (a.certain && b.certain) return a.value <= b.value ? a : b;
  if (a.certain) return a;
  if (b.certain) return b;
  return a.value <= b.value ? a : b;
}

std::vector<BigInt> dirichlet_witnesses(const ExactReal& xi, std::size_t count) {
  if (xi.is_rational()) throw std::invalid_argument("Dirichlet witnesses need an irrational number");
  ContinuedFraction cf = cf_expand(xi, 4 * count + 16);
  std::vector<BigInt> out;
  for (std::size_t n = 0; out.size() < count; ++n) {
    if (!cf.has_quotient(n)) {
      throw std::runtime_error("float input certifies only " + std::to_string(out.size()) + " witnesses");
    }
    BigInt q = convergents(cf, n + 1).back().q;
    if (!out.empty() && out.back() == q) continue;
    ExactReal k(Rational{q});
    // ||k xi|| < 1/k  <=>  k ||k xi|| < 1
    auto cmp = (k * nearest_int_distance(k * xi)) <=> ExactReal(1);
    if (cmp == std::partial_ordering::less) {
      out.push_back(q);
    } else if (cmp == std::partial_ordering::unordered) {
      throw std::runtime_error("float input certifies only " + std::to_string(out.size()) + " witnesses");
    }
  }
  return out;
}

NuEstimate nu_liminf_estimate(const ExactReal& xi, std::size_t depth) {
  if (xi.is_rational()) throw std::invalid_argument("nu estimate needs an irrational number");
  if (depth < 2) throw std::invalid_argument("nu estimate needs depth >= 2");
  ContinuedFraction cf = cf_expand(xi, depth);
  std::size_t available = depth;
  while (available > 0 && !cf.has_quotient(available - 1)) --available;
  if (available < 2) throw std::runtime_error("not enough certified partial quotients");
  auto conv = convergents(cf, available);

  NuEstimate out;
  for (const auto& c : conv) {
    ExactReal k(Rational{c.q});
    out.convergent_values.push_back((k * nearest_int_distance(k * xi)).to_double());
  }
  const std::size_t n = out.convergent_values.size();
  const std::size_t window = std::max<std::size_t>(2, n / 4);
  for (std::size_t end = n; end >= window; end -= window) {
    auto first = out.convergent_values.begin() + static_cast<std::ptrdiff_t>(end - window);
    out.window_minima.insert(out.window_minima.begin(),
                             *std::min_element(first, first + static_cast<std::ptrdiff_t>(window)));
    if (end < 2 * window) break;
  }
  out.estimate = out.window_minima.back();
  out.monotone = std::is_sorted(out.window_minima.begin(), out.window_minima.end()) ||
                 std::is_sorted(out.window_minima.rbegin(), out.window_minima.rend());
  return out;
}

FloorResult linear_form_floor(const ExactReal& x1, const ExactReal& x2, double beta, std::uint64_t m_max,
                              std::uint64_t n_max, ScanOptions opts) {
  if (m_max < 1 || n_max < 1) throw std::invalid_argument("box bounds must be >= 1");
  if (!(beta >= 0)) throw std::invalid_argument("weight exponent must be >= 0");
  if (auto common = common_radical(x1, x2)) {
    const auto& [a, b] = *common;
    kernels::ExactLinearFormEval eval{a.p * b.r, a.q * b.r, b.p * a.r, b.q * a.r,
                                      kernels::ExactWeighting::make(a.d, a.r * b.r, beta), kernels::BoxIndex{n_max}};
    auto best = kernels::min_scan(eval, 0, m_max * n_max - 1, opts.execution);
    FloorResult out;
    out.value = static_cast<double>(best.value.approx);
    out.lower_bound = out.value;
    out.argmin = eval.box.m(best.index);
    out.argmin_n = eval.box.n(best.index);
    out.zero = best.value.x == 0 && best.value.y == 0;
    if (eval.weighting.int_exponent >= 0) out.exact_value = exact_from_scan(best.value, eval.weighting);
    return out;
  }
  return opts.precision == FloatPrecision::bits128
             ? float_linear_form<Float128>(x1, x2, beta, m_max, n_max, opts)
             : float_linear_form<Float192>(x1, x2, beta, m_max, n_max, opts);
}

MultiTimeResult multi_time_floor_ratios(const std::vector<ExactReal>& taus, std::uint64_t k_max,
                                        ScanOptions opts) {
  if (taus.empty()) throw std::invalid_argument("multi-time floor needs at least two observation times");
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  return opts.precision == FloatPrecision::bits128 ? float_multi_time<Float128>(taus, k_max, opts)
                                                   : float_multi_time<Float192>(taus, k_max, opts);
}

}  // namespace stratobs
