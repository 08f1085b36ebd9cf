#include "stratobs/certify.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stratobs {
namespace {

constexpr std::size_t kCfDepth = 64;

void fill_floor(StrategicCertificate& c, const FloorResult& f) {
  c.c_star = f.value;
  c.c_star_exact = f.exact_value;
  c.c_star_lower_bound = f.lower_bound;
  c.argmin = f.argmin;
  c.argmin_n = f.argmin_n;
  c.precision_warning = f.precision_warning;
}

void mark_zero(StrategicCertificate& c, std::uint64_t k, std::uint64_t n = 0) {
  c.verdict = Verdict::refuted;
  c.c_star = 0.0;
  c.c_star_exact = ExactReal(0);
  c.c_star_lower_bound = 0.0;
  c.argmin = k;
  c.argmin_n = n;
  const bool beyond = k > c.k_max || (c.n_max != 0 && n > c.n_max);
  if (beyond) c.notes.emplace_back("exact zero distance at an index beyond the scan range");
}

void record_K(StrategicCertificate& c, const ExactReal& x) {
  if (x.is_rational()) return;
  const PartialQuotientSup pq = symmetric_partial_quotient_sup(x, kCfDepth);
  if (pq.unbounded) return;
  c.K = pq.value;
  c.K_certain = pq.certain;
  if (pq.certain) c.theoretical_floor = theoretical_floor_from_K(pq.value);
}

/// Verdict for a scan without an exact zero and without an all-k argument.
Verdict scan_verdict(const ExactReal& x, const FloorResult& f) {
  if (x.is_floating() && !(f.lower_bound > 0)) return Verdict::inconclusive_float;
  return f.value > 0 ? Verdict::certified_up_to_scan : Verdict::inconclusive_float;
}

StrategicCertificate certify_one_number(const ExactReal& xi, double alpha, std::uint64_t k_max, ScanOptions opts,
                                        kernels::IndexMap map, double all_k_alpha) {
  if (!(alpha >= 0)) throw std::invalid_argument("exponent must be >= 0");
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  const bool square = map == kernels::IndexMap::square;
  StrategicCertificate c;
  c.system = square ? "beam" : "string";
  c.gap = xi;
  c.exponent = alpha;
  c.scale = square ? "k^2" : "k";
  c.k_max = k_max;
  const FloorResult f = badly_approx_floor(xi, alpha, k_max, opts, map);
  fill_floor(c, f);

  if (xi.is_rational()) {
    // ||j(k) p/r|| = 0 first at k = r (string) or the smallest k with r | k^2 (beam).
    const BigInt& r = xi.as_rational().den();
    const BigInt k = square ? smallest_square_multiple_root(r) : r;
    if (f.zero)
      mark_zero(c, f.argmin);
    else if (k <= std::numeric_limits<std::uint64_t>::max())
      mark_zero(c, static_cast<std::uint64_t>(k));
    else
      c.verdict = Verdict::refuted;
    return c;
  }
  if (f.zero) {
    mark_zero(c, f.argmin);
    return c;
  }
  record_K(c, xi);
  if (c.K_certain && xi.is_exact() && alpha >= all_k_alpha)
    c.verdict = Verdict::certified_all_k;
  else
    c.verdict = scan_verdict(xi, f);
  return c;
}

template <class F>
struct LoadedDistanceEval {
  using value_type = F;
  kernels::LoadedSineEval<F> sine;
  value_type operator()(std::uint64_t k) const { return F(k) * sine.distance(k); }
  bool less(const F& a, const F& b) const { return a < b; }
  double to_double(const F& v) const { return static_cast<double>(v); }
};

template <class F>
struct MixedEval {
  using value_type = F;
  F xi;
  F q;
  bool beam = false;
  double alpha = 1.0;
  value_type operator()(std::uint64_t k) const {
    F kk(k);
    F w = beam ? kk * kk : sqrt(kk * kk + q);
    return pow(kk, F(alpha)) * kernels::float_distance(F(w * xi + F(0.5)));
  }
  bool less(const F& a, const F& b) const { return a < b; }
  double to_double(const F& v) const { return static_cast<double>(v); }
};

template <class Eval>
kernels::ScanBest<typename Eval::value_type> run(const Eval& e, std::uint64_t k_max, ScanOptions opts) {
  return kernels::min_scan(e, 1, k_max, opts.execution);
}

struct LoadedScan {
  double sine_floor = 0.0;
  std::uint64_t sine_argmin = 0;
  double dist_floor = 0.0;
  std::uint64_t dist_argmin = 0;
};

template <class F>
LoadedScan loaded_scan(const ExactReal& xi, const ExactReal& q, std::uint64_t k_max, ScanOptions opts) {
  kernels::LoadedSineEval<F> sine{F(xi.mid()), F(q.mid())};
  const auto s = run(sine, k_max, opts);
  const auto d = run(LoadedDistanceEval<F>{sine}, k_max, opts);
  return {abs(s.value).template convert_to<double>(), s.index, d.value.template convert_to<double>(), d.index};
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::certified_all_k: return "certified-all-k";
    case Verdict::certified_up_to_scan: return "certified-up-to-scan";
    case Verdict::refuted: return "refuted";
    default: return "inconclusive-float";
  }
}

StrategicCertificate certify_string(const ExactReal& xi, double alpha, std::uint64_t k_max, ScanOptions opts) {
  StrategicCertificate c = certify_one_number(xi, alpha, k_max, opts, kernels::IndexMap::linear, 1.0);
  if (alpha < 1 && !xi.is_rational()) {
    c.notes.emplace_back("exponent below 1: Dirichlet witnesses drive k^alpha ||k xi|| to 0, no strategic pair");
    try {
      c.dirichlet_witnesses = dirichlet_witnesses(xi, 5);
    } catch (const std::runtime_error&) {
      c.notes.emplace_back("float gap ran out of certified convergents before 5 witnesses");
    }
  }
  return c;
}

StrategicCertificate certify_beam(const ExactReal& xi, double alpha, std::uint64_t k_max, ScanOptions opts) {
  return certify_one_number(xi, alpha, k_max, opts, kernels::IndexMap::square, 2.0);
}

namespace {

struct PlateReduction {
  std::uint64_t N;
  ExactReal base;  // the single number theta of the reduced scan
};

StrategicCertificate certify_plate_impl(const ExactReal& theta1, const ExactReal& theta2, double alpha,
                                        std::uint64_t m_max, std::uint64_t n_max, ScanOptions opts,
                                        const std::optional<PlateReduction>& red) {
  if (!(alpha >= 0)) throw std::invalid_argument("exponent must be >= 0");
  if (m_max < 1 || n_max < 1) throw std::invalid_argument("box bounds must be >= 1");
  StrategicCertificate c;
  c.system = "plate";
  c.gap = theta2;
  c.gap2 = theta1;
  c.exponent = alpha;
  c.scale = "m^2+n^2";
  c.k_max = m_max;
  c.n_max = n_max;
  const FloorResult f = linear_form_floor(theta1, theta2, alpha, m_max, n_max, opts);
  fill_floor(c, f);
  if (red) {
    c.plate_reduction_N = red->N;
    c.notes.emplace_back("reduced to a single-number scan: sides satisfy an integer square ratio N");
  }

  if (theta1.is_rational() && theta2.is_rational()) {
    // m = n = lcm of the denominators makes m^2 theta1 + n^2 theta2 an integer.
    const BigInt L = lcm(theta1.as_rational().den(), theta2.as_rational().den());
    if (f.zero)
      mark_zero(c, f.argmin, f.argmin_n);
    else
      mark_zero(c, static_cast<std::uint64_t>(L), static_cast<std::uint64_t>(L));
    return c;
  }
  if (f.zero) {
    mark_zero(c, f.argmin, f.argmin_n);
    return c;
  }
  if (red && red->base.is_exact()) {
    record_K(c, red->base);
    if (c.K_certain) c.theoretical_floor = Rational(1, BigInt(red->N) * (*c.K + 2));
    if (c.K_certain && alpha >= 1.0) {
      c.verdict = Verdict::certified_all_k;
      return c;
    }
  }
  const bool exact = theta1.is_exact() && theta2.is_exact() && !f.precision_warning;
  if (exact)
    c.verdict = f.value > 0 ? Verdict::certified_up_to_scan : Verdict::inconclusive_float;
  else
    c.verdict = f.lower_bound > 0 ? Verdict::certified_up_to_scan : Verdict::inconclusive_float;
  return c;
}

std::optional<std::uint64_t> exact_integer_ratio(const ExactReal& num, const ExactReal& den) {
  if (!num.is_exact() || !den.is_exact() || den.sign() == 0) return std::nullopt;
  const ExactReal r = num / den;
  if (!r.is_rational() || !r.as_rational().is_integer() || r.as_rational().sign() <= 0) return std::nullopt;
  const BigInt& n = r.as_rational().num();
  if (n > std::numeric_limits<std::uint32_t>::max()) return std::nullopt;
  return static_cast<std::uint64_t>(n);
}

}  // namespace

StrategicCertificate certify_plate_theta(const ExactReal& theta1, const ExactReal& theta2, double alpha,
                                         std::uint64_t m_max, std::uint64_t n_max, ScanOptions opts) {
  std::optional<PlateReduction> red;
  if (auto N = exact_integer_ratio(theta1, theta2))
    red = PlateReduction{*N, theta2};
  else if (auto N2 = exact_integer_ratio(theta2, theta1))
    red = PlateReduction{*N2, theta1};
  return certify_plate_impl(theta1, theta2, alpha, m_max, n_max, opts, red);
}

StrategicCertificate certify_plate(const ExactReal& xi, const WaveSystem& plate, double alpha, std::uint64_t m_max,
                                   std::uint64_t n_max, ScanOptions opts) {
  if (plate.type() != WaveSystem::Type::plate) throw std::invalid_argument("certify_plate needs a plate system");
  const WideFloat pi2 = wide_pi() * wide_pi();
  const auto theta_for = [&](double side) {
    const WideFloat s2 = WideFloat(side) * WideFloat(side);
    const WideFloat v = pi2 * xi.mid() / s2;
    return ExactReal::floating(v, pi2 / s2 * xi.radius() + abs(v) * ldexp(WideFloat(1), -240));
  };
  // b^2 = N a^2 means theta1 = N theta2; detected from the side lengths.
  const double ratio = (plate.side_b() / plate.side_a()) * (plate.side_b() / plate.side_a());
  const double inv = 1.0 / ratio;
  const auto near_int = [](double r) { return r >= 1 && std::abs(r - std::round(r)) <= 1e-12 * r; };
  if (near_int(ratio)) {
    const ExactReal t2 = theta_for(plate.side_b());
    const auto N = static_cast<std::uint64_t>(std::llround(ratio));
    return certify_plate_impl(ExactReal(static_cast<std::int64_t>(N)) * t2, t2, alpha, m_max, n_max, opts,
                              PlateReduction{N, t2});
  }
  if (near_int(inv)) {
    const ExactReal t1 = theta_for(plate.side_a());
    const auto N = static_cast<std::uint64_t>(std::llround(inv));
    return certify_plate_impl(t1, ExactReal(static_cast<std::int64_t>(N)) * t1, alpha, m_max, n_max, opts,
                              PlateReduction{N, t1});
  }
  return certify_plate_impl(theta_for(plate.side_a()), theta_for(plate.side_b()), alpha, m_max, n_max, opts,
                            std::nullopt);
}

LoadedThreshold loaded_q_threshold(double c, double delta, std::optional<BigInt> K) {
  if (!(c > 0)) throw std::invalid_argument("base floor c must be positive");
  if (delta == 0) throw std::invalid_argument("gap must be nonzero");
  LoadedThreshold t;
  t.c = c;
  t.delta = delta;
  t.q_max = 2.0 * c / std::abs(delta);
  if (K) t.q_max_refined = 4.0 / (std::abs(delta) * (K->convert_to<double>() + 2.0));
  return t;
}

StrategicCertificate certify_loaded(const ExactReal& xi, const ExactReal& q, std::uint64_t k_max, ScanOptions opts) {
  if (q.sign() <= 0) throw std::invalid_argument("loaded string needs q > 0");
  StrategicCertificate c = certify_string(xi, 1.0, k_max, opts);
  c.system = "loaded-string";
  c.notes.clear();
  LoadedDetails L;
  L.q = q;
  const double delta = std::numbers::pi * xi.to_double();

  const LoadedScan scan = opts.precision == FloatPrecision::bits192 ? loaded_scan<Float192>(xi, q, k_max, opts)
                                                                    : loaded_scan<Float128>(xi, q, k_max, opts);
  L.sine_floor = scan.sine_floor;
  L.sine_argmin = scan.sine_argmin;
  c.c_star = scan.dist_floor;
  c.c_star_exact.reset();
  c.c_star_lower_bound = scan.dist_floor;
  c.argmin = scan.dist_argmin;

  if (xi.is_rational()) {
    if (q.is_rational()) {
      // sqrt(k^2 + c/d) = sqrt(k^2 d^2 + c d)/d; a rational root needs j^2 - (kd)^2 = cd,
      // so j + kd <= cd and k <= (cd - 1)/(2d).
      const Rational& qr = q.as_rational();
      const BigInt cd = qr.num() * qr.den();
      const BigInt d = qr.den();
      const BigInt bound = (cd - 1) / (2 * d);
      L.hypothesis = "satisfied";
      for (BigInt k = 1; k <= bound; ++k) {
        const auto j = exact_sqrt(k * k * d * d + cd);
        if (!j) continue;
        const Rational x(*j, d);
        const auto kk = static_cast<std::uint64_t>(k);
        L.perfect_squares.emplace_back(kk, x);
        if ((xi.as_rational() * x).is_integer() && !L.violated_at) {
          L.violated_at = kk;
          L.hypothesis = "violated";
        }
      }
    } else {
      L.hypothesis = "checked-up-to-kmax";
    }
  } else {
    L.hypothesis = "not-applicable";
  }

  if (!xi.is_rational() && xi.is_exact() && c.K_certain) {
    L.base_c = 2.0 * c.theoretical_floor->to_double();
    const LoadedThreshold th = loaded_q_threshold(L.base_c, delta, c.K);
    L.q_max = th.q_max;
    L.q_max_refined = *th.q_max_refined;
    L.c_prime = L.base_c - std::abs(delta) * q.to_double() / 2.0;
    L.perturbation_applies = q.to_double() < th.q_max;
  }

  if (L.violated_at) {
    c.verdict = Verdict::refuted;
    c.argmin = *L.violated_at;
    c.c_star = 0.0;
    c.c_star_exact = ExactReal(0);
    c.c_star_lower_bound = 0.0;
  } else if (L.perturbation_applies) {
    c.verdict = Verdict::certified_all_k;
  } else {
    c.verdict = L.sine_floor > 0 ? Verdict::certified_up_to_scan : Verdict::inconclusive_float;
  }
  if (c.K_certain && !L.perturbation_applies)
    c.notes.emplace_back("load exceeds the perturbation threshold; verdict from the finite scan only");
  c.loaded = std::move(L);
  return c;
}

StrategicCertificate certify_mixed(const ExactReal& xi, const WaveSystem& system, double alpha, std::uint64_t k_max,
                                   ScanOptions opts) {
  if (system.type() == WaveSystem::Type::plate) throw std::invalid_argument("mixed certification covers strings and beams");
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  StrategicCertificate c;
  const bool beam = system.type() == WaveSystem::Type::beam;
  c.system = system.name() + "-mixed";
  c.gap = xi;
  c.exponent = alpha;
  c.scale = beam ? "k^2" : "k";
  c.k_max = k_max;
  c.notes.emplace_back("cosine-type floor dist(omega_k xi, Z + 1/2); no all-k argument");

  const bool integer_omega = beam || system.load().sign() == 0;
  if (xi.is_rational() && integer_omega) {
    // omega p/r is a half-integer iff r | 2 omega p with an odd quotient.
    const BigInt& p = xi.as_rational().num();
    const BigInt& r = xi.as_rational().den();
    for (std::uint64_t k = 1; k <= k_max; ++k) {
      const BigInt w = beam ? BigInt(k) * k : BigInt(k);
      const BigInt two_wp = 2 * w * p;
      if (two_wp % r == 0 && ((two_wp / r) % 2) != 0) {
        mark_zero(c, k);
        return c;
      }
    }
  }
  const auto fill = [&](auto best) {
    c.c_star = static_cast<double>(best.value);
    c.argmin = best.index;
  };
  if (opts.precision == FloatPrecision::bits192)
    fill(run(MixedEval<Float192>{Float192(xi.mid()), Float192(system.load().mid()), beam, alpha}, k_max, opts));
  else
    fill(run(MixedEval<Float128>{Float128(xi.mid()), Float128(system.load().mid()), beam, alpha}, k_max, opts));
  c.c_star_lower_bound = c.c_star;
  c.verdict = c.c_star > 0 ? Verdict::certified_up_to_scan : Verdict::inconclusive_float;
  return c;
}

PerturbationGap perturbation_gap(std::uint64_t k, double q, double delta) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (q < 0) throw std::invalid_argument("q must be >= 0");
  const double kd = static_cast<double>(k);
  const double w = std::sqrt(kd * kd + q);
  // sin A - sin B = 2 cos((A+B)/2) sin((A-B)/2), with A - B = delta q/(w + k) computed without cancellation.
  const double diff = delta * q / (w + kd);
  const double sum = delta * (w + kd);
  return {std::abs(delta) * q / (2.0 * kd), std::abs(2.0 * std::cos(sum / 2.0) * std::sin(diff / 2.0))};
}

MultiTimeResult multi_time_floor(const std::vector<ExactReal>& times_over_pi, std::uint64_t k_max, ScanOptions opts) {
  if (times_over_pi.size() < 2) throw std::invalid_argument("multi-time observation needs at least two times");
  for (std::size_t i = 0; i < times_over_pi.size(); ++i)
    for (std::size_t j = i + 1; j < times_over_pi.size(); ++j) {
      int s = 0;
      try {
        s = (times_over_pi[i] - times_over_pi[j]).sign();
      } catch (const UndecidableError&) {
        throw std::invalid_argument("observation times are not distinguishable at working precision");
      }
      if (s == 0) throw std::invalid_argument("duplicate observation times");
    }
  std::vector<ExactReal> taus;
  for (std::size_t p = 1; p < times_over_pi.size(); ++p) taus.push_back(times_over_pi[0] - times_over_pi[p]);
  return multi_time_floor_ratios(taus, k_max, opts);
}

}  // namespace stratobs
