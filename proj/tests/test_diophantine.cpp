#include "stratobs/diophantine.hpp"

#include <doctest.h>

#include <chrono>
#include <cmath>

using namespace stratobs;
using kernels::Execution;

namespace {

ExactReal Q(const char* s) { return ExactReal::parse(s); }

// Frozen values from tests/oracles/compute_oracles.py (mpmath, 60 digits, brute force).
constexpr double kGoldenFloor = 0.38196601125010515;   // golden-1, alpha 1, k <= 1e5, at k = 1
constexpr double kSqrt2Floor = 0.34314575050761980;    // sqrt2-1, alpha 1, k <= 1e5, at k = 2
constexpr double kBeamAlpha15 = 0.12909819972548460;   // golden-1, k^1.5 ||k^2 xi||, k <= 1e3, at k = 12
constexpr double kCbrtLinearForm = 0.26774273788534800; // beta 2, box 100, at (1, 10)
constexpr double kReducedPlate = 0.24844960121134868;  // x1 = 2g, x2 = g, beta 1, box 50, at (8, 4)
constexpr double kMultiTimeCbrt = 0.29592461992295155; // n = 3, k <= 1e4, at k = 46

/// Independent long double scan of min k^alpha ||j(k) x||.
std::pair<long double, std::uint64_t> brute(long double x, double alpha, std::uint64_t kmax, bool square = false) {
  long double best = 1e30L;
  std::uint64_t arg = 0;
  for (std::uint64_t k = 1; k <= kmax; ++k) {
    const long double j = square ? static_cast<long double>(k) * k : k;
    const long double v = j * x;
    const long double d = std::fabs(v - std::nearbyint(v));
    const long double s = std::pow(static_cast<long double>(k), static_cast<long double>(alpha)) * d;
    if (s < best) {
      best = s;
      arg = k;
    }
  }
  return {best, arg};
}

}  // namespace

TEST_CASE("badly_approx_floor: golden and silver gaps") {
  const auto t0 = std::chrono::steady_clock::now();
  const FloorResult g = badly_approx_floor(Q("quad:(-1+1*sqrt(5))/2"), 1.0, 100000);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(g.value == doctest::Approx(kGoldenFloor).epsilon(1e-14));
  CHECK(g.argmin == 1);
  REQUIRE(g.exact_value);
  CHECK(*g.exact_value == Q("quad:(3-1*sqrt(5))/2"));
  CHECK(secs < 10.0);

  const FloorResult s = badly_approx_floor(Q("quad:(-1+1*sqrt(2))/1"), 1.0, 100000);
  CHECK(s.value == doctest::Approx(kSqrt2Floor).epsilon(1e-14));
  CHECK(s.argmin == 2);
  CHECK(*s.exact_value == Q("quad:(6-4*sqrt(2))/1"));
}

TEST_CASE("badly_approx_floor: rational gaps hit zero") {
  const FloorResult r = badly_approx_floor(Q("rat:1/3"), 1.0, 10);
  CHECK(r.zero);
  CHECK(r.value == 0.0);
  CHECK(r.argmin == 3);
  CHECK_FALSE(badly_approx_floor(Q("rat:1/3"), 1.0, 2).zero);
  CHECK(badly_approx_floor(Q("rat:1/5"), 2.0, 10, {}, kernels::IndexMap::square).argmin == 5);
}

TEST_CASE("badly_approx_floor agrees with an independent scan") {
  for (const char* x : {"quad:(-1+1*sqrt(5))/2", "quad:sqrt(3)", "quad:(2+3*sqrt(7))/5"}) {
    const ExactReal xi = Q(x);
    for (double alpha : {1.0, 1.5, 2.0}) {
      const auto [v, k] = brute(static_cast<long double>(xi.to_double()), alpha, 3000);
      const FloorResult f = badly_approx_floor(xi, alpha, 3000);
      CHECK(f.value == doctest::Approx(static_cast<double>(v)).epsilon(1e-9));
      CHECK(f.argmin == k);
    }
  }
  const auto [bv, bk] = brute(static_cast<long double>(Q("quad:(-1+1*sqrt(5))/2").to_double()), 1.5, 1000, true);
  const FloorResult b = badly_approx_floor(Q("quad:(-1+1*sqrt(5))/2"), 1.5, 1000, {}, kernels::IndexMap::square);
  CHECK(b.value == doctest::Approx(kBeamAlpha15).epsilon(1e-12));
  CHECK(b.argmin == 12);
  CHECK(b.value == doctest::Approx(static_cast<double>(bv)).epsilon(1e-6));
  CHECK(b.argmin == bk);
}

TEST_CASE("badly_approx_floor is monotone in k_max") {
  const ExactReal xi = Q("quad:(1+2*sqrt(3))/5");
  double prev = 1e9;
  for (std::uint64_t k : {1, 2, 5, 10, 50, 100, 1000, 5000}) {
    const double v = badly_approx_floor(xi, 1.0, k).value;
    CHECK(v <= prev);
    prev = v;
  }
}

TEST_CASE("serial and parallel scans agree exactly") {
  ScanOptions ser{Execution::serial, FloatPrecision::bits128};
  ScanOptions par{Execution::parallel, FloatPrecision::bits128};
  const ExactReal xi = Q("quad:(-1+1*sqrt(2))/1");
  const FloorResult a = badly_approx_floor(xi, 1.0, 20000, ser);
  const FloorResult b = badly_approx_floor(xi, 1.0, 20000, par);
  CHECK(a.value == b.value);
  CHECK(a.argmin == b.argmin);
  const ExactReal c = Q("cbrt:2");
  const FloorResult fa = badly_approx_floor(c, 1.0, 20000, ser);
  const FloorResult fb = badly_approx_floor(c, 1.0, 20000, par);
  CHECK(fa.value == fb.value);
  CHECK(fa.argmin == fb.argmin);
  const FloorResult la = linear_form_floor(c, Q("cbrt:4"), 2.0, 40, 40, ser);
  const FloorResult lb = linear_form_floor(c, Q("cbrt:4"), 2.0, 40, 40, par);
  CHECK(la.value == lb.value);
  CHECK(la.argmin == lb.argmin);
  CHECK(la.argmin_n == lb.argmin_n);
}

TEST_CASE("float inputs carry a certified lower bound") {
  const FloorResult f = badly_approx_floor(Q("float:0.718281828459045"), 1.0, 1000);
  CHECK(f.lower_bound <= f.value);
  CHECK(f.lower_bound > 0);
  CHECK_FALSE(f.exact_value);
}

TEST_CASE("theoretical floor from K") {
  CHECK(theoretical_floor_from_K(1) == Rational(1, 3));
  CHECK(theoretical_floor_from_K(2) == Rational(1, 4));
  CHECK(kGoldenFloor >= 1.0 / 3.0);
  // sqrt(2) - 1 has K = 2: floor 1/4 below the observed 0.343.
  const auto K = symmetric_partial_quotient_sup(Q("quad:(-1+1*sqrt(2))/1"), 10);
  CHECK(K.value == 2);
  CHECK(kSqrt2Floor >= theoretical_floor_from_K(K.value).to_double());
}

TEST_CASE("Dirichlet witnesses") {
  const ExactReal s = Q("quad:(-1+1*sqrt(2))/1");
  const auto w = dirichlet_witnesses(s, 25);
  REQUIRE(w.size() == 25);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const ExactReal d = nearest_int_distance(ExactReal(Rational(w[i])) * s);
    CHECK(d < ExactReal(Rational(1, w[i])));
    if (i > 0) CHECK(w[i] > w[i - 1]);
  }
  // Pell denominators of sqrt(2) - 1: 1, 2, 5, 12, 29, ...
  CHECK(w[0] == 1);
  CHECK(w[1] == 2);
  CHECK(w[2] == 5);
  CHECK(w[4] == 29);
  const auto f = dirichlet_witnesses(Q("quad:(-1+1*sqrt(5))/2"), 3);
  CHECK(f[0] == 1);
  CHECK(f[1] == 2);
  CHECK(f[2] == 3);
  CHECK_THROWS_AS(dirichlet_witnesses(Q("rat:1/2"), 3), std::invalid_argument);
}

TEST_CASE("E_alpha is empty below alpha = 1: witnesses drive the scaled distance to zero") {
  for (const char* x : {"quad:(-1+1*sqrt(5))/2", "quad:sqrt(3)", "cbrt:2"}) {
    const ExactReal xi = Q(x);
    const auto w = dirichlet_witnesses(xi, 12);
    const double alpha = 0.5;
    const double last = std::pow(w.back().convert_to<double>(), alpha) *
                        nearest_int_distance(ExactReal(Rational(w.back())) * xi).to_double();
    CHECK(last < std::pow(w.back().convert_to<double>(), alpha - 1.0) + 1e-15);
    CHECK(last < 0.05);
  }
}

TEST_CASE("nu estimates") {
  const NuEstimate g = nu_liminf_estimate(Q("quad:(-1+1*sqrt(5))/2"), 40);
  CHECK(g.estimate == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-6));
  const NuEstimate s = nu_liminf_estimate(Q("quad:sqrt(2)"), 40);
  CHECK(s.estimate == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))).epsilon(1e-6));
  // The liminf over a subsequence is bounded by a floor over a superset window only from above.
  CHECK(g.estimate >= 0);
  CHECK(g.estimate >= badly_approx_floor(Q("quad:(-1+1*sqrt(5))/2"), 1.0, 1000).value);
  CHECK_THROWS_AS(nu_liminf_estimate(Q("rat:2/7"), 10), std::invalid_argument);
}

TEST_CASE("linear form floors") {
  const FloorResult half = linear_form_floor(Q("rat:1/2"), Q("rat:1/2"), 3.0, 5, 5);
  CHECK(half.zero);
  CHECK(half.argmin == 1);
  CHECK(half.argmin_n == 1);

  const FloorResult c = linear_form_floor(Q("cbrt:2"), Q("cbrt:4"), 2.0, 100, 100);
  CHECK(c.value == doctest::Approx(kCbrtLinearForm).epsilon(1e-12));
  CHECK(c.argmin == 1);
  CHECK(c.argmin_n == 10);
  CHECK(c.precision_warning);
  CHECK(c.lower_bound > 0);

  const ExactReal g = Q("quad:(-1+1*sqrt(5))/2");
  const FloorResult red = linear_form_floor(ExactReal(2) * g, g, 1.0, 50, 50);
  CHECK(red.value == doctest::Approx(kReducedPlate).epsilon(1e-14));
  CHECK(red.argmin == 8);
  CHECK(red.argmin_n == 4);
  CHECK(red.exact_value);
  CHECK_FALSE(red.precision_warning);
  const FloorResult swapped = linear_form_floor(g, ExactReal(2) * g, 1.0, 100, 100);
  CHECK(swapped.value == doctest::Approx(kReducedPlate).epsilon(1e-14));
  CHECK(swapped.argmin == 4);
  CHECK(swapped.argmin_n == 8);
}

TEST_CASE("multi-time floors") {
  const MultiTimeResult m = multi_time_floor_ratios({Q("cbrt:2"), Q("cbrt:4")}, 10000);
  CHECK(m.c_star == doctest::Approx(kMultiTimeCbrt).epsilon(1e-12));
  CHECK(m.argmin == 46);
  CHECK(m.exponent == doctest::Approx(0.5));
  ScanOptions hi;
  hi.precision = FloatPrecision::bits192;
  const MultiTimeResult m2 = multi_time_floor_ratios({Q("cbrt:2"), Q("cbrt:4")}, 10000, hi);
  CHECK(m2.c_star == doctest::Approx(m.c_star).epsilon(1e-15));
  const MultiTimeResult one = multi_time_floor_ratios({Q("quad:(-1+1*sqrt(5))/2")}, 100000);
  CHECK(one.c_star == doctest::Approx(kGoldenFloor).epsilon(1e-14));
}
