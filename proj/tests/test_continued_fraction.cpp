#include "stratobs/continued_fraction.hpp"
#include "stratobs/diophantine.hpp"

#include <doctest.h>

#include <random>

using namespace stratobs;

namespace {

ExactReal Q(const char* s) { return ExactReal::parse(s); }

std::vector<BigInt> ints(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("finite expansions") {
  auto cf = cf_expand(Q("rat:355/113"), 10);
  CHECK(cf.termination == CfTermination::finite);
  CHECK(cf.quotients == ints({3, 7, 16}));
  CHECK(cf_expand(Q("rat:1/3"), 10).quotients == ints({0, 3}));
  CHECK(cf_expand(Q("rat:22/7"), 10).quotients == ints({3, 7}));
  CHECK(cf_expand(Q("rat:5"), 10).quotients == ints({5}));
  // Canonical: last quotient >= 2, so 1/2 is [0;2] and not [0;1,1].
  CHECK(cf_expand(Q("rat:1/2"), 10).quotients == ints({0, 2}));
  CHECK(cf_expand(Q("rat:-7/3"), 10).quotients == ints({-3, 1, 2}));
}

TEST_CASE("periodic expansions") {
  auto s2 = cf_expand(Q("quad:sqrt(2)"), 10);
  CHECK(s2.termination == CfTermination::periodic);
  CHECK(s2.quotients == ints({1, 2}));
  CHECK(s2.period_start == 1);
  auto g = cf_expand(Q("quad:(1+1*sqrt(5))/2"), 10);
  CHECK(g.quotients == ints({1}));
  CHECK(g.period_start == 0);
  auto s7 = cf_expand(Q("quad:sqrt(7)"), 10);
  CHECK(s7.quotients == ints({2, 1, 1, 1, 4}));
  CHECK(s7.period_start == 1);
  CHECK(s7.quotient(8) == 4);
  CHECK(s7.quotient(9) == 1);
}

TEST_CASE("convergents") {
  auto c = convergents(cf_expand(Q("rat:1/3"), 5), 2);
  CHECK(c[0].p == 0);
  CHECK(c[0].q == 1);
  CHECK(c[1].p == 1);
  CHECK(c[1].q == 3);
  ContinuedFraction f;
  f.quotients = ints({1, 2, 2});
  auto d = convergents(f, 3);
  CHECK((d[0].p == 1 && d[0].q == 1));
  CHECK((d[1].p == 3 && d[1].q == 2));
  CHECK((d[2].p == 7 && d[2].q == 5));
  CHECK_THROWS_AS(convergents(f, 4), std::out_of_range);
  // Golden ratio: ratios of consecutive Fibonacci numbers.
  auto g = convergents(cf_expand(Q("quad:(1+1*sqrt(5))/2"), 5), 30);
  BigInt a = 1, b = 1;
  for (const auto& cv : g) {
    CHECK(cv.p == b);
    CHECK(cv.q == a);
    const BigInt next = a + b;
    a = b;
    b = next;
  }
}

TEST_CASE("convergent recurrences, coprimality and approximation bound") {
  for (const char* x : {"quad:sqrt(2)", "quad:(1+1*sqrt(13))/3", "quad:(-5+2*sqrt(11))/7", "rat:1234567/7654321"}) {
    const ExactReal v = Q(x);
    const auto cf = cf_expand(v, 40);
    const std::size_t n = cf.termination == CfTermination::finite ? cf.quotients.size() : 25;
    const auto cs = convergents(cf, n);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      CHECK(gcd(cs[i].p, cs[i].q) == 1);
      if (i >= 2) {
        CHECK(cs[i].p == cf.quotient(i) * cs[i - 1].p + cs[i - 2].p);
        CHECK(cs[i].q == cf.quotient(i) * cs[i - 1].q + cs[i - 2].q);
      }
      if (i + 1 < cs.size()) {
        // |x - p/q| < 1/(q q_next), with equality when the next convergent is x itself.
        const ExactReal err = v - ExactReal(Rational(cs[i].p, cs[i].q));
        const ExactReal bound(Rational(1, cs[i].q * cs[i + 1].q));
        if (cf.termination == CfTermination::finite && i + 2 == cs.size()) {
          CHECK((err <= bound && -err <= bound));
        } else {
          CHECK((err < bound && -err < bound));
        }
      }
    }
  }
}

TEST_CASE("Lagrange round trip for random quadratics") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> pq(-30, 30), dd(2, 60), rr(1, 20);
  for (int i = 0; i < 200; ++i) {
    int q = 0;
    while (q == 0) q = pq(rng);
    const ExactReal x = ExactReal::quadratic(pq(rng), q, dd(rng), rr(rng));
    const auto cf = cf_expand(x, 10);
    if (x.is_rational()) {
      CHECK(cf.termination == CfTermination::finite);
    } else {
      CHECK(cf.termination == CfTermination::periodic);
    }
    CHECK(cf_value(cf) == x);
  }
}

TEST_CASE("best approximation property") {
  const ExactReal xi = Q("quad:(-1+1*sqrt(5))/2");
  const auto cs = convergents(cf_expand(xi, 5), 12);
  for (std::size_t n = 1; n + 1 < cs.size(); ++n) {
    const ExactReal best = nearest_int_distance(ExactReal(Rational(cs[n].q)) * xi);
    for (BigInt q = 1; q < cs[n + 1].q; ++q) CHECK(best <= nearest_int_distance(ExactReal(Rational(q)) * xi));
  }
}

TEST_CASE("partial quotient suprema") {
  auto g = partial_quotient_sup(Q("quad:(1+1*sqrt(5))/2"), 10);
  CHECK((g.value == 1 && g.certain));
  auto s2 = partial_quotient_sup(Q("quad:sqrt(2)"), 10);
  CHECK((s2.value == 2 && s2.certain));
  auto r = partial_quotient_sup(Q("rat:22/7"), 10);
  CHECK((r.value == 7 && r.certain));
  auto e = partial_quotient_sup(Q("float:0.718281828459045"), 10);
  CHECK_FALSE(e.certain);
}

TEST_CASE("float expansions stop before untrustworthy quotients") {
  // e - 2 = [0; 1, 2, 1, 1, 4, 1, 1, 6, ...]; a 15-digit decimal pins the first few.
  const auto cf = cf_expand(Q("float:0.718281828459045"), 8);
  CHECK(cf.termination == CfTermination::truncated);
  CHECK(cf.quotients == ints({0, 1, 2, 1, 1, 4, 1, 1}));
  // An enclosure of width 1e-6 cannot certify many quotients.
  const auto coarse = cf_expand(ExactReal::floating(WideFloat("0.718281828459045"), WideFloat(1e-6)), 40);
  CHECK(coarse.termination == CfTermination::truncated);
  CHECK(coarse.quotients.size() < 12);
  CHECK(coarse.untrusted > 0);
}
