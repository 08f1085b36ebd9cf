#include "stratobs/diophantine.hpp"
#include "stratobs/mode_map.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace stratobs;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

std::vector<ObservationRow> pos_pos(double t0, double t1) {
  return {{Role::position, ObservationTime::at(t0)}, {Role::position, ObservationTime::at(t1)}};
}

std::vector<ObservationRow> exact_rows(const char* t0_over_pi, const char* t1_over_pi, Role k0 = Role::position,
                                       Role k1 = Role::position) {
  return {{k0, ObservationTime::exact(ExactReal::parse(t0_over_pi))},
          {k1, ObservationTime::exact(ExactReal::parse(t1_over_pi))}};
}

/// Independent closed form of ||T^{-1}|| for position/position rows.
double closed_form(double phi) {
  return std::sqrt(1.0 + std::abs(std::cos(phi))) / (std::sqrt(2.0) * std::abs(std::sin(phi)));
}

}  // namespace

TEST_CASE("trig_pi is exact at multiples of 1/2") {
  CHECK(trig_pi(ExactReal(3)).sin_zero);
  CHECK(trig_pi(ExactReal(3)).cos == -1.0);
  CHECK(trig_pi(ExactReal(Rational(5, 2))).cos_zero);
  CHECK(trig_pi(ExactReal(Rational(5, 2))).sin == 1.0);
  CHECK(trig_pi(ExactReal(Rational(-1, 2))).sin == -1.0);
  const PiTrig t = trig_pi(ExactReal::parse("quad:(-1+1*sqrt(5))/2"));
  CHECK(t.sin == doctest::Approx(std::sin(kPi * 0.6180339887498949)));
  CHECK_FALSE(t.sin_zero);
  // Tiny phases keep relative precision: sin(pi (99 - 70 sqrt 2)).
  const PiTrig u = trig_pi(ExactReal::parse("quad:(99-70*sqrt(2))/1"));
  CHECK(u.sin == doctest::Approx(std::sin(kPi * 0.005050633883346584)).epsilon(1e-13));
}

TEST_CASE("mode map rows and determinants") {
  const auto sys = WaveSystem::string();
  // t0 = 0, t1 = -pi/2: Delta = pi/2.
  const ModeMap m = mode_map({1}, pos_pos(0.0, -kPi / 2), sys);
  CHECK(std::abs(m.matrix[0][0] - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(m.matrix[0][1] - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(m.matrix[1][0] - Complex(0, -1)) < 1e-15);
  CHECK(std::abs(mode_map_det(m) - 2.0 * kI) < 1e-15);
  CHECK(std::abs(mode_map_det_numeric(m) - 2.0 * kI) < 1e-15);

  const ModeMap v = mode_map({1}, {{Role::velocity, ObservationTime::at(0)}, {Role::position, ObservationTime::at(1)}}, sys);
  CHECK(std::abs(v.matrix[0][0] - kI) < 1e-15);
  CHECK(std::abs(v.matrix[0][1] + kI) < 1e-15);

  const auto plate = WaveSystem::plate(kPi, kPi);
  CHECK(mode_map({1, 1}, pos_pos(0.3, 0), plate).omega == doctest::Approx(2.0));

  // Delta = pi/3, k = 3: resonance, exactly.
  const ModeMap r = mode_map({3}, exact_rows("1/3", "0"), sys);
  CHECK(mode_map_det(r) == Complex(0, 0));
  CHECK(mode_map_singular(r));
  CHECK_THROWS_AS(mode_map_inverse_norm(r), SingularModeError);
  CHECK_FALSE(mode_map_singular(mode_map({2}, exact_rows("1/3", "0"), sys)));

  // Mixed: position(t0)/velocity(t1), k = 1, Delta = 0 -> -2i.
  const ModeMap pv = mode_map({1}, exact_rows("0", "0", Role::position, Role::velocity), sys);
  CHECK(std::abs(mode_map_det(pv) - Complex(0, -2)) < 1e-15);
  CHECK(std::abs(mode_map_det_numeric(pv) - Complex(0, -2)) < 1e-15);
  const ModeMap vv = mode_map({1}, exact_rows("0", "0", Role::velocity, Role::velocity), sys);
  CHECK(mode_map_singular(vv));
}

TEST_CASE("closed-form determinants match the numeric ones for every kind pair") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> t(-3.0, 3.0);
  const Role kinds[] = {Role::position, Role::velocity};
  for (const auto& sys : {WaveSystem::string(), WaveSystem::string(ExactReal(2)), WaveSystem::beam()})
    for (Role k0 : kinds)
      for (Role k1 : kinds)
        for (int i = 0; i < 50; ++i) {
          const ModeMap m =
              mode_map({static_cast<std::uint32_t>(1 + i % 7)}, {{k0, ObservationTime::at(t(rng))}, {k1, ObservationTime::at(t(rng))}}, sys);
          const Complex a = mode_map_det(m), b = mode_map_det_numeric(m);
          CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, m.omega * m.omega));
        }
}

TEST_CASE("inverse norm examples") {
  const auto sys = WaveSystem::string();
  CHECK(mode_map_inverse_norm(mode_map({1}, exact_rows("1/2", "0"), sys)) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(mode_map_inverse_norm(mode_map({1}, exact_rows("1/4", "0"), sys)) == doctest::Approx(1.3065629648763766));
  CHECK_THROWS_AS(mode_map_inverse_norm(mode_map({1}, exact_rows("1", "0"), sys)), SingularModeError);
}

TEST_CASE("closed-form inverse norm equals the singular-value computation") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint32_t> kd(1, 500);
  std::uniform_real_distribution<double> dd(-10.0, 10.0);
  int checked = 0;
  while (checked < 2000) {
    const std::uint32_t k = kd(rng);
    const double delta = dd(rng);
    if (std::abs(std::sin(k * delta)) <= 1e-6) continue;
    const ModeMap m = mode_map({k}, pos_pos(delta, 0.0), WaveSystem::string());
    const double a = mode_map_inverse_norm(m);
    CHECK(std::abs(a - mode_map_inverse_norm_svd(m)) <= 1e-12 * a);
    CHECK(std::abs(a - closed_form(k * delta)) <= 1e-12 * a);
    ++checked;
  }
}

TEST_CASE("inverse composed with the forward map is the identity") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> t(-5.0, 5.0);
  for (int i = 0; i < 500; ++i) {
    const ModeMap m = mode_map({static_cast<std::uint32_t>(1 + i % 40)}, pos_pos(t(rng), t(rng)), WaveSystem::string());
    if (std::abs(std::sin(m.phase)) < 1e-3) continue;
    const std::array<Complex, 2> ab{Complex(g(rng), g(rng)), Complex(g(rng), g(rng))};
    const auto y = mode_map_apply(m, ab);
    const auto back = mode_map_solve(m, y);
    CHECK(std::abs(back[0] - ab[0]) < 1e-12 * mode_map_inverse_norm(m) * 4);
    CHECK(std::abs(back[1] - ab[1]) < 1e-12 * mode_map_inverse_norm(m) * 4);
    // Mode-level estimate |a|^2 + |b|^2 <= ||T^{-1}||^2 |T(a, b)|^2.
    const double lhs = std::norm(ab[0]) + std::norm(ab[1]);
    const double n = mode_map_inverse_norm(m);
    CHECK(lhs <= n * n * (std::norm(y[0]) + std::norm(y[1])) * (1 + 1e-12));
  }
}

TEST_CASE("sine sandwich 2||x/pi|| <= |sin x| <= pi ||x/pi||") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> kd(1, 10000);
  std::uniform_real_distribution<double> xd(-20.0, 20.0);
  for (int i = 0; i < 10000; ++i) {
    const double x = kd(rng) * xd(rng);
    const double u = x / kPi;
    const double d = std::abs(u - std::round(u));
    const double s = std::abs(std::sin(x));
    CHECK(2.0 * d <= s + 1e-9);
    CHECK(s <= kPi * d + 1e-9);
  }
}

TEST_CASE("overdetermined maps solve by least squares") {
  const auto sys = WaveSystem::string();
  const std::vector<ObservationRow> rows{{Role::position, ObservationTime::at(0.0)},
                                         {Role::position, ObservationTime::at(0.9)},
                                         {Role::position, ObservationTime::at(2.3)}};
  const ModeMap m = mode_map({3}, rows, sys);
  const std::array<Complex, 2> ab{Complex(0.3, -1.0), Complex(2.0, 0.5)};
  const auto back = mode_map_solve(m, mode_map_apply(m, ab));
  CHECK(std::abs(back[0] - ab[0]) < 1e-13);
  CHECK(std::abs(back[1] - ab[1]) < 1e-13);
  CHECK(mode_map_inverse_norm(m) == doctest::Approx(mode_map_inverse_norm_svd(m)));
}

TEST_CASE("resonances are exactly the multiples of the denominator") {
  const auto sys = WaveSystem::string();
  for (std::uint32_t k = 1; k <= 60; ++k) {
    const bool singular = mode_map_singular(mode_map({k}, exact_rows("2/7", "0"), sys));
    CHECK(singular == (k % 7 == 0));
  }
}
