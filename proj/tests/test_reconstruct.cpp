#include "stratobs/reconstruct.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace stratobs;

namespace {

const ExactReal kGolden = ExactReal::parse("quad:(-1+1*sqrt(5))/2");
constexpr double kPi = std::numbers::pi;

double relative_error(const ModalState& truth, const ReconstructionReport& rep, double s) {
  auto [t0, t1] = from_modal(truth);
  CoefficientVector d0 = rep.y0, d1 = rep.y1;
  for (std::size_t i = 0; i < d0.size(); ++i) {
    d0.coeffs[i] -= t0.coeffs[i];
    d1.coeffs[i] -= t1.coeffs[i];
  }
  return data_norm(d0, d1, s) / data_norm(t0, t1, s);
}

SnapshotSet scaled_sum(const SnapshotSet& x, const SnapshotSet& y, Complex alpha, Complex beta) {
  SnapshotSet out = x;
  for (std::size_t j = 0; j < out.snapshots.size(); ++j)
    for (std::size_t i = 0; i < out.snapshots[j].size(); ++i)
      out.snapshots[j].coeffs[i] = alpha * x.snapshots[j].coeffs[i] + beta * y.snapshots[j].coeffs[i];
  return out;
}

}  // namespace

TEST_CASE("round trip at the golden gap") {
  for (const auto& sys : {WaveSystem::string(), WaveSystem::string(ExactReal(2)), WaveSystem::beam()}) {
    const auto state = random_real_state(sys, ModeLayout::line(256), 11, 1.0);
    const auto rep = reconstruct(gap_snapshots(state, kGolden));
    CHECK(rep.singular_modes.empty());
    CHECK(relative_error(state, rep, 1.0) <= 1e-9);
    CHECK(rep.max_residual == 0.0);
    for (const auto& m : rep.modes) CHECK(m.cond >= 1.0 - 1e-12);
  }
  const auto plate = WaveSystem::plate(1.0, std::sqrt(2.0));
  const auto ps = random_real_state(plate, ModeLayout::grid(12, 12), 3, 1.0);
  const auto pr = reconstruct(gap_snapshots(ps, kGolden));
  CHECK(pr.singular_modes.empty());
  CHECK(relative_error(ps, pr, 1.0) <= 1e-9);
}

TEST_CASE("serial and parallel reconstructions agree") {
  const auto state = random_real_state(WaveSystem::string(), ModeLayout::line(128), 5);
  const auto set = gap_snapshots(state, kGolden);
  const auto a = reconstruct(set, kernels::Execution::serial);
  const auto b = reconstruct(set, kernels::Execution::parallel);
  for (std::size_t i = 0; i < a.state.size(); ++i) {
    CHECK(a.state.a[i] == b.state.a[i]);
    CHECK(a.state.b[i] == b.state.b[i]);
  }
}

TEST_CASE("zero snapshots give zero data") {
  const auto zero = ModalState::zeros(WaveSystem::string(), ModeLayout::line(8));
  const auto rep = reconstruct(gap_snapshots(zero, kGolden));
  for (const auto& c : rep.y0.coeffs) CHECK(c == Complex(0, 0));
  for (const auto& c : rep.y1.coeffs) CHECK(c == Complex(0, 0));
}

TEST_CASE("a rational gap leaves exactly the resonant modes unrecovered") {
  const auto state = random_real_state(WaveSystem::string(), ModeLayout::line(10), 1);
  const auto rep = reconstruct(gap_snapshots(state, ExactReal::parse("rat:1/3")));
  REQUIRE(rep.singular_modes.size() == 3);
  CHECK(rep.singular_modes[0].m == 3);
  CHECK(rep.singular_modes[1].m == 6);
  CHECK(rep.singular_modes[2].m == 9);
  CHECK(rep.modes[2].det == Complex(0, 0));
  for (std::size_t i = 0; i < 10; ++i) {
    if ((i + 1) % 3 == 0) {
      CHECK(rep.modes[i].singular);
      continue;
    }
    CHECK(std::abs(rep.state.a[i] - state.a[i]) < 1e-10);
    CHECK(std::abs(rep.state.b[i] - state.b[i]) < 1e-10);
  }
}

TEST_CASE("inconsistent snapshot sets are rejected") {
  const auto s8 = random_real_state(WaveSystem::string(), ModeLayout::line(8), 1);
  const auto s9 = random_real_state(WaveSystem::string(), ModeLayout::line(9), 1);
  SnapshotSet set{{evolve(s8, 0.0), evolve(s9, 1.0)}};
  CHECK_THROWS_AS(reconstruct(set), std::invalid_argument);
  CHECK_THROWS_AS(reconstruct(SnapshotSet{{evolve(s8, 0.0)}}), std::invalid_argument);
  const auto beam = random_real_state(WaveSystem::beam(), ModeLayout::line(8), 1);
  CHECK_THROWS_AS(reconstruct(SnapshotSet{{evolve(s8, 0.0), evolve(beam, 1.0)}}), std::invalid_argument);
}

TEST_CASE("reconstruction is linear in the data") {
  const auto x = gap_snapshots(random_real_state(WaveSystem::string(), ModeLayout::line(64), 1), kGolden);
  const auto y = gap_snapshots(random_real_state(WaveSystem::string(), ModeLayout::line(64), 2), kGolden);
  const Complex alpha(0.7, -1.3), beta(-2.1, 0.4);
  const auto rx = reconstruct(x), ry = reconstruct(y), rs = reconstruct(scaled_sum(x, y, alpha, beta));
  for (std::size_t i = 0; i < 64; ++i) {
    const Complex a = alpha * rx.state.a[i] + beta * ry.state.a[i];
    const Complex b = alpha * rx.state.b[i] + beta * ry.state.b[i];
    CHECK(std::abs(rs.state.a[i] - a) <= 1e-12 * (1 + rs.modes[i].cond));
    CHECK(std::abs(rs.state.b[i] - b) <= 1e-12 * (1 + rs.modes[i].cond));
  }
}

TEST_CASE("least squares with three snapshots matches every nonsingular pair") {
  const auto state = random_real_state(WaveSystem::string(), ModeLayout::line(32), 4);
  const double ts[] = {0.0, 0.7, 1.9};
  SnapshotSet three;
  for (double t : ts) three.snapshots.push_back(evolve(state, t));
  const auto rep = reconstruct(three);
  CHECK(rep.max_residual < 1e-12);
  CHECK(relative_error(state, rep, 0.0) < 1e-11);
  for (int p = 0; p < 3; ++p)
    for (int q = p + 1; q < 3; ++q) {
      const auto pair = reconstruct(SnapshotSet{{three.snapshots[p], three.snapshots[q]}});
      for (std::size_t i = 0; i < 32; ++i) {
        if (pair.modes[i].cond > 1e6) continue;
        CHECK(std::abs(pair.state.a[i] - rep.state.a[i]) < 1e-12 * pair.modes[i].cond * 10);
      }
    }
}

TEST_CASE("mixed rows") {
  const auto state = random_real_state(WaveSystem::string(), ModeLayout::line(40), 9);
  auto y = evolve(state, 0.0);
  auto v = evolve_velocity(state, 0.0);
  y.time_over_pi = ExactReal(0);
  v.time_over_pi = ExactReal(0);
  const auto rep = mixed_reconstruct(SnapshotSet{{y, v}});
  CHECK(rep.singular_modes.empty());
  CHECK(relative_error(state, rep, 0.0) < 1e-12);
  CHECK(std::abs(rep.modes[0].det - Complex(0, -2)) < 1e-14);

  // velocity/velocity at omega Delta = pi/2 (k = 1): det = 2i omega^2 sin(pi/2) = 2i.
  auto v2 = evolve_velocity(state, kPi / 2);
  v2.time_over_pi = ExactReal::parse("rat:1/2");
  const auto vv = mixed_reconstruct(SnapshotSet{{v2, v}});
  CHECK(std::abs(vv.modes[0].det - Complex(0, 2)) < 1e-14);
  CHECK(vv.modes[1].singular);

  const auto dup = mixed_reconstruct(SnapshotSet{{v, v}});
  CHECK(dup.singular_modes.size() == 40);
  CHECK_THROWS_AS(mixed_reconstruct(SnapshotSet{{y, y}}), std::invalid_argument);
}

TEST_CASE("sensitivity profile stays under the floor bound") {
  const auto prof = sensitivity_profile(kGolden, WaveSystem::string(), 1.0, ModeLayout::line(1024));
  CHECK(prof.within_bound);
  CHECK(prof.c_star == doctest::Approx(0.38196601125010515));
  for (const auto& e : prof.entries) CHECK(e.factor <= e.bound * (1 + 1e-12));

  const auto r = sensitivity_profile(ExactReal::parse("rat:1/2"), WaveSystem::string(), 1.0, ModeLayout::line(4));
  CHECK(r.entries[0].factor == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(r.entries[1].infinite);
  CHECK_FALSE(r.within_bound);
}

TEST_CASE("noise experiments") {
  const auto state = random_real_state(WaveSystem::string(), ModeLayout::line(64), 2, 1.0);
  const auto zero = noise_experiment(state, kGolden, 0.0, 2, 1);
  CHECK(zero.mean_error < 1e-13);

  const auto a = noise_experiment(state, kGolden, 1e-6, 4, 17);
  const auto b = noise_experiment(state, kGolden, 1e-6, 4, 17);
  CHECK(a.mean_error == b.mean_error);
  CHECK(a.ratio >= 0.1);
  CHECK(a.ratio <= 10.0);
  CHECK(a.prediction <= a.envelope * (1 + 1e-12));
  CHECK_THROWS(noise_experiment(state, kGolden, -1.0, 1, 1));
  CHECK_THROWS(noise_experiment(state, kGolden, 1.0, 0, 1));
}

TEST_CASE("observability inequality with the floor constant") {
  // With T_k^{-1} bounded by k/(2 c*), per-mode algebra gives
  // ||y0||_s + ||y1||_{s-1} <= (1/c*) (||y(t0)||_{s+1} + ||y(t1)||_{s+1}).
  const std::size_t n = 200;
  const double c_star = observed_floor(WaveSystem::string(), kGolden, 1.0, ModeLayout::line(n));
  for (std::uint64_t seed = 1; seed <= 20; ++seed)
    for (double s : {0.0, 1.0}) {
      const auto state = random_real_state(WaveSystem::string(), ModeLayout::line(n), seed, s);
      const auto [y0, y1] = from_modal(state);
      const auto snaps = gap_snapshots(state, kGolden);
      const double lhs = sobolev_norm(y0, s) + sobolev_norm(y1, s - 1);
      const double rhs = (sobolev_norm(snaps.snapshots[0], s + 1) + sobolev_norm(snaps.snapshots[1], s + 1)) / c_star;
      CHECK(lhs <= rhs * (1 + 1e-12));
    }
}
