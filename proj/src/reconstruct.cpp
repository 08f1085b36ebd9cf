#include "stratobs/reconstruct.hpp"

#include <omp.h>

#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace stratobs {
namespace {

constexpr Complex kI{0.0, 1.0};

void validate(const SnapshotSet& set) {
  if (set.snapshots.size() < 2) throw std::invalid_argument("reconstruction needs at least two snapshots");
  const auto& first = set.snapshots.front();
  for (const auto& s : set.snapshots) {
    if (!(s.system == first.system)) throw std::invalid_argument("snapshots belong to different systems");
    if (!(s.layout == first.layout) || s.size() != first.layout.size())
      throw std::invalid_argument("snapshots have inconsistent truncations");
  }
}

ModeReport solve_mode(const SnapshotSet& set, const std::vector<ObservationRow>& rows, std::size_t i) {
  const auto& first = set.snapshots.front();
  ModeReport r;
  r.index = first.layout.index(i);
  const ModeMap map = mode_map(r.index, rows, first.system);
  r.phase_over_pi = map.phase_over_pi ? map.phase_over_pi->to_double() : map.phase / std::numbers::pi;
  if (map.square()) {
    r.det = mode_map_det(map);
  } else {
    const auto [smax, smin] = singular_values(map.matrix);
    r.det = smax * smax * smin * smin;
  }
  r.abs_det = std::abs(r.det);
  if (mode_map_singular(map)) {
    r.singular = true;
    r.cond = std::numeric_limits<double>::infinity();
    r.inverse_norm = std::numeric_limits<double>::infinity();
    return r;
  }
  std::vector<Complex> values;
  values.reserve(rows.size());
  for (const auto& s : set.snapshots) values.push_back(s.coeffs[i]);
  const auto ab = mode_map_solve(map, values);
  r.a = ab[0];
  r.b = ab[1];
  r.inverse_norm = mode_map_inverse_norm(map);
  r.cond = mode_map_norm(map) * r.inverse_norm;
  if (!map.square()) {
    const auto fitted = mode_map_apply(map, ab);
    double res = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) res += std::norm(fitted[j] - values[j]);
    r.residual = std::sqrt(res);
  }
  return r;
}

/// ||L_k||: largest singular value of (a, b) -> (w0 (a + b), w1 i omega (a - b)).
double lift_norm(const WaveSystem& sys, ModeIndex idx, double s) {
  const double w0 = std::sqrt(sys.weight_sq(idx, s));
  const double w1 = std::sqrt(sys.weight_sq(idx, s - sys.velocity_order_offset())) * sys.frequency(idx);
  const std::array<std::array<Complex, 2>, 2> L{{{w0, w0}, {kI * w1, -kI * w1}}};
  return singular_values(L).first;
}

template <class F>
struct LoadedWeightedEval {
  using value_type = F;
  F xi, q;
  double alpha;
  value_type operator()(std::uint64_t k) const {
    F kk(k);
    return pow(kk, F(alpha)) * kernels::float_distance(F(xi * sqrt(kk * kk + q)));
  }
  bool less(const F& a, const F& b) const { return a < b; }
  double to_double(const F& v) const { return static_cast<double>(v); }
};

}  // namespace

double data_norm(const CoefficientVector& y0, const CoefficientVector& y1, double s) {
  const double a = sobolev_norm(y0, s);
  const double b = sobolev_norm(y1, s - y0.system.velocity_order_offset());
  return std::sqrt(a * a + b * b);
}

ReconstructionReport reconstruct(const SnapshotSet& set, kernels::Execution exec) {
  validate(set);
  const auto& first = set.snapshots.front();
  std::vector<ObservationRow> rows;
  for (const auto& s : set.snapshots) rows.push_back({s.role, {s.time, s.time_over_pi}});

  const std::size_t n = first.layout.size();
  std::vector<ModeReport> modes(n);
  if (exec == kernels::Execution::serial) {
    for (std::size_t i = 0; i < n; ++i) modes[i] = solve_mode(set, rows, i);
  } else {
    std::exception_ptr failure;
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
      try {
        modes[static_cast<std::size_t>(i)] = solve_mode(set, rows, static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical(stratobs_reconstruct_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  ReconstructionReport rep;
  rep.state = ModalState::zeros(first.system, first.layout);
  for (std::size_t i = 0; i < n; ++i) {
    const ModeReport& m = modes[i];
    rep.state.a[i] = m.a;
    rep.state.b[i] = m.b;
    if (m.singular) {
      rep.singular_modes.push_back(m.index);
      continue;
    }
    if (m.cond > rep.worst_cond) {
      rep.worst_cond = m.cond;
      rep.worst_mode = i;
    }
    rep.max_residual = std::max(rep.max_residual, m.residual);
  }
  auto [y0, y1] = from_modal(rep.state);
  rep.y0 = std::move(y0);
  rep.y1 = std::move(y1);
  rep.modes = std::move(modes);
  return rep;
}

ReconstructionReport mixed_reconstruct(const SnapshotSet& set, kernels::Execution exec) {
  bool any_velocity = false;
  for (const auto& s : set.snapshots) any_velocity = any_velocity || s.role == Role::velocity;
  if (!any_velocity) throw std::invalid_argument("mixed reconstruction expects at least one velocity snapshot");
  return reconstruct(set, exec);
}

SnapshotSet gap_snapshots(const ModalState& state, const ExactReal& xi) {
  const ObservationTime t0 = ObservationTime::exact(xi);
  CoefficientVector u = evolve(state, t0.t);
  u.time_over_pi = xi;
  CoefficientVector v = evolve(state, 0.0);
  v.time_over_pi = ExactReal(0);
  return {{std::move(u), std::move(v)}};
}

double observed_floor(const WaveSystem& system, const ExactReal& xi, double alpha, const ModeLayout& layout,
                      ScanOptions opts) {
  switch (system.type()) {
    case WaveSystem::Type::plate:
      return certify_plate(xi, system, alpha, layout.rows, layout.cols, opts).c_star;
    case WaveSystem::Type::beam:
      return badly_approx_floor(xi, alpha, layout.size(), opts, kernels::IndexMap::square).value;
    default:
      break;
  }
  if (system.load().sign() == 0) return badly_approx_floor(xi, alpha, layout.size(), opts).value;
  const LoadedWeightedEval<Float128> eval{Float128(xi.mid()), Float128(system.load().mid()), alpha};
  return static_cast<double>(kernels::min_scan(eval, 1, layout.size(), opts.execution).value);
}

SensitivityProfile sensitivity_profile(const ExactReal& xi, const WaveSystem& system, double alpha,
                                       const ModeLayout& layout, std::optional<double> c_star) {
  if (!system.compatible(layout)) throw std::invalid_argument("layout does not match system dimension");
  SensitivityProfile prof;
  prof.c_star = c_star ? *c_star : observed_floor(system, xi, alpha, layout);
  const std::vector<ObservationRow> rows{{Role::position, ObservationTime::exact(xi)},
                                         {Role::position, ObservationTime::exact(ExactReal(0))}};
  prof.entries.resize(layout.size());
  for (std::size_t i = 0; i < layout.size(); ++i) {
    SensitivityEntry& e = prof.entries[i];
    e.index = layout.index(i);
    const double scale = layout.plate ? static_cast<double>(e.index.m) * e.index.m +
                                            static_cast<double>(e.index.n) * e.index.n
                                      : static_cast<double>(e.index.m);
    e.bound = prof.c_star > 0 ? std::pow(scale, alpha) / (2.0 * prof.c_star) : std::numeric_limits<double>::infinity();
    const ModeMap map = mode_map(e.index, rows, system);
    if (mode_map_singular(map)) {
      e.infinite = true;
      e.factor = std::numeric_limits<double>::infinity();
      prof.within_bound = false;
      continue;
    }
    e.factor = mode_map_inverse_norm(map);
    if (e.factor > e.bound * (1.0 + 1e-9)) prof.within_bound = false;
  }
  return prof;
}

NoiseReport noise_experiment(const ModalState& state, const ExactReal& xi, double sigma, std::uint64_t trials,
                             std::uint64_t seed, double s, double alpha, kernels::Execution exec) {
  if (!(sigma >= 0)) throw std::invalid_argument("sigma must be >= 0");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  NoiseReport rep;
  rep.sigma = sigma;
  rep.trials = trials;
  rep.seed = seed;
  rep.order = s;
  rep.alpha = alpha;

  const SnapshotSet clean = gap_snapshots(state, xi);
  const auto [true0, true1] = from_modal(state);
  const SensitivityProfile prof = sensitivity_profile(xi, state.system, alpha, state.layout);
  rep.c_star = prof.c_star;
  double pred = 0.0, env = 0.0;
  for (const auto& e : prof.entries) {
    const double L = lift_norm(state.system, e.index, s);
    pred += L * L * e.factor * e.factor;
    env += L * L * e.bound * e.bound;
  }
  rep.prediction = sigma * std::numbers::sqrt2 * std::sqrt(pred);
  rep.envelope = sigma * std::numbers::sqrt2 * std::sqrt(env);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, sigma / std::numbers::sqrt2);
  double sum = 0.0, sum_sq = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    SnapshotSet noisy = clean;
    if (sigma > 0)
      for (auto& snap : noisy.snapshots)
        for (auto& c : snap.coeffs) {
          const double re = gauss(rng);
          const double im = gauss(rng);
          c += Complex(re, im);
        }
    const ReconstructionReport r = reconstruct(noisy, exec);
    CoefficientVector d0 = r.y0, d1 = r.y1;
    for (std::size_t i = 0; i < d0.size(); ++i) {
      d0.coeffs[i] -= true0.coeffs[i];
      d1.coeffs[i] -= true1.coeffs[i];
    }
    const double err = data_norm(d0, d1, s);
    sum += err;
    sum_sq += err * err;
    rep.max_error = std::max(rep.max_error, err);
  }
  rep.mean_error = sum / static_cast<double>(trials);
  rep.rms_error = std::sqrt(sum_sq / static_cast<double>(trials));
  rep.ratio = rep.prediction > 0 ? rep.mean_error / rep.prediction : 0.0;
  return rep;
}

}  // namespace stratobs
