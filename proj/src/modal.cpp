#include "stratobs/modal.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace stratobs {
namespace {

constexpr Complex kI{0.0, 1.0};

void check_same(const CoefficientVector& x, const CoefficientVector& y) {
  if (!(x.system == y.system)) throw std::invalid_argument("coefficient vectors belong to different systems");
  if (!(x.layout == y.layout) || x.size() != y.size())
    throw std::invalid_argument("coefficient vectors have different truncations");
}

}  // namespace

const char* role_name(Role r) { return r == Role::position ? "position" : "velocity"; }

Role parse_role(const std::string& text) {
  if (text == "position") return Role::position;
  if (text == "velocity") return Role::velocity;
  throw std::invalid_argument("unknown role: " + text);
}

CoefficientVector CoefficientVector::zeros(WaveSystem system, ModeLayout layout, Role role, double time) {
  if (!system.compatible(layout)) throw std::invalid_argument("layout does not match system dimension");
  CoefficientVector v{std::move(system), layout, role, time, {}, std::nullopt};
  v.coeffs.assign(layout.size(), Complex{});
  return v;
}

ModalState ModalState::zeros(WaveSystem system, ModeLayout layout, double order) {
  if (!system.compatible(layout)) throw std::invalid_argument("layout does not match system dimension");
  ModalState s{std::move(system), layout, order, {}, {}};
  s.a.assign(layout.size(), Complex{});
  s.b.assign(layout.size(), Complex{});
  return s;
}

ModalState to_modal(const CoefficientVector& y0, const CoefficientVector& y1) {
  check_same(y0, y1);
  if (y0.role != Role::position || y1.role != Role::velocity)
    throw std::invalid_argument("to_modal expects a position and a velocity vector");
  ModalState s = ModalState::zeros(y0.system, y0.layout);
  for (std::size_t i = 0; i < y0.size(); ++i) {
    const double w = y0.system.frequency(y0.layout.index(i));
    const Complex c = y0.coeffs[i];
    const Complex d = y1.coeffs[i] / w;
    s.a[i] = 0.5 * (c - kI * d);
    s.b[i] = 0.5 * (c + kI * d);
  }
  return s;
}

std::pair<CoefficientVector, CoefficientVector> from_modal(const ModalState& state) {
  auto y0 = CoefficientVector::zeros(state.system, state.layout, Role::position, 0.0);
  auto y1 = CoefficientVector::zeros(state.system, state.layout, Role::velocity, 0.0);
  for (std::size_t i = 0; i < state.size(); ++i) {
    const double w = state.system.frequency(state.layout.index(i));
    y0.coeffs[i] = state.a[i] + state.b[i];
    y1.coeffs[i] = kI * w * (state.a[i] - state.b[i]);
  }
  return {std::move(y0), std::move(y1)};
}

ModalState shift_time(const ModalState& state, double t) {
  ModalState s = state;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double w = s.system.frequency(s.layout.index(i));
    const Complex e = std::polar(1.0, w * t);
    s.a[i] *= e;
    s.b[i] *= std::conj(e);
  }
  return s;
}

CoefficientVector evolve(const ModalState& state, double t) {
  auto v = CoefficientVector::zeros(state.system, state.layout, Role::position, t);
  for (std::size_t i = 0; i < state.size(); ++i) {
    const Complex e = std::polar(1.0, state.system.frequency(state.layout.index(i)) * t);
    v.coeffs[i] = state.a[i] * e + state.b[i] * std::conj(e);
  }
  return v;
}

CoefficientVector evolve_velocity(const ModalState& state, double t) {
  auto v = CoefficientVector::zeros(state.system, state.layout, Role::velocity, t);
  for (std::size_t i = 0; i < state.size(); ++i) {
    const double w = state.system.frequency(state.layout.index(i));
    const Complex e = std::polar(1.0, w * t);
    v.coeffs[i] = kI * w * (state.a[i] * e - state.b[i] * std::conj(e));
  }
  return v;
}

double sobolev_norm(const CoefficientVector& v, double order) {
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) sum += v.system.weight_sq(v.layout.index(i), order) * std::norm(v.coeffs[i]);
  return std::sqrt(sum);
}

double modal_energy(const ModalState& state, double s) {
  double sum = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i)
    sum += state.system.weight_sq(state.layout.index(i), s) * (std::norm(state.a[i]) + std::norm(state.b[i]));
  return sum;
}

ModalState random_real_state(const WaveSystem& system, const ModeLayout& layout, std::uint64_t seed, double s) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto y0 = CoefficientVector::zeros(system, layout, Role::position);
  auto y1 = CoefficientVector::zeros(system, layout, Role::velocity);
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const double c = gauss(rng);
    const double d = gauss(rng);
    y0.coeffs[i] = c;
    y1.coeffs[i] = d;
  }
  ModalState state = to_modal(y0, y1);
  const double e = modal_energy(state, s);
  if (e > 0) {
    const double scale = 1.0 / std::sqrt(e);
    for (std::size_t i = 0; i < state.size(); ++i) {
      state.a[i] *= scale;
      state.b[i] *= scale;
    }
  }
  state.order = s;
  return state;
}

std::vector<double> sample_grid(const CoefficientVector& v, std::size_t points) {
  if (points < 2) throw std::invalid_argument("sample_grid needs at least 2 points");
  const double last = static_cast<double>(points - 1);
  if (!v.layout.plate) {
    std::vector<double> out(points, 0.0);
    // Interior nodes only; the Dirichlet endpoints stay exactly zero.
    for (std::size_t j = 1; j + 1 < points; ++j) {
      const double x = std::numbers::pi * static_cast<double>(j) / last;
      double sum = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) sum += v.coeffs[i].real() * std::sin(static_cast<double>(i + 1) * x);
      out[j] = sum;
    }
    return out;
  }
  const double A = v.system.side_a();
  const double B = v.system.side_b();
  std::vector<double> out(points * points, 0.0);
  std::vector<double> sx(v.layout.rows), sy(v.layout.cols);
  for (std::size_t jx = 1; jx + 1 < points; ++jx) {
    const double x = A * static_cast<double>(jx) / last;
    for (std::size_t m = 0; m < sx.size(); ++m) sx[m] = std::sin(static_cast<double>(m + 1) * std::numbers::pi * x / A);
    for (std::size_t jy = 1; jy + 1 < points; ++jy) {
      const double y = B * static_cast<double>(jy) / last;
      for (std::size_t n = 0; n < sy.size(); ++n) sy[n] = std::sin(static_cast<double>(n + 1) * std::numbers::pi * y / B);
      double sum = 0.0;
      for (std::size_t m = 0; m < sx.size(); ++m)
        for (std::size_t n = 0; n < sy.size(); ++n) sum += v.coeffs[m * sy.size() + n].real() * sx[m] * sy[n];
      out[jx * points + jy] = sum;
    }
  }
  return out;
}

}  // namespace stratobs
