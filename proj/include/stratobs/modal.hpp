#pragma once

#include "stratobs/wave_system.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace stratobs {

using Complex = std::complex<double>;

enum class Role { position, velocity };

const char* role_name(Role r);
Role parse_role(const std::string& text);

/// Sine-basis coefficients of y(t) or y'(t) for one truncation.
struct CoefficientVector {
  WaveSystem system;
  ModeLayout layout;
  Role role = Role::position;
  double time = 0.0;
  std::vector<Complex> coeffs;
  /// time / pi when the instant is known exactly (lets resonances be decided exactly).
  std::optional<ExactReal> time_over_pi;

  static CoefficientVector zeros(WaveSystem system, ModeLayout layout, Role role = Role::position,
                                 double time = 0.0);
  std::size_t size() const { return coeffs.size(); }
};

/// Travelling-wave form y = sum (a e^{i w t} + b e^{-i w t}) phi_k.
struct ModalState {
  WaveSystem system;
  ModeLayout layout;
  double order = 0.0;
  std::vector<Complex> a;
  std::vector<Complex> b;

  static ModalState zeros(WaveSystem system, ModeLayout layout, double order = 0.0);
  std::size_t size() const { return a.size(); }
};

/// a = (c - i d / w) / 2, b = (c + i d / w) / 2 per mode.
ModalState to_modal(const CoefficientVector& y0, const CoefficientVector& y1);
/// Inverse of to_modal: (y0, y1) at t = 0.
std::pair<CoefficientVector, CoefficientVector> from_modal(const ModalState& state);

CoefficientVector evolve(const ModalState& state, double t);
CoefficientVector evolve_velocity(const ModalState& state, double t);
/// Travelling-wave state re-expressed with time origin t (a e^{iwt}, b e^{-iwt}).
ModalState shift_time(const ModalState& state, double t);

double sobolev_norm(const CoefficientVector& v, double order);
/// sum w^{2s} (|a|^2 + |b|^2), with plate weight lambda^s.
double modal_energy(const ModalState& state, double s);

/// Real initial data with independent standard normal sine coefficients
/// (mt19937_64 seeded with `seed`), scaled to modal_energy(state, s) = 1.
ModalState random_real_state(const WaveSystem& system, const ModeLayout& layout, std::uint64_t seed, double s = 0.0);

/// Real part of the series on a uniform grid with `points` nodes per axis,
/// endpoints included. Plates return points^2 values, x-major.
std::vector<double> sample_grid(const CoefficientVector& v, std::size_t points);

}  // namespace stratobs
