#pragma once

#include "stratobs/modal.hpp"

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace stratobs {

/// Observation instant. `over_pi` carries t/pi exactly when known, which lets
/// resonances omega (t0 - t1) in pi Z be decided exactly.
struct ObservationTime {
  double t = 0.0;
  std::optional<ExactReal> over_pi;

  static ObservationTime at(double t) { return {t, std::nullopt}; }
  static ObservationTime exact(const ExactReal& over_pi);
};

struct ObservationRow {
  Role kind = Role::position;
  ObservationTime time;
};

/// sin(pi x) and cos(pi x) with exact zeros for exact x.
struct PiTrig {
  double sin = 0.0;
  double cos = 1.0;
  bool sin_zero = false;
  bool cos_zero = false;
};
PiTrig trig_pi(const ExactReal& x);

/// Rows of T_k: position (e^{iwt}, e^{-iwt}), velocity (iw e^{iwt}, -iw e^{-iwt}).
struct ModeMap {
  ModeIndex index;
  double omega = 0.0;
  std::vector<ObservationRow> rows;
  std::vector<std::array<Complex, 2>> matrix;
  /// omega (t0 - t1) / pi for the first two rows, exact when the times and
  /// the frequency are.
  std::optional<ExactReal> phase_over_pi;
  double phase = 0.0;

  bool square() const { return matrix.size() == 2; }
};

class SingularModeError : public std::runtime_error {
 public:
  SingularModeError(ModeIndex idx, double phase_over_pi);
  ModeIndex index;
  double phase_over_pi;
};

ModeMap mode_map(ModeIndex idx, const std::vector<ObservationRow>& rows, const WaveSystem& system);

/// Closed-form determinant of a square map:
/// pos/pos 2i sin(phi), pos/vel -2iw cos(phi), vel/pos 2iw cos(phi), vel/vel 2iw^2 sin(phi).
Complex mode_map_det(const ModeMap& map);
Complex mode_map_det_numeric(const ModeMap& map);
/// True when the map is singular: proven exactly when the phase is exact, and
/// |det| below a rounding-scale threshold otherwise.
bool mode_map_singular(const ModeMap& map);

/// sqrt(1 + |cos phi|) / (sqrt 2 |sin phi|) for pos/pos maps; the singular-value
/// computation for other kinds. Throws SingularModeError.
double mode_map_inverse_norm(const ModeMap& map);
/// Largest singular value of the explicit inverse (pseudo-inverse for n > 2 rows).
double mode_map_inverse_norm_svd(const ModeMap& map);
double mode_map_norm(const ModeMap& map);

/// Singular values (largest, smallest) of an n x 2 complex matrix via the Gram matrix.
std::pair<double, double> singular_values(std::span<const std::array<Complex, 2>> rows);

/// (a, b) with T(a, b) = values: the closed-form inverse for two rows, the
/// normal equations for more. Throws SingularModeError.
std::array<Complex, 2> mode_map_solve(const ModeMap& map, std::span<const Complex> values);
std::vector<Complex> mode_map_apply(const ModeMap& map, const std::array<Complex, 2>& ab);

}  // namespace stratobs
