#include "stratobs/mode_map.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace stratobs {
namespace {

constexpr Complex kI{0.0, 1.0};
// |sin| or |cos| below this counts as a resonance when the phase is only known in floating point.
constexpr double kFloatSingularThreshold = 1e-13;

Complex cis_row(const ObservationTime& t, const std::optional<ExactReal>& omega_exact, double omega) {
  if (t.over_pi && omega_exact && omega_exact->is_exact()) {
    const PiTrig tr = trig_pi(*omega_exact * *t.over_pi);
    return {tr.cos, tr.sin};
  }
  return std::polar(1.0, omega * t.t);
}

PiTrig map_trig(const ModeMap& map) {
  if (map.phase_over_pi) return trig_pi(*map.phase_over_pi);
  return {std::sin(map.phase), std::cos(map.phase), false, false};
}

bool phase_is_exact(const ModeMap& map) { return map.phase_over_pi && map.phase_over_pi->is_exact(); }

}  // namespace

ObservationTime ObservationTime::exact(const ExactReal& over_pi) {
  return {over_pi.to_double() * std::numbers::pi, over_pi};
}

PiTrig trig_pi(const ExactReal& x) {
  BigInt n = x.floor();
  ExactReal f = x - ExactReal(Rational(n));
  PiTrig out;
  const bool odd = (n % 2) != 0;
  if (f.is_rational()) {
    const Rational& r = f.as_rational();
    if (r.sign() == 0) {
      out.sin = 0.0;
      out.cos = odd ? -1.0 : 1.0;
      out.sin_zero = true;
      return out;
    }
    if (r == Rational(1, 2)) {
      out.sin = odd ? -1.0 : 1.0;
      out.cos = 0.0;
      out.cos_zero = true;
      return out;
    }
  }
  // Reduce to g in (-1/2, 1/2] so small phases keep full relative precision.
  bool flip = odd;
  if (f.mid() > WideFloat(0.5)) {
    f = f - ExactReal(1);
    flip = !flip;
  }
  const double g = f.to_double();
  out.sin = std::sin(std::numbers::pi * g);
  out.cos = std::cos(std::numbers::pi * g);
  if (flip) {
    out.sin = -out.sin;
    out.cos = -out.cos;
  }
  return out;
}

SingularModeError::SingularModeError(ModeIndex idx, double phase)
    : std::runtime_error("singular mode " + idx.str() + ": omega*gap/pi = " + std::to_string(phase)),
      index(idx),
      phase_over_pi(phase) {}

ModeMap mode_map(ModeIndex idx, const std::vector<ObservationRow>& rows, const WaveSystem& system) {
  if (rows.size() < 2) throw std::invalid_argument("a mode map needs at least two rows");
  ModeMap map;
  map.index = idx;
  map.omega = system.frequency(idx);
  map.rows = rows;
  std::optional<ExactReal> omega_exact;
  if (rows[0].time.over_pi && rows[1].time.over_pi) omega_exact = system.frequency_exact(idx);
  for (const auto& row : rows) {
    std::optional<ExactReal> w = row.time.over_pi ? (omega_exact ? omega_exact : system.frequency_exact(idx))
                                                  : std::optional<ExactReal>{};
    const Complex e = cis_row(row.time, w, map.omega);
    if (row.kind == Role::position)
      map.matrix.push_back({e, std::conj(e)});
    else
      map.matrix.push_back({kI * map.omega * e, -kI * map.omega * std::conj(e)});
  }
  if (omega_exact) map.phase_over_pi = *omega_exact * (*rows[0].time.over_pi - *rows[1].time.over_pi);
  map.phase = map.omega * (rows[0].time.t - rows[1].time.t);
  return map;
}

Complex mode_map_det(const ModeMap& map) {
  if (!map.square()) throw std::invalid_argument("determinant of a non-square mode map");
  const PiTrig tr = map_trig(map);
  const double w = map.omega;
  const Role k0 = map.rows[0].kind, k1 = map.rows[1].kind;
  if (k0 == Role::position && k1 == Role::position) return 2.0 * kI * tr.sin;
  if (k0 == Role::position && k1 == Role::velocity) return -2.0 * kI * w * tr.cos;
  if (k0 == Role::velocity && k1 == Role::position) return 2.0 * kI * w * tr.cos;
  return 2.0 * kI * w * w * tr.sin;
}

Complex mode_map_det_numeric(const ModeMap& map) {
  if (!map.square()) throw std::invalid_argument("determinant of a non-square mode map");
  const auto& m = map.matrix;
  return m[0][0] * m[1][1] - m[0][1] * m[1][0];
}

bool mode_map_singular(const ModeMap& map) {
  if (!map.square()) {
    const auto [smax, smin] = singular_values(map.matrix);
    return smin <= kFloatSingularThreshold * smax;
  }
  const bool same_kind = map.rows[0].kind == map.rows[1].kind;
  const PiTrig tr = map_trig(map);
  if (phase_is_exact(map)) return same_kind ? tr.sin_zero : tr.cos_zero;
  return std::abs(same_kind ? tr.sin : tr.cos) < kFloatSingularThreshold;
}

std::pair<double, double> singular_values(std::span<const std::array<Complex, 2>> rows) {
  double g11 = 0, g22 = 0;
  Complex g12{};
  for (const auto& r : rows) {
    g11 += std::norm(r[0]);
    g22 += std::norm(r[1]);
    g12 += std::conj(r[0]) * r[1];
  }
  const double tr = g11 + g22;
  const double lmax = 0.5 * (tr + std::sqrt((g11 - g22) * (g11 - g22) + 4.0 * std::norm(g12)));
  double det = 0.0;
  if (rows.size() == 2)
    det = std::norm(rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]);
  else
    det = g11 * g22 - std::norm(g12);
  const double lmin = lmax > 0 ? std::max(det, 0.0) / lmax : 0.0;
  return {std::sqrt(lmax), std::sqrt(lmin)};
}

double mode_map_inverse_norm(const ModeMap& map) {
  if (mode_map_singular(map)) throw SingularModeError(map.index, map.phase / std::numbers::pi);
  if (map.square() && map.rows[0].kind == Role::position && map.rows[1].kind == Role::position) {
    const PiTrig tr = map_trig(map);
    return std::sqrt(1.0 + std::abs(tr.cos)) / (std::numbers::sqrt2 * std::abs(tr.sin));
  }
  return mode_map_inverse_norm_svd(map);
}

double mode_map_inverse_norm_svd(const ModeMap& map) {
  if (map.square()) {
    const auto& m = map.matrix;
    const Complex det = mode_map_det_numeric(map);
    if (det == Complex{}) throw SingularModeError(map.index, map.phase / std::numbers::pi);
    const std::array<std::array<Complex, 2>, 2> inv{{{m[1][1] / det, -m[0][1] / det}, {-m[1][0] / det, m[0][0] / det}}};
    return singular_values(inv).first;
  }
  const double smin = singular_values(map.matrix).second;
  if (smin == 0.0) throw SingularModeError(map.index, map.phase / std::numbers::pi);
  return 1.0 / smin;
}

double mode_map_norm(const ModeMap& map) { return singular_values(map.matrix).first; }

std::array<Complex, 2> mode_map_solve(const ModeMap& map, std::span<const Complex> values) {
  if (values.size() != map.matrix.size()) throw std::invalid_argument("value count does not match mode map rows");
  if (mode_map_singular(map)) throw SingularModeError(map.index, map.phase / std::numbers::pi);
  const auto& m = map.matrix;
  if (map.square()) {
    const Complex det = mode_map_det(map);
    return {(m[1][1] * values[0] - m[0][1] * values[1]) / det, (-m[1][0] * values[0] + m[0][0] * values[1]) / det};
  }
  double g11 = 0, g22 = 0;
  Complex g12{}, r1{}, r2{};
  for (std::size_t j = 0; j < m.size(); ++j) {
    g11 += std::norm(m[j][0]);
    g22 += std::norm(m[j][1]);
    g12 += std::conj(m[j][0]) * m[j][1];
    r1 += std::conj(m[j][0]) * values[j];
    r2 += std::conj(m[j][1]) * values[j];
  }
  const double det = g11 * g22 - std::norm(g12);
  return {(g22 * r1 - g12 * r2) / det, (-std::conj(g12) * r1 + g11 * r2) / det};
}

std::vector<Complex> mode_map_apply(const ModeMap& map, const std::array<Complex, 2>& ab) {
  std::vector<Complex> out;
  out.reserve(map.matrix.size());
  for (const auto& r : map.matrix) out.push_back(r[0] * ab[0] + r[1] * ab[1]);
  return out;
}

}  // namespace stratobs
