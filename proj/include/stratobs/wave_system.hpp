#pragma once

#include "stratobs/exact_real.hpp"

#include <cstddef>
#include <cstdint>
#include <string>

namespace stratobs {

/// Mode k >= 1 of a string or beam (n == 0), or mode (m, n) of a plate.
struct ModeIndex {
  std::uint32_t m = 1;
  std::uint32_t n = 0;

  bool two_dimensional() const { return n != 0; }
  std::string str() const;
  friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

/// Truncation shape: `rows` modes for 1-D systems (cols == 1), or a rows x cols
/// block of plate modes stored m-major.
struct ModeLayout {
  std::size_t rows = 0;
  std::size_t cols = 1;
  bool plate = false;

  static ModeLayout line(std::size_t n) { return {n, 1, false}; }
  static ModeLayout grid(std::size_t m, std::size_t n) { return {m, n, true}; }

  std::size_t size() const { return rows * cols; }
  ModeIndex index(std::size_t flat) const;
  friend bool operator==(const ModeLayout&, const ModeLayout&) = default;
};

/// String with load q >= 0, hinged beam, or hinged rectangular plate.
class WaveSystem {
 public:
  enum class Type { string, beam, plate };

  static WaveSystem string(ExactReal q = ExactReal(0));
  static WaveSystem beam();
  static WaveSystem plate(double a, double b);

  Type type() const { return type_; }
  const ExactReal& load() const { return q_; }
  double load_value() const { return q_value_; }
  double side_a() const { return a_; }
  double side_b() const { return b_; }
  std::string name() const;

  /// omega: sqrt(k^2 + q), k^2, or lambda_{m,n} = (m pi/a)^2 + (n pi/b)^2.
  double frequency(ModeIndex idx) const;
  /// Exact when possible: integers for q = 0 and beams, quadratic surds for
  /// rational loads; plates are floats.
  ExactReal frequency_exact(ModeIndex idx) const;

  /// Squared Sobolev weight of one mode: k^{2s} (string, beam) or lambda^s (plate).
  double weight_sq(ModeIndex idx, double order) const;
  /// Order drop of the velocity norm: 1 for strings, 2 for beams and plates.
  int velocity_order_offset() const { return type_ == Type::string ? 1 : 2; }

  bool compatible(const ModeLayout& layout) const { return layout.plate == (type_ == Type::plate); }

  friend bool operator==(const WaveSystem& a, const WaveSystem& b);

 private:
  Type type_ = Type::string;
  ExactReal q_;
  double q_value_ = 0.0;
  double a_ = 0.0;
  double b_ = 0.0;
};

}  // namespace stratobs
