#pragma once

#include "stratobs/bigint.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <compare>
#include <optional>
#include <utility>
#include <stdexcept>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

namespace stratobs {

template <unsigned Bits>
using BinaryFloat = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<Bits, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

/// Storage precision of the float variant and of exact-to-float conversions.
using WideFloat = BinaryFloat<256>;
using Float128 = BinaryFloat<128>;
using Float192 = BinaryFloat<192>;

const WideFloat& wide_pi();

/// Canonical rational: gcd(num, den) = 1, den > 0.
class Rational {
 public:
  Rational() = default;
  Rational(BigInt num, BigInt den = 1);
  Rational(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)

  /// Exact value of a decimal literal such as "-0.125" or "2.5e-3".
  static Rational from_decimal(std::string_view text);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  BigInt floor() const { return floor_div(num_, den_); }
  int sign() const { return num_.sign(); }
  bool is_integer() const { return den_ == 1; }

  WideFloat to_wide() const;
  double to_double() const;
  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }
  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  BigInt num_ = 0;
  BigInt den_ = 1;
};

/// (p + q*sqrt(d)) / r with d >= 2 square-free, q != 0, r > 0, gcd(p, q, r) = 1.
struct Quadratic {
  BigInt p;
  BigInt q;
  BigInt d;
  BigInt r;

  WideFloat to_wide() const;
  friend bool operator==(const Quadratic&, const Quadratic&) = default;
};

/// Extended-precision approximation `mid` with absolute error bound `rad`.
struct FloatReal {
  WideFloat mid;
  WideFloat rad;
};

/// A real number that is exact when it can be (rationals, quadratic surds) and
/// an enclosed extended-precision float otherwise. Arithmetic between exact
/// values sharing one radical stays exact; anything else degrades to a float
/// whose radius encloses the true value.
class ExactReal {
 public:
  enum class Kind { rational, quadratic, floating };

  ExactReal() = default;
  ExactReal(Rational r) : v_(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  ExactReal(std::int64_t n) : v_(Rational(n)) {}  // NOLINT(google-explicit-constructor)

  /// Canonicalizes; demotes to rational when q == 0 or d is a perfect square.
  static ExactReal quadratic(BigInt p, BigInt q, BigInt d, BigInt r);
  static ExactReal floating(WideFloat mid, WideFloat rad = 0);
  static ExactReal from_double(double v);
  static ExactReal sqrt_of(const Rational& x);
  static ExactReal cbrt_of(const BigInt& n);

  /// Text syntax: "rat:p/q", "quad:(p+q*sqrt(d))/r", "float:<decimal>", plus
  /// "cbrt:<integer>". Bare "p/q" and decimal literals parse as rationals.
  static ExactReal parse(std::string_view text);
  std::string str() const;

  Kind kind() const { return static_cast<Kind>(v_.index()); }
  bool is_exact() const { return kind() != Kind::floating; }
  bool is_rational() const { return kind() == Kind::rational; }
  bool is_quadratic() const { return kind() == Kind::quadratic; }
  bool is_floating() const { return kind() == Kind::floating; }

  const Rational& as_rational() const { return std::get<Rational>(v_); }
  const Quadratic& as_quadratic() const { return std::get<Quadratic>(v_); }
  const FloatReal& as_floating() const { return std::get<FloatReal>(v_); }

  WideFloat mid() const;
  WideFloat radius() const;
  double to_double() const;

  /// Exact for rational and quadratic values; floor of mid() for floats.
  BigInt floor() const;
  bool floor_certain() const;

  /// Exact sign; floats throw UndecidableError when the enclosure contains 0
  /// but is not the exact zero.
  int sign() const;

  ExactReal reciprocal() const;

  friend ExactReal operator+(const ExactReal& a, const ExactReal& b);
  friend ExactReal operator-(const ExactReal& a, const ExactReal& b);
  friend ExactReal operator*(const ExactReal& a, const ExactReal& b);
  friend ExactReal operator/(const ExactReal& a, const ExactReal& b);
  friend ExactReal operator-(const ExactReal& a);

  /// Unordered when float enclosures overlap.
  friend std::partial_ordering operator<=>(const ExactReal& a, const ExactReal& b);
  /// Structural equality of canonical forms (floats: identical mid and rad).
  friend bool operator==(const ExactReal& a, const ExactReal& b);

 private:
  std::variant<Rational, Quadratic, FloatReal> v_;
};

/// Uniform layout (p + q*sqrt(d)) / r of an exact value; rationals use q = 0, d = 1.
struct SurdParts {
  BigInt p, q, d, r;
};
std::optional<SurdParts> surd_parts(const ExactReal& x);
/// Both values on one radical, when they share one (rationals fit any radical).
std::optional<std::pair<SurdParts, SurdParts>> common_radical(const ExactReal& a, const ExactReal& b);

/// Sign of x + y*sqrt(d) (d >= 1, not a perfect square unless y == 0).
int surd_sign(const BigInt& x, const BigInt& y, const BigInt& d);

/// Thrown when a comparison or sign cannot be decided from float enclosures.
class UndecidableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace stratobs
