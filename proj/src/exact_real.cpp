#include "stratobs/exact_real.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <limits>
#include <regex>
#include <sstream>

namespace stratobs {

namespace {

// Relative slack attached to every 256-bit rounding step.
const WideFloat& rounding_eps() {
  static const WideFloat eps = ldexp(WideFloat(1), -250);
  return eps;
}

std::string strip_spaces(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c != ' ' && c != '\t') out.push_back(c);
  }
  return out;
}

ExactReal from_surd(const SurdParts& s) { return ExactReal::quadratic(s.p, s.q, s.d, s.r); }

FloatReal as_float(const ExactReal& x) { return {x.mid(), x.radius()}; }

WideFloat round_slack(const WideFloat& v) { return abs(v) * rounding_eps(); }

}  // namespace

std::optional<SurdParts> surd_parts(const ExactReal& x) {
  switch (x.kind()) {
    case ExactReal::Kind::rational:
      return SurdParts{x.as_rational().num(), 0, 1, x.as_rational().den()};
    case ExactReal::Kind::quadratic: {
      const auto& q = x.as_quadratic();
      return SurdParts{q.p, q.q, q.d, q.r};
    }
    default:
      return std::nullopt;
  }
}

std::optional<std::pair<SurdParts, SurdParts>> common_radical(const ExactReal& a, const ExactReal& b) {
  auto sa = surd_parts(a);
  auto sb = surd_parts(b);
  if (!sa || !sb) return std::nullopt;
  if (sa->q == 0) sa->d = sb->d;
  if (sb->q == 0) sb->d = sa->d;
  if (sa->d != sb->d) return std::nullopt;
  return std::make_pair(*sa, *sb);
}

int surd_sign(const BigInt& x, const BigInt& y, const BigInt& d) {
  int sx = x.sign();
  int sy = y.sign();
  if (sy == 0) return sx;
  if (sx == 0 || sx == sy) return sy;
  BigInt lhs = x * x;
  BigInt rhs = y * y * d;
  if (lhs > rhs) return sx;
  if (lhs < rhs) return sy;
  return 0;
}

const WideFloat& wide_pi() {
  static const WideFloat pi = boost::math::constants::pi<WideFloat>();
  return pi;
}

// ---------------------------------------------------------------- Rational

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw std::domain_error("rational with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  BigInt g = gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::from_decimal(std::string_view text) {
  static const std::regex re(R"(^([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?$)");
  std::string s = strip_spaces(text);
  std::smatch m;
  if (!std::regex_match(s, m, re) || (m[2].length() == 0 && m[3].length() == 0)) {
    throw std::invalid_argument("malformed decimal: " + s);
  }
  std::string digits = m[2].str() + m[3].str();
  BigInt num = digits.empty() ? BigInt(0) : parse_bigint(digits);
  long exponent = -static_cast<long>(m[3].length());
  if (m[4].matched) exponent += std::stol(m[4].str());
  if (std::labs(exponent) > 4000) throw std::invalid_argument("decimal exponent out of range: " + s);
  BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::labs(exponent)));
  if (m[1] == "-") num = -num;
  return exponent >= 0 ? Rational(num * scale) : Rational(num, scale);
}

WideFloat Rational::to_wide() const { return WideFloat(num_) / WideFloat(den_); }

double Rational::to_double() const { return static_cast<double>(to_wide()); }

std::string Rational::str() const {
  return den_ == 1 ? num_.str() : num_.str() + "/" + den_.str();
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
Rational operator-(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}
Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}
Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("rational division by zero");
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}
std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  BigInt lhs = a.num_ * b.den_;
  BigInt rhs = b.num_ * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------- Quadratic

WideFloat Quadratic::to_wide() const {
  return (WideFloat(p) + WideFloat(q) * sqrt(WideFloat(d))) / WideFloat(r);
}

// ---------------------------------------------------------------- ExactReal

ExactReal ExactReal::quadratic(BigInt p, BigInt q, BigInt d, BigInt r) {
  if (r == 0) throw std::domain_error("quadratic with zero denominator");
  if (d < 0) throw std::domain_error("quadratic with negative radicand");
  if (q == 0 || d == 0) return ExactReal(Rational(p, r));
  auto [outer, core] = square_free_split(d);
  q *= outer;
  if (core == 1) return ExactReal(Rational(p + q, r));
  if (r < 0) {
    p = -p;
    q = -q;
    r = -r;
  }
  BigInt g = gcd(gcd(p, q), r);
  if (g > 1) {
    p /= g;
    q /= g;
    r /= g;
  }
  ExactReal out;
  out.v_ = Quadratic{std::move(p), std::move(q), std::move(core), std::move(r)};
  return out;
}

ExactReal ExactReal::floating(WideFloat mid, WideFloat rad) {
  if (rad < 0) throw std::domain_error("negative float radius");
  ExactReal out;
  out.v_ = FloatReal{std::move(mid), std::move(rad)};
  return out;
}

ExactReal ExactReal::from_double(double v) {
  if (!std::isfinite(v)) throw std::domain_error("non-finite double");
  return floating(WideFloat(v), 0);
}

ExactReal ExactReal::sqrt_of(const Rational& x) {
  if (x.sign() < 0) throw std::domain_error("sqrt of a negative rational");
  // sqrt(n/m) = sqrt(n*m)/m
  return quadratic(0, 1, x.num() * x.den(), x.den());
}

ExactReal ExactReal::cbrt_of(const BigInt& n) {
  WideFloat v = cbrt(WideFloat(n));
  BigInt rounded(static_cast<BigInt>(round(v)));
  if (rounded * rounded * rounded == n) return ExactReal(Rational(rounded));
  return floating(v, round_slack(v) * 4);
}

ExactReal ExactReal::parse(std::string_view text) {
  std::string s = strip_spaces(text);
  auto body = [&](std::string_view prefix) { return s.substr(prefix.size()); };
  try {
    if (s.rfind("rat:", 0) == 0) {
      std::string b = body("rat:");
      auto slash = b.find('/');
      if (slash == std::string::npos) return ExactReal(Rational(parse_bigint(b)));
      return ExactReal(Rational(parse_bigint(b.substr(0, slash)), parse_bigint(b.substr(slash + 1))));
    }
    if (s.rfind("quad:", 0) == 0) {
      static const std::regex re(
          R"(^\(?(?:([+-]?\d+)(?=[+-]))?([+-]?)(\d+)?\*?sqrt\((\d+)\)\)?(?:/([+-]?\d+))?$)");
      std::string b = body("quad:");
      std::smatch m;
      if (!std::regex_match(b, m, re)) throw std::invalid_argument("malformed quadratic");
      BigInt p = m[1].matched ? parse_bigint(m[1].str()) : BigInt(0);
      BigInt q = m[3].matched ? parse_bigint(m[3].str()) : BigInt(1);
      if (m[2] == "-") q = -q;
      BigInt d = parse_bigint(m[4].str());
      BigInt r = m[5].matched ? parse_bigint(m[5].str()) : BigInt(1);
      return quadratic(p, q, d, r);
    }
    if (s.rfind("float:", 0) == 0) {
      std::string b = body("float:");
      Rational::from_decimal(b);  // validates the literal
      WideFloat v(b);
      return floating(v, round_slack(v));
    }
    if (s.rfind("cbrt:", 0) == 0) return cbrt_of(parse_bigint(body("cbrt:")));
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      return ExactReal(Rational(parse_bigint(s.substr(0, slash)), parse_bigint(s.substr(slash + 1))));
    }
    return ExactReal(Rational::from_decimal(s));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("cannot parse real number: '" + std::string(text) + "'");
  } catch (const std::domain_error& e) {
    throw std::invalid_argument("invalid real number '" + std::string(text) + "': " + e.what());
  }
}

std::string ExactReal::str() const {
  switch (kind()) {
    case Kind::rational:
      return "rat:" + as_rational().num().str() + "/" + as_rational().den().str();
    case Kind::quadratic: {
      const auto& q = as_quadratic();
      std::string sep = q.q < 0 ? "-" : "+";
      BigInt aq = boost::multiprecision::abs(q.q);
      return "quad:(" + q.p.str() + sep + aq.str() + "*sqrt(" + q.d.str() + "))/" + q.r.str();
    }
    case Kind::floating:
    default:
      return "float:" + as_floating().mid.str(std::numeric_limits<WideFloat>::max_digits10,
                                               std::ios_base::scientific);
  }
}

WideFloat ExactReal::mid() const {
  switch (kind()) {
    case Kind::rational: return as_rational().to_wide();
    case Kind::quadratic: return as_quadratic().to_wide();
    default: return as_floating().mid;
  }
}

WideFloat ExactReal::radius() const {
  switch (kind()) {
    case Kind::rational: return 0;
    case Kind::quadratic: {
      const auto& q = as_quadratic();
      WideFloat scale = (abs(WideFloat(q.p)) + abs(WideFloat(q.q)) * sqrt(WideFloat(q.d))) / WideFloat(q.r);
      return scale * rounding_eps() * 4;
    }
    default: return as_floating().rad;
  }
}

double ExactReal::to_double() const { return static_cast<double>(mid()); }

BigInt ExactReal::floor() const {
  switch (kind()) {
    case Kind::rational: return as_rational().floor();
    case Kind::quadratic: {
      // r > 0 and sqrt(d) irrational, so q*sqrt(d) lies strictly between
      // consecutive integers and floor((p + q sqrt d)/r) = floor((p + s)/r).
      const auto& q = as_quadratic();
      BigInt s = isqrt(q.q * q.q * q.d);
      BigInt n = q.q > 0 ? BigInt(q.p + s) : BigInt(q.p - s - 1);
      return floor_div(n, q.r);
    }
    default: return static_cast<BigInt>(boost::multiprecision::floor(as_floating().mid));
  }
}

bool ExactReal::floor_certain() const {
  if (is_exact()) return true;
  const auto& f = as_floating();
  return boost::multiprecision::floor(f.mid - f.rad) == boost::multiprecision::floor(f.mid + f.rad) &&
         boost::multiprecision::floor(f.mid - f.rad) != f.mid - f.rad;
}

int ExactReal::sign() const {
  switch (kind()) {
    case Kind::rational: return as_rational().sign();
    case Kind::quadratic: {
      const auto& q = as_quadratic();
      return surd_sign(q.p, q.q, q.d);
    }
    default: {
      const auto& f = as_floating();
      if (f.mid > f.rad) return 1;
      if (f.mid < -f.rad) return -1;
      if (f.mid == 0 && f.rad == 0) return 0;
      throw UndecidableError("sign of float enclosure containing zero");
    }
  }
}

ExactReal ExactReal::reciprocal() const {
  switch (kind()) {
    case Kind::rational: return ExactReal(Rational(1) / as_rational());
    case Kind::quadratic: {
      const auto& q = as_quadratic();
      return quadratic(q.r * q.p, -q.r * q.q, q.d, q.p * q.p - q.q * q.q * q.d);
    }
    default: return ExactReal(1) / *this;
  }
}

ExactReal operator+(const ExactReal& a, const ExactReal& b) {
  if (auto c = common_radical(a, b)) {
    const auto& [x, y] = *c;
    return from_surd({x.p * y.r + y.p * x.r, x.q * y.r + y.q * x.r, x.d, x.r * y.r});
  }
  FloatReal x = as_float(a), y = as_float(b);
  WideFloat mid = x.mid + y.mid;
  return ExactReal::floating(mid, x.rad + y.rad + round_slack(mid));
}

ExactReal operator-(const ExactReal& a) {
  switch (a.kind()) {
    case ExactReal::Kind::rational: return ExactReal(-a.as_rational());
    case ExactReal::Kind::quadratic: {
      const auto& q = a.as_quadratic();
      return ExactReal::quadratic(-q.p, -q.q, q.d, q.r);
    }
    default: return ExactReal::floating(-a.as_floating().mid, a.as_floating().rad);
  }
}

ExactReal operator-(const ExactReal& a, const ExactReal& b) { return a + (-b); }

ExactReal operator*(const ExactReal& a, const ExactReal& b) {
  if (auto c = common_radical(a, b)) {
    const auto& [x, y] = *c;
    return from_surd({x.p * y.p + x.q * y.q * x.d, x.p * y.q + y.p * x.q, x.d, x.r * y.r});
  }
  FloatReal x = as_float(a), y = as_float(b);
  WideFloat mid = x.mid * y.mid;
  WideFloat rad = abs(x.mid) * y.rad + abs(y.mid) * x.rad + x.rad * y.rad + round_slack(mid);
  return ExactReal::floating(mid, rad);
}

ExactReal operator/(const ExactReal& a, const ExactReal& b) {
  if (a.is_exact() && b.is_exact() && common_radical(a, b)) {
    if (b.sign() == 0) throw std::domain_error("division by zero");
    return a * b.reciprocal();
  }
  FloatReal x = as_float(a), y = as_float(b);
  WideFloat ay = abs(y.mid);
  if (ay <= y.rad) throw UndecidableError("division by a float enclosure containing zero");
  WideFloat mid = x.mid / y.mid;
  WideFloat rad = (abs(x.mid) * y.rad + ay * x.rad) / (ay * (ay - y.rad)) + round_slack(mid);
  return ExactReal::floating(mid, rad);
}

std::partial_ordering operator<=>(const ExactReal& a, const ExactReal& b) {
  if (common_radical(a, b)) {
    int s = (a - b).sign();
    return s < 0 ? std::partial_ordering::less
                 : s > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
  }
  FloatReal x = as_float(a), y = as_float(b);
  if (x.mid + x.rad < y.mid - y.rad) return std::partial_ordering::less;
  if (x.mid - x.rad > y.mid + y.rad) return std::partial_ordering::greater;
  if (x.rad == 0 && y.rad == 0 && x.mid == y.mid) return std::partial_ordering::equivalent;
  return std::partial_ordering::unordered;
}

bool operator==(const ExactReal& a, const ExactReal& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ExactReal::Kind::rational: return a.as_rational() == b.as_rational();
    case ExactReal::Kind::quadratic: return a.as_quadratic() == b.as_quadratic();
    default:
      return a.as_floating().mid == b.as_floating().mid && a.as_floating().rad == b.as_floating().rad;
  }
}

}  // namespace stratobs
