#include "stratobs/bigint.hpp"

#include <cmath>
#include <stdexcept>

namespace stratobs {

BigInt isqrt(const BigInt& n) {
  if (n < 0) throw std::domain_error("isqrt of a negative integer");
  if (n < 2) return n;
  // Seed from a double estimate for small inputs, then correct by one-step
  // adjustments; large inputs use the library's Newton iteration.
  if (boost::multiprecision::msb(n) < 100) {
    BigInt s(static_cast<std::uint64_t>(std::sqrt(n.convert_to<long double>())));
    while (s * s > n) --s;
    while ((s + 1) * (s + 1) <= n) ++s;
    return s;
  }
  return boost::multiprecision::sqrt(n);
}

std::optional<BigInt> exact_sqrt(const BigInt& n) {
  if (n < 0) return std::nullopt;
  BigInt s = isqrt(n);
  if (s * s == n) return s;
  return std::nullopt;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  if (b == 0) throw std::domain_error("division by zero");
  BigInt q = a / b;
  BigInt r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

BigInt floor_mod(const BigInt& a, const BigInt& b) { return a - b * floor_div(a, b); }

BigInt gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(a, b);
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::abs(a / gcd(a, b) * b);
}

SquareFreeSplit square_free_split(const BigInt& n) {
  if (n <= 0) throw std::domain_error("square_free_split needs n > 0");
  BigInt rest = n;
  BigInt outer = 1;
  BigInt core = 1;
  for (BigInt p = 2; p * p <= rest; ++p) {
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) outer *= p;
    if (e % 2 == 1) core *= p;
  }
  core *= rest;
  return {outer, core};
}

BigInt smallest_square_multiple_root(const BigInt& n) {
  if (n < 1) throw std::domain_error("smallest_square_multiple_root needs n >= 1");
  BigInt rest = n;
  BigInt k = 1;
  for (BigInt p = 2; p * p <= rest; ++p) {
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    for (int i = 0; i < (e + 1) / 2; ++i) k *= p;
  }
  return k * rest;
}

std::string to_string(const BigInt& n) { return n.str(); }

BigInt parse_bigint(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw std::invalid_argument("malformed integer: " + s);
  for (std::size_t j = i; j < s.size(); ++j) {
    if (s[j] < '0' || s[j] > '9') throw std::invalid_argument("malformed integer: " + s);
  }
  // cpp_int reads a leading 0 as an octal prefix.
  std::size_t first = s.find_first_not_of('0', i);
  BigInt v = first == std::string::npos ? BigInt(0) : BigInt(s.substr(first));
  return s[0] == '-' ? BigInt(-v) : v;
}

}  // namespace stratobs
