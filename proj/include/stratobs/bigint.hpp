#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace stratobs {

using BigInt = boost::multiprecision::cpp_int;

/// floor(sqrt(n)) for n >= 0.
BigInt isqrt(const BigInt& n);

/// Returns the integer square root when n is a perfect square.
std::optional<BigInt> exact_sqrt(const BigInt& n);

/// Floor division rounding toward negative infinity (b != 0).
BigInt floor_div(const BigInt& a, const BigInt& b);

/// Non-negative remainder matching floor_div.
BigInt floor_mod(const BigInt& a, const BigInt& b);

BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);

/// Writes n = outer^2 * core with core square-free (n > 0). Trial division,
/// so n is expected to be moderate (radicands, denominators).
struct SquareFreeSplit {
  BigInt outer;
  BigInt core;
};
SquareFreeSplit square_free_split(const BigInt& n);

/// Smallest k >= 1 with n | k^2 (n >= 1).
BigInt smallest_square_multiple_root(const BigInt& n);

std::string to_string(const BigInt& n);
BigInt parse_bigint(const std::string& s);

}  // namespace stratobs
