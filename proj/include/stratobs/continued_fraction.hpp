#pragma once

#include "stratobs/exact_real.hpp"

#include <cstddef>
#include <vector>

namespace stratobs {

enum class CfTermination { finite, periodic, truncated };

/// Partial quotients a0; a1, a2, ... of a regular continued fraction.
///
/// Finite expansions are canonical (last quotient >= 2 unless the value is an
/// integer). Periodic expansions store the preperiod followed by one period;
/// `period_start` marks where the repeating block begins. Truncated expansions
/// (float inputs) hold only the quotients the enclosure certifies.
struct ContinuedFraction {
  std::vector<BigInt> quotients;
  CfTermination termination = CfTermination::finite;
  std::size_t period_start = 0;
  /// Truncated only: how many more quotients were requested than certified.
  std::size_t untrusted = 0;
  /// Square-free radicand of a quadratic input (0 otherwise); lets cf_value
  /// rebuild the surd without factoring the period's discriminant.
  BigInt radical = 0;

  /// Quotient i, unrolling the period when needed.
  const BigInt& quotient(std::size_t i) const;
  /// Number of quotients available (unbounded for periodic).
  bool has_quotient(std::size_t i) const;
  std::size_t period_length() const { return quotients.size() - period_start; }

  friend bool operator==(const ContinuedFraction&, const ContinuedFraction&) = default;
};

struct Convergent {
  std::size_t index = 0;
  BigInt p;
  BigInt q;
};

/// Rationals expand completely (Euclid); quadratic surds are expanded until the
/// reduced-surd state repeats; floats stop at the first quotient the enclosure
/// cannot pin down, or at `depth`.
ContinuedFraction cf_expand(const ExactReal& x, std::size_t depth);

/// The first `count` convergents; throws std::out_of_range if the expansion has
/// fewer quotients.
std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t count);

/// Exact value of a finite or periodic expansion; for truncated expansions the
/// value of the certified prefix.
ExactReal cf_value(const ContinuedFraction& cf);

/// K(x) = sup_{k>=1} a_k.
struct PartialQuotientSup {
  BigInt value;            // meaningful unless `unbounded`
  bool unbounded = false;  // never set for exact inputs
  bool certain = false;    // true for finite and periodic expansions
};
PartialQuotientSup partial_quotient_sup(const ExactReal& x, std::size_t depth);

}  // namespace stratobs
