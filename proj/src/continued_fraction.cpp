#include "stratobs/continued_fraction.hpp"

#include <map>
#include <stdexcept>

namespace stratobs {

namespace {

constexpr std::size_t kMaxSurdStates = 1u << 22;

ContinuedFraction expand_rational(BigInt num, BigInt den) {
  ContinuedFraction cf;
  cf.termination = CfTermination::finite;
  // Euclid; the last quotient is >= 2 automatically unless the value is an integer.
  while (den != 0) {
    BigInt a = floor_div(num, den);
    cf.quotients.push_back(a);
    BigInt rem = num - a * den;
    num = std::move(den);
    den = std::move(rem);
  }
  return cf;
}

ContinuedFraction expand_quadratic(const Quadratic& x) {
  // Rewrite (p + q sqrt d)/r as (P + sqrt D)/Q with Q | D - P^2.
  BigInt D = x.q * x.q * x.d;
  BigInt P = x.q > 0 ? x.p : BigInt(-x.p);
  BigInt Q = x.q > 0 ? x.r : BigInt(-x.r);
  if ((D - P * P) % Q != 0) {
    BigInt aq = boost::multiprecision::abs(Q);
    P *= aq;
    D *= Q * Q;
    Q *= aq;
  }
  const BigInt s = isqrt(D);

  ContinuedFraction cf;
  cf.termination = CfTermination::periodic;
  std::map<std::pair<BigInt, BigInt>, std::size_t> seen;
  for (;;) {
    auto [it, fresh] = seen.emplace(std::make_pair(P, Q), cf.quotients.size());
    if (!fresh) {
      cf.period_start = it->second;
      return cf;
    }
    if (seen.size() > kMaxSurdStates) throw std::length_error("continued fraction period search exceeded state bound");
    BigInt a = Q > 0 ? floor_div(P + s, Q) : floor_div(P + s + 1, Q);
    cf.quotients.push_back(a);
    P = a * Q - P;
    Q = (D - P * P) / Q;
  }
}

ContinuedFraction expand_float(const FloatReal& f, std::size_t depth) {
  if (f.rad == 0) {
    // Zero radius means the binary value itself is exact: a dyadic rational.
    int exp = 0;
    WideFloat mant = frexp(f.mid, &exp);
    const int bits = std::numeric_limits<WideFloat>::digits;
    BigInt num = static_cast<BigInt>(ldexp(mant, bits));
    int shift = exp - bits;
    if (shift >= 0) return expand_rational(num << shift, 1);
    return expand_rational(num, BigInt(1) << -shift);
  }
  const WideFloat slack = ldexp(WideFloat(1), -248);
  ContinuedFraction cf;
  cf.termination = CfTermination::truncated;
  WideFloat lo = f.mid - f.rad;
  WideFloat hi = f.mid + f.rad;
  while (cf.quotients.size() < depth) {
    WideFloat a = floor(lo);
    if (floor(hi) != a || lo == a) break;
    cf.quotients.push_back(static_cast<BigInt>(a));
    WideFloat nlo = 1 / (hi - a);
    WideFloat nhi = 1 / (lo - a);
    lo = nlo * (1 - slack);
    hi = nhi * (1 + slack);
  }
  cf.untrusted = depth - cf.quotients.size();
  return cf;
}

}  // namespace

const BigInt& ContinuedFraction::quotient(std::size_t i) const {
  if (i < quotients.size()) return quotients[i];
  if (termination != CfTermination::periodic) throw std::out_of_range("continued fraction quotient index");
  return quotients[period_start + (i - period_start) % period_length()];
}

bool ContinuedFraction::has_quotient(std::size_t i) const {
  return termination == CfTermination::periodic || i < quotients.size();
}

ContinuedFraction cf_expand(const ExactReal& x, std::size_t depth) {
  if (depth < 1) throw std::invalid_argument("cf_expand depth must be >= 1");
  switch (x.kind()) {
    case ExactReal::Kind::rational: return expand_rational(x.as_rational().num(), x.as_rational().den());
    case ExactReal::Kind::quadratic: {
      ContinuedFraction cf = expand_quadratic(x.as_quadratic());
      cf.radical = x.as_quadratic().d;
      return cf;
    }
    default: return expand_float(x.as_floating(), depth);
  }
}

std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t count) {
  if (count > 0 && !cf.has_quotient(count - 1)) {
    throw std::out_of_range("requested more convergents than available quotients");
  }
  std::vector<Convergent> out;
  out.reserve(count);
  BigInt p_prev2 = 0, p_prev = 1, q_prev2 = 1, q_prev = 0;
  for (std::size_t n = 0; n < count; ++n) {
    const BigInt& a = cf.quotient(n);
    BigInt p = a * p_prev + p_prev2;
    BigInt q = a * q_prev + q_prev2;
    out.push_back({n, p, q});
    p_prev2 = std::move(p_prev);
    p_prev = std::move(p);
    q_prev2 = std::move(q_prev);
    q_prev = std::move(q);
  }
  return out;
}

namespace {

// (p_{n-1} y + p_{n-2}) / (q_{n-1} y + q_{n-2}) for the first n quotients.
ExactReal compose_prefix(const std::vector<BigInt>& quotients, std::size_t n, const ExactReal& tail) {
  BigInt p_prev2 = 0, p_prev = 1, q_prev2 = 1, q_prev = 0;
  for (std::size_t i = 0; i < n; ++i) {
    BigInt p = quotients[i] * p_prev + p_prev2;
    BigInt q = quotients[i] * q_prev + q_prev2;
    p_prev2 = std::move(p_prev);
    p_prev = std::move(p);
    q_prev2 = std::move(q_prev);
    q_prev = std::move(q);
  }
  return (ExactReal(Rational(p_prev)) * tail + ExactReal(Rational(p_prev2))) /
         (ExactReal(Rational(q_prev)) * tail + ExactReal(Rational(q_prev2)));
}

}  // namespace

ExactReal cf_value(const ContinuedFraction& cf) {
  if (cf.quotients.empty()) throw std::invalid_argument("empty continued fraction");
  if (cf.termination != CfTermination::periodic) {
    auto c = convergents(cf, cf.quotients.size());
    return ExactReal(Rational(c.back().p, c.back().q));
  }
  // Purely periodic tail y = [b0; ..., b_{m-1}, y] solves
  // Q1 y^2 + (Q2 - P1) y - P2 = 0 with the period's last two convergents.
  std::vector<BigInt> block(cf.quotients.begin() + static_cast<std::ptrdiff_t>(cf.period_start), cf.quotients.end());
  ContinuedFraction period{block, CfTermination::finite, 0, 0};
  auto c = convergents(period, block.size());
  BigInt P1 = c.back().p, Q1 = c.back().q;
  BigInt P2 = block.size() > 1 ? c[c.size() - 2].p : BigInt(1);
  BigInt Q2 = block.size() > 1 ? c[c.size() - 2].q : BigInt(0);
  BigInt A = Q1, B = Q2 - P1, C = P2;
  const BigInt disc = B * B + 4 * A * C;
  ExactReal y;
  if (cf.radical > 1 && disc % cf.radical == 0 && exact_sqrt(BigInt(disc / cf.radical))) {
    y = ExactReal::quadratic(-B, *exact_sqrt(BigInt(disc / cf.radical)), cf.radical, 2 * A);
  } else {
    y = ExactReal::quadratic(-B, 1, disc, 2 * A);
  }
  if (cf.period_start == 0) return y;
  return compose_prefix(cf.quotients, cf.period_start, y);
}

PartialQuotientSup partial_quotient_sup(const ExactReal& x, std::size_t depth) {
  ContinuedFraction cf = cf_expand(x, depth);
  PartialQuotientSup out;
  out.value = 0;
  for (std::size_t i = 1; i < cf.quotients.size(); ++i) out.value = std::max(out.value, cf.quotients[i]);
  if (cf.termination == CfTermination::periodic && cf.period_start == 0) {
    out.value = std::max(out.value, cf.quotients[0]);
  }
  out.certain = cf.termination != CfTermination::truncated;
  return out;
}

}  // namespace stratobs
