#include "stratobs/wave_system.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stratobs {

std::string ModeIndex::str() const {
  return two_dimensional() ? std::to_string(m) + "," + std::to_string(n) : std::to_string(m);
}

ModeIndex ModeLayout::index(std::size_t flat) const {
  if (flat >= size()) throw std::out_of_range("mode index outside truncation");
  if (!plate) return {static_cast<std::uint32_t>(flat + 1), 0};
  return {static_cast<std::uint32_t>(flat / cols + 1), static_cast<std::uint32_t>(flat % cols + 1)};
}

WaveSystem WaveSystem::string(ExactReal q) {
  if (q.sign() < 0) throw std::invalid_argument("string load q must be >= 0");
  WaveSystem s;
  s.type_ = Type::string;
  s.q_value_ = q.to_double();
  s.q_ = std::move(q);
  return s;
}

WaveSystem WaveSystem::beam() {
  WaveSystem s;
  s.type_ = Type::beam;
  return s;
}

WaveSystem WaveSystem::plate(double a, double b) {
  if (!(a > 0) || !(b > 0)) throw std::invalid_argument("plate sides must be positive");
  WaveSystem s;
  s.type_ = Type::plate;
  s.a_ = a;
  s.b_ = b;
  return s;
}

std::string WaveSystem::name() const {
  switch (type_) {
    case Type::string: return q_.sign() == 0 ? "string" : "loaded-string";
    case Type::beam: return "beam";
    default: return "plate";
  }
}

double WaveSystem::frequency(ModeIndex idx) const {
  const double k = idx.m;
  switch (type_) {
    case Type::string: return q_value_ == 0 ? k : std::sqrt(k * k + q_value_);
    case Type::beam: return k * k;
    default: {
      const double pa = idx.m * std::numbers::pi / a_;
      const double pb = idx.n * std::numbers::pi / b_;
      return pa * pa + pb * pb;
    }
  }
}

ExactReal WaveSystem::frequency_exact(ModeIndex idx) const {
  const auto k = static_cast<std::int64_t>(idx.m);
  switch (type_) {
    case Type::string: {
      if (q_.sign() == 0) return ExactReal(k);
      ExactReal sq = ExactReal(k * k) + q_;
      if (sq.is_rational()) return ExactReal::sqrt_of(sq.as_rational());
      WideFloat v = sqrt(sq.mid());
      return ExactReal::floating(v, sq.radius() / v + abs(v) * ldexp(WideFloat(1), -250));
    }
    case Type::beam: return ExactReal(k * k);
    default: {
      const WideFloat pa = WideFloat(idx.m) * wide_pi() / WideFloat(a_);
      const WideFloat pb = WideFloat(idx.n) * wide_pi() / WideFloat(b_);
      WideFloat v = pa * pa + pb * pb;
      return ExactReal::floating(v, abs(v) * ldexp(WideFloat(1), -248));
    }
  }
}

double WaveSystem::weight_sq(ModeIndex idx, double order) const {
  if (type_ == Type::plate) return std::pow(frequency(idx), order);
  return std::pow(static_cast<double>(idx.m), 2.0 * order);
}

bool operator==(const WaveSystem& a, const WaveSystem& b) {
  return a.type_ == b.type_ && a.q_ == b.q_ && a.a_ == b.a_ && a.b_ == b.b_;
}

}  // namespace stratobs
