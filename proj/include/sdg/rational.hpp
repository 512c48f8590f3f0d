#ifndef SDG_RATIONAL_HPP
#define SDG_RATIONAL_HPP

#include <gmpxx.h>

#include <random>
#include <stdexcept>
#include <string>

namespace sdg {

// Exact arbitrary-precision rational scalar. GMP keeps values canonical
// (lowest terms, positive denominator) under arithmetic; only raw
// numerator/denominator construction needs an explicit canonicalize.
using Rational = mpq_class;

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Parses "p/q" or "p". Rejects anything else.
Rational rat_parse(const std::string& s);

// Renders as "p/q", or "p" when the denominator is 1.
std::string rat_str(const Rational& q);

// Deterministic source of random exact rationals for identity testing.
// Numerators are drawn from [-range, range], denominators from [1, range].
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(eng_);
  }

  Rational rational(std::int64_t range) {
    return rat(uniform(-range, range), uniform(1, range));
  }

  Rational nonzero_rational(std::int64_t range) {
    while (true) {
      Rational q = rational(range);
      if (q != 0) return q;
    }
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace sdg

#endif
