#ifndef SDG_WEIL_HPP
#define SDG_WEIL_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sdg/rational.hpp"

namespace sdg {

// Exponent vector over a fixed set of generators, ordered by total degree
// then lexicographically. The same type doubles as a monomial in chart
// coordinates (see poly.hpp).
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(unsigned nvars) : exps_(nvars, 0) {}
  static Monomial unit(unsigned nvars) { return Monomial(nvars); }
  static Monomial var(unsigned nvars, unsigned i, unsigned exp = 1) {
    Monomial m(nvars);
    m.exps_.at(i) = static_cast<std::uint8_t>(exp);
    return m;
  }

  unsigned nvars() const { return static_cast<unsigned>(exps_.size()); }
  unsigned exp(unsigned i) const { return exps_.at(i); }
  unsigned degree() const {
    unsigned d = 0;
    for (auto e : exps_) d += e;
    return d;
  }
  bool is_unit() const { return degree() == 0; }

  Monomial operator*(const Monomial& o) const;
  // Divides out e_a*e_b; caller must check divisibility.
  Monomial div_pair(unsigned a, unsigned b) const;
  bool divisible_by_pair(unsigned a, unsigned b) const {
    if (a == b) return exp(a) >= 2;
    return exp(a) >= 1 && exp(b) >= 1;
  }

  bool operator==(const Monomial& o) const { return exps_ == o.exps_; }
  bool operator<(const Monomial& o) const {
    unsigned da = degree(), db = o.degree();
    if (da != db) return da < db;
    return exps_ < o.exps_;
  }

  std::string to_string() const;  // e.g. "e1^2*e3", "1" for the unit

 private:
  std::vector<std::uint8_t> exps_;
};

// Signed identification of two degree-2 monomials: e_a*e_b = sign * e_c*e_d.
// This is the one class of non-monomial relations the kernel supports; it is
// what makes nil-square tuples with alternating-but-nonzero cross products
// constructible at all (pure forbidden sets cannot produce them).
struct QuadraticAlias {
  unsigned a, b;  // source pair, unordered
  unsigned c, d;  // target pair, unordered
  int sign;       // +1 or -1
};

class AlgebraSignature;
using SigPtr = std::shared_ptr<const AlgebraSignature>;

// The truncated nilpotent polynomial algebra
//   Q[e_1,...,e_k] / (monomials of degree >= cap, forbidden quadratics,
//                     quadratic aliases)
// modelling the base ring. Monomial normal forms are precomputed when
// aliases are present, so equality stays a structural comparison.
class AlgebraSignature {
 public:
  unsigned generators() const { return k_; }
  unsigned cap() const { return cap_; }
  const std::set<std::pair<unsigned, unsigned>>& forbidden() const {
    return forbidden_;
  }
  const std::vector<QuadraticAlias>& aliases() const { return aliases_; }

  // Maps a raw monomial to {sign, canonical representative}, or nullopt if
  // it is zero in the quotient.
  std::optional<std::pair<int, Monomial>> normalize(const Monomial& m) const;

  // All monomials in the basis (canonical representatives), graded order.
  std::vector<Monomial> basis() const;

  friend SigPtr make_algebra(unsigned k, unsigned cap,
                             const std::set<std::pair<unsigned, unsigned>>& forbidden,
                             const std::vector<QuadraticAlias>& aliases);

 private:
  AlgebraSignature() = default;
  void build_alias_table();
  bool forbidden_divides(const Monomial& m) const;

  unsigned k_ = 0;
  unsigned cap_ = 3;
  std::set<std::pair<unsigned, unsigned>> forbidden_;
  std::vector<QuadraticAlias> aliases_;
  // monomial -> (sign, representative); missing entry with aliases present
  // means zero. Only built when aliases exist.
  std::map<Monomial, std::pair<int, Monomial>> norm_;
};

SigPtr make_algebra(unsigned k, unsigned cap,
                    const std::set<std::pair<unsigned, unsigned>>& forbidden = {},
                    const std::vector<QuadraticAlias>& aliases = {});

// An element of the algebra: a sparse map from surviving monomials to
// nonzero rational coefficients. Immutable value semantics; elements over
// distinct signatures never combine.
class WeilElement {
 public:
  WeilElement() = default;  // zero over the null signature; combine-inert

  static WeilElement zero(const SigPtr& sig) { return WeilElement(sig); }
  static WeilElement constant(const SigPtr& sig, const Rational& c);
  static WeilElement generator(const SigPtr& sig, unsigned i);
  static WeilElement monomial(const SigPtr& sig, const Monomial& m,
                              const Rational& c);

  const SigPtr& signature() const { return sig_; }
  bool is_zero() const { return terms_.empty(); }
  Rational constant_term() const;
  Rational coeff(const Monomial& m) const;
  const std::map<Monomial, Rational>& terms() const { return terms_; }

  WeilElement operator+(const WeilElement& o) const;
  WeilElement operator-(const WeilElement& o) const;
  WeilElement operator-() const;
  WeilElement operator*(const WeilElement& o) const;
  WeilElement operator*(const Rational& c) const;
  WeilElement& operator+=(const WeilElement& o) { return *this = *this + o; }
  WeilElement& operator-=(const WeilElement& o) { return *this = *this - o; }
  bool operator==(const WeilElement& o) const;
  bool operator!=(const WeilElement& o) const { return !(*this == o); }

  // Multiplicative inverse via the truncated geometric series; requires a
  // nonzero constant term.
  WeilElement invert() const;

  std::string to_string() const;

 private:
  explicit WeilElement(SigPtr sig) : sig_(std::move(sig)) {}
  void add_term(const Monomial& m, const Rational& c);
  static const SigPtr& common_sig(const WeilElement& a, const WeilElement& b);

  SigPtr sig_;
  std::map<Monomial, Rational> terms_;
};

inline WeilElement operator*(const Rational& c, const WeilElement& x) {
  return x * c;
}

// A point of the chart (or a tangent principal part): an n-tuple of elements
// over one shared signature.
class Vec {
 public:
  Vec() = default;
  Vec(SigPtr sig, unsigned dim);
  Vec(SigPtr sig, std::vector<WeilElement> entries);
  static Vec from_rationals(const SigPtr& sig, const std::vector<Rational>& r);

  unsigned dim() const { return static_cast<unsigned>(e_.size()); }
  const SigPtr& signature() const { return sig_; }
  const WeilElement& operator[](unsigned i) const { return e_.at(i); }
  WeilElement& operator[](unsigned i) { return e_.at(i); }

  Vec operator+(const Vec& o) const;
  Vec operator-(const Vec& o) const;
  Vec operator-() const;
  Vec operator*(const Rational& c) const;
  Vec operator*(const WeilElement& c) const;
  bool operator==(const Vec& o) const { return e_ == o.e_; }
  bool operator!=(const Vec& o) const { return !(*this == o); }
  bool is_zero() const;

  // Concatenation, used for product-space membership checks.
  static Vec concat(const Vec& a, const Vec& b);

  std::string to_string() const;

 private:
  SigPtr sig_;
  std::vector<WeilElement> e_;
};

inline Vec operator*(const Rational& c, const Vec& v) { return v * c; }

}  // namespace sdg

#endif
