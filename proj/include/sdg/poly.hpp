#ifndef SDG_POLY_HPP
#define SDG_POLY_HPP

#include <map>

#include "sdg/weil.hpp"

namespace sdg {

// Sparse polynomial with rational coefficients over chart coordinates.
// Used for the base-point dependence of connection symbols and for the
// truncated Neumann expansion of matrix inverses. No quotient relations
// here; truncation is by explicit degree bound where callers need it.
class Poly {
 public:
  Poly() = default;
  explicit Poly(unsigned nvars) : nvars_(nvars) {}
  static Poly constant(unsigned nvars, const Rational& c) {
    Poly p(nvars);
    p.add(Monomial::unit(nvars), c);
    return p;
  }
  static Poly var(unsigned nvars, unsigned i) {
    Poly p(nvars);
    p.add(Monomial::var(nvars, i), 1);
    return p;
  }

  unsigned nvars() const { return nvars_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  void add(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Poly operator+(const Poly& o) const {
    Poly r = *this;
    for (const auto& [m, c] : o.terms_) r.add(m, c);
    return r;
  }
  Poly operator-(const Poly& o) const {
    Poly r = *this;
    for (const auto& [m, c] : o.terms_) r.add(m, -c);
    return r;
  }
  Poly operator*(const Poly& o) const {
    Poly r(nvars_);
    for (const auto& [ma, ca] : terms_)
      for (const auto& [mb, cb] : o.terms_) r.add(ma * mb, ca * cb);
    return r;
  }
  Poly operator*(const Rational& c) const {
    Poly r(nvars_);
    for (const auto& [m, v] : terms_) r.add(m, v * c);
    return r;
  }
  bool operator==(const Poly& o) const { return terms_ == o.terms_; }

  Poly truncated(unsigned max_degree) const {
    Poly r(nvars_);
    for (const auto& [m, c] : terms_)
      if (m.degree() <= max_degree) r.add(m, c);
    return r;
  }

  // Exact evaluation at a point with algebra-valued coordinates.
  WeilElement eval(const Vec& p) const {
    if (p.dim() != nvars_) throw error("polynomial arity mismatch");
    WeilElement acc = WeilElement::zero(p.signature());
    for (const auto& [m, c] : terms_) {
      WeilElement t = WeilElement::constant(p.signature(), c);
      for (unsigned i = 0; i < nvars_; ++i)
        for (unsigned e = 0; e < m.exp(i); ++e) t = t * p[i];
      acc = acc + t;
    }
    return acc;
  }

 private:
  unsigned nvars_ = 0;
  std::map<Monomial, Rational> terms_;
};

}  // namespace sdg

#endif
