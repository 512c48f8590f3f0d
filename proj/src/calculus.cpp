#include "sdg/calculus.hpp"

#include <sstream>

namespace sdg {

namespace {

// Mutually annihilating block of k generators, cap 3.
SigPtr annihilating_algebra(unsigned k) {
  std::set<std::pair<unsigned, unsigned>> forb;
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = i; j < k; ++j) forb.insert({i, j});
  return make_algebra(std::max(1u, k), 3, forb);
}

Vec displaced_base(const SigPtr& sig, const std::vector<Rational>& base,
                   const std::vector<Rational>& scales) {
  Vec v = Vec::from_rationals(sig, base);
  for (unsigned i = 0; i < v.dim(); ++i)
    v[i] = v[i] + WeilElement::generator(sig, i) * scales[i];
  return v;
}

void check_output(const PolyMap& f, const Vec& out) {
  if (out.dim() != f.n_out) throw error("evaluator output dimension mismatch");
}

[[noreturn]] void report_mismatch(const char* what, unsigned coord,
                                  const WeilElement& residual) {
  std::ostringstream os;
  os << what << ": output coordinate " << coord
     << " disagrees with the extracted form at monomial ";
  os << residual.terms().begin()->first.to_string();
  throw error(os.str());
}

std::vector<Rational> prime_scales(unsigned k) {
  static const long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29,
                                31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
  std::vector<Rational> s;
  for (unsigned i = 0; i < k; ++i)
    s.push_back(rat(primes[i % 20] + 72 * long(i / 20)));
  return s;
}

}  // namespace

Vec QuadraticMapRep::eval(const Vec& v, const Vec& u) const {
  if (v.dim() != n || u.dim() != n) throw error("argument dimension mismatch");
  Vec out = Vec::from_rationals(v.signature(), a0);
  out = out + A1.apply(v) + B1.apply(u) + A2.apply(v, v) + B2.apply(u, u) +
        C2.apply(v, u);
  return out;
}

AffineExtraction extract_affine(const PolyMap& f,
                                const std::vector<Rational>& base) {
  if (base.size() != f.n_in) throw error("base dimension mismatch");
  auto sig = annihilating_algebra(f.n_in);

  Vec probe = displaced_base(sig, base, std::vector<Rational>(f.n_in, 1));
  Vec out = f.eval(probe);
  check_output(f, out);

  AffineExtraction r;
  r.value.resize(f.n_out);
  r.derivative = RatMatrix(f.n_out, f.n_in);
  for (unsigned j = 0; j < f.n_out; ++j) {
    r.value[j] = out[j].constant_term();
    for (unsigned i = 0; i < f.n_in; ++i)
      r.derivative.at(j, i) =
          out[j].coeff(Monomial::var(sig->generators(), i));
  }

  // Consistency pass on a rescaled witness.
  auto scales = prime_scales(f.n_in);
  Vec probe2 = displaced_base(sig, base, scales);
  Vec out2 = f.eval(probe2);
  check_output(f, out2);
  for (unsigned j = 0; j < f.n_out; ++j) {
    WeilElement expect = WeilElement::constant(sig, r.value[j]);
    for (unsigned i = 0; i < f.n_in; ++i)
      expect = expect + WeilElement::generator(sig, i) *
                            (r.derivative.at(j, i) * scales[i]);
    WeilElement residual = out2[j] - expect;
    if (!residual.is_zero())
      report_mismatch("evaluator is not affine on the first-order block", j,
                      residual);
  }
  return r;
}

QuadraticExtraction extract_quadratic(const PolyMap& f,
                                      const std::vector<Rational>& base) {
  if (base.size() != f.n_in) throw error("base dimension mismatch");
  auto sig = make_algebra(std::max(1u, f.n_in), 3);

  Vec probe = displaced_base(sig, base, std::vector<Rational>(f.n_in, 1));
  Vec out = f.eval(probe);
  check_output(f, out);

  const unsigned k = sig->generators();
  QuadraticExtraction r;
  r.value.resize(f.n_out);
  r.derivative = RatMatrix(f.n_out, f.n_in);
  r.second_derivative = RatTensor3(f.n_out, f.n_in);
  for (unsigned j = 0; j < f.n_out; ++j) {
    r.value[j] = out[j].constant_term();
    for (unsigned i = 0; i < f.n_in; ++i)
      r.derivative.at(j, i) = out[j].coeff(Monomial::var(k, i));
    for (unsigned i = 0; i < f.n_in; ++i) {
      r.second_derivative.at(j, i, i) =
          out[j].coeff(Monomial::var(k, i, 2)) * 2;
      for (unsigned l = i + 1; l < f.n_in; ++l) {
        Rational c = out[j].coeff(Monomial::var(k, i) * Monomial::var(k, l));
        r.second_derivative.at(j, i, l) = c;
        r.second_derivative.at(j, l, i) = c;
      }
    }
  }

  auto scales = prime_scales(f.n_in);
  Vec probe2 = displaced_base(sig, base, scales);
  Vec out2 = f.eval(probe2);
  check_output(f, out2);
  Vec d = probe2 - Vec::from_rationals(sig, base);
  Vec expect = Vec::from_rationals(sig, r.value) + r.derivative.apply(d) +
               r.second_derivative.apply(d, d) * rat(1, 2);
  for (unsigned j = 0; j < f.n_out; ++j) {
    WeilElement residual = out2[j] - expect[j];
    if (!residual.is_zero())
      report_mismatch("evaluator is not quadratic on the second-order block",
                      j, residual);
  }
  return r;
}

QuadraticMapRep extract_binary_quadratic(const BinaryPolyMap& m) {
  auto sig = make_algebra(std::max(1u, 2 * m.n), 3);
  const unsigned k = sig->generators();

  Vec x(sig, m.n), y(sig, m.n);
  for (unsigned i = 0; i < m.n; ++i) {
    x[i] = WeilElement::generator(sig, i);
    y[i] = WeilElement::generator(sig, m.n + i);
  }
  Vec out = m.eval(x, y);
  if (out.dim() != m.w) throw error("evaluator output dimension mismatch");

  QuadraticMapRep rep;
  rep.n = m.n;
  rep.w = m.w;
  rep.a0.resize(m.w);
  rep.A1 = RatMatrix(m.w, m.n);
  rep.B1 = RatMatrix(m.w, m.n);
  rep.A2 = RatTensor3(m.w, m.n);
  rep.B2 = RatTensor3(m.w, m.n);
  rep.C2 = RatTensor3(m.w, m.n);
  for (unsigned j = 0; j < m.w; ++j) {
    rep.a0[j] = out[j].constant_term();
    for (unsigned i = 0; i < m.n; ++i) {
      rep.A1.at(j, i) = out[j].coeff(Monomial::var(k, i));
      rep.B1.at(j, i) = out[j].coeff(Monomial::var(k, m.n + i));
    }
    for (unsigned i = 0; i < m.n; ++i) {
      // The symmetric tensors carry no 1/2 in the normal form, so the
      // off-diagonal coefficients split across the two mirror entries.
      rep.A2.at(j, i, i) = out[j].coeff(Monomial::var(k, i, 2));
      rep.B2.at(j, i, i) = out[j].coeff(Monomial::var(k, m.n + i, 2));
      for (unsigned l = i + 1; l < m.n; ++l) {
        Rational a =
            out[j].coeff(Monomial::var(k, i) * Monomial::var(k, l)) / 2;
        rep.A2.at(j, i, l) = a;
        rep.A2.at(j, l, i) = a;
        Rational b = out[j].coeff(Monomial::var(k, m.n + i) *
                                  Monomial::var(k, m.n + l)) /
                     2;
        rep.B2.at(j, i, l) = b;
        rep.B2.at(j, l, i) = b;
      }
      for (unsigned l = 0; l < m.n; ++l)
        rep.C2.at(j, i, l) =
            out[j].coeff(Monomial::var(k, i) * Monomial::var(k, m.n + l));
    }
  }

  // Re-evaluation on a rescaled admissible witness must agree exactly.
  auto scales = prime_scales(2 * m.n);
  Vec x2(sig, m.n), y2(sig, m.n);
  for (unsigned i = 0; i < m.n; ++i) {
    x2[i] = WeilElement::generator(sig, i) * scales[i];
    y2[i] = WeilElement::generator(sig, m.n + i) * scales[m.n + i];
  }
  Vec out2 = m.eval(x2, y2);
  Vec expect = rep.eval(x2, y2);
  for (unsigned j = 0; j < m.w; ++j) {
    WeilElement residual = out2[j] - expect[j];
    if (!residual.is_zero())
      report_mismatch("evaluator is not quadratic on the admissible pair set",
                      j, residual);
  }
  return rep;
}

}  // namespace sdg
