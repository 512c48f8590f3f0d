#ifndef SDG_CALCULUS_HPP
#define SDG_CALCULUS_HPP

#include <functional>
#include <optional>
#include <vector>

#include "sdg/linalg.hpp"
#include "sdg/weil.hpp"

namespace sdg {

// A map between chart spaces, given by a signature-generic evaluator built
// from ring operations and rational scalars. Extraction reads Taylor data
// off one evaluation on fresh generators; the evaluator must be polynomial
// in the sense that it commutes with the quotient.
struct PolyMap {
  unsigned n_in = 0;
  unsigned n_out = 0;
  std::function<Vec(const Vec&)> eval;
  // Advisory degree bound; extractors verify on rescaled witnesses either way.
  std::optional<unsigned> declared_degree;
};

// A map on pairs, for the two-argument normal form.
struct BinaryPolyMap {
  unsigned n = 0;  // dimension of each argument
  unsigned w = 0;  // output dimension
  std::function<Vec(const Vec&, const Vec&)> eval;
};

struct AffineExtraction {
  std::vector<Rational> value;  // f(base)
  RatMatrix derivative;         // n_out x n_in
};

struct QuadraticExtraction {
  std::vector<Rational> value;
  RatMatrix derivative;
  RatTensor3 second_derivative;  // symmetric in the two vector slots
};

// The unique two-argument degree-2 normal form
//   m(v, w) = a0 + A1 v + B1 w + A2[v,v] + B2[w,w] + C2[v,w].
struct QuadraticMapRep {
  unsigned n = 0, w = 0;
  std::vector<Rational> a0;
  RatMatrix A1, B1;
  RatTensor3 A2, B2, C2;  // A2, B2 symmetric

  Vec eval(const Vec& v, const Vec& u) const;
};

// Evaluates f on base + fresh mutually annihilating generators and reads
// the value and derivative. A second evaluation on a rationally rescaled
// witness guards against evaluators that are not affine-consistent; a
// mismatch names the offending output monomial.
AffineExtraction extract_affine(const PolyMap& f,
                                const std::vector<Rational>& base);

// Same with a free cap-3 block, reading the symmetric second derivative.
QuadraticExtraction extract_quadratic(const PolyMap& f,
                                      const std::vector<Rational>& base);

// Reads the unique two-argument normal form from one evaluation on a
// generic admissible witness and re-checks it on a rescaled one.
QuadraticMapRep extract_binary_quadratic(const BinaryPolyMap& m);

}  // namespace sdg

#endif
