#ifndef SDG_CONNECTION_HPP
#define SDG_CONNECTION_HPP

#include <string>
#include <vector>

#include "sdg/linalg.hpp"
#include "sdg/poly.hpp"
#include "sdg/spaces.hpp"

namespace sdg {

// Tangent vector at a chart point, identified with its principal part.
struct TangentVector {
  Vec base;
  Vec principal;
};

// An affine connection in a chart, acting by
//   lambda(P, Q, S) = Q + S - P + Gamma_P[Q - P, S - P].
// The bilinear symbol Gamma_P depends polynomially on the base point with a
// bounded degree (default 2), which keeps evaluation at algebra-valued
// points exact and covers the canonical translation connections of the
// built-in matrix groups on their monads.
class ConnectionSymbol {
 public:
  ConnectionSymbol() = default;
  ConnectionSymbol(unsigned dim, unsigned degree);

  static ConnectionSymbol zero(unsigned dim, unsigned degree = 2) {
    return ConnectionSymbol(dim, degree);
  }
  static ConnectionSymbol random(unsigned dim, unsigned degree, Rng& rng,
                                 std::int64_t range);
  // A symbol whose value is the same constant bilinear tensor at every point.
  static ConnectionSymbol constant(const RatTensor3& gamma);

  unsigned dim() const { return n_; }
  unsigned degree() const { return degree_; }
  const Poly& coeff(unsigned i, unsigned j, unsigned k) const {
    return gamma_.at((std::size_t(i) * n_ + j) * n_ + k);
  }
  void set_coeff(unsigned i, unsigned j, unsigned k, Poly p);
  void add_coeff_term(unsigned i, unsigned j, unsigned k, const Monomial& m,
                      const Rational& c);

  bool is_symmetric() const { return symmetric_; }
  ConnectionSymbol symmetrized() const;
  ConnectionSymbol conjugated() const;  // swaps the two vector slots

  // The bilinear tensor Gamma_P, exactly evaluated.
  WeilTensor3 eval_at(const Vec& P) const;

  bool operator==(const ConnectionSymbol& o) const {
    return n_ == o.n_ && gamma_ == o.gamma_;
  }

  // JSON document {"dim": n, "degree": d,
  //                "coeffs": [[i, j, k, [alpha...], "p/q"], ...]}.
  // Indices are 0-based; unknown fields are rejected.
  static ConnectionSymbol from_json_text(const std::string& text);
  std::string to_json_text() const;

 private:
  void refresh_symmetry();

  unsigned n_ = 0;
  unsigned degree_ = 2;
  std::vector<Poly> gamma_;  // n^3 coefficient polynomials in P
  bool symmetric_ = true;
};

enum class NeighbourCheck { None, NilSquare, SecondOrder };

// Parallelogram completion. Strict modes verify that Q and S are admissible
// neighbours of P: NilSquare is the definitional domain, SecondOrder the
// unique extension used by the infinitesimal group suites.
Vec lambda_apply(const ConnectionSymbol& gamma, const Vec& P, const Vec& Q,
                 const Vec& S, NeighbourCheck check = NeighbourCheck::NilSquare);

enum class TorsionMode { Definitional, Chart };

// tau_P(Q, R): Definitional iterates lambda; Chart evaluates
// P - (Gamma_P[Q-P, R-P] - Gamma_P[R-P, Q-P]), which is also the unique
// second-order extension.
Vec torsion(const ConnectionSymbol& gamma, const Vec& P, const Vec& Q,
            const Vec& R, TorsionMode mode = TorsionMode::Chart,
            NeighbourCheck check = NeighbourCheck::NilSquare);

// Second-order log/exp at P for a symmetric symbol (tensor form; `gbar`
// must be Gamma evaluated at P). log returns the principal part.
Vec log_point(const WeilTensor3& gbar, const Vec& P, const Vec& Q,
              bool strict = true);
Vec exp_point(const WeilTensor3& gbar, const Vec& P, const Vec& v,
              bool strict = true);
// Family forms; they reject non-symmetric symbols.
Vec log_point(const ConnectionSymbol& gbar, const Vec& P, const Vec& Q,
              bool strict = true);
Vec exp_point(const ConnectionSymbol& gbar, const Vec& P, const Vec& v,
              bool strict = true);

// Second-order affine combination of `points` with weights summing to 1,
// expanded at base point P:
//   sum_j mu_j P_j + 1/2 (Gbar_P[S - P]^2 - sum_j mu_j Gbar_P[P_j - P]^2),
// with S the plain weighted sum. P must be a second-order neighbour of the
// tuple; for symmetric symbols the result is independent of that choice.
Vec iaffine_combination(const ConnectionSymbol& gbar, const Vec& P,
                        const std::vector<Rational>& weights,
                        const PointTuple& points, bool strict = true);

// Linear variant with arbitrary weights, taken in the monad of `base`.
Vec ilinear_combination(const ConnectionSymbol& gbar, const Vec& base,
                        const std::vector<Rational>& weights,
                        const PointTuple& points, bool strict = true);

}  // namespace sdg

#endif
