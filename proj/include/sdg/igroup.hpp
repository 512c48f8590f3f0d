#ifndef SDG_IGROUP_HPP
#define SDG_IGROUP_HPP

#include <string>
#include <vector>

#include "sdg/calculus.hpp"
#include "sdg/connection.hpp"

namespace sdg {

// Second-order infinitesimal group structure on the disc D2(V), determined
// by a bilinear map B: multiplication v + w + B[v,w], inverse -v + B[v,v].
// No condition beyond bilinearity is required of B.
struct IGroupOnD2 {
  unsigned n = 0;
  RatTensor3 B;

  IGroupOnD2(unsigned dim, RatTensor3 b) : n(dim), B(std::move(b)) {
    if (B.out_dim() != n || B.in_dim() != n)
      throw error("bilinear tensor shape mismatch");
  }
  static IGroupOnD2 additive(unsigned dim) {
    return IGroupOnD2(dim, RatTensor3(dim, dim));
  }

  Vec mul(const Vec& v, const Vec& w, bool strict = true) const;
  Vec inv(const Vec& v, bool strict = true) const;
};

// Reads the bilinear map back from a group multiplication on D2(V): the
// normal form of an i-group law with unit 0 must have a0 = 0, A1 = B1 = id
// and A2 = B2 = 0; any violation is rejected naming the offending block.
RatTensor3 extract_B(const BinaryPolyMap& mul);

// The infinitesimal group induced on the second-order monad of `base` by an
// affine connection. All operations use the symbol at the base point; the
// derived symmetrization and the bracket tensor are cached at construction.
class MonadGroup {
 public:
  MonadGroup(ConnectionSymbol conn, Vec base, bool strict = true);

  const ConnectionSymbol& connection() const { return conn_; }
  const Vec& base() const { return base_; }
  const WeilTensor3& gamma_at_base() const { return gamma_; }
  const WeilTensor3& gammabar_at_base() const { return gammabar_; }
  const WeilTensor3& bracket_tensor() const { return bracket_; }
  bool strict() const { return strict_; }

  // The three equivalent multiplication routes.
  Vec mul(const Vec& Q, const Vec& R) const;            // chart formula
  Vec mul_bch(const Vec& Q, const Vec& R) const;        // Q+R+1/2[Q,R] affine
  Vec mul_transport(const Vec& Q, const Vec& R) const;  // exp/log of D2 law

  Vec inv(const Vec& Q) const;
  Vec lie_bracket_points(const Vec& Q, const Vec& R) const;
  Vec commutator(const Vec& Q, const Vec& R) const;  // Q R Q^-1 R^-1

 private:
  void require_pair(const Vec& Q, const Vec& R) const;
  void require_point(const Vec& Q) const;

  ConnectionSymbol conn_;
  ConnectionSymbol sym_family_;
  Vec base_;
  bool strict_;
  WeilTensor3 gamma_, gammabar_, bracket_;
};

// Left-to-right product of the scaled logarithms, pushed back through exp:
//   exp_base( prod_j mu_j log_base(P_j) )
// in the group with multiplication t1 t2 = t1 + t2 + 1/2 [t1, t2]_base.
Vec nonabelian_combination(const ConnectionSymbol& conn, const Vec& base,
                           const std::vector<Rational>& weights,
                           const PointTuple& points, bool strict = true);

// Base-point comparison of the non-abelian combination. The torsion terms
// of the correction are oriented so that lhs == rhs is the exact identity
// derivable from the torsion base-change relation
//   tau_P(R,S) - P = (tau_Q(R,S) - Q) + (tau_Q(P,R) - Q) + (tau_Q(S,P) - Q).
struct BasePointChange {
  Vec lhs;         // combination expanded at P
  Vec at_q;        // combination expanded at Q
  Vec correction;  // 1/2 sum_{k<j} mu_k mu_j [(tau_Q(P_k,P)-Q)+(tau_Q(P,P_j)-Q)]
  Vec rhs;         // at_q + correction
};
BasePointChange base_point_change(const ConnectionSymbol& conn, const Vec& P,
                                  const Vec& Q,
                                  const std::vector<Rational>& weights,
                                  const PointTuple& points, bool strict = true);

// Axiom verification report: associativity, unit, inverses, the three
// neighbourhood axioms and the derived-word neighbourhood property, each on
// freshly sampled admissible tuples. Failures carry a witness rendering.
struct AxiomCheck {
  std::string name;
  bool pass = false;
  std::string witness;
};
struct AxiomReport {
  std::vector<AxiomCheck> entries;
  bool all_pass() const {
    for (const auto& e : entries)
      if (!e.pass) return false;
    return true;
  }
};

AxiomReport verify_igroup_axioms(const IGroupOnD2& g, std::uint64_t seed,
                                 unsigned trials, std::int64_t range);
AxiomReport verify_igroup_axioms(const ConnectionSymbol& conn,
                                 const std::vector<Rational>& base,
                                 std::uint64_t seed, unsigned trials,
                                 std::int64_t range);

}  // namespace sdg

#endif
