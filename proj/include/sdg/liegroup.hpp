#ifndef SDG_LIEGROUP_HPP
#define SDG_LIEGROUP_HPP

#include "sdg/connection.hpp"
#include "sdg/igroup.hpp"

namespace sdg {

enum class MatrixGroupKind { GL, Heisenberg };

// Descriptor of a built-in matrix group. GL(n) uses all n^2 entries as
// chart coordinates (the identity sits at vec(I)); the Heisenberg group is
// the 3x3 upper unitriangular group with the three strict upper entries as
// chart coordinates (the identity sits at 0).
struct MatrixGroup {
  MatrixGroupKind kind = MatrixGroupKind::GL;
  unsigned n = 2;  // matrix size

  unsigned chart_dim() const {
    return kind == MatrixGroupKind::GL ? n * n : 3;
  }
  bool operator==(const MatrixGroup& o) const {
    return kind == o.kind && n == o.n;
  }
};

inline MatrixGroup gl(unsigned n) { return {MatrixGroupKind::GL, n}; }
inline MatrixGroup heisenberg() { return {MatrixGroupKind::Heisenberg, 3}; }

// Square matrix with algebra entries, tagged by its group.
class MatrixElement {
 public:
  MatrixElement(MatrixGroup g, SigPtr sig);  // zero matrix
  static MatrixElement identity(MatrixGroup g, const SigPtr& sig);

  const MatrixGroup& group() const { return g_; }
  const SigPtr& signature() const { return sig_; }
  unsigned size() const { return g_.n; }
  WeilElement& at(unsigned i, unsigned j) { return a_.at(i * g_.n + j); }
  const WeilElement& at(unsigned i, unsigned j) const {
    return a_.at(i * g_.n + j);
  }
  bool operator==(const MatrixElement& o) const { return a_ == o.a_; }

  // Group invariants: invertible constant part (GL), unit diagonal and
  // vanishing lower part (Heisenberg).
  void validate() const;

  std::string to_string() const;

 private:
  MatrixGroup g_;
  SigPtr sig_;
  std::vector<WeilElement> a_;
};

MatrixElement mat_mul(const MatrixElement& A, const MatrixElement& B);
// Exact inverse: rational inverse of the constant part composed with the
// truncated Neumann series of the nilpotent remainder.
MatrixElement mat_inv(const MatrixElement& A);

// Chart coordinates of a group element and back.
Vec to_chart(const MatrixElement& A);
MatrixElement from_chart(MatrixGroup g, const Vec& coords);
Vec chart_identity(MatrixGroup g, const SigPtr& sig);

enum class ConnectionSide { Left, Right, Symmetrized };

// The canonical connections by translation: left Q P^-1 R, right R P^-1 Q,
// and their midpoint.
MatrixElement canonical_lambda(ConnectionSide side, const MatrixElement& P,
                               const MatrixElement& Q, const MatrixElement& R,
                               NeighbourCheck check = NeighbourCheck::NilSquare);

// Chart connection symbol of the canonical connection as a polynomial
// family of degree <= 2 around the identity (for GL the inverse is expanded
// to second order, which is exact on the identity's monads; for Heisenberg
// the inverse is itself polynomial, so the family is globally exact).
ConnectionSymbol extract_connection_symbol(MatrixGroup g, ConnectionSide side);

// The symbol at one point, computed through the exact matrix inverse
// instead of the truncated family; valid at any group element.
WeilTensor3 connection_symbol_at(MatrixGroup g, ConnectionSide side,
                                 const MatrixElement& at);

// Bracket on the tangent space at the identity through the left connection
// symbol; for these groups it is the matrix commutator of the principal
// parts (the test oracle).
TangentVector tangent_bracket(MatrixGroup g, const TangentVector& t1,
                              const TangentVector& t2);

// Stored witness: a nil-square triple in the monad of the identity of the
// GL(3) chart whose product leaves the nil-square structure. Needs cap 4
// and the signed-alias algebra; at cap 3 no such tuple exists.
struct GroupFailureWitness {
  SigPtr sig;
  MatrixElement P, Q, R;
};
GroupFailureWitness nilsquare_group_failure_witness();

}  // namespace sdg

#endif
