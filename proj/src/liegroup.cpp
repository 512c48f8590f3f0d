#include "sdg/liegroup.hpp"

#include <sstream>

namespace sdg {

MatrixElement::MatrixElement(MatrixGroup g, SigPtr sig)
    : g_(g), sig_(std::move(sig)) {
  a_.assign(std::size_t(g_.n) * g_.n, WeilElement::zero(sig_));
}

MatrixElement MatrixElement::identity(MatrixGroup g, const SigPtr& sig) {
  MatrixElement m(g, sig);
  for (unsigned i = 0; i < g.n; ++i)
    m.at(i, i) = WeilElement::constant(sig, 1);
  return m;
}

void MatrixElement::validate() const {
  if (g_.kind == MatrixGroupKind::Heisenberg) {
    for (unsigned i = 0; i < g_.n; ++i)
      for (unsigned j = 0; j <= i; ++j) {
        const WeilElement& x = at(i, j);
        bool ok = (i == j) ? x == WeilElement::constant(sig_, 1) : x.is_zero();
        if (!ok) throw error("matrix is not upper unitriangular");
      }
    return;
  }
  RatMatrix c(g_.n, g_.n);
  for (unsigned i = 0; i < g_.n; ++i)
    for (unsigned j = 0; j < g_.n; ++j) c.at(i, j) = at(i, j).constant_term();
  c.inverse();  // throws when the constant part is singular
}

std::string MatrixElement::to_string() const {
  std::ostringstream os;
  os << "[";
  for (unsigned i = 0; i < g_.n; ++i) {
    if (i) os << "; ";
    for (unsigned j = 0; j < g_.n; ++j) {
      if (j) os << ", ";
      os << at(i, j).to_string();
    }
  }
  os << "]";
  return os.str();
}

MatrixElement mat_mul(const MatrixElement& A, const MatrixElement& B) {
  if (!(A.group() == B.group()) || A.signature() != B.signature())
    throw error("matrix group or signature mismatch");
  MatrixElement r(A.group(), A.signature());
  const unsigned n = A.size();
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      WeilElement s = WeilElement::zero(A.signature());
      for (unsigned k = 0; k < n; ++k) s = s + A.at(i, k) * B.at(k, j);
      r.at(i, j) = s;
    }
  return r;
}

MatrixElement mat_inv(const MatrixElement& A) {
  const unsigned n = A.size();
  RatMatrix c(n, n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) c.at(i, j) = A.at(i, j).constant_term();
  RatMatrix cinv = c.inverse();

  // A = C (I + N) with N nilpotent: A^-1 = (sum (-N)^k) C^-1.
  MatrixElement N(A.group(), A.signature());
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      WeilElement s = WeilElement::zero(A.signature());
      for (unsigned k = 0; k < n; ++k) s = s + A.at(k, j) * cinv.at(i, k);
      N.at(i, j) = s;
      if (i == j) N.at(i, j) -= WeilElement::constant(A.signature(), 1);
    }

  MatrixElement acc = MatrixElement::identity(A.group(), A.signature());
  MatrixElement pow = acc;
  for (unsigned k = 1; k < A.signature()->cap(); ++k) {
    pow = mat_mul(pow, N);
    bool zero = true;
    for (unsigned i = 0; i < n && zero; ++i)
      for (unsigned j = 0; j < n; ++j)
        if (!pow.at(i, j).is_zero()) {
          zero = false;
          break;
        }
    if (zero) break;
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j)
        acc.at(i, j) = (k % 2) ? acc.at(i, j) - pow.at(i, j)
                               : acc.at(i, j) + pow.at(i, j);
  }

  MatrixElement r(A.group(), A.signature());
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      WeilElement s = WeilElement::zero(A.signature());
      for (unsigned k = 0; k < n; ++k) s = s + acc.at(i, k) * cinv.at(k, j);
      r.at(i, j) = s;
    }
  return r;
}

Vec to_chart(const MatrixElement& A) {
  const unsigned n = A.size();
  if (A.group().kind == MatrixGroupKind::GL) {
    Vec v(A.signature(), n * n);
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) v[i * n + j] = A.at(i, j);
    return v;
  }
  A.validate();
  Vec v(A.signature(), 3);
  v[0] = A.at(0, 1);
  v[1] = A.at(1, 2);
  v[2] = A.at(0, 2);
  return v;
}

MatrixElement from_chart(MatrixGroup g, const Vec& coords) {
  if (coords.dim() != g.chart_dim()) throw error("chart dimension mismatch");
  if (g.kind == MatrixGroupKind::GL) {
    MatrixElement m(g, coords.signature());
    for (unsigned i = 0; i < g.n; ++i)
      for (unsigned j = 0; j < g.n; ++j) m.at(i, j) = coords[i * g.n + j];
    return m;
  }
  MatrixElement m = MatrixElement::identity(g, coords.signature());
  m.at(0, 1) = coords[0];
  m.at(1, 2) = coords[1];
  m.at(0, 2) = coords[2];
  return m;
}

Vec chart_identity(MatrixGroup g, const SigPtr& sig) {
  return to_chart(MatrixElement::identity(g, sig));
}

MatrixElement canonical_lambda(ConnectionSide side, const MatrixElement& P,
                               const MatrixElement& Q, const MatrixElement& R,
                               NeighbourCheck check) {
  if (check != NeighbourCheck::None) {
    Vec p = to_chart(P), q = to_chart(Q), r = to_chart(R);
    bool ok = check == NeighbourCheck::NilSquare
                  ? in_D(q - p) && in_D(r - p)
                  : in_Dtilde2(q - p, r - p);
    if (!ok) throw error("arguments are not admissible neighbours of the base");
  }
  switch (side) {
    case ConnectionSide::Left:
      return mat_mul(mat_mul(Q, mat_inv(P)), R);
    case ConnectionSide::Right:
      return mat_mul(mat_mul(R, mat_inv(P)), Q);
    case ConnectionSide::Symmetrized: {
      MatrixElement l =
          canonical_lambda(ConnectionSide::Left, P, Q, R, NeighbourCheck::None);
      MatrixElement r =
          canonical_lambda(ConnectionSide::Right, P, Q, R, NeighbourCheck::None);
      MatrixElement mid(P.group(), P.signature());
      for (unsigned i = 0; i < P.size(); ++i)
        for (unsigned j = 0; j < P.size(); ++j)
          mid.at(i, j) = (l.at(i, j) + r.at(i, j)) * rat(1, 2);
      return mid;
    }
  }
  throw error("unreachable");
}

namespace {

// n x n matrix with sparse polynomial entries over the chart coordinates.
struct PolyMat {
  unsigned n = 0, nvars = 0;
  std::vector<Poly> a;

  PolyMat(unsigned size, unsigned vars)
      : n(size), nvars(vars), a(std::size_t(size) * size, Poly(vars)) {}
  Poly& at(unsigned i, unsigned j) { return a[i * n + j]; }
  const Poly& at(unsigned i, unsigned j) const { return a[i * n + j]; }

  static PolyMat identity(unsigned size, unsigned vars) {
    PolyMat m(size, vars);
    for (unsigned i = 0; i < size; ++i)
      m.at(i, i) = Poly::constant(vars, 1);
    return m;
  }
  PolyMat operator*(const PolyMat& o) const {
    PolyMat r(n, nvars);
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) {
        Poly s(nvars);
        for (unsigned k = 0; k < n; ++k) s = s + at(i, k) * o.at(k, j);
        r.at(i, j) = s;
      }
    return r;
  }
  PolyMat operator-(const PolyMat& o) const {
    PolyMat r(n, nvars);
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) r.at(i, j) = at(i, j) - o.at(i, j);
    return r;
  }
  PolyMat truncated(unsigned deg) const {
    PolyMat r(n, nvars);
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) r.at(i, j) = at(i, j).truncated(deg);
    return r;
  }
};

// The group element as a polynomial matrix in its own chart coordinates.
PolyMat chart_matrix(MatrixGroup g) {
  const unsigned d = g.chart_dim();
  if (g.kind == MatrixGroupKind::GL) {
    PolyMat m(g.n, d);
    for (unsigned i = 0; i < g.n; ++i)
      for (unsigned j = 0; j < g.n; ++j)
        m.at(i, j) = Poly::var(d, i * g.n + j);
    return m;
  }
  PolyMat m = PolyMat::identity(3, d);
  m.at(0, 1) = Poly::var(d, 0);
  m.at(1, 2) = Poly::var(d, 1);
  m.at(0, 2) = Poly::var(d, 2);
  return m;
}

// Degree-2 inverse of the chart matrix around the identity. Exact for the
// Heisenberg group (the strict upper part cubes to zero); exact on the
// identity's second-order monads for GL.
PolyMat inverse_taylor(MatrixGroup g) {
  const unsigned d = g.chart_dim();
  PolyMat X = chart_matrix(g);
  PolyMat I = PolyMat::identity(g.n, d);
  PolyMat D = X - I;
  PolyMat DD = (D * D).truncated(2);
  PolyMat inv = I - D;
  for (unsigned i = 0; i < g.n; ++i)
    for (unsigned j = 0; j < g.n; ++j)
      inv.at(i, j) = inv.at(i, j) + DD.at(i, j);
  return inv;
}

// Positions of the chart coordinates inside the matrix.
std::vector<std::pair<unsigned, unsigned>> chart_slots(MatrixGroup g) {
  std::vector<std::pair<unsigned, unsigned>> s;
  if (g.kind == MatrixGroupKind::GL) {
    for (unsigned i = 0; i < g.n; ++i)
      for (unsigned j = 0; j < g.n; ++j) s.push_back({i, j});
  } else {
    s = {{0, 1}, {1, 2}, {0, 2}};
  }
  return s;
}

}  // namespace

ConnectionSymbol extract_connection_symbol(MatrixGroup g, ConnectionSide side) {
  if (side == ConnectionSide::Right)
    return extract_connection_symbol(g, ConnectionSide::Left).conjugated();
  if (side == ConnectionSide::Symmetrized)
    return extract_connection_symbol(g, ConnectionSide::Left).symmetrized();

  const unsigned d = g.chart_dim();
  PolyMat inv = inverse_taylor(g);
  auto slots = chart_slots(g);
  ConnectionSymbol gamma = ConnectionSymbol::zero(d, 2);

  // Gamma_X[q, r] = q X^-1 r: feed elementary matrices through both slots.
  for (unsigned cq = 0; cq < d; ++cq) {
    auto [qa, qb] = slots[cq];
    for (unsigned cr = 0; cr < d; ++cr) {
      auto [ra, rb] = slots[cr];
      // (E_{qa qb} * inv * E_{ra rb})_{qa, rb} = inv_{qb, ra}
      const Poly& entry = inv.at(qb, ra);
      if (entry.is_zero()) continue;
      // locate the output chart slot (qa, rb)
      bool placed = false;
      for (unsigned out = 0; out < d; ++out)
        if (slots[out] == std::make_pair(qa, rb)) {
          for (const auto& [mono, c] : entry.terms())
            gamma.add_coeff_term(out, cq, cr, mono, c);
          placed = true;
          break;
        }
      if (!placed)
        throw error("connection symbol leaves the chart coordinates");
    }
  }
  return gamma;
}

WeilTensor3 connection_symbol_at(MatrixGroup g, ConnectionSide side,
                                 const MatrixElement& at) {
  const unsigned d = g.chart_dim();
  if (side == ConnectionSide::Right)
    return connection_symbol_at(g, ConnectionSide::Left, at).transposed();
  if (side == ConnectionSide::Symmetrized)
    return symmetrized(connection_symbol_at(g, ConnectionSide::Left, at));

  MatrixElement inv = mat_inv(at);
  auto slots = chart_slots(g);
  WeilTensor3 t(d, d);
  for (unsigned cq = 0; cq < d; ++cq) {
    auto [qa, qb] = slots[cq];
    for (unsigned cr = 0; cr < d; ++cr) {
      auto [ra, rb] = slots[cr];
      const WeilElement& entry = inv.at(qb, ra);
      if (entry.is_zero()) continue;
      bool placed = false;
      for (unsigned out = 0; out < d; ++out)
        if (slots[out] == std::make_pair(qa, rb)) {
          t.at(out, cq, cr) = entry;
          placed = true;
          break;
        }
      if (!placed)
        throw error("connection symbol leaves the chart coordinates");
    }
  }
  return t;
}

TangentVector tangent_bracket(MatrixGroup g, const TangentVector& t1,
                              const TangentVector& t2) {
  const unsigned d = g.chart_dim();
  if (t1.base.dim() != d || t2.base.dim() != d)
    throw error("tangent base dimension mismatch");
  Vec e = chart_identity(g, t1.base.signature());
  if (t1.base != e || t2.base != e)
    throw error("tangent bracket is taken at the identity");
  ConnectionSymbol gamma = extract_connection_symbol(g, ConnectionSide::Left);
  WeilTensor3 ge = gamma.eval_at(e);
  Vec principal =
      ge.apply(t1.principal, t2.principal) - ge.apply(t2.principal, t1.principal);
  return {e, principal};
}

GroupFailureWitness nilsquare_group_failure_witness() {
  auto data = witness_nilsquare_not_secondorder();
  MatrixGroup g = gl(3);
  // Map the three generator blocks onto E12, E23, E13 shaped directions.
  auto embed = [&](const Vec& coords3) {
    MatrixElement m = MatrixElement::identity(g, data.sig);
    m.at(0, 1) = coords3[0];
    m.at(1, 2) = coords3[1];
    m.at(0, 2) = coords3[2];
    return m;
  };
  Vec d1 = data.tuple[1] - data.tuple[0];
  Vec d2 = data.tuple[2] - data.tuple[0];
  Vec d3 = data.tuple[3] - data.tuple[0];
  return {data.sig, embed(d1), embed(d2), embed(d3)};
}

}  // namespace sdg
