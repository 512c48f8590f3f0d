#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sdg/igroup.hpp"

using namespace sdg;

namespace {

struct MonadTuple {
  SigPtr sig;
  Vec P;
  PointTuple pts;
};

MonadTuple monad_tuple(unsigned n, unsigned m, Rng& rng, std::int64_t range) {
  auto sig = sampling_algebra(n, m);
  std::vector<Rational> base;
  for (unsigned i = 0; i < n; ++i) base.push_back(rng.rational(range));
  Vec P = Vec::from_rationals(sig, base);
  GenCursor cur{sig, 0};
  auto pts = sample_generic(IStructureKind::SecondOrder, P, m, cur, rng, range);
  return {sig, P, pts};
}

// Matrix-product bilinear tensor on n x n matrices, row-major chart of
// dimension n^2.
RatTensor3 matrix_product_tensor(unsigned n) {
  RatTensor3 B(n * n, n * n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      for (unsigned k = 0; k < n; ++k)
        B.at(i * n + j, i * n + k, k * n + j) = 1;
  return B;
}

RatTensor3 random_tensor(unsigned n, Rng& rng, std::int64_t range) {
  RatTensor3 B(n, n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      for (unsigned k = 0; k < n; ++k) B.at(i, j, k) = rng.rational(range);
  return B;
}

PointTuple d2_points(unsigned n, unsigned m, Rng& rng, std::int64_t range) {
  auto sig = sampling_algebra(n, m);
  Vec zero(sig, n);
  GenCursor cur{sig, 0};
  return sample_generic(IStructureKind::SecondOrder, zero, m, cur, rng, range);
}

}  // namespace

TEST_CASE("d2 group law: addition case and cancellation") {
  Rng rng(50);
  auto g0 = IGroupOnD2::additive(3);
  auto pts = d2_points(3, 2, rng, 40);
  CHECK(g0.mul(pts[0], pts[1]) == pts[0] + pts[1]);
  CHECK(g0.inv(pts[0]) == -pts[0]);

  auto g = IGroupOnD2(3, random_tensor(3, rng, 40));
  Vec zero(pts[0].signature(), 3);
  CHECK(g.mul(pts[0], g.inv(pts[0])) == zero);
  CHECK(g.mul(g.inv(pts[0]), pts[0]) == zero);
}

TEST_CASE("d2 group law with the matrix-product tensor is GL(2) in the chart") {
  Rng rng(51);
  auto B = matrix_product_tensor(2);
  IGroupOnD2 g(4, B);
  auto pts = d2_points(4, 2, rng, 30);
  const Vec &v = pts[0], &w = pts[1];
  auto sig = v.signature();

  // expand (I+v)(I+w) entrywise in the algebra
  auto at = [&](const Vec& x, unsigned i, unsigned j) { return x[i * 2 + j]; };
  Vec prod(sig, 4);
  for (unsigned i = 0; i < 2; ++i)
    for (unsigned j = 0; j < 2; ++j) {
      WeilElement s = at(v, i, j) + at(w, i, j);
      for (unsigned k = 0; k < 2; ++k) s = s + at(v, i, k) * at(w, k, j);
      prod[i * 2 + j] = s;
    }
  CHECK(g.mul(v, w) == prod);

  // inverse matches the truncated Neumann series I - v + v^2 in the chart
  Vec neumann(sig, 4);
  for (unsigned i = 0; i < 2; ++i)
    for (unsigned j = 0; j < 2; ++j) {
      WeilElement s = -at(v, i, j);
      for (unsigned k = 0; k < 2; ++k) s = s + at(v, i, k) * at(v, k, j);
      neumann[i * 2 + j] = s;
    }
  CHECK(g.inv(v) == neumann);
}

TEST_CASE("d2 strict mode rejects inadmissible arguments") {
  auto sig = make_algebra(2, 3);
  IGroupOnD2 g = IGroupOnD2::additive(2);
  Vec bad = Vec::from_rationals(sig, {rat(1), rat(0)});
  Vec ok(sig, 2);
  CHECK_THROWS_AS(g.mul(bad, ok), error);
  CHECK_THROWS_AS(g.inv(bad), error);
}

TEST_CASE("extract_B round trip and corrupted-law diagnostics") {
  Rng rng(52);
  for (int t = 0; t < 4; ++t) {
    auto B = random_tensor(3, rng, 200);
    IGroupOnD2 g(3, B);
    BinaryPolyMap law{3, 3, [g](const Vec& v, const Vec& w) {
                        return g.mul(v, w, false);
                      }};
    CHECK(extract_B(law) == B);
  }

  BinaryPolyMap add{2, 2, [](const Vec& v, const Vec& w) { return v + w; }};
  CHECK(extract_B(add).is_zero());

  BinaryPolyMap with_a0{2, 2, [](const Vec& v, const Vec& w) {
                          Vec out = v + w;
                          out[0] = out[0] + WeilElement::constant(
                                                v.signature(), rat(1, 3));
                          return out;
                        }};
  CHECK_THROWS_WITH_AS(extract_B(with_a0), "not an i-group law: a0 is nonzero",
                       error);

  BinaryPolyMap with_A2{2, 2, [](const Vec& v, const Vec& w) {
                          Vec out = v + w;
                          out[1] = out[1] + v[0] * v[1];
                          return out;
                        }};
  CHECK_THROWS_WITH_AS(extract_B(with_A2), "not an i-group law: A2 is nonzero",
                       error);

  BinaryPolyMap skew{2, 2, [](const Vec& v, const Vec& w) {
                       Vec out = v + w;
                       out[0] = out[0] + w[1] * rat(2);
                       return out;
                     }};
  CHECK_THROWS_WITH_AS(extract_B(skew), "not an i-group law: B1 is not the identity",
                       error);
}

TEST_CASE("monad group: unit laws and the three multiplication routes agree") {
  Rng rng(53);
  for (unsigned n : {2u, 3u}) {
    for (int t = 0; t < 4; ++t) {
      auto conn = ConnectionSymbol::random(n, 2, rng, 12);
      auto mt = monad_tuple(n, 2, rng, 25);
      MonadGroup mg(conn, mt.P);

      CHECK(mg.mul(mt.P, mt.pts[0]) == mt.pts[0]);
      CHECK(mg.mul(mt.pts[0], mt.P) == mt.pts[0]);

      Vec chart = mg.mul(mt.pts[0], mt.pts[1]);
      CHECK(chart == mg.mul_bch(mt.pts[0], mt.pts[1]));
      CHECK(chart == mg.mul_transport(mt.pts[0], mt.pts[1]));
    }
  }
}

TEST_CASE("monad multiplication agrees with lambda on nil-square arguments") {
  Rng rng(64);
  for (int t = 0; t < 4; ++t) {
    auto conn = ConnectionSymbol::random(3, 2, rng, 12);
    // nil-square neighbours of a rational base on two annihilating blocks
    std::set<std::pair<unsigned, unsigned>> forb;
    for (unsigned b = 0; b < 2; ++b)
      for (unsigned i = 0; i < 3; ++i)
        for (unsigned j = i; j < 3; ++j) forb.insert({b * 3 + i, b * 3 + j});
    auto sig = make_algebra(6, 3, forb);
    Vec P = Vec::from_rationals(
        sig, {rng.rational(20), rng.rational(20), rng.rational(20)});
    Vec Q = P, R = P;
    for (unsigned i = 0; i < 3; ++i)
      for (unsigned k = 0; k < 3; ++k) {
        Q[i] = Q[i] + WeilElement::generator(sig, k) * rng.rational(20);
        R[i] = R[i] + WeilElement::generator(sig, 3 + k) * rng.rational(20);
      }
    MonadGroup mg(conn, P);
    CHECK(mg.mul(Q, R) == lambda_apply(conn, P, Q, R));  // strict nil-square
  }
}

TEST_CASE("monad group: commutator equals the bracket of points") {
  Rng rng(54);
  for (int t = 0; t < 5; ++t) {
    auto conn = ConnectionSymbol::random(3, 2, rng, 10);
    auto mt = monad_tuple(3, 2, rng, 20);
    MonadGroup mg(conn, mt.P);
    const Vec &Q = mt.pts[0], &R = mt.pts[1];

    CHECK(mg.commutator(Q, R) == mg.lie_bracket_points(Q, R));
    CHECK(mg.commutator(Q, Q) == mt.P);
    CHECK(mg.lie_bracket_points(Q, Q) == mt.P);

    // bracket is the reflected torsion
    Vec tau = torsion(conn, mt.P, Q, R, TorsionMode::Chart,
                      NeighbourCheck::SecondOrder);
    CHECK(mg.lie_bracket_points(Q, R) - mt.P == -(tau - mt.P));

    // bracket lands in the first-order monad structure
    Vec dev = mg.lie_bracket_points(Q, R) - mt.P;
    CHECK(in_D(dev));
    CHECK(in_DN1(dev, Vec(mt.sig, 3)));

    // third-order brackets vanish
    CHECK(mg.lie_bracket_points(Q, mg.lie_bracket_points(Q, R)) == mt.P);
  }
}

TEST_CASE("bracket is alternating and commutes with i-linear combinations") {
  Rng rng(55);
  auto conn = ConnectionSymbol::random(2, 2, rng, 10);
  for (int t = 0; t < 4; ++t) {
    auto mt = monad_tuple(2, 3, rng, 20);
    MonadGroup mg(conn, mt.P);
    const Vec &Q = mt.pts[0];
    PointTuple rest = {mt.pts[1], mt.pts[2]};

    // alternating: [Q,R] is the point reflection of [R,Q]
    Vec br = mg.lie_bracket_points(Q, mt.pts[1]);
    Vec rb = mg.lie_bracket_points(mt.pts[1], Q);
    CHECK(br - mt.P == -(rb - mt.P));

    // linear in the second slot against i-linear combinations
    std::vector<Rational> lam = {rat(5, 2), rat(-2)};
    Vec comb = ilinear_combination(mg.connection().symmetrized(), mt.P, lam, rest);
    Vec lhs = mg.lie_bracket_points(Q, comb);
    Vec rhs = mt.P + (mg.lie_bracket_points(Q, rest[0]) - mt.P) * lam[0] +
              (mg.lie_bracket_points(Q, rest[1]) - mt.P) * lam[1];
    CHECK(lhs == rhs);
  }
}

TEST_CASE("inverse is the i-linear point reflection") {
  Rng rng(56);
  for (int t = 0; t < 4; ++t) {
    auto conn = ConnectionSymbol::random(3, 2, rng, 10);
    auto mt = monad_tuple(3, 1, rng, 20);
    MonadGroup mg(conn, mt.P);
    Vec reflected = ilinear_combination(conn.symmetrized(), mt.P, {rat(-1)},
                                        {mt.pts[0]});
    CHECK(mg.inv(mt.pts[0]) == reflected);
    CHECK(mg.mul(mt.pts[0], mg.inv(mt.pts[0])) == mt.P);
  }
}

TEST_CASE("abelian exactly when the symbol is symmetric at the base") {
  Rng rng(57);
  unsigned abelian_seen = 0, nonabelian_seen = 0;
  for (int t = 0; t < 8; ++t) {
    auto conn = ConnectionSymbol::random(2, 2, rng, 10);
    if (t % 2) conn = conn.symmetrized();
    auto mt = monad_tuple(2, 2, rng, 20);
    MonadGroup mg(conn, mt.P);

    bool commutes = mg.mul(mt.pts[0], mt.pts[1]) == mg.mul(mt.pts[1], mt.pts[0]);
    bool symmetric_at_base = mg.bracket_tensor().is_zero();
    CHECK(commutes == symmetric_at_base);
    (symmetric_at_base ? abelian_seen : nonabelian_seen)++;
  }
  CHECK(abelian_seen > 0);
  CHECK(nonabelian_seen > 0);

  // same statement for D2 laws: abelian iff B symmetric
  auto B = random_tensor(2, rng, 15);
  IGroupOnD2 g(2, B);
  auto pts = d2_points(2, 2, rng, 15);
  bool commutes = g.mul(pts[0], pts[1]) == g.mul(pts[1], pts[0]);
  CHECK(commutes == B.is_symmetric());
  IGroupOnD2 gs(2, symmetrized(B));
  CHECK(gs.mul(pts[0], pts[1]) == gs.mul(pts[1], pts[0]));
}

TEST_CASE("base point change: symmetric symbols are base-point independent") {
  Rng rng(58);
  auto conn = ConnectionSymbol::random(3, 2, rng, 8).symmetrized();
  auto mt = monad_tuple(3, 4, rng, 15);
  Vec P = mt.pts[0], Q = mt.pts[1];
  PointTuple points = {mt.pts[2], mt.pts[3]};
  std::vector<Rational> mu = {rat(3, 4), rat(1, 4)};
  auto r = base_point_change(conn, P, Q, mu, points);
  CHECK(r.correction.is_zero());
  CHECK(r.lhs == r.rhs);
  CHECK(r.lhs == r.at_q);
}

TEST_CASE("base point change: exact equality with nonzero torsion correction") {
  Rng rng(59);
  for (unsigned m : {2u, 3u}) {
    for (int t = 0; t < 4; ++t) {
      auto conn = ConnectionSymbol::random(2, 2, rng, 8);
      auto mt = monad_tuple(2, m + 2, rng, 12);
      Vec P = mt.pts[0], Q = mt.pts[1];
      PointTuple points(mt.pts.begin() + 2, mt.pts.end());
      std::vector<Rational> mu;
      Rational s = 0;
      for (unsigned j = 0; j + 1 < m; ++j) {
        mu.push_back(rng.rational(6));
        s += mu.back();
      }
      mu.push_back(1 - s);

      auto r = base_point_change(conn, P, Q, mu, points);
      CHECK(r.lhs == r.rhs);

      // with the correction's torsion arguments transposed the identity
      // breaks whenever the correction is nonzero
      if (!r.correction.is_zero()) CHECK(r.lhs != r.at_q - r.correction);
    }
  }
}

TEST_CASE("base point change: single point reduces to projection") {
  Rng rng(60);
  auto conn = ConnectionSymbol::random(2, 2, rng, 8);
  auto mt = monad_tuple(2, 3, rng, 15);
  auto r = base_point_change(conn, mt.pts[0], mt.pts[1], {rat(1)}, {mt.pts[2]});
  CHECK(r.lhs == mt.pts[2]);
  CHECK(r.rhs == mt.pts[2]);
}

TEST_CASE("axiom verifier passes lawful structures and fails corrupted ones") {
  Rng rng(61);
  CHECK(verify_igroup_axioms(IGroupOnD2::additive(2), 7, 4, 20).all_pass());
  CHECK(verify_igroup_axioms(IGroupOnD2(3, random_tensor(3, rng, 30)), 7, 4, 20)
            .all_pass());

  auto conn = ConnectionSymbol::random(2, 2, rng, 10);
  CHECK(verify_igroup_axioms(conn, {rat(1), rat(-1, 2)}, 7, 4, 20).all_pass());

  // corrupted multiplication with an injected quadratic self-term breaks
  // the unit law (or associativity) with a concrete witness
  Rng rng2(62);
  auto B = random_tensor(2, rng2, 10);
  IGroupOnD2 good(2, B);
  auto corrupted = [&good](const Vec& v, const Vec& w) {
    Vec out = good.mul(v, w, false);
    out[0] = out[0] + v[1] * v[1];
    return out;
  };
  Rng rng3(63);
  auto pts = d2_points(2, 2, rng3, 20);
  Vec zero(pts[0].signature(), 2);
  bool unit_broken = corrupted(pts[0], zero) != pts[0];
  bool assoc_broken = corrupted(corrupted(pts[0], pts[1]), zero) !=
                      corrupted(pts[0], corrupted(pts[1], zero));
  CHECK((unit_broken || assoc_broken));
}
