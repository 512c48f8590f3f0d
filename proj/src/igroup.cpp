#include "sdg/igroup.hpp"

#include <functional>
#include <sstream>

namespace sdg {

namespace {

void require_d2_pair(const Vec& v, const Vec& w) {
  if (!in_D2(v) || !in_D2(w) || !in_Dtilde2(v, w))
    throw error("arguments are not an admissible second-order pair");
}

}  // namespace

Vec IGroupOnD2::mul(const Vec& v, const Vec& w, bool strict) const {
  if (v.dim() != n || w.dim() != n) throw error("dimension mismatch");
  if (strict) require_d2_pair(v, w);
  return v + w + B.apply(v, w);
}

Vec IGroupOnD2::inv(const Vec& v, bool strict) const {
  if (v.dim() != n) throw error("dimension mismatch");
  if (strict && !in_D2(v)) throw error("argument outside the second-order disc");
  return -v + B.apply(v, v);
}

RatTensor3 extract_B(const BinaryPolyMap& mul) {
  QuadraticMapRep rep = extract_binary_quadratic(mul);
  auto reject = [](const char* component) {
    throw error(std::string("not an i-group law: ") + component);
  };
  for (const auto& c : rep.a0)
    if (c != 0) reject("a0 is nonzero");
  if (!rep.A1.is_identity()) reject("A1 is not the identity");
  if (!rep.B1.is_identity()) reject("B1 is not the identity");
  if (!rep.A2.is_zero()) reject("A2 is nonzero");
  if (!rep.B2.is_zero()) reject("B2 is nonzero");
  return rep.C2;
}

MonadGroup::MonadGroup(ConnectionSymbol conn, Vec base, bool strict)
    : conn_(std::move(conn)),
      sym_family_(conn_.symmetrized()),
      base_(std::move(base)),
      strict_(strict) {
  if (base_.dim() != conn_.dim()) throw error("base dimension mismatch");
  gamma_ = conn_.eval_at(base_);
  gammabar_ = symmetrized(gamma_);
  bracket_ = antisymmetric_part_times_two(gamma_);
}

void MonadGroup::require_point(const Vec& Q) const {
  if (Q.dim() != base_.dim()) throw error("dimension mismatch");
  if (strict_ && !in_D2(Q - base_))
    throw error("point outside the second-order monad of the base");
}

void MonadGroup::require_pair(const Vec& Q, const Vec& R) const {
  if (Q.dim() != base_.dim() || R.dim() != base_.dim())
    throw error("dimension mismatch");
  if (strict_ && !in_Dtilde2(Q - base_, R - base_))
    throw error("pair outside the second-order monad structure of the base");
}

Vec MonadGroup::mul(const Vec& Q, const Vec& R) const {
  require_pair(Q, R);
  return Q + R - base_ + gamma_.apply(Q - base_, R - base_);
}

Vec MonadGroup::mul_bch(const Vec& Q, const Vec& R) const {
  require_pair(Q, R);
  Vec k = lie_bracket_points(Q, R);
  PointTuple pts = {Q, R, k, base_};
  std::vector<Rational> mu = {rat(1), rat(1), rat(1, 2), rat(-3, 2)};
  return iaffine_combination(sym_family_, base_, mu, pts, strict_);
}

Vec MonadGroup::mul_transport(const Vec& Q, const Vec& R) const {
  require_pair(Q, R);
  Vec v = log_point(gammabar_, base_, Q, strict_);
  Vec w = log_point(gammabar_, base_, R, strict_);
  Vec u = v + w + bracket_.apply(v, w) * rat(1, 2);
  return exp_point(gammabar_, base_, u, strict_);
}

Vec MonadGroup::inv(const Vec& Q) const {
  require_point(Q);
  Vec v = log_point(gammabar_, base_, Q, strict_);
  return exp_point(gammabar_, base_, -v, strict_);
}

Vec MonadGroup::lie_bracket_points(const Vec& Q, const Vec& R) const {
  require_pair(Q, R);
  return base_ + bracket_.apply(Q - base_, R - base_);
}

Vec MonadGroup::commutator(const Vec& Q, const Vec& R) const {
  return mul(mul(mul(Q, R), inv(Q)), inv(R));
}

Vec nonabelian_combination(const ConnectionSymbol& conn, const Vec& base,
                           const std::vector<Rational>& weights,
                           const PointTuple& points, bool strict) {
  if (weights.size() != points.size())
    throw error("weight/point count mismatch");
  if (points.empty()) throw error("combination of an empty tuple");
  Rational total = 0;
  for (const auto& w : weights) total += w;
  if (total != 1) throw error("affine weights must sum to 1");
  if (strict && !in_monad_structure(IStructureKind::SecondOrder, base, points))
    throw error("tuple is not second-order infinitesimally close to the base");

  WeilTensor3 g = conn.eval_at(base);
  WeilTensor3 gbar = symmetrized(g);
  WeilTensor3 bracket = antisymmetric_part_times_two(g);

  Vec acc = log_point(gbar, base, points[0], strict) * weights[0];
  for (std::size_t j = 1; j < points.size(); ++j) {
    Vec w = log_point(gbar, base, points[j], strict) * weights[j];
    acc = acc + w + bracket.apply(acc, w) * rat(1, 2);
  }
  return exp_point(gbar, base, acc, strict);
}

BasePointChange base_point_change(const ConnectionSymbol& conn, const Vec& P,
                                  const Vec& Q,
                                  const std::vector<Rational>& weights,
                                  const PointTuple& points, bool strict) {
  if (strict) {
    PointTuple full = {P, Q};
    for (const auto& p : points) full.push_back(p);
    if (!in_istructure(IStructureKind::SecondOrder, full))
      throw error("bases and tuple are not second-order neighbours");
  }

  BasePointChange out;
  out.lhs = nonabelian_combination(conn, P, weights, points, strict);
  out.at_q = nonabelian_combination(conn, Q, weights, points, strict);

  // The admissibility of every torsion argument pair is part of the tuple
  // membership established above; the symbol at Q is shared across terms.
  WeilTensor3 gq = conn.eval_at(Q);
  Vec p = P - Q;
  auto tau_dev = [&](const Vec& a, const Vec& b) {
    return gq.apply(b, a) - gq.apply(a, b);  // tau_Q deviation from Q
  };
  Vec corr(Q.signature(), Q.dim());
  for (std::size_t j = 0; j < points.size(); ++j)
    for (std::size_t k = 0; k < j; ++k)
      corr = corr + (tau_dev(points[k] - Q, p) + tau_dev(p, points[j] - Q)) *
                        (weights[k] * weights[j]);
  out.correction = corr * rat(1, 2);
  out.rhs = out.at_q + out.correction;
  return out;
}

namespace {

// Shared machinery for the axiom verifier; `unit` acts as the group's
// neutral element and membership is monad membership at the unit.
struct GroupOps {
  Vec unit;
  std::function<Vec(const Vec&, const Vec&)> mul;
  std::function<Vec(const Vec&)> inv;
  std::function<PointTuple(unsigned, Rng&)> sample;
  std::function<bool(const PointTuple&)> member;
};

Vec word_power(const GroupOps& ops, const Vec& p, int e) {
  if (e == 0) return ops.unit;
  Vec b = e > 0 ? p : ops.inv(p);
  Vec acc = b;
  for (int i = 1; i < std::abs(e); ++i) acc = ops.mul(acc, b);
  return acc;
}

Vec word_value(const GroupOps& ops, const PointTuple& pts,
               const std::vector<int>& alpha) {
  Vec acc = ops.unit;
  for (std::size_t j = 0; j < pts.size(); ++j)
    acc = ops.mul(acc, word_power(ops, pts[j], alpha[j]));
  return acc;
}

std::string tuple_witness(const PointTuple& pts) {
  std::ostringstream os;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) os << "; ";
    os << pts[i].to_string();
  }
  return os.str();
}

AxiomReport verify_ops(const GroupOps& ops, std::uint64_t seed,
                       unsigned trials, std::int64_t range) {
  Rng rng(seed);
  (void)range;
  AxiomReport report;
  auto record = [&](const std::string& name, bool pass,
                    const PointTuple& pts) {
    report.entries.push_back({name, pass, pass ? "" : tuple_witness(pts)});
  };

  bool assoc = true, unit_law = true, inverse_law = true;
  bool nb1 = true, nb2 = true, nb3 = true, words = true;
  PointTuple assoc_w, unit_w, inv_w, nb1_w, nb2_w, nb3_w, words_w;

  for (unsigned t = 0; t < trials; ++t) {
    PointTuple s = ops.sample(3, rng);
    const Vec &P = s[0], &Q = s[1], &R = s[2];

    if (ops.mul(ops.mul(P, Q), R) != ops.mul(P, ops.mul(Q, R)) && assoc) {
      assoc = false;
      assoc_w = s;
    }
    if ((ops.mul(P, ops.unit) != P || ops.mul(ops.unit, P) != P) && unit_law) {
      unit_law = false;
      unit_w = {P};
    }
    if ((ops.mul(P, ops.inv(P)) != ops.unit ||
         ops.mul(ops.inv(P), P) != ops.unit) &&
        inverse_law) {
      inverse_law = false;
      inv_w = {P};
    }

    // Neighbourhood axioms: products, inverses and the unit extend tuples.
    PointTuple ext1 = {ops.mul(P, Q), R};
    if (!ops.member(ext1) && nb1) {
      nb1 = false;
      nb1_w = s;
    }
    PointTuple ext2 = {ops.inv(P), Q, R};
    if (!ops.member(ext2) && nb2) {
      nb2 = false;
      nb2_w = s;
    }
    PointTuple ext3 = {ops.unit, P, Q, R};
    if (!ops.member(ext3) && nb3) {
      nb3 = false;
      nb3_w = s;
    }

    // Derived words of total length <= 4 over the sampled tuple.
    std::vector<std::vector<int>> alphas;
    for (int w = 0; w < 2; ++w) {
      std::vector<int> alpha(3, 0);
      int budget = 4;
      for (std::size_t j = 0; j < alpha.size() && budget > 0; ++j) {
        int e = static_cast<int>(rng.uniform(-2, 2));
        e = std::max(-budget, std::min(budget, e));
        alpha[j] = e;
        budget -= std::abs(e);
      }
      alphas.push_back(alpha);
    }
    PointTuple values;
    for (const auto& alpha : alphas)
      values.push_back(word_value(ops, s, alpha));
    for (const auto& p : s) values.push_back(p);
    if (!ops.member(values) && words) {
      words = false;
      words_w = values;
    }
  }

  record("associativity", assoc, assoc_w);
  record("unit", unit_law, unit_w);
  record("inverses", inverse_law, inv_w);
  record("neighbourhood_product", nb1, nb1_w);
  record("neighbourhood_inverse", nb2, nb2_w);
  record("neighbourhood_unit", nb3, nb3_w);
  record("derived_word_neighbourhood", words, words_w);
  return report;
}

}  // namespace

AxiomReport verify_igroup_axioms(const IGroupOnD2& g, std::uint64_t seed,
                                 unsigned trials, std::int64_t range) {
  AxiomReport total;
  Rng rng(seed);
  for (unsigned t = 0; t < trials; ++t) {
    // Points of D2(V) sampled as second-order monad perturbations of 0.
    auto sig = sampling_algebra(g.n, 3);
    Vec zero(sig, g.n);
    GenCursor cur{sig, 0};
    auto pts =
        sample_generic(IStructureKind::SecondOrder, zero, 3, cur, rng, range);

    GroupOps per;
    per.unit = zero;
    per.mul = [&g](const Vec& v, const Vec& w) { return g.mul(v, w); };
    per.inv = [&g](const Vec& v) { return g.inv(v); };
    per.sample = [pts](unsigned, Rng&) { return pts; };
    per.member = [zero](const PointTuple& t2) {
      return in_monad_structure(IStructureKind::SecondOrder, zero, t2);
    };
    AxiomReport r = verify_ops(per, seed + t, 1, range);
    if (t == 0)
      total = r;
    else
      for (std::size_t i = 0; i < r.entries.size(); ++i)
        if (!r.entries[i].pass) total.entries[i] = r.entries[i];
  }
  return total;
}

AxiomReport verify_igroup_axioms(const ConnectionSymbol& conn,
                                 const std::vector<Rational>& base,
                                 std::uint64_t seed, unsigned trials,
                                 std::int64_t range) {
  AxiomReport total;
  Rng rng(seed);
  for (unsigned t = 0; t < trials; ++t) {
    auto sig = sampling_algebra(conn.dim(), 3);
    Vec b = Vec::from_rationals(sig, base);
    GenCursor cur{sig, 0};
    auto pts =
        sample_generic(IStructureKind::SecondOrder, b, 3, cur, rng, range);
    MonadGroup mg(conn, b);

    GroupOps per;
    per.unit = b;
    per.mul = [&mg](const Vec& q, const Vec& r) { return mg.mul(q, r); };
    per.inv = [&mg](const Vec& q) { return mg.inv(q); };
    per.sample = [pts](unsigned, Rng&) { return pts; };
    per.member = [&b](const PointTuple& t2) {
      return in_monad_structure(IStructureKind::SecondOrder, b, t2);
    };
    AxiomReport r = verify_ops(per, seed + t, 1, range);
    if (t == 0)
      total = r;
    else
      for (std::size_t i = 0; i < r.entries.size(); ++i)
        if (!r.entries[i].pass) total.entries[i] = r.entries[i];
  }
  return total;
}

}  // namespace sdg
