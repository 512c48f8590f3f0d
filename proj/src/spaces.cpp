#include "sdg/spaces.hpp"

#include <sstream>

namespace sdg {

namespace {

bool all_pair_products_vanish(const Vec& a, const Vec& b) {
  for (unsigned i = 0; i < a.dim(); ++i) {
    if (a[i].is_zero()) continue;
    for (unsigned j = 0; j < b.dim(); ++j)
      if (!(a[i] * b[j]).is_zero()) return false;
  }
  return true;
}

bool all_triple_products_vanish(const Vec& a, const Vec& b, const Vec& c) {
  for (unsigned i = 0; i < a.dim(); ++i) {
    if (a[i].is_zero()) continue;
    for (unsigned j = 0; j < b.dim(); ++j) {
      WeilElement ab = a[i] * b[j];
      if (ab.is_zero()) continue;
      for (unsigned k = 0; k < c.dim(); ++k)
        if (!(ab * c[k]).is_zero()) return false;
    }
  }
  return true;
}

void check_common_shape(const PointTuple& tuple) {
  for (std::size_t i = 1; i < tuple.size(); ++i) {
    if (tuple[i].dim() != tuple[0].dim()) throw error("tuple dimension mismatch");
    if (tuple[i].signature() != tuple[0].signature())
      throw error("tuple signature mismatch");
  }
}

bool zero_constant_terms(const Vec& v) {
  for (unsigned i = 0; i < v.dim(); ++i)
    if (v[i].constant_term() != 0) return false;
  return true;
}

}  // namespace

bool in_D(const Vec& v) { return all_pair_products_vanish(v, v); }

bool in_D2(const Vec& v) {
  // At cap <= 3 vanishing of all triple products is equivalent to all
  // coordinates lying in the augmentation ideal.
  if (v.signature() && v.signature()->cap() <= 3) return zero_constant_terms(v);
  return all_triple_products_vanish(v, v, v);
}

bool in_Dtilde2(const Vec& v, const Vec& w) {
  if (v.dim() != w.dim()) throw error("dimension mismatch");
  // Every listed triple condition has at least two factors from one of the
  // two vectors, and conversely; the pair is admissible exactly when the
  // concatenated vector has vanishing triples.
  return in_D2(Vec::concat(v, w));
}

bool in_DN1(const Vec& v1, const Vec& v2) {
  if (v1.dim() != v2.dim()) throw error("dimension mismatch");
  return in_D(v1) && in_D(v2) && all_pair_products_vanish(v1, v2);
}

bool in_DN2(const Vec& v1, const Vec& v2, const Vec& v3) {
  if (v1.dim() != v2.dim() || v1.dim() != v3.dim())
    throw error("dimension mismatch");
  // At cap <= 3 mixed triples of augmentation elements vanish outright.
  if (v1.signature() && v1.signature()->cap() <= 3)
    return zero_constant_terms(v1) && zero_constant_terms(v2) &&
           zero_constant_terms(v3);
  return in_D2(v1) && in_D2(v2) && in_D2(v3) &&
         all_triple_products_vanish(v1, v2, v3);
}

bool in_istructure(IStructureKind kind, const PointTuple& tuple) {
  if (tuple.size() <= 1) return true;
  check_common_shape(tuple);
  const std::size_t m = tuple.size();

  if (kind == IStructureKind::NilSquare) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        if (!in_D(tuple[i] - tuple[j])) return false;
    return true;
  }

  std::vector<Vec> diffs;  // differences from the first point
  diffs.reserve(m - 1);
  for (std::size_t i = 1; i < m; ++i) diffs.push_back(tuple[i] - tuple[0]);

  if (kind == IStructureKind::SecondOrder && tuple[0].signature() &&
      tuple[0].signature()->cap() <= 3) {
    for (const auto& d : diffs)
      if (!zero_constant_terms(d)) return false;
    return true;
  }

  if (kind == IStructureKind::FirstOrder) {
    for (std::size_t x = 0; x < diffs.size(); ++x)
      for (std::size_t y = x; y < diffs.size(); ++y)
        if (!all_pair_products_vanish(diffs[x], diffs[y])) return false;
    return true;
  }

  for (std::size_t x = 0; x < diffs.size(); ++x)
    for (std::size_t y = x; y < diffs.size(); ++y)
      for (std::size_t z = y; z < diffs.size(); ++z)
        if (!all_triple_products_vanish(diffs[x], diffs[y], diffs[z]))
          return false;
  return true;
}

bool in_monad_structure(IStructureKind kind, const Vec& base,
                        const PointTuple& tuple) {
  PointTuple with_base;
  with_base.reserve(tuple.size() + 1);
  with_base.push_back(base);
  for (const auto& p : tuple) with_base.push_back(p);
  return in_istructure(kind, with_base);
}

unsigned GenCursor::take(unsigned count) {
  if (next + count > sig->generators()) {
    std::ostringstream os;
    os << "signature too small: need " << (next + count)
       << " generators, have " << sig->generators();
    throw error(os.str());
  }
  unsigned first = next;
  next += count;
  return first;
}

unsigned sample_generators_needed(IStructureKind kind, unsigned dim,
                                  unsigned m) {
  switch (kind) {
    case IStructureKind::NilSquare:
    case IStructureKind::FirstOrder:
      return m;
    case IStructureKind::SecondOrder:
      return m * dim;
  }
  return 0;
}

SigPtr sampling_algebra(unsigned dim, unsigned points) {
  return make_algebra(std::max(1u, dim * points), 3);
}

SigPtr block_algebra(unsigned count) {
  std::set<std::pair<unsigned, unsigned>> forb;
  for (unsigned i = 0; i < count; ++i)
    for (unsigned j = i; j < count; ++j) forb.insert({i, j});
  return make_algebra(std::max(1u, count), 3, forb);
}

PointTuple sample_generic(IStructureKind kind, const Vec& base, unsigned m,
                          GenCursor& gens, Rng& rng, std::int64_t range) {
  if (base.signature() != gens.sig) throw error("cursor signature mismatch");
  const unsigned n = base.dim();
  PointTuple tuple;
  tuple.reserve(m);

  if (kind == IStructureKind::SecondOrder) {
    // One block of n generators per point; full-rank random degree-1 parts
    // plus a random degree-2 term per coordinate.
    unsigned first = gens.take(m * n);
    for (unsigned p = 0; p < m; ++p) {
      Vec q = base;
      for (unsigned a = 0; a < n; ++a) {
        WeilElement coord = WeilElement::zero(gens.sig);
        for (unsigned k = 0; k < n; ++k)
          coord = coord + WeilElement::generator(gens.sig, first + p * n + k) *
                              rng.rational(range);
        if (n >= 2) {
          WeilElement g0 = WeilElement::generator(gens.sig, first + p * n);
          WeilElement g1 = WeilElement::generator(gens.sig, first + p * n + 1);
          coord = coord + g0 * g1 * rng.rational(range);
        }
        q[a] = q[a] + coord;
      }
      tuple.push_back(q);
    }
  } else {
    // One generator per point, all drawn from a mutually annihilating
    // block: the caller's signature must forbid their pairwise products
    // (see block_algebra).
    unsigned first = gens.take(m);
    for (unsigned p = first; p < first + m; ++p)
      for (unsigned q = p; q < first + m; ++q)
        if (!(WeilElement::generator(gens.sig, p) *
              WeilElement::generator(gens.sig, q))
                 .is_zero())
          throw error(
              "sampler needs a mutually annihilating generator block for "
              "this kind");
    for (unsigned p = 0; p < m; ++p) {
      Vec q = base;
      WeilElement g = WeilElement::generator(gens.sig, first + p);
      for (unsigned a = 0; a < n; ++a)
        q[a] = q[a] + g * rng.rational(range);
      tuple.push_back(q);
    }
  }

  if (!in_istructure(kind, tuple))
    throw error("sampler produced a tuple outside the requested structure");
  return tuple;
}

StructureWitness witness_nilsquare_not_firstorder() {
  // Generators a,b,c,d; squares and the pairs ab, cd, ac, bd vanish and
  // a*d = -b*c. The triple (0, (a,b), (c,d)) then has all three pairwise
  // differences square-zero while the cross product matrix [u_i v_j] is
  // alternating and nonzero.
  std::set<std::pair<unsigned, unsigned>> forb = {
      {0, 0}, {1, 1}, {2, 2}, {3, 3}, {0, 1}, {2, 3}, {0, 2}, {1, 3}};
  auto sig = make_algebra(4, 3, forb, {QuadraticAlias{0, 3, 1, 2, -1}});
  Vec p0(sig, 2);
  Vec p1(sig, 2), p2(sig, 2);
  p1[0] = WeilElement::generator(sig, 0);
  p1[1] = WeilElement::generator(sig, 1);
  p2[0] = WeilElement::generator(sig, 2);
  p2[1] = WeilElement::generator(sig, 3);
  return {sig, {p0, p1, p2}};
}

StructureWitness witness_nilsquare_not_secondorder() {
  // Three blocks of three generators at cap 4. Within-block pairs and
  // same-index cross pairs vanish; distinct-index cross pairs are glued
  // antisymmetrically, so every pairwise difference of the four points is
  // square-zero while the fully mixed triple a1*b2*c3 survives.
  const unsigned A = 0, B = 3, C = 6;
  std::set<std::pair<unsigned, unsigned>> forb;
  for (unsigned blk : {A, B, C})
    for (unsigned i = 0; i < 3; ++i)
      for (unsigned j = i; j < 3; ++j) forb.insert({blk + i, blk + j});
  for (unsigned i = 0; i < 3; ++i) {
    forb.insert({A + i, B + i});
    forb.insert({A + i, C + i});
    forb.insert({B + i, C + i});
  }
  std::vector<QuadraticAlias> aliases;
  for (unsigned i = 0; i < 3; ++i)
    for (unsigned j = 0; j < 3; ++j) {
      if (i == j) continue;
      aliases.push_back({A + i, B + j, A + j, B + i, -1});
      aliases.push_back({A + i, C + j, A + j, C + i, -1});
      aliases.push_back({B + i, C + j, B + j, C + i, -1});
    }
  auto sig = make_algebra(9, 4, forb, aliases);

  Vec base(sig, 3);
  PointTuple tuple = {base, base, base, base};
  for (unsigned i = 0; i < 3; ++i) {
    tuple[1][i] = WeilElement::generator(sig, A + i);
    tuple[2][i] = WeilElement::generator(sig, B + i);
    tuple[3][i] = WeilElement::generator(sig, C + i);
  }
  return {sig, tuple};
}

}  // namespace sdg
