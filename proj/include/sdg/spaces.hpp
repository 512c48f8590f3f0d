#ifndef SDG_SPACES_HPP
#define SDG_SPACES_HPP

#include <vector>

#include "sdg/weil.hpp"

namespace sdg {

enum class IStructureKind { NilSquare, FirstOrder, SecondOrder };

// A tuple of chart points of common dimension and signature.
using PointTuple = std::vector<Vec>;

// Membership predicates. All of them decide the universally quantified
// multilinear-form conditions by testing coordinate products, which span
// the multilinear forms on R^n.
bool in_D(const Vec& v);
bool in_D2(const Vec& v);
bool in_Dtilde2(const Vec& v, const Vec& w);
bool in_DN1(const Vec& v1, const Vec& v2);
bool in_DN2(const Vec& v1, const Vec& v2, const Vec& v3);

// Tuple membership for the three i-structures. Conditions over all index
// choices reduce to products of the m-1 differences from the first point;
// the brute-force form over every index choice lives in the test suite as
// the independent oracle.
bool in_istructure(IStructureKind kind, const PointTuple& tuple);

// Convenience: tuple membership in the induced monad structure of `base`,
// i.e. the tuple with `base` prepended.
bool in_monad_structure(IStructureKind kind, const Vec& base,
                        const PointTuple& tuple);

// Hands out fresh generator indices from a signature; throws (naming the
// required count) when the signature is too small.
struct GenCursor {
  SigPtr sig;
  unsigned next = 0;

  unsigned take(unsigned count);
  unsigned remaining() const { return sig->generators() - next; }
};

// Generator demand of sample_generic for a given kind/tuple shape.
unsigned sample_generators_needed(IStructureKind kind, unsigned dim, unsigned m);

// Returns an m-tuple passing in_istructure(kind, .) whose free rational
// coefficients are drawn from [-range, range]. FirstOrder and NilSquare
// samples live on one mutually annihilating generator block; SecondOrder
// samples give every point its own block with full-rank degree-1 parts and
// random degree-2 parts. The constructed tuple is predicate-checked.
PointTuple sample_generic(IStructureKind kind, const Vec& base, unsigned m,
                          GenCursor& gens, Rng& rng, std::int64_t range);

// Signature suitable for sampling monad tuples: per-point blocks, cap 3,
// no relations.
SigPtr sampling_algebra(unsigned dim, unsigned points);

// Signature whose first `count` generators form one mutually annihilating
// block, for nil-square and first-order samples.
SigPtr block_algebra(unsigned count);

// Stored witness data for the strictness of the i-structure containments.
struct StructureWitness {
  SigPtr sig;
  PointTuple tuple;
};

// A triple in the nil-square structure whose pair of base differences has
// alternating but nonzero cross products, so it is not first-order.
// Requires one signed quadratic identification.
StructureWitness witness_nilsquare_not_firstorder();

// A four-point nil-square tuple (a triple in the monad of its first point,
// chart dimension 3, truncation cap 4) with a surviving mixed triple
// product, hence outside the second-order structure. Three points alone
// cannot separate the structures: for any pair of differences u, v with
// u, v, u-v square-zero, every mixed triple factors through a vanishing
// same-vector pair.
StructureWitness witness_nilsquare_not_secondorder();

}  // namespace sdg

#endif
