#pragma once

#include "arrdual/geometry.hpp"

#include <random>
#include <vector>

namespace arrdual::betakbc {

using exactla::Rational;
using geometry::AffineArrangement;
using geometry::ChamberComplex;
using matroid::Mask;

// Ordered tuple of hyperplanes (strictly increasing indices) whose
// intersection is an affine vertex.
struct OrderedBasis {
    std::vector<int> hyperplanes;
    Mask vertex_flat = 0;  // all hyperplanes through the vertex
    int vertex_id = -1;

    bool operator<(const OrderedBasis& o) const { return hyperplanes < o.hyperplanes; }
    bool operator==(const OrderedBasis& o) const { return hyperplanes == o.hyperplanes; }
};

// Flag of edges L^0 < L^1 < ... < L^{k-1} (< the whole space), where L^i is
// cut out by the tail of the basis tuple. Each entry is the full incidence
// flat of the edge.
struct Flag {
    std::vector<Mask> edge_flats;
};

struct LogForm {
    OrderedBasis basis;
    std::vector<Mask> factor_flats;  // incidence flats of L^0 .. L^{k-1}
};

// The ordered collection of basis tuples in bijection with bounded chambers.
// Candidate tuples are the vertex frames; the collection is the subset whose
// logarithmic forms span the largest volume in the quotient of 2-forms by
// the pointwise pencil/parallel relations and the Stokes relations. That
// maximum is exactly the collection the determinant identities require; on
// arrangements in general position every no-broken-circuit style choice
// attains it, and ties are broken toward the lexicographically greatest
// collection admitting a flag-adjacent matching. Sorted lexicographically;
// the count is checked against the number of bounded chambers.
std::vector<OrderedBasis> betakbc_bases(const AffineArrangement& a, const ChamberComplex& cc,
                                        const std::vector<Rational>& weights);

Flag flag_of(const AffineArrangement& a, const OrderedBasis& b);

std::vector<LogForm> log_forms(const AffineArrangement& a, const std::vector<OrderedBasis>& bases);

// dim(L^i intersected with the chamber closure) = i for every flag level.
bool flag_adjacent(const AffineArrangement& a, const ChamberComplex& cc, const OrderedBasis& b,
                   int chamber_id);

// Maps each basis (in collection order) to an adjacent bounded chamber;
// among adjacency-respecting perfect matchings picks the lexicographically
// least. Returns chamber ids aligned with `bases`.
std::vector<int> chamber_bijection(const AffineArrangement& a, const ChamberComplex& cc,
                                   const std::vector<OrderedBasis>& bases);

// A uniformly seeded admissible perfect matching (for robustness checks).
std::vector<int> random_chamber_matching(const AffineArrangement& a, const ChamberComplex& cc,
                                         const std::vector<OrderedBasis>& bases,
                                         std::mt19937_64& rng);

// Sign of the intrinsic frame of the flag against the chart orientation.
int orientation(const AffineArrangement& a, const ChamberComplex& cc, int chamber_id,
                const OrderedBasis& b);

// Coefficient g with phi = g dx_1 ^ ... ^ dx_k at a point off all
// hyperplanes, as the k x k determinant of weighted logarithmic gradients.
Rational form_value(const AffineArrangement& a, const LogForm& phi,
                    const std::vector<Rational>& weights, const std::vector<Rational>& x);

}  // namespace arrdual::betakbc
