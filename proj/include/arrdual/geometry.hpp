#pragma once

#include "arrdual/dual_pair.hpp"
#include "arrdual/exact_matrix.hpp"
#include "arrdual/matroid.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace arrdual::geometry {

using dualpair::DualPair;
using dualpair::Side;
using exactla::ExactMatrix;
using exactla::Rational;
using matroid::Mask;

// Degree-one polynomial f(x) = gradient . x + constant.
struct AffineForm {
    std::vector<Rational> gradient;
    Rational constant;
};

Rational evaluate(const AffineForm& f, const std::vector<Rational>& x);

struct AffineArrangement {
    int dim = 0;                    // ambient affine dimension
    std::vector<AffineForm> forms;  // indices 0..N-1
    matroid::Matroid mat;           // matroid on N+1 elements, chart last
    Side side = Side::primal;

    int hyperplanes() const { return static_cast<int>(forms.size()); }
    int chart_index() const { return hyperplanes(); }
    Mask affine_mask() const { return matroid::bit(hyperplanes()) - 1; }
};

// Affine chart of the chosen side: rows of B (or C) are re-based so the chart
// functional becomes the last coordinate, and each column yields one form.
AffineArrangement affine_forms(const DualPair& d, Side s);

// Same chart construction on a raw full-row-rank matrix (no admissibility
// requirements); dim = rows - 1.
AffineArrangement arrangement_from_matrix(const ExactMatrix& m, Side s = Side::primal);

// Exact linear feasibility by Fourier-Motzkin elimination.
struct LinearConstraint {
    std::vector<Rational> coeff;
    Rational constant;
    bool strict = false;  // coeff.x + constant > 0, else >= 0
};

bool fourier_motzkin_feasible(std::vector<LinearConstraint> constraints, int dim,
                              std::vector<Rational>* witness = nullptr);

struct VertexInfo {
    std::vector<Rational> point;
    Mask flat = 0;  // affine hyperplanes through the point (bits 0..N-1)
};

struct Chamber {
    std::uint32_t sign_mask = 0;  // bit j set when f^j < 0 on the chamber
    std::vector<Rational> interior;
    bool bounded = false;
    std::vector<int> vertex_ids;  // vertices of the closure, for bounded chambers

    std::string sign_string(int n) const;
};

struct ChamberComplex {
    std::vector<Chamber> chambers;  // canonical order: lexicographic signs, '+' < '-'
    std::vector<VertexInfo> vertices;
    std::vector<int> bounded_ids;
};

// All chambers by breadth-first wall crossing from a seed sign vector, with
// exact feasibility tests. Requires an essential arrangement of dimension
// at most 3; the bounded count is checked against b^{10} of the matroid.
ChamberComplex chambers(const AffineArrangement& a);

struct EdgeGeom {
    Mask flat = 0;
    std::vector<Rational> point;
    std::vector<std::vector<Rational>> directions;
    int dim = 0;
};

// Affine solution set of { f^j = 0 : j in flat }, or nullopt when empty.
std::optional<EdgeGeom> edge_geometry(const AffineArrangement& a, Mask flat);

struct ExternalSupport {
    std::vector<int> face_vertex_ids;  // maximally remote face of the closure
    int face_dim = 0;
    EdgeGeom edge;  // supporting edge spanned by the face
};

// The face of a bounded chamber farthest from hyperplane j and the edge
// containing it.
ExternalSupport external_support(const AffineArrangement& a, const ChamberComplex& cc,
                                 int chamber_id, int j);

// Number of bounded chambers whose external supporting edge for hyperplane
// p.a is the edge of p.flat; p must be taken against the chart (p.b = N).
long long parallelism_chamber_count(const AffineArrangement& a, const ChamberComplex& cc,
                                    const matroid::ParallelismRecord& p);

}  // namespace arrdual::geometry
