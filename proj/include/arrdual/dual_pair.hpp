#pragma once

#include "arrdual/exact_matrix.hpp"
#include "arrdual/matroid.hpp"

#include <map>
#include <string>
#include <vector>

namespace arrdual::dualpair {

using exactla::ExactMatrix;
using exactla::Rational;

enum class Side { primal, dual };

inline Side other(Side s) { return s == Side::primal ? Side::dual : Side::primal; }
inline const char* side_name(Side s) { return s == Side::primal ? "primal" : "dual"; }

// tau = (X, W) presented by a coordinate matrix B whose rows span W.
// Hyperplane indices are 0-based throughout: the ground set J is
// {0, ..., N}, the affine chart hyperplane is index N.
struct AdmissiblePair {
    int k = 0;
    int n = 0;
    int N = 0;
    ExactMatrix B;           // (k+1) x (N+1), full row rank
    ExactMatrix completion;  // invertible (N+1) x (N+1), first k+1 rows = B
};

struct DualPair {
    AdmissiblePair primal;
    ExactMatrix C;  // (n+1) x (N+1), rows span the annihilator of W
    Rational detB;  // determinant of the completion

    const ExactMatrix& matrix(Side s) const { return s == Side::primal ? primal.B : C; }
    int dim(Side s) const { return s == Side::primal ? primal.k : primal.n; }
    int hyperplanes() const { return primal.N; }
    int chart_index() const { return primal.N; }  // 0-based column of the chart
};

// Completion + annihilator rows for any full-row-rank matrix; this is the
// construction C = last rows of (completion^T)^{-1} and carries no
// admissibility requirements.
struct AnnihilatorParts {
    ExactMatrix completion;
    ExactMatrix C;
    Rational detB;
};
AnnihilatorParts derive_annihilator(const ExactMatrix& b);

// Validates shape, rank and the pairwise non-proportionality of columns on
// both B and the derived C. Throws NotAPairError / InadmissibleError.
AdmissiblePair make_pair(const ExactMatrix& b, int k);

DualPair dualize(const AdmissiblePair& p);

matroid::Matroid side_matroid(const DualPair& d, Side s);

// Value of f^j (resp. f_j) at the vertex cut out by the hyperplanes of
// vertex_flat (strictly increasing indices inside {0..N-1}), computed from
// minors of B (resp. C).
Rational vertex_value(const DualPair& d, Side s, const std::vector<int>& vertex_flat, int j);

struct CheckReport {
    bool pass = true;
    std::string detail;
};

// B[L] = (-1)^sigma det(completion) C[complement of L] for every
// (k+1)-subset L of the columns.
CheckReport check_minor_identity(const DualPair& d);

// For a parallelism (X, j, N) of the primal matroid: picks a vertex on the
// edge of X away from the chart hyperplane and its complementary dual vertex
// and checks f^j(P) * f_j(P-check) = -1 exactly.
CheckReport product_minus_one(const DualPair& d, const matroid::ParallelismRecord& p);

struct PluckerVector {
    Side side = Side::primal;
    int tuple_size = 0;  // k+1 on the primal side, n+1 on the dual side
    int ambient = 0;     // N+1
    std::map<std::vector<int>, Rational> coords;  // 0-based sorted tuples
};

PluckerVector plucker(const DualPair& d, Side s);

// Complementary-index sign map between the two Plucker spaces.
PluckerVector delta(const PluckerVector& v);

bool projectively_equal(const PluckerVector& a, const PluckerVector& b);

// Coordinate realization of a weakly admissible tuple on ground set
// `ground` (original hyperplane labels); rows of coords span the subspace.
struct WeakPair {
    std::vector<int> ground;
    ExactMatrix coords;
};

struct WeakLocalization {
    WeakPair sigma;       // induced arrangement on the edge of the flat
    WeakPair sigma_dual;  // projective localization image on the dual side
    std::vector<matroid::DualityCheck> checks;
    bool all_pass() const;
};

// Appendix-A construction: restriction to the edge of a flat X of the primal
// matroid and the quotient image on the dual side, with weak-admissibility,
// annihilator and matroid identifications verified.
WeakLocalization weak_localize(const DualPair& d, matroid::Mask flat);

}  // namespace arrdual::dualpair
