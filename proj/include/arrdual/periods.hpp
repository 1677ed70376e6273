#pragma once

#include "arrdual/betakbc.hpp"
#include "arrdual/dual_pair.hpp"
#include "arrdual/geometry.hpp"

#include <complex>
#include <map>
#include <vector>

namespace arrdual::periods {

using dualpair::DualPair;
using dualpair::Side;
using exactla::Rational;
using matroid::Mask;

struct WeightSystem {
    std::vector<Rational> alphas;  // one positive weight per affine hyperplane
    Rational alpha_infinity;       // minus their sum (chart hyperplane weight)

    Rational weight(int j) const {
        return j == static_cast<int>(alphas.size()) ? alpha_infinity : alphas.at(j);
    }
};

WeightSystem make_weights(std::vector<Rational> alphas);

struct QuadSpec {
    int degree = 32;
    int max_subdiv = 6;
    double target_rel = 1e-10;
};

// Argument of f^j (in multiples of pi, 0 or 1) on the group of bounded
// chambers sharing the supporting edge keyed by its flat.
struct BranchAssignment {
    std::map<std::pair<int, Mask>, int> theta_pi;

    int theta(int j, Mask flat) const;
    bool has(int j, Mask flat) const { return theta_pi.count({j, flat}) > 0; }
};

// Everything the canonical period matrix of one side needs: chart forms,
// chambers, basis tuples, forms, the basis-chamber bijection, orientations
// and per-chamber external supports.
struct SideData {
    Side side = Side::primal;
    geometry::AffineArrangement arr;
    geometry::ChamberComplex cc;
    std::vector<betakbc::OrderedBasis> bases;
    std::vector<betakbc::LogForm> forms;
    std::vector<int> chamber_of_basis;  // chamber id for row s
    std::vector<int> orientations;      // +-1 per row s
    std::map<std::pair<int, int>, Mask> support;  // (chamber id, j) -> edge flat

    int beta() const { return static_cast<int>(bases.size()); }
    Mask support_flat(int chamber_id, int j) const { return support.at({chamber_id, j}); }
};

SideData build_side(const DualPair& d, Side s, const WeightSystem& w);

BranchAssignment special_branches(const SideData& sd, const WeightSystem& w);

// Transfers a special primal assignment to the dual side: the group of the
// dual parallelism gets argument pi - theta.
BranchAssignment associated_branches(const BranchAssignment& primal, const SideData& dual_sd);

// |f^j(L)|^{alpha_j} e^{i alpha_j theta} on the supporting edge keyed by flat.
std::complex<double> critical_value(const SideData& sd, const WeightSystem& w,
                                    const BranchAssignment& ba, int j, Mask flat);

// log of the alternating gamma product over the edges of the projective
// arrangement, weighted by discrete volumes.
double log_beta_function(const geometry::AffineArrangement& arr, const WeightSystem& w);

struct PeriodMatrix {
    int beta = 0;
    std::vector<std::complex<double>> entries;  // row-major
    std::vector<int> row_chambers;
    std::vector<double> entry_error;
    int degree = 0;

    std::complex<double> at(int s, int t) const { return entries[s * beta + t]; }
    double max_error() const;
};

PeriodMatrix period_matrix(const SideData& sd, const WeightSystem& w, const BranchAssignment& ba,
                           const QuadSpec& quad);

// Same, but rows follow an injected admissible basis-to-chamber matching.
PeriodMatrix period_matrix_with_matching(const SideData& sd, const WeightSystem& w,
                                         const BranchAssignment& ba, const QuadSpec& quad,
                                         const std::vector<int>& chamber_of_basis);

struct DetResult {
    std::complex<double> value;
    double condition = 0;  // pivot-ratio estimate
};

DetResult det_pm(const PeriodMatrix& pm);

struct ComparisonReport {
    std::complex<double> lhs;
    double rhs_log_modulus = 0;
    double rhs_phase = 0;
    double modulus_ratio = 0;      // |lhs| / |rhs|
    double phase_diff = 0;         // wrapped to (-pi, pi]
    double phase_diff_mod_pi = 0;  // folded to [-pi/2, pi/2]
    double quad_error = 0;

    bool pass(double tol) const;
};

// det PM against  B(A, alpha) * prod critical values^volume.
ComparisonReport verify_evaluation(const SideData& sd, const WeightSystem& w,
                                   const BranchAssignment& ba, const QuadSpec& quad);

struct MainReport {
    std::complex<double> det_primal;
    std::complex<double> det_dual;
    ComparisonReport comparison;  // lhs = product of determinants
};

// det PM(primal) * det PM(dual) against the gamma/exponential closed form,
// with special branches on the primal side and associated ones on the dual.
MainReport verify_main(const DualPair& d, const WeightSystem& w, const QuadSpec& quad);

}  // namespace arrdual::periods
