// Acceptance suite: runs every top-level requirement at its stated tolerance
// and prints one PASS/FAIL line per criterion.

#include "arrdual/dual_pair.hpp"
#include "arrdual/errors.hpp"
#include "arrdual/geometry.hpp"
#include "arrdual/matroid.hpp"
#include "arrdual/periods.hpp"

#include "support/oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace arrdual;
using dualpair::DualPair;
using dualpair::Side;
using exactla::ExactMatrix;
using exactla::Rational;
using matroid::bit;
using matroid::Mask;

namespace {

int g_failures = 0;

void report(int id, bool pass, const std::string& detail, double seconds) {
    std::printf("CRITERION %d: %s  (%.2fs)  %s\n", id, pass ? "PASS" : "FAIL", seconds,
                detail.c_str());
    if (!pass) ++g_failures;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

DualPair example1() {
    ExactMatrix b{{1, 1, 1, 0}, {0, -1, -2, 1}};
    return dualpair::dualize(dualpair::make_pair(b, 1));
}

Rational quarter(int q) { return exactla::make_rational(q, 4); }

std::vector<Rational> random_weights(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> q(5, 12);  // {5/4, ..., 3}
    std::vector<Rational> w;
    for (int j = 0; j < n; ++j) w.push_back(quarter(q(rng)));
    return w;
}

// shared sample for criteria 2, 5, 6
struct SamplePair {
    DualPair d;
    periods::WeightSystem w;
    int k, n;
};

std::vector<SamplePair> sample_pairs(int count) {
    std::mt19937_64 rng(20240817);
    std::vector<SamplePair> out;
    for (int i = 0; i < count; ++i) {
        auto [k, n] = std::array{std::pair{1, 2}, std::pair{2, 1}, std::pair{2, 2}}[i % 3];
        SamplePair s;
        s.k = k;
        s.n = n;
        s.d = oracles::random_admissible_pair(rng, k, n);
        s.w = periods::make_weights(random_weights(rng, s.d.hyperplanes()));
        out.push_back(std::move(s));
    }
    return out;
}

void criterion1() {
    Timer t;
    DualPair d = example1();
    periods::WeightSystem w = periods::make_weights({1, 1, 1});
    periods::MainReport r = periods::verify_main(d, w, {32, 8, 1e-12});
    double expected = 1.0 / 36.0;
    double rel = std::abs(std::abs(r.comparison.lhs) - expected) / expected;
    bool pass = rel <= 1e-8 && std::abs(r.comparison.phase_diff_mod_pi) <= 1e-8 &&
                t.seconds() < 5.0;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "|D D'| = %.12g vs 1/36, rel err %.2e, phase mod pi %.2e",
                  std::abs(r.comparison.lhs), rel, std::abs(r.comparison.phase_diff_mod_pi));
    report(1, pass, buf, t.seconds());
}

void criterion2(const std::vector<SamplePair>& pairs) {
    Timer t;
    int checked = 0;
    double worst_ratio = 0, worst_phase = 0;
    bool pass = true;
    for (const auto& s : pairs) {
        for (Side side : {Side::primal, Side::dual}) {
            periods::SideData sd = periods::build_side(s.d, side, s.w);
            periods::BranchAssignment ba = periods::special_branches(sd, s.w);
            periods::ComparisonReport r = periods::verify_evaluation(sd, s.w, ba, {20, 10, 1e-8});
            worst_ratio = std::max(worst_ratio, std::abs(r.modulus_ratio - 1.0));
            worst_phase = std::max(worst_phase, std::abs(r.phase_diff_mod_pi));
            if (!r.pass(1e-6)) pass = false;
            ++checked;
        }
    }
    pass = pass && t.seconds() < 300.0;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%d side evaluations, worst |ratio-1| %.2e, worst phase %.2e",
                  checked, worst_ratio, worst_phase);
    report(2, pass, buf, t.seconds());
}

void criterion3() {
    Timer t;
    bool pass = true;
    double worst = 0;
    int checked = 0;
    std::mt19937_64 rng(5150);
    std::vector<DualPair> instances{example1()};
    for (int i = 0; i < 2; ++i) instances.push_back(oracles::random_admissible_pair(rng, 1, 1));
    const Rational singular[3] = {quarter(1), quarter(2), quarter(3)};  // 1/4, 1/2, 3/4
    for (const DualPair& d : instances) {
        for (int rot = 0; rot < 3; ++rot) {
            std::vector<Rational> alphas;
            for (int j = 0; j < d.hyperplanes(); ++j) alphas.push_back(singular[(j + rot) % 3]);
            periods::WeightSystem w = periods::make_weights(alphas);
            for (Side side : {Side::primal, Side::dual}) {
                periods::SideData sd = periods::build_side(d, side, w);
                periods::BranchAssignment ba = periods::special_branches(sd, w);
                periods::ComparisonReport r =
                    periods::verify_evaluation(sd, w, ba, {32, 10, 1e-9});
                worst = std::max(worst, std::abs(r.modulus_ratio - 1.0));
                worst = std::max(worst, std::abs(r.phase_diff_mod_pi));
                if (!r.pass(1e-6)) pass = false;
                ++checked;
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "%d singular-weight evaluations (alpha in {1/4,1/2,3/4}), worst dev %.2e",
                  checked, worst);
    report(3, pass, buf, t.seconds());
}

void criterion4() {
    Timer t;
    std::mt19937_64 rng(88);
    std::uniform_int_distribution<int> rows(1, 4), cols(2, 10), entry(-2, 2);
    int failures = 0;
    for (int rep = 0; rep < 200; ++rep) {
        int r = rows(rng), c = cols(rng);
        ExactMatrix m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m(i, j) = entry(rng);
        matroid::Matroid mat = matroid::Matroid::from_columns(m);
        matroid::TuttePolynomial tutte = matroid::tutte(mat);
        if (tutte != oracles::corank_nullity_tutte(mat)) ++failures;
        if (mat.size() >= 2 && tutte.coefficient(1, 0) != tutte.coefficient(0, 1)) ++failures;
        if (tutte != matroid::tutte(mat.dual()).swapped_variables()) ++failures;
        matroid::Matroid dual = mat.dual();
        for (Mask x = 0; x <= mat.full_mask(); ++x) {
            if (mat.corank(x) != dual.nullity(mat.full_mask() & ~x)) { ++failures; break; }
            if (x == mat.full_mask()) break;
        }
        if (!matroid::verify_duality_suite(mat).all_pass()) ++failures;
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf), "200 random matrices, %d failures", failures);
    report(4, failures == 0, buf, t.seconds());
}

void criterion5(const std::vector<SamplePair>& pairs) {
    Timer t;
    int failures = 0, par_checks = 0;
    long long beta_primal = -1;
    for (const auto& s : pairs) {
        for (Side side : {Side::primal, Side::dual}) {
            geometry::AffineArrangement arr = geometry::affine_forms(s.d, side);
            geometry::ChamberComplex cc = geometry::chambers(arr);
            long long beta = static_cast<long long>(cc.bounded_ids.size());
            if (beta != matroid::beta_invariant(arr.mat)) ++failures;
            if (side == Side::primal)
                beta_primal = beta;
            else if (beta != beta_primal)
                ++failures;
            int chart = arr.chart_index();
            for (const auto& p : matroid::parallelisms(arr.mat)) {
                if (p.b != chart) continue;
                if (geometry::parallelism_chamber_count(arr, cc, p) != p.volume) ++failures;
                ++par_checks;
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%d parallelism counts checked, %d failures", par_checks,
                  failures);
    report(5, failures == 0, buf, t.seconds());
}

void criterion6(const std::vector<SamplePair>& pairs) {
    Timer t;
    int failures = 0, products = 0, criticals = 0, weak_flats = 0, degenerate = 0;
    double worst_phase = 0;
    for (const auto& s : pairs) {
        if (!dualpair::check_minor_identity(s.d).pass) ++failures;
        auto primal_pl = dualpair::plucker(s.d, Side::primal);
        if (!dualpair::projectively_equal(dualpair::delta(primal_pl),
                                          dualpair::plucker(s.d, Side::dual)))
            ++failures;
        if (!dualpair::projectively_equal(dualpair::delta(dualpair::delta(primal_pl)), primal_pl))
            ++failures;

        matroid::Matroid m = dualpair::side_matroid(s.d, Side::primal);
        int chart = s.d.chart_index();
        for (const auto& p : matroid::parallelisms(m)) {
            if (p.b != chart) continue;
            try {
                if (!dualpair::product_minus_one(s.d, p).pass) ++failures;
                ++products;
            } catch (const DegenerateParallelismError&) {
                ++degenerate;  // no vertex off the chart: outside the lemma
            }
        }

        // critical value products across dual parallelisms
        periods::SideData primal = periods::build_side(s.d, Side::primal, s.w);
        periods::SideData dual = periods::build_side(s.d, Side::dual, s.w);
        periods::BranchAssignment bp = periods::special_branches(primal, s.w);
        periods::BranchAssignment bd = periods::associated_branches(bp, dual);
        const Mask full_j = bit(chart + 1) - 1;
        for (const auto& [key, theta] : bp.theta_pi) {
            auto [j, flat] = key;
            Mask dual_flat = full_j & ~(flat | bit(j) | bit(chart));
            if (!bd.has(j, dual_flat)) continue;
            auto ep = geometry::edge_geometry(primal.arr, flat);
            auto ed = geometry::edge_geometry(dual.arr, dual_flat);
            Rational vp = geometry::evaluate(primal.arr.forms[j], ep->point);
            Rational vd = geometry::evaluate(dual.arr.forms[j], ed->point);
            if (vp * vd != -1) ++failures;  // exact modulus part
            auto cp = periods::critical_value(primal, s.w, bp, j, flat);
            auto cd = periods::critical_value(dual, s.w, bd, j, dual_flat);
            double alpha = exactla::to_double(s.w.alphas[j]);
            double phase =
                std::abs(std::remainder(std::arg(cp * cd) - M_PI * alpha, 2 * M_PI));
            worst_phase = std::max(worst_phase, phase);
            if (phase > 1e-12) ++failures;
            ++criticals;
        }

        for (Mask x = 1; x < m.full_mask(); ++x) {
            if (!m.is_flat(x)) continue;
            if (!dualpair::weak_localize(s.d, x).all_pass()) ++failures;
            ++weak_flats;
        }
    }
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "%d -1 products (%d degenerate skipped), %d critical pairs (worst phase "
                  "%.1e), %d weak flats, %d failures",
                  products, degenerate, criticals, worst_phase, weak_flats, failures);
    report(6, failures == 0, buf, t.seconds());
}

void criterion7() {
    Timer t;
    std::mt19937_64 rng(71);
    DualPair d = oracles::random_admissible_pair(rng, 2, 2);
    periods::WeightSystem w = periods::make_weights(random_weights(rng, d.hyperplanes()));
    periods::QuadSpec quad{20, 10, 1e-9};
    periods::SideData sd = periods::build_side(d, Side::primal, w);
    periods::BranchAssignment ba = periods::special_branches(sd, w);
    double base = std::abs(periods::det_pm(periods::period_matrix(sd, w, ba, quad)).value);
    std::complex<double> base_det =
        periods::det_pm(periods::period_matrix(sd, w, ba, quad)).value;
    bool pass = true;
    double worst = 0;
    for (int rep = 0; rep < 10; ++rep) {
        auto matching = betakbc::random_chamber_matching(sd.arr, sd.cc, sd.bases, rng);
        auto det = periods::det_pm(
                       periods::period_matrix_with_matching(sd, w, ba, quad, matching))
                       .value;
        double dev = std::abs(std::abs(det) - base) / base;
        worst = std::max(worst, dev);
        if (dev > 1e-10) pass = false;
        // sign-only change
        double flip = std::min(std::abs(det - base_det), std::abs(det + base_det));
        if (flip > 1e-8 * base) pass = false;
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf), "10 rematchings (beta=%d), worst |det| deviation %.2e",
                  sd.beta(), worst);
    report(7, pass, buf, t.seconds());
}

}  // namespace

int main() {
    Timer total;
    try {
        criterion1();
        std::vector<SamplePair> pairs = sample_pairs(20);
        criterion2(pairs);
        criterion3();
        criterion4();
        criterion5(pairs);
        criterion6(pairs);
        criterion7();
    } catch (const std::exception& e) {
        std::printf("ACCEPTANCE ABORTED: %s\n", e.what());
        return 2;
    }
    std::printf("acceptance total: %.1fs, %d failing criteria\n", total.seconds(), g_failures);
    return g_failures == 0 ? 0 : 1;
}
