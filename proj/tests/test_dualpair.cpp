#include "arrdual/dual_pair.hpp"
#include "arrdual/errors.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <random>

using namespace arrdual;
using dualpair::AdmissiblePair;
using dualpair::DualPair;
using dualpair::Side;
using exactla::ExactMatrix;
using exactla::Rational;
using matroid::Mask;

namespace {

const ExactMatrix kExample1B{{1, 1, 1, 0}, {0, -1, -2, 1}};

DualPair example1() { return dualpair::dualize(dualpair::make_pair(kExample1B, 1)); }

}  // namespace

TEST_CASE("make_pair validation") {
    AdmissiblePair p = dualpair::make_pair(kExample1B, 1);
    CHECK(p.k == 1);
    CHECK(p.n == 1);
    CHECK(p.N == 3);

    ExactMatrix equal_cols{{1, 1, 1, 0}, {2, 2, -1, 1}};
    CHECK_THROWS_AS(dualpair::make_pair(equal_cols, 1), InadmissibleError);

    ExactMatrix zero_col{{0, 1, 1, 0}, {0, -1, -2, 1}};
    CHECK_THROWS_AS(dualpair::make_pair(zero_col, 1), InadmissibleError);

    ExactMatrix deficient{{1, 1, 1, 0}, {2, 2, 2, 0}};
    CHECK_THROWS_AS(dualpair::make_pair(deficient, 1), NotAPairError);

    ExactMatrix small{{1, 0, 1}, {0, 1, 1}};
    CHECK_THROWS_AS(dualpair::make_pair(small, 1), NotAPairError);

    // inadmissibility may only show on the derived dual side
    try {
        dualpair::make_pair(equal_cols, 1);
        CHECK(false);
    } catch (const InadmissibleError& e) {
        CHECK(e.column_a == 0);
        CHECK(e.column_b == 1);
    }
}

TEST_CASE("dualize builds the annihilator from the completion inverse") {
    DualPair d = example1();
    CHECK(d.C.rows() == 2);
    CHECK(d.primal.B.mul(d.C.transpose()).is_zero());
    CHECK(exactla::rank(d.C) == 2);
    CHECK(d.detB == 1);
    // frozen from the deterministic completion (e1, e2 appended)
    CHECK(d.C == ExactMatrix{{1, 0, -1, -2}, {0, 1, -1, -1}});
}

TEST_CASE("identity-block matrices dualize to the complementary block") {
    ExactMatrix b{{1, 0, 0, 0}, {0, 1, 0, 0}};
    auto parts = dualpair::derive_annihilator(b);
    CHECK(parts.C == ExactMatrix{{0, 0, 1, 0}, {0, 0, 0, 1}});
    CHECK(parts.detB == 1);
}

TEST_CASE("dual of the dual is row-equivalent to B") {
    std::mt19937_64 rng(17);
    for (auto [k, n] : {std::pair{1, 2}, std::pair{2, 1}, std::pair{2, 2}}) {
        DualPair d = oracles::random_admissible_pair(rng, k, n);
        AdmissiblePair back = dualpair::make_pair(d.C, d.primal.n);
        DualPair dd = dualpair::dualize(back);
        // rows of dd.C span the same space as rows of B
        ExactMatrix stacked = d.primal.B.vstack(dd.C);
        CHECK(exactla::rank(stacked) == d.primal.k + 1);
        CHECK(dd.C.rows() == d.primal.k + 1);
    }
}

TEST_CASE("vertex values of Example 1") {
    DualPair d = example1();
    // f^2 at the vertex a_1, i.e. a_1 - a_2 = -1 for a = (0,1,2)
    CHECK(dualpair::vertex_value(d, Side::primal, {0}, 1) == -1);
    // f^3 at a_1 = -2, f^3 at a_2 = -1, f^1 at a_2 = 1
    CHECK(dualpair::vertex_value(d, Side::primal, {0}, 2) == -2);
    CHECK(dualpair::vertex_value(d, Side::primal, {1}, 2) == -1);
    CHECK(dualpair::vertex_value(d, Side::primal, {1}, 0) == 1);
    // dual side: f_2 at the vertex of f_3 equals 1/(a_2 - a_1) = 1
    CHECK(dualpair::vertex_value(d, Side::dual, {2}, 1) == 1);
    // j inside the flat violates the precondition
    CHECK_THROWS_AS(dualpair::vertex_value(d, Side::primal, {1}, 1), DomainError);
}

TEST_CASE("complementary minor identity") {
    // completion = identity: B rows are e^1, e^2
    ExactMatrix b{{1, 0, 0, 0}, {0, 1, 0, 0}};
    auto parts = dualpair::derive_annihilator(b);
    DualPair d;
    d.primal = {1, 1, 3, b, parts.completion};
    d.C = parts.C;
    d.detB = parts.detB;
    CHECK(dualpair::check_minor_identity(d).pass);

    CHECK(dualpair::check_minor_identity(example1()).pass);

    std::mt19937_64 rng(23);
    for (int rep = 0; rep < 6; ++rep) {
        DualPair r = oracles::random_admissible_pair(rng, 2, 2);
        CHECK(dualpair::check_minor_identity(r).pass);
    }
}

TEST_CASE("product of dual vertex values is -1") {
    DualPair d = example1();
    matroid::ParallelismRecord p;
    p.flat = matroid::bit(0);
    p.b = 3;
    for (int a : {1, 2}) {
        p.a = a;
        auto report = dualpair::product_minus_one(d, p);
        INFO(report.detail);
        CHECK(report.pass);
    }

    // swapping primal and dual roles keeps the product
    AdmissiblePair swapped = dualpair::make_pair(d.C, 1);
    DualPair ds = dualpair::dualize(swapped);
    matroid::Matroid ms = dualpair::side_matroid(ds, Side::primal);
    for (const auto& q : matroid::parallelisms(ms)) {
        if (q.b != 3 || q.volume == 0) continue;
        auto report = dualpair::product_minus_one(ds, q);
        INFO(report.detail);
        CHECK(report.pass);
    }
}

TEST_CASE("product minus one across random pairs") {
    std::mt19937_64 rng(31);
    for (auto [k, n] : {std::pair{1, 2}, std::pair{2, 1}, std::pair{2, 2}}) {
        DualPair d = oracles::random_admissible_pair(rng, k, n);
        matroid::Matroid m = dualpair::side_matroid(d, Side::primal);
        int chart = d.chart_index();
        for (const auto& p : matroid::parallelisms(m)) {
            if (p.b != chart) continue;
            try {
                auto report = dualpair::product_minus_one(d, p);
                INFO(report.detail);
                CHECK(report.pass);
            } catch (const DegenerateParallelismError&) {
                // no vertex off the chart hyperplane: nothing to check
            }
        }
    }
}

TEST_CASE("plucker delta identity") {
    DualPair d = example1();
    auto primal = dualpair::plucker(d, Side::primal);
    auto dual = dualpair::plucker(d, Side::dual);
    CHECK(dualpair::projectively_equal(dualpair::delta(primal), dual));
    CHECK(dualpair::projectively_equal(dualpair::delta(dualpair::delta(primal)), primal));

    std::mt19937_64 rng(41);
    for (auto [k, n] : {std::pair{1, 2}, std::pair{2, 2}}) {
        DualPair r = oracles::random_admissible_pair(rng, k, n);
        auto rp = dualpair::plucker(r, Side::primal);
        auto rd = dualpair::plucker(r, Side::dual);
        CHECK(dualpair::projectively_equal(dualpair::delta(rp), rd));
        CHECK(dualpair::projectively_equal(dualpair::delta(dualpair::delta(rp)), rp));
    }
}

TEST_CASE("matroid of C columns is dual to matroid of B columns") {
    std::mt19937_64 rng(43);
    for (auto [k, n] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 2}}) {
        DualPair d = oracles::random_admissible_pair(rng, k, n);
        matroid::Matroid mb = dualpair::side_matroid(d, Side::primal).dual();
        matroid::Matroid mc = dualpair::side_matroid(d, Side::dual);
        for (Mask x = 0; x <= mb.full_mask(); ++x) {
            CHECK(mb.rank(x) == mc.rank(x));
            if (x == mb.full_mask()) break;
        }
    }
}

TEST_CASE("weak localization") {
    std::mt19937_64 rng(47);
    DualPair d = oracles::random_admissible_pair(rng, 2, 2);
    matroid::Matroid m = dualpair::side_matroid(d, Side::primal);

    int tested = 0;
    for (Mask x = 1; x < m.full_mask(); ++x) {
        if (!m.is_flat(x)) continue;
        ++tested;
        auto loc = dualpair::weak_localize(d, x);
        for (const auto& c : loc.checks) {
            INFO(c.name, " at flat ", x, ": ", c.detail);
            CHECK(c.pass);
        }
        // sizes: sigma on the complement ground set
        CHECK(loc.sigma.ground.size() == static_cast<size_t>(m.size() - matroid::popcount(x)));
    }
    CHECK(tested > 0);

    CHECK_THROWS_AS(dualpair::weak_localize(d, Mask{0}), DomainError);

    // singleton flat: the sigma matroid is the contraction
    DualPair e1 = example1();
    auto loc = dualpair::weak_localize(e1, matroid::bit(0));
    CHECK(loc.all_pass());
}

TEST_CASE("vertex at infinity is rejected") {
    // a pair whose chart hyperplane passes through some projective vertex
    std::mt19937_64 rng(123);
    bool exercised = false;
    for (int rep = 0; rep < 800 && !exercised; ++rep) {
        DualPair d = oracles::random_admissible_pair(rng, 2, 2, 2);
        matroid::Matroid m = dualpair::side_matroid(d, Side::primal);
        int chart = d.chart_index();
        for (int a = 0; a < chart && !exercised; ++a)
            for (int b = a + 1; b < chart && !exercised; ++b) {
                Mask mask = matroid::bit(a) | matroid::bit(b);
                if (m.rank(mask) != 2) continue;
                if (m.rank(mask | matroid::bit(chart)) != 2) continue;  // parallel pair
                int j = 0;
                while (j == a || j == b) ++j;
                CHECK_THROWS_AS(dualpair::vertex_value(d, Side::primal, {a, b}, j),
                                VertexAtInfinityError);
                exercised = true;
            }
    }
    CHECK(exercised);
}
