#include "arrdual/geometry.hpp"
#include "arrdual/errors.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace arrdual;
using dualpair::DualPair;
using dualpair::Side;
using exactla::ExactMatrix;
using exactla::Rational;
using geometry::AffineArrangement;
using geometry::ChamberComplex;
using matroid::Mask;

namespace {

const ExactMatrix kExample1B{{1, 1, 1, 0}, {0, -1, -2, 1}};

DualPair example1() { return dualpair::dualize(dualpair::make_pair(kExample1B, 1)); }

// Every sign vector, checked for feasibility independently of the BFS.
std::set<std::uint32_t> brute_force_chambers(const AffineArrangement& a) {
    std::set<std::uint32_t> feasible;
    for (std::uint32_t signs = 0; signs < (1u << a.hyperplanes()); ++signs) {
        std::vector<geometry::LinearConstraint> cons;
        for (int j = 0; j < a.hyperplanes(); ++j) {
            geometry::LinearConstraint c;
            c.coeff = a.forms[j].gradient;
            c.constant = a.forms[j].constant;
            c.strict = true;
            if (signs & (1u << j)) {
                for (auto& v : c.coeff) v = -v;
                c.constant = -c.constant;
            }
            cons.push_back(std::move(c));
        }
        if (geometry::fourier_motzkin_feasible(std::move(cons), a.dim)) feasible.insert(signs);
    }
    return feasible;
}

}  // namespace

TEST_CASE("affine forms of Example 1 are x, x-1, x-2") {
    AffineArrangement arr = geometry::affine_forms(example1(), Side::primal);
    REQUIRE(arr.dim == 1);
    REQUIRE(arr.forms.size() == 3);
    CHECK(arr.forms[0].gradient[0] == 1);
    CHECK(arr.forms[0].constant == 0);
    CHECK(arr.forms[1].gradient[0] == 1);
    CHECK(arr.forms[1].constant == -1);
    CHECK(arr.forms[2].gradient[0] == 1);
    CHECK(arr.forms[2].constant == -2);
}

TEST_CASE("form values at vertices match the minor formula") {
    std::mt19937_64 rng(53);
    for (auto [k, n] : {std::pair{1, 2}, std::pair{2, 1}, std::pair{2, 2}}) {
        DualPair d = oracles::random_admissible_pair(rng, k, n);
        for (Side side : {Side::primal, Side::dual}) {
            AffineArrangement arr = geometry::affine_forms(d, side);
            ChamberComplex cc = geometry::chambers(arr);
            for (const auto& v : cc.vertices) {
                // pick the lexicographically first independent defining subset
                std::vector<int> flat_list;
                for (int j = 0; j < arr.hyperplanes(); ++j)
                    if (matroid::contains(v.flat, j)) flat_list.push_back(j);
                std::vector<int> base;
                Mask base_mask = 0;
                for (int j : flat_list) {
                    if (arr.mat.rank(base_mask | matroid::bit(j)) >
                        static_cast<int>(base.size())) {
                        base.push_back(j);
                        base_mask |= matroid::bit(j);
                    }
                    if (static_cast<int>(base.size()) == arr.dim) break;
                }
                REQUIRE(static_cast<int>(base.size()) == arr.dim);
                for (int j = 0; j < arr.hyperplanes(); ++j) {
                    if (matroid::contains(v.flat, j)) continue;
                    CHECK(geometry::evaluate(arr.forms[j], v.point) ==
                          dualpair::vertex_value(d, side, base, j));
                }
            }
        }
    }
}

TEST_CASE("chambers of Example 1") {
    AffineArrangement arr = geometry::affine_forms(example1(), Side::primal);
    ChamberComplex cc = geometry::chambers(arr);
    CHECK(cc.chambers.size() == 4);
    REQUIRE(cc.bounded_ids.size() == 2);

    // canonical order: (1,2) before (0,1)
    const auto& first = cc.chambers[cc.bounded_ids[0]];
    const auto& second = cc.chambers[cc.bounded_ids[1]];
    CHECK(first.sign_string(3) == "++-");
    CHECK(second.sign_string(3) == "+--");
    CHECK(first.interior[0] == exactla::make_rational(3, 2));
    CHECK(second.interior[0] == exactla::make_rational(1, 2));

    // dual side has the same bounded count
    AffineArrangement dual_arr = geometry::affine_forms(example1(), Side::dual);
    CHECK(geometry::chambers(dual_arr).bounded_ids.size() == 2);
}

TEST_CASE("three generic lines bound one triangle") {
    // forms x, y, x + y - 1 and a chart column
    ExactMatrix m{{1, 0, 1, 0}, {0, 1, 1, 0}, {0, 0, -1, 1}};
    AffineArrangement arr = geometry::arrangement_from_matrix(m);
    REQUIRE(arr.dim == 2);
    ChamberComplex cc = geometry::chambers(arr);
    CHECK(cc.chambers.size() == 7);
    REQUIRE(cc.bounded_ids.size() == 1);
    const auto& tri = cc.chambers[cc.bounded_ids[0]];
    CHECK(tri.vertex_ids.size() == 3);
    CHECK(tri.sign_string(3) == "++-");
}

TEST_CASE("BFS chambers equal brute-force sign enumeration") {
    std::mt19937_64 rng(59);
    for (auto [k, n] : {std::pair{1, 2}, std::pair{2, 2}}) {
        DualPair d = oracles::random_admissible_pair(rng, k, n);
        for (Side side : {Side::primal, Side::dual}) {
            AffineArrangement arr = geometry::affine_forms(d, side);
            ChamberComplex cc = geometry::chambers(arr);
            std::set<std::uint32_t> brute = brute_force_chambers(arr);
            std::set<std::uint32_t> bfs;
            for (const auto& ch : cc.chambers) bfs.insert(ch.sign_mask);
            CHECK(bfs == brute);
        }
    }
}

TEST_CASE("bounded counts match the beta invariant on both sides") {
    std::mt19937_64 rng(61);
    for (auto [k, n] : {std::pair{1, 2}, std::pair{2, 1}, std::pair{2, 2}}) {
        DualPair d = oracles::random_admissible_pair(rng, k, n);
        long long beta_primal = -1, beta_dual = -1;
        for (Side side : {Side::primal, Side::dual}) {
            AffineArrangement arr = geometry::affine_forms(d, side);
            // chambers() itself asserts the count equals b10
            ChamberComplex cc = geometry::chambers(arr);
            (side == Side::primal ? beta_primal : beta_dual) =
                static_cast<long long>(cc.bounded_ids.size());
        }
        CHECK(beta_primal == beta_dual);
    }
}

TEST_CASE("external support of Example 1") {
    AffineArrangement arr = geometry::affine_forms(example1(), Side::primal);
    ChamberComplex cc = geometry::chambers(arr);
    // chamber (0,1) has signs "+--"
    int cid = -1;
    for (int i : cc.bounded_ids)
        if (cc.chambers[i].sign_string(3) == "+--") cid = i;
    REQUIRE(cid >= 0);
    // farthest point from the zero of x-1 is x=0, supported by hyperplane 0
    auto s = geometry::external_support(arr, cc, cid, 1);
    CHECK(s.edge.flat == matroid::bit(0));
    CHECK(s.face_dim == 0);
    // f^1 never vanishes on the closure of its own farthest face
    CHECK(geometry::evaluate(arr.forms[1], cc.vertices[s.face_vertex_ids[0]].point) != 0);

    CHECK_THROWS_AS(geometry::external_support(arr, cc, 0, 0), DomainError);
}

TEST_CASE("parallelism chamber counts equal discrete volumes") {
    std::mt19937_64 rng(67);
    for (auto [k, n] : {std::pair{1, 2}, std::pair{2, 1}, std::pair{2, 2}}) {
        DualPair d = oracles::random_admissible_pair(rng, k, n);
        for (Side side : {Side::primal, Side::dual}) {
            AffineArrangement arr = geometry::affine_forms(d, side);
            ChamberComplex cc = geometry::chambers(arr);
            int chart = arr.chart_index();
            long long beta = static_cast<long long>(cc.bounded_ids.size());
            std::vector<long long> per_a(arr.hyperplanes(), 0);
            for (const auto& p : matroid::parallelisms(arr.mat)) {
                if (p.b != chart) continue;
                long long count = geometry::parallelism_chamber_count(arr, cc, p);
                CHECK(count == p.volume);
                per_a[p.a] += count;
            }
            // each bounded chamber has exactly one supporting edge per a
            for (int a = 0; a < arr.hyperplanes(); ++a) CHECK(per_a[a] == beta);
        }
    }
}

TEST_CASE("edge dimensions follow the matroid rank") {
    std::mt19937_64 rng(71);
    DualPair d = oracles::random_admissible_pair(rng, 2, 2);
    AffineArrangement arr = geometry::affine_forms(d, Side::primal);
    for (Mask x = 1; x < (Mask{1} << arr.hyperplanes()); ++x) {
        auto edge = geometry::edge_geometry(arr, x);
        if (!edge) continue;
        CHECK(edge->dim == arr.dim - arr.mat.rank(x));
        // the stored flat is the full incidence set and contains x
        CHECK((edge->flat & x) == x);
    }
}

TEST_CASE("non-essential arrangement is rejected") {
    // three concurrent lines x, y, x+y: the affine part only has rank 2
    ExactMatrix m{{1, 0, 1, 0}, {0, 1, 1, 0}, {0, 0, 0, 1}};
    AffineArrangement arr = geometry::arrangement_from_matrix(m);
    CHECK(arr.mat.rank(arr.affine_mask()) == 2);
    CHECK_THROWS_AS(geometry::chambers(arr), UnsupportedError);
}

TEST_CASE("dimensions beyond three are rejected") {
    ExactMatrix m(5, 8);
    for (int i = 0; i < 5; ++i) m(i, i) = 1;
    for (int j = 5; j < 8; ++j)
        for (int i = 0; i < 5; ++i) m(i, j) = (i * 7 + j * 3) % 5 + 1;
    AffineArrangement arr = geometry::arrangement_from_matrix(m);
    CHECK(arr.dim == 4);
    CHECK_THROWS_AS(geometry::chambers(arr), UnsupportedError);
}
