#include "arrdual/exact_matrix.hpp"
#include "arrdual/errors.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <random>

using namespace arrdual;
using exactla::ExactMatrix;
using exactla::Rational;

namespace {

const ExactMatrix kExample1B{{1, 1, 1, 0}, {0, -1, -2, 1}};

ExactMatrix random_rational_matrix(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 4);
    ExactMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = exactla::make_rational(num(rng), den(rng));
    return m;
}

}  // namespace

TEST_CASE("rational string round trip") {
    CHECK(exactla::to_string(exactla::parse_rational("-6/4")) == "-3/2");
    CHECK(exactla::to_string(exactla::parse_rational("7")) == "7");
    CHECK(exactla::parse_rational("2/6") == exactla::make_rational(1, 3));
    CHECK(exactla::make_rational(3, -6) == exactla::make_rational(-1, 2));
    CHECK_THROWS_AS(exactla::parse_rational("x"), std::invalid_argument);
}

TEST_CASE("rank basics") {
    CHECK(exactla::rank(ExactMatrix::identity(2)) == 2);
    CHECK(exactla::rank(ExactMatrix(3, 4)) == 0);
    CHECK(exactla::rank(kExample1B) == 2);
}

TEST_CASE("minor values") {
    ExactMatrix id4 = ExactMatrix::identity(4);
    CHECK(exactla::minor(id4, {1, 2}, {1, 2}) == 1);
    // both rows of the Example-1 matrix
    CHECK(exactla::minor(kExample1B, {0, 1}, {0, 3}) == 1);
    CHECK(exactla::minor(kExample1B, {0, 1}, {0, 1}) == -1);
    CHECK_THROWS_AS(exactla::minor(id4, {0, 1}, {0}), DimensionError);
    CHECK_THROWS_AS(exactla::minor(id4, {1, 0}, {0, 1}), DimensionError);
}

TEST_CASE("determinant agrees with cofactor expansion") {
    std::mt19937_64 rng(7);
    for (int n = 1; n <= 5; ++n) {
        for (int rep = 0; rep < 20; ++rep) {
            ExactMatrix m = random_rational_matrix(rng, n);
            CHECK(exactla::det(m) == oracles::cofactor_det(m));
        }
    }
}

TEST_CASE("nullspace basis") {
    CHECK(exactla::nullspace_basis(ExactMatrix::identity(3)).rows() == 0);

    ExactMatrix row{{1, -1}};
    ExactMatrix ns = exactla::nullspace_basis(row);
    REQUIRE(ns.rows() == 1);
    CHECK(ns(0, 0) == ns(0, 1));
    CHECK(ns(0, 0) != 0);

    ExactMatrix basis = exactla::nullspace_basis(kExample1B);
    REQUIRE(basis.rows() == 2);
    CHECK(kExample1B.mul(basis.transpose()).is_zero());
}

TEST_CASE("rank plus nullity equals columns") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 40; ++rep) {
        std::uniform_int_distribution<int> rdist(1, 5), cdist(1, 7);
        int r = rdist(rng), c = cdist(rng);
        ExactMatrix m = oracles::random_int_matrix(rng, r, c);
        ExactMatrix ns = exactla::nullspace_basis(m);
        CHECK(exactla::rank(m) + ns.rows() == c);
        CHECK(m.mul(ns.transpose()).is_zero());
        if (ns.rows() > 0) CHECK(exactla::rank(ns) == ns.rows());
    }
}

TEST_CASE("complete_to_square") {
    ExactMatrix row{{1, 0}};
    CHECK(exactla::complete_to_square(row) == ExactMatrix::identity(2));

    ExactMatrix full = exactla::complete_to_square(kExample1B);
    CHECK(full.rows() == 4);
    CHECK(exactla::det(full) != 0);
    for (int j = 0; j < 4; ++j) {
        CHECK(full(0, j) == kExample1B(0, j));
        CHECK(full(1, j) == kExample1B(1, j));
    }

    ExactMatrix square{{2, 1}, {1, 1}};
    CHECK(exactla::complete_to_square(square) == square);

    ExactMatrix deficient{{1, 1}, {2, 2}};
    CHECK_THROWS_AS(exactla::complete_to_square(deficient), RankError);
}

TEST_CASE("inverse") {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 10; ++rep) {
        ExactMatrix m = random_rational_matrix(rng, 4);
        if (exactla::det(m) == 0) continue;
        CHECK(m.mul(exactla::inverse(m)) == ExactMatrix::identity(4));
    }
    CHECK_THROWS_AS(exactla::inverse(ExactMatrix{{1, 1}, {1, 1}}), RankError);
}
