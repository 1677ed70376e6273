#include "arrdual/pair_io.hpp"
#include "arrdual/errors.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace arrdual;
using cli::PairFile;
using cli::QuadOptions;
using cli::Report;

namespace {

const char* kExample1Json = R"({
  "k": 1,
  "B": [["1", "1", "1", "0"],
        ["0", "-1", "-2", "1"]],
  "alpha": ["1", "1", "1"]
})";

PairFile example1_file() { return cli::parse_pair_file(kExample1Json); }

}  // namespace

TEST_CASE("pair file parsing") {
    PairFile p = example1_file();
    CHECK(p.k == 1);
    CHECK(p.B.rows() == 2);
    CHECK(p.B.cols() == 4);
    REQUIRE(p.alpha.size() == 3);
    CHECK(p.alpha[0] == 1);

    // round trip
    PairFile q = cli::parse_pair_file(cli::pair_file_to_json(p));
    CHECK(q.B == p.B);
    CHECK(q.alpha == p.alpha);

    CHECK_THROWS_AS(cli::parse_pair_file(R"({"k": 1, "B": [["1","1","1","0"],
        ["0","-1","-2","1"]], "alpha": ["1","1"]})"),
                    DimensionError);
}

TEST_CASE("digest is stable and content sensitive") {
    std::string text(kExample1Json);
    CHECK(cli::content_digest(text) == cli::content_digest(text));
    CHECK(cli::content_digest(text) != cli::content_digest(text + " "));
    CHECK(cli::content_digest(text).size() == 16);
}

TEST_CASE("info command") {
    Report r = cli::cmd_info(example1_file(), "digest");
    CHECK(r.pass == "pass");
    CHECK(r.results.at("betaPrimal") == 2);
    CHECK(r.results.at("betaDual") == 2);
    CHECK(r.results.at("admissible") == true);
    // report re-parses
    nlohmann::json reparsed = nlohmann::json::parse(r.to_json().dump());
    CHECK(reparsed.at("pass") == "pass");

    PairFile bad = example1_file();
    bad.B(0, 0) = 0;
    bad.B(1, 0) = 0;  // zero column
    Report rb = cli::cmd_info(bad, "digest");
    CHECK(rb.pass == "fail");
    CHECK(rb.results.at("admissible") == false);
}

TEST_CASE("matroid command") {
    Report r = cli::cmd_matroid(example1_file(), "digest", dualpair::Side::primal);
    CHECK(r.pass == "pass");
    CHECK(r.results.at("beta") == 2);
    CHECK(r.results.at("tutte").is_array());
    bool found_b10 = false;
    for (const auto& item : r.results.at("tutte"))
        if (item.at("i") == 1 && item.at("j") == 0) {
            CHECK(item.at("coeff") == 2);
            found_b10 = true;
        }
    CHECK(found_b10);
}

TEST_CASE("dual command emits C and detB") {
    Report r = cli::cmd_dual(example1_file(), "digest");
    CHECK(r.pass == "pass");
    CHECK(r.results.at("detB") == "1");
    CHECK(r.results.at("C").size() == 2);
    CHECK(r.results.at("minorIdentity").at("pass") == true);
}

TEST_CASE("chambers command") {
    Report r = cli::cmd_chambers(example1_file(), "digest", dualpair::Side::primal);
    CHECK(r.pass == "pass");
    CHECK(r.results.at("chamberCount") == 4);
    CHECK(r.results.at("boundedCount") == 2);
    for (const auto& ch : r.results.at("chambers")) {
        std::string signs = ch.at("signs");
        CHECK(signs.size() == 3);
        CHECK(signs.find_first_not_of("+-") == std::string::npos);
    }
}

TEST_CASE("betafn command") {
    Report r = cli::cmd_betafn(example1_file(), "digest", dualpair::Side::primal);
    CHECK(r.pass == "pass");
    double value = r.results.at("betaFunction");
    CHECK(value == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("periods command") {
    QuadOptions quad;
    quad.target = 1e-11;
    Report r = cli::cmd_periods(example1_file(), "digest", dualpair::Side::primal, quad);
    CHECK(r.pass == "pass");
    CHECK(r.results.at("beta") == 2);
    auto det = r.results.at("determinant");
    CHECK(det[0].get<double>() == doctest::Approx(-2.0 / 3.0).epsilon(1e-9));
    CHECK(r.results.at("entries").size() == 2);
}

TEST_CASE("verify command end to end") {
    QuadOptions quad;
    quad.tolerance = 1e-7;
    Report r = cli::cmd_verify(example1_file(), "digest", "all", quad);
    INFO(r.to_json().dump(2));
    CHECK(r.pass == "pass");
    const auto& checks = r.results.at("checks");
    CHECK(checks.contains("matroid"));
    CHECK(checks.contains("minors"));
    CHECK(checks.contains("plucker"));
    CHECK(checks.contains("weak"));
    CHECK(checks.contains("evaluation"));
    CHECK(checks.contains("main"));
    CHECK(checks.at("main").at("verdict") == "pass");
}

TEST_CASE("verify single check") {
    QuadOptions quad;
    Report r = cli::cmd_verify(example1_file(), "digest", "minors", quad);
    CHECK(r.pass == "pass");
    CHECK(r.results.at("checks").size() == 1);
}
