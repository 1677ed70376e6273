#pragma once

#include "arrdual/dual_pair.hpp"
#include "arrdual/periods.hpp"

#include <json.hpp>

#include <complex>
#include <string>
#include <vector>

namespace arrdual::cli {

using nlohmann::json;

// Input file: {"k": int, "B": [[rational-string, ...], ...],
//              "alpha": [rational-string, ...]} with one weight per affine
// hyperplane (alpha length = columns of B minus one).
struct PairFile {
    int k = 0;
    exactla::ExactMatrix B;
    std::vector<exactla::Rational> alpha;
};

PairFile parse_pair_file(const std::string& text);
PairFile load_pair_file(const std::string& path);
std::string pair_file_to_json(const PairFile& p);

// FNV-1a 64 over the raw input bytes, rendered as hex.
std::string content_digest(const std::string& bytes);

json rational_json(const exactla::Rational& r);
json matrix_json(const exactla::ExactMatrix& m);
json complex_json(std::complex<double> z);
json tutte_json(const matroid::TuttePolynomial& t);

struct Report {
    std::string command;
    std::string inputs_digest;
    json results;
    std::string pass = "not-applicable";  // pass | fail | not-applicable

    json to_json() const;
    bool ok() const { return pass != "fail"; }
};

struct QuadOptions {
    int degree = 32;
    int subdivisions = 6;
    double target = 1e-10;
    double tolerance = 1e-6;
    unsigned long long seed = 12345;

    periods::QuadSpec spec() const { return {degree, subdivisions, target}; }
};

Report cmd_info(const PairFile& p, const std::string& digest);
Report cmd_matroid(const PairFile& p, const std::string& digest, dualpair::Side side);
Report cmd_dual(const PairFile& p, const std::string& digest);
Report cmd_chambers(const PairFile& p, const std::string& digest, dualpair::Side side);
Report cmd_betafn(const PairFile& p, const std::string& digest, dualpair::Side side);
Report cmd_periods(const PairFile& p, const std::string& digest, dualpair::Side side,
                   const QuadOptions& quad);
Report cmd_verify(const PairFile& p, const std::string& digest, const std::string& which,
                  const QuadOptions& quad);

}  // namespace arrdual::cli
