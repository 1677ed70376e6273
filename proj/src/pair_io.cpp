#include "arrdual/pair_io.hpp"

#include "arrdual/errors.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace arrdual::cli {

using dualpair::Side;
using exactla::ExactMatrix;
using exactla::Rational;
using matroid::contains;
using matroid::Mask;

PairFile parse_pair_file(const std::string& text) {
    json doc = json::parse(text);
    PairFile p;
    p.k = doc.at("k").get<int>();
    std::vector<std::vector<std::string>> rows =
        doc.at("B").get<std::vector<std::vector<std::string>>>();
    p.B = ExactMatrix::from_strings(rows);
    if (doc.contains("alpha")) {
        for (const auto& s : doc.at("alpha").get<std::vector<std::string>>())
            p.alpha.push_back(exactla::parse_rational(s));
        if (static_cast<int>(p.alpha.size()) != p.B.cols() - 1)
            throw DimensionError("alpha must list one weight per affine hyperplane");
    }
    return p;
}

PairFile load_pair_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open pair file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_pair_file(buf.str());
}

std::string pair_file_to_json(const PairFile& p) {
    json doc;
    doc["k"] = p.k;
    doc["B"] = p.B.to_strings();
    json alpha = json::array();
    for (const auto& a : p.alpha) alpha.push_back(exactla::to_string(a));
    doc["alpha"] = alpha;
    return doc.dump(2);
}

std::string content_digest(const std::string& bytes) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

json rational_json(const Rational& r) { return exactla::to_string(r); }

json matrix_json(const ExactMatrix& m) { return m.to_strings(); }

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json tutte_json(const matroid::TuttePolynomial& t) {
    json out = json::array();
    for (const auto& [ij, c] : t.coeff)
        out.push_back({{"i", ij.first}, {"j", ij.second}, {"coeff", c}});
    return out;
}

json Report::to_json() const {
    return json{{"command", command},
                {"inputsDigest", inputs_digest},
                {"results", results},
                {"pass", pass}};
}

namespace {

std::vector<int> mask_list(Mask m, int n) {
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (contains(m, i)) out.push_back(i);
    return out;
}

dualpair::DualPair build(const PairFile& p) {
    return dualpair::dualize(dualpair::make_pair(p.B, p.k));
}

periods::WeightSystem weights_of(const PairFile& p) {
    if (p.alpha.empty()) throw WeightDomainError("pair file carries no weights");
    return periods::make_weights(p.alpha);
}

json comparison_json(const periods::ComparisonReport& r, double tol) {
    return json{{"lhs", complex_json(r.lhs)},
                {"modulusRatio", r.modulus_ratio},
                {"phaseDiff", r.phase_diff},
                {"phaseDiffModPi", r.phase_diff_mod_pi},
                {"quadErrorEstimate", r.quad_error},
                {"tolerance", tol},
                {"verdict", r.pass(tol) ? "pass" : "fail"}};
}

}  // namespace

Report cmd_info(const PairFile& p, const std::string& digest) {
    Report report;
    report.command = "info";
    report.inputs_digest = digest;
    try {
        dualpair::DualPair d = build(p);
        matroid::Matroid mp = dualpair::side_matroid(d, Side::primal);
        matroid::Matroid md = dualpair::side_matroid(d, Side::dual);
        long long beta_primal = matroid::beta_invariant(mp);
        long long beta_dual = matroid::beta_invariant(md);
        report.results = json{{"k", d.primal.k},
                              {"n", d.primal.n},
                              {"N", d.primal.N},
                              {"admissible", true},
                              {"rankPrimal", mp.rank()},
                              {"rankDual", md.rank()},
                              {"betaPrimal", beta_primal},
                              {"betaDual", beta_dual},
                              {"betasEqual", beta_primal == beta_dual}};
        report.pass = beta_primal == beta_dual ? "pass" : "fail";
    } catch (const InadmissibleError& e) {
        report.results = json{{"admissible", false},
                              {"error", e.what()},
                              {"columnA", e.column_a},
                              {"columnB", e.column_b},
                              {"side", e.dual_side ? "dual" : "primal"}};
        report.pass = "fail";
    } catch (const NotAPairError& e) {
        report.results = json{{"admissible", false}, {"error", e.what()}};
        report.pass = "fail";
    }
    return report;
}

Report cmd_matroid(const PairFile& p, const std::string& digest, Side side) {
    Report report;
    report.command = "matroid";
    report.inputs_digest = digest;
    dualpair::DualPair d = build(p);
    matroid::Matroid m = dualpair::side_matroid(d, side);
    const int n = m.size();

    json flats = json::array();
    for (const auto& f : matroid::flats(m))
        flats.push_back({{"flat", mask_list(f.flat, n)},
                         {"length", f.length},
                         {"width", f.width},
                         {"volume", f.volume},
                         {"spacious", f.spacious}});
    json pars = json::array();
    for (const auto& q : matroid::parallelisms(m))
        pars.push_back({{"flat", mask_list(q.flat, n)},
                        {"a", q.a},
                        {"b", q.b},
                        {"width", q.width},
                        {"volume", q.volume}});
    matroid::DualityReport suite = matroid::verify_duality_suite(m);
    json checks = json::array();
    for (const auto& c : suite.checks)
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});

    report.results = json{{"side", side_name(side)},
                          {"rank", m.rank()},
                          {"beta", matroid::beta_invariant(m)},
                          {"tutte", tutte_json(matroid::tutte(m))},
                          {"flats", flats},
                          {"parallelisms", pars},
                          {"dualityChecks", checks}};
    report.pass = suite.all_pass() ? "pass" : "fail";
    return report;
}

Report cmd_dual(const PairFile& p, const std::string& digest) {
    Report report;
    report.command = "dual";
    report.inputs_digest = digest;
    dualpair::DualPair d = build(p);
    dualpair::CheckReport minors = dualpair::check_minor_identity(d);
    report.results = json{{"k", d.primal.k},
                          {"B", matrix_json(d.primal.B)},
                          {"C", matrix_json(d.C)},
                          {"detB", rational_json(d.detB)},
                          {"minorIdentity", json{{"pass", minors.pass}, {"detail", minors.detail}}}};
    report.pass = minors.pass ? "pass" : "fail";
    return report;
}

Report cmd_chambers(const PairFile& p, const std::string& digest, Side side) {
    Report report;
    report.command = "chambers";
    report.inputs_digest = digest;
    dualpair::DualPair d = build(p);
    geometry::AffineArrangement arr = geometry::affine_forms(d, side);
    geometry::ChamberComplex cc = geometry::chambers(arr);

    json chambers = json::array();
    for (const auto& ch : cc.chambers) {
        json vertices = json::array();
        for (int vid : ch.vertex_ids)
            vertices.push_back(mask_list(cc.vertices[vid].flat, arr.hyperplanes()));
        json interior = json::array();
        for (const auto& x : ch.interior) interior.push_back(exactla::to_string(x));
        chambers.push_back({{"signs", ch.sign_string(arr.hyperplanes())},
                            {"bounded", ch.bounded},
                            {"vertices", vertices},
                            {"interiorPoint", interior}});
    }
    report.results = json{{"side", side_name(side)},
                          {"dimension", arr.dim},
                          {"chamberCount", cc.chambers.size()},
                          {"boundedCount", cc.bounded_ids.size()},
                          {"beta", matroid::beta_invariant(arr.mat)},
                          {"chambers", chambers}};
    report.pass = "pass";  // the bounded count is checked during enumeration
    return report;
}

Report cmd_betafn(const PairFile& p, const std::string& digest, Side side) {
    Report report;
    report.command = "betafn";
    report.inputs_digest = digest;
    dualpair::DualPair d = build(p);
    periods::WeightSystem w = weights_of(p);
    geometry::AffineArrangement arr = geometry::affine_forms(d, side);
    double log_b = periods::log_beta_function(arr, w);
    report.results = json{{"side", side_name(side)},
                          {"logBetaFunction", log_b},
                          {"betaFunction", std::exp(log_b)}};
    report.pass = "pass";
    return report;
}

Report cmd_periods(const PairFile& p, const std::string& digest, Side side,
                   const QuadOptions& quad) {
    Report report;
    report.command = "periods";
    report.inputs_digest = digest;
    dualpair::DualPair d = build(p);
    periods::WeightSystem w = weights_of(p);
    try {
        periods::SideData sd = periods::build_side(d, side, w);
        periods::BranchAssignment ba = periods::special_branches(sd, w);
        periods::PeriodMatrix pm = periods::period_matrix(sd, w, ba, quad.spec());
        periods::DetResult det = periods::det_pm(pm);

        json entries = json::array();
        for (int s = 0; s < pm.beta; ++s) {
            json row = json::array();
            for (int t = 0; t < pm.beta; ++t) row.push_back(complex_json(pm.at(s, t)));
            entries.push_back(row);
        }
        json bases = json::array();
        for (const auto& b : sd.bases) bases.push_back(b.hyperplanes);
        json bijection = json::array();
        for (int s = 0; s < pm.beta; ++s)
            bijection.push_back(
                json::array({sd.bases[s].hyperplanes,
                             sd.cc.chambers[pm.row_chambers[s]].sign_string(sd.arr.hyperplanes())}));
        json criticals = json::array();
        for (const auto& [key, theta] : ba.theta_pi) {
            auto [j, flat] = key;
            criticals.push_back(
                {{"j", j},
                 {"edgeFlat", mask_list(flat, sd.arr.hyperplanes())},
                 {"thetaOverPi", theta},
                 {"value", complex_json(periods::critical_value(sd, w, ba, j, flat))}});
        }
        report.results =
            json{{"side", side_name(side)},
                 {"beta", pm.beta},
                 {"bases", bases},
                 {"bijection", bijection},
                 {"entries", entries},
                 {"determinant", complex_json(det.value)},
                 {"conditionEstimate", det.condition},
                 {"maxRelativeError", pm.max_error()},
                 {"logBetaFunction", periods::log_beta_function(sd.arr, w)},
                 {"criticalValues", criticals},
                 {"quad", json{{"degree", quad.degree},
                               {"maxSubdivisions", quad.subdivisions},
                               {"targetRelative", quad.target}}}};
        report.pass = "pass";
    } catch (const AccuracyError& e) {
        report.results = json{{"error", e.what()}, {"achievedError", e.achieved}};
        report.pass = "fail";
    }
    return report;
}

Report cmd_verify(const PairFile& p, const std::string& digest, const std::string& which,
                  const QuadOptions& quad) {
    Report report;
    report.command = "verify";
    report.inputs_digest = digest;
    dualpair::DualPair d = build(p);

    json checks = json::object();
    bool all_pass = true;
    auto want = [&](const char* name) { return which == name || which == "all"; };

    if (want("matroid")) {
        matroid::DualityReport suite =
            matroid::verify_duality_suite(dualpair::side_matroid(d, Side::primal));
        json items = json::array();
        for (const auto& c : suite.checks)
            items.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        checks["matroid"] = items;
        all_pass = all_pass && suite.all_pass();
    }
    if (want("minors")) {
        dualpair::CheckReport r = dualpair::check_minor_identity(d);
        checks["minors"] = json{{"pass", r.pass}, {"detail", r.detail}};
        all_pass = all_pass && r.pass;
    }
    if (want("plucker")) {
        dualpair::PluckerVector primal = dualpair::plucker(d, Side::primal);
        dualpair::PluckerVector dual = dualpair::plucker(d, Side::dual);
        bool match = dualpair::projectively_equal(dualpair::delta(primal), dual);
        bool involution = dualpair::projectively_equal(dualpair::delta(dualpair::delta(primal)),
                                                       primal);
        checks["plucker"] = json{{"deltaMatchesDual", match}, {"doubleDelta", involution}};
        all_pass = all_pass && match && involution;
    }
    if (want("weak")) {
        matroid::Matroid m = dualpair::side_matroid(d, Side::primal);
        bool weak_ok = true;
        int tested = 0;
        for (Mask x = 1; x < m.full_mask() && weak_ok; ++x) {
            if (!m.is_flat(x)) continue;
            ++tested;
            weak_ok = dualpair::weak_localize(d, x).all_pass();
        }
        checks["weak"] = json{{"pass", weak_ok}, {"flatsTested", tested}};
        all_pass = all_pass && weak_ok;
    }
    if (want("evaluation")) {
        if (p.alpha.empty()) {
            checks["evaluation"] = json{{"pass", false}, {"detail", "no weights in pair file"}};
            all_pass = false;
        } else {
            periods::WeightSystem w = weights_of(p);
            json sides = json::object();
            for (Side side : {Side::primal, Side::dual}) {
                try {
                    periods::SideData sd = periods::build_side(d, side, w);
                    periods::BranchAssignment ba = periods::special_branches(sd, w);
                    periods::ComparisonReport r =
                        periods::verify_evaluation(sd, w, ba, quad.spec());
                    sides[side_name(side)] = comparison_json(r, quad.tolerance);
                    all_pass = all_pass && r.pass(quad.tolerance);
                } catch (const AccuracyError& e) {
                    sides[side_name(side)] =
                        json{{"verdict", "fail"}, {"error", e.what()}, {"achieved", e.achieved}};
                    all_pass = false;
                }
            }
            checks["evaluation"] = sides;
        }
    }
    if (want("main")) {
        if (p.alpha.empty()) {
            checks["main"] = json{{"pass", false}, {"detail", "no weights in pair file"}};
            all_pass = false;
        } else {
            periods::WeightSystem w = weights_of(p);
            try {
                periods::MainReport r = periods::verify_main(d, w, quad.spec());
                json body = comparison_json(r.comparison, quad.tolerance);
                body["detPrimal"] = complex_json(r.det_primal);
                body["detDual"] = complex_json(r.det_dual);
                checks["main"] = body;
                all_pass = all_pass && r.comparison.pass(quad.tolerance);
            } catch (const AccuracyError& e) {
                checks["main"] =
                    json{{"verdict", "fail"}, {"error", e.what()}, {"achieved", e.achieved}};
                all_pass = false;
            }
        }
    }
    if (which == "all" && !p.alpha.empty()) {
        // determinant modulus must be stable under rematching the bijection
        periods::WeightSystem w = weights_of(p);
        periods::SideData sd = periods::build_side(d, Side::primal, w);
        if (sd.beta() > 1) {
            periods::BranchAssignment ba = periods::special_branches(sd, w);
            std::mt19937_64 rng(quad.seed);
            double base = std::abs(
                periods::det_pm(periods::period_matrix(sd, w, ba, quad.spec())).value);
            bool stable = true;
            for (int rep = 0; rep < 2 && stable; ++rep) {
                auto matching =
                    betakbc::random_chamber_matching(sd.arr, sd.cc, sd.bases, rng);
                double alt = std::abs(
                    periods::det_pm(
                        periods::period_matrix_with_matching(sd, w, ba, quad.spec(), matching))
                        .value);
                stable = std::abs(alt - base) <= 1e-8 * std::max(base, 1e-12);
            }
            checks["rematchInvariance"] = json{{"pass", stable}, {"seed", quad.seed}};
            all_pass = all_pass && stable;
        } else {
            checks["rematchInvariance"] = json{{"pass", true}, {"detail", "beta <= 1"}};
        }
    }

    report.results = json{{"which", which}, {"checks", checks}};
    report.pass = all_pass ? "pass" : "fail";
    return report;
}

}  // namespace arrdual::cli
