#include "arrdual/errors.hpp"
#include "arrdual/pair_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using arrdual::cli::PairFile;
using arrdual::cli::QuadOptions;
using arrdual::cli::Report;

struct CommonArgs {
    std::string file;
    std::string side = "primal";
    bool json_only = false;
    QuadOptions quad;
};

arrdual::dualpair::Side parse_side(const std::string& s) {
    if (s == "primal") return arrdual::dualpair::Side::primal;
    if (s == "dual") return arrdual::dualpair::Side::dual;
    throw CLI::ValidationError("--side must be primal or dual");
}

void add_common(CLI::App* cmd, CommonArgs& args, bool with_side, bool with_quad) {
    cmd->add_option("file", args.file, "pair file (JSON)")->required();
    if (with_side)
        cmd->add_option("--side", args.side, "primal or dual")
            ->check(CLI::IsMember({"primal", "dual"}));
    cmd->add_flag("--json", args.json_only, "emit the JSON report only");
    if (with_quad) {
        cmd->add_option("--quad-degree", args.quad.degree, "quadrature degree per direction");
        cmd->add_option("--quad-subdiv", args.quad.subdivisions, "maximum refinement depth");
        cmd->add_option("--quad-target", args.quad.target, "relative quadrature target");
        cmd->add_option("--tol", args.quad.tolerance, "verification tolerance");
        cmd->add_option("--seed", args.quad.seed, "seed for randomized checks");
    }
}

int emit(const Report& report, bool json_only) {
    std::cout << report.to_json().dump(2) << "\n";
    if (!json_only) std::cerr << "[" << report.command << "] " << report.pass << "\n";
    return report.pass == "fail" ? 1 : 0;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw arrdual::Error("cannot open pair file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted hyperplane arrangement duality toolkit"};
    app.require_subcommand(1);

    CommonArgs info_args, matroid_args, dual_args, chambers_args, betafn_args, periods_args,
        verify_args;
    std::string which = "all";

    add_common(app.add_subcommand("info", "dimensions, admissibility, beta on both sides"),
               info_args, false, false);
    add_common(app.add_subcommand("matroid", "Tutte polynomial, flats, parallelisms, duality"),
               matroid_args, true, false);
    add_common(app.add_subcommand("dual", "annihilator matrix C, det of the completion"),
               dual_args, false, false);
    add_common(app.add_subcommand("chambers", "chamber decomposition of one side"), chambers_args,
               true, false);
    add_common(app.add_subcommand("betafn", "beta function of the weighted arrangement"),
               betafn_args, true, false);
    add_common(app.add_subcommand("periods", "period matrix, determinant, gamma-side data"),
               periods_args, true, true);
    CLI::App* verify = app.add_subcommand("verify", "run verification checks");
    add_common(verify, verify_args, false, true);
    verify->add_option("--which", which, "matroid|minors|plucker|weak|evaluation|main|all")
        ->check(CLI::IsMember({"matroid", "minors", "plucker", "weak", "evaluation", "main",
                               "all"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("info")) {
            std::string bytes = slurp(info_args.file);
            return emit(arrdual::cli::cmd_info(arrdual::cli::parse_pair_file(bytes),
                                               arrdual::cli::content_digest(bytes)),
                        info_args.json_only);
        }
        if (app.got_subcommand("matroid")) {
            std::string bytes = slurp(matroid_args.file);
            return emit(arrdual::cli::cmd_matroid(arrdual::cli::parse_pair_file(bytes),
                                                  arrdual::cli::content_digest(bytes),
                                                  parse_side(matroid_args.side)),
                        matroid_args.json_only);
        }
        if (app.got_subcommand("dual")) {
            std::string bytes = slurp(dual_args.file);
            return emit(arrdual::cli::cmd_dual(arrdual::cli::parse_pair_file(bytes),
                                               arrdual::cli::content_digest(bytes)),
                        dual_args.json_only);
        }
        if (app.got_subcommand("chambers")) {
            std::string bytes = slurp(chambers_args.file);
            return emit(arrdual::cli::cmd_chambers(arrdual::cli::parse_pair_file(bytes),
                                                   arrdual::cli::content_digest(bytes),
                                                   parse_side(chambers_args.side)),
                        chambers_args.json_only);
        }
        if (app.got_subcommand("betafn")) {
            std::string bytes = slurp(betafn_args.file);
            return emit(arrdual::cli::cmd_betafn(arrdual::cli::parse_pair_file(bytes),
                                                 arrdual::cli::content_digest(bytes),
                                                 parse_side(betafn_args.side)),
                        betafn_args.json_only);
        }
        if (app.got_subcommand("periods")) {
            std::string bytes = slurp(periods_args.file);
            return emit(arrdual::cli::cmd_periods(arrdual::cli::parse_pair_file(bytes),
                                                  arrdual::cli::content_digest(bytes),
                                                  parse_side(periods_args.side),
                                                  periods_args.quad),
                        periods_args.json_only);
        }
        if (app.got_subcommand("verify")) {
            std::string bytes = slurp(verify_args.file);
            return emit(arrdual::cli::cmd_verify(arrdual::cli::parse_pair_file(bytes),
                                                 arrdual::cli::content_digest(bytes), which,
                                                 verify_args.quad),
                        verify_args.json_only);
        }
    } catch (const arrdual::Error& e) {
        std::cout << nlohmann::json{{"error", e.what()}}.dump(2) << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
