// motive-periods: period matrices, functional-equation verification, and
// motivic Galois dimensions for 1-motives over products of elliptic curves.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ellmot/io.hpp"
#include "ellmot/quadrature.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_schema = 2;
constexpr int exit_numeric = 3;

struct Options {
    std::string command;
    std::string input_path;
    std::string output_path;
    std::string format = "json";
    double tol_analytic = ellmot::tol::analytic;
    double tol_quadrature = ellmot::tol::quadrature;
};

std::uint64_t seed_from_env() {
    if (const char* env = std::getenv("MOTIVE_PERIODS_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 42;
}

nlohmann::json load_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ellmot::schema_error(path, "cannot open input file");
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ellmot::schema_error(path, std::string("malformed JSON: ") + e.what());
    }
}

// periods/verify accept either a bare motive object or {"motive": {...}}.
ellmot::OneMotiveSpec motive_of(const nlohmann::json& j) {
    if (j.is_object() && j.contains("motive")) {
        return ellmot::io::parse_motive(j["motive"], "motive");
    }
    return ellmot::io::parse_motive(j, "motive");
}

ellmot::DependenceProfile profile_of(const nlohmann::json& j, const ellmot::OneMotiveSpec& m) {
    if (!j.is_object() || !j.contains("profile")) {
        throw ellmot::schema_error("profile", "missing required field");
    }
    return ellmot::io::parse_profile(j["profile"], m, "profile");
}

void emit(const Options& opt, const std::string& payload) {
    if (opt.output_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(opt.output_path, std::ios::binary);
    if (!out) {
        throw ellmot::input_error("cannot open output file: " + opt.output_path);
    }
    out << payload;
}

int run(const Options& opt) {
    using namespace ellmot;
    const bool csv = opt.format == "csv";

    if (opt.command == "case-table") {
        const auto rows = case_table();
        emit(opt, csv ? io::case_table_csv(rows) : io::case_table_json(rows));
        return exit_ok;
    }

    const nlohmann::json input = load_input(opt.input_path);

    if (opt.command == "periods") {
        const OneMotiveSpec m = motive_of(input);
        const PeriodMatrix pm = full_period_matrix(m);
        emit(opt, csv ? io::period_matrix_csv(pm) : io::period_matrix_json(pm));
        return exit_ok;
    }
    if (opt.command == "verify") {
        const OneMotiveSpec m = motive_of(input);
        VerifyOptions vopt;
        vopt.tol_analytic = opt.tol_analytic;
        vopt.tol_quadrature = opt.tol_quadrature;
        vopt.seed = seed_from_env();
        const auto checks = verify_motive(m, vopt);
        emit(opt, csv ? io::check_results_csv(checks) : io::check_results_json(checks));
        if (!all_pass(checks)) {
            for (const auto& c : checks) {
                if (!c.pass) {
                    std::cerr << "verification failed: " << c.name << " residual "
                              << io::format_double(c.max_residual) << " > tolerance "
                              << io::format_double(c.tolerance) << "\n";
                }
            }
            return exit_numeric;
        }
        return exit_ok;
    }
    if (opt.command == "galois-dim") {
        const OneMotiveSpec m = motive_of(input);
        const DependenceProfile profile = profile_of(input, m);
        const GaloisDims dims = dim_galois(m, profile);
        const bool deficient = is_deficient(m, profile);
        emit(opt, csv ? io::galois_dims_csv(dims, deficient)
                      : io::galois_dims_json(dims, deficient));
        return exit_ok;
    }
    if (opt.command == "conjecture") {
        const OneMotiveSpec m = motive_of(input);
        const DependenceProfile profile = profile_of(input, m);
        const ConjectureReport report = conjecture_report(m, profile);
        emit(opt, csv ? io::conjecture_report_csv(report) : io::conjecture_report_json(report));
        return exit_ok;
    }
    if (opt.command == "validate-profile") {
        const OneMotiveSpec m = motive_of(input);
        const DependenceProfile profile = profile_of(input, m);
        const auto residuals = validate_profile(m, profile, opt.tol_quadrature);
        emit(opt, csv ? io::residuals_csv(residuals) : io::residuals_json(residuals));
        for (const auto& r : residuals) {
            if (r.flagged) {
                std::cerr << "declared relation " << r.relation_index << " on curve "
                          << r.curve + 1 << " has residual " << io::format_double(r.residual)
                          << "\n";
                return exit_numeric;
            }
        }
        return exit_ok;
    }
    throw ellmot::input_error("unknown command: " + opt.command);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"period matrices and motivic Galois dimensions of 1-motives "
                 "over products of elliptic curves"};
    app.require_subcommand(1);

    Options opt;
    const auto add_common = [&](CLI::App* sub, bool needs_input) {
        auto* in = sub->add_option("-i,--input", opt.input_path, "input JSON file");
        if (needs_input) {
            in->required();
        }
        sub->add_option("-o,--output", opt.output_path, "output file (default: stdout)");
        sub->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--tol-analytic", opt.tol_analytic, "tolerance for analytic laws");
        sub->add_option("--tol-quadrature", opt.tol_quadrature,
                        "tolerance for quadrature comparisons");
    };

    add_common(app.add_subcommand("periods", "assemble the full period matrix"), true);
    add_common(app.add_subcommand("verify", "run the functional-equation and oracle suites"),
               true);
    add_common(app.add_subcommand("galois-dim", "dimension of the motivic Galois group"), true);
    add_common(app.add_subcommand("case-table", "the r=n=s=1 dimension case table"), false);
    add_common(app.add_subcommand("conjecture", "both sides of the period-conjecture inequality"),
               true);
    add_common(app.add_subcommand("validate-profile",
                                  "numeric residuals of the declared relations"),
               true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    opt.command = app.get_subcommands().front()->get_name();

    try {
        return run(opt);
    } catch (const ellmot::schema_error& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return exit_schema;
    } catch (const ellmot::input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_schema;
    } catch (const ellmot::error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return exit_numeric;
    }
}
