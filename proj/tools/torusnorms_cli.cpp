// Command line front end: norms, measures, sharp constants, corpus
// generation, inequality verification and sharpness scans.
//
// Exit codes: 0 success / all checks pass, 1 verification failure,
// 2 usage or input errors.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "torusnorms/checks.hpp"
#include "torusnorms/norms.hpp"
#include "torusnorms/polynomial_json.hpp"
#include "torusnorms/report.hpp"

namespace {

using namespace torusnorms;

Polynomial load_polynomial(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open polynomial file " + path);
    nlohmann::json j;
    in >> j;
    return polynomial_from_json(j);
}

void print_norm_result(const char* name, const NormResult& r) {
    std::printf("%-16s %s\n", name, format_g17(r.value).c_str());
    std::printf("%-16s %s\n", "method", to_string(r.method));
    std::printf("%-16s %s\n", "error-estimate", format_g17(r.error_estimate).c_str());
    if (!r.converged) std::printf("%-16s %s\n", "converged", "false");
    if (r.warning) std::printf("%-16s %s\n", "warning", "true");
    if (r.clamped_nodes > 0)
        std::printf("%-16s %ld\n", "clamped-nodes", r.clamped_nodes);
}

/// "key=value" pairs from repeated --grid flags into a params map.
std::map<std::string, double> parse_grid(const std::vector<std::string>& entries) {
    std::map<std::string, double> params;
    for (const std::string& e : entries) {
        auto eq = e.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::runtime_error("bad --grid entry (want key=value): " + e);
        params[e.substr(0, eq)] = std::stod(e.substr(eq + 1));
    }
    return params;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polynomial norms, Mahler measures and sharp constants on the n-torus"};
    app.require_subcommand(1);

    std::string poly_path, corpus_path, out_path, report_path;
    std::string theorem, family, kind = "general", law = "complex-gaussian";
    std::string format = "json";
    double p_val = 2.0, q_val = 0.0, alpha = 1.0, theta = -1.0, tol = 0.0;
    int m_val = 1, n_vars = 1, deg = 3, count = 10, threads = 0;
    std::uint64_t seed = 1;
    std::vector<std::string> grid;

    CLI::App* sc_norm = app.add_subcommand("norm", "L^p norm of a polynomial");
    sc_norm->add_option("--poly", poly_path, "polynomial JSON file")->required();
    sc_norm->add_option("--p", p_val, "exponent p > 0")->required();
    sc_norm->add_option("--tol", tol, "relative quadrature tolerance");

    CLI::App* sc_mahler = app.add_subcommand("mahler", "Mahler measure of a polynomial");
    sc_mahler->add_option("--poly", poly_path, "polynomial JSON file")->required();

    CLI::App* sc_orlicz =
        app.add_subcommand("orlicz", "Luxemburg norm for psi_alpha(t) = exp(t^alpha) - 1");
    sc_orlicz->add_option("--poly", poly_path, "polynomial JSON file")->required();
    sc_orlicz->add_option("--alpha", alpha, "exponent alpha in (0, 1]")->required();

    CLI::App* sc_lambda =
        app.add_subcommand("lambda", "sharp norm-to-measure constant, both forms");
    sc_lambda->add_option("--p", p_val, "exponent p > 0")->required();
    sc_lambda->add_option("--m", m_val, "degree m >= 0")->required();

    CLI::App* sc_corpus = app.add_subcommand("corpus", "generate a seeded polynomial corpus");
    sc_corpus->add_option("--seed", seed, "master seed");
    sc_corpus->add_option("--n", n_vars, "number of variables");
    sc_corpus->add_option("--deg", deg, "maximum total degree");
    sc_corpus->add_option("--count", count, "number of polynomials");
    sc_corpus->add_option("--kind", kind, "general | homogeneous | multiaffine");
    sc_corpus->add_option("--law", law, "complex-gaussian | steinhaus | rademacher");
    sc_corpus->add_option("--out", out_path, "output JSON file")->required();

    CLI::App* sc_verify = app.add_subcommand("verify", "check one inequality over a corpus");
    sc_verify->add_option("--theorem", theorem, "theorem id")->required();
    sc_verify->add_option("--corpus", corpus_path, "corpus JSON file")->required();
    CLI::Option* vp = sc_verify->add_option("--p", p_val, "exponent p");
    CLI::Option* vq = sc_verify->add_option("--q", q_val, "exponent q");
    CLI::Option* vt = sc_verify->add_option("--theta", theta, "interpolation theta");
    sc_verify->add_option("--report", report_path, "write the full report here");
    sc_verify->add_option("--format", format, "report format: json | csv");
    sc_verify->add_option("--threads", threads, "worker threads (default: env/all cores)");

    CLI::App* sc_scan = app.add_subcommand("scan", "sharpness scan over a family");
    sc_scan->add_option("--family", family, "kwapien | weissler-violation | arestov-sharp")
        ->required();
    sc_scan->add_option("--grid", grid, "family parameters as key=value (repeatable)");
    sc_scan->add_option("--out", out_path, "write the table here instead of stdout");
    sc_scan->add_option("--format", format, "output format: json | csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sc_norm->parsed()) {
            Polynomial poly = load_polynomial(poly_path);
            QuadratureSpec spec = QuadratureSpec::defaults_for(poly.variables());
            if (tol > 0.0) spec.rel_tol = tol;
            print_norm_result("norm", lp_norm(p_val, poly, spec));
        } else if (sc_mahler->parsed()) {
            Polynomial poly = load_polynomial(poly_path);
            print_norm_result("mahler", mahler_measure(poly));
        } else if (sc_orlicz->parsed()) {
            Polynomial poly = load_polynomial(poly_path);
            OrliczSpec os;
            os.alpha = alpha;
            print_norm_result("orlicz", orlicz_luxemburg_norm(poly, os));
        } else if (sc_lambda->parsed()) {
            LambdaValue lv = arestov_lambda(p_val, m_val);
            std::printf("%-18s %s\n", "gamma-form", format_g17(lv.gamma_form).c_str());
            std::printf("%-18s %s\n", "integral-form", format_g17(lv.integral_form).c_str());
            std::printf("%-18s %s\n", "log-gamma-form", format_g17(lv.log_gamma_form).c_str());
            std::printf("%-18s %s\n", "log-integral-form",
                        format_g17(lv.log_integral_form).c_str());
            std::printf("%-18s %s\n", "log-gap", format_g17(lv.consistency_gap).c_str());
            if (!lv.integral_converged) std::printf("%-18s %s\n", "converged", "false");
        } else if (sc_corpus->parsed()) {
            CorpusSpec cs;
            cs.seed = seed;
            cs.n = n_vars;
            cs.max_total_degree = deg;
            cs.count = count;
            cs.kind = kind;
            cs.coefficient_law = law;
            Corpus c = generate_corpus(cs);
            save_corpus(c, out_path);
            std::printf("wrote %d polynomials to %s\n", count, out_path.c_str());
        } else if (sc_verify->parsed()) {
            Corpus c = load_corpus(corpus_path);
            std::map<std::string, double> params;
            if (*vp) params["p"] = p_val;
            if (*vq) params["q"] = q_val;
            if (*vt) params["theta"] = theta;
            MetricsCache cache;
            CheckRun run = check_inequality(theorem, c, params, &cache, threads);
            std::size_t failed = 0;
            for (const TheoremCheck& tc : run.checks)
                if (!tc.skipped && !tc.pass) ++failed;
            std::printf("theorem      %s\n", run.theorem_id.c_str());
            std::printf("params       %s\n", params_to_string(run.params).c_str());
            std::printf("corpus       %zu members\n", run.corpus_size);
            std::printf("checked      %zu\n", run.checked);
            std::printf("skipped      %zu\n", run.skipped);
            std::printf("records      %zu (%zu failed)\n", run.checks.size(), failed);
            std::printf("result       %s\n", run.all_pass ? "PASS" : "FAIL");
            if (run.all_skipped) std::printf("note         every member was skipped\n");
            if (!report_path.empty()) emit_report(run, format, report_path);
            return run.all_pass ? 0 : 1;
        } else if (sc_scan->parsed()) {
            ScanTable t = sharpness_scan(family, parse_grid(grid));
            std::string payload =
                format == "json" ? scan_to_json(t).dump(2) + "\n" : scan_to_csv(t);
            if (out_path.empty()) {
                std::fputs(payload.c_str(), stdout);
            } else {
                std::ofstream out(out_path, std::ios::binary);
                if (!out) throw std::runtime_error("cannot open " + out_path);
                out << payload;
            }
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
