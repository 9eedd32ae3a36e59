#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "g2moduli/classify.hpp"
#include "g2moduli/config.hpp"
#include "g2moduli/portrait.hpp"
#include "g2moduli/reports.hpp"
#include "g2moduli/schema.hpp"
#include "g2moduli/trajectory.hpp"
#include "g2moduli/verify.hpp"

namespace {

using namespace g2moduli;

std::ostream& open_out(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    return file;
}

void emit_validated(std::ostream& out, const nlohmann::json& doc, const std::string& schema) {
    std::string err;
    if (!validate_against_schema(doc, load_schema(schema), &err))
        throw std::runtime_error("internal: output violates " + schema + ": " + err);
    out << doc.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"invariant instanton families on the asymptotically conical "
                 "spinor-bundle background"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path,
                   "JSON config file (default: $G2MODULI_CONFIG, else built-in defaults)");

    auto* cmd_metric = app.add_subcommand("metric", "tabulate the metric profile as CSV");
    double r_min = 1.0, r_max = 10.0;
    int samples = 200;
    std::string metric_out = "-";
    cmd_metric->add_option("--r-min", r_min, "smallest radius (>= 1)");
    cmd_metric->add_option("--r-max", r_max, "largest radius");
    cmd_metric->add_option("--samples", samples, "number of rows");
    cmd_metric->add_option("--out", metric_out, "output file, - for stdout");

    auto* cmd_integrate =
        app.add_subcommand("integrate", "integrate one family member, emit CSV samples");
    std::string family_str = "tprime", traj_out = "-";
    double param = 0.0;
    double t0_flag = -1.0, t_max_flag = -1.0, tol_flag = -1.0;
    cmd_integrate->add_option("--family", family_str, "tgamma or tprime");
    cmd_integrate->add_option("--param", param, "family parameter")->required();
    cmd_integrate->add_option("--t0", t0_flag, "seed time (overrides config)");
    cmd_integrate->add_option("--t-max", t_max_flag, "horizon (overrides config)");
    cmd_integrate->add_option("--tol", tol_flag, "relative tolerance (overrides config)");
    cmd_integrate->add_option("--out", traj_out, "output file, - for stdout");

    auto* cmd_scan = app.add_subcommand("scan", "classify a parameter grid, emit JSON");
    std::string scan_family_str = "tprime", scan_out = "-";
    double from = -1.5, to = 1.5, step_param = 0.05;
    cmd_scan->add_option("--family", scan_family_str, "tgamma or tprime");
    cmd_scan->add_option("--from", from, "first parameter")->required();
    cmd_scan->add_option("--to", to, "last parameter")->required();
    cmd_scan->add_option("--step", step_param, "grid spacing")->required();
    cmd_scan->add_option("--out", scan_out, "output file, - for stdout");

    auto* cmd_boundary =
        app.add_subcommand("boundary", "bisect the moduli boundary inside a bracket");
    std::string bd_family_str = "tprime", bd_out = "-";
    std::vector<double> bracket;
    double tol_param = 1e-3;
    cmd_boundary->add_option("--family", bd_family_str, "tgamma or tprime");
    cmd_boundary->add_option("--bracket", bracket, "parameter bracket lo hi")
        ->expected(2)
        ->required();
    cmd_boundary->add_option("--tol", tol_param, "bracket width to stop at");
    cmd_boundary->add_option("--out", bd_out, "output file, - for stdout");

    auto* cmd_portrait =
        app.add_subcommand("portrait", "emit phase-portrait CSV/SVG figure files");
    std::string out_dir = "portrait";
    cmd_portrait->add_option("--out-dir", out_dir, "directory for the emitted files");

    auto* cmd_verify = app.add_subcommand("verify", "run the full invariant check suite");
    std::string verify_out;
    cmd_verify->add_option("--out", verify_out, "also write the JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg = load_config(config_path.empty()
                                        ? std::nullopt
                                        : std::optional<std::string>(config_path));
        cfg.validate();

        if (*cmd_metric) {
            std::ofstream file;
            write_metric_csv(open_out(metric_out, file), r_min, r_max, samples, cfg.quad_tol);
            return 0;
        }

        if (*cmd_integrate) {
            if (t0_flag > 0.0) cfg.t0 = t0_flag;
            if (t_max_flag > 0.0) cfg.t_max = t_max_flag;
            if (tol_flag > 0.0) cfg.rtol = tol_flag;
            cfg.validate();
            const Family family = family_from_name(family_str);
            const Trajectory traj = integrate_instanton(
                make_jet(family, param), cfg.t0, cfg.t_max, cfg.control(), cfg.events());
            std::ofstream file;
            write_trajectory_csv(open_out(traj_out, file), traj);
            std::cerr << "termination: " << termination_name(traj.termination)
                      << ", samples: " << traj.samples.size()
                      << ", accepted steps: " << traj.stats.steps
                      << ", rejected: " << traj.stats.rejected << "\n";
            return 0;
        }

        if (*cmd_scan) {
            const Family family = family_from_name(scan_family_str);
            const std::vector<ClassificationRecord> records =
                scan_family(family, from, to, step_param, cfg);
            std::ofstream file;
            emit_validated(open_out(scan_out, file), scan_to_json(records),
                           "scan.schema.json");
            return 0;
        }

        if (*cmd_boundary) {
            const Family family = family_from_name(bd_family_str);
            const BoundaryResult res =
                locate_boundary(family, bracket[0], bracket[1], tol_param, cfg);
            std::ofstream file;
            emit_validated(open_out(bd_out, file), boundary_to_json(res, family, tol_param),
                           "boundary.schema.json");
            return 0;
        }

        if (*cmd_portrait) {
            const PortraitPaths paths = emit_portrait(out_dir, cfg);
            std::cout << paths.field_csv << "\n"
                      << paths.streamlines_csv << "\n"
                      << paths.portrait_svg << "\n"
                      << paths.fan_csv << "\n"
                      << paths.fan_svg << "\n";
            return 0;
        }

        if (*cmd_verify) {
            const std::vector<CheckResult> checks = run_verify_suite(cfg);
            bool all = true;
            for (const CheckResult& c : checks) {
                all = all && c.pass;
                std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.id
                          << "  (value = " << c.value << ", threshold = " << c.threshold
                          << ")\n      " << c.detail << "\n";
            }
            std::cout << (all ? "all checks passed" : "CHECK FAILURES PRESENT") << "\n";
            if (!verify_out.empty()) {
                std::ofstream file;
                emit_validated(open_out(verify_out, file), verify_to_json(checks),
                               "verify.schema.json");
            }
            return all ? 0 : 1;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
