// Command-line harness for the verification suite: runs checks, prints
// homology matrices and winding numbers, exports the compactification
// profile. Exit codes: 0 all pass, 1 a check failed, 2 usage/config/IO error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "twistlab/suite.hpp"

namespace {

using twistlab::suite::SuiteConfig;
using twistlab::verify::VerificationReport;

void emit_reports(const SuiteConfig& cfg, const std::vector<VerificationReport>& reports) {
    std::string payload;
    if (cfg.format == SuiteConfig::Format::json) {
        payload = twistlab::suite::suite_json(reports).dump(2);
        payload += "\n";
    } else {
        payload = twistlab::suite::suite_csv(reports);
    }
    if (cfg.output.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output path: " + cfg.output);
    }
    out << payload;
    if (!out) {
        throw std::runtime_error("write failed: " + cfg.output);
    }
}

int run_verify_all(const SuiteConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<VerificationReport> reports;
    for (const auto& check : twistlab::suite::check_registry()) {
        reports.push_back(check.run(cfg));
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    emit_reports(cfg, reports);

    std::size_t failed = 0;
    std::string first_failure;
    for (const auto& r : reports) {
        if (!r.pass) {
            ++failed;
            if (first_failure.empty()) first_failure = r.name;
        }
    }
    std::cerr << "checks: " << reports.size() << "  passed: " << reports.size() - failed
              << "  failed: " << failed << "  wall_time_ms: " << ms << "\n";
    if (failed > 0) {
        std::cerr << "first failing check: " << first_failure << "\n";
        return 1;
    }
    return 0;
}

int run_single_check(const std::string& name, const SuiteConfig& cfg) {
    const auto* check = twistlab::suite::find_check(name);
    if (check == nullptr) {
        std::cerr << "unknown check '" << name << "'; valid names:\n";
        for (const auto& c : twistlab::suite::check_registry()) {
            std::cerr << "  " << c.name << "\n";
        }
        return 2;
    }
    const VerificationReport report = check->run(cfg);
    emit_reports(cfg, {report});
    return report.pass ? 0 : 1;
}

int run_degree(const std::string& name, const SuiteConfig& cfg) {
    const auto* entry = twistlab::suite::find_map(name);
    if (entry == nullptr) {
        std::cerr << "unknown map '" << name << "'; valid names:\n";
        for (const auto& m : twistlab::suite::map_registry()) {
            std::cerr << "  " << m.name << " - " << m.description << "\n";
        }
        return 2;
    }
    const auto matrix =
        twistlab::topo::homology_matrix(entry->map, cfg.quad_nodes, cfg.fd_step);
    std::cout << matrix << "\n";
    if (cfg.trace) {
        std::ofstream trace(cfg.trace_path);
        if (!trace) {
            throw std::runtime_error("cannot open trace path: " + cfg.trace_path);
        }
        const auto bp = twistlab::topo::default_basepoints();
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                trace << "# entry " << i + 1 << "," << j + 1 << " (band index, band value)\n";
                const twistlab::topo::SphereMap component =
                    [&, i, j](const twistlab::geom::SpherePoint& w) {
                        const auto q = j == 0 ? entry->map({w, bp.y0})
                                              : entry->map({bp.x0, w});
                        return i == 0 ? q.x : q.y;
                    };
                twistlab::topo::mapping_degree(component, cfg.quad_nodes, cfg.fd_step,
                                               &trace);
            }
        }
        std::cerr << "trace written to " << cfg.trace_path << "\n";
    }
    return 0;
}

int run_winding(const std::string& name, const SuiteConfig& cfg) {
    const auto* entry = twistlab::suite::find_family(name);
    if (entry == nullptr) {
        std::cerr << "unknown family '" << name << "'; valid names:\n";
        for (const auto& f : twistlab::suite::family_registry()) {
            std::cerr << "  " << f.name << " - " << f.description << "\n";
        }
        return 2;
    }
    const twistlab::verify::SampleStream st(cfg.seed);
    const auto x = st.sphere_point(0, 0);
    std::ofstream trace;
    if (cfg.trace) {
        trace.open(cfg.trace_path);
        if (!trace) {
            throw std::runtime_error("cannot open trace path: " + cfg.trace_path);
        }
    }
    const int w = twistlab::topo::normal_loop_winding(entry->family, x, 64, cfg.fd_step,
                                                      cfg.trace ? &trace : nullptr);
    std::cout << w << "\n";
    if (cfg.trace) {
        std::cerr << "trace written to " << cfg.trace_path << "\n";
    }
    return 0;
}

int run_profile_export(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output path: " + path);
    }
    const auto& profile = twistlab::compact::profile_f();
    profile.write_csv(out);
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
    std::cerr << "wrote " << profile.size() << " rows to " << path << "\n";
    return 0;
}

void print_listing() {
    std::cout << "checks:\n";
    for (const auto& c : twistlab::suite::check_registry()) {
        std::cout << "  " << c.name << "\n      " << c.description << "\n";
    }
    std::cout << "maps (degree):\n";
    for (const auto& m : twistlab::suite::map_registry()) {
        std::cout << "  " << m.name << " - " << m.description << "\n";
    }
    std::cout << "families (winding):\n";
    for (const auto& f : twistlab::suite::family_registry()) {
        std::cout << "  " << f.name << " - " << f.description << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical verification suite for the generalized Dehn twist on S^2 x S^2"};
    app.require_subcommand(0, 1);
    app.fallthrough();  // global flags may follow the subcommand

    SuiteConfig cfg;
    std::string format = "json";
    bool list = false;

    app.add_option("--samples", cfg.samples, "random samples per sampling check")
        ->envname("TWISTLAB_SAMPLES");
    app.add_option("--seed", cfg.seed, "seed for the counter-based sampler")
        ->envname("TWISTLAB_SEED");
    app.add_option("--fd-step", cfg.fd_step, "finite-difference step on unit-scale charts")
        ->envname("TWISTLAB_FD_STEP");
    app.add_option("--tol", cfg.tol,
                   "FD residual tolerance; scaled thresholds derive from it")
        ->envname("TWISTLAB_TOL");
    app.add_option("--quad-nodes", cfg.quad_nodes, "quadrature nodes per direction")
        ->envname("TWISTLAB_QUAD_NODES");
    app.add_option("--output", cfg.output, "write the report here instead of stdout");
    app.add_option("--format", format, "report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->envname("TWISTLAB_FORMAT");
    app.add_option("--trace", cfg.trace_path, "write a trace CSV (degree/winding)");
    app.add_flag("--list", list, "list checks, maps and families, then exit");

    auto* cmd_all = app.add_subcommand("verify-all", "run every check, write a combined report");
    auto* cmd_check = app.add_subcommand("check", "run one named check");
    std::string check_name;
    cmd_check->add_option("name", check_name, "check name (see --list)")->required();
    auto* cmd_degree = app.add_subcommand("degree", "print the homology matrix of a map");
    std::string map_name;
    cmd_degree->add_option("map", map_name, "map name (see --list)")->required();
    auto* cmd_winding = app.add_subcommand("winding", "print the normal-loop winding of a family");
    std::string family_name;
    cmd_winding->add_option("family", family_name, "family name (see --list)")->required();
    auto* cmd_export = app.add_subcommand("profile-export", "export the profile table as CSV");
    std::string export_path = "profile.csv";
    cmd_export->add_option("path", export_path, "destination file (default profile.csv)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // --help exits clean; bad usage is 2
    }

    try {
        cfg.format = format == "csv" ? SuiteConfig::Format::csv : SuiteConfig::Format::json;
        cfg.trace = !cfg.trace_path.empty();
        cfg.validate();

        if (list) {
            print_listing();
            return 0;
        }
        if (cmd_all->parsed()) return run_verify_all(cfg);
        if (cmd_check->parsed()) return run_single_check(check_name, cfg);
        if (cmd_degree->parsed()) return run_degree(map_name, cfg);
        if (cmd_winding->parsed()) return run_winding(family_name, cfg);
        if (cmd_export->parsed()) return run_profile_export(export_path);

        std::cerr << app.help();
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
