#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "twistlab/topology.hpp"
#include "twistlab/verify.hpp"

// The check suite behind the CLI: configuration, the static registry of
// named checks (each returning a VerificationReport), named map/family
// registries for the degree and winding commands, and report emission.
//
// Reports are merged in registry order; with a fixed seed the emitted JSON
// is byte-identical across runs (wall-clock time is deliberately kept out
// of the report payload).

namespace twistlab::suite {

using verify::VerificationReport;

struct SuiteConfig {
    std::size_t samples = 10000;
    std::uint64_t seed = 42;
    double fd_step = 1e-5;
    double tol = 1e-6;
    int quad_nodes = 256;
    std::string output;  // empty: stdout only
    enum class Format { json, csv } format = Format::json;
    bool trace = false;
    std::string trace_path;

    /// Throws std::invalid_argument outside: samples >= 1,
    /// fd_step in (0, 1e-2], tol > 0, quad_nodes >= 32.
    void validate() const;
};

struct CheckDef {
    const char* name;
    const char* description;
    VerificationReport (*run)(const SuiteConfig&);
};

/// All checks, in report order. Tolerances that mirror FD noise scale with
/// cfg.tol (defaults match the documented thresholds); exactness, seam and
/// round-trip tolerances are fixed constants of the corresponding claim.
std::span<const CheckDef> check_registry();

/// nullptr when the name is unknown.
const CheckDef* find_check(std::string_view name);

struct NamedMap {
    const char* name;
    const char* description;
    verify::ProductMap map;
};
const std::vector<NamedMap>& map_registry();  // id, iota, tau, tau-inv, tau2
const NamedMap* find_map(std::string_view name);

struct NamedFamily {
    const char* name;
    const char* description;
    topo::MapFamily family;
};
const std::vector<NamedFamily>& family_registry();  // h, lambda, const-id
const NamedFamily* find_family(std::string_view name);

/// {"schema": 1, "reports": [...], "summary": {total, passed, failed}}.
nlohmann::ordered_json suite_json(const std::vector<VerificationReport>& reports);
std::string suite_csv(const std::vector<VerificationReport>& reports);

}  // namespace twistlab::suite
