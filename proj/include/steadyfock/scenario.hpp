// scenario.hpp - Declarative run descriptions: JSON config parsing with a
// strict schema, named figure presets, and the orchestration that turns a
// config into CSV/JSON artifacts on disk.
//
// Every run writes a machine-readable report plus a manifest holding the
// fully resolved configuration; feeding the manifest's config back through
// run_scenario reproduces the outputs byte for byte.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "steadyfock/collision.hpp"
#include "steadyfock/raman.hpp"
#include "steadyfock/reservoir.hpp"

namespace sfock {

enum class Mode { steady, evolve, analytic, validate_selectivity, collision, figure_preset };

std::string mode_name(Mode m);
Mode parse_mode(const std::string& s);

struct WignerSettings {
    double range = 6.0;    // symmetric x, p window
    int resolution = 201;  // samples per axis
};

struct ScenarioConfig {
    std::string name;
    Mode mode = Mode::steady;
    int n_max = 0;  // 0 = size from the analytic tail (corner <= 1e-8, plus margin 2)
    std::optional<EngineeredRates> rates;  // direct rate form
    std::optional<BeamParams> beam;        // beam form; resolved via rates_from_beam
    int m = -1, l = -1;      // reservoir targets accompanying the beam form
    double gamma = 1.0;      // natural damping for the beam form
    double nbar = 0.0;
    int target = -1;         // fidelity level in reports; -1 = the emission step m
    std::string preset;      // figure-preset mode: one of the preset names
    int k = -1;              // validate-selectivity: engineered transition
    int n_probe = -1;        // validate-selectivity probe level; -1 = k
    std::optional<RamanParams> raman;  // overrides the reference operating point
    double t_end = 0.0;      // evolve / collision horizon
    int steps = 50;          // evolve recording intervals
    double window = 0.0;     // collision recording spacing; 0 = t_end / 50
    ArrivalModel arrivals = ArrivalModel::regular;
    std::string initial = "vacuum";  // "vacuum" | "thermal" | "fock:<n>"
    std::uint64_t seed = 1;
    bool allow_tail = false;  // keep reports with corner population above 1e-8
    WignerSettings wigner;
    bool wigner_explicit = false;  // user-set grid wins over a preset's default
    std::string out;  // default output directory; the CLI may override

    void validate() const;
};

// Strict parse: unknown keys, wrong types and missing mode-required fields
// all raise ConfigError.
ScenarioConfig parse_scenario(const nlohmann::json& j);
ScenarioConfig load_scenario(const std::string& path);
// Normalized form; parse_scenario(serialize_scenario(c)) round-trips.
nlohmann::json serialize_scenario(const ScenarioConfig& cfg);

std::vector<std::string> preset_names();
// Resolved steady-mode config for a named preset; unknown names raise
// ConfigError listing the alternatives.
ScenarioConfig preset_config(const std::string& name);

struct RunResult {
    nlohmann::json report;
    nlohmann::json manifest;
    std::vector<std::string> files;  // paths written, relative to out_dir
};

// Executes the scenario and writes its artifacts under out_dir (created if
// missing): populations.csv, wigner.csv / wigner_matrix.txt and
// trajectory.csv as applicable, plus report.json and manifest.json.
RunResult run_scenario(const ScenarioConfig& cfg, const std::string& out_dir);

const char* version();

}  // namespace sfock
