// sfk_main.cpp - command-line front end over the C library interface.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "steadyfock.h"

namespace {

constexpr const char* kArtifactHelp =
    "Artifact files written per run:\n"
    "  populations.csv    columns n,p: photon number and its population\n"
    "  wigner.csv         columns x,p,W: quadrature grid point and Wigner value\n"
    "  wigner_matrix.txt  W sampled over the grid, one row per x sample\n"
    "  trajectory.csv     columns t,p0..pN: time and populations per Fock level\n"
    "  report.json        summary metrics (fidelity, regime, residuals, ratios)\n"
    "  manifest.json      resolved config + version + seed; reproduces the run\n";

int fail(int code, const std::string& msg) {
    std::fprintf(stderr, "error: %s\n", msg.c_str());
    return code;
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream is(path, std::ios::binary);
    if (!is) return false;
    std::ostringstream ss;
    ss << is.rdbuf();
    out = ss.str();
    return true;
}

struct RunFlags {
    std::string out;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int nmax = -1;
    bool allow_tail = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
    cmd->add_option("--out", f.out, "Output directory (default: config's own, then '.')");
    cmd->add_option("--seed", f.seed, "Override the scenario seed")
        ->each([&f](const std::string&) { f.seed_set = true; });
    cmd->add_option("--nmax", f.nmax, "Override the Fock-space cutoff n_max");
    cmd->add_flag("--allow-tail", f.allow_tail,
                  "Keep results whose corner population exceeds the 1e-8 tail rule");
}

int run_handle(sfk_scenario* s, const RunFlags& f) {
    sfk_status st = SFK_OK;
    if (f.nmax >= 0) st = sfk_scenario_set_nmax(s, f.nmax);
    if (st == SFK_OK && f.seed_set) st = sfk_scenario_set_seed(s, f.seed);
    if (st == SFK_OK && f.allow_tail) st = sfk_scenario_allow_tail(s, 1);
    if (st == SFK_OK) st = sfk_scenario_run(s, f.out.empty() ? nullptr : f.out.c_str());
    if (st != SFK_OK) {
        std::fprintf(stderr, "error: %s\n", sfk_last_error());
        return int(st);
    }
    std::fputs(sfk_scenario_report_json(s), stdout);
    return 0;
}

// Exactly one of config_path / preset_name is non-empty (checked by main).
int open_scenario(const std::string& config_path, const std::string& preset_name,
                  sfk_scenario** s) {
    if (!preset_name.empty()) {
        sfk_status st = sfk_scenario_from_preset(preset_name.c_str(), s);
        return st == SFK_OK ? 0 : fail(int(st), sfk_last_error());
    }
    std::string text;
    if (!read_file(config_path, text))
        return fail(int(SFK_ERR_CONFIG), "cannot read " + config_path);
    sfk_status st = sfk_scenario_from_json(text.c_str(), s);
    return st == SFK_OK ? 0 : fail(int(st), sfk_last_error());
}

int cmd_run(const std::string& config_path, const std::string& preset_name,
            const RunFlags& f) {
    sfk_scenario* s = nullptr;
    if (int rc = open_scenario(config_path, preset_name, &s)) return rc;
    int rc = run_handle(s, f);
    sfk_scenario_free(s);
    return rc;
}

int cmd_preset(const std::string& name, bool list, const RunFlags& f) {
    if (list) {
        std::printf("%s\n", sfk_presets_json());
        return 0;
    }
    if (name.empty())
        return fail(int(SFK_ERR_CONFIG), "preset: give a name or --list");
    sfk_scenario* s = nullptr;
    sfk_status st = sfk_scenario_from_preset(name.c_str(), &s);
    if (st != SFK_OK) return fail(int(st), sfk_last_error());
    int rc = run_handle(s, f);
    sfk_scenario_free(s);
    return rc;
}

int cmd_validate(const std::string& config_path, const std::string& preset_name) {
    sfk_scenario* s = nullptr;
    if (int rc = open_scenario(config_path, preset_name, &s)) return rc;
    std::fputs(sfk_scenario_config_json(s), stdout);
    sfk_scenario_free(s);
    return 0;
}

std::string self_path(const char* argv0) {
    char buf[4096];
    ssize_t n = ::readlink("/proc/self/exe", buf, sizeof buf - 1);
    if (n > 0) {
        buf[n] = '\0';
        return buf;
    }
    return argv0;
}

// Fan configs across worker processes, one process per scenario.
int cmd_sweep(const char* argv0, const std::vector<std::string>& configs,
              const std::string& out, unsigned jobs) {
    const std::string exe = self_path(argv0);
    if (jobs == 0) jobs = 1;
    std::map<pid_t, size_t> running;
    std::vector<int> codes(configs.size(), -1);
    size_t next = 0;

    auto reap = [&](bool block) {
        int status = 0;
        pid_t pid = ::waitpid(-1, &status, block ? 0 : WNOHANG);
        if (pid <= 0) return false;
        auto it = running.find(pid);
        if (it == running.end()) return true;
        codes[it->second] = WIFEXITED(status) ? WEXITSTATUS(status) : 128;
        running.erase(it);
        return true;
    };

    while (next < configs.size() || !running.empty()) {
        while (next < configs.size() && running.size() < jobs) {
            const std::string& cfg = configs[next];
            std::vector<std::string> args = {exe, "run", "--config", cfg};
            if (!out.empty()) {
                std::string stem = std::filesystem::path(cfg).stem().string();
                args.push_back("--out");
                args.push_back(out + "/" + stem);
            }
            pid_t pid = ::fork();
            if (pid < 0) return fail(int(SFK_ERR_SOLVER), "fork failed");
            if (pid == 0) {
                std::vector<char*> argv;
                for (std::string& a : args) argv.push_back(a.data());
                argv.push_back(nullptr);
                ::execv(exe.c_str(), argv.data());
                std::perror("execv");
                ::_exit(127);
            }
            running[pid] = next++;
        }
        if (!running.empty()) reap(true);
    }
    while (reap(false)) {
    }

    int worst = 0;
    for (size_t i = 0; i < configs.size(); ++i) {
        int rc = codes[i];
        std::printf("%s: %s\n", configs[i].c_str(),
                    rc == 0 ? "ok" : ("exit " + std::to_string(rc)).c_str());
        if (rc > worst) worst = rc;
    }
    return worst;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Drives a lossy cavity mode into steady Fock states with an engineered "
        "atomic reservoir: steady-state and time-domain solvers, analytic "
        "populations, selectivity checks, and collision-model beams.\n"};
    app.set_version_flag("--version", sfk_version());
    app.footer(kArtifactHelp);
    app.require_subcommand(1);

    std::string config_path, run_preset;
    RunFlags flags;
    auto* run = app.add_subcommand("run", "Run a scenario config and write artifacts");
    auto* run_cfg = run->add_option("--config", config_path, "Scenario config JSON file")
                        ->check(CLI::ExistingFile);
    run->add_option("--preset", run_preset, "Named figure preset instead of a config file")
        ->excludes(run_cfg);
    add_run_flags(run, flags);

    std::string preset_name;
    bool list_presets = false;
    RunFlags preset_flags;
    auto* preset = app.add_subcommand("preset", "Run a named figure preset");
    preset->add_option("name", preset_name, "Preset name (see --list)");
    preset->add_flag("--list", list_presets, "List available preset names");
    add_run_flags(preset, preset_flags);

    std::vector<std::string> sweep_configs;
    std::string sweep_out;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    auto* sweep = app.add_subcommand(
        "sweep", "Run several configs, one worker process per scenario");
    sweep->add_option("configs", sweep_configs, "Scenario config JSON files")
        ->required()
        ->check(CLI::ExistingFile);
    sweep->add_option("--out", sweep_out,
                      "Parent output directory; each run gets <out>/<config stem>");
    sweep->add_option("--jobs", jobs, "Concurrent worker processes");

    std::string validate_path, validate_preset;
    auto* validate = app.add_subcommand(
        "validate", "Parse and check a config, print its normalized form");
    auto* val_cfg = validate->add_option("--config", validate_path, "Scenario config JSON file")
                        ->check(CLI::ExistingFile);
    validate->add_option("--preset", validate_preset,
                         "Named figure preset instead of a config file")
        ->excludes(val_cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : int(SFK_ERR_CONFIG);
    }

    auto one_source = [](const std::string& cfg, const std::string& pre,
                         const char* what) {
        if (cfg.empty() == pre.empty())
            return fail(int(SFK_ERR_CONFIG),
                        std::string(what) + ": give exactly one of --config or --preset");
        return 0;
    };
    if (run->parsed()) {
        if (int rc = one_source(config_path, run_preset, "run")) return rc;
        return cmd_run(config_path, run_preset, flags);
    }
    if (preset->parsed()) return cmd_preset(preset_name, list_presets, preset_flags);
    if (sweep->parsed()) return cmd_sweep(argv[0], sweep_configs, sweep_out, jobs);
    if (validate->parsed()) {
        if (int rc = one_source(validate_path, validate_preset, "validate")) return rc;
        return cmd_validate(validate_path, validate_preset);
    }
    return int(SFK_ERR_CONFIG);
}
