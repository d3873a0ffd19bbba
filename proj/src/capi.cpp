// capi.cpp - C ABI wrapper around the scenario layer.

#include "steadyfock.h"

#include <exception>
#include <memory>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "steadyfock/scenario.hpp"

namespace {

thread_local std::string g_error;

sfk_status classify_current() noexcept {
    try {
        throw;
    } catch (const sfock::TruncationError& e) {
        g_error = e.what();
        return SFK_ERR_TRUNCATION;
    } catch (const sfock::SolverError& e) {
        g_error = e.what();
        return SFK_ERR_SOLVER;
    } catch (const sfock::ConfigError& e) {
        g_error = e.what();
        return SFK_ERR_CONFIG;
    } catch (const nlohmann::json::exception& e) {
        g_error = e.what();
        return SFK_ERR_CONFIG;
    } catch (const std::invalid_argument& e) {
        g_error = e.what();
        return SFK_ERR_CONFIG;
    } catch (const std::out_of_range& e) {
        g_error = e.what();
        return SFK_ERR_CONFIG;
    } catch (const std::domain_error& e) {
        g_error = e.what();
        return SFK_ERR_CONFIG;
    } catch (const std::bad_alloc&) {
        g_error = "out of memory";
        return SFK_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_error = e.what();
        return SFK_ERR_SOLVER;
    } catch (...) {
        g_error = "unknown error";
        return SFK_ERR_INTERNAL;
    }
}

sfk_status fail_config(const char* msg) noexcept {
    g_error = msg;
    return SFK_ERR_CONFIG;
}

}  // namespace

struct sfk_scenario {
    sfock::ScenarioConfig cfg;
    std::string config_json;
    std::string report_json;
    std::string manifest_json;
    bool has_result = false;

    void refresh_config() { config_json = sfock::serialize_scenario(cfg).dump(2) + "\n"; }
};

extern "C" {

sfk_status sfk_scenario_from_json(const char* json_text, sfk_scenario** out) {
    if (!json_text || !out) return fail_config("null argument");
    *out = nullptr;
    try {
        auto s = std::make_unique<sfk_scenario>();
        s->cfg = sfock::parse_scenario(nlohmann::json::parse(json_text));
        s->refresh_config();
        *out = s.release();
        g_error.clear();
        return SFK_OK;
    } catch (...) {
        return classify_current();
    }
}

sfk_status sfk_scenario_from_preset(const char* name, sfk_scenario** out) {
    if (!name || !out) return fail_config("null argument");
    *out = nullptr;
    try {
        sfock::preset_config(name);  // reject unknown names eagerly
        auto s = std::make_unique<sfk_scenario>();
        s->cfg.mode = sfock::Mode::figure_preset;
        s->cfg.preset = name;
        s->cfg.name = name;
        s->refresh_config();
        *out = s.release();
        g_error.clear();
        return SFK_OK;
    } catch (...) {
        return classify_current();
    }
}

sfk_status sfk_scenario_set_nmax(sfk_scenario* s, int n_max) {
    if (!s) return fail_config("null scenario");
    if (n_max < 0) return fail_config("n_max must be >= 0");
    try {
        s->cfg.n_max = n_max;
        s->refresh_config();
        g_error.clear();
        return SFK_OK;
    } catch (...) {
        return classify_current();
    }
}

sfk_status sfk_scenario_set_seed(sfk_scenario* s, uint64_t seed) {
    if (!s) return fail_config("null scenario");
    try {
        s->cfg.seed = seed;
        s->refresh_config();
        g_error.clear();
        return SFK_OK;
    } catch (...) {
        return classify_current();
    }
}

sfk_status sfk_scenario_allow_tail(sfk_scenario* s, int allow) {
    if (!s) return fail_config("null scenario");
    try {
        s->cfg.allow_tail = allow != 0;
        s->refresh_config();
        g_error.clear();
        return SFK_OK;
    } catch (...) {
        return classify_current();
    }
}

sfk_status sfk_scenario_run(sfk_scenario* s, const char* out_dir) {
    if (!s) return fail_config("null scenario");
    try {
        std::string dir = (out_dir && *out_dir) ? out_dir : s->cfg.out;
        sfock::RunResult res = sfock::run_scenario(s->cfg, dir);
        s->report_json = res.report.dump(2) + "\n";
        s->manifest_json = res.manifest.dump(2) + "\n";
        s->has_result = true;
        g_error.clear();
        return SFK_OK;
    } catch (...) {
        return classify_current();
    }
}

const char* sfk_scenario_report_json(const sfk_scenario* s) {
    if (!s || !s->has_result) return nullptr;
    return s->report_json.c_str();
}

const char* sfk_scenario_manifest_json(const sfk_scenario* s) {
    if (!s || !s->has_result) return nullptr;
    return s->manifest_json.c_str();
}

const char* sfk_scenario_config_json(const sfk_scenario* s) {
    if (!s) return nullptr;
    return s->config_json.c_str();
}

void sfk_scenario_free(sfk_scenario* s) { delete s; }

const char* sfk_last_error(void) { return g_error.c_str(); }

const char* sfk_presets_json(void) {
    static const std::string text = [] {
        nlohmann::json j = sfock::preset_names();
        return j.dump();
    }();
    return text.c_str();
}

const char* sfk_version(void) { return sfock::version(); }

}  // extern "C"
