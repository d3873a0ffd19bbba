// test_capi.cpp - Shared-library C interface: status codes, error strings,
// handle lifecycle and JSON views.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <filesystem>
#include <string>

#include "json.hpp"
#include "steadyfock.h"

using nlohmann::json;
namespace fs = std::filesystem;

TEST_CASE("preset runs end to end through the C surface") {
    sfk_scenario* s = nullptr;
    REQUIRE(sfk_scenario_from_preset("fig6", &s) == SFK_OK);
    REQUIRE(s != nullptr);
    CHECK(sfk_scenario_report_json(s) == nullptr);  // nothing ran yet

    const char* cfg = sfk_scenario_config_json(s);
    REQUIRE(cfg != nullptr);
    CHECK(json::parse(cfg).at("preset") == "fig6");

    fs::path dir = "capi_test_fig6";
    fs::remove_all(dir);
    REQUIRE(sfk_scenario_run(s, dir.string().c_str()) == SFK_OK);

    const char* rep_text = sfk_scenario_report_json(s);
    REQUIRE(rep_text != nullptr);
    json rep = json::parse(rep_text);
    CHECK(rep.at("f_sqrt").get<double>() == doctest::Approx(0.9675).epsilon(1e-3));
    CHECK(rep.at("regime") == "fock");

    const char* man_text = sfk_scenario_manifest_json(s);
    REQUIRE(man_text != nullptr);
    CHECK(json::parse(man_text).at("config").at("preset") == "fig6");
    CHECK(fs::exists(dir / "report.json"));
    CHECK(fs::exists(dir / "populations.csv"));

    sfk_scenario_free(s);
    fs::remove_all(dir);
}

TEST_CASE("config errors surface as status 2 with a message") {
    sfk_scenario* s = nullptr;
    CHECK(sfk_scenario_from_json("{ not json", &s) == SFK_ERR_CONFIG);
    CHECK(s == nullptr);
    CHECK(std::strlen(sfk_last_error()) > 0);

    CHECK(sfk_scenario_from_preset("fig11", &s) == SFK_ERR_CONFIG);
    CHECK(s == nullptr);
    CHECK(std::string(sfk_last_error()).find("fig") != std::string::npos);

    // Unusable physics (epsilon = 1) parses but cannot build.
    std::string bad = R"({"mode":"steady","rates":{"gamma_m":10,"gamma_l":10,
        "epsilon":1.0,"m":5,"l":4,"nbar":0.0,"gamma":1.0}})";
    CHECK(sfk_scenario_from_json(bad.c_str(), &s) == SFK_OK);
    REQUIRE(s != nullptr);
    CHECK(sfk_scenario_run(s, "capi_test_bad") == SFK_ERR_CONFIG);
    CHECK(std::strlen(sfk_last_error()) > 0);
    sfk_scenario_free(s);
}

TEST_CASE("truncation refusals surface as status 4 until the tail is allowed") {
    sfk_scenario* s = nullptr;
    REQUIRE(sfk_scenario_from_preset("fig7", &s) == SFK_OK);
    REQUIRE(sfk_scenario_set_nmax(s, 50) == SFK_OK);

    fs::path dir = "capi_test_fig7";
    fs::remove_all(dir);
    CHECK(sfk_scenario_run(s, dir.string().c_str()) == SFK_ERR_TRUNCATION);
    CHECK(std::string(sfk_last_error()).find("corner") != std::string::npos);

    REQUIRE(sfk_scenario_allow_tail(s, 1) == SFK_OK);
    CHECK(sfk_scenario_run(s, dir.string().c_str()) == SFK_OK);
    json rep = json::parse(sfk_scenario_report_json(s));
    // Populations conditioned on the 50-level window.
    CHECK(rep.at("f_sqrt").get<double>() == doctest::Approx(0.868).epsilon(2e-3));
    CHECK(rep.at("n_max") == 50);
    sfk_scenario_free(s);
    fs::remove_all(dir);
}

TEST_CASE("null arguments are rejected, not dereferenced") {
    CHECK(sfk_scenario_from_json(nullptr, nullptr) == SFK_ERR_CONFIG);
    sfk_scenario* s = nullptr;
    CHECK(sfk_scenario_from_json("{}", nullptr) == SFK_ERR_CONFIG);
    CHECK(sfk_scenario_from_preset(nullptr, &s) == SFK_ERR_CONFIG);
    CHECK(sfk_scenario_set_nmax(nullptr, 10) == SFK_ERR_CONFIG);
    CHECK(sfk_scenario_set_seed(nullptr, 1) == SFK_ERR_CONFIG);
    CHECK(sfk_scenario_allow_tail(nullptr, 1) == SFK_ERR_CONFIG);
    CHECK(sfk_scenario_run(nullptr, ".") == SFK_ERR_CONFIG);
    CHECK(sfk_scenario_report_json(nullptr) == nullptr);
    CHECK(sfk_scenario_manifest_json(nullptr) == nullptr);
    CHECK(sfk_scenario_config_json(nullptr) == nullptr);
    sfk_scenario_free(nullptr);  // must be a no-op
}

TEST_CASE("adjustments are reflected in the config view") {
    sfk_scenario* s = nullptr;
    REQUIRE(sfk_scenario_from_preset("fig2", &s) == SFK_OK);
    REQUIRE(sfk_scenario_set_nmax(s, 59) == SFK_OK);
    REQUIRE(sfk_scenario_set_seed(s, 99) == SFK_OK);
    json cfg = json::parse(sfk_scenario_config_json(s));
    CHECK(cfg.at("n_max") == 59);
    CHECK(cfg.at("seed") == 99);
    sfk_scenario_free(s);
}

TEST_CASE("library metadata") {
    json presets = json::parse(sfk_presets_json());
    REQUIRE(presets.is_array());
    CHECK(presets.size() == 6);
    bool has4 = false;
    for (const auto& p : presets)
        if (p == "fig4") has4 = true;
    CHECK(has4);
    CHECK(std::strlen(sfk_version()) > 0);
}
