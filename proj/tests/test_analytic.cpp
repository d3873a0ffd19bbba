// test_analytic.cpp - Closed-form steady distribution: frozen reference
// values for the six operating points, normalization, regimes, truncation
// sizing.
//
// Reference numbers were computed independently (exact birth-death balance in
// extended precision) and are frozen here; the library must reproduce them.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "steadyfock/analytic.hpp"

using namespace sfock;

namespace {

EngineeredRates fig6_rates() {
    return EngineeredRates{1000.0, 1000.0, 0.8, 5, 4, 0.05, 1.0};
}

EngineeredRates fig7_rates() {
    return EngineeredRates{1000.0, 1000.0, 0.95, 10, 9, 0.05, 1.0};
}

}  // namespace

TEST_CASE("high-purity operating point m=5, l=4") {
    AnalyticSolution sol = analytic_populations(fig6_rates());
    CHECK(sol.R == doctest::Approx(0.809523809524).epsilon(1e-10));
    CHECK(sol.A == doctest::Approx(236.294117647).epsilon(1e-10));
    CHECK(sol.B == doctest::Approx(1.47933314238).epsilon(1e-10));
    CHECK(sol.rho0 == doctest::Approx(0.0113947983509).epsilon(1e-10));
    CHECK(sol.population(5) == doctest::Approx(0.936068622319).epsilon(1e-10));
    CHECK(std::sqrt(sol.population(5)) == doctest::Approx(0.967506393942).epsilon(1e-10));
    CHECK(required_nmax(sol) == 68);

    RegimeReport rep = check_conditions(fig6_rates());
    CHECK(rep.truncation_ratio == doctest::Approx(0.00506807115174).epsilon(1e-10));
    CHECK(rep.amplification_ratio == doctest::Approx(82.1487659096).epsilon(1e-10));
    CHECK(rep.regime == Regime::fock);
}

TEST_CASE("m=10 operating point with eps = 0.95") {
    AnalyticSolution sol = analytic_populations(fig7_rates());
    CHECK(sol.R == doctest::Approx(0.952380952381).epsilon(1e-10));
    CHECK(sol.A == doctest::Approx(101.0).epsilon(1e-10));
    CHECK(sol.B == doctest::Approx(1.15323019129).epsilon(1e-10));
    CHECK(sol.rho0 == doctest::Approx(0.0118662353099).epsilon(1e-10));
    CHECK(sol.population(10) == doctest::Approx(0.735768751762).epsilon(1e-10));
    CHECK(sol.tail_mass(50) == doctest::Approx(0.0238667894587).epsilon(1e-10));
    // Populations conditioned on n <= 50, the window a small simulation keeps.
    double cond = sol.population(10) / (1.0 - sol.tail_mass(50));
    CHECK(cond == doctest::Approx(0.753758548338).epsilon(1e-10));
    CHECK(std::sqrt(cond) == doctest::Approx(0.868192690788).epsilon(1e-10));
    CHECK(required_nmax(sol) == 290);
    CHECK(check_conditions(fig7_rates()).regime == Regime::fock);
}

TEST_CASE("pure truncation: gamma_l = 0 caps the thermal-like distribution") {
    EngineeredRates r{1000.0, 0.0, 0.8, 5, 4, 0.05, 1.0};
    AnalyticSolution sol = analytic_populations(r);
    CHECK(sol.A == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sol.B == doctest::Approx(0.00626055848157).epsilon(1e-10));
    CHECK(sol.rho0 == doctest::Approx(0.26443010917).epsilon(1e-10));
    CHECK(sol.population(5) == doctest::Approx(0.091930376236).epsilon(1e-10));
    double above = sol.tail_mass(5);
    CHECK(above <= 0.01);
    CHECK(above == doctest::Approx(0.00244602586079).epsilon(1e-9));
    CHECK(required_nmax(sol) == 57);
    CHECK(check_conditions(r).regime == Regime::truncated);
}

TEST_CASE("pure amplification: gamma_m = 0 lifts the plateau above l") {
    EngineeredRates r{0.0, 1000.0, 0.8, 5, 4, 0.05, 1.0};
    AnalyticSolution sol = analytic_populations(r);
    CHECK(sol.A == doctest::Approx(236.294117647).epsilon(1e-10));
    CHECK(sol.B == doctest::Approx(sol.A).epsilon(1e-12));  // no m-step without gamma_m
    CHECK(sol.rho0 == doctest::Approx(0.00230040621129).epsilon(1e-10));
    CHECK(sol.population(5) == doctest::Approx(0.188975531348).epsilon(1e-10));
    CHECK(required_nmax(sol) == 85);
    RegimeReport rep = check_conditions(r);
    CHECK(rep.amplification_ratio == doctest::Approx(82.1487659096).epsilon(1e-10));
    CHECK(rep.regime == Regime::amplified);
}

TEST_CASE("single-step amplification from the ground state") {
    EngineeredRates r{0.0, 1000.0, 0.5, 1, 0, 0.05, 1.0};
    AnalyticSolution sol = analytic_populations(r);
    CHECK(sol.R == doctest::Approx(0.52380952381).epsilon(1e-10));
    CHECK(sol.A == doctest::Approx(1819.18181818).epsilon(1e-9));
    CHECK(sol.rho0 == doctest::Approx(0.000499475550672).epsilon(1e-10));
    CHECK(sol.population(1) == doctest::Approx(0.47595263069).epsilon(1e-10));
    CHECK(required_nmax(sol) == 29);
    RegimeReport rep = check_conditions(r);
    CHECK(rep.amplification_ratio == doctest::Approx(952.904761905).epsilon(1e-9));
    CHECK(rep.regime == Regime::amplified);
}

TEST_CASE("sliced window between l = 3 and m = 6") {
    EngineeredRates r{1000.0, 1000.0, 0.8, 6, 3, 0.05, 1.0};
    AnalyticSolution sol = analytic_populations(r);
    CHECK(sol.A == doctest::Approx(295.117647059).epsilon(1e-10));
    CHECK(sol.B == doctest::Approx(2.1532880388).epsilon(1e-10));
    CHECK(sol.rho0 == doctest::Approx(0.00314498730305).epsilon(1e-10));
    double window = sol.population(4) + sol.population(5) + sol.population(6);
    CHECK(window == doctest::Approx(0.982479590394).epsilon(1e-10));
    CHECK(window >= 0.95);
    CHECK(required_nmax(sol) == 64);
    RegimeReport rep = check_conditions(r);
    CHECK(rep.truncation_ratio == doctest::Approx(0.00590658658857).epsilon(1e-10));
    CHECK(rep.amplification_ratio == doctest::Approx(126.739995167).epsilon(1e-10));
    CHECK(rep.regime == Regime::sliced);
}

TEST_CASE("no engineering reduces to the thermal distribution") {
    EngineeredRates r{0.0, 0.0, 0.0, 1, 0, 0.05, 1.0};
    AnalyticSolution sol = analytic_populations(r);
    CHECK(sol.R == doctest::Approx(0.05 / 1.05).epsilon(1e-12));
    CHECK(sol.A == doctest::Approx(1.0));
    CHECK(sol.B == doctest::Approx(1.0));
    CHECK(sol.rho0 == doctest::Approx(1.0 / 1.05).epsilon(1e-12));
    CHECK(sol.population(3) == doctest::Approx(sol.rho0 * std::pow(sol.R, 3)).epsilon(1e-12));
    CHECK(check_conditions(r).regime == Regime::thermal);
}

TEST_CASE("population_series is consistent with population() and the tail") {
    AnalyticSolution sol = analytic_populations(fig6_rates());
    int n_max = 40;
    std::vector<double> p = population_series(sol, n_max);
    REQUIRE(int(p.size()) == n_max + 1);
    double sum = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        CHECK(p[n] == doctest::Approx(sol.population(n)).epsilon(1e-13));
        sum += p[n];
    }
    CHECK(sum + sol.tail_mass(n_max) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(population_series(sol, 6), std::invalid_argument);
}

TEST_CASE("step() dispatches the two special links") {
    AnalyticSolution sol = analytic_populations(fig6_rates());
    CHECK(sol.step(4) == doctest::Approx(sol.step_l));
    CHECK(sol.step(5) == doctest::Approx(sol.step_m));
    CHECK(sol.step(0) == doctest::Approx(sol.R));
    CHECK(sol.step(7) == doctest::Approx(sol.R));
    // The chain steps compose into the branch factors.
    CHECK(sol.step_l == doctest::Approx(sol.R * sol.A).epsilon(1e-12));
    CHECK(sol.step_m == doctest::Approx(sol.R * sol.B / sol.A).epsilon(1e-12));
}

TEST_CASE("eps + nbar = 0 keeps populations finite though A diverges") {
    EngineeredRates r{0.0, 5.0, 0.0, 3, 0, 0.0, 1.0};
    AnalyticSolution sol = analytic_populations(r);
    CHECK(std::isinf(sol.A));
    CHECK(sol.rho0 == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(sol.population(1) == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
    CHECK(sol.population(2) == 0.0);
    CHECK(sol.tail_mass(1) == 0.0);
    CHECK(required_nmax(sol) == 5);  // floor m + 2, the corner is exactly zero
}

TEST_CASE("rate validation rejects unusable parameter sets") {
    CHECK_THROWS(analytic_populations(EngineeredRates{1000.0, 1000.0, 1.0, 5, 4, 0.05, 1.0}));
    CHECK_THROWS(analytic_populations(EngineeredRates{1000.0, 1000.0, 0.8, 4, 4, 0.05, 1.0}));
    CHECK_THROWS(analytic_populations(EngineeredRates{-1.0, 1000.0, 0.8, 5, 4, 0.05, 1.0}));
    CHECK_THROWS(analytic_populations(EngineeredRates{1000.0, 1000.0, 0.8, 5, -1, 0.05, 1.0}));
}

TEST_CASE("required_nmax refuses slowly decaying tails at the cap") {
    AnalyticSolution sol = analytic_populations(fig6_rates());
    CHECK_THROWS_AS(required_nmax(sol, 1e-8, 40), std::domain_error);
    CHECK_THROWS_AS(required_nmax(sol, 0.0), std::invalid_argument);
}

TEST_CASE("tail_mass below m sums the remaining special steps") {
    AnalyticSolution sol = analytic_populations(fig6_rates());
    // Direct summation cross-check for a start point under the m-step.
    double direct = 0.0;
    for (int n = 3; n <= 200; ++n) direct += sol.population(n);
    CHECK(sol.tail_mass(2) == doctest::Approx(direct).epsilon(1e-10));
}
