// analytic.cpp - Detailed-balance evaluation of the piecewise steady distribution.

#include "steadyfock/analytic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sfock {

double AnalyticSolution::population(int n) const {
    if (n < 0) throw std::out_of_range("AnalyticSolution: n must be >= 0");
    double value = rho0;
    // Product of at most two special steps and a geometric run; closed form
    // beyond m keeps large n cheap.
    if (n <= m) {
        for (int j = 0; j < n; ++j) value *= step(j);
        return value;
    }
    for (int j = 0; j <= m; ++j) value *= step(j);
    return value * std::pow(R, n - m - 1);
}

double AnalyticSolution::tail_mass(int n_max) const {
    if (n_max < 0) throw std::out_of_range("AnalyticSolution: n_max must be >= 0");
    if (n_max >= m + 1) return population(n_max) * R / (1.0 - R);
    double sum = 0.0;
    double value = population(n_max);
    for (int j = n_max; j <= m; ++j) {
        value *= step(j);
        sum += value;
    }
    return sum + value * R / (1.0 - R);
}

AnalyticSolution analytic_populations(const EngineeredRates& rates) {
    rates.validate();
    AnalyticSolution sol;
    sol.m = rates.m;
    sol.l = rates.l;
    double up = rates.epsilon + rates.nbar;      // generic upward weight per quantum
    double down = 1.0 + rates.nbar;              // generic downward weight per quantum
    sol.R = up / down;
    sol.step_l = (rates.gamma_l + double(rates.l + 1) * up * rates.gamma) /
                 (double(rates.l + 1) * down * rates.gamma);
    double down_m = rates.gamma_m + double(rates.m + 1) * down * rates.gamma;
    sol.step_m = double(rates.m + 1) * up * rates.gamma / down_m;
    if (up > 0) {
        sol.A = sol.step_l / sol.R;
        sol.B = sol.A * double(rates.m + 1) * down * rates.gamma / down_m;
    } else {
        // Formal branch factors diverge at eps + nbar = 0; report the limits.
        sol.A = rates.gamma_l > 0 ? std::numeric_limits<double>::infinity() : 1.0;
        sol.B = rates.gamma_l > 0 && rates.gamma_m == 0
                    ? std::numeric_limits<double>::infinity()
                    : 1.0;
    }
    // Normalize: unnormalized weights u_0 = 1 with the closed geometric tail.
    double u = 1.0;
    double total = 1.0;
    for (int j = 0; j <= sol.m; ++j) {
        u *= sol.step(j);
        total += u;
    }
    total += u * sol.R / (1.0 - sol.R);  // geometric remainder above m + 1
    sol.rho0 = 1.0 / total;
    return sol;
}

std::vector<double> population_series(const AnalyticSolution& sol, int n_max) {
    if (n_max < sol.m + 2)
        throw std::invalid_argument("population_series: need n_max >= m + 2");
    std::vector<double> p(n_max + 1);
    double value = sol.rho0;
    for (int n = 0; n <= n_max; ++n) {
        p[n] = value;
        value *= sol.step(n);
    }
    return p;
}

int required_nmax(const AnalyticSolution& sol, double corner_tol, int hard_cap) {
    if (!(corner_tol > 0)) throw std::invalid_argument("required_nmax: tolerance must be > 0");
    double value = sol.rho0;
    int n = 0;
    int floor_n = sol.m + 2;
    while (n < floor_n || value > corner_tol) {
        if (n >= hard_cap)
            throw std::domain_error(
                "required_nmax: tail decays too slowly to truncate below the cap");
        value *= sol.step(n);
        ++n;
    }
    return n;
}

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::thermal: return "thermal";
        case Regime::truncated: return "truncated";
        case Regime::amplified: return "amplified";
        case Regime::sliced: return "sliced";
        case Regime::fock: return "fock";
    }
    return "unknown";
}

RegimeReport check_conditions(const EngineeredRates& rates) {
    AnalyticSolution sol = analytic_populations(rates);
    RegimeReport report;
    report.truncation_ratio = sol.step_m;
    report.amplification_ratio = std::pow(sol.R, rates.l) * sol.step_l;
    bool truncated = rates.gamma_m > 0 && report.truncation_ratio <= 0.05;
    bool amplified = report.amplification_ratio >= 20.0;
    if (truncated && amplified)
        report.regime = rates.m == rates.l + 1 ? Regime::fock : Regime::sliced;
    else if (truncated)
        report.regime = Regime::truncated;
    else if (amplified)
        report.regime = Regime::amplified;
    else
        report.regime = Regime::thermal;
    return report;
}

}  // namespace sfock
