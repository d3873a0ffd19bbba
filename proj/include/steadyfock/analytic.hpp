// analytic.hpp - Closed-form steady populations of the engineered cavity.
//
// The engineered channels plus natural damping move population only between
// neighbouring number states, so the steady state balances each link of a
// birth-death chain.  The resulting distribution is piecewise geometric,
//   rho_n = R^n rho_0            n <= l,
//   rho_n = R^n A rho_0          l+1 <= n <= m,
//   rho_n = R^n B rho_0          n >= m+1,
// with R = (eps + nbar) / (1 + nbar) and
//   A = [gamma_l + (l+1)(eps+nbar) gamma] / [(l+1)(eps+nbar) gamma],
//   B = A (m+1)(1+nbar) gamma / [gamma_m + (m+1)(1+nbar) gamma],
// and rho_0 fixed by normalization including the geometric tail.  The chain
// steps themselves,
//   rho_{l+1}/rho_l = R A   and   rho_{m+1}/rho_m = R B / A,
// stay finite even when eps + nbar = 0 (where A diverges formally), so all
// population values are evaluated through the step products.

#pragma once

#include <vector>

#include "steadyfock/reservoir.hpp"
#include "steadyfock/types.hpp"

namespace sfock {

struct AnalyticSolution {
    double R = 0.0;        // generic step ratio, in [0, 1)
    double A = 1.0;        // amplification factor across the l -> l+1 link
    double B = 1.0;        // suppression factor across the m -> m+1 link
    double rho0 = 1.0;
    int m = 1;
    int l = 0;
    double step_l = 0.0;   // rho_{l+1} / rho_l
    double step_m = 0.0;   // rho_{m+1} / rho_m

    double step(int n) const { return n == l ? step_l : (n == m ? step_m : R); }
    double population(int n) const;    // exact, nonnegative, sums to one with the tail
    double tail_mass(int n_max) const; // sum over n > n_max in closed form
};

// Detailed-balance solution for the validated rates; requires l < m, eps < 1.
AnalyticSolution analytic_populations(const EngineeredRates& rates);

// Populations 0..n_max; requires n_max >= m + 2 so every branch is visible.
std::vector<double> population_series(const AnalyticSolution& sol, int n_max);

// Smallest n_max >= m + 2 whose corner population drops to corner_tol; the
// engine refuses truncations with more weight than that in the last level.
int required_nmax(const AnalyticSolution& sol, double corner_tol = 1e-8,
                  int hard_cap = 4000);

enum class Regime { thermal, truncated, amplified, sliced, fock };

const char* regime_name(Regime r);

struct RegimeReport {
    double truncation_ratio = 1.0;     // rho_{m+1} / rho_m = R B / A
    double amplification_ratio = 0.0;  // rho_{l+1} / rho_0 = R^{l+1} A
    Regime regime = Regime::thermal;
};

// Truncation engages when the m-step suppression is engineered (gamma_m > 0)
// and truncation_ratio <= 0.05; amplification when amplification_ratio >= 20.
// Both together give sliced, or fock when additionally m = l + 1.
RegimeReport check_conditions(const EngineeredRates& rates);

}  // namespace sfock
