// reservoir.hpp - Engineered-plus-natural cavity dissipation assembly.
//
// The cavity generator combines five Lindblad channels: a selective emission
// |m><m+1| at rate gamma_m, a selective absorption |l+1><l| at rate gamma_l,
// a nonselective absorption a^dag at rate epsilon*gamma, and the natural
// damping pair (gamma(1+nbar), a) and (gamma nbar, a^dag).  All rates share
// one time unit; with the convention gamma = 1 they read directly in units
// of the natural linewidth.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "steadyfock/lindblad.hpp"
#include "steadyfock/raman.hpp"
#include "steadyfock/types.hpp"

namespace sfock {

struct EngineeredRates {
    double gamma_m = 0.0;  // selective emission rate
    double gamma_l = 0.0;  // selective absorption rate
    double epsilon = 0.0;  // nonselective absorption rate in units of gamma; < 1 required
    int m = 1;             // emission acts on the |m+1> -> |m> step
    int l = 0;             // absorption acts on the |l> -> |l+1> step; l < m
    double nbar = 0.0;     // thermal occupation of the natural environment
    double gamma = 1.0;    // natural damping rate, the reference unit

    void validate() const;
};

struct BeamParams {
    double r_g = 0.0;  // arrival rates of ground, excited, and auxiliary atoms
    double r_e = 0.0;
    double r_i = 0.0;
    double p_g = 0.0;  // preparation mixture of a single transit slot; sum <= 1,
    double p_e = 0.0;  // the remainder is an empty slot
    double p_i = 0.0;
    double tau = 0.0;             // cavity crossing time
    Complex zeta{0.0, 0.0};       // selective coupling; the k-target carries sqrt(k+1)
    Complex lambda_tilde{0.0, 0.0};  // resonant coupling of the auxiliary transition

    void validate() const;
    // Weak-coupling advisory |lambda_tilde| tau <= 0.1; report-only.
    std::vector<std::string> warnings() const;
};

// Coarse-grained rates of the repeated-interaction beam:
//   gamma_m = r_g (sqrt(m+1)|zeta| tau)^2,  gamma_l = r_e (sqrt(l+1)|zeta| tau)^2,
//   epsilon gamma = r_i (|lambda_tilde| tau)^2.
// Throws when the implied epsilon reaches 1 (no steady state).
EngineeredRates rates_from_beam(const BeamParams& beam, int m, int l, double gamma = 1.0,
                                double nbar = 0.0);

// Channel list {(gamma_m, |m><m+1|), (gamma_l, |l+1><l|), (epsilon gamma, a^dag),
// (gamma(1+nbar), a), (gamma nbar, a^dag)} with no Hamiltonian part.
// Requires n_max >= m + 2 so at least one level sits above the emission step.
MasterEquationSpec build_master_equation(const EngineeredRates& rates, const HilbertSpec& spec);

// T = hbar omega / (k_B ln[(1+nbar)/nbar]); omega in rad/s, T in kelvin.
// nbar = 0 maps to T = 0 by convention, and the inverse round-trips.
double nbar_temperature(double nbar, double omega);
double temperature_nbar(double temperature, double omega);

struct FeasibilityCheck {
    std::string name;
    double ratio = 0.0;      // measured value; passes when ratio <= threshold
    double threshold = 0.0;
    bool pass = false;
};

struct FeasibilityReport {
    std::vector<FeasibilityCheck> checks;
    bool all_pass = false;
};

// Dimensionless hierarchy checks for a selective target k:
//   |lambda| sqrt(k+1) / |Delta| <= 0.1      (dispersive cavity coupling)
//   |Omega_1| / |Delta_1| <= 0.1             (dispersive laser 1)
//   |Omega_2| / |Delta_2| <= 0.1             (dispersive laser 2)
//   sqrt(k+2) |zeta| / xi <= 0.1             (selective RWA hierarchy)
//   |lambda_tilde| tau <= 0.1                (weak resonant collisions)
FeasibilityReport feasibility_check(const BeamParams& beam, const RamanParams& raman, int k);

// Hardware-scale operating point (rates in s^-1): Delta = Delta_1 =
// 10 sqrt(k+1) lambda, |Omega_2| = Delta / 100, phi_k retuned to zero,
// tau fixed by zeta_k tau = 1, r_g = r_e = 1000 gamma, lambda_tilde tau = 0.1,
// and r_i chosen so that the implied epsilon matches the request.
// Defaults follow typical cavity QED scales gamma = 7.5 Hz, lambda = 5e5 Hz.
std::pair<BeamParams, RamanParams> reference_beam(int k, double epsilon, double gamma = 7.5,
                                                  double lambda = 5.0e5);

}  // namespace sfock
