// raman.hpp - Three-level Raman engineering of Fock-selective couplings.
//
// Level scheme {g, e, i}: the cavity couples g <-> i (amplitude lambda,
// detuning Delta), a classical field drives g <-> i (Omega_1, detuning
// Delta_1) and another drives e <-> i (Omega_2, detuning Delta_2).  In the
// dispersive regime the i level drops out, leaving
//   H_eff = (xi n - varpi_g) sigma_gg + varpi_e sigma_ee
//           + (zeta a^dag e^{i delta t} sigma_ge + h.c.),
//   xi = |lambda|^2/Delta,   zeta = conj(lambda) Omega_2 (1/Delta + 1/Delta_2)/2,
//   varpi_g = |Omega_1|^2/Delta_1,  varpi_e = |Omega_2|^2/Delta_2,  delta = Delta - Delta_2.
// In the frame of the diagonal part the flip term on {|e,n>, |g,n+1>} rotates
// at phi_n = (n+1) xi + delta - varpi_g - varpi_e with amplitude
// zeta_n = sqrt(n+1) zeta; tuning phi_k = 0 singles out one doublet.
#pragma once

#include <string>
#include <vector>

#include "steadyfock/types.hpp"

namespace sfock {

struct RamanParams {
    Complex lambda{0.0, 0.0};
    Complex Omega1{0.0, 0.0};
    Complex Omega2{0.0, 0.0};
    double Delta = 0.0;
    double Delta1 = 0.0;
    double Delta2 = 0.0;

    void validate() const;  // rejects vanishing detunings
};

struct EffectiveParams {
    double xi = 0.0;
    Complex zeta{0.0, 0.0};
    double varpi_g = 0.0;
    double varpi_e = 0.0;
    double delta = 0.0;

    Complex zeta_n(int n) const { return std::sqrt(double(n + 1)) * zeta; }
    double phi_n(int n) const { return (n + 1) * xi + delta - varpi_g - varpi_e; }
};

EffectiveParams derive_effective(const RamanParams& p);

// Effective-theory validity: |lambda| sqrt(n_max+1) <= 0.2 |Delta| and
// |Omega_j| <= 0.2 |Delta_j|.  Returns one message per violated hierarchy.
std::vector<std::string> hierarchy_warnings(const RamanParams& p, int n_max);

// Adjusts |Omega_1| so that varpi_g = (k+1) xi and retunes Delta_2 so that
// delta = varpi_e exactly; the returned parameters satisfy phi_k = 0 to
// machine precision.  Throws when no dispersive solution exists.
RamanParams solve_selectivity(int k, RamanParams p);

// Dispersive reference operating point: Delta = Delta_1 = 10 sqrt(k+1)
// |lambda|, |Omega_2| = |Delta| / 100, before the exact phi_k = 0 retune.
RamanParams reference_point(int k, double lambda = 1.0);

// H_1 = zeta_k |k+1><k| sigma_ge + h.c. on the {g, e} (x) field space
// (atom ordering g = 0, e = 1).  Couples |e,k> <-> |g,k+1>.
Operator selective_jc(int k, Complex zeta_k, const HilbertSpec& field);

// H_2 = lambda_tilde sigma_ig a + h.c. on the {g, i} (x) field space
// (atom ordering g = 0, i = 1).  Couples |g,n> <-> |i,n-1>.
Operator resonant_jc(Complex lambda_tilde, const HilbertSpec& field);

struct SelectivityReport {
    int k = 0;
    int n_probe = 0;
    double t_end = 0.0;
    double zeta_k_abs = 0.0;
    double phi_probe = 0.0;            // detuning of the probed doublet
    double detuned_rabi_bound = 0.0;   // 4 z^2 / (4 z^2 + phi^2) for the probe
    double transfer_at_end = 0.0;      // g-manifold population at t_end
    double max_transfer = 0.0;
    double min_fidelity = 1.0;         // vs the framed two-level reference
    double final_fidelity = 1.0;
    double max_i_population = 0.0;
};

// Integrates the full time-dependent three-level Hamiltonian from |e, n_probe>
// and compares against the selective two-level reference carried through the
// level-shift frame.  Step clamp: 2 pi / (20 max detuning).
SelectivityReport validate_selectivity(int k, const RamanParams& p, int n_probe,
                                       const HilbertSpec& field, double t_end = 0.0);

}  // namespace sfock
