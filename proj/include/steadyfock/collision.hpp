// collision.hpp - Repeated-interaction model of the atomic beam reservoir.
//
// Each arriving atom crosses the cavity for a time tau and interacts through
// one of three couplings: ground-state atoms see the selective exchange at the
// |m+1> -> |m> step, excited atoms the one at |l> -> |l+1>, auxiliary atoms
// the resonant Jaynes-Cummings coupling.  Tracing the atom out after its exact
// transit unitary gives one Kraus map per species; a transit slot applies the
// preparation mixture of those maps.  Interleaving slots with continuous
// natural cavity dissipation and coarse-graining reproduces the engineered
// rates gamma_m = r_g (zeta_m tau)^2, gamma_l = r_e (zeta_l tau)^2 and
// epsilon gamma = r_i (lambda_tilde tau)^2 to first order in the slot spacing.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "steadyfock/lindblad.hpp"
#include "steadyfock/reservoir.hpp"
#include "steadyfock/types.hpp"

namespace sfock {

enum class ArrivalModel { regular, poisson };

struct CollisionConfig {
    BeamParams beam;   // arrival rates, preparation mixture, tau and couplings
    int m = 1;         // ground-species doublet |m+1> -> |m>
    int l = 0;         // excited-species doublet |l> -> |l+1>; l < m
    double gamma = 1.0;  // natural damping between (and during) transits; 0 allowed
    double nbar = 0.0;
    double t_end = 1.0;
    double window = 0.0;  // coarse-grain recording spacing; 0 = t_end / 50
    ArrivalModel arrivals = ArrivalModel::regular;
    std::uint64_t seed = 1;  // poisson arrival stream

    void validate() const;
    // Busy-fraction advisory (arrival rate x tau > 0.5 means overlapping
    // transits) plus the beam's own weak-coupling advisories; report-only.
    std::vector<std::string> warnings() const;
};

enum class Species { ground, excited, auxiliary };

// Kraus pair {<g|U|s>, <e|U|s>} (or {<g|U|i>, <i|U|i>}) of one atom prepared
// in species s, from the exact transit unitary U = exp(-i H_s tau) of the
// species' two-level-atom (x) field Hamiltonian.
std::vector<Matrix> transit_kraus(Species s, const CollisionConfig& cfg,
                                  const HilbertSpec& field);

struct KrausMap {
    std::vector<Matrix> kraus;

    Matrix apply(const Matrix& rho) const;  // sum_k K rho K^dag
    // Action on diagonal states: T(j, i) = sum_k |K_k(j, i)|^2, column-stochastic.
    Eigen::MatrixXd population_matrix() const;
    double completeness_error() const;  // max |sum_k K^dag K - 1|
};

// One-arrival averaged map: mixture p_g, p_e, p_i over the species maps with
// the remainder 1 - sum p an empty slot (identity), weights folded into the
// Kraus operators.  Exactly trace preserving by construction.
KrausMap collision_map(const CollisionConfig& cfg, const HilbertSpec& field);

struct BeamTrajectory {
    std::vector<double> times;  // recording instants, snapped to slot edges
    std::vector<DensityMatrix> states;
    int collisions = 0;  // transit slots applied (mixture includes empty slots)
    std::uint64_t seed = 0;
    double slot_rate = 0.0;  // r_g + r_e + r_i
};

// Alternates natural dissipation with transit slots up to t_end.  The slot
// rate is r_g + r_e + r_i; per-slot preparation follows the explicit mixture
// p_g, p_e, p_i when any is set and the arrival-rate fractions otherwise.
// Regular arrivals space slots uniformly (deterministic); poisson draws
// seeded exponential gaps.  Zero slot rate reduces to plain dissipative
// evolution on the recording grid.  Records rho at multiples of the window,
// snapped forward to the next slot edge, plus the exact initial and final
// states.
BeamTrajectory simulate_beam(const CollisionConfig& cfg, const DensityMatrix& rho0);

// CSV dump: header t,p0,...,pN then one row per recorded state.
void write_trajectory_csv(std::ostream& os, const BeamTrajectory& traj);

}  // namespace sfock
