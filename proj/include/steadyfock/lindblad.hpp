// lindblad.hpp - Master-equation engine: vectorised Liouvillian assembly,
// adaptive time evolution and steady-state solvers.
//
// Vectorisation is column-major (Eigen default): vec(A rho B) =
// (B^T kron A) vec(rho).  A dissipative channel (rate, C) contributes
// rate/2 * (2 conj(C) kron C - I kron C^dag C - (C^dag C)^T kron I).
//
// Steady-state strategy: the primary method solves L vec(rho) = 0 with the
// trace row substituted for the redundant rho_00 equation (sparse LU).
// Uniqueness is certified by the smallest singular value of that bordered
// system (exact SVD for dim^2 <= 600, inverse iteration above); a
// degenerate null space falls back to long-time integration.  Generators
// whose channels are all single-band ladder operators close on the
// populations; that rate-equation path is used automatically for
// n_max > 60 and must agree with the full solve to 1e-10.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Sparse>

#include "steadyfock/types.hpp"

namespace sfock {

struct MasterEquationSpec {
    HilbertSpec hilbert;
    Matrix hamiltonian;  // 0x0 when absent
    std::vector<std::pair<double, Operator>> channels;  // (rate, jump operator)

    void validate() const;
    double max_rate() const;  // largest channel rate (>= 0)
    bool has_hamiltonian() const { return hamiltonian.size() != 0; }
};

Eigen::SparseMatrix<Complex> liouvillian_sparse(const MasterEquationSpec& me);
// Dense variant guarded against accidental dim^2 > 1e4 allocations.
Matrix liouvillian_matrix(const MasterEquationSpec& me, bool allow_large = false);

// d rho/dt evaluated in matrix form; cheap at any dimension.
Matrix apply_generator(const MasterEquationSpec& me, const Matrix& rho);

struct EvolveOptions {
    double rtol = 1e-9;
    double atol = 1e-12;
    double max_step = 0.0;  // 0 = default clamp 0.1 / max rate
};

struct EvolveResult {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    double max_trace_drift = 0.0;
};

EvolveResult evolve(const MasterEquationSpec& me, const DensityMatrix& rho0,
                    const std::vector<double>& times, const EvolveOptions& opt = {});

struct SteadyOptions {
    double tail_tol = 1e-8;     // corner-population gate; report refused above
    bool force_full = false;    // bypass the rate-equation dispatch
    bool allow_large = false;   // lift the dense-dimension guard
    int rate_path_above_nmax = 60;
};

struct SteadyStateReport {
    DensityMatrix rho;
    RealVector populations;
    double residual = 0.0;        // max |d rho/dt| element at the solution
    int null_space_dim = 1;
    double uniqueness_gap = 0.0;  // second-smallest singular value (or estimate)
    double tail_mass = 0.0;       // corner population rho(n_max, n_max)
    std::string method;           // "null-space" | "rate-equations" | "long-time"
};

SteadyStateReport steady_state(const MasterEquationSpec& me, const SteadyOptions& opt = {});

// True when every channel is a single-diagonal ladder operator and the
// Hamiltonian is absent or diagonal, i.e. the generator closes on populations.
bool closes_on_populations(const MasterEquationSpec& me);

// Closed population dynamics dp/dt = G p (requires closes_on_populations):
// G(j,k) = rate-weighted |C_jk|^2 gain for j != k, columns summing to zero.
Eigen::MatrixXd population_generator(const MasterEquationSpec& me);

}  // namespace sfock
