// observables.hpp - Everything the figures display: photon-number
// distributions, Wigner functions, Fock fidelity and nonclassicality
// diagnostics.
//
// The Wigner function is evaluated point by point through the displaced
// parity, W(alpha) = (2/pi) Tr[rho D(2 alpha) P], with alpha = x + i p and P
// the photon-number parity, so each grid value is exact at the given
// truncation. The trace is expanded over the diagonals of rho in scaled
// associated-Laguerre terms whose upward recurrence follows the dominant
// solution: every intermediate is a displacement matrix element bounded by 1,
// keeping the evaluation stable for any grid range and cutoff. Diagonal
// states take an O(dim) per-point path and are rotationally symmetric by
// construction; general states cost O(dim^2) per point.
#pragma once

#include <iosfwd>
#include <optional>

#include "steadyfock/types.hpp"

namespace sfock {

struct WignerOptions {
    double x_min = -6.0, x_max = 6.0;
    double p_min = -6.0, p_max = 6.0;
    int resolution = 201;  // samples per axis; < 32 rejected
};

struct WignerGrid {
    RealVector x, p;        // axis samples
    Eigen::MatrixXd values;  // values(i, j) = W(x_i, p_j)
    double min_value = 0.0;
    double integral = 0.0;  // Riemann sum over the grid; ~1 when the grid covers rho
    double negativity_volume = 0.0;  // integral of |W| minus 1 over the grid
};

WignerGrid wigner(const DensityMatrix& rho, const WignerOptions& opt = {});
double wigner_point(const DensityMatrix& rho, Complex alpha);

struct FockFidelity {
    double f_sqrt = 0.0;     // sqrt(<n|rho|n>), the fidelity of a pure target
    double f_overlap = 0.0;  // <n|rho|n>
};

FockFidelity fock_fidelity(const DensityMatrix& rho, int n);

// Q = (<n^2> - <n>^2 - <n>) / <n>; empty when <n> = 0 (undefined).
std::optional<double> mandel_q(const DensityMatrix& rho);

double purity(const DensityMatrix& rho);
double mean_photon(const DensityMatrix& rho);

// Half trace norm of the difference; 0 for equal states, 1 for orthogonal.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

struct NonclassicalityReport {
    bool nonclassical = false;
    double min_value = 0.0;
    double negativity_volume = 0.0;
};

// Nonclassical iff min W < -1e-3; the tolerance absorbs grid and truncation
// error so mildly noisy classical states do not flip the flag.
NonclassicalityReport classify_nonclassical(const WignerGrid& g);

struct StateMetrics {
    RealVector populations;
    int target = 0;  // Fock level the fidelity refers to
    double f_sqrt = 0.0;
    double f_overlap = 0.0;
    double purity = 0.0;
    double mean_photon = 0.0;
    std::optional<double> mandel;
    double wigner_min = 0.0;
};

StateMetrics state_metrics(const DensityMatrix& rho, int target, const WignerGrid& g);

// CSV: header x,p,W then one row per grid point, x outer loop.
void write_wigner_csv(std::ostream& os, const WignerGrid& g);
// Dense matrix form: one header line with ranges and resolution, then one row
// per x sample with the p samples as columns.
void write_wigner_matrix(std::ostream& os, const WignerGrid& g);
// CSV: header n,p then one row per Fock level.
void write_populations_csv(std::ostream& os, const RealVector& populations);

}  // namespace sfock
