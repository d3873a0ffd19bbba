// fock_algebra.hpp - Truncated Fock-space operators and canonical states.
//
// All operators act on the field space alone (dimension n_max + 1).  The
// selective lowering operator |k><k+1| carries unit amplitude; the sqrt(k+1)
// enhancement of the physical process lives in the associated rate.
#pragma once

#include "steadyfock/types.hpp"

namespace sfock {

Operator annihilation(const HilbertSpec& spec);        // a, <n-1|a|n> = sqrt(n)
Operator creation(const HilbertSpec& spec);            // a^dag
Operator number_operator(const HilbertSpec& spec);     // a^dag a
Operator identity_op(const HilbertSpec& spec);
Operator selective_lowering(int k, const HilbertSpec& spec);  // |k><k+1|
Operator selective_raising(int k, const HilbertSpec& spec);   // |k+1><k|

DensityMatrix fock_state(int n, const HilbertSpec& spec);
DensityMatrix thermal_state(double nbar, const HilbertSpec& spec);
// Diagonal state from a population vector; populations are renormalised if
// their sum deviates from 1 by no more than renorm_tol, rejected otherwise.
DensityMatrix diagonal_state(const RealVector& populations, double renorm_tol = 1e-9);

Matrix kron(const Matrix& A, const Matrix& B);

// Default truncation for a target level m: max(2m + 10, 30).
int default_nmax(int m);

}  // namespace sfock
