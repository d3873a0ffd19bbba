// types.hpp - Core value types shared across the library: Hilbert-space
// descriptor, labelled operators, and validated density matrices.
//
// Conventions: rates are expressed in units of the bare cavity loss rate
// (gamma = 1 internally), time in units of 1/gamma.  Composite spaces are
// ordered atom (x) field, index = atom_level * (n_max + 1) + n.
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace sfock {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Error taxonomy mirrored by the process exit codes: configuration problems
// exit 2, solver failures 3, insufficient truncation 4.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HilbertSpec {
    int n_max = 30;       // highest retained Fock level
    int atom_levels = 1;  // 1 = field only; 2 or 3 for atom (x) field spaces

    int field_dim() const { return n_max + 1; }
    int dim() const { return atom_levels * (n_max + 1); }

    void validate() const {
        if (n_max < 1) throw std::invalid_argument("HilbertSpec: n_max must be >= 1");
        if (atom_levels < 1 || atom_levels > 3)
            throw std::invalid_argument("HilbertSpec: atom_levels must be 1, 2 or 3");
    }
};

struct Operator {
    std::string label;
    Matrix mat;

    int dim() const { return static_cast<int>(mat.rows()); }
};

// Density matrix with its defining invariants: unit trace (1e-10), Hermiticity
// (1e-10) and spectrum bounded below by -1e-8.
struct DensityMatrix {
    Matrix rho;

    int dim() const { return static_cast<int>(rho.rows()); }

    double trace_error() const { return std::abs(rho.trace() - Complex(1.0, 0.0)); }

    double hermiticity_error() const {
        return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    }

    double min_eigenvalue() const {
        Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()),
                                                 Eigen::EigenvaluesOnly);
        return es.eigenvalues().minCoeff();
    }

    RealVector populations() const { return rho.diagonal().real(); }

    void validate(double trace_tol = 1e-10, double herm_tol = 1e-10,
                  double eig_floor = -1e-8) const {
        if (rho.rows() != rho.cols() || rho.rows() == 0)
            throw std::invalid_argument("DensityMatrix: matrix must be square and non-empty");
        if (trace_error() > trace_tol)
            throw std::domain_error("DensityMatrix: trace deviates from 1 by " +
                                    std::to_string(trace_error()));
        if (hermiticity_error() > herm_tol)
            throw std::domain_error("DensityMatrix: not Hermitian, deviation " +
                                    std::to_string(hermiticity_error()));
        double lo = min_eigenvalue();
        if (lo < eig_floor)
            throw std::domain_error("DensityMatrix: negative eigenvalue " + std::to_string(lo));
    }
};

}  // namespace sfock
