// fock_algebra.cpp - Implementation of truncated Fock-space constructors.

#include "steadyfock/fock_algebra.hpp"

#include <cmath>

namespace sfock {

namespace {

void require_field_space(const HilbertSpec& spec) {
    spec.validate();
    if (spec.atom_levels != 1)
        throw std::invalid_argument("fock_algebra: operators act on the field space only");
}

}  // namespace

Operator annihilation(const HilbertSpec& spec) {
    require_field_space(spec);
    int d = spec.field_dim();
    Matrix a = Matrix::Zero(d, d);
    for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(double(n));
    return {"a", std::move(a)};
}

Operator creation(const HilbertSpec& spec) {
    Operator a = annihilation(spec);
    return {"a_dag", a.mat.adjoint()};
}

Operator number_operator(const HilbertSpec& spec) {
    require_field_space(spec);
    int d = spec.field_dim();
    Matrix n = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) n(k, k) = double(k);
    return {"n", std::move(n)};
}

Operator identity_op(const HilbertSpec& spec) {
    spec.validate();
    return {"id", Matrix::Identity(spec.dim(), spec.dim())};
}

Operator selective_lowering(int k, const HilbertSpec& spec) {
    require_field_space(spec);
    if (k < 0 || k + 1 > spec.n_max)
        throw std::out_of_range("selective_lowering: need 0 <= k and k+1 <= n_max");
    int d = spec.field_dim();
    Matrix m = Matrix::Zero(d, d);
    m(k, k + 1) = 1.0;  // unit amplitude by convention
    return {"a_" + std::to_string(k), std::move(m)};
}

Operator selective_raising(int k, const HilbertSpec& spec) {
    Operator low = selective_lowering(k, spec);
    return {low.label + "_dag", low.mat.adjoint()};
}

DensityMatrix fock_state(int n, const HilbertSpec& spec) {
    require_field_space(spec);
    if (n < 0 || n > spec.n_max)
        throw std::out_of_range("fock_state: level outside [0, n_max]");
    int d = spec.field_dim();
    Matrix rho = Matrix::Zero(d, d);
    rho(n, n) = 1.0;
    return {std::move(rho)};
}

DensityMatrix thermal_state(double nbar, const HilbertSpec& spec) {
    require_field_space(spec);
    if (nbar < 0) throw std::invalid_argument("thermal_state: nbar must be >= 0");
    int d = spec.field_dim();
    Matrix rho = Matrix::Zero(d, d);
    if (nbar == 0.0) {
        rho(0, 0) = 1.0;
        return {std::move(rho)};
    }
    double q = nbar / (1.0 + nbar);
    double w = 1.0, sum = 0.0;
    std::vector<double> pops(d);
    for (int n = 0; n < d; ++n, w *= q) {
        pops[n] = w;
        sum += w;
    }
    for (int n = 0; n < d; ++n) rho(n, n) = pops[n] / sum;  // renormalised on truncation
    return {std::move(rho)};
}

DensityMatrix diagonal_state(const RealVector& populations, double renorm_tol) {
    int d = static_cast<int>(populations.size());
    if (d == 0) throw std::invalid_argument("diagonal_state: empty population vector");
    if (populations.minCoeff() < 0)
        throw std::domain_error("diagonal_state: negative population");
    double sum = populations.sum();
    if (std::abs(sum - 1.0) > renorm_tol)
        throw std::domain_error("diagonal_state: populations sum to " + std::to_string(sum));
    Matrix rho = Matrix::Zero(d, d);
    for (int n = 0; n < d; ++n) rho(n, n) = populations[n] / sum;
    return {std::move(rho)};
}

Matrix kron(const Matrix& A, const Matrix& B) {
    Matrix out(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return out;
}

int default_nmax(int m) { return std::max(2 * m + 10, 30); }

}  // namespace sfock
