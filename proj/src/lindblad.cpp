// lindblad.cpp - Liouvillian assembly and steady-state solvers.

#include "steadyfock/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include <Eigen/SparseLU>
#include <Eigen/SVD>

#include "steadyfock/ode.hpp"

namespace sfock {

namespace {

using Triplet = Eigen::Triplet<Complex>;
using SparseM = Eigen::SparseMatrix<Complex>;

int vec_index(int row, int col, int d) { return col * d + row; }

void add_kron(std::vector<Triplet>& trip, const Matrix& A, const Matrix& B, Complex w) {
    // w * (A kron B), skipping numerically empty entries.
    const int ra = int(A.rows()), ca = int(A.cols());
    const int rb = int(B.rows()), cb = int(B.cols());
    for (int i = 0; i < ra; ++i)
        for (int j = 0; j < ca; ++j) {
            Complex a = A(i, j);
            if (a == Complex(0, 0)) continue;
            for (int k = 0; k < rb; ++k)
                for (int l = 0; l < cb; ++l) {
                    Complex b = B(k, l);
                    if (b == Complex(0, 0)) continue;
                    trip.emplace_back(i * rb + k, j * cb + l, w * a * b);
                }
        }
}

// Single-diagonal-band test: all nonzeros of C sit on offset (col - row) == b.
std::optional<int> band_offset(const Matrix& C, double tol = 0.0) {
    std::optional<int> offset;
    for (int i = 0; i < C.rows(); ++i)
        for (int j = 0; j < C.cols(); ++j) {
            if (std::abs(C(i, j)) <= tol) continue;
            int b = j - i;
            if (!offset) offset = b;
            else if (*offset != b) return std::nullopt;
        }
    if (!offset) offset = 0;  // zero operator: trivially banded
    return offset;
}

bool is_diagonal(const Matrix& H, double tol = 1e-14) {
    for (int i = 0; i < H.rows(); ++i)
        for (int j = 0; j < H.cols(); ++j)
            if (i != j && std::abs(H(i, j)) > tol) return false;
    return true;
}

struct NullSolveResult {
    Vector x;
    double gap = 0.0;
    int null_dim = 1;
    bool ok = false;
};

// Solve L x = 0, trace(x) = 1 by substituting the trace functional for the
// rho_00 row (that equation is minus the sum of the other diagonal rows).
NullSolveResult solve_null_space(const SparseM& L, int d) {
    const int n = d * d;
    std::vector<Triplet> trip;
    trip.reserve(size_t(L.nonZeros()) + size_t(d));
    for (int outer = 0; outer < L.outerSize(); ++outer)
        for (SparseM::InnerIterator it(L, outer); it; ++it)
            if (it.row() != 0) trip.emplace_back(int(it.row()), int(it.col()), it.value());
    for (int i = 0; i < d; ++i) trip.emplace_back(0, vec_index(i, i, d), Complex(1, 0));
    SparseM A(n, n);
    A.setFromTriplets(trip.begin(), trip.end());
    A.makeCompressed();

    NullSolveResult res;
    Eigen::SparseLU<SparseM, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(A);
    lu.factorize(A);
    if (lu.info() != Eigen::Success) {
        res.null_dim = 2;  // lower bound: factorisation failed, generator degenerate
        return res;
    }
    Vector rhs = Vector::Zero(n);
    rhs[0] = 1.0;
    res.x = lu.solve(rhs);

    // Smallest singular value of A by inverse iteration on (A^dag A)^-1,
    // reusing the factorisation.  Certifies a one-dimensional null space of L.
    Eigen::SparseLU<SparseM, Eigen::COLAMDOrdering<int>> lu_adj;
    SparseM Aadj = A.adjoint();
    lu_adj.analyzePattern(Aadj);
    lu_adj.factorize(Aadj);
    if (lu_adj.info() != Eigen::Success) {
        res.null_dim = 2;
        return res;
    }
    std::mt19937_64 rng(0x5feadf0c);
    std::normal_distribution<double> gauss;
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = Complex(gauss(rng), gauss(rng));
    v.normalize();
    double sigma = 0.0;
    for (int it = 0; it < 50; ++it) {
        Vector z = lu.solve(v);
        Vector w = lu_adj.solve(z);
        double norm = w.norm();
        if (!std::isfinite(norm) || norm == 0.0) {
            res.null_dim = 2;
            return res;
        }
        double sigma_new = 1.0 / std::sqrt(norm);  // ||(A^dag A)^{-1}|| ~ 1/sigma_min^2
        v = w / norm;
        if (it > 4 && std::abs(sigma_new - sigma) < 1e-3 * sigma_new) {
            sigma = sigma_new;
            break;
        }
        sigma = sigma_new;
    }
    res.gap = sigma;
    res.null_dim = sigma > 1e-8 ? 1 : 2;
    res.ok = sigma > 1e-8;
    return res;
}

}  // namespace

void MasterEquationSpec::validate() const {
    hilbert.validate();
    int d = hilbert.dim();
    if (has_hamiltonian() && (hamiltonian.rows() != d || hamiltonian.cols() != d))
        throw std::invalid_argument("MasterEquationSpec: Hamiltonian dimension mismatch");
    for (const auto& [rate, op] : channels) {
        if (rate < 0) throw std::invalid_argument("MasterEquationSpec: negative channel rate");
        if (op.mat.rows() != d || op.mat.cols() != d)
            throw std::invalid_argument("MasterEquationSpec: channel '" + op.label +
                                        "' dimension mismatch");
    }
}

double MasterEquationSpec::max_rate() const {
    double r = 0.0;
    for (const auto& [rate, op] : channels) r = std::max(r, rate);
    if (has_hamiltonian()) r = std::max(r, hamiltonian.cwiseAbs().maxCoeff());
    return r;
}

Eigen::SparseMatrix<Complex> liouvillian_sparse(const MasterEquationSpec& me) {
    me.validate();
    const int d = me.hilbert.dim();
    const long n = long(d) * d;
    if (n > 1'000'000)
        throw std::invalid_argument("liouvillian_sparse: dimension overflow guard");
    std::vector<Triplet> trip;
    Matrix I = Matrix::Identity(d, d);
    if (me.has_hamiltonian()) {
        add_kron(trip, I, me.hamiltonian, Complex(0, -1));
        add_kron(trip, me.hamiltonian.transpose(), I, Complex(0, 1));
    }
    for (const auto& [rate, op] : me.channels) {
        if (rate == 0.0) continue;
        Matrix CdC = op.mat.adjoint() * op.mat;
        add_kron(trip, op.mat.conjugate(), op.mat, Complex(rate, 0));
        add_kron(trip, I, CdC, Complex(-rate / 2, 0));
        add_kron(trip, CdC.transpose(), I, Complex(-rate / 2, 0));
    }
    SparseM L(n, n);
    L.setFromTriplets(trip.begin(), trip.end());
    L.makeCompressed();
    return L;
}

Matrix liouvillian_matrix(const MasterEquationSpec& me, bool allow_large) {
    const long d = me.hilbert.dim();
    if (!allow_large && d * d > 10'000)
        throw std::invalid_argument(
            "liouvillian_matrix: dim^2 > 1e4 rejected by default (pass allow_large)");
    return Matrix(liouvillian_sparse(me));
}

Matrix apply_generator(const MasterEquationSpec& me, const Matrix& rho) {
    const int d = me.hilbert.dim();
    Matrix out = Matrix::Zero(d, d);
    if (me.has_hamiltonian())
        out = Complex(0, -1) * (me.hamiltonian * rho - rho * me.hamiltonian);
    for (const auto& [rate, op] : me.channels) {
        if (rate == 0.0) continue;
        Matrix Cr = op.mat * rho;
        Matrix CdC = op.mat.adjoint() * op.mat;
        out.noalias() += rate * (Cr * op.mat.adjoint());
        out.noalias() -= (rate / 2) * (CdC * rho);
        out.noalias() -= (rate / 2) * (rho * CdC);
    }
    return out;
}

bool closes_on_populations(const MasterEquationSpec& me) {
    if (me.has_hamiltonian() && !is_diagonal(me.hamiltonian)) return false;
    for (const auto& [rate, op] : me.channels) {
        if (rate == 0.0) continue;
        if (!band_offset(op.mat)) return false;
    }
    return true;
}

Eigen::MatrixXd population_generator(const MasterEquationSpec& me) {
    me.validate();
    if (!closes_on_populations(me))
        throw std::invalid_argument(
            "population_generator: generator does not close on populations");
    int d = me.hilbert.dim();
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(d, d);
    for (const auto& [rate, op] : me.channels) {
        if (rate == 0.0) continue;
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                double w = rate * std::norm(op.mat(j, k));
                if (w == 0.0) continue;
                M(j, k) += w;  // gain into j from k
                M(k, k) -= w;  // loss out of k
            }
    }
    return M;
}

EvolveResult evolve(const MasterEquationSpec& me, const DensityMatrix& rho0,
                    const std::vector<double>& times, const EvolveOptions& opt) {
    me.validate();
    rho0.validate(1e-8, 1e-10, -1e-8);
    const int d = me.hilbert.dim();
    if (rho0.dim() != d) throw std::invalid_argument("evolve: state dimension mismatch");
    SparseM L = liouvillian_sparse(me);

    OdeOptions oopt;
    oopt.rtol = opt.rtol;
    oopt.atol = opt.atol;
    double mr = me.max_rate();
    oopt.max_step = opt.max_step > 0 ? opt.max_step
                                     : (mr > 0 ? 0.1 / mr : std::numeric_limits<double>::infinity());

    Vector y = Eigen::Map<const Vector>(rho0.rho.data(), d * d);
    EvolveResult res;
    res.times = times;
    auto rhs = [&](double, const Vector& v, Vector& dv) { dv.noalias() = L * v; };
    ode_integrate_path(
        rhs, times, std::move(y),
        [&](double, const Vector& v) {
            Matrix rho = Eigen::Map<const Matrix>(v.data(), d, d);
            rho = 0.5 * (rho + rho.adjoint()).eval();  // discard roundoff skew
            DensityMatrix dm{std::move(rho)};
            res.max_trace_drift = std::max(res.max_trace_drift, dm.trace_error());
            dm.validate(1e-8, 1e-10, -1e-8);
            res.states.push_back(std::move(dm));
        },
        oopt);
    return res;
}

SteadyStateReport steady_state(const MasterEquationSpec& me, const SteadyOptions& opt) {
    me.validate();
    const int d = me.hilbert.dim();
    const int n_max = me.hilbert.n_max;
    SteadyStateReport rep;

    bool rate_capable = closes_on_populations(me);
    bool use_rate = rate_capable && !opt.force_full && n_max > opt.rate_path_above_nmax;
    if (!use_rate && !opt.allow_large && long(d) * d > 10'000 && rate_capable)
        use_rate = true;  // dense full solve would trip the guard; rate path is exact here

    if (use_rate) {
        Eigen::MatrixXd M = population_generator(me);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
        Eigen::MatrixXd ker = lu.kernel();
        rep.null_space_dim = int(ker.cols());
        if (rep.null_space_dim == 1) {
            Eigen::VectorXd p = ker.col(0);
            if (p.sum() < 0) p = -p;
            if (p.minCoeff() < -1e-9 * p.cwiseAbs().maxCoeff())
                throw SolverError("steady_state: rate-equation kernel not a distribution");
            p = p.cwiseMax(0.0);
            p /= p.sum();
            Matrix rho = Matrix::Zero(d, d);
            for (int i = 0; i < d; ++i) rho(i, i) = p[i];
            rep.rho = DensityMatrix{std::move(rho)};
            rep.populations = p;
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
            Eigen::VectorXd sv = svd.singularValues();
            rep.uniqueness_gap = sv[sv.size() - 2];  // population block only
            rep.method = "rate-equations";
        }
    }

    if (rep.method.empty()) {
        SparseM L = liouvillian_sparse(me);
        NullSolveResult ns = solve_null_space(L, d);

        // Exact spectrum of the small problem: certifies the gap and the
        // null-space dimension rather than estimating them.
        if (long(d) * d <= 600) {
            Matrix Ld(L);
            Eigen::BDCSVD<Matrix> svd(Ld, Eigen::ComputeThinV);
            Eigen::VectorXd sv = svd.singularValues();
            int nulls = 0;
            for (int i = 0; i < sv.size(); ++i)
                if (sv[i] <= 1e-8) ++nulls;
            ns.null_dim = std::max(nulls, 1);
            ns.gap = sv.size() >= 2 ? sv[sv.size() - 2] : 0.0;
            ns.ok = ns.null_dim == 1 && ns.gap > 1e-8;
            if (ns.ok) ns.x = svd.matrixV().col(sv.size() - 1);
        }
        rep.null_space_dim = ns.null_dim;
        rep.uniqueness_gap = ns.gap;

        if (ns.ok) {
            Matrix rho = Eigen::Map<const Matrix>(ns.x.data(), d, d);
            rho = 0.5 * (rho + rho.adjoint()).eval();
            rho /= rho.trace();
            rep.rho = DensityMatrix{std::move(rho)};
            rep.populations = rep.rho.populations();
            rep.method = "null-space";
        } else {
            // Degenerate or uncertifiable null space: integrate from the
            // maximally mixed state until the generator residual settles.
            Matrix rho = Matrix::Identity(d, d) / double(d);
            DensityMatrix dm{std::move(rho)};
            double resid = apply_generator(me, dm.rho).cwiseAbs().maxCoeff();
            double t = 0.0;
            const double chunk = 10.0, t_limit = 2000.0;
            EvolveOptions eopt;
            while (resid > 1e-9 && t < t_limit) {
                EvolveResult er = evolve(me, dm, {0.0, chunk}, eopt);
                dm = er.states.back();
                t += chunk;
                resid = apply_generator(me, dm.rho).cwiseAbs().maxCoeff();
            }
            if (resid > 1e-9)
                throw SolverError("steady_state: long-time fallback did not converge");
            rep.rho = std::move(dm);
            rep.populations = rep.rho.populations();
            rep.method = "long-time";
        }
    }

    rep.residual = apply_generator(me, rep.rho.rho).cwiseAbs().maxCoeff();
    rep.tail_mass = rep.populations[d - 1];
    rep.rho.validate(1e-9, 1e-9, -1e-8);
    if (rep.tail_mass > opt.tail_tol) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "steady_state: truncation insufficient, corner population %g exceeds %g",
                      rep.tail_mass, opt.tail_tol);
        throw TruncationError(msg);
    }
    return rep;
}

}  // namespace sfock
