// observables.cpp - Wigner evaluation and scalar state diagnostics.

#include "steadyfock/observables.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace sfock {

namespace {

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool diagonal_enough(const Matrix& rho) {
    double peak = rho.cwiseAbs().maxCoeff();
    for (int i = 0; i < rho.rows(); ++i)
        for (int j = 0; j < rho.cols(); ++j)
            if (i != j && std::abs(rho(i, j)) > 1e-13 * peak) return false;
    return true;
}

// Tr[rho D(beta) P] for diagonal rho: sum_n p_n (-1)^n e^{-x/2} L_n(x) with
// x = |beta|^2. The scaled Laguerre values follow the standard three-term
// recurrence; the result tracks the dominant solution, so relative error
// stays small and every value is a matrix element bounded by 1.
double parity_overlap_diagonal(const RealVector& pops, double x) {
    const int d = int(pops.size());
    double w0 = std::exp(-0.5 * x);
    double acc = pops[0] * w0;
    if (d == 1) return acc;
    double w1 = (1.0 - x) * w0;
    acc -= pops[1] * w1;
    double sgn = 1.0;  // (-1)^n for n = 2, 3, ...
    for (int n = 2; n < d; ++n) {
        double w2 = ((2.0 * n - 1.0 - x) * w1 - (n - 1.0) * w0) / double(n);
        acc += sgn * pops[n] * w2;
        w0 = w1;
        w1 = w2;
        sgn = -sgn;
    }
    return acc;
}

// Tr[rho D(beta) P] for general rho, expanded over the diagonals L >= 0 of
// rho. Each band sums rho_{m,m+L} (-1)^m s_m e^{i L arg beta} where
// s_m = sqrt(m!/(m+L)!) |beta|^L e^{-x/2} L_m^{(L)}(x) = |<m+L|D(beta)|m>|
// up to sign; the L < 0 half is the conjugate, giving 2 Re per band.
double parity_overlap_dense(const Matrix& rho, Complex beta) {
    const int d = int(rho.rows());
    const double x = std::norm(beta);
    RealVector diag = rho.diagonal().real();
    double acc = parity_overlap_diagonal(diag, x);

    const double babs = std::abs(beta);
    const Complex dir = babs > 0.0 ? beta / babs : Complex(1.0, 0.0);
    double s0 = std::exp(-0.5 * x);  // s_0^{(L)}, updated band by band
    Complex ph(1.0, 0.0);            // e^{i L arg beta}
    for (int L = 1; L < d; ++L) {
        s0 *= babs / std::sqrt(double(L));
        ph *= dir;
        double band_peak = 0.0;
        for (int m = 0; m + L < d; ++m)
            band_peak = std::max(band_peak, std::abs(rho(m, m + L)));
        if (band_peak * double(d) < 1e-18) continue;  // |s_m| <= 1 on the band
        Complex band(0.0, 0.0);
        double sp = 0.0, s = s0;
        for (int m = 0; m + L < d; ++m) {
            band += rho(m, m + L) * ((m & 1) ? -s : s);
            double c1 = (2.0 * m + L + 1.0 - x) /
                        std::sqrt(double(m + 1) * double(m + L + 1));
            double c2 = std::sqrt(double(m) * double(m + L) /
                                  (double(m + 1) * double(m + L + 1)));
            double sn = c1 * s - c2 * sp;
            sp = s;
            s = sn;
        }
        acc += 2.0 * (band * ph).real();
    }
    return acc;
}

}  // namespace

double wigner_point(const DensityMatrix& rho, Complex alpha) {
    const Complex beta = 2.0 * alpha;
    double s = diagonal_enough(rho.rho)
                   ? parity_overlap_diagonal(rho.populations(), std::norm(beta))
                   : parity_overlap_dense(rho.rho, beta);
    return s * (2.0 / M_PI);
}

WignerGrid wigner(const DensityMatrix& rho, const WignerOptions& opt) {
    rho.validate(1e-8, 1e-8, -1e-8);
    if (opt.resolution < 32)
        throw std::invalid_argument("wigner: resolution < 32 rejected as too coarse");
    if (!(opt.x_max > opt.x_min) || !(opt.p_max > opt.p_min))
        throw std::invalid_argument("wigner: empty axis range");
    const int res = opt.resolution;

    WignerGrid g;
    g.x.resize(res);
    g.p.resize(res);
    for (int i = 0; i < res; ++i) {
        g.x[i] = opt.x_min + (opt.x_max - opt.x_min) * double(i) / double(res - 1);
        g.p[i] = opt.p_min + (opt.p_max - opt.p_min) * double(i) / double(res - 1);
    }
    g.values.resize(res, res);

    const bool diag = diagonal_enough(rho.rho);
    const RealVector pops = rho.populations();

    for (int i = 0; i < res; ++i)
        for (int j = 0; j < res; ++j) {
            Complex beta = 2.0 * Complex(g.x[i], g.p[j]);
            double s = diag ? parity_overlap_diagonal(pops, std::norm(beta))
                            : parity_overlap_dense(rho.rho, beta);
            g.values(i, j) = s * (2.0 / M_PI);
        }

    const double cell = (g.x[1] - g.x[0]) * (g.p[1] - g.p[0]);
    g.min_value = g.values.minCoeff();
    g.integral = g.values.sum() * cell;
    g.negativity_volume = g.values.cwiseAbs().sum() * cell - 1.0;
    return g;
}

FockFidelity fock_fidelity(const DensityMatrix& rho, int n) {
    if (n < 0 || n >= rho.dim())
        throw std::out_of_range("fock_fidelity: target level outside truncation");
    double overlap = std::max(0.0, rho.rho(n, n).real());
    return {std::sqrt(overlap), overlap};
}

std::optional<double> mandel_q(const DensityMatrix& rho) {
    RealVector p = rho.populations();
    double n1 = 0.0, n2 = 0.0;
    for (int n = 0; n < p.size(); ++n) {
        n1 += double(n) * p[n];
        n2 += double(n) * double(n) * p[n];
    }
    if (n1 <= 0.0) return std::nullopt;
    return (n2 - n1 * n1 - n1) / n1;
}

double purity(const DensityMatrix& rho) { return (rho.rho * rho.rho).trace().real(); }

double mean_photon(const DensityMatrix& rho) {
    RealVector p = rho.populations();
    double n1 = 0.0;
    for (int n = 0; n < p.size(); ++n) n1 += double(n) * p[n];
    return n1;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("trace_distance: dimension mismatch");
    Matrix diff = a.rho - b.rho;
    diff = 0.5 * (diff + diff.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> es(diff, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

NonclassicalityReport classify_nonclassical(const WignerGrid& g) {
    NonclassicalityReport rep;
    rep.min_value = g.min_value;
    rep.negativity_volume = g.negativity_volume;
    rep.nonclassical = g.min_value < -1e-3;
    return rep;
}

StateMetrics state_metrics(const DensityMatrix& rho, int target, const WignerGrid& g) {
    StateMetrics m;
    m.populations = rho.populations();
    m.target = target;
    FockFidelity f = fock_fidelity(rho, target);
    m.f_sqrt = f.f_sqrt;
    m.f_overlap = f.f_overlap;
    m.purity = purity(rho);
    m.mean_photon = mean_photon(rho);
    m.mandel = mandel_q(rho);
    m.wigner_min = g.min_value;
    return m;
}

void write_wigner_csv(std::ostream& os, const WignerGrid& g) {
    os << "x,p,W\n";
    for (int i = 0; i < g.x.size(); ++i)
        for (int j = 0; j < g.p.size(); ++j)
            os << g17(g.x[i]) << "," << g17(g.p[j]) << "," << g17(g.values(i, j)) << "\n";
}

void write_wigner_matrix(std::ostream& os, const WignerGrid& g) {
    os << "# x " << g17(g.x[0]) << " " << g17(g.x[g.x.size() - 1]) << " p "
       << g17(g.p[0]) << " " << g17(g.p[g.p.size() - 1]) << " resolution "
       << g.x.size() << "\n";
    for (int i = 0; i < g.values.rows(); ++i) {
        for (int j = 0; j < g.values.cols(); ++j) {
            if (j) os << " ";
            os << g17(g.values(i, j));
        }
        os << "\n";
    }
}

void write_populations_csv(std::ostream& os, const RealVector& populations) {
    os << "n,p\n";
    for (int n = 0; n < populations.size(); ++n)
        os << n << "," << g17(populations[n]) << "\n";
}

}  // namespace sfock
