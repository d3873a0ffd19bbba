// raman.cpp - Effective-parameter algebra and brute-force selectivity checks.

#include "steadyfock/raman.hpp"

#include <cmath>

#include "steadyfock/fock_algebra.hpp"
#include "steadyfock/ode.hpp"

namespace sfock {

void RamanParams::validate() const {
    if (Delta == 0.0 || Delta1 == 0.0 || Delta2 == 0.0)
        throw std::domain_error("RamanParams: detunings must be nonzero");
}

EffectiveParams derive_effective(const RamanParams& p) {
    p.validate();
    EffectiveParams e;
    e.xi = std::norm(p.lambda) / p.Delta;
    e.zeta = std::conj(p.lambda) * p.Omega2 * (1.0 / p.Delta + 1.0 / p.Delta2) / 2.0;
    e.varpi_g = std::norm(p.Omega1) / p.Delta1;
    e.varpi_e = std::norm(p.Omega2) / p.Delta2;
    e.delta = p.Delta - p.Delta2;
    return e;
}

std::vector<std::string> hierarchy_warnings(const RamanParams& p, int n_max) {
    std::vector<std::string> warnings;
    auto check = [&](double num, double den, const std::string& what) {
        if (num > 0.2 * std::abs(den))
            warnings.push_back(what + " exceeds 0.2, effective theory strained (ratio " +
                               std::to_string(num / std::abs(den)) + ")");
    };
    check(std::abs(p.lambda) * std::sqrt(double(n_max + 1)), p.Delta,
          "|lambda| sqrt(n_max+1) / |Delta|");
    check(std::abs(p.Omega1), p.Delta1, "|Omega_1| / |Delta_1|");
    check(std::abs(p.Omega2), p.Delta2, "|Omega_2| / |Delta_2|");
    return warnings;
}

RamanParams solve_selectivity(int k, RamanParams p) {
    p.validate();
    if (k < 0) throw std::invalid_argument("solve_selectivity: k must be >= 0");
    // varpi_g = (k+1) xi  <=>  |Omega_1| = sqrt((k+1) Delta_1 / Delta) |lambda|.
    double ratio = double(k + 1) * p.Delta1 / p.Delta;
    if (ratio <= 0)
        throw std::domain_error("solve_selectivity: Delta and Delta_1 must share a sign");
    p.Omega1 = std::sqrt(ratio) * std::abs(p.lambda);
    // delta = varpi_e  <=>  Delta_2^2 - Delta Delta_2 + |Omega_2|^2 = 0 (root near Delta).
    double disc = p.Delta * p.Delta - 4.0 * std::norm(p.Omega2);
    if (disc <= 0)
        throw std::domain_error("solve_selectivity: |Omega_2| too large for a dispersive root");
    p.Delta2 = 0.5 * (p.Delta + std::copysign(std::sqrt(disc), p.Delta));
    if (std::abs(p.Omega1) > 0.2 * std::abs(p.Delta1))
        throw std::domain_error("solve_selectivity: required |Omega_1| breaks the dispersive hierarchy");
    return p;
}

RamanParams reference_point(int k, double lambda) {
    if (k < 0) throw std::invalid_argument("reference_point: k must be >= 0");
    if (lambda <= 0) throw std::invalid_argument("reference_point: lambda must be > 0");
    RamanParams p;
    p.lambda = lambda;
    p.Delta = 10.0 * std::sqrt(double(k + 1)) * lambda;
    p.Delta1 = p.Delta;
    p.Delta2 = p.Delta / 1.01;  // placeholder; solve_selectivity retunes it
    p.Omega2 = 0.1 * std::sqrt(double(k + 1)) * lambda;
    p.Omega1 = std::sqrt(double(k + 1)) * lambda;
    return solve_selectivity(k, p);
}

Operator selective_jc(int k, Complex zeta_k, const HilbertSpec& field) {
    field.validate();
    if (field.atom_levels != 1)
        throw std::invalid_argument("selective_jc: pass the field-space spec");
    if (k < 0 || k + 1 > field.n_max)
        throw std::out_of_range("selective_jc: need 0 <= k and k+1 <= n_max");
    int d = field.field_dim();
    Matrix H = Matrix::Zero(2 * d, 2 * d);
    // |g, k+1><e, k| entry: g block row, e block column.
    H(0 * d + k + 1, 1 * d + k) = zeta_k;
    H(1 * d + k, 0 * d + k + 1) = std::conj(zeta_k);
    return {"H1_k" + std::to_string(k), std::move(H)};
}

Operator resonant_jc(Complex lambda_tilde, const HilbertSpec& field) {
    field.validate();
    if (field.atom_levels != 1)
        throw std::invalid_argument("resonant_jc: pass the field-space spec");
    int d = field.field_dim();
    Matrix a = annihilation(field).mat;
    Matrix H = Matrix::Zero(2 * d, 2 * d);
    // lambda_tilde sigma_ig a: block (i=1, g=0) carries a.
    H.block(d, 0, d, d) = lambda_tilde * a;
    H.block(0, d, d, d) = std::conj(lambda_tilde) * a.adjoint();
    return {"H2", std::move(H)};
}

SelectivityReport validate_selectivity(int k, const RamanParams& p, int n_probe,
                                       const HilbertSpec& field, double t_end) {
    field.validate();
    p.validate();
    if (field.atom_levels != 1)
        throw std::invalid_argument("validate_selectivity: pass the field-space spec");
    if (n_probe < 0 || n_probe + 1 > field.n_max)
        throw std::out_of_range("validate_selectivity: probe level outside truncation");
    EffectiveParams eff = derive_effective(p);
    const int d = field.field_dim();
    const int D = 3 * d;

    SelectivityReport rep;
    rep.k = k;
    rep.n_probe = n_probe;
    rep.zeta_k_abs = std::abs(eff.zeta_n(k));
    rep.phi_probe = eff.phi_n(n_probe);
    double zp = std::abs(eff.zeta_n(n_probe));
    rep.detuned_rabi_bound =
        4 * zp * zp / (4 * zp * zp + rep.phi_probe * rep.phi_probe);
    if (t_end <= 0 && rep.zeta_k_abs == 0.0)
        throw std::domain_error("validate_selectivity: zeta_k vanishes, pass t_end explicitly");
    rep.t_end = t_end > 0 ? t_end : M_PI / (2.0 * rep.zeta_k_abs);

    // Constant pieces of H(t); ordering g = 0, e = 1, i = 2, atom (x) field.
    Matrix a = annihilation(field).mat;
    Matrix h_cav = Matrix::Zero(D, D), h_1 = Matrix::Zero(D, D), h_2 = Matrix::Zero(D, D);
    h_cav.block(2 * d, 0 * d, d, d) = p.lambda * a;        // sigma_ig a
    h_1.block(2 * d, 0 * d, d, d) = p.Omega1 * Matrix::Identity(d, d);
    h_2.block(2 * d, 1 * d, d, d) = p.Omega2 * Matrix::Identity(d, d);
    Matrix h_cav_d = h_cav.adjoint(), h_1_d = h_1.adjoint(), h_2_d = h_2.adjoint();

    Vector psi0 = Vector::Zero(D);
    psi0[1 * d + n_probe] = 1.0;  // |e, n_probe>

    const int points = 400;
    std::vector<double> times(points + 1);
    for (int i = 0; i <= points; ++i) times[i] = rep.t_end * i / points;

    OdeOptions opt;
    opt.rtol = 1e-9;
    opt.atol = 1e-12;
    double wmax = std::max({std::abs(p.Delta), std::abs(p.Delta1), std::abs(p.Delta2)});
    opt.max_step = 2.0 * M_PI / (20.0 * wmax);

    // Detuned-Rabi reference on {|e,n_probe>, |g,n_probe+1>} with the
    // level-shift phases of the diagonal frame applied on top.  The framed
    // coupling element is <g,n+1|V|e,n> = zeta_n e^{+i phi_n t}.
    double phi = rep.phi_probe;
    double Om = std::sqrt(zp * zp + 0.25 * phi * phi);
    Complex zeta_pr = eff.zeta_n(n_probe);
    auto reference = [&](double t) {
        Complex c1, c2;
        if (Om == 0.0) {
            c1 = 1.0;
            c2 = 0.0;
        } else {
            c1 = (std::cos(Om * t) + Complex(0, 1) * (phi / 2.0) / Om * std::sin(Om * t)) *
                 std::exp(Complex(0, -1) * (phi / 2.0) * t);
            c2 = -Complex(0, 1) * (zeta_pr / Om) * std::sin(Om * t) *
                 std::exp(Complex(0, 1) * (phi / 2.0) * t);
        }
        Vector ref = Vector::Zero(D);
        ref[1 * d + n_probe] = c1 * std::exp(Complex(0, -1) * eff.varpi_e * t);
        ref[0 * d + n_probe + 1] =
            c2 * std::exp(Complex(0, -1) * (eff.xi * (n_probe + 1) - eff.varpi_g) * t);
        return ref;
    };

    auto rhs = [&](double t, const Vector& y, Vector& dy) {
        Complex ph_c = std::exp(Complex(0, -1) * p.Delta * t);
        Complex ph_1 = std::exp(Complex(0, 1) * p.Delta1 * t);
        Complex ph_2 = std::exp(Complex(0, -1) * p.Delta2 * t);
        dy.noalias() = ph_c * (h_cav * y);
        dy.noalias() += ph_1 * (h_1 * y);
        dy.noalias() += ph_2 * (h_2 * y);
        dy.noalias() += std::conj(ph_c) * (h_cav_d * y);
        dy.noalias() += std::conj(ph_1) * (h_1_d * y);
        dy.noalias() += std::conj(ph_2) * (h_2_d * y);
        dy *= Complex(0, -1);
    };

    ode_integrate_path(
        rhs, times, psi0,
        [&](double t, const Vector& psi) {
            double norm_err = std::abs(psi.squaredNorm() - 1.0);
            if (norm_err > 1e-8)
                throw std::runtime_error("validate_selectivity: norm drift " +
                                         std::to_string(norm_err));
            double pg = psi.segment(0, d).squaredNorm();
            double pi = psi.segment(2 * d, d).squaredNorm();
            rep.max_transfer = std::max(rep.max_transfer, pg);
            rep.max_i_population = std::max(rep.max_i_population, pi);
            double f = std::abs(reference(t).dot(psi));  // Eigen dot conjugates the lhs
            rep.min_fidelity = std::min(rep.min_fidelity, f);
            rep.final_fidelity = f;
            if (t == times.back()) rep.transfer_at_end = pg;
        },
        opt);
    return rep;
}

}  // namespace sfock
