// collision.cpp - Transit Kraus maps and the repeated-interaction chain.

#include "steadyfock/collision.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <random>
#include <stdexcept>

#include <Eigen/LU>

#include "steadyfock/fock_algebra.hpp"
#include "steadyfock/ode.hpp"
#include "steadyfock/raman.hpp"

namespace sfock {

namespace {

// Scaling-and-squaring matrix exponential with the [13/13] Pade approximant.
Matrix expm_dense(Matrix A) {
    static const double b[] = {64764752532480000.0, 32382376266240000.0,
                               7771770303897600.0,  1187353796428800.0,
                               129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,
                               1323241920.0,        40840800.0,
                               960960.0,            16380.0,
                               182.0,               1.0};
    const double theta13 = 5.371920351148152;
    double nrm = A.cwiseAbs().rowwise().sum().maxCoeff();
    int s = 0;
    if (nrm > theta13) s = int(std::ceil(std::log2(nrm / theta13)));
    if (s > 0) A /= std::pow(2.0, s);
    Matrix I = Matrix::Identity(A.rows(), A.cols());
    Matrix A2 = A * A;
    Matrix A4 = A2 * A2;
    Matrix A6 = A4 * A2;
    Matrix U = A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 + b[5] * A4 +
                    b[3] * A2 + b[1] * I);
    Matrix V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 + b[4] * A4 +
               b[2] * A2 + b[0] * I;
    Matrix E = (V - U).partialPivLu().solve(V + U);
    for (int i = 0; i < s; ++i) E = (E * E).eval();
    return E;
}

KrausMap weighted_mixture(const CollisionConfig& cfg, const HilbertSpec& field, double w_g,
                          double w_e, double w_i) {
    KrausMap map;
    auto append = [&](double w, Species s) {
        if (w <= 0) return;
        for (Matrix& K : transit_kraus(s, cfg, field))
            map.kraus.push_back(std::sqrt(w) * K);
    };
    append(w_g, Species::ground);
    append(w_e, Species::excited);
    append(w_i, Species::auxiliary);
    double idle = 1.0 - w_g - w_e - w_i;
    if (idle > 1e-15)
        map.kraus.push_back(std::sqrt(idle) *
                            Matrix::Identity(field.field_dim(), field.field_dim()));
    return map;
}

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void CollisionConfig::validate() const {
    beam.validate();
    if (gamma < 0) throw std::invalid_argument("CollisionConfig: gamma must be >= 0");
    if (nbar < 0) throw std::invalid_argument("CollisionConfig: nbar must be >= 0");
    if (!(t_end > 0)) throw std::invalid_argument("CollisionConfig: t_end must be > 0");
    if (window < 0) throw std::invalid_argument("CollisionConfig: window must be >= 0");
    if (l < 0 || l >= m) throw std::invalid_argument("CollisionConfig: need 0 <= l < m");
}

std::vector<std::string> CollisionConfig::warnings() const {
    std::vector<std::string> out = beam.warnings();
    double busy = (beam.r_g + beam.r_e + beam.r_i) * beam.tau;
    if (busy > 0.5)
        out.push_back("arrival rate x tau = " + std::to_string(busy) +
                      " exceeds 0.5, transits overlap and the one-atom picture breaks");
    return out;
}

std::vector<Matrix> transit_kraus(Species s, const CollisionConfig& cfg,
                                  const HilbertSpec& field) {
    cfg.validate();
    field.validate();
    if (field.atom_levels != 1)
        throw std::invalid_argument("transit_kraus: pass the field-space spec");
    const int d = field.field_dim();
    Matrix H;
    int col = 0;  // block column of the entering atom state
    switch (s) {
        case Species::ground:
            H = selective_jc(cfg.m, std::sqrt(double(cfg.m + 1)) * cfg.beam.zeta, field).mat;
            col = 0;
            break;
        case Species::excited:
            H = selective_jc(cfg.l, std::sqrt(double(cfg.l + 1)) * cfg.beam.zeta, field).mat;
            col = 1;
            break;
        case Species::auxiliary:
            H = resonant_jc(cfg.beam.lambda_tilde, field).mat;
            col = 1;  // auxiliary level sits in the second block of resonant_jc
            break;
    }
    Matrix U = expm_dense(Complex(0.0, -1.0) * cfg.beam.tau * H);
    std::vector<Matrix> out;
    out.push_back(U.block(0, col * d, d, d));
    out.push_back(U.block(d, col * d, d, d));
    return out;
}

Matrix KrausMap::apply(const Matrix& rho) const {
    if (kraus.empty()) throw std::logic_error("KrausMap: no Kraus operators");
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    for (const Matrix& K : kraus) out.noalias() += K * rho * K.adjoint();
    return out;
}

Eigen::MatrixXd KrausMap::population_matrix() const {
    if (kraus.empty()) throw std::logic_error("KrausMap: no Kraus operators");
    const int d = int(kraus.front().rows());
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(d, d);
    for (const Matrix& K : kraus) T += K.cwiseAbs2();
    return T;
}

double KrausMap::completeness_error() const {
    if (kraus.empty()) throw std::logic_error("KrausMap: no Kraus operators");
    const int d = int(kraus.front().rows());
    Matrix S = Matrix::Zero(d, d);
    for (const Matrix& K : kraus) S.noalias() += K.adjoint() * K;
    return (S - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

KrausMap collision_map(const CollisionConfig& cfg, const HilbertSpec& field) {
    cfg.validate();
    return weighted_mixture(cfg, field, cfg.beam.p_g, cfg.beam.p_e, cfg.beam.p_i);
}

BeamTrajectory simulate_beam(const CollisionConfig& cfg, const DensityMatrix& rho0) {
    cfg.validate();
    rho0.validate(1e-8, 1e-10, -1e-8);
    HilbertSpec field{rho0.dim() - 1, 1};
    field.validate();
    if (field.n_max < cfg.m + 2)
        throw std::invalid_argument("simulate_beam: truncation too small, need n_max >= m + 2");

    const int d = field.field_dim();
    const double r_tot = cfg.beam.r_g + cfg.beam.r_e + cfg.beam.r_i;
    const double window = cfg.window > 0 ? cfg.window : cfg.t_end / 50.0;

    MasterEquationSpec nat;
    nat.hilbert = field;
    if (cfg.gamma > 0) {
        nat.channels.emplace_back(cfg.gamma * (1.0 + cfg.nbar), annihilation(field));
        if (cfg.nbar > 0) nat.channels.emplace_back(cfg.gamma * cfg.nbar, creation(field));
    }

    BeamTrajectory traj;
    traj.seed = cfg.seed;
    traj.slot_rate = r_tot;

    if (r_tot == 0.0) {
        std::vector<double> grid{0.0};
        for (long k = 1; double(k) * window < cfg.t_end * (1.0 - 1e-12); ++k)
            grid.push_back(double(k) * window);
        grid.push_back(cfg.t_end);
        EvolveResult ev = evolve(nat, rho0, grid);
        traj.times = std::move(ev.times);
        traj.states = std::move(ev.states);
        return traj;
    }

    if (r_tot * cfg.t_end > 5e6)
        throw std::invalid_argument("simulate_beam: more than 5e6 transit slots requested");

    double w_g = cfg.beam.p_g, w_e = cfg.beam.p_e, w_i = cfg.beam.p_i;
    if (w_g + w_e + w_i <= 0.0) {
        w_g = cfg.beam.r_g / r_tot;
        w_e = cfg.beam.r_e / r_tot;
        w_i = cfg.beam.r_i / r_tot;
    }
    const KrausMap map = weighted_mixture(cfg, field, w_g, w_e, w_i);
    const double slot_dt = 1.0 / r_tot;

    double offdiag = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (i != j) offdiag = std::max(offdiag, std::abs(rho0.rho(i, j)));
    // Every branch (single-band Kraus, ladder dissipators) preserves
    // diagonality, so diagonal inputs evolve on populations alone.
    const bool diagonal_path = offdiag <= 1e-13;

    Vector y;        // diagonal path: populations
    Matrix rho;      // full path: density matrix
    Matrix Mc;       // population generator, complex for the shared integrator
    Matrix kick_T;   // diagonal-path transfer matrix
    Matrix slot_prop;  // cached propagator over one regular slot
    Eigen::SparseMatrix<Complex> Ls;
    std::function<void(double)> flow_free;
    std::function<void()> flow_slot;
    std::function<void()> kick;
    std::function<DensityMatrix()> snap;

    if (diagonal_path) {
        Mc = population_generator(nat).cast<Complex>();
        kick_T = map.population_matrix().cast<Complex>();
        y = rho0.populations().cast<Complex>();
        flow_free = [&](double h) {
            if (h <= 0) return;
            OdeOptions o;
            o.first_step = h;
            y = ode_integrate(
                [&](double, const Vector& v, Vector& dv) { dv.noalias() = Mc * v; }, 0.0, h,
                std::move(y), o);
        };
        if (cfg.arrivals == ArrivalModel::regular) {
            slot_prop = expm_dense(slot_dt * Mc);
            flow_slot = [&]() { y = (slot_prop * y).eval(); };
        } else {
            flow_slot = [&]() { flow_free(slot_dt); };
        }
        kick = [&]() { y = (kick_T * y).eval(); };
        snap = [&]() {
            Matrix r = Matrix::Zero(d, d);
            for (int i = 0; i < d; ++i) r(i, i) = Complex(y[i].real(), 0.0);
            return DensityMatrix{std::move(r)};
        };
    } else {
        Ls = liouvillian_sparse(nat);
        rho = rho0.rho;
        flow_free = [&](double h) {
            if (h <= 0) return;
            Vector v = Eigen::Map<const Vector>(rho.data(), long(d) * d);
            OdeOptions o;
            o.first_step = h;
            v = ode_integrate(
                [&](double, const Vector& u, Vector& du) { du.noalias() = Ls * u; }, 0.0, h,
                std::move(v), o);
            rho = Eigen::Map<const Matrix>(v.data(), d, d);
        };
        if (cfg.arrivals == ArrivalModel::regular && long(d) * d <= 400) {
            slot_prop = expm_dense(slot_dt * Matrix(Ls));
            flow_slot = [&]() {
                Vector v = Eigen::Map<const Vector>(rho.data(), long(d) * d);
                v = (slot_prop * v).eval();
                rho = Eigen::Map<const Matrix>(v.data(), d, d);
            };
        } else {
            flow_slot = [&]() { flow_free(slot_dt); };  // dense cache too large
        }
        kick = [&]() { rho = map.apply(rho); };
        snap = [&]() {
            Matrix r = 0.5 * (rho + rho.adjoint());
            return DensityMatrix{std::move(r)};
        };
    }

    auto record = [&](double t) {
        traj.times.push_back(t);
        DensityMatrix dm = snap();
        dm.validate(1e-8, 1e-8, -1e-8);
        traj.states.push_back(std::move(dm));
    };
    record(0.0);
    double next_mark = window;
    auto maybe_record = [&](double t) {
        if (t + 1e-9 * window < next_mark) return;
        record(t);
        next_mark = window * (std::floor(t / window + 1e-9) + 1.0);
    };

    if (cfg.arrivals == ArrivalModel::regular) {
        const long slots = long(std::floor(cfg.t_end * r_tot + 1e-9));
        for (long k = 1; k <= slots; ++k) {
            flow_slot();
            kick();
            ++traj.collisions;
            maybe_record(double(k) * slot_dt);
        }
        flow_free(cfg.t_end - double(slots) * slot_dt);
    } else {
        std::mt19937_64 rng(cfg.seed);
        double t = 0.0;
        while (true) {
            // Exponential gap from explicit bits, stable across platforms.
            double u = (double(rng() >> 11) + 0.5) * 0x1.0p-53;
            double gap = -std::log(u) / r_tot;
            if (t + gap >= cfg.t_end) {
                flow_free(cfg.t_end - t);
                break;
            }
            flow_free(gap);
            t += gap;
            kick();
            ++traj.collisions;
            maybe_record(t);
        }
    }
    if (std::abs(traj.times.back() - cfg.t_end) > 1e-12 * std::max(1.0, cfg.t_end))
        record(cfg.t_end);
    return traj;
}

void write_trajectory_csv(std::ostream& os, const BeamTrajectory& traj) {
    if (traj.states.empty())
        throw std::invalid_argument("write_trajectory_csv: empty trajectory");
    const int d = traj.states.front().dim();
    os << "t";
    for (int n = 0; n < d; ++n) os << ",p" << n;
    os << "\n";
    for (size_t i = 0; i < traj.times.size(); ++i) {
        os << g17(traj.times[i]);
        RealVector p = traj.states[i].populations();
        for (int n = 0; n < d; ++n) os << "," << g17(p[n]);
        os << "\n";
    }
}

}  // namespace sfock
