// test_lindblad.cpp - Liouvillian assembly, time evolution and the three
// steady-state paths, checked against closed forms and each other.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "steadyfock/fock_algebra.hpp"
#include "steadyfock/lindblad.hpp"
#include "steadyfock/reservoir.hpp"

using namespace sfock;

namespace {

MasterEquationSpec damping_only(double gamma, double nbar, const HilbertSpec& spec) {
    MasterEquationSpec me;
    me.hilbert = spec;
    me.channels.emplace_back(gamma * (1.0 + nbar), annihilation(spec));
    if (nbar > 0) me.channels.emplace_back(gamma * nbar, creation(spec));
    return me;
}

DensityMatrix random_state(int d, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Matrix G(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) G(i, j) = Complex(g(rng), g(rng));
    Matrix rho = G * G.adjoint();
    rho /= rho.trace();
    return DensityMatrix{std::move(rho)};
}

double mean_n(const RealVector& p) {
    double s = 0.0;
    for (int n = 0; n < p.size(); ++n) s += n * p[n];
    return s;
}

}  // namespace

TEST_CASE("amplitude damping decays the mean photon number exponentially") {
    HilbertSpec spec{12, 1};
    MasterEquationSpec me = damping_only(1.0, 0.0, spec);
    DensityMatrix rho0 = fock_state(4, spec);
    EvolveResult res = evolve(me, rho0, {0.0, 0.5, 1.0, 2.0});
    for (size_t i = 0; i < res.times.size(); ++i) {
        double expect = 4.0 * std::exp(-res.times[i]);
        CHECK(mean_n(res.states[i].populations()) == doctest::Approx(expect).epsilon(1e-6));
    }
    CHECK(res.max_trace_drift < 1e-9);
}

TEST_CASE("every recorded state stays physical along the evolution") {
    EngineeredRates r{30.0, 30.0, 0.5, 2, 1, 0.1, 1.0};
    HilbertSpec spec{12, 1};
    MasterEquationSpec me = build_master_equation(r, spec);
    std::vector<double> times;
    for (int i = 0; i <= 10; ++i) times.push_back(0.05 * i);
    EvolveResult res = evolve(me, fock_state(0, spec), times);
    for (const auto& s : res.states) {
        CHECK(s.trace_error() < 1e-8);
        CHECK(s.min_eigenvalue() >= -1e-8);
        CHECK(s.hermiticity_error() < 1e-10);
    }
}

TEST_CASE("generator is trace-free and matches its vectorised form") {
    EngineeredRates r{20.0, 15.0, 0.3, 3, 1, 0.05, 1.0};
    HilbertSpec spec{8, 1};
    MasterEquationSpec me = build_master_equation(r, spec);
    DensityMatrix rho = random_state(spec.dim(), 17);

    Matrix drho = apply_generator(me, rho.rho);
    CHECK(std::abs(drho.trace()) < 1e-12);

    const int d = spec.dim();
    Eigen::SparseMatrix<Complex> L = liouvillian_sparse(me);
    Vector v = Eigen::Map<const Vector>(rho.rho.data(), d * d);
    Vector Lv = L * v;
    Matrix from_sparse = Eigen::Map<const Matrix>(Lv.data(), d, d);
    CHECK((from_sparse - drho).cwiseAbs().maxCoeff() < 1e-12);

    Matrix Ld = liouvillian_matrix(me);
    CHECK((Ld - Matrix(L)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("dense Liouvillian guard trips above dim^2 = 1e4") {
    HilbertSpec spec{100, 1};  // dim 101, dim^2 = 10201
    MasterEquationSpec me = damping_only(1.0, 0.0, spec);
    CHECK_THROWS_AS(liouvillian_matrix(me), std::invalid_argument);
    CHECK_NOTHROW(liouvillian_matrix(me, true));
}

TEST_CASE("diagonal Hamiltonian rotates coherences at the level splitting") {
    HilbertSpec spec{3, 1};
    MasterEquationSpec me;
    me.hilbert = spec;
    double omega = 2.0;
    me.hamiltonian = omega * number_operator(spec).mat;
    me.channels.emplace_back(0.0, annihilation(spec));  // zero-rate channel is inert

    Matrix rho0 = Matrix::Zero(4, 4);
    rho0(0, 0) = 0.5;
    rho0(1, 1) = 0.5;
    rho0(0, 1) = 0.25;
    rho0(1, 0) = 0.25;
    double t = 0.7;
    EvolveResult res = evolve(me, DensityMatrix{rho0}, {0.0, t});
    Complex c = res.states.back().rho(0, 1);
    // <0|rho|1> picks up exp(+i omega t) under drho/dt = -i[H, rho].
    CHECK(std::abs(c - 0.25 * std::exp(Complex(0, omega * t))) < 1e-8);
    CHECK(res.states.back().rho(0, 0).real() == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("natural damping alone fixes the thermal state") {
    double nbar = 0.2;
    HilbertSpec spec{25, 1};
    MasterEquationSpec me = damping_only(1.0, nbar, spec);
    DensityMatrix th = thermal_state(nbar, spec);

    // The thermal state is annihilated by the generator up to the truncation
    // corner, which carries ~nbar^{n_max} here.
    CHECK(apply_generator(me, th.rho).cwiseAbs().maxCoeff() < 1e-12);

    SteadyStateReport rep = steady_state(me, SteadyOptions{1.0, false, false, 60});
    CHECK(rep.method == "null-space");
    CHECK(rep.null_space_dim == 1);
    CHECK((rep.populations - th.populations()).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(rep.residual < 1e-10);
}

TEST_CASE("rate-equation and full solves agree to 1e-10") {
    EngineeredRates r{1000.0, 1000.0, 0.8, 5, 4, 0.05, 1.0};
    HilbertSpec spec{20, 1};
    MasterEquationSpec me = build_master_equation(r, spec);

    SteadyOptions full;
    full.tail_tol = 1.0;  // corner mass is truncated here on purpose
    full.force_full = true;
    SteadyStateReport a = steady_state(me, full);
    CHECK(a.method == "null-space");

    SteadyOptions rate;
    rate.tail_tol = 1.0;
    rate.rate_path_above_nmax = 10;  // push this size onto the population path
    SteadyStateReport b = steady_state(me, rate);
    CHECK(b.method == "rate-equations");

    CHECK((a.populations - b.populations).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(a.null_space_dim == 1);
    CHECK(b.null_space_dim == 1);
    CHECK(a.uniqueness_gap > 1e-6);
}

TEST_CASE("long-time evolution reaches the steady state") {
    EngineeredRates r{30.0, 30.0, 0.5, 2, 1, 0.1, 1.0};
    HilbertSpec spec{12, 1};
    MasterEquationSpec me = build_master_equation(r, spec);
    SteadyOptions opt;
    opt.tail_tol = 1.0;  // the 12-level window carries ~2e-4 corner mass
    SteadyStateReport rep = steady_state(me, opt);

    EvolveResult res = evolve(me, fock_state(0, spec), {0.0, 60.0});
    RealVector evolved = res.states.back().populations();
    CHECK((evolved - rep.populations).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("insufficient truncation is refused with the corner mass") {
    EngineeredRates r{1000.0, 1000.0, 0.8, 5, 4, 0.05, 1.0};
    MasterEquationSpec me = build_master_equation(r, HilbertSpec{7, 1});
    CHECK_THROWS_AS(steady_state(me), TruncationError);
}

TEST_CASE("degenerate null space falls back to long-time integration") {
    // A single decay link leaves |2> disconnected: the stationary set is
    // degenerate, and the fallback integrates the maximally mixed state to
    // diag(2/3, 0, 1/3).
    HilbertSpec spec{2, 1};
    MasterEquationSpec me;
    me.hilbert = spec;
    me.channels.emplace_back(1.0, selective_lowering(0, spec));
    SteadyStateReport rep = steady_state(me, SteadyOptions{1.0, false, false, 60});
    CHECK(rep.method == "long-time");
    CHECK(rep.null_space_dim > 1);
    CHECK(rep.populations[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
    CHECK(rep.populations[1] == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(rep.populations[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("population closure is detected structurally") {
    HilbertSpec spec{6, 1};
    EngineeredRates r{10.0, 10.0, 0.3, 3, 2, 0.05, 1.0};
    MasterEquationSpec me = build_master_equation(r, spec);
    CHECK(closes_on_populations(me));

    MasterEquationSpec quad = me;
    Matrix x = annihilation(spec).mat + creation(spec).mat;
    quad.channels.emplace_back(0.5, Operator{"x", x});
    CHECK_FALSE(closes_on_populations(quad));
    CHECK_THROWS_AS(population_generator(quad), std::invalid_argument);

    MasterEquationSpec ham = me;
    ham.hamiltonian = x;  // non-diagonal Hamiltonian couples coherences in
    CHECK_FALSE(closes_on_populations(ham));
    ham.hamiltonian = number_operator(spec).mat;
    CHECK(closes_on_populations(ham));
}

TEST_CASE("population generator columns sum to zero and carry the right gains") {
    HilbertSpec spec{5, 1};
    MasterEquationSpec me = damping_only(2.0, 0.0, spec);
    Eigen::MatrixXd G = population_generator(me);
    for (int k = 0; k < G.cols(); ++k) CHECK(std::abs(G.col(k).sum()) < 1e-12);
    // a has |<n-1|a|n>|^2 = n: gain G(n-1, n) = 2 n.
    for (int n = 1; n <= 5; ++n) {
        CHECK(G(n - 1, n) == doctest::Approx(2.0 * n));
        CHECK(G(n, n) == doctest::Approx(-2.0 * n));
    }
}
