// reservoir.cpp - Rate bookkeeping and generator assembly for the engineered bath.

#include "steadyfock/reservoir.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "steadyfock/fock_algebra.hpp"

namespace sfock {

namespace {

constexpr double kHbar = 1.054571817e-34;  // J s
constexpr double kBoltzmann = 1.380649e-23;  // J / K

}  // namespace

void EngineeredRates::validate() const {
    if (!(gamma > 0)) throw std::invalid_argument("EngineeredRates: gamma must be > 0");
    if (gamma_m < 0 || gamma_l < 0)
        throw std::invalid_argument("EngineeredRates: selective rates must be >= 0");
    if (epsilon < 0)
        throw std::invalid_argument("EngineeredRates: epsilon must be >= 0");
    if (epsilon >= 1)
        throw std::invalid_argument(
            "EngineeredRates: epsilon must stay below 1, otherwise the engineered "
            "absorption outruns the damping and no steady state exists");
    if (nbar < 0) throw std::invalid_argument("EngineeredRates: nbar must be >= 0");
    if (l < 0) throw std::invalid_argument("EngineeredRates: l must be >= 0");
    if (l >= m)
        throw std::invalid_argument("EngineeredRates: need l < m (l = m-1 is allowed)");
}

void BeamParams::validate() const {
    if (r_g < 0 || r_e < 0 || r_i < 0)
        throw std::invalid_argument("BeamParams: arrival rates must be >= 0");
    if (p_g < 0 || p_e < 0 || p_i < 0 || p_g + p_e + p_i > 1 + 1e-12)
        throw std::invalid_argument("BeamParams: preparation mixture must satisfy 0 <= p, sum <= 1");
    if (!(tau > 0)) throw std::invalid_argument("BeamParams: tau must be > 0");
}

std::vector<std::string> BeamParams::warnings() const {
    std::vector<std::string> out;
    double lt = std::abs(lambda_tilde) * tau;
    if (lt > 0.1)
        out.push_back("|lambda_tilde| tau = " + std::to_string(lt) +
                      " exceeds 0.1, the coarse-grained absorption rate is unreliable");
    return out;
}

EngineeredRates rates_from_beam(const BeamParams& beam, int m, int l, double gamma,
                                double nbar) {
    beam.validate();
    EngineeredRates rates;
    rates.m = m;
    rates.l = l;
    rates.gamma = gamma;
    rates.nbar = nbar;
    double zt = std::abs(beam.zeta) * beam.tau;
    rates.gamma_m = beam.r_g * double(m + 1) * zt * zt;
    rates.gamma_l = beam.r_e * double(l + 1) * zt * zt;
    double lt = std::abs(beam.lambda_tilde) * beam.tau;
    rates.epsilon = beam.r_i * lt * lt / gamma;
    rates.validate();
    return rates;
}

MasterEquationSpec build_master_equation(const EngineeredRates& rates,
                                         const HilbertSpec& spec) {
    rates.validate();
    spec.validate();
    if (spec.atom_levels != 1)
        throw std::invalid_argument("build_master_equation: expects a bare field space");
    if (spec.n_max < rates.m + 2)
        throw std::invalid_argument(
            "build_master_equation: truncation too small, need n_max >= m + 2");
    MasterEquationSpec me;
    me.hilbert = spec;
    me.channels.push_back({rates.gamma_m, selective_lowering(rates.m, spec)});
    me.channels.push_back({rates.gamma_l, selective_raising(rates.l, spec)});
    me.channels.push_back({rates.epsilon * rates.gamma, creation(spec)});
    me.channels.push_back({rates.gamma * (1.0 + rates.nbar), annihilation(spec)});
    me.channels.push_back({rates.gamma * rates.nbar, creation(spec)});
    me.validate();
    return me;
}

double nbar_temperature(double nbar, double omega) {
    if (nbar < 0) throw std::invalid_argument("nbar_temperature: nbar must be >= 0");
    if (!(omega > 0)) throw std::invalid_argument("nbar_temperature: omega must be > 0");
    if (nbar == 0) return 0.0;
    return kHbar * omega / (kBoltzmann * std::log((1.0 + nbar) / nbar));
}

double temperature_nbar(double temperature, double omega) {
    if (temperature < 0)
        throw std::invalid_argument("temperature_nbar: temperature must be >= 0");
    if (!(omega > 0)) throw std::invalid_argument("temperature_nbar: omega must be > 0");
    if (temperature == 0) return 0.0;
    return 1.0 / std::expm1(kHbar * omega / (kBoltzmann * temperature));
}

FeasibilityReport feasibility_check(const BeamParams& beam, const RamanParams& raman,
                                    int k) {
    if (k < 0) throw std::invalid_argument("feasibility_check: k must be >= 0");
    EffectiveParams eff = derive_effective(raman);
    FeasibilityReport report;
    auto add = [&](std::string name, double ratio, double threshold) {
        report.checks.push_back({std::move(name), ratio, threshold, ratio <= threshold});
    };
    add("cavity_dispersive",
        std::abs(raman.lambda) * std::sqrt(double(k + 1)) / std::abs(raman.Delta), 0.1);
    add("laser1_dispersive", std::abs(raman.Omega1) / std::abs(raman.Delta1), 0.1);
    add("laser2_dispersive", std::abs(raman.Omega2) / std::abs(raman.Delta2), 0.1);
    double xi = std::abs(eff.xi);
    add("selective_rwa",
        xi > 0 ? std::sqrt(double(k + 2)) * std::abs(eff.zeta) / xi
               : std::numeric_limits<double>::infinity(),
        0.1);
    add("weak_resonant_collision", std::abs(beam.lambda_tilde) * beam.tau, 0.1);
    report.all_pass = true;
    for (const auto& c : report.checks) report.all_pass = report.all_pass && c.pass;
    return report;
}

std::pair<BeamParams, RamanParams> reference_beam(int k, double epsilon, double gamma,
                                                  double lambda) {
    if (!(gamma > 0)) throw std::invalid_argument("reference_beam: gamma must be > 0");
    if (epsilon < 0 || epsilon >= 1)
        throw std::invalid_argument("reference_beam: epsilon must lie in [0, 1)");
    RamanParams raman = reference_point(k, lambda);
    EffectiveParams eff = derive_effective(raman);
    BeamParams beam;
    beam.zeta = eff.zeta;
    beam.tau = 1.0 / std::abs(eff.zeta_n(k));
    beam.r_g = 1000.0 * gamma;
    beam.r_e = 1000.0 * gamma;
    beam.lambda_tilde = 0.1 / beam.tau;
    beam.r_i = 100.0 * epsilon * gamma;  // epsilon gamma = r_i (lambda_tilde tau)^2
    double total = beam.r_g + beam.r_e + beam.r_i;
    beam.p_g = beam.r_g / total;
    beam.p_e = beam.r_e / total;
    beam.p_i = beam.r_i / total;
    return {beam, raman};
}

}  // namespace sfock
