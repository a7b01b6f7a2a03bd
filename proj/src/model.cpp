#include "sqz/model.hpp"

#include <cmath>

namespace sqz {

double SystemParams::x_zp_from_mass(double mass_kg, double omega_m) {
    return std::sqrt(hbar / (2.0 * mass_kg * omega_m));
}

ValidationReport validate(const SystemParams& p) {
    ValidationReport r;
    auto require = [&](bool cond, const char* msg) {
        if (!cond) r.errors.emplace_back(msg);
    };
    require(p.omega_m > 0.0, "omega_m must be positive");
    require(p.omega_c > 0.0, "omega_c must be positive");
    require(p.kappa > 0.0, "kappa must be positive");
    require(p.kappa_in >= 0.0, "kappa_in must be non-negative");
    require(p.kappa_out > 0.0, "kappa_out must be positive");
    require(p.gamma_m > 0.0, "gamma_m must be positive");
    require(p.g0 > 0.0, "g0 must be positive");
    require(p.x_zp > 0.0, "x_zp must be positive");
    if (p.kappa > 0.0 && p.kappa_in + p.kappa_out > p.kappa * (1.0 + 1e-12))
        r.errors.emplace_back("kappa_in + kappa_out must not exceed kappa");
    if (p.omega_m > 0.0 && p.kappa > 0.0 && p.omega_m <= p.kappa)
        r.warnings.emplace_back("not sideband resolved: omega_m <= kappa");
    return r;
}

PumpConfig PumpConfig::from_ratio(double total_photons, double ratio) {
    PumpConfig c;
    c.n_p_minus = total_photons / (1.0 + ratio);
    c.n_p_plus = total_photons * ratio / (1.0 + ratio);
    return c;
}

CouplingRates enhanced_couplings(const SystemParams& p, const PumpConfig& pumps) {
    CouplingRates r;
    r.G_minus = p.g0 * std::sqrt(pumps.n_p_minus);
    r.G_plus = p.g0 * std::sqrt(pumps.n_p_plus);
    r.G_eff_sq = r.G_minus * r.G_minus - r.G_plus * r.G_plus;
    if (r.G_eff_sq >= 0.0) r.G_eff = std::sqrt(r.G_eff_sq);
    return r;
}

StabilityResult stability_check(const SystemParams& p, const CouplingRates& rates) {
    StabilityResult s;
    s.gamma_eff = p.gamma_m + 4.0 * rates.G_eff_sq / p.kappa;
    s.stable = rates.G_eff.has_value() && s.gamma_eff > 0.0;
    return s;
}

} // namespace sqz
