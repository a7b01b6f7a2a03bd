// Core parameter types and pump-strength relations for a two-tone driven
// electromechanical cavity. All frequencies and rates are angular (rad/s);
// conversion to and from Hz happens at the file/CLI boundary only.
#pragma once

#include <optional>
#include <string>
#include <vector>

namespace sqz {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;
inline constexpr double hbar = 1.054571817e-34; // J s

// Fixed device parameters. kappa is the total cavity linewidth; kappa_in and
// kappa_out are the input/output coupling rates (internal loss is the rest).
// x_zp is the mechanical zero-point amplitude in meters.
struct SystemParams {
    double omega_m = 0.0;
    double omega_c = 0.0;
    double kappa = 0.0;
    double kappa_in = 0.0;
    double kappa_out = 0.0;
    double gamma_m = 0.0;
    double g0 = 0.0;
    double x_zp = 0.0;

    // x_zp from the oscillator mass, sqrt(hbar / (2 m omega_m)).
    static double x_zp_from_mass(double mass_kg, double omega_m);
};

struct ValidationReport {
    std::vector<std::string> errors;   // reject the parameter set
    std::vector<std::string> warnings; // validity caveats, still usable
    bool ok() const { return errors.empty(); }
};

// Positivity and port-budget checks; a resolved-sideband caveat
// (omega_m <= kappa) is a warning, not an error.
ValidationReport validate(const SystemParams& p);

// Two pump tones near omega_c -/+ omega_m. Photon numbers are intracavity
// occupations; delta_minus/delta_plus are the tone offsets from the exact
// lower/upper sideband positions.
struct PumpConfig {
    double n_p_minus = 0.0;
    double n_p_plus = 0.0;
    double delta_minus = 0.0;
    double delta_plus = 0.0;

    double total() const { return n_p_minus + n_p_plus; }
    double ratio() const { return n_p_minus > 0.0 ? n_p_plus / n_p_minus : 0.0; }
    static PumpConfig from_ratio(double total_photons, double ratio);
};

// Pump-enhanced couplings G_-/+ = g0 sqrt(n_p_-/+) and the effective coupling
// G_eff = sqrt(G_-^2 - G_+^2). G_eff_sq keeps its sign; G_eff is absent when
// n_p_plus exceeds n_p_minus (imaginary G_eff, not a squeezing configuration).
struct CouplingRates {
    double G_minus = 0.0;
    double G_plus = 0.0;
    double G_eff_sq = 0.0;
    std::optional<double> G_eff;
};

CouplingRates enhanced_couplings(const SystemParams& p, const PumpConfig& pumps);

struct BathState {
    double n_m_th = 0.0;
    double n_c_th = 0.0;
};

// Symmetrized mechanical quadrature second moments in zero-point units
// (ground state: var = 1, cov = 0).
struct QuadratureState {
    double var_x1 = 0.0;
    double var_x2 = 0.0;
    double cov_x12 = 0.0;

    double uncertainty_product() const { return var_x1 * var_x2 - cov_x12 * cov_x12; }
};

// gamma_eff = gamma_m + 4 G_eff_sq / kappa (signed). stable requires both a
// real G_eff and gamma_eff > 0; a configuration pumped past the n_p_plus =
// n_p_minus point is reported unstable even inside the narrow dynamically
// damped sliver G_eff_sq > -gamma_m kappa / 4.
struct StabilityResult {
    double gamma_eff = 0.0;
    bool stable = false;
};

StabilityResult stability_check(const SystemParams& p, const CouplingRates& rates);

} // namespace sqz
