// Closed-form steady-state observables for the two-tone model: quadrature
// variances, cooling, effective linewidths, and the detected output spectrum.
//
// The variance expressions are the exact steady state of the damped
// rotating-wave model (the same dynamics integrated by the lyapunov module),
// so the two routes agree to solver precision; in the usual regime
// kappa >> gamma_m they reduce to the familiar weak-damping forms.
#pragma once

#include "sqz/lyapunov.hpp"
#include "sqz/model.hpp"

namespace sqz {

struct ValidityFlags {
    double kappa_over_omega_m = 0.0;
    bool good_cavity = true; // kappa / omega_m <= 0.3
};

struct VarianceResult {
    bool stable = false;
    QuadratureState state;      // zero-point units, vacuum = 1
    StabilityResult stability;
    ValidityFlags flags;
};

// Steady-state mechanical quadrature variances at zero pump detunings.
// Unstable configurations return stable = false with no state.
VarianceResult quad_variances(const SystemParams& p, const PumpConfig& pumps,
                              const BathState& baths);

// Final occupation under a single red-detuned tone of enhanced coupling
// G_minus: (var_x1 + var_x2)/4 - 1/2 of the cooled thermal state.
double cooled_occupation(const SystemParams& p, double G_minus, const BathState& baths);

struct LinewidthResult {
    double gamma_tot = 0.0;   // gamma_m + 4 G_minus^2 / kappa
    bool weak_coupling = true; // 4 G_minus^2 / kappa << kappa assumed by the formula
};

LinewidthResult total_linewidth(const SystemParams& p, double G_minus);

// Detected output noise spectrum on an absolute frequency grid. With both
// pump detunings zero this is the closed-form two-pole expression; with
// nonzero detunings it is computed through the transfer-function machinery.
SpectrumResult output_spectrum(const SystemParams& p, const PumpConfig& pumps,
                               const BathState& baths, const SpectrumModelParams& model);

// Squeezing of the quiet quadrature relative to zero point, in dB
// (positive = below vacuum).
double squeezing_db(const QuadratureState& q);

struct RatioOptimum {
    double ratio = 0.0;
    double var_x1 = 0.0;
    QuadratureState state;
};

// Minimizes var_x1 over the pump ratio n_p_plus / n_p_minus at fixed total
// photon number: coarse scan plus golden-section refinement, ratio resolved
// to 1e-4.
RatioOptimum optimize_ratio(const SystemParams& p, const BathState& baths,
                            double total_photons);

} // namespace sqz
