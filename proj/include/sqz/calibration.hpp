// Device calibration chain: vacuum coupling g0 from thermal sideband sweeps,
// enhanced coupling G_- from damping vs pump power and from the strongly
// driven response, and the G_+ calibration factor from the output gain ratio.
//
// Pump powers are recorded instrument units (W-proportional); calibrations are
// expressed per sqrt(power unit), so absolute attenuation never enters.
#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "sqz/model.hpp"

namespace sqz {

enum class PumpSide { red, blue };

// One record of a calibration sweep. observable holds the measurement for the
// sweep being run: a sideband power ratio, or a fitted total linewidth (rad/s).
struct CalibrationPoint {
    double pump_power = 0.0;
    double observable = 0.0;
    PumpSide side = PumpSide::red;
};

// Integrated mechanical sideband power over transmitted pump power for a weak
// pump parked on the lower (red) or upper (blue) sideband position.
// ratio = (omega_s / omega_p) * g0^2 * n_occ / (kappa/2)^2
// with n_occ = n_m_th (red, anti-Stokes) or n_m_th + 1 (blue, Stokes); the
// scattered sideband lands at cavity center, so the cavity Lorentzian factor
// is evaluated at zero detuning. The red/blue slope asymmetry carries the
// photon-energy ratio of the two pump frequencies.
double sideband_power_ratio(const SystemParams& p, double n_m_th, PumpSide side);

struct G0Fit {
    double g0 = 0.0;       // rad/s
    double g0_err = 0.0;
    double slope = 0.0;    // ratio per thermal quantum
    double slope_err = 0.0;
};

// Through-origin slope of red-side (n_m_th, ratio) points inverted for g0 via
// the sideband_power_ratio model. The slope is the mean of the per-point
// ratios (weighted least squares for scatter proportional to the signal), so
// the quoted error tracks multiplicative measurement noise. Requires at least
// three points spanning distinct positive occupations; throws
// std::invalid_argument ("insufficient calibration data") otherwise.
G0Fit fit_g0(const SystemParams& p,
             const std::vector<std::pair<double, double>>& points);

struct GminusWeakFit {
    double coupling_per_sqrt_power = 0.0; // c with G_- = c sqrt(P)
    double coupling_err = 0.0;
    double gamma_m_intercept = 0.0;       // rad/s
    double intercept_err = 0.0;
    double slope = 0.0;                   // d gamma_tot / d P
    double slope_err = 0.0;
    std::vector<std::size_t> rejected;    // weak-regime violations, by index
};

// Linear fit gamma_tot = gamma_m + (4 c^2 / kappa) P over (power, gamma_tot)
// points. Points with gamma_tot > 0.1 kappa violate the weak-coupling
// assumption behind the linewidth formula and are rejected with their indices
// recorded. Throws std::invalid_argument when fewer than two usable points
// with distinct powers remain.
GminusWeakFit fit_Gminus_weak(const SystemParams& p,
                              const std::vector<std::pair<double, double>>& points);

// Two-port transmission of a probe at absolute frequency f while a single
// red pump of enhanced coupling G_minus drives the mechanics:
// t = sqrt(kappa_in kappa_out) / [kappa/2 - i D + G^2 / (gamma_m/2 - i D)]
// with D = 2 pi f - omega_c. Weak driving carves a window of width gamma_tot
// into the cavity line; strong driving splits the response into normal modes
// separated by about 2 G_minus.
std::vector<std::complex<double>> driven_response(const SystemParams& p, double G_minus,
                                                  const std::vector<double>& freq_hz);

// Full-width half-depth of the narrow central feature of a |t|^2 trace,
// in Hz. The baseline is the trace maximum, the feature the global minimum;
// crossings are linearly interpolated.
double extract_dip_fwhm(const std::vector<double>& freq_hz,
                        const std::vector<double>& mag2);

// Least-squares G_minus from a |t|^2 trace against the driven_response model,
// with the overall trace amplitude treated as a nuisance scale (absolute line
// gain is unknown). Searches [0, G_max] by coarse scan plus golden-section.
double fit_driven_G(const SystemParams& p, const std::vector<double>& freq_hz,
                    const std::vector<double>& mag2, double G_max);

struct GplusCal {
    double coupling_per_sqrt_power = 0.0;
    double coupling_err = 0.0;
};

// Transfers the G_- calibration to the upper-sideband pump using the measured
// output gain at the two pump frequencies:
// c_+ = c_- sqrt(gain_at_minus / gain_at_plus).
GplusCal fit_Gplus_gain_ratio(double gain_at_plus, double gain_at_minus,
                              const GminusWeakFit& cal);

} // namespace sqz
