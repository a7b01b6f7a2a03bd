// Back-action-evading probe tomography of the squeezed mechanical state:
// a weak probe pair offset from the squeezing tones maps the phase-dependent
// quadrature variance V(theta) onto the area of a sideband Lorentzian.
//
// The probe is treated as ideal (no back-action on the measured quadrature).
// That holds when n_p_probe << n_p_minus and when the probe sideband sits many
// mechanical linewidths from the squeezing sideband; offsets below
// 10 gamma_tot are flagged invalid.
#pragma once

#include <string>
#include <vector>

#include "sqz/analytics.hpp"
#include "sqz/model.hpp"

namespace sqz {

struct ProbeConfig {
    double n_p_probe = 0.0;    // photon number per probe tone
    double theta = 0.0;        // probed quadrature phase, rad
    double probe_offset = 0.0; // sideband separation from the squeezing sideband, rad/s
};

// V(theta) = var_x1 cos^2 + var_x2 sin^2 + 2 cov sin cos, zero-point units.
double variance_vs_phase(const QuadratureState& q, double theta);

// Link constants between a probe sideband and the variance it encodes.
// The feature is a Lorentzian of full width `width` (the pumped mechanical
// linewidth) centered at `center_hz`, whose area on a Hz grid is
// coefficient * V(theta); the coefficient is computed from the input-output
// model, never fitted.
struct ProbeCalib {
    double coefficient = 0.0; // integrated psd (Hz units) per unit variance
    double width = 0.0;       // rad/s
    double center_hz = 0.0;
    bool offset_valid = true; // probe_offset >= 10 * width
};

ProbeCalib probe_calibration(const SystemParams& p, const PumpConfig& pumps,
                             const ProbeConfig& probe, const SpectrumModelParams& model);

struct ProbeSpectrum {
    SpectrumResult spec;
    bool offset_valid = true;
};

// Detected spectrum around the probe sideband: the squeezing-tone output
// spectrum plus the probe Lorentzian carrying V(theta).
ProbeSpectrum probe_sideband_spectrum(const SystemParams& p, const PumpConfig& pumps,
                                      const ProbeConfig& probe, const BathState& baths,
                                      const SpectrumModelParams& model);

struct VarianceExtraction {
    bool ok = false;
    double variance = 0.0; // zero-point units
    double variance_err = 0.0;
    double area_hz = 0.0;  // integrated feature, psd x Hz
    double center_hz = 0.0;
    double fwhm_hz = 0.0;
    std::string message;
};

// Least-squares Lorentzian fit of (psd - floor_psd), converted to a variance
// through the calibration coefficient. floor_psd is the spectrum without the
// probe feature (squeezing background plus noise floor) on the same grid.
// Fails cleanly when no feature rises above the residual background.
VarianceExtraction extract_variance(const std::vector<double>& freq_hz,
                                    const std::vector<double>& psd,
                                    const std::vector<double>& floor_psd,
                                    const ProbeCalib& calib);

} // namespace sqz
