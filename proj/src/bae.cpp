#include "sqz/bae.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace sqz {

double variance_vs_phase(const QuadratureState& q, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return q.var_x1 * c * c + q.var_x2 * s * s + 2.0 * q.cov_x12 * s * c;
}

ProbeCalib probe_calibration(const SystemParams& p, const PumpConfig& pumps,
                             const ProbeConfig& probe, const SpectrumModelParams& model) {
    const CouplingRates rates = enhanced_couplings(p, pumps);
    ProbeCalib cal;
    cal.width = p.gamma_m + 4.0 * rates.G_eff_sq / p.kappa;
    cal.center_hz = (p.omega_c + probe.probe_offset) / two_pi;
    cal.offset_valid = probe.probe_offset >= 10.0 * cal.width;
    // Probe photons scatter off the mechanics with rate g0^2 n_p_probe,
    // filtered by the cavity response at the offset frequency; kappa_out of
    // the emission reaches the detector. Integrating the width-gamma_tot
    // Lorentzian over a Hz grid leaves this area per unit variance.
    const double half_k = 0.5 * p.kappa;
    const double cavity_filter = 1.0 / (half_k * half_k + probe.probe_offset * probe.probe_offset);
    cal.coefficient =
        model.gain * p.kappa_out * p.g0 * p.g0 * probe.n_p_probe * cavity_filter;
    return cal;
}

ProbeSpectrum probe_sideband_spectrum(const SystemParams& p, const PumpConfig& pumps,
                                      const ProbeConfig& probe, const BathState& baths,
                                      const SpectrumModelParams& model) {
    ProbeSpectrum out;
    out.spec = output_spectrum(p, pumps, baths, model);
    if (!out.spec.stable) return out;

    const ProbeCalib cal = probe_calibration(p, pumps, probe, model);
    out.offset_valid = cal.offset_valid;
    const VarianceResult vr = quad_variances(p, pumps, baths);
    const double v = variance_vs_phase(vr.state, probe.theta);
    // area (angular) = 2 pi * coefficient * V; divide back onto the grid as a
    // unit-area Lorentzian gamma / ((gamma/2)^2 + nu^2) / (2 pi)
    for (std::size_t i = 0; i < model.freq_hz.size(); ++i) {
        const double nu = two_pi * (model.freq_hz[i] - cal.center_hz);
        const double lor = cal.width / (0.25 * cal.width * cal.width + nu * nu);
        out.spec.psd[i] += cal.coefficient * v * lor;
    }
    return out;
}

VarianceExtraction extract_variance(const std::vector<double>& freq_hz,
                                    const std::vector<double>& psd,
                                    const std::vector<double>& floor_psd,
                                    const ProbeCalib& calib) {
    VarianceExtraction out;
    const std::size_t n = freq_hz.size();
    if (n < 8 || psd.size() != n || floor_psd.size() != n) {
        out.message = "trace too short for a feature fit";
        return out;
    }
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = psd[i] - floor_psd[i];

    // identifiability: the candidate peak must clear the residual background
    std::vector<double> sorted = y;
    std::nth_element(sorted.begin(), sorted.begin() + n / 2, sorted.end());
    const double med = sorted[n / 2];
    std::vector<double> dev(n);
    for (std::size_t i = 0; i < n; ++i) dev[i] = std::abs(y[i] - med);
    std::nth_element(dev.begin(), dev.begin() + n / 2, dev.end());
    const double noise = 1.4826 * dev[n / 2];
    const auto peak_it = std::max_element(y.begin(), y.end());
    double floor_scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        floor_scale = std::max(floor_scale, std::abs(floor_psd[i]));
    if (*peak_it - med <= 3.0 * noise + 1e-9 * floor_scale + 1e-300) {
        out.message = "no probe feature found above the background";
        return out;
    }

    // Levenberg-Marquardt on h (w/2)^2 / ((w/2)^2 + (f-c)^2)
    double h = *peak_it;
    double c = freq_hz[peak_it - y.begin()];
    double w = calib.width > 0.0 ? calib.width / two_pi
                                 : 0.1 * (freq_hz.back() - freq_hz.front());
    auto residual = [&](double hh, double cc, double ww, std::vector<double>& r) {
        double sse = 0.0;
        const double a = 0.5 * ww;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = freq_hz[i] - cc;
            const double u = a * a / (a * a + d * d);
            r[i] = y[i] - hh * u;
            sse += r[i] * r[i];
        }
        return sse;
    };
    std::vector<double> r(n);
    double sse = residual(h, c, w, r);
    double lambda = 1e-3;
    Eigen::Matrix3d jtj;
    Eigen::Vector3d jtr;
    for (int iter = 0; iter < 200; ++iter) {
        const double a = 0.5 * w;
        jtj.setZero();
        jtr.setZero();
        for (std::size_t i = 0; i < n; ++i) {
            const double d = freq_hz[i] - c;
            const double u = a * a / (a * a + d * d);
            Eigen::Vector3d j;
            j(0) = u;                          // d model / d h
            j(1) = h * 2.0 * d * u * u / (a * a); // d model / d c
            j(2) = h * d * d * u * u / (a * a * a); // d model / d w
            jtj += j * j.transpose();
            jtr += j * r[i];
        }
        Eigen::Matrix3d damped = jtj;
        damped.diagonal() *= 1.0 + lambda;
        const Eigen::Vector3d step = damped.ldlt().solve(jtr);
        const double h2 = h + step(0), c2 = c + step(1), w2 = std::abs(w + step(2));
        std::vector<double> r2(n);
        const double sse2 = residual(h2, c2, w2, r2);
        if (sse2 < sse) {
            h = h2;
            c = c2;
            w = w2;
            r.swap(r2);
            lambda = std::max(lambda * 0.2, 1e-12);
            if (sse - sse2 <= 1e-14 * sse + 1e-300) {
                sse = sse2;
                break;
            }
            sse = sse2;
        } else {
            lambda *= 5.0;
            if (lambda > 1e12) break;
        }
    }
    if (!(h > 0.0) || !(w > 0.0) || !std::isfinite(h) || !std::isfinite(w)) {
        out.message = "feature fit did not converge";
        return out;
    }

    out.ok = true;
    out.center_hz = c;
    out.fwhm_hz = w;
    out.area_hz = 0.5 * pi * h * w;
    out.variance = calib.coefficient > 0.0 ? out.area_hz / calib.coefficient : 0.0;

    // parameter covariance from the converged normal equations
    const double dof = n > 3 ? static_cast<double>(n - 3) : 1.0;
    const double sigma2 = sse / dof;
    const Eigen::Matrix3d cov = sigma2 * jtj.inverse();
    Eigen::Vector3d g(0.5 * pi * w, 0.0, 0.5 * pi * h); // grad of area wrt (h,c,w)
    const double area_var = g.dot(cov * g);
    if (calib.coefficient > 0.0 && area_var > 0.0)
        out.variance_err = std::sqrt(area_var) / calib.coefficient;
    return out;
}

} // namespace sqz
