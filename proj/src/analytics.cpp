#include "sqz/analytics.hpp"

#include <cmath>

namespace sqz {

namespace {

// Steady variances of the damped rotating-wave model, zero-point units.
// Writing s = kappa + gamma_m and Del = 4 G_eff^2 + gamma_m kappa:
//   var_x1 = [gm (4G^2 + k^2 + gm k)(2 n_m + 1) + 4 k (G- - G+)^2 (2 n_c + 1)] / (s Del)
// and var_x2 the same with (G- + G+)^2 in the bath term.
QuadratureState exact_variances(const SystemParams& p, const CouplingRates& r,
                                const BathState& baths) {
    const double gm = p.gamma_m, k = p.kappa;
    const double s = k + gm;
    const double del = 4.0 * r.G_eff_sq + gm * k;
    const double thermal =
        gm * (4.0 * r.G_eff_sq + k * k + gm * k) * (2.0 * baths.n_m_th + 1.0) / (s * del);
    const double gd = r.G_minus - r.G_plus;
    const double gs = r.G_minus + r.G_plus;
    QuadratureState q;
    q.var_x1 = thermal + 4.0 * k * gd * gd * (2.0 * baths.n_c_th + 1.0) / (s * del);
    q.var_x2 = thermal + 4.0 * k * gs * gs * (2.0 * baths.n_c_th + 1.0) / (s * del);
    q.cov_x12 = 0.0;
    return q;
}

ValidityFlags validity(const SystemParams& p) {
    ValidityFlags f;
    f.kappa_over_omega_m = p.kappa / p.omega_m;
    f.good_cavity = f.kappa_over_omega_m <= 0.3;
    return f;
}

} // namespace

VarianceResult quad_variances(const SystemParams& p, const PumpConfig& pumps,
                              const BathState& baths) {
    VarianceResult out;
    const CouplingRates rates = enhanced_couplings(p, pumps);
    out.stability = stability_check(p, rates);
    out.flags = validity(p);
    if (!out.stability.stable) return out;
    out.stable = true;
    out.state = exact_variances(p, rates, baths);
    return out;
}

double cooled_occupation(const SystemParams& p, double G_minus, const BathState& baths) {
    CouplingRates r;
    r.G_minus = G_minus;
    r.G_plus = 0.0;
    r.G_eff_sq = G_minus * G_minus;
    r.G_eff = G_minus;
    const QuadratureState q = exact_variances(p, r, baths);
    return (q.var_x1 + q.var_x2) / 4.0 - 0.5;
}

LinewidthResult total_linewidth(const SystemParams& p, double G_minus) {
    LinewidthResult out;
    const double opt = 4.0 * G_minus * G_minus / p.kappa;
    out.gamma_tot = p.gamma_m + opt;
    out.weak_coupling = opt <= 0.1 * p.kappa;
    return out;
}

SpectrumResult output_spectrum(const SystemParams& p, const PumpConfig& pumps,
                               const BathState& baths, const SpectrumModelParams& model) {
    if (pumps.delta_minus != 0.0 || pumps.delta_plus != 0.0)
        return transfer_spectrum(build_system(p, pumps, baths), model);

    SpectrumResult out;
    out.freq_hz = model.freq_hz;
    const CouplingRates r = enhanced_couplings(p, pumps);
    if (!stability_check(p, r).stable) {
        out.stable = false;
        return out;
    }
    const double gm = p.gamma_m, k = p.kappa;
    const double mech =
        gm * (r.G_minus * r.G_minus * baths.n_m_th +
              r.G_plus * r.G_plus * (baths.n_m_th + 1.0));
    out.psd.reserve(model.freq_hz.size());
    for (double f : model.freq_hz) {
        const double nu = two_pi * f - p.omega_c;
        // |f(nu)|^2 for f = G_eff^2 + (gm/2 - i nu)(k/2 - i nu)
        const double re = r.G_eff_sq + gm * k / 4.0 - nu * nu;
        const double im = -nu * (gm + k) / 2.0;
        const double denom = re * re + im * im;
        const double cav = k * (gm * gm / 4.0 + nu * nu) * baths.n_c_th;
        out.psd.push_back(model.s0 + model.gain * p.kappa_out * (cav + mech) / denom);
    }
    return out;
}

double squeezing_db(const QuadratureState& q) { return -10.0 * std::log10(q.var_x1); }

RatioOptimum optimize_ratio(const SystemParams& p, const BathState& baths,
                            double total_photons) {
    auto var_at = [&](double ratio) {
        const PumpConfig pumps = PumpConfig::from_ratio(total_photons, ratio);
        const CouplingRates r = enhanced_couplings(p, pumps);
        return exact_variances(p, r, baths).var_x1;
    };
    // coarse bracket over the open interval, then golden-section refinement
    constexpr double lo = 1e-6, hi = 1.0 - 1e-6;
    constexpr int n_scan = 4000;
    double best_r = lo, best_v = var_at(lo);
    for (int i = 1; i <= n_scan; ++i) {
        const double r = lo + (hi - lo) * i / n_scan;
        const double v = var_at(r);
        if (v < best_v) {
            best_v = v;
            best_r = r;
        }
    }
    const double step = (hi - lo) / n_scan;
    double a = std::max(lo, best_r - step), b = std::min(hi, best_r + step);
    constexpr double invphi = 0.6180339887498949;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = var_at(c), fd = var_at(d);
    while (b - a > 1e-6) { // comfortably below the 1e-4 contract
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - invphi * (b - a);
            fc = var_at(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + invphi * (b - a);
            fd = var_at(d);
        }
    }
    RatioOptimum out;
    out.ratio = 0.5 * (a + b);
    const PumpConfig pumps = PumpConfig::from_ratio(total_photons, out.ratio);
    out.state = exact_variances(p, enhanced_couplings(p, pumps), baths);
    out.var_x1 = out.state.var_x1;
    return out;
}

} // namespace sqz
