#include "sqz/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace sqz {

namespace {

// ratio = slope_unit * g0^2 * n_occ, per sideband_power_ratio
double slope_unit(const SystemParams& p, PumpSide side) {
    const double omega_p =
        side == PumpSide::red ? p.omega_c - p.omega_m : p.omega_c + p.omega_m;
    const double half_k = 0.5 * p.kappa;
    return (p.omega_c / omega_p) / (half_k * half_k);
}

struct LineFit {
    double intercept = 0.0, slope = 0.0;
    double intercept_err = 0.0, slope_err = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - f.intercept - f.slope * x[i];
        ssr += r * r;
    }
    const double sigma2 = n > 2 ? ssr / (n - 2) : 0.0;
    f.slope_err = std::sqrt(sigma2 / sxx);
    f.intercept_err = std::sqrt(sigma2 * (1.0 / n + mx * mx / sxx));
    return f;
}

} // namespace

double sideband_power_ratio(const SystemParams& p, double n_m_th, PumpSide side) {
    const double n_occ = side == PumpSide::red ? n_m_th : n_m_th + 1.0;
    return slope_unit(p, side) * p.g0 * p.g0 * n_occ;
}

G0Fit fit_g0(const SystemParams& p,
             const std::vector<std::pair<double, double>>& points) {
    std::set<double> distinct;
    for (const auto& pt : points) distinct.insert(pt.first);
    if (points.size() < 3 || distinct.size() < 2)
        throw std::invalid_argument("insufficient calibration data");
    for (const auto& pt : points)
        if (!(pt.first > 0.0))
            throw std::invalid_argument("calibration occupations must be positive");

    // through-origin slope ratio = s * n_m_th, estimated from the per-point
    // ratios y/x: sideband scatter scales with the signal, so 1/x weighting
    // is the matching least-squares choice and the error bar stays honest
    const std::size_t n = points.size();
    double mean = 0.0;
    for (const auto& [x, y] : points) mean += y / x;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (const auto& [x, y] : points) {
        const double r = y / x - mean;
        ss += r * r;
    }
    G0Fit fit;
    fit.slope = mean;
    fit.slope_err = std::sqrt(ss / (n - 1) / n);
    const double unit = slope_unit(p, PumpSide::red);
    if (fit.slope <= 0.0)
        throw std::invalid_argument("sideband ratios must grow with occupation");
    fit.g0 = std::sqrt(fit.slope / unit);
    fit.g0_err = 0.5 * fit.g0 * fit.slope_err / fit.slope;
    return fit;
}

GminusWeakFit fit_Gminus_weak(const SystemParams& p,
                              const std::vector<std::pair<double, double>>& points) {
    GminusWeakFit out;
    std::vector<double> x, y;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].second > 0.1 * p.kappa) {
            out.rejected.push_back(i);
        } else {
            x.push_back(points[i].first);
            y.push_back(points[i].second);
        }
    }
    std::set<double> distinct(x.begin(), x.end());
    if (x.size() < 2 || distinct.size() < 2)
        throw std::invalid_argument("insufficient calibration data");

    const LineFit line = fit_line(x, y);
    if (line.slope <= 0.0)
        throw std::invalid_argument("damping must increase with pump power");
    out.slope = line.slope;
    out.slope_err = line.slope_err;
    out.gamma_m_intercept = line.intercept;
    out.intercept_err = line.intercept_err;
    // gamma_tot = gamma_m + 4 c^2 P / kappa  =>  c = sqrt(slope kappa / 4)
    out.coupling_per_sqrt_power = std::sqrt(line.slope * p.kappa / 4.0);
    out.coupling_err =
        0.5 * out.coupling_per_sqrt_power * line.slope_err / line.slope;
    return out;
}

std::vector<std::complex<double>> driven_response(const SystemParams& p, double G_minus,
                                                  const std::vector<double>& freq_hz) {
    std::vector<std::complex<double>> out;
    out.reserve(freq_hz.size());
    const double amp = std::sqrt(p.kappa_in * p.kappa_out);
    for (double f : freq_hz) {
        const std::complex<double> d(0.0, two_pi * f - p.omega_c);
        const std::complex<double> mech =
            G_minus * G_minus / (std::complex<double>(0.5 * p.gamma_m, 0.0) - d);
        out.push_back(amp / (0.5 * p.kappa - d + mech));
    }
    return out;
}

double extract_dip_fwhm(const std::vector<double>& freq_hz,
                        const std::vector<double>& mag2) {
    const auto lo = std::min_element(mag2.begin(), mag2.end());
    const auto hi = std::max_element(mag2.begin(), mag2.end());
    const std::size_t center = lo - mag2.begin();
    const double half = 0.5 * (*lo + *hi);

    auto crossing = [&](int dir) {
        std::size_t i = center;
        while (true) {
            const std::size_t next = i + dir;
            if (next >= mag2.size()) return freq_hz[i]; // ran off the trace
            if (mag2[next] >= half) {
                const double t = (half - mag2[i]) / (mag2[next] - mag2[i]);
                return freq_hz[i] + t * (freq_hz[next] - freq_hz[i]);
            }
            i = next;
        }
    };
    return crossing(+1) - crossing(-1);
}

double fit_driven_G(const SystemParams& p, const std::vector<double>& freq_hz,
                    const std::vector<double>& mag2, double G_max) {
    auto sse = [&](double G) {
        const auto t = driven_response(p, G, freq_hz);
        double mm = 0.0, md = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double m = std::norm(t[i]);
            mm += m * m;
            md += m * mag2[i];
        }
        const double scale = mm > 0.0 ? md / mm : 0.0; // amplitude nuisance
        double s = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double r = mag2[i] - scale * std::norm(t[i]);
            s += r * r;
        }
        return s;
    };

    constexpr int n_scan = 400;
    double best_g = 0.0, best_s = sse(0.0);
    for (int i = 1; i <= n_scan; ++i) {
        const double g = G_max * i / n_scan;
        const double s = sse(g);
        if (s < best_s) {
            best_s = s;
            best_g = g;
        }
    }
    const double step = G_max / n_scan;
    double a = std::max(0.0, best_g - step), b = std::min(G_max, best_g + step);
    constexpr double invphi = 0.6180339887498949;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = sse(c), fd = sse(d);
    while (b - a > 1e-9 * G_max + 1e-12) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - invphi * (b - a);
            fc = sse(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + invphi * (b - a);
            fd = sse(d);
        }
    }
    return 0.5 * (a + b);
}

GplusCal fit_Gplus_gain_ratio(double gain_at_plus, double gain_at_minus,
                              const GminusWeakFit& cal) {
    if (gain_at_plus <= 0.0 || gain_at_minus <= 0.0)
        throw std::invalid_argument("gains must be positive");
    GplusCal out;
    const double corr = std::sqrt(gain_at_minus / gain_at_plus);
    out.coupling_per_sqrt_power = cal.coupling_per_sqrt_power * corr;
    out.coupling_err = cal.coupling_err * corr;
    return out;
}

} // namespace sqz
