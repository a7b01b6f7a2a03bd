// Shared helpers for the unit and acceptance tests: reproducible parameter
// draws and a simple adaptive-Simpson quadrature used for spectral integrals.
#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "sqz/model.hpp"

namespace test_helpers {

inline double simpson(const std::function<double(double)>& f, double a, double b,
                      double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                                   double b, double fa, double fm, double fb,
                                   double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(f, a, m, fa, flm, fm);
    const double right = simpson(f, m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// Integrate f over [a, b] to the requested absolute tolerance.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10, int max_depth = 48) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = simpson(f, a, b, fa, fm, fb);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// Draws a random sideband-resolved parameter set plus pump/bath state whose
// effective damping stays well away from the instability threshold, so that
// linear solves remain well conditioned.
struct RandomSystem {
    sqz::SystemParams params;
    sqz::PumpConfig pumps;
    sqz::BathState baths;
};

inline RandomSystem draw_system(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    RandomSystem out;
    const double kappa = sqz::two_pi * std::pow(10.0, 4.0 + 2.0 * u(rng));
    const double gamma_m = kappa * std::pow(10.0, -6.0 + 4.0 * u(rng));
    sqz::SystemParams& p = out.params;
    p.omega_m = kappa * (5.0 + 45.0 * u(rng));
    p.omega_c = 1000.0 * p.omega_m;
    p.kappa = kappa;
    p.kappa_out = kappa * (0.3 + 0.6 * u(rng));
    p.kappa_in = kappa - p.kappa_out;
    p.gamma_m = gamma_m;
    p.g0 = kappa * 1e-4;
    p.x_zp = 1e-15;

    // Pick the cooperativity, then a pump ratio that keeps gamma_eff at a
    // usable fraction of its single-tone value.
    const double g_minus = kappa * std::pow(10.0, -2.0 + 1.5 * u(rng));
    const double ratio = 0.999 * u(rng);
    const double g_plus = g_minus * ratio;
    out.pumps.n_p_minus = (g_minus / p.g0) * (g_minus / p.g0);
    out.pumps.n_p_plus = (g_plus / p.g0) * (g_plus / p.g0);
    out.pumps.delta_minus = 0.0;
    out.pumps.delta_plus = 0.0;
    out.baths.n_m_th = std::pow(10.0, 2.0 * u(rng));
    out.baths.n_c_th = 2.0 * u(rng);
    return out;
}

}  // namespace test_helpers
