#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "helpers.hpp"
#include "sqz/analytics.hpp"

using namespace sqz;
using test_helpers::draw_system;

namespace {

SystemParams device_a() {
    SystemParams p;
    p.omega_m = two_pi * 3.6e6;
    p.omega_c = two_pi * 6.23e9;
    p.kappa = two_pi * 450e3;
    p.kappa_in = two_pi * 225e3;
    p.kappa_out = two_pi * 225e3;
    p.gamma_m = two_pi * 3.0;
    p.g0 = two_pi * 36.0;
    p.x_zp = 2.3e-15;
    return p;
}

PumpConfig headline_pumps() {
    PumpConfig pumps;
    pumps.n_p_minus = 1.26e7;
    pumps.n_p_plus = 0.51e7;
    return pumps;
}

// Scale-free reference point: kappa = 1, gamma_m = 1e-6, G- = 0.05, G+ = 0.
SystemParams reference_params() {
    SystemParams p;
    p.omega_m = 100.0;
    p.omega_c = 1e4;
    p.kappa = 1.0;
    p.kappa_in = 0.5;
    p.kappa_out = 0.5;
    p.gamma_m = 1e-6;
    p.g0 = 1e-3;
    p.x_zp = 1e-15;
    return p;
}

}  // namespace

TEST_SUITE("analytics") {

TEST_CASE("cooling-dominated reference point lands just above vacuum") {
    SystemParams p = reference_params();
    PumpConfig pumps;
    pumps.n_p_minus = 2500.0; // G- = 1e-3 * 50 = 0.05
    pumps.n_p_plus = 0.0;
    VarianceResult r = quad_variances(p, pumps, {50.0, 0.0});
    REQUIRE(r.stable);
    // frozen against an independent steady-state solve of the same model
    CHECK(r.state.var_x1 == doctest::Approx(1.010098990001).epsilon(1e-9));
    CHECK(r.state.var_x2 == doctest::Approx(1.010098990001).epsilon(1e-9));
    CHECK(r.state.cov_x12 == 0.0);
}

TEST_CASE("balanced pumps freeze var_x1 at the thermal value") {
    SystemParams p = reference_params();
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        PumpConfig pumps;
        pumps.n_p_minus = pumps.n_p_plus = 100.0 + 1e6 * u(rng);
        const double nm = 200.0 * u(rng);
        const double nc = 3.0 * u(rng);
        VarianceResult r = quad_variances(p, pumps, {nm, nc});
        REQUIRE(r.stable);
        // measured quadrature decouples from the cavity: 2 n_m + 1 exactly
        CHECK(r.state.var_x1 == doctest::Approx(2.0 * nm + 1.0).epsilon(1e-12));
        CHECK(r.state.var_x2 > r.state.var_x1);
    }
}

TEST_CASE("single red tone gives a symmetric cooled state") {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 100; ++i) {
        auto s = draw_system(rng);
        s.pumps.n_p_plus = 0.0;
        VarianceResult r = quad_variances(s.params, s.pumps, s.baths);
        REQUIRE(r.stable);
        CHECK(r.state.var_x1 == doctest::Approx(r.state.var_x2).epsilon(1e-13));
        const double occ = cooled_occupation(
            s.params, enhanced_couplings(s.params, s.pumps).G_minus, s.baths);
        CHECK(r.state.var_x1 == doctest::Approx(2.0 * occ + 1.0).epsilon(1e-12));
    }
}

TEST_CASE("uncertainty product and quadrature ordering hold everywhere") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 400; ++i) {
        auto s = draw_system(rng);
        VarianceResult r = quad_variances(s.params, s.pumps, s.baths);
        REQUIRE(r.stable);
        CHECK(r.state.uncertainty_product() >= 1.0 - 1e-12);
        CHECK(r.state.var_x1 <= r.state.var_x2 * (1.0 + 1e-15));
        if (s.pumps.n_p_plus > 1e-6 * s.pumps.n_p_minus)
            CHECK(r.state.var_x1 < r.state.var_x2);
    }
}

TEST_CASE("variances increase monotonically with either bath occupation") {
    SystemParams p = device_a();
    PumpConfig pumps = headline_pumps();
    double prev = 0.0;
    for (int i = 0; i < 8; ++i) {
        VarianceResult r = quad_variances(p, pumps, {10.0 * i, 0.5});
        REQUIRE(r.stable);
        if (i) CHECK(r.state.var_x1 > prev);
        prev = r.state.var_x1;
    }
    prev = 0.0;
    for (int i = 0; i < 8; ++i) {
        VarianceResult r = quad_variances(p, pumps, {50.0, 0.4 * i});
        REQUIRE(r.stable);
        if (i) CHECK(r.state.var_x1 > prev);
        prev = r.state.var_x1;
    }
}

TEST_CASE("headline operating point squeezes about one decibel below vacuum") {
    SystemParams p = device_a();
    VarianceResult r = quad_variances(p, headline_pumps(), {50.0, 1.3});
    REQUIRE(r.stable);
    CHECK(r.state.var_x1 == doctest::Approx(0.804562812659).epsilon(1e-9));
    CHECK(r.state.var_x2 == doctest::Approx(16.1950941888).epsilon(1e-9));
    CHECK(r.state.var_x1 > 0.77);
    CHECK(r.state.var_x1 < 0.84);
    const double db = squeezing_db(r.state);
    CHECK(db == doctest::Approx(0.944).epsilon(1e-3));
    CHECK(db > 0.8);
    CHECK(db < 1.2);
    CHECK(r.flags.good_cavity);
}

TEST_CASE("squeezing decibels follow the definition") {
    QuadratureState q;
    q.var_x1 = 1.0;
    q.var_x2 = 1.0;
    CHECK(squeezing_db(q) == 0.0);
    q.var_x1 = 0.5;
    CHECK(squeezing_db(q) == doctest::Approx(3.0102999566).epsilon(1e-10));
    q.var_x1 = 2.0;
    CHECK(squeezing_db(q) == doctest::Approx(-3.0102999566).epsilon(1e-10));
}

TEST_CASE("cooling saturates between the weak-coupling law and the floor") {
    SystemParams p = device_a();
    BathState baths{50.0, 0.0};
    // weak drive: occupation tracks gamma_m n_m / (gamma_m + gamma_opt)
    const double G_weak = two_pi * 300.0;
    const double gamma_opt = 4.0 * G_weak * G_weak / p.kappa;
    const double expected = p.gamma_m * baths.n_m_th / (p.gamma_m + gamma_opt);
    CHECK(cooled_occupation(p, G_weak, baths) ==
          doctest::Approx(expected).epsilon(2e-2));
    // occupation decreases with drive until the backaction floor takes over
    double prev = baths.n_m_th;
    for (double g_hz = 1e2; g_hz <= 1e4; g_hz *= 2.0) {
        const double occ = cooled_occupation(p, two_pi * g_hz, baths);
        CHECK(occ < prev);
        CHECK(occ > 0.0);
        prev = occ;
    }
}

TEST_CASE("total linewidth grows linearly in pump power") {
    SystemParams p = device_a();
    const double G = two_pi * 20e3;
    LinewidthResult a = total_linewidth(p, G);
    LinewidthResult b = total_linewidth(p, G * std::sqrt(2.0));
    CHECK(b.gamma_tot - p.gamma_m ==
          doctest::Approx(2.0 * (a.gamma_tot - p.gamma_m)).epsilon(1e-12));
    CHECK(a.weak_coupling);
    CHECK_FALSE(total_linewidth(p, 0.2 * p.kappa).weak_coupling);
    // headline single-tone linewidth: 3 Hz + 4 G-^2 / kappa = 145.155 kHz
    LinewidthResult h = total_linewidth(p, two_pi * 36.0 * std::sqrt(1.26e7));
    CHECK(h.gamma_tot / two_pi == doctest::Approx(145155.0).epsilon(1e-6));
}

TEST_CASE("closed-form spectrum matches the transfer-function route") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 25; ++trial) {
        auto s = draw_system(rng);
        const double geff = std::sqrt(enhanced_couplings(s.params, s.pumps).G_eff_sq);
        SpectrumModelParams model;
        model.s0 = 0.3;
        model.gain = 1.7;
        const double f_c = s.params.omega_c / two_pi;
        const double half = 3.0 * std::max(s.params.kappa, geff) / two_pi;
        for (int i = 0; i <= 120; ++i)
            model.freq_hz.push_back(f_c - half + 2.0 * half * i / 120.0);
        SpectrumResult closed = output_spectrum(s.params, s.pumps, s.baths, model);
        SpectrumResult transfer =
            transfer_spectrum(build_system(s.params, s.pumps, s.baths), model);
        REQUIRE(closed.stable);
        REQUIRE(transfer.stable);
        for (size_t i = 0; i < model.freq_hz.size(); ++i)
            CHECK(closed.psd[i] == doctest::Approx(transfer.psd[i]).epsilon(1e-9));
    }
}

TEST_CASE("mechanical feature area matches the closed-form weight") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 5; ++trial) {
        auto s = draw_system(rng);
        s.baths.n_c_th = 0.0; // isolate the mechanical emission
        const CouplingRates r = enhanced_couplings(s.params, s.pumps);
        SpectrumModelParams model; // s0 = 0, gain = 1
        auto psd_at = [&](double nu) {
            SpectrumModelParams m1;
            m1.freq_hz = {(s.params.omega_c + nu) / two_pi};
            return output_spectrum(s.params, s.pumps, s.baths, m1).psd[0];
        };
        const double num = s.params.gamma_m *
                           (r.G_minus * r.G_minus * s.baths.n_m_th +
                            r.G_plus * r.G_plus * (s.baths.n_m_th + 1.0));
        const double expected =
            two_pi * s.params.kappa_out * num /
            ((s.params.gamma_m + s.params.kappa) *
             (r.G_eff_sq + s.params.gamma_m * s.params.kappa / 4.0));
        const double geff = std::sqrt(r.G_eff_sq);
        const double span = 200.0 * std::max(s.params.kappa, geff);
        const std::vector<double> edges = {-span, -geff, 0.0, geff, span};
        double area = 0.0;
        for (size_t k = 0; k + 1 < edges.size(); ++k)
            area += test_helpers::integrate(psd_at, edges[k], edges[k + 1],
                                            1e-8 * expected);
        CHECK(area == doctest::Approx(expected).epsilon(2e-2));
    }
}

TEST_CASE("sideband asymmetry flips the central feature from dip to peak") {
    SystemParams p = device_a();
    const double total = 1.76e7;
    const BathState baths{400.0, 0.09};
    const std::vector<double> ratios = {0.3, 0.4, 0.5, 0.6, 0.65, 0.7};
    const std::vector<bool> expect_peak = {false, false, false, false, true, true};
    for (size_t i = 0; i < ratios.size(); ++i) {
        PumpConfig pumps = PumpConfig::from_ratio(total, ratios[i]);
        const CouplingRates r = enhanced_couplings(p, pumps);
        const double geff = p.gamma_m + 4.0 * r.G_eff_sq / p.kappa;
        SpectrumModelParams model;
        model.freq_hz = {p.omega_c / two_pi, (p.omega_c + geff / 10.0) / two_pi};
        SpectrumResult spec = output_spectrum(p, pumps, baths, model);
        REQUIRE(spec.stable);
        CHECK((spec.psd[0] > spec.psd[1]) == expect_peak[i]);
    }
}

TEST_CASE("pump-ratio optimization finds deep interior squeezing") {
    SystemParams p;
    p.omega_m = 5e6;
    p.omega_c = 5e9;
    p.kappa = 1e4;
    p.kappa_in = 5e3;
    p.kappa_out = 5e3;
    p.gamma_m = 1e-5;
    p.g0 = 10.0;
    p.x_zp = 1e-15;
    RatioOptimum opt = optimize_ratio(p, {10.0, 0.0}, 5000.0);
    CHECK(opt.ratio == doctest::Approx(0.997).epsilon(2e-3));
    CHECK(opt.var_x1 == doctest::Approx(0.00145).epsilon(2e-2));
    CHECK(opt.var_x1 < 0.5);
    // interior optimum: both endpoints are worse
    auto var_at = [&](double ratio) {
        return quad_variances(p, PumpConfig::from_ratio(5000.0, ratio), {10.0, 0.0})
            .state.var_x1;
    };
    CHECK(var_at(1e-5) > opt.var_x1);
    CHECK(var_at(1.0 - 1e-5) > opt.var_x1);
}

TEST_CASE("ratio optimization is deterministic") {
    SystemParams p = device_a();
    RatioOptimum a = optimize_ratio(p, {50.0, 1.3}, 1.77e7);
    RatioOptimum b = optimize_ratio(p, {50.0, 1.3}, 1.77e7);
    CHECK(a.ratio == b.ratio);
    CHECK(a.var_x1 == b.var_x1);
    CHECK(a.var_x1 < 1.0);
}

TEST_CASE("unstable pump settings are reported, not evaluated") {
    SystemParams p = device_a();
    PumpConfig pumps;
    pumps.n_p_minus = 1.0e6;
    pumps.n_p_plus = 1.5e6;
    VarianceResult r = quad_variances(p, pumps, {50.0, 0.0});
    CHECK_FALSE(r.stable);
    CHECK_FALSE(r.stability.stable);
    SpectrumModelParams model;
    model.freq_hz = {p.omega_c / two_pi};
    CHECK_FALSE(output_spectrum(p, pumps, {50.0, 0.0}, model).stable);
}

}  // TEST_SUITE
