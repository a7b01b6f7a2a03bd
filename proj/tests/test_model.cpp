#include <doctest.h>

#include <cmath>
#include <random>

#include "sqz/model.hpp"

using namespace sqz;

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

}  // namespace

TEST_SUITE("model") {

TEST_CASE("parameter validation flags inconsistent rates") {
    SystemParams p = device_a();
    CHECK(validate(p).ok());

    SUBCASE("negative decay rate is an error") {
        p.kappa = -1.0;
        auto r = validate(p);
        CHECK_FALSE(r.ok());
    }
    SUBCASE("port rates exceeding total linewidth is an error") {
        p.kappa_in = 0.8 * p.kappa;
        p.kappa_out = 0.8 * p.kappa;
        auto r = validate(p);
        CHECK_FALSE(r.ok());
    }
    SUBCASE("port rates summing exactly to kappa is allowed") {
        p.kappa_in = 0.5 * p.kappa;
        p.kappa_out = 0.5 * p.kappa;
        CHECK(validate(p).ok());
    }
    SUBCASE("bad-cavity parameters warn but do not error") {
        p.omega_m = 0.5 * p.kappa;
        auto r = validate(p);
        CHECK(r.ok());
        CHECK(r.warnings.size() >= 1);
    }
    SUBCASE("zero mechanical frequency is an error") {
        p.omega_m = 0.0;
        CHECK_FALSE(validate(p).ok());
    }
}

TEST_CASE("zero-point amplitude from mass matches the oscillator ground state") {
    // x_zp^2 = hbar / (2 m omega_m); check the round trip identity.
    const double m = 1e-14;
    const double omega = two_pi * 3.6e6;
    const double x = SystemParams::x_zp_from_mass(m, omega);
    CHECK(x > 0.0);
    CHECK(std::abs(x * x * 2.0 * m * omega / hbar - 1.0) < 1e-12);
}

TEST_CASE("pump photon numbers set the enhanced couplings") {
    SystemParams p = device_a();
    PumpConfig pumps;
    pumps.n_p_minus = 1.26e7;
    pumps.n_p_plus = 0.51e7;

    CouplingRates r = enhanced_couplings(p, pumps);
    // 36 Hz * sqrt(1.26e7) = 127.787 kHz, 36 Hz * sqrt(0.51e7) = 81.299 kHz.
    CHECK(r.G_minus / two_pi == doctest::Approx(127787.3233).epsilon(1e-9));
    CHECK(r.G_plus / two_pi == doctest::Approx(81299.4464).epsilon(1e-8));
    CHECK(r.G_eff.has_value());
    // Effective coupling g0 sqrt(n_minus - n_plus) for the headline run.
    CHECK(*r.G_eff / two_pi == doctest::Approx(36.0 * std::sqrt(7.5e6)).epsilon(1e-12));
}

TEST_CASE("single red pump gives a purely beam-splitter coupling") {
    SystemParams p = device_a();
    PumpConfig pumps;
    pumps.n_p_minus = 4.0e6;
    pumps.n_p_plus = 0.0;
    CouplingRates r = enhanced_couplings(p, pumps);
    CHECK(r.G_plus == 0.0);
    CHECK(r.G_eff.has_value());
    CHECK(*r.G_eff == doctest::Approx(r.G_minus).epsilon(1e-15));
}

TEST_CASE("balanced pumps put the effective coupling exactly at zero") {
    SystemParams p = device_a();
    PumpConfig pumps;
    pumps.n_p_minus = 2.5e6;
    pumps.n_p_plus = 2.5e6;
    CouplingRates r = enhanced_couplings(p, pumps);
    CHECK(r.G_eff_sq == 0.0);
    CHECK(r.G_eff.has_value());
    CHECK(*r.G_eff == 0.0);
}

TEST_CASE("blue-dominated pumping destabilises the system") {
    SystemParams p = device_a();
    PumpConfig pumps;
    pumps.n_p_minus = 1.0e6;
    pumps.n_p_plus = 2.0e6;
    CouplingRates r = enhanced_couplings(p, pumps);
    CHECK(r.G_eff_sq < 0.0);
    CHECK_FALSE(r.G_eff.has_value());
    StabilityResult s = stability_check(p, r);
    CHECK_FALSE(s.stable);
}

TEST_CASE("couplings scale as the square root of pump power") {
    SystemParams p = device_a();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    for (int i = 0; i < 50; ++i) {
        PumpConfig pumps;
        pumps.n_p_minus = 1e6 * u(rng);
        pumps.n_p_plus = 0.5e6 * u(rng);
        const double scale = u(rng);
        PumpConfig scaled = pumps;
        scaled.n_p_minus *= scale;
        scaled.n_p_plus *= scale;
        CouplingRates a = enhanced_couplings(p, pumps);
        CouplingRates b = enhanced_couplings(p, scaled);
        CHECK(b.G_minus == doctest::Approx(a.G_minus * std::sqrt(scale)).epsilon(1e-13));
        CHECK(b.G_plus == doctest::Approx(a.G_plus * std::sqrt(scale)).epsilon(1e-13));
    }
}

TEST_CASE("pump ratio helpers round-trip") {
    PumpConfig pumps = PumpConfig::from_ratio(1.77e7, 0.404762);
    CHECK(pumps.total() == doctest::Approx(1.77e7).epsilon(1e-12));
    CHECK(pumps.ratio() == doctest::Approx(0.404762).epsilon(1e-12));
    CHECK(pumps.n_p_plus < pumps.n_p_minus);
}

TEST_CASE("effective damping at the headline operating point") {
    SystemParams p = device_a();
    PumpConfig pumps;
    pumps.n_p_minus = 1.26e7;
    pumps.n_p_plus = 0.51e7;
    CouplingRates r = enhanced_couplings(p, pumps);
    StabilityResult s = stability_check(p, r);
    CHECK(s.stable);
    // gamma_eff = gamma_m + 4 (G-^2 - G+^2) / kappa, approximately 2 pi 86 kHz.
    CHECK(s.gamma_eff / two_pi == doctest::Approx(86403.0).epsilon(1e-6));
}

TEST_CASE("red-only pumping is stable at any drive strength") {
    SystemParams p = device_a();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 12.0);
    for (int i = 0; i < 40; ++i) {
        PumpConfig pumps;
        pumps.n_p_minus = std::pow(10.0, u(rng));
        pumps.n_p_plus = 0.0;
        StabilityResult s = stability_check(p, enhanced_couplings(p, pumps));
        CHECK(s.stable);
        CHECK(s.gamma_eff > 0.0);
    }
}

}  // TEST_SUITE
