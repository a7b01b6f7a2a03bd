// Bayesian spectrum fitting: posterior sampling of the bath occupations and
// instrument nuisance parameters from an averaged output-noise spectrum, and
// propagation of the posterior into quadrature-variance estimates.
//
// Parameter vector (fixed order):
//   0 n_c_th        cavity bath occupation (quanta)
//   1 gamma_m_n_m   mechanical heating rate gamma_m * n_m_th (rad/s * quanta)
//   2 s0            additive noise floor (recorded psd units)
//   3 gain          overall detection gain (recorded psd units per flux)
//   4 delta_minus   lower-pump detuning (rad/s)
//   5 delta_plus    upper-pump detuning (rad/s)
// The likelihood is invariant under scaling data and gain together; priors
// are what break that degeneracy.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sqz/analytics.hpp"
#include "sqz/model.hpp"

namespace sqz {

inline constexpr int n_fit_params = 6;
enum FitParam : int {
    fit_n_c_th = 0,
    fit_gamma_m_n_m = 1,
    fit_s0 = 2,
    fit_gain = 3,
    fit_delta_minus = 4,
    fit_delta_plus = 5,
};
extern const std::array<const char*, n_fit_params> fit_param_names;

// An observed spectrum: per-bin averaged periodogram values and the number of
// averages per bin, with the pump settings recorded alongside.
struct SpectrumData {
    std::vector<double> freq_hz;
    std::vector<double> psd;
    std::vector<double> n_avg;
    PumpConfig pumps; // photon numbers used during acquisition
};

// Throws std::invalid_argument unless lengths match, freq is strictly
// increasing, psd >= 0, and n_avg >= 1.
void validate_data(const SpectrumData& data);

struct Prior {
    enum class Kind { uniform, log_uniform, normal, fixed } kind = Kind::fixed;
    double a = 0.0; // lo | lo | mean | value
    double b = 0.0; // hi | hi | sd   | unused
};

struct PriorSpec {
    std::array<Prior, n_fit_params> prior;

    static PriorSpec defaults(); // broad priors, detunings fixed at zero
    int n_free() const;
};

struct SamplerConfig {
    int n_walkers = 32;
    int n_steps = 2000;
    int burn_in = 500;
    std::uint64_t seed = 1;
    double stretch_a = 2.0;
    // Per-bin Gaussian likelihood with sigma = S_model / sqrt(n_avg) by
    // default (averaged-periodogram statistics, n_avg >~ 30). The exact
    // small-n_avg alternative treats each bin as Gamma(n_avg, mean S_model).
    bool gamma_likelihood = false;
};

// Model spectrum at theta on the data grid. stable=false when the pump
// settings plus detunings are dynamically unstable.
SpectrumResult model_spectrum(const SystemParams& p, const PumpConfig& pumps,
                              const std::array<double, n_fit_params>& theta,
                              const std::vector<double>& freq_hz);

// Log-likelihood of the data at theta; -inf for unstable theta.
double log_likelihood(const SpectrumData& data, const SystemParams& p,
                      const std::array<double, n_fit_params>& theta,
                      bool gamma_likelihood = false);

struct FitDiagnostics {
    double acceptance_rate = 0.0;
    std::array<double, n_fit_params> r_hat{};  // 1.0 for fixed params
    std::array<double, n_fit_params> ess{};    // 0.0 for fixed params
    double r_hat_max = 1.0;
    bool converged = false;
};

struct FitResult {
    std::array<std::string, n_fit_params> param_names;
    std::array<bool, n_fit_params> fixed{};
    int n_walkers = 0;
    int n_steps = 0;
    int burn_in = 0;
    // post-burn-in samples, row-major n_samples() x n_fit_params, fixed
    // parameters filled with their pinned values
    std::vector<double> samples;
    std::vector<double> log_probs;
    std::array<double, n_fit_params> map_estimate{};
    std::array<std::array<double, 2>, n_fit_params> ci68{};
    std::array<std::array<double, 2>, n_fit_params> ci90{};
    FitDiagnostics diagnostics;

    std::size_t n_samples() const { return log_probs.size(); }
    double sample(std::size_t row, int param) const {
        return samples[row * n_fit_params + param];
    }
};

// Affine-invariant ensemble sampler (stretch move). Walkers advance in log
// space for log-uniform parameters and linearly otherwise; each walker owns a
// deterministic RNG stream derived from (seed, walker index), so results are
// reproducible bit for bit for a given configuration. Convergence is judged
// by the split-chain statistic (each walker chain halved); r_hat_max > 1.1
// tags the result unconverged.
FitResult sample_posterior(const SpectrumData& data, const SystemParams& p,
                           const PriorSpec& priors, const SamplerConfig& cfg);

struct QuadraturePosterior {
    double var_x1_median = 0.0;
    std::array<double, 2> var_x1_ci68{};
    double var_x2_median = 0.0;
    std::array<double, 2> var_x2_ci68{};
    double excluded_fraction = 0.0; // unstable posterior draws
};

// Pushes every posterior sample through the steady-state variance model.
QuadraturePosterior derive_quadratures(const FitResult& fit, const SystemParams& p,
                                       const PumpConfig& pumps);

// Synthetic averaged spectrum: S_true * (1 + z / sqrt(n_avg)) with standard
// normal draws z from the given seed, floored at a tiny positive value.
SpectrumData make_synthetic_spectrum(const SystemParams& p, const PumpConfig& pumps,
                                     const BathState& baths,
                                     const SpectrumModelParams& model, double n_avg,
                                     std::uint64_t seed);

} // namespace sqz
