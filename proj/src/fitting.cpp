#include "sqz/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace sqz {

const std::array<const char*, n_fit_params> fit_param_names = {
    "n_c_th", "gamma_m_n_m", "s0", "gain", "delta_minus", "delta_plus"};

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

double quantile(std::vector<double> v, double q) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const double pos = q * (v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= v.size()) return v.back();
    const double frac = pos - lo;
    return v[lo] * (1.0 - frac) + v[lo + 1] * frac;
}

} // namespace

void validate_data(const SpectrumData& data) {
    const std::size_t n = data.freq_hz.size();
    if (n == 0) throw std::invalid_argument("spectrum data is empty");
    if (data.psd.size() != n || data.n_avg.size() != n)
        throw std::invalid_argument("spectrum columns have unequal lengths");
    for (std::size_t i = 0; i < n; ++i) {
        if (i && data.freq_hz[i] <= data.freq_hz[i - 1])
            throw std::invalid_argument("frequency grid must be strictly increasing");
        if (data.psd[i] < 0.0)
            throw std::invalid_argument("psd values must be non-negative");
        if (data.n_avg[i] < 1.0)
            throw std::invalid_argument("n_avg must be at least 1");
    }
}

PriorSpec PriorSpec::defaults() {
    PriorSpec s;
    s.prior[fit_n_c_th] = {Prior::Kind::log_uniform, 1e-4, 30.0};
    s.prior[fit_gamma_m_n_m] = {Prior::Kind::log_uniform, two_pi * 1e-2, two_pi * 1e5};
    s.prior[fit_s0] = {Prior::Kind::log_uniform, 1e-8, 1e4};
    s.prior[fit_gain] = {Prior::Kind::log_uniform, 1e-6, 1e6};
    s.prior[fit_delta_minus] = {Prior::Kind::fixed, 0.0, 0.0};
    s.prior[fit_delta_plus] = {Prior::Kind::fixed, 0.0, 0.0};
    return s;
}

int PriorSpec::n_free() const {
    int n = 0;
    for (const auto& p : prior)
        if (p.kind != Prior::Kind::fixed) ++n;
    return n;
}

SpectrumResult model_spectrum(const SystemParams& p, const PumpConfig& pumps,
                              const std::array<double, n_fit_params>& theta,
                              const std::vector<double>& freq_hz) {
    PumpConfig run = pumps;
    run.delta_minus = theta[fit_delta_minus];
    run.delta_plus = theta[fit_delta_plus];
    BathState baths;
    baths.n_c_th = theta[fit_n_c_th];
    baths.n_m_th = theta[fit_gamma_m_n_m] / p.gamma_m;
    SpectrumModelParams model;
    model.s0 = theta[fit_s0];
    model.gain = theta[fit_gain];
    model.freq_hz = freq_hz;
    return output_spectrum(p, run, baths, model);
}

double log_likelihood(const SpectrumData& data, const SystemParams& p,
                      const std::array<double, n_fit_params>& theta,
                      bool gamma_likelihood) {
    const SpectrumResult spec = model_spectrum(p, data.pumps, theta, data.freq_hz);
    if (!spec.stable) return neg_inf;
    double ll = 0.0;
    for (std::size_t i = 0; i < data.freq_hz.size(); ++i) {
        const double m = spec.psd[i];
        const double n = data.n_avg[i];
        const double d = data.psd[i];
        if (!(m > 0.0)) return neg_inf;
        if (gamma_likelihood) {
            // averaged periodogram: d ~ Gamma(shape n, mean m)
            ll += (n - 1.0) * std::log(d) - n * d / m - n * std::log(m / n) -
                  std::lgamma(n);
        } else {
            const double sigma2 = m * m / n;
            const double r = d - m;
            ll += -0.5 * (r * r / sigma2 + std::log(two_pi * sigma2));
        }
    }
    return ll;
}

namespace {

struct SampleSpace {
    std::vector<int> free_idx; // parameter index per position coordinate
    std::array<bool, n_fit_params> is_log{};
    std::array<double, n_fit_params> fixed_value{};

    explicit SampleSpace(const PriorSpec& priors) {
        for (int i = 0; i < n_fit_params; ++i) {
            const Prior& pr = priors.prior[i];
            if (pr.kind == Prior::Kind::fixed) {
                fixed_value[i] = pr.a;
            } else {
                free_idx.push_back(i);
                is_log[i] = pr.kind == Prior::Kind::log_uniform;
            }
        }
    }

    std::array<double, n_fit_params> theta_of(const std::vector<double>& pos) const {
        std::array<double, n_fit_params> theta = fixed_value;
        for (std::size_t k = 0; k < free_idx.size(); ++k) {
            const int i = free_idx[k];
            theta[i] = is_log[i] ? std::exp(pos[k]) : pos[k];
        }
        return theta;
    }
};

// prior density in the sampled coordinates (flat for log-uniform in log space)
double log_prior(const PriorSpec& priors, const SampleSpace& space,
                 const std::vector<double>& pos) {
    double lp = 0.0;
    for (std::size_t k = 0; k < space.free_idx.size(); ++k) {
        const Prior& pr = priors.prior[space.free_idx[k]];
        const double x = pos[k];
        switch (pr.kind) {
            case Prior::Kind::log_uniform:
                if (x < std::log(pr.a) || x > std::log(pr.b)) return neg_inf;
                break;
            case Prior::Kind::uniform:
                if (x < pr.a || x > pr.b) return neg_inf;
                break;
            case Prior::Kind::normal: {
                const double z = (x - pr.a) / pr.b;
                lp += -0.5 * z * z;
                break;
            }
            case Prior::Kind::fixed:
                break;
        }
    }
    return lp;
}

void validate_priors(const PriorSpec& priors) {
    for (int i = 0; i < n_fit_params; ++i) {
        const Prior& pr = priors.prior[i];
        switch (pr.kind) {
            case Prior::Kind::log_uniform:
                if (!(pr.a > 0.0) || !(pr.b > pr.a))
                    throw std::invalid_argument(
                        "log-uniform prior needs 0 < lo < hi");
                break;
            case Prior::Kind::uniform:
                if (!(pr.b > pr.a))
                    throw std::invalid_argument("uniform prior needs lo < hi");
                break;
            case Prior::Kind::normal:
                if (!(pr.b > 0.0))
                    throw std::invalid_argument("normal prior needs sd > 0");
                break;
            case Prior::Kind::fixed:
                break;
        }
        if (!std::isfinite(pr.a) || !std::isfinite(pr.b))
            throw std::invalid_argument("prior bounds must be finite");
    }
}

double draw_initial(const Prior& pr, bool log_space, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    switch (pr.kind) {
        case Prior::Kind::log_uniform: {
            const double la = std::log(pr.a), lb = std::log(pr.b);
            return la + (lb - la) * u(rng);
        }
        case Prior::Kind::uniform:
            return pr.a + (pr.b - pr.a) * u(rng);
        case Prior::Kind::normal: {
            std::normal_distribution<double> nd(pr.a, pr.b);
            return nd(rng);
        }
        case Prior::Kind::fixed:
            break;
    }
    (void)log_space;
    return pr.a;
}

// split-chain convergence statistic over per-walker chains
double split_r_hat(const std::vector<std::vector<double>>& walker_chains) {
    std::vector<double> means, vars;
    for (const auto& chain : walker_chains) {
        const std::size_t half = chain.size() / 2;
        for (int piece = 0; piece < 2; ++piece) {
            const std::size_t lo = piece * half;
            double m = 0.0;
            for (std::size_t t = 0; t < half; ++t) m += chain[lo + t];
            m /= half;
            double v = 0.0;
            for (std::size_t t = 0; t < half; ++t) {
                const double d = chain[lo + t] - m;
                v += d * d;
            }
            v /= (half - 1);
            means.push_back(m);
            vars.push_back(v);
        }
    }
    const std::size_t m_chains = means.size();
    const double n = static_cast<double>(walker_chains.front().size() / 2);
    double grand = 0.0;
    for (double m : means) grand += m;
    grand /= m_chains;
    double b = 0.0;
    for (double m : means) b += (m - grand) * (m - grand);
    b *= n / (m_chains - 1);
    double w = 0.0;
    for (double v : vars) w += v;
    w /= m_chains;
    if (w <= 0.0) return 1.0;
    const double var_plus = (n - 1.0) / n * w + b / n;
    return std::sqrt(var_plus / w);
}

// integrated autocorrelation time with the self-consistent window
// M = min{m : m >= c tau(m)}, c = 5, autocovariance averaged over walkers
double autocorr_time(const std::vector<std::vector<double>>& walker_chains) {
    const std::size_t len = walker_chains.front().size();
    const std::size_t n_w = walker_chains.size();
    std::vector<double> means(n_w), var0(n_w, 0.0);
    for (std::size_t w = 0; w < n_w; ++w) {
        double m = 0.0;
        for (double x : walker_chains[w]) m += x;
        means[w] = m / len;
    }
    auto avg_autocov = [&](std::size_t lag) {
        double acc = 0.0;
        for (std::size_t w = 0; w < n_w; ++w) {
            const auto& c = walker_chains[w];
            double s = 0.0;
            for (std::size_t t = 0; t + lag < len; ++t)
                s += (c[t] - means[w]) * (c[t + lag] - means[w]);
            acc += s / (len - lag);
        }
        return acc / n_w;
    };
    const double c0 = avg_autocov(0);
    if (c0 <= 0.0) return 1.0;
    double tau = 1.0;
    for (std::size_t lag = 1; lag < len / 2; ++lag) {
        tau += 2.0 * avg_autocov(lag) / c0;
        if (static_cast<double>(lag) >= 5.0 * tau) break;
    }
    return std::max(tau, 1.0);
}

} // namespace

FitResult sample_posterior(const SpectrumData& data, const SystemParams& p,
                           const PriorSpec& priors, const SamplerConfig& cfg) {
    validate_data(data);
    validate_priors(priors);
    const SampleSpace space(priors);
    const int dim = static_cast<int>(space.free_idx.size());
    if (dim == 0) throw std::invalid_argument("at least one parameter must be free");
    if (cfg.n_walkers < std::max(4, 2 * dim) || cfg.n_walkers % 2 != 0)
        throw std::invalid_argument("n_walkers must be even and at least twice the free dimension");
    if (cfg.n_steps <= cfg.burn_in || cfg.burn_in < 0)
        throw std::invalid_argument("n_steps must exceed burn_in");
    if (!(cfg.stretch_a > 1.0))
        throw std::invalid_argument("stretch parameter must exceed 1");

    auto log_post = [&](const std::vector<double>& pos) {
        const double lp = log_prior(priors, space, pos);
        if (lp == neg_inf) return neg_inf;
        return lp + log_likelihood(data, p, space.theta_of(pos), cfg.gamma_likelihood);
    };

    // one deterministic stream per walker
    std::vector<std::mt19937_64> rngs;
    rngs.reserve(cfg.n_walkers);
    for (int w = 0; w < cfg.n_walkers; ++w) {
        std::seed_seq seq{static_cast<std::uint64_t>(cfg.seed),
                          static_cast<std::uint64_t>(w)};
        rngs.emplace_back(seq);
    }

    // scout the prior for a high-posterior anchor, then start the ensemble in
    // a tight ball around it: an ensemble spread over many prior decades
    // migrates too slowly to equilibrate within a typical chain length
    std::seed_seq scout_seq{static_cast<std::uint64_t>(cfg.seed),
                            static_cast<std::uint64_t>(cfg.n_walkers)};
    std::mt19937_64 scout_rng(scout_seq);
    std::vector<double> anchor(dim);
    double anchor_lp = neg_inf;
    const int n_scout = std::max(4096, 64 * cfg.n_walkers);
    std::vector<double> candidate(dim);
    for (int s = 0; s < n_scout; ++s) {
        for (int k = 0; k < dim; ++k)
            candidate[k] = draw_initial(priors.prior[space.free_idx[k]],
                                        space.is_log[space.free_idx[k]], scout_rng);
        const double l = log_post(candidate);
        if (l > anchor_lp) {
            anchor_lp = l;
            anchor = candidate;
        }
    }
    if (anchor_lp == neg_inf)
        throw std::runtime_error(
            "could not initialize walkers in a region of nonzero posterior");

    std::vector<std::vector<double>> pos(cfg.n_walkers, std::vector<double>(dim));
    std::vector<double> lp(cfg.n_walkers);
    for (int w = 0; w < cfg.n_walkers; ++w) {
        std::normal_distribution<double> ball(0.0, 1.0);
        bool ok = false;
        for (int attempt = 0; attempt < 200 && !ok; ++attempt) {
            for (int k = 0; k < dim; ++k) {
                const Prior& pr = priors.prior[space.free_idx[k]];
                double sd = 0.05; // log coordinates: a few percent in value
                if (!space.is_log[space.free_idx[k]]) {
                    if (pr.kind == Prior::Kind::uniform)
                        sd = 1e-3 * (pr.b - pr.a);
                    else if (pr.kind == Prior::Kind::normal)
                        sd = 0.05 * pr.b;
                    else
                        sd = 0.05 * std::max(std::abs(anchor[k]), 1e-12);
                }
                pos[w][k] = anchor[k] + sd * ball(rngs[w]);
            }
            lp[w] = log_post(pos[w]);
            ok = lp[w] != neg_inf;
        }
        if (!ok) {
            pos[w] = anchor;
            lp[w] = anchor_lp;
        }
    }

    const int kept_steps = cfg.n_steps - cfg.burn_in;
    FitResult out;
    for (int i = 0; i < n_fit_params; ++i) {
        out.param_names[i] = fit_param_names[i];
        out.fixed[i] = priors.prior[i].kind == Prior::Kind::fixed;
    }
    out.n_walkers = cfg.n_walkers;
    out.n_steps = cfg.n_steps;
    out.burn_in = cfg.burn_in;
    out.samples.reserve(static_cast<std::size_t>(kept_steps) * cfg.n_walkers *
                        n_fit_params);
    out.log_probs.reserve(static_cast<std::size_t>(kept_steps) * cfg.n_walkers);

    // per-walker kept chains in position coordinates, for diagnostics
    std::vector<std::vector<std::vector<double>>> chains(
        dim, std::vector<std::vector<double>>(cfg.n_walkers));
    for (auto& per_param : chains)
        for (auto& c : per_param) c.reserve(kept_steps);

    const int half = cfg.n_walkers / 2;
    std::size_t accepted = 0, proposed = 0;
    std::vector<double> trial(dim);
    for (int step = 0; step < cfg.n_steps; ++step) {
        for (int block = 0; block < 2; ++block) {
            const int lo = block * half;
            const int other = (1 - block) * half;
            for (int w = lo; w < lo + half; ++w) {
                auto& rng = rngs[w];
                std::uniform_int_distribution<int> pick(0, half - 1);
                std::uniform_real_distribution<double> unit(0.0, 1.0);
                const auto& partner = pos[other + pick(rng)];
                const double u = unit(rng);
                const double z =
                    (1.0 + (cfg.stretch_a - 1.0) * u) *
                    (1.0 + (cfg.stretch_a - 1.0) * u) / cfg.stretch_a;
                for (int k = 0; k < dim; ++k)
                    trial[k] = partner[k] + z * (pos[w][k] - partner[k]);
                const double lp_trial = log_post(trial);
                ++proposed;
                bool accept = false;
                if (lp_trial != neg_inf) {
                    const double ln_r =
                        (dim - 1) * std::log(z) + lp_trial - lp[w];
                    accept = std::log(unit(rng)) < ln_r;
                }
                if (accept) {
                    pos[w] = trial;
                    lp[w] = lp_trial;
                    ++accepted;
                }
            }
        }
        if (step >= cfg.burn_in) {
            for (int w = 0; w < cfg.n_walkers; ++w) {
                const auto theta = space.theta_of(pos[w]);
                out.samples.insert(out.samples.end(), theta.begin(), theta.end());
                out.log_probs.push_back(lp[w]);
                for (int k = 0; k < dim; ++k) chains[k][w].push_back(pos[w][k]);
            }
        }
    }

    out.diagnostics.acceptance_rate =
        static_cast<double>(accepted) / static_cast<double>(proposed);
    for (int i = 0; i < n_fit_params; ++i) {
        out.diagnostics.r_hat[i] = 1.0;
        out.diagnostics.ess[i] = 0.0;
    }
    double r_max = 1.0;
    for (int k = 0; k < dim; ++k) {
        const int i = space.free_idx[k];
        const double r = split_r_hat(chains[k]);
        out.diagnostics.r_hat[i] = r;
        r_max = std::max(r_max, r);
        const double tau = autocorr_time(chains[k]);
        out.diagnostics.ess[i] =
            static_cast<double>(kept_steps) * cfg.n_walkers / tau;
    }
    out.diagnostics.r_hat_max = r_max;
    out.diagnostics.converged = r_max <= 1.1;

    // MAP over kept samples
    std::size_t best = 0;
    for (std::size_t s = 1; s < out.n_samples(); ++s)
        if (out.log_probs[s] > out.log_probs[best]) best = s;
    for (int i = 0; i < n_fit_params; ++i) out.map_estimate[i] = out.sample(best, i);

    for (int i = 0; i < n_fit_params; ++i) {
        if (out.fixed[i]) {
            const double v = space.fixed_value[i];
            out.ci68[i] = {v, v};
            out.ci90[i] = {v, v};
            continue;
        }
        std::vector<double> col(out.n_samples());
        for (std::size_t s = 0; s < out.n_samples(); ++s) col[s] = out.sample(s, i);
        out.ci68[i] = {quantile(col, 0.16), quantile(col, 0.84)};
        out.ci90[i] = {quantile(col, 0.05), quantile(col, 0.95)};
    }
    return out;
}

QuadraturePosterior derive_quadratures(const FitResult& fit, const SystemParams& p,
                                       const PumpConfig& pumps) {
    QuadraturePosterior out;
    std::vector<double> v1, v2;
    std::size_t excluded = 0;
    v1.reserve(fit.n_samples());
    v2.reserve(fit.n_samples());
    for (std::size_t s = 0; s < fit.n_samples(); ++s) {
        BathState baths;
        baths.n_c_th = fit.sample(s, fit_n_c_th);
        baths.n_m_th = fit.sample(s, fit_gamma_m_n_m) / p.gamma_m;
        const VarianceResult r = quad_variances(p, pumps, baths);
        if (!r.stable) {
            ++excluded;
            continue;
        }
        v1.push_back(r.state.var_x1);
        v2.push_back(r.state.var_x2);
    }
    if (fit.n_samples() > 0)
        out.excluded_fraction =
            static_cast<double>(excluded) / static_cast<double>(fit.n_samples());
    if (!v1.empty()) {
        out.var_x1_median = quantile(v1, 0.5);
        out.var_x1_ci68 = {quantile(v1, 0.16), quantile(v1, 0.84)};
        out.var_x2_median = quantile(v2, 0.5);
        out.var_x2_ci68 = {quantile(v2, 0.16), quantile(v2, 0.84)};
    }
    return out;
}

SpectrumData make_synthetic_spectrum(const SystemParams& p, const PumpConfig& pumps,
                                     const BathState& baths,
                                     const SpectrumModelParams& model, double n_avg,
                                     std::uint64_t seed) {
    const SpectrumResult truth = output_spectrum(p, pumps, baths, model);
    if (!truth.stable)
        throw std::invalid_argument("cannot synthesize data for an unstable configuration");
    SpectrumData data;
    data.freq_hz = truth.freq_hz;
    data.pumps = pumps;
    data.n_avg.assign(truth.freq_hz.size(), n_avg);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    data.psd.reserve(truth.psd.size());
    for (double s : truth.psd) {
        const double noisy = s * (1.0 + normal(rng) / std::sqrt(n_avg));
        data.psd.push_back(std::max(noisy, 1e-12 * s));
    }
    return data;
}

} // namespace sqz
