// Command-line front end: config-driven simulation, fitting, calibration,
// probe tomography, and sweeps. All physical inputs arrive in Hz through the
// config file and all outputs leave in Hz; exit codes are 0 success, 2 config
// or data error, 3 unstable configuration, 4 unconverged fit.
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sqz/analytics.hpp"
#include "sqz/bae.hpp"
#include "sqz/calibration.hpp"
#include "sqz/config.hpp"
#include "sqz/csv.hpp"
#include "sqz/fitting.hpp"
#include "sqz/json_writer.hpp"
#include "sqz/lyapunov.hpp"
#include "sqz/model.hpp"

namespace {

namespace fs = std::filesystem;
using namespace sqz;

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_unstable = 3;
constexpr int exit_unconverged = 4;

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    bool allow_unstable = false;
    bool allow_unconverged = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "run configuration (JSON)")
        ->required();
    cmd->add_option("--out", args.out_dir, "output directory (created if missing)");
    cmd->add_option("--seed", args.seed, "override the configured random seed");
    cmd->add_flag("--allow-unstable", args.allow_unstable,
                  "continue despite a dynamically unstable configuration");
    cmd->add_flag("--allow-unconverged", args.allow_unconverged,
                  "exit 0 even when fit diagnostics indicate non-convergence");
}

RunConfig load(const CommonArgs& args) {
    RunConfig cfg = load_config(resolve_config_path(args.config_path));
    if (args.seed) cfg.seed = *args.seed;
    return cfg;
}

void ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec && !fs::is_directory(dir))
        throw ConfigError("cannot create output directory '" + dir + "'");
}

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void require(bool present, const char* what) {
    if (!present)
        throw ConfigError(std::string("config: this command requires a '") + what +
                          "' section");
}

void warn(const std::string& msg) { std::cerr << "warning: " << msg << "\n"; }

void write_validity(const std::string& path, const RunConfig& cfg,
                    const StabilityResult& stability) {
    jsonw::Writer w;
    w.begin_object();
    w.kv("stable", stability.stable);
    w.kv("gamma_eff_hz", stability.gamma_eff / two_pi);
    const double ratio = cfg.device.kappa / cfg.device.omega_m;
    w.kv("kappa_over_omega_m", ratio);
    w.kv("good_cavity", ratio <= 0.3);
    w.key("warnings").begin_array();
    for (const auto& msg : cfg.device_report.warnings) w.value(msg);
    w.end_array();
    w.end_object();
    w.write_file(path);
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const CommonArgs& args) {
    RunConfig cfg = load(args);
    require(cfg.pumps.has_value(), "pumps");
    require(cfg.baths.has_value(), "baths");
    require(cfg.spectrum.has_value(), "spectrum");
    ensure_out_dir(args.out_dir);

    const CouplingRates rates = enhanced_couplings(cfg.device, *cfg.pumps);
    const StabilityResult stability = stability_check(cfg.device, rates);
    write_validity(join(args.out_dir, "validity.json"), cfg, stability);

    SpectrumModelParams model;
    model.s0 = cfg.spectrum->s0;
    model.gain = cfg.spectrum->gain;
    model.freq_hz = cfg.spectrum->grid();
    const VarianceResult variances = quad_variances(cfg.device, *cfg.pumps, *cfg.baths);

    jsonw::Writer w;
    w.begin_object();
    w.kv("stable", variances.stable);
    if (variances.stable) {
        w.kv("var_x1", variances.state.var_x1);
        w.kv("var_x2", variances.state.var_x2);
        w.kv("cov_x12", variances.state.cov_x12);
        w.kv("squeezing_db", squeezing_db(variances.state));
        w.kv("uncertainty_product", variances.state.uncertainty_product());
    }
    w.kv("gamma_eff_hz", stability.gamma_eff / two_pi);
    w.kv("n_p_minus", cfg.pumps->n_p_minus);
    w.kv("n_p_plus", cfg.pumps->n_p_plus);
    w.end_object();
    w.write_file(join(args.out_dir, "variances.json"));

    csv::Table table;
    table.columns = {"freq_hz", "psd", "n_avg"};
    if (!stability.stable) {
        warn("configuration is dynamically unstable; no spectrum computed");
        csv::write_file(join(args.out_dir, "spectrum.csv"), table);
        return args.allow_unstable ? exit_ok : exit_unstable;
    }

    std::vector<double> psd;
    if (cfg.spectrum->synthetic_noise) {
        const SpectrumData data =
            make_synthetic_spectrum(cfg.device, *cfg.pumps, *cfg.baths, model,
                                    cfg.spectrum->n_avg, cfg.seed);
        psd = data.psd;
    } else {
        psd = output_spectrum(cfg.device, *cfg.pumps, *cfg.baths, model).psd;
    }
    for (std::size_t i = 0; i < model.freq_hz.size(); ++i)
        table.rows.push_back({model.freq_hz[i], psd[i], cfg.spectrum->n_avg});
    csv::write_file(join(args.out_dir, "spectrum.csv"), table);
    return exit_ok;
}

// --------------------------------------------------------------------- fit

SpectrumData read_spectrum_data(const std::string& path, const PumpConfig& pumps) {
    const csv::Table table = csv::read_file(path);
    const std::size_t fi = table.column_index("freq_hz");
    const std::size_t pi_ = table.column_index("psd");
    const std::size_t ni = table.column_index("n_avg");
    SpectrumData data;
    data.pumps = pumps;
    for (const auto& row : table.rows) {
        data.freq_hz.push_back(row[fi]);
        data.psd.push_back(row[pi_]);
        data.n_avg.push_back(row[ni]);
    }
    validate_data(data);
    return data;
}

void write_prior_band(jsonw::Writer& w, const char* name,
                      const std::array<double, 2>& band, double unit) {
    w.key(name).begin_array().value(band[0] / unit).value(band[1] / unit).end_array();
}

int cmd_fit(const CommonArgs& args, const std::string& data_path) {
    RunConfig cfg = load(args);
    require(cfg.pumps.has_value(), "pumps");
    ensure_out_dir(args.out_dir);

    FitSection fit_cfg = cfg.fit.value_or(FitSection{});
    fit_cfg.sampler.seed = args.seed ? *args.seed : fit_cfg.seed.value_or(cfg.seed);

    const SpectrumData data = read_spectrum_data(data_path, *cfg.pumps);
    const FitResult fit =
        sample_posterior(data, cfg.device, fit_cfg.priors, fit_cfg.sampler);
    const QuadraturePosterior quads = derive_quadratures(fit, cfg.device, *cfg.pumps);

    // unit conversion per parameter for user-facing output
    const std::array<double, n_fit_params> unit = {1.0, two_pi, 1.0, 1.0,
                                                   two_pi, two_pi};
    const std::array<const char*, n_fit_params> out_name = {
        "n_c_th", "gamma_m_n_m_hz", "s0", "gain", "delta_minus_hz", "delta_plus_hz"};

    jsonw::Writer w;
    w.begin_object();
    w.kv("converged", fit.diagnostics.converged);
    w.kv("likelihood", fit_cfg.sampler.gamma_likelihood ? "gamma" : "gaussian");
    w.kv("seed", static_cast<long long>(fit_cfg.sampler.seed));
    w.kv("n_walkers", fit.n_walkers);
    w.kv("n_steps", fit.n_steps);
    w.kv("burn_in", fit.burn_in);
    w.kv("n_samples", fit.n_samples());
    w.key("map_estimate").begin_object();
    for (int i = 0; i < n_fit_params; ++i)
        w.kv(out_name[i], fit.map_estimate[i] / unit[i]);
    w.end_object();
    w.key("ci68").begin_object();
    for (int i = 0; i < n_fit_params; ++i)
        write_prior_band(w, out_name[i], fit.ci68[i], unit[i]);
    w.end_object();
    w.key("ci90").begin_object();
    for (int i = 0; i < n_fit_params; ++i)
        write_prior_band(w, out_name[i], fit.ci90[i], unit[i]);
    w.end_object();
    w.key("fixed").begin_object();
    for (int i = 0; i < n_fit_params; ++i) w.kv(out_name[i], fit.fixed[i]);
    w.end_object();
    w.key("diagnostics").begin_object();
    w.kv("acceptance_rate", fit.diagnostics.acceptance_rate);
    w.kv("r_hat_max", fit.diagnostics.r_hat_max);
    w.key("r_hat").begin_object();
    for (int i = 0; i < n_fit_params; ++i)
        if (!fit.fixed[i]) w.kv(out_name[i], fit.diagnostics.r_hat[i]);
    w.end_object();
    w.key("effective_samples").begin_object();
    for (int i = 0; i < n_fit_params; ++i)
        if (!fit.fixed[i]) w.kv(out_name[i], fit.diagnostics.ess[i]);
    w.end_object();
    w.end_object();
    w.end_object();
    w.write_file(join(args.out_dir, "fit_result.json"));

    csv::Table samples;
    samples.columns = {"n_c_th", "gamma_m_n_m_hz", "s0", "gain",
                       "delta_minus_hz", "delta_plus_hz", "log_prob"};
    samples.rows.reserve(fit.n_samples());
    for (std::size_t s = 0; s < fit.n_samples(); ++s) {
        std::vector<double> row(n_fit_params + 1);
        for (int i = 0; i < n_fit_params; ++i) row[i] = fit.sample(s, i) / unit[i];
        row[n_fit_params] = fit.log_probs[s];
        samples.rows.push_back(std::move(row));
    }
    csv::write_file(join(args.out_dir, "samples.csv"), samples);

    jsonw::Writer q;
    q.begin_object();
    q.kv("var_x1_median", quads.var_x1_median);
    q.key("var_x1_ci68").begin_array().value(quads.var_x1_ci68[0])
        .value(quads.var_x1_ci68[1]).end_array();
    q.kv("var_x2_median", quads.var_x2_median);
    q.key("var_x2_ci68").begin_array().value(quads.var_x2_ci68[0])
        .value(quads.var_x2_ci68[1]).end_array();
    q.kv("excluded_fraction", quads.excluded_fraction);
    q.kv("squeezing_db_median", -10.0 * std::log10(quads.var_x1_median));
    q.end_object();
    q.write_file(join(args.out_dir, "quadrature_posterior.json"));

    if (!fit.diagnostics.converged) {
        warn("fit did not converge (split-chain statistic " +
             csv::format_double(fit.diagnostics.r_hat_max) + " > 1.1)");
        if (!args.allow_unconverged) return exit_unconverged;
    }
    return exit_ok;
}

// --------------------------------------------------------------- calibrate

int cmd_calibrate(const CommonArgs& args, const std::string& data_path) {
    RunConfig cfg = load(args);
    require(cfg.calibrate.has_value(), "calibrate");
    ensure_out_dir(args.out_dir);
    const CalibrateSection& cal = *cfg.calibrate;
    const csv::Table table = csv::read_file(data_path);
    if (table.rows.empty()) throw ConfigError("calibration dataset is empty");

    jsonw::Writer w;
    w.begin_object();
    if (cal.task == CalibrateSection::Task::g0) {
        w.kv("task", "g0");
        const std::size_t xi = table.column_index("n_m_th");
        const std::size_t yi = table.column_index("ratio");
        std::vector<std::pair<double, double>> points;
        for (const auto& row : table.rows) points.emplace_back(row[xi], row[yi]);
        const G0Fit fit = fit_g0(cfg.device, points);
        w.kv("g0_hz", fit.g0 / two_pi);
        w.kv("g0_err_hz", fit.g0_err / two_pi);
        w.kv("slope", fit.slope);
        w.kv("slope_err", fit.slope_err);
        w.kv("n_points", points.size());
    } else if (cal.task == CalibrateSection::Task::gminus ||
               cal.task == CalibrateSection::Task::gplus) {
        const std::size_t xi = table.column_index("power");
        const std::size_t yi = table.column_index("gamma_tot_hz");
        std::vector<std::pair<double, double>> points;
        for (const auto& row : table.rows)
            points.emplace_back(row[xi], two_pi * row[yi]);
        const GminusWeakFit fit = fit_Gminus_weak(cfg.device, points);
        w.kv("task", cal.task == CalibrateSection::Task::gminus ? "gminus" : "gplus");
        w.kv("coupling_minus_per_sqrt_power_hz", fit.coupling_per_sqrt_power / two_pi);
        w.kv("coupling_minus_err_hz", fit.coupling_err / two_pi);
        w.kv("gamma_m_intercept_hz", fit.gamma_m_intercept / two_pi);
        w.kv("gamma_m_intercept_err_hz", fit.intercept_err / two_pi);
        w.key("rejected_points").begin_array();
        for (std::size_t idx : fit.rejected) w.value(idx);
        w.end_array();
        if (!fit.rejected.empty())
            warn(std::to_string(fit.rejected.size()) +
                 " point(s) outside the weak-coupling regime were excluded");
        if (cal.task == CalibrateSection::Task::gplus) {
            const GplusCal plus =
                fit_Gplus_gain_ratio(cal.gain_at_plus, cal.gain_at_minus, fit);
            w.kv("gain_at_minus", cal.gain_at_minus);
            w.kv("gain_at_plus", cal.gain_at_plus);
            w.kv("coupling_plus_per_sqrt_power_hz",
                 plus.coupling_per_sqrt_power / two_pi);
            w.kv("coupling_plus_err_hz", plus.coupling_err / two_pi);
        }
        w.kv("n_points", table.rows.size());
    } else { // driven
        w.kv("task", "driven");
        const std::size_t fi = table.column_index("freq_hz");
        const std::size_t ri = table.column_index("re");
        const std::size_t ii = table.column_index("im");
        std::vector<double> freq, mag2;
        for (const auto& row : table.rows) {
            freq.push_back(row[fi]);
            mag2.push_back(row[ri] * row[ri] + row[ii] * row[ii]);
        }
        const double g_max = cal.g_max > 0.0 ? cal.g_max : 0.8 * cfg.device.kappa;
        const double G = fit_driven_G(cfg.device, freq, mag2, g_max);
        w.kv("G_minus_hz", G / two_pi);
        w.kv("gamma_tot_model_hz", total_linewidth(cfg.device, G).gamma_tot / two_pi);
        w.kv("feature_fwhm_hz", extract_dip_fwhm(freq, mag2));
        w.kv("n_points", table.rows.size());
    }
    w.end_object();
    w.write_file(join(args.out_dir, "calibration.json"));
    return exit_ok;
}

// --------------------------------------------------------------------- bae

int cmd_bae(const CommonArgs& args) {
    RunConfig cfg = load(args);
    require(cfg.pumps.has_value(), "pumps");
    require(cfg.baths.has_value(), "baths");
    require(cfg.probe.has_value(), "probe");
    require(cfg.spectrum.has_value(), "spectrum");
    ensure_out_dir(args.out_dir);

    const VarianceResult truth = quad_variances(cfg.device, *cfg.pumps, *cfg.baths);
    if (!truth.stable) {
        warn("configuration is dynamically unstable; no probe spectra computed");
        if (!args.allow_unstable) return exit_unstable;
    }

    SpectrumModelParams model;
    model.s0 = cfg.spectrum->s0;
    model.gain = cfg.spectrum->gain;
    model.freq_hz = cfg.spectrum->grid();
    const std::vector<double> floor_psd =
        truth.stable ? output_spectrum(cfg.device, *cfg.pumps, *cfg.baths, model).psd
                     : std::vector<double>{};

    csv::Table table;
    table.columns = {"theta_rad", "variance", "variance_err", "model_variance",
                     "area_hz", "fwhm_hz", "ok"};
    double rms = 0.0;
    int n_ok = 0;
    bool offset_valid = true;
    ProbeCalib calib;
    if (truth.stable) {
        for (int k = 0; k < cfg.probe->n_theta; ++k) {
            ProbeConfig probe = cfg.probe->probe;
            probe.theta = pi * k / cfg.probe->n_theta;
            const ProbeSpectrum spec =
                probe_sideband_spectrum(cfg.device, *cfg.pumps, probe, *cfg.baths, model);
            calib = probe_calibration(cfg.device, *cfg.pumps, probe, model);
            offset_valid = spec.offset_valid;
            const VarianceExtraction got =
                extract_variance(model.freq_hz, spec.spec.psd, floor_psd, calib);
            const double v_model = variance_vs_phase(truth.state, probe.theta);
            if (got.ok) {
                const double rel = got.variance / v_model - 1.0;
                rms += rel * rel;
                ++n_ok;
            } else {
                warn("phase " + csv::format_double(probe.theta) + ": " + got.message);
            }
            table.rows.push_back({probe.theta, got.variance, got.variance_err,
                                  v_model, got.area_hz, got.fwhm_hz,
                                  got.ok ? 1.0 : 0.0});
        }
        if (!offset_valid)
            warn("probe offset is below 10 mechanical linewidths; "
                 "sideband overlap biases the extraction");
    }
    csv::write_file(join(args.out_dir, "vtheta.csv"), table);

    jsonw::Writer w;
    w.begin_object();
    w.kv("stable", truth.stable);
    if (truth.stable) {
        w.kv("var_x1_model", truth.state.var_x1);
        w.kv("var_x2_model", truth.state.var_x2);
        double v_min = 0.0, v_max = 0.0;
        bool have = false;
        for (const auto& row : table.rows) {
            if (row[6] < 0.5) continue;
            if (!have || row[1] < v_min) v_min = row[1];
            if (!have || row[1] > v_max) v_max = row[1];
            have = true;
        }
        w.kv("extracted_min", v_min);
        w.kv("extracted_max", v_max);
        w.kv("rms_rel_error", n_ok ? std::sqrt(rms / n_ok) : 0.0);
        w.kv("n_phases", cfg.probe->n_theta);
        w.kv("n_extracted", n_ok);
        w.kv("offset_valid", offset_valid);
        w.kv("gamma_tot_hz", calib.width / two_pi);
        w.kv("probe_center_hz", calib.center_hz);
        w.kv("area_per_variance_hz", calib.coefficient);
    }
    w.end_object();
    w.write_file(join(args.out_dir, "bae.json"));
    return exit_ok;
}

// ------------------------------------------------------------------- sweep

int cmd_sweep(const CommonArgs& args) {
    RunConfig cfg = load(args);
    require(cfg.sweep.has_value(), "sweep");
    ensure_out_dir(args.out_dir);
    const SweepSection& sweep = *cfg.sweep;

    csv::Table summary;
    jsonw::Writer w;
    w.begin_object();

    if (sweep.kind == SweepSection::Kind::ratio) {
        require(cfg.baths.has_value(), "baths");
        require(cfg.spectrum.has_value(), "spectrum");
        w.kv("kind", "ratio");
        summary.columns = {"ratio", "n_p_minus", "n_p_plus", "stable",
                           "var_x1", "var_x2", "psd_center", "psd_near",
                           "center_is_peak"};
        SpectrumModelParams model;
        model.s0 = cfg.spectrum->s0;
        model.gain = cfg.spectrum->gain;
        model.freq_hz = cfg.spectrum->grid();
        int index = 0;
        for (double ratio : sweep.values) {
            const PumpConfig pumps = PumpConfig::from_ratio(sweep.total_photons, ratio);
            const VarianceResult var = quad_variances(cfg.device, pumps, *cfg.baths);
            char name[32];
            std::snprintf(name, sizeof(name), "spectrum_%03d.csv", index++);
            csv::Table spec_file;
            spec_file.columns = {"freq_hz", "psd", "n_avg"};
            if (!var.stable) {
                warn("ratio " + csv::format_double(ratio) + " is unstable");
                if (!args.allow_unstable) return exit_unstable;
                csv::write_file(join(args.out_dir, name), spec_file);
                summary.rows.push_back({ratio, pumps.n_p_minus, pumps.n_p_plus, 0.0,
                                        0.0, 0.0, 0.0, 0.0, 0.0});
                continue;
            }
            const SpectrumResult spec =
                output_spectrum(cfg.device, pumps, *cfg.baths, model);
            for (std::size_t i = 0; i < spec.freq_hz.size(); ++i)
                spec_file.rows.push_back(
                    {spec.freq_hz[i], spec.psd[i], cfg.spectrum->n_avg});
            csv::write_file(join(args.out_dir, name), spec_file);

            // extremum sign at cavity center: compare against a point a tenth
            // of an effective linewidth away
            SpectrumModelParams probe_pts;
            probe_pts.s0 = model.s0;
            probe_pts.gain = model.gain;
            const double f_c = cfg.device.omega_c / two_pi;
            probe_pts.freq_hz = {f_c, f_c + var.stability.gamma_eff / 10.0 / two_pi};
            const SpectrumResult at =
                output_spectrum(cfg.device, pumps, *cfg.baths, probe_pts);
            const bool peak = at.psd[0] > at.psd[1];
            summary.rows.push_back({ratio, pumps.n_p_minus, pumps.n_p_plus, 1.0,
                                    var.state.var_x1, var.state.var_x2, at.psd[0],
                                    at.psd[1], peak ? 1.0 : 0.0});
        }
    } else if (sweep.kind == SweepSection::Kind::power) {
        require(cfg.baths.has_value(), "baths");
        w.kv("kind", "power");
        summary.columns = {"n_p_minus", "n_c_th", "gamma_tot_hz", "occupation"};
        for (double n_p : sweep.values) {
            const double G = cfg.device.g0 * std::sqrt(n_p);
            BathState baths = *cfg.baths;
            baths.n_c_th += sweep.n_c_per_photon * n_p;
            const double occ = cooled_occupation(cfg.device, G, baths);
            summary.rows.push_back(
                {n_p, baths.n_c_th,
                 total_linewidth(cfg.device, G).gamma_tot / two_pi, occ});
        }
    } else { // phase
        require(cfg.pumps.has_value(), "pumps");
        require(cfg.baths.has_value(), "baths");
        w.kv("kind", "phase");
        summary.columns = {"theta_rad", "variance"};
        const VarianceResult var = quad_variances(cfg.device, *cfg.pumps, *cfg.baths);
        if (!var.stable) {
            warn("configuration is dynamically unstable");
            if (!args.allow_unstable) return exit_unstable;
        } else {
            for (double theta : sweep.values)
                summary.rows.push_back({theta, variance_vs_phase(var.state, theta)});
        }
    }

    csv::write_file(join(args.out_dir, "sweep_summary.csv"), summary);
    w.kv("n_points", sweep.values.size());
    w.kv("summary", "sweep_summary.csv");
    w.end_object();
    w.write_file(join(args.out_dir, "sweep.json"));
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-tone squeezing toolkit: forward models, fits, calibrations"};
    app.require_subcommand(1);

    CommonArgs sim_args, fit_args, cal_args, bae_args, sweep_args;
    std::string fit_data, cal_data;

    CLI::App* sim = app.add_subcommand("simulate", "spectrum and variances from a config");
    add_common(sim, sim_args);
    CLI::App* fit = app.add_subcommand("fit", "posterior fit of a measured spectrum");
    add_common(fit, fit_args);
    fit->add_option("data", fit_data, "spectrum CSV (freq_hz,psd,n_avg)")->required();
    CLI::App* cal = app.add_subcommand("calibrate", "coupling calibrations from sweep data");
    add_common(cal, cal_args);
    cal->add_option("data", cal_data, "calibration CSV")->required();
    CLI::App* bae = app.add_subcommand("bae", "probe tomography closed loop");
    add_common(bae, bae_args);
    CLI::App* sweep = app.add_subcommand("sweep", "ratio, power, or phase sweeps");
    add_common(sweep, sweep_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return exit_config;
    }

    try {
        if (sim->parsed()) return cmd_simulate(sim_args);
        if (fit->parsed()) return cmd_fit(fit_args, fit_data);
        if (cal->parsed()) return cmd_calibrate(cal_args, cal_data);
        if (bae->parsed()) return cmd_bae(bae_args);
        if (sweep->parsed()) return cmd_sweep(sweep_args);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return exit_config;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    }
    return exit_ok;
}
