#include "sqz/config.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

#include <json.hpp>

namespace sqz {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& ctx) {
    for (const auto& [key, val] : obj.items()) {
        (void)val;
        if (!allowed.count(key))
            throw ConfigError("config: unknown key '" + key + "' in " + ctx);
    }
}

const json& member(const json& obj, const char* key, const std::string& ctx) {
    const auto it = obj.find(key);
    if (it == obj.end())
        throw ConfigError("config: missing key '" + std::string(key) + "' in " + ctx);
    return *it;
}

double num(const json& obj, const char* key, const std::string& ctx) {
    const json& v = member(obj, key, ctx);
    if (!v.is_number())
        throw ConfigError("config: '" + std::string(key) + "' in " + ctx +
                          " must be a number");
    return v.get<double>();
}

double num_or(const json& obj, const char* key, const std::string& ctx, double def) {
    if (!obj.contains(key)) return def;
    return num(obj, key, ctx);
}

int integer(const json& obj, const char* key, const std::string& ctx) {
    const json& v = member(obj, key, ctx);
    if (!v.is_number_integer())
        throw ConfigError("config: '" + std::string(key) + "' in " + ctx +
                          " must be an integer");
    return v.get<int>();
}

int integer_or(const json& obj, const char* key, const std::string& ctx, int def) {
    if (!obj.contains(key)) return def;
    return integer(obj, key, ctx);
}

std::string text(const json& obj, const char* key, const std::string& ctx) {
    const json& v = member(obj, key, ctx);
    if (!v.is_string())
        throw ConfigError("config: '" + std::string(key) + "' in " + ctx +
                          " must be a string");
    return v.get<std::string>();
}

SystemParams parse_device(const json& j) {
    const std::string ctx = "device";
    check_keys(j, {"omega_m_hz", "omega_c_hz", "kappa_hz", "kappa_in_hz",
                   "kappa_out_hz", "gamma_m_hz", "g0_hz", "x_zp_m", "mass_kg",
                   "notes"},
               ctx);
    SystemParams p;
    p.omega_m = two_pi * num(j, "omega_m_hz", ctx);
    p.omega_c = two_pi * num(j, "omega_c_hz", ctx);
    p.kappa = two_pi * num(j, "kappa_hz", ctx);
    // default split: half out, half in, no internal loss
    p.kappa_in = two_pi * num_or(j, "kappa_in_hz", ctx, 0.5 * p.kappa / two_pi);
    p.kappa_out = two_pi * num_or(j, "kappa_out_hz", ctx, 0.5 * p.kappa / two_pi);
    p.gamma_m = two_pi * num(j, "gamma_m_hz", ctx);
    p.g0 = two_pi * num(j, "g0_hz", ctx);
    if (j.contains("x_zp_m")) {
        p.x_zp = num(j, "x_zp_m", ctx);
    } else if (j.contains("mass_kg")) {
        p.x_zp = SystemParams::x_zp_from_mass(num(j, "mass_kg", ctx), p.omega_m);
    } else {
        throw ConfigError("config: device needs x_zp_m or mass_kg");
    }
    return p;
}

PumpConfig parse_pumps(const json& j) {
    const std::string ctx = "pumps";
    check_keys(j, {"n_p_minus", "n_p_plus", "delta_minus_hz", "delta_plus_hz"}, ctx);
    PumpConfig pumps;
    pumps.n_p_minus = num(j, "n_p_minus", ctx);
    pumps.n_p_plus = num_or(j, "n_p_plus", ctx, 0.0);
    pumps.delta_minus = two_pi * num_or(j, "delta_minus_hz", ctx, 0.0);
    pumps.delta_plus = two_pi * num_or(j, "delta_plus_hz", ctx, 0.0);
    if (pumps.n_p_minus < 0.0 || pumps.n_p_plus < 0.0)
        throw ConfigError("config: pump photon numbers must be non-negative");
    return pumps;
}

BathState parse_baths(const json& j) {
    const std::string ctx = "baths";
    check_keys(j, {"n_m_th", "n_c_th"}, ctx);
    BathState baths;
    baths.n_m_th = num(j, "n_m_th", ctx);
    baths.n_c_th = num_or(j, "n_c_th", ctx, 0.0);
    if (baths.n_m_th < 0.0 || baths.n_c_th < 0.0)
        throw ConfigError("config: bath occupations must be non-negative");
    return baths;
}

SpectrumGrid parse_spectrum(const json& j) {
    const std::string ctx = "spectrum";
    check_keys(j, {"f_start_hz", "f_stop_hz", "n_points", "s0", "gain", "n_avg",
                   "synthetic_noise"},
               ctx);
    SpectrumGrid g;
    g.f_start_hz = num(j, "f_start_hz", ctx);
    g.f_stop_hz = num(j, "f_stop_hz", ctx);
    g.n_points = integer(j, "n_points", ctx);
    g.s0 = num_or(j, "s0", ctx, 0.0);
    g.gain = num_or(j, "gain", ctx, 1.0);
    g.n_avg = num_or(j, "n_avg", ctx, 200.0);
    if (j.contains("synthetic_noise")) {
        const json& v = j["synthetic_noise"];
        if (!v.is_boolean())
            throw ConfigError("config: spectrum.synthetic_noise must be a boolean");
        g.synthetic_noise = v.get<bool>();
    }
    if (g.n_points < 2) throw ConfigError("config: spectrum.n_points must be >= 2");
    if (!(g.f_stop_hz > g.f_start_hz))
        throw ConfigError("config: spectrum.f_stop_hz must exceed f_start_hz");
    if (g.n_avg < 1.0) throw ConfigError("config: spectrum.n_avg must be >= 1");
    return g;
}

ProbeSection parse_probe(const json& j) {
    const std::string ctx = "probe";
    check_keys(j, {"n_p_probe", "theta_rad", "probe_offset_hz", "n_theta"}, ctx);
    ProbeSection s;
    s.probe.n_p_probe = num(j, "n_p_probe", ctx);
    s.probe.theta = num_or(j, "theta_rad", ctx, 0.0);
    s.probe.probe_offset = two_pi * num(j, "probe_offset_hz", ctx);
    s.n_theta = integer_or(j, "n_theta", ctx, 8);
    if (s.probe.n_p_probe < 0.0)
        throw ConfigError("config: probe.n_p_probe must be non-negative");
    if (s.n_theta < 1) throw ConfigError("config: probe.n_theta must be >= 1");
    return s;
}

Prior parse_prior(const json& j, const std::string& name, double unit) {
    const std::string ctx = "fit.priors." + name;
    if (!j.is_object())
        throw ConfigError("config: " + ctx + " must be an object");
    const std::string kind = text(j, "kind", ctx);
    Prior prior;
    if (kind == "log_uniform" || kind == "uniform") {
        check_keys(j, {"kind", "lo", "hi"}, ctx);
        prior.kind = kind == "uniform" ? Prior::Kind::uniform
                                       : Prior::Kind::log_uniform;
        prior.a = unit * num(j, "lo", ctx);
        prior.b = unit * num(j, "hi", ctx);
    } else if (kind == "normal") {
        check_keys(j, {"kind", "mean", "sd"}, ctx);
        prior.kind = Prior::Kind::normal;
        prior.a = unit * num(j, "mean", ctx);
        prior.b = unit * num(j, "sd", ctx);
    } else if (kind == "fixed") {
        check_keys(j, {"kind", "value"}, ctx);
        prior.kind = Prior::Kind::fixed;
        prior.a = unit * num(j, "value", ctx);
    } else {
        throw ConfigError("config: " + ctx + " has unknown kind '" + kind + "'");
    }
    return prior;
}

FitSection parse_fit(const json& j) {
    const std::string ctx = "fit";
    check_keys(j, {"n_walkers", "n_steps", "burn_in", "seed", "stretch_a",
                   "likelihood", "priors"},
               ctx);
    FitSection s;
    s.sampler.n_walkers = integer_or(j, "n_walkers", ctx, 32);
    s.sampler.n_steps = integer_or(j, "n_steps", ctx, 2000);
    s.sampler.burn_in = integer_or(j, "burn_in", ctx, 500);
    s.sampler.stretch_a = num_or(j, "stretch_a", ctx, 2.0);
    if (j.contains("seed"))
        s.seed = static_cast<std::uint64_t>(integer(j, "seed", ctx));
    if (j.contains("likelihood")) {
        const std::string kind = text(j, "likelihood", ctx);
        if (kind == "gamma") {
            s.sampler.gamma_likelihood = true;
        } else if (kind != "gaussian") {
            throw ConfigError("config: fit.likelihood must be gaussian or gamma");
        }
    }
    if (j.contains("priors")) {
        const json& pr = member(j, "priors", ctx);
        check_keys(pr, {"n_c_th", "gamma_m_n_m_hz", "s0", "gain",
                        "delta_minus_hz", "delta_plus_hz"},
                   "fit.priors");
        struct Entry {
            const char* key;
            int index;
            double unit;
        };
        const Entry entries[] = {
            {"n_c_th", fit_n_c_th, 1.0},
            {"gamma_m_n_m_hz", fit_gamma_m_n_m, two_pi},
            {"s0", fit_s0, 1.0},
            {"gain", fit_gain, 1.0},
            {"delta_minus_hz", fit_delta_minus, two_pi},
            {"delta_plus_hz", fit_delta_plus, two_pi},
        };
        for (const auto& e : entries)
            if (pr.contains(e.key))
                s.priors.prior[e.index] = parse_prior(pr[e.key], e.key, e.unit);
    }
    return s;
}

SweepSection parse_sweep(const json& j) {
    const std::string ctx = "sweep";
    check_keys(j, {"kind", "values", "total_photons", "n_c_per_photon"}, ctx);
    SweepSection s;
    const std::string kind = text(j, "kind", ctx);
    if (kind == "ratio") {
        s.kind = SweepSection::Kind::ratio;
    } else if (kind == "power") {
        s.kind = SweepSection::Kind::power;
    } else if (kind == "phase") {
        s.kind = SweepSection::Kind::phase;
    } else {
        throw ConfigError("config: sweep.kind must be ratio, power, or phase");
    }
    const json& vals = member(j, "values", ctx);
    if (!vals.is_array() || vals.empty())
        throw ConfigError("config: sweep.values must be a non-empty array");
    for (const auto& v : vals) {
        if (!v.is_number())
            throw ConfigError("config: sweep.values must be numbers");
        s.values.push_back(v.get<double>());
    }
    s.total_photons = num_or(j, "total_photons", ctx, 0.0);
    s.n_c_per_photon = num_or(j, "n_c_per_photon", ctx, 0.0);
    if (s.kind == SweepSection::Kind::ratio && !(s.total_photons > 0.0))
        throw ConfigError("config: ratio sweep needs total_photons > 0");
    return s;
}

CalibrateSection parse_calibrate(const json& j) {
    const std::string ctx = "calibrate";
    check_keys(j, {"task", "gain_at_minus", "gain_at_plus", "g_max_hz"}, ctx);
    CalibrateSection s;
    const std::string task = text(j, "task", ctx);
    if (task == "g0") {
        s.task = CalibrateSection::Task::g0;
    } else if (task == "gminus") {
        s.task = CalibrateSection::Task::gminus;
    } else if (task == "gplus") {
        s.task = CalibrateSection::Task::gplus;
    } else if (task == "driven") {
        s.task = CalibrateSection::Task::driven;
    } else {
        throw ConfigError("config: calibrate.task must be g0, gminus, gplus, or driven");
    }
    s.gain_at_minus = num_or(j, "gain_at_minus", ctx, 1.0);
    s.gain_at_plus = num_or(j, "gain_at_plus", ctx, 1.0);
    s.g_max = two_pi * num_or(j, "g_max_hz", ctx, 0.0);
    return s;
}

} // namespace

std::vector<double> SpectrumGrid::grid() const {
    std::vector<double> f;
    f.reserve(n_points);
    for (int i = 0; i < n_points; ++i)
        f.push_back(f_start_hz +
                    (f_stop_hz - f_start_hz) * i / static_cast<double>(n_points - 1));
    return f;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    json root;
    try {
        root = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config: " + path + ": " + e.what());
    }
    if (!root.is_object()) throw ConfigError("config: top level must be an object");
    check_keys(root,
               {"device", "pumps", "baths", "spectrum", "probe", "fit", "sweep",
                "calibrate", "seed", "notes"},
               "top level");

    RunConfig cfg;
    cfg.device = parse_device(member(root, "device", "top level"));
    cfg.device_report = validate(cfg.device);
    if (!cfg.device_report.ok()) {
        std::string msg = "config: invalid device parameters:";
        for (const auto& e : cfg.device_report.errors) msg += " " + e + ";";
        throw ConfigError(msg);
    }
    if (root.contains("pumps")) cfg.pumps = parse_pumps(root["pumps"]);
    if (root.contains("baths")) cfg.baths = parse_baths(root["baths"]);
    if (root.contains("spectrum")) cfg.spectrum = parse_spectrum(root["spectrum"]);
    if (root.contains("probe")) cfg.probe = parse_probe(root["probe"]);
    if (root.contains("fit")) cfg.fit = parse_fit(root["fit"]);
    if (root.contains("sweep")) cfg.sweep = parse_sweep(root["sweep"]);
    if (root.contains("calibrate")) cfg.calibrate = parse_calibrate(root["calibrate"]);
    if (root.contains("seed")) {
        const json& s = root["seed"];
        if (!s.is_number_integer() || s.get<long long>() < 0)
            throw ConfigError("config: seed must be a non-negative integer");
        cfg.seed = s.get<std::uint64_t>();
    }
    return cfg;
}

std::string resolve_config_path(const std::string& arg) {
    namespace fs = std::filesystem;
    if (fs::exists(arg)) return arg;
    if (const char* dir = std::getenv("SQZ_CONFIG_DIR")) {
        const fs::path candidate = fs::path(dir) / arg;
        if (fs::exists(candidate)) return candidate.string();
    }
    throw ConfigError("config: '" + arg + "' not found (also searched SQZ_CONFIG_DIR)");
}

} // namespace sqz
