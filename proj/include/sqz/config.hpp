// JSON run-configuration loading. Files carry explicit units in key names
// (..._hz, ..._m); everything is converted to angular internal units here, at
// the boundary. Unknown keys anywhere in the file are rejected so typos fail
// loudly instead of silently using defaults.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqz/bae.hpp"
#include "sqz/fitting.hpp"
#include "sqz/model.hpp"

namespace sqz {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SpectrumGrid {
    double f_start_hz = 0.0;
    double f_stop_hz = 0.0;
    int n_points = 0;
    double s0 = 0.0;
    double gain = 1.0;
    double n_avg = 200.0;
    bool synthetic_noise = false; // simulate: add seeded periodogram scatter

    std::vector<double> grid() const;
};

struct ProbeSection {
    ProbeConfig probe;
    int n_theta = 8; // phases for the tomography sweep
};

struct FitSection {
    SamplerConfig sampler;
    PriorSpec priors = PriorSpec::defaults();
    std::optional<std::uint64_t> seed; // overrides the top-level seed
};

struct SweepSection {
    enum class Kind { ratio, power, phase };
    Kind kind = Kind::ratio;
    std::vector<double> values;
    double total_photons = 0.0;   // ratio sweeps
    double n_c_per_photon = 0.0;  // power sweeps: cavity heating slope
};

struct CalibrateSection {
    enum class Task { g0, gminus, gplus, driven };
    Task task = Task::g0;
    double gain_at_minus = 1.0; // gplus task
    double gain_at_plus = 1.0;
    double g_max = 0.0;         // driven task search bound, rad/s; 0 = 0.8 kappa
};

struct RunConfig {
    SystemParams device;
    ValidationReport device_report;
    std::optional<PumpConfig> pumps;
    std::optional<BathState> baths;
    std::optional<SpectrumGrid> spectrum;
    std::optional<ProbeSection> probe;
    std::optional<FitSection> fit;
    std::optional<SweepSection> sweep;
    std::optional<CalibrateSection> calibrate;
    std::uint64_t seed = 1;
};

// Parses and validates a config file; throws ConfigError with a descriptive
// message on schema violations, unknown keys, or invalid device parameters.
RunConfig load_config(const std::string& path);

// Resolves a --config argument: the path itself if it exists, otherwise a
// lookup under the directory named by the SQZ_CONFIG_DIR environment
// variable. Throws ConfigError when neither exists.
std::string resolve_config_path(const std::string& arg);

} // namespace sqz
