#ifndef VORWAVE_CONFIG_HPP
#define VORWAVE_CONFIG_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "vorwave/grid.hpp"
#include "vorwave/params.hpp"

namespace vorwave {

enum class RunMode { simulate, steady, validate, reconstruct };

enum class InitialShape { flat, linear_mode, custom, snapshot };

// One explicit spectral coefficient, "m:value" in the config file.
struct ModeCoeff {
    int m = 1;
    double value = 0.0;
};

struct InitialSpec {
    InitialShape shape = InitialShape::flat;
    int m = 1;          // linear-mode wavenumber index
    double a = 0.0;     // linear-mode surface amplitude
    int branch = +1;    // dispersion branch, +1 or -1
    std::vector<ModeCoeff> eta_cos, eta_sin, xi_cos, xi_sin; // custom shape
    std::filesystem::path snapshot_path;                     // snapshot shape
};

struct TimeSpec {
    double t_end = 0.0;
    double dt = 0.0;       // 0 selects the linear stability guess
    int output_stride = 0; // snapshot cadence in steps, 0 picks ~10 frames
    int diag_stride = 0;   // diagnostics cadence in steps, 0 follows output_stride
};

struct SteadySpec {
    int branch = +1;
    std::vector<double> amplitudes;
    double tol = 1e-11;
    int max_iter = 25;
};

struct OutputSpec {
    int nx = 0; // reconstruct lattice columns, 0 uses the grid resolution
    int ny = 9; // reconstruct lattice rows per column
    bool write_snapshots = true;
};

struct RunConfig {
    RunMode mode = RunMode::simulate;
    WaveParameters params;
    InitialSpec initial;
    TimeSpec time;
    SteadySpec steady;
    OutputSpec output;
};

// Strict INI-style parser: [section] headers, key = value pairs, full-line
// comments starting with # or ;. Unknown sections, unknown keys, duplicate
// keys, and malformed values all throw ConfigError naming the offending key
// and line number. Referenced snapshot paths must exist at parse time.
RunConfig parse_config(const std::string& text, const std::filesystem::path& origin = "<config>");
RunConfig load_config(const std::filesystem::path& path);

// Materializes [initial] on the grid. Custom and linear-mode shapes must fit
// inside the dealias band; a snapshot must match the configured physics.
SurfaceState build_initial_state(const RunConfig& config, const PeriodicGrid& grid);

} // namespace vorwave

#endif
