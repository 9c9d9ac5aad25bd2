#include "vorwave/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "vorwave/dynamics.hpp"
#include "vorwave/errors.hpp"
#include "vorwave/snapshot.hpp"

namespace vorwave {

namespace {

struct ParseCursor {
    std::filesystem::path origin;
    int line_no = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ConfigError(origin.string() + " line " + std::to_string(line_no) + ": " + msg);
    }
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

// from_chars rejects an explicit plus sign; accept it here.
std::string_view drop_plus(std::string_view s) {
    if (s.size() > 1 && s.front() == '+') s.remove_prefix(1);
    return s;
}

double real_value(const ParseCursor& at, const std::string& key, std::string_view raw) {
    std::string_view s = drop_plus(trim(raw));
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
        at.fail("key \"" + key + "\": \"" + std::string(s) + "\" is not a finite number");
    }
    return v;
}

int int_value(const ParseCursor& at, const std::string& key, std::string_view raw) {
    std::string_view s = drop_plus(trim(raw));
    int v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        at.fail("key \"" + key + "\": \"" + std::string(s) + "\" is not an integer");
    }
    return v;
}

bool bool_value(const ParseCursor& at, const std::string& key, std::string_view raw) {
    std::string s(trim(raw));
    if (s == "true" || s == "on" || s == "yes" || s == "1") return true;
    if (s == "false" || s == "off" || s == "no" || s == "0") return false;
    at.fail("key \"" + key + "\": \"" + s + "\" is not a boolean (true/false)");
}

int branch_value(const ParseCursor& at, const std::string& key, std::string_view raw) {
    int b = int_value(at, key, raw);
    if (b != 1 && b != -1) {
        at.fail("key \"" + key + "\" must be +1 or -1");
    }
    return b;
}

// Comma-separated reals: "0, 0.0125, 0.025".
std::vector<double> real_list(const ParseCursor& at, const std::string& key, std::string_view raw) {
    std::vector<double> out;
    std::string item;
    std::istringstream ss{std::string(trim(raw))};
    while (std::getline(ss, item, ',')) {
        out.push_back(real_value(at, key, item));
    }
    if (out.empty()) at.fail("key \"" + key + "\" has an empty list value");
    return out;
}

// Comma-separated mode coefficients: "1:0.05, 3:-0.01".
std::vector<ModeCoeff> mode_list(const ParseCursor& at, const std::string& key, std::string_view raw) {
    std::vector<ModeCoeff> out;
    std::string item;
    std::istringstream ss{std::string(trim(raw))};
    while (std::getline(ss, item, ',')) {
        std::string_view sv = trim(item);
        auto colon = sv.find(':');
        if (colon == std::string_view::npos) {
            at.fail("key \"" + key + "\": entry \"" + std::string(sv) +
                    "\" is not of the form mode:value");
        }
        ModeCoeff mc;
        mc.m = int_value(at, key, sv.substr(0, colon));
        mc.value = real_value(at, key, sv.substr(colon + 1));
        if (mc.m < 1) at.fail("key \"" + key + "\": mode index must be >= 1");
        out.push_back(mc);
    }
    if (out.empty()) at.fail("key \"" + key + "\" has an empty list value");
    return out;
}

InitialShape shape_value(const ParseCursor& at, std::string_view raw) {
    std::string s(trim(raw));
    if (s == "flat") return InitialShape::flat;
    if (s == "linear-mode") return InitialShape::linear_mode;
    if (s == "custom") return InitialShape::custom;
    if (s == "snapshot") return InitialShape::snapshot;
    at.fail("key \"shape\": \"" + s +
            "\" is not one of flat, linear-mode, custom, snapshot");
}

void apply_physics(const ParseCursor& at, RunConfig& rc, const std::string& key, std::string_view value) {
    if (key == "L") rc.params.L = real_value(at, key, value);
    else if (key == "g") rc.params.g = real_value(at, key, value);
    else if (key == "omega") rc.params.omega = real_value(at, key, value);
    else if (key == "d_ref") rc.params.d_ref = real_value(at, key, value);
    else if (key == "p_atm") rc.params.p_atm = real_value(at, key, value);
    else at.fail("unknown key \"" + key + "\" in section [physics]");
}

void apply_numerics(const ParseCursor& at, RunConfig& rc, const std::string& key, std::string_view value) {
    if (key == "n") rc.params.n = int_value(at, key, value);
    else if (key == "dealias") rc.params.dealias = bool_value(at, key, value);
    else if (key == "dealias_fraction") rc.params.dealias_fraction = real_value(at, key, value);
    else if (key == "solver_tol") rc.params.solver_tol = real_value(at, key, value);
    else if (key == "volume_quad_order") rc.params.volume_quad_order = int_value(at, key, value);
    else if (key == "eta_floor") rc.params.eta_floor = real_value(at, key, value);
    else if (key == "normalize_gauge") rc.params.normalize_gauge = bool_value(at, key, value);
    else if (key == "fd_epsilon") rc.params.fd_epsilon = real_value(at, key, value);
    else at.fail("unknown key \"" + key + "\" in section [numerics]");
}

void apply_initial(const ParseCursor& at, RunConfig& rc, const std::string& key, std::string_view value) {
    if (key == "shape") rc.initial.shape = shape_value(at, value);
    else if (key == "m") rc.initial.m = int_value(at, key, value);
    else if (key == "a") rc.initial.a = real_value(at, key, value);
    else if (key == "branch") rc.initial.branch = branch_value(at, key, value);
    else if (key == "eta_cos") rc.initial.eta_cos = mode_list(at, key, value);
    else if (key == "eta_sin") rc.initial.eta_sin = mode_list(at, key, value);
    else if (key == "xi_cos") rc.initial.xi_cos = mode_list(at, key, value);
    else if (key == "xi_sin") rc.initial.xi_sin = mode_list(at, key, value);
    else if (key == "snapshot") {
        rc.initial.snapshot_path = std::filesystem::path(std::string(trim(value)));
        if (!std::filesystem::exists(rc.initial.snapshot_path)) {
            at.fail("key \"snapshot\": file does not exist: " + rc.initial.snapshot_path.string());
        }
    } else at.fail("unknown key \"" + key + "\" in section [initial]");
}

void apply_time(const ParseCursor& at, RunConfig& rc, const std::string& key, std::string_view value) {
    if (key == "t_end") rc.time.t_end = real_value(at, key, value);
    else if (key == "dt") rc.time.dt = real_value(at, key, value);
    else if (key == "output_stride") rc.time.output_stride = int_value(at, key, value);
    else if (key == "diag_stride") rc.time.diag_stride = int_value(at, key, value);
    else at.fail("unknown key \"" + key + "\" in section [time]");
}

void apply_steady(const ParseCursor& at, RunConfig& rc, const std::string& key, std::string_view value) {
    if (key == "branch") rc.steady.branch = branch_value(at, key, value);
    else if (key == "amplitudes") rc.steady.amplitudes = real_list(at, key, value);
    else if (key == "tol") rc.steady.tol = real_value(at, key, value);
    else if (key == "max_iter") rc.steady.max_iter = int_value(at, key, value);
    else at.fail("unknown key \"" + key + "\" in section [steady]");
}

void apply_output(const ParseCursor& at, RunConfig& rc, const std::string& key, std::string_view value) {
    if (key == "nx") rc.output.nx = int_value(at, key, value);
    else if (key == "ny") rc.output.ny = int_value(at, key, value);
    else if (key == "write_snapshots") rc.output.write_snapshots = bool_value(at, key, value);
    else at.fail("unknown key \"" + key + "\" in section [output]");
}

} // namespace

RunConfig parse_config(const std::string& text, const std::filesystem::path& origin) {
    RunConfig rc;
    ParseCursor at{origin, 0};
    std::string section;
    std::set<std::string> seen;

    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        ++at.line_no;
        std::string_view sv = trim(line);
        if (sv.empty() || sv.front() == '#' || sv.front() == ';') continue;

        if (sv.front() == '[') {
            if (sv.back() != ']') at.fail("malformed section header \"" + std::string(sv) + "\"");
            section = std::string(trim(sv.substr(1, sv.size() - 2)));
            if (section != "physics" && section != "numerics" && section != "initial" &&
                section != "time" && section != "steady" && section != "output") {
                at.fail("unknown section [" + section + "]");
            }
            continue;
        }

        auto eq = sv.find('=');
        if (eq == std::string_view::npos) {
            at.fail("expected key = value, got \"" + std::string(sv) + "\"");
        }
        std::string key(trim(sv.substr(0, eq)));
        std::string_view value = trim(sv.substr(eq + 1));
        if (key.empty()) at.fail("missing key before '='");
        if (value.empty()) at.fail("key \"" + key + "\" has an empty value");
        if (section.empty()) at.fail("key \"" + key + "\" appears before any [section]");
        if (!seen.insert(section + "." + key).second) {
            at.fail("duplicate key \"" + key + "\" in section [" + section + "]");
        }

        if (section == "physics") apply_physics(at, rc, key, value);
        else if (section == "numerics") apply_numerics(at, rc, key, value);
        else if (section == "initial") apply_initial(at, rc, key, value);
        else if (section == "time") apply_time(at, rc, key, value);
        else if (section == "steady") apply_steady(at, rc, key, value);
        else apply_output(at, rc, key, value);
    }

    check_all_fields(rc.params);
    // Keys belonging to another shape would be silently ignored; reject them.
    const bool has_lists = !rc.initial.eta_cos.empty() || !rc.initial.eta_sin.empty() ||
                           !rc.initial.xi_cos.empty() || !rc.initial.xi_sin.empty();
    if (has_lists && rc.initial.shape != InitialShape::custom) {
        throw ConfigError(origin.string() +
                          ": [initial] mode lists require shape = custom");
    }
    if (!rc.initial.snapshot_path.empty() && rc.initial.shape != InitialShape::snapshot) {
        throw ConfigError(origin.string() +
                          ": [initial] key \"snapshot\" requires shape = snapshot");
    }
    if (rc.initial.a != 0.0 && rc.initial.shape != InitialShape::linear_mode) {
        throw ConfigError(origin.string() +
                          ": [initial] key \"a\" requires shape = linear-mode");
    }
    if (rc.initial.shape == InitialShape::snapshot && rc.initial.snapshot_path.empty()) {
        throw ConfigError(origin.string() +
                          ": [initial] shape = snapshot requires key \"snapshot\"");
    }
    if (rc.time.t_end < 0.0) throw ConfigError(origin.string() + ": [time] t_end must be >= 0");
    if (rc.time.dt < 0.0) throw ConfigError(origin.string() + ": [time] dt must be >= 0");
    if (rc.time.output_stride < 0 || rc.time.diag_stride < 0) {
        throw ConfigError(origin.string() + ": [time] strides must be >= 0");
    }
    if (rc.steady.tol <= 0.0) throw ConfigError(origin.string() + ": [steady] tol must be > 0");
    if (rc.steady.max_iter < 1) throw ConfigError(origin.string() + ": [steady] max_iter must be >= 1");
    if (rc.output.nx < 0) throw ConfigError(origin.string() + ": [output] nx must be >= 0");
    if (rc.output.ny < 2) throw ConfigError(origin.string() + ": [output] ny must be >= 2");
    if (rc.initial.m < 1) throw ConfigError(origin.string() + ": [initial] m must be >= 1");
    return rc;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open config file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

namespace {

// Modes outside the retained band would be created and immediately zeroed by
// the dealias filter, so requesting them is a resolution error.
void place_modes(const PeriodicGrid& grid, const WaveParameters& params, Spectrum& spec,
                 const std::vector<ModeCoeff>& coeffs, bool sine, const char* list_name) {
    const int cutoff = params.dealias ? grid.dealias_cutoff(params.dealias_fraction)
                                      : grid.size() / 2;
    for (const ModeCoeff& mc : coeffs) {
        if (mc.m >= cutoff) {
            throw ConfigError(std::string("[initial] ") + list_name + ": mode " +
                              std::to_string(mc.m) + " is outside the resolved band (1 .. " +
                              std::to_string(cutoff - 1) + " at n = " +
                              std::to_string(grid.size()) + ")");
        }
        auto& target = sine ? spec.as : spec.ac;
        target[static_cast<std::size_t>(mc.m - 1)] += mc.value;
    }
}

} // namespace

SurfaceState build_initial_state(const RunConfig& config, const PeriodicGrid& grid) {
    const WaveParameters& p = config.params;
    const InitialSpec& ini = config.initial;
    const int n = grid.size();
    SurfaceState state;
    state.t = 0.0;

    switch (ini.shape) {
    case InitialShape::flat:
        state.eta.assign(static_cast<std::size_t>(n), p.d_ref);
        state.xi.assign(static_cast<std::size_t>(n), 0.0);
        return state;

    case InitialShape::linear_mode:
        return linear_mode_state(grid, p, ini.m, ini.a, ini.branch);

    case InitialShape::custom: {
        Spectrum se, sx;
        se.ac.assign(static_cast<std::size_t>(n / 2 - 1), 0.0);
        se.as = se.ac;
        sx.ac = se.ac;
        sx.as = se.ac;
        se.a0 = p.d_ref;
        place_modes(grid, p, se, ini.eta_cos, false, "eta_cos");
        place_modes(grid, p, se, ini.eta_sin, true, "eta_sin");
        place_modes(grid, p, sx, ini.xi_cos, false, "xi_cos");
        place_modes(grid, p, sx, ini.xi_sin, true, "xi_sin");
        state.eta = grid.from_spectrum(se);
        state.xi = grid.from_spectrum(sx);
        return state;
    }

    case InitialShape::snapshot: {
        Snapshot snap = read_snapshot(ini.snapshot_path);
        auto mismatch = [&](const char* what, double got, double want) {
            throw ConfigError("snapshot " + ini.snapshot_path.string() + ": " + what + " = " +
                              format_double(got) + " does not match the configured " +
                              format_double(want));
        };
        if (snap.n != p.n) {
            throw ConfigError("snapshot " + ini.snapshot_path.string() + ": n = " +
                              std::to_string(snap.n) + " does not match the configured " +
                              std::to_string(p.n));
        }
        const double rel = 1e-12;
        if (std::abs(snap.L - p.L) > rel * std::abs(p.L)) mismatch("L", snap.L, p.L);
        if (std::abs(snap.g - p.g) > rel * std::abs(p.g)) mismatch("g", snap.g, p.g);
        if (std::abs(snap.omega - p.omega) > rel * (1.0 + std::abs(p.omega))) {
            mismatch("omega", snap.omega, p.omega);
        }
        if (std::abs(snap.d_ref - p.d_ref) > rel * std::abs(p.d_ref)) {
            mismatch("d_ref", snap.d_ref, p.d_ref);
        }
        state.t = snap.t;
        state.eta = std::move(snap.eta);
        state.xi = std::move(snap.xi);
        return state;
    }
    }
    throw ConfigError("build_initial_state: unreachable shape");
}

} // namespace vorwave
