#ifndef VORWAVE_SNAPSHOT_HPP
#define VORWAVE_SNAPSHOT_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "vorwave/grid.hpp"
#include "vorwave/params.hpp"

namespace vorwave {

// Text snapshot of one surface state. The header pins the physics the arrays
// were produced with so restarts cannot silently change the problem.
struct Snapshot {
    double L = 0.0;
    int n = 0;
    double g = 0.0;
    double omega = 0.0;
    double d_ref = 0.0;
    double t = 0.0;
    std::vector<double> eta;
    std::vector<double> xi;
};

Snapshot make_snapshot(const WaveParameters& params, const SurfaceState& state);

// Format "vorwave-snapshot 1", LF endings, one value per line, 17 significant
// digits. Round-trips doubles exactly.
void write_snapshot(const std::filesystem::path& path, const Snapshot& snap);
Snapshot read_snapshot(const std::filesystem::path& path);

// 17 significant digits, enough to reparse to the identical double.
std::string format_double(double value);
double parse_double(std::string_view text, const std::string& what);

} // namespace vorwave

#endif
