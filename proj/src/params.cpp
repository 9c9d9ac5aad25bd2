#include "vorwave/params.hpp"

#include <string>

#include "vorwave/errors.hpp"

namespace vorwave {

void check_grid_fields(const WaveParameters& p) {
    if (!(p.L > 0.0))
        throw ConfigError("L must be positive, got " + show_number(p.L));
    if (p.n < 8)
        throw ConfigError("N must be >= 8, got " + std::to_string(p.n));
    if (p.n % 2 != 0)
        throw ConfigError("N must be even, got " + std::to_string(p.n));
}

void check_all_fields(const WaveParameters& p) {
    check_grid_fields(p);
    if (!(p.g > 0.0))
        throw ConfigError("g must be positive, got " + show_number(p.g));
    if (!(p.d_ref > 0.0))
        throw ConfigError("d_ref must be positive, got " + show_number(p.d_ref));
    if (!(p.dealias_fraction > 0.0) || p.dealias_fraction > 1.0)
        throw ConfigError("dealias_fraction must lie in (0, 1]");
    if (!(p.solver_tol > 0.0))
        throw ConfigError("solver_tolerance must be positive");
    if (p.volume_quad_order < 2 || p.volume_quad_order > 128)
        throw ConfigError("volume_quad_order must lie in [2, 128]");
    if (!(p.eta_floor > 0.0) || p.eta_floor >= 1.0)
        throw ConfigError("eta_floor must lie in (0, 1)");
    if (!(p.fd_epsilon > 0.0))
        throw ConfigError("fd_epsilon must be positive");
}

} // namespace vorwave
