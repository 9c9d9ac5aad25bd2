#include "vorwave/fields.hpp"

#include <algorithm>
#include <cmath>

#include "vorwave/errors.hpp"

namespace vorwave {

double uniform01(std::mt19937& rng) {
    const std::uint64_t hi = rng() >> 5; // 27 bits
    const std::uint64_t lo = rng() >> 6; // 26 bits
    return (static_cast<double>(hi) * 67108864.0 + static_cast<double>(lo)) /
           9007199254740992.0; // 2^53
}

std::vector<double> random_band_limited(const PeriodicGrid& grid, int m_max,
                                        double amplitude, std::mt19937& rng) {
    if (m_max < 1) throw ConfigError("random_band_limited: m_max must be >= 1");
    m_max = std::min(m_max, grid.dealias_cutoff(2.0 / 3.0) - 1);

    Spectrum s;
    s.a0 = 0.0;
    s.ac.assign(grid.size() / 2 - 1, 0.0);
    s.as.assign(grid.size() / 2 - 1, 0.0);
    s.nyquist = 0.0;
    double decay = 1.0;
    for (int m = 1; m <= m_max; ++m) {
        decay *= 0.5;
        s.ac[m - 1] = decay * (2.0 * uniform01(rng) - 1.0);
        s.as[m - 1] = decay * (2.0 * uniform01(rng) - 1.0);
    }
    std::vector<double> f = grid.from_spectrum(s);
    double peak = 0.0;
    for (double v : f) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return f;
    const double scale = amplitude / peak;
    for (double& v : f) v *= scale;
    return f;
}

SurfaceState random_state(const PeriodicGrid& grid, const WaveParameters& params,
                          double amplitude, int m_max, std::mt19937& rng) {
    SurfaceState s;
    s.t = 0.0;
    s.eta = random_band_limited(grid, m_max, amplitude, rng);
    for (double& e : s.eta) e += params.d_ref;
    s.xi = random_band_limited(grid, m_max, amplitude, rng);
    return s;
}

} // namespace vorwave
