#ifndef VORWAVE_FIELDS_HPP
#define VORWAVE_FIELDS_HPP

#include <random>
#include <vector>

#include "vorwave/grid.hpp"
#include "vorwave/params.hpp"

namespace vorwave {

// Uniform double in [0, 1) built from raw mt19937 words, so streams are
// identical across standard libraries (the std distributions are not).
double uniform01(std::mt19937& rng);

// Zero-mean field with random coefficients at modes 1..m_max, geometric
// decay 2^-m, scaled so max|f| = amplitude. m_max is clamped to the
// dealiased band.
std::vector<double> random_band_limited(const PeriodicGrid& grid, int m_max,
                                        double amplitude, std::mt19937& rng);

// Smooth random state: eta = d_ref + band-limited field of height
// `amplitude`, xi an independent band-limited field of the same scale.
SurfaceState random_state(const PeriodicGrid& grid, const WaveParameters& params,
                          double amplitude, int m_max, std::mt19937& rng);

} // namespace vorwave

#endif
