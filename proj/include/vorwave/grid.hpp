#ifndef VORWAVE_GRID_HPP
#define VORWAVE_GRID_HPP

#include <memory>
#include <span>
#include <vector>

#include "vorwave/params.hpp"

namespace vorwave {

// Real trigonometric coefficients of an N-point periodic function:
//   f(x) = a0 + sum_{m=1}^{N/2-1} [ac_m cos(k_m x) + as_m sin(k_m x)]
//        + nyquist * cos(k_{N/2} x),   k_m = 2*pi*m / L.
struct Spectrum {
    double a0 = 0.0;
    std::vector<double> ac; // m = 1 .. N/2-1
    std::vector<double> as; // m = 1 .. N/2-1
    double nyquist = 0.0;

    int half_modes() const { return static_cast<int>(ac.size()); } // N/2 - 1
};

// Uniform collocation grid on the period cell [0, L) together with the
// transform machinery. Immutable after construction; copies share the FFT
// plans, and all operations are pure, so a grid may be used concurrently
// from several threads once built.
class PeriodicGrid {
public:
    PeriodicGrid(int n, double L);

    int size() const;        // N
    double length() const;   // L
    double spacing() const;  // L / N

    const std::vector<double>& nodes() const;       // x_j = j L / N
    const std::vector<double>& wavenumbers() const; // k_m = 2 pi m / L, m = 0 .. N/2

    // Exact cos/sin(2 pi i / N) tables, used for aliasing-free evaluation of
    // trig factors at the nodes: cos(k_m x_j) = cos_table[(j*m) mod N].
    const std::vector<double>& cos_table() const;
    const std::vector<double>& sin_table() const;

    Spectrum to_spectrum(std::span<const double> f) const;
    std::vector<double> from_spectrum(const Spectrum& s) const;

    // Spectral derivative; exact for band-limited input, Nyquist mode zeroed.
    std::vector<double> derivative(std::span<const double> f) const;

    // Periodic trapezoid rule, h * sum f_j (spectrally accurate).
    double integrate(std::span<const double> f) const;
    double mean(std::span<const double> f) const;

    // First retained-mode index under the cutoff: modes m >= cutoff are zeroed
    // by dealias(). For fraction 2/3 this is the classical 2/3 rule.
    int dealias_cutoff(double fraction) const;
    std::vector<double> dealias(std::span<const double> f, double fraction) const;

    // max |coefficient| at modes >= cutoff, relative to the overall max
    // coefficient. Small values mean the function is resolved on this grid.
    double spectral_tail(std::span<const double> f, double fraction) const;

    void require_size(std::span<const double> f, const char* what) const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

PeriodicGrid make_grid(const WaveParameters& params);

// Evaluate the trig interpolant at an arbitrary point.
double eval_spectrum(const Spectrum& s, double L, double x);

// Coefficients of f(. - shift). The Nyquist mode is kept in its cosine part
// only, which is exact when the shift is a multiple of the node spacing.
Spectrum shift_spectrum(const Spectrum& s, double L, double shift);

// The canonical dynamical state: surface elevation and the surface trace of
// the generalized velocity potential, sampled at the grid nodes.
struct SurfaceState {
    double t = 0.0;
    std::vector<double> eta;
    std::vector<double> xi;
};

} // namespace vorwave

#endif
