#include "vorwave/grid.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <fftw3.h>

#include "vorwave/errors.hpp"

namespace vorwave {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

struct PeriodicGrid::Impl {
    int n = 0;
    double L = 0.0;
    std::vector<double> x;
    std::vector<double> k;
    std::vector<double> cos_tab;
    std::vector<double> sin_tab;
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;

    ~Impl() {
        if (r2c) fftw_destroy_plan(r2c);
        if (c2r) fftw_destroy_plan(c2r);
    }
};

PeriodicGrid::PeriodicGrid(int n, double L) {
    WaveParameters probe;
    probe.n = n;
    probe.L = L;
    check_grid_fields(probe);

    auto impl = std::make_shared<Impl>();
    impl->n = n;
    impl->L = L;
    impl->x.resize(n);
    for (int j = 0; j < n; ++j) impl->x[j] = L * j / n;
    impl->k.resize(n / 2 + 1);
    for (int m = 0; m <= n / 2; ++m) impl->k[m] = two_pi * m / L;
    impl->cos_tab.resize(n);
    impl->sin_tab.resize(n);
    for (int i = 0; i < n; ++i) {
        impl->cos_tab[i] = std::cos(two_pi * i / n);
        impl->sin_tab[i] = std::sin(two_pi * i / n);
    }

    // UNALIGNED lets the plans run on any caller buffer via the new-array
    // execute calls, which are the thread-safe part of FFTW.
    std::vector<double> re(n);
    std::vector<std::complex<double>> cp(n / 2 + 1);
    impl->r2c = fftw_plan_dft_r2c_1d(n, re.data(),
                                     reinterpret_cast<fftw_complex*>(cp.data()),
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
    impl->c2r = fftw_plan_dft_c2r_1d(n, reinterpret_cast<fftw_complex*>(cp.data()),
                                     re.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
    impl_ = std::move(impl);
}

int PeriodicGrid::size() const { return impl_->n; }
double PeriodicGrid::length() const { return impl_->L; }
double PeriodicGrid::spacing() const { return impl_->L / impl_->n; }
const std::vector<double>& PeriodicGrid::nodes() const { return impl_->x; }
const std::vector<double>& PeriodicGrid::wavenumbers() const { return impl_->k; }
const std::vector<double>& PeriodicGrid::cos_table() const { return impl_->cos_tab; }
const std::vector<double>& PeriodicGrid::sin_table() const { return impl_->sin_tab; }

void PeriodicGrid::require_size(std::span<const double> f, const char* what) const {
    if (static_cast<int>(f.size()) != impl_->n)
        throw ShapeError(std::string(what) + ": expected length " +
                         std::to_string(impl_->n) + ", got " + std::to_string(f.size()));
}

Spectrum PeriodicGrid::to_spectrum(std::span<const double> f) const {
    require_size(f, "to_spectrum");
    const int n = impl_->n;
    std::vector<double> in(f.begin(), f.end());
    std::vector<std::complex<double>> out(n / 2 + 1);
    fftw_execute_dft_r2c(impl_->r2c, in.data(),
                         reinterpret_cast<fftw_complex*>(out.data()));
    Spectrum s;
    s.a0 = out[0].real() / n;
    s.ac.resize(n / 2 - 1);
    s.as.resize(n / 2 - 1);
    for (int m = 1; m < n / 2; ++m) {
        s.ac[m - 1] = 2.0 * out[m].real() / n;
        s.as[m - 1] = -2.0 * out[m].imag() / n;
    }
    s.nyquist = out[n / 2].real() / n;
    return s;
}

std::vector<double> PeriodicGrid::from_spectrum(const Spectrum& s) const {
    const int n = impl_->n;
    if (s.half_modes() != n / 2 - 1)
        throw ShapeError("from_spectrum: spectrum size does not match grid");
    std::vector<std::complex<double>> in(n / 2 + 1);
    in[0] = {s.a0 * n, 0.0};
    for (int m = 1; m < n / 2; ++m)
        in[m] = {0.5 * n * s.ac[m - 1], -0.5 * n * s.as[m - 1]};
    in[n / 2] = {s.nyquist * n, 0.0};
    std::vector<double> out(n);
    fftw_execute_dft_c2r(impl_->c2r, reinterpret_cast<fftw_complex*>(in.data()),
                         out.data());
    for (double& v : out) v /= n;
    return out;
}

std::vector<double> PeriodicGrid::derivative(std::span<const double> f) const {
    require_size(f, "derivative");
    Spectrum s = to_spectrum(f);
    Spectrum d;
    d.a0 = 0.0;
    const int half = s.half_modes();
    d.ac.resize(half);
    d.as.resize(half);
    for (int m = 1; m <= half; ++m) {
        const double k = impl_->k[m];
        d.ac[m - 1] = k * s.as[m - 1];
        d.as[m - 1] = -k * s.ac[m - 1];
    }
    d.nyquist = 0.0; // keeps the derivative real and odd-symmetric
    return from_spectrum(d);
}

double PeriodicGrid::integrate(std::span<const double> f) const {
    require_size(f, "integrate");
    double sum = 0.0;
    for (double v : f) sum += v;
    return sum * spacing();
}

double PeriodicGrid::mean(std::span<const double> f) const {
    return integrate(f) / impl_->L;
}

int PeriodicGrid::dealias_cutoff(double fraction) const {
    int cutoff = static_cast<int>(std::floor(fraction * (impl_->n / 2.0)));
    return std::clamp(cutoff, 1, impl_->n / 2);
}

std::vector<double> PeriodicGrid::dealias(std::span<const double> f, double fraction) const {
    require_size(f, "dealias");
    const int cutoff = dealias_cutoff(fraction);
    if (cutoff > impl_->n / 2 - 1) {
        std::vector<double> out(f.begin(), f.end());
        return out;
    }
    Spectrum s = to_spectrum(f);
    for (int m = cutoff; m <= s.half_modes(); ++m) {
        s.ac[m - 1] = 0.0;
        s.as[m - 1] = 0.0;
    }
    s.nyquist = 0.0;
    return from_spectrum(s);
}

double PeriodicGrid::spectral_tail(std::span<const double> f, double fraction) const {
    Spectrum s = to_spectrum(f);
    const int cutoff = dealias_cutoff(fraction);
    double peak = std::abs(s.a0);
    double tail = 0.0;
    for (int m = 1; m <= s.half_modes(); ++m) {
        const double mag = std::hypot(s.ac[m - 1], s.as[m - 1]);
        peak = std::max(peak, mag);
        if (m >= cutoff) tail = std::max(tail, mag);
    }
    peak = std::max(peak, std::abs(s.nyquist));
    tail = std::max(tail, std::abs(s.nyquist));
    return tail / std::max(peak, 1e-300);
}

PeriodicGrid make_grid(const WaveParameters& params) {
    check_grid_fields(params);
    return PeriodicGrid(params.n, params.L);
}

double eval_spectrum(const Spectrum& s, double L, double x) {
    double v = s.a0;
    const int half = s.half_modes();
    for (int m = 1; m <= half; ++m) {
        const double k = two_pi * m / L;
        v += s.ac[m - 1] * std::cos(k * x) + s.as[m - 1] * std::sin(k * x);
    }
    const double k_nyq = two_pi * (half + 1) / L;
    v += s.nyquist * std::cos(k_nyq * x);
    return v;
}

Spectrum shift_spectrum(const Spectrum& s, double L, double shift) {
    Spectrum out = s;
    const int half = s.half_modes();
    for (int m = 1; m <= half; ++m) {
        const double ks = two_pi * m / L * shift;
        const double c = std::cos(ks), sn = std::sin(ks);
        out.ac[m - 1] = s.ac[m - 1] * c - s.as[m - 1] * sn;
        out.as[m - 1] = s.ac[m - 1] * sn + s.as[m - 1] * c;
    }
    const double ks = two_pi * (half + 1) / L * shift;
    out.nyquist = s.nyquist * std::cos(ks);
    return out;
}

} // namespace vorwave
