#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "vorwave/errors.hpp"
#include "vorwave/fields.hpp"
#include "vorwave/grid.hpp"

using namespace vorwave;

namespace {
constexpr double pi = std::numbers::pi;

WaveParameters base_params(int n, double L) {
    WaveParameters p;
    p.n = n;
    p.L = L;
    return p;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}
} // namespace

TEST_CASE("grid nodes and wavenumbers") {
    PeriodicGrid g = make_grid(base_params(8, 2.0 * pi));
    REQUIRE(g.size() == 8);
    CHECK(g.nodes()[0] == 0.0);
    for (int j = 0; j < 8; ++j)
        CHECK(g.nodes()[j] == doctest::Approx(j * pi / 4.0).epsilon(1e-15));
    REQUIRE(g.wavenumbers().size() == 5);
    for (int m = 0; m <= 4; ++m)
        CHECK(g.wavenumbers()[m] == doctest::Approx(double(m)).epsilon(1e-15));

    PeriodicGrid g10 = make_grid(base_params(16, 10.0));
    CHECK(g10.wavenumbers()[1] == doctest::Approx(2.0 * pi / 10.0).epsilon(1e-15));
}

TEST_CASE("odd N rejected") {
    CHECK_THROWS_AS(make_grid(base_params(7, 2.0 * pi)), ConfigError);
    CHECK_THROWS_AS(make_grid(base_params(6, 2.0 * pi)), ConfigError); // below minimum
    CHECK_THROWS_AS(make_grid(base_params(64, -1.0)), ConfigError);
}

TEST_CASE("derivative of pure modes") {
    PeriodicGrid g(64, 2.0 * pi);
    const auto& x = g.nodes();
    std::vector<double> f(64), want(64);

    for (int j = 0; j < 64; ++j) {
        f[j] = std::cos(x[j]);
        want[j] = -std::sin(x[j]);
    }
    CHECK(max_abs_diff(g.derivative(f), want) < 1e-12);

    for (int j = 0; j < 64; ++j) {
        f[j] = 3.7;
        want[j] = 0.0;
    }
    CHECK(max_abs_diff(g.derivative(f), want) < 1e-13);

    // cos^2 = (1 + cos 2x)/2, derivative -sin 2x
    for (int j = 0; j < 64; ++j) {
        const double c = std::cos(x[j]);
        f[j] = c * c;
        want[j] = -std::sin(2.0 * x[j]);
    }
    CHECK(max_abs_diff(g.derivative(f), want) < 1e-12);
}

TEST_CASE("derivative with period 10") {
    PeriodicGrid g(32, 10.0);
    const double k1 = 2.0 * pi / 10.0;
    const auto& x = g.nodes();
    std::vector<double> f(32), want(32);
    for (int j = 0; j < 32; ++j) {
        f[j] = std::cos(k1 * x[j]);
        want[j] = -k1 * std::sin(k1 * x[j]);
    }
    CHECK(max_abs_diff(g.derivative(f), want) < 1e-12);
}

TEST_CASE("derivative is linear and resolved products obey the product rule") {
    PeriodicGrid g(64, 2.0 * pi);
    std::mt19937 rng(7);
    std::vector<double> a = random_band_limited(g, 6, 1.0, rng);
    std::vector<double> b = random_band_limited(g, 6, 1.0, rng);

    std::vector<double> sum(64), lhs(64);
    for (int j = 0; j < 64; ++j) sum[j] = 2.0 * a[j] - 3.0 * b[j];
    auto da = g.derivative(a);
    auto db = g.derivative(b);
    auto dsum = g.derivative(sum);
    for (int j = 0; j < 64; ++j) lhs[j] = 2.0 * da[j] - 3.0 * db[j];
    CHECK(max_abs_diff(dsum, lhs) < 1e-12);

    // product stays band-limited (6 + 6 < 32), so the product rule holds
    std::vector<double> prod(64), rule(64);
    for (int j = 0; j < 64; ++j) prod[j] = a[j] * b[j];
    auto dprod = g.derivative(prod);
    for (int j = 0; j < 64; ++j) rule[j] = da[j] * b[j] + a[j] * db[j];
    CHECK(max_abs_diff(dprod, rule) < 1e-11);
}

TEST_CASE("integral of a derivative vanishes") {
    PeriodicGrid g(64, 2.0 * pi);
    std::mt19937 rng(11);
    std::vector<double> f = random_band_limited(g, 10, 2.0, rng);
    CHECK(std::abs(g.integrate(g.derivative(f))) < 1e-13);
}

TEST_CASE("spectrum round trip") {
    PeriodicGrid g(32, 5.0);
    std::mt19937 rng(3);
    std::vector<double> f(32);
    for (auto& v : f) v = 2.0 * uniform01(rng) - 1.0;
    Spectrum s = g.to_spectrum(f);
    CHECK(max_abs_diff(g.from_spectrum(s), f) < 1e-13);

    // interpolant reproduces nodal values
    for (int j = 0; j < 32; ++j)
        CHECK(eval_spectrum(s, 5.0, g.nodes()[j]) == doctest::Approx(f[j]).epsilon(1e-11));
}

TEST_CASE("shift_spectrum rotates modes") {
    PeriodicGrid g(64, 2.0 * pi);
    std::mt19937 rng(5);
    std::vector<double> f = random_band_limited(g, 8, 1.0, rng);
    Spectrum s = g.to_spectrum(f);
    const double shift = 0.7312;
    Spectrum moved = shift_spectrum(s, g.length(), shift);
    for (int j = 0; j < 64; j += 5) {
        const double x = g.nodes()[j];
        CHECK(eval_spectrum(moved, g.length(), x) ==
              doctest::Approx(eval_spectrum(s, g.length(), x - shift)).epsilon(1e-11));
    }
}

TEST_CASE("dealias zeroes the tail") {
    PeriodicGrid g(32, 2.0 * pi);
    const int cutoff = g.dealias_cutoff(2.0 / 3.0);
    CHECK(cutoff == 10); // floor(2/3 * 16)
    std::vector<double> f(32);
    for (int j = 0; j < 32; ++j)
        f[j] = std::cos(3.0 * g.nodes()[j]) + 0.5 * std::cos(14.0 * g.nodes()[j]);
    Spectrum s = g.to_spectrum(g.dealias(f, 2.0 / 3.0));
    CHECK(std::abs(s.ac[2] - 1.0) < 1e-13);  // mode 3 kept
    CHECK(std::abs(s.ac[13]) < 1e-14);       // mode 14 removed
    CHECK(g.spectral_tail(f, 2.0 / 3.0) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("shape errors carry the offending length") {
    PeriodicGrid g(16, 2.0 * pi);
    std::vector<double> bad(15, 0.0);
    CHECK_THROWS_AS((void)g.derivative(bad), ShapeError);
    CHECK_THROWS_AS((void)g.to_spectrum(bad), ShapeError);
}
