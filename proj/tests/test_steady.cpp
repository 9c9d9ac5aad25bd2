#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "vorwave/dynamics.hpp"
#include "vorwave/energy.hpp"
#include "vorwave/fields.hpp"
#include "vorwave/grid.hpp"
#include "vorwave/harmonic.hpp"
#include "vorwave/steady.hpp"

using namespace vorwave;

namespace {
constexpr double pi = std::numbers::pi;

WaveParameters defaults(int n = 64) {
    WaveParameters p;
    p.n = n;
    return p;
}

SurfaceState as_state(const TravelingWaveSolution& sol) {
    SurfaceState s;
    s.eta = sol.eta;
    s.xi = sol.xi;
    return s;
}

std::vector<double> rotate(const std::vector<double>& v, int s) {
    const int n = static_cast<int>(v.size());
    std::vector<double> out(v.size());
    for (int j = 0; j < n; ++j) out[j] = v[(j + s) % n];
    return out;
}

double max_abs(const std::vector<double>& v) {
    double worst = 0.0;
    for (double x : v) worst = std::max(worst, std::abs(x));
    return worst;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}
} // namespace

TEST_CASE("flat flux has the closed form") {
    WaveParameters p = defaults();
    p.omega = -0.8;
    p.d_ref = 1.1;
    PeriodicGrid g = make_grid(p);
    SurfaceState s;
    s.eta.assign(64, p.d_ref);
    s.xi.assign(64, 0.0);
    const double c = 1.3;
    FluxReport fr = mass_flux(g, p, s, c);
    const double expected = -0.5 * p.omega * p.d_ref * p.d_ref - c * p.d_ref;
    CHECK(fr.k_mean == doctest::Approx(expected).epsilon(1e-13));
    CHECK(fr.deviation < 1e-13);
}

TEST_CASE("non-steady states report a large flux deviation") {
    WaveParameters p = defaults();
    PeriodicGrid g = make_grid(p);
    std::mt19937 rng(8);
    SurfaceState s = random_state(g, p, 0.05 * p.d_ref, 4, rng);
    FluxReport fr = mass_flux(g, p, s, 1.0);
    CHECK(fr.deviation > 1e-3);
}

TEST_CASE("frame-shifted energy closed forms") {
    WaveParameters p = defaults();
    p.omega = 0.9;
    p.g = 1.4;
    PeriodicGrid g = make_grid(p);
    const double d = p.d_ref, L = p.L, c = 1.7, k = -0.9;
    SurfaceState s;
    s.eta.assign(64, d);
    s.xi.assign(64, 0.0);
    const double expected = L * (p.g * d * d / 2.0 + p.omega * p.omega * d * d * d / 6.0) +
                            p.omega * k * d * L + 0.5 * c * p.omega * d * d * L;
    CHECK(steady_hamiltonian(g, p, s, c, k) == doctest::Approx(expected).epsilon(1e-13));

    p.omega = 0.0;
    std::mt19937 rng(5);
    SurfaceState r = random_state(g, p, 0.05 * p.d_ref, 4, rng);
    CHECK(steady_hamiltonian(g, p, r, c, k) == energy_surface(g, p, r));
}

TEST_CASE("flat residual is the pure gauge constant") {
    WaveParameters p = defaults();
    p.omega = 1.2;
    p.g = 1.9;
    PeriodicGrid g = make_grid(p);
    std::vector<double> eta(64, p.d_ref), xi(64, 0.0);
    for (double c : {0.7, -1.4}) {
        Residuals r = traveling_residual(g, p, eta, xi, c);
        CHECK(max_abs(r.R_eta) < 1e-13);
        for (double v : r.R_xi)
            CHECK(v == doctest::Approx(-p.g * p.d_ref).epsilon(1e-13));
    }
}

TEST_CASE("residual commutes with grid translations") {
    WaveParameters p = defaults();
    p.omega = -1.5;
    PeriodicGrid g = make_grid(p);
    std::mt19937 rng(44);
    SurfaceState s = random_state(g, p, 0.05 * p.d_ref, 5, rng);
    const double c = 0.8;
    Residuals base = traveling_residual(g, p, s.eta, s.xi, c);
    const int shift = 5;
    std::vector<double> eta_s = rotate(s.eta, shift);
    std::vector<double> xi_s = rotate(s.xi, shift);
    Residuals moved = traveling_residual(g, p, eta_s, xi_s, c);
    CHECK(max_abs_diff(moved.R_eta, rotate(base.R_eta, shift)) < 1e-12);
    CHECK(max_abs_diff(moved.R_xi, rotate(base.R_xi, shift)) < 1e-12);
}

TEST_CASE("zero amplitude returns the flat wave on the requested branch") {
    WaveParameters p = defaults(32);
    p.omega = 1.0;
    PeriodicGrid g = make_grid(p);
    GuessState guess;
    guess.eta.assign(32, p.d_ref);
    guess.xi.assign(32, 0.0);

    for (int branch : {+1, -1}) {
        const LinearMode mode = linear_dispersion(p, 1, branch);
        guess.c = mode.c + 0.02; // close enough to select the root
        TravelingWaveSolution sol = traveling_solve(g, p, guess, 0.0);
        CHECK(sol.c == doctest::Approx(mode.c).epsilon(1e-12));
        CHECK(sol.amplitude == 0.0);
        CHECK(sol.k_flux ==
              doctest::Approx(-0.5 * p.omega * p.d_ref * p.d_ref - sol.c * p.d_ref)
                  .epsilon(1e-12));
        CHECK(sol.gauge_rate == doctest::Approx(p.g * p.d_ref).epsilon(1e-12));
        CHECK(sol.residual_norm <= 1e-11);
    }
}

TEST_CASE("speed correction grows quadratically in amplitude") {
    WaveParameters p = defaults(32);
    p.omega = 0.0;
    PeriodicGrid g = make_grid(p);
    const std::vector<double> schedule = {0.0, 0.01 * p.d_ref, 0.02 * p.d_ref,
                                          0.04 * p.d_ref};
    ContinuationResult res = continuation_run(g, p, +1, schedule);
    REQUIRE(res.completed);
    REQUIRE(res.members.size() == 4);
    const double c0 = res.members[0].c;
    const double d1 = res.members[1].c - c0;
    const double d3 = res.members[3].c - c0;
    const double slope = std::log(d3 / d1) / std::log(4.0);
    CHECK(slope == doctest::Approx(2.0).epsilon(0.1)); // 2 +- 0.2

    CHECK(c0 == doctest::Approx(std::sqrt(p.g / 1.0 * std::tanh(p.d_ref))).epsilon(1e-9));
    for (const auto& m : res.members) CHECK(m.k_flux < 0.0);
}

TEST_CASE("converged waves satisfy the flux identities and both residual forms") {
    WaveParameters p = defaults();
    p.omega = -1.0;
    PeriodicGrid g = make_grid(p);
    const std::vector<double> schedule = {0.0, 0.0125 * p.d_ref, 0.025 * p.d_ref,
                                          0.0375 * p.d_ref, 0.05 * p.d_ref};
    ContinuationResult res = continuation_run(g, p, +1, schedule);
    REQUIRE(res.completed);
    const TravelingWaveSolution& sol = res.members.back();
    CHECK(sol.residual_norm <= 1e-10);
    CHECK(sol.amplitude == doctest::Approx(0.05 * p.d_ref).epsilon(1e-12));

    SurfaceState s = as_state(sol);

    // chi - c eta is constant with value k_flux
    FluxReport fr = mass_flux(g, p, s, sol.c);
    CHECK(fr.deviation <= 1e-8);
    CHECK(fr.k_mean == doctest::Approx(sol.k_flux).epsilon(1e-10));

    // T(eta)xi - c eta - omega/2 eta^2 equals the same constant
    std::vector<double> t = hilbert_transform(g, p, s.eta, s.xi);
    for (int j = 0; j < 64; ++j) {
        const double v =
            t[j] - sol.c * s.eta[j] - 0.5 * p.omega * s.eta[j] * s.eta[j];
        CHECK(std::abs(v - sol.k_flux) <= 1e-8);
    }

    // residual computed from the frame-shifted functional, gauge rate restored
    SurfaceTraces tr = surface_traces(solve_dirichlet(g, p, s.eta, s.xi), g, p, s.eta);
    std::vector<double> ge = grad_eta(g, p, s, tr);
    std::vector<double> gx = grad_xi(g, p, s, tr);
    std::vector<double> eta_x = g.derivative(s.eta);
    std::vector<double> xi_x = g.derivative(s.xi);
    Residuals direct = traveling_residual(g, p, s.eta, s.xi, sol.c);
    for (int j = 0; j < 64; ++j) {
        const double r_eta = sol.c * eta_x[j] + gx[j];
        CHECK(std::abs(r_eta) <= 1e-8);
        const double grad_shifted =
            ge[j] + p.omega * sol.k_flux + sol.c * p.omega * s.eta[j];
        const double r_xi = sol.c * xi_x[j] - grad_shifted + sol.gauge_rate;
        CHECK(std::abs(r_xi) <= 1e-8);
        // the two forms differ by omega*(chi - c eta - k_flux), i.e. round-off here
        const double form_gap = (sol.c * xi_x[j] - grad_shifted) - direct.R_xi[j];
        CHECK(std::abs(form_gap) <= 1e-10);
    }

    // even profile about the crest
    Spectrum se = g.to_spectrum(s.eta);
    for (double v : se.as) CHECK(std::abs(v) <= 1e-9);
}

TEST_CASE("family members re-simulate as rigid translations") {
    WaveParameters p = defaults(32);
    p.omega = 1.0;
    PeriodicGrid g = make_grid(p);
    const std::vector<double> schedule = {0.0, 0.01 * p.d_ref, 0.02 * p.d_ref,
                                          0.03 * p.d_ref};
    ContinuationResult res = continuation_run(g, p, +1, schedule);
    REQUIRE(res.completed);
    const TravelingWaveSolution& sol = res.members.back();

    SurfaceState s0 = as_state(sol);
    const double period = p.L / sol.c;
    const int steps = static_cast<int>(std::ceil(period / suggested_dt(g, p)));
    Trajectory traj = integrate(g, p, s0, period, period / steps, steps);
    REQUIRE(!traj.aborted);
    const SurfaceState& s1 = traj.snapshots.back();
    CHECK(max_abs_diff(s1.eta, s0.eta) <= 1e-6);
    CHECK(max_abs_diff(s1.xi, s0.xi) <= 1e-6);

    // halfway through, the profile is the initial one shifted by c*t
    Trajectory half = integrate(g, p, s0, period / 2.0, period / steps / 2.0, steps);
    REQUIRE(!half.aborted);
    const SurfaceState& sm = half.snapshots.back();
    Spectrum spec0 = g.to_spectrum(s0.eta);
    for (int j = 0; j < 32; ++j) {
        const double expected =
            eval_spectrum(spec0, p.L, g.nodes()[j] - sol.c * period / 2.0);
        CHECK(sm.eta[j] == doctest::Approx(expected).epsilon(1e-6));
    }
}

TEST_CASE("strong adverse shear folds the fast branch at small amplitude") {
    // dc/da blows up near a = 0.03 d and the amplitude-pinned solve stalls;
    // the family is returned up to the fold
    WaveParameters p = defaults();
    p.omega = -2.0;
    PeriodicGrid g = make_grid(p);
    const std::vector<double> schedule = {0.0, 0.015 * p.d_ref, 0.03 * p.d_ref};
    ContinuationResult res = continuation_run(g, p, +1, schedule, 1e-11, 12);
    CHECK(!res.completed);
    CHECK(res.members.size() == 2);
    CHECK(res.members.back().residual_norm <= 1e-10);
}

TEST_CASE("continuation reports partial families on failure") {
    WaveParameters p = defaults(32);
    p.omega = 0.0;
    PeriodicGrid g = make_grid(p);
    const std::vector<double> schedule = {0.0, 0.45 * p.d_ref}; // absurd jump
    ContinuationResult res = continuation_run(g, p, +1, schedule, 1e-11, 6);
    CHECK(!res.completed);
    CHECK(!res.failure.empty());
    CHECK(res.members.size() == 1);
}

TEST_CASE("amplitude schedules are validated") {
    WaveParameters p = defaults(32);
    PeriodicGrid g = make_grid(p);
    const std::vector<double> repeated = {0.0, 0.01, 0.01};
    CHECK_THROWS_AS((void)continuation_run(g, p, +1, repeated), ConfigError);
    const std::vector<double> negative = {-0.01};
    CHECK_THROWS_AS((void)continuation_run(g, p, +1, negative), ConfigError);
}
