#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "vorwave/dynamics.hpp"
#include "vorwave/energy.hpp"
#include "vorwave/fields.hpp"
#include "vorwave/grid.hpp"
#include "vorwave/reconstruct.hpp"
#include "vorwave/steady.hpp"

using namespace vorwave;

namespace {
constexpr double pi = std::numbers::pi;

WaveParameters defaults(int n = 64) {
    WaveParameters p;
    p.n = n;
    return p;
}

SurfaceState flat_state(const PeriodicGrid& g, double d) {
    SurfaceState s;
    s.eta.assign(static_cast<std::size_t>(g.size()), d);
    s.xi.assign(static_cast<std::size_t>(g.size()), 0.0);
    return s;
}
} // namespace

TEST_CASE("pure shear velocities and hydrostatic pressure") {
    WaveParameters p = defaults();
    p.omega = 1.8;
    p.g = 1.3;
    p.p_atm = 0.4;
    PeriodicGrid g = make_grid(p);
    SurfaceState s = flat_state(g, p.d_ref);

    std::vector<std::array<double, 2>> pts = {
        {0.2, 0.0}, {1.5, 0.3}, {3.0, 0.7}, {5.5, p.d_ref}};
    auto vel = velocity_field(g, p, s, pts);
    for (const auto& q : vel) {
        CHECK(q.u == doctest::Approx(-p.omega * q.y).epsilon(1e-13));
        CHECK(std::abs(q.v) < 1e-13);
        CHECK(std::isnan(q.P));
    }

    auto pres = pressure_field(g, p, s, pts);
    for (const auto& q : pres) {
        CHECK(q.P == doctest::Approx(p.p_atm + p.g * (p.d_ref - q.y)).epsilon(1e-12));
        CHECK(q.phi_t == doctest::Approx(-p.g * p.d_ref).epsilon(1e-12));
    }
}

TEST_CASE("surface pressure equals the atmospheric constant") {
    WaveParameters p = defaults();
    p.omega = -1.2;
    p.p_atm = 1.0;
    PeriodicGrid g = make_grid(p);
    std::mt19937 rng(14);
    SurfaceState s = random_state(g, p, 0.04 * p.d_ref, 4, rng);

    std::vector<std::array<double, 2>> pts(64);
    for (int j = 0; j < 64; ++j) pts[j] = {g.nodes()[j], s.eta[j]};
    auto samples = pressure_field(g, p, s, pts);
    for (const auto& q : samples)
        CHECK(q.P == doctest::Approx(p.p_atm).epsilon(1e-8));
}

TEST_CASE("surface samples satisfy the kinematic condition") {
    WaveParameters p = defaults();
    p.omega = 0.7;
    PeriodicGrid g = make_grid(p);
    std::mt19937 rng(26);
    SurfaceState s = random_state(g, p, 0.04 * p.d_ref, 4, rng);

    p.dealias = false; // rates must match the raw traces here
    Rates r = rhs(g, p, s);
    std::vector<double> eta_x = g.derivative(s.eta);
    std::vector<std::array<double, 2>> pts(64);
    for (int j = 0; j < 64; ++j) pts[j] = {g.nodes()[j], s.eta[j]};
    auto samples = velocity_field(g, p, s, pts);
    for (int j = 0; j < 64; ++j)
        CHECK(samples[j].v ==
              doctest::Approx(r.eta_dot[j] + samples[j].u * eta_x[j]).epsilon(1e-9));
}

TEST_CASE("euler residuals vanish to finite-difference accuracy") {
    WaveParameters p = defaults();
    p.omega = -0.8;
    PeriodicGrid g = make_grid(p);
    SurfaceState s0 = linear_mode_state(g, p, 1, 0.02 * p.d_ref, +1);

    const double hs = 1e-4 * p.d_ref; // space step
    const double ht = 1e-4;           // time step
    const double dt_sim = ht;

    // states at t = 0 and t = +-ht for time derivatives
    SurfaceState splus = step_rk4(g, p, s0, dt_sim);
    SurfaceState sminus = step_rk4(g, p, s0, -dt_sim);

    std::vector<std::array<double, 2>> centers = {{0.9, 0.35}, {2.4, 0.6}, {4.8, 0.5}};
    for (const auto& cpt : centers) {
        const double x = cpt[0], y = cpt[1];
        std::vector<std::array<double, 2>> stencil = {
            {x, y},      {x + hs, y}, {x - hs, y},
            {x, y + hs}, {x, y - hs}};
        auto now = pressure_field(g, p, s0, stencil);
        auto fwd = velocity_field(g, p, splus, {{{x, y}}});
        auto bwd = velocity_field(g, p, sminus, {{{x, y}}});

        const double u = now[0].u, v = now[0].v;
        const double u_t = (fwd[0].u - bwd[0].u) / (2.0 * ht);
        const double v_t = (fwd[0].v - bwd[0].v) / (2.0 * ht);
        const double u_x = (now[1].u - now[2].u) / (2.0 * hs);
        const double v_x = (now[1].v - now[2].v) / (2.0 * hs);
        const double u_y = (now[3].u - now[4].u) / (2.0 * hs);
        const double v_y = (now[3].v - now[4].v) / (2.0 * hs);
        const double P_x = (now[1].P - now[2].P) / (2.0 * hs);
        const double P_y = (now[3].P - now[4].P) / (2.0 * hs);

        CHECK(std::abs(u_t + u * u_x + v * u_y + P_x) <= 1e-5);
        CHECK(std::abs(v_t + u * v_x + v * v_y + P_y + p.g) <= 1e-5);
    }
}

TEST_CASE("bed samples are impermeable and pressure is periodic") {
    WaveParameters p = defaults();
    p.omega = 1.1;
    PeriodicGrid g = make_grid(p);
    std::mt19937 rng(33);
    SurfaceState s = random_state(g, p, 0.05 * p.d_ref, 5, rng);

    std::vector<std::array<double, 2>> bed;
    for (int j = 0; j < 64; j += 4) bed.push_back({g.nodes()[j], 0.0});
    auto samples = velocity_field(g, p, s, bed);
    for (const auto& q : samples) CHECK(std::abs(q.v) < 1e-13);

    std::vector<std::array<double, 2>> pair = {{0.4, 0.5}, {0.4 + p.L, 0.5}};
    auto pp = pressure_field(g, p, s, pair);
    CHECK(pp[0].P == doctest::Approx(pp[1].P).epsilon(1e-10));
}

TEST_CASE("stream function on the surface matches the energy-module trace") {
    WaveParameters p = defaults();
    p.omega = -1.6;
    PeriodicGrid g = make_grid(p);
    std::mt19937 rng(48);
    SurfaceState s = random_state(g, p, 0.05 * p.d_ref, 5, rng);

    std::vector<double> chi = chi_of_state(g, p, s);
    std::vector<std::array<double, 2>> pts(64);
    for (int j = 0; j < 64; ++j) pts[j] = {g.nodes()[j], s.eta[j]};
    auto samples = velocity_field(g, p, s, pts);
    for (int j = 0; j < 64; ++j)
        CHECK(samples[j].psi == doctest::Approx(chi[j]).epsilon(1e-10));
}

TEST_CASE("net bed flow vanishes for every solved state") {
    WaveParameters p = defaults();
    PeriodicGrid g = make_grid(p);

    SurfaceState rest = flat_state(g, p.d_ref);
    CHECK(bed_flow_check(g, p, rest) == 0.0);

    p.omega = 0.9;
    std::mt19937 rng(6);
    SurfaceState s = random_state(g, p, 0.05 * p.d_ref, 5, rng);
    CHECK(std::abs(bed_flow_check(g, p, s)) <= 1e-12);

    const std::vector<double> schedule = {0.0, 0.02 * p.d_ref};
    ContinuationResult res = continuation_run(g, p, +1, schedule);
    REQUIRE(res.completed);
    SurfaceState tw;
    tw.eta = res.members.back().eta;
    tw.xi = res.members.back().xi;
    CHECK(std::abs(bed_flow_check(g, p, tw)) <= 1e-12);
}

TEST_CASE("the sample lattice stays inside the fluid") {
    WaveParameters p = defaults(32);
    PeriodicGrid g = make_grid(p);
    SurfaceState s = flat_state(g, p.d_ref);
    for (int j = 0; j < 32; ++j)
        s.eta[j] = p.d_ref * (1.0 + 0.1 * std::cos(g.nodes()[j]));

    auto pts = sample_lattice(g, s, 8, 5);
    CHECK(pts.size() == 40);
    Spectrum spec = g.to_spectrum(s.eta);
    for (const auto& q : pts) {
        CHECK(q[1] >= 0.0);
        CHECK(q[1] <= eval_spectrum(spec, p.L, q[0]) + 1e-12);
    }
    // lattice points evaluate without domain errors
    CHECK_NOTHROW((void)velocity_field(g, p, s, pts));

    CHECK_THROWS_AS((void)sample_lattice(g, s, 0, 5), ConfigError);
    CHECK_THROWS_AS((void)sample_lattice(g, s, 8, 1), ConfigError);
}
