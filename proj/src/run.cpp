#include "vorwave/run.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

#include "vorwave/checks.hpp"
#include "vorwave/dynamics.hpp"
#include "vorwave/reconstruct.hpp"
#include "vorwave/snapshot.hpp"
#include "vorwave/steady.hpp"

namespace vorwave {

namespace {

// A completed run whose energy drifted this much (relative) is reported as
// unstable: the step size was too large for the retained modes.
constexpr double kEnergyDriftLimit = 1e-3;

std::ofstream open_data_file(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

void finish_data_file(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
}

std::string snapshot_name(const char* stem, long index) {
    std::ostringstream name;
    name << stem << '_' << std::setw(6) << std::setfill('0') << index << ".txt";
    return name.str();
}

int run_simulate(const RunConfig& config, const CliOptions& opts, std::ostream& out,
                 std::ostream& err) {
    const WaveParameters& p = config.params;
    PeriodicGrid grid = make_grid(p);
    SurfaceState state0 = build_initial_state(config, grid);

    const double span = config.time.t_end - state0.t;
    if (!(span > 0.0)) {
        throw ConfigError("simulate: [time] t_end must exceed the initial time " +
                          format_double(state0.t));
    }
    double dt = config.time.dt;
    if (dt == 0.0) {
        dt = span / std::ceil(span / suggested_dt(grid, p));
    }
    const long steps = std::lround(span / dt);

    long output_stride = config.time.output_stride;
    if (output_stride == 0) output_stride = std::max(1L, steps / 10);
    long diag_stride = config.time.diag_stride;
    if (diag_stride == 0) diag_stride = output_stride;
    const long record = std::gcd(output_stride, diag_stride);

    out << "simulate: n=" << p.n << " steps=" << steps << " dt=" << format_double(dt) << "\n";
    Trajectory traj = integrate(grid, p, state0, config.time.t_end, dt, static_cast<int>(record));

    const auto diag_path = opts.out_dir / "diagnostics.csv";
    std::ofstream diag = open_data_file(diag_path);
    diag << "t,H_surface,mass,min_eta,max_eta,solve_residual\n";
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        const long step = std::lround((traj.snapshots[i].t - state0.t) / dt);
        const bool final_row = i + 1 == traj.snapshots.size();
        if (step % diag_stride == 0 || final_row) {
            const DiagRow& row = traj.diagnostics[i];
            diag << format_double(row.t) << ',' << format_double(row.H) << ','
                 << format_double(row.mass) << ',' << format_double(row.min_eta) << ','
                 << format_double(row.max_eta) << ',' << format_double(row.solve_residual)
                 << '\n';
        }
        if (config.output.write_snapshots && (step % output_stride == 0 || final_row)) {
            write_snapshot(opts.out_dir / snapshot_name("snapshot", step),
                           make_snapshot(p, traj.snapshots[i]));
        }
    }
    finish_data_file(diag, diag_path);

    if (traj.aborted) {
        err << "error: " << traj.abort_reason << "\n";
        // RK4 is stable to sigma_max * dt = 2*sqrt(2) and suggested_dt is
        // 0.5 / sigma_max, so steps beyond this multiple are linearly unstable.
        if (dt > 4.0 * std::numbers::sqrt2 * suggested_dt(grid, p)) {
            err << "instability detected: dt " << format_double(dt)
                << " is outside the linear stability range; guidance is "
                << format_double(suggested_dt(grid, p)) << "\n";
        }
        return exit_code_for(traj.abort_category);
    }

    const double h0 = traj.diagnostics.front().H;
    double drift = 0.0;
    for (const DiagRow& row : traj.diagnostics) {
        drift = std::max(drift, std::abs(row.H - h0) / std::max(1.0, std::abs(h0)));
    }
    if (!(drift <= kEnergyDriftLimit)) {
        err << "instability detected: relative energy drift " << format_double(drift)
            << " exceeds " << format_double(kEnergyDriftLimit)
            << "; reduce dt (guidance: " << format_double(suggested_dt(grid, p)) << ")\n";
        return 1;
    }
    out << "simulate: done, t=" << format_double(traj.snapshots.back().t)
        << " energy drift=" << format_double(drift) << "\n";
    return 0;
}

int run_steady(const RunConfig& config, const CliOptions& opts, std::ostream& out,
               std::ostream& err) {
    const WaveParameters& p = config.params;
    if (config.steady.amplitudes.empty()) {
        throw ConfigError("steady: [steady] amplitudes must list at least one target");
    }
    PeriodicGrid grid = make_grid(p);
    ContinuationResult family =
        continuation_run(grid, p, config.steady.branch, config.steady.amplitudes,
                         config.steady.tol, config.steady.max_iter);

    const auto family_path = opts.out_dir / "family.csv";
    std::ofstream csv = open_data_file(family_path);
    csv << "amplitude,c,k_flux,H_hat,residual_norm\n";
    for (std::size_t i = 0; i < family.members.size(); ++i) {
        const TravelingWaveSolution& sol = family.members[i];
        SurfaceState s{0.0, sol.eta, sol.xi};
        const double h_hat = steady_hamiltonian(grid, p, s, sol.c, sol.k_flux);
        csv << format_double(sol.amplitude) << ',' << format_double(sol.c) << ','
            << format_double(sol.k_flux) << ',' << format_double(h_hat) << ','
            << format_double(sol.residual_norm) << '\n';
        if (config.output.write_snapshots) {
            write_snapshot(opts.out_dir / snapshot_name("member", static_cast<long>(i)),
                           make_snapshot(p, s));
        }
    }
    finish_data_file(csv, family_path);

    out << "steady: " << family.members.size() << " of " << config.steady.amplitudes.size()
        << " members converged\n";
    if (!family.completed) {
        err << "error: " << family.failure << "\n";
        return exit_code_for(family.failure_category);
    }
    return 0;
}

int run_validate(const CliOptions& opts, std::ostream& out) {
    std::vector<CheckResult> results = run_checks(opts.quick, opts.seed);
    int failed = 0;
    for (const CheckResult& r : results) {
        if (!r.pass) ++failed;
        out << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": measured "
            << format_double(r.measured) << (r.lower_bound ? " (required >= " : " (bound <= ")
            << format_double(r.bound) << ")\n";
    }
    out << "validate: " << (results.size() - failed) << "/" << results.size()
        << " checks passed" << (opts.quick ? " (quick)" : "") << "\n";
    return failed == 0 ? 0 : 1;
}

int run_reconstruct(const RunConfig& config, const CliOptions& opts, std::ostream& out) {
    const WaveParameters& p = config.params;
    PeriodicGrid grid = make_grid(p);
    SurfaceState state = build_initial_state(config, grid);

    const int nx = config.output.nx > 0 ? config.output.nx : grid.size();
    const int ny = config.output.ny;
    std::vector<std::array<double, 2>> pts = sample_lattice(grid, state, nx, ny);
    std::vector<FieldSample> samples = pressure_field(grid, p, state, pts);

    const auto fields_path = opts.out_dir / "fields.csv";
    std::ofstream csv = open_data_file(fields_path);
    csv << "x,y,u,v,psi,P\n";
    for (const FieldSample& s : samples) {
        csv << format_double(s.x) << ',' << format_double(s.y) << ',' << format_double(s.u)
            << ',' << format_double(s.v) << ',' << format_double(s.psi) << ','
            << format_double(s.P) << '\n';
    }
    finish_data_file(csv, fields_path);
    out << "reconstruct: " << samples.size() << " samples on a " << nx << "x" << ny
        << " lattice\n";
    return 0;
}

} // namespace

int exit_code_for(ErrorCategory category) {
    switch (category) {
    case ErrorCategory::config: return 2;
    case ErrorCategory::solver: return 3;
    case ErrorCategory::non_convergence: return 4;
    case ErrorCategory::io: return 5;
    }
    return 3;
}

int run(const RunConfig& config, const CliOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        std::filesystem::create_directories(opts.out_dir);
        switch (config.mode) {
        case RunMode::simulate: return run_simulate(config, opts, out, err);
        case RunMode::steady: return run_steady(config, opts, out, err);
        case RunMode::validate: return run_validate(opts, out);
        case RunMode::reconstruct: return run_reconstruct(config, opts, out);
        }
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.category());
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(ErrorCategory::io);
    }
}

} // namespace vorwave
