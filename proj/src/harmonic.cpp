#include "vorwave/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "vorwave/errors.hpp"

namespace vorwave {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Column order of the collocation matrix: constant, cosine m, sine m, Nyquist.
// The Nyquist cosine completes the real mode set so the system is square.
struct ColumnMap {
    int n;
    int half; // N/2 - 1
    int cols() const { return n; }
    int col_a0() const { return 0; }
    int col_ac(int m) const { return m; }                // m = 1 .. half
    int col_as(int m) const { return half + m; }         // m = 1 .. half
    int col_nyq() const { return n - 1; }
};

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

} // namespace

double cosh_ratio(double k, double y, double d) {
    if (k == 0.0) return 1.0;
    // cosh(ky)/cosh(kd) = e^{k(y-d)} (1 + e^{-2ky}) / (1 + e^{-2kd})
    return std::exp(k * (y - d)) * (1.0 + std::exp(-2.0 * k * y)) /
           (1.0 + std::exp(-2.0 * k * d));
}

double sinh_ratio(double k, double y, double d) {
    if (k == 0.0) return 0.0;
    return std::exp(k * (y - d)) * (1.0 - std::exp(-2.0 * k * y)) /
           (1.0 + std::exp(-2.0 * k * d));
}

HarmonicField solve_dirichlet(const PeriodicGrid& grid, const WaveParameters& params,
                              std::span<const double> eta, std::span<const double> xi) {
    grid.require_size(eta, "solve_dirichlet eta");
    grid.require_size(xi, "solve_dirichlet xi");
    const int n = grid.size();
    for (int j = 0; j < n; ++j)
        if (!(eta[j] > 0.0))
            throw DomainError("solve_dirichlet: surface touches the bed at node " +
                              std::to_string(j));

    const auto& k = grid.wavenumbers();
    const auto& ct = grid.cos_table();
    const auto& st = grid.sin_table();
    const double d = params.d_ref;
    const ColumnMap map{n, n / 2 - 1};

    Eigen::MatrixXd A(n, n);
    for (int j = 0; j < n; ++j) {
        A(j, map.col_a0()) = 1.0;
        for (int m = 1; m <= map.half; ++m) {
            const double r = cosh_ratio(k[m], eta[j], d);
            const int idx = (j * m) % n;
            A(j, map.col_ac(m)) = ct[idx] * r;
            A(j, map.col_as(m)) = st[idx] * r;
        }
        const double rn = cosh_ratio(k[n / 2], eta[j], d);
        A(j, map.col_nyq()) = ct[(j * (n / 2)) % n] * rn;
    }

    Eigen::VectorXd b(n);
    for (int j = 0; j < n; ++j) b(j) = xi[j];

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    const double rc = lu.rcond();
    if (!(rc > 1e-14))
        throw SolverError("solve_dirichlet: collocation matrix numerically singular "
                          "(rcond " + show_number(rc) + ")", rc);

    Eigen::VectorXd coef = lu.solve(b);
    const double denom = std::max(max_abs(xi), 1e-300);
    double rel = 0.0;
    for (int pass = 0; pass < 3; ++pass) {
        Eigen::VectorXd r = b - A * coef;
        rel = r.lpNorm<Eigen::Infinity>() / denom;
        if (rel <= params.solver_tol || pass == 2) break;
        coef += lu.solve(r); // one step of iterative refinement, repeated at most twice
    }
    if (!(rel <= params.solver_tol))
        throw ConvergenceError("solve_dirichlet: Dirichlet residual " +
                               show_number(rel) + " above tolerance", rel);

    HarmonicField field;
    field.a0 = coef(map.col_a0());
    field.ac.resize(map.half);
    field.as.resize(map.half);
    for (int m = 1; m <= map.half; ++m) {
        field.ac[m - 1] = coef(map.col_ac(m));
        field.as[m - 1] = coef(map.col_as(m));
    }
    field.nyquist = coef(map.col_nyq());
    field.L = grid.length();
    field.d_ref = d;
    field.solve_residual = rel;
    field.eta_spec = grid.to_spectrum(eta);
    return field;
}

SurfaceTraces surface_traces(const HarmonicField& field, const PeriodicGrid& grid,
                             const WaveParameters& params, std::span<const double> eta) {
    grid.require_size(eta, "surface_traces eta");
    const int n = grid.size();
    if (field.half_modes() != n / 2 - 1)
        throw ShapeError("surface_traces: field truncation does not match grid");

    const auto& k = grid.wavenumbers();
    const auto& ct = grid.cos_table();
    const auto& st = grid.sin_table();
    const double d = field.d_ref;

    SurfaceTraces tr;
    tr.xi1.assign(n, 0.0);
    tr.xi2.assign(n, 0.0);
    tr.t_xi.assign(n, 0.0);
    tr.chi.assign(n, 0.0);
    tr.solve_residual = field.solve_residual;

    for (int j = 0; j < n; ++j) {
        double phix = 0.0, phiy = 0.0, conj = 0.0;
        for (int m = 1; m <= field.half_modes(); ++m) {
            const int idx = (j * m) % n;
            const double c = ct[idx], s = st[idx];
            const double cr = cosh_ratio(k[m], eta[j], d);
            const double sr = sinh_ratio(k[m], eta[j], d);
            const double amc = field.ac[m - 1], ams = field.as[m - 1];
            phix += k[m] * (-amc * s + ams * c) * cr;
            phiy += k[m] * (amc * c + ams * s) * sr;
            conj += (-amc * s + ams * c) * sr;
        }
        {
            const int m = n / 2;
            const int idx = (j * m) % n;
            const double c = ct[idx], s = st[idx];
            const double cr = cosh_ratio(k[m], eta[j], d);
            const double sr = sinh_ratio(k[m], eta[j], d);
            phix += k[m] * (-field.nyquist * s) * cr;
            phiy += k[m] * (field.nyquist * c) * sr;
            conj += (-field.nyquist * s) * sr;
        }
        tr.xi1[j] = phix;
        tr.xi2[j] = phiy;
        tr.t_xi[j] = conj;
        tr.chi[j] = conj - 0.5 * params.omega * eta[j] * eta[j];
    }
    return tr;
}

std::vector<double> hilbert_transform(const PeriodicGrid& grid, const WaveParameters& params,
                                      std::span<const double> eta, std::span<const double> xi) {
    HarmonicField field = solve_dirichlet(grid, params, eta, xi);
    return surface_traces(field, grid, params, eta).t_xi;
}

std::vector<InteriorSample> evaluate_interior(const HarmonicField& field,
                                              const WaveParameters& params,
                                              std::span<const std::array<double, 2>> points) {
    const double L = field.L;
    const double d = field.d_ref;
    const double slack = 1e-12 * d;
    std::vector<InteriorSample> out;
    out.reserve(points.size());
    for (const auto& p : points) {
        const double x = p[0], y = p[1];
        const double surface = eval_spectrum(field.eta_spec, L, x);
        if (y < -slack || y > surface + slack)
            throw DomainError("evaluate_interior: point (" + show_number(x) + ", " +
                              show_number(y) + ") outside the fluid (surface " +
                              show_number(surface) + ")");
        double phi = field.a0, phix = 0.0, phiy = 0.0, conj = 0.0;
        const int half = field.half_modes();
        for (int m = 1; m <= half + 1; ++m) {
            const double km = two_pi * m / L;
            const double amc = (m <= half) ? field.ac[m - 1] : field.nyquist;
            const double ams = (m <= half) ? field.as[m - 1] : 0.0;
            const double c = std::cos(km * x), s = std::sin(km * x);
            const double cr = cosh_ratio(km, y, d);
            const double sr = sinh_ratio(km, y, d);
            phi += (amc * c + ams * s) * cr;
            phix += km * (-amc * s + ams * c) * cr;
            phiy += km * (amc * c + ams * s) * sr;
            conj += (-amc * s + ams * c) * sr;
        }
        InteriorSample smp;
        smp.x = x;
        smp.y = y;
        smp.phi = phi;
        smp.u = phix - params.omega * y;
        smp.v = phiy;
        smp.psi = conj - 0.5 * params.omega * y * y;
        out.push_back(smp);
    }
    return out;
}

namespace {

// Fourier-multiplier helpers for the flat-strip operators at depth h.
// A = k tanh(kh) (normal derivative of the bed-Neumann harmonic extension),
// Lambda = k^2 (minus the second tangential derivative).
Spectrum apply_multiplier(const Spectrum& s, double L, double (*f)(double k, double h), double h) {
    Spectrum out = s;
    out.a0 = 0.0;
    for (int m = 1; m <= s.half_modes(); ++m) {
        const double k = two_pi * m / L;
        out.ac[m - 1] = f(k, h) * s.ac[m - 1];
        out.as[m - 1] = f(k, h) * s.as[m - 1];
    }
    out.nyquist = f(two_pi * (s.half_modes() + 1) / L, h) * s.nyquist;
    return out;
}

double mult_dno(double k, double h) { return k * std::tanh(k * h); }
double mult_lap(double k, double /*h*/) { return k * k; }

// Conjugate trace at the mean level: cos -> -tanh(kh) sin, sin -> tanh(kh) cos.
// The Nyquist sine is not representable on the grid, so that mode is dropped.
Spectrum apply_conjugate(const Spectrum& s, double L, double h) {
    Spectrum out = s;
    out.a0 = 0.0;
    for (int m = 1; m <= s.half_modes(); ++m) {
        const double t = std::tanh(two_pi * m / L * h);
        out.ac[m - 1] = t * s.as[m - 1];
        out.as[m - 1] = -t * s.ac[m - 1];
    }
    out.nyquist = 0.0;
    return out;
}

} // namespace

DnoSeries dno_series_order2(const PeriodicGrid& grid, const WaveParameters& /*params*/,
                            std::span<const double> eta, std::span<const double> xi) {
    grid.require_size(eta, "dno_series_order2 eta");
    grid.require_size(xi, "dno_series_order2 xi");
    const int n = grid.size();
    const double L = grid.length();
    const double h = grid.mean(eta);

    std::vector<double> zeta(n);
    for (int j = 0; j < n; ++j) zeta[j] = eta[j] - h;
    std::vector<double> zeta_x = grid.derivative(zeta);

    auto A = [&](std::span<const double> f) {
        return grid.from_spectrum(apply_multiplier(grid.to_spectrum(f), L, mult_dno, h));
    };
    auto Lap = [&](std::span<const double> f) {
        return grid.from_spectrum(apply_multiplier(grid.to_spectrum(f), L, mult_lap, h));
    };
    auto Conj = [&](std::span<const double> f) {
        return grid.from_spectrum(apply_conjugate(grid.to_spectrum(f), L, h));
    };
    auto times = [&](std::span<const double> a, std::span<const double> b) {
        std::vector<double> r(n);
        for (int j = 0; j < n; ++j) r[j] = a[j] * b[j];
        return r;
    };

    // Invert xi = w + zeta*A w + zeta^2/2 * Lambda w to second order for the
    // mean-level trace w, then push the flat operators back up to the surface.
    std::vector<double> Axi = A(xi);
    std::vector<double> w(n);
    {
        std::vector<double> AzAxi = A(times(zeta, Axi));
        std::vector<double> Lxi = Lap(xi);
        for (int j = 0; j < n; ++j)
            w[j] = xi[j] - zeta[j] * Axi[j] + zeta[j] * AzAxi[j] -
                   0.5 * zeta[j] * zeta[j] * Lxi[j];
    }

    std::vector<double> Aw = A(w);
    std::vector<double> Lw = Lap(w);
    std::vector<double> LAw = Lap(Aw);
    std::vector<double> wx = grid.derivative(w);
    std::vector<double> Awx = grid.derivative(Aw);
    std::vector<double> Cw = Conj(w);
    std::vector<double> LCw = Lap(Cw);

    DnoSeries out;
    out.normal.resize(n);
    out.t_xi.resize(n);
    for (int j = 0; j < n; ++j) {
        out.normal[j] = Aw[j] + zeta[j] * Lw[j] + 0.5 * zeta[j] * zeta[j] * LAw[j] -
                        zeta_x[j] * (wx[j] + zeta[j] * Awx[j]);
        out.t_xi[j] = Cw[j] + zeta[j] * wx[j] + 0.5 * zeta[j] * zeta[j] * LCw[j];
    }
    return out;
}

} // namespace vorwave
