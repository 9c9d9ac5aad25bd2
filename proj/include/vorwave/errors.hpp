#ifndef VORWAVE_ERRORS_HPP
#define VORWAVE_ERRORS_HPP

#include <cstdio>
#include <stdexcept>
#include <string>

namespace vorwave {

// Compact numeric form for error messages; std::to_string flattens small
// residuals to 0.000000.
inline std::string show_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Coarse categories used by the CLI to pick an exit status.
enum class ErrorCategory { config, solver, non_convergence, io };

class Error : public std::runtime_error {
public:
    Error(ErrorCategory cat, const std::string& msg)
        : std::runtime_error(msg), category_(cat) {}
    ErrorCategory category() const { return category_; }
private:
    ErrorCategory category_;
};

// Invalid parameters or configuration input.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(ErrorCategory::config, msg) {}
};

// Array length does not match the grid.
class ShapeError : public Error {
public:
    explicit ShapeError(const std::string& msg) : Error(ErrorCategory::solver, msg) {}
};

// Requested evaluation point lies outside the fluid domain.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(ErrorCategory::solver, msg) {}
};

// Linear solve failed outright (numerically singular system).
class SolverError : public Error {
public:
    SolverError(const std::string& msg, double rcond)
        : Error(ErrorCategory::solver, msg), rcond_(rcond) {}
    double rcond() const { return rcond_; }
private:
    double rcond_;
};

// Iteration finished without meeting its tolerance; carries the best residual seen.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& msg, double residual)
        : Error(ErrorCategory::non_convergence, msg), residual_(residual) {}
    double residual() const { return residual_; }
private:
    double residual_;
};

// Newton hit a singular Jacobian (typically a bifurcation point of the branch).
class BifurcationError : public Error {
public:
    explicit BifurcationError(const std::string& msg)
        : Error(ErrorCategory::non_convergence, msg) {}
};

// A time step drove the surface into the bed.
class SurfaceCollapseError : public Error {
public:
    SurfaceCollapseError(const std::string& msg, double t)
        : Error(ErrorCategory::solver, msg), time_(t) {}
    double time() const { return time_; }
private:
    double time_;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(ErrorCategory::io, msg) {}
};

} // namespace vorwave

#endif
