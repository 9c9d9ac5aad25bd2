#ifndef VORWAVE_CHECKS_HPP
#define VORWAVE_CHECKS_HPP

#include <string>
#include <vector>

namespace vorwave {

// One row of the validate report. `measured` must stay at or below `bound`,
// or at or above it when lower_bound is set (used for checks that assert a
// defect is genuinely nonzero).
struct CheckResult {
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    bool lower_bound = false;
    bool pass = false;
};

// The built-in property suite: energy oracle agreement, gradient consistency,
// conservation, flat-surface operator identities, dispersion, the series
// oracle, a short traveling-wave family, and the pressure reconstruction.
// quick shrinks the grids and trial counts for a fast smoke run; seed feeds
// the random-state generator so reports are reproducible.
std::vector<CheckResult> run_checks(bool quick, unsigned seed);

} // namespace vorwave

#endif
