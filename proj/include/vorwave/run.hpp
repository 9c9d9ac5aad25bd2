#ifndef VORWAVE_RUN_HPP
#define VORWAVE_RUN_HPP

#include <filesystem>
#include <iosfwd>

#include "vorwave/config.hpp"
#include "vorwave/errors.hpp"

namespace vorwave {

struct CliOptions {
    std::filesystem::path out_dir = "out";
    bool quick = false;      // validate only
    unsigned seed = 20260819; // validate only
};

// Process exit status for a failure category. 0 is success, 1 is reserved
// for run-level failures (validate check failures, detected instability).
int exit_code_for(ErrorCategory category);

// Executes one run and writes its artifacts under opts.out_dir:
//   simulate    snapshots + diagnostics.csv
//   steady      family.csv + member snapshots
//   validate    property report on `out`
//   reconstruct fields.csv
// Returns the process exit status; library errors are caught, reported on
// `err`, and mapped through exit_code_for. Data files are deterministic:
// LF endings, 17 significant digits, no timestamps.
int run(const RunConfig& config, const CliOptions& opts, std::ostream& out, std::ostream& err);

} // namespace vorwave

#endif
