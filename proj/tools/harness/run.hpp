#pragma once

#include <iosfwd>

#include <json.hpp>

#include "config.hpp"
#include "hkloost/kloosterman.hpp"

namespace hkloost::harness {

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,  // unexpected error or failed verification
    kExitInvalidConfig = 2,
    kExitRegime = 3,
    kExitCacheCorruption = 4,
};

/// Header "c,s_re,s_im,run_re,run_im" and one row per series row, values to 17 significant digits.
void emit_csv(const PartialSumSeries& series, std::ostream& out);

/// Executes one experiment. Artifacts go to cfg.output (stdout if empty); errors are reported on
/// err as a single-line JSON record and mapped to the documented exit codes.
int run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace hkloost::harness
