#pragma once

#include <string>
#include <vector>

#include "analysis.hpp"
#include "config.hpp"
#include "grid.hpp"
#include "params.hpp"

namespace cqnc::check {

// Thresholds of the consistency checks. These are fixed contract values, not
// tuning knobs.
inline constexpr double kResidualTol = 1e-6;          // cancellation-condition residual
inline constexpr double kOracleEquivalenceTol = 1e-6; // closed form vs linear-system solve
inline constexpr double kBackactionShareTol = 1e-8;   // x_a^in share of the total PSD
inline constexpr double kSqlNumericTol = 1e-6;        // numeric minimum vs sqrt(2)
inline constexpr double kRootResidualTol = 1e-10;     // constraint residual at real roots

struct CheckItem {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string note;
};

struct CheckReport {
    std::vector<CheckItem> items;
    std::vector<std::string> notes;
    bool all_passed = false;

    std::string text() const;
    std::string json() const;
};

/// Runs every consistency check on the given parameters: matching flags,
/// cancellation residual over the grid, closed-form vs oracle equivalence,
/// back-action share, SQL minimization cross-checks, and constraint-root
/// residuals for both quoted radical variants. The report is structured so a
/// failed tolerance is visible next to the measured value.
CheckReport run_check(const PhysicalParams& params, const RunConfig& run);

}  // namespace cqnc::check
