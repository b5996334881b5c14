#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "numerics.hpp"
#include "threshold.hpp"

namespace mixcore {

// A Monte-Carlo sweep over edge densities around a suspected threshold.
struct SweepConfig {
    EdgeMix mix;
    uint64_t n = 0;            // nodes per instance
    std::vector<double> densities;  // edge densities c, edges = round(c * n)
    int trials_per_density = 0;
    uint64_t base_seed = 0;
    int jobs = 1;              // worker threads; 0 picks hardware concurrency
};

struct DensityRecord {
    double c = 0.0;
    int trials = 0;
    int failures = 0;      // instances whose 2-core was non-empty
    double failure_rate = 0.0;
};

struct SweepResult {
    SweepConfig config;
    std::vector<DensityRecord> rows;
    double wall_seconds = 0.0;
};

// Evenly spaced densities centered on `center`, spanning center +- span/2.
std::vector<double> density_grid(double center, double span, int steps);

// Run the sweep.  Each trial's generator seed is derived from
// (base_seed, density index, trial index), so the outcome is identical
// whatever the worker count.
SweepResult run_sweep(const SweepConfig& config);

// Fit the failure-rate curve with the logistic model.  Initial midpoint is
// the first density whose rate crosses 0.5 (sweep midpoint if none does);
// initial width is a tenth of the swept span.
SigmoidFit estimate_threshold(const SweepResult& sweep);

// CSV with header c,trials,failures,failure_rate and fixed 6-decimal floats.
// When a fit is given, "# x=...", "# y=...", "# ss_res=..." comment lines
// follow the rows; "# seed=..." is always appended last.
std::string emit_csv(const SweepResult& sweep, const std::optional<SigmoidFit>& fit);

}  // namespace mixcore
