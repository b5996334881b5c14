#pragma once

#include <optional>
#include <vector>

#include "threshold.hpp"

namespace mixcore {

// Which regime produced the optimum.
enum class CaseLabel {
    DegenerateAlphaOne,  // pure small edges win, alpha* = 1
    SaddlePoint,         // unique interior saddle at z'
    BinarySearch,        // two tied minima, alpha found by bisection
};

const char* to_string(CaseLabel label);

struct Optimum {
    int a = 0;
    int b = 0;
    CaseLabel case_label = CaseLabel::DegenerateAlphaOne;
    double z_star = 0.0;
    double lambda_star = 0.0;   // -ln(1 - z_star)
    double alpha_star = 0.0;
    double c_star = 0.0;
    double avg_edge_size = 0.0;  // alpha* a + (1 - alpha*) b
    // Second tied minimum (the smaller z) in the BinarySearch regime.
    std::optional<double> z_star_second;
};

// Best achievable peeling threshold over all mixing fractions for edge sizes
// a and b (3 <= a <= b).  eps bounds the residual gap between the two tied
// minima in the BinarySearch regime.
Optimum optimize_pair(int a, int b, double eps = 1e-11);

// Threshold for a single edge size k >= 3 (alpha fixed at 1).
Optimum uniform_threshold(int k);

// Threshold for an arbitrary mixture, found by direct minimization over the
// generation rate lambda.  Independent of the case analysis in optimize_pair,
// which makes the two agreeing a strong cross-check.
double general_threshold(const EdgeMix& mix);

// Smallest b for which the auxiliary g dips negative, i.e. the first size
// where the two-minima regime can occur for this a.
int b_prime(int a);

// Optima for b = a..b_max at fixed a.
std::vector<Optimum> table_scan(int a, int b_max, double eps = 1e-11);

}  // namespace mixcore
