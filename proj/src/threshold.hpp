#pragma once

#include <optional>
#include <vector>

namespace mixcore {

// A mixture of edge sizes: size[i] occurs with fraction[i].  Sizes are
// strictly increasing and at least 3; fractions are non-negative, sum to 1
// and the first one is positive.
struct EdgeMix {
    std::vector<int> sizes;
    std::vector<double> fractions;

    EdgeMix(std::vector<int> sizes, std::vector<double> fractions);

    static EdgeMix uniform(int k);
    // Two sizes a < b with fraction alpha_a on the small one.
    static EdgeMix pair(int a, int b, double alpha_a);

    double mean_edge_size() const;
};

// Landmarks of the auxiliary functions for one size pair a < b.  z_1/z_2 are
// the extreme zeros of g; they exist only when g dips below zero.
struct SpecialPoints {
    double z_prime;  // (a/b)^(1/(b-a)), the only interior zero of a*z^(a-1) - b*z^(b-1)
    double z_l;      // f(z) = 1/(a-1)
    double z_r;      // f(z) = 1/(b-1), pole of h
    double z_g;      // argmin of g on (0,1)
    double g_min;    // g(z_g)
    std::optional<double> z_1;
    std::optional<double> z_2;
};

// f(z) = -ln(1-z) (1-z)/z, continuously extended to 1 at z=0.  Strictly
// decreasing from 1 to 0 on (0,1).
double aux_f(double z);

// g(z) = f(z)(b-1)(a-1) + 1/(1-z) + 2 - b - a.  Its sign classifies interior
// critical points of the transformed threshold.
double aux_g(double z, int a, int b);

// dg/dz, written as (b-1)(a-1)(ln(1-z)+z)/z^2 + 1/(1-z)^2.
double aux_g_deriv(double z, int a, int b);

// h(z) = 1 + a z^(a-b) (1 - f(z)(a-1)) / (b ((b-1) f(z) - 1)).  Equals 1 at
// z_l, has a pole at z_r, and 1/h gives the mixing fraction that makes z a
// critical point of the threshold curve.
double aux_h(double z, int a, int b);

// Transformed threshold -ln(1-z) / (alpha a z^(a-1) + (1-alpha) b z^(b-1)).
double threshold_T(double z, int a, int b, double alpha);

// Threshold density at edge-generation rate lambda for an arbitrary mixture:
// lambda / sum_i alpha_i k_i (1 - e^-lambda)^(k_i - 1).
double threshold_t_general(double lambda, const EdgeMix& mix);

// Locate all landmarks for a size pair.  Requires 3 <= a < b.
SpecialPoints special_points(int a, int b);

}  // namespace mixcore
