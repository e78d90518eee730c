#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace planted {

// P(Poisson(mu) >= D), absolute error <= 1e-12. Switches from the
// complemented lower CDF to direct upper-tail summation when the result is
// below 1e-8, so tiny tails keep relative accuracy.
double psi_d(double mu, std::uint32_t D);

struct GwSequence {
    std::uint32_t D = 0;
    double lambda = 0;
    std::vector<double> p; // p[0] = p_1 = 1, p[i] = psi_D(lambda * p[i-1])
};

// Probability that a Poisson(lambda) Galton-Watson tree contains a D-ary
// subtree of height h at the root, for h = 1..h_max.
GwSequence gw_sequence(std::uint32_t D, double lambda, std::uint32_t h_max);

// Largest fixed point of p = psi_D(lambda p): iterate from p = 1 (monotone
// decreasing) with the given tolerance, capped at 10^6 iterations; values
// below 1e-10 are declared 0.
double p_star(std::uint32_t D, double lambda, double tol = 1e-12);

// Critical intensity lambda_D = sup{lambda | p_star = 0}, by bisection of a
// survival predicate; result within tol. lambda_1 = 1.
double lambda_d(std::uint32_t D, double tol = 1e-6);

struct DaryThresholds {
    std::uint32_t h_under = 0; // largest h with p_h > ln(n)/n
    std::uint32_t h_bar = 0;   // smallest h with p_h < 1/n
    std::uint32_t gap = 0;     // h_bar - h_under
};

// Detectability window edges for planted D-ary trees. n is real so that
// asymptotic probes like n^10 stay representable; only 1/n and ln(n)/n enter.
DaryThresholds dary_thresholds(std::uint32_t D, double lambda, double n);

// ln(n)/ln(1/lambda), the sparse-regime line detection threshold; lambda < 1.
double line_threshold(double lambda, double n);

// ln(n)/ln(ln(n)), the star detection threshold; n >= 16.
double star_threshold(double n);

struct MarkovBoundReport {
    double n = 0;
    std::uint32_t K = 0;
    double lambda = 0;
    std::array<std::array<double, 3>, 3> M{};
    std::array<double, 3> F1{};
    double bound = 0;                 // upper bound on E0(L^2)
    std::array<double, 3> eigvals_M{};  // numeric, ascending
    std::array<double, 3> eigvals_M0{}; // analytic {0, 1/lambda, 1}, ascending
    bool m0_degenerate = false;         // lambda == 1: 1/lambda collides with 1
};

// Three-state Markov chain domination of the path-overlap process:
// bound = F(1) M^{K-2} e computed by K-2 row-by-matrix products.
MarkovBoundReport markov_bound_e0l2(double n, std::uint32_t K, double lambda);

struct M0Eigensystem {
    std::array<double, 3> eigenvalues{};                   // {0, 1/lambda, 1}
    std::array<std::array<double, 3>, 3> left_eigenvectors{};
    double max_residual = 0; // max |u M0 - eig u|
};

// Analytic eigensystem of the limit matrix M0; lambda = 1 is degenerate and
// refused.
M0Eigensystem m0_eigensystem(double lambda);

} // namespace planted
