#include "planted/theory.hpp"

#include <algorithm>
#include <cmath>

#include "planted/errors.hpp"
#include "planted/numeric.hpp"

namespace planted {

namespace {

constexpr std::uint64_t kPstarCap = 1'000'000;
constexpr double kPstarZero = 1e-10;

// Survival classifier for the lambda_d bisection: is the largest fixed point
// of p = psi_D(lambda p) positive? The plain iteration cannot resolve this
// within the cap when lambda sits within ~1e-5 of the D=1 critical point
// (the map degenerates to near-identity around p = 0 and the iterate decays
// like 1/t), so an ambiguous outcome falls back to a sign scan of
// psi_D(lambda p) - p over a log-spaced p grid: the margin just below a
// largest fixed point is nonnegative, and psi_d keeps enough relative
// accuracy at small p to resolve it.
bool survival_positive(std::uint32_t D, double lambda) {
    double p = 1;
    bool converged = false;
    for (std::uint64_t it = 0; it < kPstarCap; ++it) {
        const double next = psi_d(lambda * p, D);
        if (next < kPstarZero) return false; // monotone: only down from here
        if (std::abs(next - p) < 1e-12) {
            p = next;
            converged = true;
            break;
        }
        p = next;
    }
    // The fast path needs a macroscopic fixed point: a subcritical D=1
    // iterate stalls (|delta| < 1e-12) at p as large as ~1.4e-6 without
    // being one, so anything smaller goes to the sign scan.
    if (converged && p >= 1e-3) return true;
    for (double grid = 1; grid >= 1e-12; grid /= 1.023293) { // ~100 points/decade
        if (psi_d(lambda * grid, D) - grid > 1e-14) return true;
    }
    return false;
}

struct Cubic {
    // Roots of x^3 + a x^2 + b x + c, for the all-real case; a complex
    // conjugate pair is reported by its real part (twice).
    static std::array<double, 3> roots(double a, double b, double c) {
        const double p = b - a * a / 3;
        const double q = 2 * a * a * a / 27 - a * b / 3 + c;
        const double disc = q * q / 4 + p * p * p / 27;
        std::array<double, 3> r{};
        if (disc <= 0) {
            const double m = 2 * std::sqrt(std::max(-p / 3, 0.0));
            const double denom = m > 0 ? (3 * q) / (p * m) : 0.0;
            const double theta = std::acos(std::clamp(denom, -1.0, 1.0));
            for (int k = 0; k < 3; ++k)
                r[k] = m * std::cos((theta + 2 * M_PI * k) / 3) - a / 3;
        } else {
            const double s = std::sqrt(disc);
            const double t = std::cbrt(-q / 2 + s) + std::cbrt(-q / 2 - s);
            r = {t - a / 3, -t / 2 - a / 3, -t / 2 - a / 3};
        }
        std::sort(r.begin(), r.end());
        return r;
    }
};

std::array<std::array<double, 3>, 3> m0_matrix(double lambda) {
    return {{{1, 0, 0}, {1, 0, 2 / lambda}, {1, 0, 1 / lambda}}};
}

} // namespace

double psi_d(double mu, std::uint32_t D) {
    if (mu < 0) throw usage_error("mu must be nonnegative");
    if (D < 1) throw usage_error("D must be >= 1");
    if (mu == 0) return 0;

    const double log_mu = std::log(mu);
    KahanSum lower;
    for (std::uint32_t j = 0; j < D; ++j)
        lower.add(std::exp(-mu + j * log_mu - std::lgamma(j + 1.0)));
    const double psi = 1 - lower.value();
    if (psi >= 1e-8) return std::clamp(psi, 0.0, 1.0);

    // Upper tail: terms decay at least geometrically here (the tail is tiny,
    // so mu is well below D).
    KahanSum upper;
    for (std::uint32_t j = D;; ++j) {
        const double term = std::exp(-mu + j * log_mu - std::lgamma(j + 1.0));
        upper.add(term);
        if (term <= upper.value() * 1e-17 || j > D + 100000) break;
    }
    return upper.value();
}

GwSequence gw_sequence(std::uint32_t D, double lambda, std::uint32_t h_max) {
    if (lambda <= 0) throw usage_error("lambda must be positive");
    if (h_max < 1) throw usage_error("h_max must be >= 1");
    GwSequence seq{D, lambda, {}};
    seq.p.reserve(h_max);
    seq.p.push_back(1);
    for (std::uint32_t h = 1; h < h_max; ++h)
        seq.p.push_back(psi_d(lambda * seq.p.back(), D));
    return seq;
}

double p_star(std::uint32_t D, double lambda, double tol) {
    if (lambda <= 0) throw usage_error("lambda must be positive");
    if (tol <= 0) throw usage_error("tol must be positive");
    double p = 1;
    for (std::uint64_t it = 0; it < kPstarCap; ++it) {
        const double next = psi_d(lambda * p, D);
        if (next < kPstarZero) return 0;
        if (std::abs(next - p) < tol) {
            p = next;
            break;
        }
        p = next;
    }
    // A microscopic stall is ambiguous: near the D=1 critical point the
    // iterate parks at roughly tol / |1 - lambda| without reaching either the
    // zero cutoff or a genuine fixed point. Classify it with the same sign
    // scan the bisection uses. Macroscopic stalls are left alone; for D >= 2
    // the largest fixed point never sits near zero, so they are real.
    if (p >= 1e-3) return p;
    return survival_positive(D, lambda) ? p : 0.0;
}

double lambda_d(std::uint32_t D, double tol) {
    if (D < 1) throw usage_error("D must be >= 1");
    if (tol <= 0) throw usage_error("tol must be positive");
    double lo = 1e-9;
    double hi = D * M_E + 10;
    if (!survival_positive(D, hi))
        throw error("internal: survival bracket upper end is not supercritical");
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = lo + (hi - lo) / 2;
        if (survival_positive(D, mid))
            hi = mid;
        else
            lo = mid;
    }
    return lo + (hi - lo) / 2;
}

DaryThresholds dary_thresholds(std::uint32_t D, double lambda, double n) {
    if (n < 3) throw usage_error("n must be >= 3");
    if (lambda <= 0) throw usage_error("lambda must be positive");
    if (survival_positive(D, lambda))
        throw regime_error("lambda at or above the d-ary critical point; "
                           "the height recursion does not decay");

    const double hi_mark = std::log(n) / n;
    const double lo_mark = 1 / n;
    DaryThresholds t;
    double p = 1; // p_1
    std::uint32_t h = 1;
    for (; h < 10'000'000; ++h) {
        if (p > hi_mark) t.h_under = h;
        if (p < lo_mark) {
            t.h_bar = h;
            break;
        }
        p = psi_d(lambda * p, D);
    }
    if (t.h_bar == 0)
        throw budget_error("height recursion did not reach 1/n within cap");
    t.gap = t.h_bar - t.h_under;
    return t;
}

double line_threshold(double lambda, double n) {
    if (n < 2) throw usage_error("n must be >= 2");
    if (lambda <= 0 || lambda >= 1)
        throw regime_error("line threshold ln(n)/ln(1/lambda) needs lambda in (0,1)");
    return std::log(n) / std::log(1 / lambda);
}

double star_threshold(double n) {
    // ln(ln(n)) must be positive, i.e. n > e.
    if (n <= std::exp(1.0)) throw usage_error("n must exceed e");
    return std::log(n) / std::log(std::log(n));
}

MarkovBoundReport markov_bound_e0l2(double n, std::uint32_t K, double lambda) {
    if (K <= 2) throw usage_error("K must exceed 2");
    if (static_cast<double>(K) >= n) throw usage_error("K must be below n");
    if (lambda <= 0) throw usage_error("lambda must be positive");

    MarkovBoundReport rep;
    rep.n = n;
    rep.K = K;
    rep.lambda = lambda;
    const double np = n - static_cast<double>(K); // n'
    const double x = n / lambda;
    const double k = K;
    rep.M = {{{1 - k / np, k / np, 0},
              {1 - k / np, (k - 2) / np, 2 * x / np},
              {1 - k / np, (k - 1) / np, x / np}}};
    rep.F1 = {1 - k / np, (k / np) * (1 - 2 / np), x * (k / np) * (2 / np)};

    std::array<double, 3> f = rep.F1;
    for (std::uint32_t t = 0; t + 2 < K; ++t) {
        const std::array<double, 3> g = {
            f[0] * rep.M[0][0] + f[1] * rep.M[1][0] + f[2] * rep.M[2][0],
            f[0] * rep.M[0][1] + f[1] * rep.M[1][1] + f[2] * rep.M[2][1],
            f[0] * rep.M[0][2] + f[1] * rep.M[1][2] + f[2] * rep.M[2][2],
        };
        f = g;
    }
    rep.bound = f[0] + f[1] + f[2];

    const auto& M = rep.M;
    const double tr = M[0][0] + M[1][1] + M[2][2];
    const double s2 = M[0][0] * M[1][1] - M[0][1] * M[1][0] +
                      M[0][0] * M[2][2] - M[0][2] * M[2][0] +
                      M[1][1] * M[2][2] - M[1][2] * M[2][1];
    const double det = M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
                       M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
                       M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
    rep.eigvals_M = Cubic::roots(-tr, s2, -det);

    rep.m0_degenerate = lambda == 1;
    rep.eigvals_M0 = {0, 1 / lambda, 1};
    std::sort(rep.eigvals_M0.begin(), rep.eigvals_M0.end());
    return rep;
}

M0Eigensystem m0_eigensystem(double lambda) {
    if (lambda <= 0) throw usage_error("lambda must be positive");
    if (lambda == 1)
        throw regime_error("m0 spectrum degenerates at lambda = 1");

    M0Eigensystem sys;
    sys.eigenvalues = {0, 1 / lambda, 1};
    sys.left_eigenvectors = {{{1, 1, -2},
                              {-lambda / (lambda - 1), 0, 1},
                              {1, 0, 0}}};
    const auto M0 = m0_matrix(lambda);
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            double dot = 0;
            for (int i = 0; i < 3; ++i) dot += sys.left_eigenvectors[r][i] * M0[i][c];
            const double want = sys.eigenvalues[r] * sys.left_eigenvectors[r][c];
            sys.max_residual = std::max(sys.max_residual, std::abs(dot - want));
        }
    }
    if (sys.max_residual > 1e-12)
        throw error("internal: m0 eigensystem residual above 1e-12");
    return sys;
}

} // namespace planted
