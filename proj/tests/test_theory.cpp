#include <doctest.h>

#include <cmath>

#include "planted/errors.hpp"
#include "planted/theory.hpp"

using namespace planted;

TEST_CASE("psi_d closed forms and validation") {
    CHECK(psi_d(0.0, 1) == 0.0);
    CHECK(psi_d(0.0, 4) == 0.0);
    CHECK(psi_d(std::log(2.0), 1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(psi_d(2.0, 2) ==
          doctest::Approx(1.0 - 3.0 * std::exp(-2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(psi_d(-0.1, 1), usage_error);
}

TEST_CASE("psi_d stays accurate in the deep tail") {
    // psi_2(mu) = 1 - e^{-mu}(1+mu) ~ mu^2/2 for small mu; the naive
    // complemented sum loses everything below ~1e-16.
    CHECK(psi_d(1e-6, 2) == doctest::Approx(5.0e-13).epsilon(1e-5));
    CHECK(psi_d(1e-4, 3) ==
          doctest::Approx(1e-12 / 6.0).epsilon(1e-4)); // mu^3/6
}

TEST_CASE("psi_d monotonicity in mu and D") {
    double prev = 0.0;
    for (double mu = 0.25; mu <= 8.0; mu += 0.25) {
        const double cur = psi_d(mu, 3);
        CHECK(cur > prev);
        CHECK(psi_d(mu, 4) < cur);
        prev = cur;
    }
    CHECK(psi_d(50.0, 2) > 1 - 1e-12);
}

TEST_CASE("gw_sequence pinned prefixes") {
    const auto a = gw_sequence(1, 1.0, 2);
    REQUIRE(a.p.size() == 2);
    CHECK(a.p[0] == 1.0);
    CHECK(a.p[1] == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));

    const auto b = gw_sequence(2, 2.0, 10);
    CHECK(b.p[0] == 1.0);
    CHECK(b.p[1] ==
          doctest::Approx(1.0 - 3.0 * std::exp(-2.0)).epsilon(1e-12));
    // Frozen from an independent high-precision iteration of the recursion.
    CHECK(b.p[3] == doctest::Approx(0.144095153969).epsilon(1e-9));
    CHECK(b.p[6] == doctest::Approx(1.013291e-5).epsilon(1e-5));
    CHECK(b.p[9] < 1e-6);
    for (std::size_t i = 1; i < b.p.size(); ++i) {
        CHECK(b.p[i] <= b.p[i - 1]);
        CHECK(b.p[i] >= 0.0);
    }
}

TEST_CASE("p_star fixed points") {
    CHECK(p_star(1, 0.5) == 0.0);
    // Near-critical stalls (the iterate decays like 2/t around the D=1
    // transition) must still land on the correct side.
    CHECK(p_star(1, 0.999) == 0.0);
    CHECK(p_star(1, 1.0) == 0.0);
    // Root of p = 1 - e^{-2p}, frozen from an independent bisection.
    CHECK(p_star(1, 2.0) == doctest::Approx(0.796812130020).epsilon(1e-9));
    CHECK(p_star(2, 3.0) == 0.0);
    CHECK(p_star(2, 4.0) > 0.5);

    // Cross-check p_star(2,3) = 0 by scanning for a sign change.
    for (double p = 1.0; p > 1e-9; p *= 0.7)
        CHECK(psi_d(3.0 * p, 2) < p);
}

TEST_CASE("gw_sequence approaches p_star from above") {
    const double ps = p_star(1, 1.7);
    const auto seq = gw_sequence(1, 1.7, 200);
    CHECK(seq.p.back() == doctest::Approx(ps).epsilon(1e-9));
    for (const double p : seq.p) CHECK(p >= ps - 1e-12);
}

TEST_CASE("critical intensities") {
    CHECK(lambda_d(1) == doctest::Approx(1.0).epsilon(1e-6));
    // Frozen from an independent bisection of the survival predicate.
    const double l2 = lambda_d(2);
    const double l3 = lambda_d(3);
    CHECK(l2 == doctest::Approx(3.350918863).epsilon(1e-6));
    CHECK(l3 == doctest::Approx(5.149402740).epsilon(1e-6));
    CHECK(l2 > 3.0);
    CHECK(l2 < 4.0);
    CHECK(lambda_d(1) < l2);
    CHECK(l2 < l3);

    CHECK(p_star(2, l2 - 0.01) == 0.0);
    CHECK(p_star(2, l2 + 0.01) > 0.0);
    CHECK(p_star(1, 0.99) == 0.0);
    CHECK(p_star(1, 1.01) > 0.0);
}

TEST_CASE("dary detectability window") {
    const auto t = dary_thresholds(2, 2.0, 1e5);
    CHECK(t.h_under == 6);
    CHECK(t.h_bar == 8);
    CHECK(t.gap == 2);
    CHECK((t.gap == 1 || t.gap == 2));

    // Growth in ln ln n: ten orders of magnitude up, the window moves right.
    const auto big = dary_thresholds(2, 2.0, 1e50);
    CHECK(big.h_bar >= t.h_bar);

    CHECK_THROWS_AS(dary_thresholds(2, 4.0, 1e5), regime_error);
    CHECK_THROWS_AS(dary_thresholds(2, 3.4, 1e5), regime_error);
}

TEST_CASE("line and star thresholds") {
    CHECK(line_threshold(0.5, 1e5) == doctest::Approx(16.6096).epsilon(1e-4));
    CHECK(line_threshold(std::exp(-1.0), std::exp(20.0)) ==
          doctest::Approx(20.0).epsilon(1e-9));
    CHECK(line_threshold(0.9, 1e5) == doctest::Approx(109.271).epsilon(1e-4));
    CHECK_THROWS_AS(line_threshold(1.0, 1e5), regime_error);
    CHECK_THROWS_AS(line_threshold(1.5, 1e5), regime_error);
    CHECK_THROWS_AS(line_threshold(0.0, 1e5), regime_error);

    CHECK(star_threshold(1e5) == doctest::Approx(4.71168).epsilon(1e-4));
    CHECK(star_threshold(std::exp(std::exp(1.0))) ==
          doctest::Approx(std::exp(1.0)).epsilon(1e-9));
    CHECK(star_threshold(1e10) == doctest::Approx(7.34107).epsilon(1e-4));
    CHECK_THROWS_AS(star_threshold(2.5), usage_error);
}

TEST_CASE("markov chain bound matches the pinned matrix entries") {
    const auto rep = markov_bound_e0l2(1000, 10, 2.0);
    const double tol = 1e-6;
    CHECK(rep.M[0][0] == doctest::Approx(0.989899).epsilon(tol));
    CHECK(rep.M[0][1] == doctest::Approx(0.010101).epsilon(tol));
    CHECK(rep.M[0][2] == 0.0);
    CHECK(rep.M[1][0] == doctest::Approx(0.989899).epsilon(tol));
    CHECK(rep.M[1][1] == doctest::Approx(0.008081).epsilon(tol));
    CHECK(rep.M[1][2] == doctest::Approx(1.010101).epsilon(tol));
    CHECK(rep.M[2][0] == doctest::Approx(0.989899).epsilon(tol));
    CHECK(rep.M[2][1] == doctest::Approx(0.009091).epsilon(tol));
    CHECK(rep.M[2][2] == doctest::Approx(0.505051).epsilon(tol));
    CHECK(rep.F1[0] == doctest::Approx(0.989899).epsilon(tol));
    CHECK(rep.F1[1] == doctest::Approx(0.010081).epsilon(tol));
    CHECK(rep.F1[2] == doctest::Approx(0.010203).epsilon(tol));

    // Frozen from an independent evaluation of F(1) M^{K-2} e.
    CHECK(rep.bound == doctest::Approx(1.170873426970).epsilon(1e-9));
    CHECK(rep.bound >= 1.0);
    CHECK(rep.eigvals_M0[0] == 0.0);
    CHECK(rep.eigvals_M0[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rep.eigvals_M0[2] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(!rep.m0_degenerate);
}

TEST_CASE("markov bound parameter contract") {
    CHECK_THROWS_AS(markov_bound_e0l2(10, 2, 2.0), usage_error);
    CHECK_THROWS_AS(markov_bound_e0l2(10, 10, 2.0), usage_error);
    CHECK_THROWS_AS(markov_bound_e0l2(10, 11, 2.0), usage_error);
    CHECK_THROWS_AS(markov_bound_e0l2(100, 5, 0.0), usage_error);

    const auto at_one = markov_bound_e0l2(1000, 10, 1.0);
    CHECK(at_one.m0_degenerate);
    CHECK(at_one.bound >= 1.0);
    CHECK(std::isfinite(at_one.bound));
}

TEST_CASE("numeric M spectrum approaches the limit spectrum") {
    const auto small = markov_bound_e0l2(1e4, 50, 2.0);
    const auto large = markov_bound_e0l2(2e4, 50, 2.0);
    double dev_small = 0, dev_large = 0;
    for (int i = 0; i < 3; ++i) {
        dev_small = std::max(
            dev_small, std::abs(small.eigvals_M[i] - small.eigvals_M0[i]));
        dev_large = std::max(
            dev_large, std::abs(large.eigvals_M[i] - large.eigvals_M0[i]));
    }
    CHECK(dev_small < 0.02);
    CHECK(dev_large < dev_small);
}

TEST_CASE("m0 eigensystem analytic pairs") {
    const auto sys2 = m0_eigensystem(2.0);
    CHECK(sys2.eigenvalues[0] == 0.0);
    CHECK(sys2.eigenvalues[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(sys2.eigenvalues[2] == 1.0);
    CHECK(sys2.left_eigenvectors[0][0] == doctest::Approx(1.0));
    CHECK(sys2.left_eigenvectors[0][1] == doctest::Approx(1.0));
    CHECK(sys2.left_eigenvectors[0][2] == doctest::Approx(-2.0));
    CHECK(sys2.left_eigenvectors[1][0] == doctest::Approx(-2.0));
    CHECK(sys2.left_eigenvectors[1][1] == 0.0);
    CHECK(sys2.left_eigenvectors[1][2] == doctest::Approx(1.0));
    CHECK(sys2.left_eigenvectors[2][0] == doctest::Approx(1.0));
    CHECK(sys2.left_eigenvectors[2][1] == 0.0);
    CHECK(sys2.left_eigenvectors[2][2] == 0.0);
    CHECK(sys2.max_residual <= 1e-12);

    const auto sys_half = m0_eigensystem(0.5);
    CHECK(sys_half.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(sys_half.left_eigenvectors[1][0] == doctest::Approx(1.0));
    CHECK(sys_half.left_eigenvectors[1][2] == doctest::Approx(1.0));
    CHECK(sys_half.max_residual <= 1e-12);

    for (const double lambda : {0.3, 0.8, 1.7, 5.0, 20.0})
        CHECK(m0_eigensystem(lambda).max_residual <= 1e-12);

    CHECK_THROWS_AS(m0_eigensystem(1.0), regime_error);
}

TEST_CASE("bound blows up across the line threshold") {
    const double thr = line_threshold(0.5, 1e5);
    const auto below = markov_bound_e0l2(
        1e5, static_cast<std::uint32_t>(thr) - 5, 0.5);
    const auto above = markov_bound_e0l2(
        1e5, static_cast<std::uint32_t>(thr) + 20, 0.5);
    CHECK(above.bound > 10 * below.bound);
}
