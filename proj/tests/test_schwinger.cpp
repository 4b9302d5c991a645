#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "phi3/schwinger.hpp"

using namespace phi3;

TEST_CASE("free propagator", "[schwinger]") {
    auto free = solve_c(cplx(0));
    CHECK(std::abs(S2_hat(free, 1.0, 0.0) - 1.0) < 1e-14);
    CHECK(std::abs(S2_hat(free, 2.0, 1.0) - 1.0 / 3.0) < 1e-14);
    CHECK(std::abs(S2_hat_wjet(free, 1.0, 0.0) - 1.0) < 1e-14);
    auto rep = positivity_check(free, 1.0);
    CHECK(rep.verdict == StieltjesVerdict::inconclusive_by_triviality);
}

TEST_CASE("physical axis: real, positive, correct asymptotics", "[schwinger]") {
    auto cp = solve_coupling(cplx(0.3));
    for (double p2 : {0.0, 0.4, 1.0, 5.0, 40.0}) {
        const cplx v = S2_hat(cp, 1.0, p2);
        CHECK(std::abs(v.imag()) < 1e-12);
        CHECK(v.real() > 0.0);
        // one code path, validated against the W-jet route
        CHECK(std::abs(v - S2_hat_wjet(cp, 1.0, p2)) < 1e-9 * std::abs(v));
    }
    for (double mu2 : {1.0, 2.0}) {
        const double p2 = 1e6 * mu2;
        const cplx v = S2_hat(cp, mu2, p2);
        CHECK(std::abs(p2 * v - 1.0) < 1e-3);
    }
}

TEST_CASE("Schwarz reflection off the axis", "[schwinger]") {
    auto cp = solve_coupling(cplx(0.25));
    for (cplx p2 : {cplx(1.0, 2.0), cplx(4.0, -3.0), cplx(0.5, 0.7)}) {
        const cplx a = S2_hat(cp, 1.0, std::conj(p2));
        const cplx b = std::conj(S2_hat(cp, 1.0, p2));
        CHECK(std::abs(a - b) < 1e-12 * std::abs(b));
        // right-half-plane agreement of the two evaluation routes
        const cplx c = S2_hat_wjet(cp, 1.0, p2);
        CHECK(std::abs(S2_hat(cp, 1.0, p2) - c) < 1e-9 * std::abs(c));
    }
}

TEST_CASE("reflection positivity fails for real coupling", "[schwinger]") {
    auto cp = solve_coupling(cplx(0.3));
    auto rep = positivity_check(cp, 1.0);
    CHECK(rep.imaginary_part_sign == ImagSign::negative);
    CHECK(rep.verdict == StieltjesVerdict::stieltjes_violated);
    CHECK(std::abs(rep.test_point - cplx(-3.0, -std::abs(cp.c.real()) / 10.0)) < 1e-14);

    // branch points on the real axis at mu^2(-1 +- sqrt(-c))
    const double r = std::sqrt(-cp.c.real());
    CHECK(std::abs(rep.branch_points[0] - cplx(-1.0 + r)) < 1e-10);
    CHECK(std::abs(rep.branch_points[1] - cplx(-1.0 - r)) < 1e-10);

    // verdict is stable under mu^2 rescaling
    for (double mu2 : {0.5, 2.0})
        CHECK(positivity_check(cp, mu2).verdict == StieltjesVerdict::stieltjes_violated);
}

TEST_CASE("reflection positivity fails for imaginary coupling", "[schwinger]") {
    auto cp = solve_c(cplx(-0.04));  // lambda purely imaginary, c > 0
    CHECK(cp.c.real() > 0.0);
    auto rep = positivity_check(cp, 1.0);
    const double sc = std::sqrt(cp.c.real());
    CHECK(std::abs(rep.branch_points[0] - cplx(-1.0, sc)) < 1e-8);
    CHECK(std::abs(rep.branch_points[1] - cplx(-1.0, -sc)) < 1e-8);
    CHECK(rep.verdict == StieltjesVerdict::stieltjes_violated);
    for (double mu2 : {0.5, 2.0}) {
        auto r2 = positivity_check(cp, mu2);
        CHECK(r2.verdict == StieltjesVerdict::stieltjes_violated);
        CHECK(std::abs(r2.branch_points[0] - mu2 * cplx(-1.0, sc)) < 1e-8 * mu2);
    }
}

TEST_CASE("position space: free profile and interacting decay", "[schwinger]") {
    auto free = solve_c(cplx(0));
    const double s1 = S2_position(free, 1.0, 1.0);
    // standard massive 2D propagator profile
    const double k0 = std::cyl_bessel_k(0.0, 1.0) / (2.0 * M_PI);
    CHECK(std::abs(s1 - k0) < 1e-5 * k0);

    auto cp = solve_coupling(cplx(0.2));
    const double v1 = S2_position(cp, 1.0, 1.0);
    const double v2 = S2_position(cp, 1.0, 2.0);
    CHECK(v2 < v1);

    // mass gap from the branch point nearest the origin; the inverse-square-
    // root singularity of S2 gives an algebraic 1/xi prefactor on top of the
    // exponential, so the slope is read off from log(xi * S)
    const double meff = std::sqrt(1.0 - std::sqrt(-cp.c.real()));
    const double a = S2_position(cp, 1.0, 6.0);
    const double b = S2_position(cp, 1.0, 9.0);
    const double slope = (std::log(9.0 * b) - std::log(6.0 * a)) / 3.0;
    INFO("slope " << slope << " -meff " << -meff);
    CHECK(std::abs(slope + meff) < 0.1 * meff);
}

TEST_CASE("momentum-space integrand of the N-point Schwinger function", "[schwinger]") {
    auto cp = solve_coupling(cplx(0.2));
    std::vector<std::array<double, 2>> xi2{{0.3, -0.1}, {-0.7, 0.4}};

    // odd partitions vanish identically
    {
        auto r = schwinger_N_integrand(cp, {1, 1}, {{{0.5, 0.0}}, {{0.2, 0.1}}}, xi2);
        CHECK(r.odd_partition);
        CHECK(r.value == cplx(0));
    }

    // partition (2) at lambda = 0 is the free 2-point integrand
    {
        auto free = solve_c(cplx(0));
        std::vector<std::array<double, 2>> p{{0.4, 0.3}};
        auto r = schwinger_N_integrand(free, {2}, p, xi2);
        REQUIRE(!r.odd_partition);
        const double pp = 0.4 * 0.4 + 0.3 * 0.3;
        const double theta =
            p[0][0] * (xi2[0][0] - xi2[1][0]) + p[0][1] * (xi2[0][1] - xi2[1][1]);
        const cplx phases = std::polar(1.0, theta) + std::polar(1.0, -theta);
        const cplx expect = phases / (8.0 * M_PI * M_PI * (pp + 1.0));
        CHECK(std::abs(r.value - expect) < 1e-13 * std::abs(expect));
    }

    // partition (2) relates to S2_hat (mu^2 = 1)
    {
        std::vector<std::array<double, 2>> p{{0.9, -0.2}};
        auto r = schwinger_N_integrand(cp, {2}, p, xi2);
        const double pp = 0.9 * 0.9 + 0.2 * 0.2;
        const double theta =
            p[0][0] * (xi2[0][0] - xi2[1][0]) + p[0][1] * (xi2[0][1] - xi2[1][1]);
        const cplx phases = std::polar(1.0, theta) + std::polar(1.0, -theta);
        const cplx expect = phases * S2_hat(cp, 1.0, pp) / (8.0 * M_PI * M_PI);
        CHECK(std::abs(r.value - expect) < 1e-10 * std::abs(expect));
    }

    // partition (2,2): symmetry factor 2! against a by-hand assembly
    {
        std::vector<std::array<double, 2>> p{{0.6, 0.1}, {-0.3, 0.5}};
        std::vector<std::array<double, 2>> xi{{0.1, 0.0}, {0.6, -0.2}, {-0.4, 0.9}, {0.2, 0.3}};
        auto r = schwinger_N_integrand(cp, {2, 2}, p, xi);
        REQUIRE(!r.odd_partition);

        auto Xof = [](const std::array<double, 2>& q) {
            const double x = (q[0] * q[0] + q[1] * q[1]) / 2.0;
            return cplx((2 * x + 1) * (2 * x + 1));
        };
        BoundarySpec spec{{{Xof(p[0]), Xof(p[0])}, {Xof(p[1]), Xof(p[1])}}};
        const cplx G = G_multi_boundary(cp, spec).value;
        cplx phases(0);
        std::vector<int> idx{0, 1, 2, 3};
        do {
            double th = 0.0;
            th += p[0][0] * (xi[std::size_t(idx[0])][0] - xi[std::size_t(idx[1])][0]) +
                  p[0][1] * (xi[std::size_t(idx[0])][1] - xi[std::size_t(idx[1])][1]);
            th += p[1][0] * (xi[std::size_t(idx[2])][0] - xi[std::size_t(idx[3])][0]) +
                  p[1][1] * (xi[std::size_t(idx[2])][1] - xi[std::size_t(idx[3])][1]);
            phases += std::polar(1.0, th);
        } while (std::next_permutation(idx.begin(), idx.end()));
        const double S = 2.0;  // two boundaries of equal valence
        const cplx pref = 1.0 / (8.0 * M_PI * S) * (4.0 / (2.0 * 2.0 * M_PI)) *
                          (4.0 / (2.0 * 2.0 * M_PI));
        const cplx expect = pref * phases * G;
        CHECK(std::abs(r.value - expect) < 1e-12 * std::max(1.0, std::abs(expect)));
    }
}
