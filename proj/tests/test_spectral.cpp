#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "phi3/spectral.hpp"

using namespace phi3;

namespace {

// independent bisection oracle on the real normalisation equation
double bisect_c(double lambda2, double lo, double hi) {
    auto F = [&](double c) {
        return 1.0 - std::sqrt(1.0 + c) - 2.0 * lambda2 * std::log(1.0 + 1.0 / std::sqrt(1.0 + c));
    };
    double flo = F(lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi), fm = F(mid);
        if (flo * fm <= 0) hi = mid; else { lo = mid; flo = fm; }
    }
    return 0.5 * (lo + hi);
}

double series_c(const std::vector<double>& coef, double lambda2, int order) {
    double acc = 0.0, p = 1.0;
    for (int k = 1; k <= order; ++k) {
        p *= lambda2;
        acc += coef[std::size_t(k)] * p;
    }
    return acc;
}

}  // namespace

TEST_CASE("solve_c basics", "[spectral]") {
    auto free = solve_c(cplx(0));
    CHECK(free.c == cplx(0));
    CHECK(free.rho0 == cplx(1));

    // series agreement at lambda = 0.2 within O(lambda^8)
    const double l2 = 0.04;
    auto cp = solve_c(cplx(l2));
    const double log2 = std::log(2.0);
    const double ser = -4 * l2 * log2 - 4 * l2 * l2 * (log2 - log2 * log2) -
                       2 * l2 * l2 * l2 * (2 * log2 - log2 * log2);
    CHECK(std::abs(cp.c.real() - ser) < 10.0 * std::pow(0.2, 8));
    CHECK(std::abs(normalization_residual(cp)) < 1e-12);

    // imaginary coupling branch: lambda2 = -0.04 gives c > 0
    auto im = solve_c(cplx(-0.04));
    CHECK(im.c.real() > 0.0);
    CHECK(im.c.imag() == 0.0);
    CHECK(std::abs(normalization_residual(im)) < 1e-12);
    CHECK(std::abs(im.c.real() - bisect_c(-0.04, 0.0, 1.0)) < 1e-12);

    // super-critical real coupling refuses with the critical value in the message
    try {
        solve_c(cplx(0.26));
        FAIL("expected domain_error");
    } catch (const domain_error& err) {
        CHECK(std::string(err.what()).find("0.4906") != std::string::npos);
    }
}

TEST_CASE("critical point and jacobian", "[spectral]") {
    auto [lc, cc] = critical_point();
    CHECK(lc == Catch::Approx(0.490686).margin(1e-5));
    CHECK(cc == Catch::Approx(-0.873759).margin(1e-5));

    auto [F1, F2] = critical_system(lc * lc, cc, EigenvalueFunction::linear());
    CHECK(std::abs(F1) < 1e-9);
    CHECK(std::abs(F2) < 1e-9);

    // analytic Jacobian vs central differences
    const double a = lc * lc, c = cc, ha = 1e-6, hc = 1e-6;
    auto J = critical_jacobian(a, c, EigenvalueFunction::linear());
    auto sys = [&](double aa, double ccv) { return critical_system(aa, ccv, EigenvalueFunction::linear()); };
    const double J11 = (sys(a + ha, c).first - sys(a - ha, c).first) / (2 * ha);
    const double J12 = (sys(a, c + hc).first - sys(a, c - hc).first) / (2 * hc);
    const double J21 = (sys(a + ha, c).second - sys(a - ha, c).second) / (2 * ha);
    const double J22 = (sys(a, c + hc).second - sys(a, c - hc).second) / (2 * hc);
    // J12 = -rho0/(2 sqrt(1+c)) vanishes at the critical point, so compare
    // with a combined relative/absolute tolerance.
    auto close = [](double x, double y) {
        return std::abs(x - y) <= 1e-5 * std::max({1.0, std::abs(x), std::abs(y)});
    };
    CHECK(close(J[0], J11));
    CHECK(close(J[1], J12));
    CHECK(close(J[2], J21));
    CHECK(close(J[3], J22));

    // away from the critical point the comparison is genuinely relative
    auto Jo = critical_jacobian(0.04, -0.2, EigenvalueFunction::linear());
    auto syso = [&](double aa, double ccv) {
        return critical_system(aa, ccv, EigenvalueFunction::linear());
    };
    CHECK(Jo[0] == Catch::Approx((syso(0.04 + ha, -0.2).first - syso(0.04 - ha, -0.2).first) /
                                 (2 * ha)).epsilon(1e-5));
    CHECK(Jo[1] == Catch::Approx((syso(0.04, -0.2 + hc).first - syso(0.04, -0.2 - hc).first) /
                                 (2 * hc)).epsilon(1e-5));
    CHECK(Jo[2] == Catch::Approx((syso(0.04 + ha, -0.2).second - syso(0.04 - ha, -0.2).second) /
                                 (2 * ha)).epsilon(1e-5));
    CHECK(Jo[3] == Catch::Approx((syso(0.04, -0.2 + hc).second - syso(0.04, -0.2 - hc).second) /
                                 (2 * hc)).epsilon(1e-5));
}

TEST_CASE("monotone branch towards the critical point", "[spectral]") {
    auto [lc, cc] = critical_point();
    double prev = 0.0;
    for (int i = 1; i <= 24; ++i) {
        const double lam = (lc - 1e-3) * i / 24.0;
        const double c = solve_c(cplx(lam * lam)).c.real();
        CHECK(c < prev + 1e-15);
        CHECK(c > cc);
        prev = c;
    }
}

TEST_CASE("diffeomorphism neighbourhood: 200 random complex lambda2", "[spectral]") {
    std::mt19937_64 rng(314159);
    std::uniform_real_distribution<double> radius(0.0, 0.2), angle(0.0, 2.0 * M_PI);
    for (int i = 0; i < 200; ++i) {
        const double r = radius(rng), th = angle(rng);
        const cplx l2 = std::polar(r, th);
        auto cp = (std::abs(l2.imag()) < 1e-300) ? solve_c(cplx(l2.real())) : solve_c(l2);
        CHECK(std::abs(normalization_residual(cp)) < 1e-12);
    }
}

TEST_CASE("moments: free limit, closed form, brute-force oracle", "[spectral]") {
    auto free = moments(solve_c(cplx(0)), 4);
    for (int l = 0; l <= 4; ++l)
        CHECK(std::abs(free.rho[std::size_t(l)] - (l == 0 ? cplx(1) : cplx(0))) == 0.0);

    auto cp = solve_coupling(cplx(0.3));
    auto t = moments(cp, 3);
    const cplx s1 = std::sqrt(1.0 + cp.c);
    const cplx closed = 1.0 - 2.0 * cp.lambda2 / (s1 * (s1 + 1.0));
    CHECK(std::abs(t.rho[0] - closed) < 1e-10);
    CHECK(std::abs(t.rho[0] - cp.rho0) < 1e-12);

    // brute-force log-spaced midpoint Riemann sum for rho_1 on [1, 1e10]
    const double c = cp.c.real(), l2v = cp.lambda2.real();
    const long N = 10'000'000;
    const double U = std::log(1e10);
    double sum = 0.0;
    for (long k = 0; k < N; ++k) {
        const double u = U * (k + 0.5) / double(N);
        const double T = std::exp(u);
        sum += 2.0 * l2v / std::sqrt(T) * std::pow(T + c, -2.5) * T;  // dT = T du
    }
    sum *= U / double(N);
    const double rho1_brute = 0.0 - 0.5 * sum;
    CHECK(std::abs(t.rho[1].real() - rho1_brute) < 1e-6);
}

TEST_CASE("moment analyticity in lambda2", "[spectral]") {
    // Cauchy-extracted first derivative of rho_1 w.r.t. lambda2 at 0.01
    auto rho1 = [](cplx l2) { return moments(solve_c(l2), 1).rho[1]; };
    const cplx z0(0.01, 0.0);
    const double r = 0.004;
    const int M = 32;
    cplx d1(0);
    for (int m = 0; m < M; ++m) {
        const double th = 2.0 * M_PI * m / M;
        const cplx z = std::polar(r, th);
        d1 += rho1(z0 + z) * std::polar(1.0, -th);
    }
    d1 /= double(M) * r;
    const double h = 1e-4;
    const cplx fd = (rho1(z0 + h) - rho1(z0 - h)) / (2.0 * h);
    CHECK(std::abs(d1 - fd) < 1e-6 * (1.0 + std::abs(fd)));
}

TEST_CASE("c series coefficients", "[spectral]") {
    auto coef = c_series(4);
    const double log2 = std::log(2.0);
    CHECK(coef[0] == Catch::Approx(0.0).margin(1e-15));
    CHECK(coef[1] == Catch::Approx(-4 * log2).epsilon(1e-12));
    CHECK(coef[2] == Catch::Approx(-4 * (log2 - log2 * log2)).epsilon(1e-12));
    CHECK(coef[3] == Catch::Approx(-2 * (2 * log2 - log2 * log2)).epsilon(1e-12));
    CHECK_THROWS_AS(c_series(11), input_error);

    // order-4 truncation against solve_c at lambda = 0.05
    const double l2 = 0.05 * 0.05;
    const double truncated = series_c(coef, l2, 4);
    CHECK(std::abs(solve_c(cplx(l2)).c.real() - truncated) < 1e-10);
}

TEST_CASE("custom eigenvalue profile round trip", "[spectral]") {
    // e(x) = x^2 + x: einv(y) = (-1+sqrt(1+4y))/2
    auto e = EigenvalueFunction::custom(
        [](double x) { return x * x + x; }, [](double x) { return 2.0 * x + 1.0; },
        [](double y) { return 0.5 * (std::sqrt(1.0 + 4.0 * y) - 1.0); });
    for (double x : {0.0, 0.3, 1.7, 9.0}) {
        CHECK(std::abs(e.inverse(e.eval(x)) - x) < 1e-10);
        CHECK(e.deriv(x) > 0.0);
    }
    auto cp = solve_c(cplx(0.09), e);
    CHECK(std::abs(normalization_residual(cp)) < 1e-12);
    auto t = moments(cp, 2);
    CHECK(std::abs(t.rho[0] - cp.rho0) < 1e-10);
}
