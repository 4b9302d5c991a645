#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "phi3/bell.hpp"
#include "phi3/jet.hpp"

using namespace phi3;

namespace {

std::vector<MPoly> sym_vars(int arity) {
    std::vector<MPoly> xs;
    for (int i = 1; i <= arity; ++i) xs.push_back(MPoly::var(arity, i));
    return xs;
}

// Third route: enumerate set partitions of {1..n} into exactly k blocks via
// restricted growth strings, weight each partition by prod x_{|block|}.
MPoly bell_by_set_partitions(int n, int k) {
    const int R = std::max(n, 1);
    MPoly acc(R);
    if (n == 0) return k == 0 ? MPoly::constant(R, 1) : acc;
    if (k < 1) return acc;
    std::vector<int> rgs(std::size_t(n), 0);
    auto rec = [&](auto&& self, int i, int maxused) -> void {
        if (i == n) {
            if (maxused + 1 != k) return;
            std::vector<int> sizes(std::size_t(k), 0);
            for (int t = 0; t < n; ++t) sizes[std::size_t(rgs[std::size_t(t)])]++;
            MPoly term = MPoly::constant(R, 1);
            for (int b = 0; b < k; ++b) term *= MPoly::var(R, sizes[std::size_t(b)]);
            acc += term;
            return;
        }
        for (int v = 0; v <= maxused + 1 && v < k; ++v) {
            rgs[std::size_t(i)] = v;
            self(self, i + 1, std::max(maxused, v));
        }
    };
    rec(rec, 0, -1);
    return acc;
}

}  // namespace

TEST_CASE("partial Bell polynomials: anchors", "[bell]") {
    CHECK(bell_partial<Rational>(0, 0, {}) == 1);
    CHECK(bell_partial<Rational>(0, 1, {}) == 0);

    auto xs = sym_vars(4);
    CHECK(bell_partial<MPoly>(4, 4, xs) == MPoly::var(4, 1).pow(4));
    CHECK(bell_partial<MPoly>(3, 2, xs) == Rational(3) * MPoly::var(4, 1) * MPoly::var(4, 2));
    CHECK(bell_partial<MPoly>(2, 5, xs).is_zero());
    CHECK_THROWS_AS(bell_partial<Rational>(-1, 0, std::span<const Rational>{}), input_error);
}

TEST_CASE("recurrence, definition and set partitions agree", "[bell]") {
    for (int n = 0; n <= 7; ++n)
        for (int k = 0; k <= n; ++k) {
            auto xs = sym_vars(std::max(n, 1));
            MPoly a = bell_partial<MPoly>(n, k, xs);
            MPoly b = bell_partial_definition<MPoly>(n, k, xs);
            CHECK(a == b);
            CHECK(a == bell_by_set_partitions(n, k).with_arity(std::max(n, 1)));
        }
    std::vector<Rational> q{Rational(1, 2), Rational(-2, 3), Rational(5), Rational(0)};
    for (int k = 1; k <= 4; ++k)
        CHECK(bell_partial<Rational>(4, k, q) == bell_partial_definition<Rational>(4, k, q));
}

TEST_CASE("Bell identity holds and mutations fail", "[bell]") {
    CHECK(verify_bell_identity_1(1, 0, Rational(1), Rational(0)));
    CHECK(verify_bell_identity_1(4, 1, Rational(2), Rational(3)));
    MPoly lhs = bell_identity_lhs(5, 2, Rational(1), Rational(1));
    MPoly rhs = bell_identity_rhs(5, 2, Rational(1), Rational(1));
    CHECK(lhs == rhs);
    MPoly perturbed = rhs + MPoly::var(rhs.arity(), 1).pow(5);
    CHECK(lhs != perturbed);
}

TEST_CASE("Bell identity sweep n<=6", "[bell]") {
    const int vals[] = {0, 1, -1, 2, 3};
    for (int n = 1; n <= 6; ++n)
        for (int k = 0; k < n; ++k)
            for (int a : vals)
                for (int b : vals) {
                    INFO("n=" << n << " k=" << k << " a=" << a << " b=" << b);
                    CHECK(verify_bell_identity_1(n, k, Rational(a), Rational(b)));
                }
}

TEST_CASE("generating function identity with exact jets", "[bell]") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
    for (int rep = 0; rep < 6; ++rep) {
        const int n = 2 + int(rng() % 4);  // 2..5
        std::vector<Rational> x;
        for (int j = 0; j < n; ++j) x.emplace_back(num(rng), den(rng));
        const Rational u(num(rng), den(rng));

        // n! [t^n] exp(u sum_j x_j t^j / j!)
        Jet<Rational> arg(n);
        for (int j = 1; j <= n; ++j) arg[j] = u * x[std::size_t(j - 1)] / Rational(factorial(j));
        Jet<Rational> e = exp(arg);
        const Rational lhs = e[n] * Rational(factorial(n));

        Rational rhs(0), up(1);
        for (int k = 0; k <= n; ++k) {
            rhs += bell_partial<Rational>(n, k, x) * up;
            up *= u;
        }
        CHECK(lhs == rhs);
    }
}

TEST_CASE("conjecture instances from the text", "[bell]") {
    {
        std::vector<int> counts{4};  // l=0, n0=4
        CHECK(verify_conjecture(0, counts));
    }
    {
        std::vector<int> counts{2, 1};  // l=2, n0=2, n1=1
        CHECK(verify_conjecture(2, counts));
    }
    // degenerate: N - M - l - 4 < 0 makes both sides vanish
    {
        std::vector<int> counts{2};
        auto sides = conjecture_sides(0, counts);
        CHECK(sides.lhs.is_zero());
        CHECK(sides.rhs.is_zero());
    }
}

TEST_CASE("conjecture mutation is detected", "[bell]") {
    // replace (N-2+K)! by (N-1+K)! in the first rhs term; at n0=4 that sum is
    // empty (s0 = 0), so exercise the mutation at n0=5 where the term exists
    {
        std::vector<int> counts{5};
        auto sides = conjecture_sides(0, counts);
        CHECK(sides.lhs == sides.rhs);
        const long N = 5, M = 0, l = 0, s0 = N - M - l - 4;
        const int R = sides.arity;
        MPoly mutated = sides.rhs;
        for (long j = 1; s0 - j >= 0; ++j) {
            Rational base(double_factorial(2 * j + 2 * l + 5) * factorial(j + 1),
                          double_factorial(2 * j + 1) * factorial(j + l + 2) * factorial(j));
            MPoly correct = base * MPoly::var(R, int(j)) *
                            phi3::detail::conjecture_inner_sum(int(s0 - j), N - 2, R);
            MPoly wrong = base * MPoly::var(R, int(j)) *
                          phi3::detail::conjecture_inner_sum(int(s0 - j), N - 1, R);
            mutated = mutated - correct + wrong;
        }
        CHECK(sides.lhs != mutated);
    }
    // at n0=4 the same factorial shift applied to the surviving lhs term bites
    {
        std::vector<int> counts{4};
        auto sides = conjecture_sides(0, counts);
        const long N = 4;
        const int R = sides.arity;
        MPoly mutated_lhs =
            sides.lhs -
            Rational(double_factorial(5), factorial(2)) *
                phi3::detail::conjecture_inner_sum(0, N - 2, R) +
            Rational(double_factorial(5), factorial(2)) *
                phi3::detail::conjecture_inner_sum(0, N - 1, R);
        CHECK(mutated_lhs != sides.rhs);
    }
}

TEST_CASE("conjecture sweep (moderate)", "[bell]") {
    // l <= 2, p <= 2, n_i <= 2 here; the full sweep runs in the acceptance suite
    for (int l = 0; l <= 2; ++l)
        for (int n0 = 0; n0 <= 2; ++n0)
            for (int n1 = 0; n1 <= 2; ++n1)
                for (int n2 = 0; n2 <= 2; ++n2) {
                    if (n0 + n1 + n2 == 0) continue;
                    std::vector<int> counts{n0, n1, n2};
                    INFO("l=" << l << " counts=" << n0 << "," << n1 << "," << n2);
                    CHECK(verify_conjecture(l, counts));
                }
}

TEST_CASE("footnote identity", "[bell]") {
    // m = 0, empty counts: both sides are 1/4
    std::vector<int> none{};
    CHECK(footnote_lhs(0, none) == Rational(1, 4));
    CHECK(footnote_rhs(0, none) == Rational(1, 4));

    std::vector<int> n2_1{1};  // m=2, n2=1
    CHECK(verify_footnote_identity(2, n2_1));

    std::vector<int> mixed{2, 1};  // m=1, n2=2, n3=1
    CHECK(verify_footnote_identity(1, mixed));

    for (int m = 0; m <= 3; ++m)
        for (int n2 = 0; n2 <= 2; ++n2)
            for (int n3 = 0; n3 <= 2; ++n3) {
                std::vector<int> counts{n2, n3};
                INFO("m=" << m << " n2=" << n2 << " n3=" << n3);
                CHECK(verify_footnote_identity(m, counts));
            }
}
