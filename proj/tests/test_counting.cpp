#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nlroth/counting.hpp"
#include "oracles.hpp"

using namespace nlroth;

TEST_CASE("counting params derive M") {
    const CountingParams p = CountingParams::make(1, 9);
    CHECK(p.M == 3);
    const CountingParams p2 = CountingParams::make(2, 9);
    CHECK(p2.M == 2);  // 2*4 <= 9 < 2*9
    for (std::int64_t q = 1; q <= 7; ++q) {
        for (std::int64_t n = q; n <= 200; n += 13) {
            const CountingParams pp = CountingParams::make(q, n);
            CHECK(pp.q * pp.M * pp.M <= pp.N);
            CHECK(pp.q * (pp.M + 1) * (pp.M + 1) > pp.N);
        }
    }
    CHECK_THROWS_AS(CountingParams::make(10, 9), std::invalid_argument);
}

TEST_CASE("counting operator on [9]") {
    const CountingParams p = CountingParams::make(1, 9);
    const BoundedFunction ones = indicator(IntegerSet::full(9));
    const cplx lam = count_operator(p, ones, ones, ones);
    CHECK(lam.real() == doctest::Approx(13.0 / 27.0).epsilon(1e-14));
    CHECK(lam.imag() == 0.0);

    IntegerSet odds(9);
    for (std::int64_t x = 1; x <= 9; x += 2) odds.insert(x);
    const BoundedFunction fo = indicator(odds);
    CHECK(count_operator(p, fo, fo, fo).real() == doctest::Approx(3.0 / 27.0).epsilon(1e-14));
}

TEST_CASE("zero slot annihilates") {
    const CountingParams p = CountingParams::make(2, 50);
    const BoundedFunction zero(50);
    const BoundedFunction ones = indicator(IntegerSet::full(50));
    CHECK(count_operator(p, zero, ones, ones) == cplx{0.0, 0.0});
}

TEST_CASE("pair counts match the naive triple loop") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 60; ++trial) {
        const std::int64_t n = 32 + static_cast<std::int64_t>(rng() % 400);
        const std::int64_t q = 1 + static_cast<std::int64_t>(rng() % 8);
        const CountingParams p = CountingParams::make(q, n);
        const IntegerSet a = oracles::random_set(n, 0.1 + 0.8 * ((trial % 7) / 7.0), rng);
        const std::int64_t fast = count_configurations(a, p);
        const std::int64_t slow = oracles::naive_pair_count(a, p);
        CHECK(fast == slow);
        // Lambda * N * M reproduces the integer count exactly
        const BoundedFunction ind = indicator(a);
        const double lam = count_operator(p, ind, ind, ind).real();
        CHECK(std::llround(lam * static_cast<double>(p.N) * static_cast<double>(p.M)) == fast);
    }
}

TEST_CASE("count operator matches naive path on complex inputs") {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 20; ++trial) {
        const std::int64_t n = 20 + static_cast<std::int64_t>(rng() % 150);
        const std::int64_t q = 1 + static_cast<std::int64_t>(rng() % 4);
        const CountingParams p = CountingParams::make(q, n);
        const BoundedFunction f0 = oracles::random_unit_disc(n, rng);
        const BoundedFunction f1 = oracles::random_unit_disc(n, rng);
        const BoundedFunction f2 = oracles::random_unit_disc(n, rng);
        const cplx fast = count_operator(p, f0, f1, f2);
        const cplx slow = oracles::naive_count_operator(p, f0, f1, f2);
        CHECK(std::abs(fast - slow) < 1e-12);
    }
}

TEST_CASE("multilinearity in each slot") {
    std::mt19937_64 rng(77);
    const std::int64_t n = 64;
    const CountingParams p = CountingParams::make(1, n);
    for (int slot = 0; slot < 3; ++slot) {
        const BoundedFunction u = oracles::random_unit_disc(n, rng);
        const BoundedFunction v = oracles::random_unit_disc(n, rng);
        const BoundedFunction g1 = oracles::random_unit_disc(n, rng);
        const BoundedFunction g2 = oracles::random_unit_disc(n, rng);
        const cplx alpha{0.3, -0.4}, beta{-0.2, 0.6};
        std::vector<cplx> mix(static_cast<std::size_t>(n));
        for (std::int64_t x = 1; x <= n; ++x) {
            mix[static_cast<std::size_t>(x - 1)] = alpha * u(x) + beta * v(x);
        }
        const BoundedFunction w(std::move(mix), 2.0);
        auto arrange = [&](const BoundedFunction& f) {
            const BoundedFunction* fs[3] = {&g1, &g2, nullptr};
            const BoundedFunction* arr[3];
            int gi = 0;
            for (int s = 0; s < 3; ++s) arr[s] = s == slot ? &f : fs[gi++];
            return count_operator(p, *arr[0], *arr[1], *arr[2]);
        };
        const cplx lhs = arrange(w);
        const cplx rhs = alpha * arrange(u) + beta * arrange(v);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("freeness examples") {
    const CountingParams p1 = CountingParams::make(1, 5);
    IntegerSet single(5);
    single.insert(1);
    CHECK(is_configuration_free(single, p1));

    IntegerSet pair(5);
    pair.insert(1);
    pair.insert(2);
    CHECK(!is_configuration_free(pair, p1));  // (1, 2, 2) via y = 1
    const auto w = find_configuration(pair, 1);
    REQUIRE(w.has_value());
    CHECK(w->x == 1);
    CHECK(w->y == 1);

    IntegerSet g6(6);
    g6.insert(1);
    g6.insert(3);
    g6.insert(6);
    const CountingParams p6 = CountingParams::make(1, 6);
    CHECK(is_configuration_free(g6, p6) == oracles::naive_is_free(g6, 1));
}

TEST_CASE("freeness scans beyond the operator range") {
    std::mt19937_64 rng(303);
    for (int trial = 0; trial < 40; ++trial) {
        const std::int64_t n = 16 + static_cast<std::int64_t>(rng() % 120);
        const std::int64_t q = 1 + static_cast<std::int64_t>(rng() % 3);
        const IntegerSet a = oracles::random_set(n, 0.25, rng);
        const CountingParams p = CountingParams::make(q, n);
        CHECK(is_configuration_free(a, p) == oracles::naive_is_free(a, q));
        // Lambda-level zero iff no pair with y in [M]
        const std::int64_t pairs = count_configurations(a, p);
        const BoundedFunction ind = indicator(a);
        const double lam = count_operator(p, ind, ind, ind).real();
        CHECK((lam == 0.0) == (pairs == 0));
    }
}

TEST_CASE("backward configurations are counted separately") {
    IntegerSet s(10);
    s.insert(4);
    s.insert(5);
    s.insert(6);
    const ConfigurationCounts counts = count_configurations_all(s, 1);
    CHECK(counts.forward == 2);   // y=1 collapses to consecutive pairs: (4,5,5), (5,6,6)
    CHECK(counts.backward == 1);  // y=-1: 5, 4, 6

    IntegerSet t(12);
    t.insert(2);
    t.insert(5);
    t.insert(9);
    const ConfigurationCounts ct = count_configurations_all(t, 1);
    CHECK(ct.forward == 0);
    CHECK(ct.backward == 0);

    IntegerSet u(12);
    u.insert(3);
    u.insert(5);
    u.insert(9);  // x=5, z=2: 5, 3, 9
    const ConfigurationCounts cu = count_configurations_all(u, 1);
    CHECK(cu.forward == 0);
    CHECK(cu.backward == 1);
}

TEST_CASE("l1 control bound examples") {
    const std::int64_t n = 30;
    const CountingParams p = CountingParams::make(1, n);
    const BoundedFunction ones = indicator(IntegerSet::full(n));
    CHECK(l1_control_bound(p, ones, ones, ones, 0) == doctest::Approx(1.0));

    IntegerSet point(n);
    point.insert(7);
    const BoundedFunction pm = indicator(point);
    CHECK(l1_control_bound(p, ones, pm, ones, 1) == doctest::Approx(1.0 / n));
}

TEST_CASE("l1 control dominates the operator") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 300; ++trial) {
        const std::int64_t n = 16 + static_cast<std::int64_t>(rng() % 200);
        const std::int64_t q = 1 + static_cast<std::int64_t>(rng() % 5);
        const CountingParams p = CountingParams::make(q, n);
        const BoundedFunction f0 = oracles::random_pm1(n, rng);
        const BoundedFunction f1 = oracles::random_unit_disc(n, rng);
        const BoundedFunction f2 = oracles::random_pm1(n, rng);
        const double lam = std::abs(count_operator(p, f0, f1, f2));
        for (int slot = 0; slot < 3; ++slot) {
            CHECK(lam <= l1_control_bound(p, f0, f1, f2, slot) + 1e-9);
        }
    }
}

TEST_CASE("polynomial operator specializes to the counting operator") {
    const std::int64_t n = 9;
    const PolynomialFamily fam({Polynomial::monomial(1), Polynomial::monomial(2)});
    const BoundedFunction ones = indicator(IntegerSet::full(n));
    const BoundedFunction fs[3] = {ones, ones, ones};
    const cplx poly = polynomial_counting_operator(n, fam, fs);
    CHECK(poly.real() == doctest::Approx(13.0 / 27.0).epsilon(1e-14));

    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const std::int64_t m = 20 + static_cast<std::int64_t>(rng() % 60);
        const CountingParams p = CountingParams::make(1, m);
        const BoundedFunction g0 = oracles::random_unit_disc(m, rng);
        const BoundedFunction g1 = oracles::random_unit_disc(m, rng);
        const BoundedFunction g2 = oracles::random_unit_disc(m, rng);
        const BoundedFunction gs[3] = {g0, g1, g2};
        CHECK(std::abs(polynomial_counting_operator(m, fam, gs) -
                       count_operator(p, g0, g1, g2)) < 1e-12);
    }
}

TEST_CASE("polynomial operator against brute force") {
    // family (y, y^3) at N = 8: y ranges over [2]
    const PolynomialFamily fam({Polynomial::monomial(1), Polynomial::monomial(3)});
    const std::int64_t n = 8;
    const BoundedFunction ones = indicator(IntegerSet::full(n));
    const BoundedFunction fs[3] = {ones, ones, ones};
    std::int64_t count = 0;
    for (std::int64_t x = 1; x <= n; ++x) {
        for (std::int64_t y = 1; y * y * y <= n; ++y) {
            if (x + y <= n && x + y * y * y <= n) ++count;
        }
    }
    CHECK(polynomial_counting_operator(n, fam, fs).real() ==
          doctest::Approx(static_cast<double>(count) / (8.0 * 2.0)).epsilon(1e-14));

    // family (y^2) alone at N = 16: difference-of-squares count
    const PolynomialFamily sarkozy({Polynomial::monomial(2)});
    const std::int64_t m = 16;
    const BoundedFunction ones16 = indicator(IntegerSet::full(m));
    const BoundedFunction gs[2] = {ones16, ones16};
    std::int64_t pairs = 0;
    for (std::int64_t x = 1; x <= m; ++x) {
        for (std::int64_t y = 1; y * y <= m; ++y) {
            if (x + y * y <= m) ++pairs;
        }
    }
    CHECK(pairs == 34);
    CHECK(polynomial_counting_operator(m, sarkozy, gs).real() ==
          doctest::Approx(34.0 / 64.0).epsilon(1e-14));
}

TEST_CASE("polynomial family validation") {
    CHECK_THROWS_AS(PolynomialFamily({}), std::invalid_argument);
    CHECK_THROWS_AS(Polynomial({1, 1}), std::invalid_argument);  // nonzero constant term
    CHECK_THROWS_AS(PolynomialFamily({Polynomial::monomial(2), Polynomial::monomial(1)}),
                    std::invalid_argument);
    CHECK(integer_root(8, 3) == 2);
    CHECK(integer_root(7, 3) == 1);
    CHECK(integer_root(1'000'000'000'000, 2) == 1000000);
}
