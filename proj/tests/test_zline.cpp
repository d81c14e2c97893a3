#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "regsum/zline.hpp"

using namespace regsum;

namespace {

// Position on the line 0, 1, 2, ..., -2, -1 as a pair compared
// lexicographically: the block first, then the ordinary value.
std::pair<int, std::int64_t> rank(std::int64_t v) { return {v == 0 ? 0 : (v > 0 ? 1 : 2), v}; }

GeneratingFunction identity_gf() {
    return GeneratingFunction([](std::int64_t z) { return Rational(z) * (z - 1) / 2; },
                              [](std::int64_t z) { return Rational(z); });
}

// F(z) = (z-1) z (2z-1) / 6 so that f(z) = z^2.
GeneratingFunction square_gf() {
    return GeneratingFunction([](std::int64_t z) { return Rational(z - 1) * z * (2 * z - 1) / 6; },
                              [](std::int64_t z) { return Rational(z) * z; });
}

// The members of Z_{a,b} collected by a scan of [lo, hi] with the
// membership rule written out from the two-case definition.
std::vector<std::int64_t> scan_members(std::int64_t a, std::int64_t b, std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> out;
    for (std::int64_t u = lo; u <= hi; ++u) {
        const bool in = rank(a) <= rank(b) ? (rank(a) <= rank(u) && rank(u) <= rank(b))
                                           : !(rank(b) < rank(u) && rank(u) < rank(a));
        if (in) out.push_back(u);
    }
    std::sort(out.begin(), out.end(), [](auto x, auto y) { return rank(x) < rank(y); });
    return out;
}

} // namespace

TEST_CASE("precedes examples") {
    CHECK(precedes(1, 2));
    CHECK(precedes(2, -2));
    for (std::int64_t n : {-1000, -3, -1, 1, 7, 123456}) {
        CHECK(precedes(0, n));
        CHECK_FALSE(precedes(n, 0));
    }
    CHECK(precedes(-5, -1));
    CHECK_FALSE(precedes(3, 3));
}

TEST_CASE("sorting [-5..5] under precedes") {
    std::vector<std::int64_t> v;
    for (std::int64_t i = -5; i <= 5; ++i) v.push_back(i);
    std::sort(v.begin(), v.end(), ZOrder{});
    CHECK(v == std::vector<std::int64_t>{0, 1, 2, 3, 4, 5, -5, -4, -3, -2, -1});
}

TEST_CASE("precedes is a strict total order on random triples") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::int64_t> small(-20, 20);
    std::uniform_int_distribution<std::int64_t> wide(-1000000000, 1000000000);
    for (int i = 0; i < 10000; ++i) {
        auto draw = [&] { return i % 2 ? small(rng) : wide(rng); };
        const std::int64_t a = draw(), b = draw(), c = draw();
        CHECK_FALSE(precedes(a, a));
        if (precedes(a, b)) CHECK_FALSE(precedes(b, a));
        if (a != b) CHECK(precedes(a, b) != precedes(b, a));
        if (precedes(a, b) && precedes(b, c)) CHECK(precedes(a, c));
        // Agreement with the key -1/a, 0 mapped to minus infinity.
        CHECK(precedes(a, b) == (rank(a) < rank(b)));
    }
}

TEST_CASE("resolve_range examples") {
    const ZRange plain = resolve_range(2, 5);
    REQUIRE(plain.finite());
    CHECK(plain.members() == std::vector<std::int64_t>{2, 3, 4, 5});

    const ZRange wrapped = resolve_range(-2, 1);
    REQUIRE(wrapped.finite());
    CHECK(wrapped.members() == std::vector<std::int64_t>{0, 1, -2, -1});
    CHECK(wrapped.description() == "[0..1] u [-2..-1]");

    const ZRange nonzero = resolve_range(1, -1);
    CHECK_FALSE(nonzero.finite());
    CHECK_FALSE(nonzero.contains(0));
    for (std::int64_t u : {-100, -1, 1, 2, 100}) CHECK(nonzero.contains(u));
    CHECK(nonzero.description() == "all nonzero integers");
    CHECK_THROWS_AS(nonzero.members(), error);

    const ZRange single = resolve_range(-3, -3);
    REQUIRE(single.finite());
    CHECK(single.members() == std::vector<std::int64_t>{-3});
}

TEST_CASE("finiteness follows the signs of the endpoints") {
    for (std::int64_t a = -6; a <= 6; ++a) {
        for (std::int64_t b = -6; b <= 6; ++b) {
            const ZRange r = resolve_range(a, b);
            const bool expected_finite = (a < 0) == (b < 0) ? precedes_or_equal(a, b) : a < 0;
            INFO("a=" << a << " b=" << b);
            CHECK(r.finite() == expected_finite);
            const auto scanned = scan_members(a, b, -60, 60);
            if (r.finite()) {
                CHECK(r.members() == scanned);
            } else {
                for (std::int64_t u = -60; u <= 60; ++u)
                    CHECK(r.contains(u) == std::binary_search(scanned.begin(), scanned.end(), u,
                                                              [](auto x, auto y) { return rank(x) < rank(y); }));
            }
        }
    }
}

TEST_CASE("sum_over_range examples") {
    const auto g = identity_gf();
    CHECK(sum_over_range(g, -2, 1) == -2);
    CHECK(sum_over_range(g, 1, -1) == 0);
    for (std::int64_t c : {-4, 0, 9}) CHECK(sum_over_range(g, c, c) == g.f(c));
    CHECK(sum_over_range(square_gf(), 1, 3) == 14);
}

TEST_CASE("finite range sums match direct sums") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::int64_t> d(-40, 40);
    const std::vector<GeneratingFunction> gfs{
        identity_gf(),
        square_gf(),
        GeneratingFunction([](std::int64_t z) { return Rational(z) * z * (z - 1) * (z - 1) / 4; }),
        GeneratingFunction([](std::int64_t z) { return z % 2 == 0 ? Rational(1, 2) : Rational(-1, 2); }),
    };
    int finite = 0;
    while (finite < 400) {
        const std::int64_t a = d(rng), b = d(rng);
        const ZRange r = resolve_range(a, b);
        if (!r.finite()) continue;
        ++finite;
        for (const auto& g : gfs) {
            INFO("a=" << a << " b=" << b);
            CHECK(sum_over_range(g, a, b) == direct_sum(g, r));
        }
    }
}

TEST_CASE("adjacent finite ranges telescope") {
    const auto g = square_gf();
    for (std::int64_t a = -8; a <= 8; ++a) {
        for (std::int64_t b = -8; b <= 8; ++b) {
            for (std::int64_t c = -8; c <= 8; ++c) {
                if (!resolve_range(a, b).finite() || !resolve_range(b + 1, c).finite()) continue;
                CHECK(sum_over_range(g, a, b) + sum_over_range(g, b + 1, c) == sum_over_range(g, a, c));
            }
        }
    }
}

TEST_CASE("split_sum examples") {
    const auto id = identity_gf();
    CHECK(split_sum(id, {-2, -1}, {0, 1}) == -2);
    CHECK(split_sum(id, {3, 6}, {1, 0}) == sum_over_range(id, 3, 6));
    CHECK(split_sum(square_gf(), {0, 0}, {1, 1}) == 1);
    CHECK_THROWS_AS(split_sum(id, {0, 3}, {3, 5}), error);
    try {
        split_sum(id, {-4, 0}, {-1, 2});
        FAIL("expected an error");
    } catch (const error& e) {
        CHECK(e.code() == errc::overlapping_intervals);
    }
}

TEST_CASE("generating function probes the difference identity") {
    CHECK_THROWS_AS(GeneratingFunction([](std::int64_t z) { return Rational(z) * z; },
                                       [](std::int64_t z) { return Rational(2 * z); }),
                    error);
    // Wrong only at a negative probe point.
    CHECK_THROWS_AS(GeneratingFunction([](std::int64_t z) { return Rational(z); },
                                       [](std::int64_t z) { return Rational(z == -9 ? 2 : 1); }),
                    error);
    CHECK_NOTHROW(identity_gf());
}

TEST_CASE("polynomial telescoper") {
    CHECK(find_polynomial_telescoper(Polynomial{}).is_zero());
    CHECK(find_polynomial_telescoper(Polynomial{1}) == Polynomial{0, 1});
    CHECK(find_polynomial_telescoper(Polynomial{0, 1}) == Polynomial{0, Rational(-1, 2), Rational(1, 2)});
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coef(-9, 9);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Rational> c(static_cast<std::size_t>(trial % 7) + 1);
        for (auto& x : c) x = Rational(coef(rng), 1 + trial % 3);
        const Polynomial p(c);
        const Polynomial q = find_polynomial_telescoper(p);
        CHECK(q(Rational(0)) == 0);
        for (int n = -10; n <= 10; ++n) CHECK(q(Rational(n + 1)) - q(Rational(n)) == p(Rational(n)));
    }
}
