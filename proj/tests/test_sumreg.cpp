#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "regsum/binomial_endpoint.hpp"
#include "regsum/sumreg.hpp"

using namespace regsum;

namespace {

Series alt(Polynomial p, std::int64_t start = 0) { return {SequenceSpec::alternating_polynomial(std::move(p)), start}; }

// Bernoulli numbers B_0..B_n from sum_{j=0}^{k} C(k+1, j) B_j = 0.
std::vector<Rational> bernoulli(int n) {
    std::vector<Rational> B{Rational(1)};
    for (int k = 1; k <= n; ++k) {
        Rational acc = 0;
        Rational c = 1; // C(k+1, j)
        for (int j = 0; j < k; ++j) {
            acc += c * B[static_cast<std::size_t>(j)];
            c = c * (k + 1 - j) / (j + 1);
        }
        B.push_back(-acc / (k + 1));
    }
    return B;
}

// Abel value of sum_{n>=0} (-1)^n p(n) through the eta function:
// sum_{n>=0} (-1)^n n^k = -(2^{k+1} - 1) B_{k+1} / (k+1) for k >= 1, and 1/2 for k = 0.
Rational eta_oracle(const Polynomial& p) {
    const int d = p.degree();
    if (d < 0) return 0;
    const auto B = bernoulli(d + 1);
    Rational sum = p.coefficient(0) / 2;
    for (int k = 1; k <= d; ++k) {
        const Rational eta = (pow(Rational(2), k + 1) - 1) * B[static_cast<std::size_t>(k + 1)] / (k + 1);
        sum -= p.coefficient(static_cast<std::size_t>(k)) * eta;
    }
    return sum;
}

Polynomial random_polynomial(std::mt19937_64& rng, int max_degree) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_int_distribution<int> coef(-9, 9);
    std::vector<Rational> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& x : c) x = coef(rng);
    if (c.back() == 0) c.back() = 1;
    return Polynomial(std::move(c));
}

errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return errc::invalid_argument;
}

} // namespace

TEST_CASE("eta oracle sanity") {
    CHECK(eta_oracle(Polynomial{1}) == Rational(1, 2));
    CHECK(eta_oracle(Polynomial{1, 1}) == Rational(1, 4));
    CHECK(eta_oracle(Polynomial{0, 0, 1}) == 0);
}

TEST_CASE("Abel sum examples") {
    const auto grandi = abel_sum(alt(Polynomial{1}));
    CHECK(std::abs(grandi.value - 0.5) <= 1e-8);
    CHECK(grandi.method == Method::AbelSum);
    const auto second = abel_sum(alt(Polynomial{1, 1}));
    CHECK(std::abs(second.value - 0.25) <= 1e-8);
    const auto geometric = abel_sum({SequenceSpec::exact([](std::int64_t n) { return pow(Rational(1, 2), n); }), 0});
    CHECK(std::abs(geometric.value - 2.0) <= 1e-8);
}

TEST_CASE("Abel mean limit examples") {
    CHECK(std::abs(abel_mean_limit(SequenceSpec::alternating_polynomial(Polynomial{1})).value) <= 1e-6);
    const auto conv = abel_mean_limit(SequenceSpec::exact([](std::int64_t n) { return 1 - Rational(1, n); }));
    CHECK(std::abs(conv.value - 1.0) <= 1e-6);
    CHECK(conv.method == Method::AbelMean);
    CHECK(std::abs(abel_mean_limit(SequenceSpec::alternating_polynomial(Polynomial{1, 2})).value) <= 1e-6);
}

TEST_CASE("Euler transform examples") {
    const auto one = euler_transform_sum(alt(Polynomial{1}));
    REQUIRE(one.exact);
    CHECK(*one.exact == Rational(1, 2));
    CHECK(one.method == Method::EulerTransform);
    CHECK(*euler_transform_sum(alt(Polynomial{1, 1})).exact == Rational(1, 4));
    CHECK(*euler_transform_sum(alt(expansion_coefficient_polynomial(3))).exact == Rational(1, 8));
    const auto harmonic = euler_transform_sum({SequenceSpec::exact([](std::int64_t n) {
                                                   return n % 2 ? Rational(-1, n + 1) : Rational(1, n + 1);
                                               }),
                                               0});
    CHECK(std::abs(harmonic.value - std::log(2.0)) <= harmonic.error_estimate + 1e-15);
}

TEST_CASE("Cesaro examples") {
    const auto grandi = cesaro_sum(alt(Polynomial{1}));
    CHECK(std::abs(grandi.value - 0.5) <= 1e-8);
    const auto geometric = cesaro_sum({SequenceSpec::exact([](std::int64_t n) { return pow(Rational(-1, 3), n); }), 0});
    CHECK(std::abs(geometric.value - 0.75) <= 1e-8);
    CHECK(code_of([] { cesaro_sum(alt(Polynomial{1, 1})); }) == errc::cesaro_not_settling);
}

TEST_CASE("exact Euler values match the eta oracle") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 40; ++i) {
        const Polynomial p = random_polynomial(rng, 6);
        INFO(p.to_string());
        CHECK(*euler_transform_sum(alt(p)).exact == eta_oracle(p));
    }
}

TEST_CASE("oracles agree on alternating polynomial series") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 12; ++i) {
        const Polynomial p = random_polynomial(rng, 6);
        INFO(p.to_string());
        const double euler = to_double(*euler_transform_sum(alt(p)).exact);
        const auto abel = abel_sum(alt(p));
        CHECK(std::abs(abel.value - euler) <= 1e-8);
        try {
            const auto ces = cesaro_sum(alt(p));
            CHECK(std::abs(ces.value - euler) <= 1e-8);
        } catch (const error& e) {
            CHECK(e.code() == errc::cesaro_not_settling);
        }
    }
}

TEST_CASE("regular methods return classical sums of convergent series") {
    const std::vector<std::pair<Series, double>> battery{
        {{SequenceSpec::exact([](std::int64_t n) { return pow(Rational(1, 2), n); }), 0}, 2.0},
        {{SequenceSpec::exact([](std::int64_t n) { return pow(Rational(-1, 3), n); }), 0}, 0.75},
        {{SequenceSpec::exact([](std::int64_t n) { return Rational(1, n * n); }), 1}, M_PI * M_PI / 6},
        {{SequenceSpec::exact([](std::int64_t n) { return n % 2 ? Rational(1, n) : Rational(-1, n); }), 1}, std::log(2.0)},
    };
    for (const auto& [series, expected] : battery) {
        int settled = 0;
        for (int method = 0; method < 3; ++method) {
            try {
                const RegularizedValue v = method == 0   ? abel_sum(series)
                                           : method == 1 ? euler_transform_sum(series)
                                                         : cesaro_sum(series);
                ++settled;
                INFO("method " << to_string(v.method) << " value " << v.value << " est " << v.error_estimate);
                CHECK(std::abs(v.value - expected) <= v.error_estimate);
            } catch (const error&) {
            }
        }
        CHECK(settled >= 1);
    }
}

TEST_CASE("Abel sums are linear") {
    const Polynomial f{1, 2, -1};
    const Polynomial g{0, -3, 0, 1};
    const auto sf = abel_sum(alt(f));
    const auto sg = abel_sum(alt(g));
    const auto sum = abel_sum(alt(f + g));
    CHECK(std::abs(sum.value - (sf.value + sg.value)) <= sum.error_estimate + sf.error_estimate + sg.error_estimate);
    const auto scaled = abel_sum(alt(f * Polynomial{Rational(-7, 3)}));
    CHECK(std::abs(scaled.value + 7.0 / 3 * sf.value) <= scaled.error_estimate + 7.0 / 3 * sf.error_estimate);
}

TEST_CASE("generalized limit examples") {
    const auto cubic = generalized_limit(SequenceSpec::alternating_polynomial(Polynomial{2, -1, 0, 5}));
    REQUIRE(cubic.exact);
    CHECK(*cubic.exact == 0);
    CHECK(cubic.method == Method::SymbolicTelescoper);
    for (std::size_t k = 0; k <= 6; ++k) {
        const auto v = generalized_limit(SequenceSpec::alternating_polynomial(Polynomial::monomial(1, k)));
        CHECK(*v.exact == 0);
    }
    const auto constant = generalized_limit(SequenceSpec::exact([](std::int64_t) { return Rational(7, 3); }));
    CHECK(std::abs(constant.value - 7.0 / 3) <= 1e-6);
}

TEST_CASE("alternating power limits all vanish") {
    for (const auto& L : alternating_power_limits(12)) CHECK(L == 0);
    CHECK(alternating_power_limits(-1).empty());
}

TEST_CASE("generalized limits of alternating polynomials on both paths") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 10; ++i) {
        const Polynomial p = random_polynomial(rng, 6);
        INFO(p.to_string());
        const auto seq = SequenceSpec::alternating_polynomial(p);
        CHECK(*generalized_limit(seq).exact == 0);
        CHECK(std::abs(abel_mean_limit(seq).value) <= 1e-6);
    }
}

TEST_CASE("alternating telescoper") {
    CHECK(find_alternating_telescoper(Polynomial{1}) == Polynomial{Rational(-1, 2)});
    CHECK(find_alternating_telescoper(Polynomial{0, 1}) == Polynomial{Rational(1, 4), Rational(-1, 2)});
    std::mt19937_64 rng(8);
    for (int i = 0; i < 20; ++i) {
        const Polynomial p = random_polynomial(rng, 8);
        const Polynomial q = find_alternating_telescoper(p);
        CHECK(q.degree() == p.degree());
        for (std::int64_t n = 0; n <= 9; ++n) {
            const Rational F1 = (n % 2 ? 1 : -1) * q(Rational(n + 1));
            const Rational F0 = (n % 2 ? -1 : 1) * q(Rational(n));
            CHECK(F1 - F0 == (n % 2 ? Rational(-p(Rational(n))) : p(Rational(n))));
        }
    }
}

TEST_CASE("trig telescoper residuals") {
    for (int m : {1, 2, 3}) {
        for (double theta : {M_PI / 2, 1.0, -2.0, 0.3}) {
            const TrigTelescoper t = find_trig_telescoper(m, theta);
            for (std::int64_t n = 0; n < 16; ++n) {
                const double lhs = static_cast<double>(t(n + 1) - t(n));
                const double rhs = std::pow(n, 2 * m - 1) * std::sin(n * theta) * (n % 2 ? 1 : -1);
                CHECK(std::abs(lhs - rhs) <= 1e-10 * (1 + std::abs(rhs)));
            }
        }
    }
    CHECK_THROWS_AS(find_trig_telescoper(1, 0.0), error);
    CHECK_THROWS_AS(find_trig_telescoper(1, 4.0), error);
    CHECK_THROWS_AS(find_trig_telescoper(0, 1.0), error);
}

TEST_CASE("alternating odd-power sine series sum to zero") {
    for (int m : {1, 2}) {
        for (double theta : {M_PI / 2, 1.0, -2.0}) {
            const Real th = theta == M_PI / 2 ? Real(pi_real() / 2) : Real(theta);
            const Series s{SequenceSpec::alternating_trig(m, th), 1};
            INFO("m=" << m << " theta=" << theta);
            CHECK(std::abs(abel_sum(s, {}, 1e-8).value) <= 1e-6);
            CHECK(std::abs(symbolic_sum(s).value) <= 1e-6);
        }
    }
    // 1 - 3 + 5 - 7 + ... as an alternating polynomial.
    const auto odd = abel_sum(alt(Polynomial{1, 2}));
    CHECK(std::abs(odd.value) <= 1e-8);
}

TEST_CASE("symbolic sums of alternating polynomials are exact") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 20; ++i) {
        const Polynomial p = random_polynomial(rng, 6);
        CHECK(*symbolic_sum(alt(p)).exact == eta_oracle(p));
    }
    // Starting later drops the leading terms.
    CHECK(*symbolic_sum(alt(Polynomial{1, 1}, 1)).exact == Rational(1, 4) - 1);
}

TEST_CASE("reflection sum examples") {
    const auto one = SequenceSpec::exact([](std::int64_t) { return Rational(1); });
    const auto even = reflection_sum(one, 0, 1);
    REQUIRE(even.exact);
    CHECK(*even.exact == Rational(-1, 2));
    CHECK(even.method == Method::ReflectionFormula);

    const auto f = SequenceSpec::alternating_polynomial(Polynomial{-1, 2});
    const auto v = reflection_sum(f, -1, 1);
    REQUIRE(v.exact);
    CHECK(*v.exact == 0);
    const auto abel = abel_sum({f, 1});
    CHECK(std::abs(abel.value) <= 1e-8);
}

TEST_CASE("reflection sum agrees with the Abel oracle") {
    struct Case {
        SequenceSpec f;
        int epsilon;
        std::int64_t t;
    };
    const std::vector<Case> battery{
        {SequenceSpec::alternating_polynomial(Polynomial{0, 0, 1}), 0, 1},
        {SequenceSpec::alternating_polynomial(Polynomial{1, 0, 1}), 0, 1},
        {SequenceSpec::alternating_polynomial(Polynomial{-1, 2}), -1, 1},
        // (-1)^x (2x-1)^3
        {SequenceSpec::alternating_polynomial(Polynomial{-1, 6, -12, 8}), -1, 1},
        // (-1)^x (2x+1) satisfies f(-x) = f(x-1)
        {SequenceSpec::alternating_polynomial(Polynomial{1, 2}), 1, 1},
        // (-1)^x x(x-2) is symmetric about 1: f(-x) = f(x+2)
        {SequenceSpec::alternating_polynomial(Polynomial{0, -2, 1}), -1, 2},
    };
    for (const auto& c : battery) {
        INFO(c.f.describe() << " eps=" << c.epsilon << " t=" << c.t);
        const auto r = reflection_sum(c.f, c.epsilon, c.t);
        const auto a = abel_sum({c.f, 1});
        CHECK(std::abs(r.value - a.value) <= 1e-8);
    }
}

TEST_CASE("reflection sum with even-symmetric terms is -f(0)/2") {
    const std::vector<std::pair<SequenceSpec, double>> cases{
        {SequenceSpec::exact([](std::int64_t) { return Rational(1); }), 1.0},
        {SequenceSpec::exact([](std::int64_t u) { return Rational(u * u); }), 0.0},
        {SequenceSpec::exact([](std::int64_t u) { return Rational(u * u + 3); }), 3.0},
        {SequenceSpec::exact([](std::int64_t u) { return Rational(u % 2 ? -1 : 1); }), 1.0},
        {SequenceSpec::numeric([](std::int64_t u) { return Real(cos(Real(u))); }), 1.0},
    };
    for (const auto& [f, f0] : cases) {
        CHECK(reflection_sum(f, 0, 1).value == -f0 / 2);
    }
    // Abel cross-checks where the series is Abel summable.
    CHECK(std::abs(abel_sum({cases[3].first, 1}).value + 0.5) <= 1e-8);
    CHECK(std::abs(abel_sum({cases[4].first, 1}).value + 0.5) <= 1e-8);
}

TEST_CASE("reflection sum rejects asymmetric terms") {
    const auto odd = SequenceSpec::exact([](std::int64_t u) { return Rational(u); });
    CHECK(code_of([&] { reflection_sum(odd, 0, 1); }) == errc::symmetry_violated);
    CHECK(code_of([&] { reflection_sum(SequenceSpec::alternating_polynomial(Polynomial{-1, 2}), 1, 1); }) ==
          errc::symmetry_violated);
    CHECK_THROWS_AS(reflection_sum(odd, 2, 1), error);
    CHECK_THROWS_AS(reflection_sum(odd, 0, 0), error);
}

TEST_CASE("even alternating limits vanish") {
    for (int m = 1; m <= 3; ++m) {
        auto mu = [m](const Real& x) { return Real(pow(2 * x, 2 * m)); };
        CHECK(verify_even_alternating_limit(mu, 1, 1, 1e-6));
    }
    CHECK(verify_even_alternating_limit([](const Real&) { return Real(1); }, 1, 1, 1e-6));
    CHECK(verify_even_alternating_limit([](const Real& x) { return Real(x * x + 1); }, 2, -1, 1e-6));
    CHECK_THROWS_AS(verify_even_alternating_limit([](const Real& x) { return x; }, 1, 1, 1e-6), error);
}

TEST_CASE("the second alternating series shifted by one term") {
    // sum over n >= 1 of (-1)^n (n+1): 1/4 minus the n = 0 term.
    const auto v = abel_sum(alt(Polynomial{1, 1}, 1));
    CHECK(std::abs(v.value - (0.25 - 1.0)) <= 1e-8);
}
