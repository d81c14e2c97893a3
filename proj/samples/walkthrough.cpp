// A tour of the library: endpoint classification, exact binomial
// remainders, the reordered integer line and regularized sums.

#include <cstdio>

#include "regsum/regsum.hpp"

using namespace regsum;

int main() {
    // 2F1(1/2, 1/2; 1; x) at x = -1.
    const HypergeometricParams params({Rational(1, 2), Rational(1, 2)}, {Rational(1)});
    const ConvergenceVerdict v = classify_endpoint(params, Endpoint::MinusOne);
    std::printf("2F1(1/2,1/2;1;-1): %s (%s), s = %s\n", to_string(v.verdict), v.rationale.c_str(),
                to_string(v.excess).c_str());

    // (1+x)^-3 truncated after x^5 at x = 1, and the exact remainder.
    const RemainderQuery q(3, 5, Rational(1));
    std::printf("partial sum %s + remainder %s = %s\n", to_string(binomial_partial_sum(q)).c_str(),
                to_string(remainder(q)).c_str(), to_string(pow(Rational(2), -3)).c_str());
    std::printf("remainder * (-1)^(k+1) * 2^3 as a polynomial in k: %s\n", remainder_poly_in_k(3).to_string("k").c_str());

    // Z_{-2,1} wraps around the end of the reordered line.
    const GeneratingFunction identity([](std::int64_t z) { return Rational(z * (z - 1), 2); });
    const ZRange range = resolve_range(-2, 1);
    std::printf("sum of u over %s = %s\n", range.description().c_str(), to_string(sum_over_range(identity, -2, 1)).c_str());

    // 1 - 2 + 3 - 4 + ... by three routes.
    const Series s{SequenceSpec::alternating_polynomial(Polynomial{1, 1}), 0};
    const RegularizedValue euler = euler_transform_sum(s);
    const RegularizedValue abel = abel_sum(s);
    const RegularizedValue sym = symbolic_sum(s);
    std::printf("1-2+3-...: Euler %s, Abel %.12f (+/- %.1e), telescoper %s\n", to_string(*euler.exact).c_str(),
                abel.value, abel.error_estimate, to_string(*sym.exact).c_str());

    // lim (-1)^n (2n+1)^3 = 0, symbolically and by the Abel mean.
    const SequenceSpec odd_cubes = SequenceSpec::alternating_polynomial(Polynomial{1, 6, 12, 8});
    std::printf("lim (-1)^n (2n+1)^3: %s, Abel mean %.3e\n", to_string(*generalized_limit(odd_cubes).exact).c_str(),
                abel_mean_limit(odd_cubes).value);
    return 0;
}
