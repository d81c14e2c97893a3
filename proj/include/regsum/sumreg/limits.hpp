#pragma once

// Generalized limits of sequences and the summation rules built on them.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "regsum/error.hpp"
#include "regsum/exactnum.hpp"
#include "regsum/real.hpp"
#include "regsum/sumreg/oracles.hpp"
#include "regsum/sumreg/sequence.hpp"
#include "regsum/sumreg/telescoper.hpp"

namespace regsum {

/// Generalized limits L_k of (-1)^n n^k for k = 0..max_power, derived the
/// symbolic way: L_0 = 0 from the even-shift rule with mu = 1, and
/// lim (-1)^n (2n+1)^k = 0 expanded binomially gives
///   sum_{j=0}^{k} C(k,j) 2^j L_j = 0,
/// which is solved for L_k by induction on k.
inline std::vector<Rational> alternating_power_limits(int max_power) {
    std::vector<Rational> L;
    if (max_power < 0) return L;
    L.push_back(0);
    for (int k = 1; k <= max_power; ++k) {
        Rational acc = 0;
        for (int j = 0; j < k; ++j) {
            acc += generalized_binomial(Rational(k), static_cast<std::uint64_t>(j)) * pow(Rational(2), j) * L[static_cast<std::size_t>(j)];
        }
        L.push_back(-acc / pow(Rational(2), k));
    }
    return L;
}

/// lim (-1)^n p(n) by linearity over the monomial limits.
inline Rational alternating_polynomial_limit(const Polynomial& p) {
    const auto L = alternating_power_limits(p.degree());
    Rational sum = 0;
    for (std::size_t k = 0; k < L.size(); ++k) sum += p.coefficient(k) * L[k];
    return sum;
}

/// Alternating polynomials take the exact symbolic path; every other
/// family goes to the Abel-mean oracle.
inline RegularizedValue generalized_limit(const SequenceSpec& sequence, const SummationOptions& opts = {},
                                          std::optional<double> tolerance = std::nullopt) {
    if (const auto* ap = std::get_if<SequenceSpec::AlternatingPolynomial>(&sequence.kind())) {
        return RegularizedValue::from_exact(alternating_polynomial_limit(ap->p), Method::SymbolicTelescoper);
    }
    return abel_mean_limit(sequence, opts, tolerance);
}

/// Closed-form sums through a telescoper F: sum_{u >= start} f(u) = lim F - F(start).
///   alternating polynomial: F(n) = (-1)^n q(n), exact;
///   alternating trig family (start 1): the trig telescoper, with lim F taken
///   from the Abel-mean oracle.
inline RegularizedValue symbolic_sum(const Series& series, const SummationOptions& opts = {},
                                     std::optional<double> tolerance = std::nullopt) {
    const SequenceSpec& spec = series.terms;
    if (const auto* ap = std::get_if<SequenceSpec::AlternatingPolynomial>(&spec.kind())) {
        // F(n) = (-1)^n q(n)
        const SequenceSpec F = SequenceSpec::alternating_polynomial(find_alternating_telescoper(ap->p));
        const Rational limit = *generalized_limit(F, opts).exact;
        return RegularizedValue::from_exact(limit - *F.exact_at(series.start), Method::SymbolicTelescoper);
    }
    if (const auto* tr = std::get_if<SequenceSpec::AlternatingTrigPoly>(&spec.kind())) {
        const TrigTelescoper tel = find_trig_telescoper(tr->m, to_double(tr->theta));
        const SequenceSpec F = SequenceSpec::numeric(
            [tel](std::int64_t n) {
                // Real-precision evaluation of the same closed form.
                const Real y = Real(n) - Real(1) / 2;
                const Real th(tel.theta);
                const Real s = sin(y * th);
                const Real c = cos(y * th);
                Real acc = 0;
                for (int u = 1; u <= tel.m; ++u) acc += Real(tel.beta[static_cast<std::size_t>(u - 1)]) * pow(y, 2 * u - 1) * s;
                for (int u = 0; u < tel.m; ++u) acc += Real(tel.beta_bar[static_cast<std::size_t>(u)]) * pow(y, 2 * u) * c;
                return n % 2 == 0 ? acc : Real(-acc);
            },
            "trig telescoper");
        RegularizedValue lim = abel_mean_limit(F, opts, tolerance.value_or(opts.series_tolerance));
        RegularizedValue v;
        v.value = lim.value - static_cast<double>(tel(series.start));
        v.method = Method::SymbolicTelescoper;
        v.error_estimate = lim.error_estimate + 1e-12;
        return v;
    }
    throw error(errc::invalid_argument, "no closed-form telescoper for " + spec.describe());
}

inline constexpr std::int64_t symmetry_probe_lo = -16;
inline constexpr std::int64_t symmetry_probe_hi = 15;

/// Sum over u >= 1 of a term f obeying f(-x) = f(x - eps*t), eps in {0, +1, -1}:
///   (eps/2) sum_{u=delta}^{t-1+delta} (lim_n f(n - eps u) - f(-eps u)) - f(0)/2,
/// with delta = (1 - eps)/2. For eps = 0 this is -f(0)/2.
inline RegularizedValue reflection_sum(const SequenceSpec& f, int epsilon, std::int64_t t, const SummationOptions& opts = {},
                                       std::optional<double> tolerance = std::nullopt) {
    if (epsilon < -1 || epsilon > 1) throw error(errc::invalid_argument, "epsilon must be 0, +1 or -1");
    if (t < 1) throw error(errc::invalid_argument, "t must be >= 1");

    const bool exact = f.has_exact();
    for (std::int64_t x = symmetry_probe_lo; x <= symmetry_probe_hi; ++x) {
        const std::int64_t mirrored = x - epsilon * t;
        bool ok;
        if (exact) {
            ok = *f.exact_at(-x) == *f.exact_at(mirrored);
        } else {
            const Real a = f.numeric_at(-x);
            const Real b = f.numeric_at(mirrored);
            ok = abs(a - b) <= Real("1e-40") * (1 + abs(a));
        }
        if (!ok) throw error(errc::symmetry_violated, "x=" + std::to_string(x));
    }

    if (epsilon == 0) {
        if (exact) return RegularizedValue::from_exact(-*f.exact_at(0) / 2, Method::ReflectionFormula);
        RegularizedValue v;
        v.value = to_double(-f.numeric_at(0) / 2);
        v.method = Method::ReflectionFormula;
        v.error_estimate = 1e-30;
        return v;
    }

    const std::int64_t delta = (1 - epsilon) / 2;
    bool all_exact = exact;
    Rational exact_acc = 0;
    double value_acc = 0.0;
    double err = 0.0;
    for (std::int64_t u = delta; u <= t - 1 + delta; ++u) {
        const RegularizedValue lim = generalized_limit(f.shifted(-epsilon * u), opts, tolerance);
        if (lim.exact && exact) {
            exact_acc += *lim.exact - *f.exact_at(-epsilon * u);
        } else {
            all_exact = false;
        }
        value_acc += lim.value - to_double(f.numeric_at(-epsilon * u));
        err += lim.error_estimate;
    }
    if (all_exact) {
        return RegularizedValue::from_exact(Rational(epsilon) / 2 * exact_acc - *f.exact_at(0) / 2,
                                            Method::ReflectionFormula);
    }
    RegularizedValue v;
    v.value = epsilon * value_acc / 2 - to_double(f.numeric_at(0)) / 2;
    v.method = Method::ReflectionFormula;
    v.error_estimate = err / 2;
    return v;
}

/// True when the Abel mean of n -> (-1)^n sum_{u=delta}^{t-1+delta} mu(n + eps t/2 - eps u)
/// is within `tolerance` of zero.
inline bool verify_even_alternating_limit(const std::function<Real(const Real&)>& mu, int t, int epsilon,
                                          double tolerance, const SummationOptions& opts = {}) {
    const SequenceSpec seq = SequenceSpec::even_elementary(mu, t, epsilon);
    const RegularizedValue v = abel_mean_limit(seq, opts, tolerance);
    return std::abs(v.value) <= tolerance;
}

} // namespace regsum
