#pragma once

// Generalized hypergeometric series pFq: term coefficients, exact partial
// sums and the radius / unit-circle endpoint convergence rules.

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "regsum/error.hpp"
#include "regsum/exactnum.hpp"

namespace regsum {

namespace detail {

/// n if r == -n for an integer n >= 0.
inline std::optional<std::uint64_t> nonpositive_integer_index(const Rational& r) {
    if (!is_integer(r) || r > 0) return std::nullopt;
    return static_cast<std::uint64_t>(numerator(-r));
}

} // namespace detail

/// Upper parameters a_1..a_p and lower parameters b_1..b_q.
class HypergeometricParams {
public:
    HypergeometricParams(std::vector<Rational> upper, std::vector<Rational> lower)
        : upper_(std::move(upper)), lower_(std::move(lower)) {
        // A lower parameter -s poisons every term past index s unless an
        // upper parameter -r with r < s has already terminated the series.
        auto stop = termination_index();
        for (const auto& b : lower_) {
            auto s = detail::nonpositive_integer_index(b);
            if (s && !(stop && *stop < *s)) {
                throw error(errc::invalid_argument,
                            "lower parameter " + to_string(b) + " makes the series undefined");
            }
        }
    }

    const std::vector<Rational>& upper() const noexcept { return upper_; }
    const std::vector<Rational>& lower() const noexcept { return lower_; }
    std::size_t p() const noexcept { return upper_.size(); }
    std::size_t q() const noexcept { return lower_.size(); }

    /// Smallest r such that some upper parameter equals -r: every term with
    /// index > r vanishes.
    std::optional<std::uint64_t> termination_index() const {
        std::optional<std::uint64_t> best;
        for (const auto& a : upper_) {
            auto r = detail::nonpositive_integer_index(a);
            if (r && (!best || *r < *best)) best = r;
        }
        return best;
    }

    bool terminates() const { return termination_index().has_value(); }

    /// Sum of lower minus sum of upper parameters.
    Rational excess() const {
        Rational s = 0;
        for (const auto& b : lower_) s += b;
        for (const auto& a : upper_) s -= a;
        return s;
    }

private:
    std::vector<Rational> upper_;
    std::vector<Rational> lower_;
};

/// prod (a_i)_n / (prod (b_j)_n * n!).
inline Rational term_coefficient(const HypergeometricParams& params, std::uint64_t n) {
    Rational term = 1;
    bool terminated = false;
    for (std::uint64_t k = 0; k < n; ++k) {
        const Rational kk(k);
        for (const auto& b : params.lower()) {
            if (b + kk == 0 && !terminated) {
                throw error(errc::undefined_term,
                            "lower Pochhammer factor vanishes at index " + std::to_string(k + 1));
            }
        }
        if (terminated) continue;
        for (const auto& a : params.upper()) term *= a + kk;
        if (term == 0) {
            terminated = true;
            continue;
        }
        for (const auto& b : params.lower()) term /= b + kk;
        term /= Rational(k + 1);
    }
    return terminated ? Rational(0) : term;
}

/// sum_{n=0}^{N} c_n x^n, exact.
inline Rational partial_sum(const HypergeometricParams& params, const Rational& x, std::uint64_t N) {
    Rational sum = 0;
    Rational term = 1;
    Rational xn = 1;
    bool terminated = false;
    for (std::uint64_t n = 0;; ++n) {
        if (!terminated) sum += term * xn;
        if (n == N) break;
        const Rational kk(n);
        for (const auto& b : params.lower()) {
            if (b + kk == 0 && !terminated) {
                throw error(errc::undefined_term,
                            "lower Pochhammer factor vanishes at index " + std::to_string(n + 1));
            }
        }
        if (terminated) continue;
        for (const auto& a : params.upper()) term *= a + kk;
        if (term == 0) {
            terminated = true;
            continue;
        }
        for (const auto& b : params.lower()) term /= b + kk;
        term /= Rational(n + 1);
        xn *= x;
    }
    return sum;
}

/// Double-precision partial sum through the term ratio; used for tail
/// diagnostics at N where exact sums become unwieldy.
inline double partial_sum_approx(const HypergeometricParams& params, double x, std::uint64_t N) {
    std::vector<double> a, b;
    for (const auto& v : params.upper()) a.push_back(to_double(v));
    for (const auto& v : params.lower()) b.push_back(to_double(v));
    double sum = 1.0;
    double term = 1.0;
    for (std::uint64_t n = 0; n < N; ++n) {
        const double k = static_cast<double>(n);
        double ratio = x / (k + 1.0);
        for (double ai : a) ratio *= ai + k;
        for (double bj : b) ratio /= bj + k;
        term *= ratio;
        if (term == 0.0) break;
        sum += term;
    }
    return sum;
}

enum class RadiusClass { ConvergesAllX, ConvergesUnitDisk, ConvergesOnlyAtZero };

inline const char* to_string(RadiusClass r) {
    switch (r) {
    case RadiusClass::ConvergesAllX: return "ConvergesAllX";
    case RadiusClass::ConvergesUnitDisk: return "ConvergesUnitDisk";
    case RadiusClass::ConvergesOnlyAtZero: return "ConvergesOnlyAtZero";
    }
    return "?";
}

inline RadiusClass classify_radius(std::size_t p, std::size_t q) {
    if (p <= q) return RadiusClass::ConvergesAllX;
    if (p == q + 1) return RadiusClass::ConvergesUnitDisk;
    return RadiusClass::ConvergesOnlyAtZero;
}

enum class Verdict { AbsolutelyConvergent, ConditionallyConvergent, Divergent };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::AbsolutelyConvergent: return "AbsolutelyConvergent";
    case Verdict::ConditionallyConvergent: return "ConditionallyConvergent";
    case Verdict::Divergent: return "Divergent";
    }
    return "?";
}

enum class Endpoint { PlusOne, MinusOne };

/// Rule-branch tags carried in ConvergenceVerdict::rationale.
namespace rationale {
inline constexpr const char* absolute = "excess>0:absolute";
inline constexpr const char* conditional = "x=-1,-1<excess<=0:conditional";
inline constexpr const char* divergent = "excess<=-1:divergent";
inline constexpr const char* outside_rule = "x=1,-1<excess<=0:divergent-outside-rule";
inline constexpr const char* terminating = "terminating-series";
} // namespace rationale

struct ConvergenceVerdict {
    Verdict verdict;
    std::string rationale;
    Rational excess; ///< sum(lower) - sum(upper)
};

/// Behaviour of a q+1Fq series at x = +1 or x = -1, decided by
/// s = sum(b) - sum(a):
///   s > 0              absolutely convergent
///   x = -1, -1 < s <= 0 conditionally convergent
///   s <= -1            divergent
///   x = +1, -1 < s <= 0 divergent, by comparison with the harmonic series
/// A terminating series is a polynomial and is reported absolutely
/// convergent with the `terminating-series` tag.
inline ConvergenceVerdict classify_endpoint(const HypergeometricParams& params, Endpoint x) {
    if (params.p() != params.q() + 1) {
        throw error(errc::invalid_argument, "endpoint rule needs p = q + 1, got p=" + std::to_string(params.p()) +
                                                ", q=" + std::to_string(params.q()));
    }
    const Rational s = params.excess();
    if (params.terminates()) {
        return {Verdict::AbsolutelyConvergent, rationale::terminating, s};
    }
    if (s > 0) return {Verdict::AbsolutelyConvergent, rationale::absolute, s};
    if (s <= -1) return {Verdict::Divergent, rationale::divergent, s};
    if (x == Endpoint::MinusOne) return {Verdict::ConditionallyConvergent, rationale::conditional, s};
    return {Verdict::Divergent, rationale::outside_rule, s};
}

} // namespace regsum
