#pragma once

// The binomial series (1+x)^a for integer a, its truncation after k+1
// terms, and the exact remainder left by long division of 1 by (1+x)^m.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "regsum/error.hpp"
#include "regsum/exactnum.hpp"

namespace regsum {

/// Truncation of (1+x)^{-m} after the x^k term, for -1 < x <= 1.
class RemainderQuery {
public:
    RemainderQuery(std::int64_t m, std::int64_t k, Rational x) : m_(m), k_(k), x_(std::move(x)) {
        if (m_ < 1) throw error(errc::invalid_argument, "m must be >= 1, got " + std::to_string(m_));
        if (k_ < 0) throw error(errc::invalid_argument, "k must be >= 0, got " + std::to_string(k_));
        if (x_ <= -1 || x_ > 1) {
            throw error(errc::invalid_argument, "x must satisfy -1 < x <= 1, got " + to_string(x_));
        }
    }

    std::int64_t m() const noexcept { return m_; }
    std::int64_t k() const noexcept { return k_; }
    const Rational& x() const noexcept { return x_; }

private:
    std::int64_t m_;
    std::int64_t k_;
    Rational x_;
};

/// C(m+n-1, n) as a polynomial in n: prod_{i=1}^{m-1} (n+i) / (m-1)!.
/// (1+x)^{-m} = sum_n (-1)^n c_m(n) x^n.
inline Polynomial expansion_coefficient_polynomial(std::int64_t m) {
    if (m < 1) throw error(errc::invalid_argument, "m must be >= 1");
    Polynomial p = Polynomial::constant(1);
    for (std::int64_t i = 1; i < m; ++i) {
        p = p * Polynomial({Rational(i), Rational(1)});
    }
    return p * make_rational(Integer(1), factorial(static_cast<std::uint64_t>(m - 1)));
}

/// sum_{n=0}^{k} (-1)^n C(m+n-1, n) x^n
inline Rational binomial_partial_sum(const RemainderQuery& q) {
    Rational sum = 0;
    Rational coeff = 1; // C(m+n-1, n)
    Rational xn = 1;
    for (std::int64_t n = 0; n <= q.k(); ++n) {
        sum += (n % 2 == 0 ? coeff : -coeff) * xn;
        coeff = coeff * Rational(q.m() + n) / Rational(n + 1);
        xn *= q.x();
    }
    return sum;
}

/// ((-1)^{k+1} / (1+x)^m) * sum_{u=0}^{m-1} C(k+u, u) C(m+k, m-1-u) x^{k+1+u}
inline Rational remainder(const RemainderQuery& q) {
    const std::int64_t m = q.m();
    const std::int64_t k = q.k();
    Rational sum = 0;
    Rational xp = pow(q.x(), k + 1);
    for (std::int64_t u = 0; u < m; ++u) {
        sum += generalized_binomial(Rational(k + u), static_cast<std::uint64_t>(u)) *
               generalized_binomial(Rational(m + k), static_cast<std::uint64_t>(m - 1 - u)) * xp;
        xp *= q.x();
    }
    sum /= pow(Rational(1) + q.x(), m);
    return k % 2 == 0 ? -sum : sum;
}

/// partial sum + remainder == (1+x)^{-m}, compared exactly.
inline bool remainder_identity_check(const RemainderQuery& q) {
    return binomial_partial_sum(q) + remainder(q) == pow(Rational(1) + q.x(), -q.m());
}

/// P_m with remainder(m, k, 1) = (-1)^{k+1} P_m(k) / 2^m. Interpolated
/// through k = 0..m-1 and checked at k = m..2m-1.
inline Polynomial remainder_poly_in_k(std::int64_t m) {
    if (m < 1) throw error(errc::invalid_argument, "m must be >= 1");
    const Rational scale = pow(Rational(2), m);
    auto sample = [&](std::int64_t k) {
        Rational r = remainder(RemainderQuery(m, k, Rational(1))) * scale;
        return k % 2 == 0 ? -r : r;
    };
    std::vector<std::pair<Rational, Rational>> nodes;
    for (std::int64_t k = 0; k < m; ++k) nodes.emplace_back(Rational(k), sample(k));
    Polynomial p = interpolate(nodes);
    for (std::int64_t k = m; k < 2 * m; ++k) {
        if (p(Rational(k)) != sample(k)) {
            throw error(errc::interpolation_mismatch, "m=" + std::to_string(m) + " at k=" + std::to_string(k));
        }
    }
    return p;
}

/// sum_{n=0}^{N} C(a, n) x^n for any integer exponent a.
inline Rational binomial_series_partial_sum(std::int64_t a, const Rational& x, std::int64_t N) {
    Rational sum = 0;
    Rational xn = 1;
    for (std::int64_t n = 0; n <= N; ++n) {
        Rational c = generalized_binomial(Rational(a), static_cast<std::uint64_t>(n));
        if (c == 0 && a >= 0) break;
        sum += c * xn;
        xn *= x;
    }
    return sum;
}

/// (1+x)^a, the value of 2F1(-a, b; b; -x) for integer a != 0 on -1 < x <= 1.
inline Rational endpoint_value(std::int64_t a, const Rational& x) {
    if (a == 0) throw error(errc::invalid_argument, "exponent a must be nonzero");
    if (x <= -1 || x > 1) {
        throw error(errc::invalid_argument, "x must satisfy -1 < x <= 1, got " + to_string(x));
    }
    return pow(Rational(1) + x, a);
}

} // namespace regsum
