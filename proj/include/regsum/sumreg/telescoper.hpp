#pragma once

// Closed-form generating functions F with F(n+1) - F(n) equal to an
// alternating polynomial or alternating trigonometric-polynomial term.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "regsum/error.hpp"
#include "regsum/exactnum.hpp"

namespace regsum {

/// q with -q(n+1) - q(n) = p(n), so that F(n) = (-1)^n q(n) satisfies
/// F(n+1) - F(n) = (-1)^n p(n). deg q = deg p; the coefficient system is
/// triangular and solved from the top degree down.
inline Polynomial find_alternating_telescoper(const Polynomial& p) {
    const int d = p.degree();
    if (d < 0) return {};
    std::vector<Rational> q(static_cast<std::size_t>(d) + 1);
    // Coefficient of n^i in q(n+1) + q(n) is 2 q_i + sum_{j>i} C(j,i) q_j.
    for (int i = d; i >= 0; --i) {
        Rational acc = -p.coefficient(static_cast<std::size_t>(i));
        for (int j = i + 1; j <= d; ++j) {
            acc -= generalized_binomial(Rational(j), static_cast<std::uint64_t>(i)) * q[static_cast<std::size_t>(j)];
        }
        q[static_cast<std::size_t>(i)] = acc / 2;
    }
    Polynomial result(std::move(q));
    for (std::int64_t n = 0; n < 2 * d + 4; ++n) {
        const Rational lhs = -result(Rational(n + 1)) - result(Rational(n));
        if (lhs != p(Rational(n))) {
            throw error(errc::interpolation_mismatch, "alternating telescoper fails at n=" + std::to_string(n));
        }
    }
    return result;
}

/// F(n) = (-1)^n ( sum_{u=1}^{m} beta_u y^{2u-1} sin(y theta)
///               + sum_{u=0}^{m-1} beta_bar_u y^{2u} cos(y theta) ),  y = n - 1/2,
/// chosen so that F(n+1) - F(n) = (-1)^{n-1} n^{2m-1} sin(n theta).
struct TrigTelescoper {
    int m = 1;
    double theta = 0.0;
    std::vector<long double> beta;     ///< beta_1..beta_m
    std::vector<long double> beta_bar; ///< beta_bar_0..beta_bar_{m-1}

    long double operator()(std::int64_t n) const {
        const long double y = static_cast<long double>(n) - 0.5L;
        const long double s = std::sin(y * theta);
        const long double c = std::cos(y * theta);
        long double acc = 0;
        for (int u = 1; u <= m; ++u) acc += beta[static_cast<std::size_t>(u - 1)] * std::pow(y, 2 * u - 1) * s;
        for (int u = 0; u < m; ++u) acc += beta_bar[static_cast<std::size_t>(u)] * std::pow(y, 2 * u) * c;
        return n % 2 == 0 ? acc : -acc;
    }

    /// The term the telescoper is built for.
    long double target(std::int64_t n) const {
        const long double v = std::pow(static_cast<long double>(n), 2 * m - 1) * std::sin(static_cast<long double>(n) * theta);
        return n % 2 == 0 ? -v : v;
    }

    long double residual(std::int64_t n) const { return ((*this)(n + 1) - (*this)(n)) - target(n); }
};

inline constexpr int trig_probe_count = 16;

inline long double to_long_double(const Rational& r) { return r.convert_to<long double>(); }
inline constexpr double trig_residual_tolerance = 1e-10;

/// Writing A(y) for the bracket in F, the requirement is
/// A(n + 1/2) + A(n - 1/2) = n^{2m-1} sin(n theta). Expanding the shifted
/// sines and cosines and matching the sin(n theta) (odd powers of n) and
/// cos(n theta) (even powers) parts gives a 2m x 2m linear system.
inline TrigTelescoper find_trig_telescoper(int m, double theta) {
    constexpr double pi = 3.14159265358979323846;
    if (m < 1) throw error(errc::invalid_argument, "m must be >= 1");
    if (theta == 0.0 || !(std::abs(theta) < pi)) {
        throw error(errc::invalid_argument, "theta must be nonzero and inside (-pi, pi)");
    }
    using MatrixL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    using VectorL = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
    const long double c = std::cos(static_cast<long double>(theta) / 2);
    const long double s = std::sin(static_cast<long double>(theta) / 2);
    const Rational half(1, 2);
    const auto n = static_cast<Eigen::Index>(2 * m);
    MatrixL A = MatrixL::Zero(n, n);
    VectorL rhs = VectorL::Zero(n);

    // Rows 0..m-1: sin-part coefficient of n^{2i+1}; rows m..2m-1:
    // cos-part coefficient of n^{2i}.
    auto sin_row = [&](std::size_t power) { return static_cast<Eigen::Index>((power - 1) / 2); };
    auto cos_row = [&](std::size_t power) { return static_cast<Eigen::Index>(m) + static_cast<Eigen::Index>(power / 2); };

    for (int u = 1; u <= m; ++u) {
        const Polynomial mono = Polynomial::monomial(1, static_cast<std::size_t>(2 * u - 1));
        const Polynomial plus = mono.shifted(half);
        const Polynomial minus = mono.shifted(-half);
        const Polynomial sum = plus + minus;  // odd
        const Polynomial diff = plus - minus; // even
        const auto col = static_cast<Eigen::Index>(u - 1);
        for (std::size_t k = 1; k < sum.coefficients().size(); k += 2) A(sin_row(k), col) += c * to_long_double(sum.coefficient(k));
        for (std::size_t k = 0; k < diff.coefficients().size(); k += 2) A(cos_row(k), col) += s * to_long_double(diff.coefficient(k));
    }
    for (int u = 0; u < m; ++u) {
        const Polynomial mono = Polynomial::monomial(1, static_cast<std::size_t>(2 * u));
        const Polynomial plus = mono.shifted(half);
        const Polynomial minus = mono.shifted(-half);
        const Polynomial sum = plus + minus;  // even
        const Polynomial diff = plus - minus; // odd
        const auto col = static_cast<Eigen::Index>(m + u);
        for (std::size_t k = 1; k < diff.coefficients().size(); k += 2) A(sin_row(k), col) -= s * to_long_double(diff.coefficient(k));
        for (std::size_t k = 0; k < sum.coefficients().size(); k += 2) A(cos_row(k), col) += c * to_long_double(sum.coefficient(k));
    }
    rhs(sin_row(static_cast<std::size_t>(2 * m - 1))) = 1.0;

    Eigen::FullPivLU<MatrixL> lu(A);
    if (!lu.isInvertible()) {
        throw error(errc::singular_system, "trig telescoper m=" + std::to_string(m) + " theta=" + std::to_string(theta));
    }
    const VectorL sol = lu.solve(rhs);

    TrigTelescoper t;
    t.m = m;
    t.theta = theta;
    for (int u = 0; u < m; ++u) t.beta.push_back(sol(u));
    for (int u = 0; u < m; ++u) t.beta_bar.push_back(sol(m + u));
    for (std::int64_t k = 0; k < trig_probe_count; ++k) {
        if (std::abs(t.residual(k)) > trig_residual_tolerance) {
            throw error(errc::singular_system, "residual " + std::to_string(static_cast<double>(t.residual(k))) +
                                                   " at n=" + std::to_string(k));
        }
    }
    return t;
}

} // namespace regsum
