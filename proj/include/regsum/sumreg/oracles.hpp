#pragma once

// Classical summation methods used as independent oracles: Abel (power
// series limit x -> 1-), Cesaro (C,k) means and the Euler transform.

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "regsum/error.hpp"
#include "regsum/exactnum.hpp"
#include "regsum/real.hpp"
#include "regsum/sumreg/sequence.hpp"

namespace regsum {

/// Polynomial extrapolation to h = 0 (Neville-Aitken), capped at a fixed
/// order. With h halving at each level this is classical Richardson
/// extrapolation.
class Extrapolator {
public:
    explicit Extrapolator(int max_order) : max_order_(max_order) {}

    /// Adds a sample and returns the current best estimate.
    Real add(const Real& h, const Real& value) {
        hs_.push_back(h);
        std::vector<Real> row{value};
        const std::size_t i = hs_.size() - 1;
        const std::size_t order = std::min<std::size_t>(i, static_cast<std::size_t>(max_order_));
        for (std::size_t k = 1; k <= order; ++k) {
            const Real& h_far = hs_[i - k];
            row.push_back((h_far * row[k - 1] - h * prev_[k - 1]) / (h_far - h));
        }
        prev_ = std::move(row);
        estimates_.push_back(prev_.back());
        return prev_.back();
    }

    std::size_t levels() const noexcept { return estimates_.size(); }

    bool full_order() const noexcept { return levels() > static_cast<std::size_t>(max_order_); }

    /// |E_i - E_{i-back}|, infinity if unavailable.
    Real increment(std::size_t back = 0) const {
        if (estimates_.size() < back + 2) return std::numeric_limits<double>::infinity();
        const std::size_t i = estimates_.size() - 1 - back;
        return abs(estimates_[i] - estimates_[i - 1]);
    }

    const Real& estimate() const { return estimates_.back(); }

private:
    int max_order_;
    std::vector<Real> hs_;
    std::vector<Real> prev_;
    std::vector<Real> estimates_;
};

/// Extrapolation to h = 0 for samples shaped like
///   c + sum_{k=1}^{K} (a_k h^k ln h + b_k h^k),
/// fitted exactly through the latest 2K+1 samples. Abel means of series
/// whose terms decay like a power of n carry these logarithmic terms.
class LogExtrapolator {
public:
    explicit LogExtrapolator(int max_order) : max_order_(max_order) {}

    Real add(const Real& h, const Real& value) {
        hs_.push_back(h);
        vs_.push_back(value);
        const int order = std::min(max_order_, static_cast<int>(hs_.size() - 1) / 2);
        const auto n = static_cast<Eigen::Index>(2 * order + 1);
        const std::size_t first = hs_.size() - static_cast<std::size_t>(n);
        Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> A(n, n);
        Eigen::Matrix<Real, Eigen::Dynamic, 1> b(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const Real& hi = hs_[first + static_cast<std::size_t>(i)];
            const Real lh = log(hi);
            Real hk = 1;
            A(i, 0) = 1;
            for (int k = 1; k <= order; ++k) {
                hk *= hi;
                A(i, 2 * k - 1) = hk * lh;
                A(i, 2 * k) = hk;
            }
            b(i) = vs_[first + static_cast<std::size_t>(i)];
        }
        const Eigen::Matrix<Real, Eigen::Dynamic, 1> c = A.fullPivLu().solve(b);
        estimates_.push_back(c(0));
        return c(0);
    }

    std::size_t levels() const noexcept { return estimates_.size(); }

    bool full_order() const noexcept { return levels() > static_cast<std::size_t>(2 * max_order_); }

    Real increment(std::size_t back = 0) const {
        if (estimates_.size() < back + 2) return std::numeric_limits<double>::infinity();
        const std::size_t i = estimates_.size() - 1 - back;
        return abs(estimates_[i] - estimates_[i - 1]);
    }

    const Real& estimate() const { return estimates_.back(); }

private:
    int max_order_;
    std::vector<Real> hs_;
    std::vector<Real> vs_;
    std::vector<Real> estimates_;
};

namespace detail {

/// Adds the rounding of the reported double to a numerical error estimate.
inline double with_rounding(double estimate, double value) {
    return estimate + std::numeric_limits<double>::epsilon() * std::abs(value);
}

inline std::string format_tolerance(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

/// sum_{n>=0} c_n x^n at x = 1 - 2^-j, truncated once the blockwise tail
/// bound drops below `tail_target`. Consumes terms from `next`.
inline Real abel_power_sum(const TermCursor& next, int j, const Real& tail_target, std::uint64_t& budget) {
    const std::uint64_t block = std::uint64_t{1} << j;
    Real sum = 0;
    Real xp = 1;
    Real prev_block_max = std::numeric_limits<double>::infinity();
    for (;;) {
        Real block_max = 0;
        for (std::uint64_t i = 0; i < block; ++i) {
            if (budget == 0) throw error(errc::no_stable_limit, "step budget exhausted at level j=" + std::to_string(j));
            --budget;
            Real t = next() * xp;
            sum += t;
            t = abs(t);
            if (t > block_max) block_max = t;
            xp -= ldexp(xp, -j);
        }
        // One block spans 1/h terms; the remaining tail is at most a few
        // blocks' worth once the block maxima are decreasing.
        if (block_max < prev_block_max && 4 * block_max * Real(block) < tail_target) break;
        prev_block_max = block_max;
    }
    return sum;
}

inline RegularizedValue abel_extrapolate(const std::function<TermCursor()>& make_cursor, const SummationOptions& opts,
                                         double tolerance, Method method) {
    Extrapolator ex(opts.richardson_order);
    LogExtrapolator lx(opts.richardson_order);
    std::uint64_t budget = opts.max_terms;
    const Real tail_target = Real(tolerance) * Real("1e-6");
    auto settled = [&](const auto& table) {
        return table.full_order() && table.increment() < tolerance && table.increment(1) < tolerance;
    };
    auto result = [&](const auto& table) {
        RegularizedValue v;
        v.value = to_double(table.estimate());
        v.method = method;
        v.error_estimate = with_rounding(std::max({to_double(table.increment()), to_double(table.increment(1)), 1e-300}), v.value);
        return v;
    };
    for (int j = opts.grid_first; j <= opts.grid_last; ++j) {
        const Real h = ldexp(Real(1), -j);
        const Real s = abel_power_sum(make_cursor(), j, tail_target, budget);
        ex.add(h, s);
        lx.add(h, s);
        if (settled(ex)) return result(ex);
        if (settled(lx)) return result(lx);
    }
    throw error(errc::no_stable_limit, "Abel extrapolants did not settle within " + format_tolerance(tolerance) +
                                           " by level j=" + std::to_string(opts.grid_last));
}

} // namespace detail

/// lim_{x->1-} sum_{n>=start} t_n x^{n-start}, from the grid
/// x_j = 1 - 2^-j, extrapolated in h = 2^-j by Richardson and, failing that,
/// by the table with h^k ln h terms.
inline RegularizedValue abel_sum(const Series& series, const SummationOptions& opts = {},
                                 std::optional<double> tolerance = std::nullopt) {
    return detail::abel_extrapolate([&] { return series.terms.cursor(series.start); }, opts,
                                    tolerance.value_or(opts.series_tolerance), Method::AbelSum);
}

/// Generalized limit of F(1), F(2), ...: the Abel sum of the telescoped
/// series F(1) + (F(2) - F(1)) + (F(3) - F(2)) + ...
inline RegularizedValue abel_mean_limit(const SequenceSpec& sequence, const SummationOptions& opts = {},
                                        std::optional<double> tolerance = std::nullopt) {
    auto make = [&]() -> TermCursor {
        auto inner = sequence.cursor(1);
        auto prev = std::make_shared<Real>(0);
        return [inner, prev]() {
            Real v = inner();
            Real d = v - *prev;
            *prev = v;
            return d;
        };
    };
    return detail::abel_extrapolate(make, opts, tolerance.value_or(opts.limit_tolerance), Method::AbelMean);
}

/// (C,k) means of the partial sums, sampled at N = 2^j and N = 2^j + 1 and
/// extrapolated in 1/N separately per parity; both parities must agree.
inline RegularizedValue cesaro_sum(const Series& series, const SummationOptions& opts = {},
                                   std::optional<double> tolerance = std::nullopt) {
    const double tol = tolerance.value_or(opts.series_tolerance);
    const int order = opts.cesaro_order;
    if (order < 1) throw error(errc::invalid_argument, "Cesaro order must be >= 1");
    const int first = 4;
    const std::uint64_t max_n = (std::uint64_t{1} << opts.cesaro_max_log2) + 1;
    if (max_n > opts.max_terms) throw error(errc::cesaro_not_settling, "step budget too small");

    std::vector<Real> terms;
    terms.reserve(max_n);
    auto next = series.terms.cursor(series.start);
    auto mean = [&](std::uint64_t count) {
        while (terms.size() < count) terms.push_back(next());
        // sigma^(k) over N = count terms: weights C(N-1-n+k, k) / C(N-1+k, k).
        const std::uint64_t N = count - 1;
        Real acc = 0;
        for (std::uint64_t n = 0; n <= N; ++n) {
            Real w = 1;
            for (int i = 1; i <= order; ++i) w *= Real(N - n + static_cast<std::uint64_t>(i)) / Real(N + i);
            acc += w * terms[n];
        }
        return acc;
    };

    Extrapolator even(opts.richardson_order);
    Extrapolator odd(opts.richardson_order);
    for (int j = first; j <= opts.cesaro_max_log2; ++j) {
        const std::uint64_t n_even = std::uint64_t{1} << j;
        even.add(Real(1) / Real(n_even), mean(n_even));
        odd.add(Real(1) / Real(n_even + 1), mean(n_even + 1));
        if (!even.full_order()) continue;
        const Real spread = abs(even.estimate() - odd.estimate());
        const Real inc = std::max({even.increment(), even.increment(1), odd.increment(), odd.increment(1)});
        if (inc < tol && spread < tol) {
            RegularizedValue v;
            v.value = to_double((even.estimate() + odd.estimate()) / 2);
            v.method = Method::Cesaro;
            v.error_estimate = detail::with_rounding(
                std::max({to_double(even.increment()), to_double(odd.increment()), to_double(spread), 1e-300}), v.value);
            return v;
        }
    }
    throw error(errc::cesaro_not_settling, "(C," + std::to_string(order) + ") means did not settle within " +
                                               detail::format_tolerance(tol));
}

/// Euler transform of sum t_n written as a_0 - a_1 + a_2 - ... with
/// a_n = (-1)^n t_{start+n}:  sum_k (-1)^k (Delta^k a_0) / 2^{k+1}.
/// Exact and terminating for alternating polynomial terms; otherwise run
/// until a geometric tail estimate drops below the tolerance.
inline RegularizedValue euler_transform_sum(const Series& series, const SummationOptions& opts = {},
                                            std::optional<double> tolerance = std::nullopt) {
    const double tol = tolerance.value_or(opts.series_tolerance);
    const SequenceSpec& spec = series.terms;

    if (const auto* ap = std::get_if<SequenceSpec::AlternatingPolynomial>(&spec.kind())) {
        const int d = ap->p.degree();
        std::vector<Rational> a;
        for (std::int64_t n = 0; n <= std::max(d, 0); ++n) {
            Rational v = *spec.exact_at(series.start + n);
            a.push_back(n % 2 == 0 ? v : Rational(-v));
        }
        Rational sum = 0;
        Rational scale = Rational(1, 2);
        for (int k = 0; k <= d; ++k) {
            sum += (k % 2 == 0 ? a[0] : Rational(-a[0])) * scale;
            for (std::size_t i = 0; i + 1 < a.size() - static_cast<std::size_t>(k); ++i) a[i] = a[i + 1] - a[i];
            scale /= 2;
        }
        return RegularizedValue::from_exact(sum, Method::EulerTransform);
    }

    // Generic path: Delta^k a_0 = sum_i (-1)^{k-i} C(k,i) a_i, evaluated
    // exactly when exact terms exist and in Real arithmetic otherwise.
    auto run = [&](auto zero, auto term_at) {
        using T = decltype(zero);
        std::vector<T> a;
        std::vector<double> mags;
        T sum = zero;
        T scale = T(1) / T(2);
        int zero_run = 0;
        for (int k = 0; k <= opts.euler_max_depth; ++k) {
            T v = term_at(series.start + k);
            a.push_back(k % 2 == 0 ? v : T(-v));
            T diff = zero;
            T binom = 1;
            for (int i = k; i >= 0; --i) {
                const T c = ((k - i) % 2 == 0) ? binom : T(-binom);
                diff += c * a[static_cast<std::size_t>(i)];
                binom = binom * T(i) / T(k - i + 1);
            }
            T tau = (k % 2 == 0 ? diff : T(-diff)) * scale;
            sum += tau;
            scale /= 2;
            const double mag = std::abs(static_cast<double>(tau));
            mags.push_back(mag);
            zero_run = tau == 0 ? zero_run + 1 : 0;
            if (zero_run >= 4) {
                RegularizedValue r;
                r.value = static_cast<double>(sum);
                r.method = Method::EulerTransform;
                r.error_estimate = detail::with_rounding(0.0, r.value);
                return r;
            }
            if (k < 3) continue;
            double ratio = 0.0;
            for (int back = 0; back < 3; ++back) {
                const double num = mags[mags.size() - 1 - back];
                const double den = mags[mags.size() - 2 - back];
                ratio = std::max(ratio, den == 0.0 ? (num == 0.0 ? 0.0 : 1.0) : num / den);
            }
            if (ratio >= 0.95) continue;
            const double tail = mag * ratio / (1.0 - ratio);
            if (tail < tol && mag < tol) {
                RegularizedValue r;
                r.value = static_cast<double>(sum);
                r.method = Method::EulerTransform;
                r.error_estimate = detail::with_rounding(std::max({2.0 * tail, mag, 1e-300}), r.value);
                return r;
            }
        }
        throw error(errc::transform_not_settling, "depth " + std::to_string(opts.euler_max_depth) + " reached");
    };

    if (spec.has_exact()) {
        return run(Rational(0), [&](std::int64_t n) { return *spec.exact_at(n); });
    }
    return run(Real(0), [&](std::int64_t n) { return spec.numeric_at(n); });
}

} // namespace regsum
