#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <type_traits>
#include <variant>
#include <vector>

#include "regsum/error.hpp"
#include "regsum/exactnum.hpp"
#include "regsum/real.hpp"

namespace regsum {

/// Which procedure produced a regularized value.
enum class Method { AbelMean, AbelSum, EulerTransform, Cesaro, SymbolicTelescoper, ReflectionFormula };

inline const char* to_string(Method m) {
    switch (m) {
    case Method::AbelMean: return "AbelMean";
    case Method::AbelSum: return "AbelSum";
    case Method::EulerTransform: return "EulerTransform";
    case Method::Cesaro: return "Cesaro";
    case Method::SymbolicTelescoper: return "SymbolicTelescoper";
    case Method::ReflectionFormula: return "ReflectionFormula";
    }
    return "?";
}

/// A value assigned to a (possibly divergent) series or sequence. When
/// `exact` is set, `value` is its double rounding and the estimate is 0.
struct RegularizedValue {
    double value = 0.0;
    Method method = Method::AbelSum;
    double error_estimate = 0.0;
    std::optional<Rational> exact;

    static RegularizedValue from_exact(Rational r, Method m) {
        RegularizedValue v;
        v.value = to_double(r);
        v.method = m;
        v.exact = std::move(r);
        return v;
    }
};

/// Tunables shared by the numerical oracles.
struct SummationOptions {
    int grid_first = 3;             ///< first Abel level j, x_j = 1 - 2^-j
    int grid_last = 16;             ///< last Abel level
    int richardson_order = 4;
    double series_tolerance = 1e-8; ///< default for series values
    double limit_tolerance = 1e-6;  ///< default for generalized limits
    std::uint64_t max_terms = std::uint64_t{1} << 23; ///< step budget per oracle call
    int euler_max_depth = 128;
    int cesaro_max_log2 = 16;
    int cesaro_order = 1;
};

/// Sequential term generator n = start, start+1, ...
using TermCursor = std::function<Real()>;

/// Supported families of term / sequence maps n -> value.
class SequenceSpec {
public:
    /// Arbitrary map; `exact` and/or `numeric` may be supplied.
    struct Explicit {
        std::function<Rational(std::int64_t)> exact;
        std::function<Real(std::int64_t)> numeric;
        std::string label;
    };
    /// (-1)^n p(n)
    struct AlternatingPolynomial {
        Polynomial p;
    };
    /// (-1)^(n-1) n^(2m-1) sin(n theta), -pi < theta < pi
    struct AlternatingTrigPoly {
        int m;
        Real theta;
    };
    /// (-1)^n sum_{u=delta}^{t-1+delta} mu(n + eps t/2 - eps u), delta = (1-eps)/2, mu even
    struct EvenElementary {
        std::function<Real(const Real&)> mu;
        int t;
        int epsilon;
        std::string label;
    };

    using Kind = std::variant<Explicit, AlternatingPolynomial, AlternatingTrigPoly, EvenElementary>;

    static SequenceSpec exact(std::function<Rational(std::int64_t)> f, std::string label = "explicit") {
        return SequenceSpec(Explicit{std::move(f), {}, std::move(label)});
    }

    static SequenceSpec numeric(std::function<Real(std::int64_t)> f, std::string label = "explicit") {
        return SequenceSpec(Explicit{{}, std::move(f), std::move(label)});
    }

    /// Exact values plus a faster numeric route for the same map.
    static SequenceSpec dual(std::function<Rational(std::int64_t)> exact, std::function<Real(std::int64_t)> numeric,
                             std::string label = "explicit") {
        return SequenceSpec(Explicit{std::move(exact), std::move(numeric), std::move(label)});
    }

    static SequenceSpec alternating_polynomial(Polynomial p) { return SequenceSpec(AlternatingPolynomial{std::move(p)}); }

    static SequenceSpec alternating_trig(int m, Real theta) {
        if (m < 1) throw error(errc::invalid_argument, "m must be >= 1");
        if (!(abs(theta) < pi_real())) throw error(errc::invalid_argument, "theta must lie in (-pi, pi)");
        return SequenceSpec(AlternatingTrigPoly{m, std::move(theta)});
    }

    static SequenceSpec even_elementary(std::function<Real(const Real&)> mu, int t, int epsilon,
                                        std::string label = "mu") {
        if (t < 1) throw error(errc::invalid_argument, "t must be >= 1");
        if (epsilon != 1 && epsilon != -1) throw error(errc::invalid_argument, "epsilon must be +1 or -1");
        for (int i = 0; i < 16; ++i) {
            const Real x = Real(i) / 2 + Real(1) / 7;
            const Real lhs = mu(x);
            const Real rhs = mu(-x);
            if (abs(lhs - rhs) > Real("1e-40") * (1 + abs(lhs))) {
                throw error(errc::invalid_argument, "mu is not even at x=" + std::to_string(to_double(x)));
            }
        }
        return SequenceSpec(EvenElementary{std::move(mu), t, epsilon, std::move(label)});
    }

    const Kind& kind() const noexcept { return kind_; }

    bool is_alternating_polynomial() const noexcept { return std::holds_alternative<AlternatingPolynomial>(kind_); }

    bool has_exact() const noexcept {
        if (is_alternating_polynomial()) return true;
        if (auto* e = std::get_if<Explicit>(&kind_)) return static_cast<bool>(e->exact);
        return false;
    }

    std::optional<Rational> exact_at(std::int64_t n) const {
        if (auto* a = std::get_if<AlternatingPolynomial>(&kind_)) {
            Rational v = a->p(Rational(n));
            return n % 2 == 0 ? v : Rational(-v);
        }
        if (auto* e = std::get_if<Explicit>(&kind_); e && e->exact) return e->exact(n);
        return std::nullopt;
    }

    Real numeric_at(std::int64_t n) const {
        return std::visit(
            [n](const auto& k) -> Real {
                using K = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<K, Explicit>) {
                    return k.numeric ? k.numeric(n) : Real(k.exact(n));
                } else if constexpr (std::is_same_v<K, AlternatingPolynomial>) {
                    Real v = k.p.eval(Real(n));
                    return n % 2 == 0 ? v : Real(-v);
                } else if constexpr (std::is_same_v<K, AlternatingTrigPoly>) {
                    const Real nn(n);
                    Real v = pow(nn, 2 * k.m - 1) * sin(nn * k.theta);
                    return n % 2 == 0 ? Real(-v) : v;
                } else {
                    return even_elementary_value(k, n);
                }
            },
            kind_);
    }

    /// Sequential access from `start`. Trig terms use the three-term sine
    /// recurrence instead of one sin() call per term.
    TermCursor cursor(std::int64_t start) const {
        if (auto* tr = std::get_if<AlternatingTrigPoly>(&kind_)) {
            struct State {
                std::int64_t n;
                int power;
                Real two_cos;
                Real s_prev;
                Real s_cur;
            };
            auto st = std::make_shared<State>(State{start, 2 * tr->m - 1, 2 * cos(tr->theta),
                                                    sin(Real(start - 1) * tr->theta), sin(Real(start) * tr->theta)});
            return [st]() {
                Real v = pow(Real(st->n), st->power) * st->s_cur;
                if (st->n % 2 == 0) v = -v;
                Real next = st->two_cos * st->s_cur - st->s_prev;
                st->s_prev = st->s_cur;
                st->s_cur = next;
                ++st->n;
                return v;
            };
        }
        if (auto* ap = std::get_if<AlternatingPolynomial>(&kind_)) {
            std::vector<Real> coeffs;
            for (const auto& c : ap->p.coefficients()) coeffs.emplace_back(c);
            auto n = std::make_shared<std::int64_t>(start);
            return [coeffs = std::move(coeffs), n]() {
                const Real x(*n);
                Real acc = 0;
                for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
                if (*n % 2 != 0) acc = -acc;
                ++*n;
                return acc;
            };
        }
        auto n = std::make_shared<std::int64_t>(start);
        return [self = *this, n]() { return self.numeric_at((*n)++); };
    }

    /// The sequence n -> f(n + k).
    SequenceSpec shifted(std::int64_t k) const {
        if (auto* ap = std::get_if<AlternatingPolynomial>(&kind_)) {
            Polynomial q = ap->p.shifted(Rational(k));
            return alternating_polynomial(k % 2 == 0 ? q : -q);
        }
        Explicit e;
        e.label = describe() + " shifted by " + std::to_string(k);
        auto self = *this;
        if (has_exact()) e.exact = [self, k](std::int64_t n) { return *self.exact_at(n + k); };
        e.numeric = [self, k](std::int64_t n) { return self.numeric_at(n + k); };
        return SequenceSpec(std::move(e));
    }

    std::string describe() const {
        return std::visit(
            [](const auto& k) -> std::string {
                using K = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<K, Explicit>) {
                    return k.label;
                } else if constexpr (std::is_same_v<K, AlternatingPolynomial>) {
                    return "(-1)^n*(" + k.p.to_string() + ")";
                } else if constexpr (std::is_same_v<K, AlternatingTrigPoly>) {
                    return "(-1)^(n-1)*n^" + std::to_string(2 * k.m - 1) + "*sin(n*" +
                           std::to_string(to_double(k.theta)) + ")";
                } else {
                    return "even-shift(" + k.label + ", t=" + std::to_string(k.t) +
                           ", eps=" + std::to_string(k.epsilon) + ")";
                }
            },
            kind_);
    }

private:
    explicit SequenceSpec(Kind k) : kind_(std::move(k)) {}

    static Real even_elementary_value(const EvenElementary& k, std::int64_t n) {
        const int delta = (1 - k.epsilon) / 2;
        const Real center = Real(n) + Real(k.epsilon * k.t) / 2;
        Real sum = 0;
        for (int u = delta; u <= k.t - 1 + delta; ++u) sum += k.mu(center - Real(k.epsilon * u));
        return n % 2 == 0 ? sum : Real(-sum);
    }

    Kind kind_;
};

/// Terms t_start, t_start+1, ... of a series sum_{n >= start} t_n.
struct Series {
    SequenceSpec terms;
    std::int64_t start = 0;
};

} // namespace regsum
