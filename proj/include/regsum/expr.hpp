#pragma once

// Arithmetic expressions in one integer variable, as accepted by the CLI:
//   (-1)^n*(2n+1)^3     1-1/n     5n^3 - n + 2     (1/2)^n
// Integer literals only; '/' builds rationals. Implicit multiplication is
// allowed ("2n", "(n+1)(n-1)"). The variable may be written n, k or u.

#include <cctype>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "regsum/error.hpp"
#include "regsum/exactnum.hpp"
#include "regsum/real.hpp"

namespace regsum {

/// p(n) + (-1)^n q(n)
struct QuasiPolynomial {
    Polynomial plain;
    Polynomial alternating;
};

class Expression {
public:
    static Expression parse(std::string_view text) {
        Parser p{text, 0};
        auto node = p.parse_expr();
        p.skip_ws();
        if (p.pos != text.size()) {
            throw error(errc::invalid_argument, "unexpected '" + std::string(1, text[p.pos]) + "' at position " +
                                                    std::to_string(p.pos) + " in '" + std::string(text) + "'");
        }
        return Expression(std::move(node), std::string(text));
    }

    const std::string& text() const noexcept { return text_; }

    Rational exact(std::int64_t n) const { return eval_exact(*root_, n); }

    Real numeric(std::int64_t n) const { return eval_real(*root_, n); }

    /// The p(n) + (-1)^n q(n) form, when the expression has one.
    std::optional<QuasiPolynomial> quasi_polynomial() const { return to_quasi(*root_); }

    /// q when the expression is exactly (-1)^n q(n).
    std::optional<Polynomial> alternating_polynomial() const {
        auto q = quasi_polynomial();
        if (!q || !q->plain.is_zero()) return std::nullopt;
        return q->alternating;
    }

    /// p when the expression is a plain polynomial.
    std::optional<Polynomial> polynomial() const {
        auto q = quasi_polynomial();
        if (!q || !q->alternating.is_zero()) return std::nullopt;
        return q->plain;
    }

private:
    enum class Op { Num, Var, Add, Sub, Mul, Div, Pow, Neg };

    struct Node {
        Op op;
        Rational value;
        std::shared_ptr<const Node> lhs;
        std::shared_ptr<const Node> rhs;
    };
    using NodePtr = std::shared_ptr<const Node>;

    Expression(NodePtr root, std::string text) : root_(std::move(root)), text_(std::move(text)) {}

    static NodePtr make(Op op, NodePtr l = nullptr, NodePtr r = nullptr, Rational v = 0) {
        return std::make_shared<const Node>(Node{op, std::move(v), std::move(l), std::move(r)});
    }

    struct Parser {
        std::string_view s;
        std::size_t pos;

        void skip_ws() {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        }
        bool peek(char c) {
            skip_ws();
            return pos < s.size() && s[pos] == c;
        }
        bool accept(char c) {
            if (peek(c)) {
                ++pos;
                return true;
            }
            return false;
        }
        bool starts_primary() {
            skip_ws();
            if (pos >= s.size()) return false;
            const char c = s[pos];
            return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || is_var(c);
        }
        static bool is_var(char c) { return c == 'n' || c == 'k' || c == 'u'; }

        [[noreturn]] void fail(const std::string& what) {
            throw error(errc::invalid_argument, what + " at position " + std::to_string(pos) + " in '" + std::string(s) + "'");
        }

        NodePtr parse_expr() {
            NodePtr lhs = parse_term();
            for (;;) {
                if (accept('+')) {
                    lhs = make(Op::Add, lhs, parse_term());
                } else if (accept('-')) {
                    lhs = make(Op::Sub, lhs, parse_term());
                } else {
                    return lhs;
                }
            }
        }

        NodePtr parse_term() {
            NodePtr lhs = parse_factor();
            for (;;) {
                if (accept('*')) {
                    lhs = make(Op::Mul, lhs, parse_factor());
                } else if (accept('/')) {
                    lhs = make(Op::Div, lhs, parse_factor());
                } else if (starts_primary()) {
                    lhs = make(Op::Mul, lhs, parse_power());
                } else {
                    return lhs;
                }
            }
        }

        NodePtr parse_factor() {
            if (accept('-')) return make(Op::Neg, parse_factor());
            if (accept('+')) return parse_factor();
            return parse_power();
        }

        NodePtr parse_power() {
            NodePtr base = parse_primary();
            if (accept('^')) return make(Op::Pow, base, parse_factor());
            return base;
        }

        NodePtr parse_primary() {
            skip_ws();
            if (pos >= s.size()) fail("unexpected end of expression");
            const char c = s[pos];
            if (c == '(') {
                ++pos;
                NodePtr inner = parse_expr();
                if (!accept(')')) fail("expected ')'");
                return inner;
            }
            if (is_var(c)) {
                ++pos;
                return make(Op::Var);
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                const std::size_t start = pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                if (pos < s.size() && s[pos] == '.') fail("decimal literals are not accepted");
                return make(Op::Num, nullptr, nullptr, Rational(Integer(std::string(s.substr(start, pos - start)))));
            }
            fail(std::string("unexpected '") + c + "'");
        }
    };

    static std::int64_t integer_exponent(const Rational& e) {
        if (!is_integer(e) || abs(e) > 4096) throw error(errc::invalid_argument, "exponent must be a small integer");
        return static_cast<std::int64_t>(numerator(e));
    }

    static Rational eval_exact(const Node& node, std::int64_t n) {
        switch (node.op) {
        case Op::Num: return node.value;
        case Op::Var: return Rational(n);
        case Op::Neg: return -eval_exact(*node.lhs, n);
        case Op::Add: return eval_exact(*node.lhs, n) + eval_exact(*node.rhs, n);
        case Op::Sub: return eval_exact(*node.lhs, n) - eval_exact(*node.rhs, n);
        case Op::Mul: return eval_exact(*node.lhs, n) * eval_exact(*node.rhs, n);
        case Op::Div: {
            Rational d = eval_exact(*node.rhs, n);
            if (d == 0) throw error(errc::undefined_term, "division by zero at n=" + std::to_string(n));
            return eval_exact(*node.lhs, n) / d;
        }
        case Op::Pow: {
            Rational b = eval_exact(*node.lhs, n);
            std::int64_t e = integer_exponent(eval_exact(*node.rhs, n));
            if (b == -1) return e % 2 == 0 ? Rational(1) : Rational(-1);
            if (b == 0 && e < 0) throw error(errc::undefined_term, "zero to a negative power at n=" + std::to_string(n));
            return pow(b, e);
        }
        }
        return 0;
    }

    static Real eval_real(const Node& node, std::int64_t n) {
        switch (node.op) {
        case Op::Num: return Real(node.value);
        case Op::Var: return Real(n);
        case Op::Neg: return -eval_real(*node.lhs, n);
        case Op::Add: return eval_real(*node.lhs, n) + eval_real(*node.rhs, n);
        case Op::Sub: return eval_real(*node.lhs, n) - eval_real(*node.rhs, n);
        case Op::Mul: return eval_real(*node.lhs, n) * eval_real(*node.rhs, n);
        case Op::Div: {
            Real d = eval_real(*node.rhs, n);
            if (d == 0) throw error(errc::undefined_term, "division by zero at n=" + std::to_string(n));
            return eval_real(*node.lhs, n) / d;
        }
        case Op::Pow: {
            Real b = eval_real(*node.lhs, n);
            Real e = eval_real(*node.rhs, n);
            if (e != floor(e)) throw error(errc::invalid_argument, "exponent must be an integer");
            if (b == -1) return fmod(e, 2) == 0 ? Real(1) : Real(-1);
            if (b == 0 && e < 0) throw error(errc::undefined_term, "zero to a negative power at n=" + std::to_string(n));
            return pow(b, e);
        }
        }
        return 0;
    }

    static std::optional<QuasiPolynomial> to_quasi(const Node& node) {
        auto both = [&](auto f) -> std::optional<QuasiPolynomial> {
            auto a = to_quasi(*node.lhs);
            auto b = to_quasi(*node.rhs);
            if (!a || !b) return std::nullopt;
            return f(*a, *b);
        };
        switch (node.op) {
        case Op::Num: return QuasiPolynomial{Polynomial::constant(node.value), {}};
        case Op::Var: return QuasiPolynomial{Polynomial::variable(), {}};
        case Op::Neg: {
            auto a = to_quasi(*node.lhs);
            if (!a) return std::nullopt;
            return QuasiPolynomial{-a->plain, -a->alternating};
        }
        case Op::Add:
            return both([](const QuasiPolynomial& a, const QuasiPolynomial& b) {
                return QuasiPolynomial{a.plain + b.plain, a.alternating + b.alternating};
            });
        case Op::Sub:
            return both([](const QuasiPolynomial& a, const QuasiPolynomial& b) {
                return QuasiPolynomial{a.plain - b.plain, a.alternating - b.alternating};
            });
        case Op::Mul:
            // (-1)^n squared is 1.
            return both([](const QuasiPolynomial& a, const QuasiPolynomial& b) {
                return QuasiPolynomial{a.plain * b.plain + a.alternating * b.alternating,
                                       a.plain * b.alternating + a.alternating * b.plain};
            });
        case Op::Div: {
            auto a = to_quasi(*node.lhs);
            auto b = to_quasi(*node.rhs);
            if (!a || !b || !b->alternating.is_zero() || b->plain.degree() != 0) return std::nullopt;
            const Rational inv = Rational(1) / b->plain.leading();
            return QuasiPolynomial{a->plain * inv, a->alternating * inv};
        }
        case Op::Pow: {
            auto base = to_quasi(*node.lhs);
            auto ex = to_quasi(*node.rhs);
            if (!base || !ex || !ex->alternating.is_zero()) return std::nullopt;
            const bool base_const = base->alternating.is_zero() && base->plain.degree() <= 0;
            // (+-1)^(n + c) for an integer c
            if (ex->plain.degree() == 1 && ex->plain.leading() == 1 && is_integer(ex->plain.coefficient(0)) && base_const) {
                const Rational b = base->plain.coefficient(0);
                if (b == 1) return QuasiPolynomial{Polynomial::constant(1), {}};
                if (b != -1) return std::nullopt;
                const bool odd_shift = numerator(ex->plain.coefficient(0)) % 2 != 0;
                return QuasiPolynomial{{}, Polynomial::constant(odd_shift ? -1 : 1)};
            }
            if (ex->plain.degree() > 0) return std::nullopt;
            const Rational e = ex->plain.coefficient(0);
            if (!is_integer(e) || e < 0 || e > 64) return std::nullopt;
            QuasiPolynomial acc{Polynomial::constant(1), {}};
            for (std::int64_t i = 0; i < static_cast<std::int64_t>(numerator(e)); ++i) {
                acc = QuasiPolynomial{acc.plain * base->plain + acc.alternating * base->alternating,
                                      acc.plain * base->alternating + acc.alternating * base->plain};
            }
            return acc;
        }
        }
        return std::nullopt;
    }

    NodePtr root_;
    std::string text_;
};

} // namespace regsum
