#pragma once

// Exact rational scalars, binomial/Pochhammer products and dense
// polynomials with rational coefficients.

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "regsum/error.hpp"

namespace regsum {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

/// Arbitrary-precision fraction, always stored reduced with a positive
/// denominator (GMP canonical form).
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) {
        throw error(errc::invalid_argument, "zero denominator");
    }
    return Rational(num, den);
}

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) {
    const Integer& den = denominator(r);
    if (den == 1) {
        return numerator(r).str();
    }
    return numerator(r).str() + "/" + den.str();
}

namespace detail {

inline bool is_integer_literal(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        s.remove_prefix(1);
    }
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

} // namespace detail

/// Parses "p/q" or an integer literal. Decimals are rejected so exact
/// inputs are never silently rounded.
inline Rational parse_rational(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
        while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    auto slash = text.find('/');
    std::string_view num = trim(text.substr(0, slash));
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : trim(text.substr(slash + 1));
    if (!detail::is_integer_literal(num) || !detail::is_integer_literal(den) || den.front() == '-') {
        throw error(errc::invalid_argument, "not a rational literal: '" + std::string(text) + "'");
    }
    auto strip_plus = [](std::string_view s) { return s.front() == '+' ? s.substr(1) : s; };
    return make_rational(Integer(std::string(strip_plus(num))), Integer(std::string(strip_plus(den))));
}

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline double to_double(const Rational& r) { return static_cast<double>(r); }

/// Integer power; negative exponents invert (base must then be nonzero).
inline Rational pow(const Rational& base, std::int64_t exponent) {
    if (exponent < 0) {
        if (base == 0) {
            throw error(errc::invalid_argument, "zero raised to a negative power");
        }
        return pow(Rational(1) / base, -exponent);
    }
    Rational result = 1;
    Rational b = base;
    auto e = static_cast<std::uint64_t>(exponent);
    while (e != 0) {
        if (e & 1U) result *= b;
        e >>= 1U;
        if (e != 0) b *= b;
    }
    return result;
}

inline Integer factorial(std::uint64_t n) {
    Integer result = 1;
    for (std::uint64_t i = 2; i <= n; ++i) {
        result *= i;
    }
    return result;
}

/// a(a-1)...(a-u+1)/u!, with value 1 at u = 0. Defined for every rational a,
/// so negative upper indices work directly.
inline Rational generalized_binomial(const Rational& a, std::uint64_t u) {
    Rational result = 1;
    for (std::uint64_t i = 0; i < u; ++i) {
        result *= a - Rational(i);
        result /= Rational(i + 1);
    }
    return result;
}

/// Rising factorial w(w+1)...(w+n-1); 1 at n = 0.
inline Rational pochhammer(const Rational& w, std::uint64_t n) {
    Rational result = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
        result *= w + Rational(i);
    }
    return result;
}

/// Dense polynomial with exact rational coefficients, lowest degree first.
/// The leading stored coefficient is always nonzero; the zero polynomial
/// has no coefficients.
class Polynomial {
public:
    Polynomial() = default;

    explicit Polynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

    Polynomial(std::initializer_list<Rational> coefficients) : coeffs_(coefficients) { trim(); }

    static Polynomial constant(const Rational& c) { return Polynomial({c}); }

    /// The identity polynomial `x`.
    static Polynomial variable() { return Polynomial({Rational(0), Rational(1)}); }

    static Polynomial monomial(const Rational& c, std::size_t degree) {
        std::vector<Rational> v(degree + 1);
        v[degree] = c;
        return Polynomial(std::move(v));
    }

    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

    bool is_zero() const noexcept { return coeffs_.empty(); }

    const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }

    Rational coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

    const Rational& leading() const {
        if (coeffs_.empty()) {
            throw error(errc::invalid_argument, "zero polynomial has no leading coefficient");
        }
        return coeffs_.back();
    }

    template <class T>
    T eval(const T& x) const {
        T acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc = acc * x + T(*it);
        }
        return acc;
    }

    Rational operator()(const Rational& x) const { return eval(x); }

    /// p(x + c), by repeated synthetic division.
    Polynomial shifted(const Rational& c) const {
        std::vector<Rational> a = coeffs_;
        const std::size_t n = a.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = n - 1; j > i; --j) {
                a[j - 1] += c * a[j];
            }
        }
        return Polynomial(std::move(a));
    }

    /// Only the even- or odd-degree terms.
    Polynomial parity_part(bool odd) const {
        std::vector<Rational> a(coeffs_.size());
        for (std::size_t i = odd ? 1 : 0; i < coeffs_.size(); i += 2) a[i] = coeffs_[i];
        return Polynomial(std::move(a));
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        trim();
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o) { return *this += -o; }

    Polynomial& operator*=(const Rational& s) {
        for (auto& c : coeffs_) c *= s;
        trim();
        return *this;
    }

    friend Polynomial operator-(Polynomial p) {
        for (auto& c : p.coeffs_) c = -c;
        return p;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Polynomial(std::move(r));
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

    /// e.g. "5*n^3 - n + 2"
    std::string to_string(std::string_view var = "n") const {
        if (coeffs_.empty()) return "0";
        std::string out;
        for (std::size_t k = coeffs_.size(); k-- > 0;) {
            const Rational& c = coeffs_[k];
            if (c == 0) continue;
            Rational mag = abs(c);
            if (out.empty()) {
                if (c < 0) out += "-";
            } else {
                out += c < 0 ? " - " : " + ";
            }
            bool unit = mag == 1 && k != 0;
            if (!unit) out += regsum::to_string(mag);
            if (k != 0) {
                if (!unit) out += "*";
                out += var;
                if (k > 1) out += "^" + std::to_string(k);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<Rational> coeffs_;
};

/// Horner evaluation (the `poly_eval` contract).
inline Rational poly_eval(const Polynomial& p, const Rational& x) { return p.eval(x); }

/// Newton divided-difference interpolation through distinct nodes.
inline Polynomial interpolate(const std::vector<std::pair<Rational, Rational>>& points) {
    const std::size_t n = points.size();
    std::vector<Rational> dd(n);
    for (std::size_t i = 0; i < n; ++i) dd[i] = points[i].second;
    for (std::size_t level = 1; level < n; ++level) {
        for (std::size_t i = n - 1; i >= level; --i) {
            Rational dx = points[i].first - points[i - level].first;
            if (dx == 0) {
                throw error(errc::invalid_argument, "interpolation nodes must be distinct");
            }
            dd[i] = (dd[i] - dd[i - 1]) / dx;
        }
    }
    Polynomial result;
    Polynomial basis = Polynomial::constant(1);
    for (std::size_t i = 0; i < n; ++i) {
        result += basis * dd[i];
        basis = basis * Polynomial({-points[i].first, Rational(1)});
    }
    return result;
}

} // namespace regsum
