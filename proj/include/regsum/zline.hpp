#pragma once

// The reordered integer line 0, 1, 2, ..., -2, -1: precedence, summation
// ranges that may wrap through infinity, and sums computed from a
// generating function F with F(z+1) - F(z) = f(z).

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "regsum/error.hpp"
#include "regsum/exactnum.hpp"

namespace regsum {

/// a precedes b iff -1/a < -1/b, with -1/0 taken as -infinity. Zero comes
/// first, then the positive integers ascending, then the negative
/// integers ascending.
inline bool precedes(std::int64_t a, std::int64_t b) noexcept {
    auto block = [](std::int64_t v) { return v == 0 ? 0 : (v > 0 ? 1 : 2); };
    const int ba = block(a);
    const int bb = block(b);
    if (ba != bb) return ba < bb;
    return a < b;
}

/// Comparator form of `precedes`, usable with std::sort and ordered containers.
struct ZOrder {
    bool operator()(std::int64_t a, std::int64_t b) const noexcept { return precedes(a, b); }
};

inline bool precedes_or_equal(std::int64_t a, std::int64_t b) noexcept { return a == b || precedes(a, b); }

/// Closed interval in the ordinary order; empty when lo > hi.
struct ClassicalInterval {
    std::int64_t lo;
    std::int64_t hi;

    bool empty() const noexcept { return lo > hi; }
    bool contains(std::int64_t u) const noexcept { return lo <= u && u <= hi; }
    std::uint64_t size() const noexcept { return empty() ? 0 : static_cast<std::uint64_t>(hi - lo) + 1; }
};

/// Resolved summation range Z_{a,b}. When a precedes-or-equals b it is the
/// order interval [a, b]; otherwise it is Z minus the open order interval
/// (b, a), i.e. [a, -1] together with [0, b].
///
/// Finite ranges are stored as classical blocks listed in Z-order. Every
/// infinite range is cofinite, so it is stored by its excluded blocks.
class ZRange {
public:
    enum class Kind { Finite, Infinite };

    std::int64_t a() const noexcept { return a_; }
    std::int64_t b() const noexcept { return b_; }
    Kind kind() const noexcept { return kind_; }
    bool finite() const noexcept { return kind_ == Kind::Finite; }

    /// Classical blocks making up a finite range, in Z-order.
    const std::vector<ClassicalInterval>& blocks() const noexcept { return blocks_; }
    /// Classical blocks missing from an infinite range.
    const std::vector<ClassicalInterval>& excluded() const noexcept { return excluded_; }

    bool contains(std::int64_t u) const noexcept {
        if (precedes_or_equal(a_, b_)) return precedes_or_equal(a_, u) && precedes_or_equal(u, b_);
        return !(precedes(b_, u) && precedes(u, a_));
    }

    std::uint64_t size() const noexcept {
        std::uint64_t n = 0;
        for (const auto& blk : blocks_) n += blk.size();
        return n;
    }

    /// Explicit member list in Z-order (finite ranges only).
    std::vector<std::int64_t> members(std::uint64_t limit = 1U << 24) const {
        if (!finite()) throw error(errc::invalid_argument, "range is infinite");
        if (size() > limit) throw error(errc::invalid_argument, "range too large to enumerate");
        std::vector<std::int64_t> out;
        for (const auto& blk : blocks_)
            for (std::int64_t u = blk.lo; u <= blk.hi; ++u) out.push_back(u);
        return out;
    }

    std::string description() const {
        auto block_str = [](const ClassicalInterval& blk) {
            if (blk.lo == blk.hi) return std::to_string(blk.lo);
            return "[" + std::to_string(blk.lo) + ".." + std::to_string(blk.hi) + "]";
        };
        std::string out;
        if (finite()) {
            for (const auto& blk : blocks_) out += (out.empty() ? "" : " u ") + block_str(blk);
            return out;
        }
        if (excluded_.empty()) return "all integers";
        if (excluded_.size() == 1 && excluded_[0].lo == 0 && excluded_[0].hi == 0) return "all nonzero integers";
        for (const auto& blk : excluded_) out += (out.empty() ? "" : " u ") + block_str(blk);
        return "all integers except " + out;
    }

    friend ZRange resolve_range(std::int64_t a, std::int64_t b);

private:
    std::int64_t a_ = 0;
    std::int64_t b_ = 0;
    Kind kind_ = Kind::Finite;
    std::vector<ClassicalInterval> blocks_;
    std::vector<ClassicalInterval> excluded_;
};

inline ZRange resolve_range(std::int64_t a, std::int64_t b) {
    ZRange r;
    r.a_ = a;
    r.b_ = b;
    auto push = [](std::vector<ClassicalInterval>& v, std::int64_t lo, std::int64_t hi) {
        if (lo <= hi) v.push_back({lo, hi});
    };
    const bool a_neg = a < 0;
    const bool b_neg = b < 0;
    if (precedes_or_equal(a, b)) {
        if (a_neg == b_neg) {
            push(r.blocks_, a, b);
        } else {
            // a >= 0 > b: everything from a upward, then through infinity to b.
            r.kind_ = ZRange::Kind::Infinite;
            push(r.excluded_, 0, a - 1);
            push(r.excluded_, b + 1, -1);
        }
    } else if (a_neg && !b_neg) {
        push(r.blocks_, 0, b);
        push(r.blocks_, a, -1);
    } else {
        // Same sign with b < a: the complement is the classical gap (b, a).
        r.kind_ = ZRange::Kind::Infinite;
        push(r.excluded_, b + 1, a - 1);
    }
    return r;
}

/// A term function f on the integers together with a closed form F whose
/// forward difference is f. The identity is probed on construction.
class GeneratingFunction {
public:
    using Map = std::function<Rational(std::int64_t)>;

    static constexpr std::int64_t probe_lo = -16;
    static constexpr std::int64_t probe_hi = 15;

    /// f defaults to the forward difference of F.
    explicit GeneratingFunction(Map F, Map f = {}) : F_(std::move(F)), f_(std::move(f)) {
        if (!f_) {
            f_ = [F = F_](std::int64_t z) { return F(z + 1) - F(z); };
            return;
        }
        for (std::int64_t z = probe_lo; z <= probe_hi; ++z) {
            if (F_(z + 1) - F_(z) != f_(z)) {
                throw error(errc::bad_generating_function, "F(z+1) - F(z) != f(z) at z=" + std::to_string(z));
            }
        }
    }

    Rational F(std::int64_t z) const { return F_(z); }
    Rational f(std::int64_t z) const { return f_(z); }

private:
    Map F_;
    Map f_;
};

/// F(b+1) - F(a), the value assigned to the sum of f over Z_{a,b}. For a
/// finite range this equals the direct sum; for an infinite range it is
/// the framework's assignment, with no convergence check.
inline Rational sum_over_range(const GeneratingFunction& g, std::int64_t a, std::int64_t b) {
    return g.F(b + 1) - g.F(a);
}

/// Term-by-term sum over the members of a finite range.
inline Rational direct_sum(const GeneratingFunction& g, const ZRange& range) {
    Rational s = 0;
    for (std::int64_t u : range.members()) s += g.f(u);
    return s;
}

/// Sum over the union of two disjoint classical intervals, block by block.
inline Rational split_sum(const GeneratingFunction& g, const ClassicalInterval& first, const ClassicalInterval& second) {
    if (!first.empty() && !second.empty() && std::max(first.lo, second.lo) <= std::min(first.hi, second.hi)) {
        throw error(errc::overlapping_intervals, "[" + std::to_string(first.lo) + "," + std::to_string(first.hi) +
                                                     "] and [" + std::to_string(second.lo) + "," +
                                                     std::to_string(second.hi) + "]");
    }
    Rational s = 0;
    for (const auto& part : {first, second}) {
        if (!part.empty()) s += sum_over_range(g, part.lo, part.hi);
    }
    return s;
}

/// Q with Q(n+1) - Q(n) = p(n) and Q(0) = 0, so that p is regular with
/// generating function Q. Solved on coefficients from the top degree down.
inline Polynomial find_polynomial_telescoper(const Polynomial& p) {
    const int d = p.degree();
    if (d < 0) return {};
    // Unknowns c_1..c_{d+1}; Q(n+1) - Q(n) = sum_j c_j ((n+1)^j - n^j).
    std::vector<Rational> c(static_cast<std::size_t>(d) + 2);
    for (int i = d; i >= 0; --i) {
        // Coefficient of n^i collects c_j * C(j, i) for j > i.
        Rational rhs = p.coefficient(static_cast<std::size_t>(i));
        for (int j = i + 2; j <= d + 1; ++j) {
            rhs -= c[static_cast<std::size_t>(j)] * generalized_binomial(Rational(j), static_cast<std::uint64_t>(i));
        }
        c[static_cast<std::size_t>(i) + 1] = rhs / Rational(i + 1);
    }
    return Polynomial(std::move(c));
}

} // namespace regsum
