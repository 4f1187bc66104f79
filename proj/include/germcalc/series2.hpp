#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "germcalc/errors.hpp"
#include "germcalc/ring.hpp"
#include "germcalc/series1.hpp"

namespace germcalc {

enum class Var { X, Y };

/// Truncated bivariate power series over the coefficient ring R, cut off by
/// TOTAL degree: terms x^j y^k with j+k <= order are significant. Storage is
/// a dense triangular array of (N+1)(N+2)/2 entries, degree-major, indexed
/// within a degree by the y-exponent.
template <class R>
class Series2 {
public:
    explicit Series2(int order) : order_(order) {
        if (order < 0) throw OutOfRangeError("series order must be >= 0");
        c_.assign(triangle(order + 1), RingTraits<R>::zero());
    }

    static Series2 zero(int order) { return Series2(order); }

    static Series2 constant(const R& v, int order) {
        Series2 s(order);
        s.c_[0] = v;
        return s;
    }

    static Series2 monomial(int xk, int yk, const R& v, int order) {
        if (xk < 0 || yk < 0) throw OutOfRangeError("negative exponent");
        Series2 s(order);
        if (xk + yk <= order) s.at(xk, yk) = v;
        return s;
    }

    static Series2 variable_x(int order) { return monomial(1, 0, RingTraits<R>::one(), order); }
    static Series2 variable_y(int order) { return monomial(0, 1, RingTraits<R>::one(), order); }

    int order() const { return order_; }

    const R& coeff(int xk, int yk) const {
        static const R zero_v = RingTraits<R>::zero();
        if (xk < 0 || yk < 0 || xk + yk > order_) return zero_v;
        return c_[offset(xk, yk)];
    }

    R& at(int xk, int yk) {
        if (xk < 0 || yk < 0 || xk + yk > order_)
            throw OutOfRangeError("coefficient index beyond order");
        return c_[offset(xk, yk)];
    }

    void set(int xk, int yk, const R& v) { at(xk, yk) = v; }

    bool is_zero() const {
        for (const R& v : c_)
            if (!RingTraits<R>::is_zero(v)) return false;
        return true;
    }

    /// Resize to the given order: drop higher-degree terms, or zero-pad.
    /// Padding is only sound for values known to be polynomial data.
    Series2 truncated(int order) const {
        Series2 s(order);
        int upto = std::min(order, order_);
        for (int d = 0; d <= upto; ++d)
            for (int yk = 0; yk <= d; ++yk) s.c_[s.offset(d - yk, yk)] = c_[offset(d - yk, yk)];
        return s;
    }

    Series2 operator-() const {
        Series2 s = *this;
        for (R& v : s.c_) v = -v;
        return s;
    }

    friend Series2 operator+(const Series2& a, const Series2& b) {
        Series2 s = a.truncated(std::min(a.order_, b.order_));
        for (int d = 0; d <= s.order_; ++d)
            for (int yk = 0; yk <= d; ++yk) s.c_[s.offset(d - yk, yk)] += b.coeff(d - yk, yk);
        return s;
    }

    friend Series2 operator-(const Series2& a, const Series2& b) {
        Series2 s = a.truncated(std::min(a.order_, b.order_));
        for (int d = 0; d <= s.order_; ++d)
            for (int yk = 0; yk <= d; ++yk) s.c_[s.offset(d - yk, yk)] -= b.coeff(d - yk, yk);
        return s;
    }

    friend Series2 operator*(const Series2& a, const Series2& b) {
        return mul_trunc(a, b, std::min(a.order_, b.order_));
    }

    Series2 scaled(const Rat& s) const {
        Series2 r = *this;
        for (R& v : r.c_) v = RingTraits<R>::scale(v, s);
        return r;
    }

    Series2 scaled_ring(const R& s) const {
        Series2 r = *this;
        for (R& v : r.c_) v = v * s;
        return r;
    }

    /// r += other * factor, over the stored triangle of `other`.
    void add_scaled(const Series2& other, const R& factor) {
        if (RingTraits<R>::is_zero(factor)) return;
        int upto = std::min(order_, other.order_);
        for (int d = 0; d <= upto; ++d)
            for (int yk = 0; yk <= d; ++yk) {
                const R& v = other.c_[other.offset(d - yk, yk)];
                if (!RingTraits<R>::is_zero(v)) c_[offset(d - yk, yk)] += v * factor;
            }
    }

    bool operator==(const Series2& o) const { return order_ == o.order_ && c_ == o.c_; }
    bool operator!=(const Series2& o) const { return !(*this == o); }

    /// Product of the stored terms, truncated at `order`. The caller is
    /// responsible for `order` being within the range where the result is
    /// determined by the operands (the plain operator* uses the safe
    /// min(Na, Nb); higher orders are sound e.g. when one factor is exact
    /// polynomial data or has known valuation).
    friend Series2 mul_trunc(const Series2& a, const Series2& b, int order) {
        Series2 s(order);
        for (int d1 = 0; d1 <= std::min(a.order_, order); ++d1) {
            for (int y1 = 0; y1 <= d1; ++y1) {
                const R& av = a.c_[a.offset(d1 - y1, y1)];
                if (RingTraits<R>::is_zero(av)) continue;
                int dmax = std::min(b.order_, order - d1);
                for (int d2 = 0; d2 <= dmax; ++d2) {
                    for (int y2 = 0; y2 <= d2; ++y2) {
                        const R& bv = b.c_[b.offset(d2 - y2, y2)];
                        if (RingTraits<R>::is_zero(bv)) continue;
                        s.c_[s.offset(d1 + d2 - y1 - y2, y1 + y2)] += av * bv;
                    }
                }
            }
        }
        return s;
    }

private:
    static std::size_t triangle(int d) {
        return static_cast<std::size_t>(d) * static_cast<std::size_t>(d + 1) / 2;
    }
    std::size_t offset(int xk, int yk) const {
        return triangle(xk + yk) + static_cast<std::size_t>(yk);
    }

    int order_;
    std::vector<R> c_;
};

template <class R>
bool agrees_to_order(const Series2<R>& a, const Series2<R>& b, int order) {
    for (int d = 0; d <= order; ++d)
        for (int yk = 0; yk <= d; ++yk)
            if (!(a.coeff(d - yk, yk) == b.coeff(d - yk, yk))) return false;
    return true;
}

/// Least total degree carrying a nonzero coefficient; nullopt when the series
/// vanishes up to its order (to be read as "valuation > order").
template <class R>
std::optional<int> krull_valuation(const Series2<R>& a) {
    for (int d = 0; d <= a.order(); ++d)
        for (int yk = 0; yk <= d; ++yk)
            if (!RingTraits<R>::is_zero(a.coeff(d - yk, yk))) return d;
    return std::nullopt;
}

/// g(sx, sy) at the common order. The substituted pair must fix the origin;
/// powers of sx and sy are built incrementally and reused across the
/// homogeneous layers of g.
template <class R>
Series2<R> compose2(const Series2<R>& g, const Series2<R>& sx, const Series2<R>& sy) {
    if (!RingTraits<R>::is_zero(sx.coeff(0, 0)) || !RingTraits<R>::is_zero(sy.coeff(0, 0)))
        throw IllFormedCompositionError("substituted pair must have zero constant terms");
    int n = std::min(g.order(), std::min(sx.order(), sy.order()));
    Series2<R> out(n);
    Series2<R> px = Series2<R>::constant(RingTraits<R>::one(), n);
    for (int j = 0; j <= n; ++j) {
        if (j > 0) {
            px = mul_trunc(px, sx, n);
            if (px.is_zero()) break;
        }
        int kmax = -1;
        for (int k = 0; j + k <= std::min(g.order(), n); ++k)
            if (!RingTraits<R>::is_zero(g.coeff(j, k))) kmax = k;
        if (kmax < 0) continue;
        Series2<R> cur = px;
        for (int k = 0; k <= kmax; ++k) {
            if (k > 0) {
                cur = mul_trunc(cur, sy, n);
                if (cur.is_zero()) break;
            }
            out.add_scaled(cur, g.coeff(j, k));
        }
    }
    return out;
}

/// Multiplicative inverse of a unit, via the geometric series in
/// 1 - u/u(0,0): u = c(1 - b) with val(b) >= 1 gives 1/u = (1/c) sum b^j.
template <class R>
Series2<R> invert_unit(const Series2<R>& u) {
    auto cinv = RingTraits<R>::try_invert(u.coeff(0, 0));
    if (!cinv) throw NonUnitError("constant term is not invertible");
    int n = u.order();
    Series2<R> b = Series2<R>::constant(RingTraits<R>::one(), n) - u.scaled_ring(*cinv);
    Series2<R> acc = Series2<R>::constant(RingTraits<R>::one(), n);
    Series2<R> p = b;
    while (!p.is_zero()) {
        acc = acc + p;
        p = p * b;
    }
    return acc.scaled_ring(*cinv);
}

/// Exact division by y. Fails on any term with zero y-exponent.
template <class R>
Series2<R> divide_by_y(const Series2<R>& a) {
    if (a.order() < 1) {
        if (!RingTraits<R>::is_zero(a.coeff(0, 0))) throw NotDivisibleError(0, 0);
        return Series2<R>::zero(0);
    }
    Series2<R> out(a.order() - 1);
    for (int d = 0; d <= a.order(); ++d) {
        for (int yk = 0; yk <= d; ++yk) {
            const R& v = a.coeff(d - yk, yk);
            if (RingTraits<R>::is_zero(v)) continue;
            if (yk == 0) throw NotDivisibleError(d, 0);
            out.at(d - yk, yk - 1) = v;
        }
    }
    return out;
}

/// Exact division by (y - x), degree by degree. Writing a = (y-x)b forces
/// a_{j,k} = b_{j,k-1} - b_{j-1,k}; the quotient entries follow from the
/// k = 0 edge and the surviving relation at k = d is the divisibility check.
template <class R>
Series2<R> divide_by_y_minus_x(const Series2<R>& a) {
    if (a.order() < 1) {
        if (!RingTraits<R>::is_zero(a.coeff(0, 0))) throw NotDivisibleError(0, 0);
        return Series2<R>::zero(0);
    }
    Series2<R> out(a.order() - 1);
    for (int d = 1; d <= a.order(); ++d) {
        R carry = -a.coeff(d, 0); // b_{d-1,0}
        out.at(d - 1, 0) = carry;
        for (int k = 1; k < d; ++k) {
            carry = carry - a.coeff(d - k, k); // b_{d-1-k,k} = b_{d-k,k-1} - a_{d-k,k}
            out.at(d - 1 - k, k) = carry;
        }
        if (!(carry == a.coeff(0, d))) throw NotDivisibleError(0, d);
    }
    // Degree-0 remainder: a has no constant term iff divisible.
    if (!RingTraits<R>::is_zero(a.coeff(0, 0))) throw NotDivisibleError(0, 0);
    return out;
}

namespace detail {

/// Recognizes q as c * y^ey * (y-x)^eyx with c an invertible constant.
template <class R>
void factor_divisor(const Series2<R>& q, int& ey, int& eyx, R& cinv) {
    Series2<R> rest = q;
    ey = 0;
    eyx = 0;
    for (;;) {
        auto val = krull_valuation(rest);
        if (!val) throw Error("divide_ideal: zero divisor");
        if (*val == 0) break;
        bool y_ok = true;
        for (int d = 0; d <= rest.order() && y_ok; ++d)
            if (!RingTraits<R>::is_zero(rest.coeff(d, 0))) y_ok = false;
        if (y_ok) {
            rest = divide_by_y(rest);
            ++ey;
            continue;
        }
        try {
            rest = divide_by_y_minus_x(rest);
            ++eyx;
        } catch (const NotDivisibleError&) {
            throw Error("divide_ideal: divisor is not a product of y and (y-x) factors");
        }
    }
    for (int d = 1; d <= rest.order(); ++d)
        for (int yk = 0; yk <= d; ++yk)
            if (!RingTraits<R>::is_zero(rest.coeff(d - yk, yk)))
                throw Error("divide_ideal: divisor is not a product of y and (y-x) factors");
    auto inv = RingTraits<R>::try_invert(rest.coeff(0, 0));
    if (!inv) throw Error("divide_ideal: divisor constant is not invertible");
    cinv = *inv;
}

} // namespace detail

/// Exact division of truncated data by q, where q is a constant multiple of
/// y^a (y-x)^b (q = y(y-x) in every internal caller). The quotient order is
/// the dividend order minus the valuation of q; a failed division reports
/// the first offending bidegree relative to the dividend.
template <class R>
Series2<R> divide_ideal(const Series2<R>& a, const Series2<R>& q) {
    int ey = 0, eyx = 0;
    R cinv = RingTraits<R>::one();
    detail::factor_divisor(q, ey, eyx, cinv);
    Series2<R> cur = a;
    int stripped = 0;
    for (int i = 0; i < ey; ++i) {
        try {
            cur = divide_by_y(cur);
        } catch (const NotDivisibleError& e) {
            throw NotDivisibleError(e.xk(), e.yk() + stripped);
        }
        ++stripped;
    }
    for (int i = 0; i < eyx; ++i) {
        try {
            cur = divide_by_y_minus_x(cur);
        } catch (const NotDivisibleError& e) {
            throw NotDivisibleError(e.xk(), e.yk() + stripped);
        }
        ++stripped;
    }
    return cur.scaled_ring(cinv);
}

/// Formal partial derivative; the truncation order drops by one (floored at
/// zero so constants stay representable).
template <class R>
Series2<R> partial(const Series2<R>& a, Var var) {
    Series2<R> out(std::max(a.order() - 1, 0));
    for (int d = 1; d <= a.order(); ++d) {
        if (d - 1 > out.order()) break;
        for (int yk = 0; yk <= d; ++yk) {
            int xk = d - yk;
            const R& v = a.coeff(xk, yk);
            if (RingTraits<R>::is_zero(v)) continue;
            if (var == Var::X && xk >= 1)
                out.at(xk - 1, yk) += RingTraits<R>::scale(v, Rat(xk));
            else if (var == Var::Y && yk >= 1)
                out.at(xk, yk - 1) += RingTraits<R>::scale(v, Rat(yk));
        }
    }
    return out;
}

/// Termwise antiderivative in y with zero y-free part; the order rises by
/// one, and the result is exact at that order since the missing x^(N+1) row
/// is pinned to zero by the normalization.
template <class R>
Series2<R> antiderivative_y(const Series2<R>& a) {
    Series2<R> out(a.order() + 1);
    for (int d = 0; d <= a.order(); ++d)
        for (int yk = 0; yk <= d; ++yk) {
            const R& v = a.coeff(d - yk, yk);
            if (!RingTraits<R>::is_zero(v))
                out.at(d - yk, yk + 1) = RingTraits<R>::scale(v, Rat(1, yk + 1));
        }
    return out;
}

template <class R>
Series1<R> restrict_y0(const Series2<R>& a) {
    Series1<R> out(a.order());
    for (int j = 0; j <= a.order(); ++j) out.set(j, a.coeff(j, 0));
    return out;
}

template <class R>
Series1<R> restrict_x0(const Series2<R>& a) {
    Series1<R> out(a.order());
    for (int k = 0; k <= a.order(); ++k) out.set(k, a.coeff(0, k));
    return out;
}

/// a(x, x) as a univariate series, exact at the same order.
template <class R>
Series1<R> restrict_diag(const Series2<R>& a) {
    Series1<R> out(a.order());
    for (int d = 0; d <= a.order(); ++d) {
        R acc = RingTraits<R>::zero();
        for (int yk = 0; yk <= d; ++yk) acc += a.coeff(d - yk, yk);
        out.set(d, acc);
    }
    return out;
}

/// a(s*x, s*y): scales the degree-d layer by s^d.
template <class R>
Series2<R> scale_vars(const Series2<R>& a, const Rat& s) {
    Series2<R> out(a.order());
    Rat p(1);
    for (int d = 0; d <= a.order(); ++d) {
        for (int yk = 0; yk <= d; ++yk) {
            const R& v = a.coeff(d - yk, yk);
            if (!RingTraits<R>::is_zero(v)) out.at(d - yk, yk) = RingTraits<R>::scale(v, p);
        }
        p *= s;
    }
    return out;
}

/// Embeds a univariate series in x as a bivariate one.
template <class R>
Series2<R> embed_x(const Series1<R>& a, int order) {
    Series2<R> out(order);
    for (int j = 0; j <= std::min(a.order(), order); ++j)
        if (!RingTraits<R>::is_zero(a.coeff(j))) out.at(j, 0) = a.coeff(j);
    return out;
}

template <class R>
Series2<R> lift_series2(const Series2<Rat>& a) {
    Series2<R> out(a.order());
    for (int d = 0; d <= a.order(); ++d)
        for (int yk = 0; yk <= d; ++yk) {
            const Rat& v = a.coeff(d - yk, yk);
            if (!rat_is_zero(v)) out.at(d - yk, yk) = RingTraits<R>::from_rat(v);
        }
    return out;
}

inline Series2<Rat> eval_lambda(const Series2<LambdaPoly>& a, const Rat& lam) {
    Series2<Rat> out(a.order());
    for (int d = 0; d <= a.order(); ++d)
        for (int yk = 0; yk <= d; ++yk) {
            const LambdaPoly& v = a.coeff(d - yk, yk);
            if (!v.is_zero()) out.at(d - yk, yk) = v.eval(lam);
        }
    return out;
}

/// y(y - x), the defining polynomial of the fixed-point pair of lines.
inline Series2<Rat> fixed_lines_poly(int order) {
    Series2<Rat> q(order);
    if (order >= 2) {
        q.at(0, 2) = Rat(1);
        q.at(1, 1) = Rat(-1);
    }
    return q;
}

} // namespace germcalc
