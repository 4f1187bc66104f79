#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "germcalc/errors.hpp"
#include "germcalc/ring.hpp"

namespace germcalc {

/// Truncated univariate power series: coefficients of x^0 .. x^N for an
/// inclusive truncation order N. All operations are pure; values are never
/// mutated after construction by the algorithms in this library.
template <class R>
class Series1 {
public:
    explicit Series1(int order) : order_(order) {
        if (order < 0) throw OutOfRangeError("series order must be >= 0");
        c_.assign(static_cast<std::size_t>(order) + 1, RingTraits<R>::zero());
    }

    static Series1 zero(int order) { return Series1(order); }

    static Series1 constant(const R& v, int order) {
        Series1 s(order);
        s.c_[0] = v;
        return s;
    }

    static Series1 variable(int order) {
        Series1 s(order);
        if (order >= 1) s.c_[1] = RingTraits<R>::one();
        return s;
    }

    static Series1 monomial(int k, const R& v, int order) {
        Series1 s(order);
        if (k < 0) throw OutOfRangeError("negative exponent");
        if (k <= order) s.c_[static_cast<std::size_t>(k)] = v;
        return s;
    }

    int order() const { return order_; }

    const R& coeff(int k) const {
        static const R zero_v = RingTraits<R>::zero();
        if (k < 0 || k > order_) return zero_v;
        return c_[static_cast<std::size_t>(k)];
    }

    void set(int k, const R& v) {
        if (k < 0 || k > order_) throw OutOfRangeError("coefficient index beyond order");
        c_[static_cast<std::size_t>(k)] = v;
    }

    bool is_zero() const {
        for (const R& v : c_)
            if (!RingTraits<R>::is_zero(v)) return false;
        return true;
    }

    /// Index of the first nonzero coefficient; nullopt when the series
    /// vanishes up to its order (to be read as "valuation > order").
    std::optional<int> valuation() const {
        for (int k = 0; k <= order_; ++k)
            if (!RingTraits<R>::is_zero(c_[static_cast<std::size_t>(k)])) return k;
        return std::nullopt;
    }

    /// Resize to the given order: drop higher terms, or zero-pad. Padding is
    /// only meaningful when the value is polynomial data rather than the
    /// truncation of a longer series.
    Series1 truncated(int order) const {
        Series1 s(order);
        int upto = std::min(order, order_);
        for (int k = 0; k <= upto; ++k) s.c_[static_cast<std::size_t>(k)] = coeff(k);
        return s;
    }

    Series1 operator-() const {
        Series1 s = *this;
        for (R& v : s.c_) v = -v;
        return s;
    }

    friend Series1 operator+(const Series1& a, const Series1& b) {
        Series1 s(std::min(a.order_, b.order_));
        for (int k = 0; k <= s.order_; ++k)
            s.c_[static_cast<std::size_t>(k)] = a.coeff(k) + b.coeff(k);
        return s;
    }

    friend Series1 operator-(const Series1& a, const Series1& b) {
        Series1 s(std::min(a.order_, b.order_));
        for (int k = 0; k <= s.order_; ++k)
            s.c_[static_cast<std::size_t>(k)] = a.coeff(k) - b.coeff(k);
        return s;
    }

    friend Series1 operator*(const Series1& a, const Series1& b) {
        Series1 s(std::min(a.order_, b.order_));
        for (int i = 0; i <= std::min(a.order_, s.order_); ++i) {
            if (RingTraits<R>::is_zero(a.coeff(i))) continue;
            for (int j = 0; i + j <= s.order_ && j <= b.order_; ++j) {
                if (RingTraits<R>::is_zero(b.coeff(j))) continue;
                s.c_[static_cast<std::size_t>(i + j)] += a.coeff(i) * b.coeff(j);
            }
        }
        return s;
    }

    Series1 scaled(const Rat& s) const {
        Series1 r = *this;
        for (R& v : r.c_) v = RingTraits<R>::scale(v, s);
        return r;
    }

    Series1 derivative() const {
        Series1 s(std::max(order_ - 1, 0));
        for (int k = 1; k <= order_ && k - 1 <= s.order_; ++k)
            s.c_[static_cast<std::size_t>(k - 1)] = RingTraits<R>::scale(coeff(k), Rat(k));
        return s;
    }

    bool operator==(const Series1& o) const { return order_ == o.order_ && c_ == o.c_; }
    bool operator!=(const Series1& o) const { return !(*this == o); }

private:
    int order_;
    std::vector<R> c_;
};

template <class R>
bool agrees_to_order(const Series1<R>& a, const Series1<R>& b, int order) {
    for (int k = 0; k <= order; ++k)
        if (!(a.coeff(k) == b.coeff(k))) return false;
    return true;
}

/// Spec operation: index of the first nonzero coefficient.
template <class R>
std::optional<int> x_valuation(const Series1<R>& a) {
    return a.valuation();
}

/// g(f) for f with f(0) = 0, Horner evaluation at the common order.
template <class R>
Series1<R> compose1(const Series1<R>& g, const Series1<R>& f) {
    if (!RingTraits<R>::is_zero(f.coeff(0)))
        throw IllFormedCompositionError("substituted series has a nonzero constant term");
    int n = std::min(g.order(), f.order());
    Series1<R> ft = f.truncated(n);
    Series1<R> acc = Series1<R>::zero(n);
    for (int k = std::min(g.order(), n); k >= 0; --k) {
        acc = acc * ft;
        R c0 = acc.coeff(0) + g.coeff(k);
        acc.set(0, c0);
    }
    return acc;
}

/// Compositional inverse of f = f1*x + ..., f1 invertible: the unique g with
/// f(g(x)) = x (and then also g(f(x)) = x) up to the truncation order.
/// Solved order by order: with g correct to order m-1, the x^m defect of
/// f(g) is linear in the next coefficient with slope f1.
template <class R>
Series1<R> revert1(const Series1<R>& f) {
    if (!RingTraits<R>::is_zero(f.coeff(0)) || RingTraits<R>::is_zero(f.coeff(1)))
        throw NotReversibleError("valuation must be exactly 1");
    auto inv1 = RingTraits<R>::try_invert(f.coeff(1));
    if (!inv1) throw NotReversibleError("linear coefficient is not invertible");
    int n = f.order();
    Series1<R> g(n);
    if (n >= 1) g.set(1, *inv1);
    for (int m = 2; m <= n; ++m) {
        Series1<R> h = compose1(f.truncated(m), g.truncated(m));
        R defect = h.coeff(m);
        if (!RingTraits<R>::is_zero(defect)) g.set(m, -(defect * *inv1));
    }
    return g;
}

template <class R>
Series1<R> lift_series1(const Series1<Rat>& a) {
    Series1<R> out(a.order());
    for (int k = 0; k <= a.order(); ++k) out.set(k, RingTraits<R>::from_rat(a.coeff(k)));
    return out;
}

inline Series1<Rat> eval_lambda(const Series1<LambdaPoly>& a, const Rat& lam) {
    Series1<Rat> out(a.order());
    for (int k = 0; k <= a.order(); ++k) out.set(k, a.coeff(k).eval(lam));
    return out;
}

} // namespace germcalc
