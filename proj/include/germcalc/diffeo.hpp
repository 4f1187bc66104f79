#pragma once

#include <algorithm>

#include "germcalc/series2.hpp"

namespace germcalc {

/// Formal diffeomorphism fixing the origin, stored by the images of the two
/// coordinates. The maps handled by this library are strictly unipotent
/// (linear part the identity), which is what makes every exp/log sum below
/// terminate at the truncation order.
template <class R>
struct Diffeo2 {
    Series2<R> x_image;
    Series2<R> y_image;

    Diffeo2(Series2<R> sx, Series2<R> sy) : x_image(std::move(sx)), y_image(std::move(sy)) {
        if (!RingTraits<R>::is_zero(x_image.coeff(0, 0)) ||
            !RingTraits<R>::is_zero(y_image.coeff(0, 0)))
            throw InvalidSpecError("diffeomorphism must fix the origin");
    }

    int order() const { return std::min(x_image.order(), y_image.order()); }

    static Diffeo2 identity(int order) {
        return Diffeo2(Series2<R>::variable_x(order), Series2<R>::variable_y(order));
    }

    bool is_strictly_unipotent() const {
        const R one = RingTraits<R>::one();
        return x_image.coeff(1, 0) == one && RingTraits<R>::is_zero(x_image.coeff(0, 1)) &&
               RingTraits<R>::is_zero(y_image.coeff(1, 0)) && y_image.coeff(0, 1) == one;
    }
};

/// Formal vector field, stored by its two components (the coefficients of
/// d/dx and d/dy).
template <class R>
struct VectorField2 {
    Series2<R> x_comp;
    Series2<R> y_comp;

    VectorField2(Series2<R> ax, Series2<R> ay) : x_comp(std::move(ax)), y_comp(std::move(ay)) {}

    int order() const { return std::min(x_comp.order(), y_comp.order()); }

    static VectorField2 zero(int order) {
        return VectorField2(Series2<R>::zero(order), Series2<R>::zero(order));
    }

    /// Both components vanish to order >= 2; under this condition one
    /// application of the field raises the Krull valuation by at least one.
    bool has_order_two_components() const {
        auto vx = krull_valuation(x_comp);
        auto vy = krull_valuation(y_comp);
        return (!vx || *vx >= 2) && (!vy || *vy >= 2);
    }

    VectorField2 scaled(const Rat& s) const {
        return VectorField2(x_comp.scaled(s), y_comp.scaled(s));
    }
};

template <class R>
Diffeo2<R> compose(const Diffeo2<R>& outer, const Diffeo2<R>& inner) {
    return Diffeo2<R>(compose2(outer.x_image, inner.x_image, inner.y_image),
                      compose2(outer.y_image, inner.x_image, inner.y_image));
}

/// The operator phi - Id on series: g o phi - g.
template <class R>
Series2<R> theta_apply(const Diffeo2<R>& phi, const Series2<R>& g) {
    Series2<R> c = compose2(g, phi.x_image, phi.y_image);
    return c - g.truncated(c.order());
}

/// Lie derivative with the plain min-order truncation contract: the result
/// order is min(order(X), order(g) - 1) because of the derivative step.
template <class R>
Series2<R> apply_field(const VectorField2<R>& field, const Series2<R>& g) {
    Series2<R> dgx = partial(g, Var::X);
    Series2<R> dgy = partial(g, Var::Y);
    return field.x_comp * dgx + field.y_comp * dgy;
}

namespace detail {

/// Lie derivative kept at order n. Exact at n when the field components have
/// valuation >= 2: the unknown degree-n row of the derivatives only ever
/// multiplies coefficients of the components below valuation 2, which vanish.
template <class R>
Series2<R> lie_trunc(const VectorField2<R>& field, const Series2<R>& g, int n) {
    Series2<R> dgx = partial(g, Var::X);
    Series2<R> dgy = partial(g, Var::Y);
    return mul_trunc(field.x_comp, dgx, n) + mul_trunc(field.y_comp, dgy, n);
}

} // namespace detail

/// Infinitesimal generator of a strictly unipotent diffeomorphism: the
/// alternating sum of iterates of phi - Id, log(Id + Theta). Each Theta
/// application raises the valuation, so at truncation order N the sum stops
/// after at most N terms.
template <class R>
VectorField2<R> log_diffeo(const Diffeo2<R>& phi) {
    if (!phi.is_strictly_unipotent())
        throw NotUnipotentError("log requires a linear part equal to the identity");
    int n = phi.order();
    auto component = [&](const Series2<R>& image, const Series2<R>& var) {
        Series2<R> cur = image.truncated(n) - var.truncated(n); // Theta(coordinate)
        Series2<R> acc = cur;
        for (int j = 2; !cur.is_zero(); ++j) {
            cur = theta_apply(phi, cur);
            Rat weight = rat(j % 2 == 0 ? -1 : 1, j);
            acc = acc + cur.scaled(weight);
        }
        return acc;
    };
    return VectorField2<R>(component(phi.x_image, Series2<R>::variable_x(n)),
                           component(phi.y_image, Series2<R>::variable_y(n)));
}

/// sum_j X^j(g) / j! for a field with components of valuation >= 2; the sum
/// terminates because each application of X raises the valuation.
template <class R>
Series2<R> exp_apply(const VectorField2<R>& field, const Series2<R>& g) {
    if (!field.has_order_two_components())
        throw NotNilpotentError("exp requires field components of valuation >= 2");
    int n = std::min(field.order(), g.order());
    Series2<R> acc = g.truncated(n);
    Series2<R> cur = acc;
    Rat fact(1);
    for (int j = 1; ; ++j) {
        cur = detail::lie_trunc(field, cur, n);
        if (cur.is_zero()) break;
        fact /= j;
        acc = acc + cur.scaled(fact);
    }
    return acc;
}

/// The diffeomorphism exp(X) = (exp(X)(x), exp(X)(y)).
template <class R>
Diffeo2<R> exp_diffeo(const VectorField2<R>& field) {
    int n = field.order();
    return Diffeo2<R>(exp_apply(field, Series2<R>::variable_x(n)),
                      exp_apply(field, Series2<R>::variable_y(n)));
}

/// Formal flow exp(tX)(g) with the flow time carried by the polynomial
/// coefficient slot: the result coefficients are polynomials in t of finite
/// degree. Evaluating at t = 1 recovers exp_apply.
inline Series2<LambdaPoly> flow_poly_t(const VectorField2<Rat>& field, const Series2<Rat>& g) {
    if (!field.has_order_two_components())
        throw NotNilpotentError("flow requires field components of valuation >= 2");
    int n = std::min(field.order(), g.order());
    Series2<LambdaPoly> acc = lift_series2<LambdaPoly>(g.truncated(n));
    Series2<Rat> cur = g.truncated(n);
    Rat fact(1);
    for (int j = 1; ; ++j) {
        cur = detail::lie_trunc(field, cur, n);
        if (cur.is_zero()) break;
        fact /= j;
        for (int d = 0; d <= n; ++d)
            for (int yk = 0; yk <= d; ++yk) {
                const Rat& v = cur.coeff(d - yk, yk);
                if (!rat_is_zero(v))
                    acc.at(d - yk, yk) += LambdaPoly::monomial(j, v * fact);
            }
    }
    return acc;
}

} // namespace germcalc
