#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "germcalc/diffeo.hpp"
#include "germcalc/series2.hpp"

namespace germcalc {

/// Defining data of a family member phi_{Delta,w}(x,y) =
/// (x + y(y-x) Delta, y + y(y-x) w). Delta and w are finite term lists and
/// are treated as exact polynomial data, so internal computations may carry
/// them at guard orders above the requested truncation order.
struct GermSpec {
    Series2<Rat> delta;
    Series2<Rat> w;
    int order;

    GermSpec(Series2<Rat> delta_in, Series2<Rat> w_in, int order_in)
        : delta(delta_in.truncated(order_in)), w(w_in.truncated(order_in)), order(order_in) {
        if (order < 2) throw OutOfRangeError("germ truncation order must be >= 2");
        if (!rat_is_zero(delta.coeff(0, 0)))
            throw InvalidSpecError("Delta must vanish at the origin");
        if (rat_is_zero(w.coeff(0, 0))) throw InvalidSpecError("w must be a unit");
    }
};

namespace detail {

template <class R>
Diffeo2<R> family_diffeo(const Series2<R>& delta, const Series2<R>& w, int order) {
    Series2<R> q = lift_series2<R>(fixed_lines_poly(order));
    Series2<R> sx = Series2<R>::variable_x(order) + mul_trunc(q, delta, order);
    Series2<R> sy = Series2<R>::variable_y(order) + mul_trunc(q, w, order);
    return Diffeo2<R>(std::move(sx), std::move(sy));
}

/// log phi_{Delta,w} / (y(y-x)) at the requested order. The generator is
/// computed at order+2 so that dividing out the valuation-2 factor still
/// yields the full order; the inputs are zero-padded (polynomial data).
template <class R>
VectorField2<R> l_field_components(const Series2<R>& delta, const Series2<R>& w, int order) {
    int hi = order + 2;
    Diffeo2<R> phi = family_diffeo(delta.truncated(hi), w.truncated(hi), hi);
    VectorField2<R> gen = log_diffeo(phi);
    Series2<R> lx(order), ly(order);
    try {
        lx = divide_by_y_minus_x(divide_by_y(gen.x_comp));
        ly = divide_by_y_minus_x(divide_by_y(gen.y_comp));
    } catch (const NotDivisibleError& e) {
        throw InvariantBreachError("generator of a family member must lie in (y(y-x)); failed at (" +
                                   std::to_string(e.xk()) + "," + std::to_string(e.yk()) + ")");
    }
    if (!(lx.coeff(0, 0) == delta.coeff(0, 0)) || !(ly.coeff(0, 0) == w.coeff(0, 0)))
        throw InvariantBreachError("reduced generator has wrong leading coefficients");
    return VectorField2<R>(std::move(lx), std::move(ly));
}

/// First integral of a reduced field L = a d/dx + b d/dy with b a unit,
/// normalized by a y-free part equal to x. Solved layer by layer in powers
/// of y: with c = -a/b, (k+1) f_{k+1} = sum_j c_j d f_{k-j}/dx.
template <class R>
Series2<R> first_integral_from_field(const VectorField2<R>& field, int order) {
    Series2<R> b = field.y_comp.truncated(order);
    Series2<R> c = -(field.x_comp.truncated(order) * invert_unit(b));
    auto row = [](const Series2<R>& s, int k) {
        Series1<R> r(std::max(s.order() - k, 0));
        for (int j = 0; j + k <= s.order(); ++j) r.set(j, s.coeff(j, k));
        return r;
    };
    std::vector<Series1<R>> c_rows, f_rows;
    for (int k = 0; k <= order; ++k) c_rows.push_back(row(c, k));
    f_rows.push_back(Series1<R>::variable(order));
    for (int k = 0; k + 1 <= order; ++k) {
        Series1<R> rhs = c_rows[0] * f_rows[static_cast<std::size_t>(k)].derivative();
        for (int j = 1; j <= k; ++j)
            rhs = rhs + c_rows[static_cast<std::size_t>(j)] *
                            f_rows[static_cast<std::size_t>(k - j)].derivative();
        f_rows.push_back(rhs.scaled(rat(1, k + 1)).truncated(order - k - 1));
    }
    Series2<R> f(order);
    for (int k = 0; k <= order; ++k)
        for (int j = 0; j + k <= order; ++j) {
            const R& v = f_rows[static_cast<std::size_t>(k)].coeff(j);
            if (!RingTraits<R>::is_zero(v)) f.at(j, k) = v;
        }
    return f;
}

} // namespace detail

inline Diffeo2<Rat> build_phi(const GermSpec& spec) {
    return detail::family_diffeo(spec.delta, spec.w, spec.order);
}

/// Family member with Delta replaced by lambda * Delta.
inline Diffeo2<Rat> build_phi(const GermSpec& spec, const Rat& lambda_scale) {
    return detail::family_diffeo(spec.delta.scaled(lambda_scale), spec.w, spec.order);
}

/// Family member with a symbolic lambda scale on Delta; coefficients become
/// polynomials in lambda.
inline Diffeo2<LambdaPoly> build_phi_lambda(const GermSpec& spec) {
    Series2<LambdaPoly> dl =
        lift_series2<LambdaPoly>(spec.delta).scaled_ring(LambdaPoly::lambda());
    Series2<LambdaPoly> wl = lift_series2<LambdaPoly>(spec.w);
    return detail::family_diffeo(dl, wl, spec.order);
}

/// The reduced generator L_{Delta,w} = log phi_{Delta,w} / (y(y-x)) at the
/// spec's order.
inline VectorField2<Rat> l_field(const GermSpec& spec) {
    return detail::l_field_components(spec.delta, spec.w, spec.order);
}

struct FixSetResult {
    bool fixes_both_lines = false;
    // First offending bidegree and component when the check fails.
    int witness_xk = -1;
    int witness_yk = -1;
    char component = ' ';
};

/// Checks that both components of phi - Id lie in the ideal (y(y-x)), i.e.
/// that phi fixes the pair of lines y = 0 and y = x pointwise.
template <class R>
FixSetResult fix_set_check(const Diffeo2<R>& phi) {
    int n = phi.order();
    Series2<R> q = lift_series2<R>(fixed_lines_poly(n));
    FixSetResult res;
    const Series2<R> comps[2] = {phi.x_image - Series2<R>::variable_x(n),
                                 phi.y_image - Series2<R>::variable_y(n)};
    const char names[2] = {'x', 'y'};
    for (int i = 0; i < 2; ++i) {
        try {
            (void)divide_ideal(comps[i], q);
        } catch (const NotDivisibleError& e) {
            res.fixes_both_lines = false;
            res.witness_xk = e.xk();
            res.witness_yk = e.yk();
            res.component = names[i];
            return res;
        }
    }
    res.fixes_both_lines = true;
    return res;
}

/// Determinant of the Jacobian matrix restricted to y = 0 (series in x) and
/// to y = x (parametrized by x). Both are formal conjugacy invariants of the
/// family member.
template <class R>
std::pair<Series1<R>, Series1<R>> jacobian_restrictions(const Diffeo2<R>& phi) {
    Series2<R> j = partial(phi.x_image, Var::X) * partial(phi.y_image, Var::Y) -
                   partial(phi.x_image, Var::Y) * partial(phi.y_image, Var::X);
    return {restrict_y0(j), restrict_diag(j)};
}

/// The unique first integral of L_{Delta,w} with y-free part x.
inline Series2<Rat> first_integral(const GermSpec& spec) {
    return detail::first_integral_from_field(l_field(spec), spec.order);
}

/// Transport mapping along trajectories from the line y = 0 to y = x,
/// expressed in the x coordinate: Tr(x, 0) = (a(x), a(x)).
struct TransportMap {
    Series1<Rat> a;

    explicit TransportMap(Series1<Rat> a_in) : a(std::move(a_in)) {
        if (!rat_is_zero(a.coeff(0)) || !(a.coeff(1) == Rat(1)))
            throw InvariantBreachError("transport map must be tangent to the identity");
    }

    int order() const { return a.order(); }
};

/// With the normalization f(x,0) = x the transport reduces to the
/// compositional inverse of the diagonal restriction of the first integral.
inline TransportMap transport(const GermSpec& spec) {
    Series1<Rat> diag = restrict_diag(first_integral(spec));
    try {
        return TransportMap(revert1(diag));
    } catch (const NotReversibleError&) {
        throw InvariantBreachError("diagonal restriction of the first integral must have valuation 1");
    }
}

/// First integral of the affine family phi_{lambda Delta, w}, with
/// lambda-polynomial coefficients: f = x + y * sum f_{j,k}(lambda) x^j y^k.
/// The degree bound deg f_{j,k} <= j+k is asserted for every entry; a
/// violation can only come from an arithmetic bug, so it is fatal.
struct ParamFirstIntegral {
    Series2<LambdaPoly> f;

    explicit ParamFirstIntegral(Series2<LambdaPoly> f_in) : f(std::move(f_in)) {
        for (int d = 1; d <= f.order(); ++d)
            for (int yk = 1; yk <= d; ++yk) {
                const LambdaPoly& entry = f.coeff(d - yk, yk);
                int bound = d - 1; // j + k for the table entry f_{j, yk-1}
                if (entry.degree() > bound)
                    throw DegreeBoundViolatedError(
                        "entry (" + std::to_string(d - yk) + "," + std::to_string(yk - 1) +
                        ") has lambda degree " + std::to_string(entry.degree()) +
                        " > " + std::to_string(bound));
                if (!rat_is_zero(entry.coeff(0)))
                    throw InvariantBreachError("parametric first integral must reduce to x at lambda = 0");
            }
    }

    int order() const { return f.order(); }

    /// Table entry f_{j,k} (the coefficient of y^{k+1} x^j).
    const LambdaPoly& entry(int j, int k) const { return f.coeff(j, k + 1); }

    /// First integral of the lambda0-scaled family member.
    Series2<Rat> specialize(const Rat& lambda0) const { return eval_lambda(f, lambda0); }
};

inline ParamFirstIntegral parametric_first_integral(const GermSpec& spec) {
    Series2<LambdaPoly> dl =
        lift_series2<LambdaPoly>(spec.delta).scaled_ring(LambdaPoly::lambda());
    Series2<LambdaPoly> wl = lift_series2<LambdaPoly>(spec.w);
    VectorField2<LambdaPoly> field = detail::l_field_components(dl, wl, spec.order);
    return ParamFirstIntegral(detail::first_integral_from_field(field, spec.order));
}

/// d f_lambda / d lambda at lambda = 0: the series whose (j, k+1)
/// coefficient is the lambda-linear coefficient of f_{j,k}. Solves the
/// homological equation eps - eps o phi_{0,w} = y(y-x) Delta and vanishes
/// on y = 0.
inline Series2<Rat> epsilon_from_family(const ParamFirstIntegral& pfi) {
    int n = pfi.order();
    Series2<Rat> eps(n);
    for (int d = 1; d <= n; ++d)
        for (int yk = 1; yk <= d; ++yk) {
            const Rat& lin = pfi.f.coeff(d - yk, yk).coeff(1);
            if (!rat_is_zero(lin)) eps.at(d - yk, yk) = lin;
        }
    return eps;
}

} // namespace germcalc
