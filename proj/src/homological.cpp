#include "germcalc/homological.hpp"

#include <algorithm>

#include "germcalc/germ.hpp"

namespace germcalc {

Phi0Context make_phi0_context(const Series2<Rat>& w, int order) {
    if (order < 2) throw OutOfRangeError("context order must be >= 2");
    if (rat_is_zero(w.coeff(0, 0))) throw InvalidSpecError("w must be a unit");
    int hi = order + 2;
    Diffeo2<Rat> phi_hi =
        detail::family_diffeo(Series2<Rat>::zero(hi), w.truncated(hi), hi);
    VectorField2<Rat> gen = log_diffeo(phi_hi);
    // x o phi_{0,w} = x forces a vanishing x-component of the generator.
    if (!gen.x_comp.is_zero())
        throw InvariantBreachError("generator of phi_{0,w} must be d/dy-collinear");
    Series2<Rat> w_hat(order);
    try {
        w_hat = divide_by_y_minus_x(divide_by_y(gen.y_comp));
    } catch (const NotDivisibleError&) {
        throw InvariantBreachError("generator of phi_{0,w} must lie in (y(y-x))");
    }
    Diffeo2<Rat> phi(phi_hi.x_image.truncated(order), phi_hi.y_image.truncated(order));
    return Phi0Context{w.truncated(order), order, std::move(phi), std::move(gen),
                       std::move(w_hat)};
}

namespace {

/// -(1/ y(y-x)) sum_{k>=2} X^{k-1}(y(y-x) D)/k! — the correction absorbed
/// into the next right-hand side. Exact at the order of D: the products stay
/// at the guard order where the generator is known.
Series2<Rat> next_correction(const Phi0Context& ctx, const Series2<Rat>& d, int n) {
    int hi = n + 2;
    Series2<Rat> q = fixed_lines_poly(hi);
    Series2<Rat> t = mul_trunc(q, d, hi);
    Series2<Rat> acc(hi);
    Series2<Rat> cur = t;
    Rat fact(1);
    for (int k = 2;; ++k) {
        cur = detail::lie_trunc(ctx.gen, cur, hi);
        if (cur.is_zero()) break;
        fact /= k;
        acc = acc + cur.scaled(fact);
    }
    if (acc.is_zero()) return Series2<Rat>::zero(n);
    return (-divide_by_y_minus_x(divide_by_y(acc))).truncated(n);
}

} // namespace

HomologicalSolution solve_difference(const Phi0Context& ctx, const Series2<Rat>& delta) {
    int n = std::min(ctx.order, delta.order());
    Series2<Rat> winv = invert_unit(ctx.w_hat.truncated(n));
    Series2<Rat> eps(n);
    Series2<Rat> cur = delta.truncated(n);
    int iters = 0;
    while (!cur.is_zero()) {
        ++iters;
        if (iters > n + 2)
            throw InvariantBreachError("difference-equation iteration failed to terminate");
        // Linearized round: d eps_j / dy = -Delta_j / w_hat, eps_j(x,0) = 0.
        Series2<Rat> rhs = -(cur * winv);
        eps = eps + antiderivative_y(rhs).truncated(n);
        cur = next_correction(ctx, cur, n);
    }
    return HomologicalSolution{std::move(eps), n, iters};
}

HomologicalSolution solve_difference(const Series2<Rat>& w, const Series2<Rat>& delta) {
    return solve_difference(make_phi0_context(w, delta.order()), delta);
}

Series2<Rat> homological_residual(const Phi0Context& ctx, const Series2<Rat>& epsilon,
                                  const Series2<Rat>& delta) {
    int n = std::min({ctx.order, epsilon.order(), delta.order()});
    Series2<Rat> composed =
        compose2(epsilon.truncated(n), ctx.phi.x_image.truncated(n), ctx.phi.y_image.truncated(n));
    Series2<Rat> rhs = mul_trunc(fixed_lines_poly(n), delta, n);
    return epsilon.truncated(n) - composed - rhs;
}

Series1<Rat> s_w(const Phi0Context& ctx, const Series2<Rat>& delta) {
    HomologicalSolution sol = solve_difference(ctx, delta);
    return restrict_diag(sol.epsilon) - restrict_y0(sol.epsilon);
}

Series1<Rat> s_w(const Series2<Rat>& w, const Series2<Rat>& delta) {
    return s_w(make_phi0_context(w, delta.order()), delta);
}

Series1<Rat> solve_differential(const Phi0Context& ctx, const Series2<Rat>& delta) {
    int n = std::min(ctx.order, delta.order());
    Series2<Rat> winv = invert_unit(ctx.w_hat.truncated(n));
    Series2<Rat> gamma = antiderivative_y(-(delta.truncated(n) * winv));
    Series1<Rat> out = restrict_diag(gamma) - restrict_y0(gamma);
    return out.truncated(n);
}

Series1<Rat> solve_differential(const Series2<Rat>& w, const Series2<Rat>& delta) {
    return solve_differential(make_phi0_context(w, delta.order()), delta);
}

Series1<Rat> check_izs(const Phi0Context& ctx, const Series2<Rat>& delta) {
    int n = std::min(ctx.order, delta.order());
    int hi = n + 2;
    // Image of y(y-x) Delta under w_hat d/dy, already reduced by y(y-x):
    // w_hat * d(y(y-x) Delta)/dy.
    Series2<Rat> h = mul_trunc(fixed_lines_poly(hi), delta, hi);
    Series2<Rat> dh = partial(h, Var::Y);
    Series2<Rat> dprime = mul_trunc(ctx.w_hat, dh, n);
    return s_w(ctx, dprime);
}

Series1<Rat> check_izs(const Series2<Rat>& w, const Series2<Rat>& delta) {
    return check_izs(make_phi0_context(w, delta.order()), delta);
}

} // namespace germcalc
