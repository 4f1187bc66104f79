#include "germcalc/univar.hpp"

#include <algorithm>

#include "germcalc/errors.hpp"

namespace germcalc {

Series1<Rat> exp_apply_1d(const Series1<Rat>& v, const Series1<Rat>& g) {
    auto val = v.valuation();
    if (val && *val < 2) throw NotNilpotentError("1d exp requires valuation >= 2");
    int n = std::min(v.order(), g.order());
    Series1<Rat> acc = g.truncated(n);
    Series1<Rat> cur = acc;
    Rat fact(1);
    for (int j = 1;; ++j) {
        cur = v.truncated(n) * cur.derivative().truncated(n);
        if (cur.is_zero()) break;
        fact /= j;
        acc = acc + cur.scaled(fact);
    }
    return acc;
}

Series1<Rat> one_var_generator(const Series1<Rat>& p) {
    int n = p.order();
    if (!rat_is_zero(p.coeff(0)) || !(p.coeff(1) == Rat(1)))
        throw NotUnipotentError("map must be y + O(y^2)");
    Series1<Rat> v(n);
    for (int m = 2; m <= n; ++m) {
        // With v correct below order m, the order-m defect of exp(v d/dy)(y)
        // is linear in v_m with slope 1 (the j = 1 term of the sum).
        Series1<Rat> e = exp_apply_1d(v.truncated(m), Series1<Rat>::variable(m));
        v.set(m, p.coeff(m) - e.coeff(m));
    }
    return v;
}

Series1<Rat> w_hat_x0(const Series1<Rat>& w_on_x0, int order) {
    if (rat_is_zero(w_on_x0.coeff(0))) throw InvalidSpecError("w must be a unit");
    int hi = order + 2;
    // y o phi_{0,w} on x = 0 is y + y^2 w(0,y).
    Series1<Rat> p(hi);
    p.set(1, Rat(1));
    for (int k = 0; k + 2 <= hi; ++k) p.set(k + 2, w_on_x0.coeff(k));
    Series1<Rat> v = one_var_generator(p);
    // Divide the generator by y^2 (= y(y-x) on x = 0).
    Series1<Rat> out(order);
    if (!rat_is_zero(v.coeff(0)) || !rat_is_zero(v.coeff(1)))
        throw InvariantBreachError("1d generator must vanish to order 2");
    for (int k = 0; k <= order; ++k) out.set(k, v.coeff(k + 2));
    return out;
}

} // namespace germcalc
