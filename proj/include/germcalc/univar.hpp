#pragma once

#include "germcalc/series1.hpp"

namespace germcalc {

/// exp(v d/dy)(y) for a univariate v with valuation >= 2.
Series1<Rat> exp_apply_1d(const Series1<Rat>& v, const Series1<Rat>& g);

/// Generator of a parabolic one-variable map p = y + O(y^2) with p'(0) = 1:
/// the unique v with valuation >= 2 and exp(v d/dy)(y) = p, solved order by
/// order. Cheap at high orders, which is what the divergence-evidence
/// reports need.
Series1<Rat> one_var_generator(const Series1<Rat>& p);

/// w_hat(0, y) for the family member phi_{0,w}: the restriction to x = 0 of
/// the reduced generator, computed through the one-variable map
/// y -> y + y^2 w(0,y) instead of the full two-variable logarithm.
Series1<Rat> w_hat_x0(const Series1<Rat>& w_on_x0, int order);

} // namespace germcalc
