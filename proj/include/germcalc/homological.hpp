#pragma once

#include "germcalc/diffeo.hpp"
#include "germcalc/series2.hpp"

namespace germcalc {

/// Per-w working set for the difference equation attached to phi_{0,w}.
/// Building it computes the generator once at a guard order and extracts the
/// unit w_hat with log phi_{0,w} = w_hat * y(y-x) d/dy; this is the single
/// most expensive object, so callers running several solves against the same
/// w should construct the context once and reuse it.
struct Phi0Context {
    Series2<Rat> w;          // defining unit, at `order`
    int order;
    Diffeo2<Rat> phi;        // phi_{0,w} at `order`
    VectorField2<Rat> gen;   // log phi_{0,w} at `order` + 2
    Series2<Rat> w_hat;      // reduced generator coefficient, at `order`
};

/// Requires w(0,0) != 0; w is treated as exact polynomial data.
Phi0Context make_phi0_context(const Series2<Rat>& w, int order);

struct HomologicalSolution {
    Series2<Rat> epsilon;
    int residual_order;   // the defining equation holds up to this order
    int iterations;       // outer correction steps (at most order + 1)
};

/// Solves eps - eps o phi_{0,w} = y(y-x) Delta by the iterative scheme: each
/// round solves the linearized equation through a y-antiderivative against
/// w_hat and pushes the exponential tail into a corrected right-hand side
/// whose valuation strictly grows. Delta may have a nonzero constant term.
HomologicalSolution solve_difference(const Phi0Context& ctx, const Series2<Rat>& delta);
HomologicalSolution solve_difference(const Series2<Rat>& w, const Series2<Rat>& delta);

/// eps - eps o phi - y(y-x) Delta for a candidate solution; test helper.
Series2<Rat> homological_residual(const Phi0Context& ctx, const Series2<Rat>& epsilon,
                                  const Series2<Rat>& delta);

/// The functional S_w(Delta) = eps(x,x) - eps(x,0): independent of the
/// solution chosen, linear in Delta.
Series1<Rat> s_w(const Phi0Context& ctx, const Series2<Rat>& delta);
Series1<Rat> s_w(const Series2<Rat>& w, const Series2<Rat>& delta);

/// Same functional through the differential route: solve
/// (log phi_{0,w})(Gamma) = -y(y-x) Delta, i.e. dGamma/dy = -Delta / w_hat
/// with Gamma(x,0) = 0, and restrict.
Series1<Rat> solve_differential(const Phi0Context& ctx, const Series2<Rat>& delta);
Series1<Rat> solve_differential(const Series2<Rat>& w, const Series2<Rat>& delta);

/// S_w applied to the image of y(y-x) Delta under the reduced generator;
/// identically zero as a series identity, returned so callers can verify.
Series1<Rat> check_izs(const Phi0Context& ctx, const Series2<Rat>& delta);
Series1<Rat> check_izs(const Series2<Rat>& w, const Series2<Rat>& delta);

} // namespace germcalc
