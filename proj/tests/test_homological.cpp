#include "doctest.h"

#include "germcalc/homological.hpp"
#include "germcalc/univar.hpp"
#include "support.hpp"

using namespace germcalc;
using germcalc::testing::Sampler;

TEST_CASE("solve_difference: zero input, residual oracle, termination bound") {
    int n = 8;
    auto w1 = Series2<Rat>::constant(Rat(1), n);
    auto ctx = make_phi0_context(w1, n);

    auto sol0 = solve_difference(ctx, Series2<Rat>::zero(n));
    CHECK(sol0.epsilon.is_zero());

    // Residual check is the oracle: eps - eps o phi = y(y-x) * x up to n.
    auto delta = Series2<Rat>::variable_x(n);
    auto sol = solve_difference(ctx, delta);
    CHECK(homological_residual(ctx, sol.epsilon, delta).is_zero());
    CHECK(sol.residual_order == n);

    // Constant Delta = 1 exercises the full correction ladder.
    auto sol1 = solve_difference(ctx, Series2<Rat>::constant(Rat(1), n));
    CHECK(homological_residual(ctx, sol1.epsilon, Series2<Rat>::constant(Rat(1), n)).is_zero());
    CHECK(sol1.iterations <= n + 1);

    CHECK_THROWS_AS(make_phi0_context(Series2<Rat>::variable_x(n), n), InvalidSpecError);
}

TEST_CASE("solve_difference: random units and right-hand sides") {
    Sampler gen(41);
    for (int i = 0; i < 5; ++i) {
        int n = 8;
        auto w = gen.unit_series2(n, 3);
        auto ctx = make_phi0_context(w, n);
        auto delta = gen.series2(n); // constant term allowed here
        auto sol = solve_difference(ctx, delta);
        CHECK(homological_residual(ctx, sol.epsilon, delta).is_zero());
        CHECK(sol.iterations <= n + 1);
    }
}

TEST_CASE("s_w: zero, linearity") {
    Sampler gen(42);
    int n = 8;
    auto w = gen.unit_series2(n, 2);
    auto ctx = make_phi0_context(w, n);
    CHECK(s_w(ctx, Series2<Rat>::zero(n)).is_zero());

    auto d1 = gen.series2(n);
    auto d2 = gen.series2(n);
    Rat a = rat(3, 2), b = rat(-2, 5);
    auto lhs = s_w(ctx, d1.scaled(a) + d2.scaled(b));
    auto rhs = s_w(ctx, d1).scaled(a) + s_w(ctx, d2).scaled(b);
    CHECK(lhs == rhs);
}

TEST_CASE("s_w does not depend on the solution") {
    // Any series in x alone is invariant under phi_{0,w}, so adding one to a
    // solution yields another solution; the diagonal-minus-axis restriction
    // must not move.
    Sampler gen(43);
    int n = 8;
    auto w = gen.unit_series2(n, 2);
    auto ctx = make_phi0_context(w, n);
    auto delta = gen.series2(n);
    auto sol = solve_difference(ctx, delta);
    auto base = restrict_diag(sol.epsilon) - restrict_y0(sol.epsilon);
    for (int i = 0; i < 4; ++i) {
        auto perturbed = sol.epsilon + embed_x(gen.series1(n), n);
        CHECK(homological_residual(ctx, perturbed, delta).is_zero());
        CHECK(restrict_diag(perturbed) - restrict_y0(perturbed) == base);
    }
}

TEST_CASE("differential route: explicit cancellation and route equivalence") {
    int n = 8;
    auto w1 = Series2<Rat>::constant(Rat(1), n);
    auto ctx = make_phi0_context(w1, n);

    // Delta := w_hat itself makes dGamma/dy = -1, so Gamma = -y and the
    // restriction is -x.
    auto sd = solve_differential(ctx, ctx.w_hat);
    Series1<Rat> neg_x(n);
    neg_x.set(1, Rat(-1));
    CHECK(sd == neg_x);
    CHECK(s_w(ctx, ctx.w_hat) == neg_x);

    CHECK(solve_differential(ctx, Series2<Rat>::zero(n)).is_zero());

    // Route equivalence on the (x, 1) sample.
    auto delta = Series2<Rat>::variable_x(n);
    CHECK(s_w(ctx, delta) == solve_differential(ctx, delta));
}

TEST_CASE("route equivalence on random samples") {
    Sampler gen(44);
    for (int i = 0; i < 6; ++i) {
        int n = gen.uniform(6, 10);
        auto w = gen.unit_series2(n, 3);
        auto ctx = make_phi0_context(w, n);
        auto delta = gen.series2(n);
        CHECK(s_w(ctx, delta) == solve_differential(ctx, delta));
    }
}

TEST_CASE("annihilation identity") {
    int n = 8;
    auto w1 = Series2<Rat>::constant(Rat(1), n);
    auto ctx1 = make_phi0_context(w1, n);
    CHECK(check_izs(ctx1, Series2<Rat>::zero(n)).is_zero());
    CHECK(check_izs(ctx1, Series2<Rat>::constant(Rat(1), n)).is_zero());

    // Delta = x + y against w = 1 + x.
    auto w = Series2<Rat>::constant(Rat(1), n) + Series2<Rat>::variable_x(n);
    auto ctx = make_phi0_context(w, n);
    auto delta = Series2<Rat>::variable_x(n) + Series2<Rat>::variable_y(n);
    CHECK(check_izs(ctx, delta).is_zero());

    Sampler gen(45);
    for (int i = 0; i < 4; ++i) {
        auto wr = gen.unit_series2(n, 3);
        auto ctxr = make_phi0_context(wr, n);
        CHECK(check_izs(ctxr, gen.series2(n)).is_zero());
    }
}

TEST_CASE("w_hat fast path agrees with the two-variable reduction") {
    Sampler gen(46);
    int n = 10;
    for (int i = 0; i < 3; ++i) {
        auto w = gen.unit_series2(n, 3);
        auto ctx = make_phi0_context(w, n);
        CHECK(w_hat_x0(restrict_x0(w), n) == restrict_x0(ctx.w_hat));
    }
}
