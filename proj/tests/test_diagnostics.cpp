#include "doctest.h"

#include <cmath>

#include "germcalc/diagnostics.hpp"
#include "germcalc/univar.hpp"
#include "support.hpp"

using namespace germcalc;
using germcalc::testing::Sampler;

TEST_CASE("d_v: antiderivative route on pinned inputs") {
    int n = 6;
    auto one = Series2<Rat>::constant(Rat(1), n);
    auto dv = d_v(one, one);
    CHECK(dv.coeff(1) == Rat(1)); // eps = y, restriction x
    CHECK(x_valuation(dv) == 1);

    auto y = Series2<Rat>::variable_y(n);
    CHECK(d_v(y, one).coeff(2) == rat(1, 2)); // eps = y^2/2
    CHECK(d_v(y, y).coeff(3) == rat(1, 3));   // eps = y^3/3

    // v = x + y^2, H = 1 - x: closed double-sum formula as the second route.
    auto v = Series2<Rat>::variable_x(n) + Series2<Rat>::monomial(0, 2, Rat(1), n);
    auto h = one - Series2<Rat>::variable_x(n);
    auto series = d_v(v, h);
    for (int j = 1; j <= n; ++j) CHECK(series.coeff(j) == d_v_coeff(v, j, h));
}

TEST_CASE("d_v: the two evaluation orders agree on random input, bilinearity") {
    Sampler gen(51);
    for (int i = 0; i < 6; ++i) {
        int n = 7;
        auto v = gen.series2(n);
        auto h = gen.series2(n);
        auto series = d_v(v, h);
        for (int j = 1; j <= n; ++j) CHECK(series.coeff(j) == d_v_coeff(v, j, h));

        auto v2 = gen.series2(n);
        auto h2 = gen.series2(n);
        Rat a = rat(2, 3), b = Rat(-2);
        CHECK(d_v(v.scaled(a) + v2.scaled(b), h) == d_v(v, h).scaled(a) + d_v(v2, h).scaled(b));
        CHECK(d_v(v, h.scaled(a) + h2.scaled(b)) == d_v(v, h).scaled(a) + d_v(v, h2).scaled(b));
    }
}

TEST_CASE("d_v_coeff: pinned values and the antidiagonal sampling formula") {
    int n = 8;
    auto one = Series2<Rat>::constant(Rat(1), n);
    CHECK(d_v_coeff(one, 1, one) == Rat(1));
    CHECK_THROWS_AS(d_v_coeff(one, 0, one), OutOfRangeError);
    CHECK_THROWS_AS(d_v_coeff(one, n + 1, one), OutOfRangeError);

    // D_v^{k+r}(y^{r-1}) = sum_b v_{k-b,b} / (b+r).
    Sampler gen(52);
    auto v = gen.series2(n, 4);
    for (int k = 0; k <= 3; ++k)
        for (int r = 1; r <= 3; ++r) {
            auto h = Series2<Rat>::monomial(0, r - 1, Rat(1), n);
            Rat expected(0);
            for (int b = 0; b <= k; ++b) expected += v.coeff(k - b, b) / Rat(b + r);
            CHECK(d_v_coeff(v, k + r, h) == expected);
        }
}

TEST_CASE("hilbert_matrix entries") {
    auto h0 = hilbert_matrix(0);
    CHECK(h0.size() == 1);
    CHECK(h0[0][0] == Rat(1));

    auto h1 = hilbert_matrix(1);
    CHECK(h1[0][0] == Rat(1));
    CHECK(h1[0][1] == rat(1, 2));
    CHECK(h1[1][0] == rat(1, 2));
    CHECK(h1[1][1] == rat(1, 3));

    auto h3 = hilbert_matrix(3);
    CHECK(h3[1][2] == rat(1, 4)); // 1-based (2,3): 1/(2+3-1)
}

TEST_CASE("exact inversion of Hilbert matrices up to k = 14") {
    auto inv1 = invert_exact(hilbert_matrix(1));
    CHECK(inv1[0][0] == Rat(4));
    CHECK(inv1[0][1] == Rat(-6));
    CHECK(inv1[1][0] == Rat(-6));
    CHECK(inv1[1][1] == Rat(12));

    for (int k = 0; k <= 14; ++k) {
        auto h = hilbert_matrix(k);
        auto inv = invert_exact(h);
        std::size_t n = h.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Rat acc(0);
                for (std::size_t l = 0; l < n; ++l) acc += h[i][l] * inv[l][j];
                CHECK(acc == Rat(i == j ? 1 : 0));
            }
    }
}

TEST_CASE("reconstruct_antidiagonal") {
    std::vector<Rat> zeros(3, Rat(0));
    auto rec0 = reconstruct_antidiagonal(zeros, 2);
    for (const auto& v : rec0) CHECK(rat_is_zero(v));

    // v = y, k = 1: samples D^2(1) = 1/2, D^3(y) = 1/3 recover (0, 1).
    int n = 8;
    auto v = Series2<Rat>::variable_y(n);
    std::vector<Rat> samples = {
        d_v_coeff(v, 2, Series2<Rat>::constant(Rat(1), n)),
        d_v_coeff(v, 3, Series2<Rat>::variable_y(n)),
    };
    CHECK(samples[0] == rat(1, 2));
    CHECK(samples[1] == rat(1, 3));
    auto rec = reconstruct_antidiagonal(samples, 1);
    CHECK(rec[0] == Rat(0));
    CHECK(rec[1] == Rat(1));

    // Full round trip for a random polynomial of degree <= 4.
    Sampler gen(53);
    auto vp = gen.series2(11, 4);
    for (int k = 0; k <= 4; ++k) {
        std::vector<Rat> s;
        for (int r = 1; r <= k + 1; ++r)
            s.push_back(d_v_coeff(vp, k + r, Series2<Rat>::monomial(0, r - 1, Rat(1), 11)));
        auto got = reconstruct_antidiagonal(s, k);
        for (int b = 0; b <= k; ++b) CHECK(got[static_cast<std::size_t>(b)] == vp.coeff(k - b, b));
    }
}

TEST_CASE("hilbert_inverse_norm: exact 2x2 eigenvalue, range checks") {
    auto rep = hilbert_inverse_norm(1);
    double expected = 8.0 + 2.0 * std::sqrt(13.0);
    CHECK(std::abs(rep.inverse_spectral_norm - expected) < 1e-9);
    CHECK(rep.asymptotic_prediction > 0.0);
    CHECK(rep.ratio > 0.0);

    CHECK_THROWS_AS(hilbert_inverse_norm(0), OutOfRangeError);
    CHECK_THROWS_AS(hilbert_inverse_norm(15), OutOfRangeError);
    CHECK(hilbert_inverse_norm(15, 20).k == 15);
}

TEST_CASE("hilbert_inverse_norm: asymptotic bracket tightens") {
    auto r4 = hilbert_inverse_norm(4);
    auto r12 = hilbert_inverse_norm(12);
    CHECK(r4.ratio > 0.5);
    CHECK(r4.ratio < 2.0);
    CHECK(r12.ratio > 0.5);
    CHECK(r12.ratio < 2.0);
    CHECK(std::abs(r12.ratio - 1.0) < std::abs(r4.ratio - 1.0));
}

TEST_CASE("growth_report: flat, factorial, and restricted inputs") {
    // All-ones coefficients: root test identically 1, no growth flag.
    Series1<Rat> ones(20);
    for (int k = 0; k <= 20; ++k) ones.set(k, Rat(1));
    auto flat = growth_report(ones);
    for (const auto& p : flat.points) CHECK(p.root_test == doctest::Approx(1.0));
    CHECK(flat.trend == "geometric-bounded");

    // sum n! y^n: the root test tracks n/e and the trend is super-geometric.
    Series1<Rat> fact(30);
    Rat f(1);
    for (int k = 1; k <= 30; ++k) {
        f *= k;
        fact.set(k, f);
    }
    auto super = growth_report(fact);
    CHECK(super.trend == "super-geometric trend");
    for (const auto& p : super.points)
        if (p.degree >= 10) {
            double stirling = p.degree / std::exp(1.0);
            CHECK(p.root_test / stirling > 1.0);
            CHECK(p.root_test / stirling < 1.35);
        }

    // Restrictions pick the right slices.
    auto s = Series2<Rat>::monomial(0, 3, Rat(8), 6) + Series2<Rat>::monomial(2, 0, Rat(2), 6);
    auto by_x0 = growth_report(s, Restriction::X0);
    CHECK(by_x0.points[2].max_abs_coeff == doctest::Approx(8.0));
    CHECK(by_x0.points[1].max_abs_coeff == doctest::Approx(0.0));
    auto by_diag = growth_report(s, Restriction::Diagonal);
    CHECK(by_diag.points[1].max_abs_coeff == doctest::Approx(2.0));
    CHECK(by_diag.points[2].max_abs_coeff == doctest::Approx(8.0));
}

TEST_CASE("one_var_generator: frozen leading terms and round trip") {
    int n = 12;
    Series1<Rat> p(n);
    p.set(1, Rat(1));
    p.set(2, Rat(1));
    auto v = one_var_generator(p);
    CHECK(v.coeff(2) == Rat(1));
    CHECK(v.coeff(3) == Rat(-1));
    CHECK(v.coeff(4) == rat(3, 2));
    CHECK(exp_apply_1d(v, Series1<Rat>::variable(n)) == p);

    Sampler gen(54);
    Series1<Rat> q(10);
    q.set(1, Rat(1));
    for (int k = 2; k <= 10; ++k) q.set(k, gen.small_rat());
    auto vq = one_var_generator(q);
    CHECK(exp_apply_1d(vq, Series1<Rat>::variable(10)) == q);
}

TEST_CASE("divergence evidence for the w = 1 member") {
    // w_hat(0, y) for phi_{0,1} to order 30 through the one-variable path.
    auto wh = w_hat_x0(Series1<Rat>::constant(Rat(1), 30), 30);
    CHECK(wh.coeff(0) == Rat(1));
    CHECK(wh.coeff(1) == Rat(-1));
    CHECK(wh.coeff(2) == rat(3, 2));
    auto rep = growth_report(wh);
    REQUIRE(rep.points.size() == 30);
    // Strict increase of the windowed maxima, sampled one window apart
    // across degrees 10 -> 30 (the raw root test oscillates within windows).
    for (int n = 10; n + rep.window <= 30; n += rep.window)
        CHECK(rep.points[static_cast<std::size_t>(n - 1)].windowed_root_test <
              rep.points[static_cast<std::size_t>(n + rep.window - 1)].windowed_root_test);
    CHECK(rep.trend == "increasing root-test");
}
