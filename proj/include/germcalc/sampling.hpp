#pragma once

#include <cstdint>
#include <random>

#include "germcalc/germ.hpp"
#include "germcalc/series2.hpp"

namespace germcalc {

/// Deterministic sampler behind the verification suites and the property
/// tests. Bounded draws go through explicit modulo so the streams do not
/// depend on the standard library's distribution internals.
class SeriesSampler {
public:
    explicit SeriesSampler(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t raw() { return rng_(); }

    int uniform(int lo, int hi) { // inclusive bounds
        return lo + static_cast<int>(raw() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    Rat small_rat(bool allow_zero = true) {
        int num = uniform(allow_zero ? -4 : 1, 4);
        if (!allow_zero && num == 0) num = 1;
        if (!allow_zero && uniform(0, 1) == 1) num = -num;
        int den = uniform(1, 3);
        return rat(num, den);
    }

    /// Dense-ish random series: roughly half of the coefficients are zero.
    Series2<Rat> series2(int order, int max_degree = -1) {
        if (max_degree < 0) max_degree = order;
        Series2<Rat> s(order);
        for (int d = 0; d <= (order < max_degree ? order : max_degree); ++d)
            for (int yk = 0; yk <= d; ++yk)
                if (uniform(0, 1) == 0) s.at(d - yk, yk) = small_rat();
        return s;
    }

    Series2<Rat> unit_series2(int order, int max_degree = -1) {
        Series2<Rat> s = series2(order, max_degree);
        s.at(0, 0) = small_rat(false);
        return s;
    }

    Series1<Rat> series1(int order) {
        Series1<Rat> s(order);
        for (int k = 0; k <= order; ++k)
            if (uniform(0, 1) == 0) s.set(k, small_rat());
        return s;
    }

    /// Random polynomial germ data: Delta vanishing at the origin, w a unit,
    /// both of degree <= max_degree.
    GermSpec germ_spec(int order, int max_degree = 3) {
        Series2<Rat> delta = series2(order, max_degree);
        delta.at(0, 0) = Rat(0);
        Series2<Rat> w = series2(order, max_degree);
        w.at(0, 0) = small_rat(false);
        return GermSpec(delta, w, order);
    }

    /// Random vector field with components of valuation >= 2.
    VectorField2<Rat> nilpotent_field(int order, int max_degree = -1) {
        Series2<Rat> ax = series2(order, max_degree);
        Series2<Rat> ay = series2(order, max_degree);
        for (int d = 0; d <= 1; ++d)
            for (int yk = 0; yk <= d; ++yk) {
                ax.at(d - yk, yk) = Rat(0);
                ay.at(d - yk, yk) = Rat(0);
            }
        return VectorField2<Rat>(ax, ay);
    }

private:
    std::mt19937_64 rng_;
};

} // namespace germcalc
