#include "germcalc/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace germcalc {

std::vector<Rat> solve_exact(QMatrix a, std::vector<Rat> b) {
    std::size_t n = a.size();
    if (b.size() != n) throw OutOfRangeError("solve_exact: dimension mismatch");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && rat_is_zero(a[piv][col])) ++piv;
        if (piv == n) throw SingularMatrixError("no pivot in column " + std::to_string(col));
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || rat_is_zero(a[row][col])) continue;
            Rat factor = a[row][col] / a[col][col];
            for (std::size_t j = col; j < n; ++j) a[row][j] -= factor * a[col][j];
            b[row] -= factor * b[col];
        }
    }
    std::vector<Rat> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

QMatrix invert_exact(const QMatrix& a) {
    std::size_t n = a.size();
    QMatrix aug = a;
    QMatrix inv(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = Rat(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && rat_is_zero(aug[piv][col])) ++piv;
        if (piv == n) throw SingularMatrixError("no pivot in column " + std::to_string(col));
        std::swap(aug[piv], aug[col]);
        std::swap(inv[piv], inv[col]);
        Rat d = aug[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            aug[col][j] /= d;
            inv[col][j] /= d;
        }
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || rat_is_zero(aug[row][col])) continue;
            Rat factor = aug[row][col];
            for (std::size_t j = 0; j < n; ++j) {
                aug[row][j] -= factor * aug[col][j];
                inv[row][j] -= factor * inv[col][j];
            }
        }
    }
    return inv;
}

QMatrix hilbert_matrix(int k) {
    if (k < 0) throw OutOfRangeError("hilbert_matrix: k must be >= 0");
    std::size_t n = static_cast<std::size_t>(k) + 1;
    QMatrix m(n, std::vector<Rat>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            m[a][b] = rat(1, static_cast<long>(a + b + 1));
    return m;
}

Series1<Rat> d_v(const Series2<Rat>& v, const Series2<Rat>& h) {
    Series2<Rat> eps = antiderivative_y(v * h);
    return restrict_diag(eps) - restrict_y0(eps);
}

Rat d_v_coeff(const Series2<Rat>& v, int j, const Series2<Rat>& h) {
    int n = std::min(v.order(), h.order());
    if (j < 1 || j > n) throw OutOfRangeError("d_v_coeff: j must be in 1..order");
    Rat acc(0);
    for (int k = 0; k < j; ++k)
        for (int l = 0; k + l < j; ++l) {
            const Rat& hc = h.coeff(k, l);
            if (rat_is_zero(hc)) continue;
            int s = j - k - l - 1; // a + b
            Rat inner(0);
            for (int b = 0; b <= s; ++b) {
                const Rat& vc = v.coeff(s - b, b);
                if (!rat_is_zero(vc)) inner += vc / Rat(b + l + 1);
            }
            acc += inner * hc;
        }
    return acc;
}

std::vector<Rat> reconstruct_antidiagonal(const std::vector<Rat>& samples, int k) {
    if (k < 0 || samples.size() != static_cast<std::size_t>(k) + 1)
        throw OutOfRangeError("reconstruct_antidiagonal: need k+1 samples");
    return solve_exact(hilbert_matrix(k), samples);
}

namespace {

double spectral_norm_spd(const std::vector<std::vector<double>>& m) {
    std::size_t n = m.size();
    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    double lambda = 0.0;
    for (int iter = 0; iter < 500; ++iter) {
        std::vector<double> y(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) y[i] += m[i][j] * x[j];
        double norm = 0.0;
        for (double v : y) norm += v * v;
        norm = std::sqrt(norm);
        if (norm == 0.0) return 0.0;
        for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
        if (iter > 2 && std::abs(norm - lambda) <= 1e-14 * norm) return norm;
        lambda = norm;
    }
    return lambda;
}

} // namespace

HilbertReport hilbert_inverse_norm(int k, int max_k) {
    if (k < 1 || k > max_k)
        throw OutOfRangeError("hilbert_inverse_norm: k must be in 1.." + std::to_string(max_k));
    QMatrix inv = invert_exact(hilbert_matrix(k));
    std::size_t n = inv.size();
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = rat_to_double(inv[i][j]);
    HilbertReport rep;
    rep.k = k;
    rep.inverse_spectral_norm = spectral_norm_spd(m);
    const double rho = 1.0 + std::sqrt(2.0);
    const double cap_k = 8.0 * std::pow(M_PI, 1.5) * std::pow(2.0, 0.75) / std::pow(rho, 4.0);
    rep.asymptotic_prediction = std::pow(rho, 4.0 * k) / (cap_k * std::sqrt(static_cast<double>(k)));
    rep.ratio = rep.inverse_spectral_norm / rep.asymptotic_prediction;
    if (!std::isfinite(rep.inverse_spectral_norm) || !std::isfinite(rep.asymptotic_prediction) ||
        !std::isfinite(rep.ratio))
        throw OutOfRangeError("hilbert_inverse_norm: report overflows doubles at k = " +
                              std::to_string(k));
    return rep;
}

namespace {

GrowthReport growth_from_magnitudes(const std::vector<Rat>& mags, int window) {
    GrowthReport rep;
    rep.window = std::max(window, 1);
    int n = static_cast<int>(mags.size()) - 1;
    for (int d = 1; d <= n; ++d) {
        GrowthPoint p;
        p.degree = d;
        p.max_abs_coeff = rat_to_double(mags[static_cast<std::size_t>(d)]);
        p.root_test =
            p.max_abs_coeff > 0.0 ? std::pow(p.max_abs_coeff, 1.0 / static_cast<double>(d)) : 0.0;
        rep.points.push_back(p);
    }
    for (std::size_t i = 0; i < rep.points.size(); ++i) {
        double w = 0.0;
        for (std::size_t j = i + 1 >= static_cast<std::size_t>(rep.window)
                                 ? i + 1 - static_cast<std::size_t>(rep.window)
                                 : 0;
             j <= i; ++j)
            w = std::max(w, rep.points[j].root_test);
        rep.points[i].windowed_root_test = w;
    }
    // Trend label. The raw root test oscillates within a window, so
    // monotonicity is judged on the windowed maxima sampled one window
    // apart; super-geometric = on top of that the root test roughly doubles
    // from half the order to the full order, the signature of
    // factorial-type growth.
    if (rep.points.size() < 2 * static_cast<std::size_t>(rep.window)) {
        rep.trend = "geometric-bounded";
        return rep;
    }
    bool increasing = true;
    int last = static_cast<int>(rep.points.size()) - 1;
    for (int i = last, samples = 0; i - rep.window >= 0 && samples < 4;
         i -= rep.window, ++samples)
        if (!(rep.points[static_cast<std::size_t>(i - rep.window)].windowed_root_test <
              rep.points[static_cast<std::size_t>(i)].windowed_root_test))
            increasing = false;
    if (!increasing) {
        rep.trend = "geometric-bounded";
    } else {
        double rt_full = rep.points.back().root_test;
        double rt_half = rep.points[(rep.points.size() - 1) / 2].root_test;
        rep.trend = (rt_half > 0.0 && rt_full >= 1.7 * rt_half) ? "super-geometric trend"
                                                                : "increasing root-test";
    }
    return rep;
}

} // namespace

GrowthReport growth_report(const Series1<Rat>& series, int window) {
    std::vector<Rat> mags(static_cast<std::size_t>(series.order()) + 1, Rat(0));
    for (int k = 0; k <= series.order(); ++k) mags[static_cast<std::size_t>(k)] = rat_abs(series.coeff(k));
    return growth_from_magnitudes(mags, window);
}

GrowthReport growth_report(const Series2<Rat>& series, Restriction restriction, int window) {
    switch (restriction) {
        case Restriction::X0:
            return growth_report(restrict_x0(series), window);
        case Restriction::Diagonal:
            return growth_report(restrict_diag(series), window);
        case Restriction::None:
            break;
    }
    std::vector<Rat> mags(static_cast<std::size_t>(series.order()) + 1, Rat(0));
    for (int d = 0; d <= series.order(); ++d) {
        Rat best(0);
        for (int yk = 0; yk <= d; ++yk) {
            Rat a = rat_abs(series.coeff(d - yk, yk));
            if (a > best) best = a;
        }
        mags[static_cast<std::size_t>(d)] = best;
    }
    return growth_from_magnitudes(mags, window);
}

} // namespace germcalc
