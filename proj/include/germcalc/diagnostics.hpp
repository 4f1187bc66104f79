#pragma once

#include <string>
#include <vector>

#include "germcalc/series2.hpp"

namespace germcalc {

using QMatrix = std::vector<std::vector<Rat>>;

/// Exact solve of A x = b by rational Gaussian elimination with partial
/// pivoting (pivot = first nonzero).
std::vector<Rat> solve_exact(QMatrix a, std::vector<Rat> b);

/// Exact inverse; conditioning is irrelevant in rational arithmetic, which
/// is the whole point of using it on Hilbert matrices.
QMatrix invert_exact(const QMatrix& a);

/// The (k+1) x (k+1) Hilbert matrix, entries 1/(a+b-1) for 1-based a, b.
QMatrix hilbert_matrix(int k);

/// The functional D_v(H): y-antiderivative of v*H restricted to the diagonal
/// minus the y = 0 axis. The result order is min(order(v), order(H)) + 1.
Series1<Rat> d_v(const Series2<Rat>& v, const Series2<Rat>& h);

/// Coefficient of x^j in D_v(H), evaluated by the closed double sum over
/// k + l < j; deliberately a second route, independent of d_v.
Rat d_v_coeff(const Series2<Rat>& v, int j, const Series2<Rat>& h);

/// Recovers the antidiagonal (v_{k,0}, ..., v_{0,k}) from the k+1 samples
/// (D_v^{k+1}(1), D_v^{k+2}(y), ..., D_v^{2k+1}(y^k)) by an exact Hilbert
/// solve.
std::vector<Rat> reconstruct_antidiagonal(const std::vector<Rat>& samples, int k);

struct HilbertReport {
    int k = 0;
    double inverse_spectral_norm = 0.0;
    double asymptotic_prediction = 0.0; // rho^{4k} / (K sqrt(k))
    double ratio = 0.0;                 // norm / prediction
};

/// Exact inverse, then the largest eigenvalue of the (positive definite)
/// inverse by float power iteration. k is capped because the norm grows like
/// (1+sqrt(2))^{4k} and the report lives in doubles.
HilbertReport hilbert_inverse_norm(int k, int max_k = 14);

struct GrowthPoint {
    int degree = 0;
    double max_abs_coeff = 0.0;
    double root_test = 0.0;          // max_abs_coeff^{1/degree}
    double windowed_root_test = 0.0; // max of root_test over the trailing window
};

/// Divergence is never decidable from a truncation, so the report carries
/// evidence only: per-degree coefficient magnitudes, root-test values, their
/// windowed maxima, and a trend label ("geometric-bounded",
/// "increasing root-test", or "super-geometric trend").
struct GrowthReport {
    std::vector<GrowthPoint> points; // degrees 1..N
    int window = 5;
    std::string trend;
};

enum class Restriction { None, X0, Diagonal };

GrowthReport growth_report(const Series1<Rat>& series, int window = 5);
GrowthReport growth_report(const Series2<Rat>& series, Restriction restriction,
                           int window = 5);

} // namespace germcalc
