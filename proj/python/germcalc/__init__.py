"""Exact formal-conjugacy invariants of unipotent plane diffeomorphism germs.

The family under study is

    phi_{D,w}(x, y) = (x + y(y-x) D(x, y), y + y(y-x) w(x, y))

with D(0,0) = 0 and w(0,0) != 0. Everything is computed in exact rational
arithmetic at a finite total-degree truncation order; floats appear only in
the growth/conditioning diagnostics.

Bivariate series travel as term lists ``[(xk, yk, "p/q"), ...]``; univariate
series as dense lists of rational strings.
"""

from germcalc._core import (
    GermError,
    GermOutOfRangeError,
    GermParseError,
    InvalidSpecError,
    __version__,
    check_izs,
    d_v,
    d_v_coeff,
    epsilon_from_family,
    first_integral,
    growth,
    hilbert_inverse,
    hilbert_report,
    l_field,
    log_phi,
    param_family,
    parse_series,
    reconstruct_antidiagonal,
    render_series,
    s_w_difference,
    s_w_differential,
    transport,
    verify,
    w_hat_x0,
)

__all__ = [
    "GermError",
    "GermOutOfRangeError",
    "GermParseError",
    "InvalidSpecError",
    "__version__",
    "check_izs",
    "d_v",
    "d_v_coeff",
    "epsilon_from_family",
    "first_integral",
    "growth",
    "hilbert_inverse",
    "hilbert_report",
    "l_field",
    "log_phi",
    "param_family",
    "parse_series",
    "reconstruct_antidiagonal",
    "render_series",
    "s_w_difference",
    "s_w_differential",
    "transport",
    "verify",
    "w_hat_x0",
]
