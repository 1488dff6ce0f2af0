"""Riccati-Bessel and Riccati-Neumann functions with first derivatives.

The regular solution u_l(x) = x j_l(x) and the singular solution
v_l(x) = x n_l(x) of the free radial equation

    w'' + (1 - l(l+1)/x^2) w = 0

are evaluated together with their derivatives d/dx.  The pair satisfies
the Wronskian identity u v' - u' v = 1 for every l and every x > 0,
which the test suite uses as the primary correctness oracle.

Also provided are the truncated small-argument series f_l, g_l that
control the behaviour of u and v near the origin,

    u_l(x) ~  x^{l+1} / (2l+1)!! * f_l(x)
    v_l(x) ~ -(2l-1)!! / x^l    * g_l(x)        (x -> 0)

together with their logarithmic derivatives and the ratio g_l/f_l.  The
series are truncated at order x^4 (x^3 for the logarithmic derivatives)
on purpose: the low-energy scattering formulas built on top of them are
defined with exactly this truncation.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

__all__ = [
    "RiccatiEval",
    "FgSeries",
    "double_factorial",
    "riccati_bessel",
    "riccati_neumann",
    "fg_series",
]


@dataclass(frozen=True)
class RiccatiEval:
    """Value and derivative of a Riccati function at the point x."""

    x: float
    value: float
    derivative: float


class FgSeries(NamedTuple):
    """Truncated small-argument series values at one point."""

    f: float
    g: float
    f_logderiv: float
    g_logderiv: float
    g_over_f: float


def double_factorial(n: int) -> int:
    """n!! = n (n-2) (n-4) ... with the empty-product convention (-1)!! = 1."""
    if not isinstance(n, int):
        raise ValueError(f"double_factorial expects an integer, got {n!r}")
    if n < -1:
        raise ValueError(f"double_factorial is undefined for n = {n} < -1")
    result = 1
    for m in range(n, 1, -2):
        result *= m
    return result


def _check_order_and_argument(l: int, x: float) -> None:
    if not isinstance(l, int) or l < 0:
        raise ValueError(f"angular momentum must be a non-negative integer, got {l!r}")
    if not (x > 0.0) or math.isinf(x):
        raise ValueError(f"argument must be a positive finite real, got {x!r}")


def _bessel_series(l: int, x: float) -> float:
    # u_l(x) = x^{l+1}/(2l+1)!! * sum_m (-x^2/2)^m / (m! (2l+3)(2l+5)...(2l+2m+1))
    # Converges fast for the x <= l + 2 range where it is used.
    term = x ** (l + 1) / double_factorial(2 * l + 1)
    total = term
    for m in range(1, 200):
        term *= -0.5 * x * x / (m * (2 * l + 2 * m + 1))
        total += term
        if abs(term) <= 1e-17 * abs(total):
            break
    return total


def riccati_bessel(l: int, x: float) -> RiccatiEval:
    """Regular Riccati-Bessel function u_l(x) = x j_l(x) and du/dx.

    Upward recurrence in l is unstable for x < l, so the power series is
    used there; in the oscillatory region x > l + 2 the recurrence from
    u_0 = sin x is both stable and cheap.
    """
    _check_order_and_argument(l, x)
    if l == 0:
        return RiccatiEval(x, math.sin(x), math.cos(x))
    if x > l + 2.0:
        w_prev = math.cos(x)  # u_{-1}
        w = math.sin(x)       # u_0
        for j in range(1, l + 1):
            w_prev, w = w, (2 * j - 1) / x * w - w_prev
        return RiccatiEval(x, w, w_prev - l / x * w)
    value = _bessel_series(l, x)
    below = _bessel_series(l - 1, x)
    return RiccatiEval(x, value, below - l / x * value)


def riccati_neumann(l: int, x: float) -> RiccatiEval:
    """Singular Riccati-Neumann function v_l(x) = x n_l(x) and dv/dx.

    Upward recurrence follows the dominant solution and is stable for
    every l and x > 0.
    """
    _check_order_and_argument(l, x)
    w_prev = math.sin(x)   # v_{-1}
    w = -math.cos(x)       # v_0
    for j in range(1, l + 1):
        w_prev, w = w, (2 * j - 1) / x * w - w_prev
    return RiccatiEval(x, w, w_prev - l / x * w)


def fg_series(l: int, x: float) -> FgSeries:
    """Truncated series f_l, g_l, their log-derivatives, and g_l/f_l.

        f_l(x)      = 1 - x^2/(2(2l+3)) + x^4/(8(2l+5)(2l+3))
        g_l(x)      = 1 + x^2/(2(2l-1)) + x^4/(8(2l-3)(2l-1))
        f'_l/f_l    = -x/(2l+3) - x^3/((2l+3)^2 (2l+5))
        g'_l/g_l    =  x/(2l-1) + x^3/((2l-1)^2 (2l-3))
        g_l/f_l     = 1 + (2l+1) x^2/((2l-1)(2l+3))
                        + (l+3)(2l+1) x^4/((2l-3)(2l+3)^2 (2l+5))

    The negative factors (2l-1), (2l-3) appearing for l = 0, 1 are kept
    with their sign; they are part of the formulas.  |x| >= 1 is outside
    the validity of the truncation and is rejected.
    """
    if not isinstance(l, int) or l < 0:
        raise ValueError(f"angular momentum must be a non-negative integer, got {l!r}")
    if not abs(x) < 1.0:
        raise ValueError(
            f"series argument must satisfy |x| < 1, got x = {x!r}"
        )
    x2 = x * x
    x3 = x2 * x
    x4 = x2 * x2
    tp1 = 2 * l + 1
    tp3 = 2 * l + 3
    tp5 = 2 * l + 5
    tm1 = 2 * l - 1
    tm3 = 2 * l - 3
    f = 1.0 - x2 / (2 * tp3) + x4 / (8 * tp5 * tp3)
    g = 1.0 + x2 / (2 * tm1) + x4 / (8 * tm3 * tm1)
    f_logderiv = -x / tp3 - x3 / (tp3 * tp3 * tp5)
    g_logderiv = x / tm1 + x3 / (tm1 * tm1 * tm3)
    g_over_f = 1.0 + tp1 * x2 / (tm1 * tp3) + (l + 3) * tp1 * x4 / (tm3 * tp3 * tp3 * tp5)
    return FgSeries(f, g, f_logderiv, g_logderiv, g_over_f)
