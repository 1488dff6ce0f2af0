"""Analytic structure of the two-parameter S-matrix in complex momentum.

The S-matrix of the two-parameter low-energy formula has its poles at the
roots of

    P(k) = i k**(2l+1) / (2l-1)!!**2  +  k**2 / ((2l-1) lam**(2l-1))  +  chi,

a polynomial of degree max(2l+1, 2) with one imaginary and two real
coefficients.  A pole on the positive imaginary axis is a bound state; a
pole just below the positive real axis is a resonance, visible on the real
axis as the phase shift sweeping through pi/2.  Roots always come in pairs
{k, -conj(k)} mirrored across the imaginary axis.

When the k**2 term is negligible (lam**(2l-1) large) the roots have the
closed form

    k_p = (2l-1)!!**(2/(2l+1)) * chi**(1/(2l+1)) * exp(i pi (4p+1)/(4l+2)),

p = 1 .. 2l+1, where for negative coupling the real odd root
-|chi|**(1/(2l+1)) is taken; exactly one root then sits on the positive
imaginary axis iff chi > 0 with l even, or chi < 0 with l odd.  The
near-real-axis root of that family lies at angle -pi/(4l+2) below the real
axis for attractive odd-l channels (numeric root-finding of P is the ground
truth here; the closed form is exact for the truncated polynomial and is
reported side by side with it).
"""

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .boundary import Channel
from .specfun import double_factorial

__all__ = [
    "PoleKind",
    "PoleRecord",
    "RootSolveError",
    "pole_residual",
    "pole_polynomial",
    "polynomial_roots",
    "find_poles",
    "asymptotic_poles",
    "resonance_momentum",
    "classify_pole",
]

# |Re k| below this fraction of |k| counts as "on the imaginary axis".
AXIS_TOLERANCE = 1e-8


class PoleKind(enum.Enum):
    BOUND = "bound"
    RESONANCE = "resonance"
    OTHER = "other"


class RootSolveError(RuntimeError):
    """Polynomial root finding failed or the polynomial is degenerate."""


@dataclass(frozen=True)
class PoleRecord:
    """One root of the pole polynomial with its classification.

    ``residual`` is |P(k_pole)| in double precision; for channels with large
    roots or steep coefficients it is limited by rounding of the polynomial
    evaluation itself (roughly eps * sum_j |c_j| |k|**j), not by the root
    finder.
    """

    k_pole: complex
    kind: PoleKind
    residual: float


def classify_pole(k: complex) -> PoleKind:
    """Bound (positive imaginary axis), resonance (lower half, nearer the
    real axis than the anti-diagonal), or other."""
    k = complex(k)
    if k.imag > 0.0 and abs(k.real) < AXIS_TOLERANCE * abs(k):
        return PoleKind.BOUND
    if k.real > 0.0 and -k.real < k.imag < 0.0:
        return PoleKind.RESONANCE
    return PoleKind.OTHER


def pole_residual(ch: Channel, k: complex) -> complex:
    """Value of the pole polynomial P at complex momentum k."""
    k = complex(k)
    l = ch.l
    d2 = float(double_factorial(2 * l - 1)) ** 2
    return (
        1j * k ** (2 * l + 1) / d2
        + k * k / ((2 * l - 1) * ch.lam ** (2 * l - 1))
        + ch.chi
    )


def pole_polynomial(ch: Channel) -> list[complex]:
    """Coefficients of P in ascending powers of k."""
    l = ch.l
    d2 = float(double_factorial(2 * l - 1)) ** 2
    coeffs = [0j] * (max(2 * l + 1, 2) + 1)
    coeffs[0] += ch.chi
    coeffs[2] += 1.0 / ((2 * l - 1) * ch.lam ** (2 * l - 1))
    coeffs[2 * l + 1] += 1j / d2
    return coeffs


def _horner(coeffs_desc: Sequence[complex], z: complex) -> tuple[complex, complex]:
    p = 0j
    dp = 0j
    for c in coeffs_desc:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _poly_scale(coeffs_desc: Sequence[complex], z: complex) -> float:
    s = 0.0
    az = abs(z)
    for c in coeffs_desc:
        s = s * az + abs(c)
    return s


def polynomial_roots(coeffs: Sequence[complex], max_iter: int = 500) -> list[complex]:
    """All complex roots of sum_j coeffs[j] * k**j (ascending coefficients).

    Aberth simultaneous iteration on the monic-normalized polynomial,
    started on the circle of radius 1 + max|coeff| (a bound on every root),
    converged when no root moves more than 1e-14 relative; falls back to
    companion-matrix eigenvalues if the iteration stalls.  Each root gets a
    final Newton polish.  Deterministic: no randomness anywhere.
    """
    cs = [complex(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    n = len(cs) - 1
    if n < 1:
        raise RootSolveError("polynomial is degenerate (degree < 1)")
    monic = [c / cs[n] for c in cs]
    desc = monic[::-1]  # leading 1 first
    if n == 1:
        return [-monic[0]]

    radius = 1.0 + max(abs(c) for c in monic[:n])
    roots = [
        radius * cmath.exp(2j * math.pi * (j + 0.25) / n) for j in range(n)
    ]
    converged = False
    for _ in range(max_iter):
        move = 0.0
        for i in range(n):
            z = roots[i]
            p, dp = _horner(desc, z)
            if p == 0:
                continue
            if dp == 0:
                roots[i] = z * (1 + 1e-8) + 1e-8
                move = math.inf
                continue
            newton = p / dp
            s = 0j
            for j in range(n):
                if j != i:
                    diff = z - roots[j]
                    if diff == 0:
                        diff = 1e-14 * (1.0 + abs(z))
                    s += 1.0 / diff
            w = newton / (1.0 - newton * s)
            roots[i] = z - w
            move = max(move, abs(w) / (1.0 + abs(roots[i])))
        if move <= 1e-14:
            converged = True
            break
    if not converged:
        roots = list(np.roots(np.array(desc, dtype=complex)))

    # Newton polish and residual sanity check against the rounding floor.
    polished = []
    for z in roots:
        for _ in range(2):
            p, dp = _horner(desc, z)
            if dp == 0 or p == 0:
                break
            step = p / dp
            if abs(step) > 0.5 * (1.0 + abs(z)):
                break
            z = z - step
        polished.append(z)
    bad = [
        z
        for z in polished
        if abs(_horner(desc, z)[0]) > 1e-9 * max(1.0, _poly_scale(desc, z))
    ]
    if bad:
        raise RootSolveError(
            f"root finder did not converge: worst residual at {bad[0]!r}"
        )
    return polished


def find_poles(ch: Channel) -> list[PoleRecord]:
    """All poles of the channel's S-matrix, classified, sorted by position.

    For chi = 0 the polynomial has a double root at k = 0 (the zero-energy
    bound state); for l = 0 the polynomial is the quadratic
    -lam k**2 + i k + chi.
    """
    roots = polynomial_roots(pole_polynomial(ch))
    records = [
        PoleRecord(k, classify_pole(k), abs(pole_residual(ch, k))) for k in roots
    ]
    records.sort(key=lambda r: (r.k_pole.real, r.k_pole.imag))
    return records


def asymptotic_poles(l: int, chi: float) -> list[complex]:
    """Closed-form roots of i k**(2l+1)/(2l-1)!!**2 + chi (k**2 term dropped).

    For chi < 0 the real odd root -|chi|**(1/(2l+1)) is used, so the values
    are exact roots for either sign of the coupling.
    """
    if not isinstance(l, int) or l < 0:
        raise ValueError(f"angular momentum must be a non-negative integer, got {l!r}")
    if chi == 0.0:
        raise ValueError("closed-form poles require a nonzero coupling")
    d = float(double_factorial(2 * l - 1))
    magnitude = d ** (2.0 / (2 * l + 1)) * abs(chi) ** (1.0 / (2 * l + 1))
    real_root = math.copysign(magnitude, chi)
    return [
        real_root * cmath.exp(1j * math.pi * (4 * p + 1) / (4 * l + 2))
        for p in range(1, 2 * l + 2)
    ]


def resonance_momentum(l: int, chi: float) -> float:
    """Real-axis resonance position of the dropped-k**2-term family,

        k_res = (2l-1)!!**(2/(2l+1)) |chi|**(1/(2l+1)) cos(pi/(4l+2)).

    Defined for l >= 1 (the centrifugal barrier is what traps the state).
    """
    if not isinstance(l, int) or l < 1:
        raise ValueError(f"resonances require l >= 1, got {l!r}")
    d = float(double_factorial(2 * l - 1))
    return (
        d ** (2.0 / (2 * l + 1))
        * abs(chi) ** (1.0 / (2 * l + 1))
        * math.cos(math.pi / (4 * l + 2))
    )
