"""Phase shifts and the single-channel S-matrix.

Three phase shifts are computed for each channel:

* ``phase_shift_full``  -- exact matching of the free Riccati solutions to
  the surface condition at r = lam; valid for any k > 0.
* ``phase_shift_eff``   -- the two-parameter shape-independent formula

      -k**(2l+1) / (2l-1)!!**2 * cot(delta) = chi + k**2/((2l-1) lam**(2l-1)),

  the generalization of the s-wave scattering-length/effective-range
  expansion to arbitrary l; valid for k lam < 1.
* ``phase_shift_zero``  -- the one-parameter (coupling-only) formula, kept
  for comparison; it misplaces every l >= 1 resonance.

Phase shifts are defined modulo pi.  Pointwise values are reported in
(-pi/2, pi/2]; :func:`unwrap_scan` lifts a scan onto a continuous branch by
minimal-jump continuation, bisecting any interval whose jump is ambiguous so
that resonances much narrower than the grid spacing are still tracked
through their rise by pi.

Poles and zeros of cot(delta) are handled projectively: the matching is kept
as a (numerator, denominator) pair until the last moment, so resonance
points (delta = pi/2) and non-interacting points (delta = 0) are exact
rather than NaN.
"""

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .boundary import Channel, RobinCondition, robin_from_channel, x_strength_expansion
from .poles import PoleKind, RootSolveError, find_poles
from .specfun import double_factorial, riccati_bessel, riccati_neumann

__all__ = [
    "PhaseShiftPoint",
    "ratio_ab_full",
    "phase_shift_full",
    "phase_shift_eff",
    "phase_shift_zero",
    "s_matrix_eff",
    "s_matrix_from_delta",
    "continue_branch",
    "unwrap_scan",
    "phase_shift_scan",
]

# Series-based formulas are truncated beyond this in scan output (they are
# asymptotic in k*lam; the exact matching has no such bound).
SERIES_VALIDITY_KLAM = 0.9


@dataclass(frozen=True)
class PhaseShiftPoint:
    """One momentum sample of a scan.

    ``delta_eff``/``delta_zero`` are None where k*lam exceeds the validity
    bound of the series-based formulas.  ``ratio_ab`` is the amplitude ratio
    of the regular to the singular free solution (cot delta = -ratio_ab),
    +/-inf at a node of the matched regular combination.
    """

    k: float
    delta_full: float | None
    delta_eff: float | None
    delta_zero: float | None
    ratio_ab: float


def _check_momentum(k: float) -> None:
    if not (k > 0.0) or math.isinf(k):
        raise ValueError(f"momentum must be a positive finite real, got {k!r}")


def _matching_parts(rc: RobinCondition, k: float) -> tuple[float, float]:
    """Numerator and denominator of a/b from the surface matching.

    psi = a u_l(kr) + b v_l(kr) with psi'(lam) + c psi(lam) = 0 gives

        a/b = -(k v' + c v) / (k u' + c u)     (radial derivative = k d/dx)

    evaluated at x = k lam.  A Dirichlet surface reduces to a/b = -v/u.
    """
    x = k * rc.lam
    u = riccati_bessel(rc.l, x)
    v = riccati_neumann(rc.l, x)
    if rc.is_dirichlet:
        return -v.value, u.value
    num = -(k * v.derivative + rc.c * v.value)
    den = k * u.derivative + rc.c * u.value
    return num, den


def ratio_ab_full(rc: RobinCondition, k: float) -> float:
    """Amplitude ratio a/b of the exact surface matching; cot(delta) = -a/b.

    At a node of the matched regular combination (denominator zero) the
    projective infinity is returned with the sign of the numerator.
    """
    _check_momentum(k)
    num, den = _matching_parts(rc, k)
    if den == 0.0:
        return math.copysign(math.inf, num)
    return num / den


def _delta_from_parts(num: float, den: float) -> float:
    # cot(delta) = -num/den, reported in (-pi/2, pi/2]
    if num == 0.0:
        return 0.5 * math.pi
    return math.atan(-den / num)


def phase_shift_full(rc: RobinCondition, k: float) -> float:
    """Exact phase shift from the surface matching, in (-pi/2, pi/2]."""
    _check_momentum(k)
    return _delta_from_parts(*_matching_parts(rc, k))


def phase_shift_eff(ch: Channel, k: float) -> float:
    """Two-parameter low-energy phase shift, in (-pi/2, pi/2].

    Solves -k**(2l+1)/(2l-1)!!**2 * cot(delta) = chi + k**2/((2l-1) lam**(2l-1)).
    """
    _check_momentum(k)
    strength = x_strength_expansion(ch, k, 1)  # validates k*lam < 1
    d2 = float(double_factorial(2 * ch.l - 1)) ** 2
    return _delta_from_parts(d2 * strength, k ** (2 * ch.l + 1))


def phase_shift_zero(ch: Channel, k: float) -> float:
    """Coupling-only phase shift (no effective-range term), in (-pi/2, pi/2]."""
    _check_momentum(k)
    d2 = float(double_factorial(2 * ch.l - 1)) ** 2
    return _delta_from_parts(d2 * ch.chi, k ** (2 * ch.l + 1))


def s_matrix_eff(ch: Channel, k: float) -> complex:
    """Unit-modulus S-matrix of the two-parameter formula.

        S = -(k**(2l+1) + i (2l-1)!!**2 X) / (k**(2l+1) - i (2l-1)!!**2 X)

    with X = chi + k**2/((2l-1) lam**(2l-1)).
    """
    _check_momentum(k)
    strength = x_strength_expansion(ch, k, 1)
    d2 = float(double_factorial(2 * ch.l - 1)) ** 2
    kp = k ** (2 * ch.l + 1)
    return -(kp + 1j * d2 * strength) / (kp - 1j * d2 * strength)


def s_matrix_from_delta(delta: float) -> complex:
    """S = exp(2 i delta)."""
    if not math.isfinite(delta):
        raise ValueError(f"phase shift must be finite, got {delta!r}")
    return cmath.exp(2j * delta)


def continue_branch(previous: float, pointwise: float) -> float:
    """Shift ``pointwise`` by a multiple of pi to land nearest ``previous``."""
    return pointwise + round((previous - pointwise) / math.pi) * math.pi


def unwrap_scan(
    fn: Callable[[float], float],
    ks: Sequence[float],
    anchors: Iterable[float] = (),
    *,
    jump_tol: float = 0.5,
    max_depth: int = 46,
) -> list[float]:
    """Evaluate a pointwise phase function on a grid and lift it continuously.

    ``fn`` returns values in (-pi/2, pi/2]; the result follows one continuous
    branch across the strictly increasing grid ``ks``.  Whenever the
    minimal-jump increment between two samples exceeds ``jump_tol`` the
    interval is bisected (to ``max_depth``) so the lift stays faithful even
    through steep rises.  ``anchors`` are extra abscissae forced into the
    refinement -- scan drivers pass resonance positions here so that rises
    far narrower than the grid spacing cannot slip between samples.
    """
    ks = list(ks)
    for a, b in zip(ks, ks[1:]):
        if not b > a:
            raise ValueError("scan grid must be strictly increasing")
    anchor_list = sorted(set(float(a) for a in anchors))
    out: list[float] = []
    prev_k = 0.0
    prev_val = 0.0
    for k in ks:
        d = fn(k)
        if not out:
            val = d
        else:
            val = prev_val
            lo = prev_k
            for a in anchor_list:
                if lo < a < k:
                    val = _resolve_branch(fn, lo, val, a, fn(a), jump_tol, max_depth)
                    lo = a
            val = _resolve_branch(fn, lo, val, k, d, jump_tol, max_depth)
        out.append(val)
        prev_k, prev_val = k, val
    return out


def _resolve_branch(fn, k0, d0, k1, d1, jump_tol, depth):
    cand = continue_branch(d0, d1)
    if abs(cand - d0) <= jump_tol or depth <= 0 or (k1 - k0) <= 1e-13 * max(1.0, abs(k1)):
        return cand
    km = k0 + 0.5 * (k1 - k0)
    dm = _resolve_branch(fn, k0, d0, km, fn(km), jump_tol, depth - 1)
    return _resolve_branch(fn, km, dm, k1, d1, jump_tol, depth - 1)


def _resonance_anchors(ch: Channel, kmin: float, kmax: float) -> list[float]:
    """Real-axis sample points around every resonance pole of the channel."""
    try:
        records = find_poles(ch)
    except RootSolveError:
        return []
    anchors: list[float] = []
    for rec in records:
        if rec.kind is not PoleKind.RESONANCE:
            continue
        center = rec.k_pole.real
        width = max(abs(rec.k_pole.imag), 1e-9 * max(1.0, center))
        for j in range(-6, 7):
            a = center + 0.5 * j * width
            if kmin < a < kmax:
                anchors.append(a)
    return anchors


def phase_shift_scan(
    ch: Channel,
    ks: Sequence[float],
    outputs: Iterable[str] = ("full", "eff", "zero"),
) -> list[PhaseShiftPoint]:
    """Scan all requested phase shifts over a strictly increasing k-grid.

    Each column is lifted onto its own continuous branch.  The series-based
    columns are cut off (None) beyond k*lam = 0.9.
    """
    wanted = set(outputs)
    unknown = wanted - {"full", "eff", "zero"}
    if unknown:
        raise ValueError(f"unknown outputs: {sorted(unknown)}")
    ks = [float(k) for k in ks]
    rc = robin_from_channel(ch)
    anchors = _resonance_anchors(ch, ks[0], ks[-1]) if ks else []

    n_valid = sum(1 for k in ks if k * ch.lam < SERIES_VALIDITY_KLAM)

    full = unwrap_scan(lambda k: phase_shift_full(rc, k), ks, anchors) if "full" in wanted else None
    eff = (
        unwrap_scan(lambda k: phase_shift_eff(ch, k), ks[:n_valid], anchors)
        if "eff" in wanted and n_valid
        else []
    )
    zero = (
        unwrap_scan(lambda k: phase_shift_zero(ch, k), ks[:n_valid], anchors)
        if "zero" in wanted and n_valid
        else []
    )

    points = []
    for i, k in enumerate(ks):
        points.append(
            PhaseShiftPoint(
                k=k,
                delta_full=full[i] if full is not None else None,
                delta_eff=eff[i] if ("eff" in wanted and i < len(eff)) else None,
                delta_zero=zero[i] if ("zero" in wanted and i < len(zero)) else None,
                ratio_ab=ratio_ab_full(rc, k),
            )
        )
    return points
