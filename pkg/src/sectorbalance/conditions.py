"""Balance residuals and the equal-area predicates for chord fans.

The balance residual of a fan is the odd-sector area sum minus half the disk
area; it vanishes exactly when the alternating sector sums are equal.  For
2, 3, and 4 chords (four, six, and eight sectors) the residual collapses to
short closed forms; for any other chord count it is evaluated directly from
the per-sector areas.

The six-sector case ships in two variants.  The default ``corrected`` form
is validated against the quadrature oracle.  The ``as-printed`` form is a
legacy transcription kept only for auditing: it carries an extra
``(r0^2/2)`` trigonometric term that actually telescopes to zero and scales
the arcsine bracket by ``(a/r0)^2`` instead of ``a^2/2``, which makes it
dimensionally inconsistent and undefined at ``r0 = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .geometry import (
    ChordFan,
    CircleConfig,
    DomainError,
    area_report,
    build_partition,
    substituted_angle,
)

CASE_FOUR = "four"
CASE_SIX = "six"
CASE_EIGHT = "eight"
CASE_GENERAL = "general-n"

VARIANT_CORRECTED = "corrected"
VARIANT_AS_PRINTED = "as-printed"

# Default tolerance for the equal-area predicates (radians / dimensionless).
DEFAULT_PREDICATE_TOL = 1e-9


@dataclass(frozen=True)
class ResidualReport:
    """Balance residual together with the inputs that produced it."""

    case_tag: str
    variant: str
    residual: float
    cfg: CircleConfig
    angles: tuple[float, ...]


class FourSectorCheck(NamedTuple):
    width_ok: bool
    sine_ok: bool


class SixSectorCheck(NamedTuple):
    sine_ok: bool
    bracket_ok: bool


class EightSectorCheck(NamedTuple):
    width_ok: bool
    sine_ok: bool
    #: cos(t4-t2) - tan(t1+t3-2*theta0)*cos(t3-t1); None when the tangent
    #: argument sits on a pole of tan and the form is indeterminate.
    tan_form: Optional[float]


def _check_half_turn_order(angles: tuple[float, ...]) -> None:
    for lo, hi in zip(angles, angles[1:]):
        if not hi > lo:
            raise DomainError(f"angles must be strictly increasing, got {lo!r} before {hi!r}")
    if angles[-1] - angles[0] >= math.pi:
        raise DomainError(
            f"angles must span less than a half-turn, got span {angles[-1] - angles[0]!r}"
        )


def _sin2(cfg: CircleConfig, theta: float) -> float:
    return math.sin(2.0 * (theta - cfg.theta0))


def residual_eight(
    cfg: CircleConfig, t1: float, t2: float, t3: float, t4: float
) -> ResidualReport:
    """Four-chord balance residual.

    ``(r0^2/2)[sin 2(t2-theta0) - sin 2(t1-theta0) + sin 2(t4-theta0)
    - sin 2(t3-theta0)] + a^2*(t2 - t1 + t4 - t3 - pi/2)``; zero exactly when
    the odd and even sector sums are equal.
    """
    angles = (t1, t2, t3, t4)
    _check_half_turn_order(angles)
    sine_part = _sin2(cfg, t2) - _sin2(cfg, t1) + _sin2(cfg, t4) - _sin2(cfg, t3)
    width_part = (t2 - t1) + (t4 - t3) - 0.5 * math.pi
    value = 0.5 * cfg.r0 * cfg.r0 * sine_part + cfg.a * cfg.a * width_part
    return ResidualReport(CASE_EIGHT, VARIANT_CORRECTED, value, cfg, angles)


def residual_four(cfg: CircleConfig, t1: float, t2: float) -> ResidualReport:
    """Two-chord balance residual.

    ``(r0^2/2)[sin 2(t2-theta0) - sin 2(t1-theta0)] + a^2*(t2 - t1 - pi/2)``.
    """
    angles = (t1, t2)
    _check_half_turn_order(angles)
    sine_part = _sin2(cfg, t2) - _sin2(cfg, t1)
    value = 0.5 * cfg.r0 * cfg.r0 * sine_part + cfg.a * cfg.a * (t2 - t1 - 0.5 * math.pi)
    return ResidualReport(CASE_FOUR, VARIANT_CORRECTED, value, cfg, angles)


def _six_bracket(cfg: CircleConfig, t1: float, t2: float, t3: float) -> float:
    """Arcsine bracket of the six-sector residual: 2(x2-x3-x1) - sin 2x3 + sin 2x2 - sin 2x1."""
    x1 = substituted_angle(cfg, t1)
    x2 = substituted_angle(cfg, t2)
    x3 = substituted_angle(cfg, t3)
    return (
        2.0 * (x2 - x3 - x1)
        - math.sin(2.0 * x3)
        + math.sin(2.0 * x2)
        - math.sin(2.0 * x1)
    )


def residual_six(
    cfg: CircleConfig,
    t1: float,
    t2: float,
    t3: float,
    variant: str = VARIANT_CORRECTED,
) -> ResidualReport:
    """Three-chord balance residual, corrected by default.

    corrected:   (a^2/2) * bracket
    as-printed:  (r0^2/2)[sin 2(t3-theta0) - sin 2(t1-theta0)] + (a/r0)^2 * bracket

    where ``bracket = 2(x2-x3-x1) - sin 2x3 + sin 2x2 - sin 2x1``.  The
    as-printed variant exists for audit comparisons only and is a domain
    error at r0 = 0.
    """
    angles = (t1, t2, t3)
    _check_half_turn_order(angles)
    bracket = _six_bracket(cfg, t1, t2, t3)
    if variant == VARIANT_CORRECTED:
        value = 0.5 * cfg.a * cfg.a * bracket
    elif variant == VARIANT_AS_PRINTED:
        if cfg.r0 == 0.0:
            raise DomainError("as-printed six-sector residual is undefined at r0 = 0")
        value = 0.5 * cfg.r0 * cfg.r0 * (_sin2(cfg, t3) - _sin2(cfg, t1)) + (
            cfg.a / cfg.r0
        ) ** 2 * bracket
    else:
        raise DomainError(f"unknown residual variant {variant!r}")
    return ResidualReport(CASE_SIX, variant, value, cfg, angles)


def residual_general(cfg: CircleConfig, fan: ChordFan) -> ResidualReport:
    """Balance residual for any chord count, from the per-sector closed forms.

    For an even number of chords, opposite sectors share parity and their
    arcsine terms cancel inside the odd sum; for an odd count they persist,
    so equal spacing alone does not balance the fan.
    """
    report = area_report(cfg, build_partition(fan))
    value = report.odd_sum - 0.5 * math.pi * cfg.a * cfg.a
    return ResidualReport(CASE_GENERAL, VARIANT_CORRECTED, value, cfg, fan.base_angles)


_CASE_SIZES = {CASE_FOUR: 2, CASE_SIX: 3, CASE_EIGHT: 4}


def case_residual(
    cfg: CircleConfig, angles: tuple[float, ...], case_tag: str | None = None
) -> ResidualReport:
    """Dispatch to the residual for ``case_tag``, inferring it from ``len(angles)``.

    Two, three, and four base angles map to the four-, six-, and eight-sector
    closed forms; anything else (or an explicit ``general-n``) goes through
    :func:`residual_general`.
    """
    angles = tuple(float(t) for t in angles)
    if case_tag is None:
        case_tag = {2: CASE_FOUR, 3: CASE_SIX, 4: CASE_EIGHT}.get(len(angles), CASE_GENERAL)
    if case_tag == CASE_GENERAL:
        return residual_general(cfg, ChordFan(angles))
    expected = _CASE_SIZES.get(case_tag)
    if expected is None:
        raise DomainError(f"unknown case tag {case_tag!r}")
    if len(angles) != expected:
        raise DomainError(
            f"case {case_tag!r} takes {expected} base angles, got {len(angles)}"
        )
    if case_tag == CASE_FOUR:
        return residual_four(cfg, *angles)
    if case_tag == CASE_SIX:
        return residual_six(cfg, *angles)
    return residual_eight(cfg, *angles)


def special_case_eight(
    cfg: CircleConfig,
    t1: float,
    t2: float,
    t3: float,
    t4: float,
    tol: float = DEFAULT_PREDICATE_TOL,
) -> EightSectorCheck:
    """Sufficient equal-area conditions for four chords.

    Checks the width condition ``(t2-t1)+(t4-t3) = pi/2`` and the sine
    condition ``sin 2(t4-theta0) + sin 2(t2-theta0) = sin 2(t3-theta0)
    + sin 2(t1-theta0)``; both true force the residual to vanish.  Also
    evaluates the equivalent tangent form
    ``cos(t4-t2) - tan(t1+t3-2*theta0)*cos(t3-t1)``, reporting None when
    ``t1+t3-2*theta0`` falls on a pole of the tangent.
    """
    _check_half_turn_order((t1, t2, t3, t4))
    width_ok = abs((t2 - t1) + (t4 - t3) - 0.5 * math.pi) <= tol
    lhs = _sin2(cfg, t4) + _sin2(cfg, t2)
    rhs = _sin2(cfg, t3) + _sin2(cfg, t1)
    sine_ok = abs(lhs - rhs) <= tol
    arg = t1 + t3 - 2.0 * cfg.theta0
    if abs(math.remainder(arg - 0.5 * math.pi, math.pi)) <= tol:
        tan_form: Optional[float] = None
    else:
        tan_form = math.cos(t4 - t2) - math.tan(arg) * math.cos(t3 - t1)
    return EightSectorCheck(width_ok, sine_ok, tan_form)


def special_case_four(
    cfg: CircleConfig, t1: float, t2: float, tol: float = DEFAULT_PREDICATE_TOL
) -> FourSectorCheck:
    """Sufficient equal-area conditions for two chords: quarter-turn width and matched sines."""
    _check_half_turn_order((t1, t2))
    width_ok = abs((t2 - t1) - 0.5 * math.pi) <= tol
    sine_ok = abs(_sin2(cfg, t2) - _sin2(cfg, t1)) <= tol
    return FourSectorCheck(width_ok, sine_ok)


def special_case_six(
    cfg: CircleConfig,
    t1: float,
    t2: float,
    t3: float,
    tol: float = DEFAULT_PREDICATE_TOL,
) -> SixSectorCheck:
    """Equal-area conditions for three chords.

    The arcsine bracket alone controls the corrected residual, so
    ``bracket_ok`` implies balance; the sine condition is reported for
    completeness but is not necessary under the corrected form (mirror
    fans balance with it false).
    """
    _check_half_turn_order((t1, t2, t3))
    sine_ok = abs(_sin2(cfg, t3) - _sin2(cfg, t1)) <= tol
    bracket_ok = abs(_six_bracket(cfg, t1, t2, t3)) <= tol
    return SixSectorCheck(sine_ok, bracket_ok)
