"""Root finding and parameter sweeps over the balance residuals.

Covers three ways of hunting balanced configurations: bracketed root
refinement in one free boundary angle, analytic inversion for the pole
radius in the four- and eight-sector cases, and dense residual grids for
downstream contour extraction.  Every reported root is cross-checked
against the quadrature oracle before it is returned.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Callable, Sequence

from .conditions import _CASE_SIZES, CASE_EIGHT, CASE_FOUR, case_residual
from .geometry import ChordFan, CircleConfig, DomainError
from .oracle import quadrature_residual

# Sine sums smaller than this leave the residual essentially independent of
# the pole radius, so no finite inversion is meaningful.
_DEGENERATE_K = 1e-12

_AXIS_NAME = re.compile(r"^(r0|theta0|theta[1-9][0-9]*)$")


class SolverError(RuntimeError):
    """Raised when a bracket is unusable or a tolerance cannot be met."""


@dataclass(frozen=True)
class SolveRequest:
    """One-dimensional root search: free one base angle, hold the rest fixed.

    ``free_index`` is the 0-based slot the freed angle occupies among all
    base angles; ``fixed_angles`` lists the others in increasing order.
    ``tol`` bounds both the bracket width and the residual at the root
    (the latter scaled by a^2).
    """

    cfg: CircleConfig
    fixed_angles: tuple[float, ...]
    free_index: int
    bracket: tuple[float, float]
    tol: float = 1e-11
    max_iter: int = 200
    case_tag: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "fixed_angles", tuple(float(t) for t in self.fixed_angles))
        object.__setattr__(self, "bracket", (float(self.bracket[0]), float(self.bracket[1])))
        if not (math.isfinite(self.tol) and self.tol > 0.0):
            raise DomainError(f"tol must be positive, got {self.tol!r}")
        if not self.bracket[0] < self.bracket[1]:
            raise DomainError(f"bracket must be ordered, got {self.bracket!r}")
        if not 0 <= self.free_index <= len(self.fixed_angles):
            raise DomainError(
                f"free_index {self.free_index} out of range for {len(self.fixed_angles)} fixed angles"
            )
        if self.max_iter < 1:
            raise DomainError("max_iter must be at least 1")

    def angles_with(self, value: float) -> tuple[float, ...]:
        k = self.free_index
        return self.fixed_angles[:k] + (value,) + self.fixed_angles[k:]


@dataclass(frozen=True)
class SolveOutcome:
    """A root, the residual it achieves, and the quadrature cross-check."""

    root: float
    residual_at_root: float
    iterations: int
    oracle_check: float


@dataclass(frozen=True)
class SweepAxis:
    """One sweep dimension: ``r0``, ``theta0``, or ``theta<k>`` (1-based chord)."""

    name: str
    lo: float
    hi: float
    count: int

    def __post_init__(self) -> None:
        if not _AXIS_NAME.match(self.name):
            raise DomainError(f"unknown sweep axis {self.name!r} (use r0, theta0, or theta<k>)")
        if self.count < 1:
            raise DomainError(f"axis {self.name!r} needs count >= 1, got {self.count}")
        if not (math.isfinite(self.lo) and math.isfinite(self.hi) and self.lo <= self.hi):
            raise DomainError(f"axis {self.name!r} range must be ordered and finite")

    def grid_values(self) -> list[float]:
        if self.count == 1:
            return [self.lo]
        step = (self.hi - self.lo) / (self.count - 1)
        return [self.lo + i * step for i in range(self.count)]


@dataclass(frozen=True)
class ResidualGrid:
    """Dense residual evaluation in row-major order over the axes.

    Grid points whose parameters violate the case preconditions hold NaN,
    the reserved not-a-value marker; they are never silently dropped, so
    ``len(values)`` always equals the product of the axis counts.
    """

    axes: tuple[SweepAxis, ...]
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        expected = math.prod(ax.count for ax in self.axes)
        if len(self.values) != expected:
            raise DomainError(
                f"grid holds {len(self.values)} values but axes imply {expected}"
            )


def find_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    *,
    xtol: float,
    ftol: float,
    max_iter: int = 200,
) -> tuple[float, float, int]:
    """Safeguarded hybrid root refinement on a sign-change bracket.

    Tries a secant step from the two most recent evaluations and falls back
    to bisection whenever the candidate leaves the current bracket.  Stops
    as soon as ``|f| <= ftol``; if the bracket narrows to ``xtol`` first,
    the better endpoint must still satisfy ``ftol`` or the search fails.
    Returns ``(root, f(root), iterations)``.
    """
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise SolverError(f"invalid bracket [{lo!r}, {hi!r}]")
    fa = f(lo)
    fb = f(hi)
    if fa == 0.0:
        return lo, 0.0, 0
    if fb == 0.0:
        return hi, 0.0, 0
    if (fa > 0.0) == (fb > 0.0):
        raise SolverError(
            f"no sign change in bracket [{lo!r}, {hi!r}]: f(lo)={fa!r}, f(hi)={fb!r}"
        )
    if abs(fa) <= ftol:
        return lo, fa, 0
    if abs(fb) <= ftol:
        return hi, fb, 0

    a, b = lo, hi
    x_prev, f_prev = a, fa
    x_cur, f_cur = b, fb
    for iteration in range(1, max_iter + 1):
        x_new = None
        if f_cur != f_prev:
            secant = x_cur - f_cur * (x_cur - x_prev) / (f_cur - f_prev)
            if a < secant < b:
                x_new = secant
        if x_new is None:
            x_new = 0.5 * (a + b)
        f_new = f(x_new)
        if abs(f_new) <= ftol:
            return x_new, f_new, iteration
        if (f_new > 0.0) == (fa > 0.0):
            a, fa = x_new, f_new
        else:
            b, fb = x_new, f_new
        x_prev, f_prev = x_cur, f_cur
        x_cur, f_cur = x_new, f_new
        if b - a <= xtol:
            root, froot = (a, fa) if abs(fa) <= abs(fb) else (b, fb)
            if abs(froot) <= ftol:
                return root, froot, iteration
            raise SolverError(
                f"bracket narrowed to {b - a!r} but |residual|={abs(froot)!r} stays above {ftol!r}"
            )
    raise SolverError(f"max iterations ({max_iter}) exceeded")


def scan_sign_change(
    f: Callable[[float], float], lo: float, hi: float, points: int = 64
) -> tuple[float, float]:
    """Uniform scan for a sign-change sub-bracket.

    Convenience heuristic: it only inspects ``points`` samples, so a sign
    change squeezed between neighbouring samples can be missed.
    """
    if points < 2:
        raise SolverError("scan needs at least two points")
    if not lo < hi:
        raise SolverError(f"invalid scan range [{lo!r}, {hi!r}]")
    step = (hi - lo) / (points - 1)
    xs = [lo + i * step for i in range(points)]
    fs = [f(x) for x in xs]
    for i in range(points - 1):
        if fs[i] == 0.0 or (fs[i] > 0.0) != (fs[i + 1] > 0.0):
            return xs[i], xs[i + 1]
    if fs[-1] == 0.0:
        return xs[-2], xs[-1]
    raise SolverError(f"no sign change found scanning [{lo!r}, {hi!r}] with {points} points")


def feasible_interval(
    fixed_angles: Sequence[float], free_index: int
) -> tuple[float, float]:
    """Open interval of values the freed angle may take beside ``fixed_angles``.

    Bounded by the neighbouring fixed angles and by the half-turn window of
    the whole fan.  Raises when there are no fixed angles (the freed angle
    would be unconstrained).
    """
    fixed = tuple(float(t) for t in fixed_angles)
    if not fixed:
        raise SolverError("cannot infer a bracket for a fan with a single free chord")
    lo = fixed[free_index - 1] if free_index >= 1 else fixed[-1] - math.pi
    hi = fixed[free_index] if free_index < len(fixed) else fixed[0] + math.pi
    if not lo < hi:
        raise SolverError(f"fixed angles leave no room at slot {free_index}")
    return lo, hi


def solve_free_angle(req: SolveRequest) -> SolveOutcome:
    """Refine one boundary angle to a balance root inside ``req.bracket``.

    The residual must change sign over the bracket and the fan must stay
    validly ordered at both bracket ends (the feasible set in the freed
    angle is an interval, so interior points are then valid too).
    """
    lo, hi = req.bracket
    for end in (lo, hi):
        try:
            ChordFan(req.angles_with(end))
        except DomainError as exc:
            raise SolverError(f"ordering violated inside bracket at {end!r}: {exc}") from exc

    def f(value: float) -> float:
        return case_residual(req.cfg, req.angles_with(value), req.case_tag).residual

    a2 = req.cfg.a * req.cfg.a
    root, froot, iterations = find_root(
        f, lo, hi, xtol=req.tol, ftol=req.tol * a2, max_iter=req.max_iter
    )
    oracle = quadrature_residual(req.cfg, req.angles_with(root))
    if abs(oracle) > 100.0 * req.tol * a2:
        raise SolverError(
            f"quadrature cross-check {oracle!r} disagrees with closed-form root residual {froot!r}"
        )
    return SolveOutcome(root, froot, iterations, oracle)


def solve_pole_radius(
    angles: Sequence[float],
    theta0: float,
    a: float,
    case_tag: str,
    tol: float = 1e-11,
) -> SolveOutcome:
    """Pole radius that balances a fixed fan, by analytic inversion.

    Writing the residual as ``(r0^2/2)*K + a^2*L`` with ``K`` the bracketed
    sine sum and ``L`` the angular deficit (odd widths minus pi/2), the root
    is ``r0 = a*sqrt(-2L/K)`` whenever ``0 <= -2L/K < 1``.  Degenerate sine
    sums (condition independent of r0) and ratios outside the unit interval
    are reported as solver failures.
    """
    base = tuple(float(t) for t in angles)
    if case_tag not in (CASE_FOUR, CASE_EIGHT):
        raise DomainError(f"pole-radius inversion supports cases four and eight, not {case_tag!r}")
    if len(base) != _CASE_SIZES[case_tag]:
        raise DomainError(
            f"case {case_tag!r} takes {_CASE_SIZES[case_tag]} base angles, got {len(base)}"
        )
    ChordFan(base)

    def s(t: float) -> float:
        return math.sin(2.0 * (t - theta0))

    if case_tag == CASE_FOUR:
        t1, t2 = base
        K = s(t2) - s(t1)
        L = (t2 - t1) - 0.5 * math.pi
    else:
        t1, t2, t3, t4 = base
        K = s(t2) - s(t1) + s(t4) - s(t3)
        L = (t2 - t1) + (t4 - t3) - 0.5 * math.pi
    if abs(K) <= _DEGENERATE_K:
        raise SolverError(
            f"degenerate configuration: sine sum K={K!r} makes the residual independent of r0"
        )
    ratio = -2.0 * L / K
    if not 0.0 <= ratio < 1.0:
        raise SolverError(f"no interior solution: -2L/K = {ratio!r} falls outside [0, 1)")
    r0 = a * math.sqrt(ratio)
    cfg = CircleConfig(a=a, r0=r0, theta0=theta0)
    residual = case_residual(cfg, base, case_tag).residual
    oracle = quadrature_residual(cfg, base)
    a2 = a * a
    if abs(residual) > tol * a2 or abs(oracle) > 100.0 * tol * a2:
        raise SolverError(
            f"inverted radius {r0!r} fails the residual check: closed={residual!r}, quadrature={oracle!r}"
        )
    return SolveOutcome(r0, residual, 0, oracle)


def sweep_grid(
    cfg: CircleConfig,
    base_angles: Sequence[float],
    axes: Sequence[SweepAxis],
    case_tag: str | None = None,
) -> ResidualGrid:
    """Corrected residual over the cartesian product of the axes, row-major.

    Axis values override the template's ``r0``, ``theta0``, or one base
    angle per grid point; points violating the case preconditions are
    recorded as NaN.  Purely functional, so evaluation order never matters.
    """
    axes = tuple(axes)
    if not axes:
        raise DomainError("sweep needs at least one axis")
    base = tuple(float(t) for t in base_angles)
    if case_tag is not None and case_tag in _CASE_SIZES and len(base) != _CASE_SIZES[case_tag]:
        raise DomainError(
            f"case {case_tag!r} takes {_CASE_SIZES[case_tag]} base angles, got {len(base)}"
        )
    for ax in axes:
        if ax.name.startswith("theta") and ax.name != "theta0":
            k = int(ax.name[5:])
            if k > len(base):
                raise DomainError(f"axis {ax.name!r} exceeds the {len(base)} base angles")

    values: list[float] = []
    for combo in itertools.product(*(ax.grid_values() for ax in axes)):
        r0 = cfg.r0
        theta0 = cfg.theta0
        angles = list(base)
        for ax, value in zip(axes, combo):
            if ax.name == "r0":
                r0 = value
            elif ax.name == "theta0":
                theta0 = value
            else:
                angles[int(ax.name[5:]) - 1] = value
        try:
            point_cfg = CircleConfig(a=cfg.a, r0=r0, theta0=theta0)
            values.append(case_residual(point_cfg, tuple(angles), case_tag).residual)
        except DomainError:
            values.append(math.nan)
    return ResidualGrid(axes=axes, values=tuple(values))
