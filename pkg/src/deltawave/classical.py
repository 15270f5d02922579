"""Exact Riemann solver and self-similar sampler for the homogeneous Euler equations.

The star pressure solves a velocity-matching equation between the family-1
curve through the left state and the family-3 curve through the right state.
The root is bracketed, then polished with safeguarded Newton steps using the
analytic derivative of each curve.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import VacuumError
from .gas import GasState
from .waves import WaveFamily, shock_speed, wave_state


class WaveKind(enum.Enum):
    SHOCK = "shock"
    RAREFACTION = "rarefaction"


@dataclass(frozen=True)
class ClassicalFan:
    """Solved Riemann fan: two acoustic waves around a contact."""

    left: GasState
    right: GasState
    p_star: float
    u_star: float
    rho_star_left: float
    rho_star_right: float
    left_kind: WaveKind
    right_kind: WaveKind
    left_speeds: tuple[float, float]   # (head, tail); equal for a shock
    right_speeds: tuple[float, float]
    gamma: float

    @property
    def star_left(self) -> GasState:
        return GasState(self.rho_star_left, self.u_star, self.p_star, self.gamma)

    @property
    def star_right(self) -> GasState:
        return GasState(self.rho_star_right, self.u_star, self.p_star, self.gamma)

    def wave_strength(self, side: str) -> float:
        anchor = self.left if side == "left" else self.right
        return abs(self.p_star - anchor.p) / max(self.p_star, anchor.p)


def _curve_velocity(anchor: GasState, p: float, family: WaveFamily) -> tuple[float, float]:
    """Velocity on the wave curve at pressure p, and its derivative in p."""
    g = anchor.gamma
    sign = -1.0 if family is WaveFamily.ONE else 1.0
    if p >= anchor.p:
        a_coef = 2.0 / ((g + 1.0) * anchor.rho)
        b_coef = (g - 1.0) / (g + 1.0) * anchor.p
        q = math.sqrt(a_coef / (p + b_coef))
        u = anchor.u + sign * (p - anchor.p) * q
        du = sign * q * (1.0 - 0.5 * (p - anchor.p) / (p + b_coef))
    else:
        z = (g - 1.0) / (2.0 * g)
        ratio = (p / anchor.p) ** z
        u = anchor.u + sign * 2.0 * anchor.sound_speed / (g - 1.0) * (ratio - 1.0)
        du = sign / (anchor.rho * anchor.sound_speed) * (p / anchor.p) ** (-(g + 1.0) / (2.0 * g))
    return u, du


def _pressure_defect(left: GasState, right: GasState, p: float) -> tuple[float, float]:
    ul, dul = _curve_velocity(left, p, WaveFamily.ONE)
    ur, dur = _curve_velocity(right, p, WaveFamily.THREE)
    return ul - ur, dul - dur


def solve_classical(left: GasState, right: GasState, tol: float = 1e-12) -> ClassicalFan:
    """Exact solution of the Riemann problem between two states of equal gamma."""
    if left.gamma != right.gamma:
        raise ValueError("states must share gamma")
    g = left.gamma
    gap = 2.0 * left.sound_speed / (g - 1.0) + 2.0 * right.sound_speed / (g - 1.0) \
        - (right.u - left.u)
    if gap <= 0.0:
        raise VacuumError(
            f"initial velocity divergence {right.u - left.u:.6g} opens vacuum"
        )

    scale_u = abs(left.u) + left.sound_speed + abs(right.u) + right.sound_speed
    tiny = 1e-13 * scale_u
    # Degenerate inputs where one anchor pressure is already the root: keeps
    # zero-strength waves exactly zero-strength.
    if abs(_pressure_defect(left, right, left.p)[0]) <= tiny:
        p_star = left.p
    elif abs(_pressure_defect(left, right, right.p)[0]) <= tiny:
        p_star = right.p
    else:
        lo = 1e-12 * min(left.p, right.p)
        hi = max(left.p, right.p)
        while _pressure_defect(left, right, hi)[0] > 0.0:
            hi *= 4.0
            if hi > 1e40:
                raise VacuumError("pressure equation has no root")
        p_star = _solve_pressure(left, right, lo, hi, tol, scale_u)

    ul, _ = _curve_velocity(left, p_star, WaveFamily.ONE)
    ur, _ = _curve_velocity(right, p_star, WaveFamily.THREE)
    u_star = 0.5 * (ul + ur)

    sl = wave_state(WaveFamily.ONE, left, p_star)
    sr = wave_state(WaveFamily.THREE, right, p_star)

    if p_star >= left.p:
        lk = WaveKind.SHOCK
        sigma = shock_speed(WaveFamily.ONE, left, p_star)
        lsp = (sigma, sigma)
    else:
        lk = WaveKind.RAREFACTION
        a_star = math.sqrt(g * p_star / sl.rho)
        lsp = (left.u - left.sound_speed, u_star - a_star)
    if p_star >= right.p:
        rk = WaveKind.SHOCK
        sigma = shock_speed(WaveFamily.THREE, right, p_star)
        rsp = (sigma, sigma)
    else:
        rk = WaveKind.RAREFACTION
        a_star = math.sqrt(g * p_star / sr.rho)
        rsp = (u_star + a_star, right.u + right.sound_speed)

    return ClassicalFan(left, right, p_star, u_star, sl.rho, sr.rho, lk, rk, lsp, rsp, g)


def _solve_pressure(left: GasState, right: GasState, lo: float, hi: float,
                    tol: float, scale_u: float) -> float:
    """Bisection bracket narrowed, then safeguarded Newton to convergence.

    Converges on the velocity residual itself, so the returned root is
    accurate even where the pressure function is steep.
    """
    flo, _ = _pressure_defect(left, right, lo)
    fhi, _ = _pressure_defect(left, right, hi)
    if flo < 0.0 or fhi > 0.0:
        raise VacuumError("failed to bracket the star pressure")
    for _ in range(8):
        mid = 0.5 * (lo + hi)
        fm, _ = _pressure_defect(left, right, mid)
        if fm > 0.0:
            lo = mid
        else:
            hi = mid
    p = 0.5 * (lo + hi)
    for _ in range(100):
        f, df = _pressure_defect(left, right, p)
        if abs(f) <= 1e-13 * scale_u:
            return p
        if f > 0.0:
            lo = p
        else:
            hi = p
        step = f / df if df != 0.0 else 0.0
        p_new = p - step
        if not (lo < p_new < hi):
            p_new = 0.5 * (lo + hi)
        if abs(p_new - p) <= 0.01 * tol * max(1.0, p_new):
            return p_new
        p = p_new
    return p


def sample_classical(fan: ClassicalFan, xi: float) -> GasState:
    """State of the self-similar fan at similarity coordinate xi = x/t.

    A coordinate landing exactly on a discontinuity resolves to the state on
    its right (any consistent rule works for flux evaluation).
    """
    g = fan.gamma
    if xi < fan.u_star:
        anchor = fan.left
        if fan.left_kind is WaveKind.SHOCK:
            return anchor if xi < fan.left_speeds[0] else fan.star_left
        head, tail = fan.left_speeds
        if xi < head:
            return anchor
        if xi > tail:
            return fan.star_left
        a = 2.0 / (g + 1.0) * (anchor.sound_speed + 0.5 * (g - 1.0) * (anchor.u - xi))
        u = xi + a
        rho = anchor.rho * (a / anchor.sound_speed) ** (2.0 / (g - 1.0))
        p = anchor.p * (a / anchor.sound_speed) ** (2.0 * g / (g - 1.0))
        return GasState(rho, u, p, g)
    anchor = fan.right
    if fan.right_kind is WaveKind.SHOCK:
        return anchor if xi >= fan.right_speeds[0] else fan.star_right
    tail, head = fan.right_speeds
    if xi >= head:
        return anchor
    if xi < tail:
        return fan.star_right
    a = 2.0 / (g + 1.0) * (anchor.sound_speed - 0.5 * (g - 1.0) * (anchor.u - xi))
    u = xi - a
    rho = anchor.rho * (a / anchor.sound_speed) ** (2.0 / (g - 1.0))
    p = anchor.p * (a / anchor.sound_speed) ** (2.0 * g / (g - 1.0))
    return GasState(rho, u, p, g)
