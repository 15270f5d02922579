"""Structure-based Riemann solver for the point-source Euler system.

The self-similar solution consists of at most seven discontinuities: a
classical sub-fan on each side of the stationary jump at the origin. The
solver first predicts which of the admissible structures the data produces,
then solves only the algebra that structure requires. Exact reference fans
are composed the same way, storing a full classical sub-fan per side so that
sampling reduces to two classical samplers.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .classical import ClassicalFan, sample_classical, solve_classical
from .errors import RootBracketError, VacuumError
from .gas import GasState, SourceCoefficients
from .stationary import (
    Branch,
    choked_downstream,
    critical_mach_numbers,
    downstream_state,
    stationary_ratios,
)
from .waves import (
    WaveFamily,
    pressure_for_mach,
    rarefaction_state_by_mach,
    rest_pressure,
    wave_state,
)


class SolutionStructure(enum.Enum):
    TYPE1 = "Type1"
    TYPE2 = "Type2"
    TYPE3 = "Type3"
    TYPE4 = "Type4"
    TYPE5 = "Type5"
    TYPE6 = "Type6"
    TYPE7 = "Type7"
    CLASSICAL = "Classical"


# Structures the predictor can emit for each sign of the derived coefficient.
# The two limit structures are always represented through their neighbours:
# Type4 as a Type2/Type3 boundary case, Type6 as a Type1/Type5 one.
PREDICTABLE = {
    1: (SolutionStructure.TYPE1, SolutionStructure.TYPE2, SolutionStructure.TYPE3),
    0: (SolutionStructure.TYPE1, SolutionStructure.TYPE2, SolutionStructure.TYPE7),
    -1: (SolutionStructure.TYPE1, SolutionStructure.TYPE2, SolutionStructure.TYPE5),
}


@dataclass(frozen=True)
class SolverOutput:
    """Approximate one-sided states at the origin, with the predicted structure."""

    minus: GasState
    plus: GasState
    structure: SolutionStructure


def velocity_mismatch(p: float, left: GasState, right: GasState,
                      coeffs: SourceCoefficients) -> float:
    """Defect of the velocity match across contact and family-3 wave.

    Walk the family-1 curve from the left datum to pressure ``p``, jump the
    subsonic stationary wave, and compare the downstream velocity with the
    family-3 curve through the right datum at the downstream pressure. A root
    identifies the upstream pressure of a non-choked subsonic-passage
    solution.
    """
    g = left.gamma
    upstream = wave_state(WaveFamily.ONE, left, p)
    mach = upstream.u / math.sqrt(g * p / upstream.rho)
    if mach <= 1e-12:
        # Stagnation end of the bracket: downstream velocity vanishes with
        # the upstream one; only the pressure ratio survives.
        p_down = p * (1.0 + coeffs.k2)
        u_down = 0.0
    else:
        _, _, gu, gp = stationary_ratios(mach, coeffs, g, Branch.SUBSONIC)
        p_down = p * gp
        u_down = upstream.u * gu
    return wave_state(WaveFamily.THREE, right, p_down).u - u_down


def subsonic_passage_bracket(left: GasState, coeffs: SourceCoefficients) -> tuple[float, float]:
    """Pressures (p_rest, p_crit) bracketing admissible upstream pressures.

    ``p_rest`` stagnates the family-1 curve; ``p_crit`` puts its Mach number
    at the largest value the subsonic stationary branch admits (the choking
    Mach for amplifying sources, sonic otherwise). The admissible upstream
    pressure lies in [p_crit, p_rest).
    """
    crit = critical_mach_numbers(coeffs, left.gamma)
    target = crit.upstream_subsonic_max
    p_rest = rest_pressure(left)
    p_crit = pressure_for_mach(left, target)
    return p_rest, p_crit


def _type2_admissible(left: GasState, coeffs: SourceCoefficients) -> bool:
    k = coeffs.k
    m = left.mach
    crit = critical_mach_numbers(coeffs, left.gamma)
    if k > 0.0:
        return m >= crit.upstream_supersonic_min
    if k == 0.0:
        return m >= 1.0
    return 1.0 <= m < crit.upstream_supersonic_sup


def _type2_wave_clears_origin(left: GasState, right: GasState,
                              coeffs: SourceCoefficients) -> bool:
    """Does the first wave right of a supersonic passage move rightward?"""
    g = left.gamma
    down = downstream_state(left, coeffs, Branch.SUPERSONIC)
    try:
        p_star = solve_classical(down, right).p_star
    except VacuumError:
        return False
    if p_star < down.p:
        return True
    m2 = down.mach ** 2
    return (g + 1.0) * p_star <= (2.0 * g * m2 - g + 1.0) * down.p


def predict_structure(left: GasState, right: GasState,
                      coeffs: SourceCoefficients) -> SolutionStructure:
    """Predict the structure of the Riemann solution for rightward flow on both sides."""
    if not (left.u > 0.0 and right.u > 0.0):
        raise ValueError("prediction requires rightward flow on both sides")
    if _type2_admissible(left, coeffs) and _type2_wave_clears_origin(left, right, coeffs):
        return SolutionStructure.TYPE2
    p_rest, p_crit = subsonic_passage_bracket(left, coeffs)
    t_hi = velocity_mismatch(p_rest, left, right, coeffs)
    t_lo = velocity_mismatch(p_crit, left, right, coeffs)
    if t_hi * t_lo < 0.0:
        return SolutionStructure.TYPE1
    k = coeffs.k
    if k > 0.0:
        return SolutionStructure.TYPE3
    if k == 0.0:
        return SolutionStructure.TYPE7
    return SolutionStructure.TYPE5


def _solve_upstream_pressure(left: GasState, right: GasState, coeffs: SourceCoefficients,
                             tol: float = 1e-12, max_iter: int = 200) -> float:
    """Bisection for the root of the velocity mismatch inside the bracket.

    Seeds follow a fixed precedence so that data already in equilibrium is
    returned exactly: when the left datum's own pressure lies in the bracket
    and its mismatch is (numerically) zero, it is the root.
    """
    p_rest, p_crit = subsonic_passage_bracket(left, coeffs)
    scale_u = abs(left.u) + left.sound_speed + abs(right.u) + right.sound_speed
    tiny = 1e-13 * scale_u

    def t(p: float) -> float:
        return velocity_mismatch(p, left, right, coeffs)

    a = b = None
    if p_crit < left.p < p_rest:
        t_l = t(left.p)
        if abs(t_l) <= tiny:
            return left.p
        t_hi = t(p_rest)
        if t_l * t_hi <= 0.0:
            a, b, fa, fb = left.p, p_rest, t_l, t_hi
        else:
            t_lo = t(p_crit)
            if t_l * t_lo <= 0.0:
                a, b, fa, fb = p_crit, left.p, t_lo, t_l
    if a is None:
        a, b = p_crit, p_rest
        fa, fb = t(a), t(b)
    if abs(fa) <= tiny:
        return a
    if abs(fb) <= tiny:
        return b
    if fa * fb > 0.0:
        raise RootBracketError("velocity mismatch does not change sign over the seed interval")
    for _ in range(max_iter):
        mid = 0.5 * (a + b)
        fm = t(mid)
        if abs(fm) <= tiny:
            return mid
        if fa * fm <= 0.0:
            b, fb = mid, fm
        else:
            a, fa = mid, fm
        if b - a <= tol * max(1.0, mid):
            break
    return 0.5 * (a + b)


def _sonic_expansion_state(left: GasState) -> GasState:
    """Sonic point on the family-1 rarefaction through the left datum."""
    state = rarefaction_state_by_mach(WaveFamily.ONE, left, 1.0)
    # Pin the Mach number to one exactly; the ratios leave an ulp of slack.
    return GasState(state.rho, state.sound_speed, state.p, state.gamma)


def _solve_positive_flow(left: GasState, right: GasState, coeffs: SourceCoefficients,
                         tol: float = 1e-12) -> SolverOutput:
    structure = predict_structure(left, right, coeffs)
    if structure is SolutionStructure.TYPE2:
        minus = left
        plus = downstream_state(left, coeffs, Branch.SUPERSONIC)
    elif structure is SolutionStructure.TYPE1:
        p = _solve_upstream_pressure(left, right, coeffs, tol)
        minus = wave_state(WaveFamily.ONE, left, p)
        plus = downstream_state(minus, coeffs, Branch.SUBSONIC)
    elif structure is SolutionStructure.TYPE3:
        crit = critical_mach_numbers(coeffs, left.gamma)
        p = pressure_for_mach(left, crit.upstream_subsonic_max)
        minus = wave_state(WaveFamily.ONE, left, p)
        plus = choked_downstream(minus, coeffs)
    else:  # TYPE5 or TYPE7: sonic expansion up to the origin
        minus = _sonic_expansion_state(left)
        if structure is SolutionStructure.TYPE5:
            plus = downstream_state(minus, coeffs, Branch.SUPERSONIC)
        else:
            plus = choked_downstream(minus, coeffs)
    return SolverOutput(minus, plus, structure)


def approximate_solve(left: GasState, right: GasState, coeffs: SourceCoefficients,
                      tol: float = 1e-12) -> SolverOutput:
    """One-sided origin states of the approximate Riemann solver.

    Flow that does not pass through the origin (velocities of mixed sign, or
    zero on either side) carries no source; the homogeneous solution applies
    and both sides coincide. Leftward flow is mirrored through the rightward
    construction.
    """
    if left.u <= 0.0 and right.u >= 0.0 or left.u >= 0.0 and right.u <= 0.0:
        fan = solve_classical(left, right)
        state = sample_classical(fan, 0.0)
        return SolverOutput(state, state, SolutionStructure.CLASSICAL)
    if left.u < 0.0:
        out = _solve_positive_flow(right.mirrored(), left.mirrored(), coeffs, tol)
        return SolverOutput(out.plus.mirrored(), out.minus.mirrored(), out.structure)
    return _solve_positive_flow(left, right, coeffs, tol)


@dataclass(frozen=True)
class SourceFan:
    """Composed self-similar solution: classical sub-fans around the origin jump.

    ``left_fan`` resolves coordinates below zero and ``right_fan`` those above;
    the constant states adjacent to the origin are stored explicitly. For the
    no-source (classical) structure both sub-fans are the same full fan.
    Mirrored fans represent leftward flow; their sub-fans live in the
    reflected frame.
    """

    structure: SolutionStructure
    coeffs: SourceCoefficients
    minus: GasState
    plus: GasState
    left_fan: ClassicalFan
    right_fan: ClassicalFan
    mirrored: bool = False

    def left_wave_speeds(self) -> list[float]:
        return _active_speeds(self.left_fan)

    def right_wave_speeds(self) -> list[float]:
        return _active_speeds(self.right_fan)

    def feature_intervals(self, strength_tol: float = 1e-8) -> list[tuple[float, float]]:
        """Similarity-coordinate intervals swept by waves (discontinuities and fans)."""
        spans: list[tuple[float, float]] = []
        for fan, sign in ((self.left_fan, -1), (self.right_fan, 1)):
            for lo, hi in _wave_spans(fan, strength_tol):
                if self.mirrored:
                    lo, hi = -hi, -lo
                spans.append((lo, hi))
        if self.structure is not SolutionStructure.CLASSICAL:
            spans.append((0.0, 0.0))
        return sorted(spans)


def _wave_spans(fan: ClassicalFan, tol: float) -> list[tuple[float, float]]:
    spans = []
    if fan.wave_strength("left") > tol:
        spans.append((fan.left_speeds[0], fan.left_speeds[1]))
    sl, sr = fan.star_left, fan.star_right
    if abs(sl.rho - sr.rho) > tol * max(sl.rho, sr.rho):
        spans.append((fan.u_star, fan.u_star))
    if fan.wave_strength("right") > tol:
        spans.append((fan.right_speeds[0], fan.right_speeds[1]))
    return spans


def _active_speeds(fan: ClassicalFan, tol: float = 1e-8) -> list[float]:
    return [s for span in _wave_spans(fan, tol) for s in span]


def compose_reference_fan(left: GasState, right: GasState, coeffs: SourceCoefficients,
                          tol: float = 1e-13) -> SourceFan:
    """Exact self-similar solution assembled from the predicted structure.

    The right sub-fan is the classical solution between the downstream origin
    state and the right datum; for structures whose first right-going wave is
    the contact this degenerates naturally (zero-strength acoustic wave). The
    left sub-fan likewise connects the left datum to the upstream origin
    state.
    """
    if left.u <= 0.0 and right.u >= 0.0 or left.u >= 0.0 and right.u <= 0.0:
        fan = solve_classical(left, right, tol=tol)
        state = sample_classical(fan, 0.0)
        return SourceFan(SolutionStructure.CLASSICAL, coeffs, state, state, fan, fan)
    if left.u < 0.0:
        base = compose_reference_fan(right.mirrored(), left.mirrored(), coeffs, tol)
        return SourceFan(base.structure, coeffs, base.plus.mirrored(), base.minus.mirrored(),
                         base.left_fan, base.right_fan, mirrored=True)
    out = _solve_positive_flow(left, right, coeffs, tol)
    left_fan = solve_classical(left, out.minus, tol=tol)
    right_fan = solve_classical(out.plus, right, tol=tol)
    return SourceFan(out.structure, coeffs, out.minus, out.plus, left_fan, right_fan)


def sample_source_fan(fan: SourceFan, xi: float) -> GasState:
    """State at similarity coordinate xi = x/t; xi = 0 resolves to the flow-downstream side."""
    if fan.mirrored:
        eta = -xi
        inner = fan.left_fan if eta < 0.0 else fan.right_fan
        return sample_classical(inner, eta).mirrored()
    inner = fan.left_fan if xi < 0.0 else fan.right_fan
    return sample_classical(inner, xi)
