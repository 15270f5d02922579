"""Interface flux constructions, including the two-sided fluxes at the origin.

Away from the origin every scheme uses the local Lax-Friedrichs flux. At the
origin interface the source shows up as a deliberate difference between the
flux seen by the left cell and the one seen by the right cell. Two
constructions provide that pair: wrapping each trace through the opposite
stationary curve before a Lax-Friedrichs evaluation (the curve-transform
flux), and evaluating the physical flux on the output of the structure-based
approximate Riemann solver (the solver flux).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import NotSolvableError, UnavailableFluxError
from .gas import GasState, SourceCoefficients, eigenvalues, physical_flux, to_conserved
from .stationary import Branch, downstream_state, upstream_state
from .structure import approximate_solve


class SchemeKind(enum.Enum):
    SPLITTING = "splitting"
    KT = "kt"
    SOLVER = "solver"


@dataclass(frozen=True)
class Scheme:
    kind: SchemeKind
    kt_corrections: bool = True


@dataclass(frozen=True)
class FluxPair:
    """One-sided numerical fluxes at an interface (they differ only at the origin)."""

    minus: np.ndarray
    plus: np.ndarray


def llf_flux(left: GasState, right: GasState) -> np.ndarray:
    """Local Lax-Friedrichs flux between two traces."""
    alpha = max(max(abs(l) for l in eigenvalues(left)),
                max(abs(l) for l in eigenvalues(right)))
    return 0.5 * (physical_flux(left) + physical_flux(right)
                  - alpha * (to_conserved(right) - to_conserved(left)))


def _regime(state: GasState) -> Branch:
    return Branch.SUPERSONIC if abs(state.mach) > 1.0 else Branch.SUBSONIC


def _connect_rightward(state: GasState, coeffs: SourceCoefficients, corrections: bool) -> GasState:
    """State on the right side of a stationary jump whose left side is ``state``.

    Rightward flow walks the curve downstream, leftward flow upstream in the
    mirrored frame; stagnant traces carry no source and map to themselves.
    """
    if state.u > 0.0:
        return downstream_state(state, coeffs, _regime(state), corrections)
    if state.u < 0.0:
        return upstream_state(state.mirrored(), coeffs, _regime(state), corrections).mirrored()
    return state


def _connect_leftward(state: GasState, coeffs: SourceCoefficients, corrections: bool) -> GasState:
    """State on the left side of a stationary jump whose right side is ``state``."""
    if state.u > 0.0:
        return upstream_state(state, coeffs, _regime(state), corrections)
    if state.u < 0.0:
        return downstream_state(state.mirrored(), coeffs, _regime(state), corrections).mirrored()
    return state


def kt_flux(left_trace: GasState, right_trace: GasState, coeffs: SourceCoefficients,
            corrections: bool = True) -> FluxPair:
    """Curve-transform flux pair at the origin.

    Each one-sided flux pairs a raw trace with the opposite trace pulled
    through the stationary curve; the branch follows the regime of the trace
    being transformed. Without corrections an unsolvable transform aborts the
    evaluation; with them the discriminant is clamped at choking and the
    other branch substitutes for a blown-up one.
    """
    try:
        ghost_left = _connect_leftward(right_trace, coeffs, corrections)
        ghost_right = _connect_rightward(left_trace, coeffs, corrections)
    except NotSolvableError as exc:
        raise UnavailableFluxError(str(exc)) from exc
    return FluxPair(llf_flux(left_trace, ghost_left), llf_flux(ghost_right, right_trace))


def solver_flux(left_trace: GasState, right_trace: GasState,
                coeffs: SourceCoefficients) -> FluxPair:
    """Physical fluxes of the approximate Riemann solver's one-sided states."""
    out = approximate_solve(left_trace, right_trace, coeffs)
    return FluxPair(physical_flux(out.minus), physical_flux(out.plus))


def origin_flux(left_trace: GasState, right_trace: GasState, coeffs: SourceCoefficients,
                scheme: Scheme) -> FluxPair:
    if scheme.kind is SchemeKind.SOLVER:
        return solver_flux(left_trace, right_trace, coeffs)
    if scheme.kind is SchemeKind.KT:
        return kt_flux(left_trace, right_trace, coeffs, scheme.kt_corrections)
    f = llf_flux(left_trace, right_trace)
    return FluxPair(f, f)
