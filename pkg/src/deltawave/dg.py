"""Third-order discontinuous Galerkin discretization with the origin on an interface.

Cells carry modal coefficients on the scaled Legendre basis 1, xi, xi^2-1/12
over the reference element xi in [-1/2, 1/2], so the zeroth mode is the cell
mean. Volume integrals use 3-point Gauss quadrature in the deviation-from-
mean form, which keeps piecewise-constant equilibrium data bit-exact. A
characteristicwise minmod (TVB) limiter runs after every Runge-Kutta stage.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigError, SchemeError
from .fluxes import FluxPair, Scheme, SchemeKind, origin_flux
from .gas import GasState, SourceCoefficients, evaluate_source

# Gauss-Legendre nodes/weights on [-1/2, 1/2] (3 points, degree-5 exact).
_QNODES = np.array([-0.5 * math.sqrt(3.0 / 5.0), 0.0, 0.5 * math.sqrt(3.0 / 5.0)])
_QWEIGHTS = np.array([5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0])
# Diagonal mass matrix of the basis (integral of each mode squared).
_MASS = np.array([1.0, 1.0 / 12.0, 1.0 / 180.0])


@dataclass(frozen=True)
class Grid:
    """Uniform grid on [a, b] with a cell interface pinned exactly at x = 0."""

    a: float
    b: float
    n_cells: int
    h: float
    j0: int  # number of cells left of the origin; interface index of x = 0

    @property
    def interfaces(self) -> np.ndarray:
        return (np.arange(self.n_cells + 1) - self.j0) * self.h

    @property
    def centers(self) -> np.ndarray:
        return (np.arange(self.n_cells) - self.j0 + 0.5) * self.h

    @property
    def left_cell(self) -> int:
        """Index of the cell whose right interface is the origin."""
        return self.j0 - 1

    @property
    def right_cell(self) -> int:
        return self.j0


def make_grid(a: float, b: float, h: float) -> Grid:
    """Build a grid of width ``h`` on [a, b]; the origin must fall on an interface."""
    if not (a < 0.0 < b):
        raise ConfigError(f"domain [{a}, {b}] must contain the origin strictly")
    n = round((b - a) / h)
    j0 = round(-a / h)
    if abs(n * h - (b - a)) > 1e-9 * h or n < 2:
        raise ConfigError(f"cell width {h} does not tile [{a}, {b}]")
    if abs(j0 * h + a) > 1e-9 * h or not 0 < j0 < n:
        raise ConfigError(f"cell width {h} does not place the origin on an interface of [{a}, {b}]")
    return Grid(a, b, n, h, j0)


@dataclass(frozen=True)
class DgField:
    """Per-cell modal coefficients of the conserved variables.

    ``coeffs`` has shape (n_cells, 3 modes, 3 variables); mode 0 is the cell
    mean of (rho, rho*u, E).
    """

    grid: Grid
    gamma: float
    coeffs: np.ndarray
    time: float = 0.0

    @property
    def means(self) -> np.ndarray:
        return self.coeffs[:, 0, :]

    def with_coeffs(self, coeffs: np.ndarray, time: float | None = None) -> "DgField":
        return replace(self, coeffs=coeffs, time=self.time if time is None else time)


def field_from_states(grid: Grid, left: GasState, right: GasState) -> DgField:
    """Piecewise-constant field: ``left`` on cells left of the origin, ``right`` beyond."""
    from .gas import to_conserved

    coeffs = np.zeros((grid.n_cells, 3, 3))
    coeffs[: grid.j0, 0, :] = to_conserved(left)
    coeffs[grid.j0 :, 0, :] = to_conserved(right)
    return DgField(grid, left.gamma, coeffs)


def _primitives(u: np.ndarray, gamma: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    rho = u[..., 0]
    vel = u[..., 1] / rho
    p = (gamma - 1.0) * (u[..., 2] - 0.5 * u[..., 1] * vel)
    return rho, vel, p


def _flux_arrays(u: np.ndarray, gamma: float) -> np.ndarray:
    rho, vel, p = _primitives(u, gamma)
    out = np.empty_like(u)
    out[..., 0] = u[..., 1]
    out[..., 1] = u[..., 1] * vel + p
    out[..., 2] = (u[..., 2] + p) * vel
    return out


def _llf_arrays(ul: np.ndarray, ur: np.ndarray, gamma: float) -> np.ndarray:
    rl, vl, pl = _primitives(ul, gamma)
    rr, vr, pr = _primitives(ur, gamma)
    al = np.sqrt(gamma * pl / rl)
    ar = np.sqrt(gamma * pr / rr)
    alpha = np.maximum(np.abs(vl) + al, np.abs(vr) + ar)
    return 0.5 * (_flux_arrays(ul, gamma) + _flux_arrays(ur, gamma)
                  - alpha[:, None] * (ur - ul))


def _traces(coeffs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cell-edge values (left edge, right edge) of the modal expansion."""
    lo = coeffs[:, 0, :] - 0.5 * coeffs[:, 1, :] + coeffs[:, 2, :] / 6.0
    hi = coeffs[:, 0, :] + 0.5 * coeffs[:, 1, :] + coeffs[:, 2, :] / 6.0
    return lo, hi


def _check_admissible(u: np.ndarray, gamma: float, label: str, time: float) -> None:
    rho, _, p = _primitives(u, gamma)
    if not (np.all(np.isfinite(u)) and np.all(rho > 0.0) and np.all(p > 0.0)):
        bad = np.where(~((rho > 0.0) & (p > 0.0) & np.all(np.isfinite(u), axis=-1)))[0]
        raise SchemeError(f"inadmissible {label} state at cells {bad[:5]} (t={time:.6g})")


def _state(row: np.ndarray, gamma: float) -> GasState:
    rho = float(row[0])
    u = float(row[1]) / rho
    p = (gamma - 1.0) * (float(row[2]) - 0.5 * rho * u * u)
    return GasState(rho, u, p, gamma)


def dg_rhs(field: DgField, coeffs: SourceCoefficients, scheme: Scheme) -> np.ndarray:
    """Time derivative of the modal coefficients under the given scheme.

    The splitting scheme treats the origin like any interior interface; the
    unsplit schemes replace the origin flux by the scheme's two-sided pair,
    so the cells adjacent to the origin see different fluxes there.
    """
    grid, g = field.grid, field.gamma
    c = field.coeffs
    n, h = grid.n_cells, grid.h
    tr_lo, tr_hi = _traces(c)
    means = c[:, 0, :]

    # Interface states with transmissive (zero-order extrapolated) ghosts.
    u_left = np.vstack([means[:1], tr_hi])
    u_right = np.vstack([tr_lo, means[-1:]])
    _check_admissible(u_left, g, "interface", field.time)
    _check_admissible(u_right, g, "interface", field.time)
    fhat = _llf_arrays(u_left, u_right, g)

    # Per-cell boundary fluxes; the origin interface may carry two values.
    flux_r = fhat[1:].copy()
    flux_l = fhat[:-1].copy()
    if scheme.kind is not SchemeKind.SPLITTING:
        pair: FluxPair = origin_flux(
            _state(u_left[grid.j0], g), _state(u_right[grid.j0], g), coeffs, scheme
        )
        flux_r[grid.left_cell] = pair.minus
        flux_l[grid.right_cell] = pair.plus

    # Volume terms in deviation form: exact for piecewise-constant data.
    fbar = _flux_arrays(means, g)
    acc1 = np.zeros_like(means)
    acc2 = np.zeros_like(means)
    for xq, wq in zip(_QNODES, _QWEIGHTS):
        uq = c[:, 0, :] + c[:, 1, :] * xq + c[:, 2, :] * (xq * xq - 1.0 / 12.0)
        _check_admissible(uq, g, "quadrature", field.time)
        dev = _flux_arrays(uq, g) - fbar
        acc1 += wq * dev
        acc2 += (wq * 2.0 * xq) * dev
    vol1 = acc1 + fbar
    vol2 = acc2

    rhs = np.empty_like(c)
    rhs[:, 0, :] = -(flux_r - flux_l) / h
    rhs[:, 1, :] = (vol1 - 0.5 * (flux_r + flux_l)) / (h * _MASS[1])
    rhs[:, 2, :] = (vol2 - (flux_r - flux_l) / 6.0) / (h * _MASS[2])
    return rhs


def _eig_matrices(means: np.ndarray, gamma: float) -> tuple[np.ndarray, np.ndarray]:
    """Left and right eigenvector matrices of the flux Jacobian at each cell mean."""
    rho, u, p = _primitives(means, gamma)
    a = np.sqrt(gamma * p / rho)
    h_tot = (means[:, 2] + p) / rho
    n = means.shape[0]
    right = np.empty((n, 3, 3))
    right[:, 0, 0] = 1.0
    right[:, 0, 1] = 1.0
    right[:, 0, 2] = 1.0
    right[:, 1, 0] = u - a
    right[:, 1, 1] = u
    right[:, 1, 2] = u + a
    right[:, 2, 0] = h_tot - u * a
    right[:, 2, 1] = 0.5 * u * u
    right[:, 2, 2] = h_tot + u * a

    b1 = (gamma - 1.0) / (a * a)
    b2 = 0.5 * b1 * u * u
    left = np.empty((n, 3, 3))
    left[:, 0, 0] = 0.5 * (b2 + u / a)
    left[:, 0, 1] = -0.5 * (b1 * u + 1.0 / a)
    left[:, 0, 2] = 0.5 * b1
    left[:, 1, 0] = 1.0 - b2
    left[:, 1, 1] = b1 * u
    left[:, 1, 2] = -b1
    left[:, 2, 0] = 0.5 * (b2 - u / a)
    left[:, 2, 1] = -0.5 * (b1 * u - 1.0 / a)
    left[:, 2, 2] = 0.5 * b1
    return left, right


def _minmod3(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    same = (np.sign(a) == np.sign(b)) & (np.sign(a) == np.sign(c))
    mag = np.minimum(np.abs(a), np.minimum(np.abs(b), np.abs(c)))
    return np.where(same, np.sign(a) * mag, 0.0)


def tvd_limit(field: DgField, tvb_m: float = 0.0) -> DgField:
    """Characteristicwise TVB limiter; means are untouched.

    Interface deviations of each cell are compared, in the characteristic
    variables of the cell's own mean, against the forward/backward mean
    differences. A cell whose deviations the minmod alters is rebuilt as a
    linear polynomial with the minmod-limited slope. Cells whose limited
    traces still leave the admissible set fall back to their means.
    """
    c = field.coeffs.copy()
    means = c[:, 0, :]
    dplus = np.vstack([means[1:] - means[:-1], np.zeros((1, 3))])
    dminus = np.vstack([np.zeros((1, 3)), means[1:] - means[:-1]])
    left, right = _eig_matrices(means, field.gamma)

    dev_hi = 0.5 * c[:, 1, :] + c[:, 2, :] / 6.0
    dev_lo = 0.5 * c[:, 1, :] - c[:, 2, :] / 6.0

    def to_char(x: np.ndarray) -> np.ndarray:
        return np.einsum("nij,nj->ni", left, x)

    ch_hi, ch_lo = to_char(dev_hi), to_char(dev_lo)
    ch_p, ch_m = to_char(dplus), to_char(dminus)

    mod_hi = _minmod3(ch_hi, ch_p, ch_m)
    mod_lo = _minmod3(ch_lo, ch_p, ch_m)
    if tvb_m > 0.0:
        keep = np.abs(ch_hi) <= tvb_m * field.grid.h ** 2
        mod_hi = np.where(keep, ch_hi, mod_hi)
        keep = np.abs(ch_lo) <= tvb_m * field.grid.h ** 2
        mod_lo = np.where(keep, ch_lo, mod_lo)

    troubled = np.any((mod_hi != ch_hi) | (mod_lo != ch_lo), axis=1)
    if np.any(troubled):
        slope = _minmod3(to_char(c[:, 1, :]), ch_p, ch_m)
        new_c1 = np.einsum("nij,nj->ni", right, slope)
        c[troubled, 1, :] = new_c1[troubled]
        c[troubled, 2, :] = 0.0

    # Positivity guard: any cell whose traces leave the admissible set is
    # flattened to its mean.
    tr_lo, tr_hi = _traces(c)
    for tr in (tr_lo, tr_hi):
        rho, _, p = _primitives(tr, field.gamma)
        bad = (rho <= 0.0) | (p <= 0.0)
        if np.any(bad):
            c[bad, 1, :] = 0.0
            c[bad, 2, :] = 0.0
    return field.with_coeffs(c)


def cfl_dt(field: DgField, cfl: float) -> float:
    """Time step from the fastest characteristic speed on cell means."""
    if not 0.0 < cfl <= 0.5:
        raise ValueError(f"cfl must lie in (0, 0.5], got {cfl}")
    rho, u, p = _primitives(field.means, field.gamma)
    if not np.all(np.isfinite(u)):
        raise SchemeError(f"non-finite field at t={field.time:.6g}")
    a = np.sqrt(field.gamma * p / rho)
    return cfl * field.grid.h / float(np.max(np.abs(u) + a))


def _apply_split_source(field: DgField, coeffs: SourceCoefficients, dt: float) -> DgField:
    """Upwind point-source update of the two origin-adjacent cell means."""
    grid = field.grid
    c = field.coeffs.copy()
    left = _state(c[grid.left_cell, 0, :], field.gamma)
    right = _state(c[grid.right_cell, 0, :], field.gamma)
    s = evaluate_source(left, right, coeffs)
    if left.u > 0.0 and right.u > 0.0:
        c[grid.right_cell, 0, :] += dt / grid.h * s
    elif left.u < 0.0 and right.u < 0.0:
        c[grid.left_cell, 0, :] += dt / grid.h * s
    return field.with_coeffs(c)


def ssp_rk3_combine(y0: np.ndarray, dt: float, rhs, post=None) -> np.ndarray:
    """Three-stage strong-stability-preserving Runge-Kutta combination.

    The convex combinations are written in increment form so that a zero
    right-hand side reproduces ``y0`` bit-exactly. ``post`` (e.g. a limiter)
    is applied to every stage value.
    """
    if post is None:
        post = lambda y: y  # noqa: E731
    y1 = post(y0 + dt * rhs(y0))
    y2 = post(y0 + 0.25 * ((y1 - y0) + dt * rhs(y1)))
    return post(y0 + (2.0 / 3.0) * ((y2 - y0) + dt * rhs(y2)))


def ssp_rk3_step(field: DgField, dt: float, coeffs: SourceCoefficients,
                 scheme: Scheme, tvb_m: float = 0.0) -> DgField:
    """One limited three-stage step of the semi-discrete scheme.

    The splitting scheme appends its source substep, acting on cell means
    only, after the full convection step.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")

    def rhs(c: np.ndarray) -> np.ndarray:
        return dg_rhs(field.with_coeffs(c), coeffs, scheme)

    def post(c: np.ndarray) -> np.ndarray:
        return tvd_limit(field.with_coeffs(c), tvb_m).coeffs

    out = field.with_coeffs(ssp_rk3_combine(field.coeffs, dt, rhs, post),
                            time=field.time + dt)
    if scheme.kind is SchemeKind.SPLITTING:
        out = _apply_split_source(out, coeffs, dt)
    return out
