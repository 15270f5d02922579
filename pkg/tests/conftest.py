import math

import numpy as np
import pytest

from deltawave import GasState, SourceCoefficients
from deltawave.stationary import Branch, critical_mach_numbers

GAMMA = 1.4


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def rel_err(a, b, floor=1.0):
    return abs(a - b) / max(abs(b), floor)


def state_rel_err(s1: GasState, s2: GasState) -> float:
    return max(
        abs(s1.rho - s2.rho) / abs(s2.rho),
        abs(s1.u - s2.u) / max(abs(s2.u), 1e-8),
        abs(s1.p - s2.p) / abs(s2.p),
    )


def coeffs_with_k(k_target: float) -> SourceCoefficients:
    """Coefficients whose derived combination equals ``k_target`` (k2 = 0)."""
    x = math.sqrt(1.0 + k_target) - 1.0
    return SourceCoefficients(x, 0.0, x)


def random_state(rng, rho_range=(0.1, 5.0), p_range=(0.1, 5.0), u_range=(-3.0, 3.0)):
    rho = rng.uniform(*rho_range)
    p = rng.uniform(*p_range)
    u = rng.uniform(*u_range)
    return GasState(rho, u, p, GAMMA)


def random_admissible_upstream(rng, coeffs: SourceCoefficients, branch: Branch) -> GasState:
    """Random rightward state whose Mach lies strictly inside the admissible
    upstream interval of the requested branch."""
    crit = critical_mach_numbers(coeffs, GAMMA)
    if branch is Branch.SUBSONIC:
        mach = rng.uniform(0.05, 0.97) * crit.upstream_subsonic_max
    else:
        lo = crit.upstream_supersonic_min * 1.02
        hi = crit.upstream_supersonic_sup
        hi = min(hi, 4.0) if math.isfinite(hi) else 4.0
        hi = 0.98 * hi
        if hi <= lo:
            hi = lo * 1.001
        mach = rng.uniform(lo, hi)
    rho = rng.uniform(0.3, 3.0)
    p = rng.uniform(0.3, 3.0)
    u = mach * math.sqrt(GAMMA * p / rho)
    return GasState(rho, u, p, GAMMA)
