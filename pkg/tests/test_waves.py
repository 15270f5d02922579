import math

import numpy as np
import pytest

from deltawave import GasState, physical_flux, to_conserved
from deltawave.waves import (
    WaveFamily,
    mach_along_1wave,
    pressure_for_mach,
    rarefaction_ratios,
    rarefaction_state_by_mach,
    rarefaction_state_by_pressure,
    rest_pressure,
    shock_speed,
    shock_state,
    wave_state,
)

from conftest import GAMMA, random_state


class TestShock:
    def test_zero_strength_is_identity(self):
        s, m = shock_state(WaveFamily.ONE, GasState(1, 0, 1), 1.0)
        assert (s.rho, s.u, s.p) == (1.0, 0.0, 1.0)
        assert m == 0.0

    def test_family_one_value(self):
        # frozen from the jump relations; also verified against the
        # Rankine-Hugoniot residual below
        s, _ = shock_state(WaveFamily.ONE, GasState(1, 0, 1), 2.0)
        assert abs(s.rho - 1.625) < 1e-14
        assert abs(s.u - (-0.620173672946042)) < 1e-12

    def test_family_three_mirror(self):
        s, _ = shock_state(WaveFamily.THREE, GasState(1, 0, 1), 2.0)
        assert abs(s.rho - 1.625) < 1e-14
        assert abs(s.u - 0.620173672946042) < 1e-12

    def test_rejects_rarefaction_side(self):
        with pytest.raises(ValueError):
            shock_state(WaveFamily.ONE, GasState(1, 0, 1), 0.5)

    def test_rankine_hugoniot_residual(self, rng):
        for _ in range(1000):
            anchor = random_state(rng)
            p = anchor.p * (1.0 + rng.uniform(1e-3, 20.0))
            family = WaveFamily.ONE if rng.uniform() < 0.5 else WaveFamily.THREE
            other, _ = shock_state(family, anchor, p)
            ul, ur = (anchor, other) if family is WaveFamily.ONE else (other, anchor)
            du = to_conserved(ur) - to_conserved(ul)
            sigma = (physical_flux(ur)[0] - physical_flux(ul)[0]) / du[0]
            res = physical_flux(ur) - physical_flux(ul) - sigma * du
            scale = max(1.0, float(np.max(np.abs(physical_flux(ul)))))
            assert float(np.max(np.abs(res))) <= 1e-10 * scale

    def test_shock_speed_matches_mass_balance(self, rng):
        for _ in range(200):
            anchor = random_state(rng)
            p = anchor.p * (1.0 + rng.uniform(0.01, 10.0))
            family = WaveFamily.ONE if rng.uniform() < 0.5 else WaveFamily.THREE
            other, _ = shock_state(family, anchor, p)
            sigma = shock_speed(family, anchor, p)
            du = to_conserved(other) - to_conserved(anchor)
            sigma_mass = (physical_flux(other)[0] - physical_flux(anchor)[0]) / du[0]
            assert abs(sigma - sigma_mass) <= 1e-9 * max(1.0, abs(sigma))


class TestRarefaction:
    def test_identity_at_anchor_pressure(self):
        anchor = GasState(2.0, 0.3, 1.5)
        s = rarefaction_state_by_pressure(WaveFamily.ONE, anchor, anchor.p)
        assert (s.rho, s.u, s.p) == (anchor.rho, anchor.u, anchor.p)

    def test_family_one_value(self):
        # frozen from the isentrope relations (invariant-checked)
        s = rarefaction_state_by_pressure(WaveFamily.ONE, GasState(1, 0, 1), 0.5)
        assert abs(s.rho - 0.609506827102238) < 1e-13
        assert abs(s.u - 0.557746323873013) < 1e-13

    def test_family_three_mirror(self):
        s = rarefaction_state_by_pressure(WaveFamily.THREE, GasState(1, 0, 1), 0.5)
        assert abs(s.u + 0.557746323873013) < 1e-13
        assert abs(s.rho - 0.609506827102238) < 1e-13

    def test_rejects_shock_side(self):
        with pytest.raises(ValueError):
            rarefaction_state_by_pressure(WaveFamily.ONE, GasState(1, 0, 1), 2.0)

    def test_invariants_constant(self, rng):
        for _ in range(500):
            anchor = random_state(rng)
            p = anchor.p * rng.uniform(0.05, 1.0)
            family = WaveFamily.ONE if rng.uniform() < 0.5 else WaveFamily.THREE
            s = rarefaction_state_by_pressure(family, anchor, p)
            sign = 1.0 if family is WaveFamily.ONE else -1.0
            inv0 = anchor.u + sign * 2.0 * anchor.sound_speed / (GAMMA - 1.0)
            inv1 = s.u + sign * 2.0 * s.sound_speed / (GAMMA - 1.0)
            assert abs(inv1 - inv0) <= 1e-12 * max(1.0, abs(inv0))
            ent0 = anchor.p / anchor.rho**GAMMA
            ent1 = s.p / s.rho**GAMMA
            assert abs(ent1 - ent0) <= 1e-12 * ent0


class TestMachParametrization:
    def test_identity_at_anchor_mach(self):
        gd, gu, gp = rarefaction_ratios(0.7, 0.7, GAMMA)
        assert (gd, gu, gp) == (1.0, 1.0, 1.0)

    def test_velocity_ratio_value(self):
        _, gu, _ = rarefaction_ratios(0.5, 1.0, GAMMA)
        assert abs(gu - (1.0 / 0.5) * 2.2 / 2.4) < 1e-15

    def test_pressure_density_exponent_identity(self):
        gd, _, gp = rarefaction_ratios(0.5, 1.0, GAMMA)
        assert abs(gp - gd**GAMMA) <= 1e-12 * gp

    def test_rejects_decreasing_mach(self):
        with pytest.raises(ValueError):
            rarefaction_ratios(1.0, 0.5, GAMMA)

    def test_agrees_with_pressure_form(self, rng):
        for _ in range(300):
            anchor = random_state(rng, u_range=(0.05, 3.0))
            p = anchor.p * rng.uniform(0.1, 1.0)
            by_p = rarefaction_state_by_pressure(WaveFamily.ONE, anchor, p)
            by_m = rarefaction_state_by_mach(WaveFamily.ONE, anchor, by_p.mach)
            assert abs(by_m.rho - by_p.rho) <= 1e-10 * by_p.rho
            assert abs(by_m.u - by_p.u) <= 1e-10 * max(1.0, abs(by_p.u))
            assert abs(by_m.p - by_p.p) <= 1e-10 * by_p.p


class TestCombinedCurve:
    def test_continuous_at_seam(self, rng):
        for _ in range(100):
            anchor = random_state(rng)
            for family in (WaveFamily.ONE, WaveFamily.THREE):
                lo = wave_state(family, anchor, anchor.p * (1.0 - 1e-9))
                hi = wave_state(family, anchor, anchor.p * (1.0 + 1e-9))
                assert abs(lo.rho - hi.rho) <= 1e-7 * anchor.rho
                assert abs(lo.u - hi.u) <= 1e-7 * max(1.0, abs(anchor.u))

    def test_dispatch(self):
        anchor = GasState(1, 0, 1)
        assert abs(wave_state(WaveFamily.ONE, anchor, 2.0).u + 0.620173672946042) < 1e-12
        assert abs(wave_state(WaveFamily.ONE, anchor, 0.5).u - 0.557746323873013) < 1e-13


class TestMachInversion:
    def test_anchor_value(self):
        anchor = GasState(1, 1, 1)
        assert abs(mach_along_1wave(anchor, 1.0) - anchor.mach) < 1e-14

    def test_monotone_decreasing(self):
        anchor = GasState(1, 1, 1)
        ps = np.linspace(0.2, rest_pressure(anchor) * 0.999, 60)
        machs = [mach_along_1wave(anchor, p) for p in ps]
        assert all(m1 > m2 for m1, m2 in zip(machs, machs[1:]))

    def test_rest_pressure_stagnates(self, rng):
        for _ in range(100):
            anchor = random_state(rng, u_range=(0.05, 3.0))
            p1 = rest_pressure(anchor)
            s = wave_state(WaveFamily.ONE, anchor, p1)
            assert abs(s.u) <= 1e-11 * anchor.sound_speed

    def test_pressure_for_mach_round_trip(self, rng):
        for _ in range(200):
            anchor = random_state(rng, u_range=(0.05, 3.0))
            target = rng.uniform(0.02, 2.0)
            p = pressure_for_mach(anchor, target)
            assert abs(mach_along_1wave(anchor, p) - target) <= 1e-10 * max(1.0, target)
