import cmath
import math

import numpy as np
import pytest

from diffrace.coefficients import (
    diffraction_coefficient,
    diffraction_coefficient_angles,
    fractional_winding,
    gauge_phase_increment,
    holonomy_factor,
    orbit_coefficient,
)
from diffrace.errors import GeometricAngle, PointOnSegment
from diffrace.geometry import validate_config, wrap_angle
from diffrace.orbits import orbit_geometry, reverse_orbit
from diffrace.oracles import pv_winding_numeric
from diffrace.sampling import random_config, random_orbit


class TestDiffractionCoefficient:
    def test_half_flux_backscatter(self):
        assert diffraction_coefficient(0.5, 0.0) == pytest.approx(1.0, abs=1e-15)

    def test_half_flux_right_angle(self):
        got = diffraction_coefficient(0.5, math.pi / 2)
        assert got == pytest.approx(1.0 - 1.0j, abs=1e-14)

    def test_straight_angle_rejected(self):
        with pytest.raises(GeometricAngle):
            diffraction_coefficient(0.5, math.pi)

    def test_magnitude(self, rng):
        for _ in range(500):
            alpha = rng.uniform(0.05, 0.95)
            beta = rng.uniform(-math.pi + 1e-3, math.pi - 1e-3)
            got = abs(diffraction_coefficient(alpha, beta))
            assert got == pytest.approx(
                math.sin(math.pi * alpha) / math.cos(beta / 2), rel=1e-13
            )

    def test_two_angle_form_matches(self, rng):
        for _ in range(2000):
            t1 = rng.uniform(-math.pi, math.pi)
            beta = rng.uniform(-math.pi + 1e-3, math.pi - 1e-3)
            t2 = wrap_angle(t1 + beta)
            den = math.cos(t1) + math.cos(t2)
            if abs(den) < 1e-3:
                continue
            a = diffraction_coefficient_angles(0.41, t1, t2)
            b = diffraction_coefficient(0.41, wrap_angle(t2 - t1))
            assert a == pytest.approx(b, rel=1e-10)

    def test_angle_pair_identity_cross_multiplied(self, rng):
        """(e^{-i out}+e^{i in}) cos(beta/2) == e^{-i beta/2} (cos out + cos in)
        with beta = out - in, over the full angle space (no stability guard)."""
        n = 10_000
        t_in = rng.uniform(-math.pi, math.pi, size=n)
        beta = rng.uniform(-math.pi + 1e-3, math.pi - 1e-3, size=n)
        t_out = t_in + beta
        lhs = (np.exp(-1j * t_out) + np.exp(1j * t_in)) * np.cos(beta / 2)
        rhs = np.exp(-1j * beta / 2) * (np.cos(t_out) + np.cos(t_in))
        assert np.max(np.abs(lhs - rhs)) < 1e-12


class TestGaugePhase:
    def test_quarter_turn(self):
        assert gauge_phase_increment((1, 0), (0, 1), (0, 0)) == pytest.approx(
            math.pi / 2, abs=1e-15
        )

    def test_identity_path(self):
        assert gauge_phase_increment((1, 0), (1, 0), (0, 0)) == 0.0

    def test_solenoid_on_path_rejected(self):
        # (1,1) is the midpoint of (2,0)->(0,2); the increment is undefined there
        with pytest.raises(PointOnSegment):
            gauge_phase_increment((2, 0), (0, 2), (1, 1))

    def test_sweep_behind_a_nearby_point(self):
        got = gauge_phase_increment((2, 0), (0, 2), (1.001, 1.0))
        expected = wrap_angle(
            math.atan2(2 - 1.0, 0 - 1.001) - math.atan2(0 - 1.0, 2 - 1.001)
        )
        assert got == pytest.approx(expected, abs=1e-15)
        assert abs(got) > math.pi - 2e-3  # nearly a half turn


class TestFractionalWinding:
    def test_digon_vertices_wind_zero(self, two_solenoid):
        o = orbit_geometry(two_solenoid, (0, 1))
        assert fractional_winding(two_solenoid, o, 0).value == 0.0
        assert fractional_winding(two_solenoid, o, 1).value == 0.0

    def test_triangle_vertex_is_sixth_turn(self, triangle):
        o = orbit_geometry(triangle, (0, 1, 2))
        for k in range(3):
            w = fractional_winding(triangle, o, k).value
            assert w == pytest.approx(1.0 / 6.0, abs=1e-12)
            # single-diffraction vertex on a convex simple orbit: -beta/2pi
            beta = o.angles[o.vertices.index(k)]
            assert w == pytest.approx(-beta / math.tau, abs=1e-10)

    def test_enclosed_solenoid_winds_once(self):
        cfg = validate_config(
            [(0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3) / 2), (0.5, 0.3)],
            [0.5, 0.5, 0.5, 0.25],
        )
        o = orbit_geometry(cfg, (0, 1, 2))
        assert fractional_winding(cfg, o, 3).value == pytest.approx(1.0, abs=1e-12)

    def test_off_orbit_windings_are_integers(self, rng):
        for _ in range(100):
            cfg = random_config(rng, n=4)
            o = random_orbit(rng, cfg, max_len=4)
            for k in range(cfg.n):
                if k in o.vertices:
                    continue
                w = fractional_winding(cfg, o, k).value
                assert abs(w - round(w)) < 1e-9

    def test_matches_pv_quadrature(self, rng):
        for _ in range(30):
            cfg = random_config(rng)
            o = random_orbit(rng, cfg)
            k = int(rng.integers(0, cfg.n))
            fast = fractional_winding(cfg, o, k).value
            slow = pv_winding_numeric(cfg, o, k)
            assert abs(fast - slow.value) < 1e-8


class TestHolonomy:
    def test_digon_trivial(self, two_solenoid):
        o = orbit_geometry(two_solenoid, (0, 1))
        assert holonomy_factor(two_solenoid, o) == pytest.approx(1.0, abs=1e-14)

    def test_triangle_all_half_fluxes(self, triangle):
        o = orbit_geometry(triangle, (0, 1, 2))
        # three factors exp(-2pi i * (1/2) * (1/6))
        assert holonomy_factor(triangle, o) == pytest.approx(-1j, abs=1e-13)

    def test_enclosed_flux_contributes_full_phase(self):
        alpha = 0.3
        cfg = validate_config(
            [(0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3) / 2), (0.5, 0.3)],
            [0.5, 0.5, 0.5, alpha],
        )
        tri_only = validate_config(
            [(0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3) / 2)], [0.5, 0.5, 0.5]
        )
        o4 = orbit_geometry(cfg, (0, 1, 2))
        o3 = orbit_geometry(tri_only, (0, 1, 2))
        ratio = holonomy_factor(cfg, o4) / holonomy_factor(tri_only, o3)
        assert ratio == pytest.approx(cmath.exp(-2j * math.pi * alpha), abs=1e-13)

    def test_unit_modulus(self, rng):
        for _ in range(50):
            cfg = random_config(rng)
            o = random_orbit(rng, cfg)
            assert abs(holonomy_factor(cfg, o)) == pytest.approx(1.0, abs=1e-12)


class TestOrbitCoefficient:
    def test_digon_equals_one(self, two_solenoid):
        o = orbit_geometry(two_solenoid, (0, 1))
        assert orbit_coefficient(two_solenoid, o).value == pytest.approx(
            1.0, abs=1e-14
        )

    def test_triangle_value(self, triangle):
        o = orbit_geometry(triangle, (0, 1, 2))
        got = orbit_coefficient(triangle, o).value
        assert got == pytest.approx(8.0 / (3.0 * math.sqrt(3.0)), abs=1e-13)

    def test_factor_breakdown_consistent(self, rng):
        for _ in range(100):
            cfg = random_config(rng)
            o = random_orbit(rng, cfg)
            c = orbit_coefficient(cfg, o)
            prod = math.prod(c.factors, start=1 + 0j) * c.holonomy
            assert c.value == pytest.approx(prod, rel=1e-12)
            assert abs(c.holonomy) == pytest.approx(1.0, abs=1e-12)

    def test_reversal_conjugates(self, rng):
        for _ in range(100):
            cfg = random_config(rng)
            o = random_orbit(rng, cfg)
            a = orbit_coefficient(cfg, o).value
            b = orbit_coefficient(cfg, reverse_orbit(o)).value
            assert b == pytest.approx(a.conjugate(), rel=1e-12)


class TestPieceDecomposition:
    def test_gauge_sums_equal_winding_phase(self, rng):
        """Cutting the orbit between diffractions and summing the per-piece
        angular increments over the other solenoids reproduces the total
        flux-weighted winding phase, for any cut positions."""
        for _ in range(50):
            cfg = random_config(rng)
            orbit = random_orbit(rng, cfg)
            pts = cfg.solenoids
            m = orbit.m
            verts = [pts[v] for v in orbit.vertices]
            fracs = rng.uniform(0.2, 0.8, size=m)
            cuts = []  # cuts[l] lies between vertex l-1 and vertex l
            for l in range(m):
                a = verts[(l - 1) % m]
                b = verts[l]
                f = fracs[l]
                cuts.append((a[0] + f * (b[0] - a[0]), a[1] + f * (b[1] - a[1])))
            total = 0.0
            for l in range(m):
                v = verts[l]
                p_in, p_out = cuts[l], cuts[(l + 1) % m]
                for j in range(cfg.n):
                    if j == orbit.vertices[l]:
                        continue
                    total += cfg.fluxes[j] * (
                        gauge_phase_increment(p_in, v, pts[j])
                        + gauge_phase_increment(v, p_out, pts[j])
                    )
            expected = math.tau * math.fsum(
                cfg.fluxes[k] * fractional_winding(cfg, orbit, k).value
                for k in range(cfg.n)
            )
            assert total == pytest.approx(expected, abs=1e-10)
