import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from diffrace.errors import (
    CollinearTriple,
    ConfigError,
    DuplicateSolenoid,
    FluxOutOfRange,
    GeometricAngle,
    PointOnSegment,
)
from diffrace.geometry import (
    diffraction_angle,
    free_reference_params,
    point_segment_distance,
    subtended_angle,
    validate_config,
    wrap_angle,
)

finite_angles = st.floats(-50.0, 50.0, allow_nan=False, allow_infinity=False)


class TestWrapAngle:
    def test_range(self):
        for theta in np.linspace(-20, 20, 2001):
            w = wrap_angle(float(theta))
            assert -math.pi < w <= math.pi

    @given(finite_angles)
    def test_period(self, theta):
        assert wrap_angle(theta + math.tau) == pytest.approx(
            wrap_angle(theta), abs=1e-9
        )

    @given(finite_angles)
    def test_odd_inside_open_interval(self, theta):
        w = wrap_angle(theta)
        if abs(w) < math.pi:  # the +pi endpoint cannot be odd
            assert wrap_angle(-theta) == -w


class TestDiffractionAngle:
    def test_backscatter_is_zero(self):
        assert diffraction_angle((0, 0), (1, 0), (0, 0)) == 0.0

    def test_straight_passage_rejected(self):
        with pytest.raises(GeometricAngle):
            diffraction_angle((0, 0), (1, 0), (2, 0))

    def test_ccw_equilateral_triangle(self):
        a, b, c = (0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3) / 2)
        for prev, v, nxt in [(a, b, c), (b, c, a), (c, a, b)]:
            assert diffraction_angle(prev, v, nxt) == pytest.approx(
                -math.pi / 3, abs=1e-12
            )

    def test_degenerate_leg_rejected(self):
        with pytest.raises(ValueError):
            diffraction_angle((1.0, 0.0), (1.0, 0.0), (0.0, 0.0))

    def test_reversal_antisymmetry_exact(self, rng):
        for _ in range(300):
            prev, v, nxt = rng.uniform(-3, 3, size=(3, 2))
            try:
                beta = diffraction_angle(tuple(prev), tuple(v), tuple(nxt))
            except (GeometricAngle, ValueError):
                continue
            assert diffraction_angle(tuple(nxt), tuple(v), tuple(prev)) == -beta


class TestSubtendedAngle:
    def test_quarter_turn(self):
        assert subtended_angle((1, 0), (0, 1), (0, 0)) == pytest.approx(
            math.pi / 2, abs=1e-15
        )

    def test_swap_antisymmetry(self):
        assert subtended_angle((0, 1), (1, 0), (0, 0)) == pytest.approx(
            -math.pi / 2, abs=1e-15
        )

    def test_against_dense_sampling(self, rng):
        """Endpoint atan2 difference equals the densely sampled arg increment."""
        cases = [((1.0, 0.0), (-1.0, 2.0), (0.0, 0.0)),
                 ((1.0, 0.0), (-1.0, 1.0), (0.0, 0.0))]
        for _ in range(20):
            a, b, p = rng.uniform(-2, 2, size=(3, 2))
            if point_segment_distance(tuple(p), tuple(a), tuple(b)) < 0.05:
                continue
            cases.append((tuple(a), tuple(b), tuple(p)))
        for a, b, p in cases:
            ts = np.linspace(0.0, 1.0, 20001)
            zx = a[0] + ts * (b[0] - a[0]) - p[0]
            zy = a[1] + ts * (b[1] - a[1]) - p[1]
            args = np.unwrap(np.arctan2(zy, zx))
            dense = args[-1] - args[0]
            assert subtended_angle(a, b, p) == pytest.approx(dense, abs=1e-9)

    def test_oblique_value(self):
        # quarter-plus turn; frozen from the atan2 oracle
        assert subtended_angle((1, 0), (-1, 2), (0, 0)) == pytest.approx(
            math.atan2(2.0, -1.0), abs=1e-15
        )
        assert subtended_angle((1, 0), (-1, 1), (0, 0)) == pytest.approx(
            3 * math.pi / 4, abs=1e-15
        )

    def test_point_on_segment_rejected(self):
        with pytest.raises(PointOnSegment):
            subtended_angle((0, 0), (2, 0), (1, 0))

    def test_additive_along_subdivision(self, rng):
        for _ in range(200):
            a, b, p = rng.uniform(-2, 2, size=(3, 2))
            if point_segment_distance(tuple(p), tuple(a), tuple(b)) < 0.05:
                continue
            lam = rng.uniform(0.05, 0.95)
            mpt = tuple(a + lam * (b - a))
            whole = subtended_angle(tuple(a), tuple(b), tuple(p))
            parts = subtended_angle(tuple(a), mpt, tuple(p)) + subtended_angle(
                mpt, tuple(b), tuple(p)
            )
            assert parts == pytest.approx(whole, abs=1e-12)


class TestValidateConfig:
    def test_two_points_valid(self):
        cfg = validate_config([(0, 0), (1, 0)], [0.5, 0.5])
        assert cfg.n == 2
        assert cfg.min_distance() == 1.0

    def test_exact_collinear_rejected(self):
        with pytest.raises(ConfigError) as exc:
            validate_config([(0, 0), (1, 1), (2, 2)], [0.3, 0.3, 0.3])
        kinds = [v for v in exc.value.violations if isinstance(v, CollinearTriple)]
        assert kinds and kinds[0].indices == (0, 1, 2)

    def test_flux_out_of_range(self):
        with pytest.raises(ConfigError) as exc:
            validate_config([(0, 0)], [1.0])
        assert any(isinstance(v, FluxOutOfRange) for v in exc.value.violations)

    def test_all_violations_reported(self):
        with pytest.raises(ConfigError) as exc:
            validate_config([(0, 0), (0, 0), (1, 1)], [1.5, 0.5, -0.1])
        vs = exc.value.violations
        assert any(isinstance(v, FluxOutOfRange) and v.index == 0 for v in vs)
        assert any(isinstance(v, FluxOutOfRange) and v.index == 2 for v in vs)
        assert any(isinstance(v, DuplicateSolenoid) for v in vs)

    def test_acceptance_invariant_under_rigid_motion(self, rng):
        pts = [(0.0, 0.0), (1.3, 0.2), (0.4, 1.1), (-0.8, 0.6)]
        fluxes = [0.2, 0.4, 0.6, 0.8]
        validate_config(pts, fluxes)
        for _ in range(25):
            phi = rng.uniform(0, math.tau)
            dx, dy = rng.uniform(-5, 5, size=2)
            c, s = math.cos(phi), math.sin(phi)
            moved = [(c * x - s * y + dx, s * x + c * y + dy) for x, y in pts]
            validate_config(moved, fluxes)  # must not raise


class TestFreeReferenceParams:
    @pytest.mark.parametrize(
        "pts,fluxes,total,center",
        [
            ([(0, 0), (2, 0)], [0.5, 0.5], 1.0, (1.0, 0.0)),
            ([(0, 0)], [0.3], 0.3, (0.0, 0.0)),
            ([(0, 0), (3, 0)], [0.25, 0.75], 1.0, (2.25, 0.0)),
        ],
    )
    def test_examples(self, pts, fluxes, total, center):
        cfg = validate_config(pts, fluxes)
        got_total, got_center = free_reference_params(cfg)
        assert got_total == pytest.approx(total, abs=1e-15)
        assert got_center[0] == pytest.approx(center[0], abs=1e-15)
        assert got_center[1] == pytest.approx(center[1], abs=1e-15)
