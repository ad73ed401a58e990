import math

import pytest

from diffrace.errors import InvalidSequence
from diffrace.geometry import validate_config
from diffrace.orbits import (
    EnumerationDiagnostics,
    canonical_rotation,
    enumerate_orbits,
    orbit_geometry,
    reverse_orbit,
)
from diffrace.sampling import random_config, random_orbit


class TestOrbitGeometry:
    def test_digon(self, two_solenoid):
        o = orbit_geometry(two_solenoid, (0, 1))
        assert o.vertices == (0, 1)
        assert o.m == 2
        assert o.segment_lengths == (1.0, 1.0)
        assert o.total_length == 2.0
        assert o.primitive_period == 2
        assert o.primitive_length == 2.0
        assert o.repetition == 1
        assert o.angles == (0.0, 0.0)

    def test_doubled_digon(self, two_solenoid):
        o = orbit_geometry(two_solenoid, (0, 1, 0, 1))
        assert o.m == 4
        assert o.total_length == 4.0
        assert o.primitive_period == 2
        assert o.primitive_length == 2.0
        assert o.repetition == 2

    def test_consecutive_repeat_rejected(self, two_solenoid):
        with pytest.raises(InvalidSequence):
            orbit_geometry(two_solenoid, (0, 0))
        with pytest.raises(InvalidSequence):
            orbit_geometry(two_solenoid, (0, 1, 1))

    def test_wraparound_repeat_rejected(self, triangle):
        with pytest.raises(InvalidSequence):
            orbit_geometry(triangle, (0, 1, 0))

    def test_rotations_canonicalized(self, triangle):
        assert orbit_geometry(triangle, (1, 2, 0)).vertices == (0, 1, 2)
        assert orbit_geometry(triangle, (2, 0, 1)).vertices == (0, 1, 2)

    def test_primitive_times_repetition(self, rng):
        for _ in range(50):
            cfg = random_config(rng)
            o = random_orbit(rng, cfg)
            rep = int(rng.integers(1, 4))
            iterated = orbit_geometry(cfg, o.vertices * rep)
            assert iterated.repetition == rep * o.repetition
            assert iterated.primitive_length * iterated.repetition == pytest.approx(
                iterated.total_length, rel=1e-12
            )


class TestEnumerate:
    def test_two_solenoid_fixture(self, two_solenoid):
        orbits = enumerate_orbits(two_solenoid, 5.0)
        assert [(o.vertices, o.total_length) for o in orbits] == [
            ((0, 1), 2.0),
            ((0, 1, 0, 1), 4.0),
        ]

    def test_triangle_fixture(self, triangle):
        orbits = enumerate_orbits(triangle, 3.0)
        assert [o.vertices for o in orbits] == [
            (0, 1),
            (0, 2),
            (1, 2),
            (0, 1, 2),
            (0, 2, 1),
        ]

    def test_below_shortest_orbit_empty(self, rng):
        for _ in range(10):
            cfg = random_config(rng)
            l_max = 2.0 * cfg.min_distance() * 0.999
            assert enumerate_orbits(cfg, l_max) == []

    def test_prefix_monotonicity(self, triangle):
        small = enumerate_orbits(triangle, 4.0)
        large = enumerate_orbits(triangle, 6.5)
        assert [o.vertices for o in large[: len(small)]] == [o.vertices for o in small]

    def test_thread_count_does_not_change_output(self, triangle):
        seq = enumerate_orbits(triangle, 6.5, threads=1)
        par = enumerate_orbits(triangle, 6.5, threads=4)
        assert [o.vertices for o in seq] == [o.vertices for o in par]
        assert [o.total_length for o in seq] == [o.total_length for o in par]

    def test_sorted_by_length_then_word(self, rng):
        for _ in range(10):
            cfg = random_config(rng)
            orbits = enumerate_orbits(cfg, 3.0 * cfg.min_distance())
            keys = [(o.total_length, o.vertices) for o in orbits]
            assert keys == sorted(keys)

    def test_merge_reversals_collapses_pairs(self, triangle):
        full = enumerate_orbits(triangle, 3.0)
        merged = enumerate_orbits(triangle, 3.0, merge_reversals=True)
        assert [o.vertices for o in merged] == [(0, 1), (0, 2), (1, 2), (0, 1, 2)]
        assert len(full) == len(merged) + 1

    def test_geometric_skips_are_tallied(self):
        # nearly collinear scene: passes the loose area tolerance, but the
        # middle vertex bends by ~2e-10 rad, inside the angle tolerance
        cfg = validate_config(
            [(0.0, 0.0), (1.0, 1e-10), (2.0, 0.0)],
            [0.5, 0.5, 0.5],
            tol_collinear=1e-12,
            tol_angle=1e-6,
        )
        diag = EnumerationDiagnostics()
        orbits = enumerate_orbits(cfg, 6.5, diagnostics=diag)
        assert diag.geometric_skipped > 0
        assert all(abs(b) < math.pi - 1e-6 for o in orbits for b in o.angles)


class TestReverse:
    def test_digon_self_reversed(self, two_solenoid):
        o = orbit_geometry(two_solenoid, (0, 1))
        assert reverse_orbit(o) == o

    def test_triangle_reversal(self, triangle):
        ccw = orbit_geometry(triangle, (0, 1, 2))
        cw = reverse_orbit(ccw)
        assert cw.vertices == (0, 2, 1)
        assert cw.total_length == ccw.total_length
        assert all(
            b == pytest.approx(math.pi / 3, abs=1e-12) for b in cw.angles
        )

    def test_reversal_matches_geometry_rebuild(self, rng):
        for _ in range(100):
            cfg = random_config(rng)
            o = random_orbit(rng, cfg)
            combinatorial = reverse_orbit(o)
            rebuilt = orbit_geometry(cfg, tuple(reversed(o.vertices)))
            assert combinatorial.vertices == rebuilt.vertices
            assert combinatorial.total_length == pytest.approx(
                rebuilt.total_length, rel=1e-15
            )
            for a, b in zip(combinatorial.angles, rebuilt.angles):
                assert a == pytest.approx(b, abs=1e-12)

    def test_involution(self, rng):
        for _ in range(100):
            cfg = random_config(rng)
            o = random_orbit(rng, cfg)
            assert reverse_orbit(reverse_orbit(o)) == o

    def test_length_preserved_on_revisiting_orbit(self, triangle):
        o = orbit_geometry(triangle, (0, 1, 0, 2))
        r = reverse_orbit(o)
        assert r.vertices == canonical_rotation((2, 0, 1, 0))
        assert r.total_length == pytest.approx(o.total_length, rel=1e-15)
