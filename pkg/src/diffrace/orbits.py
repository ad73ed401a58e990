"""Enumeration and canonicalization of closed polygonal orbits.

A closed orbit is a cyclic sequence of solenoid indices with straight
segments between consecutive vertices.  Rotations of the index word
describe the same trajectory, so each orbit is stored as the
lexicographically smallest rotation.  A trajectory and its reversal are
distinct orbits unless the reversed word happens to be a rotation of the
original; ``merge_reversals`` collapses such pairs on request.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .errors import GeometricAngle, InvalidSequence
from .geometry import SolenoidConfig, diffraction_angle, distance


@dataclass(frozen=True)
class ClosedOrbit:
    """A canonical closed orbit with its per-segment geometry.

    ``vertices`` is the lexicographically smallest rotation of the cyclic
    index word.  ``segment_lengths[i]`` is the distance from vertex i to
    vertex i+1 (cyclically); ``angles[i]`` is the turning angle at vertex i.
    """

    vertices: tuple[int, ...]
    segment_lengths: tuple[float, ...]
    total_length: float
    primitive_period: int
    primitive_length: float
    repetition: int
    angles: tuple[float, ...]

    @property
    def m(self) -> int:
        """Number of corners, counted with multiplicity."""
        return len(self.vertices)


@dataclass
class EnumerationDiagnostics:
    """Tally of candidates skipped instead of failing the whole search."""

    geometric_skipped: int = 0


def canonical_rotation(seq: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically smallest rotation of a cyclic word."""
    word = tuple(seq)
    m = len(word)
    return min(word[i:] + word[:i] for i in range(m))


def _primitive_period(word: tuple[int, ...]) -> int:
    m = len(word)
    for p in range(1, m + 1):
        if m % p:
            continue
        if all(word[i] == word[(i + p) % m] for i in range(m)):
            return p
    return m  # unreachable; p = m always matches


def orbit_geometry(config: SolenoidConfig, sequence: Sequence[int]) -> ClosedOrbit:
    """Build the full geometric record of a cyclic vertex sequence.

    Raises :class:`InvalidSequence` for consecutive repeats (cyclically)
    and propagates :class:`GeometricAngle` when a vertex is passed
    straight through.
    """
    word = tuple(int(i) for i in sequence)
    m = len(word)
    if m < 2:
        raise InvalidSequence(f"need at least 2 vertices, got {m}")
    for i in word:
        if not (0 <= i < config.n):
            raise InvalidSequence(f"vertex index {i} out of range for {config.n} solenoids")
    for i in range(m):
        if word[i] == word[(i + 1) % m]:
            raise InvalidSequence(f"consecutive repeated index {word[i]} at position {i}")

    word = canonical_rotation(word)
    pts = config.solenoids
    lengths = tuple(distance(pts[word[i]], pts[word[(i + 1) % m]]) for i in range(m))
    angles = tuple(
        diffraction_angle(
            pts[word[(i - 1) % m]], pts[word[i]], pts[word[(i + 1) % m]], config.tol_angle
        )
        for i in range(m)
    )
    total = math.fsum(lengths)
    p = _primitive_period(word)
    repetition = m // p
    return ClosedOrbit(
        vertices=word,
        segment_lengths=lengths,
        total_length=total,
        primitive_period=p,
        primitive_length=total / repetition,
        repetition=repetition,
        angles=angles,
    )


def reverse_orbit(orbit: ClosedOrbit) -> ClosedOrbit:
    """Canonical orbit of the reversed traversal.

    Purely combinatorial: lengths permute, every angle flips sign, total
    and primitive lengths are unchanged.
    """
    m = orbit.m
    rev_word = tuple(orbit.vertices[(-i) % m] for i in range(m))
    rev_lengths = tuple(orbit.segment_lengths[(-i - 1) % m] for i in range(m))
    rev_angles = tuple(-orbit.angles[(-i) % m] for i in range(m))
    # rotate all aligned fields to the canonical rotation
    shift = min(range(m), key=lambda r: rev_word[r:] + rev_word[:r])
    word = rev_word[shift:] + rev_word[:shift]
    lengths = rev_lengths[shift:] + rev_lengths[:shift]
    angles = rev_angles[shift:] + rev_angles[:shift]
    return ClosedOrbit(
        vertices=word,
        segment_lengths=lengths,
        total_length=orbit.total_length,
        primitive_period=orbit.primitive_period,
        primitive_length=orbit.primitive_length,
        repetition=orbit.repetition,
        angles=angles,
    )


def _is_canonical(word: list[int]) -> bool:
    t = tuple(word)
    m = len(t)
    return all(t <= t[i:] + t[:i] for i in range(1, m))


def _search_first_edge(
    config: SolenoidConfig, l_max: float, a: int, b: int
) -> tuple[list[ClosedOrbit], int]:
    """Depth-first extension of words starting with edge (a, b), a = word minimum."""
    pts = config.solenoids
    n = config.n
    dist_ab = [[distance(pts[i], pts[j]) for j in range(n)] for i in range(n)]
    found: list[ClosedOrbit] = []
    skipped = 0

    def extend(word: list[int], open_len: float) -> None:
        nonlocal skipped
        last = word[-1]
        if last != a and open_len + dist_ab[last][a] <= l_max and _is_canonical(word):
            try:
                found.append(orbit_geometry(config, word))
            except GeometricAngle:
                skipped += 1
        for c in range(a, n):
            if c == last:
                continue
            nl = open_len + dist_ab[last][c]
            if nl + dist_ab[c][a] <= l_max:
                word.append(c)
                extend(word, nl)
                word.pop()

    # any closed word through edge (a, b) is at least twice that edge long
    if 2.0 * dist_ab[a][b] <= l_max:
        extend([a, b], dist_ab[a][b])
    return found, skipped


def enumerate_orbits(
    config: SolenoidConfig,
    l_max: float,
    *,
    merge_reversals: bool = False,
    threads: int = 1,
    diagnostics: EnumerationDiagnostics | None = None,
) -> list[ClosedOrbit]:
    """All closed orbits with total length <= l_max, one per rotation class.

    Output is sorted by (length, canonical word) and is bit-identical for
    any thread count: the search is partitioned by first edge and merged
    in a fixed order.  Candidates with a straight vertex passage are
    skipped and tallied in ``diagnostics`` rather than aborting the run.
    """
    if l_max <= 0:
        raise ValueError("l_max must be positive")
    edges = [(a, b) for a in range(config.n) for b in range(a + 1, config.n)]
    if threads > 1 and len(edges) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda e: _search_first_edge(config, l_max, *e), edges))
    else:
        parts = [_search_first_edge(config, l_max, a, b) for a, b in edges]

    orbits: list[ClosedOrbit] = []
    skipped = 0
    for part, sk in parts:
        orbits.extend(part)
        skipped += sk
    if diagnostics is not None:
        diagnostics.geometric_skipped += skipped

    if merge_reversals:
        orbits = [o for o in orbits if o.vertices <= reverse_orbit(o).vertices]
    orbits.sort(key=lambda o: (o.total_length, o.vertices))
    return orbits
