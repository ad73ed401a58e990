"""Independent brute-force and quadrature oracles.

Every analytic shortcut in the fast path has a slow twin here, implemented
with a deliberately different algorithm: contour quadrature with explicit
excision instead of subtended-angle sums, exhaustive word search instead of
anchored depth-first extension, Simpson panel doubling instead of
oscillation-aware Gauss panels, finite differences instead of the closed
Hessian.  Tests compare the two routes; nothing in the library itself calls
into this module.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateHessian,
    ExcisionTooLarge,
    GeometricAngle,
    InstanceTooLarge,
    InvalidSequence,
    NoConvergence,
    PointOnSegment,
)
from .geometry import SolenoidConfig, distance, point_segment_distance
from .orbits import ClosedOrbit, canonical_rotation, orbit_geometry
from .tracesynth import SingularityEntry, SmoothingWindow

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(12)


@dataclass(frozen=True)
class QuadratureSettings:
    excision_eps: float = 1e-4  # arc length removed around an on-orbit solenoid
    panels: int = 64
    fd_step: float = 1e-4

    def __post_init__(self):
        if self.excision_eps <= 0.0:
            raise ValueError("excision_eps must be positive")
        if self.panels < 16:
            raise ValueError("need at least 16 panels")


@dataclass(frozen=True)
class PVWindingEstimate:
    value: float  # Richardson-extrapolated
    error: float  # difference of the last two extrapolants
    raw: tuple[float, float, float]  # values at eps, eps/2, eps/4


def _segment_integral(P: complex, Q: complex, zk: complex, t0: float, t1: float,
                      panels: int, graded_from_start: bool, graded_from_end: bool) -> complex:
    """Contour integral of dz/(z - zk) over the [t0, t1] portion of P->Q.

    Geometric panel grading toward an excised endpoint keeps the 1/z ramp
    resolved; elsewhere uniform panels suffice.
    """
    if graded_from_start and t0 > 0.0:
        edges = t0 * (t1 / t0) ** (np.arange(panels + 1) / panels)
    elif graded_from_end and t1 < 1.0:
        rev = (1.0 - t1) * ((1.0 - t0) / (1.0 - t1)) ** (np.arange(panels + 1) / panels)
        edges = (1.0 - rev)[::-1]
    else:
        edges = np.linspace(t0, t1, panels + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    t = mid[:, None] + half[:, None] * _GL_NODES[None, :]
    w = half[:, None] * _GL_WEIGHTS[None, :]
    z = P + t * (Q - P)
    return complex(np.sum(w * (Q - P) / (z - zk)))


def _pv_contour(config: SolenoidConfig, orbit: ClosedOrbit, k: int, eps: float,
                panels: int) -> float:
    pts = config.solenoids
    zk = complex(*pts[k])
    m = orbit.m
    total = 0.0 + 0.0j
    for i in range(m):
        vi, vj = orbit.vertices[i], orbit.vertices[(i + 1) % m]
        P = complex(*pts[vi])
        Q = complex(*pts[vj])
        length = abs(Q - P)
        start_inc = vi == k
        end_inc = vj == k
        if not (start_inc or end_inc):
            if point_segment_distance(pts[k], pts[vi], pts[vj]) <= config.tol_collinear:
                raise PointOnSegment(
                    f"solenoid {k} lies inside segment {vi}->{vj}"
                )
        if eps >= 0.5 * length and (start_inc or end_inc):
            raise ExcisionTooLarge(
                f"excision {eps!r} >= half of segment length {length!r}"
            )
        t0 = eps / length if start_inc else 0.0
        t1 = 1.0 - eps / length if end_inc else 1.0
        total += _segment_integral(P, Q, zk, t0, t1, panels, start_inc, end_inc)
    return (total / (2j * math.pi)).real


def pv_winding_numeric(
    config: SolenoidConfig,
    orbit: ClosedOrbit,
    k: int,
    settings: QuadratureSettings = QuadratureSettings(),
) -> PVWindingEstimate:
    """Winding of the orbit around solenoid k by principal-value quadrature.

    Symmetric arc-length excision around the solenoid when it sits on the
    orbit; Richardson extrapolation over excision radii eps, eps/2, eps/4.
    """
    e = settings.excision_eps
    w1 = _pv_contour(config, orbit, k, e, settings.panels)
    w2 = _pv_contour(config, orbit, k, 0.5 * e, settings.panels)
    w3 = _pv_contour(config, orbit, k, 0.25 * e, settings.panels)
    r1 = 2.0 * w2 - w1
    r2 = 2.0 * w3 - w2
    return PVWindingEstimate(value=r2, error=abs(r2 - r1), raw=(w1, w2, w3))


def brute_force_orbits(
    config: SolenoidConfig, l_max: float, *, max_words: int = 2_000_000
) -> list[tuple[int, ...]]:
    """Exhaustive search over all index words, deduplicated by rotation.

    Independent of the anchored search: every word up to the length bound
    is generated and filtered.  Only meant for small instances.
    """
    n = config.n
    if n > 5:
        raise InstanceTooLarge(f"{n} solenoids; brute force is capped at 5")
    if n < 2:
        return []
    max_len = int(math.floor(l_max / config.min_distance()))
    total_words = sum(n**m for m in range(2, max_len + 1))
    if total_words > max_words:
        raise InstanceTooLarge(
            f"{total_words} candidate words exceed the cap of {max_words}"
        )
    pts = config.solenoids
    seen: set[tuple[int, ...]] = set()
    for m in range(2, max_len + 1):
        for word in itertools.product(range(n), repeat=m):
            if any(word[i] == word[(i + 1) % m] for i in range(m)):
                continue
            length = math.fsum(
                distance(pts[word[i]], pts[word[(i + 1) % m]]) for i in range(m)
            )
            if length > l_max:
                continue
            canon = canonical_rotation(word)
            if canon in seen:
                continue
            try:
                orbit_geometry(config, canon)
            except (GeometricAngle, InvalidSequence):
                continue
            seen.add(canon)
    ordered = [(orbit_geometry(config, w).total_length, w) for w in seen]
    ordered.sort()
    return [w for _, w in ordered]


@dataclass(frozen=True)
class HessianCheck:
    signature: int
    determinant: float
    expected_determinant: float
    matrix: np.ndarray


def stationary_phase_hessian(
    r_z: float,
    rbar_z: float,
    l: float,
    lam: float,
    settings: QuadratureSettings = QuadratureSettings(),
    *,
    det_rtol: float = 1e-5,
) -> HessianCheck:
    """Finite-difference Hessian of the two-leg propagation phase.

    The phase is lam*(t1 - r - c1) + mu*(t2 - rbar(r, theta) - c2) in the
    variables (mu, r, theta), with rbar the law-of-cosines distance to the
    second vertex at separation l; the critical point sits at theta = 0,
    mu = lam.  Requires r_z + rbar_z = l (the stationary point lies between
    the two vertices).  Asserts the determinant against lam*l*r_z/rbar_z.
    """
    if min(r_z, rbar_z, l, lam) <= 0.0:
        raise ValueError("all inputs must be positive")
    if abs(r_z + rbar_z - l) > 1e-9 * l:
        raise ValueError("need r_z + rbar_z = l for an interior stationary point")

    def rbar(r: float, theta: float) -> float:
        return math.sqrt(r * r + l * l - 2.0 * r * l * math.cos(theta))

    t1 = r_z + 1.0
    t2 = rbar_z + 1.0

    def phase(mu: float, r: float, theta: float) -> float:
        return lam * (t1 - r - 1.0) + mu * (t2 - rbar(r, theta) - 1.0)

    x0 = np.array([lam, r_z, 0.0])
    h = np.array([settings.fd_step * lam, settings.fd_step * min(r_z, rbar_z),
                  settings.fd_step])
    H = np.empty((3, 3))
    for a in range(3):
        for b in range(3):
            if a == b:
                xp = x0.copy(); xp[a] += h[a]
                xm = x0.copy(); xm[a] -= h[a]
                H[a, a] = (phase(*xp) - 2.0 * phase(*x0) + phase(*xm)) / h[a] ** 2
            else:
                xpp = x0.copy(); xpp[[a, b]] += h[[a, b]]
                xpm = x0.copy(); xpm[a] += h[a]; xpm[b] -= h[b]
                xmp = x0.copy(); xmp[a] -= h[a]; xmp[b] += h[b]
                xmm = x0.copy(); xmm[[a, b]] -= h[[a, b]]
                H[a, b] = (phase(*xpp) - phase(*xpm) - phase(*xmp) + phase(*xmm)) / (
                    4.0 * h[a] * h[b]
                )
    H = 0.5 * (H + H.T)
    eigs = np.linalg.eigvalsh(H)
    scale = np.max(np.abs(eigs))
    if scale == 0.0 or np.min(np.abs(eigs)) / scale < 1e-8:
        raise DegenerateHessian(f"near-singular Hessian, eigenvalues {eigs}")
    signature = int(np.sum(eigs > 0)) - int(np.sum(eigs < 0))
    det = float(np.linalg.det(H))
    expected = lam * l * r_z / rbar_z
    if abs(det - expected) > det_rtol * abs(expected):
        raise DegenerateHessian(
            f"determinant {det!r} does not match expected {expected!r}"
        )
    return HessianCheck(
        signature=signature, determinant=det, expected_determinant=expected, matrix=H
    )


@dataclass(frozen=True)
class ReferenceValue:
    value: complex
    error: float
    panels: int


def quadrature_trace_reference(
    entry: SingularityEntry,
    window: SmoothingWindow,
    t: float,
    *,
    atol: float = 1e-9,
    max_doublings: int = 22,
) -> ReferenceValue:
    """Slow reference for one orbit's complex trace contribution at time t.

    Composite Simpson with panel doubling until successive estimates agree,
    entirely independent of the oscillation-aware Gauss panels used by the
    fast path.  The low-frequency ramp is integrated in u = sqrt(lambda)
    so the integrand stays finite for every supported corner count.
    """
    m = entry.orbit.m
    s = t - entry.location
    w = window.rho_width
    u_edge = math.sqrt(w)

    def simpson(f, a, b, n):
        x = np.linspace(a, b, n + 1)
        y = f(x)
        return (b - a) / (3.0 * n) * (
            y[0] + y[-1] + 4.0 * np.sum(y[1:-1:2]) + 2.0 * np.sum(y[2:-2:2])
        )

    def ramp_part(u):
        lam = u * u
        vals = 2.0 * window.rho(lam) * np.exp(1j * s * lam)
        with np.errstate(divide="ignore", invalid="ignore"):
            powered = np.where(u > 0.0, u ** (1.0 - m), 0.0)
        if m == window.max_corners:  # u^0 limit is the leading ramp coefficient
            powered[u == 0.0] = 1.0
            vals_zero = 2.0 * window.rho_coefficients[0] / w ** (window.rho_order + 1)
            vals = np.where(u == 0.0, vals_zero, vals)
        return vals * powered

    def band_part(lam):
        return window.taper(lam) * lam ** (-0.5 * m) * np.exp(1j * s * lam)

    n = 256
    prev = simpson(ramp_part, 0.0, u_edge, n) + simpson(
        band_part, w, window.lambda_max, 4 * n
    )
    for _ in range(max_doublings):
        n *= 2
        cur = simpson(ramp_part, 0.0, u_edge, n) + simpson(
            band_part, w, window.lambda_max, 4 * n
        )
        err = abs(cur - prev)
        if err < atol:
            return ReferenceValue(
                value=entry.coefficient * cur, error=abs(entry.coefficient) * err,
                panels=n,
            )
        prev = cur
    raise NoConvergence(f"Simpson doubling did not reach {atol} within cap")
