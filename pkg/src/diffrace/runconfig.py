"""Strict JSON run configuration.

Unknown keys are fatal and every violation is collected with a path to the
offending field, so one parse reports all problems.  The schema is
documented in the README; scene-level geometry violations (flux range,
duplicate or collinear solenoids) surface as schema violations too.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from .errors import ConfigError, SchemaError, UnknownKey
from .geometry import (
    TOL_ANGLE_DEFAULT,
    TOL_COLLINEAR_DEFAULT,
    SolenoidConfig,
    validate_config,
)


@dataclass(frozen=True)
class OrbitParams:
    l_max: float = 5.0
    merge_reversals: bool = False


@dataclass(frozen=True)
class TraceParams:
    lambda_max: float = 200.0
    taper_width: float = 40.0
    rho_width: float = 1.0
    rho_order: int = 3
    t_min: float | None = None
    t_max: float | None = None
    t_step: float | None = None


@dataclass(frozen=True)
class ResonanceParams:
    n1: float = 1.0
    epsilon: float = 0.0
    delta: float = 0.5
    r: float = 10000.0
    rep_max: int = 10000
    l_max: float | None = None


@dataclass(frozen=True)
class VerifyParams:
    seed: int = 0
    cases: int = 100


@dataclass(frozen=True)
class RunConfig:
    scene: SolenoidConfig
    orbits: OrbitParams = field(default_factory=OrbitParams)
    trace: TraceParams = field(default_factory=TraceParams)
    resonances: ResonanceParams = field(default_factory=ResonanceParams)
    verify: VerifyParams = field(default_factory=VerifyParams)
    threads: int = 1


_SCENE_KEYS = {"solenoids", "fluxes", "tol_collinear", "tol_angle"}
_ORBIT_KEYS = {"l_max", "merge_reversals"}
_TRACE_KEYS = {
    "lambda_max", "taper_width", "rho_width", "rho_order", "t_min", "t_max", "t_step",
}
_RES_KEYS = {"n1", "epsilon", "delta", "r", "rep_max", "l_max"}
_VERIFY_KEYS = {"seed", "cases"}
_TOP_KEYS = {"scene", "orbits", "trace", "resonances", "verify", "threads"}


class _Collector:
    def __init__(self):
        self.violations: list[tuple[str, str]] = []
        self.unknown_only = True

    def add(self, path: str, msg: str, unknown: bool = False):
        self.violations.append((path, msg))
        if not unknown:
            self.unknown_only = False

    def check_keys(self, obj: dict, allowed: set[str], path: str):
        for key in sorted(set(obj) - allowed):
            self.add(f"{path}.{key}" if path else key, "unknown key", unknown=True)

    def number(self, obj: dict, key: str, path: str, default, *, integer=False,
               optional=False):
        if key not in obj:
            return default
        v = obj[key]
        if optional and v is None:
            return None
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            self.add(f"{path}.{key}", f"expected a number, got {type(v).__name__}")
            return default
        if integer:
            if not isinstance(v, int):
                self.add(f"{path}.{key}", "expected an integer")
                return default
            return v
        return float(v)

    def boolean(self, obj: dict, key: str, path: str, default):
        if key not in obj:
            return default
        v = obj[key]
        if not isinstance(v, bool):
            self.add(f"{path}.{key}", f"expected a boolean, got {type(v).__name__}")
            return default
        return v


def _parse_scene(obj, col: _Collector) -> SolenoidConfig | None:
    if not isinstance(obj, dict):
        col.add("scene", "expected an object")
        return None
    col.check_keys(obj, _SCENE_KEYS, "scene")
    solenoids = obj.get("solenoids")
    fluxes = obj.get("fluxes")
    ok = True
    if not isinstance(solenoids, list) or not all(
        isinstance(p, list) and len(p) == 2
        and all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in p)
        for p in solenoids
    ):
        col.add("scene.solenoids", "expected a list of [x, y] pairs")
        ok = False
    if not isinstance(fluxes, list) or not all(
        isinstance(a, (int, float)) and not isinstance(a, bool) for a in fluxes
    ):
        col.add("scene.fluxes", "expected a list of numbers")
        ok = False
    tol_c = col.number(obj, "tol_collinear", "scene", TOL_COLLINEAR_DEFAULT)
    tol_a = col.number(obj, "tol_angle", "scene", TOL_ANGLE_DEFAULT)
    if not ok:
        return None
    try:
        return validate_config(solenoids, fluxes, tol_c, tol_a)
    except ConfigError as err:
        for v in err.violations:
            idx = getattr(v, "index", None)
            if idx is not None and idx >= 0:
                col.add(f"scene.fluxes[{idx}]", str(v))
            else:
                col.add("scene", str(v))
        return None


def parse_config(text: str) -> RunConfig:
    """Parse and validate a JSON run configuration, reporting all violations."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as err:
        raise SchemaError([("<document>", f"not valid JSON: {err}")]) from err
    if not isinstance(raw, dict):
        raise SchemaError([("<document>", "top level must be an object")])

    col = _Collector()
    col.check_keys(raw, _TOP_KEYS, "")
    if "scene" not in raw:
        col.add("scene", "required section is missing")
        scene = None
    else:
        scene = _parse_scene(raw["scene"], col)

    def section(name, keys):
        obj = raw.get(name, {})
        if not isinstance(obj, dict):
            col.add(name, "expected an object")
            return {}
        col.check_keys(obj, keys, name)
        return obj

    o = section("orbits", _ORBIT_KEYS)
    orbit_params = OrbitParams(
        l_max=col.number(o, "l_max", "orbits", 5.0),
        merge_reversals=col.boolean(o, "merge_reversals", "orbits", False),
    )
    if orbit_params.l_max <= 0:
        col.add("orbits.l_max", "must be positive")

    tr = section("trace", _TRACE_KEYS)
    trace_params = TraceParams(
        lambda_max=col.number(tr, "lambda_max", "trace", 200.0),
        taper_width=col.number(tr, "taper_width", "trace", 40.0),
        rho_width=col.number(tr, "rho_width", "trace", 1.0),
        rho_order=col.number(tr, "rho_order", "trace", 3, integer=True),
        t_min=col.number(tr, "t_min", "trace", None, optional=True),
        t_max=col.number(tr, "t_max", "trace", None, optional=True),
        t_step=col.number(tr, "t_step", "trace", None, optional=True),
    )
    if trace_params.lambda_max <= 0:
        col.add("trace.lambda_max", "must be positive")

    rs = section("resonances", _RES_KEYS)
    res_params = ResonanceParams(
        n1=col.number(rs, "n1", "resonances", 1.0),
        epsilon=col.number(rs, "epsilon", "resonances", 0.0),
        delta=col.number(rs, "delta", "resonances", 0.5),
        r=col.number(rs, "r", "resonances", 10000.0),
        rep_max=col.number(rs, "rep_max", "resonances", 10000, integer=True),
        l_max=col.number(rs, "l_max", "resonances", None, optional=True),
    )
    if res_params.n1 <= 0:
        col.add("resonances.n1", "must be positive")
    if not (0 < res_params.delta < 1):
        col.add("resonances.delta", "must lie strictly inside (0, 1)")

    vf = section("verify", _VERIFY_KEYS)
    verify_params = VerifyParams(
        seed=col.number(vf, "seed", "verify", 0, integer=True),
        cases=col.number(vf, "cases", "verify", 100, integer=True),
    )

    threads = col.number(raw, "threads", "", 1, integer=True)
    if isinstance(threads, int) and threads < 1:
        col.add("threads", "must be >= 1")

    if col.violations:
        if col.unknown_only:
            raise UnknownKey(col.violations)
        raise SchemaError(col.violations)
    assert scene is not None
    return RunConfig(
        scene=scene,
        orbits=orbit_params,
        trace=trace_params,
        resonances=res_params,
        verify=verify_params,
        threads=threads,
    )


def serialize_config(config: RunConfig) -> str:
    """Canonical JSON for a RunConfig; parse_config round-trips it."""
    doc = {
        "scene": {
            "solenoids": [list(p) for p in config.scene.solenoids],
            "fluxes": list(config.scene.fluxes),
            "tol_collinear": config.scene.tol_collinear,
            "tol_angle": config.scene.tol_angle,
        },
        "orbits": asdict(config.orbits),
        "trace": asdict(config.trace),
        "resonances": asdict(config.resonances),
        "verify": asdict(config.verify),
        "threads": config.threads,
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
