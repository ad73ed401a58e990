"""Command-line interface: orbits, trace, resonances, verify.

    diffrace <command> --config <path> [--out <dir>] [--threads N] [--seed N]

Reads a strict JSON configuration, writes CSV tables and JSON reports into
the output directory, and exits nonzero with the failing stage named on any
error.  Outputs are byte-stable for identical configurations and for any
thread count.  Synthesized traces are leading order only.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import kernels
from .errors import DiffraceError, SchemaError
from .oracles import (
    QuadratureSettings,
    brute_force_orbits,
    pv_winding_numeric,
    quadrature_trace_reference,
    stationary_phase_hessian,
)
from .coefficients import fractional_winding, orbit_coefficient
from .orbits import enumerate_orbits
from .report import complex_columns, fmt, sequence_label, write_csv, write_json
from .resonances import best_strip, counting_lower_bound
from .runconfig import RunConfig, parse_config
from .sampling import random_config, random_orbit
from .tracesynth import SmoothingWindow, singularity_table, synthesize_trace

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2

ORBITS_HEADER = (
    "sequence", "m", "L", "L0", "repetition", "order",
    "coeff_re", "coeff_im", "coeff_abs", "coeff_arg",
)


def _window(config: RunConfig) -> SmoothingWindow:
    tp = config.trace
    return SmoothingWindow(
        lambda_max=tp.lambda_max,
        taper_width=tp.taper_width,
        rho_width=tp.rho_width,
        rho_order=tp.rho_order,
    )


def _grid(config: RunConfig) -> np.ndarray:
    tp = config.trace
    step = tp.t_step if tp.t_step is not None else 0.5 / tp.lambda_max
    t_min = tp.t_min if tp.t_min is not None else step
    t_max = tp.t_max if tp.t_max is not None else config.orbits.l_max + 0.5
    count = int(math.floor((t_max - t_min) / step + 1e-9)) + 1
    return t_min + step * np.arange(count)


def cmd_orbits(config: RunConfig, out: Path, threads: int, seed: int) -> int:
    entries = singularity_table(
        config.scene,
        config.orbits.l_max,
        merge_reversals=config.orbits.merge_reversals,
        threads=threads,
    )
    rows = []
    breakdown = []
    for e in entries:
        o = e.orbit
        re, im, mag, arg = complex_columns(e.coefficient)
        rows.append(
            (sequence_label(o.vertices), o.m, o.total_length, o.primitive_length,
             o.repetition, e.order, re, im, mag, arg)
        )
        coeff = orbit_coefficient(config.scene, o)
        breakdown.append(
            {
                "sequence": sequence_label(o.vertices),
                "length": o.total_length,
                "segment_lengths": list(o.segment_lengths),
                "angles": list(o.angles),
                "factors": [[f.real, f.imag] for f in coeff.factors],
                "holonomy": [coeff.holonomy.real, coeff.holonomy.imag],
                "windings": list(coeff.windings),
                "coefficient": [e.coefficient.real, e.coefficient.imag],
                "order": e.order,
            }
        )
    write_csv(out / "orbits.csv", ORBITS_HEADER, rows)
    write_json(out / "orbits.json", {"label": "leading order", "orbits": breakdown})
    print(f"orbits: {len(entries)} singularities up to L={fmt(config.orbits.l_max)}")
    return EXIT_OK


def cmd_trace(config: RunConfig, out: Path, threads: int, seed: int) -> int:
    window = _window(config)
    grid = _grid(config)
    samples = synthesize_trace(
        config.scene,
        config.orbits.l_max,
        window,
        grid,
        merge_reversals=config.orbits.merge_reversals,
        threads=threads,
    )
    write_csv(
        out / "trace.csv",
        ("t", "u"),
        zip(samples.t_grid.tolist(), samples.values.tolist()),
    )
    write_json(
        out / "trace.json",
        {
            "label": "leading order",
            "window": {
                "lambda_max": window.lambda_max,
                "taper_width": window.taper_width,
                "rho_width": window.rho_width,
                "rho_order": window.rho_order,
            },
            "entries": [
                {
                    "sequence": sequence_label(e.orbit.vertices),
                    "location": e.location,
                    "order": e.order,
                    "coefficient": [e.coefficient.real, e.coefficient.imag],
                }
                for e in samples.entries
            ],
            "samples": len(grid),
        },
    )
    print(f"trace: {len(grid)} samples, {len(samples.entries)} orbit contributions")
    return EXIT_OK


def cmd_resonances(config: RunConfig, out: Path, threads: int, seed: int) -> int:
    rp = config.resonances
    report = best_strip(
        config.scene, rp.n1, rp.epsilon, rp.rep_max, l_max=rp.l_max
    )
    bound = counting_lower_bound(rp.r, rp.delta)
    rows = [
        (
            s.source,
            s.orbit.m if s.orbit is not None else 2 * (s.repetition or 0),
            s.orbit.total_length if s.orbit is not None else
            2.0 * (s.repetition or 0) * report.d_max,
            s.nu,
        )
        for s in report.orbit_strips + (report.best,)
    ]
    write_csv(out / "resonances.csv", ("source", "m", "L", "nu"), rows)
    write_json(
        out / "resonances.json",
        {
            "n1": report.n1,
            "epsilon": report.epsilon,
            "d_max": report.d_max,
            "bouncing_pair": list(report.bouncing_pair),
            "rep_max": report.rep_max,
            "best": {"source": report.best.source, "nu": report.best.nu},
            "limit_coefficient": report.limit_coefficient,
            "gap_to_limit": report.gap_to_limit,
            "counting_lower_bound": {
                "r": bound.r,
                "delta": bound.delta,
                "count": bound.count,
                "validity": bound.validity_note,
            },
        },
    )
    print(
        f"resonances: best nu={fmt(report.best.nu)} "
        f"({report.best.source}), limit coefficient {fmt(report.limit_coefficient)}"
    )
    return EXIT_OK


def cmd_verify(config: RunConfig, out: Path, threads: int, seed: int) -> int:
    rng = np.random.default_rng(seed)
    checks = []

    # enumeration against exhaustive word search on the configured scene
    scene = config.scene
    enum = [o.vertices for o in enumerate_orbits(scene, config.orbits.l_max)]
    brute = brute_force_orbits(scene, config.orbits.l_max)
    checks.append(
        {
            "name": "enumeration-vs-brute-force",
            "cases": len(brute),
            "max_abs_err": 0.0 if sorted(enum) == sorted(brute) else math.inf,
            "tolerance": 0.0,
            "passed": sorted(enum) == sorted(brute),
        }
    )

    # combinatorial winding numbers against contour quadrature
    worst = 0.0
    cases = 0
    for _ in range(config.verify.cases):
        cfg = random_config(rng)
        orbit = random_orbit(rng, cfg)
        k = int(rng.integers(0, cfg.n))
        fast = fractional_winding(cfg, orbit, k).value
        slow = pv_winding_numeric(cfg, orbit, k).value
        worst = max(worst, abs(fast - slow))
        cases += 1
    checks.append(
        {
            "name": "winding-vs-pv-quadrature",
            "cases": cases,
            "max_abs_err": worst,
            "tolerance": 1e-8,
            "passed": worst < 1e-8,
        }
    )

    # synthesized trace against Simpson panel doubling
    window = _window(config)
    entries = singularity_table(scene, config.orbits.l_max)
    worst = 0.0
    cases = 0
    if entries:
        grid = _grid(config)
        samples = synthesize_trace(
            scene, config.orbits.l_max, window, grid, entries=entries,
            threads=threads,
        )
        idx = rng.integers(0, len(grid), size=min(5, len(grid)))
        for i_entry, entry in enumerate(entries[: min(2, len(entries))]):
            for j in idx:
                ref = quadrature_trace_reference(entry, window, float(grid[j]))
                got = samples.contributions[i_entry][j]
                worst = max(worst, abs(got - ref.value))
                cases += 1
    checks.append(
        {
            "name": "trace-vs-reference-quadrature",
            "cases": cases,
            "max_abs_err": worst,
            "tolerance": 1e-7,
            "passed": worst < 1e-7,
        }
    )

    # stationary-phase data: signature and determinant
    worst = 0.0
    sig_ok = True
    for _ in range(config.verify.cases):
        r1 = float(rng.uniform(0.2, 3.0))
        r2 = float(rng.uniform(0.2, 3.0))
        lam = float(rng.uniform(0.5, 5.0))
        check = stationary_phase_hessian(r1, r2, r1 + r2, lam)
        sig_ok = sig_ok and check.signature == -1
        worst = max(
            worst,
            abs(check.determinant - check.expected_determinant)
            / abs(check.expected_determinant),
        )
    checks.append(
        {
            "name": "stationary-phase-hessian",
            "cases": config.verify.cases,
            "max_abs_err": worst,
            "tolerance": 1e-6,
            "passed": sig_ok and worst < 1e-6,
        }
    )

    all_pass = all(c["passed"] for c in checks)
    write_json(
        out / "verify.json",
        {"seed": seed, "kernel_backend": kernels.BACKEND, "checks": checks,
         "all_passed": all_pass},
    )
    write_csv(
        out / "verify.csv",
        ("check", "cases", "max_abs_err", "tolerance", "passed"),
        [
            (c["name"], c["cases"], c["max_abs_err"], c["tolerance"], c["passed"])
            for c in checks
        ],
    )
    for c in checks:
        status = "ok" if c["passed"] else "FAIL"
        print(f"verify {c['name']}: {status} (max err {fmt(c['max_abs_err'])})")
    return EXIT_OK if all_pass else EXIT_RUNTIME


_COMMANDS = {
    "orbits": cmd_orbits,
    "trace": cmd_trace,
    "resonances": cmd_resonances,
    "verify": cmd_verify,
}


def run(command: str, config: RunConfig, out_dir, threads: int | None = None,
        seed: int | None = None) -> int:
    """Execute one command; returns the process exit status."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    threads = threads if threads is not None else config.threads
    seed = seed if seed is not None else config.verify.seed
    return _COMMANDS[command](config, out, threads, seed)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="diffrace",
        description="Closed diffractive orbits, trace singularities, resonance strips.",
    )
    parser.add_argument("command", choices=sorted(_COMMANDS))
    parser.add_argument("--config", required=True, help="path to a JSON run configuration")
    parser.add_argument("--out", default=".", help="output directory (default: .)")
    parser.add_argument("--threads", type=int, default=None,
                        help="worker threads (default: DIFFRACE_THREADS or config)")
    parser.add_argument("--seed", type=int, default=None,
                        help="seed for the verify sweeps (default: config)")
    args = parser.parse_args(argv)

    stage = "configuration"
    try:
        text = Path(args.config).read_text(encoding="utf-8")
    except OSError as err:
        print(f"error [stage={stage}]: {err}", file=sys.stderr)
        return EXIT_USAGE
    try:
        config = parse_config(text)
    except SchemaError as err:
        for path, msg in err.violations:
            print(f"error [stage={stage}]: {path}: {msg}", file=sys.stderr)
        return EXIT_USAGE

    threads = args.threads
    if threads is None and "DIFFRACE_THREADS" in os.environ:
        try:
            threads = int(os.environ["DIFFRACE_THREADS"])
        except ValueError:
            print("error [stage=configuration]: DIFFRACE_THREADS must be an integer",
                  file=sys.stderr)
            return EXIT_USAGE

    stage = args.command
    try:
        return run(args.command, config, args.out, threads=threads, seed=args.seed)
    except DiffraceError as err:
        print(f"error [stage={stage}]: {err}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
