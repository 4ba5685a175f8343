"""Command-line front end and dataset emission.

Subcommands: landscape, critical-points, spectrum, dynamics,
kink-spectrum, kink-propagate, validate.  Every run writes a CSV dataset
plus a metadata JSON embedding the effective config and a schema version,
so any artifact can be re-run from its metadata alone.  Identical configs
produce byte-identical CSV, independent of the worker count.

Exit codes: 0 ok, 1 validation failure, 2 config/domain error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .algebra import mode_energies
from .config import ConfigError, RunConfig, load_config, reference_config_path
from .dynamics import PhaseState, integrate
from .kink import KinkConfiguration, kink_spectrum, propagate_kink
from .landscape import (
    DomainError,
    find_critical_points,
    landscape_grid,
    total_density,
)
from .model import (
    CoherentAmplitude,
    single_particle_matrix,
    spectrum,
    staggered_bonds,
)
from .validate import run_validation

__all__ = ["main"]

SCHEMA_VERSION = "v1"

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _fmt(value: Any) -> str:
    """Shortest round-trip decimal for floats; plain str otherwise."""
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return repr(value)
    return str(value)


def _write_csv(path: Path, header: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    path.write_bytes(("\n".join(lines) + "\n").encode("ascii"))


def _write_metadata(path: Path, command: str, config: RunConfig, extra: dict[str, Any]) -> None:
    payload = {
        "schema": f"peierls/{command}/{SCHEMA_VERSION}",
        "config": config.as_dict(),
        **extra,
    }
    path.write_bytes((json.dumps(payload, sort_keys=True, indent=2) + "\n").encode("ascii"))


def _out_dir(args: argparse.Namespace) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_landscape(config: RunConfig, args: argparse.Namespace) -> int:
    cells = landscape_grid(
        config.model_params(),
        (config.re_min, config.re_max),
        (config.im_min, config.im_max),
        config.resolution,
        phonon_norm=config.phonon_norm,  # type: ignore[arg-type]
        workers=config.workers,
    )
    out = _out_dir(args)
    _write_csv(
        out / "landscape.csv",
        ["re", "im", "e_phonon", "e_electronic", "e_total", "status"],
        [(c.re, c.im, c.e_phonon, c.e_electronic, c.e_total, c.status) for c in cells],
    )
    _write_metadata(out / "landscape.json", "landscape", config, {"cells": len(cells)})
    return EXIT_OK


def cmd_critical_points(config: RunConfig, args: argparse.Namespace) -> int:
    points = find_critical_points(
        config.model_params(),
        config.seeds(),
        tol=config.newton_tol,
        phonon_norm=config.phonon_norm,  # type: ignore[arg-type]
        max_step=config.max_step,
    )
    out = _out_dir(args)
    _write_csv(
        out / "critical_points.csv",
        ["kind", "re", "im", "gradient_norm", "hessian_eig_low", "hessian_eig_high"],
        [(p.kind, p.location[0], p.location[1], p.gradient_norm, *p.hessian_eigs) for p in points],
    )
    _write_metadata(
        out / "critical_points.json",
        "critical-points",
        config,
        {"counts": {kind: sum(p.kind == kind for p in points) for kind in ("minimum", "saddle", "maximum", "marginal")}},
    )
    return EXIT_OK


def cmd_spectrum(config: RunConfig, args: argparse.Namespace) -> int:
    params = config.model_params()
    z = CoherentAmplitude(config.z_re, config.z_im)
    dense = spectrum(single_particle_matrix(staggered_bonds(params, z)))
    mode_vals: list[float] = []
    for k in range(params.big_l):
        m = mode_energies(params, z, k)
        r = math.hypot(m.epsilon, m.delta)
        mode_vals.extend((-r, r))
    modes = np.sort(mode_vals)
    nonzero = np.abs(modes) > 1e-300
    constant = float(np.median(dense[nonzero] / modes[nonzero])) if nonzero.any() else math.nan
    out = _out_dir(args)
    _write_csv(
        out / "spectrum.csv",
        ["index", "real_space", "mode_value"],
        [(i, float(dense[i]), float(modes[i])) for i in range(len(dense))],
    )
    _write_metadata(
        out / "spectrum.json",
        "spectrum",
        config,
        {"proportionality_constant": constant},
    )
    return EXIT_OK


def cmd_dynamics(config: RunConfig, args: argparse.Namespace) -> int:
    traj = integrate(
        config.model_params(),
        PhaseState(config.x0, config.v0),
        config.dt,
        config.steps,
        strict_paper=config.strict_paper,
        settle_tol=config.settle_tol if config.settle_tol > 0 else None,
    )
    if traj.termination == "non-finite":
        print("error: trajectory became non-finite", file=sys.stderr)
        return EXIT_NUMERICAL
    out = _out_dir(args)
    params = config.model_params()

    def e_total(x: float) -> float:
        try:
            return total_density(params, CoherentAmplitude(0.5 * x, 0.5 * x), config.phonon_norm).total  # type: ignore[arg-type]
        except DomainError:
            return math.nan

    _write_csv(
        out / "trajectory.csv",
        ["t", "x", "v", "e_total"],
        [(s.t, s.x, s.v, e_total(s.x)) for s in traj.states],
    )
    _write_metadata(
        out / "trajectory.json",
        "dynamics",
        config,
        {"termination": traj.termination, "final": {"t": traj.final.t, "x": traj.final.x, "v": traj.final.v}},
    )
    return EXIT_OK


def cmd_kink_spectrum(config: RunConfig, args: argparse.Namespace) -> int:
    params = config.model_params()
    kcfg = KinkConfiguration(
        n=config.kink_site,
        z=CoherentAmplitude(config.z_re, config.z_im),
        n_sites=config.n_sites,
    )
    evals, lowest, in_gap = kink_spectrum(params, kcfg)
    out = _out_dir(args)
    _write_csv(
        out / "kink_spectrum.csv",
        ["index", "eigenvalue", "in_gap"],
        [(i, float(evals[i]), int(in_gap[i])) for i in range(len(evals))],
    )
    _write_metadata(
        out / "kink_spectrum.json",
        "kink-spectrum",
        config,
        {"lowest": lowest, "in_gap_count": int(in_gap.sum())},
    )
    return EXIT_OK


def cmd_kink_propagate(config: RunConfig, args: argparse.Namespace) -> int:
    traj = propagate_kink(
        config.model_params(),
        CoherentAmplitude(config.z_re, config.z_im),
        config.kink_site,
        config.kink_dt,
        config.kink_steps,
        n_sites=config.n_sites,
        initial_anchor_offset=config.anchor_offset,
        z_functional=config.z_motion,  # type: ignore[arg-type]
        hysteresis=config.hysteresis,
    )
    if traj.termination == "non-finite":
        print("error: kink trajectory became non-finite", file=sys.stderr)
        return EXIT_NUMERICAL
    out = _out_dir(args)
    _write_csv(
        out / "kink_trajectory.csv",
        ["t", "re_z", "im_z", "kink_position", "energy", "n_anchor"],
        [
            (traj.times[i], traj.z_values[i].re, traj.z_values[i].im, traj.positions[i], traj.energies[i], traj.anchors[i])
            for i in range(len(traj.times))
        ],
    )
    energies = np.array(traj.energies)
    positions = np.array(traj.positions)
    _write_metadata(
        out / "kink_trajectory.json",
        "kink-propagate",
        config,
        {
            "termination": traj.termination,
            "max_advance": float(np.max(np.abs(positions - positions[0]))),
            "relative_energy_drift": float(np.max(np.abs(energies - energies[0])) / abs(energies[0])),
        },
    )
    return EXIT_OK


def cmd_validate(config: RunConfig, args: argparse.Namespace) -> int:
    report = run_validation(config.model_params())
    out = _out_dir(args)
    _write_metadata(out / "validation.json", "validate", config, {"report": report.as_dict()})
    for check in report.checks:
        status = "pass" if check.passed else "FAIL"
        print(f"{status} {check.name}: measured {check.measured:.3e} (threshold {check.threshold:.1e})")
    for key, value in report.info.items():
        print(f"info {key}: {value}")
    if not report.passed:
        return EXIT_VALIDATION
    return EXIT_OK


_COMMANDS = {
    "landscape": cmd_landscape,
    "critical-points": cmd_critical_points,
    "spectrum": cmd_spectrum,
    "dynamics": cmd_dynamics,
    "kink-spectrum": cmd_kink_spectrum,
    "kink-propagate": cmd_kink_propagate,
    "validate": cmd_validate,
}


def _parse_overrides(pairs: list[str]) -> dict[str, Any]:
    from .config import _coerce  # shared coercion rules

    out: dict[str, Any] = {}
    for pair in pairs:
        if "=" not in pair:
            raise ConfigError(f"--set expects key=value, got {pair!r}")
        key, _, raw = pair.partition("=")
        out[key.strip()] = _coerce(key.strip(), raw, f"--set {pair!r}")
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="peierls",
        description="Dimerized-chain energy landscapes, restricted dynamics, and kink propagation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name, help=f"run the {name} command")
        p.add_argument("--config", help="flat key=value config file")
        p.add_argument(
            "--reference",
            choices=["double_well", "kink_dynamics"],
            help="use a checked-in reference config (overridden by --config)",
        )
        p.add_argument("--out", "-o", default=".", help="output directory (default: current)")
        p.add_argument(
            "--set",
            action="append",
            default=[],
            metavar="KEY=VALUE",
            help="override a single config field (repeatable; highest precedence)",
        )
        p.add_argument("--workers", type=int, help="worker processes for grid evaluation")
        p.add_argument("--phonon-norm", choices=["per-cell", "per-site"], help="phonon normalization")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        overrides = _parse_overrides(args.set)
        if args.workers is not None:
            overrides["workers"] = args.workers
        if args.phonon_norm is not None:
            overrides["phonon_norm"] = args.phonon_norm
        config_file = args.config
        if config_file is None and args.reference is not None:
            config_file = reference_config_path(args.reference)
        config = load_config(config_file, overrides)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return _COMMANDS[args.command](config, args)
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (np.linalg.LinAlgError, FloatingPointError, OverflowError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
