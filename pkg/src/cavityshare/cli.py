"""Command-line interface: simulate, sweep, detect, verify.

Conventions shared by every subcommand: times are the dimensionless
tau = G t / pi, angles are theta/pi, the coupling g sets the unit system and
detuning/omega are given in units of g. CSV cells carry 17 significant
digits; JSON documents carry a top-level ``schema_version``. Identical
configurations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .analysis import (
    DEFAULT_FREEZE_TOL,
    detect_intervals,
    sweep,
    tau_to_time,
    ys_evolved,
)
from .dynamics import (
    BellState,
    CavityExcited,
    GeneralState,
    InitialCondition,
    amplitude_trajectory,
)
from .model import ModelParams, build_params
from .verify import SUITE_NAMES, run_suites, summary_payload

__all__ = ["app", "main", "RunConfig", "parse_init_spec", "format_float"]


class CliError(Exception):
    """Usage-level problem; rendered to stderr with exit code 2."""


@dataclass(frozen=True)
class RunConfig:
    """Validated bundle of everything one subcommand run needs."""

    command: str
    g: float = 1.0
    detuning_over_g: float = 0.0
    omega_over_g: float = 0.0
    init_spec: str = "class1"
    tau_min: float = 0.0
    tau_max: float = 4.0
    samples: int = 4001
    theta_min: float = 0.0
    theta_max: float = 1.0
    theta_points: int = 101
    tau_points: int = 401
    freeze_tol: float = DEFAULT_FREEZE_TOL
    scan_step: Optional[float] = None
    suite: str = "all"
    verify_samples: int = 1000
    seed: int = 1234
    fmt: str = "csv"
    output: Optional[str] = None

    def params(self) -> ModelParams:
        try:
            return build_params(
                g=self.g,
                omega=self.omega_over_g * self.g,
                omega0=(self.omega_over_g + self.detuning_over_g) * self.g,
            )
        except ValueError as exc:
            raise CliError(str(exc)) from exc

    def init(self) -> InitialCondition:
        return parse_init_spec(self.init_spec)


def parse_init_spec(spec: str) -> InitialCondition:
    """Parse ``class1``, ``bell:<theta/pi>`` or ``general:<a0>,<a1>,<a2>``."""
    text = spec.strip()
    if text == "class1":
        return CavityExcited()
    if text.startswith("bell:"):
        payload = text[len("bell:"):]
        try:
            fraction = float(payload)
        except ValueError:
            raise CliError(
                f"invalid theta/pi value {payload!r} in init spec {spec!r}"
            ) from None
        return BellState(theta=fraction * math.pi)
    if text.startswith("general:"):
        payload = text[len("general:"):]
        parts = payload.split(",")
        if len(parts) != 3:
            raise CliError(
                f"init spec {spec!r} needs exactly three comma-separated "
                "amplitudes a0,a1,a2"
            )
        amps = []
        for name, part in zip(("a0", "a1", "a2"), parts):
            try:
                amps.append(complex(part.strip()))
            except ValueError:
                raise CliError(
                    f"amplitude {name} in init spec {spec!r} is not a "
                    f"complex literal: {part.strip()!r}"
                ) from None
        try:
            return GeneralState(a0=amps[0], a1=amps[1], a2=amps[2])
        except ValueError as exc:
            raise CliError(str(exc)) from exc
    raise CliError(
        f"unrecognized init spec {spec!r}; expected class1, bell:<theta/pi> "
        "or general:<a0>,<a1>,<a2>"
    )


def format_float(x: float) -> str:
    """17-significant-digit decimal form that round-trips and keeps a point."""
    s = f"{float(x):.17g}"
    if not any(c in s for c in ".eEni"):
        s += ".0"
    return s


def _write_text(path: Optional[str], text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write output file {path!r}: {exc}") from exc


def _json_text(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


# ---------------------------------------------------------------------------
# subcommand bodies
# ---------------------------------------------------------------------------


def run_simulate(config: RunConfig) -> int:
    if config.samples < 2:
        raise CliError(f"--samples must be at least 2, got {config.samples}")
    if not config.tau_max > config.tau_min:
        raise CliError(
            f"need --tau-max > --tau-min, got [{config.tau_min}, {config.tau_max}]"
        )
    params = config.params()
    init = config.init()
    taus = np.linspace(config.tau_min, config.tau_max, config.samples)
    times = tau_to_time(taus, params)
    a0, a1, a2 = amplitude_trajectory(init, params, times)
    # restore carrier phases: the written amplitudes are full-frame
    cavity_phase = np.exp(-1j * params.omega * times)
    atom_phase = np.exp(-1j * params.omega0 * times)
    a0_full = a0 * cavity_phase
    a1_full = a1 * atom_phase
    a2_full = a2 * atom_phase
    probs = np.stack([np.abs(a0) ** 2, np.abs(a1) ** 2, np.abs(a2) ** 2], axis=-1)
    y = _kernels.measure_batch_numpy(probs)
    ys = y.sum(axis=1)

    columns = [
        "tau",
        "re_a0", "im_a0", "re_a1", "im_a1", "re_a2", "im_a2",
        "Y0", "Y1", "Y2", "YS",
    ]
    table = np.column_stack(
        [
            taus,
            a0_full.real, a0_full.imag,
            a1_full.real, a1_full.imag,
            a2_full.real, a2_full.imag,
            y[:, 0], y[:, 1], y[:, 2], ys,
        ]
    )
    if config.fmt == "json":
        payload = {
            "schema_version": 1,
            "columns": columns,
            "rows": [[float(v) for v in row] for row in table],
        }
        _write_text(config.output, _json_text(payload))
    else:
        lines = [",".join(columns)]
        for row in table:
            lines.append(",".join(format_float(v) for v in row))
        _write_text(config.output, "\n".join(lines) + "\n")
    return 0


def run_sweep(config: RunConfig) -> int:
    if config.theta_points < 1:
        raise CliError(f"--theta-points must be at least 1, got {config.theta_points}")
    if config.tau_points < 2:
        raise CliError(f"--tau-points must be at least 2, got {config.tau_points}")
    if config.theta_points == 1:
        if config.theta_max != config.theta_min:
            raise CliError(
                "--theta-points 1 needs --theta-min equal to --theta-max"
            )
        theta_axis = np.array([config.theta_min])
    else:
        if not config.theta_max > config.theta_min:
            raise CliError(
                f"need --theta-max > --theta-min, got "
                f"[{config.theta_min}, {config.theta_max}]"
            )
        theta_axis = np.linspace(config.theta_min, config.theta_max, config.theta_points)
    if not config.tau_max > config.tau_min:
        raise CliError(
            f"need --tau-max > --tau-min, got [{config.tau_min}, {config.tau_max}]"
        )
    tau_axis = np.linspace(config.tau_min, config.tau_max, config.tau_points)
    try:
        grid = sweep(theta_axis, tau_axis)
    except ValueError as exc:
        raise CliError(str(exc)) from exc

    if config.fmt == "json":
        payload = {
            "schema_version": 1,
            "theta_axis": [float(v) for v in grid.theta_axis],
            "tau_axis": [float(v) for v in grid.tau_axis],
            "values": [[float(v) for v in row] for row in grid.values],
        }
        _write_text(config.output, _json_text(payload))
    else:
        lines = ["theta_pi," + ",".join(format_float(v) for v in grid.tau_axis)]
        for theta, row in zip(grid.theta_axis, grid.values):
            lines.append(
                format_float(theta) + "," + ",".join(format_float(v) for v in row)
            )
        _write_text(config.output, "\n".join(lines) + "\n")
    return 0


def run_detect(config: RunConfig) -> int:
    if not config.tau_max > config.tau_min:
        raise CliError(
            f"need --tau-max > --tau-min, got [{config.tau_min}, {config.tau_max}]"
        )
    params = config.params()
    init = config.init()

    def curve(tau):
        return ys_evolved(init, params, tau)

    try:
        intervals = detect_intervals(
            curve,
            config.tau_min,
            config.tau_max,
            freeze_tol=config.freeze_tol,
            scan_step=config.scan_step,
        )
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    payload = {
        "schema_version": 1,
        "intervals": [
            {"t_start": iv.t_start, "t_end": iv.t_end, "kind": iv.kind}
            for iv in intervals
        ],
    }
    _write_text(config.output, _json_text(payload))
    return 0


def run_verify(config: RunConfig) -> int:
    if config.verify_samples < 1:
        raise CliError(f"--samples must be positive, got {config.verify_samples}")
    if config.suite == "all":
        names = list(SUITE_NAMES)
    elif config.suite in SUITE_NAMES:
        names = [config.suite]
    else:
        raise CliError(
            f"unknown suite {config.suite!r}; choose from "
            + ", ".join(["all", *SUITE_NAMES])
        )
    results = run_suites(names, config.verify_samples, config.seed)
    payload = summary_payload(results)
    _write_text(config.output, _json_text(payload))
    return 0 if payload["all_passed"] else 1


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_model_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--g", type=float, default=1.0, help="coupling strength")
    sub.add_argument(
        "--detuning", type=float, default=0.0, dest="detuning",
        help="atom-cavity detuning in units of g",
    )
    sub.add_argument(
        "--omega", type=float, default=0.0,
        help="cavity frequency in units of g (sets the full-frame phases)",
    )


def _add_init_flag(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--init", default="class1",
        help="initial state: class1 (photon in cavity), bell:<theta/pi> "
        "(atom superposition), or general:<a0>,<a1>,<a2> (complex literals)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cavityshare",
        description="Entanglement sharing of two atoms and a lossless cavity "
        "mode in the single-excitation sector.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser(
        "simulate",
        help="write the exact amplitude trajectory and sharing measures",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    _add_init_flag(sim)
    _add_model_flags(sim)
    sim.add_argument("--tau-min", type=float, default=0.0, help="start of Gt/pi range")
    sim.add_argument("--tau-max", type=float, default=4.0, help="end of Gt/pi range")
    sim.add_argument("--samples", type=int, default=4001, help="number of time samples")
    sim.add_argument("--format", choices=("csv", "json"), default="csv", dest="fmt")
    sim.add_argument("--output", "-o", default=None, help="output path (default stdout)")

    swp = sub.add_parser(
        "sweep",
        help="fill the closed-form measure on a theta/pi x Gt/pi grid",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    swp.add_argument("--theta-min", type=float, default=0.0, help="first theta/pi row")
    swp.add_argument("--theta-max", type=float, default=1.0, help="last theta/pi row")
    swp.add_argument("--theta-points", type=int, default=101, help="number of theta rows")
    swp.add_argument("--tau-min", type=float, default=0.0, help="start of Gt/pi range")
    swp.add_argument("--tau-max", type=float, default=4.0, help="end of Gt/pi range")
    swp.add_argument("--tau-points", type=int, default=401, help="number of time samples")
    swp.add_argument("--format", choices=("csv", "json"), default="csv", dest="fmt")
    swp.add_argument("--output", "-o", default=None, help="output path (default stdout)")

    det = sub.add_parser(
        "detect",
        help="report frozen/thawing intervals of the sharing measure",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    _add_init_flag(det)
    _add_model_flags(det)
    det.add_argument("--tau-min", type=float, default=0.0, help="start of Gt/pi range")
    det.add_argument("--tau-max", type=float, default=4.0, help="end of Gt/pi range")
    det.add_argument(
        "--freeze-tol", type=float, default=DEFAULT_FREEZE_TOL,
        help="saturation tolerance |YS - 2|",
    )
    det.add_argument(
        "--scan-step", type=float, default=None,
        help="scan resolution on the tau axis (default: cycle length 2 / 2048)",
    )
    det.add_argument("--output", "-o", default=None, help="output path (default stdout)")

    ver = sub.add_parser(
        "verify",
        help="run the self-check suites and print a JSON summary",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    ver.add_argument(
        "--suite", default="all",
        help="one of: all, " + ", ".join(SUITE_NAMES),
    )
    ver.add_argument(
        "--samples", type=int, default=1000,
        help="random-state count for the statistical suites "
        "(normalization, volume, polygon, monogamy, ratio, measure-paths)",
    )
    ver.add_argument("--seed", type=int, default=1234, help="random seed")
    ver.add_argument("--output", "-o", default=None, help="output path (default stdout)")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    fields: dict = {"command": args.command}
    mapping = {
        "g": "g",
        "detuning": "detuning_over_g",
        "omega": "omega_over_g",
        "init": "init_spec",
        "tau_min": "tau_min",
        "tau_max": "tau_max",
        "samples": "samples" if args.command == "simulate" else "verify_samples",
        "theta_min": "theta_min",
        "theta_max": "theta_max",
        "theta_points": "theta_points",
        "tau_points": "tau_points",
        "freeze_tol": "freeze_tol",
        "scan_step": "scan_step",
        "suite": "suite",
        "seed": "seed",
        "fmt": "fmt",
        "output": "output",
    }
    for arg_name, field in mapping.items():
        if hasattr(args, arg_name):
            fields[field] = getattr(args, arg_name)
    return RunConfig(**fields)


_HANDLERS = {
    "simulate": run_simulate,
    "sweep": run_sweep,
    "detect": run_detect,
    "verify": run_verify,
}


def main(argv: Optional[list[str]] = None) -> int:
    """Entry point; returns the process exit code (0 ok, 1 check failure, 2 usage)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        return _HANDLERS[args.command](config)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def app() -> None:
    raise SystemExit(main())
