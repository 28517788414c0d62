"""Command-line front end: capacity queries, sweeps, trajectories, checks.

Subcommands:

  capacity   one channel, one record (human-readable or --json)
  sweep      grid of records as CSV or JSON lines, deterministic order
  evolve     decay trajectory dump: time column + 9 state-entry columns
  degrade    construct the degrading stage for a channel and verify it
  verify     run the oracle cross-check suites (quick or full)

All numeric text uses shortest round-trip decimals so identical inputs
produce byte-identical output regardless of worker count.  A flat
key=value config file can supply any flag; explicit flags win.
"""

from __future__ import annotations

import argparse
import itertools
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .capacity import NotDegradable, degrading_map, quantum_capacity
from .channels import (
    LossChannel,
    TransferChannel,
    compose,
    concatenate,
    conversion_channel,
    reception_channel,
)
from .jc import JCParams
from .lindblad import DecayParams, closed_form_state, decayed_conversion
from .qmat import QubitInput, trace_distance
from .verify import run_verify

CSV_HEADER = "mode,g,delta,t,g2,delta2,t2,T,kappa,gamma,h_keep_sq,h_env_sq,status,Q,p_star"
_PARAM_COLUMNS = ("g", "delta", "t", "g2", "delta2", "t2", "T", "kappa", "gamma")

EVOLVE_HEADER = (
    "t,pop_ground,pop_photon,pop_atom,"
    "re_ground_photon,im_ground_photon,"
    "re_ground_atom,im_ground_atom,"
    "re_photon_atom,im_photon_atom"
)

# parameters each mode needs; remaining model parameters default to zero
_REQUIRED = {
    "conversion": ("g", "t"),
    "concat": ("g", "t", "g2", "t2", "T"),
    "decayed": ("g", "t"),
}
_DEFAULTED = {
    "conversion": ("delta", "nu"),
    "concat": ("delta", "delta2", "nu"),
    "decayed": ("delta", "nu", "kappa", "gamma"),
}
_SWEEPABLE = {
    "conversion": ("g", "delta", "t"),
    "concat": ("g", "delta", "t", "t2", "T"),
    "decayed": ("g", "delta", "t", "kappa", "gamma"),
}

_STATUS_TEXT = {
    "degradable": "Degradable",
    "anti-degradable": "AntiDegradable",
    "boundary": "Boundary",
}


@dataclass(frozen=True)
class SweepAxis:
    name: str
    start: float
    stop: float
    count: int


@dataclass(frozen=True)
class SweepSpec:
    mode: str
    axes: tuple[SweepAxis, ...]
    fixed: dict
    fmt: str  # "csv" | "json-lines"


@dataclass(frozen=True)
class RunRecord:
    mode: str
    params: dict  # column name -> float or None
    h_keep_sq: float
    h_env_sq: float
    status: str
    q: float
    p_star: float
    wall_time_s: float

    def csv_row(self) -> str:
        cells = [self.mode]
        for name in _PARAM_COLUMNS:
            v = self.params.get(name)
            cells.append("" if v is None else repr(float(v)))
        cells += [
            repr(float(self.h_keep_sq)),
            repr(float(self.h_env_sq)),
            self.status,
            repr(float(self.q)),
            repr(float(self.p_star)),
        ]
        return ",".join(cells)

    def json_obj(self) -> dict:
        obj = {"mode": self.mode}
        for name in _PARAM_COLUMNS:
            v = self.params.get(name)
            obj[name] = None if v is None else float(v)
        obj.update(
            h_keep_sq=float(self.h_keep_sq),
            h_env_sq=float(self.h_env_sq),
            status=self.status,
            Q=float(self.q),
            p_star=float(self.p_star),
        )
        return obj


def compute_record(mode: str, vals: dict) -> RunRecord:
    """Build the channel for one parameter point and take its capacity."""
    start = time.perf_counter()
    params = {name: None for name in _PARAM_COLUMNS}
    if mode == "conversion":
        stage = JCParams.from_detuning(
            g=vals["g"], delta=vals["delta"], t=vals["t"], nu=vals["nu"]
        )
        ch = conversion_channel(stage)
        params.update(g=vals["g"], delta=vals["delta"], t=vals["t"])
    elif mode == "concat":
        e1 = JCParams.from_detuning(
            g=vals["g"], delta=vals["delta"], t=vals["t"], nu=vals["nu"]
        )
        e2 = JCParams.from_detuning(
            g=vals["g2"], delta=vals["delta2"], t=vals["t2"], nu=vals["nu"]
        )
        ch = concatenate(e1, LossChannel(T=vals["T"]), e2)
        params.update(
            g=vals["g"], delta=vals["delta"], t=vals["t"],
            g2=vals["g2"], delta2=vals["delta2"], t2=vals["t2"], T=vals["T"],
        )
    elif mode == "decayed":
        stage = JCParams.from_detuning(
            g=vals["g"], delta=vals["delta"], t=vals["t"], nu=vals["nu"]
        )
        decay = DecayParams(kappa=vals["kappa"], gamma_at=vals["gamma"])
        ch = decayed_conversion(stage, decay, vals["t"]).as_transfer()
        params.update(
            g=vals["g"], delta=vals["delta"], t=vals["t"],
            kappa=vals["kappa"], gamma=vals["gamma"],
        )
    else:
        raise ValueError(f"unknown mode {mode!r}")
    res = quantum_capacity(ch)
    return RunRecord(
        mode=mode,
        params=params,
        h_keep_sq=ch.keep_prob,
        h_env_sq=ch.env_prob,
        status=res.status.value,
        q=res.q,
        p_star=res.p_star,
        wall_time_s=time.perf_counter() - start,
    )


# ---------------------------------------------------------------- plumbing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jcchannel",
        description="Atom-field transfer channels: capacities, sweeps, decay trajectories.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--mode", choices=("conversion", "concat", "decayed"))
        for flag in ("--g", "--delta", "--t", "--g2", "--delta2", "--t2",
                     "--T", "--kappa", "--gamma", "--nu"):
            p.add_argument(flag, type=float)
        p.add_argument("--sweep", action="append", metavar="AXIS:START:STOP:COUNT",
                       help="sweep axis, repeatable up to 3 times")
        p.add_argument("--out", help="write output to this file instead of stdout")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--threads", type=int, help="worker threads (default: cpu count)")
        p.add_argument("--config", help="flat key=value file supplying flag defaults")
        p.add_argument("--stamp", action="store_true",
                       help="prepend a timestamp line to file output")

    add_common(sub.add_parser("capacity", help="capacity of a single channel"))
    add_common(sub.add_parser("sweep", help="capacity over a parameter grid"))
    add_common(sub.add_parser("evolve", help="decay trajectory of a single photon input"))
    add_common(sub.add_parser("degrade", help="degrading stage parameters and check"))
    pv = sub.add_parser("verify", help="run oracle cross-check suites")
    pv.add_argument("level", nargs="?", choices=("quick", "full"), default="quick")
    pv.add_argument("--config", help="flat key=value file supplying flag defaults")
    return parser


_FLOAT_KEYS = ("g", "delta", "t", "g2", "delta2", "t2", "T", "kappa", "gamma", "nu")
_BOOL_KEYS = ("json", "stamp")


def _read_config(path: str, parser) -> dict:
    cfg: dict = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        parser.error(f"--config: cannot read {path}: {e}")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            parser.error(f"--config: line {lineno} is not key=value: {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key == "sweep":
            cfg.setdefault("sweep", []).append(value)
        else:
            cfg[key] = value
    return cfg


def _merge_config(args, parser) -> None:
    if not getattr(args, "config", None):
        return
    cfg = _read_config(args.config, parser)
    for key, value in cfg.items():
        if not hasattr(args, key):
            parser.error(f"--config: unknown key {key!r}")
        current = getattr(args, key)
        if key in _BOOL_KEYS:
            if not current:
                setattr(args, key, value.lower() in ("1", "true", "yes", "on"))
        elif key == "sweep":
            if current is None:
                setattr(args, key, list(value))
        elif current is None:
            if key in _FLOAT_KEYS:
                try:
                    setattr(args, key, float(value))
                except ValueError:
                    parser.error(f"--config: key {key!r} is not a number: {value!r}")
            elif key == "threads":
                try:
                    setattr(args, key, int(value))
                except ValueError:
                    parser.error(f"--config: threads is not an integer: {value!r}")
            else:
                setattr(args, key, value)


def _parse_axis(text: str, parser) -> SweepAxis:
    parts = text.split(":")
    if len(parts) != 4:
        parser.error(f"--sweep: expected AXIS:START:STOP:COUNT, got {text!r}")
    name, start_s, stop_s, count_s = parts
    if name == "gamma_at":  # long spelling of the --gamma flag
        name = "gamma"
    try:
        start, stop, count = float(start_s), float(stop_s), int(count_s)
    except ValueError:
        parser.error(f"--sweep: non-numeric bounds in {text!r}")
    if count < 1:
        parser.error(f"--sweep: count must be >= 1 in {text!r}")
    if start > stop:
        parser.error(f"--sweep: start exceeds stop in {text!r}")
    return SweepAxis(name=name, start=start, stop=stop, count=count)


def _gather_values(args, mode: str, parser, swept=()) -> dict:
    """Collect fixed parameter values for a mode, applying zero defaults."""
    vals = {}
    for name in _REQUIRED[mode]:
        if name in swept:
            continue
        v = getattr(args, name)
        if v is None:
            parser.error(f"--{name} is required for mode {mode} (or sweep it)")
        vals[name] = v
    for name in _DEFAULTED[mode]:
        if name in swept:
            continue
        v = getattr(args, name)
        vals[name] = 0.0 if v is None else v
    _validate_ranges(vals, parser)
    return vals


def _validate_ranges(vals: dict, parser) -> None:
    checks = (
        ("g", lambda v: v > 0, "must be positive"),
        ("g2", lambda v: v > 0, "must be positive"),
        ("t", lambda v: v >= 0, "must be nonnegative"),
        ("t2", lambda v: v >= 0, "must be nonnegative"),
        ("T", lambda v: 0 <= v <= 1, "must lie in [0, 1]"),
        ("kappa", lambda v: v >= 0, "must be nonnegative"),
        ("gamma", lambda v: v >= 0, "must be nonnegative"),
    )
    for name, ok, msg in checks:
        if name in vals and vals[name] is not None and not ok(vals[name]):
            parser.error(f"--{name} {msg}, got {vals[name]}")


def _axis_ranges_ok(axis: SweepAxis, parser) -> None:
    probe = {axis.name: axis.start}
    _validate_ranges(probe, parser)
    probe = {axis.name: axis.stop}
    _validate_ranges(probe, parser)


def _emit(lines, out_path: str | None) -> None:
    """Print lines, or stream them to a file removed again on any failure."""
    if out_path is None:
        for line in lines:
            print(line)
        return
    path = Path(out_path)
    fh = path.open("w", encoding="utf-8")
    try:
        for line in lines:
            fh.write(line)
            fh.write("\n")
    except BaseException:
        fh.close()
        path.unlink(missing_ok=True)
        raise
    fh.close()


def _stamp_line(fmt: str) -> str:
    now = datetime.now(timezone.utc).isoformat(timespec="seconds")
    if fmt == "json-lines":
        return json.dumps({"stamp": now})
    return f"# generated {now}"


# ------------------------------------------------------------- subcommands


def _cmd_capacity(args, parser) -> int:
    if args.sweep:
        parser.error("capacity takes no --sweep; use the sweep subcommand")
    mode = args.mode or "conversion"
    vals = _gather_values(args, mode, parser)
    rec = compute_record(mode, vals)
    if args.json:
        obj = rec.json_obj()
        obj["wall_time_s"] = rec.wall_time_s
        lines = [json.dumps(obj)]
    else:
        rows = [("mode", rec.mode)]
        rows += [
            (k, repr(float(v)))
            for k, v in rec.params.items()
            if v is not None
        ]
        rows += [
            ("|h_keep|^2", repr(float(rec.h_keep_sq))),
            ("|h_env|^2", repr(float(rec.h_env_sq))),
            ("status", _STATUS_TEXT[rec.status]),
            ("Q", repr(float(rec.q))),
            ("p_star", repr(float(rec.p_star))),
        ]
        width = max(len(k) for k, _ in rows)
        lines = [f"{k:<{width}}  {v}" for k, v in rows]
    _emit(lines, args.out)
    return 0


def _build_sweep_spec(args, parser) -> SweepSpec:
    mode = args.mode or "conversion"
    if not args.sweep:
        parser.error("--sweep is required for the sweep subcommand")
    if len(args.sweep) > 3:
        parser.error("--sweep: at most 3 axes")
    axes = tuple(_parse_axis(s, parser) for s in args.sweep)
    names = [a.name for a in axes]
    if len(set(names)) != len(names):
        parser.error("--sweep: duplicate axis names")
    for axis in axes:
        if axis.name not in _SWEEPABLE[mode]:
            parser.error(
                f"--sweep: axis {axis.name!r} not sweepable in mode {mode} "
                f"(allowed: {', '.join(_SWEEPABLE[mode])})"
            )
        _axis_ranges_ok(axis, parser)
    fixed = _gather_values(args, mode, parser, swept=set(names))
    fmt = "json-lines" if args.json else "csv"
    return SweepSpec(mode=mode, axes=axes, fixed=fixed, fmt=fmt)


def _sweep_lines(spec: SweepSpec, threads: int, stamp: bool):
    grids = [np.linspace(ax.start, ax.stop, ax.count) for ax in spec.axes]
    points = []
    for idx in itertools.product(*(range(ax.count) for ax in spec.axes)):
        vals = dict(spec.fixed)
        for ax, grid, i in zip(spec.axes, grids, idx):
            vals[ax.name] = float(grid[i])
        points.append(vals)

    def work(vals):
        return compute_record(spec.mode, vals)

    if stamp:
        yield _stamp_line(spec.fmt)
    if spec.fmt == "csv":
        yield CSV_HEADER
    if threads <= 1:
        records = map(work, points)
        for rec in records:
            yield rec.csv_row() if spec.fmt == "csv" else json.dumps(rec.json_obj())
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            # map preserves submission order, so output order is grid order
            for rec in pool.map(work, points):
                yield rec.csv_row() if spec.fmt == "csv" else json.dumps(rec.json_obj())


def _cmd_sweep(args, parser) -> int:
    spec = _build_sweep_spec(args, parser)
    threads = args.threads if args.threads else (os.cpu_count() or 1)
    if threads < 1:
        parser.error("--threads must be >= 1")
    _emit(_sweep_lines(spec, threads, args.stamp), args.out)
    return 0


def _cmd_evolve(args, parser) -> int:
    mode = args.mode or "decayed"
    if mode != "decayed":
        parser.error("evolve supports only --mode decayed")
    if args.sweep:
        if len(args.sweep) != 1:
            parser.error("evolve takes exactly one --sweep axis (t)")
        axis = _parse_axis(args.sweep[0], parser)
        if axis.name != "t":
            parser.error("evolve can sweep only the t axis")
        times = np.linspace(axis.start, axis.stop, axis.count)
        swept = {"t"}
    else:
        if args.t is None:
            parser.error("--t is required for evolve (or provide --sweep t:...)")
        times = np.linspace(0.0, args.t, 201)
        swept = set()
    vals = _gather_values(args, "decayed", parser, swept=swept)
    stage = JCParams.from_detuning(
        g=vals["g"], delta=vals["delta"], t=0.0, nu=vals["nu"]
    )
    decay = DecayParams(kappa=vals["kappa"], gamma_at=vals["gamma"])
    inp = QubitInput(p=1.0, r=0.0)  # a single photon arrives

    def lines():
        if args.stamp:
            yield _stamp_line("json-lines" if args.json else "csv")
        if not args.json:
            yield EVOLVE_HEADER
        for t in times:
            rho = closed_form_state(stage, decay, inp, float(t))
            cells = tuple(
                float(c)
                for c in (
                    t,
                    rho[0, 0].real, rho[1, 1].real, rho[2, 2].real,
                    rho[0, 1].real, rho[0, 1].imag,
                    rho[0, 2].real, rho[0, 2].imag,
                    rho[1, 2].real, rho[1, 2].imag,
                )
            )
            if args.json:
                keys = EVOLVE_HEADER.split(",")
                yield json.dumps(dict(zip(keys, cells)))
            else:
                yield ",".join(repr(c) for c in cells)

    _emit(lines(), args.out)
    return 0


def _cmd_degrade(args, parser) -> int:
    mode = args.mode or "conversion"
    if mode == "decayed":
        parser.error("degrade supports decay-free modes only (conversion, concat)")
    vals = _gather_values(args, mode, parser)
    rec_vals = dict(vals)
    if mode == "conversion":
        stage = JCParams.from_detuning(
            g=rec_vals["g"], delta=rec_vals["delta"], t=rec_vals["t"], nu=rec_vals["nu"]
        )
        ch = conversion_channel(stage)
    else:
        e1 = JCParams.from_detuning(
            g=rec_vals["g"], delta=rec_vals["delta"], t=rec_vals["t"], nu=rec_vals["nu"]
        )
        e2 = JCParams.from_detuning(
            g=rec_vals["g2"], delta=rec_vals["delta2"], t=rec_vals["t2"], nu=rec_vals["nu"]
        )
        ch = concatenate(e1, LossChannel(T=rec_vals["T"]), e2)
    try:
        second = degrading_map(ch)
    except NotDegradable as e:
        print(f"not degradable: {e}", file=sys.stderr)
        return 1
    composed = compose(ch, reception_channel(second))
    target = ch.complement()
    rng = np.random.default_rng(7)
    dist = 0.0
    for _ in range(20):
        p = float(rng.uniform(0, 1))
        mag = math.sqrt(p * (1 - p)) * float(rng.uniform(0, 1))
        ph = float(rng.uniform(0, 2 * math.pi))
        probe = QubitInput(p=p, r=mag * complex(math.cos(ph), math.sin(ph)))
        dist = max(dist, trace_distance(composed.apply(probe), target.apply(probe)))
    if args.json:
        lines = [json.dumps({
            "g2": second.g, "t2": second.t, "nu2": second.nu,
            "max_composition_distance": dist,
        })]
    else:
        lines = [
            f"degrading stage: g' = {second.g!r}, t' = {second.t!r}, nu' = {second.nu!r}",
            f"max composition distance over 20 inputs: {dist:.3e}",
        ]
    _emit(lines, args.out)
    return 0


def _cmd_verify(args, parser) -> int:
    report = run_verify(args.level)
    print(report.render())
    return 0 if report.passed else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _merge_config(args, parser)
    handlers = {
        "capacity": _cmd_capacity,
        "sweep": _cmd_sweep,
        "evolve": _cmd_evolve,
        "degrade": _cmd_degrade,
        "verify": _cmd_verify,
    }
    try:
        return handlers[args.command](args, parser)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
