"""Command-line front end: ``bounds``, ``sweep``, ``figure`` and ``verify``.

Exit codes: 0 success, 1 verification failure, 2 usage or parameter error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Sequence

from .bounds import BoundReport, full_report, optimize_settings
from .exceptions import EURError
from .figures import CSV_HEADER, csv_row, figure_data, fmt6, render_csv, render_svg
from .measurement import Side
from .states import FAMILIES, Observable, make_state
from .verify import run_verification

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_observable(text: str) -> Observable:
    """``x``, ``y``, ``z`` or ``theta,phi`` in degrees."""
    t = text.strip().lower()
    if t in ("x", "y", "z"):
        return Observable.axis(t)
    try:
        theta_deg, phi_deg = (float(v) for v in t.split(","))
    except ValueError:
        raise UsageError(f"cannot parse observable {text!r}; use x, y, z or THETA,PHI in degrees") from None
    if not (0.0 <= theta_deg <= 180.0):
        raise UsageError(f"observable theta must lie in [0, 180] degrees, got {theta_deg}")
    phi = math.radians(phi_deg % 360.0)
    return Observable(math.radians(theta_deg), phi if phi < 2 * math.pi else 0.0)


def default_obs_s(family: str) -> str:
    # the Bell-diagonal family is perfectly anticorrelated along y, not x
    return "y" if family == "bd" else "x"


def _add_common(p: argparse.ArgumentParser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    p.add_argument("--side", choices=["A", "B"], default=default, help="measuring party for C^M and discord (default B)")
    p.add_argument("--format", choices=["table", "csv", "json-lines"], default=default, help="output format (default table)")


def _add_state_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--state", required=True, choices=sorted(FAMILIES), help="state family")
    for name in ("p", "alpha", "cx", "cy", "cz"):
        p.add_argument(f"--{name}", type=float, default=None)
    p.add_argument("--obs-r", default="z", help="first observable: x, y, z or THETA,PHI degrees (default z)")
    p.add_argument("--obs-s", default=None, help="second observable (default x; y for bd)")
    p.add_argument("--optimize-settings", action="store_true", help="search mutually unbiased settings minimizing L3")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eurbounds", description="Entropic uncertainty lower bounds for two-qubit states.")
    _add_common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bounds", help="print L0-L4 and both uncertainty sums for one state")
    _add_state_args(b)
    _add_common(b, suppress=True)

    s = sub.add_parser("sweep", help="sweep one family parameter and write CSV")
    _add_state_args(s)
    s.add_argument("--param", required=True, help="parameter to sweep")
    s.add_argument("--from", dest="start", type=float, required=True)
    s.add_argument("--to", dest="stop", type=float, required=True)
    s.add_argument("--steps", type=int, required=True)
    s.add_argument("--out", default=None, help="CSV path (default stdout)")
    _add_common(s, suppress=True)

    f = sub.add_parser("figure", help="regenerate the data behind figure 1 or 2")
    f.add_argument("--id", dest="fig_id", type=int, required=True)
    f.add_argument("--out", default=None, help="CSV path (default stdout)")
    f.add_argument("--svg", default=None, help="also write a grouped bar chart here")
    _add_common(f, suppress=True)

    v = sub.add_parser("verify", help="run randomized property checks")
    v.add_argument("--samples", type=int, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", type=float, default=1e-7)
    v.add_argument("--pairs", type=int, default=20, help="random mutually unbiased setting pairs per state")
    _add_common(v, suppress=True)
    return parser


def _settings(args, state):
    if args.optimize_settings:
        res = optimize_settings(state)
        return res.obs_r, res.obs_s
    return parse_observable(args.obs_r), parse_observable(args.obs_s or default_obs_s(args.state))


def _state_params(args) -> dict:
    _, names = FAMILIES[args.state]
    return {n: getattr(args, n) for n in names}


def _canonical_args(args, keys: Sequence[str]) -> str:
    parts = [args.command]
    for k in keys:
        v = getattr(args, k, None)
        if v is None or v is False:
            continue
        flag = "--" + {"start": "from", "stop": "to", "fig_id": "id"}.get(k, k).replace("_", "-")
        parts.append(flag if v is True else f"{flag} {v}")
    return " ".join(parts)


def _write(path: str | None, text: str, stdout) -> None:
    if path is None:
        stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _render_report(label: str, r: BoundReport, fmt: str) -> str:
    if fmt == "csv":
        return CSV_HEADER + "\n" + csv_row(label, r) + "\n"
    if fmt == "json-lines":
        return json.dumps({"state": label, **r.as_dict()}, sort_keys=True) + "\n"
    rows = [
        ("state", label),
        ("obs_r (theta,phi deg)", f"{math.degrees(r.obs_r.theta):.4f},{math.degrees(r.obs_r.phi):.4f}"),
        ("obs_s (theta,phi deg)", f"{math.degrees(r.obs_s.theta):.4f},{math.degrees(r.obs_s.phi):.4f}"),
        ("side", r.side.value),
        ("L0", fmt6(r.l0)),
        ("L1", fmt6(r.l1)),
        ("L2", fmt6(r.l2)),
        ("L3", fmt6(r.l3)),
        ("L4", fmt6(r.l4)),
        ("LHS_ent", fmt6(r.lhs_entropic)),
        ("LHS_fano", fmt6(r.lhs_fano)),
        ("C^M", fmt6(r.classical_information)),
        ("discord", fmt6(r.discord)),
        ("converged", str(r.converged).lower()),
    ]
    width = max(len(k) for k, _ in rows)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)


def cmd_bounds(args, stdout) -> int:
    state = make_state(args.state, **_state_params(args))
    obs_r, obs_s = _settings(args, state)
    report = full_report(state, obs_r, obs_s, args.side)
    stdout.write(_render_report(state.label, report, args.format))
    return EXIT_OK


def sweep_values(start: float, stop: float, steps: int) -> list[float]:
    return [start + (stop - start) * i / (steps - 1) if i < steps - 1 else stop for i in range(steps)]


def cmd_sweep(args, stdout) -> int:
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    _, names = FAMILIES[args.state]
    if args.param not in names:
        raise UsageError(f"family {args.state!r} has parameters {', '.join(names)}; cannot sweep {args.param!r}")
    params = _state_params(args)
    params[args.param] = 0.0
    missing = [n for n, v in params.items() if v is None]
    if missing:
        raise UsageError(f"missing fixed parameter(s) {', '.join('--' + m for m in missing)}")
    values = sweep_values(args.start, args.stop, args.steps)
    # each family's valid set is convex, so checking the endpoints checks the range
    for v in (args.start, args.stop):
        make_state(args.state, **{**params, args.param: v})

    rows = []
    for v in values:
        state = make_state(args.state, **{**params, args.param: v})
        obs_r, obs_s = _settings(args, state)
        rows.append((fmt6(v), full_report(state, obs_r, obs_s, args.side)))
    keys = ["state", "p", "alpha", "cx", "cy", "cz", "param", "start", "stop", "steps", "obs_r", "obs_s", "optimize_settings", "side"]
    if args.obs_s is None:
        args.obs_s = default_obs_s(args.state)
    _write(args.out, render_csv(rows, _canonical_args(args, keys)), stdout)
    return EXIT_OK


def cmd_figure(args, stdout) -> int:
    if args.fig_id not in (1, 2):
        raise UsageError(f"unknown figure id {args.fig_id}; use 1 or 2")
    fig = figure_data(args.fig_id)
    text = render_csv(fig.groups, _canonical_args(args, ["fig_id"]))
    _write(args.out, text, stdout)
    if args.svg:
        _write(args.svg, render_svg(fig), stdout)
    return EXIT_OK


def cmd_verify(args, stdout) -> int:
    if args.samples < 1:
        raise UsageError("--samples must be at least 1")
    if args.pairs < 1:
        raise UsageError("--pairs must be at least 1")
    tallies = run_verification(args.samples, args.seed, args.tol, args.pairs)
    width = max(len(t.name) for t in tallies)
    failed = False
    for t in tallies:
        status = "PASS" if t.ok else "FAIL"
        stdout.write(f"{status} {t.name.ljust(width)}  {t.passed}/{t.checks}  worst margin {t.worst_margin + 0.0:+.3e}\n")
        for msg in t.failures:
            stdout.write(f"     violation at {msg}\n")
        failed |= not t.ok
    stdout.write(f"{'FAILED' if failed else 'OK'}: samples={args.samples} seed={args.seed} tol={args.tol:g}\n")
    return EXIT_VERIFY if failed else EXIT_OK


COMMANDS = {"bounds": cmd_bounds, "sweep": cmd_sweep, "figure": cmd_figure, "verify": cmd_verify}


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.side = Side(args.side or "B")
    args.format = args.format or "table"
    try:
        return COMMANDS[args.command](args, stdout)
    except (UsageError, EURError) as exc:
        stderr.write(f"eurbounds {args.command}: error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        stderr.write(f"eurbounds {args.command}: I/O error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
