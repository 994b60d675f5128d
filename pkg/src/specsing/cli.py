"""Command-line front end: singularity table, barrier scans, waveguide design/scan, self-checks.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
3 evanescent waveguide mode, 4 solver non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Iterable, Sequence

from .barrier import BarrierParams, barrier_profile
from .errors import (
    AtSingularityError,
    BelowCutoffError,
    NoRootError,
    NoSingularityFoundError,
)
from .scattering import amplitudes, transfer_matrix
from .singularities import singularity
from .verify import SUITES, run_suite
from .waveguide import WaveguideSpec, frequency_scan, singular_design

SCHEMA = "sst-1"

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_CUTOFF = 3
EXIT_SOLVER = 4


class UsageError(Exception):
    pass


def fmt(x: float | None, digits: int = 17) -> str:
    if x is None or not math.isfinite(x):
        return ""
    return f"{x:.{digits}g}"


def log10_or_none(x: float | None) -> float | None:
    return math.log10(x) if x is not None and x > 0.0 else None


def render_csv(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _render_table(fmt_name: str, command: str, columns: Sequence[str], rows: list[list]) -> str:
    # Integers are flags and pass through; floats get 17 significant digits.
    if fmt_name == "json":
        return render_json({"schema": SCHEMA, "command": command, "columns": list(columns), "rows": rows})
    return render_csv(columns, ([v if isinstance(v, int) else fmt(v) for v in row] for row in rows))


def _parse_int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


TABLE1_COLUMNS = ("n", "r_n", "y_n", "ak_n", "a2z_n", "residual")


def cmd_table1(args) -> str:
    rows = []
    for n in args.n:
        rec = singularity(n)
        rows.append((n, rec.r, rec.y, rec.ak, rec.a2z, rec.residual))
    if args.format == "json":
        doc = {
            "schema": SCHEMA,
            "command": "table1",
            "rows": [
                {"n": n, **{c: float(fmt(v, 9)) for c, v in zip(TABLE1_COLUMNS[1:], rest)}}
                for n, *rest in rows
            ],
        }
        return render_json(doc)
    return render_csv(TABLE1_COLUMNS, ([str(n)] + [fmt(v, 9) for v in rest] for n, *rest in rows))


SCAN_COLUMNS = (
    "k", "reT", "imT", "T2", "Rl2", "Rr2", "log10T2", "log10Rl2", "log10Rr2", "diverged_flag",
)


def _grid(lo: float, hi: float, points: int) -> list[float]:
    return [lo + (hi - lo) * i / (points - 1) for i in range(points)]


def cmd_scan(args) -> str:
    if not (0.0 < args.kmin < args.kmax) or args.points < 2:
        raise UsageError("scan needs 0 < kmin < kmax and points >= 2")
    try:
        profile = barrier_profile(BarrierParams(args.a, args.z))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = []
    for k in _grid(args.kmin, args.kmax, args.points):
        m = transfer_matrix(profile, k)
        try:
            amp = amplitudes(m)
        except AtSingularityError:
            rows.append([k] + [None] * 8 + [1])
            continue
        powers = [amp.transmission, amp.reflection_left, amp.reflection_right]
        rows.append([k, amp.t.real, amp.t.imag] + powers + [log10_or_none(v) for v in powers] + [0])
    return _render_table(args.format, "scan", SCAN_COLUMNS, rows)


def cmd_waveguide_design(args) -> str:
    spec = WaveguideSpec(1.0, 1.0, args.m, args.homegap_ev, args.hdelta_ev)
    design = singular_design(args.n, args.m, spec.s, omega=args.homega_ev, alpha=args.alpha_nm)
    doc = {
        "schema": SCHEMA,
        "command": "waveguide design",
        "n": design.n,
        "m": design.m,
        "homega_ev": design.omega_nm,
        "hs_ev": design.s_nm,
        "alpha_nm": design.alpha,
        "beta_nm": design.beta,
        "homegap_ev": args.homegap_ev,
        "hdelta_ev": args.hdelta_ev,
    }
    return render_json(doc)


WAVEGUIDE_SCAN_COLUMNS = (
    "omega_ratio", "T2", "Rl2", "Rr2", "log10T2", "log10Rl2", "log10Rr2",
    "diverged_flag", "below_cutoff_flag",
)


def cmd_waveguide_scan(args) -> str:
    if not (0.0 < args.ratio_min < args.ratio_max) or args.points < 2:
        raise UsageError("waveguide scan needs 0 < ratio-min < ratio-max and points >= 2")
    spec = WaveguideSpec(args.alpha_nm, args.beta_nm, args.m, args.homegap_ev, args.hdelta_ev)
    scan = frequency_scan(spec, args.ratio_min, args.ratio_max, args.points, omega_ref=args.homega_ref_ev)
    if all(row.below_cutoff for row in scan):
        raise BelowCutoffError(
            f"every frequency in the scan is below the TE{spec.m} cutoff {spec.cutoff_energy:.9g} eV"
        )
    rows = []
    for row in scan:
        powers = [row.T2, row.Rl2, row.Rr2]
        rows.append(
            [row.ratio] + powers + [log10_or_none(v) for v in powers]
            + [int(row.diverged), int(row.below_cutoff)]
        )
    return _render_table(args.format, "waveguide scan", WAVEGUIDE_SCAN_COLUMNS, rows)


def cmd_verify(args) -> tuple[str, bool]:
    checks = run_suite(args.suite)
    passed = all(c.passed for c in checks)
    doc = {
        "schema": SCHEMA,
        "command": "verify",
        "suite": args.suite,
        "passed": passed,
        "checks": [c.as_dict() for c in checks],
    }
    return render_json(doc), passed


def _add_output(p: argparse.ArgumentParser, default: str = "csv") -> None:
    p.add_argument("--format", choices=("csv", "json"), default=default)
    p.add_argument("--out", default=None, help="write to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="specsing", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table1", help="spectral singularities of the PT barrier")
    p.add_argument("--n", type=_parse_int_list, default=[0, 1, 2, 10, 100])
    _add_output(p)

    p = sub.add_parser("scan", help="amplitudes of the PT barrier on a k grid")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--z", type=float, required=True)
    p.add_argument("--kmin", type=float, required=True)
    p.add_argument("--kmax", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    _add_output(p)

    p = sub.add_parser("waveguide", help="gain/loss waveguide design and frequency scans")
    wsub = p.add_subparsers(dest="mode", required=True)
    d = wsub.add_parser("design")
    d.add_argument("--n", type=int, default=0)
    d.add_argument("--m", type=int, default=1)
    target = d.add_mutually_exclusive_group(required=True)
    target.add_argument("--homega-ev", type=float)
    target.add_argument("--alpha-nm", type=float)
    d.add_argument("--homegap-ev", type=float, required=True)
    d.add_argument("--hdelta-ev", type=float, required=True)
    d.add_argument("--out", default=None)

    s = wsub.add_parser("scan")
    s.add_argument("--alpha-nm", type=float, required=True)
    s.add_argument("--beta-nm", type=float, required=True)
    s.add_argument("--m", type=int, default=1)
    s.add_argument("--homegap-ev", type=float, required=True)
    s.add_argument("--hdelta-ev", type=float, required=True)
    s.add_argument("--ratio-min", type=float, required=True)
    s.add_argument("--ratio-max", type=float, required=True)
    s.add_argument("--points", type=int, required=True)
    s.add_argument(
        "--homega-ref-ev",
        type=float,
        default=None,
        help="reference energy for omega_ratio (default: omega_{0,m} of the geometry)",
    )
    _add_output(s)

    p = sub.add_parser("verify", help="run invariant checks and print a JSON report")
    p.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    p.add_argument("--out", default=None)
    return parser


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    status = EXIT_OK
    try:
        if args.command == "table1":
            text = cmd_table1(args)
        elif args.command == "scan":
            text = cmd_scan(args)
        elif args.command == "waveguide" and args.mode == "design":
            text = cmd_waveguide_design(args)
        elif args.command == "waveguide":
            text = cmd_waveguide_scan(args)
        else:
            text, passed = cmd_verify(args)
            status = EXIT_OK if passed else EXIT_VERIFY_FAILED
    except BelowCutoffError as exc:
        print(f"specsing: {exc}", file=sys.stderr)
        return EXIT_CUTOFF
    except (NoRootError, NoSingularityFoundError) as exc:
        print(f"specsing: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except (UsageError, ValueError) as exc:
        print(f"specsing: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(text, args.out)
    return status


if __name__ == "__main__":
    sys.exit(main())
