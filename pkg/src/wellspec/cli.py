"""Command-line front end: spectra, dispersion curves, ground-state sweeps, checks.

Exit codes: 0 success, 2 invalid flags, 3 solver failure, 4 check failure.
Outputs are plot-ready CSV (stable headers) or a JSON run report with a
versioned ``schema`` field; no images are produced.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import oracle, spectrum, wavefn
from .errors import SolverFailure
from .model import DimensionlessConfig

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_SOLVER = 3
EXIT_CHECK = 4

DISPERSION_HEADER = ["kL_over_pi", "rhs", "is_pole"]
SWEEP_HEADER = ["f", "sign", "rho", "E_over_EB"]
SPECTRUM_HEADER = ["kind", "k_over_pi", "energy", "residual"]


def _fmt(x: float) -> str:
    return format(x, ".12g")


@dataclass
class RunReport:
    """Machine-readable result of a spectrum or check run."""

    schema: int
    config: dict
    k_max: float
    entries: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)
    timing_s: float = 0.0

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "RunReport":
        return cls(**d)


def _config_echo(config: DimensionlessConfig) -> dict:
    echo = {"rho": config.rho, "f": config.f}
    if config.is_exact:
        echo["rho_exact"] = {"p": config.rational.p, "n": config.rational.n}
    return echo


def _entry_dict(s: spectrum.EigenState) -> dict:
    d = {"kind": s.kind, "k": s.k, "energy": s.energy, "residual": s.residual}
    if s.kind == spectrum.NODAL:
        d["n"] = s.n
        d["j"] = s.j
    return d


def _parse_rho_flags(args) -> DimensionlessConfig:
    if args.rho is not None:
        p_str, _, n_str = args.rho.partition("/")
        try:
            p, n = int(p_str), int(n_str)
        except ValueError:
            raise argparse.ArgumentTypeError(f"--rho expects P/N, got {args.rho!r}")
        return DimensionlessConfig.exact(p, n, args.f)
    return DimensionlessConfig.generic(args.rho_real, args.f)


def _open_out(path: str):
    if path == "-":
        return sys.stdout, False
    return open(path, "w", newline=""), True


def _write_csv(path: str, header: list[str], rows: list[list[str]]) -> None:
    fh, close = _open_out(path)
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    finally:
        if close:
            fh.close()


def _thread_count() -> int:
    env = os.environ.get("WELLSPEC_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def cmd_spectrum(args) -> int:
    t0 = time.perf_counter()
    config = _parse_rho_flags(args)
    k_max = args.kmax * math.pi
    spec = spectrum.full_spectrum(config, k_max)
    entries = spec.entries if args.count is None else spec.entries[: args.count]
    if args.format == "csv":
        rows = [[s.kind, _fmt(s.k / math.pi), _fmt(s.energy), _fmt(s.residual)] for s in entries]
        _write_csv(args.out, SPECTRUM_HEADER, rows)
    else:
        report = RunReport(
            schema=SCHEMA_VERSION,
            config=_config_echo(config),
            k_max=k_max,
            entries=[_entry_dict(s) for s in entries],
            timing_s=time.perf_counter() - t0,
        )
        fh, close = _open_out(args.out)
        try:
            json.dump(report.to_dict(), fh, indent=2)
            fh.write("\n")
        finally:
            if close:
                fh.close()
    return EXIT_OK


def cmd_dispersion_curve(args) -> int:
    if "/" in args.rho:
        p_str, _, n_str = args.rho.partition("/")
        rho = int(p_str) / int(n_str)
    else:
        rho = float(args.rho)
    n_samples = int(round(args.kmax * args.samples_per_pi))
    rows = []
    for i in range(n_samples + 1):
        k_over_pi = i / args.samples_per_pi
        val = spectrum.rhs_positive(k_over_pi * math.pi, rho)
        if isinstance(val, spectrum.PoleMarker):
            rows.append([_fmt(k_over_pi), "", "1"])
        else:
            rows.append([_fmt(k_over_pi), _fmt(val), "0"])
    _write_csv(args.out, DISPERSION_HEADER, rows)
    return EXIT_OK


def _sweep_point(f_mag: float, sign: str, rho: float) -> tuple[float, str, float, float]:
    f = f_mag if sign == "attract" else -f_mag
    config = DimensionlessConfig.generic(rho, f)
    gs = spectrum.ground_state(config)
    return (f_mag, sign, rho, gs.energy * f_mag * f_mag)


def cmd_sweep_ground(args) -> int:
    f_list = [float(tok) for tok in args.f_list.split(",") if tok]
    signs = ["attract", "repel"] if args.signs == "both" else [args.signs]
    rhos = np.linspace(0.005, 0.995, args.rho_steps)
    points = [(f_mag, sign, float(rho)) for f_mag in f_list for sign in signs for rho in rhos]
    with ThreadPoolExecutor(max_workers=_thread_count()) as pool:
        results = list(pool.map(lambda p: _sweep_point(*p), points))
    results.sort(key=lambda r: (r[0], r[1], r[2]))
    rows = [[_fmt(f), sign, _fmt(rho), _fmt(e)] for f, sign, rho, e in results]
    _write_csv(args.out, SWEEP_HEADER, rows)
    return EXIT_OK


def _run_checks(args, config: DimensionlessConfig) -> tuple[dict, bool]:
    spec = spectrum.full_spectrum(config, args.kmax * math.pi)
    states = spec.entries[: args.count]
    if args.perturb:
        states = [
            spectrum.EigenState(s.kind, s.k + args.perturb, (s.k + args.perturb) ** 2, s.residual)
            if s.kind == spectrum.ORDINARY_POSITIVE
            else s
            for s in states
        ]
    waves = [wavefn.build_wave(s, config, check=not args.perturb) for s in states]

    n_gram = min(len(waves), 12)
    gram = wavefn.gram_matrix(waves[:n_gram])
    off = gram - np.eye(n_gram)
    max_offdiag = float(np.abs(off - np.diag(np.diag(off))).max()) if n_gram > 1 else 0.0
    max_diag_defect = float(np.abs(np.diag(gram) - 1.0).max())

    defects = [wavefn.matching_defect(w, config) for w in waves]
    max_cont = max(d[0] for d in defects)
    max_jump = max(d[1] for d in defects)

    exact_e = [s.energy for s in spec.entries[: args.count]]
    oracle_e = oracle.extrapolated_oracle_spectrum(config, len(exact_e), args.oracle_m)
    deltas = [abs(o - e) for o, e in zip(oracle_e, exact_e)]
    oracle_ok = all(
        d <= max(args.oracle_rtol * abs(e), args.oracle_atol) for d, e in zip(deltas, exact_e)
    )

    checks = {
        "gram_max_offdiag": {"value": max_offdiag, "threshold": 1e-9, "ok": max_offdiag <= 1e-9},
        "gram_max_diag_defect": {"value": max_diag_defect, "threshold": 1e-12, "ok": max_diag_defect <= 1e-12},
        "continuity_defect": {"value": max_cont, "threshold": 1e-10, "ok": max_cont <= 1e-10},
        "jump_defect": {"value": max_jump, "threshold": 1e-8, "ok": max_jump <= 1e-8},
        "oracle_max_delta": {"value": max(deltas), "threshold": None, "ok": oracle_ok},
    }
    return checks, all(c["ok"] for c in checks.values())


def cmd_check(args) -> int:
    t0 = time.perf_counter()
    config = _parse_rho_flags(args)
    checks, ok = _run_checks(args, config)
    for name, c in checks.items():
        status = "PASS" if c["ok"] else "FAIL"
        thr = "" if c["threshold"] is None else f" (<= {c['threshold']:g})"
        print(f"{status}  {name}: {c['value']:.3e}{thr}")
    if args.out:
        report = RunReport(
            schema=SCHEMA_VERSION,
            config=_config_echo(config),
            k_max=args.kmax * math.pi,
            checks=checks,
            timing_s=time.perf_counter() - t0,
        )
        with open(args.out, "w") as fh:
            json.dump(report.to_dict(), fh, indent=2)
            fh.write("\n")
    return EXIT_OK if ok else EXIT_CHECK


def cmd_gnuplot_script(args) -> int:
    if args.figure == 1:
        script = (
            f'set datafile separator ","\n'
            f"set xlabel 'kL/pi'\nset ylabel 'RHS'\nset yrange [-6:6]\n"
            f"plot '{args.csv}' every ::1 using 1:2 with lines title 'dispersion RHS'\n"
        )
    else:
        script = (
            f'set datafile separator ","\n'
            f"set xlabel 'rho'\nset ylabel 'E/E_B'\n"
            f"plot '{args.csv}' every ::1 using 3:4 with points title 'ground state'\n"
        )
    fh, close = _open_out(args.out)
    try:
        fh.write(script)
    finally:
        if close:
            fh.close()
    return EXIT_OK


def _add_rho_f_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--rho", help="exact rational position P/N")
    group.add_argument("--rho-real", type=float, help="generic real position in (0,1)")
    parser.add_argument("--f", type=float, required=True, help="dimensionless coupling Lambda/L")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wellspec", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_spec = sub.add_parser("spectrum", help="solve and emit the sorted spectrum")
    _add_rho_f_flags(p_spec)
    p_spec.add_argument("--kmax", type=float, default=20.0, help="scan ceiling in units of pi")
    p_spec.add_argument("--count", type=int, default=None, help="truncate output to N entries")
    p_spec.add_argument("--format", choices=["csv", "json"], default="csv")
    p_spec.add_argument("--out", default="-")
    p_spec.set_defaults(func=cmd_spectrum)

    p_disp = sub.add_parser("dispersion-curve", help="emit the ratio-form dispersion curve")
    p_disp.add_argument("--rho", required=True, help="position, P/N or real")
    p_disp.add_argument("--kmax", type=float, default=9.0, help="ceiling in units of pi")
    p_disp.add_argument("--samples-per-pi", type=int, default=400)
    p_disp.add_argument("--out", default="-")
    p_disp.set_defaults(func=cmd_dispersion_curve)

    p_sweep = sub.add_parser("sweep-ground", help="ground-state energy across positions")
    p_sweep.add_argument("--f-list", default="0.1,0.4,0.5")
    p_sweep.add_argument("--signs", choices=["both", "attract", "repel"], default="both")
    p_sweep.add_argument("--rho-steps", type=int, default=199)
    p_sweep.add_argument("--out", default="-")
    p_sweep.set_defaults(func=cmd_sweep_ground)

    p_check = sub.add_parser("check", help="orthonormality, matching, and oracle checks")
    _add_rho_f_flags(p_check)
    p_check.add_argument("--count", type=int, default=8)
    p_check.add_argument("--kmax", type=float, default=20.0)
    p_check.add_argument("--oracle-m", type=int, default=1000)
    p_check.add_argument("--oracle-rtol", type=float, default=1e-5)
    p_check.add_argument("--oracle-atol", type=float, default=1e-3)
    p_check.add_argument("--perturb", type=float, default=0.0, help="shift positive roots to self-test the checker")
    p_check.add_argument("--out", default=None, help="optional JSON report path")
    p_check.set_defaults(func=cmd_check)

    p_gp = sub.add_parser("gnuplot-script", help="emit a gnuplot script for a CSV (convenience)")
    p_gp.add_argument("--figure", type=int, choices=[1, 2], required=True)
    p_gp.add_argument("--csv", required=True)
    p_gp.add_argument("--out", default="-")
    p_gp.set_defaults(func=cmd_gnuplot_script)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SolverFailure as exc:
        msg = f"solver failure: {exc}"
        if exc.bracket is not None:
            msg += f" (bracket {exc.bracket})"
        print(msg, file=sys.stderr)
        return EXIT_SOLVER
    except (ValueError, argparse.ArgumentTypeError) as exc:
        print(f"invalid arguments: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
