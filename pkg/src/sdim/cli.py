"""Command-line front end.

    sdim sdim <space> [params] [--cutoff M] [--method fit|scan] [--json|--csv]
    sdim verify <suite> [params]
    sdim table [--all] [--json|--csv]

Exit status is 0 iff every report passes; 1 on a failed check, 2 on a usage
error and 3 when the estimator cannot reach a verdict.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import cuntz, moves, spectrum, su2, suq, torus
from .gt import enumerate_gt, enumerate_young, gt_count, truncation

log = logging.getLogger("sdim")

SPACES = ("su2-classical", "torus", "suq-group", "suq-sphere", "podles", "cuntz")
SUITES = ("commutators", "axis", "paths", "weyl", "shells")
CSV_HEADER = ["space", "params", "estimate", "expected", "pass", "seconds"]

# |estimate - expected| allowed per space
TOLERANCE = {
    "su2-classical": 0.2,
    "torus": 0.2,
    "suq-group": 0.3,
    "suq-sphere": 0.3,
    "podles": 0.0,
    "cuntz": 0.0,
}


@dataclass
class RunReport:
    space: str
    params: dict
    cutoff: int | None
    method: str | None
    estimate: float | str | None
    expected: float | str | None
    passed: bool
    diagnostics: dict = field(default_factory=dict)
    seconds: float | None = None

    def to_dict(self) -> dict:
        return {
            "space": self.space,
            "params": self.params,
            "cutoff": self.cutoff,
            "method": self.method,
            "estimate": _jsonable(self.estimate),
            "expected": _jsonable(self.expected),
            "pass": self.passed,
            "diagnostics": _jsonable(self.diagnostics),
            "seconds": self.seconds,
        }

    def csv_row(self) -> list[str]:
        params = ";".join(f"{k}={v}" for k, v in self.params.items())
        return [
            self.space,
            params,
            _fmt(self.estimate),
            _fmt(self.expected),
            "true" if self.passed else "false",
            "" if self.seconds is None else f"{self.seconds:.3f}",
        ]


def _jsonable(x):
    if isinstance(x, float):
        if math.isinf(x):
            return "infinity" if x > 0 else "-infinity"
        if math.isnan(x):
            return None
        return x
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (str, int, bool)) or x is None:
        return x
    return str(x)


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return "infinity" if math.isinf(x) else f"{x:.4f}"
    return str(x)


# --- spectral dimension ------------------------------------------------------


def build_model(space: str, params: dict) -> spectrum.SpectrumModel:
    if space == "su2-classical":
        return su2.su2_spectrum()
    if space == "torus":
        return torus.torus_spectrum(params["n"])
    if space == "suq-group":
        return suq.group_spectrum(params["l"])
    if space == "suq-sphere":
        return suq.sphere_spectrum(params["l"])
    if space == "podles":
        return suq.podles_spectrum(params["q"])
    if space == "cuntz":
        return cuntz.cuntz_spectrum(params["n"])
    raise ValueError(f"unknown space {space!r}")


def validate_params(space: str, params: dict) -> None:
    if space in ("torus", "cuntz"):
        lo = 1 if space == "torus" else 2
        if params.get("n") is None or params["n"] < lo:
            raise ValueError(f"{space} needs --n >= {lo}")
    if space in ("suq-group", "suq-sphere"):
        lo = 1 if space == "suq-group" else 2
        if params.get("l") is None or params["l"] < lo:
            raise ValueError(f"{space} needs --l >= {lo}")
    if space == "podles" and not (params.get("q") is not None and 0 < params["q"] < 1):
        raise ValueError("podles needs --q in (0, 1)")


def run_sdim(space: str, params: dict, cutoff: int | None = None, method: str = "fit",
             timing: bool = False) -> RunReport:
    """Estimate the spectral dimension of one space and compare to its closed form."""
    validate_params(space, params)
    start = time.perf_counter()
    model = build_model(space, params)
    cutoff = model.default_cutoff if cutoff is None else cutoff
    est = spectrum.estimate_sdim(model, method=method, cutoff=cutoff)
    expected = model.expected_sdim
    if math.isinf(expected):
        ok = est.is_infinite
    else:
        ok = not est.is_infinite and abs(est.value - expected) <= TOLERANCE[space] + 1e-12
    diagnostics = dict(est.diagnostics)
    diagnostics["uncertainty"] = est.uncertainty
    diagnostics["tolerance"] = TOLERANCE[space]
    diagnostics["model"] = model.label
    if model.notes:
        diagnostics["notes"] = list(model.notes)
    log.info("%s %s cutoff=%d: estimate %s (expected %s)", space, params, cutoff, est.value, expected)
    seconds = time.perf_counter() - start if timing else None
    return RunReport(space, params, cutoff, est.method, est.value, expected, ok, diagnostics, seconds)


TABLE_ROWS = [
    ("su2-classical", {}),
    ("torus", {"n": 2}),
    ("suq-group", {"l": 2}),
    ("suq-sphere", {"l": 2}),
    ("podles", {"q": 0.5}),
    ("cuntz", {"n": 2}),
]

TABLE_ROWS_ALL = (
    [("su2-classical", {})]
    + [("torus", {"n": n}) for n in (1, 2, 3)]
    + [("suq-group", {"l": l}) for l in (1, 2, 3)]
    + [("suq-sphere", {"l": l}) for l in (2, 3)]
    + [("podles", {"q": q}) for q in (0.3, 0.5, 0.8)]
    + [("cuntz", {"n": n}) for n in (2, 3)]
)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("SDIM_THREADS", "1")))
    except ValueError:
        return 1


def run_table(all_rows: bool = False, method: str = "fit", timing: bool = False) -> list[RunReport]:
    rows = TABLE_ROWS_ALL if all_rows else TABLE_ROWS
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        # map preserves the declared order regardless of completion order
        return list(pool.map(lambda r: run_sdim(r[0], dict(r[1]), method=method, timing=timing), rows))


# --- verification suites -----------------------------------------------------


def _report(suite, params, ok, diagnostics, start, timing, estimate=None, expected=None, cutoff=None):
    seconds = time.perf_counter() - start if timing else None
    return RunReport(f"verify:{suite}", params, cutoff, None, estimate, expected, ok, diagnostics, seconds)


def verify_commutators(target: str, d_name: str, cutoff: int, l: int, q: float, timing=False) -> RunReport:
    start = time.perf_counter()
    params = {"target": target, "d": d_name}
    if target == "su2-classical":
        funcs = {"n": lambda n, i: n, "n2": lambda n, i: n * n, "const": lambda n, i: 1.0,
                 "n+i/2": lambda n, i: n + i / 2}
        d = funcs[d_name]
        levels = [N / 2 for N in range(2, 2 * cutoff + 1)]
        norms = [(N, su2.su2_commutator_norm(d, "alpha", N), su2.su2_commutator_norm(d, "beta", N))
                 for N in levels if N == int(N)]
        worst = max(max(a, b) for _, a, b in norms)
        ok = worst <= 1.0
        diag = {"norms": [[N, a, b] for N, a, b in norms], "bound": 1.0}
        return _report("commutators", params, ok, diag, start, timing, worst, None, cutoff)
    if target == "suq-group":
        params.update(l=l, q=q)
        funcs = {"r11": lambda r: float(r.r11), "2^r11": lambda r: 2.0**r.r11}
        cert = suq.dirac_r11_certificate(l, cutoff, q, d=funcs[d_name])
        diag = {"checked": cert.checked, "bound": cert.bound,
                "witness": None if cert.witness is None else
                [cert.witness[0], [list(row) for row in cert.witness[1].rows], list(cert.witness[2])]}
        return _report("commutators", params, cert.passed, diag, start, timing, cert.max_value, None, cutoff)
    if target == "podles":
        params.update(q=q)
        funcs = {"q^-k": lambda k: q**-k, "q^-2k": lambda k: q ** (-2 * k), "zero": lambda k: 0.0}
        # stabilization is judged on the last few truncations
        rows = suq.podles_commutator_norms(q, cutoff, funcs[d_name], range(max(1, cutoff - 4), cutoff + 1))
        diffs = [max(abs(a2 - a1), abs(b2 - b1)) for (_, a1, b1), (_, a2, b2) in zip(rows, rows[1:])]
        last = diffs[-1] if diffs else 0.0
        ok = last < 1e-6
        diag = {"norms": [list(r) for r in rows], "last_difference": last}
        return _report("commutators", params, ok, diag, start, timing, rows[-1][1], None, cutoff)
    raise ValueError(f"unknown commutator target {target!r}")


def verify_axis(l: int, max_entry: int, timing=False) -> RunReport:
    start = time.perf_counter()
    tabs = truncation(l, max_entry)
    failures = []
    axis = [r for r in tabs if moves.axis_member(r)]
    for r in tabs:
        end, path = moves.axis_projection(r)
        if not (moves.axis_member(end) and moves.same_free_plane(r, end) and path.is_consistent()):
            failures.append([list(row) for row in r.rows])
    clashes = 0
    for x in range(len(axis)):
        for y in range(x + 1, len(axis)):
            if moves.same_free_plane(axis[x], axis[y]):
                clashes += 1
    ok = not failures and clashes == 0
    diag = {"tableaux": len(tabs), "axis_members": len(axis), "covering_failures": failures[:5],
            "disjointness_clashes": clashes}
    return _report("axis", {"l": l, "max_entry": max_entry}, ok, diag, start, timing)


def verify_paths(l: int, max_entry: int, samples: int, seed: int, timing=False) -> RunReport:
    start = time.perf_counter()
    rng = random.Random(seed)
    tabs = truncation(l, max_entry)
    picks = [rng.choice(tabs) for _ in range(samples)]
    worst, failures = 0.0, []
    for r in picks:
        path = moves.path_to_zero(r)
        bound = l * r.r11
        ok = path.end.is_zero() and len(path) <= bound and path.is_consistent()
        if bound:
            worst = max(worst, len(path) / bound)
        if not ok:
            failures.append([list(row) for row in r.rows])
    diag = {"samples": samples, "seed": seed, "max_length_over_bound": worst, "failures": failures[:5]}
    return _report("paths", {"l": l, "max_entry": max_entry}, not failures, diag, start, timing)


def verify_weyl(l: int, n_max: int, timing=False) -> RunReport:
    start = time.perf_counter()
    mismatches, checked = [], 0
    for n in range(n_max + 1):
        for lam in enumerate_young(l, n):
            counts = (len(enumerate_gt(lam)), gt_count(lam), suq.weyl_dim(lam))
            checked += 1
            if len(set(counts)) != 1:
                mismatches.append([list(lam), list(counts)])
    diag = {"young_tableaux": checked, "mismatches": mismatches[:5]}
    return _report("weyl", {"l": l, "n_max": n_max}, not mismatches, diag, start, timing)


def verify_shells(n_max: int, m_max: int, timing=False) -> RunReport:
    start = time.perf_counter()
    mismatches = []
    for n in range(1, n_max + 1):
        for m in range(m_max + 1):
            a, b = torus.shell_count(n, m), torus.shell_count_bruteforce(n, m)
            if a != b:
                mismatches.append([n, m, a, b])
    diag = {"mismatches": mismatches}
    return _report("shells", {"n_max": n_max, "m_max": m_max}, not mismatches, diag, start, timing)


# --- argument parsing --------------------------------------------------------


def _add_output(p: argparse.ArgumentParser) -> None:
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="emit JSON")
    fmt.add_argument("--csv", action="store_true", help="emit CSV")
    p.add_argument("--out", help="also write the output to this file")
    p.add_argument("--timing", action="store_true", help="record wall time in reports")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sdim", description="Spectral dimension of homogeneous spaces.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sdim", help="estimate the spectral dimension of one space")
    p.add_argument("space", choices=SPACES)
    p.add_argument("--l", type=int, help="rank l for suq-group (>= 1) and suq-sphere (>= 2)")
    p.add_argument("--n", type=int, help="torus dimension or Cuntz index")
    p.add_argument("--q", type=float, help="deformation parameter in (0, 1)")
    p.add_argument("--cutoff", type=int)
    p.add_argument("--method", choices=("fit", "scan"), default="fit")
    _add_output(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("target", nargs="?", default="su2-classical",
                   help="commutators only: su2-classical, suq-group or podles")
    p.add_argument("--d", default=None, help="Dirac choice for the commutator suite")
    p.add_argument("--l", type=int, default=2)
    p.add_argument("--q", type=float, default=0.5)
    p.add_argument("--cutoff", type=int, default=None)
    p.add_argument("--max-entry", type=int, default=4)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--m-max", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=100)
    _add_output(p)

    p = sub.add_parser("table", help="summary table of all spaces")
    p.add_argument("--all", action="store_true", help="every parameter variant, not one per space")
    p.add_argument("--method", choices=("fit", "scan"), default="fit")
    _add_output(p)
    return parser


_D_DEFAULTS = {"su2-classical": "n", "suq-group": "r11", "podles": "q^-k"}
_CUTOFF_DEFAULTS = {"su2-classical": 12, "suq-group": 5, "podles": 40}


def _run_verify(args) -> RunReport:
    t = args.timing
    if args.suite == "commutators":
        if args.target not in _D_DEFAULTS:
            raise ValueError(f"unknown commutator target {args.target!r}")
        d = args.d or _D_DEFAULTS[args.target]
        cutoff = args.cutoff or _CUTOFF_DEFAULTS[args.target]
        return verify_commutators(args.target, d, cutoff, args.l, args.q, t)
    if args.suite == "axis":
        return verify_axis(args.l, args.max_entry, t)
    if args.suite == "paths":
        return verify_paths(args.l, args.max_entry, args.samples, args.seed, t)
    if args.suite == "weyl":
        return verify_weyl(args.l, args.n_max if args.n_max is not None else 6, t)
    return verify_shells(args.n_max if args.n_max is not None else 4, args.m_max, t)


def render(reports: list[RunReport], as_json: bool, as_csv: bool, single: bool) -> str:
    if as_json:
        data = reports[0].to_dict() if single else [r.to_dict() for r in reports]
        return json.dumps(data, indent=2) + "\n"
    if as_csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in reports:
            w.writerow(r.csv_row())
        return buf.getvalue()
    lines = [f"{'space':<22}{'params':<22}{'estimate':>12}{'expected':>12}  pass"]
    for r in reports:
        params = ",".join(f"{k}={v}" for k, v in r.params.items())
        lines.append(f"{r.space:<22}{params:<22}{_fmt(r.estimate):>12}{_fmt(r.expected):>12}  "
                     f"{'PASS' if r.passed else 'FAIL'}")
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        if args.command == "sdim":
            params = {k: getattr(args, k) for k in ("l", "n", "q") if getattr(args, k) is not None}
            try:
                validate_params(args.space, params)
            except ValueError as exc:
                parser.error(str(exc))
            reports = [run_sdim(args.space, params, args.cutoff, args.method, args.timing)]
        elif args.command == "verify":
            reports = [_run_verify(args)]
        else:
            reports = run_table(args.all, args.method, args.timing)
    except spectrum.EstimationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(json.dumps(_jsonable(exc.diagnostics), indent=2), file=sys.stderr)
        return 3
    except (ValueError, KeyError) as exc:
        parser.error(str(exc))

    text = render(reports, args.json, args.csv, single=args.command != "table")
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    for r in reports:
        if not r.passed:
            print(f"{r.space} {r.params} failed: {json.dumps(_jsonable(r.diagnostics))[:400]}", file=sys.stderr)
    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
