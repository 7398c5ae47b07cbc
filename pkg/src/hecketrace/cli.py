"""Command line driver: ``hecke verify|trace|class-number|oracle|build|dump-descriptors``.

Exit status: 0 all checks pass, 1 some check failed, 2 usage or
configuration error (including a corrupt cache), 3 internal assertion.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .algebra import RingElement
from .classnumbers import hurwitz_value, kronecker_hurwitz_check
from .descriptors import DESCRIPTORS
from .elements import build_wTn, build_wTn_alt
from .periods import eisenstein_eigen_check, trace_formula_rhs, trace_on_Vw, trace_on_Ww
from .qexp import trace_oracle
from .report import CheckReport, _jsonable
from .verify import (
    verify_A,
    verify_A_merel,
    verify_B,
    verify_class_sums,
    verify_coset_sums,
    verify_eq14,
    verify_eq18,
    verify_prop5,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

ELEMENT_CHECKS = ("A", "merel", "B", "coset", "class", "alt", "eisenstein", "trace")
PLAIN_CHECKS = ("kh", "eq14", "prop5", "eq18")
ALL_CHECKS = ELEMENT_CHECKS + PLAIN_CHECKS


class ConfigError(Exception):
    pass


class CacheError(Exception):
    def __init__(self, path, detail):
        super().__init__(f"{path}: {detail}")
        self.path = str(path)
        self.detail = detail


# -- cache ---------------------------------------------------------------------

def cache_dir() -> Path | None:
    d = os.environ.get("HECKE_CACHE_DIR")
    return Path(d) if d else None


def _cache_path(d: Path, n: int, alt: bool) -> Path:
    return d / (f"wT{'alt' if alt else ''}-{n}.ringelt.json")


def load_element(n: int, alt: bool = False) -> RingElement:
    """build_wTn(n), read from or written to HECKE_CACHE_DIR when it is set."""
    build = build_wTn_alt if alt else build_wTn
    d = cache_dir()
    if d is None:
        return build(n)
    path = _cache_path(d, n, alt)
    if path.exists():
        try:
            xi = RingElement.from_json(path.read_text())
        except (ValueError, KeyError, TypeError) as e:
            raise CacheError(path, str(e)) from None
        if xi and xi.dets() != {n}:
            raise CacheError(path, f"cached element has determinants {sorted(xi.dets())}, expected {n}")
        return xi
    xi = build(n)
    d.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        fh.write(xi.to_json())
    os.replace(tmp, path)
    return xi


# -- verify --------------------------------------------------------------------

@dataclass
class RunConfig:
    n_min: int
    n_max: int
    checks: tuple[str, ...]
    weights: tuple[int, ...]
    output: str | None
    jobs: int

    def validate(self):
        if self.n_min < 1 or self.n_max < self.n_min:
            raise ConfigError(f"bad range n-min={self.n_min} n-max={self.n_max}")
        unknown = [c for c in self.checks if c not in ALL_CHECKS]
        if unknown:
            raise ConfigError(f"unknown checks {unknown}; known: {','.join(ALL_CHECKS)}")
        if not self.checks:
            raise ConfigError("no checks selected")
        bad_w = [w for w in self.weights if w < 2 or w % 2]
        if bad_w:
            raise ConfigError(f"weights must be even and >= 2: {bad_w}")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")


def _trace_row_report(xi, n, w):
    k = w + 2
    trS, trM = trace_oracle(k, n)
    rhs = trace_formula_rhs(w, n)
    vw = trace_on_Vw(xi, w)
    ok = rhs == vw == trS + trM
    return CheckReport("trace", n, ok, None if ok else {"k": k, "rhs": rhs, "Vw": vw, "oracle": trS + trM},
                       details={"k": k, "value": rhs})


def run_task(check: str, n: int, element_json: str | None, weights: tuple[int, ...]) -> list[dict]:
    xi = RingElement.from_json(element_json) if element_json is not None else None
    subject = f"wT{n}"
    if check == "A":
        reps = [verify_A(xi, n, subject)]
    elif check == "merel":
        reps = [verify_A_merel(xi, subject)]
    elif check == "B":
        reps = [verify_B(xi, subject)]
    elif check == "coset":
        reps = [verify_coset_sums(xi, n, subject)]
    elif check == "class":
        reps = [verify_class_sums(xi, n, subject)]
    elif check == "alt":
        same = build_wTn_alt(n) == xi
        reps = [CheckReport("alt", n, same, None if same else {"reason": "constructions differ"}, subject)]
    elif check == "eisenstein":
        reps = [eisenstein_eigen_check(n, w) for w in weights]
    elif check == "trace":
        reps = [_trace_row_report(xi, n, w) for w in weights]
    elif check == "kh":
        reps = [kronecker_hurwitz_check(n)]
    elif check == "eq14":
        reps = [verify_eq14(n)]
    elif check == "prop5":
        reps = [verify_prop5(n)]
    elif check == "eq18":
        reps = [verify_eq18(n)]
    else:  # validated earlier
        raise AssertionError(check)
    return [r.to_json_obj() for r in reps]


def cmd_verify(cfg: RunConfig) -> int:
    cfg.validate()
    ns = range(cfg.n_min, cfg.n_max + 1)
    elements = {}
    if any(c in ELEMENT_CHECKS for c in cfg.checks):
        # everything is loaded before any check runs, so a bad cache aborts cleanly
        elements = {n: load_element(n).to_json() for n in ns}
    tasks = [(c, n, elements.get(n) if c in ELEMENT_CHECKS else None, cfg.weights)
             for c in cfg.checks for n in ns]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as ex:
            results = list(ex.map(run_task, *zip(*tasks)))
    else:
        results = [run_task(*t) for t in tasks]
    reports = [r for rs in results for r in rs]
    text = json.dumps(reports, indent=1, sort_keys=True) + "\n"
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)
    ok = all(r["pass"] for r in reports)
    failed = sum(not r["pass"] for r in reports)
    print(f"{len(reports) - failed}/{len(reports)} checks passed", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


# -- trace ---------------------------------------------------------------------

TRACE_FIELDS = ("k", "n", "lhs_oracle", "trS", "trM", "rhs_formula", "Vw", "Ww", "agree")


def trace_rows(weights, ns, side: str) -> list[dict]:
    rows = []
    for w in weights:
        if w < 2 or w % 2:
            raise ConfigError(f"weight must be even and >= 2, got {w}")
        for n in ns:
            row = {"k": w + 2, "n": n}
            vals = []
            if side in ("lhs", "both"):
                trS, trM = trace_oracle(w + 2, n)
                row.update(lhs_oracle=trS + trM, trS=trS, trM=trM)
                vals.append(trS + trM)
            if side in ("rhs", "both"):
                row["rhs_formula"] = trace_formula_rhs(w, n)
                vals.append(row["rhs_formula"])
            if side == "both":
                xi = load_element(n)
                row["Vw"] = trace_on_Vw(xi, w)
                row["Ww"] = trace_on_Ww(xi, w)
                vals += [row["Vw"], row["Ww"]]
            row["agree"] = len(set(vals)) == 1
            rows.append(row)
    return rows


def format_trace(rows, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_jsonable(rows), indent=1, sort_keys=True) + "\n"
    buf = io.StringIO()
    wr = csv.DictWriter(buf, fieldnames=TRACE_FIELDS, lineterminator="\n")
    wr.writeheader()
    for r in rows:
        wr.writerow({k: ("" if k not in r else str(r[k]).lower() if isinstance(r[k], bool) else str(r[k]))
                     for k in TRACE_FIELDS})
    return buf.getvalue()


# -- argument parsing --------------------------------------------------------------

def _int_list(text: str) -> tuple[int, ...]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return tuple(out)


def _int_list_arg(text: str):
    try:
        return _int_list(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer list: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hecke", description="Exact checks of explicit Hecke elements.")
    sub = p.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("verify", help="run membership and identity checks for n <= n-max")
    v.add_argument("--n-max", type=int, required=True)
    v.add_argument("--n-min", type=int, default=1)
    v.add_argument("--checks", default="A,B,coset,class",
                   help=f"comma list from {','.join(ALL_CHECKS)}")
    v.add_argument("--weights", type=_int_list_arg, default=(2, 4, 6, 8, 10),
                   help="even weights w for the eisenstein and trace checks, e.g. 2-20 step via list")
    v.add_argument("--output", "-o")
    v.add_argument("--jobs", "-j", type=int, default=1)

    t = sub.add_parser("trace", help="both sides of the trace formula")
    t.add_argument("--weight", "-w", type=_int_list_arg, required=True, help="w (k = w + 2); list allowed")
    t.add_argument("--n", type=_int_list_arg, required=True, help="n or a list/range like 1-5")
    t.add_argument("--side", choices=("lhs", "rhs", "both"), default="both")
    t.add_argument("--format", choices=("json", "csv"), default="json")
    t.add_argument("--output", "-o")

    c = sub.add_parser("class-number", help="Hurwitz class number H(D)")
    c.add_argument("--D", type=int, required=True)

    o = sub.add_parser("oracle", help="traces of T_n on S_k and M_k from q-expansions")
    o.add_argument("--k", type=int, required=True)
    o.add_argument("--n", type=int, required=True)

    b = sub.add_parser("build", help="print the det-n element in ringelt-v1 JSON")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--alt", action="store_true", help="use the alternative construction")
    b.add_argument("--output", "-o")

    sub.add_parser("dump-descriptors", help="print the descriptor table as JSON")
    return p


def _emit(text: str, output: str | None):
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _dispatch(args) -> int:
    if args.cmd == "verify":
        cfg = RunConfig(args.n_min, args.n_max,
                        tuple(x.strip() for x in args.checks.split(",") if x.strip()),
                        args.weights, args.output, args.jobs)
        return cmd_verify(cfg)
    if args.cmd == "trace":
        if any(n < 1 for n in args.n):
            raise ConfigError("n must be positive")
        rows = trace_rows(args.weight, args.n, args.side)
        _emit(format_trace(rows, args.format), args.output)
        return EXIT_OK if all(r["agree"] for r in rows) else EXIT_FAIL
    if args.cmd == "class-number":
        hv = hurwitz_value(args.D)
        _emit(json.dumps({"D": hv.D, "H": _jsonable(hv.value),
                          "forms": [list(f) for f in hv.witness_forms]}, sort_keys=True) + "\n", None)
        return EXIT_OK
    if args.cmd == "oracle":
        if args.k < 4 or args.k % 2 or args.n < 1:
            raise ConfigError("need even k >= 4 and n >= 1")
        trS, trM = trace_oracle(args.k, args.n)
        _emit(json.dumps({"k": args.k, "n": args.n, "trS": _jsonable(trS), "trM": _jsonable(trM)},
                         sort_keys=True) + "\n", None)
        return EXIT_OK
    if args.cmd == "build":
        if args.n < 1:
            raise ConfigError("n must be positive")
        _emit(load_element(args.n, args.alt).to_json() + "\n", args.output)
        return EXIT_OK
    if args.cmd == "dump-descriptors":
        _emit(json.dumps([d.to_json_obj() for d in DESCRIPTORS.values()], indent=1) + "\n", None)
        return EXIT_OK
    raise AssertionError(args.cmd)


def _error(kind: str, **fields) -> None:
    print(json.dumps({"error": kind, **fields}, sort_keys=True), file=sys.stderr)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except CacheError as e:
        _error("cache-corrupt", path=e.path, detail=e.detail)
        return EXIT_USAGE
    except ConfigError as e:
        _error("config", detail=str(e))
        return EXIT_USAGE
    except (ValueError, OSError) as e:
        _error("usage", detail=str(e))
        return EXIT_USAGE
    except AssertionError as e:
        _error("internal-assertion", detail=str(e))
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
