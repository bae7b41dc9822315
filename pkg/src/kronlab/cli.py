"""Command-line front end.

Every subcommand turns its textual input into a payload of plain JSON values.
With ``--json PATH`` the invocation is written as a result record holding the
command name, the input echo, the payload, timing and the library version;
``kronlab replay PATH`` re-runs a record and checks the payload is identical.

Exit codes: 0 success, 1 a verification reported FAIL, 2 contract or usage
error, 3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

import numpy as np

from . import __version__
from .characters import CacheFormatError, default_cache
from .errors import BudgetExceeded, ContractError, InvariantError
from .kronecker import kron
from .partitions import Partition, enumerate_partitions
from .quantum import construct_marginal_uniform, partial_trace, spectrum
from .schurweyl import check_estimation_bound, minimal_witness_k, projector_weight, theorem2_witness, validate_spectrum
from .search import find_stretch, rational_membership, scan_vanishing, theorem2_threshold

CACHE_ENV = "KRONLAB_CACHE"
CACHE_FILENAME = "characters.cache"

EXIT_OK, EXIT_FAIL, EXIT_CONTRACT, EXIT_BUDGET = 0, 1, 2, 3


@dataclass
class ResultRecord:
    command: str
    input: dict
    output: dict
    timing: float
    version: str
    char_evaluations: int

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ResultRecord":
        data = json.loads(text)
        try:
            return cls(**data)
        except TypeError as exc:
            raise ContractError(f"not a result record: {exc}") from None


def parse_rational(text: str) -> Fraction:
    """Exact value of ``"p/q"`` or a decimal string; floats never round-trip through binary."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ContractError(f"not a rational number: {text!r}") from None


def parse_vector(text: str) -> tuple[Fraction, ...]:
    fields = [f for f in text.split(",")]
    if not text.strip() or any(not f.strip() for f in fields):
        raise ContractError(f"not a comma-separated vector: {text!r}")
    return tuple(parse_rational(f) for f in fields)


def parse_partition(text: str, name: str) -> Partition:
    try:
        return Partition.parse(text)
    except ContractError as exc:
        raise ContractError(f"argument {name}: {exc}") from None


def _q(x: Fraction) -> str:
    return str(Fraction(x))


# each handler maps the input echo to (payload, lines of text, passed)
Handler = Callable[[dict], tuple[dict, list[str], bool]]


def run_kron(inp: dict):
    lam, mu, nu = (parse_partition(inp[k], k) for k in ("lambda", "mu", "nu"))
    g = kron(lam, mu, nu)
    return {"g": g}, [f"g({lam}, {mu}, {nu}) = {g}"], True


def run_scan(inp: dict):
    report = scan_vanishing(inp["d"], inp["ell"], budget=inp["budget"], workers=inp.get("workers", 1))
    lines = [f"d={report.d} ell={report.ell}: {len(report.vanishing)} of {report.total} vanish"]
    lines += [f"  {lam}" for lam in report.vanishing]
    payload = {"total": report.total, "vanishing": [str(lam) for lam in report.vanishing]}
    return payload, lines, True


def run_stretch(inp: dict):
    lam = parse_partition(inp["lambda"], "--lambda")
    res = find_stretch(lam, inp["d"], inp["cap"])
    if res.found:
        line = f"lambda={lam} d={res.d} ell={res.ell}: k_min={res.k_min} g={res.g_at_k}"
    else:
        line = f"lambda={lam} d={res.d} ell={res.ell}: NOT_FOUND up to k={res.k_cap}"
    payload = {"ell": res.ell, "k_min": res.k_min, "g_at_k": res.g_at_k, "k_cap": res.k_cap}
    return payload, [line], True


def run_membership(inp: dict):
    triple = [parse_vector(inp[k]) for k in ("joint", "a", "b")]
    res = rational_membership(triple, inp["cap"])
    if res.found:
        parts = [str(p) for p in res.partitions]
        line = f"found at k={res.k}, n={res.n}: g({', '.join(parts)}) = {res.g}"
    else:
        parts = None
        line = f"NOT_FOUND up to k={inp['cap']}"
    return {"k": res.k, "n": res.n, "partitions": parts, "g": res.g}, [line], True


def run_marginal_verify(inp: dict):
    r = parse_vector(inp["spectrum"])
    if any(x < 0 for x in r) or sum(r) != 1:
        raise ContractError(f"--spectrum is not a probability distribution (sum {sum(r)})")
    tol = float(inp["tol"])
    rho = construct_marginal_uniform([float(x) for x in r])
    d = rho.dims[0]
    target = np.sort(np.array([float(x) for x in r]))[::-1]
    spec_err = float(np.abs(spectrum(rho) - target).sum())
    eye = np.eye(d) / d
    a_err = float(np.linalg.norm(partial_trace(rho, "A").matrix - eye))
    b_err = float(np.linalg.norm(partial_trace(rho, "B").matrix - eye))
    worst = max(spec_err, a_err, b_err)
    ok = worst <= tol
    payload = {
        "d": d,
        "spectrum_l1_error": spec_err,
        "marginal_A_error": a_err,
        "marginal_B_error": b_err,
        "max_deviation": worst,
        "pass": ok,
    }
    return payload, [f"{'PASS' if ok else 'FAIL'} d={d} max deviation {worst:.3e} (tol {tol:g})"], ok


def run_swbound(inp: dict):
    r = validate_spectrum(parse_vector(inp["spectrum"]))
    d, k = inp["d"], inp["k"]
    if len(r) != d:
        raise ContractError(f"--spectrum has length {len(r)} but --d is {d}")
    if k < 0:
        raise ContractError("--k must be nonnegative")
    total = Fraction(0)
    worst = None
    failures = []
    for lam in enumerate_partitions(k, d):
        check = check_estimation_bound(lam, r)
        total += check.lhs
        if not check.holds:
            failures.append(str(lam))
        if worst is None or check.lhs / check.rhs > worst[1]:
            worst = (lam, check.lhs / check.rhs)
    ok = not failures and total == 1
    payload = {
        "count": len(enumerate_partitions(k, d)),
        "all_hold": not failures,
        "failures": failures,
        "weights_sum": _q(total),
        "worst_lambda": str(worst[0]),
        "worst_ratio": float(worst[1]),
    }
    lines = [
        f"{'PASS' if ok else 'FAIL'} d={d} k={k}: {payload['count']} partitions, weights sum {total}",
        f"worst lhs/rhs = {float(worst[1]):.6g} at {worst[0]}",
    ]
    return payload, lines, ok


def run_kthreshold(inp: dict):
    eps = parse_rational(inp["eps"])
    rep = theorem2_threshold(inp["d"], eps)
    bounds = [float((lo + hi) / 2) for lo, hi in rep.bound_values]
    payload = {"k_star": rep.k_star, "bounds_at_k_star": bounds}
    return payload, [f"d={rep.d} eps={rep.eps}: k_star={rep.k_star}", "bounds: " + ", ".join(f"{b:.6g}" for b in bounds)], True


def run_witness(inp: dict):
    lam = parse_partition(inp["lambda"], "--lambda")
    eps = parse_rational(inp["eps"])
    if inp.get("k") is not None:
        rep = theorem2_witness(lam, inp["d"], eps, inp["k"])
    else:
        rep = minimal_witness_k(lam, inp["d"], eps, inp["cap"])
    if rep is None:
        return {"k": None}, [f"aggregates did not all drop below 1/3 for k <= {inp['cap']}"], False
    triple = [str(p) for p in rep.triple] if rep.triple else None
    payload = {
        "k": rep.k,
        "n": rep.n,
        "w_x_bar": _q(rep.w_x_bar),
        "w_y_bar": _q(rep.w_y_bar),
        "w_z_bar": _q(rep.w_z_bar),
        "all_below_third": rep.all_below_third,
        "triple": triple,
        "g": rep.g,
    }
    lines = [
        f"k={rep.k} n={rep.n}: tails X={rep.w_x_bar} Y={rep.w_y_bar} Z={rep.w_z_bar}",
        f"triple {', '.join(triple)} with g={rep.g}" if triple else "no nonzero triple inside the balls",
    ]
    ok = triple is not None or not rep.all_below_third
    return payload, lines, ok


HANDLERS: dict[str, Handler] = {
    "kron": run_kron,
    "scan": run_scan,
    "stretch": run_stretch,
    "membership": run_membership,
    "marginal-verify": run_marginal_verify,
    "swbound": run_swbound,
    "kthreshold": run_kthreshold,
    "witness": run_witness,
}


def execute(command: str, inp: dict) -> tuple[ResultRecord, list[str], bool]:
    if command not in HANDLERS:
        raise ContractError(f"unknown command {command!r}")
    before = default_cache.evaluations
    start = time.perf_counter()
    payload, lines, ok = HANDLERS[command](inp)
    record = ResultRecord(
        command=command,
        input=inp,
        output=payload,
        timing=time.perf_counter() - start,
        version=__version__,
        char_evaluations=default_cache.evaluations - before,
    )
    return record, lines, ok


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", metavar="PATH", help="write the result record here ('-' for stdout)")
    p.add_argument("--cache", metavar="DIR", help=f"persistent character cache directory (overrides ${CACHE_ENV})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kronlab", description="Kronecker coefficients and rectangular obstruction searches.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kron", help="Kronecker coefficient g(lambda, mu, nu)")
    p.add_argument("lam", metavar="LAMBDA")
    p.add_argument("mu", metavar="MU")
    p.add_argument("nu", metavar="NU")
    _add_common(p)

    p = sub.add_parser("scan", help="list lambda with vanishing rectangular coefficient")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--budget", type=int, default=50_000, help="maximum number of candidate partitions")
    p.add_argument("--workers", type=int, default=1)
    _add_common(p)

    p = sub.add_parser("stretch", help="minimal stretching factor for a nonzero rectangular coefficient")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--cap", type=int, default=8)
    _add_common(p)

    p = sub.add_parser("membership", help="rational spectrum triple against the Kronecker cone")
    p.add_argument("--joint", required=True, help="length d^2 spectrum, e.g. 1/2,1/2,0,0")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--cap", type=int, default=12)
    _add_common(p)

    p = sub.add_parser("marginal-verify", help="build rho_AB with spectrum r and uniform marginals, then check it")
    p.add_argument("--spectrum", required=True)
    p.add_argument("--tol", default="1e-9")
    _add_common(p)

    p = sub.add_parser("swbound", help="check the spectrum-estimation bound for all lambda of k into d parts")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--spectrum", required=True)
    _add_common(p)

    p = sub.add_parser("kthreshold", help="smallest k with all three tail bounds below 1/3")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--eps", required=True)
    _add_common(p)

    p = sub.add_parser("witness", help="exact three-projector bookkeeping and a nonzero triple")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--eps", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--cap", type=int, default=12)
    _add_common(p)

    p = sub.add_parser("replay", help="re-run a JSON result record and compare outputs")
    p.add_argument("record")
    p.add_argument("--cache", metavar="DIR")
    return parser


def _input_echo(args: argparse.Namespace) -> dict:
    c = args.command
    if c == "kron":
        return {"lambda": args.lam, "mu": args.mu, "nu": args.nu}
    if c == "scan":
        return {"d": args.d, "ell": args.ell, "budget": args.budget, "workers": args.workers}
    if c == "stretch":
        return {"lambda": args.lam, "d": args.d, "cap": args.cap}
    if c == "membership":
        return {"joint": args.joint, "a": args.a, "b": args.b, "cap": args.cap}
    if c == "marginal-verify":
        return {"spectrum": args.spectrum, "tol": args.tol}
    if c == "swbound":
        return {"d": args.d, "k": args.k, "spectrum": args.spectrum}
    if c == "kthreshold":
        return {"d": args.d, "eps": args.eps}
    if c == "witness":
        return {"lambda": args.lam, "d": args.d, "eps": args.eps, "k": args.k, "cap": args.cap}
    raise ContractError(f"unknown command {c!r}")


def _cache_path(flag: str | None) -> Path | None:
    location = flag or os.environ.get(CACHE_ENV)
    return Path(location) / CACHE_FILENAME if location else None


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cache_file = _cache_path(args.cache)
    try:
        if cache_file is not None and cache_file.exists():
            default_cache.load(cache_file)
        if args.command == "replay":
            stored = ResultRecord.from_json(Path(args.record).read_text(encoding="utf-8"))
            record, lines, _ = execute(stored.command, stored.input)
            same = record.output == stored.output
            print(f"replay {stored.command}: {'identical' if same else 'DIFFERENT'} output")
            code = EXIT_OK if same else EXIT_FAIL
        else:
            record, lines, ok = execute(args.command, _input_echo(args))
            print("\n".join(lines))
            if args.json == "-":
                print(record.to_json())
            elif args.json:
                Path(args.json).write_text(record.to_json() + "\n", encoding="utf-8")
            code = EXIT_OK if ok else EXIT_FAIL
        if cache_file is not None:
            default_cache.save(cache_file)
        return code
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ContractError, CacheFormatError, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
