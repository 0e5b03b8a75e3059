"""Command-line front end.

Examples::

    andreadakis witt --n 2 --c 5
    andreadakis gamma-depth --n 2 --degree 4 --word "[[x1,x2],x2]"
    andreadakis outer-depth --n 3 --aut "conj(1,3)"
    andreadakis map-to-z --n 3 --outer --aut "conj(1,3)" --format json
    andreadakis verify --n 2 --degree 5 --cases 100 --seed 7

The default truncation degree comes from ``$ANDREADAKIS_DEGREE`` (else 6).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass, field

from . import filtration as F
from .errors import AndreadakisError, ParameterMismatch
from .intlat import snf
from .lie import center_kernel_rank, lyndon_basis, witt_rank
from .magnus import gamma_depth, magnus_expand
from .syntax import parse_spec, parse_word
from .verify import SUITES, run_suites

DEGREE_ENV = "ANDREADAKIS_DEGREE"
COMMANDS = ("depth", "johnson", "outer-depth", "map-to-z", "magnus", "gamma-depth", "basis",
            "witt", "center-check", "ad-matrix", "verify")
_LEVELLED = {"johnson", "ad-matrix"}


def default_degree() -> int:
    return int(os.environ.get(DEGREE_ENV, "6"))


@dataclass
class JobSpec:
    command: str
    n: int
    degree: int
    c: int | None = None
    outer: bool = False
    text: str | None = None
    input_path: str | None = None
    output_format: str = "text"
    seed: int = 0
    cases: int = 100
    moduli: list = field(default_factory=lambda: [0, 2, 3, 5])
    suites: list = field(default_factory=list)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ParameterMismatch(f"unknown command {self.command!r}")
        if self.n < 1:
            raise ParameterMismatch("rank n must be at least 1")
        if self.degree < 2:
            raise ParameterMismatch("truncation degree must be at least 2")
        if self.command in _LEVELLED and self.c is not None and not self.c < self.degree - 1:
            raise ParameterMismatch(f"level {self.c} needs truncation > {self.c + 1}")

    def source(self) -> str:
        if self.input_path:
            with open(self.input_path) as fh:
                return fh.read()
        if self.text is None:
            raise ParameterMismatch(f"{self.command} needs --aut/--word or --input")
        return self.text


def _need_c(job):
    if job.c is None:
        raise ParameterMismatch(f"{job.command} needs --c")
    return job.c


def run(job: JobSpec):
    """Execute one job; returns a JSON-ready result (ints kept as ints)."""
    n, D, cmd = job.n, job.degree, job.command
    if cmd == "witt":
        return witt_rank(n, _need_c(job))
    if cmd == "basis":
        return lyndon_basis(n, _need_c(job)).labels()
    if cmd == "gamma-depth":
        return gamma_depth(parse_word(job.source(), n), D).to_json()
    if cmd == "magnus":
        w = parse_word(job.source(), n)
        return {"word": str(w), "series": magnus_expand(w, D).to_json()}
    if cmd == "center-check":
        degrees = [job.c] if job.c is not None else list(range(1, D))
        return [{"degree": d, "modulus": m, "kernel_rank": center_kernel_rank(n, d, m)}
                for d in degrees for m in job.moduli]
    if cmd == "ad-matrix":
        c = _need_c(job)
        mat = F.ad_matrix(n, c, D)
        res = snf(mat)
        return {"level": c, "matrix": mat.to_json(), "rank": res.rank,
                "invariants": res.invariants, "witt_rank": witt_rank(n, c)}
    if cmd == "verify":
        results = run_suites(n, D, job.cases, job.seed, job.suites or None)
        return [r.to_json() for r in results]
    auts = parse_spec(job.source(), n)
    if not auts:
        raise ParameterMismatch("no automorphisms given")
    if cmd == "depth":
        return [F.aut_depth(a, D).to_json() for a in auts]
    if cmd == "johnson":
        c = _need_c(job)
        return [F.johnson(a, c, D).to_json() for a in auts]
    if cmd == "outer-depth":
        return [F.outer_depth(a, D).to_json() for a in auts]
    if cmd == "map-to-z":
        zf = F.map_to_Z(auts, D, outer=job.outer)
        return zf.to_json()
    raise ParameterMismatch(f"unhandled command {cmd!r}")


def _stringify(obj):
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stringify(v) for v in obj]
    return obj


def _text(cmd, result) -> str:
    if cmd == "verify":
        lines = [f"{'suite':<28} {'cases':>6} {'fail':>5}  status"]
        for r in result:
            status = "PASS" if r["passed"] else f"FAIL  {r['first_failure']}"
            lines.append(f"{r['suite']:<28} {r['cases']:>6} {r['failures']:>5}  {status}")
            for k, v in r["notes"].items():
                lines.append(f"    {k}: {v}")
        return "\n".join(lines)
    if cmd == "center-check":
        return "\n".join(f"degree {r['degree']} mod {r['modulus']}: kernel rank {r['kernel_rank']}"
                         for r in result)
    if cmd == "basis":
        return "\n".join(result)
    if cmd == "magnus":
        return "\n".join(f"{' '.join(map(str, m)) or '()'}\t{c}" for m, c in result["series"])
    if cmd == "ad-matrix":
        rows = "\n".join(" ".join(r) for r in result["matrix"])
        return (f"{rows}\nrank {result['rank']} (witt {result['witt_rank']}); "
                f"invariants {' '.join(map(str, result['invariants']))}")
    if cmd in ("depth",):
        return "\n".join(result)
    if cmd == "johnson":
        return "\n\n".join("\n".join(" ".join(r) for r in j["matrix"]) for j in result)
    if cmd == "outer-depth":
        out = []
        for oc in result:
            tag = " (inner up to budget)" if oc["inner_up_to_budget"] else ""
            out.append(f"level {oc['level']}{tag}\nrepresentative {oc['representative']}"
                       + ("" if oc["inner_up_to_budget"] else f"\nresidue {' '.join(oc['residue'])}"))
        return "\n\n".join(out)
    if cmd == "map-to-z":
        return (f"level {result['level']} ({'outer' if result['outer'] else 'inner'})\n"
                f"functional {' '.join(result['functional'])}\ndivisor {result['divisor']}\n"
                f"generator values {' '.join(result['generator_values'])}")
    return str(result)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="andreadakis", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--n", type=int, required=name not in ("verify",), default=2)
        s.add_argument("--degree", "-D", type=int, default=None,
                       help=f"truncation degree (default ${DEGREE_ENV} or 6)")
        s.add_argument("--c", type=int, default=None, help="level / degree")
        s.add_argument("--format", choices=("text", "json"), default="text")
        if name in ("depth", "johnson", "outer-depth", "map-to-z"):
            s.add_argument("--aut", action="append", default=[],
                           help="automorphism (repeatable); see the syntax module")
            s.add_argument("--input", help="file with one automorphism per line")
        if name in ("magnus", "gamma-depth"):
            s.add_argument("--word")
            s.add_argument("--input", help="file holding the word")
        if name == "map-to-z":
            s.add_argument("--outer", action="store_true", help="work in Out(F_n)")
        if name == "center-check":
            s.add_argument("--modulus", type=int, action="append", default=None)
        if name == "verify":
            s.add_argument("--seed", type=int, default=0)
            s.add_argument("--cases", type=int, default=100)
            s.add_argument("--suite", action="append", default=[], choices=sorted(SUITES))
    return p


def job_from_args(args) -> JobSpec:
    text = None
    if getattr(args, "aut", None):
        text = "\n".join(args.aut)
    elif getattr(args, "word", None) is not None:
        text = args.word
    return JobSpec(
        command=args.command,
        n=args.n,
        degree=args.degree if args.degree is not None else default_degree(),
        c=args.c,
        outer=getattr(args, "outer", False),
        text=text,
        input_path=getattr(args, "input", None),
        output_format=args.format,
        seed=getattr(args, "seed", 0),
        cases=getattr(args, "cases", 100),
        moduli=getattr(args, "modulus", None) or [0, 2, 3, 5],
        suites=getattr(args, "suite", []),
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    params = {k: v for k, v in vars(args).items() if k != "command"}
    error, result, job = None, None, None
    try:
        job = job_from_args(args)
        params = {k: v for k, v in asdict(job).items() if k != "command"}
        result = run(job)
        if job.command == "verify" and not all(r["passed"] for r in result):
            error = {"code": "verification-failed", "message": "some suites failed"}
    except AndreadakisError as exc:
        error = {"code": exc.code, "message": str(exc)}
    except OSError as exc:
        error = {"code": "io-error", "message": str(exc)}

    if args.format == "json":
        envelope = {"command": args.command, "params": _stringify(params),
                    "result": _stringify(result), "error": error}
        print(json.dumps(envelope, indent=2, ensure_ascii=False))
    else:
        if result is not None:
            print(_text(args.command, _stringify(result)))
        if error:
            print(f"error [{error['code']}]: {error['message']}", file=sys.stderr)
    return 1 if error else 0


if __name__ == "__main__":
    sys.exit(main())
