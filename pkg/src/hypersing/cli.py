"""Command line front end.

    hypersing classify  --n 2 --d 3 "z0*z1*z2"
    hypersing stability --n 2 --d 5 --coordinate-search sample:20 --seed 7 --input forms.txt
    hypersing chern     --n 2 --d 3
    hypersing bound     --n 2 --d 4
    hypersing witness   --n 2 --d 4 --point 1,1,1
    hypersing mu        --n 2 --d 3 --weights 1,0,-1 "z0*z1*z2"

JSON output is one object per line, in input order whatever --jobs is.
Exit codes: 0 ok, 2 input error, 3 resource guard, 4 internal invariant
violation; in batch mode the largest code over all lines is returned.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import nullcontext
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from importlib import resources

from . import chern, git, stabilizer
from .errors import InvariantViolation, ResourceGuardExceeded
from .ideal import DEFAULT_MAX_DEGREE, DEFAULT_MAX_PAIRS
from .poly import parse_form
from .singularity import classify, degenerate_witness, is_singular_at, point_certificate

log = logging.getLogger("hypersing")

EXIT_OK, EXIT_INPUT, EXIT_GUARD, EXIT_INTERNAL = 0, 2, 3, 4


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    n: int
    d: int | None
    inputs: tuple[str, ...] = ()
    output_format: str = "json"
    coordinate_search: str = "all"
    seed: int | None = None
    weights: tuple[int, ...] | None = None
    points: tuple[tuple[Fraction, ...], ...] = ()
    formal: bool = False
    max_pairs: int = DEFAULT_MAX_PAIRS
    max_degree: int = DEFAULT_MAX_DEGREE
    timeout: float | None = None
    jobs: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("--n must be at least 1")
        if self.d is not None and self.d < 1:
            raise ValueError("--d must be at least 1")
        if self.coordinate_search.startswith("sample") and self.seed is None:
            raise ValueError("--seed is required with --coordinate-search sample:N")
        if self.jobs < 1:
            raise ValueError("--jobs must be positive")

    @property
    def guard(self) -> dict:
        return dict(max_pairs=self.max_pairs, max_degree=self.max_degree, timeout=self.timeout)


def load_schema(subcommand: str) -> dict:
    """The JSON schema shipped for one subcommand's output records."""
    text = resources.files("hypersing").joinpath("schemas", f"{subcommand}.schema.json").read_text("utf-8")
    return json.loads(text)


class InputError(ValueError):
    pass


def _parse_point(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(x) for x in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad point {text!r}: {exc}") from None


def _parse_weights(text: str) -> tuple[int, ...]:
    try:
        r = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"weights must be comma-separated integers, got {text!r}") from None
    problem = git.weight_problem(r)
    if problem:
        raise InputError(f"invalid weights {text}: {problem}")
    return r


def _error(text: str, kind: str, exc: BaseException) -> tuple[dict, int]:
    code = {"input": EXIT_INPUT, "resource": EXIT_GUARD, "internal": EXIT_INTERNAL}[kind]
    return {"input": text, "error": {"kind": kind, "message": str(exc)}}, code


def classify_one(config: RunConfig, text: str) -> dict:
    f = parse_form(text, config.n, config.d)
    report = classify(f, **config.guard)
    certs = []
    for p in config.points:
        if len(p) != f.n + 1:
            raise InputError(f"point {p} has the wrong number of coordinates")
        certs.append(point_certificate(f, p).to_json())
    out = {"input": text, "class": report.cls.value, "certificates": certs}
    out.update({k: v for k, v in report.to_json().items() if k != "class"})
    return out


def stability_one(config: RunConfig, text: str) -> dict:
    f = parse_form(text, config.n, config.d)
    search = git.CoordinateSearch.parse(config.coordinate_search, config.seed)
    result = git.search_destabilizer(f, search)
    cert = result.certificate
    check = None
    if cert is not None and f.d > f.n + 1:
        check = git.verify_vanishing_consequence(f, cert, **config.guard).to_json()
    return {
        "input": text,
        "destabilizer": cert.to_json() if cert is not None else None,
        "searched_frames": result.searched_frames,
        "coordinate_search": config.coordinate_search,
        "consequence_check": check,
    }


def mu_one(config: RunConfig, text: str) -> dict:
    f = parse_form(text, config.n, config.d)
    if len(config.weights) != f.n + 1:
        raise InputError(f"expected {f.n + 1} weights, got {len(config.weights)}")
    return {"input": text, "weights": list(config.weights), "mu": git.mu(f, config.weights)}


PER_LINE = {"classify": classify_one, "stability": stability_one, "mu": mu_one}


def process_line(config: RunConfig, text: str) -> tuple[dict, int]:
    """One output record and its exit code; errors stay inside the record."""
    try:
        return PER_LINE[config.subcommand](config, text), EXIT_OK
    except ResourceGuardExceeded as exc:
        return _error(text, "resource", exc)
    except (InvariantViolation, AssertionError) as exc:
        return _error(text, "internal", exc)
    except ValueError as exc:
        # ParseError, InputError and InvalidCertificate are all ValueErrors
        return _error(text, "input", exc)


def _text_line(sub: str, rec: dict) -> str:
    if "error" in rec:
        return f"{rec['input']}\tERROR ({rec['error']['kind']}): {rec['error']['message']}"
    if sub == "classify":
        return f"{rec['input']}\t{rec['class']}"
    if sub == "stability":
        cert = rec["destabilizer"]
        if cert is None:
            return f"{rec['input']}\tno destabilizer in {rec['searched_frames']} frames"
        tail = ""
        if rec["consequence_check"] is not None:
            tail = f"\tconsequence {'ok' if rec['consequence_check']['passed'] else 'FAILED'}"
        return f"{rec['input']}\tweights {cert['weights']} perm {cert['permutation']} mu {cert['mu']}{tail}"
    if sub == "mu":
        return str(rec["mu"])
    raise KeyError(sub)


def run_batch(config: RunConfig, out=None) -> int:
    out = out or sys.stdout
    worker = partial(process_line, config)
    if config.jobs > 1 and len(config.inputs) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(worker, config.inputs))
    else:
        results = [worker(text) for text in config.inputs]
    status = EXIT_OK
    for rec, code in results:
        status = max(status, code)
        if config.output_format == "json":
            out.write(json.dumps(rec) + "\n")
        else:
            out.write(_text_line(config.subcommand, rec) + "\n")
    return status


def run_report(config: RunConfig, out=None) -> int:
    out = out or sys.stdout
    sub = config.subcommand
    if sub == "chern":
        if config.formal:
            pf = chern.pushforward_euler(config.n, chern.FORMAL)
            rec = {"n": config.n, "d": "FORMAL", "pushforward": str(pf),
                   "vanishes": not pf, "matches_closed_form": pf == chern.expected_pushforward(config.n, chern.FORMAL)}
        else:
            pf = chern.pushforward_euler(config.n, config.d)
            rec = {"n": config.n, "d": config.d, "pushforward": str(pf),
                   "class": pf.to_json(), "euler_class": chern.euler_class(config.n, config.d).to_json(),
                   "vanishes": not pf, "exceptional_pair": (config.n, config.d) in ((1, 4), (2, 3))}
        text = rec["pushforward"] + (" (exceptional pair)" if rec.get("exceptional_pair") else "")
    elif sub == "bound":
        b = stabilizer.order_bound(config.n, config.d)
        rec, text = {"n": config.n, "d": config.d, "bound": b}, str(b)
    elif sub == "witness":
        p = config.points[0] if config.points else None
        f = degenerate_witness(config.n, config.d, p)
        p = p or (Fraction(1),) + (Fraction(0),) * config.n
        critical, k = is_singular_at(f, p)
        rec = {"n": config.n, "d": config.d, "point": [str(x) for x in p], "form": str(f),
               "critical": critical, "kernel_dim": k}
        text = str(f)
    else:
        raise KeyError(sub)
    out.write((json.dumps(rec) if config.output_format == "json" else text) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, required=True, help="projective dimension")
    common.add_argument("--d", help="degree (chern also accepts FORMAL)")
    common.add_argument("--format", dest="output_format", choices=["json", "text"], default="json")
    common.add_argument("--input", help="file with one polynomial per line, or - for stdin")
    common.add_argument("--coordinate-search", default="all", help="all | sample:N")
    common.add_argument("--seed", type=int)
    common.add_argument("--weights")
    common.add_argument("--point", action="append", default=[], help="comma-separated rationals")
    common.add_argument("--max-pairs", type=int, default=DEFAULT_MAX_PAIRS)
    common.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)
    common.add_argument("--timeout-seconds", type=float)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("-v", "--verbose", action="store_true")
    common.add_argument("polynomials", nargs="*")

    parser = argparse.ArgumentParser(prog="hypersing", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name, help_ in [("classify", "smooth / nodal / degenerate verdicts"),
                        ("stability", "diagonal Hilbert-Mumford destabilizer search"),
                        ("chern", "pushforward of the Euler class"),
                        ("bound", "stabilizer order bound"),
                        ("witness", "a form with a degenerate critical point"),
                        ("mu", "Hilbert-Mumford weight for given weights")]:
        sub.add_parser(name, parents=[common], help=help_)
    return parser


def _read_inputs(args) -> tuple[str, ...]:
    lines = list(args.polynomials)
    if args.input is not None:
        stream = nullcontext(sys.stdin) if args.input == "-" else open(args.input, encoding="utf-8")
        with stream as fh:
            lines.extend(line.strip() for line in fh)
    return tuple(line for line in lines if line)


def config_from_args(args) -> RunConfig:
    sub = args.subcommand
    formal = False
    d = None
    if args.d is not None:
        if sub == "chern" and args.d.upper() == "FORMAL":
            formal = True
        else:
            try:
                d = int(args.d)
            except ValueError:
                raise InputError(f"--d must be an integer, got {args.d!r}") from None
    if d is None and not formal:
        raise InputError("--d is required")
    weights = None
    if sub == "mu":
        if args.weights is None:
            raise InputError("mu needs --weights")
        weights = _parse_weights(args.weights)
    if sub == "stability":
        git.CoordinateSearch.parse(args.coordinate_search, args.seed if args.seed is not None else 0)
    return RunConfig(
        subcommand=sub, n=args.n, d=d, inputs=_read_inputs(args) if sub in PER_LINE else (),
        output_format=args.output_format, coordinate_search=args.coordinate_search, seed=args.seed,
        weights=weights, points=tuple(_parse_point(p) for p in args.point), formal=formal,
        max_pairs=args.max_pairs, max_degree=args.max_degree, timeout=args.timeout_seconds,
        jobs=args.jobs,
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        config = config_from_args(args)
        if config.subcommand in PER_LINE:
            if not config.inputs:
                raise InputError("no polynomial given")
            return run_batch(config)
        return run_report(config)
    except (InputError, ValueError, OSError) as exc:
        print(f"hypersing: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InvariantViolation, AssertionError) as exc:
        print(f"hypersing: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
