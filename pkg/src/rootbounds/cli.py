"""Command-line front end: bounds, facet data, and oracle verification.

Systems are read from a file path or standard input, either as the JSON
schema {"n": ..., "polynomials": [[{"exp": [...], "coeff": "..."}], ...]}
or as the terse text format (one polynomial per line).  Exit codes: 0
success, 1 verification failure, 2 parse error, 3 invalid parameters.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import arith
from .arith import format_rational
from .binomials import expansion_coeffs, lcm_profile
from .bounds import (
    FORMULA_THM1_GLOBAL,
    FORMULA_THM1_LOCAL,
    FieldSpec,
    affine_bound,
    global_bound,
    global_facet_sum_bound,
    local_bound,
    local_facet_bound,
)
from .newton import (
    CancellationError,
    SparseSystem,
    candidate_valuations,
    facet_count,
    system_polytope,
    valuation_face_bound,
)
from .oracle import (
    IntegerMatrix,
    count_binomial_system,
    count_univariate_padic,
    rational_root_search,
    reduce_to_square,
)
from .parsing import ParseError, parse_system_text
from .polyhedra import lower_facets

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_BAD_PARAMS = 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: str | None
    prime: int
    d: int | None
    e: int
    f: int
    delta: int
    global_case: bool
    height_cap: int
    precision: int
    seed: int
    output_format: str
    affine: bool
    random_trials: int


class CliError(Exception):
    def __init__(self, message: str, exit_code: int):
        super().__init__(message)
        self.exit_code = exit_code


def _read_input(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read input: {exc}", EXIT_PARSE_ERROR)


def _load_system(cfg: RunConfig) -> SparseSystem:
    text = _read_input(cfg.input_path)
    stripped = text.lstrip()
    try:
        if stripped.startswith("{"):
            return SparseSystem.from_json_obj(json.loads(text))
        return parse_system_text(text)
    except (ParseError, ValueError, KeyError, json.JSONDecodeError) as exc:
        raise CliError(f"could not parse the input system: {exc}", EXIT_PARSE_ERROR)


def _field_spec(cfg: RunConfig) -> FieldSpec:
    try:
        if cfg.global_case:
            if cfg.d is None:
                raise ValueError("the global case needs --d")
            return FieldSpec.global_field(cfg.d, cfg.delta, p=2)
        fs = FieldSpec.local(cfg.prime, cfg.e, cfg.f)
        if cfg.d is not None and cfg.d != fs.d:
            raise ValueError(
                f"--d {cfg.d} disagrees with e*f = {fs.d}; supply a consistent (e, f)"
            )
        return fs
    except ValueError as exc:
        raise CliError(str(exc), EXIT_BAD_PARAMS)


def _emit(payload: dict, cfg: RunConfig) -> None:
    if cfg.output_format == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
        return
    for line in _text_lines(payload, indent=0):
        print(line)


def _text_lines(obj, indent: int):
    pad = "  " * indent
    if isinstance(obj, dict):
        for key in sorted(obj):
            value = obj[key]
            if isinstance(value, (dict, list)):
                yield f"{pad}{key}:"
                yield from _text_lines(value, indent + 1)
            else:
                yield f"{pad}{key}: {value}"
    elif isinstance(obj, list):
        for value in obj:
            if isinstance(value, (dict, list)):
                yield from _text_lines(value, indent + 1)
            else:
                yield f"{pad}- {value}"
    else:
        yield f"{pad}{obj}"


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_bound(cfg: RunConfig) -> int:
    system = _load_system(cfg)
    fs = _field_spec(cfg)
    m, n, k = system.m, system.n, system.k
    reports = []
    if cfg.global_case:
        if cfg.prime != 2:
            print(
                "note: global bounds embed through the 2-adics; --prime is ignored",
                file=sys.stderr,
            )
        reports.append(global_bound(fs, m, n, k))
        if k >= n:
            reports.append(global_facet_sum_bound(system, fs.d, fs.delta))
        if cfg.affine:
            reports.append(affine_bound(FORMULA_THM1_GLOBAL, fs, m, n, k))
    else:
        reports.append(local_bound(fs, m, n, k))
        if k >= n:
            reports.append(local_facet_bound(system, fs))
        if cfg.affine:
            reports.append(affine_bound(FORMULA_THM1_LOCAL, fs, m, n, k))
    payload = {
        "system": {"m": m, "n": n, "k": k},
        "bounds": [r.to_json_obj() for r in reports],
    }
    _emit(payload, cfg)
    return EXIT_OK


def cmd_facets(cfg: RunConfig) -> int:
    system = _load_system(cfg)
    if any(f.m == 1 for f in system.polynomials):
        raise CliError(
            "a one-term equation has no torus roots; the lift is a single point",
            EXIT_BAD_PARAMS,
        )
    if system.k < system.n:
        raise CliError("facet data needs k >= n", EXIT_BAD_PARAMS)
    p = cfg.prime
    notes = []
    square = system
    if system.k > system.n:
        square = reduce_to_square(system, cfg.seed)
        notes.append(
            "overdetermined input replaced by a seeded random square reduction; "
            "multiplicities are not tracked through it"
        )
    try:
        polytope = system_polytope(system, p)
    except CancellationError as exc:
        raise CliError(str(exc), EXIT_BAD_PARAMS)
    facets = lower_facets(polytope)
    cands = candidate_valuations(square, p)
    payload = {
        "prime": p,
        "facet_count": facet_count(system, p),
        "lower_facets": [
            {
                "normal": [format_rational(x) for x in fn.normal],
                "vertices": facet.to_json_obj(),
            }
            for fn, facet in facets
        ],
        "candidate_valuations": [
            [format_rational(x) for x in r] for r in cands
        ],
        "face_bounds": [
            {
                "r": [format_rational(x) for x in r],
                "bound": valuation_face_bound(square, p, r),
            }
            for r in cands
        ],
        "notes": notes,
    }
    _emit(payload, cfg)
    return EXIT_OK


def _verify_rows(system: SparseSystem, cfg: RunConfig, fs: FieldSpec) -> list[dict]:
    rows = []
    counts = []
    if system.n == 1 and system.k == 1:
        counts.append(count_univariate_padic(system.polynomials[0], cfg.prime))
    if (
        system.k == system.n
        and all(f.m == 2 for f in system.polynomials)
        and system.n <= 6
    ):
        exponents = []
        constants = []
        for f in system.polynomials:
            (e1, c1), (e2, c2) = sorted(f.terms)
            exponents.append(tuple(b - a for a, b in zip(e1, e2)))
            constants.append(-c1 / c2)
        if all(any(e) for e in exponents):
            mat = IntegerMatrix.of(exponents)
            try:
                rc, _r = count_binomial_system(mat, constants, cfg.prime)
                counts.append(rc)
            except ValueError:
                pass
    if system.n <= 3:
        counts.append(rational_root_search(system, cfg.height_cap))

    m, n, k = system.m, system.n, system.k
    bounds = [local_bound(fs, m, n, k)]
    if k >= n:
        bounds.append(local_facet_bound(system, fs))
    for rc in counts:
        for rep in bounds:
            row = {
                "oracle": rc.method,
                "region": rc.region,
                "count": rc.count,
                "bound_id": rep.formula_id,
                "bound": rep.integer_bound,
                "ok": rc.count <= rep.integer_bound,
            }
            if not row["ok"]:
                # violations carry the full instance for the failure dump
                row["system"] = system.to_json_obj()
                row["bound_report"] = rep.to_json_obj()
            rows.append(row)
    return rows


def _random_trinomial(rng, n_terms: int = 3):
    from .newton import SparsePolynomial

    while True:
        terms = {}
        while len(terms) < n_terms:
            e = rng.randint(0, 30)
            c = rng.randint(-50, 50)
            if c:
                terms[(e,)] = Fraction(c)
        f = SparsePolynomial.from_dict(terms)
        if f.m == n_terms:
            return f


def cmd_verify(cfg: RunConfig) -> int:
    fs = _field_spec(cfg)
    rows = []
    if cfg.input_path is not None:
        system = _load_system(cfg)
        rows.extend(_verify_rows(system, cfg, fs))
    if cfg.random_trials:
        import random

        rng = random.Random(cfg.seed)
        for _ in range(cfg.random_trials):
            f = _random_trinomial(rng)
            system = SparseSystem.of([f])
            rows.extend(_verify_rows(system, cfg, fs))
    if not rows:
        raise CliError("nothing to verify: give an input system or --random N", EXIT_BAD_PARAMS)
    ok = all(row["ok"] for row in rows)
    payload = {"rows": rows, "all_ok": ok}
    _emit(payload, cfg)
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def cmd_binom(cfg: RunConfig, m: int, t: int, support: str | None) -> int:
    payload: dict = {"m": m, "t": t, "lcm_profile": str(lcm_profile(m, t).value)}
    if support:
        elements = tuple(int(x) for x in support.split(","))
        expansion = expansion_coeffs(elements, t)
        payload["expansion"] = {
            "support": list(expansion.support),
            "coefficients": [format_rational(c) for c in expansion.coefficients],
        }
    _emit(payload, cfg)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Argument handling
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rootbounds",
        description="Root bounds for sparse polynomial systems over p-adic "
        "fields and number fields, with exact verification oracles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, with_input: bool = True) -> None:
        if with_input:
            p.add_argument("input", nargs="?", default=None, help="system file or - for stdin")
        p.add_argument("--prime", type=int, default=2)
        p.add_argument("--d", type=int, default=None)
        p.add_argument("--e", type=int, default=1)
        p.add_argument("--f", type=int, default=1)
        p.add_argument("--delta", type=int, default=1)
        p.add_argument("--global", dest="global_case", action="store_true")
        p.add_argument("--height-cap", type=int, default=10)
        p.add_argument("--precision", type=int, default=arith.DEFAULT_DIGITS)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("json", "text"), default="json")

    b = sub.add_parser("bound", help="closed-form bound reports for a system")
    common(b)
    b.add_argument("--affine", action="store_true", help="add the off-torus variant")

    fct = sub.add_parser("facets", help="lower facets, candidate valuations, face bounds")
    common(fct)

    v = sub.add_parser("verify", help="oracle counts vs bounds, pass/fail per row")
    common(v)
    v.add_argument("--random", type=int, default=0, dest="random_trials",
                   help="additionally verify N seeded random trinomials")

    bn = sub.add_parser("binom", help="lcm profiles and binomial-basis expansions")
    common(bn, with_input=False)
    bn.add_argument("--m", type=int, required=True)
    bn.add_argument("--t", type=int, required=True)
    bn.add_argument("--support", default=None, help="comma-separated integers")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        input_path=getattr(args, "input", None),
        prime=args.prime,
        d=args.d,
        e=args.e,
        f=args.f,
        delta=args.delta,
        global_case=args.global_case,
        height_cap=args.height_cap,
        precision=args.precision,
        seed=args.seed,
        output_format=args.format,
        affine=getattr(args, "affine", False),
        random_trials=getattr(args, "random_trials", 0),
    )


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    cfg = _config_from_args(args)
    try:
        try:
            arith.set_precision(cfg.precision)
            if not arith.is_prime(cfg.prime):
                raise CliError(f"--prime {cfg.prime} is not prime", EXIT_BAD_PARAMS)
            if cfg.command == "bound":
                return cmd_bound(cfg)
            if cfg.command == "facets":
                return cmd_facets(cfg)
            if cfg.command == "verify":
                return cmd_verify(cfg)
            if cfg.command == "binom":
                return cmd_binom(cfg, args.m, args.t, args.support)
            raise CliError(f"unknown command {cfg.command}", EXIT_BAD_PARAMS)
        except ValueError as exc:
            raise CliError(str(exc), EXIT_BAD_PARAMS)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
