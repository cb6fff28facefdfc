"""Command-line interface: ``grpdyn {construct,invariants,cycles,verify,gc}``.

Exit codes: 0 success, 1 verification failures, 2 usage or validation
errors, 3 I/O errors. Settings fall back to ``GRPDYN_*`` environment
variables before the built-in defaults.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, fields
from fractions import Fraction

from .constructions import (
    FAMILIES,
    build_family,
    build_gc,
    gc_direct_cycles,
    gc_gap,
    gc_inner,
    gc_order_and_lambda,
)
from .dynamics import format_fraction
from .errors import CapabilityError, GroupValidationError, WitnessError
from .groups import (
    is_abelian,
    is_nilpotent,
    is_semisimple,
    is_solvable,
    load_group,
    meo,
    solvable_radical,
)
from .morphisms import (
    AffineMap,
    aut_data,
    inner_automorphism,
    maffo,
    mao,
    max_affine_cycle_length,
    max_aut_cycle_length,
)
from .verify import VerifyConfig, default_jobs, load_catalog, report_json, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
ENV_PREFIX = "GRPDYN_"


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    aut_threshold: int = 600
    catalog_max_order: int = 100
    gc_max_C: int = 2
    precision_digits: int = 40
    output_path: str = "-"
    jobs: int = 0  # 0 means one per available core

    def __post_init__(self):
        for f in ("aut_threshold", "catalog_max_order", "gc_max_C"):
            if getattr(self, f) < 1:
                raise UsageError(f"{f} must be positive")
        if self.precision_digits < 20:
            raise UsageError("precision_digits must be at least 20")
        if self.jobs < 0:
            raise UsageError("jobs must be non-negative")

    @classmethod
    def resolve(cls, args, environ=None):
        """Flag value, else ``GRPDYN_<NAME>``, else default."""
        environ = os.environ if environ is None else environ
        values = {}
        for f in fields(cls):
            flag = getattr(args, f.name, None)
            env = environ.get(ENV_PREFIX + f.name.upper())
            if flag is not None:
                values[f.name] = flag
            elif env is not None:
                if f.name == "output_path":
                    values[f.name] = env
                    continue
                try:
                    values[f.name] = int(env)
                except ValueError:
                    raise UsageError(f"{ENV_PREFIX}{f.name.upper()} must be an integer, got {env!r}")
        return cls(**values)


def _emit(obj, path):
    text = obj if isinstance(obj, str) else json.dumps(obj, indent=1, sort_keys=True) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _family_params(args):
    params = {}
    if args.family in ("cyclic", "dihedral", "dicyclic", "symmetric", "alternating", "holomorph"):
        if args.n is None:
            raise UsageError(f"--n is required for {args.family}")
        params["n"] = args.n
    elif args.family == "abelian":
        if not args.factors:
            raise UsageError("--factors is required for abelian, e.g. --factors 2,4")
        params["factors"] = [int(x) for x in args.factors.split(",")]
    elif args.family == "elementary_abelian":
        if args.p is None or args.n is None:
            raise UsageError("--p and --n are required for elementary_abelian")
        params.update(p=args.p, n=args.n)
    elif args.family == "semidirect":
        if None in (args.m, args.n, args.k):
            raise UsageError("--m, --n and --k are required for semidirect")
        params.update(m=args.m, n=args.n, k=args.k)
    elif args.family == "product":
        if not args.factors:
            raise UsageError("--factors is required for product, e.g. --factors dihedral:5,cyclic:3")
        parts = []
        for item in args.factors.split(","):
            name, _, n = item.partition(":")
            parts.append((name, {"n": int(n)}))
        params["factors"] = parts
    return params


def cmd_construct(args, config):
    if args.family == "gc":
        if args.C is None:
            raise UsageError("--C is required for gc")
        data = build_gc(args.C)
        if data.group is None:
            raise UsageError(f"G_{args.C} has order {data.order}; only C = 1 fits in a group file")
        G = data.group
    else:
        if args.family not in FAMILIES:
            raise UsageError(f"unknown family {args.family!r}")
        G = build_family(args.family, **_family_params(args))
    _emit(G.to_dict(), config.output_path)
    return EXIT_OK


def invariants(G, config):
    """All exact invariants of G; capability-limited fields are null with a reason."""
    out = {
        "name": G.name,
        "order": str(G.order),
        "abelian": is_abelian(G),
        "nilpotent": is_nilpotent(G),
        "solvable": is_solvable(G),
        "semisimple": is_semisimple(G),
        "radical_order": str(solvable_radical(G).order),
        "meo": str(meo(G)),
    }
    kw = {"threshold": config.aut_threshold}
    fns = {
        "mao": lambda: mao(G, **kw),
        "maffo": lambda: maffo(G, **kw),
        "max_cycle": lambda: max_aut_cycle_length(G, **kw),
        "max_affine_cycle": lambda: max_affine_cycle_length(G, **kw),
    }
    unavailable = {}
    values = {}
    for key, fn in fns.items():
        try:
            values[key] = fn()
        except CapabilityError as exc:
            values[key] = None
            unavailable[key] = str(exc)
    n = G.order

    def rel(v):
        return None if v is None else format_fraction(Fraction(v, n))

    out.update(
        mao=None if values["mao"] is None else str(values["mao"]),
        maffo=None if values["maffo"] is None else str(values["maffo"]),
        max_cycle=None if values["max_cycle"] is None else str(values["max_cycle"]),
        max_affine_cycle=None if values["max_affine_cycle"] is None else str(values["max_affine_cycle"]),
        mao_rel=rel(values["mao"]),
        maffo_rel=rel(values["maffo"]),
    )
    out["lambda"] = rel(values["max_cycle"])
    out["lambda_aff"] = rel(values["max_affine_cycle"])
    if unavailable:
        out["unavailable"] = unavailable
    return out


def cmd_invariants(args, config):
    G = load_group(args.group)
    _emit(invariants(G, config), config.output_path)
    return EXIT_OK


def _parse_index(text, bound, what):
    try:
        i = int(text)
    except ValueError:
        raise UsageError(f"{what} must be an integer, got {text!r}")
    if not 0 <= i < bound:
        raise UsageError(f"{what} {i} out of range 0..{bound - 1}")
    return i


def resolve_map(G, spec, config):
    """``auto:<i>``, ``affine:<x>,<i>`` or ``inner:<g>`` to a permutation-like map."""
    kind, _, rest = spec.partition(":")
    if kind == "inner":
        return inner_automorphism(G, _parse_index(rest, G.order, "element"))
    if kind in ("auto", "affine"):
        data = aut_data(G, threshold=config.aut_threshold)
        if kind == "auto":
            return data.automorphism(_parse_index(rest, len(data), "automorphism index"))
        x, _, i = rest.partition(",")
        if not i:
            raise UsageError("affine map spec is affine:<x>,<index>")
        return AffineMap(
            _parse_index(x, G.order, "translation"),
            data.automorphism(_parse_index(i, len(data), "automorphism index")),
        )
    raise UsageError(f"map spec must be auto:<i>, affine:<x>,<i> or inner:<g>; got {spec!r}")


def cmd_cycles(args, config):
    G = load_group(args.group)
    f = resolve_map(G, args.map, config)
    out = f.cycles.to_dict()
    out["map"] = args.map
    out["group"] = G.name
    _emit(out, config.output_path)
    return EXIT_OK


def gc_report(C):
    data = build_gc(C)
    gap = gc_gap(data)
    xi = gc_inner(data)
    dyn = gc_order_and_lambda(data, xi)
    inner = {
        "element": str(data.designated_element()),
        "order": str(dyn.order),
        "max_cycle": str(dyn.max_cycle),
        "regular": dyn.order == dyn.max_cycle,
        "cycles": [[str(l), str(c)] for l, c in dyn.cycles.cycles],
    }
    if data.group is not None:
        inner["direct_cycles"] = [[str(l), str(c)] for l, c in gc_direct_cycles(data, xi).cycles]

    def describe(w):
        d = gc_order_and_lambda(data, w)
        return {"map": w.to_dict(), "order": str(d.order), "max_cycle": str(d.max_cycle)}

    return {
        "C": C,
        "primes": [str(p) for p in data.primes],
        "order": str(data.order),
        "mao": str(gap.mao),
        "lambda": str(gap.max_cycle),
        "gap": format_fraction(gap.gap),
        "gap_bound": str(2 ** (C - 1)),
        "method": gap.method,
        "witness_cycles": {"mao": describe(gap.mao_witness), "lambda": describe(gap.cycle_witness), "inner": inner},
    }


def cmd_gc(args, config):
    C = args.C if args.C is not None else 1
    if C > config.gc_max_C:
        raise UsageError(f"C = {C} exceeds gc_max_C = {config.gc_max_C}")
    _emit(gc_report(C), config.output_path)
    return EXIT_OK


def cmd_verify(args, config):
    suites = ("catalog", "linfp", "gc") if args.suite == "all" else (args.suite,)
    max_C = args.C if args.C is not None else config.gc_max_C
    vconf = VerifyConfig(
        aut_threshold=config.aut_threshold,
        catalog_max_order=config.catalog_max_order,
        gc_max_C=max_C,
        precision_digits=max(config.precision_digits, 30),
        suites=suites,
        jobs=config.jobs or default_jobs(),
    )
    catalog = load_catalog(args.catalog) if args.catalog else None
    report = run_suite(catalog, vconf)
    _emit(report_json(report), config.output_path)
    s = report["summary"]
    print(f"pass {s['pass']}  fail {s['fail']}  skipped {s['skipped']}", file=sys.stderr)
    return EXIT_FAIL if s["fail"] else EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="grpdyn", description="Automorphism and affine-map dynamics of finite groups.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", dest="output_path", default=None, help="output file (default: stdout)")
    common.add_argument("--aut-threshold", dest="aut_threshold", type=int, default=None)
    common.add_argument("--precision", dest="precision_digits", type=int, default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="write a group file")
    p.add_argument("--family", required=True, help=f"one of: {', '.join(FAMILIES + ('gc',))}")
    for flag in ("--n", "--m", "--k", "--p", "--C"):
        p.add_argument(flag, type=int, default=None)
    p.add_argument("--factors", default=None, help="abelian: 2,4; product: dihedral:5,cyclic:3")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("invariants", parents=[common], help="exact invariants of a group file")
    p.add_argument("group")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("cycles", parents=[common], help="cycle structure of a map on a group")
    p.add_argument("group")
    p.add_argument("map", help="auto:<i> | affine:<x>,<i> | inner:<g>")
    p.set_defaults(func=cmd_cycles)

    p = sub.add_parser("verify", parents=[common], help="run the verification suites")
    p.add_argument("--suite", choices=("all", "catalog", "linfp", "gc"), default="all")
    p.add_argument("--C", type=int, default=None, dest="C", help="largest C for the gc suite")
    p.add_argument("--catalog", default=None, help="JSON list of group files instead of the default catalog")
    p.add_argument("--max-order", dest="catalog_max_order", type=int, default=None)
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gc", parents=[common], help="order/cycle gap report for G_C")
    p.add_argument("--C", type=int, default=None, dest="C")
    p.add_argument("--max-C", dest="gc_max_C", type=int, default=None)
    p.set_defaults(func=cmd_gc)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = CliConfig.resolve(args)
        return args.func(args, config)
    except (UsageError, GroupValidationError, WitnessError, CapabilityError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
