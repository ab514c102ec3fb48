"""Command line front-end: ``wkrull analyze | counterexample | corpus``."""

import argparse
import json
import sys
import time

from . import __version__
from . import corpus as cp
from . import counterexample as ce
from . import monoid as mn
from .errors import (BoundExceeded, DimensionMismatch, UnsupportedDimension,
                     UnsupportedMonoid, WkrullError)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_UNSUPPORTED = 3
EXIT_BOUND = 4
EXIT_COUNTEREXAMPLE = 5
EXIT_CONTRADICTION = 6

CITATION = "K[S] over a field is weakly Krull exactly when S is (affine monoids are K-UMT)"


class InputError(Exception):
    pass


def load_input(text):
    """Validate the monoid JSON document; errors carry line context."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise InputError("top level must be an object")
    d = doc.get("ambient_dim")
    gens = doc.get("generators")
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise InputError("ambient_dim must be a positive integer")
    if not isinstance(gens, list) or not gens:
        raise InputError("generators must be a nonempty list")
    for i, g in enumerate(gens):
        if not isinstance(g, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in g):
            raise InputError(f"generator {i} must be a list of integers")
        if len(g) != d:
            raise InputError(f"generator {i} has length {len(g)}, expected {d}")
    bound = doc.get("degree_bound")
    if bound is not None and (not isinstance(bound, int) or bound < 0):
        raise InputError("degree_bound must be a nonnegative integer")
    return {"ambient_dim": d, "generators": gens, "degree_bound": bound}


def analyze_document(inp, bound=None, timing=False):
    t0 = time.perf_counter()
    S = mn.build(inp["ambient_dim"], inp["generators"])
    if bound is None:
        bound = inp.get("degree_bound")
    report = mn.analyze(S, bound)
    oracle = mn.wk_oracle_direct(S, bound)
    body = report.to_dict()
    wk = report.flags["weakly_krull"]
    decider = "unsupported" if wk.value is None else wk.value
    oracle_val = "unsupported" if oracle.value is None else oracle.value
    prime_box = 2 * S.max_atom_degree
    prime_ok = all(mn.face_prime_violation(S, P, prime_box) is None for P in mn.prime_spectrum(S))
    doc = {
        "tool": {"name": "wkrull", "version": __version__},
        "input": {k: v for k, v in inp.items() if v is not None},
        "monoid": {
            "rank": S.rank,
            "unit_rank": S.unit_rank,
            "dimension": S.dim,
            "atoms": [list(S.lift(a)) for a in S.atoms],
            "unit_basis": [list(u) for u in S.unit_basis],
            "conductor": list(S.lift(S.conductor)),
            "facet_count": len(S.cone.facets),
        },
        "properties": body["flags"],
        "algebra_weakly_krull": {"value": decider, "note": CITATION},
        "oracle_cross_check": {
            "decider": decider,
            "oracle": oracle.to_dict(),
            "agree": not (isinstance(decider, bool) and isinstance(oracle.value, bool)
                          and decider != oracle.value),
        },
        "prime_check": {"box": prime_box, "passed": prime_ok},
        "spectrum": body["spectrum"],
        "contraction_family": body["contraction_family"],
        "class_group": body["class_group"],
        "warnings": body["warnings"],
        "degree_bound": body["degree_bound"],
    }
    if oracle_val == "unsupported":
        doc["oracle_cross_check"]["agree"] = True
    if timing:
        doc["timing_seconds"] = round(time.perf_counter() - t0, 3)
    return doc


def counterexample_document(depth):
    results = ce.run_suite(depth)
    return {
        "tool": {"name": "wkrull", "version": __version__},
        "depth": depth,
        "items": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
        "all_passed": all(r.passed for r in results),
    }


def corpus_document(seed, count, bound=None):
    summary = cp.run(cp.CorpusConfig(seed=seed, count=count), bound)
    summary["tool"] = {"name": "wkrull", "version": __version__}
    return summary


def _text(doc, indent=""):
    lines = []
    for k in sorted(doc):
        v = doc[k]
        if isinstance(v, dict):
            lines.append(f"{indent}{k}:")
            lines.extend(_text(v, indent + "  "))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{indent}{k}:")
            for i, item in enumerate(v):
                lines.append(f"{indent}  [{i}]")
                lines.extend(_text(item, indent + "    "))
        else:
            lines.append(f"{indent}{k}: {json.dumps(v, sort_keys=True)}")
    return lines


def render(doc, fmt):
    if fmt == "text":
        return "\n".join(_text(doc)) + "\n"
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _depth(value):
    n = int(value)
    if not 1 <= n <= ce.MAX_DEPTH:
        raise argparse.ArgumentTypeError(f"depth must be between 1 and {ce.MAX_DEPTH}")
    return n


def _count(value):
    n = int(value)
    if not 0 <= n <= 1000:
        raise argparse.ArgumentTypeError("count must be between 0 and 1000")
    return n


def build_parser():
    p = argparse.ArgumentParser(prog="wkrull", description="Weakly Krull tests for affine monoids.")
    p.add_argument("--version", action="version", version=f"wkrull {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", help="output path (default stdout)")
        sp.add_argument("--format", choices=("json", "text"), default="json")

    a = sub.add_parser("analyze", help="property ladder and spectrum of one monoid")
    a.add_argument("--input", required=True, help="monoid JSON file ('-' for stdin)")
    a.add_argument("--degree-bound", type=int, help="override the derived search bound")
    a.add_argument("--timing", action="store_true", help="include wall-clock timing (breaks byte-identity)")
    common(a)

    c = sub.add_parser("counterexample", help="dyadic chain checks")
    c.add_argument("--depth", type=_depth, default=ce.MAX_DEPTH)
    common(c)

    k = sub.add_parser("corpus", help="random monoids, deciders against oracles")
    k.add_argument("--seed", type=int, default=1)
    k.add_argument("--count", type=_count, default=20)
    k.add_argument("--degree-bound", type=int)
    common(k)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            try:
                if args.input == "-":
                    text = sys.stdin.read()
                else:
                    with open(args.input, encoding="utf-8") as fh:
                        text = fh.read()
                inp = load_input(text)
                doc = analyze_document(inp, args.degree_bound, args.timing)
            except (InputError, OSError, DimensionMismatch) as exc:
                print(f"wkrull: input error: {exc}", file=sys.stderr)
                return EXIT_PARSE
            _emit(render(doc, args.format), args.out)
            return EXIT_OK
        if args.command == "counterexample":
            doc = counterexample_document(args.depth)
            _emit(render(doc, args.format), args.out)
            return EXIT_OK if doc["all_passed"] else EXIT_COUNTEREXAMPLE
        doc = corpus_document(args.seed, args.count, args.degree_bound)
        _emit(render(doc, args.format), args.out)
        return EXIT_CONTRADICTION if doc["contradictions"] else EXIT_OK
    except (UnsupportedDimension, UnsupportedMonoid) as exc:
        print(f"wkrull: unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except BoundExceeded as exc:
        print(f"wkrull: bound exceeded (bound {exc.bound}): {exc}", file=sys.stderr)
        return EXIT_BOUND
    except WkrullError as exc:
        print(f"wkrull: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
