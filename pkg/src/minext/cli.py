"""Command-line interface: validate, extend, classify, enumerate, verify, catalog.

Exit codes: 0 success, 1 suite failure or failed classification precondition,
2 invalid input.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bimodule import RRng
from .catalog import REGISTRY, BadParams, UnknownConstructor, make
from .classify import NotCentral, NotMinimalExtension, NotPrimeBase, classify_central, classify_minimal_extension
from .core import AlgebraError, Caps, FiniteRing
from .extensions import IdealExtension, ideal_extension
from .fileformat import ParseError, emit_ring, emit_rrng, load
from .substructure import EmbeddedSubring, enumerate_ideals, find_embeddings, subrings_containing
from .suites import SUITES, UnknownSuite, run_suite


class InputError(Exception):
    pass


def resolve(spec: str):
    """A catalog object or the first record of a file."""
    if spec.startswith("catalog:"):
        return make(spec)
    if Path(spec).exists():
        return load(spec)[0]
    if "(" in spec:
        return make(spec)
    raise InputError(f"{spec}: not a file or catalog spec")


def as_ring(obj) -> FiniteRing:
    if isinstance(obj, IdealExtension):
        return obj.E
    if isinstance(obj, EmbeddedSubring):
        return obj.big
    if isinstance(obj, FiniteRing):
        return obj
    raise InputError(f"expected a ring, got {type(obj).__name__}")


def _same_ring(A: FiniteRing, B: FiniteRing) -> bool:
    return A is B or (A.orders == B.orders and (A.sc == B.sc).all() and A.unity == B.unity)


def as_extension(base: FiniteRing, obj) -> EmbeddedSubring:
    if isinstance(obj, IdealExtension):
        obj = obj.R_embed
    if isinstance(obj, EmbeddedSubring) and _same_ring(obj.small, base):
        return obj
    big = as_ring(obj)
    found = find_embeddings(base, big, first_only=True)
    if not found:
        raise InputError(f"{base.name} does not embed in {big.name}")
    return found[0]


def _fmt(X) -> str:
    return "{" + ", ".join(str(x) for x in X.sorted()) + "}"


def cmd_validate(args) -> int:
    for obj in load(args.file):
        if isinstance(obj, RRng):
            print(f"ok rrng {obj.name} order {obj.n} over {obj.R.name}")
        else:
            print(f"ok ring {obj.name} order {obj.n}")
    return 0


def cmd_extend(args) -> int:
    M = resolve(args.rrng)
    if not isinstance(M, RRng):
        raise InputError("--rrng must name an R-rng")
    X = ideal_extension(M)
    text = emit_ring(X.E, args.name)
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out}: ring of order {X.E.n}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_classify(args) -> int:
    base = as_ring(resolve(args.base))
    emb = as_extension(base, resolve(args.ext))
    try:
        if args.central:
            c = classify_central(emb)
            print(f"type {c.tag}")
            if c.M is not None:
                print(f"maximal ideal M = {_fmt(c.M)}")
                print(f"model order {c.model.big.n}; R-isomorphism found")
            return 0
        t = classify_minimal_extension(emb)
    except (NotPrimeBase, NotMinimalExtension, NotCentral) as exc:
        print(f"{type(exc).__name__}: {exc}")
        return 1
    print(f"type {t.tag}")
    w = t.witnesses
    if "J" in w:
        print(f"ideal meeting R trivially: {_fmt(w['J'])}")
    if "I" in w:
        print(f"minimal R-rng I of order {w['I'].n}, I^2 != 0")
    if "M" in w:
        print(f"bimodule M of order {w['M'].n}, M^2 = 0")
    if "P" in w:
        print(f"prime ideal P = {_fmt(w['P'])}")
    return 0


def cmd_enumerate(args) -> int:
    if args.ideals:
        sets = enumerate_ideals(as_ring(resolve(args.ideals)))
    else:
        obj = resolve(args.subrings_over)
        if isinstance(obj, IdealExtension):
            obj = obj.R_embed
        if not isinstance(obj, EmbeddedSubring):
            raise InputError("--subrings-over needs an extension")
        sets = subrings_containing(obj.big, obj.image)
    for X in sets:
        print(f"{len(X)} {_fmt(X)}")
    print(f"total {len(sets)}")
    return 0


def cmd_verify(args) -> int:
    caps = Caps(closure=args.closure_cap, enumeration=args.enumeration_cap)
    report = run_suite(args.suite, max_order=args.max_order, jobs=args.jobs, caps=caps)
    for line in report.lines():
        print(line)
    return 0 if report.ok else 1


def cmd_catalog(args) -> int:
    if args.action == "list":
        for name, (_, coerce, doc) in REGISTRY.items():
            arity = "..." if coerce is None else len(coerce)
            print(f"{name}/{arity}: {doc}")
        print("suites: " + " ".join(SUITES))
        return 0
    if not args.spec:
        raise InputError("catalog emit needs a spec")
    obj = make(args.spec)
    if isinstance(obj, RRng):
        sys.stdout.write(emit_rrng(obj))
    else:
        sys.stdout.write(emit_ring(as_ring(obj)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="minext", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="parse and validate a ring/rrng file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("extend", help="emit E(R, I) for an R-rng")
    s.add_argument("--rrng", required=True)
    s.add_argument("--out")
    s.add_argument("--name")
    s.set_defaults(func=cmd_extend)

    s = sub.add_parser("classify", help="type of a minimal extension of a prime ring")
    s.add_argument("--base", required=True)
    s.add_argument("--ext", required=True)
    s.add_argument("--central", action="store_true")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("enumerate", help="list ideals or subrings over R")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--ideals", metavar="SPEC")
    g.add_argument("--subrings-over", metavar="SPEC")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("verify", help="run a verification suite")
    s.add_argument("--suite", required=True)
    s.add_argument("--max-order", type=int)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--closure-cap", type=int, default=4096)
    s.add_argument("--enumeration-cap", type=int, default=65536)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("catalog", help="list constructors or emit one as a file")
    s.add_argument("action", choices=["list", "emit"])
    s.add_argument("spec", nargs="?")
    s.set_defaults(func=cmd_catalog)
    return p


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InputError, BadParams, UnknownConstructor, UnknownSuite) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except AlgebraError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
