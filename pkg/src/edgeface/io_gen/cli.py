"""Command-line interface.

Exit status is 0 on success, 1 when the input is rejected or a check fails
(bad document, violated precondition, invalid colouring) and 2 on usage
errors such as unknown options or unreadable files.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from ..colouring import oracle_colour, validate
from ..configs import FAMILIES, detect_all
from ..discharge import audit, serialise_report
from ..exceptions import EdgeFaceError
from ..solver import colour
from .enumerate import MAX_VERTICES, enumerate_small
from .formats import parse_colouring, parse_graph, serialise_colouring, serialise_graph
from .generators import KINDS, PLATONIC, generate

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2


class _UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise _UsageError(f"cannot write {path}: {exc.strerror}") from exc


def cmd_colour(args) -> int:
    G = parse_graph(_read(args.graph))
    _write(serialise_colouring(colour(G)), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    G = parse_graph(_read(args.graph))
    lam = parse_colouring(_read(args.colouring), G)
    verdict = validate(G, lam, require_total=True)
    if verdict.valid:
        print("valid")
        return EXIT_OK
    for v in verdict.violations:
        print(v)
    return EXIT_FAILURE


def cmd_audit(args) -> int:
    G = parse_graph(_read(args.graph))
    sys.stdout.write(serialise_report(audit(G), diagnostics=not args.plain))
    return EXIT_OK


def cmd_detect(args) -> int:
    G = parse_graph(_read(args.graph))
    for m in detect_all(G, args.family):
        print(m)
    return EXIT_OK


def cmd_oracle(args) -> int:
    if args.k < 1:
        raise _UsageError("--k must be positive")
    G = parse_graph(_read(args.graph))
    res = oracle_colour(G, args.k, args.budget)
    print(res.status)
    if res.colouring is not None:
        sys.stdout.write(serialise_colouring(res.colouring))
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.kind not in ("platonic",) and args.n is None:
        raise _UsageError(f"--n is required for kind {args.kind}")
    G = generate(args.kind, args.n or 0, args.max_degree, args.seed, args.name)
    meta = [f"kind {args.kind}"]
    if args.kind == "platonic":
        meta.append(f"name {args.name or 'tetrahedron'}")
    else:
        meta += [f"n {args.n}", f"max-degree {args.max_degree}", f"seed {args.seed}"]
    sys.stdout.write(serialise_graph(G, comments=[" ".join(meta), "prng mt19937"]))
    return EXIT_OK


def cmd_enum(args) -> int:
    if not 1 <= args.max_vertices <= MAX_VERTICES:
        raise _UsageError(f"--max-vertices must be in 1..{MAX_VERTICES}")
    docs = [serialise_graph(G) for G in enumerate_small(args.max_vertices)]
    sys.stdout.write("\n".join(docs))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="edgeface", description="Edge-face colouring of plane graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("colour", help="9-colour the edges and faces of a graph")
    s.add_argument("graph")
    s.add_argument("--out", help="write the colouring here instead of stdout")
    s.set_defaults(func=cmd_colour)

    s = sub.add_parser("verify", help="check a colouring against a graph")
    s.add_argument("graph")
    s.add_argument("colouring")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("audit", help="print the discharging report")
    s.add_argument("graph")
    s.add_argument("--plain", action="store_true", help="omit the diagnostic comment lines")
    s.set_defaults(func=cmd_audit)

    s = sub.add_parser("detect", help="list reducible configurations")
    s.add_argument("graph")
    s.add_argument("--family", choices=sorted(FAMILIES))
    s.set_defaults(func=cmd_detect)

    s = sub.add_parser("oracle", help="exact k-colourability check")
    s.add_argument("graph")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--budget", type=int, default=1_000_000, help="search node limit")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("gen", help="generate a graph")
    s.add_argument("--kind", choices=KINDS, required=True)
    s.add_argument("--n", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-degree", type=int, default=8)
    s.add_argument("--name", choices=PLATONIC, help="solid for --kind platonic")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("enum", help="all small plane graphs")
    s.add_argument("--max-vertices", type=int, required=True)
    s.set_defaults(func=cmd_enum)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"edgeface: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EdgeFaceError as exc:
        print(f"edgeface: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
