"""Batch command-line front end.

Thin client over the same operations the HTTP service exposes: parse
documents from files or stdin, run one operation, print a deterministic
JSON verdict.

Exit codes: 0 ok/true, 1 predicate or verification false, 2 parse/schema
error, 3 mathematical domain error.
"""
from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import documents, ops
from .errors import CanrelError, DocumentError
from .paths import ENGINES

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_SCHEMA = 2
EXIT_DOMAIN = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="canrel",
        description=(
            "Compose, classify, normalize, and factorize relations: finite-set "
            "relations or linear canonical relations between symplectic spaces."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, engine_flag: bool = True):
        p.add_argument(
            "--file", action="append", default=[], metavar="PATH",
            help="input document file (repeatable); stdin is read if no file is given",
        )
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", action="store_true", help="compact machine output (default)")
        fmt.add_argument("--pretty", action="store_true", help="indented output")
        if engine_flag:
            p.add_argument("--engine", choices=sorted(ENGINES), help="restrict to one engine")

    p = sub.add_parser("compose", help="compose two morphisms")
    add_common(p)
    p.add_argument("names", nargs="*", metavar="NAME", help="two morphism names (default: first two in file order)")

    p = sub.add_parser("check", help="evaluate a predicate on a morphism (exit 0 true, 1 false)")
    add_common(p)
    p.add_argument("predicate", choices=ops.PREDICATES)
    p.add_argument("names", nargs="*", metavar="NAME", help="morphism name (default: the only morphism)")

    p = sub.add_parser("factorize", help="factor a word into a reduction followed by a coreduction")
    add_common(p, engine_flag=False)
    p.add_argument(
        "--mode", choices=("prop4", "ww"), default="ww",
        help="prop4: one-step factorization of a single relation; ww: the full iterated construction (default)",
    )
    p.add_argument("names", nargs="*", metavar="NAME", help="path (or single relation) name")

    p = sub.add_parser("normalize", help="collapse a path to its greedy normal form")
    add_common(p, engine_flag=False)
    p.add_argument("names", nargs="*", metavar="NAME", help="path name (default: the only path)")

    p = sub.add_parser("verify", help="replay a factorization trace against a path")
    add_common(p, engine_flag=False)
    p.add_argument("names", nargs="*", metavar="NAME", help="path name and factorization name")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _load_store(args) -> documents.DocumentStore:
    store = documents.DocumentStore()
    if args.file:
        for path in args.file:
            try:
                with open(path, "r", encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise DocumentError(f"cannot read {path}: {exc}") from exc
            documents.parse_text(text, store)
    else:
        documents.parse_text(sys.stdin.read(), store)
    return store


def _select_morphisms(store, names, engine, count) -> list[tuple[str, object]]:
    if names:
        if len(names) != count:
            raise DocumentError(f"expected {count} name(s), got {len(names)}")
        picked = []
        for name in names:
            if name not in store.morphisms:
                raise DocumentError(f"no morphism named {name!r}")
            picked.append(store.morphisms[name])
    else:
        pool = [m for m in store.morphism_order if engine is None or m[0] == engine]
        if len(pool) < count:
            raise DocumentError(
                f"need {count} morphism document(s), found {len(pool)}"
            )
        picked = pool[:count]
    kinds = {kind for kind, _ in picked}
    if len(kinds) > 1:
        raise DocumentError(f"morphisms from different engines: {sorted(kinds)}")
    if engine and kinds != {engine}:
        raise DocumentError(f"selected morphisms are not from engine {engine!r}")
    return picked


def _select_word_doc(store, names, wrap_morphism: bool = False) -> documents.WordDocument:
    if names:
        if len(names) != 1:
            raise DocumentError(f"expected one name, got {len(names)}")
        name = names[0]
        if name in store.paths:
            return store.paths[name]
        if wrap_morphism and name in store.morphisms:
            kind, morphism = store.morphisms[name]
            return documents.WordDocument(kind, (morphism,))
        raise DocumentError(f"no path named {name!r}")
    if store.path_order:
        if len(store.path_order) > 1:
            raise DocumentError("several path documents; name the one to use")
        return store.path_order[0]
    if wrap_morphism and len(store.morphism_order) == 1:
        kind, morphism = store.morphism_order[0]
        return documents.WordDocument(kind, (morphism,))
    raise DocumentError("no path document found")


def _emit(verdict: dict, pretty: bool) -> None:
    print(documents.dumps(verdict, pretty=pretty))


def run(argv: Sequence[str]) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn

        from .service import app

        uvicorn.run(app, host=args.host, port=args.port)
        return EXIT_OK

    pretty = bool(args.pretty)
    try:
        store = _load_store(args)
        if args.command == "compose":
            (kind, left), (_, right) = _select_morphisms(
                store, args.names, getattr(args, "engine", None), 2
            )
            verdict = ops.compose_op(kind, left, right)
        elif args.command == "check":
            [(kind, morphism)] = _select_morphisms(
                store, args.names, getattr(args, "engine", None), 1
            )
            verdict = ops.check_op(kind, morphism, args.predicate)
        elif args.command == "factorize":
            word_doc = _select_word_doc(store, args.names, wrap_morphism=True)
            verdict = ops.factorize_op(word_doc.engine_name, word_doc.word, mode=args.mode)
        elif args.command == "normalize":
            word_doc = _select_word_doc(store, args.names)
            verdict = ops.normalize_op(word_doc.path)
        else:
            word_doc, fact = _select_verify_args(store, args.names)
            verdict = ops.verify_op(word_doc.engine_name, word_doc.word, fact)
    except DocumentError as exc:
        _emit({"ok": False, "error": str(exc)}, pretty)
        return EXIT_SCHEMA
    except CanrelError as exc:
        _emit({"ok": False, "error": str(exc)}, pretty)
        return EXIT_DOMAIN

    _emit(verdict, pretty)
    return EXIT_OK if verdict["ok"] else EXIT_FALSE


def _select_verify_args(store, names):
    if names:
        if len(names) != 2:
            raise DocumentError("verify takes a path name and a factorization name")
        path_name, fact_name = names
        if path_name not in store.paths:
            raise DocumentError(f"no path named {path_name!r}")
        if fact_name not in store.factorizations:
            raise DocumentError(f"no factorization named {fact_name!r}")
        return store.paths[path_name], store.factorizations[fact_name]
    if len(store.path_order) != 1 or len(store.factorization_order) != 1:
        raise DocumentError("verify needs exactly one path and one factorization document")
    return store.path_order[0], store.factorization_order[0]


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
