"""Command-line driver over GRPD files.

Exit codes: 0 success, 1 predicate or property false, 2 parse error,
3 axiom violation, 4 usage error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import builders, center_commutator as cc, inner, normality, textio
from .core import Groupoid, validate
from .errors import (
    AxiomViolation,
    BoundExceeded,
    GroupoidError,
    NotASubgroupoid,
    ParseError,
    PreconditionFailed,
)
from .morphisms import check_map
from .subgroupoid import certify, element_set, generate, generate_wide
from .verify import Check, SuiteReport, run_suite

EXIT_OK, EXIT_FALSE, EXIT_PARSE, EXIT_AXIOM, EXIT_USAGE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


class _Out:
    def __init__(self, stdout, stderr):
        self.out = stdout
        self.err = stderr

    def write(self, text: str) -> None:
        self.out.write(text)

    def lines(self, items) -> None:
        for item in items:
            self.out.write(f"{item}\n")


def _read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str) -> Groupoid:
    text = _read_text(path)
    try:
        doc = textio.parse(text)
    except ParseError as exc:
        exc.path = path
        raise
    return validate(doc.to_raw())


def _subset(path: str, G: Groupoid) -> list[str]:
    try:
        return textio.parse_subset(_read_text(path), G)
    except ParseError as exc:
        exc.path = path
        raise


def _sub(path: str, G: Groupoid):
    tokens = _subset(path, G)
    if not tokens:
        raise UsageError(f"{path}: empty subset")
    return certify(G, tokens)


def _emit_groupoid(G: Groupoid, out_path: Optional[str], io: _Out) -> None:
    if out_path:
        try:
            textio.write_groupoid(G, out_path)
        except OSError as exc:
            raise UsageError(f"cannot write {out_path}: {exc.strerror}") from None
    else:
        io.write(textio.serialize(G))


def cmd_validate(args, io):
    G = _load(args.file)
    io.write(f"ok {G.name} |G|={len(G)} |G0|={len(G.identities)}\n")
    return EXIT_OK


def cmd_info(args, io):
    G = _load(args.file)
    io.write(f"name {G.name}\n|G| {len(G)}\n|G0| {len(G.identities)}\n")
    for e in G.identities:
        io.write(f"isotropy {G.elements[e]} {len(G.isotropy(e))}\n")
    io.write(f"abelian {'yes' if G.is_abelian() else 'no'}\n")
    return EXIT_OK


def _build(kind: str, params: list[str]) -> Groupoid:
    def need(k):
        if len(params) != k:
            raise UsageError(f"build {kind} takes {k} argument(s), got {len(params)}")

    try:
        if kind == "pair":
            need(1)
            return builders.pair(int(params[0]))
        if kind == "group":
            need(1)
            return builders.group_by_name(params[0])
        if kind == "bundle":
            if not params:
                raise UsageError("build bundle needs at least one group")
            return builders.bundle(*(builders.group_by_name(p) for p in params))
        if kind == "product":
            need(2)
            return builders.product(builders.pair(int(params[0])), builders.group_by_name(params[1]))
        if kind == "trivial":
            need(0)
            return builders.trivial()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    raise UsageError(f"unknown build kind {kind!r}; expected pair, group, bundle, product or trivial")


def cmd_build(args, io):
    G = _build(args.kind, args.params)
    _emit_groupoid(G, args.output, io)
    return EXIT_OK


def cmd_subgroupoid(args, io):
    G = _load(args.file)
    B = element_set(G, _subset(args.generate, G))
    if not B.members:
        raise UsageError(f"{args.generate}: empty subset")
    H = generate_wide(B) if args.wide else generate(B)
    io.lines(H.tokens())
    return EXIT_OK


def cmd_normal(args, io):
    G = _load(args.file)
    H = _sub(args.sub, G)
    ok = normality.is_normal(H)
    io.write("normal\n" if ok else "not normal\n")
    return EXIT_OK if ok else EXIT_FALSE


def cmd_normalizer(args, io):
    G = _load(args.file)
    N = normality.normalizer(_sub(args.sub, G))
    io.lines(N.tokens())
    return EXIT_OK


def cmd_closure(args, io):
    G = _load(args.file)
    tokens = _subset(args.set, G)
    if not tokens:
        raise UsageError(f"{args.set}: empty subset")
    io.lines(normality.normal_closure(element_set(G, tokens)).tokens())
    return EXIT_OK


def cmd_quotient(args, io):
    G = _load(args.file)
    Q = normality.quotient(_sub(args.sub, G))
    _emit_groupoid(Q.groupoid, args.output, io)
    return EXIT_OK


def cmd_center(args, io):
    io.lines(cc.center(_load(args.file)).tokens())
    return EXIT_OK


def cmd_commutator(args, io):
    io.lines(cc.commutator_subgroupoid(_load(args.file)).tokens())
    return EXIT_OK


def cmd_abelianize(args, io):
    Q = cc.abelianization(_load(args.file))
    _emit_groupoid(Q.groupoid, args.output, io)
    return EXIT_OK


def cmd_inner(args, io):
    G = _load(args.file)
    IG = inner.inner_groupoid(G)
    els = G.elements
    for f in IG.isos:
        body = " ".join(f"{els[x]}>{els[y]}" for x, y in f.mapping)
        io.write(f"{IG.token(f)} {els[f.domain_base]} -> {els[f.range_base]} : {body}\n")
    rep = inner.verify_inner_iso_theorem(G)
    io.lines(rep.lines())
    return EXIT_OK if rep.ok else EXIT_FALSE


def cmd_checkmap(args, io):
    S, T = _load(args.source), _load(args.target)
    try:
        mapping = textio.parse_mapping(_read_text(args.map))
    except ParseError as exc:
        exc.path = args.map
        raise
    m = check_map(mapping, S, T)
    yn = lambda b: "yes" if b else "no"  # noqa: E731
    io.write(
        f"hom {yn(m.is_hom)}\nstrong {yn(m.is_strong)}\n"
        f"injective {yn(m.is_injective)}\nsurjective {yn(m.is_surjective)}\n"
    )
    return EXIT_OK if m.is_hom else EXIT_FALSE


def cmd_verify(args, io):
    text = _read_text(args.file)
    try:
        doc = textio.parse(text)
    except ParseError as exc:
        exc.path = args.file
        raise
    try:
        G = validate(doc.to_raw())
    except AxiomViolation as exc:
        rep = SuiteReport(doc.name, len(doc.elements), "none")
        rep.checks.append(Check("AXIOMS", "FAIL", f"{exc.axiom} ({', '.join(exc.witness)})"))
        io.write(rep.lines() if args.format == "lines" else rep.text())
        return EXIT_AXIOM
    exhaustive = {"auto": None, "exhaustive": True, "sample": False}[args.mode]
    rep = run_suite(G, exhaustive=exhaustive, bound=args.bound)
    io.write(rep.lines() if args.format == "lines" else rep.text())
    return EXIT_OK if rep.ok else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="grpd", description="Finite groupoid toolkit over GRPD files.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        return sp

    add("validate", cmd_validate, "check the groupoid axioms").add_argument("file")
    add("info", cmd_info, "sizes, isotropy orders, abelian flag").add_argument("file")

    sp = add("build", cmd_build, "write a fixture groupoid")
    sp.add_argument("kind", help="pair | group | bundle | product | trivial")
    sp.add_argument("params", nargs="*")
    sp.add_argument("-o", "--output")

    sp = add("subgroupoid", cmd_subgroupoid, "subgroupoid generated by a subset")
    sp.add_argument("file")
    sp.add_argument("--generate", required=True, metavar="SET")
    sp.add_argument("-w", "--wide", action="store_true")

    for name, fn, help_ in (
        ("normal", cmd_normal, "is the subgroupoid normal"),
        ("normalizer", cmd_normalizer, "normalizer of a wide subgroupoid"),
    ):
        sp = add(name, fn, help_)
        sp.add_argument("file")
        sp.add_argument("--sub", required=True, metavar="S")

    sp = add("closure", cmd_closure, "normal closure of a subset")
    sp.add_argument("file")
    sp.add_argument("--set", required=True, metavar="S")

    sp = add("quotient", cmd_quotient, "quotient by a normal subgroupoid")
    sp.add_argument("file")
    sp.add_argument("--sub", required=True, metavar="S")
    sp.add_argument("-o", "--output")

    add("center", cmd_center, "center Z(G)").add_argument("file")
    add("commutator", cmd_commutator, "commutator subgroupoid G'").add_argument("file")

    sp = add("abelianize", cmd_abelianize, "G/G'")
    sp.add_argument("file")
    sp.add_argument("-o", "--output")

    add("inner", cmd_inner, "inner isomorphisms and G/Z(G) ≅ I(G)").add_argument("file")

    sp = add("checkmap", cmd_checkmap, "classify a map between groupoids")
    sp.add_argument("source")
    sp.add_argument("target")
    sp.add_argument("--map", required=True, metavar="M")

    sp = add("verify", cmd_verify, "run every proposition check")
    sp.add_argument("file")
    sp.add_argument("--format", choices=["text", "lines"], default="text")
    sp.add_argument("--mode", choices=["auto", "exhaustive", "sample"], default="auto")
    sp.add_argument("--bound", type=int, default=None,
                    help="largest isotropy order for A(G) (default: $GRPD_BOUND or 8)")
    return p


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    io = _Out(stdout, stderr)
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, io)
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except ParseError as exc:
        where = getattr(exc, "path", "<input>")
        stderr.write(f"{where}:{exc.line}:{exc.column}: {type(exc).__name__}: {exc.message}\n")
        return EXIT_PARSE
    except AxiomViolation as exc:
        stderr.write(f"axiom violation: {exc}\n")
        return EXIT_AXIOM
    except BoundExceeded as exc:
        stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (PreconditionFailed, NotASubgroupoid) as exc:
        stderr.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_FALSE
    except GroupoidError as exc:
        stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_FALSE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
