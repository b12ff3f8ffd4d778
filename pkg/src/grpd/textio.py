"""The GRPD text format plus subset and mapping sidecar files.

A GRPD document::

    # comment
    groupoid P2
    elements (1,1) (1,2) (2,1) (2,2)
    prod (1,1) (1,1) (1,1)
    ...
    end

``elements`` may repeat; ``prod x y z`` means ``xy = z``. Input may use LF
or CRLF line endings; output always uses LF.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .core import Groupoid, RawTable, validate
from .errors import DuplicateElement, DuplicateProduct, ParseError, UndeclaredToken

ELEMENTS_PER_LINE = 12


@dataclass(frozen=True)
class Tok:
    text: str
    line: int
    column: int


@dataclass
class GrpdDocument:
    name: str
    elements: list[str] = field(default_factory=list)
    products: list[tuple[str, str, str]] = field(default_factory=list)
    element_spans: dict[str, tuple[int, int]] = field(default_factory=dict)
    product_spans: list[tuple[int, int]] = field(default_factory=list)

    def to_raw(self) -> RawTable:
        return RawTable.from_tokens(self.elements, self.products, self.name)


def _lines(text: str) -> Iterator[tuple[int, list[Tok], int]]:
    """Yield ``(line number, tokens, line length)`` with comments stripped."""
    for n, line in enumerate(text.split("\n"), start=1):
        if line.endswith("\r"):
            line = line[:-1]
        cut = line.find("#")
        body = line if cut < 0 else line[:cut]
        toks, col = [], 0
        for part in body.split():
            col = body.index(part, col)
            toks.append(Tok(part, n, col + 1))
            col += len(part)
        yield n, toks, len(line)


def parse(text: str) -> GrpdDocument:
    doc: GrpdDocument | None = None
    declared: dict[str, tuple[int, int]] = {}
    keys: set[tuple[str, str]] = set()
    ended = False
    last_line, last_len = 1, 0

    for n, toks, length in _lines(text):
        last_line, last_len = n, length
        if not toks:
            continue
        head = toks[0]
        if ended:
            raise ParseError(head.line, head.column, f"expected end of input, got {head.text!r}")
        if doc is None:
            if head.text != "groupoid":
                raise ParseError(head.line, head.column, f"expected 'groupoid', got {head.text!r}")
            if len(toks) != 2:
                at = toks[2] if len(toks) > 2 else None
                if at is None:
                    raise ParseError(n, length + 1, "expected groupoid name, got end of line")
                raise ParseError(at.line, at.column, f"expected end of line, got {at.text!r}")
            doc = GrpdDocument(toks[1].text)
            continue
        if head.text == "elements":
            if len(toks) == 1:
                raise ParseError(n, length + 1, "expected element token, got end of line")
            if doc.products:
                raise ParseError(head.line, head.column, "expected 'prod' or 'end', got 'elements'")
            for t in toks[1:]:
                if t.text in declared:
                    first = declared[t.text]
                    raise DuplicateElement(
                        t.line, t.column, f"element {t.text!r} already declared at {first[0]}:{first[1]}"
                    )
                declared[t.text] = (t.line, t.column)
                doc.elements.append(t.text)
            continue
        if head.text == "prod":
            if not doc.elements:
                raise ParseError(head.line, head.column, "expected 'elements', got 'prod'")
            if len(toks) != 4:
                if len(toks) < 4:
                    raise ParseError(n, length + 1, f"expected 3 tokens after 'prod', got {len(toks) - 1}")
                raise ParseError(toks[4].line, toks[4].column, f"expected end of line, got {toks[4].text!r}")
            x, y, z = toks[1:]
            for t in (x, y, z):
                if t.text not in declared:
                    raise UndeclaredToken(t.line, t.column, f"undeclared element {t.text!r}")
            if (x.text, y.text) in keys:
                raise DuplicateProduct(x.line, x.column, f"product {x.text} {y.text} given twice")
            keys.add((x.text, y.text))
            doc.products.append((x.text, y.text, z.text))
            doc.product_spans.append((n, head.column))
            continue
        if head.text == "end":
            if len(toks) > 1:
                raise ParseError(toks[1].line, toks[1].column, f"expected end of line, got {toks[1].text!r}")
            if not doc.elements:
                raise ParseError(head.line, head.column, "expected 'elements', got 'end'")
            ended = True
            continue
        raise ParseError(
            head.line, head.column, f"expected 'elements', 'prod' or 'end', got {head.text!r}"
        )

    if doc is None:
        raise ParseError(last_line, last_len + 1, "expected 'groupoid', got end of input")
    if not ended:
        raise ParseError(last_line, last_len + 1, "expected 'end', got end of input")
    doc.element_spans = declared
    return doc


def load(text: str) -> Groupoid:
    """Parse then validate."""
    return validate(parse(text).to_raw())


def read_groupoid(path) -> Groupoid:
    with open(path, encoding="utf-8", newline="") as fh:
        return load(fh.read())


def serialize(G: Groupoid) -> str:
    """Canonical text: declaration order kept, products sorted by index pair."""
    out = [f"groupoid {G.name}"]
    els = G.elements
    for k in range(0, len(els), ELEMENTS_PER_LINE):
        out.append("elements " + " ".join(els[k:k + ELEMENTS_PER_LINE]))
    for i, j, z in G.products():
        out.append(f"prod {els[i]} {els[j]} {els[z]}")
    out.append("end")
    return "\n".join(out) + "\n"


def write_groupoid(G: Groupoid, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize(G))


def parse_subset(text: str, G: Groupoid | None = None) -> list[str]:
    """One element token per line; blank lines and ``#`` comments ignored."""
    out = []
    for n, toks, _ in _lines(text):
        if not toks:
            continue
        if len(toks) > 1:
            raise ParseError(n, toks[1].column, f"expected one token per line, got {toks[1].text!r}")
        t = toks[0]
        if G is not None and t.text not in G.elements:
            raise UndeclaredToken(n, t.column, f"unknown element {t.text!r}")
        out.append(t.text)
    return out


def serialize_subset(tokens) -> str:
    return "".join(f"{t}\n" for t in tokens)


def parse_mapping(text: str) -> dict[str, str]:
    """Lines ``x -> y``."""
    out: dict[str, str] = {}
    for n, toks, length in _lines(text):
        if not toks:
            continue
        if len(toks) < 3:
            raise ParseError(n, length + 1, "expected 'x -> y', got end of line")
        if toks[1].text != "->":
            raise ParseError(n, toks[1].column, f"expected '->', got {toks[1].text!r}")
        if len(toks) > 3:
            raise ParseError(n, toks[3].column, f"expected end of line, got {toks[3].text!r}")
        x = toks[0]
        if x.text in out:
            raise DuplicateProduct(n, x.column, f"{x.text!r} mapped twice")
        out[x.text] = toks[2].text
    return out


def serialize_mapping(mapping: dict[str, str]) -> str:
    return "".join(f"{x} -> {y}\n" for x, y in mapping.items())
