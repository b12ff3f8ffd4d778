"""Finite groupoids stored as partial multiplication tables.

Elements are addressed by position in the carrier (declaration order).
Products follow the convention ``gh`` exists iff ``d(g) == r(h)``, so a
product reads right to left like function composition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Optional

from .errors import AxiomViolation, NotAnIdentity, UnknownElement

Product = Mapping[tuple[int, int], int]


def _bad_token(tok: str) -> bool:
    return not tok or "#" in tok or any(c.isspace() for c in tok)


@dataclass(frozen=True)
class RawTable:
    """Unvalidated carrier plus partial product; absent pairs are undefined."""

    elements: tuple[str, ...]
    products: Product = field(default_factory=dict)
    name: str = "G"

    @classmethod
    def from_tokens(cls, elements, triples, name="G") -> "RawTable":
        """Build from ``(x, y, z)`` token triples meaning ``xy = z``."""
        elements = tuple(elements)
        pos = {t: i for i, t in enumerate(elements)}
        products = {}
        for x, y, z in triples:
            for t in (x, y, z):
                if t not in pos:
                    raise UnknownElement(t)
            products[pos[x], pos[y]] = pos[z]
        return cls(elements, products, name)


@dataclass(frozen=True)
class IsotropyGroup:
    base: int
    members: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)


class Groupoid:
    """A validated finite groupoid. Build through :func:`validate`."""

    def __init__(self, elements, table, dmap, rmap, invmap, name="G"):
        self.elements: tuple[str, ...] = tuple(elements)
        self.name = name
        self.table: tuple[tuple[Optional[int], ...], ...] = table
        self.dmap: tuple[int, ...] = dmap
        self.rmap: tuple[int, ...] = rmap
        self.invmap: tuple[int, ...] = invmap
        self._pos = {t: i for i, t in enumerate(self.elements)}
        self.identities: tuple[int, ...] = tuple(
            i for i in range(len(self.elements)) if dmap[i] == i
        )

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"Groupoid({self.name!r}, |G|={len(self)}, |G0|={len(self.identities)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Groupoid):
            return NotImplemented
        return self.elements == other.elements and self.table == other.table

    def __hash__(self) -> int:
        return hash((self.elements, self.table))

    # index level

    def mul(self, i: int, j: int) -> Optional[int]:
        return self.table[i][j]

    def index(self, token) -> int:
        if isinstance(token, int) and not isinstance(token, bool):
            if 0 <= token < len(self.elements):
                return token
            raise UnknownElement(token)
        try:
            return self._pos[token]
        except KeyError:
            raise UnknownElement(token) from None

    def indices(self, tokens: Iterable) -> frozenset[int]:
        return frozenset(self.index(t) for t in tokens)

    def tokens(self, idxs: Iterable[int]) -> list[str]:
        """Tokens for ``idxs`` in carrier order."""
        return [self.elements[i] for i in sorted(idxs)]

    def products(self) -> Iterator[tuple[int, int, int]]:
        """Defined products ``(x, y, xy)`` in lexicographic index order."""
        for i, row in enumerate(self.table):
            for j, k in enumerate(row):
                if k is not None:
                    yield i, j, k

    # token level

    def d(self, g) -> str:
        return self.elements[self.dmap[self.index(g)]]

    def r(self, g) -> str:
        return self.elements[self.rmap[self.index(g)]]

    def inv(self, g) -> str:
        return self.elements[self.invmap[self.index(g)]]

    def compose(self, g, h) -> Optional[str]:
        k = self.table[self.index(g)][self.index(h)]
        return None if k is None else self.elements[k]

    # structure

    def is_identity(self, i: int) -> bool:
        return self.dmap[i] == i

    def is_isotropic(self, i: int) -> bool:
        return self.dmap[i] == self.rmap[i]

    @cached_property
    def _isotropy(self) -> dict[int, tuple[int, ...]]:
        groups: dict[int, list[int]] = {e: [] for e in self.identities}
        for i in range(len(self)):
            if self.dmap[i] == self.rmap[i]:
                groups[self.dmap[i]].append(i)
        return {e: tuple(m) for e, m in groups.items()}

    def isotropy(self, e) -> IsotropyGroup:
        """The vertex group at identity ``e``, with its group axioms re-checked."""
        e = self.index(e)
        if not self.is_identity(e):
            raise NotAnIdentity(f"{self.elements[e]!r} is not an identity")
        members = self._isotropy[e]
        mset = set(members)
        for x in members:
            if self.invmap[x] not in mset:
                raise AxiomViolation("A4", (self.elements[x],), "isotropy inverse escapes")
            for y in members:
                z = self.table[x][y]
                if z is None or z not in mset:
                    raise AxiomViolation(
                        "COMP", (self.elements[x], self.elements[y]), "isotropy not closed"
                    )
        return IsotropyGroup(e, members)

    def isotropy_members(self, e: int) -> tuple[int, ...]:
        return self._isotropy[e]

    @cached_property
    def iso_members(self) -> frozenset[int]:
        return frozenset(i for i in range(len(self)) if self.is_isotropic(i))

    def is_abelian(self) -> bool:
        for members in self._isotropy.values():
            for a, x in enumerate(members):
                for y in members[a + 1:]:
                    if self.table[x][y] != self.table[y][x]:
                        return False
        return True

    def restrict(self, members: Iterable[int], name: Optional[str] = None) -> "Groupoid":
        """The groupoid carried by a subset closed under inverses and products."""
        keep = sorted(set(members))
        new = {old: k for k, old in enumerate(keep)}
        products = {}
        for i in keep:
            for j in keep:
                k = self.table[i][j]
                if k is not None:
                    if k not in new:
                        raise AxiomViolation(
                            "TABLE", (self.elements[i], self.elements[j]), "subset not closed"
                        )
                    products[new[i], new[j]] = new[k]
        raw = RawTable(tuple(self.elements[i] for i in keep), products, name or self.name)
        return validate(raw)

    def raw(self) -> RawTable:
        return RawTable(self.elements, {(i, j): k for i, j, k in self.products()}, self.name)


def validate(raw: RawTable) -> Groupoid:
    """Check every groupoid axiom exhaustively and derive ``d``, ``r``, inverse.

    Triples are scanned in lexicographic index order, so the reported
    witness is the first failure in that order.
    """
    els = tuple(raw.elements)
    n = len(els)
    if n == 0:
        raise AxiomViolation("TABLE", (), "empty carrier")
    seen = set()
    for t in els:
        if not isinstance(t, str) or _bad_token(t):
            raise AxiomViolation("TABLE", (str(t),), "invalid element token")
        if t in seen:
            raise AxiomViolation("TABLE", (t,), "duplicate element")
        seen.add(t)

    rows: list[list[Optional[int]]] = [[None] * n for _ in range(n)]
    for (i, j), k in raw.products.items():
        for v in (i, j, k):
            if not (isinstance(v, int) and 0 <= v < n):
                raise AxiomViolation("TABLE", (str(v),), "product index out of range")
        rows[i][j] = k
    table = tuple(tuple(row) for row in rows)

    def w(*idx):
        return tuple(els[i] for i in idx)

    # axioms 1 and 2
    for g in range(n):
        row_g = table[g]
        for h in range(n):
            gh = row_g[h]
            row_h = table[h]
            row_gh = table[gh] if gh is not None else None
            for l in range(n):
                hl = row_h[l]
                g_hl = row_g[hl] if hl is not None else None
                gh_l = row_gh[l] if row_gh is not None else None
                if (g_hl is None) != (gh_l is None):
                    raise AxiomViolation("A1", w(g, h, l), "g(hl) and (gh)l differ in existence")
                if g_hl is not None and g_hl != gh_l:
                    raise AxiomViolation("A1", w(g, h, l), "g(hl) != (gh)l")
                if (g_hl is not None) != (gh is not None and hl is not None):
                    raise AxiomViolation("A2", w(g, h, l), "g(hl) exists iff gh and hl exist")

    # axiom 3
    dmap, rmap = [0] * n, [0] * n
    for g in range(n):
        right = [x for x in range(n) if table[g][x] == g]
        if len(right) != 1:
            raise AxiomViolation("A3", w(g, *right), f"{len(right)} candidates for d(g)")
        left = [x for x in range(n) if table[x][g] == g]
        if len(left) != 1:
            raise AxiomViolation("A3", w(g, *left), f"{len(left)} candidates for r(g)")
        dmap[g], rmap[g] = right[0], left[0]

    # axiom 4
    invmap = [0] * n
    for g in range(n):
        cands = [x for x in range(n) if table[x][g] == dmap[g] and table[g][x] == rmap[g]]
        if not cands:
            raise AxiomViolation("A4", w(g), "no inverse")
        if len(cands) > 1:
            raise AxiomViolation("A4", w(g, *cands), "inverse not unique")
        invmap[g] = cands[0]

    for g in range(n):
        for h in range(n):
            if (table[g][h] is not None) != (dmap[g] == rmap[h]):
                raise AxiomViolation("COMP", w(g, h), "gh exists iff d(g) = r(h)")

    return Groupoid(els, table, tuple(dmap), tuple(rmap), tuple(invmap), raw.name)
