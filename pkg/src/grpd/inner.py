"""Partial isomorphisms between isotropy groups and inner isomorphisms ``I_g``."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Optional, Sequence

from .center_commutator import center
from .core import Groupoid, RawTable, validate
from .errors import BoundExceeded, GroupoidError, PreconditionFailed
from .morphisms import GroupoidMap, element_order, find_isomorphism, first_iso, kernel
from .normality import QuotientGroupoid, is_normal, quotient
from .subgroupoid import SubgroupoidView, certify, closure

DEFAULT_BOUND = 8


def default_bound() -> int:
    raw = os.environ.get("GRPD_BOUND")
    return int(raw) if raw else DEFAULT_BOUND


@dataclass(frozen=True)
class PartialIso:
    """A group isomorphism ``G_e -> G_e'``; equality is pointwise plus bases."""

    domain_base: int
    range_base: int
    mapping: tuple[tuple[int, int], ...]
    witness: Optional[int] = field(default=None, compare=False)  # g for I_g

    def __call__(self, x: int) -> int:
        return dict(self.mapping)[x]

    def as_dict(self) -> dict[int, int]:
        return dict(self.mapping)

    def composable(self, g: "PartialIso") -> bool:
        """``self ∘ g`` exists iff ``D(self) = R(g)``."""
        return self.domain_base == g.range_base

    def after(self, g: "PartialIso") -> "PartialIso":
        if not self.composable(g):
            raise PreconditionFailed("partial isomorphisms are not composable")
        f = self.as_dict()
        return PartialIso(g.domain_base, self.range_base, tuple((x, f[y]) for x, y in g.mapping))

    def inverse(self) -> "PartialIso":
        return PartialIso(self.range_base, self.domain_base, tuple(sorted((y, x) for x, y in self.mapping)))


InnerIso = PartialIso


def _is_group_iso(G: Groupoid, f: PartialIso) -> bool:
    dom = G.isotropy_members(f.domain_base)
    rng = G.isotropy_members(f.range_base)
    m = f.as_dict()
    if sorted(m) != sorted(dom) or sorted(m.values()) != sorted(rng):
        return False
    return all(m[G.table[x][y]] == G.table[m[x]][m[y]] for x in dom for y in dom)


def inner_iso(G: Groupoid, g) -> InnerIso:
    """``I_g: G_d(g) -> G_r(g)``, ``x -> g x g^-1``."""
    g = G.index(g)
    gi = G.invmap[g]
    mapping = tuple((x, G.table[G.table[g][x]][gi]) for x in G.isotropy_members(G.dmap[g]))
    f = InnerIso(G.dmap[g], G.rmap[g], mapping, witness=g)
    if not _is_group_iso(G, f):
        raise GroupoidError(f"I_{G.elements[g]} is not a group isomorphism")
    return f


class PartialIsoGroupoid:
    """A list of partial isomorphisms packaged as an ordinary :class:`Groupoid`."""

    def __init__(self, base: Groupoid, isos: Sequence[PartialIso], tokens: Sequence[str], name: str):
        self.base = base
        self.isos = tuple(isos)
        self.index_of = {f: k for k, f in enumerate(self.isos)}
        products = {}
        for a, f in enumerate(self.isos):
            for b, g in enumerate(self.isos):
                if f.composable(g):
                    fg = f.after(g)
                    if fg not in self.index_of:
                        raise GroupoidError("partial isomorphisms not closed under composition")
                    products[a, b] = self.index_of[fg]
        self.groupoid = validate(RawTable(tuple(tokens), products, name))

    def __len__(self) -> int:
        return len(self.isos)

    def token(self, f: PartialIso) -> str:
        return self.groupoid.elements[self.index_of[f]]


def inner_groupoid(G: Groupoid) -> PartialIsoGroupoid:
    """``I(G)``: one entry per distinct inner isomorphism, named by its first witness."""
    isos, seen = [], set()
    for g in range(len(G)):
        f = inner_iso(G, g)
        if f not in seen:
            seen.add(f)
            isos.append(f)
    return PartialIsoGroupoid(G, isos, [f"I[{G.elements[f.witness]}]" for f in isos], f"I_{G.name}")


def _generators(G: Groupoid, members: Sequence[int]) -> list[int]:
    e = G.dmap[members[0]]
    gens: list[int] = []
    span = frozenset([e])
    for x in members:
        if x not in span:
            gens.append(x)
            span = closure(G, [e, *gens])
    return gens


def group_isomorphisms(G: Groupoid, e: int, e2: int) -> list[PartialIso]:
    """Every group isomorphism ``G_e -> G_e2``, in lexicographic order of generator images."""
    dom, rng = G.isotropy_members(e), G.isotropy_members(e2)
    if len(dom) != len(rng):
        return []
    gens = _generators(G, dom)
    choices = [[y for y in rng if element_order(G, y) == element_order(G, x)] for x in gens]
    out = []
    for images in cartesian(*choices):
        m = {e: e2}
        queue = [e]
        ok = True
        while queue and ok:
            a = queue.pop()
            for s, t in zip(gens, images):
                x, y = G.table[a][s], G.table[m[a]][t]
                if x in m:
                    if m[x] != y:
                        ok = False
                        break
                else:
                    m[x] = y
                    queue.append(x)
        if not ok or len(set(m.values())) != len(dom):
            continue
        f = PartialIso(e, e2, tuple(sorted(m.items())))
        if _is_group_iso(G, f):
            out.append(f)
    return out


def partial_iso_groupoid(G: Groupoid, bound: Optional[int] = None) -> PartialIsoGroupoid:
    """``A(G)``: all isomorphisms between isotropy groups of order at most ``bound``."""
    bound = default_bound() if bound is None else bound
    big = max(len(G.isotropy_members(e)) for e in G.identities)
    if big > bound:
        raise BoundExceeded(f"isotropy order {big} exceeds bound {bound}")
    isos = []
    for e in G.identities:
        for e2 in G.identities:
            isos.extend(group_isomorphisms(G, e, e2))
    return PartialIsoGroupoid(G, isos, [f"a{k}" for k in range(len(isos))], f"A_{G.name}")


def theta(G: Groupoid, IG: Optional[PartialIsoGroupoid] = None) -> GroupoidMap:
    """``Θ(g) = I_g`` as a map ``G -> I(G)``; must be a surjective strong homomorphism."""
    IG = IG or inner_groupoid(G)
    m = GroupoidMap(G, IG.groupoid, [IG.index_of[inner_iso(G, g)] for g in range(len(G))])
    if not (m.is_strong and m.is_surjective):
        raise GroupoidError("Θ is not a surjective strong homomorphism")
    return m


@dataclass
class InnerIsoReport:
    quotient: QuotientGroupoid
    inner: PartialIsoGroupoid
    kernel_is_center: bool
    induced: GroupoidMap
    searched: Optional[GroupoidMap]

    @property
    def ok(self) -> bool:
        return (
            self.kernel_is_center
            and self.induced.is_strong
            and self.induced.is_bijective
            and self.searched is not None
        )

    def lines(self) -> list[str]:
        return [
            f"|G/Z| {len(self.quotient)}",
            f"|I(G)| {len(self.inner)}",
            f"kernel_is_center {'yes' if self.kernel_is_center else 'no'}",
            f"first_iso {'ok' if self.induced.is_bijective else 'fail'}",
            f"search {'found' if self.searched is not None else 'none'}",
        ]


def verify_inner_iso_theorem(G: Groupoid) -> InnerIsoReport:
    """``G/Z(G) ≅ I(G)``, via the induced map of Θ and via independent search."""
    IG = inner_groupoid(G)
    th = theta(G, IG)
    Z = center(G).view
    K = kernel(th)
    _, phibar = first_iso(th)
    Q = quotient(Z)
    searched = find_isomorphism(Q.groupoid, IG.groupoid)
    return InnerIsoReport(Q, IG, K.members == Z.members, phibar, searched)


def is_invariant(H: SubgroupoidView, g) -> bool:
    """``I_g(H ∩ D(I_g)) = H ∩ R(I_g)``."""
    if not H.wide:
        raise PreconditionFailed("invariance is defined for wide subgroupoids")
    G = H.parent
    f = inner_iso(G, g)
    image = {y for x, y in f.mapping if x in H.members}
    return image == H.at(f.range_base)


def normal_via_invariance(H: SubgroupoidView) -> bool:
    return all(is_invariant(H, g) for g in range(len(H.parent)))


def inner_normal_in_automorphisms(G: Groupoid, bound: Optional[int] = None) -> bool:
    """Whether ``I(G)`` is a normal subgroupoid of ``A(G)``."""
    A = partial_iso_groupoid(G, bound)
    IG = inner_groupoid(G)
    members = [A.index_of[f] for f in IG.isos]
    view = certify(A.groupoid, members)
    return view.wide and is_normal(view)
