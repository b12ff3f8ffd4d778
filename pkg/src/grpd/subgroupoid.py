"""Subsets of a groupoid: subgroupoids, wideness, closures, conjugates, set products."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .core import Groupoid
from .errors import EmptyIntersection, EmptySet, NotASubgroupoid, PreconditionFailed


@dataclass(frozen=True)
class ElementSet:
    """An arbitrary subset of ``parent``; no closure promised."""

    parent: Groupoid
    members: frozenset[int]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, i) -> bool:
        return self.parent.index(i) in self.members

    def tokens(self) -> list[str]:
        return self.parent.tokens(self.members)


@dataclass(frozen=True)
class SubgroupoidView(ElementSet):
    """A subset certified closed under inverses and defined products."""

    @property
    def wide(self) -> bool:
        return set(self.parent.identities) <= self.members

    def at(self, e: int) -> frozenset[int]:
        """``H_e``: members with ``d = r = e``."""
        G = self.parent
        return frozenset(h for h in self.members if G.dmap[h] == e and G.rmap[h] == e)

    @property
    def isotropic(self) -> bool:
        G = self.parent
        return all(G.dmap[h] == G.rmap[h] for h in self.members)

    @cached_property
    def groupoid(self) -> Groupoid:
        return self.parent.restrict(self.members)

    def inside(self, other: "SubgroupoidView") -> "SubgroupoidView":
        """This view re-based onto ``other.groupoid`` (requires containment)."""
        if not self.members <= other.members:
            raise PreconditionFailed("not contained in the ambient subgroupoid")
        H = other.groupoid
        return SubgroupoidView(H, H.indices(self.tokens()))


def element_set(G: Groupoid, items: Iterable) -> ElementSet:
    return ElementSet(G, G.indices(items))


def closure_failure(G: Groupoid, members: frozenset[int]) -> Optional[tuple[str, ...]]:
    """First witness against closure, or None when ``members`` is closed."""
    for g in sorted(members):
        if G.invmap[g] not in members:
            return (G.elements[g],)
    for g in sorted(members):
        row = G.table[g]
        for h in sorted(members):
            k = row[h]
            if k is not None and k not in members:
                return (G.elements[g], G.elements[h])
    return None


def is_subgroupoid(S: ElementSet) -> bool:
    if not S.members:
        raise EmptySet("a subgroupoid is nonempty")
    return closure_failure(S.parent, S.members) is None


def certify(G: Groupoid, items) -> SubgroupoidView:
    """Certify ``items`` (tokens, indices or an ElementSet) as a subgroupoid."""
    members = items.members if isinstance(items, ElementSet) else G.indices(items)
    if not members:
        raise EmptySet("a subgroupoid is nonempty")
    bad = closure_failure(G, members)
    if bad is not None:
        raise NotASubgroupoid(f"not closed at {bad}")
    return SubgroupoidView(G, members)


def is_wide(H: SubgroupoidView) -> bool:
    return H.wide


def identities_view(G: Groupoid) -> SubgroupoidView:
    return SubgroupoidView(G, frozenset(G.identities))


def whole(G: Groupoid) -> SubgroupoidView:
    return SubgroupoidView(G, frozenset(range(len(G))))


def iso_part(G: Groupoid) -> SubgroupoidView:
    """``Iso(G)``, the union of all isotropy groups."""
    return certify(G, G.iso_members)


def widen(H: SubgroupoidView) -> SubgroupoidView:
    return certify(H.parent, H.members | frozenset(H.parent.identities))


def intersect(Hs: Sequence[SubgroupoidView]) -> SubgroupoidView:
    if not Hs:
        raise ValueError("intersect needs at least one subgroupoid")
    G = Hs[0].parent
    if any(H.parent is not G and H.parent != G for H in Hs):
        raise PreconditionFailed("subgroupoids have different parents")
    common = frozenset.intersection(*(H.members for H in Hs))
    if not common:
        raise EmptyIntersection("intersection is empty")
    return certify(G, common)


def closure(G: Groupoid, seed: Iterable[int]) -> frozenset[int]:
    """Least superset of ``seed`` closed under inverses and defined products."""
    members = set(seed)
    work = list(members)
    while work:
        x = work.pop()
        new = [G.invmap[x]]
        for y in list(members):
            xy, yx = G.table[x][y], G.table[y][x]
            if xy is not None:
                new.append(xy)
            if yx is not None:
                new.append(yx)
        for z in new:
            if z not in members:
                members.add(z)
                work.append(z)
    return frozenset(members)


def generate(B: ElementSet) -> SubgroupoidView:
    if not B.members:
        raise EmptySet("cannot generate from the empty set")
    return SubgroupoidView(B.parent, closure(B.parent, B.members))


def generate_wide(B: ElementSet) -> SubgroupoidView:
    if not B.members:
        raise EmptySet("cannot generate from the empty set")
    G = B.parent
    return SubgroupoidView(G, closure(G, B.members | frozenset(G.identities)))


def conjugate_members(G: Groupoid, H: frozenset[int], g: int) -> frozenset[int]:
    """``{g^-1 h g | h in H, r(h) = d(h) = r(g)}``."""
    gi, rg = G.invmap[g], G.rmap[g]
    out = set()
    for h in H:
        if G.rmap[h] == rg and G.dmap[h] == rg:
            out.add(G.table[G.table[gi][h]][g])
    return frozenset(out)


def conjugate(H: SubgroupoidView, g) -> SubgroupoidView:
    if not H.wide:
        raise PreconditionFailed("conjugation needs a wide subgroupoid")
    G = H.parent
    return certify(G, conjugate_members(G, H.members, G.index(g)))


def set_product(H: ElementSet, K: ElementSet) -> ElementSet:
    """``HK = {hk | h in H, k in K, d(h) = r(k)}``."""
    G = H.parent
    out = set()
    for h in H.members:
        row = G.table[h]
        for k in K.members:
            hk = row[k]
            if hk is not None:
                out.add(hk)
    return ElementSet(G, frozenset(out))


def product_is_subgroupoid(H: SubgroupoidView, K: SubgroupoidView) -> bool:
    """Whether ``HK`` is a wide subgroupoid, decided by direct closure check."""
    if not (H.wide and K.wide):
        raise PreconditionFailed("HK is defined here for wide subgroupoids")
    HK = set_product(H, K)
    return is_subgroupoid(HK)


def _sort_key(members: frozenset[int]):
    return (len(members), sorted(members))


def subgroupoids(G: Groupoid, wide: bool = False) -> list[SubgroupoidView]:
    """Every (wide) subgroupoid of ``G``, ordered by size then members.

    Walks the closure lattice: each subgroupoid is reached by adding one
    element at a time to a smaller closed set and re-closing.
    """
    n = len(G)
    if wide:
        seeds = [closure(G, G.identities)]
    else:
        seeds = list({closure(G, [x]) for x in range(n)})
    found = set(seeds)
    frontier = list(seeds)
    while frontier:
        nxt = []
        for S in frontier:
            for x in range(n):
                if x in S:
                    continue
                T = closure(G, S | {x})
                if T not in found:
                    found.add(T)
                    nxt.append(T)
        frontier = nxt
    return [SubgroupoidView(G, S) for S in sorted(found, key=_sort_key)]


def wide_subgroupoids(G: Groupoid) -> list[SubgroupoidView]:
    return subgroupoids(G, wide=True)
