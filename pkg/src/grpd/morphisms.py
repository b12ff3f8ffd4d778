"""Groupoid homomorphisms, kernels, the first isomorphism theorem and isomorphism search."""

from __future__ import annotations

from collections import Counter
from functools import cached_property
from typing import Mapping, Optional

from .core import Groupoid
from .errors import (
    GroupoidError,
    NotAFunction,
    NotNormalKernel,
    NotStrong,
    NotSurjective,
    PreconditionFailed,
)
from .normality import QuotientGroupoid, is_normal, quotient
from .subgroupoid import SubgroupoidView, certify


class GroupoidMap:
    """A total map between carriers; all flags are computed, never trusted."""

    def __init__(self, source: Groupoid, target: Groupoid, mapping):
        self.source = source
        self.target = target
        self.mapping: tuple[int, ...] = tuple(mapping)
        if len(self.mapping) != len(source):
            raise NotAFunction("mapping is not total on the source")
        if any(not 0 <= y < len(target) for y in self.mapping):
            raise NotAFunction("image outside the target carrier")

    def __call__(self, g) -> str:
        return self.target.elements[self.mapping[self.source.index(g)]]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupoidMap):
            return NotImplemented
        return (self.source, self.target, self.mapping) == (other.source, other.target, other.mapping)

    def __hash__(self) -> int:
        return hash(self.mapping)

    def __repr__(self) -> str:
        return f"GroupoidMap({self.source.name} -> {self.target.name})"

    def as_dict(self) -> dict[str, str]:
        return {self.source.elements[i]: self.target.elements[y] for i, y in enumerate(self.mapping)}

    @cached_property
    def hom_failure(self) -> Optional[tuple[str, str]]:
        S, T, f = self.source, self.target, self.mapping
        for x, y, xy in S.products():
            if T.table[f[x]][f[y]] != f[xy]:
                return S.elements[x], S.elements[y]
        return None

    @cached_property
    def strong_failure(self) -> Optional[tuple[str, str]]:
        """First ``x, y`` with ``φ(x)φ(y)`` defined but ``xy`` not."""
        S, T, f = self.source, self.target, self.mapping
        for x in range(len(S)):
            for y in range(len(S)):
                if S.table[x][y] is None and T.table[f[x]][f[y]] is not None:
                    return S.elements[x], S.elements[y]
        return None

    @property
    def is_hom(self) -> bool:
        return self.hom_failure is None

    @property
    def is_strong(self) -> bool:
        return self.is_hom and self.strong_failure is None

    @property
    def is_injective(self) -> bool:
        return len(set(self.mapping)) == len(self.mapping)

    @property
    def is_surjective(self) -> bool:
        return len(set(self.mapping)) == len(self.target)

    @property
    def is_bijective(self) -> bool:
        return self.is_injective and self.is_surjective

    def after(self, other: "GroupoidMap") -> "GroupoidMap":
        """``self ∘ other``."""
        if other.target != self.source:
            raise PreconditionFailed("maps are not composable")
        return GroupoidMap(other.source, self.target, [self.mapping[y] for y in other.mapping])


def check_map(mapping: Mapping[str, str], source: Groupoid, target: Groupoid) -> GroupoidMap:
    images = []
    for tok in source.elements:
        if tok not in mapping:
            raise NotAFunction(f"no image for {tok!r}")
        y = mapping[tok]
        if y not in target.elements:
            raise NotAFunction(f"{tok!r} maps to {y!r}, not in the target")
        images.append(target.index(y))
    extra = set(mapping) - set(source.elements)
    if extra:
        raise NotAFunction(f"mapping names non-source elements {sorted(extra)}")
    return GroupoidMap(source, target, images)


def identity_map(G: Groupoid) -> GroupoidMap:
    return GroupoidMap(G, G, range(len(G)))


def kernel(m: GroupoidMap) -> SubgroupoidView:
    """Preimage of the target's identities."""
    if not m.is_hom:
        raise PreconditionFailed(f"not a homomorphism at {m.hom_failure}")
    T = m.target
    members = [x for x, y in enumerate(m.mapping) if T.dmap[y] == y]
    K = certify(m.source, members)
    if not K.wide:
        raise GroupoidError("kernel is not wide")
    return K


def first_iso(m: GroupoidMap) -> tuple[QuotientGroupoid, GroupoidMap]:
    """Factor a surjective strong homomorphism as ``φ = φ̄ ∘ j``."""
    if not m.is_strong:
        raise NotStrong(f"not a strong homomorphism at {m.hom_failure or m.strong_failure}")
    if not m.is_surjective:
        raise NotSurjective("map is not surjective")
    K = kernel(m)
    if not is_normal(K):
        raise NotNormalKernel("kernel is not normal")
    Q = quotient(K)
    bar = []
    for c in Q.cosets:
        images = {m.mapping[x] for x in c.members}
        if len(images) != 1:
            raise GroupoidError("induced map is not well defined")
        bar.append(images.pop())
    phibar = GroupoidMap(Q.groupoid, m.target, bar)
    if not (phibar.is_strong and phibar.is_bijective):
        raise GroupoidError("induced map is not a strong isomorphism")
    if phibar.after(Q.projection).mapping != m.mapping:
        raise GroupoidError("φ != φ̄ ∘ j")
    return Q, phibar


def element_order(G: Groupoid, x: int) -> int:
    """Order of ``x`` in its isotropy group; 0 for non-isotropic elements."""
    if G.dmap[x] != G.rmap[x]:
        return 0
    k, y = 1, x
    while y != G.dmap[x]:
        y = G.table[y][x]
        k += 1
    return k


def _profiles(G: Groupoid):
    orders = [element_order(G, x) for x in range(len(G))]
    obj = {}
    for e in G.identities:
        iso = G.isotropy_members(e)
        obj[e] = (
            len(iso),
            tuple(sorted(orders[x] for x in iso)),
            sum(1 for x in range(len(G)) if G.dmap[x] == e),
            sum(1 for x in range(len(G)) if G.rmap[x] == e),
        )
    elem = [(orders[x], obj[G.dmap[x]], obj[G.rmap[x]]) for x in range(len(G))]
    return obj, elem


def find_isomorphism(A: Groupoid, B: Groupoid) -> Optional[GroupoidMap]:
    """Deterministic backtracking search for a strong isomorphism ``A -> B``.

    Every tentative assignment is propagated through inverses, ``d``, ``r``
    and products with the elements already placed.
    """
    if len(A) != len(B) or len(A.identities) != len(B.identities):
        return None
    objA, elemA = _profiles(A)
    objB, elemB = _profiles(B)
    if Counter(objA.values()) != Counter(objB.values()) or Counter(elemA) != Counter(elemB):
        return None

    def extend(phi, rev, x, y):
        phi, rev = dict(phi), dict(rev)
        stack = [(x, y)]
        while stack:
            a, b = stack.pop()
            if a in phi:
                if phi[a] != b:
                    return None
                continue
            if b in rev or elemA[a] != elemB[b]:
                return None
            pairs = list(phi.items())
            phi[a] = b
            rev[b] = a
            stack += [(A.invmap[a], B.invmap[b]), (A.dmap[a], B.dmap[b]), (A.rmap[a], B.rmap[b])]
            ra, rb = A.table[a], B.table[b]
            for c, dd in pairs + [(a, b)]:
                ac, bd = ra[c], rb[dd]
                if (ac is None) != (bd is None):
                    return None
                if ac is not None:
                    stack.append((ac, bd))
                ca, db = A.table[c][a], B.table[dd][b]
                if (ca is None) != (db is None):
                    return None
                if ca is not None:
                    stack.append((ca, db))
        return phi, rev

    order = list(A.identities) + [x for x in range(len(A)) if not A.is_identity(x)]

    def search(phi, rev):
        if len(phi) == len(A):
            return phi
        x = next(v for v in order if v not in phi)
        for y in range(len(B)):
            if y in rev or elemA[x] != elemB[y]:
                continue
            nxt = extend(phi, rev, x, y)
            if nxt is not None:
                found = search(*nxt)
                if found is not None:
                    return found
        return None

    phi = search({}, {})
    if phi is None:
        return None
    m = GroupoidMap(A, B, [phi[x] for x in range(len(A))])
    if not (m.is_strong and m.is_bijective):
        raise GroupoidError("isomorphism search returned a non-isomorphism")
    return m
