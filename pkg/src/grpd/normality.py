"""Normal subgroupoids, normalizers, normal closures, cosets and quotients."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, Optional

from .core import Groupoid, RawTable, validate
from .errors import EmptySet, GroupoidError, NotNormal, PreconditionFailed, QuotientUndefined
from .subgroupoid import (
    ElementSet,
    SubgroupoidView,
    certify,
    closure,
    conjugate_members,
    set_product,
)

if TYPE_CHECKING:
    from .morphisms import GroupoidMap


def _conjugates_inside(H: SubgroupoidView) -> Optional[int]:
    """First ``g`` with ``g^-1 H g`` not inside ``H``, else None."""
    G = H.parent
    for g in range(len(G)):
        if not conjugate_members(G, H.members, g) <= H.members:
            return g
    return None


def _equality_failure(H: SubgroupoidView) -> Optional[int]:
    """First ``g`` with ``g^-1 H_r(g) g != H_d(g)``, else None."""
    G = H.parent
    for g in range(len(G)):
        lhs = conjugate_members(G, H.at(G.rmap[g]), g)
        if lhs != H.at(G.dmap[g]):
            return g
    return None


def is_normal_by_inclusion(H: SubgroupoidView) -> bool:
    return H.wide and _conjugates_inside(H) is None


def is_normal_by_equality(H: SubgroupoidView) -> bool:
    return H.wide and _equality_failure(H) is None


def is_normal(H: SubgroupoidView, ambient: Optional[SubgroupoidView] = None) -> bool:
    """Whether ``H`` is normal in its parent, or in ``ambient`` when given.

    Both characterizations are evaluated; a disagreement is a bug.
    """
    if ambient is not None:
        H = H.inside(ambient)
    a, b = is_normal_by_inclusion(H), is_normal_by_equality(H)
    if a != b:
        raise GroupoidError("normality characterizations disagree")
    return a


@dataclass(frozen=True)
class NormalizerResult:
    members: frozenset[int]
    as_subgroupoid: SubgroupoidView

    def __len__(self) -> int:
        return len(self.members)

    def tokens(self) -> list[str]:
        return self.as_subgroupoid.tokens()


def normalizer_members(H: SubgroupoidView) -> frozenset[int]:
    G = H.parent
    at = {e: H.at(e) for e in G.identities}
    return frozenset(
        g for g in range(len(G)) if conjugate_members(G, at[G.rmap[g]], g) == at[G.dmap[g]]
    )


def normalizer(H: SubgroupoidView) -> NormalizerResult:
    if not H.wide:
        raise PreconditionFailed("the normalizer is defined for wide subgroupoids")
    members = normalizer_members(H)
    N = certify(H.parent, members)
    if not H.members <= members:
        raise GroupoidError("normalizer does not contain H")
    if not is_normal(H, N):
        raise GroupoidError("H is not normal in its normalizer")
    return NormalizerResult(members, N)


def normal_closure(B: ElementSet) -> SubgroupoidView:
    """Least normal subgroupoid containing ``B``: close, conjugate, repeat."""
    if not B.members:
        raise EmptySet("cannot take the normal closure of the empty set")
    G = B.parent
    S = closure(G, B.members | frozenset(G.identities))
    while True:
        conj = set(S)
        for g in range(len(G)):
            conj |= conjugate_members(G, S, g)
        if conj <= S:
            return SubgroupoidView(G, S)
        S = closure(G, conj)


def product_with_normal(H: SubgroupoidView, K: SubgroupoidView) -> SubgroupoidView:
    """``HK`` for ``K`` normal with every member isotropic."""
    if not K.isotropic:
        raise PreconditionFailed("K has a member with d(k) != r(k)")
    if not is_normal(K):
        raise PreconditionFailed("K is not normal")
    return certify(H.parent, set_product(H, K))


def intersect_normal(H: SubgroupoidView, K: SubgroupoidView) -> SubgroupoidView:
    """``H ∩ K`` as a normal subgroupoid of the groupoid ``H``."""
    if not H.wide:
        raise PreconditionFailed("H must be wide")
    if not is_normal(K):
        raise PreconditionFailed("K is not normal")
    inner = certify(H.parent, H.members & K.members).inside(H)
    if not is_normal(inner):
        raise GroupoidError("H ∩ K is not normal in H")
    return inner


def check_commuting_trivial_intersection(H: SubgroupoidView, K: SubgroupoidView) -> bool:
    """For normal ``H, K`` meeting in ``G0``: co-isotropic members commute."""
    G = H.parent
    if not (is_normal(H) and is_normal(K)):
        raise PreconditionFailed("H and K must be normal")
    if H.members & K.members != frozenset(G.identities):
        raise PreconditionFailed("H ∩ K is not G0")
    for e in G.identities:
        for h in H.at(e):
            for k in K.at(e):
                if G.table[h][k] != G.table[k][h]:
                    return False
    return True


def congruent(g, l, H: SubgroupoidView) -> bool:
    """``g ≡_H l``: ``l^-1 g`` exists and lies in ``H``."""
    if not H.wide:
        raise PreconditionFailed("the congruence needs a wide subgroupoid")
    G = H.parent
    g, l = G.index(g), G.index(l)
    x = G.table[G.invmap[l]][g]
    return x is not None and x in H.members


@dataclass(frozen=True)
class Coset:
    representative: int
    members: frozenset[int]

    def __len__(self) -> int:
        return len(self.members)


def coset(g, H: SubgroupoidView) -> Coset:
    """Left coset ``gH = {gh | h in H, r(h) = d(g)}``."""
    G = H.parent
    g = G.index(g)
    row = G.table[g]
    members = frozenset(row[h] for h in H.members if row[h] is not None)
    return Coset(g, members)


def cosets(H: SubgroupoidView) -> list[Coset]:
    """The left cosets, each keyed by its least member, in carrier order."""
    G = H.parent
    out, seen = [], set()
    for g in range(len(G)):
        if g in seen:
            continue
        c = coset(g, H)
        seen |= c.members
        out.append(Coset(min(c.members), c.members))
    return out


def quotient_obstruction(H: SubgroupoidView) -> Optional[tuple[str, str, str]]:
    """Representatives ``a, b`` of one coset and ``l`` with ``al`` defined but ``bl`` not."""
    G = H.parent
    for c in cosets(H):
        ms = sorted(c.members)
        for a in ms:
            for b in ms:
                if G.dmap[a] != G.dmap[b]:
                    l = G.dmap[a]
                    return G.elements[a], G.elements[b], G.elements[l]
    return None


class QuotientGroupoid:
    """``G/H`` for a normal subgroupoid ``H`` contained in ``Iso(G)``."""

    def __init__(self, base: Groupoid, normal_sub: SubgroupoidView, cosets: list[Coset],
                 groupoid: Groupoid, coset_of: tuple[int, ...]):
        self.base = base
        self.normal_sub = normal_sub
        self.cosets = cosets
        self.groupoid = groupoid
        self.coset_of = coset_of

    def __len__(self) -> int:
        return len(self.cosets)

    def __repr__(self) -> str:
        return f"QuotientGroupoid({self.base.name}/H, {len(self)} cosets)"

    def j(self, g) -> str:
        return self.groupoid.elements[self.coset_of[self.base.index(g)]]

    @cached_property
    def projection(self) -> "GroupoidMap":
        from .morphisms import GroupoidMap

        return GroupoidMap(self.base, self.groupoid, self.coset_of)


def quotient(H: SubgroupoidView, name: Optional[str] = None) -> QuotientGroupoid:
    G = H.parent
    if not is_normal(H):
        raise NotNormal("H is not a normal subgroupoid")
    bad = quotient_obstruction(H)
    if bad is not None:
        a, b, l = bad
        raise QuotientUndefined(
            f"coset product depends on representatives: {a} ≡ {b} but only {a}·{l} exists"
        )
    cs = cosets(H)
    coset_of = [0] * len(G)
    for k, c in enumerate(cs):
        for m in c.members:
            coset_of[m] = k
    products = {}
    for a, ca in enumerate(cs):
        row = G.table[ca.representative]
        for b, cb in enumerate(cs):
            x = row[cb.representative]
            if x is not None:
                products[a, b] = coset_of[x]
    for g in range(len(G)):
        for l in range(len(G)):
            x = G.table[g][l]
            y = products.get((coset_of[g], coset_of[l]))
            if (x is None) != (y is None) or (x is not None and coset_of[x] != y):
                raise GroupoidError(
                    f"coset product not well defined at ({G.elements[g]}, {G.elements[l]})"
                )
    names = tuple(f"[{G.elements[c.representative]}]" for c in cs)
    Q = validate(RawTable(names, products, name or f"{G.name}_q"))
    return QuotientGroupoid(G, H, cs, Q, tuple(coset_of))
