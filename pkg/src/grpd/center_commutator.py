"""Center, commutators, commutator subgroupoids and the abelianization."""

from __future__ import annotations

from dataclasses import dataclass

from .core import Groupoid
from .errors import GroupoidError, NotCoIsotropic, PreconditionFailed, TargetNotAbelian
from .morphisms import GroupoidMap
from .normality import QuotientGroupoid, is_normal, quotient
from .subgroupoid import SubgroupoidView, certify, closure, iso_part


@dataclass(frozen=True)
class CenterView:
    view: SubgroupoidView
    per_identity: dict[int, frozenset[int]]

    @property
    def members(self) -> frozenset[int]:
        return self.view.members

    def __len__(self) -> int:
        return len(self.view)

    def tokens(self) -> list[str]:
        return self.view.tokens()


@dataclass(frozen=True)
class CommutatorView:
    view: SubgroupoidView
    witnesses: tuple[tuple[int, int], ...]  # (commutator, identity)

    @property
    def members(self) -> frozenset[int]:
        return self.view.members

    def __len__(self) -> int:
        return len(self.view)

    def tokens(self) -> list[str]:
        return self.view.tokens()


def center_members(G: Groupoid) -> frozenset[int]:
    """Isotropic ``g`` with ``gh = hg`` for every ``h`` with ``d(g) = r(h) = d(h)``."""
    out = set()
    for g in G.iso_members:
        e = G.dmap[g]
        if all(
            G.table[g][h] == G.table[h][g]
            for h in range(len(G))
            if G.rmap[h] == e and G.dmap[h] == e
        ):
            out.add(g)
    return frozenset(out)


def group_center(G: Groupoid, e: int) -> frozenset[int]:
    """``Z(G_e)`` computed inside the vertex group alone."""
    grp = G.isotropy_members(e)
    return frozenset(g for g in grp if all(G.table[g][h] == G.table[h][g] for h in grp))


def center(G: Groupoid) -> CenterView:
    members = center_members(G)
    per = {e: group_center(G, e) for e in G.identities}
    if frozenset().union(*per.values()) != members:
        raise GroupoidError("center is not the union of the vertex-group centers")
    Z = certify(G, members)
    if not Z.wide or not is_normal(Z, iso_part(G)):
        raise GroupoidError("center is not a normal wide subgroupoid of Iso(G)")
    return CenterView(Z, per)


def commutator_elem(G: Groupoid, x, y) -> str:
    """``[x, y] = x^-1 y^-1 x y`` for ``x, y`` in one isotropy group."""
    x, y = G.index(x), G.index(y)
    return G.elements[_commutator(G, x, y)]


def _commutator(G: Groupoid, x: int, y: int) -> int:
    e = G.dmap[x]
    if not (G.rmap[x] == e and G.dmap[y] == e and G.rmap[y] == e):
        raise NotCoIsotropic(f"{G.elements[x]} and {G.elements[y]} are not in one isotropy group")
    t = G.table
    return t[t[t[G.invmap[x]][G.invmap[y]]][x]][y]


def _bracket(G: Groupoid, H: frozenset[int], K: frozenset[int]):
    witnesses = []
    seen = set()
    for e in G.identities:
        for x in G.isotropy_members(e):
            if x not in H:
                continue
            for y in G.isotropy_members(e):
                if y in K:
                    c = _commutator(G, x, y)
                    if c not in seen:
                        seen.add(c)
                        witnesses.append((c, e))
    return closure(G, seen), tuple(witnesses)


def bracket(H: SubgroupoidView, K: SubgroupoidView) -> SubgroupoidView:
    """``[H, K]``, generated by ``[x, y]`` with ``x in H_e``, ``y in K_e``."""
    if not (H.wide and K.wide):
        raise PreconditionFailed("bracket needs wide subgroupoids")
    members, _ = _bracket(H.parent, H.members, K.members)
    return SubgroupoidView(H.parent, members)


def commutator_subgroupoid(G: Groupoid) -> CommutatorView:
    everything = frozenset(range(len(G)))
    members, witnesses = _bracket(G, everything, everything)
    return CommutatorView(SubgroupoidView(G, members), witnesses)


def abelianization(G: Groupoid) -> QuotientGroupoid:
    D = commutator_subgroupoid(G).view
    if not is_normal(D):
        raise GroupoidError("commutator subgroupoid is not normal")
    Q = quotient(D, name=f"{G.name}_ab")
    if not Q.groupoid.is_abelian():
        raise GroupoidError("G/G' is not abelian")
    return Q


def largest_abelian_check(H: SubgroupoidView) -> bool:
    """``G/H`` abelian implies ``G' ⊆ H``."""
    if not is_normal(H):
        raise PreconditionFailed("H is not normal")
    if not quotient(H).groupoid.is_abelian():
        return True
    return commutator_subgroupoid(H.parent).members <= H.members


def factor_through_abelianization(sigma: GroupoidMap) -> GroupoidMap:
    """``θ: G/G' -> A`` with ``σ = θ ∘ j``."""
    if not sigma.is_hom:
        raise PreconditionFailed(f"σ is not a homomorphism at {sigma.hom_failure}")
    if not sigma.target.is_abelian():
        raise TargetNotAbelian("target groupoid is not abelian")
    G = sigma.source
    D = commutator_subgroupoid(G).members
    T = sigma.target
    if not all(T.dmap[sigma.mapping[x]] == sigma.mapping[x] for x in D):
        raise GroupoidError("G' is not inside Ker(σ)")
    Q = abelianization(G)
    theta = []
    for c in Q.cosets:
        images = {sigma.mapping[x] for x in c.members}
        if len(images) != 1:
            raise GroupoidError("θ is not well defined")
        theta.append(images.pop())
    th = GroupoidMap(Q.groupoid, T, theta)
    if not th.is_hom:
        raise GroupoidError(f"θ is not a homomorphism at {th.hom_failure}")
    if th.after(Q.projection).mapping != sigma.mapping:
        raise GroupoidError("σ != θ ∘ j")
    return th
