"""Executable checks for every proposition about a concrete groupoid.

Each check has a stable id (``P2.7``, ``P3.2.6``, ``T3.6`` ...) and yields
PASS, FAIL (with a witness) or SKIP (with the reason, e.g. a size bound).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Optional

from . import center_commutator as cc
from . import inner, normality
from .builders import trivial
from .core import Groupoid
from .errors import BoundExceeded, GroupoidError, QuotientUndefined
from .morphisms import GroupoidMap, first_iso, kernel
from .subgroupoid import (
    ElementSet,
    SubgroupoidView,
    certify,
    closure,
    closure_failure,
    generate,
    identities_view,
    intersect,
    is_subgroupoid,
    iso_part,
    product_is_subgroupoid,
    set_product,
    subgroupoids,
    whole,
    wide_subgroupoids,
)

EXHAUSTIVE_LIMIT = 12
QUADRUPLE_SAMPLES = 20000


@dataclass
class Check:
    id: str
    status: str  # PASS | FAIL | SKIP
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status != "FAIL"

    def line(self) -> str:
        return f"CHECK {self.id} {self.status}" + (f" {self.detail}" if self.detail else "")


@dataclass
class SuiteReport:
    name: str
    size: int
    mode: str
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def get(self, check_id: str) -> Check:
        return next(c for c in self.checks if c.id == check_id)

    def header(self) -> str:
        return f"# groupoid {self.name} |G|={self.size} mode={self.mode}"

    def lines(self) -> str:
        return "\n".join([self.header()] + [c.line() for c in self.checks]) + "\n"

    def text(self) -> str:
        width = max(len(c.id) for c in self.checks)
        rows = [self.header(), f"{'check'.ljust(width)}  result  detail"]
        for c in self.checks:
            rows.append(f"{c.id.ljust(width)}  {c.status.ljust(6)}  {c.detail}".rstrip())
        passed = sum(c.status == "PASS" for c in self.checks)
        failed = sum(c.status == "FAIL" for c in self.checks)
        skipped = sum(c.status == "SKIP" for c in self.checks)
        rows.append(f"{passed} passed, {failed} failed, {skipped} skipped")
        return "\n".join(rows) + "\n"


class Fail(Exception):
    """Raised inside a check body to report a counterexample."""


def _tok(G: Groupoid, *idx: int) -> str:
    return "(" + ", ".join(G.elements[i] for i in idx) + ")"


def _set(H) -> str:
    G = H.parent
    return "{" + ",".join(G.tokens(H.members)) + "}"


def sample_subgroupoids(G: Groupoid) -> list[SubgroupoidView]:
    """Named wide subgroupoids used when exhaustive enumeration is too large.

    G0, Iso(G), Z(G), G', G, and the wide subgroupoid generated by each
    single element.
    """
    found: dict[frozenset[int], SubgroupoidView] = {}
    named = [
        identities_view(G),
        iso_part(G),
        cc.center(G).view,
        cc.commutator_subgroupoid(G).view,
        whole(G),
    ]
    for H in named:
        found.setdefault(H.members, H)
    for x in range(len(G)):
        S = closure(G, [x, *G.identities])
        found.setdefault(S, SubgroupoidView(G, S))
    return sorted(found.values(), key=lambda H: (len(H), sorted(H.members)))


class Suite:
    def __init__(self, G: Groupoid, exhaustive: Optional[bool] = None, bound: Optional[int] = None,
                 seed: int = 0):
        self.G = G
        self.exhaustive = len(G) <= EXHAUSTIVE_LIMIT if exhaustive is None else exhaustive
        self.bound = inner.default_bound() if bound is None else bound
        self.rng = random.Random(seed)
        if self.exhaustive:
            self.wide = wide_subgroupoids(G)
            self.all_subs = subgroupoids(G)
        else:
            self.wide = sample_subgroupoids(G)
            self.all_subs = list(self.wide)
        self.normal = [H for H in self.wide if normality.is_normal(H)]
        self.normal_iso = [H for H in self.normal if H.isotropic]

    @property
    def mode(self) -> str:
        if self.exhaustive:
            return f"exhaustive({len(self.wide)} wide)"
        return f"sample({len(self.wide)} wide)"

    def run(self) -> SuiteReport:
        report = SuiteReport(self.G.name, len(self.G), self.mode)
        for check_id, fn in self.checks():
            try:
                detail = fn()
                if isinstance(detail, tuple) and detail and detail[0] == "SKIP":
                    report.checks.append(Check(check_id, "SKIP", detail[1]))
                else:
                    report.checks.append(Check(check_id, "PASS", detail or ""))
            except Fail as exc:
                report.checks.append(Check(check_id, "FAIL", str(exc)))
            except GroupoidError as exc:
                report.checks.append(Check(check_id, "FAIL", f"{type(exc).__name__}: {exc}"))
        return report

    def checks(self) -> list[tuple[str, Callable]]:
        return [
            ("AXIOMS", lambda: ""),
            ("P2.2", self.p2_2),
            ("P2.3", self.p2_3),
            ("P2.5", self.p2_5),
            ("P2.6", self.p2_6),
            ("P2.7", self.p2_7),
            ("D3.1", self.d3_1),
            ("P3.2.1", self.p3_2_1),
            ("P3.2.2", self.p3_2_2),
            ("P3.2.3", self.p3_2_3),
            ("P3.2.4", self.p3_2_4),
            ("P3.2.5", self.p3_2_5),
            ("P3.2.6", self.p3_2_6),
            ("P3.4.1", self.p3_4_1),
            ("P3.4.2", self.p3_4_2),
            ("P3.4.3", self.p3_4_3),
            ("P3.4.4", self.p3_4_4),
            ("C3", self.c3),
            ("T3.6", self.t3_6),
            ("P4.2.1", self.p4_2_1),
            ("P4.2.2", self.p4_2_2),
            ("P4.2.3", self.p4_2_3),
            ("P4.2.4", self.p4_2_4),
            ("P4.4.1", self.p4_4_1),
            ("P4.4.2", self.p4_4_2),
            ("P4.4.3", self.p4_4_3),
            ("P4.4.4", self.p4_4_4),
            ("P4.4.5", self.p4_4_5),
            ("P4.4.6", self.p4_4_6),
            ("P5.1", self.p5_1),
            ("P5.2.1", self.p5_2_1),
            ("P5.2.2", self.p5_2_2),
            ("P5.2.3", self.p5_2_3),
            ("P5.2.4", self.p5_2_4),
            ("P5.2.5", self.p5_2_5),
        ]

    # section 2

    def p2_2(self):
        G = self.G
        n = len(G)
        t, inv, d, r = G.table, G.invmap, G.dmap, G.rmap
        for g in range(n):
            if inv[inv[g]] != g:
                raise Fail(f"(g^-1)^-1 != g at {_tok(G, g)}")
            for h in range(n):
                gh = t[g][h]
                if (gh is None) != (t[inv[h]][inv[g]] is None):
                    raise Fail(f"gh vs h^-1g^-1 existence at {_tok(G, g, h)}")
                if gh is None:
                    continue
                if d[gh] != d[h] or r[gh] != r[g]:
                    raise Fail(f"d/r of product at {_tok(G, g, h)}")
                if inv[gh] != t[inv[h]][inv[g]]:
                    raise Fail(f"(gh)^-1 != h^-1g^-1 at {_tok(G, g, h)}")
        if n <= EXHAUSTIVE_LIMIT:
            quads = ((g, h, k, l) for g in range(n) for h in range(n) for k in range(n) for l in range(n))
            how = "exhaustive"
        else:
            quads = (tuple(self.rng.randrange(n) for _ in range(4)) for _ in range(QUADRUPLE_SAMPLES))
            how = f"{QUADRUPLE_SAMPLES} sampled quadruples"
        for g, h, k, l in quads:
            gh, kl = t[g][h], t[k][l]
            if gh is None or kl is None or t[gh][kl] is None:
                continue
            hk = t[h][k]
            rhs = None if hk is None or t[hk][l] is None else t[g][t[hk][l]]
            if t[gh][kl] != rhs:
                raise Fail(f"(gh)(kl) != g((hk)l) at {_tok(G, g, h, k, l)}")
        return how

    def p2_3(self):
        G = self.G
        d, r, inv = G.dmap, G.rmap, G.invmap
        for g in range(len(G)):
            if not (d[g] == r[inv[g]] and d[d[g]] == d[g] == r[d[g]] and d[r[g]] == r[g] == r[r[g]]):
                raise Fail(_tok(G, g))
        return ""

    def p2_5(self):
        subs = self.all_subs
        count = 0
        for A, B in combinations(subs, 2):
            common = A.members & B.members
            if not common:
                continue
            H = intersect([A, B])
            count += 1
            if A.wide and B.wide and not H.wide:
                raise Fail(f"{_set(A)} ∩ {_set(B)} not wide")
        return f"{count} intersections"

    def p2_6(self):
        G = self.G
        n = len(G)
        seeds = [frozenset([x]) for x in range(n)]
        if n <= EXHAUSTIVE_LIMIT:
            seeds += [frozenset(p) for p in combinations(range(n), 2)]
        for B in seeds:
            S = generate(ElementSet(G, B)).members
            if not B <= S or closure_failure(G, S) is not None:
                raise Fail(f"<{_tok(G, *sorted(B))}> not a closed superset")
            if self.exhaustive:
                family = [H.members for H in self.all_subs if B <= H.members]
                if S != frozenset.intersection(*family):
                    raise Fail(f"<{_tok(G, *sorted(B))}> is not the least subgroupoid containing B")
        return f"{len(seeds)} generating sets"

    def p2_7(self):
        both_false = 0
        for H in self.wide:
            for K in self.wide:
                HK = set_product(H, K).members
                KH = set_product(K, H).members
                sub = product_is_subgroupoid(H, K)
                if sub != (HK == KH):
                    raise Fail(f"H={_set(H)} K={_set(K)}")
                both_false += not sub
        return f"{len(self.wide) ** 2} pairs, {both_false} with HK not a subgroupoid"

    # section 3

    def d3_1(self):
        G = self.G
        for H in self.wide:
            if normality.is_normal_by_inclusion(H) != normality.is_normal_by_equality(H):
                raise Fail(f"characterizations disagree on {_set(H)}")
        for H in (identities_view(G), iso_part(G), whole(G)):
            if not normality.is_normal(H):
                raise Fail(f"{_set(H)} should be normal")
        return f"{len(self.normal)} of {len(self.wide)} wide subgroupoids normal"

    def p3_2_1(self):
        for A, B in combinations(self.normal, 2):
            if not normality.is_normal(intersect([A, B])):
                raise Fail(f"{_set(A)} ∩ {_set(B)}")
        return ""

    def p3_2_2(self):
        G = self.G
        for x in range(len(G)):
            B = frozenset([x])
            N = normality.normal_closure(ElementSet(G, B))
            if not normality.is_normal(N) or x not in N.members:
                raise Fail(f"closure of {_tok(G, x)} not normal")
            if self.exhaustive:
                family = [H.members for H in self.normal if B <= H.members]
                if N.members != frozenset.intersection(*family):
                    raise Fail(f"closure of {_tok(G, x)} is not the least")
        return ""

    def p3_2_3(self):
        for K in self.normal_iso:
            for H in self.all_subs:
                if not is_subgroupoid(set_product(H, K)):
                    raise Fail(f"H={_set(H)} K={_set(K)}")
        return f"{len(self.all_subs)} x {len(self.normal_iso)} pairs"

    def p3_2_4(self):
        for K in self.normal_iso:
            for H in self.normal:
                HK = normality.product_with_normal(H, K)
                if not normality.is_normal(HK):
                    raise Fail(f"H={_set(H)} K={_set(K)}")
        return ""

    def p3_2_5(self):
        for H in self.wide:
            for K in self.normal:
                normality.intersect_normal(H, K)
        return ""

    def p3_2_6(self):
        G = self.G
        g0 = frozenset(G.identities)
        instances = nontrivial = 0
        for H in self.normal:
            for K in self.normal:
                if H.members & K.members != g0:
                    continue
                instances += 1
                nontrivial += H.members != g0 and K.members != g0
                if not normality.check_commuting_trivial_intersection(H, K):
                    raise Fail(f"H={_set(H)} K={_set(K)}")
        return f"{instances} pairs, {nontrivial} nontrivial"

    def _normalizers(self):
        if not hasattr(self, "_nz"):
            self._nz = [(H, normality.normalizer(H)) for H in self.wide]
        return self._nz

    def p3_4_1(self):
        for H, N in self._normalizers():
            if not (N.as_subgroupoid.wide and H.members <= N.members):
                raise Fail(_set(H))
        return ""

    def p3_4_2(self):
        for H, N in self._normalizers():
            if not normality.is_normal(H, N.as_subgroupoid):
                raise Fail(_set(H))
        return ""

    def p3_4_3(self):
        for H, N in self._normalizers():
            for T in self.wide:
                if H.members <= T.members and normality.is_normal(H, T):
                    if not T.members <= N.members:
                        raise Fail(f"H={_set(H)} T={_set(T)}")
        return ""

    def p3_4_4(self):
        n = len(self.G)
        for H, N in self._normalizers():
            if (len(N) == n) != normality.is_normal(H):
                raise Fail(_set(H))
        return ""

    def c3(self):
        G = self.G
        n = len(G)
        for H in self.wide:
            rel = [[normality.congruent(g, l, H) for l in range(n)] for g in range(n)]
            for g in range(n):
                if not rel[g][g]:
                    raise Fail(f"not reflexive at {_tok(G, g)} for {_set(H)}")
                for l in range(n):
                    if rel[g][l] != rel[l][g]:
                        raise Fail(f"not symmetric at {_tok(G, g, l)} for {_set(H)}")
                    if rel[g][l]:
                        for m in range(n):
                            if rel[l][m] and not rel[g][m]:
                                raise Fail(f"not transitive at {_tok(G, g, l, m)}")
            for g in range(n):
                c = normality.coset(g, H)
                cls = frozenset(l for l in range(n) if rel[g][l])
                if c.members != cls:
                    raise Fail(f"coset of {_tok(G, g)} is not its class for {_set(H)}")
        return ""

    def t3_6(self):
        for H in self.normal_iso:
            Q = normality.quotient(H)
            j = Q.projection
            if not (j.is_strong and j.is_surjective):
                raise Fail(f"j not strong surjective for {_set(H)}")
            if kernel(j).members != H.members:
                raise Fail(f"ker j != H for {_set(H)}")
            _, phibar = first_iso(j)
            if phibar.after(j).mapping != j.mapping:
                raise Fail(f"φ != φ̄ ∘ j for {_set(H)}")
        undefined = 0
        for H in self.normal:
            if H.isotropic:
                continue
            try:
                normality.quotient(H)
            except QuotientUndefined:
                undefined += 1
            else:
                raise Fail(f"quotient by non-isotropic {_set(H)} accepted")
        return f"{len(self.normal_iso)} quotients; {undefined} non-isotropic normal H have no quotient"

    # section 4

    def p4_2_1(self):
        G = self.G
        Z = cc.center(G)
        direct = cc.center_members(G)
        union = frozenset().union(*(cc.group_center(G, e) for e in G.identities))
        if direct != union or Z.members != direct:
            raise Fail("center != union of vertex-group centers")
        return f"|Z(G)| = {len(Z)}"

    def p4_2_2(self):
        G = self.G
        if (cc.center(G).members == G.iso_members) != G.is_abelian():
            raise Fail("Z(G) = Iso(G) iff abelian fails")
        return ""

    def p4_2_3(self):
        G = self.G
        if not normality.is_normal(cc.center(G).view, iso_part(G)):
            raise Fail("Z(G) not normal in Iso(G)")
        return ""

    def p4_2_4(self):
        G = self.G
        Z = cc.center(G).view
        I = iso_part(G)
        subs = wide_subgroupoids(Z.groupoid) if len(Z) <= EXHAUSTIVE_LIMIT else [
            identities_view(Z.groupoid), whole(Z.groupoid)
        ]
        for S in subs:
            H = certify(G, G.indices(S.tokens()))
            if not normality.is_normal(H, I):
                raise Fail(_set(H))
        return f"{len(subs)} wide subgroupoids of Z(G)"

    def p4_4_1(self):
        G = self.G
        D = cc.commutator_subgroupoid(G)
        parts = set()
        for e in G.identities:
            grp = G.isotropy_members(e)
            comms = [cc._commutator(G, x, y) for x in grp for y in grp]
            parts |= closure(G, comms)
        if D.members != frozenset(parts):
            raise Fail("G' != union of vertex-group commutator subgroups")
        return f"|G'| = {len(D)}"

    def p4_4_2(self):
        G = self.G
        D = cc.commutator_subgroupoid(G)
        if (D.members == frozenset(G.identities)) != G.is_abelian():
            raise Fail("G' = G0 iff abelian fails")
        return ""

    def p4_4_3(self):
        G = self.G
        W = whole(G)
        for H in self.normal:
            if not cc.bracket(H, W).members <= H.members:
                raise Fail(_set(H))
        return ""

    def p4_4_4(self):
        Q = cc.abelianization(self.G)
        return f"|G/G'| = {len(Q)}"

    def p4_4_5(self):
        for H in self.normal_iso:
            if not cc.largest_abelian_check(H):
                raise Fail(_set(H))
        return f"{len(self.normal_iso)} normal H"

    def p4_4_6(self):
        G = self.G
        count = 0
        for H in self.normal_iso:
            Q = normality.quotient(H)
            if Q.groupoid.is_abelian():
                cc.factor_through_abelianization(Q.projection)
                count += 1
        one = trivial()
        cc.factor_through_abelianization(GroupoidMap(G, one, [0] * len(G)))
        return f"{count + 1} maps factored"

    # section 5

    def p5_1(self):
        G = self.G
        for g in range(len(G)):
            inner.inner_iso(G, g)
        return ""

    def p5_2_1(self):
        G = self.G
        I = {g: inner.inner_iso(G, g) for g in range(len(G))}
        for g, h, gh in G.products():
            if I[g].after(I[h]) != I[gh]:
                raise Fail(f"I_g I_h != I_gh at {_tok(G, g, h)}")
        for g in range(len(G)):
            if I[g].inverse() != I[G.invmap[g]]:
                raise Fail(f"(I_g)^-1 != I_g^-1 at {_tok(G, g)}")
        try:
            A = inner.partial_iso_groupoid(G, self.bound)
        except BoundExceeded as exc:
            return ("SKIP", f"composition laws hold; A(G) not built: {exc}")
        IG = inner.inner_groupoid(G)
        members = [A.index_of[f] for f in IG.isos]
        view = certify(A.groupoid, members)
        if not (view.wide and normality.is_normal(view)):
            raise Fail("I(G) not normal in A(G)")
        for s in A.isos:
            sinv = s.inverse()
            for g in G.iso_members:
                f = I[g]
                if f.domain_base == s.range_base:
                    lhs = sinv.after(f.after(s))
                    if lhs != I[sinv(g)]:
                        raise Fail(f"σ^-1 I_g σ != I_σ^-1(g) at {_tok(G, g)}")
        return f"|A(G)| = {len(A)}, |I(G)| = {len(IG)}"

    def p5_2_2(self):
        G = self.G
        iso = iso_part(G).groupoid
        IG = inner.inner_groupoid(iso)
        only_identities = all(f.domain_base == f.range_base and all(x == y for x, y in f.mapping)
                              for f in IG.isos)
        if only_identities != G.is_abelian():
            raise Fail("I(Iso(G)) = {I_e} iff abelian fails")
        return ""

    def p5_2_3(self):
        inner.theta(self.G)
        return ""

    def p5_2_4(self):
        rep = inner.verify_inner_iso_theorem(self.G)
        if not rep.ok:
            raise Fail("; ".join(rep.lines()))
        return f"|G/Z| = |I(G)| = {len(rep.inner)}"

    def p5_2_5(self):
        for H in self.wide:
            if inner.normal_via_invariance(H) != normality.is_normal(H):
                raise Fail(_set(H))
        return ""


def run_suite(G: Groupoid, exhaustive: Optional[bool] = None, bound: Optional[int] = None) -> SuiteReport:
    return Suite(G, exhaustive, bound).run()
