import pytest

from grpd import builders, inner
from grpd.center_commutator import center
from grpd.errors import BoundExceeded, PreconditionFailed
from grpd.morphisms import kernel
from grpd.normality import is_normal
from grpd.subgroupoid import certify, identities_view, iso_part, wide_subgroupoids

import oracles


def as_tokens(G, f):
    return {G.elements[x]: G.elements[y] for x, y in f.mapping}


def test_inner_iso_at_identity_is_identity(any_fixture):
    G = any_fixture
    for e in G.identities:
        f = inner.inner_iso(G, e)
        assert f.domain_base == f.range_base == e
        assert all(x == y for x, y in f.mapping)


def test_inner_iso_s3_conjugation(fx):
    S3 = fx("s3")
    f = as_tokens(S3, inner.inner_iso(S3, "(123)"))
    assert f["(12)"] == "(23)"
    P = oracles.PermGroup(S3.elements, 3)
    g = "(123)"
    for x in S3.elements:
        assert f[x] == P.mul(P.mul(g, x), P.inv(g))


def test_inner_iso_p2(fx):
    P2 = fx("p2")
    assert as_tokens(P2, inner.inner_iso(P2, "(1,2)")) == {"(2,2)": "(1,1)"}


def test_inner_iso_is_group_iso_everywhere(any_fixture):
    G = any_fixture
    for g in G.elements:
        f = as_tokens(G, inner.inner_iso(G, g))
        dom = oracles.vertex_groups(G)[G.d(g)]
        rng = oracles.vertex_groups(G)[G.r(g)]
        assert sorted(f) == sorted(dom) and sorted(f.values()) == sorted(rng)
        for x in dom:
            for y in dom:
                assert f[G.compose(x, y)] == G.compose(f[x], f[y])


def test_inner_composition_law(any_fixture):
    G = any_fixture
    I = {g: inner.inner_iso(G, g) for g in range(len(G))}
    for g, h, gh in G.products():
        assert I[g].composable(I[h])
        assert I[g].after(I[h]) == I[gh]
    for g in range(len(G)):
        assert I[g].inverse() == I[G.invmap[g]]


def test_after_requires_composable(fx):
    P2 = fx("p2")
    f = inner.inner_iso(P2, "(1,2)")
    with pytest.raises(PreconditionFailed):
        f.after(f)


@pytest.mark.parametrize("stem,size", [("s3", 6), ("b22", 2), ("p2", 4), ("t6", 24), ("z6", 1)])
def test_inner_groupoid_sizes(fx, stem, size):
    IG = inner.inner_groupoid(fx(stem))
    assert len(IG) == size
    assert len(IG.groupoid) == size


@pytest.mark.parametrize("stem,size", [("p2", 4), ("z3", 2), ("s3", 6), ("z6", 2), ("d4", 8), ("b22", 4)])
def test_partial_iso_groupoid_sizes(fx, stem, size):
    A = inner.partial_iso_groupoid(fx(stem))
    assert len(A) == size


@pytest.mark.parametrize("stem", ["z1", "z2", "z3", "z4", "z5", "z6", "s3", "d4"])
def test_automorphism_count_matches_brute_force(fx, stem):
    G = fx(stem)
    assert len(inner.partial_iso_groupoid(G)) == oracles.count_group_automorphisms(G.elements, G.compose)


def test_a_of_p2_is_p2(fx):
    from grpd.morphisms import find_isomorphism

    assert find_isomorphism(inner.partial_iso_groupoid(fx("p2")).groupoid, fx("p2")) is not None


def test_bound_is_enforced(fx, monkeypatch):
    S3 = fx("s3")
    with pytest.raises(BoundExceeded):
        inner.partial_iso_groupoid(S3, bound=5)
    monkeypatch.setenv("GRPD_BOUND", "5")
    assert inner.default_bound() == 5
    with pytest.raises(BoundExceeded):
        inner.partial_iso_groupoid(S3)
    monkeypatch.delenv("GRPD_BOUND")
    assert inner.default_bound() == inner.DEFAULT_BOUND


def test_theta_kernels(fx):
    S3, B22 = fx("s3"), fx("b22")
    assert kernel(inner.theta(S3)).tokens() == ["e"]
    assert kernel(inner.theta(B22)).members == center(B22).members == frozenset(range(4))


@pytest.mark.parametrize("stem", ["s3", "p2", "b22", "b23", "t6", "b4s3", "d4"])
def test_quotient_by_center_is_inner_groupoid(fx, stem):
    rep = inner.verify_inner_iso_theorem(fx(stem))
    assert rep.ok
    assert rep.kernel_is_center and rep.searched is not None
    assert len(rep.quotient) == len(rep.inner)


def test_report_lines(fx):
    lines = inner.verify_inner_iso_theorem(fx("s3")).lines()
    assert lines == ["|G/Z| 6", "|I(G)| 6", "kernel_is_center yes", "first_iso ok", "search found"]


def test_invariance_examples(fx):
    S3 = fx("s3")
    assert not inner.is_invariant(certify(S3, ["e", "(12)"]), "(123)")
    for stem in ("t6", "p2", "b4s3"):
        G = fx(stem)
        for g in G.elements:
            assert inner.is_invariant(identities_view(G), g)
            assert inner.is_invariant(iso_part(G), g)
    with pytest.raises(PreconditionFailed):
        inner.is_invariant(certify(fx("p2"), ["(1,1)"]), "(1,1)")


def test_invariance_matches_normality(small_fixture):
    for H in wide_subgroupoids(small_fixture):
        assert inner.normal_via_invariance(H) == is_normal(H)


@pytest.mark.parametrize("stem", ["p2", "p3", "b22", "b23", "b4s3", "s3", "d4", "z4", "z6", "t6"])
def test_inner_normal_in_partial_isos(fx, stem):
    assert inner.inner_normal_in_automorphisms(fx(stem))


def test_inner_normal_in_partial_isos_s4():
    assert inner.inner_normal_in_automorphisms(builders.symmetric(4), bound=24)
