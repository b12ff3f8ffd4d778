import pytest

from grpd.errors import EmptyIntersection, EmptySet, NotASubgroupoid, PreconditionFailed
from grpd.subgroupoid import (
    certify,
    conjugate,
    element_set,
    generate,
    generate_wide,
    identities_view,
    intersect,
    is_subgroupoid,
    is_wide,
    iso_part,
    product_is_subgroupoid,
    set_product,
    subgroupoids,
    whole,
    wide_subgroupoids,
    widen,
)

import oracles


def toks(H):
    return set(H.tokens())


def test_is_subgroupoid_examples(fx):
    S3, P2 = fx("s3"), fx("p2")
    assert is_subgroupoid(element_set(S3, ["e", "(12)"]))
    assert not is_subgroupoid(element_set(P2, ["(1,2)"]))
    assert not is_subgroupoid(element_set(S3, ["e", "(12)", "(13)"]))
    with pytest.raises(EmptySet):
        is_subgroupoid(element_set(S3, []))


def test_certify_rejects_with_witness(fx):
    with pytest.raises(NotASubgroupoid, match=r"\(12\)"):
        certify(fx("s3"), ["e", "(12)", "(13)"])


def test_is_wide_examples(fx):
    P2, T6 = fx("p2"), fx("t6")
    assert is_wide(identities_view(P2))
    copy = certify(T6, [f"((1,1),{s})" for s in ["e", "(12)", "(13)", "(23)", "(123)", "(132)"]])
    assert not is_wide(copy)
    for stem in ("p2", "s3", "t6"):
        assert is_wide(whole(fx(stem)))


def test_widen_examples(fx):
    P2, S3, T6 = fx("p2"), fx("s3"), fx("t6")
    assert toks(widen(certify(P2, ["(1,1)"]))) == {"(1,1)", "(2,2)"}
    H = certify(S3, ["e", "(12)"])
    assert widen(H) == H
    a3 = certify(T6, ["((1,1),e)", "((1,1),(123))", "((1,1),(132))"])
    assert toks(widen(a3)) == {"((1,1),e)", "((1,1),(123))", "((1,1),(132))", "((2,2),e)"}


def test_intersect_examples(fx):
    S3, B22 = fx("s3"), fx("b22")
    assert toks(intersect([certify(S3, ["e", "(12)"]), certify(S3, ["e", "(13)"])])) == {"e"}
    for stem in ("s3", "b4s3"):
        G = fx(stem)
        for H in subgroupoids(G):
            assert intersect([H, whole(G)]) == H
    f1 = certify(B22, ["1:0", "1:1", "2:0"])
    f2 = certify(B22, ["2:0", "2:1", "1:0"])
    meet = intersect([f1, f2])
    assert toks(meet) == {"1:0", "2:0"} and meet.wide


def test_empty_intersection_raises(fx):
    P2 = fx("p2")
    with pytest.raises(EmptyIntersection):
        intersect([certify(P2, ["(1,1)"]), certify(P2, ["(2,2)"])])


def test_generate_examples(fx):
    S3, P2 = fx("s3"), fx("p2")
    assert toks(generate(element_set(S3, ["(123)"]))) == {"e", "(123)", "(132)"}
    assert toks(generate(element_set(P2, ["(1,2)"]))) == set(P2.elements)
    for stem in ("p2", "t6", "b4s3"):
        G = fx(stem)
        g0 = set(G.tokens(G.identities))
        assert toks(generate(element_set(G, g0))) == g0


def test_generate_agrees_with_word_form_and_least_superset(small_fixture):
    G = small_fixture
    family = oracles.all_subgroupoids(G) if len(G) <= 10 else None
    for x in G.elements:
        H = generate(element_set(G, [x]))
        assert set(H.tokens()) == oracles.word_span(G, [x])
        if family:
            assert set(H.tokens()) == oracles.least_containing(G, [x], family)
        W = generate_wide(element_set(G, [x]))
        assert set(W.tokens()) == oracles.word_span(G, [x, *G.tokens(G.identities)])


def test_conjugate_by_identity_is_local_part(fx):
    for stem in ("t6", "b4s3", "s3"):
        G = fx(stem)
        for H in wide_subgroupoids(G) if len(G) <= 12 else [iso_part(G), whole(G)]:
            for e in G.identities:
                assert conjugate(H, e).members == H.at(e)


def test_conjugate_s3_transposition(fx):
    # g^-1 (12) g for g = (123) under the right-to-left product
    S3 = fx("s3")
    H = certify(S3, ["e", "(12)"])
    assert toks(conjugate(H, "(123)")) == {"e", "(13)"}
    assert toks(conjugate(H, "(123)")) == oracles.conjugate(S3, {"e", "(12)"}, "(123)")


def test_conjugate_identities_gives_source(fx):
    T6 = fx("t6")
    G0 = identities_view(T6)
    for g in T6.elements:
        assert toks(conjugate(G0, g)) == {T6.d(g)}


def test_conjugate_needs_wide(fx):
    with pytest.raises(PreconditionFailed):
        conjugate(certify(fx("p2"), ["(1,1)"]), "(1,2)")


def test_set_product_examples(fx):
    S3 = fx("s3")
    H, K = certify(S3, ["e", "(12)"]), certify(S3, ["e", "(13)"])
    assert toks(set_product(H, K)) == {"e", "(12)", "(13)", "(132)"}
    assert toks(set_product(K, H)) == {"e", "(13)", "(12)", "(123)"}
    for stem in ("p2", "t6"):
        G0 = identities_view(fx(stem))
        assert set_product(G0, G0).members == G0.members


def test_product_is_subgroupoid_examples(fx):
    S3 = fx("s3")
    H, K = certify(S3, ["e", "(12)"]), certify(S3, ["e", "(13)"])
    A3 = certify(S3, ["e", "(123)", "(132)"])
    assert not product_is_subgroupoid(H, K)
    assert product_is_subgroupoid(H, A3)
    assert toks(set_product(H, A3)) == set(S3.elements)
    for W in wide_subgroupoids(S3):
        assert product_is_subgroupoid(W, W)


def test_product_needs_wide(fx):
    P2 = fx("p2")
    with pytest.raises(PreconditionFailed):
        product_is_subgroupoid(certify(P2, ["(1,1)"]), whole(P2))


def test_enumeration_matches_subset_scan(small_fixture):
    G = small_fixture
    if len(G) > 10:
        pytest.skip("2^n scan too large")
    assert {frozenset(H.tokens()) for H in subgroupoids(G)} == set(oracles.all_subgroupoids(G))
    assert {frozenset(H.tokens()) for H in wide_subgroupoids(G)} == set(
        oracles.all_subgroupoids(G, wide=True)
    )


def test_wide_counts(fx):
    # S3 has 6 subgroups; P2 has G0 and P2 as its only wide subgroupoids
    assert len(wide_subgroupoids(fx("s3"))) == 6
    assert len(wide_subgroupoids(fx("p2"))) == 2
    assert len(wide_subgroupoids(fx("d4"))) == 10


def test_views_restrict_to_groupoids(fx):
    G = fx("t6")
    I = iso_part(G)
    assert len(I.groupoid) == 12 and len(I.groupoid.identities) == 2
    assert I.isotropic and not whole(G).isotropic
    inner = identities_view(G).inside(I)
    assert inner.parent is I.groupoid and inner.wide
    with pytest.raises(PreconditionFailed):
        whole(G).inside(I)
