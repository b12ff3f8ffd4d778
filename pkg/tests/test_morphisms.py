import random

import pytest

from grpd import builders
from grpd.center_commutator import center, commutator_subgroupoid
from grpd.core import RawTable, validate
from grpd.errors import NotAFunction, NotStrong, NotSurjective, PreconditionFailed
from grpd.morphisms import GroupoidMap, check_map, find_isomorphism, first_iso, identity_map, kernel
from grpd.normality import quotient
from grpd.subgroupoid import certify, identities_view


def oracle_is_hom(S, T, f):
    for x in S.elements:
        for y in S.elements:
            xy = S.compose(x, y)
            if xy is not None and T.compose(f[x], f[y]) != f[xy]:
                return False
    return True


def oracle_is_strong(S, T, f):
    return oracle_is_hom(S, T, f) and all(
        S.compose(x, y) is not None
        for x in S.elements for y in S.elements if T.compose(f[x], f[y]) is not None
    )


def test_identity_on_s3(fx):
    m = identity_map(fx("s3"))
    assert m.is_hom and m.is_strong and m.is_bijective
    assert kernel(m).tokens() == ["e"]


def test_projection_t6_to_s3_is_hom_but_not_strong(fx):
    T6, S3 = fx("t6"), fx("s3")
    mapping = {tok: tok[tok.index("),") + 2:-1] for tok in T6.elements}
    m = check_map(mapping, T6, S3)
    assert m.is_hom and not m.is_strong
    x, y = m.strong_failure
    assert T6.compose(x, y) is None and S3.compose(m(x), m(y)) is not None


def test_constant_map_to_identity(fx):
    S3 = fx("s3")
    m = check_map({t: "e" for t in S3.elements}, S3, S3)
    assert m.is_hom and m.is_strong and not m.is_injective
    assert kernel(m).members == frozenset(range(6))


def test_check_map_rejects_partial_and_foreign(fx):
    S3 = fx("s3")
    with pytest.raises(NotAFunction):
        check_map({"e": "e"}, S3, S3)
    with pytest.raises(NotAFunction):
        check_map({t: "zz" for t in S3.elements}, S3, S3)
    with pytest.raises(NotAFunction):
        check_map({**{t: "e" for t in S3.elements}, "x": "e"}, S3, S3)
    with pytest.raises(NotAFunction):
        GroupoidMap(S3, S3, [0, 1])


def test_kernel_of_projections(fx):
    S3, T6 = fx("s3"), fx("t6")
    Q = quotient(certify(S3, ["e", "(123)", "(132)"]))
    assert set(kernel(Q.projection).tokens()) == {"e", "(123)", "(132)"}
    D = commutator_subgroupoid(T6).view
    K = kernel(quotient(D).projection)
    assert K.members == D.members and len(K) == 6


def test_first_iso_examples(fx):
    S3, P2, T6 = fx("s3"), fx("p2"), fx("t6")
    j = quotient(certify(S3, ["e", "(123)", "(132)"])).projection
    Q, bar = first_iso(j)
    assert len(Q) == 2 and bar.is_bijective
    assert bar.after(Q.projection).mapping == j.mapping
    Q, bar = first_iso(identity_map(P2))
    assert len(Q) == 4 and bar.is_bijective
    j = quotient(center(T6).view).projection
    Q, bar = first_iso(j)
    assert len(Q) == 24 and bar.is_bijective and bar.is_strong


def test_first_iso_preconditions(fx):
    T6, S3, Z2 = fx("t6"), fx("s3"), fx("z2")
    proj = check_map({tok: tok[tok.index("),") + 2:-1] for tok in T6.elements}, T6, S3)
    with pytest.raises(NotStrong):
        first_iso(proj)
    into = check_map({"0": "e", "1": "(12)"}, Z2, S3)
    assert into.is_strong
    with pytest.raises(NotSurjective):
        first_iso(into)


def test_kernel_needs_hom(fx):
    Z2, Z3 = fx("z2"), fx("z3")
    m = check_map({"0": "0", "1": "1"}, Z2, Z3)
    assert not m.is_hom
    with pytest.raises(PreconditionFailed):
        kernel(m)


def test_find_isomorphism_examples(fx):
    S3, P2, B22 = fx("s3"), fx("p2"), fx("b22")
    m = find_isomorphism(S3, S3)
    assert m is not None and m.mapping == tuple(range(6))
    Q = quotient(identities_view(P2)).groupoid
    m = find_isomorphism(Q, P2)
    assert m is not None and m.is_strong and m.is_bijective
    assert find_isomorphism(B22, P2) is None
    assert find_isomorphism(fx("z6"), S3) is None
    assert find_isomorphism(fx("z4"), builders.dihedral(4)) is None


def _relabel(G, seed):
    rng = random.Random(seed)
    perm = list(range(len(G)))
    rng.shuffle(perm)
    names = tuple(f"x{k}" for k in range(len(G)))
    products = {(perm[i], perm[j]): perm[k] for i, j, k in G.products()}
    return validate(RawTable(names, products, "R")), perm


@pytest.mark.parametrize("stem", ["s3", "d4", "b4s3", "p3", "t6"])
@pytest.mark.parametrize("seed", range(3))
def test_find_isomorphism_on_relabelled_copies(fx, stem, seed):
    G = fx(stem)
    R, _ = _relabel(G, seed)
    m = find_isomorphism(G, R)
    assert m is not None
    f = m.as_dict()
    assert m.is_bijective and oracle_is_strong(G, R, f)


def test_flags_agree_with_oracle_on_random_maps(fx):
    rng = random.Random(7)
    pairs = [("z4", "z2"), ("s3", "z2"), ("p2", "p2"), ("b22", "z2"), ("z6", "z3")]
    for a, b in pairs:
        S, T = fx(a), fx(b)
        for _ in range(40):
            f = {x: rng.choice(T.elements) for x in S.elements}
            m = check_map(f, S, T)
            assert m.is_hom == oracle_is_hom(S, T, f)
            assert m.is_strong == oracle_is_strong(S, T, f)
