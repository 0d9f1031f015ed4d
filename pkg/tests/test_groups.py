import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from wreathlab import (
    GroupAction,
    GroupHom,
    InvalidAction,
    InvalidTable,
    MixedParents,
    NotAHomomorphism,
    NotComposable,
    NotNormal,
    OrderCapExceeded,
    Subgroup,
    automorphism_group,
    closure,
    cyclic,
    dihedral,
    direct_power,
    direct_product,
    enumerate_homs,
    find_section,
    from_table,
    index,
    intersection,
    inversion_action,
    is_isomorphic,
    is_normal,
    make_group,
    normal_closure,
    normal_core,
    override,
    product_set,
    projection,
    quotient,
    semidirect_product,
    subgroup_generated,
    symmetric,
)
from wreathlab import catalogue as cat
from wreathlab.groups import FiniteGroup
from wreathlab.constructions import injection
from wreathlab.lattice import all_subgroups, conjugacy_classes, normal_subgroups

from conftest import (
    SMALL,
    UP_TO_12,
    is_iso_bruteforce,
    naive_closure,
    naive_core,
    naive_homs,
    naive_is_normal,
    naive_subgroups,
)

names = st.sampled_from([n for n in cat.GROUP_NAMES if cat.group(n).order <= 24])


@st.composite
def group_and_elements(draw, k=3):
    G = cat.group(draw(names))
    els = [draw(st.integers(0, G.order - 1)) for _ in range(k)]
    return G, els


# --------------------------------------------------------------------------
# construction and validation

def test_basic_orders():
    assert make_group("cyclic", 4).order == 4
    assert make_group("symmetric", 3).order == 6
    assert dihedral(4).order == 8
    assert symmetric(4).order == 24


def test_table_without_inverse_is_rejected():
    with pytest.raises(InvalidTable):
        make_group("table", table=[[0, 1], [1, 1]])


@pytest.mark.parametrize("table", [
    [[0, 1], [1, 2]],                     # closure
    [[1, 0], [0, 1]],                     # identity not at 0
    [[0, 1, 2], [1, 0, 2], [2, 2, 0]],    # not a latin square
    [],
])
def test_malformed_tables(table):
    with pytest.raises(InvalidTable):
        from_table(table)


def test_nonassociative_loop_is_rejected():
    # a latin square with identity 0 that is not associative (order-5 loop)
    t = [[0, 1, 2, 3, 4],
         [1, 0, 3, 4, 2],
         [2, 4, 0, 1, 3],
         [3, 2, 4, 0, 1],
         [4, 3, 1, 2, 0]]
    with pytest.raises(InvalidTable, match="associativity"):
        from_table(t)


def test_order_cap():
    with override(order_cap=20):
        with pytest.raises(OrderCapExceeded):
            symmetric(4)
    assert symmetric(4).order == 24


def test_direct_products():
    C2, C3 = cyclic(2), cyclic(3)
    V = direct_product(C2, C2)
    assert V.order == 4 and int(V.element_orders.max()) == 2
    assert is_isomorphic(direct_product(C2, C3), cyclic(6))[0]
    S3 = symmetric(3)
    assert is_isomorphic(direct_product(S3, cyclic(1)), S3)[0]
    assert not is_isomorphic(cyclic(4), V)[0]


def test_product_index_is_mixed_radix():
    C2 = cyclic(2)
    P = direct_power(C2, 3)
    for a, b, c in itertools.product(range(2), repeat=3):
        x = a * 4 + b * 2 + c
        assert [projection(P, i)(x) for i in range(3)] == [a, b, c]
    inj = injection(P, 1)
    assert inj.map.tolist() == [0, 2]


def test_semidirect_examples():
    C2, C3 = cyclic(2), cyclic(3)
    sd = semidirect_product(C3, C2, inversion_action(C2, C3))
    assert is_isomorphic(sd.group, symmetric(3))[0]
    assert not sd.group.is_abelian
    C1 = cyclic(1)
    A = cat.group("Q8")
    assert is_isomorphic(semidirect_product(A, C1, GroupAction.trivial(C1, A)).group, A)[0]
    V = semidirect_product(C2, C2, GroupAction.trivial(C2, C2)).group
    assert is_isomorphic(V, direct_product(C2, C2))[0]


def test_semidirect_multiplication_law():
    # nonabelian actor: S3 acting on C3 through the sign map
    S3 = symmetric(3)
    _, sign = quotient(S3, subgroup_generated(S3, [3]))
    C3 = cyclic(3)
    act = inversion_action(S3, C3, sign)
    sd = semidirect_product(C3, S3, act)
    for x, y in itertools.product(range(sd.group.order), repeat=2):
        a1, t1 = sd.pair(x)
        a2, t2 = sd.pair(y)
        a = C3.mul[a1, act(a2, int(S3.inv[t1]))]
        assert sd.pair(sd.group.m(x, y)) == (a, S3.m(t1, t2))
    assert sd.projection.compose(sd.section) == GroupHom.identity(S3)
    assert sd.projection.kernel() == sd.inclusion.image()


def test_bad_actions():
    C2, C3 = cyclic(2), cyclic(3)
    with pytest.raises(InvalidAction):
        GroupAction(C2, C3, [[0, 1, 2], [0, 1, 1]])
    with pytest.raises(InvalidAction):
        GroupAction(C2, C3, [[0, 2, 1], [0, 2, 1]])
    with pytest.raises(InvalidAction):
        inversion_action(C2, symmetric(3))
    with pytest.raises(InvalidAction):
        inversion_action(C3, C3)


def test_action_must_be_right_action():
    # for a nonabelian actor, a^(st) = (a^s)^t distinguishes left from right
    S3 = symmetric(3)
    # conjugation x -> g^-1 x g is a right action
    right = np.array([[S3.m(S3.m(int(S3.inv[g]), x), g) for x in range(6)] for g in range(6)])
    GroupAction(S3, S3, right)
    left = np.array([[S3.m(S3.m(g, x), int(S3.inv[g])) for x in range(6)] for g in range(6)])
    with pytest.raises(InvalidAction, match="right action"):
        GroupAction(S3, S3, left)


# --------------------------------------------------------------------------
# subgroups

def test_subgroup_examples(S3):
    r = [x for x in range(6) if S3.element_orders[x] == 3][0]
    t = [x for x in range(6) if S3.element_orders[x] == 2][0]
    assert subgroup_generated(S3, [r]).order == 3
    assert subgroup_generated(S3, []).is_trivial()
    assert subgroup_generated(S3, range(6)).is_whole()
    assert normal_core(subgroup_generated(S3, [t])).is_trivial()
    assert index(S3, Subgroup.trivial(S3)) == 6
    V = cat.group("C2^2")
    a, b = Subgroup(V, [0, 2]), Subgroup(V, [0, 1])
    els, closed = product_set(a, b)
    assert els == (0, 1, 2, 3) and closed
    A3 = subgroup_generated(S3, [r])
    Q, p = quotient(S3, A3)
    assert Q.order == 2 and p.kernel() == A3


def test_product_set_not_subgroup(S3):
    t1, t2 = [x for x in range(6) if S3.element_orders[x] == 2][:2]
    els, closed = product_set(Subgroup(S3, [0, t1]), Subgroup(S3, [0, t2]))
    assert len(els) == 4 and not closed


def test_quotient_edge_cases():
    for name in ("S3", "D4", "Q8"):
        F = cat.group(name)
        Q, p = quotient(F, Subgroup.whole(F))
        assert Q.order == 1
        Q, p = quotient(F, Subgroup.trivial(F))
        assert p.is_bijective()
        assert is_isomorphic(Q, F)[0]


def test_quotient_requires_normal(S3):
    with pytest.raises(NotNormal):
        quotient(S3, subgroup_generated(S3, [1]))


def test_mixed_parents(S3):
    C6 = cyclic(6)
    with pytest.raises(MixedParents):
        intersection(Subgroup.whole(S3), Subgroup.whole(C6))
    with pytest.raises(MixedParents):
        index(C6, Subgroup.whole(S3))


def test_subgroup_rejects_non_closed_subsets(S3):
    with pytest.raises(InvalidTable):
        Subgroup(S3, [0, 1, 2])
    with pytest.raises(InvalidTable):
        Subgroup(S3, [1])


@pytest.mark.parametrize("name", UP_TO_12)
def test_subgroup_lattice_matches_bruteforce(name):
    G = cat.group(name)
    subs = {frozenset(S.elements) for S in all_subgroups(G)}
    naive = set(naive_subgroups(G))
    assert subs == naive
    normals = {frozenset(S.elements) for S in normal_subgroups(G)}
    assert normals == {S for S in naive if naive_is_normal(G, S)}
    for S in all_subgroups(G):
        assert frozenset(normal_core(S).elements) == naive_core(G, S.elements)
        assert is_normal(S) == naive_is_normal(G, S.elements)
    classes = conjugacy_classes(G)
    assert sum(len(c) for c in classes) == G.order
    for c in classes:
        assert G.order % len(c) == 0


@given(group_and_elements())
def test_closure_matches_naive(ge):
    G, els = ge
    assert frozenset(subgroup_generated(G, els).elements) == naive_closure(G, els)


@given(group_and_elements(k=4))
def test_closure_extends_base(ge):
    G, els = ge
    base = subgroup_generated(G, els[:2])
    S = closure(G, els[2:], base=base)
    assert S == subgroup_generated(G, els)


@given(group_and_elements(k=2))
def test_normal_closure_is_smallest_normal(ge):
    G, els = ge
    N = normal_closure(G, els)
    assert is_normal(N)
    assert all(x in N for x in els)
    for K in normal_subgroups(G):
        if all(x in K for x in els):
            assert N.issubset(K)


@given(group_and_elements(k=3))
def test_group_laws(ge):
    G, (x, y, z) = ge
    m = G.m
    assert m(m(x, y), z) == m(x, m(y, z))
    assert m(x, int(G.inv[x])) == 0 == m(int(G.inv[x]), x)
    assert G.power(x, int(G.element_orders[x])) == 0
    assert G.order % int(G.element_orders[x]) == 0


@given(names, st.data())
def test_lagrange_and_index(name, data):
    G = cat.group(name)
    subs = all_subgroups(G)
    S = data.draw(st.sampled_from(subs))
    T = data.draw(st.sampled_from(subs))
    assert G.order % S.order == 0
    I = intersection(S, T)
    assert I.issubset(S) and I.issubset(T)
    els, closed = product_set(S, T)
    assert len(els) * I.order == S.order * T.order
    if is_normal(S) or is_normal(T):
        assert closed


# --------------------------------------------------------------------------
# homomorphisms

def test_hom_examples():
    C4, C2 = cyclic(4), cyclic(2)
    assert len(enumerate_homs(C4, C2)) == 2
    S3 = symmetric(3)
    assert len(enumerate_homs(S3, cyclic(1))) == 1
    V = cat.group("C2^2")
    assert len(enumerate_homs(V, V)) == 16
    p = projection(V, 0)
    sols = enumerate_homs(V, V, p, p)
    assert len(sols) == 4 and all(np.array_equal(p.map[s.map], p.map) for s in sols)
    q = GroupHom(C4, C2, [0, 1, 0, 1])
    assert q.kernel().order == 2
    assert find_section(p) is not None
    assert find_section(q) is None


def test_hom_validation():
    C4, C2 = cyclic(4), cyclic(2)
    with pytest.raises(NotAHomomorphism):
        GroupHom(C4, C2, [0, 1, 1, 1])
    with pytest.raises(NotAHomomorphism):
        GroupHom(C4, C2, [0, 1])
    with pytest.raises(NotAHomomorphism):
        GroupHom(C2, C4, [0, 4])
    q = GroupHom(C4, C2, [0, 1, 0, 1])
    with pytest.raises(NotComposable):
        q.compose(q)


def _small_pairs(limit=50_000):
    out = []
    for a in SMALL:
        for b in SMALL:
            F, H = cat.group(a), cat.group(b)
            if H.order ** (F.order - 1) <= limit:
                out.append((a, b))
    return out


@pytest.mark.parametrize("fname,hname", _small_pairs())
def test_enumerate_homs_matches_all_maps(fname, hname):
    F, H = cat.group(fname), cat.group(hname)
    fast = sorted(tuple(h.map.tolist()) for h in enumerate_homs(F, H))
    assert fast == naive_homs(F, H)


@pytest.mark.parametrize("name", ["C4", "C2^2", "S3", "C6", "D4", "Q8", "C4xC2"])
def test_constrained_homs_match_all_maps(name):
    F = cat.group(name)
    for K, Q, p in cat.quotients_of(name):
        # solutions of (p, p): endomorphisms over the quotient map
        if K.order ** (F.order - 1) > 50_000:
            continue
        fast = sorted(tuple(h.map.tolist()) for h in enumerate_homs(F, F, p, p))
        assert fast == naive_homs(F, F, fix=(p, p))


def test_isomorphism_against_bruteforce():
    names_ = [n for n in SMALL if cat.group(n).order <= 7] + ["C4", "C2^2"]
    for a, b in itertools.combinations_with_replacement(names_, 2):
        G, H = cat.group(a), cat.group(b)
        ok, w = is_isomorphic(G, H)
        assert ok == is_iso_bruteforce(G, H)
        if ok:
            assert w.is_bijective()


@pytest.mark.parametrize("name,count", [
    ("C1", 1), ("C2", 1), ("C2^2", 6), ("C4", 2), ("C3", 2), ("S3", 6), ("C2^3", 168),
    ("D4", 8), ("Q8", 24), ("C6", 2), ("C8", 4),
])
def test_automorphism_counts(name, count):
    auts = automorphism_group(cat.group(name))
    assert len(auts) == count
    assert len({a.map.tobytes() for a in auts}) == count


@pytest.mark.parametrize("name", ["C2^2", "S3", "C4", "C6"])
def test_automorphisms_match_bijective_homs(name):
    G = cat.group(name)
    naive = [m for m in naive_homs(G, G) if len(set(m)) == G.order]
    assert sorted(tuple(a.map.tolist()) for a in automorphism_group(G)) == naive


@given(names, st.data())
def test_hom_properties(name, data):
    F = cat.group(name)
    quots = cat.quotients_of(name)
    K, Q, p = data.draw(st.sampled_from(quots))
    assert p.is_surjective()
    assert p.kernel() == K
    assert Q.order * K.order == F.order
    # preimage of the image of a subgroup S is S K
    S = data.draw(st.sampled_from(all_subgroups(F)))
    els, _ = product_set(S, K)
    assert p.preimage(p.image_of(S)).elements == els
    # composing with the identity changes nothing
    assert p.compose(GroupHom.identity(F)) == p
    assert GroupHom.identity(Q).compose(p) == p


def test_restrict_and_subgroup_views(S3):
    sgn = enumerate_homs(S3, cyclic(2))[-1]
    assert sgn.is_surjective()
    A3 = sgn.kernel()
    r = sgn.restrict(A3)
    assert r.domain.order == 3 and set(r.map.tolist()) == {0}
    T = subgroup_generated(S3, [1])
    rt = sgn.restrict(T)
    assert rt.is_bijective()
    grp, incl = T.as_group()
    assert incl.image() == T
    assert T.lift(Subgroup.whole(grp)) == T
    assert T.restrict(Subgroup.trivial(S3)).is_trivial()


def _faithful_s3_on_v():
    """A faithful right action of S3 on C2 x C2, found by search over Aut(V)."""
    S3, V = symmetric(3), direct_product(cyclic(2), cyclic(2))
    autos = [h.map.tolist() for h in enumerate_homs(V, V) if h.is_bijective()]
    for perm in itertools.permutations(autos):
        try:
            return S3, V, GroupAction(S3, V, list(perm))
        except InvalidAction:
            continue
    raise AssertionError("no faithful action found")


def test_untwisted_law_is_not_associative():
    # (a1, t1)(a2, t2) = (a1 a2^t1, t1 t2) with a right action fails associativity
    # once the actor acts through a nonabelian image; the inverse twist does not
    S3, V, act = _faithful_s3_on_v()
    n = V.order * S3.order
    rows = [[V.m(x // 6, act(y // 6, x % 6)) * 6 + S3.m(x % 6, y % 6) for y in range(n)]
            for x in range(n)]
    with pytest.raises(InvalidTable):
        FiniteGroup(rows)
    sd = semidirect_product(V, S3, act)
    assert sd.group.order == 24
    assert is_isomorphic(sd.group, symmetric(4))[0]


def test_calc_dispatchers():
    from wreathlab import hom_calc, subgroup_calc
    V = direct_product(cyclic(2), cyclic(2))
    a, b = Subgroup(V, [0, 2]), Subgroup(V, [0, 1])
    assert subgroup_calc("intersection", a, b).is_trivial()
    assert subgroup_calc("product_set", a, b) == ((0, 1, 2, 3), True)
    assert subgroup_calc("index", V, a) == 2
    assert subgroup_calc("is_normal", a)
    S3 = symmetric(3)
    assert subgroup_calc("normal_core", Subgroup(S3, [0, 1])).is_trivial()
    r = GroupHom(cyclic(4), cyclic(2), [0, 1, 0, 1])
    assert hom_calc("kernel", r).elements == (0, 2)
    assert hom_calc("image", r).is_whole()
    assert hom_calc("is_surjective", r)
    assert hom_calc("compose", GroupHom.identity(cyclic(2)), r) == r
    assert hom_calc("section_search", r) is None
    p = projection(V, 0)
    beta = hom_calc("section_search", p)
    assert p.compose(beta) == GroupHom.identity(cyclic(2))
    with pytest.raises(NotComposable):
        hom_calc("compose", r, r)
    with pytest.raises(ValueError):
        subgroup_calc("frobnicate", a)
    with pytest.raises(ValueError):
        hom_calc("frobnicate", r)
