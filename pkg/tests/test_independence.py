import itertools

import pytest
from hypothesis import given, strategies as st

from wreathlab import MixedParents, Subgroup, cyclic, intersection, is_independent, is_independent_transitive
from wreathlab import catalogue as cat
from wreathlab.config import override
from wreathlab.errors import SearchCapExceeded
from wreathlab.groups import is_normal, product_set
from wreathlab.lattice import all_subgroups

from conftest import naive_independent, naive_transitive

MEDIUM = [n for n in cat.GROUP_NAMES if cat.group(n).order <= 24]


def test_factor_pair_is_independent():
    V = cat.group("C2^2")
    fam = [Subgroup(V, [0, 1]), Subgroup(V, [0, 2])]
    r = is_independent(V, fam)
    assert r.independent
    assert (r.intersection_index, r.index_product) == (4, 4)
    assert is_independent_transitive(V, fam)


def test_transposition_pair_is_not(S3):
    fam = [Subgroup(S3, [0, 1]), Subgroup(S3, [0, 2])]
    r = is_independent(S3, fam)
    assert not r
    assert (r.intersection_index, r.index_product) == (6, 9)
    assert not is_independent_transitive(S3, fam)


@pytest.mark.parametrize("name", ["S3", "D4", "A4", "C6"])
def test_singletons_and_empty(name):
    F = cat.group(name)
    for M in all_subgroups(F):
        assert is_independent(F, [M])
        assert is_independent_transitive(F, [M])
    assert is_independent(F, [])
    assert is_independent_transitive(F, [])


def test_mixed_parents_rejected(S3):
    with pytest.raises(MixedParents):
        is_independent(S3, [Subgroup.whole(cyclic(6))])
    with pytest.raises(MixedParents):
        is_independent_transitive(S3, [Subgroup.whole(cyclic(6))])


def test_member_outside_ambient_subgroup(S3):
    A3 = Subgroup(S3, [0, 3, 4])
    with pytest.raises(MixedParents):
        is_independent(A3, [Subgroup(S3, [0, 1])])


def test_relative_ambient():
    # inside K = C2 x C2 x 0 of C2^3 two different lines are K-independent
    F = cat.group("C2^3")
    K = Subgroup(F, [0, 2, 4, 6])
    a, b = Subgroup(F, [0, 2]), Subgroup(F, [0, 4])
    assert is_independent(K, [a, b])
    assert is_independent_transitive(K, [a, b])
    assert not is_independent(F, [a, b])


def test_tuple_cap():
    F = cat.group("C2^4")
    triv = Subgroup.trivial(F)
    with override(tuple_cap=100):
        with pytest.raises(SearchCapExceeded):
            is_independent_transitive(F, [triv, triv])


@pytest.mark.parametrize("name", [n for n in MEDIUM if cat.group(n).order <= 12])
def test_pairs_match_set_oracles(name):
    F = cat.group(name)
    subs = all_subgroups(F)
    for M1, M2 in itertools.combinations_with_replacement(subs, 2):
        fam = [M1.elements, M2.elements]
        r = is_independent(F, [M1, M2])
        assert r.independent == naive_independent(F.order, fam)
        assert r.intersection_index <= r.index_product
        assert is_independent_transitive(F, [M1, M2]) == naive_transitive(F, fam)


@st.composite
def families(draw, k_max=3):
    name = draw(st.sampled_from(MEDIUM))
    F = cat.group(name)
    subs = all_subgroups(F)
    k = draw(st.integers(1, k_max))
    return F, [draw(st.sampled_from(subs)) for _ in range(k)]


@given(families())
def test_index_inequality_and_oracle(fam):
    F, ms = fam
    r = is_independent(F, ms)
    assert r.intersection_index <= r.index_product
    assert r.independent == is_independent_transitive(F, ms)


@given(families(k_max=4))
def test_induction_on_family_size(fam):
    F, ms = fam
    if len(ms) < 2:
        return
    head = ms[:-1]
    lhs = is_independent(F, ms).independent
    rhs = is_independent(F, head).independent and is_independent(
        F, [intersection(*head), ms[-1]]).independent
    assert lhs == rhs


@given(families(k_max=2), st.data())
def test_independence_goes_up(fam, data):
    F, ms = fam
    if not is_independent(F, ms):
        return
    bigger = [data.draw(st.sampled_from([N for N in all_subgroups(F) if M.issubset(N)]))
              for M in ms]
    assert is_independent(F, bigger)


@given(families(k_max=2), st.data())
def test_tower_clause(fam, data):
    F, ms = fam
    if len(ms) != 2:
        return
    M1, M2 = ms
    N1 = data.draw(st.sampled_from([N for N in all_subgroups(F) if M1.issubset(N)]))
    lhs = is_independent(F, [M1, M2]).independent
    rhs = (is_independent(F, [N1, M2]).independent
           and is_independent(N1, [M1, intersection(N1, M2)]).independent)
    assert lhs == rhs


@given(families(k_max=2))
def test_normal_factor_clause(fam):
    F, ms = fam
    if len(ms) != 2 or not is_normal(ms[0]):
        return
    els, _ = product_set(ms[0], ms[1])
    assert is_independent(F, ms).independent == (len(els) == F.order)
