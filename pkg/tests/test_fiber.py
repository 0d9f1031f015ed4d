import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from wreathlab import (
    GroupHom,
    NonCommonBase,
    NotASolution,
    NotSurjective,
    check_fiber_independence,
    combine_solutions,
    cyclic,
    direct_power,
    enumerate_homs,
    fiber_product,
    is_isomorphic,
    power_fiber,
    projection,
    verify_associativity,
)
from wreathlab import catalogue as cat
from wreathlab.embedding import make_ep, solutions_independent

from conftest import naive_fiber

C4_TO_C2 = GroupHom(cyclic(4), cyclic(2), [0, 1, 0, 1])


def _check_structure(fp):
    # tuples are exactly the matching tuples, in lexicographic order
    assert [tuple(t) for t in fp.tuples.tolist()] == naive_fiber(list(fp.factors))
    for i, (pr, a) in enumerate(zip(fp.projections, fp.factors)):
        assert pr.is_surjective()
        assert np.array_equal(a.map[pr.map], fp.canonical.map)
        assert np.array_equal(pr.map, fp.tuples[:, i])
    # multiplication is componentwise
    T = fp.tuples
    for x, y in itertools.product(range(min(fp.total.order, 12)), repeat=2):
        z = fp.total.m(x, y)
        for i, a in enumerate(fp.factors):
            assert T[z, i] == a.domain.m(T[x, i], T[y, i])


def test_two_copies_of_c4_over_c2():
    fp = power_fiber(C4_TO_C2, 2)
    assert fp.total.order == 8
    _check_structure(fp)


def test_three_copies():
    assert power_fiber(C4_TO_C2, 3).total.order == 16


def test_single_factor_is_h():
    for alpha in (C4_TO_C2, projection(cat.group("C2^2"), 0)):
        fp = fiber_product([alpha])
        assert fp.projections[0].is_bijective()
        assert is_isomorphic(fp.total, alpha.domain)[0]


def test_trivial_base_gives_direct_product():
    C1 = cyclic(1)
    a = GroupHom.trivial(cat.group("S3"), C1)
    b = GroupHom.trivial(cyclic(2), C1)
    fp = fiber_product([a, b])
    assert fp.total.order == 12
    P = power_fiber(GroupHom.trivial(cyclic(2), C1), 2)
    assert is_isomorphic(P.total, cat.group("C2^2"))[0]


def test_factor_errors():
    with pytest.raises(NonCommonBase):
        fiber_product([C4_TO_C2, GroupHom.trivial(cyclic(3), cyclic(1))])
    with pytest.raises(NotSurjective):
        fiber_product([GroupHom.trivial(cyclic(4), cyclic(2))])
    with pytest.raises(ValueError):
        power_fiber(C4_TO_C2, 0)


def test_section_assembled_from_factor_sections():
    V = cat.group("C2^2")
    p = projection(V, 0)
    fp = power_fiber(p, 3)
    s = fp.section
    assert s is not None
    assert np.array_equal(fp.canonical.map[s.map], np.arange(2))
    assert power_fiber(C4_TO_C2, 2).section is None


def _c2cube_solutions():
    F = direct_power(cyclic(2), 3)
    H = direct_power(cyclic(2), 2)
    phi = projection(F, 0)
    alpha = projection(H, 0)
    # (a, b, c) -> (a, b) and (a, c); index a*4+b*2+c
    psi1 = GroupHom(F, H, [(x >> 2) * 2 + ((x >> 1) & 1) for x in range(8)])
    psi2 = GroupHom(F, H, [(x >> 2) * 2 + (x & 1) for x in range(8)])
    return F, H, phi, alpha, psi1, psi2


def test_combine_c2_cube():
    F, H, phi, alpha, psi1, psi2 = _c2cube_solutions()
    fp = power_fiber(alpha, 2)
    assert fp.total.order == 8
    comb = combine_solutions(fp, [psi1, psi2], phi)
    assert comb.is_bijective()
    for i, psi in enumerate((psi1, psi2)):
        assert fp.projections[i].compose(comb) == psi
    assert np.array_equal(fp.canonical.map[comb.map], phi.map)
    assert check_fiber_independence(fp, [psi1, psi2], phi) == (True, True)


def test_combine_single_solution_is_itself():
    F, H, phi, alpha, psi1, _ = _c2cube_solutions()
    fp = power_fiber(alpha, 1)
    comb = combine_solutions(fp, [psi1])
    assert np.array_equal(fp.tuples[comb.map, 0], psi1.map)


def test_mismatched_phi():
    F, H, phi, alpha, psi1, psi2 = _c2cube_solutions()
    fp = power_fiber(alpha, 2)
    other = projection(F, 1)
    with pytest.raises(NotASolution):
        combine_solutions(fp, [psi1, psi2], other)
    bad = GroupHom(F, H, [(x & 1) * 2 for x in range(8)])  # lifts the last coordinate
    with pytest.raises(NotASolution):
        combine_solutions(fp, [psi1, bad])
    with pytest.raises(NotASolution):
        combine_solutions(fp, [psi1])


def test_injective_pair_is_not_independent():
    V = cat.group("C2^2")
    p = projection(V, 0)
    sols = [s for s in enumerate_homs(V, V, p, p) if s.is_bijective()]
    assert len(sols) == 2
    fp = power_fiber(p, 2)
    assert check_fiber_independence(fp, sols, p) == (False, False)


def test_non_surjective_member():
    V = cat.group("C2^2")
    p = projection(V, 0)
    sols = enumerate_homs(V, V, p, p)
    nonsurj = [s for s in sols if not s.is_surjective()][0]
    surj = [s for s in sols if s.is_surjective()][0]
    fp = power_fiber(p, 2)
    assert check_fiber_independence(fp, [nonsurj, surj], p) == (False, False)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_associativity_examples(n):
    ok, w = verify_associativity([C4_TO_C2] * n, GroupHom.identity(cyclic(2)))
    assert ok and w.is_bijective()
    C1 = cyclic(1)
    ok, _ = verify_associativity([GroupHom.trivial(cyclic(2), C1)] * n,
                                 GroupHom.trivial(cyclic(3), C1))
    assert ok


def _fiber_inputs():
    out = []
    for base, maps in cat.fiber_instances():
        if base.order <= 4:
            out.append(maps)
    return out


FIBER_INPUTS = _fiber_inputs()


@st.composite
def fiber_factors(draw):
    maps = draw(st.sampled_from(FIBER_INPUTS))
    n = draw(st.integers(1, 3))
    chosen = [draw(st.sampled_from(maps))[1] for _ in range(n)]
    order = math.prod(a.domain.order for a in chosen) // chosen[0].codomain.order ** (n - 1)
    if order > 600:
        chosen = chosen[:1]
    return chosen


@given(fiber_factors())
def test_order_formula_and_structure(factors):
    fp = fiber_product(factors)
    n = len(factors)
    assert fp.total.order * fp.base.order ** (n - 1) == math.prod(a.domain.order for a in factors)
    assert fp.total.order == len(naive_fiber(factors))
    _check_structure(fp)


@given(fiber_factors())
def test_associativity_with_identity_beta(factors):
    G = factors[0].codomain
    ok, _ = verify_associativity(factors, GroupHom.identity(G))
    assert ok


def _ep_with_weak():
    out = []
    for e in cat.embedding_problems():
        ep = e.problem
        if ep.F.order > 8:
            continue
        weak = enumerate_homs(ep.F, ep.H, ep.alpha, ep.phi)
        if len(weak) >= 2 and len(weak) <= 40:
            out.append((ep, weak))
    return out


EPS = _ep_with_weak()


@given(st.sampled_from(EPS), st.data())
def test_combined_surjective_iff_proper_and_independent(epw, data):
    ep, weak = epw
    k = data.draw(st.integers(1, min(3, len(weak))))
    idx = data.draw(st.lists(st.integers(0, len(weak) - 1), min_size=k, max_size=k, unique=True))
    sols = [weak[i] for i in idx]
    fp = power_fiber(ep.alpha, len(sols))
    comb = combine_solutions(fp, sols, ep.phi)
    # the right-hand side from scratch, without the fiber product
    proper = all(s.is_surjective() for s in sols)
    indep = proper and solutions_independent(ep, sols)
    assert comb.is_surjective() == indep
    assert check_fiber_independence(fp, sols, ep.phi) == (indep, indep)


def test_make_ep_rejects_non_surjective():
    C4 = cyclic(4)
    with pytest.raises(NotSurjective):
        make_ep(GroupHom.trivial(C4, cyclic(2)), C4_TO_C2)
