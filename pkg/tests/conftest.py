"""Shared fixtures and brute-force oracles.

The oracles below deliberately avoid the library's search code: they work
on plain Python sets and exhaustive loops so that they can be trusted on
small inputs and compared against the fast paths.
"""

import itertools
import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from wreathlab import catalogue as cat

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SMALL = [n for n in cat.GROUP_NAMES if cat.group(n).order <= 8]
UP_TO_12 = [n for n in cat.GROUP_NAMES if cat.group(n).order <= 12]

# acceptance lines, printed once at the end of the session
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


# --------------------------------------------------------------------------
# oracles

def naive_homs(F, H, fix=None):
    """All maps F -> H (identity to identity) that respect multiplication.

    ``fix`` optionally forces ``alpha(psi(x)) = phi(x)`` given as a pair.
    Only for tiny groups: the search space is |H|^(|F|-1).
    """
    n = F.order
    mulF = F.mul.tolist()
    mulH = H.mul.tolist()
    choices = [range(H.order)] * (n - 1)
    if fix is not None:
        alpha, phi = fix
        choices = [[h for h in range(H.order) if alpha.map[h] == phi.map[x]] for x in range(1, n)]
    out = []
    for tail in itertools.product(*choices):
        m = (0,) + tail
        if all(m[mulF[x][y]] == mulH[m[x]][m[y]] for x in range(n) for y in range(n)):
            out.append(m)
    return sorted(out)


def naive_subgroups(G):
    """Every subset containing 1 closed under multiplication (finite => subgroup)."""
    n = G.order
    mul = G.mul.tolist()
    out = []
    for r in range(n):
        for rest in itertools.combinations(range(1, n), r):
            s = {0, *rest}
            if all(mul[x][y] in s for x in s for y in s):
                out.append(frozenset(s))
    return out


def naive_closure(G, gens):
    s = {0}
    frontier = [0]
    mul = G.mul.tolist()
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = mul[x][g]
            if y not in s:
                s.add(y)
                frontier.append(y)
    return frozenset(s)


def naive_conjugates(G, S):
    mul, inv = G.mul.tolist(), G.inv.tolist()
    return [frozenset(mul[mul[g][x]][inv[g]] for x in S) for g in range(G.order)]


def naive_core(G, S):
    return frozenset.intersection(*naive_conjugates(G, S))


def naive_is_normal(G, S):
    return all(c == frozenset(S) for c in naive_conjugates(G, S))


def naive_independent(order, family):
    """(F : ∩ M_i) == ∏ (F : M_i) computed on Python sets."""
    inter = frozenset.intersection(*map(frozenset, family))
    prod = 1
    for M in family:
        prod *= order // len(M)
    return order // len(inter) == prod


def naive_transitive(G, family, ambient=None):
    """Orbit of the base coset tuple under left multiplication, on frozensets."""
    mul = G.mul.tolist()
    amb = range(G.order) if ambient is None else sorted(ambient)
    cosets = [{frozenset(mul[x][m] for m in M) for x in amb} for M in family]
    base = tuple(frozenset(M) for M in family)
    orbit = {tuple(frozenset(mul[g][x] for x in c) for c in base) for g in amb}
    total = 1
    for cs in cosets:
        total *= len(cs)
    return len(orbit) == total


def naive_fiber(factors):
    """Set of tuples with equal images, as a sorted list."""
    G = factors[0].codomain
    out = []
    for g in range(G.order):
        fibres = [np.nonzero(a.map == g)[0].tolist() for a in factors]
        out.extend(itertools.product(*fibres))
    return sorted(out)


def is_iso_bruteforce(G, H):
    """Isomorphism by trying every bijection fixing 1 (orders <= 7)."""
    if G.order != H.order:
        return False
    n = G.order
    mg, mh = G.mul.tolist(), H.mul.tolist()
    for perm in itertools.permutations(range(1, n)):
        p = (0,) + perm
        if all(p[mg[x][y]] == mh[p[x]][p[y]] for x in range(n) for y in range(n)):
            return True
    return False


@pytest.fixture(scope="session")
def S3():
    return cat.group("S3")


@pytest.fixture(scope="session")
def C2():
    return cat.group("C2")
