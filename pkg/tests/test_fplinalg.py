from functools import lru_cache
from itertools import product

import pytest
from hypothesis import given, strategies as st

from ordertree.arith import rref
from ordertree.fplinalg import (QuotientSpace, biprojective_subspaces, complement_summands,
                                complement_summands_in, count_biprojective, count_complements,
                                gaussian_binomial, invariant_intermediate, is_subspace_of,
                                subspace_intersection, subspace_sum, subspaces_between,
                                subspaces_of_dim)
from ordertree.lattice import Lattice
from ordertree.numberfield import nf_make


@lru_cache(maxsize=None)
def all_subspaces(d, p):
    """Every subspace of F_p^d, grown one vector at a time (independent of the library)."""
    vecs = list(product(range(p), repeat=d))
    seen = {()}
    frontier = [()]
    while frontier:
        nxt = []
        for S in frontier:
            for v in vecs:
                T = rref(list(S) + [v], p)[0]
                if T not in seen:
                    seen.add(T)
                    nxt.append(T)
        frontier = nxt
    return sorted(seen)


def unit(d, i):
    return tuple(1 if j == i else 0 for j in range(d))


def full(d):
    return tuple(unit(d, i) for i in range(d))


# ------------------------------------------------------------ counting

def test_gaussian_binomials():
    assert [gaussian_binomial(3, k, 2) for k in range(4)] == [1, 7, 7, 1]
    assert gaussian_binomial(4, 2, 5) == 806


def test_count_examples():
    assert count_complements(2, 1, 2) == 3
    assert count_complements(3, 0, 7) == 1
    assert count_complements(2, 2, 2) == 5
    assert count_biprojective(1, 1, 2) == 2
    assert count_biprojective(3, 0, 5) == 1
    assert count_biprojective(2, 1, 2) == 4


def test_subspace_counts():
    assert len(list(subspaces_between(2, 2))) == 5
    assert list(subspaces_between(0, 2)) == [()]
    assert len(list(subspaces_between(3, 2))) == 16


@pytest.mark.parametrize("q", [2, 3, 5])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_subspaces_match_brute_force(n, q):
    assert sorted(subspaces_between(n, q)) == all_subspaces(n, q)
    for k in range(n + 1):
        assert len(list(subspaces_of_dim(n, k, q))) == gaussian_binomial(n, k, q)


COMPLEMENT_CASES = [(n, m, q) for q in (2, 3, 5) for n in range(5) for m in range(n + 1)]


@pytest.mark.parametrize("n,m,q", COMPLEMENT_CASES)
def test_complements_count_and_filter(n, m, q):
    U = [unit(n, i) for i in range(n - m, n)]
    got = list(complement_summands(n, U, q))
    assert len(got) == len(set(got)) == count_complements(n, m, q)
    want = [S for S in all_subspaces(n, q) if subspace_sum(S, U, q) == full(n)]
    assert sorted(got) == want


BIPROJ_CASES = [(r, s, q) for q in (2, 3, 5) for r in range(5) for s in range(5) if r + s <= 4]


@pytest.mark.parametrize("r,s,q", BIPROJ_CASES)
def test_biprojective_count_and_filter(r, s, q):
    d = r + s
    V1 = [unit(d, i) for i in range(r)]
    V2 = [unit(d, i) for i in range(r, d)]
    got = list(biprojective_subspaces(V1, V2, q, d))
    assert len(got) == len(set(got)) == count_biprojective(r, s, q)

    def proj_onto(S, idx):
        return len(rref([[v[i] for i in idx] for v in S], q)[0]) if S else 0
    want = [S for S in all_subspaces(d, q)
            if proj_onto(S, range(r)) == r and proj_onto(S, range(r, d)) == s]
    assert sorted(got) == want


@pytest.mark.parametrize("r,s,q", [(4, 3, 2), (4, 4, 2), (3, 3, 3)])
def test_biprojective_count_larger(r, s, q):
    d = r + s
    V1 = [unit(d, i) for i in range(r)]
    V2 = [unit(d, i) for i in range(r, d)]
    assert sum(1 for _ in biprojective_subspaces(V1, V2, q, d)) == count_biprojective(r, s, q)


def test_complement_small_examples():
    assert len(list(complement_summands(2, [unit(2, 0)], 2))) == 3
    assert list(complement_summands(2, [], 2)) == [full(2)]
    assert sorted(complement_summands(2, full(2), 2)) == all_subspaces(2, 2)
    assert list(biprojective_subspaces([unit(2, 0)], [], 2, 2)) == [(unit(2, 0),)]


spaces = st.sampled_from([(d, p) for d in (2, 3, 4) for p in (2, 3)])


@given(spaces, st.data())
def test_complements_with_bounds(dp, data):
    d, p = dp
    subs = all_subspaces(d, p)
    U = data.draw(st.sampled_from(subs))
    lower = data.draw(st.sampled_from(subs))
    amb = data.draw(st.sampled_from([S for S in subs if is_subspace_of(U, S, p)
                                     and is_subspace_of(lower, S, p)]))
    md = data.draw(st.integers(0, d))
    proper = data.draw(st.booleans())
    got = sorted(complement_summands_in(amb, U, p, lower=lower, proper=proper, min_dim=md))
    want = [S for S in subs if is_subspace_of(S, amb, p) and is_subspace_of(lower, S, p)
            and subspace_sum(S, U, p) == amb and len(S) >= md and not (proper and S == amb)]
    assert got == want


@given(spaces, st.data())
def test_intersection_and_sum(dp, data):
    d, p = dp
    subs = all_subspaces(d, p)
    A = data.draw(st.sampled_from(subs))
    B = data.draw(st.sampled_from(subs))
    I = subspace_intersection(A, B, p)
    S = subspace_sum(A, B, p)
    assert len(I) + len(S) == len(A) + len(B)
    assert is_subspace_of(I, A, p) and is_subspace_of(I, B, p)
    vecs = list(product(range(p), repeat=d))
    inA = {v for v in vecs if is_subspace_of([v], A, p)}
    inB = {v for v in vecs if is_subspace_of([v], B, p)}
    assert {v for v in vecs if is_subspace_of([v], I, p)} == inA & inB


# ------------------------------------------------------ invariant subspaces

def test_invariant_examples():
    ident = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert invariant_intermediate(3, [ident], 2) == sorted(all_subspaces(3, 2), key=lambda S: (len(S), S))
    rot = [[0, 1], [1, 1]]              # char poly x^2+x+1, irreducible over F_2
    assert invariant_intermediate(2, [rot], 2) == [(), full(2)]
    two = invariant_intermediate(3, [ident], 2, predicate=lambda S: len(S) == 2)
    assert len(two) == 7


mats = st.lists(st.lists(st.integers(0, 2), min_size=3, max_size=3), min_size=3, max_size=3)


@given(st.lists(mats, min_size=1, max_size=2), st.sampled_from([2, 3]))
def test_invariant_matches_filter(actions, p):
    acts = [[[x % p for x in r] for r in M] for M in actions]

    def stable(S):
        for M in acts:
            for v in S:
                w = [sum(v[i] * M[i][j] for i in range(3)) % p for j in range(3)]
                if not is_subspace_of([w], S, p):
                    return False
        return True
    want = sorted((S for S in all_subspaces(3, p) if stable(S)), key=lambda S: (len(S), S))
    assert invariant_intermediate(3, acts, p) == want


# ------------------------------------------------------------ quotients

QI = nf_make([1, 0, 1])


def test_quotient_space_examples():
    Z = Lattice.identity(QI)
    assert QuotientSpace(Z, Z.scale(2), 2).dim == 2
    assert QuotientSpace(Z, Z, 2).dim == 0


@given(st.lists(st.tuples(st.integers(0, 8), st.integers(0, 8)), min_size=1, max_size=3))
def test_quotient_lift_project(gens):
    Z = Lattice.identity(QI)
    bottom = Z.scale(3)
    Q = QuotientSpace(Z, bottom, 3)
    L = Lattice.from_rows(QI, [list(g) for g in gens] + [[3, 0], [0, 3]])
    assert Q.lift(Q.image(L)) == L + bottom
