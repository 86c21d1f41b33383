import random

import pytest
import sympy
from hypothesis import given, strategies as st

from ordertree.arith import (det, divisors, factor_int, hnf, hnf_det, is_in_hnf, is_prime,
                             nullspace, rank, rref, solve_upper, span_contains, xgcd)
from ordertree.ffield import (FpAlgebra, fq_find_root, fq_make, fq_primitive_element, is_irreducible,
                             pmul, poly_factor_mod_p, seed_from_env)

small_ints = st.integers(-20, 20)


def matrices(rows, cols):
    return st.lists(st.lists(small_ints, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


# --------------------------------------------------------------------- HNF

def test_hnf_examples():
    assert hnf([[2, 0], [0, 2], [1, 1]], 2) == ((1, 1), (0, 2))
    assert hnf([[1, 0], [0, 1]], 2) == ((1, 0), (0, 1))
    assert hnf([[0, 3], [3, 0]], 2) == ((3, 0), (0, 3))


def test_hnf_residues_of_first_example():
    # the lattice spanned by (2,0),(0,2),(1,1) has index 2: residues mod it
    H = hnf([[2, 0], [0, 2], [1, 1]], 2)
    assert hnf_det(H) == 2
    inside = {(a, b) for a in range(4) for b in range(4) if is_in_hnf(H, [a, b])}
    assert inside == {(a, b) for a in range(4) for b in range(4) if (a + b) % 2 == 0}


def _is_hnf(H):
    n = len(H)
    for i in range(n):
        if H[i][i] <= 0 or any(H[i][j] for j in range(i)):
            return False
        for k in range(i):
            if not 0 <= H[k][i] < H[i][i]:
                return False
    return True


@given(matrices(4, 3))
def test_hnf_shape_and_determinant(M):
    if sympy.Matrix(M).rank() < 3:
        return
    H = hnf(M, 3)
    assert _is_hnf(H)
    # the HNF spans the same lattice: its determinant is the gcd of maximal minors
    g = 0
    for drop in range(4):
        sub = [r for i, r in enumerate(M) if i != drop]
        g = sympy.gcd(g, sympy.Matrix(sub).det())
    assert hnf_det(H) == abs(g)
    for r in M:
        assert is_in_hnf(H, r)


@given(matrices(3, 3), st.integers(0, 2 ** 31))
def test_hnf_unimodular_invariance(M, seed):
    if sympy.Matrix(M).det() == 0:
        return
    rng = random.Random(seed)
    N = [list(r) for r in M]
    for _ in range(6):
        i, j = rng.sample(range(3), 2)
        c = rng.randint(-3, 3)
        N[i] = [a + c * b for a, b in zip(N[i], N[j])]
    rng.shuffle(N)
    assert hnf(M, 3) == hnf(N, 3)


@given(matrices(3, 3), st.integers(1, 6))
def test_hnf_modulus_matches_plain(M, k):
    D = 2 ** k
    rows = M + [[D if i == j else 0 for j in range(3)] for i in range(3)]
    assert hnf(rows, 3) == hnf(rows, 3, D)


@given(matrices(3, 3))
def test_det_matches_sympy(M):
    assert det(M) == sympy.Matrix(M).det()


@given(matrices(3, 3), st.lists(small_ints, min_size=3, max_size=3))
def test_solve_upper(M, c):
    if sympy.Matrix(M).det() == 0:
        return
    H = hnf(M, 3)
    v = [sum(ci * H[i][k] for i, ci in enumerate(c)) for k in range(3)]
    assert list(solve_upper(H, v, integral=True)) == c


# ------------------------------------------------------------ mod p algebra

@given(matrices(4, 4), st.sampled_from([2, 3, 5, 7]))
def test_rref_rank_and_nullspace(M, p):
    basis, piv = rref(M, p)
    assert rank(M, p) == len(basis)
    # nullspace is the left kernel: y M = 0
    ker = nullspace(M, p)
    for y in ker:
        assert all(sum(yi * M[i][j] for i, yi in enumerate(y)) % p == 0 for j in range(4))
    assert len(ker) + len(basis) == 4
    for r in M:
        assert span_contains(basis, piv, r, p)


def test_small_number_theory():
    assert xgcd(240, 46)[0] == 2
    g, s, t = xgcd(240, 46)
    assert 240 * s + 46 * t == g
    assert factor_int(360) == {2: 3, 3: 2, 5: 1}
    assert [q for q in range(40) if is_prime(q)] == list(sympy.primerange(0, 40))
    assert sorted(divisors(28)) == [1, 2, 4, 7, 14, 28]


@given(st.integers(2, 10 ** 12))
def test_factor_int_matches_sympy(n):
    assert factor_int(n) == sympy.factorint(n)


# ------------------------------------------------------------ F_p[x], F_q

def test_factor_examples():
    assert poly_factor_mod_p([1, 0, 1], 2) == [((1, 1), 2)]
    assert sorted(poly_factor_mod_p([1, 0, 1], 5)) == [((2, 1), 1), ((3, 1), 1)]
    assert poly_factor_mod_p([1, 1, 1], 2) == [((1, 1, 1), 1)]


polys = st.lists(st.integers(0, 6), min_size=2, max_size=9)


@given(polys, st.sampled_from([2, 3, 5, 7]))
def test_factorization_matches_sympy(c, p):
    c = [x % p for x in c]
    while c and c[-1] == 0:
        c.pop()
    if len(c) < 2:
        return
    lead = c[-1]
    inv = pow(lead, -1, p)
    c = [x * inv % p for x in c]
    got = poly_factor_mod_p(c, p)
    prod = [1]
    for f, m in got:
        assert is_irreducible(list(f), p)
        for _ in range(m):
            prod = pmul(prod, list(f), p)
    assert [x % p for x in prod] == c
    x = sympy.symbols("x")
    want = sympy.factor_list(sympy.Poly(list(reversed(c)), x, modulus=p))[1]
    canon = lambda g: tuple(int(a) % p for a in reversed(g.all_coeffs()))
    assert sorted((canon(g), m) for g, m in want) == sorted(got)


def test_fq_examples():
    assert fq_make(2, 1).f == 1 and fq_make(5, 1).q == 5
    assert fq_make(2, 2).modulus == (1, 1, 1)
    assert fq_primitive_element(fq_make(2, 1)) == (1,)
    assert fq_primitive_element(fq_make(5, 1)) == (2,)
    F4 = fq_make(2, 2)
    g = fq_primitive_element(F4)
    assert F4.order(g) == 3
    assert fq_find_root([-1, 1], F4) == F4.one
    r = fq_find_root([1, 1, 1], F4)
    assert r is not None and not any(F4.add(F4.add(F4.mul(r, r), r), F4.one))
    assert fq_find_root([1, 1, 1], fq_make(2, 1)) is None


@pytest.mark.parametrize("p,f", [(2, 3), (3, 2), (5, 2), (2, 6), (7, 3), (3, 5)])
def test_fq_primitive_and_roots(p, f):
    F = fq_make(p, f)
    assert is_irreducible(list(F.modulus), p)
    g = fq_primitive_element(F)
    assert F.order(g) == F.q - 1
    # every irreducible factor of degree dividing f of x^(q)-x has a root
    for d in (1, f):
        h = [0] * (p ** d + 1)
        h[-1] = 1
        h[1] = -1 % p
        for fac, _ in poly_factor_mod_p(h, p):
            if len(fac) - 1 == d and f % d == 0:
                r = fq_find_root(list(fac), F)
                acc = F.zero
                for c in reversed(fac):
                    acc = F.add(F.mul(acc, r), F._pad((c,)))
                assert not any(acc)


def test_fq_make_is_seed_deterministic(monkeypatch):
    monkeypatch.setenv("ORDERTREE_SEED", "12345")
    assert seed_from_env() == 12345
    assert fq_make(3, 4).modulus == fq_make(3, 4).modulus


def test_fp_algebra_components():
    # F_5[x]/(x^2+1) = F_5 x F_5; F_3[x]/(x^2+1) = F_9
    def alg(p):
        table = [[[1, 0], [0, 1]], [[0, 1], [p - 1, 0]]]
        return FpAlgebra(p, table, [1, 0])
    assert sorted(len(c) for c in alg(5).simple_components()) == [1, 1]
    assert [len(c) for c in alg(3).simple_components()] == [2]
