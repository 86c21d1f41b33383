from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from ordertree import ramified
from ordertree.fibers import is_radical_candidate
from ordertree.fplinalg import QuotientSpace, span, subspaces_between
from ordertree.lattice import Lattice, lat_colon, lat_make
from ordertree.numberfield import nf_make
from ordertree.oracle import orders_by_subalgebras
from ordertree.ramified import (invertible_ideals_over_p, is_invertible, local_generator,
                                radicals_for_order, ram_start_radicals, unit_group_generators)
from ordertree.tree import EnumerationTask, p_suborders
from ordertree.unram import hat_order

QI = nf_make([1, 0, 1])


def zi(*gens):
    return lat_make([QI.elem(list(g)) for g in gens])


def nodes_of(coeffs, p, e):
    task = EnumerationTask(nf_make(coeffs), p, e)
    return task.cache, task.run()


def node_with(nodes, hnf):
    return next(n for n in nodes if n.lattice.hnf == hnf)


# ------------------------------------------------------------ invertibility

def test_invertibility_examples():
    ZI = Lattice.identity(QI)
    O = zi((1, 0), (0, 2))
    assert is_invertible(ZI.scale(7), ZI)
    assert is_invertible(zi((1, 1), (1, -1)), ZI)
    assert not is_invertible(ZI.scale(2), O)
    assert is_invertible(O.scale(2), O)
    with pytest.raises(ValueError):
        is_invertible(zi((1, 0), (0, 4)), O)


ORDER_FIELDS = [([1, 0, 1], 2, 3), ([-2, 0, 0, 1], 3, 2), ([-2, 0, 0, 1], 2, 2), ([-5, 0, 1], 2, 3)]


@pytest.mark.parametrize("coeffs,p,e", ORDER_FIELDS)
@settings(max_examples=25)
@given(data=st.data())
def test_froehlich_matches_colon_criterion(coeffs, p, e, data):
    K = nf_make(coeffs)
    orders = p_suborders(K, p, e)
    O = data.draw(st.sampled_from(orders))
    n = K.degree
    rows = data.draw(st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=1, max_size=n))
    m = data.draw(st.integers(1, 4))
    L = Lattice.from_rows(O.frame, rows + [[m if i == j else 0 for j in range(n)] for i in range(n)])
    a = O * L
    ZK = Lattice.identity(O.frame)
    assert is_invertible(a, O, ZK) == (a * lat_colon(O, a) == O)


# ------------------------------------------------------ invertible ideal sets

def test_gaussian_invertible_sets():
    c, nodes = nodes_of([1, 0, 1], 2, 3)
    top = nodes[0]
    inv = invertible_ideals_over_p(c, top)
    assert {a.hnf for a in inv.ideals} == {((1, 1), (0, 2)), ((2, 0), (0, 2))}
    sub = node_with(nodes, ((1, 0), (0, 2)))
    assert [a.hnf for a in invertible_ideals_over_p(c, sub).ideals] == [((2, 0), (0, 4))]


def test_unramified_invertible_set_is_pO():
    c, nodes = nodes_of([-1, -1, 0, 1], 2, 3)
    for node in nodes:
        inv = invertible_ideals_over_p(c, node)
        assert [a.hnf for a in inv.ideals] == [c.pmul(2, node.lattice).hnf]


@pytest.mark.parametrize("coeffs,p,size", [([1, 0, 1], 2, 2), ([1, 1, 1, 1, 1], 5, 4),
                                           ([-2, 0, 0, 1], 3, 3), ([-2, 0, 0, 1], 2, 3),
                                           ([2, 0, 1, 2, 2, 1], 2, 2), ([-5, 0, 1], 5, 2)])
def test_maximal_order_set_size_is_product_of_ramification(coeffs, p, size):
    c, nodes = nodes_of(coeffs, p, 0)
    assert len(invertible_ideals_over_p(c, nodes[0])) == size


RAM = [([1, 0, 1], 2, 4), ([-2, 0, 0, 1], 3, 3), ([-2, 0, 0, 1], 2, 3), ([1, 1, 1, 1, 1], 5, 2),
       ([2, 0, 1, 2, 2, 1], 2, 3), ([1, 0, 0, 0, 1], 2, 3)]


@pytest.mark.parametrize("coeffs,p,e", RAM)
def test_invertible_sets_along_the_tree(coeffs, p, e):
    c, nodes = nodes_of(coeffs, p, e)
    ZK = c.ZK.lattice
    for node in nodes:
        O = node.lattice
        pO = c.pmul(p, O)
        ideals = invertible_ideals_over_p(c, node).ideals
        assert len({a.hnf for a in ideals}) == len(ideals)
        for a in ideals:
            assert pO.issubset(a) and a.issubset(node.radical)
            assert is_invertible(a, O, ZK)
            assert a * lat_colon(O, a) == O
        # completeness: every invertible ideal between pO and J appears
        Q = QuotientSpace(node.radical, pO, p, check=False)
        if Q.dim <= 6:
            want = set()
            for S in subspaces_between(Q.dim, p):
                a = c.lat(list(pO.hnf) + [Q.lift_vector(u) for u in S])
                if c.lmul(O, a).issubset(a) and is_invertible(a, O, ZK):
                    want.add(a.hnf)
            assert want == {a.hnf for a in ideals}


# ------------------------------------------------------------ local data

def test_local_generator_examples():
    c, nodes = nodes_of([1, 0, 1], 2, 2)
    top = nodes[0]
    assert local_generator(c, c.pmul(2, top.lattice), top.lattice) == [2, 0]
    assert local_generator(c, top.radical, top.lattice) == [1, 1]


@pytest.mark.parametrize("coeffs,p,e", RAM)
def test_local_generators_and_unit_groups(coeffs, p, e):
    c, nodes = nodes_of(coeffs, p, e)
    for node in nodes:
        O = node.lattice
        for a in invertible_ideals_over_p(c, node).ideals:
            x = local_generator(c, a, O)
            assert a.contains_vector(x)
            xO = c.lscale(x, O)
            # [a : xO] is prime to p
            assert (c.index(xO) // c.index(a)) % p != 0
        b0, _ = hat_order(c, node)
        gens = unit_group_generators(c, node, b0)
        V = QuotientSpace(O, b0, p, check=False)
        start = V.project(c.one)
        orbit, todo = {start}, [start]
        while todo:
            v = todo.pop()
            y = V.lift_vector(v)
            for g in gens:
                w = V.project([t % c.D for t in c.mul(g, y)])
                if w not in orbit:
                    orbit.add(w)
                    todo.append(w)
        J = QuotientSpace(node.radical, b0, p, check=False)
        size = p ** J.dim
        for d in node.k.degs:
            size *= p ** d - 1
        assert len(orbit) == size


def test_gaussian_unit_group_has_two_elements():
    c, nodes = nodes_of([1, 0, 1], 2, 2)
    top = nodes[0]
    b0, _ = hat_order(c, top)
    assert QuotientSpace(top.radical, b0, 2, check=False).dim == 1
    assert len(unit_group_generators(c, top, b0)) == 2


# ------------------------------------------------------------ radicals

def test_gaussian_radicals():
    c, nodes = nodes_of([1, 0, 1], 2, 3)
    top = nodes[0]
    got = {I.hnf for I in radicals_for_order(c, top, 3)}
    assert got == {((1, 1), (0, 2)), ((2, 0), (0, 2))}
    assert [I.hnf for I in ram_start_radicals(c, top, top.radical)] == [((1, 1), (0, 2))]


@pytest.mark.parametrize("coeffs,p,e", RAM)
def test_ramified_radical_conditions(coeffs, p, e):
    c, nodes = nodes_of(coeffs, p, e)
    s = 0
    while 2 ** s < c.n - 1:
        s += 1
    for node in nodes:
        O = node.lattice
        ideals = {a.hnf for a in invertible_ideals_over_p(c, node).ideals}
        for I in radicals_for_order(c, node, e):
            assert is_radical_candidate(I, p, c.J0)
            a = c.lmul(I, O)
            assert a.hnf in ideals
            P, A = I, a
            for _ in range(s):
                P, A = c.lmul(P, P), c.lmul(A, A)
            assert P == A


@pytest.mark.parametrize("coeffs,p,e", RAM + [([-3, 0, 0, 0, 0, 1], 5, 2)])
def test_start_branches_agree(coeffs, p, e):
    """Exhaustive scan, unit orbits with ``xH + p^n O`` and with ``xH + pO`` give one set."""
    c, nodes = nodes_of(coeffs, p, e)
    for node in nodes:
        if p < len(node.k.degs):
            continue
        ref = {I.hnf for I in radicals_for_order(c, node, e, exhaustive=True)}
        for N in (None, 1):
            got = {I.hnf for I in radicals_for_order(c, node, e, exhaustive=False, ram_exponent=N)}
            assert got == ref


def test_unit_free_lattice_regression(monkeypatch):
    """With three primes over 2 a lattice can generate O as an ideal yet contain no unit."""
    c, nodes = nodes_of([8, -10, -1, 1], 2, 1)
    assert len(nodes[0].k.degs) == 3
    R = c.R
    idem = [comp.embed(comp.field.one) for comp in c.res.components]
    H = span([[(x + y) % 2 for x, y in zip(idem[0], idem[1])],
              [(x + y) % 2 for x, y in zip(idem[1], idem[2])]], 2)
    elems = [[(a * u + b * v) % 2 for u, v in zip(H[0], H[1])] for a in (0, 1) for b in (0, 1)]
    units = [v for v in elems if any(R.mul(v, w) == R.one for w in _all(R))]
    assert units == []
    prods = span([R.mul(b, h) for b in _all(R) for h in H], 2)
    assert len(prods) == R.dim
    # the start branch depends on the number s of primes of O: at Z_K (s = 3 > p = 2) it
    # must scan exhaustively; unit orbits only for suborders where gluing leaves s <= p
    K = nf_make([2, 0, 1, 2, 2, 1])
    c2, nodes2 = nodes_of([2, 0, 1, 2, 2, 1], 2, 0)
    assert len(nodes2[0].k.degs) == 3
    entered = []
    real = ramified.Glued

    def checked(cache, node, *a, **k):
        assert cache.p >= len(node.k.degs), "unit-orbit branch entered with p < s"
        entered.append(len(node.k.degs))
        return real(cache, node, *a, **k)
    monkeypatch.setattr(ramified, "Glued", checked)
    got = {L.hnf for L in p_suborders(K, 2, 3)}
    want = {L.hnf for L in orders_by_subalgebras(K, 2, 3)}
    assert got == want and len(got) == 28
    assert entered


def _all(R):
    return [list(v) for v in product(range(2), repeat=R.dim)]
