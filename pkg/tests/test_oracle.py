import pytest

from ordertree.lattice import Lattice
from ordertree.numberfield import nf_make
from ordertree.oracle import (BudgetExceeded, brute_force_orders, cross_check, extension_type,
                              oracle_maximal_suborders, orders_by_maximal_suborders,
                              orders_by_subalgebras)
from ordertree.orders import maximal_order_frame
from ordertree.tree import p_suborders

QI = nf_make([1, 0, 1])
ZI = Lattice.identity(maximal_order_frame(QI))


def hnfs(lats):
    return [L.hnf for L in lats]


def test_brute_force_examples():
    assert len(brute_force_orders(QI, 2, 1)) == 2
    for c in ([1, 0, 1], [-2, 0, 0, 1], [1, 0, 0, 0, 1]):
        K = nf_make(c)
        assert hnfs(brute_force_orders(K, 3, 0)) == [Lattice.identity(maximal_order_frame(K)).hnf]
    K = nf_make([-1, -1, 0, 1])
    assert hnfs(brute_force_orders(K, 2, 1)) == hnfs(p_suborders(K, 2, 1))
    with pytest.raises(BudgetExceeded):
        brute_force_orders(nf_make([1, 1, 1, 1, 1]), 5, 3)


def test_gaussian_maximal_suborders():
    assert oracle_maximal_suborders(ZI, 2, typed=True) == [(3, Lattice.from_rows(ZI.frame, [[1, 0], [0, 2]]))]
    got = oracle_maximal_suborders(ZI, 3, typed=True)
    assert [(t, L.hnf) for t, L in got] == [(1, ((1, 0), (0, 3)))]
    got = oracle_maximal_suborders(ZI, 5, typed=True)
    assert [(t, L.hnf) for t, L in got] == [(2, ((1, 0), (0, 5)))]
    for t, L in got:
        assert extension_type(ZI, L, 5) == t


COVER_CASES = [([1, 0, 1], 2, 4), ([1, 0, 1], 3, 3), ([-2, 0, 0, 1], 2, 4), ([-2, 0, 0, 1], 3, 4),
               ([-1, -1, 0, 1], 2, 4), ([-1, -1, 0, 1], 23, 2), ([1, 0, 0, 0, 1], 2, 5),
               ([-3, 0, -6, 0, 1], 2, 5), ([-3, 0, -6, 0, 1], 3, 4), ([2, 0, -4, 0, 1], 3, 4), ([1, 1, 1, 1, 1], 5, 4),
               ([3, 1, 0, 0, 1], 2, 5), ([2, 0, 0, 0, 1], 3, 4), ([2, 0, 0, 0, 1], 2, 5)]


@pytest.mark.parametrize("coeffs,p,e", COVER_CASES)
def test_maximal_suborders_are_the_covers(coeffs, p, e):
    """Compare with the orders covered by ``O`` in the poset of all orders of index <= p^e."""
    K = nf_make(coeffs)
    n = K.degree
    allo = orders_by_subalgebras(K, p, e)
    for O in allo:
        if O.det() * p ** n > p ** e:
            continue
        below = [L for L in allo if L != O and L.issubset(O)]
        covers = [L for L in below if not any(M != L and L.issubset(M) for M in below)]
        got = oracle_maximal_suborders(O, p, typed=True)
        assert sorted(L.hnf for _, L in got) == sorted(L.hnf for L in covers)
        for t, L in got:
            assert extension_type(O, L, p) == t


@pytest.mark.parametrize("coeffs,p,e", [([1, 0, 1], 2, 2), ([-5, 0, 1], 2, 2), ([-1, -1, 0, 1], 3, 1)])
def test_cross_check_examples(coeffs, p, e):
    rep = cross_check(nf_make(coeffs), p, e)
    assert rep["ok"] and rep["mismatches"] == []
    assert rep["tree"] == rep["subalgebras"] == rep["maximal_suborders"] == rep["brute_force"]
    if coeffs == [1, 0, 1]:
        assert rep["tree"] == 3


def test_cross_check_reports_smallest_mismatch():
    K = nf_make([-2, 0, 0, 1])
    tree = p_suborders(K, 2, 3)
    rep = cross_check(K, 2, 3, tree=tree[:1] + tree[2:])
    assert not rep["ok"]
    assert rep["mismatches"] == [tree[1].hnf]


def test_closures_agree_beyond_brute_force_budget():
    K = nf_make([-5, 1, 21, -12, -1, 1])
    want = hnfs(p_suborders(K, 5, 2))
    assert hnfs(orders_by_maximal_suborders(K, 5, 2, check_types=True)) == want
    assert hnfs(orders_by_subalgebras(K, 5, 2)) == want
