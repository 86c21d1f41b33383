from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ordertree.ffield import poly_factor_mod_p
from ordertree.lattice import IntegralBasis, Lattice, lat_make
from ordertree.numberfield import nf_make
from ordertree.orders import (Order, OrderError, crt_element, factor_discriminant, maximal_order,
                              order_make, p_radical, pmaximal_closure, primes_above)

QI = nf_make([1, 0, 1])
ZI = order_make(Lattice.identity(QI))


def zi(*gens):
    return lat_make([QI.elem(list(g[:2]), g[2] if len(g) > 2 else 1) for g in gens])


def field_disc(K):
    L = maximal_order(K).lattice
    idx = Fraction(L.den ** K.degree, L.det())
    return Fraction(K.disc) / idx ** 2, idx


# classical discriminants
KNOWN = [
    ([1, 0, 1], -4),
    ([-5, 0, 1], 5),
    ([3, 0, 1], -3),
    ([-2, 0, 0, 1], -108),
    ([1, 1, 1, 1, 1], 125),                 # Q(zeta_5)
    ([1, 0, 0, 0, 1], 256),                 # Q(zeta_8)
    ([1, 0, -1, 0, 1], 144),                # Q(zeta_12)
    ([1, 1, 1, 1, 1, 1, 1], -16807),        # Q(zeta_7)
    ([1, 3, -3, -4, 1, 1], 11 ** 4),        # real quintic of conductor 11
    ([-5, 1, 21, -12, -1, 1], 31 ** 4),     # quintic of conductor 31
    ([-1, -1, -1, 1, 0, 1], 3369),
]


@pytest.mark.parametrize("c,d", KNOWN)
def test_maximal_order_discriminant(c, d):
    assert field_disc(nf_make(c))[0] == d


def test_equation_order_index_of_large_example():
    K = nf_make([143628091723623, 200947680677, 2331020454, 26241066, 46627, 1])
    assert field_disc(K)[1] == 2 ** 30 * 29 ** 10


def test_x2_minus_5():
    K = nf_make([-5, 0, 1])
    O = maximal_order(K)
    assert O.lattice == lat_make([K.unit(), K.elem([1, 1], 2)])
    eq = order_make(Lattice.identity(K))
    assert pmaximal_closure(eq, 2).lattice == O.lattice


def test_order_make():
    assert order_make(zi((1, 0), (0, 2))).lattice.hnf == ((1, 0), (0, 2))
    with pytest.raises(OrderError):
        order_make(zi((1, 0, 2), (0, 1)))


def test_radicals_of_gaussian_orders():
    assert p_radical(ZI, 2) == zi((1, 1), (1, -1))
    assert p_radical(ZI, 5) == Lattice.identity(QI).scale(5)
    O = order_make(zi((1, 0), (0, 2)))
    assert p_radical(O, 2) == zi((2, 0), (0, 2))
    assert pmaximal_closure(O, 2).lattice == ZI.lattice
    assert pmaximal_closure(ZI, 2).lattice == ZI.lattice


def test_primes_of_gaussian_integers():
    assert [P.resdeg for P in primes_above(ZI, 5)] == [1, 1]
    assert [P.resdeg for P in primes_above(ZI, 3)] == [2]
    P2 = primes_above(ZI, 2)
    assert len(P2) == 1 and P2[0].ideal == zi((1, 1), (1, -1))


def test_crt_element():
    primes = primes_above(ZI, 5)
    v, den = crt_element(ZI, 5, [None, None])
    assert p_radical(ZI, 5).contains_vector(v, den)
    one = primes[0].component.field.one
    v, den = crt_element(ZI, 5, [one, None])
    x = QI.elem(v, den)
    assert primes[1].ideal.contains(x)
    assert primes[0].ideal.contains(x - QI.unit())
    # single prime: any lift of the prescription
    P3 = primes_above(ZI, 3)[0]
    g = P3.gen
    assert not P3.ideal.contains(QI.elem(*g))


KUMMER = [[-2, 0, 0, 1], [2, 0, -4, 0, 1], [-5, 1, 21, -12, -1, 1], [-1, -1, -1, 1, 0, 1],
          [1, 1, 1, 1, 1], [2, 0, 0, 0, 1]]


@pytest.mark.parametrize("c", KUMMER)
@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_residue_degrees_match_factorization(c, p):
    K = nf_make(c)
    O = maximal_order(K)
    idx = field_disc(K)[1]
    if idx.numerator % p == 0:
        return
    # p does not divide the index: primes correspond to factors of f mod p
    facs = poly_factor_mod_p([x % p for x in c], p)
    want = sorted(len(g) - 1 for g, _ in facs)
    assert sorted(P.resdeg for P in primes_above(O, p)) == want
    ram = any(m > 1 for _, m in facs)
    J = p_radical(O, p)
    assert (J == O.lattice.scale(p)) == (not ram)


def test_factor_discriminant_hint():
    d = 2 ** 5 * 1000003 ** 2
    assert factor_discriminant(d, extra_primes=[1000003]) == {2: 5, 1000003: 2}


@given(st.integers(-30, 30).filter(lambda d: d not in (0, 1)))
def test_quadratic_discriminants(d):
    # squarefree d: disc is d or 4d
    from ordertree.arith import factor_int
    if any(e > 1 for e in factor_int(abs(d)).values()):
        return
    want = d if d % 4 == 1 else 4 * d
    assert field_disc(nf_make([-d, 0, 1]))[0] == want


def test_order_in_integral_basis_frame():
    K = nf_make([-5, 0, 1])
    fr = IntegralBasis(K, [[2, 0], [1, 1]], 2)
    O = Order(Lattice.identity(fr))
    assert O.frame is fr
    assert [P.resdeg for P in primes_above(O, 5)] == [1]
