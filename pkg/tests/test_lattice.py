import json
from fractions import Fraction

from hypothesis import given, strategies as st

from ordertree.lattice import (Lattice, lat_add, lat_colon, lat_contains, lat_index, lat_intersect,
                               lat_make, lat_mul, lat_pow, lat_subset)
from ordertree.numberfield import nf_make

QI = nf_make([1, 0, 1])
CUBIC = nf_make([-2, 0, 0, 1])


def zi(*gens):
    return lat_make([QI.elem(list(g[:2]), g[2] if len(g) > 2 else 1) for g in gens])


ZI = zi((1, 0), (0, 1))
Z2I = zi((1, 0), (0, 2))           # Z + 2Z[i]
P = zi((1, 1), (1, -1))            # (1+i)Z[i]


def test_make_examples():
    assert ZI.den == 1 and ZI.hnf == ((1, 0), (0, 1))
    assert Z2I.hnf == ((1, 0), (0, 2))
    L = zi((1, 0, 2), (0, 1))
    assert L.den == 2 and L.hnf == ((1, 0), (0, 2))


def test_sum_intersection_examples():
    assert lat_add(P, P) == P
    assert lat_add(Z2I, P) == ZI
    twoZI = ZI.scale(2)
    assert lat_intersect(ZI, twoZI) == twoZI


def test_product_examples():
    assert lat_mul(ZI, ZI) == ZI
    assert lat_mul(Z2I, Z2I) == Z2I
    assert lat_mul(P, P) == ZI.scale(2)
    assert lat_mul(P, ZI) == lat_mul(ZI, P)
    assert lat_pow(P, 1) == P
    assert lat_pow(P, 2) == ZI.scale(2)


def test_colon_and_multiplicator_ring():
    assert lat_colon(ZI, ZI) == ZI
    assert lat_colon(Z2I, ZI) == ZI.scale(2)
    assert ZI.scale(3).multiplicator_ring() == ZI
    assert zi((2, 0), (0, 2)).multiplicator_ring() == ZI
    assert Z2I.scale(5).multiplicator_ring() == Z2I


def test_index_and_containment():
    assert lat_index(ZI, Z2I) == 2
    assert lat_index(ZI, ZI.scale(2)) == 4
    assert lat_index(Z2I, ZI) == Fraction(1, 2)
    assert lat_contains(ZI, QI.unit())
    assert not lat_contains(Z2I, QI.gen())
    assert lat_subset(Z2I, ZI) and not lat_subset(ZI, Z2I)


# ------------------------------------------------------------ properties

def lattices(K):
    n = K.degree
    row = st.lists(st.integers(-6, 6), min_size=n, max_size=n)

    @st.composite
    def build(draw):
        rows = draw(st.lists(row, min_size=1, max_size=n + 1))
        m = draw(st.integers(1, 4))
        den = draw(st.integers(1, 3))
        rows = rows + [[m if i == j else 0 for j in range(n)] for i in range(n)]
        return Lattice.from_rows(K, rows, den)
    return build()


@given(lattices(CUBIC), lattices(CUBIC), lattices(CUBIC))
def test_lattice_laws(A, B, C):
    S = A + B
    M = A.intersect(B)
    assert A.issubset(S) and B.issubset(S)
    assert M.issubset(A) and M.issubset(B)
    # [A+B : A] = [B : A ∩ B]
    assert lat_index(S, A) == lat_index(B, M)
    assert (A * B) == (B * A)
    assert (A * B) * C == A * (B * C)
    assert A * (B + C) == A * B + A * C
    assert A ** 4 == (A * A) * (A * A)
    assert lat_index(A, B) * lat_index(B, A) == 1


@given(lattices(CUBIC), lattices(CUBIC))
def test_colon_property(A, B):
    Q = lat_colon(A, B)
    assert (Q * B).issubset(A)
    # maximality: enlarging (A : B) by a basis vector / q leaves the colon
    for r in Q.hnf:
        for q in (2, 3):
            bigger = Lattice.from_rows(CUBIC, [[x * q for x in s] for s in Q.hnf] + [list(r)], Q.den * q)
            assert not (bigger * B).issubset(A)
    R = A.multiplicator_ring()
    assert (R * A) == A
    assert R.contains(CUBIC.unit())


@given(lattices(QI))
def test_json_round_trip(A):
    d = json.loads(json.dumps(A.to_json()))
    assert Lattice.from_json(QI, d) == A
    assert Lattice.from_json(QI, d).to_json() == A.to_json()
