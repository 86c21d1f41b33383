"""Full lattices in a number field, kept in canonical HNF form.

A lattice lives in a *frame*: either the power basis of a
:class:`~ordertree.numberfield.NumberField` or an :class:`IntegralBasis`
(an integral basis of the maximal order with ``1`` as first vector).  Both
frames expose ``degree``, ``one`` and ``mul_vec`` on integer coordinate
vectors, and in both the integer span of the frame basis is a ring.  The
enumeration code works in the integral basis frame, where every lattice of
interest has denominator 1 and small HNF entries.
"""

from fractions import Fraction
from math import gcd

from .arith import hnf, hnf_det, kernel_mod, solve_upper, is_in_hnf
from .numberfield import NfElem, _solve_rational

__all__ = [
    "Lattice", "IntegralBasis", "lat_make", "lat_add", "lat_intersect", "lat_mul",
    "lat_pow", "lat_colon", "lat_index", "lat_contains", "lat_subset",
    "LatticeError",
]


class LatticeError(ValueError):
    pass


def _lcm(a, b):
    return a // gcd(a, b) * b


class IntegralBasis:
    """Coordinate frame given by a basis ``omega_1 = 1, ..., omega_n`` of a ring.

    ``rows`` are integer vectors with ``omega_i = rows[i] / den`` in the power
    basis of ``field``.  The structure constants must be integral.
    """

    def __init__(self, field, rows, den):
        self.field = field
        self.degree = n = field.degree
        self.den = den
        self.rows = tuple(tuple(r) for r in rows)
        # inverse of the basis matrix (rational), for coordinate changes
        self._inv = [_solve_rational(self.rows, [1 if i == j else 0 for j in range(n)])
                     for i in range(n)]
        one_coords = self.coords_of_field_vector(field.one, 1)
        if one_coords != [1] + [0] * (n - 1):
            raise LatticeError("first basis vector must be 1")
        self.one = tuple(one_coords)
        table = []
        for i in range(n):
            row = []
            for j in range(n):
                prod = field.mul_vec(self.rows[i], self.rows[j])
                c = self.coords_of_field_vector(prod, den * den)
                if any(isinstance(x, Fraction) for x in c):
                    raise LatticeError("basis does not span a ring")
                row.append(tuple(c))
            table.append(tuple(row))
        self.table = tuple(table)
        # sparse form of the structure constants for mul_vec
        self._sparse = [[[(k, c) for k, c in enumerate(table[i][j]) if c]
                         for j in range(n)] for i in range(n)]

    def __repr__(self):
        return f"IntegralBasis({self.field!r})"

    def coords_of_field_vector(self, v, vden):
        """Coordinates (ints or Fractions) of ``v / vden`` w.r.t. this basis."""
        n = self.degree
        out = []
        for k in range(n):
            s = 0
            for i in range(n):
                if v[i]:
                    s += v[i] * self._inv[i][k]
            s = Fraction(s) * self.den / vden
            out.append(s.numerator if s.denominator == 1 else s)
        return out

    def mul_vec(self, a, b):
        n = self.degree
        out = [0] * n
        sp = self._sparse
        for i in range(n):
            ai = a[i]
            if not ai:
                continue
            spi = sp[i]
            for j in range(n):
                bj = b[j]
                if not bj:
                    continue
                c = ai * bj
                for k, t in spi[j]:
                    out[k] += c * t
        return out

    def to_field_elem(self, v, vden=1):
        """Power basis element for the frame vector ``v / vden``."""
        n = self.degree
        acc = [0] * n
        for i in range(n):
            if v[i]:
                r = self.rows[i]
                for k in range(n):
                    acc[k] += v[i] * r[k]
        return NfElem(self.field, acc, self.den * vden)

    def from_field_elem(self, a):
        """Frame coordinates of a field element as ``(vector, den)``."""
        c = self.coords_of_field_vector(a.num, a.den)
        d = 1
        for x in c:
            if isinstance(x, Fraction):
                d = _lcm(d, x.denominator)
        return [int(x * d) for x in c], d


class Lattice:
    """Full rank lattice ``(1/den) * rowspan(hnf)`` in a frame.

    Canonical: ``hnf`` is the row HNF and ``gcd(den, entries) = 1``, so two
    lattices are equal iff ``(den, hnf)`` agree (within the same frame).
    """

    __slots__ = ("frame", "den", "hnf", "_hash", "_det")

    def __init__(self, frame, den, hnf_rows, normalized=False):
        self.frame = frame
        if not normalized:
            g = den
            for r in hnf_rows:
                for x in r:
                    g = gcd(g, x)
                    if g == 1:
                        break
                if g == 1:
                    break
            if g > 1:
                den //= g
                hnf_rows = tuple(tuple(x // g for x in r) for r in hnf_rows)
        self.den = den
        self.hnf = hnf_rows
        self._hash = None
        self._det = None

    # construction
    @classmethod
    def from_rows(cls, frame, rows, den=1, modulus=0):
        n = frame.degree
        h = hnf(rows, n, modulus)
        if len(h) != n:
            raise LatticeError("generators do not span a full lattice")
        return cls(frame, den, h)

    @classmethod
    def from_elements(cls, frame, elems):
        """Span of field elements (NfElem) or ``(vector, den)`` pairs."""
        vecs = []
        for e in elems:
            if isinstance(e, NfElem):
                if frame is e.field:
                    vecs.append((list(e.num), e.den))
                else:
                    vecs.append(frame.from_field_elem(e))
            else:
                v, d = e
                vecs.append((list(v), d))
        den = 1
        for _, d in vecs:
            den = _lcm(den, d)
        rows = [[x * (den // d) for x in v] for v, d in vecs]
        return cls.from_rows(frame, rows, den)

    @classmethod
    def identity(cls, frame):
        n = frame.degree
        return cls(frame, 1, tuple(tuple(1 if i == j else 0 for j in range(n))
                                   for i in range(n)), normalized=True)

    # basic protocol
    @property
    def degree(self):
        return self.frame.degree

    def __eq__(self, other):
        return (isinstance(other, Lattice) and self.frame is other.frame
                and self.den == other.den and self.hnf == other.hnf)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.den, self.hnf))
        return self._hash

    def __repr__(self):
        return f"Lattice(den={self.den}, hnf={[list(r) for r in self.hnf]})"

    def key(self):
        return (self.den, self.hnf)

    def det(self):
        """Determinant of the integer matrix ``hnf`` (not divided by den)."""
        if self._det is None:
            self._det = hnf_det(self.hnf)
        return self._det

    def volume(self):
        """Covolume relative to the frame lattice, as a Fraction."""
        return Fraction(self.det(), self.den ** self.degree)

    def _check(self, other):
        if not isinstance(other, Lattice):
            raise TypeError("expected a Lattice")
        if other.frame is not self.frame:
            raise LatticeError("lattices live in different frames")

    def basis_elements(self):
        """Basis as ``(vector, den)`` pairs."""
        return [(r, self.den) for r in self.hnf]

    # arithmetic
    def __add__(self, other):
        self._check(other)
        d = _lcm(self.den, other.den)
        sa, sb = d // self.den, d // other.den
        modulus = min(sa * self.det(), sb * other.det())
        rows = [[x * sa for x in r] for r in self.hnf] + [[x * sb for x in r] for r in other.hnf]
        return Lattice(self.frame, d, hnf(rows, self.degree, modulus))

    def __mul__(self, other):
        if isinstance(other, Lattice):
            self._check(other)
            mul = self.frame.mul_vec
            A, B = self.hnf, other.hnf
            rows = []
            same = A == B
            for i, a in enumerate(A):
                for j, b in enumerate(B):
                    if same and j < i:
                        continue
                    rows.append(mul(a, b))
            modulus = self.det() * other.det()
            return Lattice(self.frame, self.den * other.den, hnf(rows, self.degree, modulus))
        return self.scale(other)

    def scale(self, x):
        """The lattice ``x * self`` for a nonzero field element or rational."""
        if isinstance(x, (int, Fraction)):
            x = Fraction(x)
            rows = [[c * x.numerator for c in r] for r in self.hnf]
            return Lattice(self.frame, self.den * x.denominator,
                           hnf(rows, self.degree, self.det() * abs(x.numerator) ** self.degree))
        if isinstance(x, NfElem):
            if x.field is self.frame:
                v, d = list(x.num), x.den
            else:
                v, d = self.frame.from_field_elem(x)
        else:
            v, d = x
        mul = self.frame.mul_vec
        rows = [mul(v, r) for r in self.hnf]
        return Lattice.from_rows(self.frame, rows, self.den * d)

    def __pow__(self, m):
        if m < 1:
            raise ValueError("power must be positive")
        result = None
        base = self
        while m:
            if m & 1:
                result = base if result is None else result * base
            m >>= 1
            if m:
                base = base * base
        return result

    def intersect(self, other):
        self._check(other)
        d = _lcm(self.den, other.den)
        sa, sb = d // self.den, d // other.den
        A = [[x * sa for x in r] for r in self.hnf]
        B = tuple(tuple(x * sb for x in r) for r in other.hnf)
        DB = sb ** self.degree * other.det()
        DA = sa ** self.degree * self.det()
        M = []
        for a in A:
            c = solve_upper(B, a)
            M.append([int(x * DB) for x in c])
        K = kernel_mod(M, DB)
        rows = []
        n = self.degree
        for y in K:
            v = [0] * n
            for i, yi in enumerate(y):
                if yi:
                    for k in range(n):
                        v[k] += yi * A[i][k]
            rows.append(v)
        return Lattice(self.frame, d, hnf(rows, n, _lcm(DA, DB)))

    __and__ = intersect

    def coords(self, v, vden=1):
        """Rational coordinates of ``v / vden`` w.r.t. the HNF basis."""
        c = solve_upper(self.hnf, [x * self.den for x in v])
        return [Fraction(x, vden) if vden != 1 else x for x in c]

    def contains_vector(self, v, vden=1):
        if vden != 1:
            w = []
            for x in v:
                q, r = divmod(x * self.den, vden)
                if r:
                    return False
                w.append(q)
            return is_in_hnf(self.hnf, w)
        if self.den == 1:
            return is_in_hnf(self.hnf, v)
        return is_in_hnf(self.hnf, [x * self.den for x in v])

    def contains(self, a):
        if isinstance(a, NfElem):
            if a.field is self.frame:
                return self.contains_vector(a.num, a.den)
            v, d = self.frame.from_field_elem(a)
            return self.contains_vector(v, d)
        if isinstance(a, (int, Fraction)):
            a = Fraction(a)
            v = [a.numerator * x for x in self.frame.one]
            return self.contains_vector(v, a.denominator)
        v, d = a
        return self.contains_vector(v, d)

    __contains__ = contains

    def issubset(self, other):
        self._check(other)
        for r in self.hnf:
            if not other.contains_vector(r, self.den):
                return False
        return True

    __le__ = issubset

    def index_in(self, other):
        """Generalized index ``[other : self]`` as a Fraction (int when integral)."""
        self._check(other)
        q = self.volume() / other.volume()
        return q.numerator if q.denominator == 1 else q

    def smallest_integer(self):
        """The positive generator of ``self ∩ Z``."""
        c = self.coords(self.frame.one)
        d = 1
        for x in c:
            if isinstance(x, Fraction):
                d = _lcm(d, x.denominator)
        return d

    def colon(self, other):
        """``(self : other) = {x : x * other ⊆ self}``."""
        self._check(other)
        n = self.degree
        c0 = other.smallest_integer()
        mul = self.frame.mul_vec
        H = self.hnf
        # (self : other) ⊆ (1/c0) * self; parametrize x = y * (basis/c0)
        cols = []
        for a in H:
            row = []
            for b in other.hnf:
                prod = mul(a, b)
                t = solve_upper(H, prod)
                for x in t:
                    row.append(Fraction(x, other.den * c0))
            cols.append(row)
        D = 1
        for row in cols:
            for x in row:
                if isinstance(x, Fraction):
                    D = _lcm(D, x.denominator)
        M = [[int(x * D) for x in row] for row in cols]
        Y = kernel_mod(M, D)
        rows = []
        for y in Y:
            v = [0] * n
            for i, yi in enumerate(y):
                if yi:
                    for k in range(n):
                        v[k] += yi * H[i][k]
            rows.append(v)
        modulus = D * self.det()
        return Lattice(self.frame, self.den * c0, hnf(rows, n, modulus))

    def multiplicator_ring(self):
        return self.colon(self)

    # conversions
    def to_field(self):
        """The same lattice in the power basis frame of the field."""
        fr = self.frame
        if not isinstance(fr, IntegralBasis):
            return self
        n = self.degree
        rows = []
        for r in self.hnf:
            acc = [0] * n
            for i in range(n):
                if r[i]:
                    br = fr.rows[i]
                    for k in range(n):
                        acc[k] += r[i] * br[k]
            rows.append(acc)
        return Lattice.from_rows(fr.field, rows, self.den * fr.den)

    def to_frame(self, frame):
        """Express a power basis lattice in another frame."""
        if frame is self.frame:
            return self
        return Lattice.from_elements(frame, [NfElem(self.frame, r, self.den) for r in self.hnf])

    def to_json(self):
        return {"den": self.den, "hnf": [list(r) for r in self.hnf]}

    @classmethod
    def from_json(cls, frame, d):
        """Inverse of :meth:`to_json`; the rows need not be in HNF."""
        rows = [[int(x) for x in r] for r in d["hnf"]]
        den = int(d.get("den", 1))
        if den <= 0 or len(rows) != frame.degree or any(len(r) != frame.degree for r in rows):
            raise LatticeError("malformed lattice record")
        return cls.from_rows(frame, rows, den)


# functional API ------------------------------------------------------------

def lat_make(gens):
    """Lattice spanned by field elements.

    >>> from ordertree.numberfield import nf_make
    >>> K = nf_make([1, 0, 1])
    >>> lat_make([K.elem([1, 0], 2), K.elem([0, 1])])
    Lattice(den=2, hnf=[[1, 0], [0, 2]])
    """
    gens = list(gens)
    if not gens:
        raise LatticeError("no generators")
    return Lattice.from_elements(gens[0].field, gens)


def lat_add(I, J):
    return I + J


def lat_intersect(I, J):
    return I.intersect(J)


def lat_mul(I, J):
    return I * J


def lat_pow(I, m):
    return I ** m


def lat_colon(I, J):
    return I.colon(J)


def lat_index(I, J):
    """Generalized index ``[I : J]``."""
    return J.index_in(I)


def lat_contains(I, a):
    return I.contains(a)


def lat_subset(J, I):
    return J.issubset(I)
