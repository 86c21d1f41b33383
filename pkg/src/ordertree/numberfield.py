"""Number fields ``K = Q[x]/(f)`` and their elements in the power basis."""

from fractions import Fraction
from math import gcd

from .arith import det, factor_int, _small_primes
from .ffield import is_irreducible, pnorm

__all__ = [
    "FieldDefinitionError", "NotMonicError", "NotSquarefreeError", "ReducibleError",
    "NumberField", "NfElem", "nf_make", "nf_mul", "rep_matrix", "nf_norm_trace",
]


class FieldDefinitionError(ValueError):
    """The defining polynomial does not define a number field."""


class NotMonicError(FieldDefinitionError):
    pass


class NotSquarefreeError(FieldDefinitionError):
    pass


class ReducibleError(FieldDefinitionError):
    pass


def _poly_mul_reduce(a, b, red, n):
    prod = [0] * (2 * n - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
    out = prod[:n]
    for k in range(n, 2 * n - 1):
        c = prod[k]
        if c:
            rk = red[k - n]
            for i in range(n):
                out[i] += c * rk[i]
    return out


def _solve_rational(M, v):
    """Solve ``y M = v`` for square nonsingular rational ``M`` (row vectors)."""
    n = len(M)
    # transpose: M^T y^T = v^T
    A = [[Fraction(M[j][i]) for j in range(n)] + [Fraction(v[i])] for i in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [A[i][n] for i in range(n)]


class NumberField:
    """``K = Q[x]/(f)`` for a monic squarefree integer polynomial ``f``.

    ``coeffs`` are ascending, ``coeffs[-1] == 1``.  The power basis
    ``1, x, ..., x^(n-1)`` doubles as the coordinate frame of the equation
    order: ``table[i][j]`` holds the integer coordinates of ``x^i * x^j``.
    """

    def __init__(self, coeffs):
        coeffs = [int(c) for c in coeffs]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) < 3:
            raise FieldDefinitionError("degree must be at least 2")
        if coeffs[-1] != 1:
            raise NotMonicError(f"leading coefficient {coeffs[-1]} != 1")
        self.coeffs = tuple(coeffs)
        n = self.degree = len(coeffs) - 1
        # x^(n+k) in the power basis, k = 0 .. n-2
        red = []
        cur = [-c for c in coeffs[:n]]
        for _ in range(n - 1):
            red.append(cur)
            nxt = [0] + cur[:-1]
            top = cur[-1]
            for i in range(n):
                nxt[i] -= top * coeffs[i]
            cur = nxt
        self._red = red
        table = []
        for i in range(n):
            row = []
            for j in range(n):
                e = [0] * n
                if i + j < n:
                    e[i + j] = 1
                else:
                    e = list(red[i + j - n])
                row.append(tuple(e))
            table.append(tuple(row))
        self.table = tuple(table)
        self.one = tuple([1] + [0] * (n - 1))
        self.disc = self._discriminant()
        if self.disc == 0:
            raise NotSquarefreeError("f has a repeated factor")
        self.certificate = self._irreducibility_certificate()
        if self.certificate is None and self._has_rational_root():
            raise ReducibleError("f has a rational root")
        self.certified = self.certificate is not None

    @property
    def field(self):
        return self

    def __repr__(self):
        return f"NumberField({list(self.coeffs)})"

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def mul_vec(self, a, b):
        return _poly_mul_reduce(a, b, self._red, self.degree)

    def _discriminant(self):
        n = self.degree
        # traces of x^k for k < 2n-1 via the rep matrices of x^k
        tr = []
        for k in range(2 * n - 1):
            xk = [0] * n
            if k < n:
                xk[k] = 1
            else:
                xk = list(self._red[k - n])
            t = 0
            for i in range(n):
                ei = [0] * n
                ei[i] = 1
                t += self.mul_vec(xk, ei)[i]
            tr.append(t)
        return det([[tr[i + j] for j in range(n)] for i in range(n)])

    def _irreducibility_certificate(self):
        for q in _small_primes(1000):
            if self.disc % q == 0:
                continue
            if is_irreducible(pnorm(list(self.coeffs), q), q):
                return q
        return None

    def _has_rational_root(self):
        c0 = self.coeffs[0]
        if c0 == 0:
            return True
        if abs(c0) > 10 ** 12:
            return False
        cands = [1]
        for r, e in factor_int(abs(c0)).items():
            cands = [d * r ** k for d in cands for k in range(e + 1)]
        for d in cands:
            for s in (d, -d):
                if sum(c * s ** i for i, c in enumerate(self.coeffs)) == 0:
                    return True
        return False

    # elements
    def elem(self, coords, den=1):
        return NfElem(self, coords, den)

    def gen(self):
        n = self.degree
        return NfElem(self, [0, 1] + [0] * (n - 2))

    def unit(self):
        return NfElem(self, self.one)

    def from_rationals(self, coords):
        den = 1
        for c in coords:
            den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
        return NfElem(self, [int(Fraction(c) * den) for c in coords], den)


class NfElem:
    """Element of a number field: ``coords / den`` in the power basis."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, coords, den=1):
        coords = [int(c) for c in coords]
        if len(coords) != field.degree:
            raise ValueError("coordinate length does not match the degree")
        if den <= 0:
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            coords = [-c for c in coords]
            den = -den
        g = den
        for c in coords:
            g = gcd(g, c)
        if g > 1:
            coords = [c // g for c in coords]
            den //= g
        self.field = field
        self.num = tuple(coords)
        self.den = den

    def coords(self):
        return [Fraction(c, self.den) for c in self.num]

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.num):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*x" if i == 1 else f"{c}*x^{i}")
        s = " + ".join(terms) or "0"
        return f"({s})/{self.den}" if self.den != 1 else s

    def _check(self, other):
        if isinstance(other, int):
            return self.field.elem([other] + [0] * (self.field.degree - 1))
        if isinstance(other, Fraction):
            return self.field.elem([other.numerator] + [0] * (self.field.degree - 1),
                                   other.denominator)
        if not isinstance(other, NfElem):
            return NotImplemented
        if other.field != self.field:
            raise ValueError("elements of different fields")
        return other

    def __eq__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        d = self.den * o.den
        return NfElem(self.field, [a * o.den + b * self.den for a, b in zip(self.num, o.num)], d)

    __radd__ = __add__

    def __neg__(self):
        return NfElem(self.field, [-a for a in self.num], self.den)

    def __sub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return NfElem(self.field, self.field.mul_vec(self.num, o.num), self.den * o.den)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.unit()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self):
        if not any(self.num):
            raise ZeroDivisionError("inverse of zero")
        y = _solve_rational(rep_matrix(self), self.field.one)
        return self.field.from_rationals(y)

    def __truediv__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def is_zero(self):
        return not any(self.num)


def nf_make(coeffs):
    """Build a number field from ascending integer coefficients (monic).

    >>> nf_make([1, 0, 1]).degree
    2
    """
    return NumberField(coeffs)


def nf_mul(a, b):
    if a.field != b.field:
        raise ValueError("elements of different fields")
    return a * b


def rep_matrix(a):
    """Rational matrix whose row ``k`` holds the coordinates of ``a * x^k``."""
    K = a.field
    n = K.degree
    rows = []
    for k in range(n):
        ek = [0] * n
        ek[k] = 1
        v = K.mul_vec(a.num, ek)
        rows.append([Fraction(c, a.den) for c in v])
    return rows


def nf_norm_trace(a):
    """``(norm, trace)`` of ``a`` as exact rationals."""
    K = a.field
    n = K.degree
    rows = []
    for k in range(n):
        ek = [0] * n
        ek[k] = 1
        rows.append(K.mul_vec(a.num, ek))
    N = Fraction(det(rows), a.den ** n)
    T = Fraction(sum(rows[i][i] for i in range(n)), a.den)
    return N, T
