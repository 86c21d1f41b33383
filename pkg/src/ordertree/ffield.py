"""Polynomials over F_p and small finite fields F_q.

Polynomials are lists of coefficients in ``[0, p)``, lowest degree first,
with no trailing zeros (the zero polynomial is ``[]``).
"""

import os
import random
from functools import lru_cache

from .arith import factor_int, nullspace, rref

DEFAULT_SEED = 20240617


def seed_from_env():
    """Seed for all randomized choices; ``ORDERTREE_SEED`` overrides the default."""
    v = os.environ.get("ORDERTREE_SEED")
    return int(v) if v not in (None, "") else DEFAULT_SEED


# ---------------------------------------------------------------- F_p[x]

def ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def pnorm(a, p):
    return ptrim([x % p for x in a])


def padd(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = (out[i] + x) % p
    return ptrim(out)


def psub(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] = x
    for i, x in enumerate(b):
        out[i] = (out[i] - x) % p
    return ptrim(out)


def pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return pnorm(out, p)


def pdivmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(a) <= db:
        return [], ptrim(a)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv % p
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return ptrim(q), ptrim(a[:db])


def pmod(a, b, p):
    return pdivmod(a, b, p)[1]


def pmonic(a, p):
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [x * inv % p for x in a]


def pgcd(a, b, p):
    a, b = ptrim(list(a)), ptrim(list(b))
    while b:
        a, b = b, pmod(a, b, p)
    return pmonic(a, p)


def ppowmod(a, e, m, p):
    result = [1]
    a = pmod(a, m, p)
    while e:
        if e & 1:
            result = pmod(pmul(result, a, p), m, p)
        e >>= 1
        if e:
            a = pmod(pmul(a, a, p), m, p)
    return pmod(result, m, p)


def pderiv(a, p):
    return ptrim([(i * a[i]) % p for i in range(1, len(a))])


def peval(a, x, p):
    r = 0
    for c in reversed(a):
        r = (r * x + c) % p
    return r


def _pth_root(a, p):
    # a(x) = b(x^p) in characteristic p; coefficients are fixed by Frobenius
    return ptrim([a[i] for i in range(0, len(a), p)])


def squarefree_decomposition(a, p):
    """Pairs ``(g, m)`` with ``a = lc * prod g^m`` and each ``g`` squarefree."""
    a = pmonic(a, p)
    out = []
    if len(a) <= 1:
        return out
    d = pderiv(a, p)
    if not d:
        for g, m in squarefree_decomposition(_pth_root(a, p), p):
            out.append((g, m * p))
        return out
    c = pgcd(a, d, p)
    w = pdivmod(a, c, p)[0]
    i = 1
    while len(w) > 1:
        y = pgcd(w, c, p)
        z = pdivmod(w, y, p)[0]
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = pdivmod(c, y, p)[0]
    if len(c) > 1:
        for g, m in squarefree_decomposition(_pth_root(c, p), p):
            out.append((g, m * p))
    return out


def distinct_degree(a, p):
    """Distinct degree factorization of a monic squarefree polynomial."""
    out = []
    d = 1
    h = [0, 1]
    f = list(a)
    while len(f) - 1 >= 2 * d:
        h = ppowmod(h, p, f, p)
        g = pgcd(f, psub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((g, d))
            f = pdivmod(f, g, p)[0]
            h = pmod(h, f, p)
        d += 1
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def equal_degree(a, d, p, rng):
    """Split a monic squarefree product of degree-``d`` irreducibles."""
    n = len(a) - 1
    if n == d:
        return [a]
    while True:
        r = ptrim([rng.randrange(p) for _ in range(n)])
        if len(r) < 2:
            continue
        if p == 2:
            t = list(r)
            s = list(r)
            for _ in range(d - 1):
                s = pmod(pmul(s, s, p), a, p)
                t = padd(t, s, p)
        else:
            t = psub(ppowmod(r, (p ** d - 1) // 2, a, p), [1], p)
        g = pgcd(a, t, p)
        if 1 < len(g) < len(a):
            h = pdivmod(a, g, p)[0]
            return equal_degree(g, d, p, rng) + equal_degree(h, d, p, rng)


def poly_factor_mod_p(a, p, seed=None):
    """Factor ``a`` over F_p into monic irreducibles.

    Returns a sorted list of ``(factor, multiplicity)`` with factors as
    tuples.  The leading coefficient is dropped.

    >>> poly_factor_mod_p([1, 0, 1], 5)
    [((2, 1), 1), ((3, 1), 1)]
    """
    a = pnorm(list(a), p)
    if not a:
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(seed_from_env() if seed is None else seed)
    res = {}
    for g, m in squarefree_decomposition(a, p):
        for h, d in distinct_degree(g, p):
            for q in equal_degree(h, d, p, rng):
                key = tuple(q)
                res[key] = res.get(key, 0) + m
    return sorted(res.items(), key=lambda t: (len(t[0]), t[0][::-1]))


def is_irreducible(a, p):
    """Rabin's irreducibility test over F_p."""
    a = pmonic(pnorm(list(a), p), p)
    n = len(a) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    if ppowmod(x, p ** n, a, p) != pmod(x, a, p):
        return False
    for r in factor_int(n):
        h = psub(ppowmod(x, p ** (n // r), a, p), x, p)
        if len(pgcd(a, h, p)) > 1:
            return False
    return True


def minpoly_from_powers(power, dim, p):
    """Minimal polynomial over F_p from a callable ``power(k) -> vector``.

    ``power(k)`` must return coordinates of ``y^k`` in some F_p-basis of a
    ``dim``-dimensional algebra, with ``power(0)`` the identity.
    """
    vecs = []
    for k in range(dim + 1):
        v = list(power(k))
        rows = [list(u) + [1 if i == j else 0 for j in range(k + 1)]
                for i, u in enumerate(vecs + [v])]
        basis, piv = rref(rows, p)
        for b, c in zip(basis, piv):
            if c >= dim:
                rel = list(b[dim:])
                return pmonic(ptrim(rel), p)
        vecs.append(v)
    raise ArithmeticError("no linear relation found")


# ---------------------------------------------------------------- F_q

class FqField:
    """The field ``F_p[x]/(modulus)`` with elements stored as tuples.

    An element is a tuple of length ``f`` (coefficients of ``1, x, ...``).
    """

    def __init__(self, p, modulus):
        self.p = p
        self.modulus = tuple(pmonic(list(modulus), p))
        self.f = len(self.modulus) - 1
        self.q = p ** self.f
        self.zero = (0,) * self.f
        self.one = tuple([1] + [0] * (self.f - 1))
        self._gen = None

    def __repr__(self):
        return f"FqField(p={self.p}, modulus={list(self.modulus)})"

    def _pad(self, a):
        return tuple(a) + (0,) * (self.f - len(a))

    def elt(self, coeffs):
        return self._pad(pmod(pnorm(list(coeffs), self.p), list(self.modulus), self.p))

    def from_int(self, k):
        """Element whose coefficients are the base-p digits of ``k``."""
        out = []
        for _ in range(self.f):
            k, r = divmod(k, self.p)
            out.append(r)
        return tuple(out)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        p = self.p
        return self._pad(pmod(pmul(ptrim(list(a)), ptrim(list(b)), p),
                              list(self.modulus), p))

    def scale(self, c, a):
        p = self.p
        return tuple(c * x % p for x in a)

    def pow(self, a, e):
        if e < 0:
            a = self.inv(a)
            e = -e
        return self._pad(ppowmod(ptrim(list(a)), e, list(self.modulus), self.p))

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero in F_q")
        return self.pow(a, self.q - 2)

    def order(self, a):
        """Multiplicative order of a nonzero element."""
        n = self.q - 1
        o = n
        for r, _ in factor_int(n).items():
            while o % r == 0 and self.pow(a, o // r) == self.one:
                o //= r
        return o

    def elements(self):
        for k in range(self.q):
            yield self.from_int(k)

    def minpoly(self, a):
        """Minimal polynomial over F_p of ``a``."""
        return minpoly_from_powers(lambda k: self.pow(a, k), self.f, self.p)

    # polynomials with coefficients in F_q, lowest degree first
    def _xtrim(self, a):
        while a and not any(a[-1]):
            a.pop()
        return a

    def _xmul(self, a, b):
        if not a or not b:
            return []
        out = [self.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if any(x):
                for j, y in enumerate(b):
                    out[i + j] = self.add(out[i + j], self.mul(x, y))
        return self._xtrim(out)

    def _xmod(self, a, m):
        a = list(a)
        dm = len(m) - 1
        inv = self.inv(m[-1])
        for i in range(len(a) - 1, dm - 1, -1):
            c = self.mul(a[i], inv)
            if any(c):
                for j in range(dm + 1):
                    a[i - dm + j] = self.sub(a[i - dm + j], self.mul(c, m[j]))
        return self._xtrim(a[:dm])

    def _xdiv(self, a, m):
        a = list(a)
        dm = len(m) - 1
        inv = self.inv(m[-1])
        q = [self.zero] * max(len(a) - dm, 0)
        for i in range(len(a) - 1, dm - 1, -1):
            c = self.mul(a[i], inv)
            if any(c):
                q[i - dm] = c
                for j in range(dm + 1):
                    a[i - dm + j] = self.sub(a[i - dm + j], self.mul(c, m[j]))
        return self._xtrim(q)

    def _xgcd(self, a, b):
        a, b = self._xtrim(list(a)), self._xtrim(list(b))
        while b:
            a, b = b, self._xmod(a, b)
        if a:
            inv = self.inv(a[-1])
            a = [self.mul(c, inv) for c in a]
        return a

    def _xpowmod(self, a, e, m):
        result = [self.one]
        a = self._xmod(a, m)
        while e:
            if e & 1:
                result = self._xmod(self._xmul(result, a), m)
            e >>= 1
            if e:
                a = self._xmod(self._xmul(a, a), m)
        return result


@lru_cache(maxsize=None)
def _fq_make_cached(p, f, seed):
    if f == 1:
        return FqField(p, (0, 1))
    rng = random.Random(seed * 1000003 + p * 101 + f)
    while True:
        g = [rng.randrange(p) for _ in range(f)] + [1]
        if g[0] and is_irreducible(g, p):
            return FqField(p, tuple(g))


def fq_make(p, f, seed=None):
    """A finite field with ``p^f`` elements.

    The modulus is found by seeded random search, so the result is
    deterministic given ``(p, f)`` and the seed.  For ``f = 1`` the modulus
    is ``x`` and elements are ``(c,)`` for ``c`` in ``[0, p)``.
    """
    return _fq_make_cached(p, f, seed_from_env() if seed is None else seed)


def fq_primitive_element(F):
    """First generator of ``F^*`` in the base-p counting order of ``from_int``.

    >>> fq_primitive_element(fq_make(5, 1))
    (2,)
    """
    if F._gen is None:
        for k in range(1, F.q):
            a = F.from_int(k)
            if F.order(a) == F.q - 1:
                F._gen = a
                break
    return F._gen


def fq_find_root(h, F, seed=None):
    """A root in ``F`` of the polynomial ``h`` over F_p, or ``None``.

    Small fields are scanned exhaustively; larger ones use equal degree
    splitting of ``gcd(h, x^q - x)`` over ``F``.
    """
    p = F.p
    h = pmonic(pnorm(list(h), p), p)
    if len(h) <= 1:
        return None
    H = [F._pad((c,)) for c in h]
    if F.q <= 4096:
        for a in F.elements():
            acc = F.zero
            for c in reversed(H):
                acc = F.add(F.mul(acc, a), c)
            if not any(acc):
                return a
        return None
    X = [F.zero, F.one]
    xq = F._xpowmod(X, F.q, H)
    diff = list(xq) + [F.zero] * max(0, 2 - len(xq))
    diff[1] = F.sub(diff[1], F.one)
    g = F._xgcd(H, F._xtrim(diff))
    if len(g) <= 1:
        return None
    rng = random.Random(seed_from_env() if seed is None else seed)
    while len(g) > 2:
        delta = F.from_int(rng.randrange(F.q))
        if p == 2:
            s = F._xmod([F.zero, delta], g)
            t = list(s)
            for _ in range(F.f - 1):
                s = F._xmod(F._xmul(s, s), g)
                t = F._xtrim([F.add(a, b) for a, b in _zip_pad(t, s, F.zero)])
            cand = t
        else:
            base = [delta, F.one]
            t = F._xpowmod(base, (F.q - 1) // 2, g)
            t = list(t) + [F.zero] * max(0, 1 - len(t))
            t[0] = F.sub(t[0], F.one)
            cand = F._xtrim(t)
        d = F._xgcd(g, cand)
        if 1 < len(d) < len(g):
            g = d if len(d) <= len(g) - len(d) + 1 else F._xdiv(g, d)
    return F.neg(g[0])


def _zip_pad(a, b, zero):
    n = max(len(a), len(b))
    a = list(a) + [zero] * (n - len(a))
    b = list(b) + [zero] * (n - len(b))
    return zip(a, b)


# ---------------------------------------------------------------- F_p-algebras

class FpAlgebra:
    """Finite commutative F_p-algebra given by structure constants.

    ``table[i][j]`` is the coordinate vector of ``e_i * e_j``; ``one`` is
    the coordinate vector of the identity.
    """

    def __init__(self, p, table, one):
        self.p = p
        self.dim = len(one)
        self.one = tuple(x % p for x in one)
        m = self.dim
        self._sparse = [[[(k, c % p) for k, c in enumerate(table[i][j]) if c % p]
                         for j in range(m)] for i in range(m)]

    def mul(self, u, v):
        p = self.p
        m = self.dim
        out = [0] * m
        sp = self._sparse
        for i in range(m):
            ui = u[i]
            if not ui:
                continue
            spi = sp[i]
            for j in range(m):
                vj = v[j]
                if not vj:
                    continue
                c = ui * vj
                for k, t in spi[j]:
                    out[k] += c * t
        return tuple(x % p for x in out)

    def pow(self, u, e):
        result = self.one
        base = tuple(u)
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def basis(self):
        m = self.dim
        return [tuple(1 if i == j else 0 for j in range(m)) for i in range(m)]

    def mult_matrix(self, u):
        """Rows are ``u * e_i``."""
        return [self.mul(u, e) for e in self.basis()]

    def frobenius_matrix(self, k=1):
        """Rows are ``e_i^(p^k)`` (the Frobenius is F_p-linear)."""
        return [self.pow(e, self.p ** k) for e in self.basis()]

    def minpoly(self, u, unit=None):
        """Minimal polynomial of ``u``; ``unit`` replaces the identity (for ideals)."""
        unit = self.one if unit is None else tuple(unit)
        powers = [unit]

        def power(k):
            while len(powers) <= k:
                powers.append(self.mul(powers[-1], u))
            return powers[k]
        return minpoly_from_powers(power, self.dim, self.p)

    def simple_components(self):
        """Minimal ideals of a semisimple algebra, as RREF bases.

        Uses the Berlekamp subalgebra ``{x : x^p = x}``: its elements act
        on each simple component by a scalar, and a basis of it separates
        all components.
        """
        p = self.p
        m = self.dim
        F = self.frobenius_matrix()
        M = [[(F[i][j] - (1 if i == j else 0)) % p for j in range(m)] for i in range(m)]
        B = nullspace(M, p)
        comps = [tuple(self.basis())]
        for b in B:
            new = []
            for C in comps:
                if len(C) == 1:
                    new.append(C)
                    continue
                for c in range(p):
                    # eigenspace of multiplication by b with eigenvalue c inside C
                    rows = [tuple((x - c * y) % p for x, y in zip(self.mul(b, v), v)) for v in C]
                    ker = nullspace(rows, p)
                    if ker:
                        vecs = []
                        for k in ker:
                            w = [0] * m
                            for a, v in zip(k, C):
                                if a:
                                    for t in range(m):
                                        w[t] = (w[t] + a * v[t]) % p
                            vecs.append(w)
                        new.append(rref(vecs, p)[0])
            comps = new
        return sorted(comps)
