"""Exact integer and F_p linear algebra.

Lattices are stored as integer matrices in row-style Hermite normal form:
upper triangular, positive pivots, entries above a pivot reduced into
``[0, pivot)``.  When a lattice is known to contain ``D * Z^n`` all
intermediate entries can be reduced modulo ``D``, which keeps the numbers
small during enumeration.
"""

from fractions import Fraction
from math import isqrt

__all__ = [
    "xgcd", "hnf", "hnf_det", "kernel_mod", "solve_upper", "is_in_hnf",
    "det", "rref", "nullspace", "span_contains", "rank",
    "factor_int", "divisors", "sigma", "is_prime", "trailing_valuation",
]


def xgcd(a, b):
    """Return ``(g, s, t)`` with ``g = gcd(a, b) >= 0`` and ``s*a + t*b = g``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def hnf(rows, ncols, modulus=0):
    """Hermite normal form of the row lattice spanned by ``rows``.

    Returns a tuple of rows (tuples), one per pivot column, sorted by pivot.
    If ``modulus`` is nonzero the lattice generated by ``rows`` together with
    ``modulus * Z^ncols`` is computed; the caller asserts that this is the
    intended lattice.

    >>> hnf([[2, 0], [0, 2], [1, 1]], 2)
    ((1, 1), (0, 2))
    """
    D = modulus
    piv = [None] * ncols
    if D:
        for j in range(ncols):
            r = [0] * ncols
            r[j] = D
            piv[j] = r
    for row in rows:
        v = [x % D for x in row] if D else list(row)
        j = 0
        while j < ncols:
            a = v[j]
            if a == 0:
                j += 1
                continue
            r = piv[j]
            if r is None:
                if a < 0:
                    v = [-x for x in v]
                piv[j] = v
                break
            b = r[j]
            if a % b == 0:
                q = a // b
                if D:
                    for k in range(j, ncols):
                        v[k] = (v[k] - q * r[k]) % D
                else:
                    for k in range(j, ncols):
                        v[k] -= q * r[k]
            else:
                g, s, t = xgcd(b, a)
                bb, aa = b // g, a // g
                nr = [0] * ncols
                nv = [0] * ncols
                for k in range(j, ncols):
                    rk, vk = r[k], v[k]
                    nr[k] = s * rk + t * vk
                    nv[k] = bb * vk - aa * rk
                if D:
                    nr = [x % D for x in nr]
                    nv = [x % D for x in nv]
                piv[j] = nr
                v = nv
            j += 1
    out = []
    cols = []
    for j in range(ncols):
        r = piv[j]
        if r is None:
            continue
        if r[j] < 0:
            r = [-x for x in r]
            piv[j] = r
        cols.append(j)
    for idx, j in enumerate(cols):
        pj = piv[j]
        d = pj[j]
        for i in cols[:idx]:
            ri = piv[i]
            q = ri[j] // d
            if q:
                for k in range(j, ncols):
                    ri[k] -= q * pj[k]
    for j in cols:
        out.append(tuple(piv[j]))
    return tuple(out)


def hnf_det(h):
    """Product of the pivots of a full rank HNF."""
    d = 1
    for i, r in enumerate(h):
        d *= r[i]
    return d


def kernel_mod(M, D):
    """Lattice ``{y in Z^n : y M = 0 (mod D)}`` for an ``n x m`` matrix ``M``.

    The result is a full rank HNF (it contains ``D * Z^n``).
    """
    n = len(M)
    m = len(M[0]) if n else 0
    rows = []
    for i, Mi in enumerate(M):
        r = [x % D for x in Mi] + [0] * n
        r[m + i] = 1
        rows.append(r)
    h = hnf(rows, m + n, D)
    return tuple(r[m:] for r in h if not any(r[:m]))


def solve_upper(h, v, integral=False):
    """Solve ``c * h = v`` for the upper triangular full rank ``h``.

    With ``integral=True`` returns ``None`` unless the solution is integral;
    otherwise returns a list of ``Fraction``/``int``.
    """
    n = len(h)
    c = [0] * n
    for i in range(n):
        s = v[i]
        for k in range(i):
            ck = c[k]
            if ck:
                s -= ck * h[k][i]
        d = h[i][i]
        if integral:
            q, r = divmod(s, d)
            if r:
                return None
            c[i] = q
        else:
            c[i] = Fraction(s, d) if s % d else s // d
    return c


def is_in_hnf(h, v):
    """Membership of the integer vector ``v`` in the full rank HNF lattice."""
    n = len(h)
    v = list(v)
    for i in range(n):
        a = v[i]
        if a:
            hi = h[i]
            q, r = divmod(a, hi[i])
            if r:
                return False
            for k in range(i, n):
                v[k] -= q * hi[k]
    return True


def det(M):
    """Determinant of a square integer matrix (Bareiss)."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            Ai = A[i]
            Ak = A[k]
            for j in range(k + 1, n):
                Ai[j] = (Ai[j] * akk - aik * Ak[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]


# ---------------------------------------------------------------- F_p algebra

def rref(rows, p):
    """Reduced row echelon form over F_p.

    Returns ``(basis, pivots)`` with ``basis`` a tuple of tuples.
    """
    basis = []
    pivots = []
    for row in rows:
        v = [x % p for x in row]
        for b, c in zip(basis, pivots):
            a = v[c]
            if a:
                for k in range(c, len(v)):
                    v[k] = (v[k] - a * b[k]) % p
        for c, a in enumerate(v):
            if a:
                break
        else:
            continue
        inv = pow(a, -1, p)
        v = [(x * inv) % p for x in v]
        for b in basis:
            f = b[c]
            if f:
                for k in range(len(v)):
                    b[k] = (b[k] - f * v[k]) % p
        basis.append(v)
        pivots.append(c)
    order = sorted(range(len(basis)), key=lambda i: pivots[i])
    return tuple(tuple(basis[i]) for i in order), tuple(pivots[i] for i in order)


def rank(rows, p):
    return len(rref(rows, p)[0])


def span_contains(basis, pivots, v, p):
    """Whether ``v`` lies in the span of an RREF basis."""
    v = [x % p for x in v]
    for b, c in zip(basis, pivots):
        a = v[c]
        if a:
            for k in range(len(v)):
                v[k] = (v[k] - a * b[k]) % p
    return not any(v)


def nullspace(M, p):
    """Basis (RREF) of ``{y : y M = 0}`` over F_p for an ``n x m`` matrix."""
    n = len(M)
    if n == 0:
        return ()
    m = len(M[0])
    rows = []
    for i, Mi in enumerate(M):
        r = [x % p for x in Mi] + [0] * n
        r[m + i] = 1
        rows.append(r)
    basis, piv = rref(rows, p)
    ker = [b[m:] for b, c in zip(basis, piv) if c >= m]
    return rref(ker, p)[0]


# ------------------------------------------------------------------- numbers

_SMALL_PRIMES = None


def _small_primes(bound=1000):
    global _SMALL_PRIMES
    if _SMALL_PRIMES is None or _SMALL_PRIMES[-1] < bound:
        sieve = bytearray([1]) * (bound + 1)
        sieve[0:2] = b"\x00\x00"
        for i in range(2, isqrt(bound) + 1):
            if sieve[i]:
                sieve[i * i::i] = bytearray(len(sieve[i * i::i]))
        _SMALL_PRIMES = [i for i in range(bound + 1) if sieve[i]]
    return _SMALL_PRIMES


def is_prime(n):
    """Deterministic Miller-Rabin for ``n < 3.3e24``, strong probable prime above."""
    if n < 2:
        return False
    for q in _small_primes(100):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factor_int(n):
    """Factor a positive integer of modest size by trial division.

    Intended for orders of multiplicative groups ``p^f - 1`` and similar.
    """
    n = abs(n)
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def sigma(k, n):
    """Divisor function ``sum_{d | n} d^k``."""
    return sum(d ** k for d in divisors(n))


def trailing_valuation(n, p):
    """p-adic valuation of the nonzero integer ``n``."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v
