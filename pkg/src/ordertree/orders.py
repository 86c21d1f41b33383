"""Orders, p-radicals, primes over p, p-maximal closure, maximal order."""

import threading

from math import isqrt

from .arith import hnf, is_prime, nullspace, rref, solve_upper
from .ffield import FpAlgebra, FqField, fq_primitive_element
from .lattice import IntegralBasis, Lattice

__all__ = [
    "OrderError", "IncompleteFactorizationError", "Order", "PrimeData",
    "order_make", "p_radical", "primes_above", "crt_element",
    "pmaximal_closure", "maximal_order", "maximal_order_frame", "order_closure",
    "factor_discriminant",
]


class OrderError(ValueError):
    pass


class IncompleteFactorizationError(ValueError):
    def __init__(self, cofactor):
        super().__init__(f"could not factor discriminant cofactor {cofactor}; "
                         "supply its prime factors explicitly")
        self.cofactor = cofactor


class Order:
    """An order given by a lattice that contains 1 and is closed under products."""

    def __init__(self, lattice, certify=True):
        if certify:
            if not lattice.contains(1):
                raise OrderError("lattice does not contain 1")
            if not (lattice * lattice).issubset(lattice):
                raise OrderError("lattice is not closed under multiplication")
        self.lattice = lattice
        self._table = None
        self._cache = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"Order({self.lattice!r})"

    def __eq__(self, other):
        return isinstance(other, Order) and self.lattice == other.lattice

    def __hash__(self):
        return hash(self.lattice)

    @property
    def frame(self):
        return self.lattice.frame

    @property
    def degree(self):
        return self.lattice.degree

    @property
    def hnf(self):
        return self.lattice.hnf

    @property
    def den(self):
        return self.lattice.den

    def cached(self, key, build):
        """Write-once per-order cache; concurrent fills are idempotent."""
        v = self._cache.get(key)
        if v is None:
            v = build()
            with self._lock:
                v = self._cache.setdefault(key, v)
        return v

    def table(self):
        """Integer structure constants in the HNF basis of the order."""
        if self._table is None:
            H = self.hnf
            mul = self.frame.mul_vec
            d = self.den
            n = self.degree
            t = [[None] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    prod = mul(H[i], H[j])
                    c = solve_upper(H, prod, integral=True)
                    if c is None or any(x % d for x in c):
                        raise OrderError("lattice is not closed under multiplication")
                    c = tuple(x // d for x in c)
                    t[i][j] = t[j][i] = c
            self._table = t
        return self._table

    def coords(self, v, vden=1):
        """Integer coordinates of ``v / vden`` in the order basis (must lie in O)."""
        w = []
        for x in v:
            q, r = divmod(x * self.den, vden)
            if r:
                raise OrderError("element is not in the order")
            w.append(q)
        c = solve_upper(self.hnf, w, integral=True)
        if c is None:
            raise OrderError("element is not in the order")
        return c

    def vector(self, c):
        """Frame vector ``(v, den)`` of the element with order coordinates ``c``."""
        n = self.degree
        H = self.hnf
        v = [0] * n
        for i, ci in enumerate(c):
            if ci:
                Hi = H[i]
                for k in range(n):
                    v[k] += ci * Hi[k]
        return v, self.den

    def one_coords(self):
        return self.coords(self.frame.one)

    def algebra_mod(self, p):
        """``O / pO`` as an F_p-algebra in the order basis."""
        return self.cached(("alg", p), lambda: FpAlgebra(
            p, [[[x % p for x in c] for c in row] for row in self.table()],
            [x % p for x in self.one_coords()]))

    def sub_lattice(self, coord_rows, p_multiple=None):
        """Lattice spanned by order-coordinate rows (plus ``p_multiple * O``)."""
        n = self.degree
        H = self.hnf
        rows = []
        for c in coord_rows:
            v = [0] * n
            for i, ci in enumerate(c):
                if ci:
                    for k in range(n):
                        v[k] += ci * H[i][k]
            rows.append(v)
        if p_multiple:
            rows += [[p_multiple * x for x in r] for r in H]
        modulus = p_multiple * self.lattice.det() if p_multiple else 0
        return Lattice.from_rows(self.frame, rows, self.den, modulus)

    def index_in(self, other):
        return self.lattice.index_in(other.lattice if isinstance(other, Order) else other)

    def to_json(self):
        d = self.lattice.to_field().to_json()
        d["is_order"] = True
        return d


def order_make(L):
    """Certify a lattice as an order.

    Raises :class:`OrderError` if ``1`` is missing or the lattice is not
    closed under multiplication.
    """
    return Order(L, certify=True)


def order_closure(L):
    """Smallest order containing the lattice-or-set ``L`` (iterated products)."""
    cur = Lattice.from_rows(L.frame, [list(r) for r in L.hnf] +
                            [[x * L.den for x in L.frame.one]], L.den)
    while True:
        nxt = cur + cur * cur
        if nxt == cur:
            return Order(cur, certify=False)
        cur = nxt


# ------------------------------------------------------------------ radicals

def _frobenius_exponent(n, p):
    k = 0
    while p ** k < n:
        k += 1
    return max(k, 1)


def p_radical(O, p):
    """The p-radical ``J_p(O)``: kernel of a Frobenius power on ``O/pO``.

    >>> from ordertree.numberfield import nf_make
    >>> K = nf_make([1, 0, 1])
    >>> p_radical(order_make(Lattice.identity(K)), 2)
    Lattice(den=1, hnf=[[1, 1], [0, 2]])
    """
    def build():
        A = O.algebra_mod(p)
        k = _frobenius_exponent(O.degree, p)
        F = A.frobenius_matrix(k)
        ker = nullspace(F, p)
        return O.sub_lattice(ker, p)
    return O.cached(("rad", p), build)


class _Component:
    """A simple component of ``O/J``: a finite field inside the algebra."""

    def __init__(self, A, basis):
        p = A.p
        self.basis = basis
        self.f = len(basis)
        m = A.dim
        # identity of the component: the unique idempotent generating it
        self.identity = self._find_identity(A)
        # field generator theta: first element (base-p counting) of full degree
        q = p ** self.f
        for k in range(1, q):
            coeffs = []
            kk = k
            for _ in range(self.f):
                kk, r = divmod(kk, p)
                coeffs.append(r)
            theta = [0] * m
            for a, v in zip(coeffs, basis):
                if a:
                    for t in range(m):
                        theta[t] = (theta[t] + a * v[t]) % p
            theta = tuple(theta)
            g = A.minpoly(theta, self.identity)
            if len(g) - 1 == self.f:
                break
        self.theta = theta
        self.field = FqField(p, g)
        powers = [self.identity]
        for _ in range(self.f - 1):
            powers.append(A.mul(powers[-1], theta))
        self.powers = powers
        self.A = A

    def _find_identity(self, A):
        # in the field C every nonzero x satisfies x^(q-1) = 1_C
        return A.pow(self.basis[0], A.p ** self.f - 1)

    def embed(self, x):
        """Algebra vector of the field element ``x`` (coefficients in theta)."""
        p = self.A.p
        m = self.A.dim
        out = [0] * m
        for a, v in zip(x, self.powers):
            if a:
                for t in range(m):
                    out[t] = (out[t] + a * v[t]) % p
        return tuple(out)


class ResidueAlgebra:
    """``O / J_p(O)`` with its decomposition into residue fields."""

    def __init__(self, O, p):
        self.order = O
        self.p = p
        self.radical = J = p_radical(O, p)
        n = O.degree
        jrows = [[x % p for x in O.coords(r, J.den)] for r in J.hnf]
        self.jbasis, self.jpiv = rref(jrows, p)
        self.nonpiv = [j for j in range(n) if j not in self.jpiv]
        m = len(self.nonpiv)
        Ap = O.algebra_mod(p)
        self.full = Ap
        table = [[self.project(Ap.mul(self._unit(i), self._unit(j)))
                  for j in self.nonpiv] for i in self.nonpiv]
        self.A = FpAlgebra(p, table, self.project(Ap.one))
        self.components = [_Component(self.A, C) for C in self.A.simple_components()] if m else []

    def _unit(self, j):
        v = [0] * self.order.degree
        v[j] = 1
        return v

    def project(self, c):
        """Order coordinates (mod p) -> algebra coordinates."""
        p = self.p
        v = [x % p for x in c]
        for b, piv in zip(self.jbasis, self.jpiv):
            a = v[piv]
            if a:
                for k in range(len(v)):
                    v[k] = (v[k] - a * b[k]) % p
        return tuple(v[j] for j in self.nonpiv)

    def lift(self, a):
        """Algebra coordinates -> order coordinates (integers in [0, p))."""
        c = [0] * self.order.degree
        for x, j in zip(a, self.nonpiv):
            c[j] = x
        return c


def residue_algebra(O, p):
    return O.cached(("res", p), lambda: ResidueAlgebra(O, p))


class PrimeData:
    """A maximal ideal of an order over ``p`` with residue data.

    ``gen`` is a frame vector ``(v, den)`` whose residue generates the unit
    group of ``O/P`` and which lies in every other prime over ``p``.
    """

    def __init__(self, order, p, ideal, resdeg, gen, component):
        self.order = order
        self.p = p
        self.ideal = ideal
        self.resdeg = resdeg
        self.gen = gen
        self.component = component

    def __repr__(self):
        return f"PrimeData(p={self.p}, resdeg={self.resdeg}, ideal={self.ideal!r})"


def primes_above(O, p):
    """All maximal ideals of ``O`` over ``p``, sorted canonically."""
    def build():
        R = residue_algebra(O, p)
        out = []
        for idx, comp in enumerate(R.components):
            others = [v for j, c in enumerate(R.components) if j != idx for v in c.basis]
            rows = [R.lift(v) for v in others] + [list(b) for b in R.jbasis]
            P = O.sub_lattice(rows, p)
            g = fq_primitive_element(comp.field)
            gen = O.vector(R.lift(comp.embed(g)))
            out.append(PrimeData(O, p, P, comp.f, gen, comp))
        return out
    return O.cached(("primes", p), build)


def crt_element(O, p, targets):
    """Element of ``O`` with prescribed residues at the primes over ``p``.

    ``targets[i]`` is ``None``/``0`` or an element of the residue field of
    the ``i``-th prime (a tuple in its ``FqField``).  Returns ``(v, den)``.
    """
    R = residue_algebra(O, p)
    m = R.A.dim
    acc = [0] * m
    for comp, t in zip(R.components, targets):
        if t is None or t == 0:
            continue
        e = comp.embed(t)
        acc = [(a + b) % p for a, b in zip(acc, e)]
    return O.vector(R.lift(acc))


# ------------------------------------------------------------------ closures

def pmaximal_closure(O, p):
    """Iterate ``O <- M(J_p(O))`` to the p-maximal order above ``O``."""
    cur = O
    while True:
        J = p_radical(cur, p)
        M = J.multiplicator_ring()
        if M == cur.lattice:
            return cur
        cur = Order(M, certify=False)


def factor_discriminant(d, extra_primes=(), bound=10 ** 6):
    """Prime factorization of ``|d|`` by trial division plus user primes.

    The remaining cofactor ``c`` is accepted when it is 1, a prime, a
    perfect square of a prime-free-of-small-factors, or below ``bound^3``
    (then it is squarefree: all its prime factors exceed ``bound``).  Only
    primes whose square divides ``d`` matter to the caller; the returned
    dict holds all found primes with exponents, and an accepted unfactored
    squarefree cofactor is omitted.
    """
    d = abs(d)
    out = {}
    for q in sorted(set(extra_primes)):
        while d % q == 0:
            out[q] = out.get(q, 0) + 1
            d //= q
    q = 2
    while q <= bound and q * q <= d:
        while d % q == 0:
            out[q] = out.get(q, 0) + 1
            d //= q
        q += 1 if q == 2 else 2
    if d == 1:
        return out
    if q * q > d or is_prime(d):
        out[d] = out.get(d, 0) + 1
        return out
    r = isqrt(d)
    if r * r == d:
        sub = factor_discriminant(r, extra_primes, bound)
        for k, v in sub.items():
            out[k] = out.get(k, 0) + 2 * v
        return out
    if d < bound ** 3:
        # every prime factor exceeds bound, so at most two factors: squarefree
        return out
    raise IncompleteFactorizationError(d)


def maximal_order(K, disc_factors=()):
    """The maximal order of ``K`` (power basis frame)."""
    cache = getattr(K, "_zk_cache", None)
    if cache is not None:
        return cache
    E = Order(Lattice.identity(K), certify=False)
    fac = factor_discriminant(K.disc, disc_factors)
    L = E.lattice
    for p, e in sorted(fac.items()):
        if e >= 2:
            L = L + pmaximal_closure(E, p).lattice
    Z = Order(L, certify=False)
    K._zk_cache = Z
    return Z


def maximal_order_frame(K, disc_factors=()):
    """Integral basis frame of ``Z_K`` with ``1`` as first basis vector."""
    fr = getattr(K, "_zk_frame", None)
    if fr is not None:
        return fr
    Z = maximal_order(K, disc_factors)
    n = K.degree
    # HNF with reversed columns puts the element 1 (the x^0 coordinate) last
    rev = hnf([list(reversed(r)) for r in Z.hnf], n)
    rows = [list(reversed(r)) for r in reversed(rev)]
    fr = IntegralBasis(K, rows, Z.den)
    K._zk_frame = fr
    return fr
