"""Orders with a prescribed p-radical.

Every order ``O`` with ``J_p(O) = I`` lies between ``Z + I`` and the
largest such order ``O_I``, and these orders correspond to the subrings of
the étale algebra ``O_I / I``.  Two routes are provided:

* :func:`orders_with_radical` works from scratch: it computes the
  multiplicator ring ``M(I)``, its primes over ``p`` and explicit
  generators for every subring.
* :class:`RootFiberCache` caches the fiber of ``J_p(Z_K)`` (the root fiber)
  together with high p-power Frobenius images of its generators; the
  largest order for any other radical is then found by a stabilizer test
  and every fiber is read off the root fiber without recomputing
  multiplicator rings.
"""

from itertools import product
from math import gcd

from .arith import divisors, hnf, is_in_hnf, rref, sigma, span_contains
from .ffield import fq_find_root, fq_make, fq_primitive_element
from .fplinalg import subspaces_between
from .lattice import Lattice
from .orders import (Order, maximal_order_frame, order_closure, p_radical,
                     primes_above, residue_algebra)

__all__ = [
    "set_partitions", "etale_subrings", "count_orders_with_radical",
    "is_radical_candidate", "RadicalFiber", "orders_with_radical",
    "RootFiberCache", "RootOrder", "FiberOrder", "largest_order_for_radical",
]


def _lcm(a, b):
    return a // gcd(a, b) * b


# ---------------------------------------------------------------- subrings

def set_partitions(items):
    """All set partitions of ``items`` (blocks keep the input order)."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def etale_subrings(fs, p=None):
    """Encodings of all subrings of ``F_{p^f_1} ⊕ ... ⊕ F_{p^f_r}``.

    Each subring is ``(partition, degrees, eps)``: a partition of the
    component indices into blocks, a degree ``d_j`` dividing the gcd of the
    residue degrees of block ``j``, and Frobenius twists ``eps[i] < d_j``
    with ``eps = 0`` at the first index of each block.  The count does not
    depend on ``p``.
    """
    r = len(fs)
    out = []
    for part in set_partitions(range(r)):
        part = sorted(sorted(b) for b in part)
        choices = []
        for b in part:
            g = 0
            for i in b:
                g = gcd(g, fs[i])
            choices.append(divisors(g))
        for degs in product(*choices):
            ranges = []
            for b, d in zip(part, degs):
                for pos, i in enumerate(b):
                    ranges.append((i, range(1) if pos == 0 else range(d)))
            idx = [i for i, _ in ranges]
            for vals in product(*[rg for _, rg in ranges]):
                eps = [0] * r
                for i, v in zip(idx, vals):
                    eps[i] = v
                out.append((tuple(tuple(b) for b in part), tuple(degs), tuple(eps)))
    return out


def count_orders_with_radical(fs):
    """Number of orders with a given p-radical, from the residue degrees of ``M(I)``.

    Sum over set partitions of the product of ``sigma_{|B|-1}(gcd f_B)``.
    """
    total = 0
    for part in set_partitions(range(len(fs))):
        t = 1
        for b in part:
            g = 0
            for i in b:
                g = gcd(g, fs[i])
            t *= sigma(len(b) - 1, g)
        total += t
    return total


def is_radical_candidate(I, p, J0):
    """Whether ``pZ + I^2 ⊆ I ⊆ J0`` (``J0`` the p-radical of the maximal order)."""
    if not I.contains(p):
        return False
    if not I.issubset(J0):
        return False
    return (I * I).issubset(I)


# ---------------------------------------------------------------- generic route

class RadicalFiber:
    """All orders with p-radical ``radical`` (a lattice)."""

    def __init__(self, radical, mult_ring, largest, orders, generators, resdegs):
        self.radical = radical
        self.mult_ring = mult_ring
        self.largest = largest
        self.orders = orders
        self.generators = generators
        self.resdegs = resdegs

    def __len__(self):
        return len(self.orders)

    def __repr__(self):
        return f"RadicalFiber(size={len(self.orders)}, resdegs={self.resdegs})"


def _reduce(I, v, vden):
    """Canonical representative of ``v / vden`` modulo the lattice ``I``."""
    d = _lcm(vden, I.den)
    w = [x * (d // vden) for x in v]
    s = d // I.den
    for i, row in enumerate(I.hnf):
        piv = row[i] * s
        q = w[i] // piv
        if q:
            for k in range(i, len(w)):
                w[k] -= q * row[k] * s
    g = d
    for x in w:
        g = gcd(g, x)
    return [x // g for x in w], d // g


def _mul_mod(I, a, b):
    v = I.frame.mul_vec(a[0], b[0])
    return _reduce(I, v, a[1] * b[1])


def _pow_mod(I, a, e):
    result = (list(I.frame.one), 1)
    base = _reduce(I, a[0], a[1])
    while e:
        if e & 1:
            result = _mul_mod(I, result, base)
        e >>= 1
        if e:
            base = _mul_mod(I, base, base)
    return result


def orders_with_radical(I, p):
    """All orders whose p-radical is ``I``, built from ``M(I)`` and its primes.

    Each order is generated by ``I`` and elements ``sum v_i^(p^eps_i)`` over
    the blocks of a partition, where ``v_i`` are p-power images of lifts of
    residue-field elements sharing a common minimal polynomial.
    """
    M = Order(I.multiplicator_ring(), certify=False)
    primes = primes_above(M, p)
    fs = [P.resdeg for P in primes]
    f = 1
    for x in fs:
        f = _lcm(f, x)
    F = fq_make(p, f)
    w = fq_primitive_element(F)
    JM = p_radical(M, p)
    e = 0
    P = JM
    while not P.issubset(I):
        P = P ** p
        e += 1
    us = []
    for P_, fi in zip(primes, fs):
        h = F.minpoly(F.pow(w, (p ** f - 1) // (p ** fi - 1)))
        comp = P_.component
        root = fq_find_root(h, comp.field)
        R = residue_algebra(M, p)
        a = M.vector(R.lift(comp.embed(root)))
        us.append(_pow_mod(I, a, p ** e))
    orders = []
    gens = []
    for part, degs, eps in etale_subrings(fs, p):
        ys = []
        for b, d in zip(part, degs):
            acc = ([0] * I.degree, 1)
            for i in b:
                v = _pow_mod(I, us[i], (p ** fs[i] - 1) // (p ** d - 1))
                v = _pow_mod(I, v, p ** eps[i])
                den = _lcm(acc[1], v[1])
                acc = ([x * (den // acc[1]) + y * (den // v[1]) for x, y in zip(acc[0], v[0])], den)
            ys.append(acc)
        L = Lattice.from_elements(I.frame, [(r, I.den) for r in I.hnf] + ys)
        orders.append(order_closure(L))
        gens.append((part, degs, eps))
    largest = min(orders, key=lambda O: O.lattice.volume())
    return RadicalFiber(I, M, largest, orders, gens, fs)


# ---------------------------------------------------------------- cached route

class RootOrder:
    """An order of the root fiber (p-radical ``J_p(Z_K)``) with cached data."""

    def __init__(self, idx, part, degs, eps):
        self.idx = idx
        self.part = part
        self.degs = degs
        self.eps = eps

    def __repr__(self):
        return f"RootOrder({self.idx}, index=p^{self.codim}, blocks={self.part}, degs={self.degs})"


def _frame_powmod(mul, v, e, D, one):
    result = list(one)
    base = [x % D for x in v]
    while e:
        if e & 1:
            result = [x % D for x in mul(result, base)]
        e >>= 1
        if e:
            base = [x % D for x in mul(base, base)]
    return result


class RootFiberCache:
    """Enumeration context for a field ``K`` and prime ``p``.

    All lattices handled here live in the integral basis frame of ``Z_K``
    and contain ``p^Nmax Z_K``; HNFs are computed modulo ``D = p^Nmax``.
    """

    def __init__(self, K, p, nmax, disc_factors=()):
        self.K = K
        self.p = p
        self.frame = fr = maximal_order_frame(K, disc_factors)
        self.n = n = K.degree
        self.nmax = nmax
        self.D = p ** nmax
        self.mul = fr.mul_vec
        self.one = list(fr.one)
        self.ZK = Order(Lattice.identity(fr), certify=False)
        self.res = residue_algebra(self.ZK, p)
        self.J0 = self.res.radical
        self.R = self.res.A
        self.m0 = self.R.dim
        self.fs = [c.f for c in self.res.components]
        # Frobenius exponent E: for a = x + pi with pi in J0 the cross terms of
        # a^(p^E) lie in p^nmax Z_K when E - v + floor(p^v / n) >= nmax for all v
        v0 = 0
        while p ** v0 // n < nmax:
            v0 += 1
        self.E = nmax + v0
        self._build_root_fiber()

    # lattice helpers -------------------------------------------------
    def lat(self, rows):
        return Lattice(self.frame, 1, hnf(rows, self.n, self.D), normalized=True)

    def lmul(self, A, B):
        mul = self.mul
        same = A is B or A.hnf == B.hnf
        rows = []
        for i, a in enumerate(A.hnf):
            for j, b in enumerate(B.hnf):
                if same and j < i:
                    continue
                rows.append(mul(a, b))
        return self.lat(rows)

    def ladd(self, A, B, extra=()):
        return self.lat(list(A.hnf) + list(B.hnf) + list(extra))

    def lscale(self, v, A):
        mul = self.mul
        return self.lat([mul(v, r) for r in A.hnf])

    def pmul(self, c, A):
        return self.lat([[c * x for x in r] for r in A.hnf])

    def logp(self, x):
        p = self.p
        k = 0
        while x % p == 0:
            x //= p
            k += 1
        if x != 1:
            raise ValueError("index is not a power of p")
        return k

    def exponent(self, L):
        """``log_p [Z_K : L]``."""
        return self.logp(L.det())

    def index(self, L):
        """``[Z_K : L]`` for a lattice in the frame."""
        return L.det()

    def rcoords(self, v):
        """Residue algebra coordinates of the frame vector ``v``."""
        return self.res.project(v)

    def lift_r(self, a):
        return self.res.lift(a)

    def stabilizes(self, b, I):
        mul = self.mul
        D = self.D
        H = I.hnf
        for r in H:
            if not is_in_hnf(H, [x % D for x in mul(b, r)]):
                return False
        return True

    # root fiber --------------------------------------------------------
    def _build_root_fiber(self):
        p = self.p
        R = self.R
        comps = self.res.components
        fs = self.fs
        f = 1
        for x in fs:
            f = _lcm(f, x)
        F = fq_make(p, f)
        w = fq_primitive_element(F)
        us = []
        for comp, fi in zip(comps, fs):
            h = F.minpoly(F.pow(w, (p ** f - 1) // (p ** fi - 1)))
            us.append(comp.embed(fq_find_root(h, comp.field)))
        roots = []
        for part, degs, eps in etale_subrings(fs, p):
            ro = RootOrder(None, part, degs, eps)
            ys = []
            for b, d in zip(part, degs):
                acc = (0,) * R.dim
                for i in b:
                    v = R.pow(us[i], (p ** fs[i] - 1) // (p ** d - 1))
                    v = R.pow(v, p ** eps[i])
                    acc = tuple((x + y) % p for x, y in zip(acc, v))
                ys.append(acc)
            ro.ys = ys
            span = []
            ro.ypowers = []
            for y, d in zip(ys, degs):
                pw = [y]
                for _ in range(d - 1):
                    pw.append(R.mul(pw[-1], y))
                ro.ypowers.append(pw)
                span.extend(pw)
            ro.sub = rref(span, p)[0]
            ro.dim = len(ro.sub)
            ro.codim = self.m0 - ro.dim
            ro.index = p ** ro.codim
            roots.append(ro)
        roots.sort(key=lambda r: (r.codim, r.sub))
        self.roots = roots
        self.root_by_sub = {}
        D = self.D
        E = self.E
        mul = self.mul
        jrows = list(self.J0.hnf)
        for idx, ro in enumerate(roots):
            ro.idx = idx
            self.root_by_sub[ro.sub] = ro
            ro.lattice = self.lat(jrows + [self.lift_r(v) for v in ro.sub])
            # generators a_j and their p^E-th powers b_j (mod p^nmax)
            ro.a = [self.lift_r(y) for y in ro.ys]
            ro.b = [_frame_powmod(mul, a, p ** E, D, self.one) for a in ro.a]
            beta = [list(self.one)]
            for bj, d in zip(ro.b, ro.degs):
                cur = list(bj)
                for m in range(d):
                    if m:
                        cur = [x % D for x in mul(cur, bj)]
                    beta.append(cur)
            # choose beta elements whose residues form a basis of ro.sub
            chosen = []
            imgs = []
            for bvec in beta:
                img = self.rcoords(bvec)
                if len(rref(imgs + [img], p)[0]) > len(imgs):
                    imgs.append(img)
                    chosen.append(bvec)
            assert rref(imgs, p)[0] == ro.sub, "cached powers do not span the root order"
            ro.beta = chosen
            # solver: residue vector in ro.sub -> coefficients on beta
            m = len(imgs)
            aug = [list(img) + [1 if i == j else 0 for j in range(m)] for i, img in enumerate(imgs)]
            basis, piv = rref(aug, p)
            ro._solve = (basis, piv)
        for ro in roots:
            ro.below = [r for r in roots if _subspace_le(r.sub, ro.sub, p)]
            ro.start1 = None
        self.top = roots[0]
        assert self.top.codim == 0

    def beta_lift(self, ro, t):
        """Frame vector in ``O_I`` lifting the residue vector ``t`` of ``ro``.

        Valid for any radical whose largest order reduces onto ``ro``.
        """
        p = self.p
        basis, piv = ro._solve
        m0 = self.m0
        v = [x % p for x in t] + [0] * len(ro.beta)
        for b, c in zip(basis, piv):
            if c < m0:
                a = v[c]
                if a:
                    v = [(x - a * y) % p for x, y in zip(v, b)]
        if any(v[:m0]):
            raise ValueError("vector outside the root order")
        coeffs = [(-x) % p for x in v[m0:]]
        n = self.n
        out = [0] * n
        for c, bv in zip(coeffs, ro.beta):
            if c:
                for k in range(n):
                    out[k] += c * bv[k]
        return out

    def largest_root_for(self, I, hint):
        """Root order ``ro`` with ``O_I + J0 = ro`` (searching below ``hint``)."""
        for ro in hint.below:
            if all(self.stabilizes(b, I) for b in ro.b):
                return ro
        raise AssertionError("no root order stabilizes the radical")

    @property
    def ramified(self):
        return self.J0.hnf != self.pmul(self.p, self.ZK.lattice).hnf

    def largest_order(self, I, ro):
        """``O_I`` given its root order ``ro``."""
        return self.lat(list(I.hnf) + ro.beta)

    def fiber_order(self, I, ro, k):
        """The order ``O_I ∩ k`` of the fiber of ``I`` (``k`` below ``ro``)."""
        return self.lat(list(I.hnf) + [self.beta_lift(ro, t) for t in k.sub])

    def start1(self, ro, lower=()):
        """Subspaces ``lower + F_p 1 ⊆ T`` of ``ro/J0`` grouped by the root order they power up to."""
        if ro.start1 is None:
            ro.start1 = {}
        lower = rref(list(lower) + [self.R.one], self.p)[0]
        if lower not in ro.start1:
            p = self.p
            R = self.R
            n = self.n
            s = 0
            while 2 ** s < n - 1:
                s += 1
            out = {}
            for T in subspaces_between(self.m0, p, lower=lower, upper=ro.sub):
                P = T
                for _ in range(s):
                    P = rref([R.mul(a, b) for i, a in enumerate(P) for b in P[i:]], p)[0]
                k = self.root_by_sub.get(P)
                if k is not None:
                    out.setdefault(k.idx, []).append(T)
            ro.start1[lower] = out
        return ro.start1[lower]


def _subspace_le(A, B, p):
    basis, piv = rref(B, p)
    return all(span_contains(basis, piv, a, p) for a in A)


class FiberOrder:
    """An enumerated order with its radical and root-fiber bookkeeping.

    ``ro`` is the root order onto which ``O_I`` reduces, ``k`` the root
    order ``O + J_p(Z_K)``; ``exp`` is ``log_p [Z_K : O]``.
    """

    __slots__ = ("lattice", "exp", "radical", "ro", "k", "parent", "inv")

    def __init__(self, lattice, exp, radical, ro, k, parent=None):
        self.lattice = lattice
        self.exp = exp
        self.radical = radical
        self.ro = ro
        self.k = k
        self.parent = parent
        self.inv = None

    def __repr__(self):
        return f"FiberOrder(index=p^{self.exp}, hnf={self.lattice.hnf})"


def largest_order_for_radical(I, p, cache, hint=None):
    """``O_I`` located through the cached root fiber.

    Falls back to the multiplicator-ring route when no root order
    below ``hint`` stabilizes ``I``.
    """
    hint = cache.top if hint is None else hint
    try:
        ro = cache.largest_root_for(I, hint)
    except AssertionError:
        return orders_with_radical(I, p).largest.lattice
    return cache.largest_order(I, ro)
