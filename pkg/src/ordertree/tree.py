"""Enumeration of orders of p-power index by walking the successor tree.

Every non-maximal order ``O`` with p-radical ``I`` has a unique parent, the
multiplicator ring of ``I^(n-1)``; the radicals of the children of an order
are produced by :mod:`ordertree.unram` and :mod:`ordertree.ramified`, and each
radical expands into its fiber of orders.  Processing is breadth first; a
level's expansions are independent and may run in a thread pool.
"""

from concurrent.futures import ThreadPoolExecutor

from .arith import _small_primes, factor_int, is_in_hnf
from .fibers import (FiberOrder, RootFiberCache, count_orders_with_radical,
                     orders_with_radical)
from .fplinalg import is_subspace_of
from .lattice import Lattice
from .orders import Order, maximal_order_frame
from .ramified import radicals_for_order
from .unram import Restriction

__all__ = ["EnumerationTask", "p_suborders", "p_overorders", "suborders_all",
           "overorders_all", "p_part"]


class EnumerationTask:
    """Enumerate orders of ``K`` whose index in ``Z_K`` is a power of ``p``.

    Suborder mode: all such orders with index at most ``p^e``.
    Overorder mode (``over`` given): all such orders containing ``over``;
    ``e`` then optionally caps the index.
    """

    def __init__(self, K, p, e=None, over=None, threads=1, debug=False,
                 ram_exponent=None, disc_factors=()):
        self.K = K
        self.p = p
        self.threads = max(1, int(threads))
        self.debug = debug
        self.ram_exponent = ram_exponent
        frame = maximal_order_frame(K, disc_factors)
        n = K.degree
        lam = None
        if over is not None:
            lam = p_part(over, frame, p)
            m = _exponent_of(lam, p)
            idx = lam.det()
            le = 0
            while idx % p == 0:
                idx //= p
                le += 1
            self.e = le if e is None else min(e, le)
        else:
            if e is None or e < 0:
                raise ValueError("suborder mode needs an exponent e >= 0")
            m = e
            self.e = e
        self.cache = RootFiberCache(K, p, m + n + 1, disc_factors)
        self.restrict = Restriction(self.cache, self.cache.lat(list(lam.hnf))) if lam is not None else None
        self.stats = {"radicals": 0, "expanded": 0}

    # ------------------------------------------------------------------
    def _admissible(self, L):
        r = self.restrict
        return r is None or r.lam.issubset(L)

    def roots(self):
        c = self.cache
        out = []
        top = FiberOrder(c.top.lattice, 0, c.J0, c.top, c.top)
        for ro in c.roots:
            if ro.codim > self.e:
                continue
            if not self._admissible(ro.lattice):
                continue
            if ro is c.top:
                out.append(top)
            else:
                out.append(FiberOrder(ro.lattice, ro.codim, c.J0, c.top, ro, top))
        return out

    def radicals(self, node):
        return radicals_for_order(self.cache, node, self.e, self.restrict,
                                  ram_exponent=self.ram_exponent)

    def expand(self, node):
        """Children of ``node``: the fibers of its successor radicals."""
        c = self.cache
        e = self.e
        r = self.restrict
        out = []
        for I in self.radicals(node):
            if I.hnf == node.radical.hnf:
                continue
            if r is not None and not r.jlam.issubset(I):
                continue
            ro = c.largest_root_for(I, node.k)
            exI = c.exponent(I) - ro.dim
            if exI > e:
                continue
            if r is not None:
                OI = c.largest_order(I, ro)
                if not r.lam.issubset(OI):
                    continue
            for k in ro.below:
                ex = exI + ro.dim - k.dim
                if ex > e:
                    continue
                if r is not None and not _subspace_contains(k.sub, r.lam_r, c.p):
                    continue
                O = c.fiber_order(I, ro, k)
                if r is not None and not r.lam.issubset(O):
                    continue
                child = FiberOrder(O, ex, I, ro, k, node)
                out.append(child)
            if self.debug:
                self._check_fiber(I, ro)
        return out

    def _check_fiber(self, I, ro):
        c = self.cache
        F = orders_with_radical(I, c.p)
        assert len(ro.below) == count_orders_with_radical(F.resdegs) == len(F)
        assert F.largest.lattice.to_frame(c.frame).hnf == c.largest_order(I, ro).hnf
        self.stats["fibers_checked"] = self.stats.get("fibers_checked", 0) + 1

    def _expandable(self, node):
        if node.exp >= self.e:
            return False
        if self.restrict is not None and node.lattice.hnf == self.restrict.lam.hnf:
            return False
        return True

    def run(self):
        """All orders as :class:`FiberOrder` records, sorted by (index, HNF)."""
        level = self.roots()
        found = {n.lattice.hnf: n for n in level}
        seen_rad = set()
        pool = ThreadPoolExecutor(self.threads) if self.threads > 1 else None
        try:
            while level:
                todo = [n for n in level if self._expandable(n)]
                self.stats["expanded"] += len(todo)
                if pool is not None:
                    results = list(pool.map(self.expand, todo))
                else:
                    results = [self.expand(n) for n in todo]
                nxt = []
                for children in results:
                    for ch in children:
                        key = ch.lattice.hnf
                        if key in found:
                            if self.debug:
                                raise AssertionError(f"order found twice: {key}")
                            continue
                        if ch.radical.hnf not in seen_rad:
                            seen_rad.add(ch.radical.hnf)
                            self.stats["radicals"] += 1
                        found[key] = ch
                        nxt.append(ch)
                level = nxt
        finally:
            if pool is not None:
                pool.shutdown()
        return sorted(found.values(), key=lambda n: (n.exp, n.lattice.hnf))


def _subspace_contains(big, small, p):
    return is_subspace_of(small, big, p)


def _exponent_of(L, p):
    """Smallest ``m`` with ``p^m Z_K ⊆ L`` (``L`` of p-power index)."""
    m = 0
    n = L.degree
    while True:
        q = p ** m
        if all(is_in_hnf(L.hnf, [q if i == j else 0 for j in range(n)]) for i in range(n)):
            return m
        m += 1


def p_part(order, frame, p):
    """``Λ + p^k Z_K`` with ``p^k`` the p-part of ``[Z_K : Λ]``, in the frame of ``Z_K``."""
    L = order.lattice if isinstance(order, Order) else order
    L = L.to_frame(frame)
    if L.den != 1:
        raise ValueError("order is not contained in the maximal order")
    idx = L.det()
    q = 1
    while idx % p == 0:
        idx //= p
        q *= p
    n = frame.degree
    rows = list(L.hnf) + [[q if i == j else 0 for j in range(n)] for i in range(n)]
    return Lattice.from_rows(frame, rows, 1, q)


def p_suborders(K, p, e, threads=1, debug=False, **kw):
    """Orders of ``K`` with index dividing ``p^e``, as lattices in the ``Z_K`` frame."""
    return [n.lattice for n in EnumerationTask(K, p, e, threads=threads, debug=debug, **kw).run()]


def p_overorders(order, p, threads=1, debug=False, e=None, **kw):
    """Orders containing ``order`` whose index in ``Z_K`` is a power of ``p``."""
    K = order.frame.field if isinstance(order, Order) else order.frame.field
    return [n.lattice for n in EnumerationTask(K, p, e, over=order, threads=threads, debug=debug, **kw).run()]


def _intersect_all(frame, parts):
    """CRT recombination: all intersections choosing one order per prime."""
    out = [Lattice.identity(frame)]
    for lst in parts:
        out = [a & b for a in out for b in lst]
    return out


def suborders_all(K, m, divisor_mode=False, threads=1, disc_factors=()):
    """Orders of index ``<= m`` (or dividing ``m`` with ``divisor_mode``)."""
    if m < 1:
        raise ValueError("bound must be positive")
    frame = maximal_order_frame(K, disc_factors)
    if divisor_mode:
        primes = sorted(factor_int(m).items())
    else:
        primes = []
        for p in _primes_upto(m):
            e = 0
            while p ** (e + 1) <= m:
                e += 1
            primes.append((p, e))
    parts = [p_suborders(K, p, e, threads=threads, disc_factors=disc_factors) for p, e in primes]
    # prune combinations exceeding m while recombining
    combos = [(Lattice.identity(frame), 1)]
    for lst in parts:
        nxt = []
        for a, ia in combos:
            for b in lst:
                ib = b.det()
                if ia * ib <= m and (not divisor_mode or m % (ia * ib) == 0):
                    nxt.append((a & b if ib > 1 else a, ia * ib))
        combos = nxt
    return sorted((L for L, _ in combos), key=lambda L: (L.det(), L.hnf))


def _primes_upto(m):
    return [q for q in _small_primes(m) if q <= m]


def overorders_all(order, threads=1, disc_factors=()):
    """All orders ``O`` with ``order ⊆ O ⊆ Z_K``."""
    L = order.lattice if isinstance(order, Order) else order
    K = L.frame.field
    frame = maximal_order_frame(K, disc_factors)
    Lf = L.to_frame(frame)
    idx = Lf.det()
    parts = []
    for p in sorted(factor_int(idx)):
        parts.append(p_overorders(Lf, p, threads=threads, disc_factors=disc_factors))
    return sorted(_intersect_all(frame, parts), key=lambda L: (L.det(), L.hnf))
