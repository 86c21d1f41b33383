"""Subspace enumeration over F_p and lattice quotients ``top/bottom``.

A subspace of ``F_p^d`` is represented by its RREF basis, a tuple of
tuples; this is the canonical key used for lookups and deduplication.
"""

from itertools import combinations, product

from .arith import hnf, nullspace, rref, solve_upper, span_contains
from .lattice import Lattice

__all__ = [
    "gaussian_binomial", "count_complements", "count_biprojective",
    "subspaces_of_dim", "subspaces_between", "complement_summands", "complement_summands_in",
    "biprojective_subspaces", "invariant_intermediate", "invariant_by_filter",
    "span", "subspace_sum", "subspace_intersection", "is_subspace_of",
    "VecQuotient", "QuotientSpace", "quotient_space",
]


# ---------------------------------------------------------------- counting

def gaussian_binomial(m, k, q):
    if k < 0 or k > m:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def count_complements(n, m, q):
    """Number of subspaces ``S`` of ``F_q^n`` with ``S + U = F_q^n``, ``dim U = m``."""
    return sum(gaussian_binomial(m, k, q) * q ** ((n - m) * k) for k in range(m + 1))


def count_biprojective(r, s, q):
    """Number of ``S ⊆ V1 ⊕ V2`` projecting onto both, ``dim V1 = r >= s = dim V2``."""
    if r < s:
        r, s = s, r
    total = 0
    for k in range(s + 1):
        num = den = 1
        for i in range(s - k):
            num *= (q ** r - q ** i) * (q ** s - q ** i)
            den *= q ** (s - k) - q ** i
        total += num // den
    return total


# ---------------------------------------------------------------- basics

def span(rows, p):
    return rref(rows, p)[0]


def subspace_sum(A, B, p):
    return rref(list(A) + list(B), p)[0]


def subspace_intersection(A, B, p):
    if not A or not B:
        return ()
    d = len(A[0])
    rows = [list(a) for a in A] + [[-x % p for x in b] for b in B]
    ns = nullspace(rows, p)
    out = []
    for y in ns:
        v = [0] * d
        for c, a in zip(y[:len(A)], A):
            if c:
                for t in range(d):
                    v[t] = (v[t] + c * a[t]) % p
        out.append(v)
    return rref(out, p)[0]


def is_subspace_of(A, B, p):
    basis, piv = rref(B, p)
    return all(span_contains(basis, piv, a, p) for a in A)


def _pivots(S):
    out = []
    for r in S:
        for c, x in enumerate(r):
            if x:
                out.append(c)
                break
    return out


# ---------------------------------------------------------------- enumeration

def subspaces_of_dim(d, k, p):
    """All ``k``-dimensional subspaces of ``F_p^d`` as RREF tuples.

    Order: pivot tuples lexicographically, then free entries in base-p
    counting order.
    """
    if k == 0:
        yield ()
        return
    for piv in combinations(range(d), k):
        pivset = set(piv)
        free = [(i, c) for i, pc in enumerate(piv) for c in range(pc + 1, d) if c not in pivset]
        for vals in product(range(p), repeat=len(free)):
            rows = [[0] * d for _ in range(k)]
            for i, pc in enumerate(piv):
                rows[i][pc] = 1
            for (i, c), v in zip(free, vals):
                rows[i][c] = v
            yield tuple(tuple(r) for r in rows)


class VecQuotient:
    """The quotient ``F_p^d / W`` with coordinates at the non-pivot positions of ``W``."""

    def __init__(self, d, W, p):
        self.d = d
        self.p = p
        self.W, self.piv = rref(W, p)
        self.free = [j for j in range(d) if j not in self.piv]
        self.dim = len(self.free)

    def project(self, v):
        p = self.p
        v = [x % p for x in v]
        for b, c in zip(self.W, self.piv):
            a = v[c]
            if a:
                for k in range(self.d):
                    v[k] = (v[k] - a * b[k]) % p
        return tuple(v[j] for j in self.free)

    def project_space(self, S):
        return rref([self.project(v) for v in S], self.p)[0]

    def lift_vector(self, u):
        v = [0] * self.d
        for x, j in zip(u, self.free):
            v[j] = x
        return v

    def lift_space(self, T):
        """Preimage of a quotient subspace (contains ``W``)."""
        return rref([self.lift_vector(u) for u in T] + list(self.W), self.p)[0]


def subspaces_between(d, p, lower=(), upper=None):
    """All subspaces ``S`` with ``lower ⊆ S ⊆ upper`` in ``F_p^d``.

    Order: dimension ascending, then the order of :func:`subspaces_of_dim`
    in the quotient ``upper/lower``.
    """
    if upper is None:
        upper = tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))
    lower = span(lower, p)
    upper = span(upper, p)
    # coordinates of upper/lower: express through a basis of upper
    ub = list(upper)
    m = len(ub)
    low_coords = [_coords_in(ub, v, p) for v in lower]
    Q = VecQuotient(m, low_coords, p)
    for k in range(Q.dim + 1):
        for T in subspaces_of_dim(Q.dim, k, p):
            coords = Q.lift_space(T)
            yield span([_combine(ub, c, p) for c in coords], p)


def _coords_in(basis, v, p):
    """Coordinates of ``v`` in an RREF ``basis`` (``v`` must lie in the span)."""
    piv = _pivots(basis)
    return [v[c] % p for c in piv]


def _combine(basis, coeffs, p):
    d = len(basis[0]) if basis else 0
    out = [0] * d
    for a, b in zip(coeffs, basis):
        if a:
            for t in range(d):
                out[t] = (out[t] + a * b[t]) % p
    return out


def complement_summands(d, U, p, lower=(), proper=False, min_dim=0):
    """All ``S ⊆ F_p^d`` with ``S + U = F_p^d`` (and ``S ⊇ lower``).

    Parametrization: fix a complement ``W = <w_1..w_t>`` of ``U``; every such
    ``S`` is ``U' + <w_i + t_i>`` for a unique subspace ``U' ⊆ U`` and
    representatives ``t_i`` of ``U / U'``.  A lower bound is handled by
    passing to ``F_p^d / lower``.  With ``proper`` the whole space is
    omitted; ``min_dim`` skips summands of smaller dimension.
    """
    lower = span(lower, p)
    if lower:
        Q = VecQuotient(d, lower, p)
        for S in complement_summands(Q.dim, Q.project_space(U), p, proper=proper,
                                     min_dim=min_dim - len(lower)):
            yield Q.lift_space(S)
        return
    U, upiv = rref(U, p)
    m = len(U)
    W = [tuple(1 if i == j else 0 for i in range(d)) for j in range(d) if j not in upiv]
    full = tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))
    for k in range(max(0, min_dim - len(W)), m + 1):
        for Uc in subspaces_of_dim(m, k, p):
            # U' in coordinates of U; representatives of U/U' from its free positions
            Qu = VecQuotient(m, Uc, p)
            reps = [_combine(U, Qu.lift_vector(e), p)
                    for e in (tuple(1 if i == j else 0 for i in range(Qu.dim))
                              for j in range(Qu.dim))]
            Uprime = [_combine(U, c, p) for c in Uc]
            for vals in product(range(p), repeat=len(W) * len(reps)):
                rows = list(Uprime)
                for i, w in enumerate(W):
                    v = list(w)
                    for j, r in enumerate(reps):
                        a = vals[i * len(reps) + j]
                        if a:
                            for t in range(d):
                                v[t] = (v[t] + a * r[t]) % p
                    rows.append(v)
                S = span(rows, p)
                if proper and S == full:
                    continue
                yield S


def complement_summands_in(ambient, U, p, lower=(), proper=False, min_dim=0):
    """Subspaces ``S`` of ``ambient`` with ``S + U = ambient`` (``U ⊆ ambient``)."""
    amb = span(ambient, p)
    if not amb:
        if min_dim <= 0 and not proper:
            yield ()
        return
    m = len(amb)
    Uc = [_coords_in(amb, v, p) for v in span(U, p)]
    lc = [_coords_in(amb, v, p) for v in span(lower, p)]
    for S in complement_summands(m, Uc, p, lower=lc, proper=proper, min_dim=min_dim):
        yield span([_combine(amb, c, p) for c in S], p) if S else ()


def biprojective_subspaces(V1, V2, p, d=None, min_dim=0):
    """All ``S ⊆ V1 ⊕ V2`` with both projections surjective.

    ``V1`` and ``V2`` are bases (lists of vectors in ``F_p^d``) of
    subspaces with trivial intersection.  Each ``S`` is the graph of a
    surjection ``V1 -> V2 / W2`` plus ``W2 = S ∩ V2``.
    """
    V1 = [tuple(v) for v in span(V1, p)]
    V2 = [tuple(v) for v in span(V2, p)]
    if d is None:
        d = len((V1 or V2)[0]) if (V1 or V2) else 0
    if len(rref(V1 + V2, p)[0]) != len(V1) + len(V2):
        raise ValueError("not a direct sum")
    if len(V1) < len(V2):
        V1, V2 = V2, V1
    r, s = len(V1), len(V2)
    for k in range(max(0, min_dim - r), s + 1):
        for W2c in subspaces_of_dim(s, k, p):
            Q = VecQuotient(s, W2c, p)
            comp = [_combine(V2, Q.lift_vector(e), p)
                    for e in (tuple(1 if i == j else 0 for i in range(Q.dim))
                              for j in range(Q.dim))]
            W2 = [_combine(V2, c, p) for c in W2c]
            t = len(comp)
            for vals in product(range(p), repeat=r * t):
                mat = [vals[i * t:(i + 1) * t] for i in range(r)]
                if t and len(rref(mat, p)[0]) != t:
                    continue
                rows = list(W2)
                for i, v in enumerate(V1):
                    w = list(v)
                    for j in range(t):
                        a = mat[i][j]
                        if a:
                            for x in range(d):
                                w[x] = (w[x] + a * comp[j][x]) % p
                    rows.append(w)
                yield span(rows, p)


def _apply(mat, v, p):
    """Row vector ``v`` times matrix ``mat``."""
    n = len(mat[0])
    out = [0] * n
    for a, row in zip(v, mat):
        if a:
            for t in range(n):
                out[t] = (out[t] + a * row[t]) % p
    return out


def _closure(rows, actions, p):
    basis, piv = rref(rows, p)
    todo = list(basis)
    basis = list(basis)
    while todo:
        v = todo.pop()
        for A in actions:
            w = _apply(A, v, p)
            if not span_contains(basis, piv, w, p):
                basis, piv = rref(basis + [w], p)
                basis = list(basis)
                todo.append(w)
    return tuple(tuple(b) for b in rref(basis, p)[0])


def invariant_intermediate(d, actions, p, lower=(), upper=None, predicate=None, max_dim=None):
    """All subspaces invariant under every matrix in ``actions``.

    Enumerates ``lower ⊆ S ⊆ upper`` (both must be invariant) by growing
    submodules one cyclic submodule at a time, so only submodules are ever
    visited.  ``predicate`` filters the result; ``max_dim`` prunes the
    search.  Results are sorted by (dimension, RREF).
    """
    if upper is None:
        upper = tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))
    upper = span(upper, p)
    start = _closure(list(lower), actions, p)
    seen = {start}
    frontier = [start]
    ub = list(upper)
    while frontier:
        nxt = []
        for M in frontier:
            if max_dim is not None and len(M) >= max_dim:
                continue
            Mb, Mp = rref(M, p) if M else ((), ())
            # one representative per line of upper/M suffices
            m = len(ub)
            Q = VecQuotient(m, [_coords_in(ub, v, p) for v in M], p)
            for T in subspaces_of_dim(Q.dim, 1, p):
                v = _combine(ub, Q.lift_vector(T[0]), p)
                N = _closure(list(M) + [v], actions, p)
                if N not in seen and (max_dim is None or len(N) <= max_dim):
                    seen.add(N)
                    nxt.append(N)
        frontier = nxt
    out = [S for S in seen if predicate is None or predicate(S)]
    return sorted(out, key=lambda S: (len(S), S))


def invariant_by_filter(d, actions, p, lower=(), upper=None, predicate=None):
    """Reference implementation: filter all intermediate subspaces."""
    out = []
    for S in subspaces_between(d, p, lower, upper):
        basis, piv = rref(S, p)
        if all(span_contains(basis, piv, _apply(A, v, p), p) for A in actions for v in S):
            if predicate is None or predicate(S):
                out.append(S)
    return sorted(out, key=lambda S: (len(S), S))


# ---------------------------------------------------------------- lattices

class QuotientSpace:
    """``top / bottom`` as an F_p-vector space, for ``p*top ⊆ bottom ⊆ top``.

    Coordinates are taken in the HNF basis of ``top``: the image of
    ``bottom`` is an RREF subspace of ``F_p^n`` and the quotient uses the
    non-pivot positions, whose basis vectors of ``top`` are the lifts.
    """

    def __init__(self, top, bottom, p, check=True):
        self.top = top
        self.bottom = bottom
        self.p = p
        n = top.degree
        self.n = n
        rows = []
        for r in bottom.hnf:
            c = self._top_coords(r, bottom.den)
            if c is None:
                raise ValueError("bottom is not contained in top")
            rows.append(c)
        if check:
            # p*top ⊆ bottom: each p*t_i must lie in bottom
            for r in top.hnf:
                if not bottom.contains_vector([p * x for x in r], top.den):
                    raise ValueError("p*top is not contained in bottom")
        self.vq = VecQuotient(n, rows, p)
        self.dim = self.vq.dim

    def _top_coords(self, v, vden=1):
        top = self.top
        w = []
        for x in v:
            q, r = divmod(x * top.den, vden)
            if r:
                return None
            w.append(q)
        return solve_upper(top.hnf, w, integral=True)

    def project(self, v, vden=1):
        """Quotient coordinates of the element ``v / vden`` of ``top``."""
        c = self._top_coords(v, vden)
        if c is None:
            raise ValueError("element not in top")
        return self.vq.project(c)

    def image(self, L):
        """Subspace ``(L + bottom)/bottom`` for a sublattice ``L`` of ``top``."""
        return span([self.project(r, L.den) for r in L.hnf], self.p)

    def lift_vector(self, u):
        c = self.vq.lift_vector(u)
        n = self.n
        H = self.top.hnf
        v = [0] * n
        for i, ci in enumerate(c):
            if ci:
                for k in range(n):
                    v[k] += ci * H[i][k]
        return v

    def lift(self, S):
        """The lattice ``φ^{-1}(S)`` between ``bottom`` and ``top``."""
        B = self.bottom
        d = self.top.den
        rows = [[x * (d // B.den) if d % B.den == 0 else x for x in r] for r in B.hnf]
        if d % B.den:
            raise ValueError("incompatible denominators")
        rows += [self.lift_vector(u) for u in S]
        modulus = (d // B.den) * B.det()
        return Lattice(self.top.frame, d, hnf(rows, self.n, modulus))


def quotient_space(top, bottom, p):
    return QuotientSpace(top, bottom, p)
