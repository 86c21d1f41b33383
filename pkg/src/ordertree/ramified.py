"""Successor radicals when ``I·O`` may differ from ``pO``.

For a radical ``I`` of a successor of ``O`` the ideal ``a = I·O`` is
invertible and lies between ``pO`` and ``J = J_p(O)``.  Invertible ideals of
``O`` over ``p`` are inherited from the tree parent (Fröhlich's index
criterion); for each ``a ≠ pO`` the radicals with ``I·O = a`` start with
those containing ``a·b0`` (``b0 = J² + pO``) and then descend along
``I_j ⊇ I_{j+1}`` with ``I_{j+1} + a^j b0 = I_j``.
"""

import random

from .arith import det, factor_int, is_in_hnf
from .ffield import seed_from_env
from .fplinalg import (QuotientSpace, _apply, complement_summands, invariant_intermediate,
                       span, subspaces_between)
from .orders import maximal_order
from .unram import Glued, hat_order, unram_radical_lattices

__all__ = [
    "InvertibleIdealSet", "is_invertible", "invertible_ideals_over_p", "local_generator",
    "unit_group_generators", "ram_start_radicals", "ram_descend", "radicals_for_order",
    "SearchBudgetExceeded",
]


class SearchBudgetExceeded(RuntimeError):
    pass


# ---------------------------------------------------------------- invertibility

def is_invertible(a, O, ZK=None):
    """Fröhlich: ``a`` is invertible in ``O`` iff ``[Z_K a : a] = [Z_K : O]``.

    ``a`` and ``O`` are lattices (or an :class:`Order`) in a common frame;
    ``ZK`` is the maximal order in that frame (computed if omitted).
    """
    O = getattr(O, "lattice", O)
    if not (O * a).issubset(a):
        raise ValueError("not an ideal of the order")
    if ZK is None:
        ZK = maximal_order(O.frame.field).lattice.to_frame(O.frame)
    return a.index_in(ZK * a) == O.index_in(ZK)


class InvertibleIdealSet:
    """Invertible ideals of ``O`` between ``pO`` and ``J_p(O)``.

    ``primes[i]`` are the primes of ``O`` over ``p``, ``q[i]`` the primary
    components of ``pO`` and ``parts[i]`` the invertible ``primes[i]``-primary
    ideals; ``ideals`` holds all products (one factor per prime).
    """

    def __init__(self, order, p, primes, q, parts, trivial=False):
        self.order = order
        self.p = p
        self.primes = primes
        self.q = q
        self.parts = parts
        self.trivial = trivial
        self.ideals = []

    def __len__(self):
        return len(self.ideals)


def _prime_ideals(cache, node):
    """Primes of ``O`` over ``p`` from the block structure of ``k = O + J_p(Z_K)``."""
    k = node.k
    base = list(node.radical.hnf)
    out = []
    for j in range(len(k.ypowers)):
        others = [v for jj, pw in enumerate(k.ypowers) if jj != j for v in pw]
        out.append(cache.lat(base + [cache.beta_lift(node.ro, t) for t in others]))
    return out


def _power(cache, A, m):
    R = A
    for _ in range(m - 1):
        R = cache.lmul(R, A)
    return R


def _products(cache, lists):
    out = [None]
    for lst in lists:
        out = [b if a is None else cache.lmul(a, b) for a in out for b in lst]
    return out


def invertible_ideals_over_p(cache, node):
    """The :class:`InvertibleIdealSet` of ``node``, computed from its tree parent."""
    if node.inv is not None:
        return node.inv
    p = cache.p
    O = node.lattice
    pO = cache.pmul(p, O)
    ZK = cache.ZK.lattice
    if cache.lmul(ZK, node.radical).hnf == cache.pmul(p, ZK).hnf:
        inv = InvertibleIdealSet(O, p, None, None, None, trivial=True)
        inv.ideals = [pO]
        node.inv = inv
        return inv
    primes = _prime_ideals(cache, node)
    n = cache.n
    q = [cache.ladd(pO, _power(cache, P, n)) for P in primes]
    if node.parent is None:
        # Z_K: the primary ideals are the powers P^k, 1 <= k <= e(P)
        parts = []
        for P, Q in zip(primes, q):
            lst = [P]
            while lst[-1].hnf != Q.hnf:
                lst.append(cache.ladd(cache.lmul(lst[-1], P), pO))
            parts.append(lst)
    else:
        par = invertible_ideals_over_p(cache, node.parent)
        Lam = node.parent.lattice
        parts = []
        for P, Q in zip(primes, q):
            parts.append(_primary_invertible(cache, O, Lam, par, P, Q))
    inv = InvertibleIdealSet(O, p, primes, q, parts)
    inv.ideals = _products(cache, parts)
    node.inv = inv
    return inv


def _primary_invertible(cache, O, Lam, par, P, Q):
    """Invertible ``P``-primary ideals of ``O`` lying over parent ideals."""
    p = cache.p
    QL = cache.lmul(Lam, Q)
    PL = cache.lmul(Lam, P)
    # parent primary parts whose primes contain P
    sel = [lst for Pl, lst in zip(par.primes, par.parts) if P.issubset(Pl)]
    cands = _products(cache, [lst for lst in sel]) if sel else []
    out = {}
    expO = cache.exponent(O)
    expL = cache.exponent(Lam)
    gens = [list(r) for r in O.hnf]
    for A in cands:
        if not (QL.issubset(A) and A.issubset(PL)):
            continue
        top = _intersect(cache, A, P)
        Qs = QuotientSpace(top, Q, p, check=False)
        d = Qs.dim
        lifts = [Qs.lift_vector(tuple(1 if i == j else 0 for i in range(d))) for j in range(d)]
        acts = [[Qs.project([x % cache.D for x in cache.mul(g, v)]) for v in lifts] for g in gens]
        # [O : a] = [Lam : A] fixes dim(a / Q)
        target = (cache.exponent(Q) - expO) - (cache.exponent(A) - expL)
        if target < 0 or target > d:
            continue
        for S in invariant_intermediate(d, acts, p, max_dim=target,
                                        predicate=lambda S, t=target: len(S) == t):
            a = cache.lat(list(Q.hnf) + [Qs.lift_vector(u) for u in S])
            if cache.lmul(Lam, a).hnf == A.hnf:
                out[a.hnf] = a
    return [out[k] for k in sorted(out)]


def _intersect(cache, A, B):
    return cache.lat([list(r) for r in A.intersect(B).hnf])


# ---------------------------------------------------------------- local data

def _norm(cache, x):
    mul = cache.mul
    n = cache.n
    rows = [mul(x, [1 if i == j else 0 for j in range(n)]) for i in range(n)]
    return det(rows)


def local_generator(cache, a, O, seed=None):
    """``x ∈ a`` with ``[a : xO]`` prime to ``p``, so ``a_p = x O_p``.

    Scans combinations of the HNF basis of ``a`` with coefficients in
    ``[0, p)`` in counting order, then seeded random combinations.
    """
    p = cache.p
    n = cache.n
    k = cache.exponent(a) - cache.exponent(O)
    rows = [list(r) for r in a.hnf]

    def comb(c):
        x = [0] * n
        for ci, r in zip(c, rows):
            if ci:
                for t in range(n):
                    x[t] += ci * r[t]
        return x

    total = p ** len(rows)
    for idx in range(1, min(total, 1 << 16)):
        c = []
        m = idx
        for _ in rows:
            m, r = divmod(m, p)
            c.append(r)
        x = comb(c)
        if _is_local_gen(cache, x, a, O, k):
            return x
    rng = random.Random(seed_from_env() if seed is None else seed)
    for _ in range(1 << 14):
        x = comb([rng.randrange(p * p) for _ in rows])
        if _is_local_gen(cache, x, a, O, k):
            return x
    raise SearchBudgetExceeded("no local generator found")


def _is_local_gen(cache, x, a, O, k):
    """``v_p [O : xO] = v_p [O : a]``, i.e. ``v_p N(x) = k``."""
    if not any(x):
        return False
    N = abs(_norm(cache, x))
    p = cache.p
    v = 0
    while N % p == 0:
        N //= p
        v += 1
    return v == k


def unit_group_generators(cache, node, b0=None):
    """Generators of ``(O / (J² + pO))^*`` as frame vectors.

    Lifts of generators of the residue fields (one per prime, equal to 1 at
    the other primes) together with ``1 + b`` for ``b`` in a basis of
    ``J / (J² + pO)``.
    """
    p = cache.p
    k = node.k
    one = cache.rcoords(cache.one)
    gens = []
    for j in range(len(k.degs)):
        # generator of the j-th residue field, identity on the other blocks
        e_j = _block_identity(cache, k, j)
        gen = _block_generator(cache, k, j)
        u = [(o - a + b) % p for o, a, b in zip(one, e_j, gen)]
        gens.append(cache.beta_lift(node.ro, u))
    if b0 is None:
        b0 = hat_order(cache, node)[0]
    Qs = QuotientSpace(node.radical, b0, p, check=False)
    for j in range(Qs.dim):
        b = Qs.lift_vector(tuple(1 if i == j else 0 for i in range(Qs.dim)))
        gens.append([x + y for x, y in zip(cache.one, b)])
    return gens


def _block_identity(cache, k, j):
    R = cache.R
    y = k.ypowers[j][0]
    q = cache.p ** k.degs[j]
    return R.pow(y, q - 1)


def _block_generator(cache, k, j):
    """Residue vector generating ``F_{p^d}^*`` inside block ``j`` of ``k``."""
    R = cache.R
    p = cache.p
    d = k.degs[j]
    q = p ** d
    basis = k.ypowers[j]
    e_j = _block_identity(cache, k, j)
    order = q - 1
    fac = list(factor_int(order)) if order > 1 else []
    for idx in range(1, q):
        c = []
        m = idx
        for _ in range(d):
            m, r = divmod(m, p)
            c.append(r)
        v = [0] * cache.m0
        for ci, b in zip(c, basis):
            if ci:
                v = [(x + ci * y) % p for x, y in zip(v, b)]
        if list(R.pow(v, order)) != list(e_j):
            continue
        if all(list(R.pow(v, order // r)) != list(e_j) for r in fac):
            return v
    raise AssertionError("no generator of the residue field")


# ---------------------------------------------------------------- start sets

def _cond_ok(cache, I, a, O, twos):
    """``I² ⊆ I``, ``p ∈ I``, ``I·O = a`` and ``I^(2^s) = a^(2^s)``."""
    p = cache.p
    if not is_in_hnf(I.hnf, [p] + [0] * (cache.n - 1)):
        return False
    I2 = cache.lmul(I, I)
    if not I2.issubset(I):
        return False
    if cache.lmul(I, O).hnf != a.hnf:
        return False
    P = I
    A = a
    for _ in range(twos):
        P = cache.lmul(P, P)
        A = cache.lmul(A, A)
    return P.hnf == A.hnf


def _twos(n):
    s = 0
    while 2 ** s < n - 1:
        s += 1
    return s


def ram_start_radicals(cache, node, a, e=None, restrict=None, exhaustive=None, ram_exponent=None):
    """Radicals ``I`` with ``I·O = a`` and ``a(J² + pO) ⊆ I`` (``a ≠ pO`` invertible).

    With fewer primes than ``p`` (or ``exhaustive=True``) the lattices
    between ``pZ + a(J² + pO)`` and ``a`` are scanned; otherwise ``I``
    runs over ``xH + p^N O`` for ``H`` in the unit orbits of the glued
    start set and ``x`` a local generator of ``a``.
    """
    p = cache.p
    n = cache.n
    O = node.lattice
    b0 = hat_order(cache, node)[0]
    ab0 = cache.lmul(a, b0)
    twos = _twos(n)
    s = len(node.k.degs)
    if exhaustive is None:
        exhaustive = p < s
    out = {}
    kdim = node.k.dim
    if exhaustive:
        bottom = cache.ladd(ab0, ab0, [[p] + [0] * (n - 1)])
        Q = QuotientSpace(a, bottom, p, check=False)
        for S in subspaces_between(Q.dim, p):
            I = cache.lat(list(bottom.hnf) + [Q.lift_vector(u) for u in S])
            if e is not None and cache.exponent(I) - kdim > e:
                continue
            if _cond_ok(cache, I, a, O, twos):
                out[I.hnf] = I
    else:
        N = n if ram_exponent is None else ram_exponent
        G = Glued(cache, node)
        x = local_generator(cache, a, O)
        gens = unit_group_generators(cache, node, b0)
        V = QuotientSpace(O, b0, p, check=False)
        d = V.dim
        lifts = [V.lift_vector(tuple(1 if i == j else 0 for i in range(d))) for j in range(d)]
        acts = [[V.project([t % cache.D for t in cache.mul(g, v)]) for v in lifts] for g in gens]
        seen = set()
        todo = []
        for amb in G.ambs:
            H = G.lift(cache, amb)
            S = V.image(H)
            if S not in seen:
                seen.add(S)
                todo.append(S)
        while todo:
            S = todo.pop()
            for A in acts:
                T = span([_apply(A, v, p) for v in S], p)
                if T not in seen:
                    seen.add(T)
                    todo.append(T)
        for S in sorted(seen):
            H = cache.lat(list(b0.hnf) + [V.lift_vector(u) for u in S])
            I = cache.lat([cache.mul(x, r) for r in H.hnf] + [[p ** N * t for t in r] for r in O.hnf])
            if not ab0.issubset(I):
                continue
            if e is not None and cache.exponent(I) - kdim > e:
                continue
            if _cond_ok(cache, I, a, O, twos):
                out[I.hnf] = I
    res = [out[k] for k in sorted(out)]
    if restrict is not None:
        res = [I for I in res if restrict.jlam.issubset(I)]
    return res


def ram_descend(cache, node, a, I, j, b0=None, e=None, restrict=None):
    """Children ``X`` of ``I = I_j``: ``I² + a^(j+1) b0 + pZ ⊆ X ⊆ I``, ``X + a^j b0 = I``."""
    p = cache.p
    n = cache.n
    if b0 is None:
        b0 = hat_order(cache, node)[0]
    aj = cache.lmul(_power(cache, a, j), b0)
    aj1 = cache.lmul(a, aj)
    bottom = cache.ladd(cache.lmul(I, I), aj1, [[p] + [0] * (n - 1)])
    Q = QuotientSpace(I, bottom, p, check=False)
    U = Q.image(aj)
    low = Q.image(restrict.jlam) if restrict is not None else ()
    need = 0
    if e is not None:
        # [Z_K : O_X] >= [Z_K : X] / p^dim(k) and [I : X] = p^(dim Q - dim T)
        need = cache.exponent(I) + Q.dim - node.k.dim - e
    out = []
    for T in complement_summands(Q.dim, U, p, lower=low, min_dim=max(0, need)):
        out.append(cache.lat(list(bottom.hnf) + [Q.lift_vector(u) for u in T]))
    return out


def radicals_for_order(cache, node, e=None, restrict=None, ram_exponent=None, exhaustive=None):
    """All radicals of successors of ``node``, sorted by HNF."""
    inv = invertible_ideals_over_p(cache, node)
    p = cache.p
    n = cache.n
    O = node.lattice
    pO = cache.pmul(p, O)
    out = {}
    for a in inv.ideals:
        if a.hnf == pO.hnf:
            for I in unram_radical_lattices(cache, node, e, restrict):
                out[I.hnf] = I
            continue
        if restrict is not None and not restrict.jlam.issubset(a):
            continue
        b0 = hat_order(cache, node)[0]
        level = ram_start_radicals(cache, node, a, e, restrict, exhaustive, ram_exponent)
        found = {I.hnf: I for I in level}
        for j in range(1, n - 1):
            nxt = {}
            for I in level:
                for X in ram_descend(cache, node, a, I, j, b0, e, restrict):
                    if X.hnf not in found and X.hnf not in nxt:
                        nxt[X.hnf] = X
            found.update(nxt)
            level = [nxt[k] for k in sorted(nxt)]
        out.update(found)
    return [out[k] for k in sorted(out)]
