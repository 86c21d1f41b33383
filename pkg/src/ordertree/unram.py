"""Successor radicals of an order ``O`` in the case ``I·O = pO``.

Such radicals are ``I = pH`` for lattices ``H`` with ``1 ∈ H ⊆ O``,
``pH² ⊆ H`` and ``H^r = O``.  They are assembled in three stages:

1. start lattices ``H ⊇ J`` (from the étale quotient, a table lookup) and
   ``H ⊇ Ô`` (``Ô`` the largest order with radical ``pO + J²``), found by
   a module generation test in ``J / (pO + J²)``;
2. gluing of the two start sets through subspaces of
   ``O / (Z + pO + J²)`` with surjective projections, then complements
   against the image of ``J²``;
3. descent: ``H' ⊆ H`` with ``H' + p^i O = H`` inside ``H / (Z + pH²)``.
"""

from .arith import is_in_hnf, rref
from .fplinalg import (QuotientSpace, VecQuotient, _closure, biprojective_subspaces,
                       complement_summands, complement_summands_in, subspaces_between,
                       is_subspace_of, subspace_intersection)

__all__ = ["Restriction", "start1_lattices", "start2_lattices", "unram_radical_lattices",
           "hat_order"]


class Restriction:
    """Constraints for overorder enumeration: everything must contain ``Λ``.

    ``lam`` is the p-part ``Λ + p^m Z_K`` of the order, ``jlam`` its
    p-radical.  Lattices ``H`` with ``pH`` a radical of an order over ``Λ``
    contain ``B = Z + (1/p) J_p(Λ)`` and are ``Λ``-stable.
    """

    def __init__(self, cache, lam):
        self.cache = cache
        self.lam = lam
        self.jlam = _intersect_mod(cache, lam, cache.J0)
        self.exp = cache.exponent(lam)
        p = cache.p
        rows = list(self.jlam.hnf)
        if all(x % p == 0 for r in rows for x in r):
            self.B = cache.lat([cache.one] + [[x // p for x in r] for r in rows])
        else:
            self.B = None
        self.B_r = rref([cache.rcoords(r) for r in self.B.hnf], p)[0] if self.B is not None else ()
        self.lam_r = rref([cache.rcoords(r) for r in lam.hnf], p)[0]

    def contains_lam(self, L):
        return self.lam.issubset(L)

    def stable(self, H):
        c = self.cache
        mul = c.mul
        D = c.D
        for a in self.lam.hnf:
            for h in H.hnf:
                if not is_in_hnf(H.hnf, [x % D for x in mul(a, h)]):
                    return False
        return True


def _intersect_mod(cache, A, B):
    return cache.lat([list(r) for r in A.intersect(B).hnf])


def hat_order(cache, node):
    """``(J2, Ô)``: ``J2 = pO + J²`` and the largest order with radical ``J2``."""
    O = node.lattice
    J = node.radical
    J2 = cache.ladd(cache.lmul(J, J), cache.pmul(cache.p, O))
    ro2 = cache.largest_root_for(J2, node.k)
    return J2, cache.largest_order(J2, ro2)


def _order_generators(cache, node):
    """Frame vectors lifting a basis of ``O / J`` (excluding nothing)."""
    return [cache.beta_lift(node.ro, t) for t in node.k.sub]


def start1_lattices(cache, node, restrict=None):
    """Lattices ``Z + J ⊆ H ⊆ O`` with ``H^r = O`` (read off the cached table)."""
    I = node.radical
    ro = node.ro
    low = ()
    if restrict is not None and restrict.B is not None:
        low = restrict.B_r
        if not is_subspace_of(low, ro.sub, cache.p):
            return []
    Ts = cache.start1(ro, low).get(node.k.idx, [])
    base = list(I.hnf)
    return [cache.lat(base + [cache.beta_lift(ro, t) for t in T]) for T in Ts]


def start2_lattices(cache, node, J2=None, Ohat=None):
    """Lattices ``Ô ⊆ H ⊆ O`` with ``H^r = O``: ``H = L + Ô`` with ``L·O = J``."""
    O = node.lattice
    J = node.radical
    if node.k.dim == 1:
        # O = Z + J: nothing to search
        return [O]
    if J2 is None:
        J2, Ohat = hat_order(cache, node)
    p = cache.p
    D = cache.D
    mul = cache.mul
    Q = QuotientSpace(J, J2, p, check=False)
    d = Q.dim
    if d == 0:
        return [O]
    lifts = [Q.lift_vector(tuple(1 if i == j else 0 for i in range(d))) for j in range(d)]
    acts = []
    for g in _order_generators(cache, node):
        acts.append([Q.project([x % D for x in mul(g, v)]) for v in lifts])
    full = tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))
    base = list(Ohat.hnf)
    out = []
    for S in subspaces_between(d, p):
        if not S or _closure(list(S), acts, p) != full:
            continue
        out.append(cache.lat(base + [Q.lift_vector(u) for u in S]))
    return out


def _min_dim(cache, exp_top, dim_top, h, e):
    """Smallest dimension of ``T ⊆ top/bottom`` whose preimage ``H`` can still give a radical.

    ``O_{pH} ⊆ H`` and ``O_{pH} / pH`` is étale, so
    ``[Z_K : O_{pH}] >= [Z_K : H] p^(n - h)`` where ``h`` is the rank of the
    image of ``H`` in ``Z_K / J_p(Z_K)``.  That image is already fixed by
    ``H + J_p(O)``, so ``h`` is constant along gluing and descent.
    """
    if e is None:
        return 0
    return exp_top + dim_top + cache.n - h - e


class Glued:
    """The glued start set: lattices ``H ⊇ Z + pO + J²`` satisfying ``H^r = O``.

    ``ambs`` maps each such ``H`` (as its image in ``O/(Z + pO)``) to the
    residue rank ``h`` of ``H``.
    """

    def __init__(self, cache, node, e=None, restrict=None):
        p = cache.p
        O = node.lattice
        J = node.radical
        self.ambs = {}
        self.lowB = ()
        self.J2, self.Ohat = J2, Ohat = hat_order(cache, node)
        self.ZpO = ZpO = cache.lat([cache.one] + [[p * x for x in r] for r in O.hnf])
        self.Q = Qp = QuotientSpace(O, ZpO, p, check=False)
        self.U = U = Qp.image(J2)
        if restrict is not None and (restrict.B is None or not restrict.B.issubset(O)):
            return
        L1s = start1_lattices(cache, node, restrict)
        L2s = start2_lattices(cache, node, J2, Ohat)
        if restrict is not None:
            L2s = [L for L in L2s if restrict.B.issubset(L)]
        if not L1s or not L2s:
            return
        VQ = VecQuotient(Qp.dim, U, p)
        A = VQ.project_space(Qp.image(J))
        Bs = VQ.project_space(Qp.image(Ohat))
        # residue rank of H is that of H + J = L1, the dimension of its start set
        hmap = {}
        for L in L1s:
            U2 = subspace_intersection(VQ.project_space(Qp.image(L)), Bs, p)
            hmap[U2] = len(rref([cache.rcoords(r) for r in L.hnf] + [cache.rcoords(cache.one)], p)[0])
        U1s = sorted({subspace_intersection(VQ.project_space(Qp.image(L)), A, p) for L in L2s})
        self.lowB = lowB = Qp.image(restrict.B) if restrict is not None else ()
        lowBV = VQ.project_space(lowB) if lowB else ()
        dimV = VQ.dim
        lprime = {}
        for U2 in sorted(hmap):
            h = hmap[U2]
            need = _min_dim(cache, node.exp, dimV, h, e)
            if need > len(U2) + max((len(U1) for U1 in U1s), default=0):
                continue
            for U1 in U1s:
                for S in biprojective_subspaces(U1, U2, p, dimV, min_dim=need):
                    if lowBV and not is_subspace_of(lowBV, S, p):
                        continue
                    lprime[S] = h
        for S in sorted(lprime):
            amb = VQ.lift_space(S)
            if restrict is not None and not restrict.stable(self.lift(cache, amb)):
                continue
            self.ambs[amb] = lprime[S]

    def lift(self, cache, S):
        return _lift(cache, self.Q, self.ZpO, S)


def unram_radical_lattices(cache, node, e, restrict=None):
    """All radicals ``I = pH ⊆ pO`` of successors of ``node`` (pruned by ``p^e``)."""
    p = cache.p
    n = cache.n
    O = node.lattice
    G = Glued(cache, node, e, restrict)
    Qp, U = G.Q, G.U
    dV = Qp.dim
    exp0 = node.exp
    level = {}
    for amb, h in G.ambs.items():
        for T in complement_summands_in(amb, U, p, lower=G.lowB if restrict is not None else (),
                                        min_dim=_min_dim(cache, exp0, dV, h, e)):
            H = G.lift(cache, T)
            if restrict is not None and not restrict.stable(H):
                continue
            level[H.hnf] = (H, exp0 + dV - len(T), h)
    found = dict(level)
    pO = cache.pmul(p, O)
    pw = pO
    for i in range(1, n - 2):
        nxt = {}
        for key in sorted(level):
            H, ex, h = level[key]
            HH = cache.lmul(H, H)
            bottom = cache.lat([cache.one] + [[p * x for x in r] for r in HH.hnf])
            Q = QuotientSpace(H, bottom, p, check=False)
            Ui = Q.image(pw)
            low = Q.image(restrict.B) if restrict is not None else ()
            need = _min_dim(cache, ex, Q.dim, h, e)
            for T in complement_summands(Q.dim, Ui, p, lower=low, proper=True, min_dim=need):
                H2 = _lift(cache, Q, bottom, T)
                if H2.hnf in nxt or H2.hnf in found:
                    continue
                if restrict is not None and not restrict.stable(H2):
                    continue
                nxt[H2.hnf] = (H2, ex + Q.dim - len(T), h)
        found.update(nxt)
        level = nxt
        pw = cache.pmul(p, pw)
    out = []
    for key in sorted(found):
        out.append(cache.pmul(p, found[key][0]))
    return out


def _lift(cache, Q, bottom, S):
    return cache.lat(list(bottom.hnf) + [Q.lift_vector(u) for u in S])
