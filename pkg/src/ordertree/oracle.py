"""Independent enumerations used to cross-check the successor tree.

* :func:`brute_force_orders` scans every lattice between ``p^e Z_K`` and
  ``Z_K`` (as Hermite normal forms) and keeps the rings.
* :func:`orders_by_subalgebras` grows the set of orders from ``Z_K`` by
  repeatedly taking all subrings ``pO ⊆ Λ ⊆ O``; every order of p-power
  index arises this way since ``pO ⊆ Λ`` whenever ``O`` is a minimal
  overorder of ``Λ``.
* :func:`oracle_maximal_suborders` constructs the maximal suborders of an
  order of p-power index directly by type (residue field, pair of primes,
  ramified prime); iterating it gives a third, structurally different
  enumeration.
"""

from itertools import product

from .arith import factor_int, hnf_det, is_in_hnf, nullspace, rref, span_contains
from .ffield import fq_find_root
from .fplinalg import QuotientSpace, invariant_intermediate, subspaces_between
from .lattice import Lattice
from .orders import Order, maximal_order_frame, primes_above, residue_algebra
from .tree import p_suborders

__all__ = ["BudgetExceeded", "brute_force_orders", "orders_by_subalgebras",
           "oracle_maximal_suborders", "orders_by_maximal_suborders", "extension_type",
           "cross_check"]


class BudgetExceeded(RuntimeError):
    pass


def _is_ring(frame, rows):
    n = len(rows)
    mul = frame.mul_vec
    for i in range(n):
        for j in range(i, n):
            if not is_in_hnf(rows, mul(rows[i], rows[j])):
                return False
    return True


def _hnf_lattices(n, p, e):
    """Upper triangular HNFs with p-power pivots of total exponent at most ``e``."""

    def rec(i, acc, pivots, left):
        if i < 0:
            yield [list(r) for r in acc]
            return
        for a in range(left + 1):
            d = p ** a
            ranges = [range(pivots[j]) for j in range(i + 1, n)]
            for tail in product(*ranges):
                row = [0] * n
                row[i] = d
                for j, t in zip(range(i + 1, n), tail):
                    row[j] = t
                yield from rec(i - 1, [row] + acc, {**pivots, i: d}, left - a)

    yield from rec(n - 1, [], {}, e)


def brute_force_orders(K, p, e, budget=2 ** 24):
    """All orders with index dividing ``p^e``, by scanning lattices ``p^e Z_K ⊆ L``."""
    n = K.degree
    if p ** (e * n) > budget:
        raise BudgetExceeded(f"p^(e n) = {p ** (e * n)} exceeds the budget")
    frame = maximal_order_frame(K)
    q = p ** e
    one = list(frame.one)
    out = []
    for rows in _hnf_lattices(n, p, e):
        # p^e Z_K ⊆ L
        if not all(is_in_hnf(rows, [q if i == j else 0 for j in range(n)]) for i in range(n)):
            continue
        if not is_in_hnf(rows, one):
            continue
        if _is_ring(frame, rows):
            out.append(Lattice.from_rows(frame, rows, 1, q))
    return sorted(out, key=lambda L: (L.det(), L.hnf))


def _subrings_over_pO(O, p):
    """Orders ``Λ`` with ``pO ⊆ Λ ⊊ O``."""
    frame = O.frame
    n = frame.degree
    pO = Lattice.from_rows(frame, [[p * x for x in r] for r in O.hnf], O.den)
    Q = QuotientSpace(O, pO, p, check=False)
    lifts = [Q.lift_vector(tuple(1 if i == j else 0 for i in range(n))) for j in range(n)]
    mul = frame.mul_vec
    den = O.den
    table = [[Q.project(mul(a, b), den * den) for b in lifts] for a in lifts]
    one = Q.project(list(frame.one))
    out = []
    for S in subspaces_between(n, p, lower=[one]):
        if len(S) == n:
            continue
        basis, piv = rref(S, p)
        ok = True
        for i, a in enumerate(basis):
            for b in basis[i:]:
                v = [0] * n
                for x, ra in zip(a, table):
                    if x:
                        for y, prod_ in zip(b, ra):
                            if y:
                                v = [(s + x * y * t) % p for s, t in zip(v, prod_)]
                if not span_contains(basis, piv, v, p):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(Q.lift(S))
    return out


def orders_by_subalgebras(K, p, e):
    """All orders of index dividing ``p^e`` by iterating subrings over ``pO``."""
    frame = maximal_order_frame(K)
    ZK = Lattice.identity(frame)
    bound = p ** e
    found = {ZK.hnf: ZK}
    todo = [ZK]
    while todo:
        O = todo.pop()
        if O.det() * p > bound:
            continue
        for L in _subrings_over_pO(O, p):
            if L.det() <= bound and L.hnf not in found:
                found[L.hnf] = L
                todo.append(L)
    return sorted(found.values(), key=lambda L: (L.det(), L.hnf))


def oracle_maximal_suborders(O, p, typed=False):
    """Maximal suborders ``Λ ⊊ O`` of p-power index, constructed by type.

    ``Λ ⊇ pO`` and ``Λ/pO`` is a maximal subalgebra ``B`` of ``A = O/pO``.
    Either ``B ⊇ J(A)``, and ``B/J`` is a maximal subalgebra of the product
    of residue fields: (1) one residue field shrunk to a maximal subfield,
    or (2) two residue fields of the same degree identified through one of
    their isomorphisms.  Or ``B + J = A``; then ``B`` contains the
    Teichmüller lift ``S`` of ``A/J`` and ``B = S + M`` with ``M``
    the preimage of an ``F_q``-hyperplane of ``P/(P² + pO)`` for a prime ``P``
    (3).  With ``typed`` the result is a list of ``(type, Λ)`` pairs.
    """
    Oo = O if isinstance(O, Order) else Order(O, certify=False)
    frame = Oo.frame
    R = residue_algebra(Oo, p)
    A = R.A
    primes = primes_above(Oo, p)
    out = {}

    def add(t, L):
        out[L.hnf] = (t, L)

    jrows = [list(b) for b in R.jbasis]
    comps = R.components

    def with_block(skip, block):
        rows = [R.lift(v) for t, c in enumerate(comps) if t not in skip for v in c.basis]
        rows += [R.lift(v) for v in block]
        return Oo.sub_lattice(rows + jrows, p)

    # (1) maximal subfields
    for i, comp in enumerate(comps):
        for r in _prime_divisors(comp.f):
            add(1, with_block((i,), _fixed_subfield(A, comp, comp.f // r, p)))
    # (2) identifications of two residue fields
    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            ci, cj = comps[i], comps[j]
            if ci.f != cj.f:
                continue
            rho = cj.embed(fq_find_root(ci.field.modulus, cj.field))
            for k in range(ci.f):
                add(2, with_block((i, j), _glued(A, ci, cj, A.pow(rho, p ** k))))
    # (3) hyperplanes of P/(P² + pO)
    Ap = Oo.algebra_mod(p)
    n = Oo.degree
    N = 1
    while p ** N < n:
        N += 1
    pO = Lattice.from_rows(frame, [[p * x for x in r] for r in Oo.hnf], Oo.den)
    for P, comp in zip(primes, comps):
        Pl = P.ideal
        low = (Pl * Pl) + pO
        Q = QuotientSpace(Pl, low, p, check=False)
        d = Q.dim
        if d == 0:
            continue
        f = comp.f
        theta = Ap.pow(tuple(x % p for x in R.lift(comp.theta)), (p ** f) ** N)
        teich = [Ap.pow(theta, t) if t else Ap.pow(theta, p ** f - 1) for t in range(f)]
        tv = Oo.vector(list(theta))
        lifts = [Q.lift_vector(tuple(1 if a == b else 0 for a in range(d))) for b in range(d)]
        act = [Q.project(frame.mul_vec(tv[0], v), tv[1] * Pl.den) for v in lifts]
        base = Oo.sub_lattice([list(t) for t in teich], p)
        for W in invariant_intermediate(d, [act], p, max_dim=d - f):
            if len(W) != d - f:
                continue
            add(3, base + Q.lift(W))
    res = sorted(out.values(), key=lambda tL: (tL[1].det(), tL[1].hnf))
    return res if typed else [L for _, L in res]


def extension_type(O, L, p):
    """Type (1), (2) or (3) of a maximal suborder ``L`` of ``O``, read off the conductor.

    Raises ``AssertionError`` unless exactly one of the three cases holds.
    """
    Oo = O if isinstance(O, Order) else Order(O, certify=False)
    c = L.colon(Oo.lattice)
    over = [P.ideal for P in primes_above(Oo, p) if c.issubset(P.ideal)]
    cases = []
    if any(P == c for P in over):
        cases.append(1)
    if len(over) == 2 and (over[0].intersect(over[1])) == c:
        cases.append(2)
    if len(over) == 1 and (over[0] * over[0]).issubset(c) and c != over[0]:
        cases.append(3)
    assert len(cases) == 1, f"extension type is ambiguous: {cases}"
    return cases[0]


def _prime_divisors(f):
    return sorted(factor_int(f)) if f > 1 else []


def _fixed_subfield(A, comp, d, p):
    """Basis of the subfield of the component fixed by ``x -> x^(p^d)``."""
    m = A.dim
    rows = []
    for v in comp.basis:
        w = A.pow(v, p ** d)
        rows.append([(a - b) % p for a, b in zip(w, v)])
    out = []
    for c in nullspace(rows, p):
        x = [0] * m
        for a, v in zip(c, comp.basis):
            if a:
                x = [(s + a * t) % p for s, t in zip(x, v)]
        out.append(x)
    return rref(out, p)[0]


def _glued(A, ci, cj, rho):
    """``{x + φ(x)}`` where ``φ`` sends the generator of ``ci`` to ``rho``."""
    p = A.p
    out = []
    for t in range(ci.f):
        a = ci.powers[t]
        b = cj.powers[0] if t == 0 else A.pow(rho, t)
        out.append([(s + u) % p for s, u in zip(a, b)])
    return out


def orders_by_maximal_suborders(K, p, e, check_types=False):
    """Iterate :func:`oracle_maximal_suborders` from ``Z_K`` up to index ``p^e``.

    With ``check_types`` every step is also classified by
    :func:`extension_type` and must match the type it was built as.
    """
    frame = maximal_order_frame(K)
    ZK = Lattice.identity(frame)
    bound = p ** e
    found = {ZK.hnf: ZK}
    todo = [ZK]
    while todo:
        O = todo.pop()
        if O.det() * p > bound:
            continue
        for t, L in oracle_maximal_suborders(O, p, typed=True):
            if check_types and extension_type(O, L, p) != t:
                raise AssertionError(f"type {t} suborder classified differently: {L!r}")
            if L.det() <= bound and L.hnf not in found:
                found[L.hnf] = L
                todo.append(L)
    return sorted(found.values(), key=lambda L: (L.det(), L.hnf))


def cross_check(K, p, e, tree=None, budget=2 ** 24, require_brute_force=False):
    """Compare the tree enumeration with the independent oracles.

    Also classifies every maximal-suborder step met in the closure by its
    conductor and compares with the construction type.  Returns a dict
    with the set sizes, the mismatching orders (smallest first) and ``ok``.
    The brute force scan is skipped above ``budget`` unless it is required.
    """
    if tree is None:
        tree = p_suborders(K, p, e)
    t = {L.hnf for L in tree}
    a = {L.hnf for L in orders_by_subalgebras(K, p, e)}
    m = {L.hnf for L in orders_by_maximal_suborders(K, p, e, check_types=True)}
    report = {"tree": len(t), "subalgebras": len(a), "maximal_suborders": len(m)}
    try:
        b = {L.hnf for L in brute_force_orders(K, p, e, budget)}
        report["brute_force"] = len(b)
    except BudgetExceeded:
        if require_brute_force:
            raise
        b = None
    bad = (t ^ a) | (t ^ m) | ((t ^ b) if b is not None else set())
    report["mismatches"] = sorted(bad, key=lambda h: (hnf_det(h), h))
    report["ok"] = not bad
    return report
