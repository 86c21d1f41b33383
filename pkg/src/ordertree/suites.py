"""Built-in verification suites for ``ordertree verify``.

``small`` cross-checks the tree against the oracles on small fields;
``paper`` reproduces published order counts for three quintic fields and
the overorders of a degree 5 equation order.
"""

import time

from .lattice import IntegralBasis, Lattice
from .numberfield import nf_make
from .oracle import cross_check
from .orders import maximal_order_frame
from .tree import EnumerationTask

# ascending coefficients
SPLIT = [-5, 1, 21, -12, -1, 1]          # 5 splits completely
INERT = [-1, -1, -1, 1, 0, 1]            # 5 is inert
RAMIFIED = [-1, 10, -5, -10, 0, 1]       # 5 is totally ramified
EQUATION = [143628091723623, 200947680677, 2331020454, 26241066, 46627, 1]

SMALL_FIELDS = [
    [1, 0, 1],             # Q(i)
    [-5, 0, 1],            # Q(sqrt 5)
    [1, 1, 1],             # Q(zeta_3)
    [-1, -1, 0, 1],        # x^3 - x - 1
    [-2, 0, 0, 1],         # Q(2^(1/3))
    [8, -10, -1, 1],       # totally real cubic, 2 splits
    [2, 0, -4, 0, 1],      # Eisenstein at 2, 3 inert
    [2, 0, 0, 0, 1],       # x^4 + 2
]
SMALL_PARAMS = [(2, 1), (2, 2), (3, 1)]


def conductor_order(K, p, i, disc_factors=()):
    """``Z + p^i Z_K`` in the integral basis frame."""
    fr = maximal_order_frame(K, disc_factors)
    n = K.degree
    q = p ** i
    return Lattice.from_rows(fr, [list(fr.one)] + [[q if a == b else 0 for b in range(n)]
                                                   for a in range(n)], 1, q)


def equation_order(K):
    n = K.degree
    return Lattice.identity(IntegralBasis(K, [[int(i == j) for j in range(n)] for i in range(n)], 1))


def suborder_count(coeffs, p, e, threads=1):
    return len(EnumerationTask(nf_make(coeffs), p, e, threads=threads).run())


def overorder_count(coeffs, p, order, e=None, threads=1):
    K = nf_make(coeffs)
    return len(EnumerationTask(K, p, e, over=order(K), threads=threads).run())


def published_checks():
    """``(name, thunk, expected)`` for the published counts that run in seconds."""
    out = []
    for e, want in zip(range(1, 6), [11, 46, 161, 602, 2173]):
        out.append((f"split quintic, index <= 5^{e}", (SPLIT, 5, e), want))
    for e, want in zip(range(1, 8), [1, 1, 1, 2, 158, 964, 1120]):
        out.append((f"inert quintic, index <= 5^{e}", (INERT, 5, e), want))
    for name, f, wants in (("split", SPLIT, (52, 1761)), ("inert", INERT, (2, 1121)),
                           ("ramified", RAMIFIED, (15, 1214))):
        for i, want in zip((1, 2), wants):
            out.append((f"{name} quintic, overorders of Z + 5^{i} Z_K",
                        (f, 5, lambda K, i=i: conductor_order(K, 5, i)), want))
    out.append(("equation order, 2-part overorders", (EQUATION, 2, equation_order), 4027))
    out.append(("equation order, 29-part overorders", (EQUATION, 29, equation_order), 1777))
    out.append(("inert quintic, overorders of Z + 5^4 Z_K with index <= 5^10",
                (INERT, 5, lambda K: conductor_order(K, 5, 4), 10), 49663))
    return out


def run_suite(name, threads=1):
    """Yield ``(check name, passed, detail)``."""
    if name == "small":
        for f in SMALL_FIELDS:
            for p, e in SMALL_PARAMS:
                rep = cross_check(nf_make(f), p, e, require_brute_force=True)
                yield (f"oracles agree for {f}, p={p}, e={e}", rep["ok"],
                       f"tree={rep['tree']} brute={rep.get('brute_force')} "
                       f"maximal={rep['maximal_suborders']}")
        return
    if name != "paper":
        raise ValueError(f"unknown suite {name!r}")
    for label, args, want in published_checks():
        t0 = time.perf_counter()
        if callable(args[2]):
            got = overorder_count(*args, threads=threads)
        else:
            got = suborder_count(*args, threads=threads)
        yield label, got == want, f"got {got}, expected {want} ({time.perf_counter() - t0:.1f}s)"
