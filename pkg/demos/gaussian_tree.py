"""Walk the successor tree of Z[i] at p = 2 and p = 5.

Each order is printed under its parent with its index and the HNF of its
2-radical, in the integral basis 1, i.
"""

from ordertree import EnumerationTask, nf_make, p_radical
from ordertree.orders import order_make

K = nf_make([1, 0, 1])

for p, e in ((2, 4), (5, 2)):
    print(f"p = {p}, index <= {p}^{e}")
    nodes = EnumerationTask(K, p, e).run()
    depth = {}
    for nd in nodes:
        depth[id(nd)] = 0 if nd.parent is None else depth[id(nd.parent)] + 1
        pad = "  " * depth[id(nd)]
        print(f"  {pad}index {nd.lattice.det():>3}  O = {nd.lattice.hnf}  J = {nd.radical.hnf}")
    # the radical recorded by the tree is the one computed from scratch
    assert all(p_radical(order_make(nd.lattice), p) == nd.radical for nd in nodes)
    print()
