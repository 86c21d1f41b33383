"""Counts of orders of 5-power index in two quintic fields.

5 splits completely in the first field and is inert in the second.  The
running total at each exponent is the number of orders of index at most 5^i.
"""

import time

from ordertree import EnumerationTask, count_orders_with_radical, nf_make
from ordertree.suites import INERT, SPLIT

for name, f, top in (("split", SPLIT, 4), ("inert", INERT, 6)):
    K = nf_make(f)
    t0 = time.perf_counter()
    task = EnumerationTask(K, 5, top)
    nodes = task.run()
    secs = time.perf_counter() - t0
    row = [sum(1 for nd in nodes if nd.exp <= i) for i in range(top + 1)]
    print(f"{name:6s} {row}  ({task.stats['radicals']} radicals, {secs:.1f}s)")

# the whole root fiber: orders containing 5 Z_K, counted by the fiber formula
print("root fiber, split:", count_orders_with_radical([1] * 5))
print("root fiber, inert:", count_orders_with_radical([5]))
