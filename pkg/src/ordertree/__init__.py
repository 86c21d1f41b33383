"""Enumeration of orders of prime power index in number fields.

Orders are organised in a tree keyed by their p-radicals: every
non-maximal order has a unique parent (the multiplicator ring of a power of
its radical), the children of an order are found from its radical by
linear algebra over F_p, and all orders sharing a radical are produced at
once.

>>> from ordertree import nf_make, p_suborders
>>> len(p_suborders(nf_make([1, 0, 1]), 2, 3))
4
"""

from .numberfield import NumberField, nf_make
from .lattice import IntegralBasis, Lattice
from .orders import Order, maximal_order, maximal_order_frame, p_radical, primes_above
from .fibers import orders_with_radical, count_orders_with_radical
from .tree import (EnumerationTask, overorders_all, p_overorders, p_suborders,
                   suborders_all)
from .oracle import brute_force_orders, cross_check, oracle_maximal_suborders

__all__ = [
    "NumberField", "nf_make", "IntegralBasis", "Lattice", "Order", "maximal_order",
    "maximal_order_frame", "p_radical", "primes_above", "orders_with_radical",
    "count_orders_with_radical", "EnumerationTask", "p_suborders", "p_overorders",
    "suborders_all", "overorders_all", "brute_force_orders", "cross_check",
    "oracle_maximal_suborders",
]
