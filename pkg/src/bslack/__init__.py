"""B-slack trees: space-efficient ordered dictionaries.

Public surface:

* :class:`bslack.tree.BSlackTree` -- the dictionary (standard,
  constant-rebalancing and batch policies).
* :mod:`bslack.checker` -- structural validation, violation reports and
  reference oracles.
* :mod:`bslack.analysis` -- degree/height/space formulas, overslack tree
  construction and worst-case family calculators.
* :mod:`bslack.harness` -- seeded randomized workload trials and bound
  checks, also exposed through the ``bslack`` command line tool.
"""

from .tree import BSlackTree, Node, Policy, Step, REBALANCE_STEPS

__all__ = [
    "BSlackTree",
    "Node",
    "Policy",
    "Step",
    "REBALANCE_STEPS",
]

__version__ = "0.1.0"
