"""Worst-case degree, height and space analysis for B-slack trees.

The extremal object is the overslack tree: same shape rules as a B-slack
tree except that the children of every internal node share exactly ``b``
slack (one unit more than a B-slack tree ever allows), with a root of degree
``k``.  Overslack trees minimize the total degree at every depth, so they
bound the height and the average degree of any B-slack tree from the worst
side.

With ``d(0)=k``, ``d(1)=kb-b`` and ``d(delta)=b(d(delta-1)-d(delta-2))``,
``d(delta, k)`` is the total degree at depth ``delta`` in any such tree (and
the leaf count of key slots at the bottom level).  The closed form is
``d(delta,k) = 2^{-delta} (k1 alpha^delta + k2 gamma^delta)`` with
``alpha, gamma = b +- sqrt(b^2-4b)``.  Everything here is evaluated exactly
(integers and fractions) except the closed form, which is floating point and
cross-checked against the recurrence in the tests.

Space model: keys and pointers occupy one word each, every node occupies one
``2b``-word block, so a tree of ``F`` nodes storing ``n`` keys costs ``2bF``
words and ``F = (n-1)/(avg_degree-1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .tree import BSlackTree, Node


def _check_domain(b: int, k: int, low: int, low_name: str, low_val: int) -> None:
    if not isinstance(b, int) or b <= 4:
        raise ValueError(f"b must be an integer > 4, got {b!r}")
    if not isinstance(k, int) or not 2 <= k <= b:
        raise ValueError(f"k must satisfy 2 <= k <= b, got {k!r}")
    if low_val < low:
        raise ValueError(f"{low_name} must be >= {low}, got {low_val!r}")


def d_recurrence(delta: int, k: int, b: int) -> int:
    """Total degree at depth ``delta`` of a (b, k)-overslack tree (exact)."""
    _check_domain(b, k, 0, "delta", delta)
    if delta == 0:
        return k
    prev, cur = k, k * b - b
    for _ in range(delta - 1):
        prev, cur = cur, b * (cur - prev)
    return cur


def d_closed(delta: int, k: int, b: int) -> float:
    """Closed form of :func:`d_recurrence` in floating point."""
    _check_domain(b, k, 0, "delta", delta)
    root = math.sqrt(b * b - 4 * b)
    alpha = b + root
    gamma = b - root
    k1 = (b * k - 2 * b) / (2 * root) + k / 2
    k2 = k - k1
    return (k1 * alpha ** delta + k2 * gamma ** delta) / 2 ** delta


def D_total(h: int, k: int, b: int) -> int:
    """Total degree of all nodes in a (b, k)-overslack tree of height h."""
    _check_domain(b, k, 0, "h", h)
    if h == 0:
        return k
    return k + b * (d_recurrence(h - 1, k, b) - 1)


def dbar(delta: int, k: int, b: int) -> Fraction:
    """Average node degree at depth ``delta`` (exact rational)."""
    _check_domain(b, k, 0, "delta", delta)
    if delta == 0:
        return Fraction(k)
    return Fraction(d_recurrence(delta, k, b), d_recurrence(delta - 1, k, b))


def Dbar(h: int, k: int, b: int) -> Fraction:
    """Average node degree over a whole (b, k)-overslack tree of height h."""
    _check_domain(b, k, 0, "h", h)
    if h == 0:
        return Fraction(k)
    return Fraction(D_total(h, k, b), D_total(h - 1, k, b) + 1)


def ceil_log(base: int, n: int) -> int:
    """Smallest integer h with base**h >= n (exact; n >= 1, base >= 2)."""
    if n < 1 or base < 2:
        raise ValueError("ceil_log needs n >= 1 and base >= 2")
    h = 0
    power = 1
    while power < n:
        power *= base
        h += 1
    return h


# ----------------------------------------------------------------------
# concrete overslack trees


@dataclass(frozen=True)
class OverslackParams:
    """Parameters of a concrete overslack tree."""

    b: int
    k: int
    h: int

    def __post_init__(self):
        _check_domain(self.b, self.k, 0, "h", self.h)


def build_overslack(params: OverslackParams) -> BSlackTree:
    """Build a concrete overslack tree (all weights one, integer keys).

    The children of every internal node share exactly ``b`` slack; the
    mandated total child degree is spread so sibling degrees differ by at
    most one, left-heavy.  The result is a valid relaxed B-slack tree whose
    only strict-mode defects are slack violations, with exactly
    ``d_recurrence(h, k, b)`` keys in its leaves.
    """
    b, k, h = params.b, params.k, params.h
    # Degrees level by level; after the loop `degrees` holds leaf key counts.
    degrees = [k]
    for _ in range(h):
        nxt: list[int] = []
        for g in degrees:
            total = g * b - b
            base, extra = divmod(total, g)
            nxt.extend([base + 1] * extra + [base] * (g - extra))
        degrees = nxt
    next_key = 0
    level: list[Node] = []
    first_keys: list[int] = []
    for deg in degrees:
        assert deg >= 1
        level.append(Node(keys=list(range(next_key, next_key + deg)),
                          data=[None] * deg))
        first_keys.append(next_key)
        next_key += deg
    # Rebuild the internal levels bottom-up, taking each parent's separator
    # from the smallest key of the corresponding child subtree.
    degrees = [k]
    per_level = [degrees]
    for _ in range(h):
        nxt = []
        for g in per_level[-1]:
            total = g * b - b
            base, extra = divmod(total, g)
            nxt.extend([base + 1] * extra + [base] * (g - extra))
        per_level.append(nxt)
    for depth in range(h - 1, -1, -1):
        parents: list[Node] = []
        parent_first: list[int] = []
        pos = 0
        for g in per_level[depth]:
            kids = level[pos:pos + g]
            seps = [first_keys[pos + j] for j in range(1, g)]
            parents.append(Node(keys=seps, children=kids))
            parent_first.append(first_keys[pos])
            pos += g
        level = parents
        first_keys = parent_first
    assert len(level) == 1
    tree = BSlackTree.from_root(b, level[0])
    assert tree.size == d_recurrence(h, k, b)
    return tree


# ----------------------------------------------------------------------
# space bounds


@dataclass(frozen=True)
class SpaceBounds:
    """Word-count bounds for a B-slack tree storing n keys."""

    n: int
    b: int
    height_min: int                 # ceil(log_b n)
    height_max: int                 # ceil(log_{b-2} n)
    h_used: int                     # ceil(log_b n) - 1, height in the bound
    avg_degree_floor: Fraction      # Dbar(h_used, 2)
    lower_words: Fraction           # 2b(n-1)/(b-1)
    upper_words: Fraction           # 2b(n-1)/(avg_degree_floor - 1)
    simple_upper_words: Optional[Fraction]   # 2b(n-1)/(b-3), when n > b^3

    @property
    def lower_ratio(self) -> float:
        return float(self.lower_words) / self.n

    @property
    def upper_ratio(self) -> float:
        return float(self.upper_words) / self.n

    @property
    def simple_upper_ratio(self) -> Optional[float]:
        if self.simple_upper_words is None:
            return None
        return float(self.simple_upper_words) / self.n


def space_bounds(n: int, b: int) -> SpaceBounds:
    """Lower and upper bounds on the words needed for n keys.

    The upper bound divides by ``Dbar(ceil(log_b n) - 1, 2) - 1``, the floor
    on the average degree of any B-slack tree with n keys; the simple
    ``2b(n-1)/(b-3)`` form is included once n exceeds b^3.
    """
    if n < 2:
        raise ValueError("space bounds need n >= 2")
    if b <= 4:
        raise ValueError("b must exceed 4")
    h_used = ceil_log(b, n) - 1
    s = Dbar(h_used, 2, b)
    upper = Fraction(2 * b * (n - 1)) / (s - 1)
    simple = Fraction(2 * b * (n - 1), b - 3) if n > b ** 3 else None
    return SpaceBounds(
        n=n,
        b=b,
        height_min=ceil_log(b, n),
        height_max=ceil_log(b - 2, n),
        h_used=h_used,
        avg_degree_floor=s,
        lower_words=Fraction(2 * b * (n - 1), b - 1),
        upper_words=upper,
        simple_upper_words=simple,
    )


def bslack_space_ratio(b: int, h: int) -> float:
    """Upper-bound words-per-key for a height-h tree: 2b/(Dbar(h,2)-1)."""
    return float(Fraction(2 * b) / (Dbar(h, 2, b) - 1))


# ----------------------------------------------------------------------
# pathological competitor families


@dataclass(frozen=True)
class FamilySpace:
    """Space use of the minimum member of a worst-case family holding at
    least the requested number of keys."""

    family: str
    b: int
    height: int
    keys: int
    nodes: int

    @property
    def words(self) -> int:
        return 2 * self.b * self.nodes

    @property
    def ratio(self) -> float:
        return self.words / self.keys


def family_space(family: str, b: int, min_keys: int) -> FamilySpace:
    """Space ratio of the smallest family tree holding >= min_keys keys.

    Families (block size 2b, leaf-oriented):

    * ``btree``: root of degree two, every other node of degree b/2.
    * ``overflow``: root of degree two, internal nodes of degree b/2,
      leaves of degree b-3, plus one overflow node shared by each group of
      b/2 leaves (one group per leaf parent).
    """
    if family not in ("btree", "overflow"):
        raise ValueError(f"unknown family {family!r}")
    if b <= 4 or b % 2:
        raise ValueError("family trees need even b > 4")
    if min_keys < 1:
        raise ValueError("min_keys must be positive")
    half = b // 2
    leaf_deg = half if family == "btree" else b - 3

    def count_at(depth: int) -> int:
        return 1 if depth == 0 else 2 * half ** (depth - 1)

    h = 1
    while count_at(h) * leaf_deg < min_keys:
        h += 1
    leaves = count_at(h)
    n = leaves * leaf_deg
    internals = sum(count_at(d) for d in range(h))
    nodes = internals + leaves
    if family == "overflow":
        nodes += count_at(h - 1)          # one overflow node per leaf parent
    return FamilySpace(family=family, b=b, height=h, keys=n, nodes=nodes)
