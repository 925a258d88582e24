"""Leaf-oriented B-slack tree ordered dictionary.

A B-slack tree with degree bound ``b > 4`` is a leaf-oriented multiway search
tree in which every leaf has the same depth, internal nodes carry between 2
and ``b`` child pointers (one more pointer than keys), leaves carry between 0
and ``b`` keys, and the children of every internal node share at most ``b-1``
units of slack, where the slack of a node is ``b`` minus its degree.  The
degree of an internal node is its pointer count and the degree of a leaf is
its key count.

The relaxed form weakens those rules so that updates and rebalancing can be
decoupled: each node carries a weight bit, weight-zero nodes have exactly two
pointers, and the depth rule applies to relaxed depth (the sum of weights on
the root path, minus one).  Three kinds of defects, called violations, may
then be present:

* weight violation -- a node with weight zero,
* slack violation  -- an internal node whose children share too much slack,
* degree violation -- an internal node with exactly one child.

Six rebalancing steps (root-zero, root-replace, absorb, split, compress,
one-child) remove violations while preserving the relaxed shape rules; a
tree with no violations is a strict B-slack tree.  Pending violations are
tracked in a small fixed-capacity FIFO queue of node handles; if the queue
overflows, locations are dropped and a full-tree sweep repopulates the queue
once it drains.

Policies:

* ``STANDARD``         -- rebalance after every update until no violation
                          remains (slack threshold ``b-1``).
* ``CONST_REBALANCE``  -- same, but an internal node of degree ``k`` may let
                          its children share up to ``b+k-1`` slack, and
                          compress packs into nodes of degree at most ``b-1``
                          so every survivor keeps one slack.  This variant
                          performs amortized O(1) rebalancing steps per
                          update.
* ``BATCH``            -- updates never rebalance; violations accumulate and
                          an explicit :meth:`BSlackTree.cleanup` restores the
                          strict shape.

A ``BSlackTree`` instance is single-threaded; distinct instances are
independent.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from collections import deque
from enum import Enum
from typing import Any, Callable, Iterator, Optional


class Policy(Enum):
    """Rebalancing policy of a tree instance."""

    STANDARD = "standard"
    CONST_REBALANCE = "const"
    BATCH = "batch"


class Step(Enum):
    """Structural update kinds tracked by the per-tree counters.

    ``OVERFLOW`` is part of insertion; the other six are the rebalancing
    steps proper.
    """

    OVERFLOW = "overflow"
    ROOT_ZERO = "root_zero"
    ROOT_REPLACE = "root_replace"
    ABSORB = "absorb"
    SPLIT = "split"
    COMPRESS = "compress"
    ONE_CHILD = "one_child"


#: The six violation-removing steps (overflow excluded).
REBALANCE_STEPS = (
    Step.ROOT_ZERO,
    Step.ROOT_REPLACE,
    Step.ABSORB,
    Step.SPLIT,
    Step.COMPRESS,
    Step.ONE_CHILD,
)


class Node:
    """One tree node.

    Leaves have ``children is None`` and a ``data`` list parallel to
    ``keys``.  Internal nodes have a ``children`` list with exactly
    ``len(keys) + 1`` entries and ``data is None``.  ``live`` turns false
    when a step discards the node, which invalidates any queued handle to
    it.
    """

    __slots__ = ("weight", "keys", "children", "data", "parent", "live")

    def __init__(self, keys, children=None, data=None, weight=1):
        self.weight = weight
        self.keys = keys
        self.children = children
        self.data = data
        self.parent: Optional[Node] = None
        self.live = True

    @property
    def is_leaf(self) -> bool:
        return self.children is None

    @property
    def degree(self) -> int:
        ch = self.children
        return len(self.keys) if ch is None else len(ch)

    def __repr__(self):  # debugging aid only
        kind = "leaf" if self.children is None else "internal"
        return f"<Node {kind} w={self.weight} deg={self.degree}>"


def node_sexpr(node: Node) -> str:
    """Deterministic textual dump: ``(w=<0|1> keys=[...] children=[...])``.

    Leaves omit the ``children`` field.  Used by golden tests and the
    harness debug output.
    """
    keys = ",".join(str(k) for k in node.keys)
    if node.children is None:
        return f"(w={node.weight} keys=[{keys}])"
    kids = " ".join(node_sexpr(c) for c in node.children)
    return f"(w={node.weight} keys=[{keys}] children=[{kids}])"


def _run_sizes(total: int, parts: int) -> list[int]:
    # Even distribution, left-heavy: the first (total mod parts) runs get
    # ceil(total/parts) items, the rest floor(total/parts).
    base, extra = divmod(total, parts)
    return [base + 1] * extra + [base] * (parts - extra)


class BSlackTree:
    """Ordered dictionary over a B-slack tree.

    ``b`` is the degree bound (must exceed 4).  An empty tree is a single
    empty leaf; deleting every key leaves that leaf in place.  Duplicate
    inserts replace the stored data and are reported as not-new.
    """

    __slots__ = (
        "b",
        "policy",
        "queue_capacity",
        "root",
        "size",
        "step_counts",
        "inserts",
        "deletes",
        "step_hook",
        "_steps_total",
        "_queue",
        "_queued",
        "_overflowed",
        "_phi",
    )

    def __init__(self, b: int, policy: Policy | str = Policy.STANDARD,
                 queue_capacity: int = 64):
        if not isinstance(b, int) or b <= 4:
            raise ValueError(f"degree bound b must be an integer > 4, got {b!r}")
        if not isinstance(policy, Policy):
            policy = Policy(policy)
        if queue_capacity < 1:
            raise ValueError("queue_capacity must be positive")
        self.b = b
        self.policy = policy
        self.queue_capacity = queue_capacity
        self.root: Node = Node(keys=[], data=[])
        self.size = 0
        self.step_counts: dict[Step, int] = {s: 0 for s in Step}
        self.inserts = 0          # successful (new-key) insertions
        self.deletes = 0          # successful deletions
        self.step_hook: Optional[Callable[["BSlackTree", Step], None]] = None
        self._steps_total = 0
        self._queue: deque[Node] = deque()
        self._queued: set[int] = set()
        self._overflowed = False
        self._phi = b             # empty leaf: weight one, degree zero

    # ------------------------------------------------------------------
    # construction helpers

    @classmethod
    def from_root(cls, b: int, root: Node,
                  policy: Policy | str = Policy.STANDARD,
                  queue_capacity: int = 64) -> "BSlackTree":
        """Wrap an explicitly built node structure in a tree.

        Fixes up parent pointers and cached totals by one traversal.  The
        structure is taken as-is; run the checker if validity matters.
        """
        tree = cls(b, policy, queue_capacity)
        tree.root = root
        root.parent = None
        size = 0
        phi = 0
        stack = [root]
        while stack:
            node = stack.pop()
            node.live = True
            phi += tree._phi_of(node)
            if node.children is None:
                size += len(node.keys)
                if node.data is None:
                    node.data = [None] * len(node.keys)
            else:
                for ch in node.children:
                    ch.parent = node
                stack.extend(node.children)
        tree.size = size
        tree._phi = phi
        return tree

    # ------------------------------------------------------------------
    # queries

    def search(self, key) -> tuple[bool, Any]:
        """Return ``(found, data)`` for ``key``; the tree is unchanged."""
        node = self.root
        while node.children is not None:
            node = node.children[bisect_right(node.keys, key)]
        idx = bisect_left(node.keys, key)
        if idx < len(node.keys) and node.keys[idx] == key:
            return True, node.data[idx]
        return False, None

    def __contains__(self, key) -> bool:
        return self.search(key)[0]

    def __len__(self) -> int:
        return self.size

    def items(self) -> Iterator[tuple[Any, Any]]:
        """Yield (key, data) pairs in increasing key order."""
        stack = [(self.root, 0)]
        while stack:
            node, idx = stack.pop()
            if node.children is None:
                yield from zip(node.keys, node.data)
            elif idx < len(node.children):
                stack.append((node, idx + 1))
                stack.append((node.children[idx], 0))

    def keys(self) -> Iterator[Any]:
        return (k for k, _ in self.items())

    def dump(self) -> str:
        """Whole-tree S-expression dump (see :func:`node_sexpr`)."""
        return node_sexpr(self.root)

    @property
    def total_steps(self) -> int:
        return self._steps_total

    def rebalance_step_total(self) -> int:
        """Total rebalancing steps performed (overflow excluded)."""
        counts = self.step_counts
        return sum(counts[s] for s in REBALANCE_STEPS)

    @property
    def potential(self) -> int:
        """Cached potential of the tree: sum over nodes of phi(u), where
        phi(u) = b - deg(u) for a non-full weight-one node and b otherwise."""
        return self._phi

    # ------------------------------------------------------------------
    # updates

    def insert(self, key, data=None) -> tuple[bool, int]:
        """Insert ``key``; return ``(inserted_new, steps_performed)``.

        If ``key`` is already present its data is replaced and no structural
        work happens.  ``steps_performed`` counts overflow plus rebalancing
        steps done before returning (always 0 under the batch policy except
        for the overflow itself).
        """
        node = self.root
        while node.children is not None:
            node = node.children[bisect_right(node.keys, key)]
        keys = node.keys
        idx = bisect_left(keys, key)
        if idx < len(keys) and keys[idx] == key:
            node.data[idx] = data
            return False, 0
        before = self._steps_total
        if len(keys) < self.b:
            old = self._phi_of(node)
            keys.insert(idx, key)
            node.data.insert(idx, data)
            self._phi += self._phi_of(node) - old
        else:
            self._overflow(node, idx, key, data)
        self.size += 1
        self.inserts += 1
        if self.policy is not Policy.BATCH and (self._queue or self._overflowed):
            self._drain()
        return True, self._steps_total - before

    def delete(self, key) -> tuple[bool, int]:
        """Delete ``key``; return ``(deleted, steps_performed)``.

        Deleting an absent key is a no-op reported as ``(False, 0)``.
        """
        node = self.root
        while node.children is not None:
            node = node.children[bisect_right(node.keys, key)]
        keys = node.keys
        idx = bisect_left(keys, key)
        if idx >= len(keys) or keys[idx] != key:
            return False, 0
        before = self._steps_total
        old = self._phi_of(node)
        del keys[idx]
        del node.data[idx]
        self._phi += self._phi_of(node) - old
        self.size -= 1
        self.deletes += 1
        parent = node.parent
        if parent is not None:
            self._note(parent)
        if self.policy is not Policy.BATCH and (self._queue or self._overflowed):
            self._drain()
        return True, self._steps_total - before

    # ------------------------------------------------------------------
    # cleanup engine

    def cleanup(self) -> dict[Step, int]:
        """Rebalance until no violation remains; return steps by kind.

        Terminates for any valid relaxed tree.  A final verification sweep
        guarantees the queue did not silently lose a violation.
        """
        performed: dict[Step, int] = {}
        while True:
            kind = self.cleanup_step()
            if kind is None:
                # Queue drained: sweep once to confirm nothing was missed.
                self._sweep()
                if not self._queue:
                    return performed
                continue
            performed[kind] = performed.get(kind, 0) + 1

    def cleanup_step(self) -> Optional[Step]:
        """Perform exactly one rebalancing step, or return None when the
        tree holds no reachable violation."""
        spins = 0
        while True:
            if not self._queue:
                if not self._overflowed:
                    return None
                self._overflowed = False
                self._sweep()
                if not self._queue:
                    return None
            node = self._queue.popleft()
            self._queued.discard(id(node))
            kind = self._step_at(node)
            if kind is not None:
                return kind
            spins += 1
            if spins > 1_000_000:
                raise AssertionError("cleanup made no progress; tree corrupt")

    def _drain(self) -> None:
        while self.cleanup_step() is not None:
            pass

    def _step_at(self, u: Node) -> Optional[Step]:
        # Dispatch one step for the violation at u, re-deriving it from the
        # current shape.  Precedence: weight, then degree, then slack.  When
        # a precondition is blocked by a violation elsewhere, that location
        # is queued ahead of u and nothing is performed.
        if not u.live:
            return None
        b = self.b
        if u.weight == 0:
            p = u.parent
            if p is None:
                return self._root_zero()
            if p.weight == 0:
                self._requeue_blocked(p, u)
                return None
            if len(p.children) < b:
                return self._absorb(u)
            return self._split(u)
        ch = u.children
        if ch is None:
            return None
        if len(ch) == 1:
            p = u.parent
            if p is None:
                return self._root_replace()
            blocker = self._one_child_blocker(u, p)
            if blocker is not None:
                self._requeue_blocked(blocker, u)
                return None
            k = len(p.children)
            if (self.policy is Policy.CONST_REBALANCE
                    and self._child_degree_sum(p) <= (k - 1) * (b - 1)):
                # Sibling slack is at the threshold: one-child may not run,
                # compress at the parent removes the degree violation too.
                return self._compress(p)
            return self._one_child(u)
        if self._slack_violation(u):
            for c in ch:
                if c.weight == 0:
                    self._requeue_blocked(c, u)
                    return None
            return self._compress(u)
        return None

    def _one_child_blocker(self, u: Node, p: Node) -> Optional[Node]:
        # One-child needs weight-one siblings and a violation-free parent.
        if p.weight == 0:
            return p
        for sib in p.children:
            if sib.weight == 0:
                return sib
        if len(p.children) == 1 or self._slack_violation(p):
            return p
        return None

    def _requeue_blocked(self, blocker: Node, u: Node) -> None:
        # Queue the blocking violation ahead of u; if the queue is full both
        # entries are dropped and the overflow sweep will rediscover them.
        if self._enqueue(blocker):
            self._enqueue(u)

    # ------------------------------------------------------------------
    # violation bookkeeping

    def _child_degree_sum(self, u: Node) -> int:
        total = 0
        for c in u.children:
            grand = c.children
            total += len(c.keys) if grand is None else len(grand)
        return total

    def _slack_violation(self, u: Node) -> bool:
        ch = u.children
        if ch is None:
            return False
        k = len(ch)
        slack = k * self.b - self._child_degree_sum(u)
        if self.policy is Policy.CONST_REBALANCE:
            return slack > self.b + k - 1
        return slack > self.b - 1

    def _has_violation(self, u: Node) -> bool:
        if u.weight == 0:
            return True
        ch = u.children
        if ch is None:
            return False
        return len(ch) == 1 or self._slack_violation(u)

    def _note(self, u: Optional[Node]) -> None:
        if u is not None and u.live and self._has_violation(u):
            self._enqueue(u)

    def _enqueue(self, u: Node) -> bool:
        key = id(u)
        if key in self._queued:
            return True
        if len(self._queue) >= self.queue_capacity:
            self._overflowed = True
            return False
        self._queue.append(u)
        self._queued.add(key)
        return True

    def _sweep(self) -> None:
        # Breadth-first repopulation; nearest-to-root violations enter
        # first, so the head of the queue is always actionable.
        pending = deque((self.root,))
        capacity = self.queue_capacity
        while pending:
            node = pending.popleft()
            if self._has_violation(node):
                if not self._enqueue(node):
                    return
            if len(self._queue) >= capacity:
                self._overflowed = True
                return
            if node.children is not None:
                pending.extend(node.children)

    def _count(self, kind: Step) -> Step:
        self.step_counts[kind] += 1
        self._steps_total += 1
        hook = self.step_hook
        if hook is not None:
            hook(self, kind)
        return kind

    def _phi_of(self, node: Node) -> int:
        if node.weight == 0:
            return self.b
        ch = node.children
        deg = len(node.keys) if ch is None else len(ch)
        return self.b - deg if deg < self.b else self.b

    # ------------------------------------------------------------------
    # structural updates

    def _overflow(self, leaf: Node, idx: int, key, data) -> None:
        # Full leaf: replace it with a weight-zero internal node over two
        # weight-one leaves that share the b+1 keys, left-heavy.
        b = self.b
        all_keys = leaf.keys[:idx] + [key] + leaf.keys[idx:]
        all_data = leaf.data[:idx] + [data] + leaf.data[idx:]
        left_n = (b + 2) // 2
        left = Node(keys=all_keys[:left_n], data=all_data[:left_n])
        right = Node(keys=all_keys[left_n:], data=all_data[left_n:])
        inner = Node(keys=[right.keys[0]], children=[left, right], weight=0)
        left.parent = inner
        right.parent = inner
        p = leaf.parent
        leaf.live = False
        leaf.parent = None
        if p is None:
            self.root = inner
        else:
            p.children[p.children.index(leaf)] = inner
            inner.parent = p
        # phi: full leaf (b) -> weight-zero node (b) + two non-full leaves.
        self._phi += (b - len(left.keys)) + (b - len(right.keys))
        self._count(Step.OVERFLOW)
        self._note(inner)
        self._note(p)

    def _root_zero(self) -> Step:
        root = self.root
        assert root.weight == 0 and len(root.children) == 2
        old = self._phi_of(root)
        root.weight = 1
        self._phi += self._phi_of(root) - old
        self._count(Step.ROOT_ZERO)
        self._note(root)
        return Step.ROOT_ZERO

    def _root_replace(self) -> Step:
        old_root = self.root
        assert old_root.children is not None and len(old_root.children) == 1
        child = old_root.children[0]
        self._phi -= self._phi_of(old_root)
        if child.weight == 0:
            self._phi -= self._phi_of(child)
            child.weight = 1
            self._phi += self._phi_of(child)
        child.parent = None
        old_root.live = False
        self.root = child
        self._count(Step.ROOT_REPLACE)
        self._note(child)
        return Step.ROOT_REPLACE

    def _absorb(self, u: Node) -> Step:
        # Non-root weight-zero u, parent not full: splice u's two pointers
        # and single key into the parent at u's position.
        p = u.parent
        assert u.weight == 0 and len(u.children) == 2 and p.weight == 1
        assert len(p.children) < self.b
        old = self._phi_of(u) + self._phi_of(p)
        j = p.children.index(u)
        p.children[j:j + 1] = u.children
        p.keys[j:j] = u.keys
        for ch in u.children:
            ch.parent = p
        u.live = False
        u.parent = None
        self._phi += self._phi_of(p) - old
        self._count(Step.ABSORB)
        self._note(p)
        return Step.ABSORB

    def _split(self, u: Node) -> Step:
        # Non-root weight-zero u, parent full: share the b+1 pointers of u
        # and its parent between u and a new sibling; the parent keeps only
        # those two children and takes the weight violation.
        b = self.b
        p = u.parent
        assert u.weight == 0 and len(u.children) == 2
        assert len(p.children) == b and p.weight == 1
        old = self._phi_of(u) + self._phi_of(p)
        j = p.children.index(u)
        links = p.children[:j] + u.children + p.children[j + 1:]
        keys = p.keys[:j] + u.keys + p.keys[j:]
        left_n = (b + 2) // 2
        v = Node(keys=keys[left_n:], children=links[left_n:])
        u.children = links[:left_n]
        u.keys = keys[:left_n - 1]
        u.weight = 1
        for ch in u.children:
            ch.parent = u
        for ch in v.children:
            ch.parent = v
        p.children = [u, v]
        p.keys = [keys[left_n - 1]]
        p.weight = 0
        v.parent = p
        self._phi += (self._phi_of(u) + self._phi_of(v)
                      + self._phi_of(p) - old)
        self._count(Step.SPLIT)
        self._note(p)
        self._note(u)
        self._note(v)
        self._note(p.parent)
        return Step.SPLIT

    def _compress(self, u: Node) -> Step:
        removed = self._redistribute(u, compress=True)
        assert removed >= 1
        self._count(Step.COMPRESS)
        return Step.COMPRESS

    def _one_child(self, u: Node) -> Step:
        self._redistribute(u.parent, compress=False)
        self._count(Step.ONE_CHILD)
        return Step.ONE_CHILD

    def _redistribute(self, u: Node, compress: bool) -> int:
        """Evenly redistribute the items of u's children.

        For compress the items land in the first ceil(c/b) children
        (ceil(c/(b-1)) under the constant-rebalancing policy) and the
        remaining children are discarded; for one-child all children are
        kept.  Items are grandchild pointers when the children are internal
        and keys when they are leaves; separators of u are rebuilt from the
        run boundaries.  Returns the number of children removed.

        Preconditions guarantee that u and all its children have weight
        one, so their potentials are plain slack terms.
        """
        b = self.b
        kids = u.children
        k = len(kids)
        leaf_level = kids[0].children is None
        old_child_phi = 0
        new_child_phi = 0
        if leaf_level:
            all_keys: list = []
            all_data: list = []
            for c in kids:
                ck = c.keys
                all_keys.extend(ck)
                all_data.extend(c.data)
                deg = len(ck)
                old_child_phi += b - deg if deg < b else b
            c_total = len(all_keys)
            if compress:
                divisor = b - 1 if self.policy is Policy.CONST_REBALANCE else b
                m = max(1, -(-c_total // divisor))
            else:
                m = k
            seps = []
            pos = 0
            for j, n_j in enumerate(_run_sizes(c_total, m)):
                ch = kids[j]
                ch.keys = all_keys[pos:pos + n_j]
                ch.data = all_data[pos:pos + n_j]
                new_child_phi += b - n_j if n_j < b else b
                if j:
                    seps.append(ch.keys[0])
                pos += n_j
        else:
            links: list = []
            ikeys: list = []
            for j, c in enumerate(kids):
                if j:
                    ikeys.append(u.keys[j - 1])
                ikeys.extend(c.keys)
                links.extend(c.children)
                deg = len(c.children)
                old_child_phi += b - deg if deg < b else b
            c_total = len(links)
            if compress:
                divisor = b - 1 if self.policy is Policy.CONST_REBALANCE else b
                m = max(1, -(-c_total // divisor))
            else:
                m = k
            seps = []
            pos = 0
            for j, n_j in enumerate(_run_sizes(c_total, m)):
                ch = kids[j]
                ch.children = links[pos:pos + n_j]
                ch.keys = ikeys[pos:pos + n_j - 1]
                new_child_phi += b - n_j if n_j < b else b
                for ln in ch.children:
                    ln.parent = ch
                if j:
                    seps.append(ikeys[pos - 1])
                pos += n_j
        for dead in kids[m:]:
            dead.live = False
            dead.parent = None
        survivors = kids[:m]
        u.children = survivors
        u.keys = seps
        phi_u_old = b - k if k < b else b
        phi_u_new = b - m if m < b else b
        self._phi += (phi_u_new + new_child_phi) - (phi_u_old + old_child_phi)
        self._note(u)
        if not leaf_level:
            # regrouping can create slack or degree violations at survivors;
            # leaf survivors cannot hold violations.  They are queued before
            # the parent so lower levels settle first.
            for c in survivors:
                self._note(c)
        self._note(u.parent)
        return k - m

    # ------------------------------------------------------------------
    # manual step interface: each checks its preconditions and reports
    # not-applicable as False/None instead of raising.

    def step_root_zero(self) -> bool:
        """Flip a weight-zero root to weight one."""
        root = self.root
        if root.weight != 0:
            return False
        self._root_zero()
        return True

    def step_root_replace(self) -> bool:
        """Replace a degree-one root by its only child (weight set to one)."""
        root = self.root
        if root.children is None or len(root.children) != 1:
            return False
        self._root_replace()
        return True

    def step_absorb(self, u: Node) -> bool:
        """Absorb weight-zero ``u`` into its non-full weight-one parent."""
        p = u.parent
        if (not u.live or u.weight != 0 or p is None or p.weight != 1
                or len(p.children) >= self.b):
            return False
        self._absorb(u)
        return True

    def step_split(self, u: Node) -> bool:
        """Split weight-zero ``u`` and its full parent into two nodes under
        a weight-zero parent."""
        p = u.parent
        if (not u.live or u.weight != 0 or p is None
                or len(p.children) != self.b):
            return False
        self._split(u)
        return True

    def step_compress(self, u: Node) -> Optional[int]:
        """Compress the children of ``u``; returns nodes removed, or None
        when not applicable.

        Applicable when the children of ``u`` share more than the allowed
        slack (standard: ``b-1``; constant-rebalancing: total child degree
        at most ``(k-1)(b-1)``), there is no degree violation at ``u`` and
        no weight violation at ``u`` or its children.
        """
        if not u.live or u.weight == 0 or u.children is None:
            return None
        k = len(u.children)
        if k < 2:
            return None
        if any(c.weight == 0 for c in u.children):
            return None
        c_total = self._child_degree_sum(u)
        if self.policy is Policy.CONST_REBALANCE:
            if c_total > (k - 1) * (self.b - 1):
                return None
        else:
            if k * self.b - c_total <= self.b - 1:
                return None
        removed = self._redistribute(u, compress=True)
        self._count(Step.COMPRESS)
        return removed

    def step_one_child(self, u: Node) -> bool:
        """Spread the items of ``u``'s parent's children evenly to remove
        the degree violation at ``u``."""
        p = u.parent
        if (not u.live or u.children is None or len(u.children) != 1
                or p is None or p.weight != 1):
            return False
        if any(sib.weight == 0 for sib in p.children):
            return False
        k = len(p.children)
        if k == 1 or self._slack_violation(p):
            return False
        c_total = self._child_degree_sum(p)
        threshold = (k - 1) * (self.b - 1) \
            if self.policy is Policy.CONST_REBALANCE else self.b * (k - 1)
        if c_total <= threshold:
            return False
        self._one_child(u)
        return True
