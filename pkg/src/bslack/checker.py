"""Structural validation and reference oracles for B-slack trees.

The checker never mutates a tree and never trusts the tree's own cached
bookkeeping: every quantity is recomputed from the node structure.  Two
severity classes are reported separately:

* structural errors -- breaks of the relaxed shape rules themselves (key
  order, pointer/key count mismatches, weight-zero nodes without exactly two
  pointers, unequal leaf relaxed depths, broken parent links, search-order
  breaks).  A tree with structural errors is corrupt, not merely unbalanced.
* violations -- the three legitimate relaxed-state defects (weight, slack,
  degree) that rebalancing steps are expected to remove.

``validate`` in RELAXED mode passes whenever there are no structural errors;
STRICT additionally requires zero violations with the ``b-1`` child-slack
threshold, and STRICT_CONST with the ``b+k-1`` threshold of the
constant-rebalancing variant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations_with_replacement
from typing import Any, Optional

from .tree import BSlackTree, Node, Policy


class CheckMode(Enum):
    RELAXED = "relaxed"
    STRICT = "strict"
    STRICT_CONST = "strict_const"


def mode_for_policy(policy: Policy) -> CheckMode:
    """Strictness target for a policy: what its cleanup must reach."""
    if policy is Policy.CONST_REBALANCE:
        return CheckMode.STRICT_CONST
    return CheckMode.STRICT


def slack(node: Node, b: int) -> int:
    """Unused capacity of a node: b minus its degree."""
    ch = node.children
    deg = len(node.keys) if ch is None else len(ch)
    return b - deg


@dataclass
class Violation:
    kind: str                 # "weight" | "slack" | "degree"
    node: Node
    path: tuple[int, ...]

    def to_json_dict(self) -> dict:
        return {"kind": self.kind, "path": list(self.path)}


@dataclass
class ViolationReport:
    """Everything one validation pass learns about a tree."""

    mode: CheckMode
    b: int
    violations: list[Violation]
    structural_errors: list[str]
    node_count: int
    internal_count: int
    leaf_count: int
    key_count: int
    total_degree: int
    height: int
    leaf_relaxed_depth: Optional[int]
    total_weight1_slack: int
    potential: int
    weight_zero_count: int
    slack_by_node: Optional[dict[tuple[int, ...], int]] = field(default=None)

    @property
    def ok(self) -> bool:
        if self.structural_errors:
            return False
        if self.mode is CheckMode.RELAXED:
            return True
        return not self.violations

    @property
    def average_degree(self) -> float:
        return self.total_degree / self.node_count

    def violation_kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def to_json_dict(self) -> dict:
        out = {
            "mode": self.mode.value,
            "b": self.b,
            "ok": self.ok,
            "violations": [v.to_json_dict() for v in self.violations],
            "structural_errors": list(self.structural_errors),
            "node_count": self.node_count,
            "internal_count": self.internal_count,
            "leaf_count": self.leaf_count,
            "key_count": self.key_count,
            "total_degree": self.total_degree,
            "height": self.height,
            "leaf_relaxed_depth": self.leaf_relaxed_depth,
            "total_weight1_slack": self.total_weight1_slack,
            "potential": self.potential,
            "weight_zero_count": self.weight_zero_count,
        }
        if self.slack_by_node is not None:
            out["slack_by_node"] = {
                ".".join(map(str, path)): s
                for path, s in self.slack_by_node.items()
            }
        return out


def validate(tree: BSlackTree, mode: CheckMode = CheckMode.STRICT,
             detail: bool = False) -> ViolationReport:
    """Walk the whole tree once, collecting errors, violations and stats."""
    b = tree.b
    const = mode is CheckMode.STRICT_CONST
    errors: list[str] = []
    violations: list[Violation] = []
    slack_map: Optional[dict] = {} if detail else None

    node_count = 0
    internal_count = 0
    key_count = 0
    total_degree = 0
    height = 0
    rdepth: Optional[int] = None
    rdepth_uniform = True
    w1slack = 0
    phi = 0
    weight_zero = 0

    root = tree.root
    # entries: node, expected parent, depth, weight sum, low, high, path
    stack: list = [(root, None, 0, root.weight, None, None, ())]
    while stack:
        node, parent, depth, wsum, lo, hi, path = stack.pop()
        if not node.live:
            errors.append(f"dead node reachable at {path}")
        if node.parent is not parent:
            errors.append(f"parent link broken at {path}")
        w = node.weight
        if w not in (0, 1):
            errors.append(f"weight {w!r} out of range at {path}")
            w = 1
        keys = node.keys
        nk = len(keys)
        for i in range(nk - 1):
            if not keys[i] < keys[i + 1]:
                errors.append(f"keys not strictly increasing at {path}")
                break
        ch = node.children
        node_count += 1
        if ch is None:
            if w != 1:
                errors.append(f"leaf with weight zero at {path}")
            if node.data is None or len(node.data) != nk:
                errors.append(f"leaf data length mismatch at {path}")
            if nk > b:
                errors.append(f"leaf degree {nk} exceeds b at {path}")
            if nk:
                if lo is not None and keys[0] < lo:
                    errors.append(f"leaf key below separator bound at {path}")
                if hi is not None and not keys[-1] < hi:
                    errors.append(f"leaf key not below separator at {path}")
            key_count += nk
            total_degree += nk
            if depth > height:
                height = depth
            rd = wsum - 1
            if rdepth is None:
                rdepth = rd
            elif rd != rdepth and rdepth_uniform:
                rdepth_uniform = False
                errors.append("leaves have unequal relaxed depths")
            sl = b - nk
            w1slack += sl
            phi += sl if nk < b else b
            if detail:
                slack_map[path] = sl
        else:
            internal_count += 1
            k = len(ch)
            if k != nk + 1:
                errors.append(f"child/key count mismatch at {path}")
            if k > b:
                errors.append(f"internal degree {k} exceeds b at {path}")
            if k < 1:
                errors.append(f"internal node without children at {path}")
                continue
            if w == 0 and k != 2:
                errors.append(f"weight-zero node of degree {k} at {path}")
            if nk:
                if lo is not None and keys[0] < lo:
                    errors.append(f"separator below bound at {path}")
                if hi is not None and keys[-1] > hi:
                    errors.append(f"separator above bound at {path}")
            if w == 0:
                weight_zero += 1
                violations.append(Violation("weight", node, path))
            if k == 1:
                violations.append(Violation("degree", node, path))
            csum = 0
            for c in ch:
                grand = c.children
                csum += len(c.keys) if grand is None else len(grand)
            child_slack = k * b - csum
            if child_slack > (b + k - 1 if const else b - 1):
                violations.append(Violation("slack", node, path))
            total_degree += k
            if w == 1:
                w1slack += b - k
                phi += b - k if k < b else b
            else:
                phi += b
            if detail:
                slack_map[path] = b - k
            for i in range(k - 1, -1, -1):
                child = ch[i]
                stack.append((
                    child, node, depth + 1, wsum + child.weight,
                    keys[i - 1] if i else lo,
                    keys[i] if i < nk else hi,
                    path + (i,),
                ))
    return ViolationReport(
        mode=mode,
        b=b,
        violations=violations,
        structural_errors=errors,
        node_count=node_count,
        internal_count=internal_count,
        leaf_count=node_count - internal_count,
        key_count=key_count,
        total_degree=total_degree,
        height=height,
        leaf_relaxed_depth=rdepth if rdepth_uniform else None,
        total_weight1_slack=w1slack,
        potential=phi,
        weight_zero_count=weight_zero,
        slack_by_node=slack_map,
    )


def potential(tree: BSlackTree) -> int:
    """Sum of per-node potentials, recomputed from the structure.

    phi(u) = b - deg(u) when deg(u) < b and u has weight one, else b.
    """
    b = tree.b
    total = 0
    stack = [tree.root]
    while stack:
        node = stack.pop()
        ch = node.children
        deg = len(node.keys) if ch is None else len(ch)
        if node.weight == 1 and deg < b:
            total += b - deg
        else:
            total += b
        if ch is not None:
            stack.extend(ch)
    return total


def total_weight1_slack(tree: BSlackTree) -> int:
    """Total slack over weight-one nodes (weight-zero nodes are ignored)."""
    b = tree.b
    total = 0
    stack = [tree.root]
    while stack:
        node = stack.pop()
        ch = node.children
        if node.weight == 1:
            total += b - (len(node.keys) if ch is None else len(ch))
        if ch is not None:
            stack.extend(ch)
    return total


def leaf_items(tree: BSlackTree) -> list[tuple[Any, Any]]:
    """All (key, data) pairs in leaf order, read independently of the
    tree's own iteration helpers."""
    out: list = []
    def walk(node: Node) -> None:
        if node.children is None:
            out.extend(zip(node.keys, node.data))
        else:
            for c in node.children:
                walk(c)
    walk(tree.root)
    return out


def flatten_sequence(tree: BSlackTree) -> list:
    """In-order interleaving of separators and leaf keys.

    For a well-formed tree this sequence is non-decreasing, and stays so
    across every update and rebalancing step.
    """
    out: list = []
    def walk(node: Node) -> None:
        if node.children is None:
            out.extend(node.keys)
            return
        for i, c in enumerate(node.children):
            if i:
                out.append(node.keys[i - 1])
            walk(c)
    walk(tree.root)
    return out


def degree_totals_by_depth(tree: BSlackTree) -> list[int]:
    """Sum of node degrees at each depth, root first."""
    totals: list[int] = []
    level = [tree.root]
    while level:
        nxt: list[Node] = []
        t = 0
        for node in level:
            ch = node.children
            if ch is None:
                t += len(node.keys)
            else:
                t += len(ch)
                nxt.extend(ch)
        totals.append(t)
        level = nxt
    return totals


def replay_oracle(ops) -> dict:
    """Replay an operation sequence on a plain sorted-map reference model.

    Ops are ("insert", key, data) or ("delete", key).  Returns the final
    key -> data mapping.
    """
    model: dict = {}
    for op in ops:
        if op[0] == "insert":
            model[op[1]] = op[2]
        elif op[0] == "delete":
            model.pop(op[1], None)
        else:
            raise ValueError(f"unknown op {op!r}")
    return model


def _min_child_keys(b: int, child_degree: int) -> int:
    # Minimum keys below one internal node of the given degree whose
    # children are leaves: enumerate every admissible total leaf slack and
    # keep the smallest feasible key count.
    best = None
    for total_slack in range(b):           # child slack rule: at most b-1
        keys = child_degree * b - total_slack
        if keys < 0:
            continue
        # feasibility: split keys into child_degree leaves of degree <= b
        remaining = keys
        degrees = []
        for _ in range(child_degree):
            take = min(b, remaining)
            degrees.append(take)
            remaining -= take
        if remaining != 0:
            continue
        if best is None or keys < best:
            best = keys
    assert best is not None
    return best


def enumerate_min_keys_height2(b: int) -> int:
    """Minimum key count over all height-2 strict B-slack trees, found by
    exhaustive enumeration of root degree, child degrees and leaf slack.

    Desk-scale search: only 4 < b <= 10 is supported.
    """
    if not 4 < b <= 10:
        raise ValueError("exhaustive search supported for 4 < b <= 10 only")
    best: Optional[int] = None
    for k in range(2, b + 1):
        for child_degrees in combinations_with_replacement(range(2, b + 1), k):
            if k * b - sum(child_degrees) > b - 1:
                continue                    # root's children share too much slack
            total = sum(_min_child_keys(b, a) for a in child_degrees)
            if best is None or total < best:
                best = total
    assert best is not None
    return best
