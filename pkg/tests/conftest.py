"""Shared construction and fuzzing helpers."""

from __future__ import annotations

import random
from collections import Counter

from bslack.tree import BSlackTree, Node, Policy, Step
from bslack import checker


def leaf(*keys, weight=1):
    return Node(keys=list(keys), data=[None] * len(keys), weight=weight)


def min_key(node: Node):
    while node.children is not None:
        node = node.children[0]
    return node.keys[0]


def internal(children, weight=1, seps=None):
    """Internal node over ``children``; separators default to each child
    subtree's minimum key, the leaf-oriented routing convention."""
    if seps is None:
        seps = [min_key(c) for c in children[1:]]
    return Node(keys=seps, children=list(children), weight=weight)


def make_tree(b, root, policy=Policy.STANDARD, queue_capacity=64):
    return BSlackTree.from_root(b, root, policy, queue_capacity)


def random_batch_tree(b, ops, key_space, seed, queue_capacity=64):
    """Drive random updates under the batch policy, returning the tree and
    its reference model; the tree may hold arbitrary violations."""
    rng = random.Random(seed)
    tree = BSlackTree(b, Policy.BATCH, queue_capacity)
    model = {}
    for _ in range(ops):
        key = rng.randrange(key_space)
        if rng.random() < 0.5:
            tree.insert(key, key)
            model[key] = key
        else:
            tree.delete(key)
            model.pop(key, None)
    return tree, model


def assert_strict(tree, policy=None):
    mode = checker.mode_for_policy(policy or tree.policy)
    report = checker.validate(tree, mode)
    assert report.ok, (report.structural_errors,
                       [(v.kind, v.path) for v in report.violations])
    return report


def _snapshot(tree):
    report = checker.validate(tree, checker.CheckMode.RELAXED)
    assert report.ok, report.structural_errors
    return report


def check_update_deltas(tree, before, after, kind, new_or_hit):
    """Assert the slack/potential change of one insert or delete."""
    b = tree.b
    ds = after.total_weight1_slack - before.total_weight1_slack
    dp = after.potential - before.potential
    if not new_or_hit:
        assert ds == 0 and dp == 0
    elif kind == "insert_overflow":
        assert ds == b - 1            # also within the coarser 2(b-1) margin
        assert ds <= 2 * (b - 1)
        assert dp == b - 1
    elif kind == "insert":
        assert ds == -1
        assert dp in (-1, b - 1)      # +b-1 exactly when the leaf fills
    elif kind == "delete":
        assert ds == 1
        assert dp in (1, -(b - 1))    # -(b-1) exactly when the leaf was full
    return ds, dp


def check_step_deltas(tree, before, after, kind):
    """Assert the slack/potential change of one rebalancing step."""
    b = tree.b
    ds = after.total_weight1_slack - before.total_weight1_slack
    dp = after.potential - before.potential
    removed = before.node_count - after.node_count
    if kind is Step.ROOT_ZERO:
        assert removed == 0
        assert ds == b - 2
        assert dp == -2
    elif kind is Step.ROOT_REPLACE:
        assert removed == 1
        assert ds in (-1, -(b - 1))
        assert dp in (-(b - 1), -(b + 1))
    elif kind is Step.ABSORB:
        assert removed == 1
        assert ds == -1
        assert dp in (-1, -(b + 1))   # -1 exactly when the parent fills
    elif kind is Step.SPLIT:
        assert removed == -1
        assert ds == b - 1
        assert dp == -1
    elif kind is Step.COMPRESS:
        assert removed >= 1
        assert ds == -removed * (b - 1)
        assert ds <= -(b - 1)
        if tree.policy is Policy.CONST_REBALANCE:
            # the variant leaves one slack per survivor, so no survivor is
            # full and the potential drops by b-1 per removed node
            assert dp <= -removed * (b - 1)
    elif kind is Step.ONE_CHILD:
        assert removed == 0
        assert ds == 0
        if tree.policy is Policy.CONST_REBALANCE:
            assert dp <= 0
    else:
        raise AssertionError(f"unexpected step kind {kind}")
    # relaxed depth bookkeeping per step kind
    rd_delta = after.leaf_relaxed_depth - before.leaf_relaxed_depth
    if kind is Step.ROOT_ZERO:
        assert rd_delta == 1
    elif kind is Step.ROOT_REPLACE:
        assert rd_delta in (0, -1)
    else:
        assert rd_delta == 0
    return ds, dp


def drive_step_delta_fuzz(b, policy, min_steps, seed):
    """Build random relaxed trees, then apply rebalancing steps one at a
    time, checking every per-step slack/potential/relaxed-depth delta (and
    the per-update deltas while building).  Returns step counts by kind."""
    rng = random.Random(seed)
    checked = Counter()
    while sum(checked.values()) < min_steps:
        tree = BSlackTree(b, Policy.BATCH,
                          queue_capacity=rng.choice((4, 64)))
        key_space = rng.randrange(30, 400)
        before = _snapshot(tree)
        for _ in range(rng.randrange(100, 500)):
            key = rng.randrange(key_space)
            if rng.random() < 0.5:
                overflows = tree.step_counts[Step.OVERFLOW]
                new, _ = tree.insert(key, key)
                kind = ("insert_overflow"
                        if tree.step_counts[Step.OVERFLOW] > overflows
                        else "insert")
                hit = new
            else:
                kind = "delete"
                hit, _ = tree.delete(key)
            after = _snapshot(tree)
            check_update_deltas(tree, before, after, kind, hit)
            before = after
        tree.policy = policy           # step under the policy being fuzzed
        while True:
            step = tree.cleanup_step()
            if step is None:
                break
            after = _snapshot(tree)
            check_step_deltas(tree, before, after, step)
            assert tree.potential == after.potential   # cache stays exact
            checked[step] += 1
            before = after
        assert_strict(tree, policy)
    return checked
