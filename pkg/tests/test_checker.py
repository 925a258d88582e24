"""Checker: validation modes, potential, oracles, structural failures."""

import json

import pytest

from bslack.tree import BSlackTree, Node, Policy
from bslack import checker
from bslack.checker import CheckMode
from bslack import analysis
from conftest import internal, leaf, make_tree


def test_slack_values():
    assert checker.slack(leaf(1, 2, 3), 5) == 2
    full = internal([leaf(i, i + 1) for i in range(0, 50, 10)])
    assert checker.slack(full, 5) == 0


def test_strict_tree_children_share_at_most_b_minus_1_slack():
    t = BSlackTree(5)
    for k in range(200):
        t.insert(k, k)
    report = checker.validate(t, CheckMode.STRICT)
    assert report.ok

    def child_slack(node):
        return sum(checker.slack(c, 5) for c in node.children)

    stack = [t.root]
    while stack:
        node = stack.pop()
        if node.children is not None:
            assert child_slack(node) <= 4
            stack.extend(node.children)


def test_uniform_degree_tree_is_strict():
    # Every node of degree b-1 at uniform depth: a valid strict tree.
    b = 6
    leaves = [leaf(*range(i * 5, i * 5 + 5)) for i in range(25)]
    mids = [internal(leaves[i * 5:(i + 1) * 5]) for i in range(5)]
    root = internal(mids)
    report = checker.validate(make_tree(b, root), CheckMode.STRICT)
    assert report.ok and not report.violations


def test_overflow_leaves_exactly_one_weight_violation():
    t = BSlackTree(5, Policy.BATCH)
    for k in range(1, 6):
        t.insert(k, k)
    t.insert(6, 6)   # overflow, no cleanup under batch
    report = checker.validate(t, CheckMode.STRICT)
    assert report.ok is False
    assert [v.kind for v in report.violations] == ["weight"]
    assert report.weight_zero_count == 1


def test_minimal_height2_tree_validates_and_counts():
    # b=6: root of degree 2, children of degree 3 and 4, leaves full except
    # one per subtree with a single key: the fewest keys any height-2 tree
    # can hold.
    b = 6
    left = internal([leaf(*range(0, 6)), leaf(*range(6, 12)), leaf(12)])
    right = internal([leaf(*range(20, 26)), leaf(*range(26, 32)),
                      leaf(*range(32, 38)), leaf(38)])
    root = internal([left, right])
    t = make_tree(b, root)
    report = checker.validate(t, CheckMode.STRICT)
    assert report.ok, (report.structural_errors, report.violations)
    assert report.key_count == 32 == b * b - b + 2


def test_validate_modes_nest():
    # Anything strict is also const-strict and relaxed-valid.
    t = BSlackTree(8)
    for k in range(500):
        t.insert(k, k)
    for mode in (CheckMode.STRICT, CheckMode.STRICT_CONST, CheckMode.RELAXED):
        assert checker.validate(t, mode).ok


def test_const_strict_allows_more_slack():
    # Children share b+1 slack: a slack violation for standard, none for
    # the constant-rebalancing threshold b+k-1.
    u = internal([leaf(0, 1), leaf(10, 11)])     # slack 6 at b=5, k=2 -> 6 <= 6
    t = make_tree(5, u)
    strict = checker.validate(t, CheckMode.STRICT)
    assert [v.kind for v in strict.violations] == ["slack"]
    const = checker.validate(t, CheckMode.STRICT_CONST)
    assert const.ok


def test_structural_failures_are_not_violations():
    bad = internal([leaf(3, 2, 1), leaf(10, 11)])     # unsorted leaf keys
    report = checker.validate(make_tree(5, bad), CheckMode.RELAXED)
    assert not report.ok
    assert any("strictly increasing" in e for e in report.structural_errors)

    droopy = internal([leaf(1, 2), internal([leaf(10, 11), leaf(12, 13)])])
    report = checker.validate(make_tree(5, droopy), CheckMode.RELAXED)
    assert any("relaxed depths" in e for e in report.structural_errors)

    lopsided = Node(keys=[5, 6], children=[leaf(1), leaf(7)])  # count mismatch
    report = checker.validate(make_tree(5, lopsided), CheckMode.RELAXED)
    assert any("count mismatch" in e for e in report.structural_errors)

    crossed = internal([leaf(1, 2), leaf(3, 4)], seps=[99])   # order break
    report = checker.validate(make_tree(5, crossed), CheckMode.RELAXED)
    assert not report.ok

    zero_leaf = leaf(1, 2, weight=0)
    report = checker.validate(make_tree(5, zero_leaf), CheckMode.RELAXED)
    assert any("leaf with weight zero" in e for e in report.structural_errors)


def test_potential_examples():
    b = 5
    t = make_tree(b, leaf(1, 2, 3))
    assert checker.potential(t) == 2
    t_full = make_tree(b, leaf(1, 2, 3, 4, 5))
    assert checker.potential(t_full) == 5
    w0 = internal([leaf(0, 1, 2), leaf(10, 11, 12)], weight=0)
    assert checker.potential(make_tree(b, w0)) == 5 + 2 + 2


def test_potential_cache_matches_checker_after_random_ops():
    import random
    rng = random.Random(5)
    for policy in Policy:
        t = BSlackTree(6, policy)
        for _ in range(2500):
            k = rng.randrange(300)
            if rng.random() < 0.5:
                t.insert(k, k)
            else:
                t.delete(k)
        assert t.potential == checker.potential(t)


def test_phi_budget_from_empty_const():
    import random
    rng = random.Random(8)
    b = 6
    t = BSlackTree(b, Policy.CONST_REBALANCE)
    for _ in range(4000):
        k = rng.randrange(200)
        if rng.random() < 0.5:
            changed, _ = t.insert(k, k)
        else:
            changed, _ = t.delete(k)
        if changed:
            assert t.potential <= (b - 1) * t.inserts + t.deletes


def test_replay_oracle():
    assert checker.replay_oracle([("insert", 1, "a"), ("insert", 2, "b"),
                                  ("insert", 3, "c"), ("delete", 2)]) \
        == {1: "a", 3: "c"}
    with pytest.raises(ValueError):
        checker.replay_oracle([("frob", 1)])


@pytest.mark.parametrize("b,expected", [(6, 32), (8, 58), (10, 92)])
def test_enumerate_min_keys_height2(b, expected):
    got = checker.enumerate_min_keys_height2(b)
    assert got == expected == b * b - b + 2
    assert got > analysis.d_recurrence(2, 2, b)


def test_enumerate_min_keys_domain():
    with pytest.raises(ValueError):
        checker.enumerate_min_keys_height2(4)
    with pytest.raises(ValueError):
        checker.enumerate_min_keys_height2(12)


def test_report_serializes_to_json():
    t = BSlackTree(5, Policy.BATCH)
    for k in range(1, 8):
        t.insert(k, k)
    report = checker.validate(t, CheckMode.STRICT, detail=True)
    payload = json.loads(json.dumps(report.to_json_dict()))
    assert payload["b"] == 5
    assert payload["key_count"] == 7
    assert isinstance(payload["violations"], list)
    assert all(set(v) == {"kind", "path"} for v in payload["violations"])
    assert payload["slack_by_node"]


def test_strict_implies_depth_equals_relaxed_depth():
    t = BSlackTree(5)
    for k in range(300):
        t.insert(k, k)
    report = checker.validate(t, CheckMode.STRICT)
    assert report.ok
    assert report.leaf_relaxed_depth == report.height
