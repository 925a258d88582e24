"""Randomized workload harness.

A trial runs in two phases on a fresh tree, using a seeded splitmix64
generator so reports are reproducible bit for bit across platforms:

* phase 1 populates the tree to ``size // 2`` keys (uniform keys on
  ``[0, size)``) and then performs ``size`` further 50/50 insert/delete
  updates so the population mixes at its equilibrium;
* phase 2 performs ``ops`` updates with the configured insert/delete split
  and records the number of rebalancing steps done by every successful
  update.

Successful means a new key was inserted or a present key was removed;
duplicate inserts and misses change nothing and are not recorded.  The
histogram counts the six rebalancing steps only: the overflow that is part
of an insertion is tracked in the per-kind counters but, like the key
placement itself, is not a rebalancing step.

The report also carries whole-trial counters, which feed two a-posteriori
bound checks:

* standard policy: total rebalancing steps is at most
  ``2*i*(4 + 1.5*floor(log_{floor(b/2)}((n0+i)/2))) + 2*d/(b-1)``;
* constant-rebalancing policy: with per-kind counts C (compress), A
  (absorb), S (split), R0 (root-zero), Rr (root-replace), OC (one-child),
  ``(b-1)C + A + S + 2(R0+Rr) <= (b-1)i + d``, ``OC <= C``, ``A + R0 <= i``
  and ``Rr <= C``; additionally the tree potential never exceeds
  ``(b-1)i + d`` after any successful update.

Space figures use the one-word-per-key-or-pointer model with 2b-word
blocks: a tree of F nodes storing n keys costs 2bF words.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, asdict
from fractions import Fraction
from typing import Optional

from .tree import BSlackTree, Policy, Step, REBALANCE_STEPS
from . import checker

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Portable seeded 64-bit generator (splitmix64 finalizer).

    ``below(n)`` reduces by modulo; the bias is negligible for the bounds
    used here (far below 2**64).
    """

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        return self.next_u64() % bound


class TrialInvariantError(AssertionError):
    """An in-trial validation or bound check failed; carries the failing
    operation index and the seed so the run can be replayed."""


@dataclass(frozen=True)
class TrialConfig:
    b: int
    size: int
    ops: int
    seed: int = 0
    insert_pct: int = 50
    delete_pct: int = 50
    policy: Policy = Policy.STANDARD
    queue_capacity: int = 64
    validate_every: int = 0

    def __post_init__(self):
        if self.b <= 4:
            raise ValueError("b must exceed 4")
        if self.size < 1:
            raise ValueError("size must be positive")
        if self.ops < 0:
            raise ValueError("ops must be non-negative")
        if self.insert_pct < 0 or self.delete_pct < 0 \
                or self.insert_pct + self.delete_pct != 100:
            raise ValueError("insert_pct + delete_pct must equal 100")
        if self.queue_capacity < 1:
            raise ValueError("queue_capacity must be positive")
        if self.validate_every < 0:
            raise ValueError("validate_every must be >= 0")


@dataclass
class BoundCheck:
    name: str
    lhs: float
    rhs: float

    @property
    def ok(self) -> bool:
        return self.lhs <= self.rhs

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    def to_json_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs,
                "ok": self.ok, "margin": self.margin}


@dataclass
class TrialReport:
    config: TrialConfig
    i: int                              # phase-2 successful insertions
    d: int                              # phase-2 successful deletions
    step_counts: dict[str, int]         # phase 2
    histogram: dict[int, int]           # steps per successful update
    total_inserts: int                  # whole trial
    total_deletes: int
    total_step_counts: dict[str, int]
    n0: int                             # strict-tree size at trial start
    final_cleanup_steps: dict[str, int]  # batch policy only
    key_count: int
    node_count: int
    final_height: int
    average_degree: float
    words_per_key: float
    bound_checks: list[BoundCheck]
    phi_margin_min: Optional[int]       # const policy: min of budget - phi
    wall_time_s: float = field(default=0.0)

    @property
    def successful_updates(self) -> int:
        return self.i + self.d

    @property
    def steps_per_update(self) -> float:
        total = self.successful_updates
        if total == 0:
            return 0.0
        return sum(s * c for s, c in self.histogram.items()) / total

    @property
    def bounds_ok(self) -> bool:
        if any(not c.ok for c in self.bound_checks):
            return False
        if self.phi_margin_min is not None and self.phi_margin_min < 0:
            return False
        return True

    def to_json_dict(self) -> dict:
        cfg = asdict(self.config)
        cfg["policy"] = self.config.policy.value
        return {
            "config": cfg,
            "i": self.i,
            "d": self.d,
            "successful_updates": self.successful_updates,
            "steps_per_update": self.steps_per_update,
            "step_counts": self.step_counts,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "total_inserts": self.total_inserts,
            "total_deletes": self.total_deletes,
            "total_step_counts": self.total_step_counts,
            "n0": self.n0,
            "final_cleanup_steps": self.final_cleanup_steps,
            "key_count": self.key_count,
            "node_count": self.node_count,
            "final_height": self.final_height,
            "average_degree": self.average_degree,
            "words_per_key": self.words_per_key,
            "bound_checks": [c.to_json_dict() for c in self.bound_checks],
            "phi_margin_min": self.phi_margin_min,
            "bounds_ok": self.bounds_ok,
            "wall_time_s": self.wall_time_s,
        }


@dataclass(frozen=True)
class HistogramStats:
    zero_fraction: float
    le6_fraction: float
    lt10_fraction: float
    max_steps: int


def histogram_stats(report: TrialReport) -> HistogramStats:
    """Quantile summary of the steps-per-update histogram."""
    hist = report.histogram
    total = sum(hist.values())
    if total == 0:
        return HistogramStats(1.0, 1.0, 1.0, 0)
    zero = hist.get(0, 0)
    le6 = sum(c for s, c in hist.items() if s <= 6)
    lt10 = sum(c for s, c in hist.items() if s < 10)
    return HistogramStats(zero / total, le6 / total, lt10 / total,
                          max(hist))


def floor_log(base: int, num: int, den: int) -> int:
    """Largest integer t with base**t <= num/den (t may be negative)."""
    if base < 2 or num <= 0 or den <= 0:
        raise ValueError("floor_log needs base >= 2 and a positive ratio")
    t = 0
    if num >= den:
        while base ** (t + 1) * den <= num:
            t += 1
        return t
    while base ** (-t) * num < den:
        t += 1
    return -t


def standard_step_budget(b: int, n0: int, i: int, d: int) -> Fraction:
    """Upper bound on rebalancing steps after i insertions and d deletions
    applied to a strict tree of n0 keys:
    2i(4 + (3/2) floor(log_{floor(b/2)}((n0+i)/2))) + 2d/(b-1)."""
    budget = Fraction(2 * d, b - 1)
    if i > 0:
        log_term = floor_log(b // 2, n0 + i, 2)
        budget += 2 * i * (4 + Fraction(3, 2) * log_term)
    return budget


def check_amortized_bound(report: TrialReport,
                          policy: Optional[Policy] = None) -> list[BoundCheck]:
    """Evaluate the per-policy step-count bounds on whole-trial counters."""
    if policy is None:
        policy = report.config.policy
    b = report.config.b
    i = report.total_inserts
    d = report.total_deletes
    counts = report.total_step_counts
    checks: list[BoundCheck] = []
    if policy is Policy.CONST_REBALANCE:
        comp = counts[Step.COMPRESS.value]
        absorb = counts[Step.ABSORB.value]
        split = counts[Step.SPLIT.value]
        r0 = counts[Step.ROOT_ZERO.value]
        rr = counts[Step.ROOT_REPLACE.value]
        oc = counts[Step.ONE_CHILD.value]
        checks.append(BoundCheck(
            "potential_budget",
            (b - 1) * comp + absorb + split + 2 * (r0 + rr),
            (b - 1) * i + d,
        ))
        checks.append(BoundCheck("one_child_le_compress", oc, comp))
        checks.append(BoundCheck("absorb_rootzero_le_inserts", absorb + r0, i))
        checks.append(BoundCheck("rootreplace_le_compress", rr, comp))
    else:
        total = sum(counts[s.value] for s in REBALANCE_STEPS)
        budget = standard_step_budget(b, report.n0, i, d)
        checks.append(BoundCheck("log_step_budget", total, float(budget)))
    return checks


def run_trial(config: TrialConfig) -> TrialReport:
    """Run one seeded trial and compute its report.

    Raises :class:`TrialInvariantError` if an enabled validation fails or
    the constant-rebalancing potential budget is exceeded mid-run.
    """
    start = time.perf_counter()
    rng = SplitMix64(config.seed)
    tree = BSlackTree(config.b, config.policy, config.queue_capacity)
    b = config.b
    size = config.size
    const = config.policy is Policy.CONST_REBALANCE
    strict_mode = checker.mode_for_policy(config.policy)
    validate_mode = (checker.CheckMode.RELAXED
                     if config.policy is Policy.BATCH else strict_mode)
    every = config.validate_every
    op_index = 0

    def check_invariants(changed: bool) -> None:
        # O(1) potential budget after every successful update; full
        # validation on the configured schedule.
        if const and changed:
            budget = (b - 1) * tree.inserts + tree.deletes
            if tree.potential > budget:
                raise TrialInvariantError(
                    f"potential {tree.potential} exceeds budget {budget} "
                    f"at op {op_index}, seed {config.seed}")
        if every and op_index % every == 0:
            rep = checker.validate(tree, validate_mode)
            if not rep.ok:
                raise TrialInvariantError(
                    f"validation failed at op {op_index}, seed {config.seed}: "
                    f"{rep.structural_errors or rep.violation_kinds()}")

    phi_margin_min: Optional[int] = None

    # Phase 1: fill to size//2 keys, then `size` mixing updates.
    target = size // 2
    while tree.size < target:
        op_index += 1
        key = rng.below(size)
        changed, _ = tree.insert(key, key)
        check_invariants(changed)
    for _ in range(size):
        op_index += 1
        key = rng.below(size)
        if rng.below(100) < 50:
            changed, _ = tree.insert(key, key)
        else:
            changed, _ = tree.delete(key)
        check_invariants(changed)

    # Phase 2: the measured workload.
    base_counts = dict(tree.step_counts)
    base_inserts = tree.inserts
    base_deletes = tree.deletes
    histogram: dict[int, int] = {}
    ins_pct = config.insert_pct
    counts = tree.step_counts
    for _ in range(config.ops):
        op_index += 1
        do_insert = rng.below(100) < ins_pct
        key = rng.below(size)
        if do_insert:
            overflows = counts[Step.OVERFLOW]
            changed, steps = tree.insert(key, key)
            steps -= counts[Step.OVERFLOW] - overflows
        else:
            changed, steps = tree.delete(key)
        if changed:
            histogram[steps] = histogram.get(steps, 0) + 1
            if const:
                margin = (b - 1) * tree.inserts + tree.deletes - tree.potential
                if phi_margin_min is None or margin < phi_margin_min:
                    phi_margin_min = margin
        check_invariants(changed)

    final_cleanup: dict[str, int] = {}
    if config.policy is Policy.BATCH:
        final_cleanup = {k.value: v for k, v in tree.cleanup().items()}

    final = checker.validate(tree, strict_mode)
    if not final.ok:
        raise TrialInvariantError(
            f"final tree not strict for policy {config.policy.value}, "
            f"seed {config.seed}: "
            f"{final.structural_errors or final.violation_kinds()}")

    phase2 = {k.value: tree.step_counts[k] - base_counts[k] for k in Step}
    report = TrialReport(
        config=config,
        i=tree.inserts - base_inserts,
        d=tree.deletes - base_deletes,
        step_counts=phase2,
        histogram=histogram,
        total_inserts=tree.inserts,
        total_deletes=tree.deletes,
        total_step_counts={k.value: v for k, v in tree.step_counts.items()},
        n0=0,
        final_cleanup_steps=final_cleanup,
        key_count=final.key_count,
        node_count=final.node_count,
        final_height=final.height,
        average_degree=final.average_degree,
        words_per_key=(2 * b * final.node_count / final.key_count
                       if final.key_count else float("inf")),
        bound_checks=[],
        phi_margin_min=phi_margin_min,
    )
    report.bound_checks = check_amortized_bound(report)
    report.wall_time_s = time.perf_counter() - start
    return report
