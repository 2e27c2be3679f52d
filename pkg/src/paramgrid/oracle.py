"""Ground-truth enumeration, parameter sampling and approximation-set checks.

Everything here is exact: objective comparisons are rational, and the
verification verdicts are universally quantified only over the documented
sample families, never over floating-point surrogates.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import DomainError, TooLargeError
from .grid import GridSpec, grid_points
from .model import (
    ExplicitList,
    Lambda,
    ProblemInstance,
    RationalLike,
    Sense,
    SolutionRecord,
    Weight,
    ZERO,
    as_fraction,
    augmented_evaluate,
    check_lambda,
    evaluate,
    record_from_elements,
)
from .solvers.independence import IndependenceSystem
from .solvers.knapsack import KnapsackData
from .solvers.mincut import CutGraph, cut_record

#: Enumeration guards per family (2^(n-2) cuts, 2^n subsets).
MAX_CUT_VERTICES = 10
MAX_KNAPSACK_ITEMS = 15
MAX_INDEPENDENCE_ELEMENTS = 15

FAR_FIELD_DECADES = (3, 6, 9)


def enumerate_solutions(instance: ProblemInstance) -> tuple[SolutionRecord, ...]:
    """Every feasible solution of an enumerable instance, deterministic order."""
    payload = instance.payload
    if isinstance(payload, ExplicitList):
        return payload.records
    if isinstance(payload, CutGraph):
        if payload.n > MAX_CUT_VERTICES:
            raise TooLargeError(f"cut enumeration needs n <= {MAX_CUT_VERTICES}")
        others = [v for v in range(payload.n) if v not in (payload.s, payload.t)]
        records = []
        for mask in range(1 << len(others)):
            side = {payload.s} | {others[i] for i in range(len(others)) if mask >> i & 1}
            records.append(cut_record(instance, side))
        return tuple(records)
    if isinstance(payload, KnapsackData):
        if len(payload.items) > MAX_KNAPSACK_ITEMS:
            raise TooLargeError(f"subset enumeration needs n <= {MAX_KNAPSACK_ITEMS}")
        records = []
        for mask in range(1 << len(payload.items)):
            chosen = [i for i in range(len(payload.items)) if mask >> i & 1]
            if sum(payload.items[i].weight for i in chosen) <= payload.budget:
                records.append(
                    record_from_elements(payload, instance.lambda_min, "items", chosen)
                )
        return tuple(records)
    if isinstance(payload, IndependenceSystem):
        if payload.n > MAX_INDEPENDENCE_ELEMENTS:
            raise TooLargeError(
                f"independent-set enumeration needs n <= {MAX_INDEPENDENCE_ELEMENTS}"
            )
        records = []
        for mask in range(1 << payload.n):
            chosen = [i for i in range(payload.n) if mask >> i & 1]
            if payload.independent(chosen):
                records.append(
                    record_from_elements(payload, instance.lambda_min, "elements", chosen)
                )
        return tuple(records)
    raise TooLargeError(f"cannot enumerate payload type {type(payload).__name__}")


def pareto_prune(records: Sequence[SolutionRecord], sense: Sense) -> tuple[SolutionRecord, ...]:
    """Drop solutions that are componentwise dominated for the given sense.

    Safe for optimum queries: a nonnegative weighting always attains its
    optimum on the undominated set.
    """
    better = (lambda x, y: all(a <= b for a, b in zip(x, y))) if sense is Sense.MIN else (
        lambda x, y: all(a >= b for a, b in zip(x, y))
    )
    kept: list[SolutionRecord] = []
    seen: set[tuple] = set()
    key = (lambda r: r.F) if sense is Sense.MIN else (lambda r: tuple(-v for v in r.F))
    for rec in sorted(records, key=key):
        if rec.F in seen:
            continue
        if any(better(other.F, rec.F) for other in kept):
            continue
        seen.add(rec.F)
        kept.append(rec)
    return tuple(kept)


class _ScanState:
    """Integerized objective scan over a fixed record list."""

    def __init__(self, records: Sequence[SolutionRecord], sense: Sense, K: int):
        if not records:
            raise DomainError("empty solution pool")
        self.records = tuple(records)
        self.sense = sense
        self.K = K
        self.scale = math.lcm(
            *(v.denominator for rec in self.records for v in rec.F)
        )
        self.F_int = [
            tuple(int(v * self.scale) for v in rec.F) for rec in self.records
        ]

    def best(self, offsets: Sequence[Fraction]) -> tuple[SolutionRecord, Fraction]:
        q = math.lcm(*(off.denominator for off in offsets)) if offsets else 1
        mult = [int(off * q) for off in offsets]
        pick = None
        pick_val = None
        want_min = self.sense is Sense.MIN
        for idx, row in enumerate(self.F_int):
            val = row[0] * q
            for k in range(self.K):
                val += mult[k] * row[k + 1]
            if pick_val is None or (val < pick_val if want_min else val > pick_val):
                pick_val = val
                pick = idx
        return self.records[pick], Fraction(pick_val, q * self.scale)


@dataclass
class ExhaustiveOracle:
    """Exact solver by scan over the (pruned) enumerated solution set."""

    instance: ProblemInstance
    _scan: _ScanState = field(init=False, repr=False)

    def __post_init__(self):
        pruned = pareto_prune(enumerate_solutions(self.instance), self.instance.sense)
        self._scan = _ScanState(pruned, self.instance.sense, self.instance.K)

    def __call__(self, instance: ProblemInstance, lam: Sequence[RationalLike]) -> SolutionRecord:
        vec = check_lambda(instance, lam)
        offsets = [v - lo for v, lo in zip(vec, instance.lambda_min)]
        rec, _ = self._scan.best(offsets)
        return rec

    def optimum(self, lam: Sequence[RationalLike]) -> tuple[SolutionRecord, Fraction]:
        vec = check_lambda(self.instance, lam)
        offsets = [v - lo for v, lo in zip(vec, self.instance.lambda_min)]
        return self._scan.best(offsets)


def brute_force_optimum(
    instance: ProblemInstance, lam: Sequence[RationalLike]
) -> tuple[SolutionRecord, Fraction]:
    """Exact optimizer and optimal value by full enumeration."""
    vec = check_lambda(instance, lam)
    records = enumerate_solutions(instance)
    best_rec = None
    best_val = None
    for rec in records:
        val = evaluate(instance, rec, vec)
        if best_val is None or (
            val < best_val if instance.sense is Sense.MIN else val > best_val
        ):
            best_rec, best_val = rec, val
    return best_rec, best_val


def brute_force_optimum_weight(
    instance: ProblemInstance, w: Sequence[RationalLike]
) -> tuple[SolutionRecord, Fraction]:
    """Exact optimizer of the weighted component sum over an enumerable instance."""
    records = enumerate_solutions(instance)
    best_rec = None
    best_val = None
    for rec in records:
        val = augmented_evaluate(rec, w)
        if best_val is None or (
            val < best_val if instance.sense is Sense.MIN else val > best_val
        ):
            best_rec, best_val = rec, val
    return best_rec, best_val


def _fraction_in(rng: random.Random, lo: Fraction, hi: Fraction, denominator: int = 4096) -> Fraction:
    t = Fraction(rng.randrange(denominator + 1), denominator)
    return lo + (hi - lo) * t


def sample_parameters_labeled(
    instance: ProblemInstance, spec: GridSpec, n: int, seed: int = 0
) -> list[tuple[str, Lambda]]:
    """Deterministic mix of probe strategies, labeled for reporting.

    Order: the anchor lambda_min, far-field spikes along each axis, grid
    points (all of them when they fit the budget, else a seeded sample),
    then random cell interiors and log-uniform box points until n samples.
    """
    if n < 1:
        raise DomainError("need at least one sample")
    rng = random.Random(seed)
    lm = instance.lambda_min
    out: list[tuple[str, Lambda]] = [("lambda-min", lm)]

    for k in range(instance.K):
        for decade in FAR_FIELD_DECADES:
            if len(out) >= n:
                return out[:n]
            lam = tuple(
                lm[i] + (Fraction(10) ** decade if i == k else ZERO)
                for i in range(instance.K)
            )
            out.append(("far-field", lam))

    budget = n - len(out)
    if budget > 0:
        if spec.size <= max(budget // 2, 1):
            picks = [idx for idx, _ in grid_points(spec)]
        else:
            count = max(budget // 3, 1)
            picks = [
                tuple(rng.randrange(spec.lb, spec.ub + 1) for _ in range(spec.K))
                for _ in range(count)
            ]
        for idx in picks:
            if len(out) >= n:
                return out[:n]
            out.append(("grid-point", spec.point(idx)))

    box_lo = spec.c**spec.K / Fraction(math.factorial(spec.K + 1))
    box_hi = Fraction(math.factorial(spec.K + 1)) / spec.c**spec.K
    lo_log, hi_log = _flog(box_lo), _flog(box_hi)
    cell_top = max(spec.ub - 1, spec.lb)
    while len(out) < n:
        if rng.random() < 0.5:
            idx = tuple(rng.randint(spec.lb, cell_top) for _ in range(spec.K))
            lam = tuple(
                lm[k] + spec.base ** idx[k] * (1 + _fraction_in(rng, ZERO, spec.base - 1, 64))
                for k in range(spec.K)
            )
            out.append(("cell-interior", lam))
        else:
            lam = []
            for k in range(spec.K):
                # log-uniform float draw, then an exact dyadic rational
                # clamped into the box
                level = lo_log + rng.random() * (hi_log - lo_log)
                offset = Fraction(math.exp(max(-700.0, min(700.0, level))))
                offset = min(max(offset, box_lo), box_hi)
                lam.append(lm[k] + offset)
            out.append(("box-log-uniform", tuple(lam)))
    return out[:n]


def _flog(x: Fraction) -> float:
    return math.log(x.numerator) - math.log(x.denominator)


def sample_parameters(
    instance: ProblemInstance, spec: GridSpec, n: int, seed: int = 0
) -> list[Lambda]:
    return [lam for _, lam in sample_parameters_labeled(instance, spec, n, seed)]


@dataclass
class StrategyStats:
    samples: int = 0
    worst_ratio: Fraction | None = None


@dataclass
class VerificationReport:
    """Outcome of checking the set property over a sample of points.

    ``worst_ratio`` is None only when no finite ratio was observed;
    ``hard_failures`` counts points where the optimum is zero but the set's
    best value is not (no factor can repair those).
    """

    beta: Fraction
    samples_tested: int
    worst_ratio: Fraction | None
    worst_point: tuple | None
    passed: bool
    hard_failures: int
    strategies: dict[str, StrategyStats]
    space: str = "parameter"


def _ratio(best: Fraction, opt: Fraction, sense: Sense) -> Fraction | None:
    """Approximation factor of ``best`` against optimum ``opt``; None if infinite."""
    if sense is Sense.MIN:
        if opt == 0:
            return Fraction(1) if best == 0 else None
        return best / opt
    if best == 0:
        return Fraction(1) if opt == 0 else None
    return opt / best


def _solution_pool(solutions) -> list[SolutionRecord]:
    if hasattr(solutions, "solutions"):
        return list(solutions.solutions)
    return list(solutions)


def verify_approximation_set(
    instance: ProblemInstance,
    solutions,
    beta: RationalLike,
    samples: Sequence[Lambda] | Sequence[tuple[str, Lambda]],
) -> VerificationReport:
    """Check that some pooled solution is beta-approximate at every sample."""
    b = as_fraction(beta)
    pool = _solution_pool(solutions)
    labeled = [
        s if isinstance(s, tuple) and len(s) == 2 and isinstance(s[0], str) else ("custom", s)
        for s in samples
    ]
    scan = _ScanState(pool, instance.sense, instance.K)
    reference = ExhaustiveOracle(instance)

    worst: Fraction | None = None
    worst_point = None
    hard = 0
    strategies: dict[str, StrategyStats] = {}
    for label, lam in labeled:
        vec = check_lambda(instance, lam)
        offsets = [v - lo for v, lo in zip(vec, instance.lambda_min)]
        _, best_val = scan.best(offsets)
        _, opt_val = reference._scan.best(offsets)
        ratio = _ratio(best_val, opt_val, instance.sense)
        stats = strategies.setdefault(label, StrategyStats())
        stats.samples += 1
        if ratio is None:
            hard += 1
            worst_point = tuple(vec)
        else:
            if worst is None or ratio > worst:
                worst = ratio
                worst_point = tuple(vec)
            if stats.worst_ratio is None or ratio > stats.worst_ratio:
                stats.worst_ratio = ratio
    passed = hard == 0 and worst is not None and worst <= b
    return VerificationReport(
        beta=b,
        samples_tested=len(labeled),
        worst_ratio=worst,
        worst_point=worst_point,
        passed=passed,
        hard_failures=hard,
        strategies=strategies,
    )


def verify_on_weights(
    instance: ProblemInstance,
    solutions,
    beta: RationalLike,
    weights: Sequence[Weight],
) -> VerificationReport:
    """Weight-space variant of the set check (covers the w_0 = 0 boundary)."""
    b = as_fraction(beta)
    pool = _solution_pool(solutions)
    records = enumerate_solutions(instance)
    worst: Fraction | None = None
    worst_point = None
    hard = 0
    stats = StrategyStats()
    opt_of = min if instance.sense is Sense.MIN else max
    for w in weights:
        best_val = opt_of(augmented_evaluate(rec, w) for rec in pool)
        opt_val = opt_of(augmented_evaluate(rec, w) for rec in records)
        ratio = _ratio(best_val, opt_val, instance.sense)
        stats.samples += 1
        if ratio is None:
            hard += 1
            worst_point = tuple(w)
        else:
            if worst is None or ratio > worst:
                worst = ratio
                worst_point = tuple(w)
            if stats.worst_ratio is None or ratio > stats.worst_ratio:
                stats.worst_ratio = ratio
    passed = hard == 0 and worst is not None and worst <= b
    return VerificationReport(
        beta=b,
        samples_tested=stats.samples,
        worst_ratio=worst,
        worst_point=worst_point,
        passed=passed,
        hard_failures=hard,
        strategies={"weights": stats},
        space="weight",
    )


MAX_COVER_SOLUTIONS = 12


def minimum_cover_size(
    instance: ProblemInstance,
    beta: RationalLike,
    samples: Sequence[Lambda],
) -> int:
    """Smallest subset of X that is beta-approximate at every sample.

    Exhaustive search in increasing cardinality; a lower bound on the true
    minimum cover of the full parameter set.
    """
    b = as_fraction(beta)
    records = enumerate_solutions(instance)
    if len(records) > MAX_COVER_SOLUTIONS:
        raise TooLargeError(f"cover search needs at most {MAX_COVER_SOLUTIONS} solutions")
    lams = [check_lambda(instance, lam) for lam in samples]
    optima = [brute_force_optimum(instance, lam)[1] for lam in lams]

    covers = []
    for rec in records:
        mask = 0
        for j, lam in enumerate(lams):
            val = evaluate(instance, rec, lam)
            ratio = _ratio(val, optima[j], instance.sense)
            if ratio is not None and ratio <= b:
                mask |= 1 << j
        covers.append(mask)
    full = (1 << len(lams)) - 1
    for size in range(1, len(records) + 1):
        for combo in combinations(range(len(records)), size):
            merged = 0
            for i in combo:
                merged |= covers[i]
            if merged == full:
                return size
    raise DomainError("no subset covers the samples; even the full set fails")
