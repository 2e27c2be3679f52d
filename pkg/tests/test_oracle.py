from fractions import Fraction as F

import pytest

from paramgrid import (
    SolutionRecord,
    Sense,
    brute_force_optimum,
    enumerate_solutions,
    explicit_instance,
    make_spec,
    minimum_cover_size,
    pareto_prune,
    sample_parameters,
    sample_parameters_labeled,
    verify_approximation_set,
    verify_on_weights,
)
from paramgrid.errors import TooLargeError
from paramgrid.oracle import ExhaustiveOracle
from paramgrid.solvers import knapsack_data, knapsack_instance, min_cut_solve, knapsack_solve

from conftest import (
    optimum_by_enumeration,
    random_cut,
    random_explicit,
    random_knapsack,
    random_lambda,
)


def toy_knapsack():
    return knapsack_instance(
        knapsack_data([(3, (1,), 2), (2, (4,), 2)], budget=2, K=1), lambda_min=[0]
    )


def rec(name, *values):
    return SolutionRecord(encoding=("explicit", name), F=tuple(F(v) for v in values))


class TestBruteForce:
    def test_toy_knapsack(self):
        x, val = brute_force_optimum(toy_knapsack(), [F(1)])
        assert x.encoding == ("items", (1,))
        assert val == 6

    def test_single_solution(self):
        inst = explicit_instance([rec("only", 2, 1)], K=1)
        x, val = brute_force_optimum(inst, [F(0)])
        assert x.encoding == ("explicit", "only")
        assert val == 2

    def test_path_cut(self):
        from conftest import random_cut  # noqa: F401 (structure parity)
        from paramgrid.solvers import cut_graph, mincut_instance

        inst = mincut_instance(cut_graph(3, [(0, 1, 3, (0,)), (1, 2, 1, (1,))], 0, 2, 1))
        x, val = brute_force_optimum(inst, [F(1)])
        assert x.encoding == ("cut", (0, 1))
        assert val == 2

    def test_too_large_guard(self, rng):
        inst = random_cut(rng, n=5, K=1, cmax=3)
        object.__setattr__(inst.payload, "n", 11)  # force past the guard
        with pytest.raises(TooLargeError):
            enumerate_solutions(inst)


class TestParetoPrune:
    def test_optimum_preserved(self, rng):
        for sense in (Sense.MIN, Sense.MAX):
            for _ in range(25):
                inst = random_explicit(rng, count=12, K=2, vmax=8, sense=sense)
                pruned = pareto_prune(enumerate_solutions(inst), sense)
                scan = ExhaustiveOracle(inst)
                for _ in range(10):
                    lam = random_lambda(rng, inst, spread=40)
                    _, fast = scan.optimum(lam)
                    assert fast == optimum_by_enumeration(inst, lam)
                    from paramgrid import evaluate

                    vals = [evaluate(inst, r, lam) for r in pruned]
                    best = min(vals) if sense is Sense.MIN else max(vals)
                    assert best == fast


class TestSampling:
    def test_first_sample_is_anchor(self):
        inst = toy_knapsack()
        spec = make_spec(F(1, 10), 1, F(1, 2), inst.lambda_min)
        assert sample_parameters(inst, spec, 1, seed=3) == [inst.lambda_min]

    def test_single_grid_point_included(self):
        inst = toy_knapsack()
        from paramgrid.grid import GridSpec

        spec = GridSpec(eps=F(1, 2), base=F(5, 4), lb=0, ub=0,
                        lambda_min=inst.lambda_min, K=1, c=F(1, 10))
        samples = sample_parameters(inst, spec, 12, seed=0)
        assert (inst.lambda_min[0] + 1,) in samples

    def test_deterministic_under_seed(self):
        inst = toy_knapsack()
        spec = make_spec(F(1, 10), 1, F(1, 2), inst.lambda_min)
        a = sample_parameters_labeled(inst, spec, 100, seed=9)
        b = sample_parameters_labeled(inst, spec, 100, seed=9)
        assert a == b
        c = sample_parameters_labeled(inst, spec, 100, seed=10)
        assert a != c

    def test_far_field_present(self):
        inst = toy_knapsack()
        spec = make_spec(F(1, 10), 1, F(1, 2), inst.lambda_min)
        labels = {label for label, _ in sample_parameters_labeled(inst, spec, 50, seed=0)}
        assert {"lambda-min", "far-field", "grid-point"} <= labels

    def test_samples_stay_in_domain(self, rng):
        inst = random_knapsack(rng, n=5, K=2, cmax=9)
        spec = make_spec(F(1, 20), 2, F(1, 2), inst.lambda_min)
        for lam in sample_parameters(inst, spec, 200, seed=1):
            assert all(v >= lo for v, lo in zip(lam, inst.lambda_min))


class TestVerify:
    def test_full_set_passes_at_any_beta(self, rng):
        inst = random_knapsack(rng, n=5, K=1, cmax=9)
        spec = make_spec(F(1, 10), 1, F(1, 2), inst.lambda_min)
        samples = sample_parameters_labeled(inst, spec, 60, seed=2)
        report = verify_approximation_set(inst, enumerate_solutions(inst), F(1), samples)
        assert report.passed
        assert report.worst_ratio == 1
        assert set(report.strategies) >= {"lambda-min", "far-field"}

    def test_truncated_set_fails(self):
        inst = toy_knapsack()
        spec = make_spec(F(1, 10), 1, F(1, 2), inst.lambda_min)
        samples = sample_parameters_labeled(inst, spec, 60, seed=2)
        # keep only the low-parameter solution; far field then degrades
        only_first = [r for r in enumerate_solutions(inst) if r.encoding == ("items", (0,))]
        report = verify_approximation_set(inst, only_first, F(3, 2), samples)
        assert not report.passed
        assert report.worst_ratio > F(3, 2)

    def test_lone_spike_fails_at_opposite_axis(self):
        # Keeping only one spike of the forced-cover gadget fails at the
        # other axis' unit weight.
        from paramgrid.fixtures import forced_cover_gadget

        gadget = forced_cover_gadget(F(2), 1)
        report = verify_on_weights(
            gadget.instance, [gadget.record("x0")], F(2), [(F(0), F(1))]
        )
        assert not report.passed
        assert report.worst_ratio == F(5, 2)

    def test_zero_ratio_conventions(self):
        # optimum 0 with set-best 0 counts as ratio one; optimum 0 with a
        # positive set-best is a hard failure.
        zero = rec("zero", 0, 0)
        one = rec("one", 2, 2)
        inst = explicit_instance([zero, one], K=1)
        ok = verify_on_weights(inst, [zero], F(1), [(F(1), F(1)), (F(1), F(0))])
        assert ok.passed and ok.worst_ratio == 1
        bad = verify_on_weights(inst, [one], F(100), [(F(1), F(1))])
        assert not bad.passed and bad.hard_failures == 1


class TestMinimumCover:
    def separated_instance(self):
        # Three solutions, each uniquely good in its own region.
        records = [rec("a", 1, 9, 9), rec("b", 9, 1, 9), rec("c", 9, 9, 1)]
        return explicit_instance(records, K=2)

    def test_constructed_separation_needs_all(self):
        inst = self.separated_instance()
        lams = [(F(1, 100), F(1, 100)), (F(100), F(1, 100)), (F(1, 100), F(100))]
        assert minimum_cover_size(inst, F(2), lams) == 3

    def test_single_solution(self):
        inst = explicit_instance([rec("only", 2, 1)], K=1)
        assert minimum_cover_size(inst, F(1), [(F(0),), (F(5),)]) == 1

    def test_monotone_in_beta_and_samples(self):
        inst = self.separated_instance()
        lams = [(F(1, 100), F(1, 100)), (F(100), F(1, 100)), (F(1, 100), F(100))]
        sizes = [minimum_cover_size(inst, beta, lams) for beta in (F(1), F(2), F(20))]
        assert sizes == sorted(sizes, reverse=True)
        growing = [minimum_cover_size(inst, F(2), lams[:k]) for k in (1, 2, 3)]
        assert growing == sorted(growing)


class TestOracleAgreement:
    def test_structured_solvers_match_enumeration(self, rng):
        for make, solver in ((random_cut, min_cut_solve), (random_knapsack, knapsack_solve)):
            for _ in range(10):
                inst = make(rng, 5, rng.choice([1, 2]), 8)
                for _ in range(8):
                    lam = random_lambda(rng, inst, spread=25)
                    from paramgrid import evaluate

                    assert evaluate(inst, solver(inst, lam), lam) == optimum_by_enumeration(inst, lam)
