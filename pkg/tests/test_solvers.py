from fractions import Fraction as F

import pytest

from paramgrid import evaluate
from paramgrid.errors import TooLargeError
from paramgrid.oracle import enumerate_solutions
from paramgrid.solvers import (
    cut_graph,
    from_generators,
    greedy_solve,
    independence_instance,
    knapsack_data,
    knapsack_instance,
    knapsack_scaling_solve,
    knapsack_solve,
    min_cut_solve,
    mincut_instance,
    rank_quotient_exact,
)

from conftest import (
    optimum_by_enumeration,
    random_cut,
    random_independence,
    random_knapsack,
    random_lambda,
)


def path_cut_instance():
    return mincut_instance(cut_graph(3, [(0, 1, 3, (0,)), (1, 2, 1, (1,))], 0, 2, 1))


class TestMinCut:
    def test_path_graph_cheap_arc(self):
        inst = path_cut_instance()
        rec = min_cut_solve(inst, [F(1)])
        assert rec.encoding == ("cut", (0, 1))
        assert evaluate(inst, rec, [F(1)]) == 2

    def test_path_graph_price_flip(self):
        inst = path_cut_instance()
        rec = min_cut_solve(inst, [F(3)])
        assert rec.encoding == ("cut", (0,))
        assert evaluate(inst, rec, [F(3)]) == 3

    def test_path_graph_at_anchor(self):
        inst = path_cut_instance()
        assert inst.lambda_min == (F(-1),)
        rec = min_cut_solve(inst, [F(-1)])
        assert evaluate(inst, rec, [F(-1)]) == 0

    def test_matches_enumeration(self, rng):
        for _ in range(20):
            inst = random_cut(rng, n=rng.randint(3, 7), K=rng.choice([1, 2]), cmax=9)
            for _ in range(15):
                lam = random_lambda(rng, inst, spread=30)
                rec = min_cut_solve(inst, lam)
                assert evaluate(inst, rec, lam) == optimum_by_enumeration(inst, lam)


class TestKnapsack:
    def toy(self):
        return knapsack_instance(
            knapsack_data([(3, (1,), 2), (2, (4,), 2)], budget=2, K=1), lambda_min=[0]
        )

    def test_low_parameter_prefers_constant_profit(self):
        inst = self.toy()
        rec = knapsack_solve(inst, [F(0)])
        assert rec.encoding == ("items", (0,))
        assert evaluate(inst, rec, [F(0)]) == 3

    def test_high_parameter_flips(self):
        inst = self.toy()
        rec = knapsack_solve(inst, [F(1)])
        assert rec.encoding == ("items", (1,))
        assert evaluate(inst, rec, [F(1)]) == 6

    def test_zero_budget(self):
        inst = knapsack_instance(knapsack_data([(3, (1,), 2)], budget=0, K=1), lambda_min=[0])
        rec = knapsack_solve(inst, [F(1)])
        assert rec.encoding == ("items", ())

    def test_matches_enumeration(self, rng):
        for _ in range(20):
            inst = random_knapsack(rng, n=rng.randint(3, 9), K=rng.choice([1, 2]), cmax=9)
            for _ in range(10):
                lam = random_lambda(rng, inst, spread=20)
                rec = knapsack_solve(inst, lam)
                assert evaluate(inst, rec, lam) == optimum_by_enumeration(inst, lam)

    def test_matches_enumeration_n15(self, rng):
        inst = random_knapsack(rng, n=15, K=1, cmax=12)
        for _ in range(4):
            lam = random_lambda(rng, inst, spread=20)
            rec = knapsack_solve(inst, lam)
            assert evaluate(inst, rec, lam) == optimum_by_enumeration(inst, lam)


class TestKnapsackScaling:
    def test_guarantee_holds(self, rng):
        for _ in range(15):
            inst = random_knapsack(rng, n=rng.randint(3, 8), K=1, cmax=10)
            for acc_den in (2, 3, 5):
                accuracy = F(1, acc_den)
                lam = random_lambda(rng, inst, spread=10)
                rec = knapsack_scaling_solve(inst, lam, accuracy)
                opt = optimum_by_enumeration(inst, lam)
                assert evaluate(inst, rec, lam) >= (1 - accuracy) * opt

    def test_feasible(self, rng):
        inst = random_knapsack(rng, n=6, K=1, cmax=10)
        data = inst.payload
        rec = knapsack_scaling_solve(inst, random_lambda(rng, inst), F(1, 3))
        members = rec.encoding[1]
        assert sum(data.items[i].weight for i in members) <= data.budget


def path_matching_system():
    # Matchings of the path a-b-c-d: edges 0=ab, 1=bc, 2=cd, profits 2,3,2.
    edges = [(0, 1), (1, 2), (2, 3)]

    def member(subset):
        used = set()
        for e in subset:
            u, v = edges[e]
            if u in used or v in used:
                return False
            used.update((u, v))
        return True

    from paramgrid.solvers import IndependenceSystem

    return IndependenceSystem(
        n=3,
        member=member,
        elements=((2, (0,)), (3, (0,)), (2, (0,))),
        K=1,
        declared_alpha=F(2),
    )


class TestGreedy:
    def test_rank_one_matroid_exact(self):
        system = from_generators(
            2, [[0], [1]], [(5, (0,)), (3, (0,))], K=1, declared_alpha=1
        )
        inst = independence_instance(system)
        rec = greedy_solve(inst, [F(0)])
        assert rec.encoding == ("elements", (0,))

    def test_path_matching_ratio(self):
        system = path_matching_system()
        inst = independence_instance(system)
        rec = greedy_solve(inst, [F(0)])
        assert rec.encoding == ("elements", (1,))
        assert evaluate(inst, rec, [F(0)]) == 3
        assert optimum_by_enumeration(inst, [F(0)]) == 4

    def test_empty_ground_set_noop(self):
        system = from_generators(1, [[]], [(1, (0,))], K=1)
        inst = independence_instance(system)
        rec = greedy_solve(inst, [F(0)])
        assert rec.encoding == ("elements", ())

    def test_guarantee_against_exact_quotient(self, rng):
        for _ in range(25):
            inst = random_independence(rng, n=rng.randint(2, 7), K=1, cmax=9)
            q = rank_quotient_exact(inst.payload)
            for _ in range(6):
                lam = random_lambda(rng, inst, spread=10)
                got = evaluate(inst, greedy_solve(inst, lam), lam)
                opt = optimum_by_enumeration(inst, lam)
                assert q * got >= opt


class TestRankQuotient:
    def test_matroid_is_one(self):
        system = from_generators(
            3,
            [[0, 1], [0, 2], [1, 2]],
            [(1, (0,)), (1, (0,)), (1, (0,))],
            K=1,
        )
        assert rank_quotient_exact(system) == 1

    def test_path_matching_is_two(self):
        assert rank_quotient_exact(path_matching_system()) == 2

    def test_single_element(self):
        system = from_generators(1, [[0]], [(1, (0,))], K=1)
        assert rank_quotient_exact(system) == 1

    def test_size_guard(self):
        n = 21
        system = from_generators(n, [list(range(n))], [(1, (0,))] * n, K=1)
        with pytest.raises(TooLargeError):
            rank_quotient_exact(system)

    def test_downward_closure_of_generators(self, rng):
        for _ in range(20):
            inst = random_independence(rng, n=5, K=1, cmax=5)
            system = inst.payload
            for _ in range(30):
                size = rng.randint(0, 5)
                sub = frozenset(rng.sample(range(5), size))
                if system.independent(sub):
                    for e in sub:
                        assert system.independent(sub - {e})


class TestSolverAnchors:
    def test_values_nonnegative_at_anchor(self, rng):
        for make in (random_cut, random_knapsack, random_independence):
            inst = make(rng, 5, 2, 8)
            for rec in enumerate_solutions(inst):
                assert evaluate(inst, rec, inst.lambda_min) >= 0
