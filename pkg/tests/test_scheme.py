import itertools
import random
from fractions import Fraction as F

import pytest

from budgetmatroid import (
    EpsParam,
    FamilySpec,
    ValidationError,
    approximate,
    construct,
    find_rep,
    make_instance,
    run_for_alpha,
)
from budgetmatroid.matroid import restrict, truncate, union
from budgetmatroid.matroid import min_weight_basis
from budgetmatroid.oracle import brute_force_opt
from budgetmatroid.scheme import (
    alpha_grid,
    class_partition,
    is_replacement,
    is_substitution,
    profit_class,
    profitable_set,
    verify_representative,
)
from helpers import random_instance


def r_max_reference(k):
    # Independent computation of max{m : (1-eps)^m >= eps/2} + 1.
    eps = F(1, k)
    m = 0
    while (1 - eps) ** (m + 1) >= eps / 2:
        m += 1
    return m + 1


class TestEpsParam:
    def test_rejects_small_k(self):
        with pytest.raises(ValidationError):
            EpsParam(2)

    def test_from_target_ceiling(self):
        assert EpsParam.from_target(F(1, 3)).k == 21
        assert EpsParam.from_target(F(1, 2)).k == 14
        assert EpsParam.from_target(F(2, 5)).k == 18  # ceil(35/2)

    def test_from_target_range(self):
        for bad in (F(0), F(1), F(-1, 3), F(3, 2)):
            with pytest.raises(ValidationError):
                EpsParam.from_target(bad)

    def test_internal_eps_small_enough(self):
        for target in (F(1, 3), F(1, 2), F(1, 7), F(9, 10)):
            assert EpsParam.from_target(target).eps <= target / 7

    def test_q_value(self):
        assert EpsParam(3).q == 27
        assert EpsParam(4).q == 256

    @pytest.mark.parametrize("k", [3, 4, 5, 7, 10, 14])
    def test_r_max_matches_reference(self, k):
        assert EpsParam(k).r_max == r_max_reference(k)


def small_instance():
    # Partition matroid, two blocks of two, one pick each.
    return make_instance(
        F(5),
        [F(2), F(3), F(1), F(4)],
        [F(8), F(6), F(3), F(1)],
        FamilySpec("partition", blocks=((0, 1), (2, 3)), capacities=(1, 1)),
    )


class TestProfitClasses:
    def test_hand_computed_classes(self):
        inst = small_instance()
        eps = EpsParam(3)
        alpha = F(5)
        # Ratios p/(2 alpha) = p/10: 8/10 in (2/3, 1] -> class 1;
        # 6/10 in (4/9, 2/3] -> class 2; 3/10 in (8/27, 4/9] -> class 3;
        # 1/10 in (4/81*2/3, ...) -> between (2/3)^5 and (2/3)^6... check below.
        assert profit_class(inst, eps, alpha, 0) == 1
        assert profit_class(inst, eps, alpha, 1) == 2
        assert profit_class(inst, eps, alpha, 2) == 3
        # 1/10 = 0.1: (2/3)^5 = 32/243 ~ 0.1317 > 0.1 >= (2/3)^6 ~ 0.0878,
        # so class 6 if 6 <= r_max (= 5 for k = 3); otherwise unclassed.
        assert profit_class(inst, eps, alpha, 3) is None

    def test_ratio_above_one_unclassed(self):
        inst = small_instance()
        assert profit_class(inst, EpsParam(3), F(1), 0) is None  # 8/2 > 1

    def test_matches_interval_definition(self):
        rng = random.Random(5)
        for _ in range(50):
            inst = random_instance(rng, "uniform", rng.randint(1, 8))
            eps = EpsParam(rng.choice((3, 4, 5)))
            alpha = F(rng.randint(1, 40), rng.choice((1, 2)))
            for e in sorted(inst.active):
                ratio = inst.profits[e] / (2 * alpha)
                r = profit_class(inst, eps, alpha, e)
                if r is None:
                    assert ratio > 1 or ratio <= (1 - eps.eps) ** eps.r_max
                else:
                    assert (1 - eps.eps) ** r < ratio <= (1 - eps.eps) ** (r - 1)

    def test_partition_covers_classed_elements(self):
        inst = small_instance()
        classes = class_partition(inst, EpsParam(3), F(5))
        assert classes == {1: (0,), 2: (1,), 3: (2,)}


class TestFindRep:
    def test_slices_are_min_cost_bases(self):
        rng = random.Random(11)
        for _ in range(40):
            inst = random_instance(
                rng, rng.choice(("uniform", "partition", "graphic")), rng.randint(1, 8)
            )
            eps = EpsParam(3)
            alpha = F(rng.randint(1, 30))
            rep = find_rep(inst, eps, alpha)
            m = inst.active_matroid()
            classes = class_partition(inst, eps, alpha)
            assert set(rep.slices) == set(classes)
            level = min(eps.q, len(inst.active))
            for r, members in classes.items():
                cm = truncate(restrict(m, members), level)
                basis = rep.slices[r]
                assert basis <= frozenset(members)
                assert len(basis) <= eps.q
                assert cm.is_independent(basis)
                # No independent set in the class is larger, and none of
                # equal size is cheaper.
                for size in range(len(basis) + 1, len(members) + 1):
                    for combo in itertools.combinations(members, size):
                        assert not cm.is_independent(frozenset(combo))
                cost = inst.cost(basis)
                for combo in itertools.combinations(members, len(basis)):
                    if cm.is_independent(frozenset(combo)):
                        assert inst.cost(combo) >= cost

    def test_union_matroid_equivalence(self):
        rng = random.Random(13)
        for _ in range(25):
            inst = random_instance(rng, "graphic", rng.randint(2, 8))
            eps = EpsParam(3)
            alpha = F(rng.randint(1, 25))
            rep = find_rep(inst, eps, alpha)
            classes = class_partition(inst, eps, alpha)
            if not classes:
                assert rep.elements == frozenset()
                continue
            m = inst.active_matroid()
            level = min(eps.q, len(inst.active))
            parts = [
                truncate(restrict(m, members), level) for members in classes.values()
            ]
            u = union(parts)
            weights = {e: inst.costs[e] for e in u.ground}
            assert min_weight_basis(u, weights) == rep.elements


class TestRunForAlpha:
    def test_single_element(self):
        inst = make_instance(F(1), [F(1)], [F(4)], FamilySpec("uniform", rank=1))
        sol, stats = run_for_alpha(inst, EpsParam(3), F(4))
        assert sol == {0}
        assert stats.enum_count >= 1

    def test_enum_bound_holds(self):
        rng = random.Random(21)
        for _ in range(20):
            inst = random_instance(rng, "partition", rng.randint(1, 8))
            eps = EpsParam(3)
            opt = brute_force_opt(inst).profit
            if opt == 0:
                continue
            rep = find_rep(inst, eps, opt)
            _, stats = run_for_alpha(inst, eps, opt)
            assert stats.enum_count <= (len(rep.elements) + 1) ** eps.inv

    def test_good_alpha_gives_good_profit(self):
        rng = random.Random(23)
        for _ in range(15):
            inst = random_instance(rng, "uniform", rng.randint(1, 7))
            eps = EpsParam(7)
            opt = brute_force_opt(inst).profit
            if opt == 0:
                continue
            sol, _ = run_for_alpha(inst, eps, opt)
            assert inst.profit(sol) >= (1 - 7 * eps.eps) * opt


class TestAlphaGrid:
    def test_geometric_step(self):
        eps = EpsParam(3)
        grid = alpha_grid(F(3), F(10), eps)
        assert grid[0] == F(3)
        for a, b in zip(grid, grid[1:]):
            assert b == a * (1 + eps.eps)
        assert grid[-1] <= F(10) < grid[-1] * (1 + eps.eps)

    def test_contains_half_open_cover(self):
        # Any v in [lower, upper] has a grid point in [v/2, v].
        rng = random.Random(3)
        eps = EpsParam(3)
        lower, upper = F(1), F(100)
        grid = alpha_grid(lower, upper, eps)
        for _ in range(50):
            v = F(rng.randint(1, 400), 4)
            if not lower <= v <= upper:
                continue
            assert any(v / 2 <= a <= v for a in grid)


class TestApproximate:
    def test_guarantee_small_corpus(self):
        rng = random.Random(31)
        for _ in range(12):
            inst = random_instance(
                rng, rng.choice(("uniform", "partition", "graphic", "linear")), rng.randint(1, 7)
            )
            report = approximate(inst, F(1, 3), with_exact=True)
            assert report.profit >= F(2, 3) * report.exact_profit
            assert inst.active_matroid().is_independent(frozenset(report.solution))
            assert inst.cost(report.solution) <= inst.budget
            assert inst.profit(report.solution) == report.profit

    def test_zero_profit_instance(self):
        inst = make_instance(
            F(2), [F(1), F(1)], [F(0), F(0)], FamilySpec("uniform", rank=2)
        )
        report = approximate(inst, F(1, 3))
        assert report.profit == 0
        assert report.solution == ()

    def test_jobs_do_not_change_report(self):
        rng = random.Random(37)
        for _ in range(5):
            inst = random_instance(rng, "partition", rng.randint(3, 8))
            a = approximate(inst, F(1, 3), jobs=1).to_dict()
            b = approximate(inst, F(1, 3), jobs=4).to_dict()
            a.pop("wall_ms"), b.pop("wall_ms")
            assert a == b

    def test_profit_scaling_invariance(self):
        rng = random.Random(41)
        for _ in range(8):
            inst = random_instance(rng, "uniform", rng.randint(1, 6))
            scaled = make_instance(
                inst.budget,
                inst.costs,
                [p * 7 for p in inst.profits],
                inst.matroid_spec,
            )
            a = approximate(inst, F(1, 3))
            b = approximate(scaled, F(1, 3))
            assert b.solution == a.solution
            assert b.profit == 7 * a.profit


class TestCheckers:
    def setup_method(self):
        self.inst = small_instance()
        self.eps = EpsParam(3)
        self.opt = brute_force_opt(self.inst).profit  # {0, 2}: profit 11, cost 3

    def test_oracle_optimum(self):
        assert self.opt == F(11)

    def test_profitable_set(self):
        # Threshold eps * OPT = 11/3: profits 8, 6 exceed it; 3 and 1 do not.
        assert profitable_set(self.inst, self.eps, self.opt) == {0, 1}

    def test_identity_replacement(self):
        g = frozenset({0, 2})
        h = profitable_set(self.inst, self.eps, self.opt)
        assert is_replacement(self.inst, self.eps, g, g & h, self.opt)

    def test_replacement_rejects_costlier(self):
        # Z = {1} for G = {0, 2}: cost 3 > cost(G n H) = 2.
        assert not is_replacement(self.inst, self.eps, {0, 2}, {1}, self.opt)

    def test_replacement_rejects_low_profit(self):
        # Z = {} drops the profitable element 0 entirely.
        assert not is_replacement(self.inst, self.eps, {0, 2}, set(), self.opt)

    def test_substitution_requires_same_class(self):
        alpha = self.opt
        # For G = {0}, Z = {0} is a substitution (identity).
        assert is_substitution(self.inst, self.eps, alpha, {0}, {0}, self.opt)
        # Z = {1} lies in a different profit class than 0.
        assert not is_substitution(self.inst, self.eps, alpha, {0}, {1}, self.opt)

    def test_substitution_is_replacement_when_profitable(self):
        rng = random.Random(47)
        for _ in range(20):
            inst = random_instance(rng, "uniform", rng.randint(1, 6))
            eps = EpsParam(3)
            opt = brute_force_opt(inst).profit
            if opt == 0:
                continue
            alpha = opt
            m = inst.active_matroid()
            elems = sorted(inst.active)
            for gsize in range(0, min(3, len(elems)) + 1):
                for g in itertools.combinations(elems, gsize):
                    gs = frozenset(g)
                    if not m.is_independent(gs):
                        continue
                    for zsize in range(0, len(elems) + 1):
                        for z in itertools.combinations(elems, zsize):
                            if is_substitution(inst, eps, alpha, gs, z, opt):
                                assert is_replacement(inst, eps, gs, z, opt)


class TestVerifyRepresentative:
    def test_full_ground_is_representative(self):
        inst = small_instance()
        eps = EpsParam(3)
        opt = brute_force_opt(inst).profit
        ok, witness = verify_representative(inst, eps, inst.active, opt)
        assert ok and witness is None

    def test_empty_set_fails_with_witness(self):
        inst = small_instance()
        eps = EpsParam(3)
        opt = brute_force_opt(inst).profit
        ok, witness = verify_representative(inst, eps, frozenset(), opt)
        assert not ok
        assert witness & profitable_set(inst, eps, opt)

    def test_find_rep_output_verifies(self):
        rng = random.Random(53)
        for _ in range(15):
            inst = random_instance(rng, rng.choice(("uniform", "graphic")), rng.randint(1, 7))
            eps = EpsParam(3)
            opt = brute_force_opt(inst).profit
            if opt == 0:
                continue
            rep = find_rep(inst, eps, opt)
            ok, witness = verify_representative(inst, eps, rep.elements, opt)
            assert ok, (inst, sorted(rep.elements), witness)
