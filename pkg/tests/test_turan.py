"""Closed-form bounds against the exhaustive oracle.

Frozen oracle values below were produced by brute_force_ex and, for n <= 7,
cross-checked against a plain scan of every labeled graph.
"""

import math

import pytest

from qcldpc.cycles import find_theta122
from qcldpc.ets import VnConstraintSet, feasible_vn_graphs
from qcldpc.turan import (
    BoundQuery,
    a_threshold_g8,
    admissible,
    bound_satisfied,
    brute_force_ex,
    ets_bound,
    ex_theta122,
    ex_upper_c3_theta222,
    floor_ex_upper_c3_theta222,
    min_a_for_b,
    parity_admissible,
)

# exact values from the exhaustive search (plain-scan checked for n <= 7)
EX_C3_THETA222 = {1: 0, 2: 1, 3: 2, 4: 4, 5: 5, 6: 7, 7: 9, 8: 12, 9: 14}


class TestClosedForms:
    @pytest.mark.parametrize("n, expected", [(4, 4), (6, 9), (7, 12)])
    def test_ex_theta122_values(self, n, expected):
        assert ex_theta122(n).value == expected

    def test_ex_theta122_witness_is_clean_and_extremal(self):
        r = ex_theta122(7)
        assert r.witness.n_edges == r.value
        assert find_theta122(r.witness) == []

    def test_ex_theta122_scope(self):
        with pytest.raises(ValueError):
            ex_theta122(3)

    @pytest.mark.parametrize(
        "n, expected",
        [(1, 0.0), (4, 4.0), (9, 9 * (math.sqrt(65) - 1) / 4)],
    )
    def test_upper_bound_values(self, n, expected):
        # n=4: 8n-7 = 25, bound = 4(sqrt(25)-1)/4 = 4 exactly
        assert ex_upper_c3_theta222(n) == pytest.approx(expected)

    def test_floor_is_exact_at_perfect_squares(self):
        assert floor_ex_upper_c3_theta222(4) == 4
        assert floor_ex_upper_c3_theta222(8) == 13


class TestEtsBound:
    def test_girth6_value(self):
        assert ets_bound(BoundQuery(5, 3, 3, "girth6")) == 2.5

    def test_girth8_values(self):
        assert ets_bound(BoundQuery(8, 0, 3, "girth8")) == pytest.approx(
            24 - 4 * (math.sqrt(57) - 1)
        )
        # sqrt(49) = 7 makes the bound exactly zero; decided without floats
        assert ets_bound(BoundQuery(7, 0, 3, "girth8")) == 0.0
        assert bound_satisfied(BoundQuery(7, 0, 3, "girth8"))
        assert not admissible(BoundQuery(7, 0, 3, "girth8"))  # parity: a odd, b even

    def test_admissible_girth6(self):
        assert admissible(BoundQuery(5, 3, 3, "girth6"))
        assert not admissible(BoundQuery(5, 2, 3, "girth6"))  # parity
        assert not bound_satisfied(BoundQuery(5, 2, 3, "girth6"))

    def test_parity_rule(self):
        assert parity_admissible(3, 5, 3)
        assert not parity_admissible(3, 5, 2)
        assert parity_admissible(4, 5, 2)
        assert not parity_admissible(4, 5, 3)


class TestMinAForB:
    @pytest.mark.parametrize(
        "gamma, regime, bs, expected",
        [
            (3, "girth6", (0, 1, 2, 3), (6, 7, 6, 5)),
            (4, "girth6", (0, 2, 4), (8, 8, 7)),
            (3, "girth8", (0, 1, 2, 3), (8, 7, 6, 7)),
            (4, "girth8", (0, 2, 4, 6), (11, 11, 10, 8)),
        ],
    )
    def test_table_values(self, gamma, regime, bs, expected):
        assert tuple(min_a_for_b(b, gamma, regime) for b in bs) == expected

    def test_returned_parity_matches(self):
        for b in range(5):
            assert (min_a_for_b(b, 3, "girth6") - b) % 2 == 0

    def test_odd_b_rejected_for_even_gamma(self):
        with pytest.raises(ValueError):
            min_a_for_b(1, 4, "girth8")


class TestThreshold:
    @pytest.mark.parametrize("gamma, expected", [(3, 4.0), (4, 7.0), (2, 2.0)])
    def test_values(self, gamma, expected):
        assert a_threshold_g8(gamma) == expected

    def test_consistency_with_bound(self):
        # any a at or below the threshold fails the bound for every b < a
        for gamma in (3, 4, 5):
            a = int(a_threshold_g8(gamma))
            assert not any(
                bound_satisfied(BoundQuery(a, b, gamma, "girth8")) for b in range(a)
            )


class TestBruteForce:
    @pytest.mark.parametrize("n", range(4, 8))
    def test_theta122_matches_closed_form(self, n):
        assert brute_force_ex(n, {"theta122"}).value == n * n // 4

    def test_c3_alone_is_turan(self):
        assert brute_force_ex(5, {"c3"}).value == 6

    @pytest.mark.parametrize("n", range(1, 9))
    def test_c3_theta222_frozen_values(self, n):
        assert brute_force_ex(n, {"c3", "theta222"}).value == EX_C3_THETA222[n]

    def test_against_upper_bound(self):
        for n in range(1, 9):
            assert EX_C3_THETA222[n] <= ex_upper_c3_theta222(n)

    def test_monotone_in_n(self):
        values = [brute_force_ex(n, {"theta122"}).value for n in range(4, 8)]
        assert values == sorted(values)
        bounds = [ex_upper_c3_theta222(n) for n in range(1, 12)]
        assert bounds == sorted(bounds)

    def test_bound_increases_in_gamma(self):
        for a in (4, 7, 9):
            values = [ets_bound(BoundQuery(a, 0, g, "girth8")) for g in (2, 3, 4, 5)]
            assert values == sorted(values)

    def test_witness_validates_against_detectors(self):
        r = brute_force_ex(7, {"c3", "theta222"})
        assert r.witness.n_edges == r.value
        adj = [0] * 7
        for u, v in r.witness.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        from qcldpc._bitgraph import graph_has_c3, graph_has_theta222

        assert not graph_has_c3(adj)
        assert not graph_has_theta222(adj)

    def test_witness_validates_via_cycle_detectors(self):
        # cross-module check: embed the witness as a trapping-set Tanner
        # graph and run the independent lifted-level detector on it
        from qcldpc.cycles import find_theta122, find_theta222
        from qcldpc.ets import ets_tanner_graph

        r = brute_force_ex(7, {"c3", "theta222"})
        gamma = max(r.witness.degree(v) for v in range(r.witness.n))
        assert find_theta222(ets_tanner_graph(r.witness, gamma)) == []
        r2 = brute_force_ex(6, {"theta122"})
        assert find_theta122(r2.witness) == []

    def test_budget_enforced(self):
        with pytest.raises(ValueError):
            brute_force_ex(10, {"c3"})
        with pytest.raises(ValueError):
            brute_force_ex(5, {"c5"})

    def test_feasibility_never_beats_bound(self):
        # anything the enumerator deems feasible satisfies the proven bound
        for gamma, regime in ((3, "girth8"), (3, "girth6")):
            cs = (
                VnConstraintSet.girth8(gamma)
                if regime == "girth8"
                else VnConstraintSet.girth6(gamma)
            )
            for a in range(2, 8):
                for b in range(0, a):
                    if (a * gamma - b) % 2:
                        continue
                    e = (a * gamma - b) // 2
                    if e < 0:
                        continue
                    exists, _ = feasible_vn_graphs(a, e, cs, 1)
                    if exists:
                        assert bound_satisfied(BoundQuery(a, b, gamma, regime))
