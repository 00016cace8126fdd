"""Constraint checking and the randomized repair search."""

import pytest

from qcldpc.cycles import find_theta222, girth_lifted
from qcldpc.designer import SearchConfig, check_constraints, h1, h2, search
from qcldpc.exponent import ExponentMatrix
from qcldpc.tanner import lift


def cfg_for(m, girth=8, forbid=("theta222",), seed=0, **kw):
    return SearchConfig(m.gamma, m.eta, m.p, girth=girth, forbid=forbid, seed=seed, **kw)


class TestCheckConstraints:
    def test_h1_compliant(self, m_h1):
        report = check_constraints(m_h1, cfg_for(m_h1))
        assert report.compliant
        assert report.cycle_counts == {4: 0, 6: 0}
        assert report.theta_counts == {"theta222": 0}

    def test_h2_compliant(self, m_h2):
        assert check_constraints(m_h2, cfg_for(m_h2)).compliant

    def test_all_zero_has_4cycles(self):
        m = ExponentMatrix(3, 5, 35, tuple((0,) * 5 for _ in range(3)))
        report = check_constraints(m, cfg_for(m))
        assert report.cycle_counts[4] > 0
        assert not report.compliant
        assert report.charges  # repair has something to work with

    def test_dimension_mismatch_rejected(self, m_h1, m_h2):
        with pytest.raises(ValueError):
            check_constraints(m_h1, cfg_for(m_h2))

    def test_girth6_regime_counts_shared_six_cycles(self):
        # girth-6 matrix with a theta(2,2,2): plenty of shared 6-cycles too
        m = ExponentMatrix(3, 4, 13, ((3, 10, 9, 6), (9, 4, 7, 7), (10, 10, 11, 12)))
        cfg = SearchConfig(3, 4, 13, girth=6, forbid=("theta122",), seed=0)
        report = check_constraints(m, cfg)
        assert report.cycle_counts == {4: 0}
        assert report.theta_counts["theta122"] > 0


class TestSearch:
    def test_finds_3_5_35(self):
        report = search(SearchConfig(3, 5, 35, seed=1))
        assert report.success
        m = report.matrix
        assert check_constraints(m, cfg_for(m)).compliant
        # independent reverification on the lifted graph
        t = lift(m)
        assert girth_lifted(t) >= 8
        assert find_theta222(t) == []

    def test_deterministic(self):
        cfg = SearchConfig(3, 5, 35, seed=7)
        assert search(cfg) == search(cfg)

    def test_normalized_form(self):
        report = search(SearchConfig(3, 5, 35, seed=3))
        m = report.matrix
        assert all(s == 0 for s in m.shifts[0])
        assert all(row[0] == 0 for row in m.shifts)

    def test_infeasible_size_reports_failure(self):
        # p=5 is far too small for girth 8 at (3,5); must report, not crash
        report = search(
            SearchConfig(3, 5, 5, seed=0, max_attempts=3, max_repair_passes=20)
        )
        if report.success:
            assert check_constraints(report.matrix, cfg_for(report.matrix)).compliant
        else:
            assert report.matrix is None
            assert report.final_violations.total > 0
            assert report.attempts_used == 3

    def test_girth6_search_small(self):
        from qcldpc.cycles import find_shared_check_six_cycles

        cfg = SearchConfig(3, 4, 13, girth=6, forbid=("theta122",), seed=2)
        report = search(cfg)
        assert report.success
        assert check_constraints(report.matrix, cfg).compliant
        t = lift(report.matrix)
        assert girth_lifted(t) >= 6
        assert find_shared_check_six_cycles(t) == []

    def test_config_validation(self):
        with pytest.raises(ValueError):
            SearchConfig(1, 5, 35)
        with pytest.raises(ValueError):
            SearchConfig(3, 2, 35)
        with pytest.raises(ValueError):
            SearchConfig(3, 5, 35, girth=10)
        with pytest.raises(ValueError):
            SearchConfig(3, 5, 35, forbid=("dumbbell",))


class TestFixtures:
    def test_h1_bytes(self):
        m = h1()
        assert m.shifts == ((0, 0, 0, 0, 0), (0, 4, 8, 10, 21), (0, 30, 15, 3, 29))
        assert m.p == 35

    def test_h2_bytes(self):
        m = h2()
        assert m.shifts == (
            (0, 0, 0, 0, 0, 0),
            (0, 19, 10, 51, 52, 26),
            (0, 13, 56, 49, 36, 27),
        )
        assert m.p == 57
