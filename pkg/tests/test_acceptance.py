"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines. Criterion 4 is split: the gamma=4 enumeration targets are asserted
faithfully in their own test, which fails by design because those targets
are mathematically unattainable (see its docstring and the companion test
that pins the true minima).
"""

import random

import numpy as np
import pytest

from qcldpc.cli import main
from qcldpc.cycles import (
    find_theta222,
    find_theta222_exponent,
    girth_exponent,
    girth_lifted,
)
from qcldpc.designer import SearchConfig, check_constraints, h1, h2, search
from qcldpc.ets import VnConstraintSet, feasible_vn_graphs, find_ets_in_code, min_ets_size
from qcldpc.exponent import ExponentMatrix
from qcldpc.simulate import DecoderConfig, SpaDecoder, awgn_llrs, estimate_fer, spa_decode
from qcldpc.tanner import lift
from qcldpc.turan import brute_force_ex, ex_upper_c3_theta222, min_a_for_b


def test_criterion_1_turan_exactness():
    """ex(n, theta(1,2,2)) = floor(n^2/4) for n = 4..8, by exhaustive search."""
    for n in range(4, 9):
        assert brute_force_ex(n, {"theta122"}).value == n * n // 4
    print("ACCEPTANCE 1 PASS: exhaustive ex(n, theta122) = floor(n^2/4) for n=4..8")


def test_criterion_2_turan_bound():
    """Exhaustive ex(n, {C3, theta(2,2,2)}) never exceeds n(sqrt(8n-7)-1)/4."""
    for n in range(1, 10):
        exact = brute_force_ex(n, {"c3", "theta222"}).value
        assert exact <= ex_upper_c3_theta222(n) + 1e-12
    print("ACCEPTANCE 2 PASS: exhaustive values respect the closed-form bound for n=1..9")


def test_criterion_3_table_reproduction(capsys):
    """CLI `bounds` and `min-ets` reproduce the girth-6 tables exactly."""

    def rows(argv):
        assert main(argv) == 0
        out = capsys.readouterr().out
        return [l for l in out.splitlines() if not l.startswith("#")]

    assert rows(["bounds", "--gamma", "3", "--regime", "girth6"]) == [
        "b,bound_min_a", "0,6", "1,7", "2,6", "3,5",
    ]
    assert rows(["bounds", "--gamma", "4", "--regime", "girth6"]) == [
        "b,bound_min_a", "0,8", "2,8", "4,7",
    ]
    for gamma, b, expected in [
        (3, 0, 6), (3, 1, 7), (3, 2, 6), (3, 3, 5),
        (4, 0, 8), (4, 2, 8), (4, 4, 7),
    ]:
        lines = rows(
            ["min-ets", "--gamma", str(gamma), "--b", str(b), "--regime", "girth6"]
        )
        assert lines[0] == f"min_a: {expected}"
    with capsys.disabled():
        print("ACCEPTANCE 3 PASS: girth-6 tables reproduced (bounds and enumeration agree)")


def test_criterion_4_bound_minima_girth8():
    """Closed-form girth-8 minima with the parity rule."""
    assert [min_a_for_b(b, 3, "girth8") for b in range(4)] == [8, 7, 6, 7]
    assert [min_a_for_b(b, 4, "girth8") for b in (0, 2, 4, 6)] == [11, 11, 10, 8]
    print("ACCEPTANCE 4a PASS: girth-8 bound minima (gamma=3: 8,7,6,7; gamma=4: 11,11,10,8)")


def test_criterion_4_enumeration_minima_gamma3():
    """Enumerated girth-8 minima for gamma=3."""
    cs = VnConstraintSet.girth8(3)
    assert [min_ets_size(3, b, cs) for b in range(4)] == [8, 9, 8, 7]
    print("ACCEPTANCE 4b PASS: girth-8 enumeration minima for gamma=3 are 8,9,8,7")


@pytest.mark.known_unattainable
def test_criterion_4_enumeration_minima_gamma4():
    """Target: enumerated girth-8 minima 11,11,10,9 for gamma=4, b=0,2,4,6.

    This test fails, deliberately unmasked: the targets are mathematically
    unattainable. (9,6) would need a VN graph with 15 edges on 9 vertices
    that is triangle-free and theta(2,2,2)-free, but the exhaustive Turan
    value on 9 vertices is 14 (criterion 2 machinery, plain-scan checked at
    n<=7). (11,0) would force every nonadjacent pair of a 4-regular
    triangle-free graph on 11 vertices to have exactly two common
    neighbors, i.e. srg(11,4,0,2), whose eigenvalue multiplicities are not
    integers. The companion test pins the true minima 12,12,11,10.
    Deselect with `-m "not known_unattainable"` to see the health of
    everything else.
    """
    cs = VnConstraintSet.girth8(4)
    assert [min_ets_size(4, b, cs) for b in (0, 2, 4, 6)] == [11, 11, 10, 9]


def test_criterion_4_gamma4_enumeration_true_values():
    """Companion: the actual gamma=4 girth-8 minima, with verified witnesses."""
    cs = VnConstraintSet.girth8(4)
    minima = {b: min_ets_size(4, b, cs) for b in (0, 2, 4, 6)}
    assert minima == {0: 12, 2: 12, 4: 11, 6: 10}
    # witnesses exist at the claimed minima and nowhere below
    for b, a in minima.items():
        e = (4 * a - b) // 2
        exists, wits = feasible_vn_graphs(a, e, cs, 1)
        assert exists and wits[0].n_edges == e
    # the b=6 infeasibility at a=9 follows from the exhaustive Turan value
    assert brute_force_ex(9, {"c3", "theta222"}).value == 14  # < 15 = (9*4-6)/2
    print(
        "ACCEPTANCE 4c NOTE: true gamma=4 girth-8 enumeration minima are "
        "12,12,11,10 (witnesses verified); the targets 11,11,10,9 are infeasible"
    )


def test_criterion_5_fixture_verification(m_h1, m_h2):
    """Both bundled codes: girth exactly 8, zero theta(2,2,2) at both levels."""
    for m in (m_h1, m_h2):
        assert girth_exponent(m, cap=12) == 8
        t = lift(m)
        assert girth_lifted(t) == 8
        assert find_theta222_exponent(m) == []
        assert find_theta222(t) == []
    print("ACCEPTANCE 5 PASS: both fixtures verify girth 8 and theta(2,2,2)-free at both levels")


def test_criterion_6_oracle_agreement():
    """>=200 random small matrices: the two levels never disagree."""
    rng = random.Random(20240817)
    checked = 0
    theta_checked = 0
    while checked < 200:
        gamma = rng.randint(2, 3)
        eta = rng.randint(2, 5)
        p = rng.randint(2, 13)
        m = ExponentMatrix(
            gamma, eta, p,
            tuple(tuple(rng.randrange(p) for _ in range(eta)) for _ in range(gamma)),
        )
        checked += 1
        ge = girth_exponent(m, cap=12)
        t = lift(m)
        gl = girth_lifted(t)
        assert ge == (gl if gl is not None and gl <= 12 else None), m
        if gl is not None and gl >= 6:
            theta_checked += 1
            assert (find_theta222_exponent(m) == []) == (find_theta222(t) == []), m
    assert theta_checked >= 40
    print(
        f"ACCEPTANCE 6 PASS: 200 random matrices, 0 girth disagreements, "
        f"theta agreement on all {theta_checked} girth>=6 cases"
    )


def test_criterion_7_designer_success():
    """At least 8 of 10 seeds succeed for each of the two target shapes."""
    outcomes = {}
    for gamma, eta, p in ((3, 5, 35), (3, 6, 57)):
        wins = 0
        for seed in range(10):
            cfg = SearchConfig(gamma, eta, p, girth=8, forbid=("theta222",), seed=seed)
            report = search(cfg)
            if report.success:
                m = report.matrix
                assert check_constraints(m, cfg).compliant
                t = lift(m)
                assert girth_lifted(t) >= 8
                assert find_theta222(t) == []
                wins += 1
        outcomes[(gamma, eta, p)] = wins
        assert wins >= 8, f"only {wins}/10 seeds succeeded for ({gamma},{eta},{p})"
    print(f"ACCEPTANCE 7 PASS: designer successes per shape: {outcomes}")


def test_criterion_8_ets_absence_in_h1(m_h1):
    """No trapping set of lift(H1) with b < a undercuts the gamma=3 minima."""
    minima = {0: 8, 1: 9, 2: 8, 3: 7}
    result = find_ets_in_code(lift(m_h1), a_max=7, b_max=3)
    assert result.complete
    offenders = [
        (inst.a, inst.b)
        for inst in result.instances
        if inst.b < inst.a and inst.a < minima[inst.b]
    ]
    assert offenders == []
    census = sorted({(i.a, i.b) for i in result.instances})
    print(f"ACCEPTANCE 8 PASS: lift(H1) a<=7, b<=3 instances {census}, no minima violations")


def test_criterion_9_simulator_properties(m_h1):
    """Syndrome soundness at scale, noiseless decode, reproducibility, monotone FER."""
    t = lift(m_h1)

    # dense parity-check matrix for the independent syndrome recomputation
    H = np.zeros((t.n_chk, t.n_var), dtype=np.int64)
    for chk in range(t.n_chk):
        H[chk, list(t.chk_adj[chk])] = 1

    decoder = SpaDecoder(t, DecoderConfig(max_iterations=20))
    rng = np.random.default_rng(90)
    total = 0
    violations = 0
    while total < 100_000:
        batch = min(4096, 100_000 - total)
        llrs = awgn_llrs(np.zeros((batch, t.n_var), dtype=np.uint8), 2.0, 0.4, rng)
        bits, converged, _ = decoder.decode_batch(llrs)
        syn = bits[converged] @ H.T % 2
        violations += int(np.count_nonzero(syn.any(axis=1)))
        total += batch
    assert violations == 0

    bits, convg, iters = spa_decode(t, np.full(t.n_var, 12.0))
    assert convg and iters == 1 and not bits.any()

    sweep_args = dict(seed=2718, min_errors=100, max_frames=200_000)
    points_a = estimate_fer(m_h1, [1.0, 2.0, 3.0], **sweep_args)
    points_b = estimate_fer(m_h1, [1.0, 2.0, 3.0], **sweep_args)
    assert points_a == points_b

    for lo, hi in zip(points_a, points_a[1:]):
        # higher SNR must not be significantly worse
        assert hi.ci_low <= lo.ci_high
    fers = [round(p.fer, 5) for p in points_a]
    print(
        f"ACCEPTANCE 9 PASS: 0/{total} syndrome violations, noiseless decode in 1 "
        f"iteration, sweep reproducible, FER nonincreasing within CIs {fers}"
    )
