"""Randomized construction of compliant exponent matrices.

A candidate matrix is drawn (normalized form: first row and first column
all zero), its violations are counted, and the worst entries are
re-randomized until the matrix is compliant or the pass budget runs out.
Compliance means: no residue-0 chain shorter than the target girth, and
none of the configured theta patterns.

Two verified matrices ship as package data: a (3,5) code with p=35 and a
(3,6) code with p=57, both girth 8 and free of theta(2,2,2).
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .cycles import (
    count_shared_check_six_cycles,
    count_zero_chains,
    find_theta222_exponent,
)
from .exponent import ExponentMatrix, parse_exponent_matrix
from .tanner import lift

FORBIDDABLE = ("theta122", "theta222")


@dataclass(frozen=True)
class SearchConfig:
    gamma: int
    eta: int
    p: int
    girth: int = 8
    forbid: tuple[str, ...] = ("theta222",)
    normalized: bool = True
    seed: int = 0
    max_attempts: int = 64
    max_repair_passes: int = 400

    def __post_init__(self):
        if self.gamma < 2 or self.eta < self.gamma:
            raise ValueError(f"need 2 <= gamma <= eta, got gamma={self.gamma}, eta={self.eta}")
        if self.p < 2:
            raise ValueError(f"lifting degree must be >= 2, got {self.p}")
        if self.girth not in (6, 8):
            raise ValueError(f"target girth must be 6 or 8, got {self.girth}")
        bad = set(self.forbid) - set(FORBIDDABLE)
        if bad:
            raise ValueError(f"unknown patterns {sorted(bad)}; choose from {FORBIDDABLE}")
        if self.max_attempts < 1 or self.max_repair_passes < 0:
            raise ValueError("attempt budget must be >= 1 and pass budget >= 0")


@dataclass(frozen=True)
class ViolationReport:
    """Violation counts plus per-entry charges for the repair step."""

    cycle_counts: dict[int, int]
    theta_counts: dict[str, int]
    charges: dict[tuple[int, int], int]

    @property
    def compliant(self) -> bool:
        return all(v == 0 for v in self.cycle_counts.values()) and all(
            v == 0 for v in self.theta_counts.values()
        )

    @property
    def total(self) -> int:
        return sum(self.cycle_counts.values()) + sum(self.theta_counts.values())

    def summary(self) -> str:
        parts = [f"cycles_{k}: {v}" for k, v in sorted(self.cycle_counts.items())]
        parts += [f"{k}: {v}" for k, v in sorted(self.theta_counts.items())]
        return ", ".join(parts) if parts else "unconstrained"


@dataclass(frozen=True)
class SearchReport:
    config: SearchConfig
    matrix: ExponentMatrix | None
    attempts_used: int
    succeeded_attempt: int | None
    final_violations: ViolationReport
    elapsed_s: float = field(compare=False)

    @property
    def success(self) -> bool:
        return self.matrix is not None


def check_constraints(m: ExponentMatrix, cfg: SearchConfig) -> ViolationReport:
    """Count every violation of the configured girth and theta constraints.

    Chain counts charge each participating entry once per appearance;
    theta witnesses charge the entries of their paths. The theta(1,2,2)
    test (shared-check 6-cycle pairs) only applies once no 4-cycles
    remain, since it needs well-defined shared checks.
    """
    if (m.gamma, m.eta, m.p) != (cfg.gamma, cfg.eta, cfg.p):
        raise ValueError(
            f"matrix is {m.gamma}x{m.eta} p={m.p}, config wants "
            f"{cfg.gamma}x{cfg.eta} p={cfg.p}"
        )
    cycle_counts: dict[int, int] = {}
    charges: Counter = Counter()
    for length in range(4, cfg.girth, 2):
        count, chain_charges = count_zero_chains(m, length)
        cycle_counts[length] = count
        charges.update(chain_charges)

    theta_counts: dict[str, int] = {}
    if "theta222" in cfg.forbid:
        witnesses = find_theta222_exponent(m)
        theta_counts["theta222"] = len(witnesses)
        p = m.p
        for w in witnesses:
            u, v = w.endpoints
            n0, n2 = u // p, v // p
            for idx, wi in enumerate(w.internals):
                n1 = wi // p
                m1 = w.checks[2 * idx] // p
                m2 = w.checks[2 * idx + 1] // p
                for block in ((m1, n0), (m1, n1), (m2, n1), (m2, n2)):
                    charges[block] += 1
    if "theta122" in cfg.forbid:
        if cycle_counts.get(4, 0) == 0:
            t = lift(m)
            conflicts, per_check = count_shared_check_six_cycles(t)
            theta_counts["theta122"] = conflicts
            p = m.p
            for chk in per_check:
                i = chk // p
                for var in t.chk_adj[chk]:
                    charges[(i, var // p)] += 1
        else:
            theta_counts["theta122"] = 0  # not evaluable below girth 6
    return ViolationReport(cycle_counts, theta_counts, dict(charges))


def _draw(cfg: SearchConfig, rng: np.random.Generator) -> ExponentMatrix:
    rows = []
    for i in range(cfg.gamma):
        row = []
        for j in range(cfg.eta):
            if cfg.normalized and (i == 0 or j == 0):
                row.append(0)
            else:
                row.append(int(rng.integers(cfg.p)))
        rows.append(tuple(row))
    return ExponentMatrix(cfg.gamma, cfg.eta, cfg.p, tuple(rows))


def _free_entries(cfg: SearchConfig):
    if cfg.normalized:
        return [(i, j) for i in range(1, cfg.gamma) for j in range(1, cfg.eta)]
    return [(i, j) for i in range(cfg.gamma) for j in range(cfg.eta)]


def search(cfg: SearchConfig) -> SearchReport:
    """Random search with violation-guided repair; deterministic per seed.

    Each attempt draws a fresh candidate and then repeatedly re-randomizes
    the free entries carrying the most violation charge. The first
    compliant candidate wins; otherwise the report carries the best
    candidate seen and its violations.
    """
    t_start = time.perf_counter()
    free = _free_entries(cfg)
    best: tuple[int, ExponentMatrix, ViolationReport] | None = None

    for attempt in range(cfg.max_attempts):
        rng = np.random.default_rng(
            np.random.SeedSequence(entropy=cfg.seed, spawn_key=(attempt,))
        )
        cand = _draw(cfg, rng)
        for pass_no in range(cfg.max_repair_passes + 1):
            report = check_constraints(cand, cfg)
            if report.compliant:
                return SearchReport(
                    cfg,
                    cand,
                    attempt + 1,
                    attempt,
                    report,
                    time.perf_counter() - t_start,
                )
            if best is None or report.total < best[0]:
                best = (report.total, cand, report)
            if pass_no == cfg.max_repair_passes:
                break
            free_charges = {e: report.charges.get(e, 0) for e in free}
            top = max(free_charges.values())
            if top == 0:
                # violations live entirely in the pinned row/column; reshuffle
                worst = list(free)
            else:
                worst = [e for e, c in free_charges.items() if c == top]
            for i, j in worst:
                cand = cand.with_shift(i, j, int(rng.integers(cfg.p)))

    assert best is not None
    return SearchReport(
        cfg, None, cfg.max_attempts, None, best[2], time.perf_counter() - t_start
    )


def _load_fixture(name: str) -> ExponentMatrix:
    text = resources.files(__package__).joinpath(f"data/{name}").read_text()
    return parse_exponent_matrix(text)


def h1() -> ExponentMatrix:
    """Bundled (3,5)-regular matrix, p=35: girth 8, theta(2,2,2)-free."""
    return _load_fixture("h1.qc")


def h2() -> ExponentMatrix:
    """Bundled (3,6)-regular matrix, p=57: girth 8, theta(2,2,2)-free."""
    return _load_fixture("h2.qc")
