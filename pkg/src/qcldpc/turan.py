"""Turan numbers for the two theta patterns and trapping-set size bounds.

Closed forms:

- ex(n, theta(1,2,2)) = floor(n^2 / 4) for n >= 4, with the balanced
  complete bipartite graph as an extremal witness.
- ex(n, {C3, theta(2,2,2)}) <= n (sqrt(8n - 7) - 1) / 4.

For a variable-regular Tanner graph with column weight gamma, these yield
lower bounds on the number b of odd-degree checks of an (a, b) elementary
trapping set:

- girth-6 regime (no two 6-cycles share a check): b >= a*gamma - a^2 / 2
- girth-8 regime (no two 8-cycles share two checks):
  b >= a*gamma - a (sqrt(8a - 7) - 1) / 2

An exhaustive labeled-graph search over n <= 9 vertices provides the
independent oracle for both closed forms. Bound comparisons are done in
exact integer arithmetic; the square-root inequalities are decided by
squaring, so ties (e.g. a bound value of exactly 0) are never lost to
floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from ._bitgraph import (
    edge_added_makes_c3,
    edge_added_makes_theta122,
    edge_added_makes_theta222,
    graph_has_c3,
    graph_has_theta122,
    graph_has_theta222,
)
from .tanner import VNGraph

Regime = Literal["girth6", "girth8"]

PATTERNS = ("c3", "theta122", "theta222")

BRUTE_FORCE_MAX_N = 9


@dataclass(frozen=True)
class BoundQuery:
    """One (a, b) feasibility question for column weight gamma."""

    a: int
    b: int
    gamma: int
    regime: Regime

    def __post_init__(self):
        if self.a < 1 or self.b < 0 or self.gamma < 2:
            raise ValueError(f"need a >= 1, b >= 0, gamma >= 2, got {self}")
        if self.regime not in ("girth6", "girth8"):
            raise ValueError(f"regime must be 'girth6' or 'girth8', got {self.regime!r}")


@dataclass(frozen=True)
class TuranResult:
    n: int
    family: tuple[str, ...]
    value: float
    exact: bool
    witness: VNGraph | None = None


def ex_theta122(n: int) -> TuranResult:
    """floor(n^2/4) with the balanced complete bipartite witness; n >= 4."""
    if n < 4:
        raise ValueError(f"closed form holds for n >= 4, got {n}")
    left = n // 2
    edges = [(i, j) for i in range(left) for j in range(left, n)]
    witness = VNGraph(n, edges)
    return TuranResult(n, ("theta122",), n * n // 4, True, witness)


def ex_upper_c3_theta222(n: int) -> float:
    """Upper bound n(sqrt(8n-7)-1)/4 on ex(n, {C3, theta(2,2,2)}); n >= 1."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return n * (math.sqrt(8 * n - 7) - 1) / 4


def floor_ex_upper_c3_theta222(n: int) -> int:
    """floor of the bound, computed exactly.

    Largest integer m with 4m + n <= n*sqrt(8n-7), decided by squaring.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    d = 8 * n - 7
    m = int(n * (math.sqrt(d) - 1) / 4)  # float guess, then exact adjust
    while (4 * (m + 1) + n) ** 2 <= n * n * d:
        m += 1
    while m > 0 and (4 * m + n) ** 2 > n * n * d:
        m -= 1
    return m


def parity_admissible(gamma: int, a: int, b: int) -> bool:
    """Degree-sum parity: gamma odd needs a == b (mod 2); gamma even needs b even."""
    if gamma % 2 == 1:
        return (a - b) % 2 == 0
    return b % 2 == 0


def ets_bound(q: BoundQuery) -> float:
    """Lower bound on b for an (a, b)-ETS in the query's regime."""
    a, g = q.a, q.gamma
    if q.regime == "girth6":
        return a * g - a * a / 2
    return a * g - a * (math.sqrt(8 * a - 7) - 1) / 2


def bound_satisfied(q: BoundQuery) -> bool:
    """b >= bound, decided exactly (integer arithmetic, squaring for girth 8)."""
    a, b, g = q.a, q.b, q.gamma
    if q.regime == "girth6":
        return 2 * b >= 2 * a * g - a * a
    # b >= a*g - a(sqrt(8a-7)-1)/2  <=>  a*sqrt(8a-7) >= 2(a*g - b) + ... :
    rhs = 2 * (a * g - b) + a
    if rhs <= 0:
        return True
    return a * a * (8 * a - 7) >= rhs * rhs


def admissible(q: BoundQuery) -> bool:
    """Regime inequality plus the parity rule."""
    return parity_admissible(q.gamma, q.a, q.b) and bound_satisfied(q)


def min_a_for_b(b: int, gamma: int, regime: Regime, a_max: int = 10_000) -> int:
    """Smallest a > b passing the regime bound and the parity rule.

    Restricted to b < a, the regime of interest for error floors (a
    trapping set with more odd checks than variables is benign and the
    closed-form tables exclude it).
    """
    if b < 0 or gamma < 2:
        raise ValueError(f"need b >= 0 and gamma >= 2, got b={b}, gamma={gamma}")
    if gamma % 2 == 0 and b % 2 == 1:
        raise ValueError(f"b={b} is inadmissible for even gamma={gamma}")
    for a in range(b + 1, a_max + 1):
        q = BoundQuery(a, b, gamma, regime)
        if admissible(q):
            return a
    raise RuntimeError(f"no admissible a <= {a_max} (unreachable for valid input)")


def a_threshold_g8(gamma: int) -> float:
    """Exclusive lower bound on a for any (a, b)-ETS with b < a, girth-8 regime."""
    if gamma < 2:
        raise ValueError(f"need gamma >= 2, got {gamma}")
    return (gamma * gamma - gamma + 2) / 2


def _incremental_checkers(family: frozenset[str]):
    checks = []
    if "c3" in family:
        checks.append(edge_added_makes_c3)
    if "theta122" in family:
        checks.append(edge_added_makes_theta122)
    if "theta222" in family:
        checks.append(edge_added_makes_theta222)
    return checks


def _full_scan_ok(adj: list[int], family: frozenset[str]) -> bool:
    if "c3" in family and graph_has_c3(adj):
        return False
    if "theta122" in family and graph_has_theta122(adj):
        return False
    if "theta222" in family and graph_has_theta222(adj):
        return False
    return True


def brute_force_ex(n: int, family) -> TuranResult:
    """Exact Turan number by exhaustive edge-subset search, n <= 9.

    Depth-first over the lexicographic edge list with include-first order.
    Pruning: best-so-far versus remaining edges, plus a degree-order
    canonical cut (only graphs with non-increasing degrees along the vertex
    order are explored; every isomorphism class has such a labeling) which
    also caps the edges still placeable among the remaining vertices.
    """
    fam = frozenset(family)
    unknown = fam - set(PATTERNS)
    if unknown:
        raise ValueError(f"unsupported patterns {sorted(unknown)}; supported: {PATTERNS}")
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"n={n} exceeds the exhaustive budget (n <= {BRUTE_FORCE_MAX_N})")
    if n < 0:
        raise ValueError("n must be non-negative")
    fam_sorted = tuple(sorted(fam))
    if n <= 1:
        return TuranResult(n, fam_sorted, 0, True, VNGraph(max(n, 0), []))

    checkers = _incremental_checkers(fam)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    m_total = len(edges)
    block_start = [idx for idx, (i, _) in enumerate(edges) if idx == 0 or edges[idx - 1][0] != i]

    def can_add(adj, u, v):
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        ok = not any(chk(adj, u, v) for chk in checkers)
        if not ok:
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
        return ok

    # Greedy start: any pattern-free graph lower-bounds the maximum.
    adj = [0] * n
    greedy = []
    for u, v in edges:
        if can_add(adj, u, v):
            greedy.append((u, v))
    best = len(greedy)
    best_edges = list(greedy)

    adj = [0] * n
    deg = [0] * n
    chosen: list[tuple[int, int]] = []

    def dfs(idx: int, count: int):
        nonlocal best, best_edges
        if count + (m_total - idx) <= best:
            return
        if idx in block_starts_set:
            k = edges[idx][0]  # block k begins; degrees of 0..k-1 are final
            dk = deg[k - 1]
            cap_sum = 0
            for j in range(k, n):
                if deg[j] > dk:
                    return
                cap_sum += dk - deg[j]
            if count + cap_sum // 2 <= best:
                return
        if idx == m_total:
            return
        u, v = edges[idx]
        if (u == 0 or deg[u] < deg[u - 1]) and can_add(adj, u, v):
            deg[u] += 1
            deg[v] += 1
            chosen.append((u, v))
            if count + 1 > best:
                best = count + 1
                best_edges = list(chosen)
            dfs(idx + 1, count + 1)
            chosen.pop()
            deg[u] -= 1
            deg[v] -= 1
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
        dfs(idx + 1, count)

    block_starts_set = set(block_start[1:])  # skip idx 0 (no finished block yet)
    dfs(0, 0)

    witness = VNGraph(n, best_edges)
    wadj = [0] * n
    for u, v in best_edges:
        wadj[u] |= 1 << v
        wadj[v] |= 1 << u
    assert _full_scan_ok(wadj, fam), "witness fails the full pattern scan"
    return TuranResult(n, fam_sorted, best, True, witness)
