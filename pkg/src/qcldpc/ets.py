"""Elementary-trapping-set feasibility and search.

For a variable-regular Tanner graph with column weight gamma, an (a, b)
elementary trapping set corresponds one-to-one to its VN graph: a simple
graph on a vertices with max degree <= gamma and exactly
e = (a*gamma - b) / 2 edges. Enumerating constrained VN graphs therefore
answers which (a, b) are realizable at all, independently of any concrete
code; find_ets_in_code then looks for actual instances inside one.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ._bitgraph import (
    adj_to_edges,
    edge_added_makes_c3,
    edge_added_makes_theta122,
    edge_added_makes_theta222,
    graph_has_c3,
    graph_has_theta122,
    graph_has_theta222,
    is_connected,
)
from .tanner import TannerGraph, VNGraph
from .turan import parity_admissible


@dataclass(frozen=True)
class VnConstraintSet:
    """Structural constraints a VN graph must satisfy.

    The girth-6 regime forbids theta(1,2,2); the girth-8 regime forbids
    triangles (the Tanner graph has no 6-cycles) and theta(2,2,2).
    """

    gamma: int
    forbid_triangle: bool = False
    forbid_theta122: bool = False
    forbid_theta222: bool = False
    connected_only: bool = True

    def __post_init__(self):
        if self.gamma < 1:
            raise ValueError(f"gamma must be >= 1, got {self.gamma}")

    @classmethod
    def girth6(cls, gamma: int) -> "VnConstraintSet":
        return cls(gamma, forbid_theta122=True)

    @classmethod
    def girth8(cls, gamma: int) -> "VnConstraintSet":
        return cls(gamma, forbid_triangle=True, forbid_theta222=True)

    def _checkers(self):
        checks = []
        if self.forbid_triangle:
            checks.append(edge_added_makes_c3)
        if self.forbid_theta122:
            checks.append(edge_added_makes_theta122)
        if self.forbid_theta222:
            checks.append(edge_added_makes_theta222)
        return checks


def _degree_sequences(a: int, total: int, d_max: int, d_min: int):
    """Non-increasing degree sequences with the given sum, Erdos-Gallai valid."""

    def rec(prefix, remaining, slots, cap):
        if slots == 0:
            if remaining == 0:
                yield tuple(prefix)
            return
        lo = max(d_min, remaining - (slots - 1) * cap)
        for d in range(min(cap, remaining - d_min * (slots - 1)), lo - 1, -1):
            prefix.append(d)
            yield from rec(prefix, remaining - d, slots - 1, d)
            prefix.pop()

    for seq in rec([], total, a, d_max):
        if _erdos_gallai(seq):
            yield seq


def _erdos_gallai(seq) -> bool:
    n = len(seq)
    if sum(seq) % 2 != 0:
        return False
    prefix = 0
    for k in range(1, n + 1):
        prefix += seq[k - 1]
        tail = sum(min(d, k) for d in seq[k:])
        if prefix > k * (k - 1) + tail:
            return False
    return True


def _generate_graphs(degrees, constraints: VnConstraintSet):
    """All graphs with the given (non-increasing) degree sequence that pass
    the constraint flags, yielded as adjacency bitmask lists.

    Generation completes the lowest unfinished vertex at each step. Among
    candidate neighbors that are still untouched (no edges yet) and share
    the same target degree, only index-prefix selections are explored:
    such vertices are interchangeable, so this prunes isomorphic duplicates
    without losing any isomorphism class.
    """
    a = len(degrees)
    checkers = constraints._checkers()
    adj = [0] * a
    residual = list(degrees)

    def rec(start_hint: int):
        v = -1
        for i in range(start_hint, a):
            if residual[i] > 0:
                v = i
                break
        if v == -1:
            if not constraints.connected_only or is_connected(adj, a):
                yield list(adj)
            return
        if (
            constraints.connected_only
            and v > 0
            and all(adj[i] == 0 for i in range(v, a) if residual[i] > 0)
        ):
            # future edges stay among the unfinished vertices, which have no
            # link to the finished (nonempty) part: disconnected for sure
            return
        need = residual[v]
        cands = [u for u in range(v + 1, a) if residual[u] > 0 and not adj[v] >> u & 1]
        if len(cands) < need:
            return

        def pick(pos: int, left: int, skipped: frozenset):
            if left == 0:
                yield from rec(v)
                return
            running = set(skipped)
            for idx in range(pos, len(cands)):
                if left > len(cands) - idx:
                    return
                u = cands[idx]
                untouched = adj[u] == 0
                if untouched and degrees[u] in running:
                    continue  # an equal-target untouched vertex was skipped earlier
                adj[v] |= 1 << u
                adj[u] |= 1 << v
                if not any(chk(adj, v, u) for chk in checkers):
                    residual[v] -= 1
                    residual[u] -= 1
                    yield from pick(idx + 1, left - 1, frozenset(running))
                    residual[v] += 1
                    residual[u] += 1
                adj[v] &= ~(1 << u)
                adj[u] &= ~(1 << v)
                if untouched:
                    running.add(degrees[u])

        yield from pick(0, need, frozenset())

    yield from rec(0)


def feasible_vn_graphs(
    a: int, e: int, constraints: VnConstraintSet, max_witnesses: int = 1
) -> tuple[bool, list[VNGraph]]:
    """Does a simple graph on a vertices with e edges, max degree <= gamma,
    satisfying the constraint flags exist? Returns witnesses up to the
    requested count.
    """
    if a < 1 or e < 0:
        raise ValueError(f"need a >= 1 and e >= 0, got a={a}, e={e}")
    if e > a * (a - 1) // 2:
        return False, []
    if 2 * e > a * constraints.gamma:
        return False, []
    if a == 1:
        return (True, [VNGraph(1, [])]) if e == 0 else (False, [])
    if constraints.connected_only and e < a - 1:
        return False, []

    d_max = min(constraints.gamma, a - 1)
    d_min = 1 if constraints.connected_only else 0
    witnesses: list[VNGraph] = []
    for seq in _degree_sequences(a, 2 * e, d_max, d_min):
        for adj in _generate_graphs(seq, constraints):
            witnesses.append(VNGraph(a, adj_to_edges(adj), degree_cap=constraints.gamma))
            if len(witnesses) >= max_witnesses:
                return True, witnesses
    return bool(witnesses), witnesses


def min_ets_size(
    gamma: int, b: int, constraints: VnConstraintSet, a_cap: int = 12
) -> int | None:
    """Smallest a with b < a <= a_cap admitting a VN graph under the
    constraints, or None when none exists within the cap.

    Only the b < a regime is searched: it is the one that matters for
    error floors, and (a, b) with a <= b are realizable trivially (a
    single variable node is a (1, gamma) set).
    """
    if b < 0:
        raise ValueError(f"b must be >= 0, got {b}")
    if gamma % 2 == 0 and b % 2 == 1:
        raise ValueError(f"b={b} is inadmissible for even gamma={gamma}")
    if a_cap > 12:
        raise ValueError(f"a_cap={a_cap} exceeds the enumeration budget (12)")
    for a in range(b + 1, a_cap + 1):
        if not parity_admissible(gamma, a, b):
            continue
        if (a * gamma - b) % 2 != 0:
            continue
        e = (a * gamma - b) // 2
        if e < 0:
            continue
        exists, _ = feasible_vn_graphs(a, e, constraints, max_witnesses=1)
        if exists:
            return a
    return None


@dataclass(frozen=True)
class EtsInstance:
    """An (a, b) elementary trapping set located in a Tanner graph."""

    variables: tuple[int, ...]
    a: int
    b: int
    deg2_checks: tuple[int, ...]
    deg1_checks: tuple[int, ...]
    deg1_per_variable: tuple[int, ...]

    def vn_graph(self, t: TannerGraph) -> VNGraph:
        """Induced VN graph: degree-2 checks of the instance as edges."""
        index = {v: i for i, v in enumerate(self.variables)}
        edge_checks = {}
        inside = set(self.variables)
        for chk in self.deg2_checks:
            u, v = (x for x in t.chk_adj[chk] if x in inside)
            edge_checks[(index[u], index[v])] = chk
        return VNGraph(self.a, edge_checks.keys(), edge_checks)


@dataclass(frozen=True)
class EtsSearchResult:
    instances: tuple[EtsInstance, ...]
    complete: bool
    nodes_explored: int


def find_ets_in_code(
    t: TannerGraph,
    a_max: int,
    b_max: int,
    constraints: VnConstraintSet | None = None,
    max_nodes: int | None = None,
) -> EtsSearchResult:
    """Exhaustive search for connected (a, b)-ETSs with a <= a_max,
    b <= b_max in a concrete Tanner graph.

    Grows connected variable subsets (connected through shared checks),
    pruning any subset that drives a check to induced degree 3 and any
    whose best reachable b within the size budget exceeds b_max. A
    disconnected trapping set always contains a connected one with smaller
    a and no larger component b, so connected search is exhaustive for the
    violation questions this answers.

    A max_nodes budget, when given, bounds the number of search states;
    exceeding it returns the partial result flagged incomplete.
    """
    n = t.n_var
    gamma_max = max((len(a) for a in t.var_adj), default=0)
    var_checks = t.var_adj
    # VN neighbors through any shared check
    neighbor_sets = [set() for _ in range(n)]
    for members in t.chk_adj:
        for u, v in combinations(members, 2):
            neighbor_sets[u].add(v)
            neighbor_sets[v].add(u)
    neighbors = [tuple(sorted(s)) for s in neighbor_sets]

    instances: list[EtsInstance] = []
    nodes = 0
    budget_hit = False

    def snapshot(S: list[int], chk_deg: dict[int, int]):
        variables = tuple(sorted(S))
        deg2 = tuple(sorted(c for c, d in chk_deg.items() if d == 2))
        deg1 = tuple(sorted(c for c, d in chk_deg.items() if d == 1))
        deg1_set = set(deg1)
        per_var = tuple(sum(1 for c in var_checks[v] if c in deg1_set) for v in variables)
        return EtsInstance(variables, len(S), len(deg1), deg2, deg1, per_var)

    def extend(S, chk_deg, b_cur, cand, start, in_cand, root):
        # candidates before `start` are excluded forever on this branch,
        # which makes every connected subset appear exactly once
        nonlocal nodes, budget_hit
        if len(S) >= a_max:
            return
        if b_cur - gamma_max * (a_max - len(S)) > b_max:
            return
        for idx in range(start, len(cand)):
            if max_nodes is not None and nodes >= max_nodes:
                budget_hit = True
                return
            nodes += 1
            u = cand[idx]
            # adding u must keep every induced check degree <= 2
            delta_b = 0
            ok = True
            for c in var_checks[u]:
                d = chk_deg.get(c, 0)
                if d >= 2:
                    ok = False
                    break
                delta_b += 1 if d == 0 else -1
            if not ok:
                continue
            for c in var_checks[u]:
                chk_deg[c] = chk_deg.get(c, 0) + 1
            S.append(u)
            b_new = b_cur + delta_b
            if b_new <= b_max:
                instances.append(snapshot(S, chk_deg))
            fresh = [w for w in neighbors[u] if w > root and w not in in_cand]
            cand.extend(fresh)
            in_cand.update(fresh)
            extend(S, chk_deg, b_new, cand, idx + 1, in_cand, root)
            if fresh:
                del cand[-len(fresh):]
                in_cand.difference_update(fresh)
            S.pop()
            for c in var_checks[u]:
                chk_deg[c] -= 1
                if chk_deg[c] == 0:
                    del chk_deg[c]

    for root in range(n):
        if max_nodes is not None and nodes >= max_nodes:
            budget_hit = True
            break
        nodes += 1
        chk_deg = {c: 1 for c in var_checks[root]}
        b0 = len(chk_deg)
        S = [root]
        if b0 <= b_max:
            instances.append(snapshot(S, chk_deg))
        cand = [w for w in neighbors[root] if w > root]
        extend(S, chk_deg, b0, cand, 0, set(cand), root)

    if constraints is not None:
        kept = []
        for inst in instances:
            vn = inst.vn_graph(t)
            adj = [0] * vn.n
            for u, v in vn.edges:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
            if constraints.forbid_triangle and graph_has_c3(adj):
                continue
            if constraints.forbid_theta122 and graph_has_theta122(adj):
                continue
            if constraints.forbid_theta222 and graph_has_theta222(adj):
                continue
            kept.append(inst)
        instances = kept

    instances.sort(key=lambda i: (i.a, i.b, i.variables))
    return EtsSearchResult(tuple(instances), not budget_hit, nodes)


def ets_tanner_graph(vn: VNGraph, gamma: int) -> TannerGraph:
    """Tanner graph of the ETS a VN graph describes.

    One degree-2 check per edge, then gamma - deg(v) degree-1 checks per
    vertex; the inverse of the VN-graph construction for variable-regular
    codes.
    """
    edges = []
    chk = 0
    for u, v in vn.edges:
        edges.append((u, chk))
        edges.append((v, chk))
        chk += 1
    for v in range(vn.n):
        missing = gamma - vn.degree(v)
        if missing < 0:
            raise ValueError(f"vertex {v} has degree {vn.degree(v)} > gamma={gamma}")
        for _ in range(missing):
            edges.append((v, chk))
            chk += 1
    return TannerGraph(vn.n, chk, edges)


def dump_vn_graph(vn: VNGraph) -> str:
    """Witness block: 'a e' header then one edge per line."""
    lines = [f"{vn.n} {vn.n_edges}"]
    for u, v in vn.edges:
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


def dump_ets_instance(inst: EtsInstance) -> str:
    """Instance block: header, edge list as check ids, then host-graph ids."""
    lines = [f"{inst.a} {len(inst.deg2_checks)}"]
    lines.append("variables " + " ".join(str(v) for v in inst.variables))
    lines.append("deg2_checks " + " ".join(str(c) for c in inst.deg2_checks))
    lines.append("deg1_checks " + " ".join(str(c) for c in inst.deg1_checks))
    lines.append(f"b {inst.b}")
    return "\n".join(lines) + "\n"
