"""Girth computation and theta-pattern detection.

Everything here exists twice on purpose: once at the exponent-matrix level
(block chains and path values over Z_p) and once at the lifted-graph level
(explicit search on the Tanner graph). The two levels are independent
implementations that must agree, and the test suite holds them to that.

A theta graph theta(x,y,z) is two vertices joined by three internally
disjoint paths of lengths x, y, z. The two patterns detected are
theta(1,2,2) (an edge whose endpoints have two common neighbors) and
theta(2,2,2) (two vertices with three common neighbors, i.e. K_{2,3}).
"""

from __future__ import annotations

from collections import Counter, defaultdict, deque
from dataclasses import dataclass
from itertools import combinations

from .exponent import INF, ExponentMatrix
from .tanner import GirthViolation, TannerGraph, VNGraph, build_vn_adjacency

GIRTH_CAPS = (4, 6, 8, 10, 12)


@dataclass(frozen=True)
class BlockChain:
    """Alternating row/column index chain of length 2k.

    The chain visits blocks (rows[i], cols[i]) and (rows[i], cols[i+1])
    with indices taken cyclically; consecutive rows differ and consecutive
    columns differ, wrap-around included.
    """

    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        k = len(self.rows)
        if k < 2 or len(self.cols) != k:
            raise ValueError("chain needs k >= 2 row indices and as many column indices")
        for i in range(k):
            if self.rows[i] == self.rows[(i + 1) % k]:
                raise ValueError(f"consecutive rows equal at position {i}")
            if self.cols[i] == self.cols[(i + 1) % k]:
                raise ValueError(f"consecutive columns equal at position {i}")

    @property
    def length(self) -> int:
        return 2 * len(self.rows)

    def blocks(self) -> tuple[tuple[int, int], ...]:
        k = len(self.rows)
        out = []
        for i in range(k):
            out.append((self.rows[i], self.cols[i]))
            out.append((self.rows[i], self.cols[(i + 1) % k]))
        return tuple(out)


def chain_sum(chain: BlockChain, m: ExponentMatrix) -> int | None:
    """Alternating shift sum of the chain, mod p.

    Returns None when the chain touches a zero block (no lifted cycle can
    follow it); otherwise the residue, which is 0 iff the chain lifts to
    cycles of length 2k.
    """
    k = len(chain.rows)
    total = 0
    for i in range(k):
        a = m.shifts[chain.rows[i]][chain.cols[i]]
        b = m.shifts[chain.rows[i]][chain.cols[(i + 1) % k]]
        if a == INF or b == INF:
            return None
        total += a - b
    return total % m.p


def _chain_variants(rows: tuple[int, ...], cols: tuple[int, ...]):
    """All rotations and both directions of a chain, as (rows, cols) pairs."""
    k = len(rows)
    rev_rows = tuple(reversed(rows))
    rev_cols = (cols[0],) + tuple(reversed(cols[1:]))
    for r in range(k):
        yield rows[r:] + rows[:r], cols[r:] + cols[:r]
        yield rev_rows[r:] + rev_rows[:r], rev_cols[r:] + rev_cols[:r]


def _is_canonical(rows: tuple[int, ...], cols: tuple[int, ...]) -> bool:
    return (rows, cols) == min(_chain_variants(rows, cols))


def enumerate_chains(gamma: int, eta: int, k: int):
    """Yield each length-2k chain once, in canonical orientation."""

    def rows_seqs(seq):
        if len(seq) == k:
            if seq[-1] != seq[0]:
                yield tuple(seq)
            return
        for r in range(gamma):
            if r != seq[-1]:
                yield from rows_seqs(seq + [r])

    def cols_seqs(seq):
        if len(seq) == k:
            if seq[-1] != seq[0]:
                yield tuple(seq)
            return
        for c in range(eta):
            if c != seq[-1]:
                yield from cols_seqs(seq + [c])

    all_cols = [seq for c0 in range(eta) for seq in cols_seqs([c0])]
    for r0 in range(gamma):
        for rows in rows_seqs([r0]):
            for cols in all_cols:
                if _is_canonical(rows, cols):
                    yield BlockChain(rows, cols)


def count_zero_chains(m: ExponentMatrix, length: int):
    """Count canonical residue-0 chains of the given length.

    Returns (count, charges) where charges maps each block (i, j) to the
    number of zero chains it participates in (counted per appearance).
    Every zero chain lifts to p distinct cycles of that length when the
    length is minimal, so these counts track lifted short cycles up to the
    factor p.
    """
    if length % 2 != 0 or length < 4:
        raise ValueError(f"cycle length must be an even number >= 4, got {length}")
    count = 0
    charges: Counter = Counter()
    for chain in enumerate_chains(m.gamma, m.eta, length // 2):
        if chain_sum(chain, m) == 0:
            count += 1
            for block in chain.blocks():
                charges[block] += 1
    return count, charges


def girth_exponent(m: ExponentMatrix, cap: int = 12) -> int | None:
    """Smallest 2k <= cap with a residue-0 chain; None means girth >= cap + 2.

    Implemented as a residue-set sweep over non-backtracking block walks,
    which decides chain existence exactly without enumerating chains.
    """
    if cap not in GIRTH_CAPS:
        raise ValueError(f"cap must be one of {GIRTH_CAPS}, got {cap}")
    if not m.fully_connected:
        raise ValueError("girth_exponent requires a fully connected matrix")
    p = m.p
    mask = (1 << p) - 1
    s = m.shifts

    def rot(bits: int, k: int) -> int:
        # residue set shifted by +k mod p
        k %= p
        if k == 0:
            return bits
        return ((bits << k) | (bits >> (p - k))) & mask

    # One walk front per (start column n0, first row m0). State key is
    # (current index, previous index); the value is the residue bitset.
    fronts = []
    for n0 in range(m.eta):
        for m0 in range(m.gamma):
            fronts.append((n0, m0, {(m0, n0): 1 << (s[m0][n0] % p)}))

    for depth in range(2, cap + 1):
        at_row = depth % 2 == 1
        next_fronts = []
        hit = None
        for n0, m0, states in fronts:
            new: dict[tuple[int, int], int] = {}
            if at_row:
                # column -> row: enter block (r, c), add its shift
                for (c, rprev), bits in states.items():
                    for r in range(m.gamma):
                        if r == rprev:
                            continue
                        key = (r, c)
                        moved = rot(bits, s[r][c])
                        new[key] = new.get(key, 0) | moved
            else:
                # row -> column: leave block (r, c'), subtract its shift
                for (r, cprev), bits in states.items():
                    for c in range(m.eta):
                        if c == cprev:
                            continue
                        key = (c, r)
                        moved = rot(bits, -s[r][c])
                        new[key] = new.get(key, 0) | moved
                if depth >= 4:
                    for (c, r), bits in new.items():
                        # closing at the start column; the wrap-around row
                        # constraint is r != m0
                        if c == n0 and r != m0 and bits & 1:
                            hit = depth
            next_fronts.append((n0, m0, new))
        if hit is not None:
            return hit
        fronts = next_fronts
    return None


def girth_lifted(t: TannerGraph) -> int | None:
    """Shortest cycle length via BFS from every node; None when acyclic."""
    n = t.n_var + t.n_chk
    adj = [()] * n
    for v in range(t.n_var):
        adj[v] = tuple(t.n_var + c for c in t.var_adj[v])
    for c in range(t.n_chk):
        adj[t.n_var + c] = t.chk_adj[c]

    best = None
    dist = [-1] * n
    parent = [-1] * n
    for root in range(n):
        dist[root] = 0
        parent[root] = -1
        queue = deque([root])
        touched = [root]
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] >= best:
                continue
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    touched.append(w)
                    queue.append(w)
                elif w != parent[u]:
                    cand = dist[u] + dist[w] + 1
                    if best is None or cand < best:
                        best = cand
        for v in touched:
            dist[v] = -1
    return best


@dataclass(frozen=True)
class ThetaWitness:
    """A located theta pattern.

    For theta(1,2,2): two internals, and when check annotations exist the
    checks are (c(u,v), c(u,w1), c(w1,v), c(u,w2), c(w2,v)).
    For theta(2,2,2): three internals and six pairwise distinct checks,
    ordered (c(u,w1), c(w1,v), c(u,w2), c(w2,v), c(u,w3), c(w3,v)).
    """

    kind: str
    endpoints: tuple[int, int]
    internals: tuple[int, ...]
    checks: tuple[int, ...] = ()

    def to_line(self) -> str:
        u, v = self.endpoints
        ints = ",".join(str(w) for w in self.internals)
        chks = ",".join(str(c) for c in self.checks) if self.checks else "-"
        return f"{self.kind} endpoints={u},{v} internals={ints} checks={chks}"

    def sort_key(self):
        return (self.endpoints, self.internals, self.checks)


def find_theta122(v: VNGraph) -> list[ThetaWitness]:
    """theta(1,2,2) occurrences: one witness per (edge, common-neighbor pair).

    Empty result certifies the graph is theta(1,2,2)-free.
    """
    witnesses = []
    for a, b in v.edges:
        common = sorted(v.adj[a] & v.adj[b])
        for w1, w2 in combinations(common, 2):
            checks: tuple[int, ...] = ()
            if v.edge_checks is not None:
                checks = tuple(
                    v.check_of(x, y)
                    for x, y in ((a, b), (a, w1), (w1, b), (a, w2), (w2, b))
                )
            witnesses.append(ThetaWitness("theta122", (a, b), (w1, w2), checks))
    witnesses.sort(key=ThetaWitness.sort_key)
    return witnesses


def _shared_check_maps(t: TannerGraph):
    """VN adjacency plus the unique shared check per adjacent pair.

    Rejects girth-4 graphs, where the shared check is ambiguous.
    """
    try:
        vn = build_vn_adjacency(t)
    except GirthViolation as exc:
        raise ValueError(f"Tanner girth must be >= 6: {exc}") from None
    return vn


def find_theta222(t: TannerGraph) -> list[ThetaWitness]:
    """theta(2,2,2) = K_{2,3} occurrences in the lifted graph.

    For each unordered variable pair with at least three common VN
    neighbors, emits one witness if three internal variables exist whose
    six connecting checks are pairwise distinct. Requires girth >= 6.
    """
    vn = _shared_check_maps(t)
    pair_common: dict[tuple[int, int], list[int]] = defaultdict(list)
    for w in range(vn.n):
        for u, v in combinations(sorted(vn.adj[w]), 2):
            pair_common[(u, v)].append(w)

    witnesses = []
    for (u, v), ws in pair_common.items():
        if len(ws) < 3:
            continue
        paths = []
        for w in ws:
            c1 = vn.check_of(u, w)
            c2 = vn.check_of(w, v)
            if c1 != c2:
                paths.append((w, c1, c2))
        if len(paths) < 3:
            continue
        for triple in combinations(paths, 3):
            checks = [c for _, c1, c2 in triple for c in (c1, c2)]
            if len(set(checks)) == 6:
                witnesses.append(
                    ThetaWitness(
                        "theta222",
                        (u, v),
                        tuple(w for w, _, _ in triple),
                        tuple(checks),
                    )
                )
                break
    witnesses.sort(key=ThetaWitness.sort_key)
    return witnesses


def find_theta222_exponent(m: ExponentMatrix) -> list[ThetaWitness]:
    """theta(2,2,2) detection from the exponent matrix alone.

    A block-level 4-path between endpoint columns n0, n2 through
    intermediate column n1 with rows m1 != m2 carries the value
    (s[m1][n0] - s[m1][n1] + s[m2][n1] - s[m2][n2]) mod p; paths of equal
    value join the same lifted endpoint pair. A pattern exists iff three
    such paths are pairwise internally disjoint as lifted node sets, which
    reduces to the row/offset conditions checked here. Same-column
    endpoint pairs (nonzero relative offset) are scanned as well.

    One witness per (column pair, value) class, instantiated at the first
    endpoint copy so it can be replayed against the lifted graph.
    """
    if not m.fully_connected:
        raise ValueError("exponent-level detection requires a fully connected matrix")
    p = m.p
    s = m.shifts
    witnesses = []

    for n0 in range(m.eta):
        for n2 in range(n0, m.eta):
            by_val: dict[int, list[tuple[int, int, int]]] = defaultdict(list)
            for n1 in range(m.eta):
                if n1 == n0 or n1 == n2:
                    continue
                for m1 in range(m.gamma):
                    for m2 in range(m.gamma):
                        if m1 == m2:
                            continue
                        val = (s[m1][n0] - s[m1][n1] + s[m2][n1] - s[m2][n2]) % p
                        by_val[val].append((n1, m1, m2))
            if n0 == n2:
                # value v and p-v describe the same unordered pair; v = 0
                # would make the endpoints coincide
                vals = [v for v in by_val if 0 < v <= p - v]
            else:
                vals = list(by_val)
            for val in sorted(vals):
                paths = by_val[val]
                if len(paths) < 3:
                    continue
                triple = _disjoint_triple(paths, n0, n2, val, s, p)
                if triple is not None:
                    witnesses.append(_instantiate_theta222(m, n0, n2, val, triple))
    witnesses.sort(key=ThetaWitness.sort_key)
    return witnesses


def _paths_compatible(q, r, n0, n2, val, s, p) -> bool:
    """Internal disjointness of two equal-value block 4-paths."""
    n1a, m1a, m2a = q
    n1b, m1b, m2b = r
    # checks attached to the same endpoint coincide iff the rows coincide
    if m1a == m1b or m2a == m2b:
        return False
    # internal variables coincide iff same column and same copy offset
    if n1a == n1b and (s[m1a][n1a] - s[m1a][n0]) % p == (s[m1b][n1b] - s[m1b][n0]) % p:
        return False
    # a check attached to u in one path vs a check attached to v in the other
    d = (-val) % p
    if m1a == m2b and d == (s[m1a][n2] - s[m1a][n0]) % p:
        return False
    if m1b == m2a and d == (s[m1b][n2] - s[m1b][n0]) % p:
        return False
    return True


def _disjoint_triple(paths, n0, n2, val, s, p):
    for triple in combinations(paths, 3):
        q, r, t = triple
        if (
            _paths_compatible(q, r, n0, n2, val, s, p)
            and _paths_compatible(q, t, n0, n2, val, s, p)
            and _paths_compatible(r, t, n0, n2, val, s, p)
        ):
            return triple
    return None


def _instantiate_theta222(m, n0, n2, val, triple) -> ThetaWitness:
    """Concrete lifted witness for a block-level class, anchored at copy 0."""
    p = m.p
    s = m.shifts
    u = n0 * p
    v = n2 * p + (-val) % p
    internals = []
    checks = []
    for n1, m1, m2 in triple:
        internals.append(n1 * p + (s[m1][n1] - s[m1][n0]) % p)
        checks.append(m1 * p + (-s[m1][n0]) % p)
        checks.append(m2 * p + (-val - s[m2][n2]) % p)
    return ThetaWitness("theta222", (u, v), tuple(internals), tuple(checks))


def find_shared_check_six_cycles(t: TannerGraph):
    """Pairs of distinct 6-cycles sharing a check node (girth-6 regime).

    In a Tanner graph with girth 6, trapping sets are theta(1,2,2)-free
    exactly when no two 6-cycles share a check node. Returns one offending
    cycle pair per check, each cycle as (variables, checks). Requires
    girth >= 6.
    """
    vn = _shared_check_maps(t)
    offenders = []
    for chk, members in enumerate(t.chk_adj):
        cycles = []
        seen = set()
        for u, v in combinations(members, 2):
            for w in sorted(vn.adj[u] & vn.adj[v]):
                if w == u or w == v:
                    continue
                c1 = vn.check_of(u, w)
                c2 = vn.check_of(w, v)
                if c1 == c2 or c1 == chk or c2 == chk:
                    continue
                key = frozenset((u, v, w, chk, c1, c2))
                if key in seen:
                    continue
                seen.add(key)
                cycles.append(((u, w, v), (chk, c1, c2)))
                if len(cycles) == 2:
                    break
            if len(cycles) == 2:
                break
        if len(cycles) >= 2:
            offenders.append((chk, cycles[0], cycles[1]))
    return offenders


def count_shared_check_six_cycles(t: TannerGraph):
    """Number of (check, 6-cycle-pair) conflicts plus per-check cycle counts."""
    vn = _shared_check_maps(t)
    conflicts = 0
    per_check = {}
    for chk, members in enumerate(t.chk_adj):
        n_cycles = 0
        seen = set()
        for u, v in combinations(members, 2):
            for w in vn.adj[u] & vn.adj[v]:
                if w == u or w == v:
                    continue
                c1 = vn.check_of(u, w)
                c2 = vn.check_of(w, v)
                if c1 == c2 or c1 == chk or c2 == chk:
                    continue
                key = frozenset((u, v, w, chk, c1, c2))
                if key not in seen:
                    seen.add(key)
                    n_cycles += 1
        if n_cycles >= 2:
            conflicts += n_cycles - 1
            per_check[chk] = n_cycles
    return conflicts, per_check


def validate_witness(w: ThetaWitness, graph) -> bool:
    """Replay a witness against the graph it was found in.

    theta(1,2,2) witnesses validate against a VNGraph, theta(2,2,2)
    witnesses against a TannerGraph (using the documented check ordering).
    """
    u, v = w.endpoints
    if w.kind == "theta122":
        vn: VNGraph = graph
        w1, w2 = w.internals
        nodes = {u, v, w1, w2}
        if len(nodes) != 4:
            return False
        required = [(u, v), (u, w1), (w1, v), (u, w2), (w2, v)]
        return all(y in vn.adj[x] for x, y in required)
    if w.kind == "theta222":
        t: TannerGraph = graph
        if len(w.internals) != 3 or len(w.checks) != 6:
            return False
        if len(set(w.internals) | {u, v}) != 5:
            return False
        if len(set(w.checks)) != 6:
            return False
        for idx, wi in enumerate(w.internals):
            c1 = w.checks[2 * idx]
            c2 = w.checks[2 * idx + 1]
            if c1 not in t.var_adj[u] or c1 not in t.var_adj[wi]:
                return False
            if c2 not in t.var_adj[wi] or c2 not in t.var_adj[v]:
                return False
        return True
    raise ValueError(f"unknown witness kind {w.kind!r}")
