"""Lifted Tanner graphs, variable-node adjacency, and the alist format.

Node numbering convention, used everywhere downstream: the CPM block at
row i, column j of the exponent matrix contributes check nodes i*p + r and
variable nodes j*p + k, all 0-based.
"""

from __future__ import annotations

from .exponent import INF, ExponentMatrix


class GirthViolation(ValueError):
    """Two variable nodes share more than one check node (a 4-cycle)."""

    def __init__(self, u: int, v: int, checks: tuple[int, ...]):
        super().__init__(
            f"variables {u} and {v} share checks {checks}: Tanner girth is 4"
        )
        self.pair = (u, v)
        self.checks = checks


class TannerGraph:
    """Bipartite graph with sorted, duplicate-free adjacency lists.

    Immutable after construction. Graphs lifted from fully connected
    exponent matrices are (gamma, eta)-regular; hand-built graphs used in
    tests may be irregular.
    """

    __slots__ = ("n_var", "n_chk", "var_adj", "chk_adj")

    def __init__(self, n_var: int, n_chk: int, edges):
        var_adj = [[] for _ in range(n_var)]
        chk_adj = [[] for _ in range(n_chk)]
        seen = set()
        for var, chk in edges:
            if not 0 <= var < n_var:
                raise ValueError(f"variable id {var} outside [0,{n_var - 1}]")
            if not 0 <= chk < n_chk:
                raise ValueError(f"check id {chk} outside [0,{n_chk - 1}]")
            if (var, chk) in seen:
                raise ValueError(f"duplicate edge ({var},{chk})")
            seen.add((var, chk))
            var_adj[var].append(chk)
            chk_adj[chk].append(var)
        self.n_var = n_var
        self.n_chk = n_chk
        self.var_adj = tuple(tuple(sorted(a)) for a in var_adj)
        self.chk_adj = tuple(tuple(sorted(a)) for a in chk_adj)

    @property
    def n_edges(self) -> int:
        return sum(len(a) for a in self.var_adj)

    def var_degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.var_adj)

    def chk_degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.chk_adj)

    def edges(self):
        for var, checks in enumerate(self.var_adj):
            for chk in checks:
                yield var, chk

    def __eq__(self, other):
        if not isinstance(other, TannerGraph):
            return NotImplemented
        return (
            self.n_var == other.n_var
            and self.n_chk == other.n_chk
            and self.var_adj == other.var_adj
        )

    def __hash__(self):
        return hash((self.n_var, self.n_chk, self.var_adj))

    def __repr__(self):
        return f"TannerGraph(n_var={self.n_var}, n_chk={self.n_chk}, n_edges={self.n_edges})"


def lift(m: ExponentMatrix) -> TannerGraph:
    """Expand each CPM block into its p edges.

    Block (i, j) with shift s connects check i*p + r to variable
    j*p + ((r + s) mod p) for r = 0..p-1; zero blocks contribute nothing.
    """
    p = m.p
    edge_list = []
    for i in range(m.gamma):
        for j in range(m.eta):
            s = m.shifts[i][j]
            if s == INF:
                continue
            for r in range(p):
                edge_list.append((j * p + (r + s) % p, i * p + r))
    return TannerGraph(m.n_var, m.n_chk, edge_list)


class VNGraph:
    """Simple undirected graph on variable nodes.

    Edges may carry the check node that realizes them (degree-2 checks for
    trapping-set subgraphs, a representative shared check for the whole
    code); abstract graphs built during enumeration carry none.
    """

    __slots__ = ("n", "edges", "edge_checks", "degree_cap", "adj")

    def __init__(self, n: int, edges, edge_checks=None, degree_cap: int | None = None):
        self.n = n
        norm = []
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) outside vertex range")
            norm.append((u, v) if u < v else (v, u))
        if len(set(norm)) != len(norm):
            raise ValueError("duplicate edges")
        self.edges = tuple(sorted(norm))
        if edge_checks is not None:
            edge_checks = {
                ((u, v) if u < v else (v, u)): c for (u, v), c in edge_checks.items()
            }
        self.edge_checks = edge_checks
        self.degree_cap = degree_cap
        adj = [set() for _ in range(n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        self.adj = tuple(frozenset(a) for a in adj)
        if degree_cap is not None:
            for v, nb in enumerate(self.adj):
                if len(nb) > degree_cap:
                    raise ValueError(f"vertex {v} has degree {len(nb)} > cap {degree_cap}")

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def check_of(self, u: int, v: int):
        if self.edge_checks is None:
            return None
        return self.edge_checks.get((u, v) if u < v else (v, u))

    def __repr__(self):
        return f"VNGraph(n={self.n}, n_edges={self.n_edges})"


def build_vn_adjacency(t: TannerGraph) -> VNGraph:
    """Connect two variables iff they share a check node.

    Requires Tanner girth >= 6: a pair sharing two checks is a 4-cycle and
    raises GirthViolation. Each edge is annotated with its shared check.
    """
    edge_checks: dict[tuple[int, int], int] = {}
    for chk, members in enumerate(t.chk_adj):
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                pair = (members[a], members[b])
                prev = edge_checks.get(pair)
                if prev is not None and prev != chk:
                    raise GirthViolation(pair[0], pair[1], (prev, chk))
                edge_checks[pair] = chk
    return VNGraph(t.n_var, edge_checks.keys(), edge_checks)


def export_alist(m: ExponentMatrix) -> str:
    """Alist serialization (MacKay) of the lifted binary parity-check matrix.

    Layout: "N M", "max_col_deg max_row_deg", column degrees, row degrees,
    then per-column 1-based check indices and per-row 1-based variable
    indices, one node per line.
    """
    if not m.fully_connected:
        raise ValueError("alist export requires a fully connected matrix")
    t = lift(m)
    col_degs = t.var_degrees()
    row_degs = t.chk_degrees()
    out = [
        f"{t.n_var} {t.n_chk}",
        f"{max(col_degs)} {max(row_degs)}",
        " ".join(str(d) for d in col_degs),
        " ".join(str(d) for d in row_degs),
    ]
    for var in range(t.n_var):
        out.append(" ".join(str(c + 1) for c in t.var_adj[var]))
    for chk in range(t.n_chk):
        out.append(" ".join(str(v + 1) for v in t.chk_adj[chk]))
    return "\n".join(out) + "\n"


def parse_alist(text: str) -> TannerGraph:
    """Rebuild the Tanner graph from alist text.

    Accepts both unpadded lists and the zero-padded variant some tools
    emit (zeros in index lists are ignored).
    """
    numbers = [int(tok) for tok in text.split()]
    pos = 0

    def take(count):
        nonlocal pos
        if pos + count > len(numbers):
            raise ValueError("alist truncated")
        chunk = numbers[pos : pos + count]
        pos += count
        return chunk

    n_var, n_chk = take(2)
    max_col, max_row = take(2)
    col_degs = take(n_var)
    row_degs = take(n_chk)

    # Column lists may be written with exactly deg entries or padded to the
    # max degree with zeros; detect by total token count.
    remaining = len(numbers) - pos
    padded = remaining == n_var * max_col + n_chk * max_row
    edges = set()
    for var in range(n_var):
        chunk = take(max_col if padded else col_degs[var])
        for c in chunk:
            if c != 0:
                edges.add((var, c - 1))
    for chk in range(n_chk):
        chunk = take(max_row if padded else row_degs[chk])
        for v in chunk:
            if v != 0:
                edges.add((v - 1, chk))
    if pos != len(numbers):
        raise ValueError("trailing tokens in alist")
    return TannerGraph(n_var, n_chk, sorted(edges))
