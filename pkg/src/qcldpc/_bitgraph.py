"""Bitmask graph primitives for the exhaustive searches.

Graphs on up to ~30 vertices are held as a list of integer adjacency
bitmasks. The pattern predicates come in two flavors: incremental checks
that ask whether a *just added* edge (u, v) completed a forbidden pattern
(sound during edge-by-edge growth of a pattern-free graph), and whole-graph
scans used to validate finished witnesses.
"""

from __future__ import annotations


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def edge_added_makes_c3(adj: list[int], u: int, v: int) -> bool:
    """Triangle through the new edge (u, v)."""
    return bool(adj[u] & adj[v])


def edge_added_makes_theta122(adj: list[int], u: int, v: int) -> bool:
    """theta(1,2,2) through the new edge (u, v).

    Every edge of the pattern touches one of its two endpoints, so it
    suffices to test adjacent pairs involving u or v for two common
    neighbors.
    """
    for z in (u, v):
        for t in iter_bits(adj[z]):
            if (adj[z] & adj[t]).bit_count() >= 2:
                return True
    return False


def edge_added_makes_theta222(adj: list[int], u: int, v: int) -> bool:
    """K_{2,3} through the new edge (u, v).

    The new edge joins an endpoint to an internal vertex; the opposite
    endpoint is then a neighbor of the internal one.
    """
    for y in iter_bits(adj[v] & ~(1 << u)):
        if (adj[u] & adj[y]).bit_count() >= 3:
            return True
    for x in iter_bits(adj[u] & ~(1 << v)):
        if (adj[v] & adj[x]).bit_count() >= 3:
            return True
    return False


def graph_has_c3(adj: list[int]) -> bool:
    n = len(adj)
    for u in range(n):
        for v in iter_bits(adj[u]):
            if v > u and adj[u] & adj[v]:
                return True
    return False


def graph_has_theta122(adj: list[int]) -> bool:
    n = len(adj)
    for u in range(n):
        for v in iter_bits(adj[u]):
            if v > u and (adj[u] & adj[v]).bit_count() >= 2:
                return True
    return False


def graph_has_theta222(adj: list[int]) -> bool:
    n = len(adj)
    for u in range(n):
        for v in range(u + 1, n):
            if (adj[u] & adj[v]).bit_count() >= 3:
                return True
    return False


def is_connected(adj: list[int], n: int) -> bool:
    if n <= 1:
        return True
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= adj[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == (1 << n) - 1


def adj_to_edges(adj: list[int]) -> list[tuple[int, int]]:
    edges = []
    for u in range(len(adj)):
        for v in iter_bits(adj[u]):
            if v > u:
                edges.append((u, v))
    return edges
