"""Simple undirected graphs, (2,k)-sparsity and the construction moves.

Vertices are the integers ``0..n-1``.  Edge lists are normalised to
``(i, j)`` with ``i < j`` and kept sorted, so any matrix indexed by the
edges of a :class:`Graph` has a reproducible row order.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import networkx as nx

from .errors import GraphError, ParameterError

__all__ = [
    "Graph",
    "complete_graph",
    "path_graph",
    "is_k_sparse",
    "is_k_tight",
    "is_k_connected",
    "one_extension",
    "add_edge",
    "remove_edge",
]


def _normalise(u, v):
    u, v = int(u), int(v)
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"vertex count must be non-negative, got {self.n}")
        normalised = []
        for e in self.edges:
            if len(e) != 2:
                raise GraphError(f"edge {e!r} does not have two endpoints")
            u, v = _normalise(*e)
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if u < 0 or v >= self.n:
                raise GraphError(f"edge {(u, v)} has an endpoint outside 0..{self.n - 1}")
            normalised.append((u, v))
        ordered = tuple(sorted(set(normalised)))
        if len(ordered) != len(normalised):
            raise GraphError("parallel edges are not allowed")
        object.__setattr__(self, "edges", ordered)

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u, v) -> bool:
        return _normalise(u, v) in self._edge_set

    @cached_property
    def _edge_set(self):
        return frozenset(self.edges)

    def edge_index(self, u, v) -> int:
        try:
            return self.edges.index(_normalise(u, v))
        except ValueError:
            raise GraphError(f"edge {(u, v)} is not in the graph") from None

    def degree(self, v) -> int:
        return sum(1 for e in self.edges if v in e)

    def neighbours(self, v) -> list[int]:
        return sorted(b if a == v else a for a, b in self.edges if v in (a, b))

    def subgraph_without_edge(self, u, v) -> "Graph":
        return remove_edge(self, u, v)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(combinations(range(n), 2)))


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def _check_k(k):
    if k not in (1, 2, 3):
        raise ParameterError(f"sparsity parameter k must be 1, 2 or 3, got {k!r}")


class _PebbleGame:
    """The (2,k) pebble game: two pebbles per vertex, edges need k+1 to enter."""

    def __init__(self, n, k):
        self.k = k
        self.pebbles = [2] * n
        self.out = [set() for _ in range(n)]

    def _draw_pebble(self, start, blocked):
        # DFS along directed edges for a spare pebble, then reverse the path.
        parent = {start: None}
        stack = [start]
        while stack:
            a = stack.pop()
            for b in self.out[a]:
                if b in parent or b in blocked:
                    continue
                parent[b] = a
                if self.pebbles[b] > 0:
                    self.pebbles[b] -= 1
                    self.pebbles[start] += 1
                    while parent[b] is not None:
                        a = parent[b]
                        self.out[a].discard(b)
                        self.out[b].add(a)
                        b = a
                    return True
                stack.append(b)
        return False

    def insert(self, u, v) -> bool:
        while self.pebbles[u] + self.pebbles[v] < self.k + 1:
            if self.pebbles[u] < 2 and self._draw_pebble(u, {v}):
                continue
            if self.pebbles[v] < 2 and self._draw_pebble(v, {u}):
                continue
            return False
        tail, head = (u, v) if self.pebbles[u] > 0 else (v, u)
        self.pebbles[tail] -= 1
        self.out[tail].add(head)
        return True


def is_k_sparse(g: Graph, k: int) -> bool:
    """True iff every subgraph with at least one edge has ``|E'| <= 2|V'| - k``."""
    _check_k(k)
    game = _PebbleGame(g.n, k)
    return all(game.insert(u, v) for u, v in g.edges)


def is_k_tight(g: Graph, k: int) -> bool:
    _check_k(k)
    return g.m == 2 * g.n - k and is_k_sparse(g, k)


def is_k_connected(g: Graph, k: int) -> bool:
    """True iff ``g`` has more than ``k`` vertices and no vertex cut of size < k."""
    if not isinstance(k, int) or k < 1:
        raise ParameterError(f"connectivity k must be a positive integer, got {k!r}")
    if g.n <= k:
        return False
    return nx.node_connectivity(g.to_networkx()) >= k


def one_extension(g: Graph, e, v3: int) -> Graph:
    """Delete ``e = (v1, v2)`` and join a new vertex ``n`` to ``v1``, ``v2`` and ``v3``."""
    v1, v2 = _normalise(*e)
    if not g.has_edge(v1, v2):
        raise GraphError(f"edge {(v1, v2)} is not in the graph")
    if v3 in (v1, v2):
        raise GraphError(f"third vertex {v3} coincides with an endpoint of {(v1, v2)}")
    if not 0 <= v3 < g.n:
        raise GraphError(f"vertex {v3} is not in the graph")
    v0 = g.n
    edges = [f for f in g.edges if f != (v1, v2)]
    edges += [(v1, v0), (v2, v0), (v3, v0)]
    return Graph(g.n + 1, tuple(edges))


def add_edge(g: Graph, u: int, v: int) -> Graph:
    if u == v:
        raise GraphError(f"self-loop at vertex {u}")
    if g.has_edge(u, v):
        raise GraphError(f"edge {_normalise(u, v)} already present")
    return Graph(g.n, g.edges + (_normalise(u, v),))


def remove_edge(g: Graph, u: int, v: int) -> Graph:
    e = _normalise(u, v)
    if e not in g._edge_set:
        raise GraphError(f"edge {e} is not in the graph")
    return Graph(g.n, tuple(f for f in g.edges if f != e))
