"""Social graph, centrality, and network-mediated attention."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

Node = Hashable


@dataclass(frozen=True)
class NetworkParams:
    theta0: float = 0.1
    theta1: float = 0.42
    theta2: float = 0.38
    kappa: float = 0.4
    q_max: float = 1.0
    q0: float = 0.4

    def __post_init__(self):
        if self.kappa < 0:
            raise ValueError("kappa must be nonnegative")
        if not 0.0 <= self.q0 < self.q_max <= 1.0:
            raise ValueError("quality levels require 0 <= q0 < q_max <= 1")


class SocialGraph:
    """Undirected simple graph keyed by actor id."""

    def __init__(self, nodes: Iterable[Node] = (), edges: Iterable[Tuple[Node, Node]] = ()):
        # neighbour dicts keep insertion order so iteration is reproducible
        self._adj: Dict[Node, Dict[Node, None]] = {}
        for n in nodes:
            self.add_node(n)
        for u, v in edges:
            self.add_edge(u, v)

    def add_node(self, n: Node) -> None:
        self._adj.setdefault(n, {})

    def add_edge(self, u: Node, v: Node) -> None:
        if u == v:
            raise ValueError(f"self-loop on {u!r}")
        self.add_node(u)
        self.add_node(v)
        self._adj[u][v] = None
        self._adj[v][u] = None

    def has_edge(self, u: Node, v: Node) -> bool:
        return v in self._adj.get(u, ())

    @property
    def nodes(self) -> List[Node]:
        return list(self._adj)

    @property
    def edges(self) -> List[Tuple[Node, Node]]:
        order = {n: i for i, n in enumerate(self._adj)}
        out = []
        for u in self._adj:
            for v in sorted(self._adj[u], key=order.__getitem__):
                if order[u] < order[v]:
                    out.append((u, v))
        return out

    def neighbors(self, n: Node) -> Tuple[Node, ...]:
        return tuple(self._adj[n])

    def degree(self, n: Node) -> int:
        return len(self._adj[n])

    def __len__(self) -> int:
        return len(self._adj)

    def __contains__(self, n) -> bool:
        return n in self._adj

    def copy(self) -> "SocialGraph":
        return SocialGraph(self.nodes, self.edges)

    @classmethod
    def complete(cls, nodes: Sequence[Node]) -> "SocialGraph":
        return cls(nodes, [(u, v) for i, u in enumerate(nodes) for v in nodes[i + 1:]])

    @classmethod
    def from_edgelist(cls, text: str) -> "SocialGraph":
        """Parse ``u v`` pairs, one per line; blank lines and ``#`` comments are skipped.
        A line holding a single token declares an isolated node."""
        g = cls()
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) == 1:
                g.add_node(parts[0])
            elif len(parts) == 2:
                g.add_edge(parts[0], parts[1])
            else:
                raise ValueError(f"line {lineno}: expected 'u v', got {raw!r}")
        return g


def bfs_distances(g: SocialGraph, source: Node) -> Dict[Node, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in g.neighbors(u):
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def closeness(g: SocialGraph, i: Node) -> float:
    """Mean inverse shortest-path length to every other node; unreachable nodes add 0."""
    n = len(g)
    if n < 2:
        raise ValueError("closeness needs at least two nodes")
    dist = bfs_distances(g, i)
    return math.fsum(1.0 / d for node, d in dist.items() if node != i) / (n - 1)


def all_closeness(g: SocialGraph) -> Dict[Node, float]:
    if len(g) < 2:
        return {n: 0.0 for n in g.nodes}
    return {n: closeness(g, n) for n in g.nodes}


def degree_effect(d: float, C: float, p: NetworkParams) -> float:
    return p.theta0 + p.theta1 * math.log1p(d) + p.theta2 * C


def attention(g_val: float, verified: bool, t: float, p: NetworkParams) -> float:
    if t < 0:
        raise ValueError("publication delay must be nonnegative")
    quality = p.q_max if verified else p.q0
    return g_val * quality * math.exp(-p.kappa * t)


def split_attention(claims: Sequence[Tuple[Node, float]], pool: float) -> List[Tuple[Node, float]]:
    if pool < 0:
        raise ValueError("pool must be nonnegative")
    if any(w < 0 for _, w in claims):
        raise ValueError("raw attention must be nonnegative")
    total = math.fsum(w for _, w in claims)
    if total <= 0:
        return [(who, 0.0) for who, _ in claims]
    return [(who, pool * (w / total)) for who, w in claims]


def centrality_table(g: SocialGraph, p: NetworkParams) -> List[dict]:
    cl = all_closeness(g)
    return [{"node": n, "degree": g.degree(n), "closeness": cl[n],
             "g": degree_effect(g.degree(n), cl[n], p)} for n in g.nodes]


def governance_pair(g: SocialGraph) -> Optional[Tuple[Node, Node]]:
    """Unconnected pair joining the most central and least central node available.

    Candidates are ranked by the closeness gap; ties break by node insertion
    order so the choice is deterministic.
    """
    nodes = g.nodes
    if len(nodes) < 2:
        return None
    cl = all_closeness(g)
    order = {n: i for i, n in enumerate(nodes)}
    best, best_key = None, None
    for u in nodes:
        for v in nodes:
            if u == v or g.has_edge(u, v) or cl[u] < cl[v]:
                continue
            if cl[u] == cl[v] and order[u] > order[v]:
                continue
            key = (cl[u] - cl[v], cl[u], -order[u], -order[v])
            if best_key is None or key > best_key:
                best, best_key = (u, v), key
    return best
