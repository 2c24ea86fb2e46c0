"""Interaction graphs and the star/line communication-shape classifier.

The interaction graph has one node per component and an undirected edge
between two components whenever some interaction contains ports of both.
Classification looks only at the model; behaviors play no role.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .model import InteractionModel


@dataclass(frozen=True)
class InteractionGraph:
    """Undirected graph: sorted node list, sorted tuple of sorted edge pairs."""

    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    def degrees(self) -> dict[str, int]:
        deg = {v: 0 for v in self.nodes}
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg


@dataclass(frozen=True)
class TopologyClass:
    star_like: bool
    linear: bool


def interaction_graph(im: InteractionModel) -> InteractionGraph:
    """Build the communication graph; isolated components are kept as nodes."""
    nodes = tuple(sorted(set(im.components)))
    edges: set[tuple[str, str]] = set()
    for a in im.interactions:
        participants = sorted({p.component for p in a.ports})
        for u, v in itertools.combinations(participants, 2):
            edges.add((u, v))
    return InteractionGraph(nodes, tuple(sorted(edges)))


def _connected(g: InteractionGraph) -> bool:
    if not g.nodes:
        return True
    adjacency: dict[str, set[str]] = {v: set() for v in g.nodes}
    for a, b in g.edges:
        adjacency[a].add(b)
        adjacency[b].add(a)
    seen = {g.nodes[0]}
    stack = [g.nodes[0]]
    while stack:
        v = stack.pop()
        for w in adjacency[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(g.nodes)


def classify(im: InteractionModel) -> TopologyClass:
    """Star: some hub has degree n-1 and every other node degree 1 (n=1 and
    the two-component single-edge case both qualify).  Line: connected,
    exactly two nodes of degree 1, all others degree 2 (needs n >= 2)."""
    g = interaction_graph(im)
    n = len(g.nodes)
    if n == 0:
        return TopologyClass(False, False)
    deg = g.degrees()

    star_like = any(
        deg[hub] == n - 1 and all(deg[v] == 1 for v in g.nodes if v != hub)
        for hub in g.nodes
    )
    ones = sum(1 for v in g.nodes if deg[v] == 1)
    twos = sum(1 for v in g.nodes if deg[v] == 2)
    linear = ones == 2 and ones + twos == n and _connected(g)
    return TopologyClass(star_like, linear)


def export_dot(g: InteractionGraph) -> str:
    """Byte-stable DOT document for the (undirected) interaction graph."""

    def quote(name: str) -> str:
        return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'

    lines = ["graph interaction {"]
    lines.extend(f"  {quote(v)};" for v in g.nodes)
    lines.extend(f"  {quote(a)} -- {quote(b)};" for a, b in g.edges)
    lines.append("}")
    return "\n".join(lines) + "\n"
