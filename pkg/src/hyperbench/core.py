"""Hypergraph model plus basic queries and on-disk formats.

A hypergraph is a vertex count ``n`` (vertices are the integers ``0..n-1``,
written ``v0..v{n-1}``) together with an ordered list of hyperedges
(``e0..e{m-1}``), each a set of at least two vertices.  The edge list may
contain duplicate vertex sets; list position is the edge's identity.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

MIN_EDGE_SIZE = 2


def vname(i: int) -> str:
    return f"v{i}"


def ename(j: int) -> str:
    return f"e{j}"


class Hypergraph:
    """Immutable hypergraph with precomputed incidence lists.

    ``edges`` is normalized to a tuple of sorted vertex tuples; input order
    of the edges themselves is preserved (edge ids are list positions).
    """

    __slots__ = ("n", "edges", "_incident")

    def __init__(self, n: int, edges) -> None:
        if n < 1:
            raise ValueError(f"vertex count must be positive, got {n}")
        norm = []
        for j, edge in enumerate(edges):
            members = sorted(edge)
            if len(set(members)) != len(members):
                raise ValueError(f"edge e{j} repeats a vertex: {sorted(edge)}")
            if len(members) < MIN_EDGE_SIZE:
                raise ValueError(f"edge e{j} has {len(members)} vertices; need >= {MIN_EDGE_SIZE}")
            if members[0] < 0 or members[-1] >= n:
                raise IndexError(f"edge e{j} references a vertex outside 0..{n - 1}")
            norm.append(tuple(members))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(norm))
        incident: list[list[int]] = [[] for _ in range(n)]
        for j, members in enumerate(self.edges):
            for v in members:
                incident[v].append(j)
        object.__setattr__(self, "_incident", tuple(tuple(js) for js in incident))

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Hypergraph is immutable")

    def __reduce__(self):
        # immutability + __slots__ break default pickling; rebuild via ctor
        return (Hypergraph, (self.n, self.edges))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, edges={list(map(list, self.edges))})"

    @property
    def num_vertices(self) -> int:
        return self.n

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise IndexError(f"vertex id {v} outside 0..{self.n - 1}")

    def check_edge(self, j: int) -> None:
        if not (0 <= j < len(self.edges)):
            raise IndexError(f"hyperedge id {j} outside 0..{len(self.edges) - 1}")

    def degree(self, v: int) -> int:
        """Number of hyperedges containing ``v``."""
        self.check_vertex(v)
        return len(self._incident[v])

    def order(self, j: int) -> int:
        """Number of vertices in hyperedge ``j``."""
        self.check_edge(j)
        return len(self.edges[j])

    def incident_edges(self, v: int) -> tuple[int, ...]:
        """Ids of hyperedges containing ``v``, ascending."""
        self.check_vertex(v)
        return self._incident[v]

    def neighbors(self, u: int) -> tuple[int, ...]:
        """Vertices sharing at least one hyperedge with ``u`` (``u`` excluded)."""
        self.check_vertex(u)
        out = set()
        for j in self._incident[u]:
            out.update(self.edges[j])
        out.discard(u)
        return tuple(sorted(out))

    def neighbors_filtered(self, u: int, min_order: int) -> tuple[int, ...]:
        """Like :meth:`neighbors` but only through hyperedges of order >= ``min_order``."""
        self.check_vertex(u)
        out = set()
        for j in self._incident[u]:
            if len(self.edges[j]) >= min_order:
                out.update(self.edges[j])
        out.discard(u)
        return tuple(sorted(out))

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(len(self._incident[v]) for v in range(self.n))

    def order_sequence(self) -> tuple[int, ...]:
        return tuple(len(e) for e in self.edges)

    def vertex_pairs(self) -> tuple[tuple[int, int], ...]:
        """Sorted distinct pairs (u, v), u < v, co-occurring in some hyperedge."""
        pairs = set()
        for members in self.edges:
            for a in range(len(members)):
                for b in range(a + 1, len(members)):
                    pairs.add((members[a], members[b]))
        return tuple(sorted(pairs))

    def is_connected(self) -> bool:
        """True iff every vertex is reachable from v0 via shared hyperedges.

        A vertex with no incident edge makes the hypergraph disconnected
        (unless it is the only vertex).
        """
        if self.n == 1:
            return True
        seen = {0}
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for j in self._incident[v]:
                for w in self.edges[j]:
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
        return len(seen) == self.n


@dataclass(frozen=True)
class DegreeProfile:
    """Degree and order tallies for one hypergraph."""

    degrees: tuple[int, ...]
    orders: tuple[int, ...]

    @property
    def degree_total(self) -> int:
        return sum(self.degrees)

    @property
    def order_total(self) -> int:
        return sum(self.orders)


def degree_profile(h: Hypergraph) -> DegreeProfile:
    return DegreeProfile(h.degree_sequence(), h.order_sequence())


def to_json_dict(h: Hypergraph) -> dict:
    return {"n": h.n, "edges": [list(e) for e in h.edges]}


def from_json_dict(obj: dict) -> Hypergraph:
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise ValueError("hypergraph JSON needs keys 'n' and 'edges'")
    return Hypergraph(obj["n"], obj["edges"])


def dumps(h: Hypergraph) -> str:
    """Canonical single-line JSON: ``{"n": ..., "edges": [[...], ...]}``."""
    return json.dumps(to_json_dict(h), separators=(", ", ": "))


def loads(text: str) -> Hypergraph:
    return from_json_dict(json.loads(text))


def save_json(h: Hypergraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(h))
        fh.write("\n")


def load_json(path) -> Hypergraph:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def parse_hmetis(text: str) -> Hypergraph:
    """Parse the plain hMETIS hypergraph format.

    First non-comment line is ``<num_edges> <num_vertices>``; each following
    line lists one hyperedge as 1-based vertex ids.  Lines starting with
    ``%`` are comments.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("%")]
    if not lines:
        raise ValueError("empty hMETIS input")
    head = lines[0].split()
    if len(head) < 2:
        raise ValueError(f"bad hMETIS header: {lines[0]!r}")
    m, n = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise ValueError(f"hMETIS header promises {m} hyperedges, found {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        members = [int(tok) - 1 for tok in ln.split()]
        for v in members:
            if not (0 <= v < n):
                raise ValueError(f"hMETIS vertex id {v + 1} outside 1..{n}")
        edges.append(members)
    return Hypergraph(n, edges)


def load_hmetis(path) -> Hypergraph:
    with open(path, encoding="utf-8") as fh:
        return parse_hmetis(fh.read())
