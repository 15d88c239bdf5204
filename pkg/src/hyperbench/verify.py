"""Certificate verification and exhaustive search for the NP-hard tasks.

Tasks covered: 3-coloring where every hyperedge must see at least two
distinct colors (3-CL), strict hypercycles whose consecutive hyperedges
share exactly one vertex (SHC), and Hamiltonian paths reported as the
sequence of hyperedges witnessing each step (HHM).

Conventions the verifiers enforce:
  * colorings are total maps vertex -> {c0, c1, c2};
  * hypercycles list distinct hyperedge ids, length >= 2 (a 2-cycle
    degenerates to a single shared-vertex constraint and is accepted);
  * a Hamiltonian path over n vertices has exactly n-1 steps and may
    reuse a hyperedge for several steps.
"""

from __future__ import annotations

from .core import Hypergraph

NUM_COLORS = 3
COLOR_NAMES = ("c0", "c1", "c2")


def _coloring_vector(h: Hypergraph, coloring) -> list[int]:
    """Normalize a coloring (sequence or vertex->color mapping) to a list."""
    if isinstance(coloring, dict):
        vec = [-1] * h.n
        for v, c in coloring.items():
            h.check_vertex(v)
            vec[v] = c
    else:
        vec = list(coloring)
    if len(vec) != h.n:
        raise ValueError(f"coloring covers {len(vec)} vertices, hypergraph has {h.n}")
    for v, c in enumerate(vec):
        if c not in (0, 1, 2):
            raise ValueError(f"vertex v{v} has invalid color {c!r}")
    return vec


def verify_3cl(h: Hypergraph, coloring) -> bool:
    """True iff every hyperedge contains at least two distinct colors."""
    vec = _coloring_vector(h, coloring)
    return all(len({vec[v] for v in e}) >= 2 for e in h.edges)


def verify_shc(h: Hypergraph, seq) -> bool:
    """True iff ``seq`` is a strict hypercycle: >= 2 distinct hyperedges with
    every cyclically consecutive pair sharing exactly one vertex."""
    ids = list(seq)
    for j in ids:
        h.check_edge(j)
    if len(ids) < 2 or len(set(ids)) != len(ids):
        return False
    for a, b in zip(ids, ids[1:] + ids[:1]):
        if len(set(h.edges[a]) & set(h.edges[b])) != 1:
            return False
    return True


def verify_hhm(h: Hypergraph, seq, s: int, t: int) -> bool:
    """True iff some vertex order v_0=s..v_{n-1}=t visits every vertex once
    with step i contained in the i-th hyperedge of ``seq``.

    The sequence must have exactly n-1 steps; repeating a hyperedge across
    steps is allowed.
    """
    h.check_vertex(s)
    h.check_vertex(t)
    if s == t:
        raise ValueError("path endpoints must differ")
    ids = list(seq)
    for j in ids:
        h.check_edge(j)
    if len(ids) != h.n - 1:
        return False
    used = [False] * h.n
    used[s] = True

    def step(i: int, cur: int) -> bool:
        if i == len(ids):
            return cur == t
        members = h.edges[ids[i]]
        if cur not in members:
            return False
        for nxt in members:
            if not used[nxt]:
                used[nxt] = True
                if step(i + 1, nxt):
                    return True
                used[nxt] = False
        return False

    return step(0, s)


def find_3cl(h: Hypergraph):
    """A verifying coloring as a tuple of color indices, or None.

    Backtracks over vertices in ascending order; an edge is checked once its
    highest vertex is assigned, so the search is exhaustive.
    """
    closing: list[list[int]] = [[] for _ in range(h.n)]
    for j, e in enumerate(h.edges):
        closing[max(e)].append(j)
    colors = [-1] * h.n

    def assign(v: int) -> bool:
        if v == h.n:
            return True
        for c in range(NUM_COLORS):
            colors[v] = c
            if all(len({colors[u] for u in h.edges[j]}) >= 2 for j in closing[v]) and assign(v + 1):
                return True
        colors[v] = -1
        return False

    return tuple(colors) if assign(0) else None


def _intersection_sizes(h: Hypergraph) -> list[list[int]]:
    sets = [set(e) for e in h.edges]
    m = len(sets)
    table = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            c = len(sets[i] & sets[j])
            table[i][j] = c
            table[j][i] = c
    return table


def find_shc(h: Hypergraph):
    """A verifying strict hypercycle (tuple of edge ids), or None.

    Scans all 2-cycles first, then searches longer cycles anchored at their
    minimum edge id so each cycle is visited once.
    """
    m = h.num_edges
    inter = _intersection_sizes(h)
    for i in range(m):
        for j in range(i + 1, m):
            if inter[i][j] == 1:
                return (i, j)
    path: list[int] = []
    used: set[int] = set()

    def dfs(start: int, cur: int) -> bool:
        for nxt in range(start + 1, m):
            if nxt in used or inter[cur][nxt] != 1:
                continue
            path.append(nxt)
            used.add(nxt)
            if len(path) >= 3 and inter[nxt][start] == 1:
                return True
            if dfs(start, nxt):
                return True
            path.pop()
            used.remove(nxt)
        return False

    for start in range(m):
        path = [start]
        used = {start}
        if dfs(start, start):
            return tuple(path)
    return None


def _pair_adjacency(h: Hypergraph):
    """Clique-expansion neighbor sets and the smallest edge id per pair."""
    nbr: list[set[int]] = [set() for _ in range(h.n)]
    pair_edge: dict[tuple[int, int], int] = {}
    for j, members in enumerate(h.edges):
        for ai in range(len(members)):
            for bi in range(ai + 1, len(members)):
                a, b = members[ai], members[bi]
                nbr[a].add(b)
                nbr[b].add(a)
                pair_edge.setdefault((a, b), j)
    return nbr, pair_edge


def find_hhm(h: Hypergraph, s: int, t: int):
    """A verifying step-edge sequence for a Hamiltonian path s..t, or None."""
    h.check_vertex(s)
    h.check_vertex(t)
    if s == t:
        raise ValueError("path endpoints must differ")
    n = h.n
    nbr, pair_edge = _pair_adjacency(h)
    visited = [False] * n
    visited[s] = True
    steps: list[int] = []

    def dfs(cur: int, count: int) -> bool:
        if count == n:
            return cur == t
        # dead-end prune: every unvisited vertex still needs a live neighbor
        for w in range(n):
            if not visited[w] and w != cur:
                if not any(not visited[x] or x == cur for x in nbr[w]):
                    return False
        for nxt in sorted(nbr[cur]):
            if visited[nxt] or (nxt == t and count != n - 1):
                continue
            visited[nxt] = True
            steps.append(pair_edge[(min(cur, nxt), max(cur, nxt))])
            if dfs(nxt, count + 1):
                return True
            steps.pop()
            visited[nxt] = False
        return False

    if dfs(s, 1):
        return tuple(steps)
    return None


def find_hhm_any(h: Hypergraph):
    """Some (steps, s, t) admitting a Hamiltonian path, or None.

    Vertices with a single clique-expansion neighbor must be endpoints,
    which both prunes infeasible graphs early and narrows the pair search.
    """
    if h.n < 2 or not h.is_connected():
        return None
    nbr, _ = _pair_adjacency(h)
    leaves = [v for v in range(h.n) if len(nbr[v]) == 1]
    if len(leaves) > 2:
        return None
    if len(leaves) == 2:
        pairs = [(leaves[0], leaves[1])]
    elif len(leaves) == 1:
        a = leaves[0]
        pairs = [(a, w) for w in range(h.n) if w != a]
    else:
        pairs = [(s, t) for s in range(h.n) for t in range(s + 1, h.n)]
    for s, t in pairs:
        steps = find_hhm(h, s, t)
        if steps is not None:
            return steps, s, t
    return None


def format_coloring(coloring) -> str:
    parts = ", ".join(f"v{v}:{COLOR_NAMES[c]}" for v, c in enumerate(coloring))
    return f"Coloring:[{parts}]"


def format_cycle(seq) -> str:
    return "Cycle:[" + ", ".join(f"e{j}" for j in seq) + "]"


def format_path(seq) -> str:
    return "Path:[" + ", ".join(f"e{j}" for j in seq) + "]"
