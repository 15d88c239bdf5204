"""Seeded hypergraph generation: scale-banded random connected instances,
feasible-by-construction instances for the NP-hard tasks, isomorphism pairs,
and random-walk subsampling of real source hypergraphs.

All randomness flows from integer seeds through ``derive_seed``; the same
seed always reproduces the same instance.  Synthetic instances keep
|E| within [ceil(0.2|V|), floor(1.5|V|)] and hyperedge orders within
[2, min(6, |V|)]; every emitted hypergraph is connected.
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass

from .core import Hypergraph
from .verify import verify_hhm, verify_shc

SCALE_RANGES = {"small": (5, 10), "medium": (10, 15), "large": (15, 20)}
SCALE_CLASSES = ("small", "medium", "large")
MAX_ORDER = 6


class GenerationError(RuntimeError):
    """Raised when a constructor exhausts its retry budget."""


def derive_seed(master: int, *labels) -> int:
    """Stable 64-bit sub-seed from a master seed and a label path."""
    digest = hashlib.blake2b(digest_size=8)
    digest.update(str(master).encode())
    for label in labels:
        raw = str(label).encode()
        # length prefix keeps ("a","b") distinct from ("a:b",)
        digest.update(len(raw).to_bytes(4, "big"))
        digest.update(raw)
    return int.from_bytes(digest.digest(), "big")


def classify_scale(n: int) -> str:
    """Scale class of a vertex count; boundary values go to the lower class."""
    if n < SCALE_RANGES["small"][0] or n > SCALE_RANGES["large"][1]:
        raise ValueError(f"vertex count {n} outside benchmark scale 5..20")
    if n <= SCALE_RANGES["small"][1]:
        return "small"
    if n <= SCALE_RANGES["medium"][1]:
        return "medium"
    return "large"


def edge_count_bounds(n: int) -> tuple[int, int]:
    """Admissible synthetic hyperedge count band for n vertices."""
    return max(1, math.ceil(0.2 * n)), math.floor(1.5 * n)


@dataclass(frozen=True)
class GenSpec:
    """What to generate: task name, scale class, source kind, and seed."""

    task: str = "generic"
    scale: str = "small"
    source: str = "synthetic"
    seed: int = 0

    def __post_init__(self):
        if self.scale not in SCALE_RANGES:
            raise ValueError(f"unknown scale class {self.scale!r}")
        if self.source not in ("synthetic", "real"):
            raise ValueError(f"unknown source {self.source!r}")


@dataclass(frozen=True)
class ShcInstance:
    hypergraph: Hypergraph
    cycle: tuple[int, ...]


@dataclass(frozen=True)
class HhmInstance:
    hypergraph: Hypergraph
    start: int
    end: int
    path: tuple[int, ...]


@dataclass(frozen=True)
class ThreeColInstance:
    hypergraph: Hypergraph
    coloring: tuple[int, ...]


@dataclass(frozen=True)
class IsmPair:
    a: Hypergraph
    b: Hypergraph
    isomorphic: bool


def _components(n: int, edges) -> list[list[int]]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for members in edges:
        root = find(members[0])
        for v in members[1:]:
            parent[find(v)] = root
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values(), key=lambda g: g[0])


def _random_edge(rng: random.Random, n: int, cap: int) -> tuple[int, ...]:
    return tuple(sorted(rng.sample(range(n), rng.randint(2, cap))))


def _bridge_components(rng: random.Random, n: int, edges: list, max_edges: int) -> bool:
    """Append 2-edges joining components until connected; False if out of room."""
    comps = _components(n, edges)
    while len(comps) > 1:
        if len(edges) >= max_edges:
            return False
        a = rng.choice(comps[0])
        b = rng.choice(comps[1])
        edges.append((min(a, b), max(a, b)))
        comps = _components(n, edges)
    return True


def gen_random_connected(spec: GenSpec) -> Hypergraph:
    """Connected random hypergraph with |V| in the scale range and |E| in band."""
    lo, hi = SCALE_RANGES[spec.scale]
    for attempt in range(64):
        rng = random.Random(derive_seed(spec.seed, "rand", attempt))
        n = rng.randint(lo, hi)
        emin, emax = edge_count_bounds(n)
        cap = min(MAX_ORDER, n)
        edges = [_random_edge(rng, n, cap) for _ in range(rng.randint(emin, emax) - 1)]
        if not _bridge_components(rng, n, edges, emax):
            continue
        while len(edges) < emin:
            edges.append(_random_edge(rng, n, cap))
        h = Hypergraph(n, edges)
        if h.is_connected():
            return h
    raise GenerationError(f"random generation failed for {spec}")


def gen_3cl_instance(spec: GenSpec) -> ThreeColInstance:
    """Random connected instance with a planted valid 3-coloring.

    Every proposed hyperedge is re-drawn (or minimally repaired) until it
    spans at least two color classes, so the planted coloring verifies by
    construction.
    """
    lo, hi = SCALE_RANGES[spec.scale]
    for attempt in range(64):
        rng = random.Random(derive_seed(spec.seed, "3cl", attempt))
        n = rng.randint(lo, hi)
        emin, emax = edge_count_bounds(n)
        cap = min(MAX_ORDER, n)
        colors = [rng.randrange(3) for _ in range(n)]
        anchors = rng.sample(range(n), 3)
        for c, v in enumerate(anchors):
            colors[v] = c

        def colorful(edge) -> bool:
            return len({colors[v] for v in edge}) >= 2

        def repaired(edge) -> tuple[int, ...]:
            for _ in range(200):
                if colorful(edge):
                    return edge
                edge = _random_edge(rng, n, cap)
            # swap one member for an anchor of a different color
            other = next(a for a in anchors if colors[a] != colors[edge[0]])
            return tuple(sorted({other} | set(edge[1:])))

        edges = [repaired(_random_edge(rng, n, cap)) for _ in range(rng.randint(emin, emax) - 1)]
        comps = _components(n, edges)
        bridged = True
        while len(comps) > 1:
            if len(edges) >= emax:
                bridged = False
                break
            a = rng.choice(comps[0])
            b = rng.choice(comps[1])
            if colors[a] != colors[b]:
                edges.append((min(a, b), max(a, b)))
            else:
                x = next(v for v in anchors if colors[v] != colors[a])
                edges.append(tuple(sorted({a, b, x})))
            comps = _components(n, edges)
        if not bridged:
            continue
        while len(edges) < emin:
            edges.append(repaired(_random_edge(rng, n, cap)))
        h = Hypergraph(n, edges)
        if h.is_connected():
            return ThreeColInstance(h, tuple(colors))
    raise GenerationError(f"3-coloring generation failed for {spec}")


def _shuffle_and_remap(rng: random.Random, edges: list) -> tuple[list, dict[int, int]]:
    order = list(range(len(edges)))
    rng.shuffle(order)
    new_pos = {old: new for new, old in enumerate(order)}
    return [edges[old] for old in order], new_pos


def gen_shc_instance(spec: GenSpec) -> ShcInstance:
    """Instance with a planted strict hypercycle.

    A ring of L junction vertices is wrapped into L backbone edges (edge i
    holds junctions i and i+1 plus private filler vertices), so consecutive
    backbone edges intersect in exactly one vertex.  Leftover vertices are
    attached by coverage edges; random distractor edges pad out the count.
    Distractors never touch the backbone's pairwise intersections, so the
    recorded certificate stays valid.
    """
    lo, hi = SCALE_RANGES[spec.scale]
    for attempt in range(64):
        rng = random.Random(derive_seed(spec.seed, "shc", attempt))
        n = rng.randint(lo, hi)
        emin, emax = edge_count_bounds(n)
        cap = min(MAX_ORDER, n)
        m = rng.randint(max(3, emin), emax)
        ring_len = rng.randint(3, min(m, n))
        junctions = rng.sample(range(n), ring_len)
        leftovers = [v for v in range(n) if v not in junctions]
        rng.shuffle(leftovers)
        backbone = []
        for i in range(ring_len):
            fill_count = min(rng.randint(0, cap - 2), len(leftovers))
            fillers = [leftovers.pop() for _ in range(fill_count)]
            backbone.append(tuple(sorted({junctions[i], junctions[(i + 1) % ring_len], *fillers})))
        covered = set(range(n)) - set(leftovers)
        edges = list(backbone)
        while leftovers:
            chunk = [leftovers.pop() for _ in range(min(cap - 1, len(leftovers)))]
            anchor = rng.choice(sorted(covered))
            edges.append(tuple(sorted({anchor, *chunk})))
            covered.update(chunk)
        if len(edges) > emax:
            continue
        while len(edges) < max(m, emin):
            edges.append(_random_edge(rng, n, cap))
        shuffled, new_pos = _shuffle_and_remap(rng, edges)
        cycle = tuple(new_pos[i] for i in range(ring_len))
        h = Hypergraph(n, shuffled)
        if h.is_connected() and verify_shc(h, cycle):
            return ShcInstance(h, cycle)
    raise GenerationError(f"hypercycle generation failed for {spec}")


def gen_hhm_instance(spec: GenSpec) -> HhmInstance:
    """Instance with a planted Hamiltonian path.

    A random vertex order is cut into overlapping windows (each window is a
    consecutive run, the next window starting at the previous window's last
    vertex); every step of the order is then witnessed by its window edge.
    """
    lo, hi = SCALE_RANGES[spec.scale]
    for attempt in range(64):
        rng = random.Random(derive_seed(spec.seed, "hhm", attempt))
        n = rng.randint(lo, hi)
        emin, emax = edge_count_bounds(n)
        cap = min(MAX_ORDER, n)
        pi = rng.sample(range(n), n)
        windows = []
        step_window = [0] * (n - 1)  # step t covers (pi[t], pi[t+1])
        i = 0
        while i < n - 1:
            j = min(i + rng.randint(2, cap) - 1, n - 1)
            for t in range(i, j):
                step_window[t] = len(windows)
            windows.append(tuple(sorted(pi[i : j + 1])))
            i = j
        edges = list(windows)
        target_m = rng.randint(max(emin, len(edges)), emax)
        while len(edges) < target_m:
            edges.append(_random_edge(rng, n, cap))
        shuffled, new_pos = _shuffle_and_remap(rng, edges)
        path = tuple(new_pos[w] for w in step_window)
        h = Hypergraph(n, shuffled)
        if h.is_connected() and verify_hhm(h, path, pi[0], pi[-1]):
            return HhmInstance(h, pi[0], pi[-1], path)
    raise GenerationError(f"Hamiltonian-path generation failed for {spec}")


def relabel(h: Hypergraph, perm, rng: random.Random | None = None) -> Hypergraph:
    """Map vertex v to perm[v]; optionally shuffle the hyperedge order."""
    edges = [tuple(sorted(perm[v] for v in e)) for e in h.edges]
    if rng is not None:
        rng.shuffle(edges)
    return Hypergraph(h.n, edges)


def _mutate(rng: random.Random, h: Hypergraph) -> Hypergraph | None:
    """One small random structural edit (move / grow / shrink a membership)."""
    cap = min(MAX_ORDER, h.n)
    edges = [set(e) for e in h.edges]
    ops = []
    if any(len(e) > 2 for e in edges) and len(edges) > 1:
        ops.append("move")
    if any(len(e) < cap for e in edges):
        ops.append("grow")
    if any(len(e) > 2 for e in edges):
        ops.append("shrink")
    if not ops:
        return None
    op = rng.choice(ops)
    if op == "move":
        src_choices = [j for j, e in enumerate(edges) if len(e) > 2]
        src = rng.choice(src_choices)
        v = rng.choice(sorted(edges[src]))
        dst_choices = [j for j, e in enumerate(edges) if j != src and v not in e and len(e) < cap]
        if not dst_choices:
            return None
        dst = rng.choice(dst_choices)
        edges[src].discard(v)
        edges[dst].add(v)
    elif op == "grow":
        j = rng.choice([j for j, e in enumerate(edges) if len(e) < cap])
        outside = [v for v in range(h.n) if v not in edges[j]]
        if not outside:
            return None
        edges[j].add(rng.choice(outside))
    else:
        j = rng.choice([j for j, e in enumerate(edges) if len(e) > 2])
        edges[j].discard(rng.choice(sorted(edges[j])))
    return Hypergraph(h.n, [tuple(sorted(e)) for e in edges])


def gen_ism_pair(spec: GenSpec, pool: "SourcePool | None" = None) -> IsmPair:
    """Pair of hypergraphs with a ground-truth isomorphism label.

    Positive pairs (probability 1/2) relabel the base through a random vertex
    permutation and shuffle the edge order.  Negative pairs apply small
    structural mutations until the mutant is connected and provably
    non-isomorphic, then relabel it too.
    """
    from .solve import solve_ism

    rng = random.Random(derive_seed(spec.seed, "ism"))
    positive = rng.random() < 0.5
    for attempt in range(32):
        base_spec = GenSpec(spec.task, spec.scale, spec.source, derive_seed(spec.seed, "ism-base", attempt))
        if spec.source == "real":
            if pool is None:
                raise ValueError("real-source generation requires a source pool")
            base = subsample_real(pool, base_spec)
        else:
            base = gen_random_connected(base_spec)
        perm = list(range(base.n))
        rng.shuffle(perm)
        if positive:
            return IsmPair(base, relabel(base, perm, rng), True)
        for _ in range(1000):
            mutant = _mutate(rng, base)
            if mutant is None or not mutant.is_connected():
                continue
            if not solve_ism(base, mutant):
                return IsmPair(base, relabel(mutant, perm, rng), False)
    raise GenerationError(f"isomorphism-pair generation failed for {spec}")


@dataclass(frozen=True)
class SourcePool:
    """A large real hypergraph serving as a subsampling source."""

    hypergraph: Hypergraph
    name: str = "pool"

    def __post_init__(self):
        bad = [v for v in range(self.hypergraph.n) if not self.hypergraph.incident_edges(v)]
        if bad:
            raise ValueError(f"pool has {len(bad)} isolated vertices (first: v{bad[0]})")


def load_pool(path) -> SourcePool:
    """Load a source pool from canonical JSON (.json) or hMETIS text."""
    from . import core

    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    name = str(path).rsplit("/", 1)[-1]
    if str(path).endswith(".json"):
        return SourcePool(core.loads(text), name)
    return SourcePool(core.parse_hmetis(text), name)


def demo_pool() -> SourcePool:
    """Built-in deterministic stand-in for a real source hypergraph."""
    rng = random.Random(derive_seed(0x48594745, "demo-pool"))
    n = 60
    edges = [_random_edge(rng, n, 6) for _ in range(110)]
    if not _bridge_components(rng, n, edges, 200):  # pragma: no cover - tiny odds
        raise GenerationError("demo pool construction failed")
    return SourcePool(Hypergraph(n, edges), "demo")


def reindex_canonical(h: Hypergraph, order) -> Hypergraph:
    """Renumber vertices so order[i] becomes i; re-sort edges lexicographically."""
    order = list(order)
    if sorted(order) != list(range(h.n)):
        raise ValueError("order must be a permutation of the vertex ids")
    new_id = {old: new for new, old in enumerate(order)}
    edges = sorted(tuple(sorted(new_id[v] for v in e)) for e in h.edges)
    return Hypergraph(h.n, edges)


def subsample_real(
    pool: SourcePool,
    spec: GenSpec,
    require=None,
    target: int | None = None,
) -> Hypergraph:
    """Random-walk subsample of a pool, renumbered by visitation order.

    Walks vertex -> random incident hyperedge -> random member until the
    target vertex count is collected, then keeps each pool hyperedge's
    restriction to the visited set when it has >= 2 vertices (dropping exact
    duplicate restrictions).  Retries with fresh walks until connected and,
    if given, until ``require(h)`` holds.
    """
    big = pool.hypergraph
    lo, hi = SCALE_RANGES[spec.scale]
    if target is not None and not (lo <= target <= hi):
        raise ValueError(f"target {target} outside scale range {lo}..{hi}")
    for walk in range(10_000):
        rng = random.Random(derive_seed(spec.seed, "walk", walk))
        goal = target if target is not None else rng.randint(lo, hi)
        if goal > big.n:
            raise ValueError(f"pool too small: {big.n} vertices < target {goal}")
        cur = rng.randrange(big.n)
        visited = [cur]
        vis_set = {cur}
        for _ in range(60 * goal):
            if len(visited) >= goal:
                break
            e = rng.choice(big.incident_edges(cur))
            cur = rng.choice(big.edges[e])
            if cur not in vis_set:
                vis_set.add(cur)
                visited.append(cur)
        if len(visited) < goal:
            continue
        new_id = {old: new for new, old in enumerate(visited)}
        seen = set()
        edges = []
        for members in big.edges:
            restricted = tuple(sorted(new_id[v] for v in members if v in vis_set))
            if len(restricted) >= 2 and restricted not in seen:
                seen.add(restricted)
                edges.append(restricted)
        h = reindex_canonical(Hypergraph(goal, edges), range(goal))
        if not h.is_connected():
            continue
        if require is None or require(h):
            return h
    raise GenerationError(f"subsampling failed for {spec} (pool {pool.name})")
