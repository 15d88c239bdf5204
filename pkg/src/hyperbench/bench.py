"""Meta-problem assembly and corpus emission.

A meta problem is one task instance (hypergraph(s) + parameters + ground
truth).  Each meta expands into 35 QA samples — one per (textual, visual)
representation combination — sharing the same answer.  ``emit_corpus``
generates the metas with a 1:2:1 small:medium:large scale mix and a 1:1
synthetic:real source mix, renders prompts and SVGs, and writes a JSONL
manifest (keys sorted, no timestamps, byte-stable for a fixed seed).
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .core import Hypergraph, to_json_dict
from .generate import (
    GenSpec,
    SCALE_CLASSES,
    SourcePool,
    demo_pool,
    derive_seed,
    gen_3cl_instance,
    gen_hhm_instance,
    gen_ism_pair,
    gen_random_connected,
    gen_shc_instance,
    subsample_real,
)
from .solve import solve_dvc, solve_oec, solve_omf, solve_osp
from .text_repr import TEXT_FORMATS, render_text
from .verify import find_3cl, find_hhm_any, find_shc, format_coloring, format_cycle, format_path
from .visual_repr import VISUAL_FORMATS, render_svg, render_svg_pair

TASKS = ("VC", "HEC", "Ne", "DVC", "OEC", "ONe", "OSP", "OMF", "ISM", "3-CL", "SHC", "HHM")
TASK_LEVELS = {
    "VC": 1, "HEC": 1, "Ne": 1,
    "DVC": 2, "OEC": 2, "ONe": 2,
    "OSP": 3, "OMF": 3, "ISM": 3,
    "3-CL": 4, "SHC": 4, "HHM": 4,
}
UNDERSTANDING_TASKS = ("VC", "HEC", "Ne", "DVC", "OEC", "ONe")
REASONING_TASKS = ("OSP", "OMF", "ISM", "3-CL", "SHC", "HHM")
SOURCES = ("synthetic", "real")

# all 35 combos, text-major order
ALL_COMBOS = tuple((t, v) for t in TEXT_FORMATS for v in VISUAL_FORMATS)


@dataclass
class MetaProblem:
    id: str
    task: str
    level: int
    scale: str
    source: str
    seed: int
    hypergraph: Hypergraph
    hypergraph_b: Hypergraph | None
    params: dict
    answer: dict


def sample_params(h: Hypergraph, task: str, seed: int, allow_zero: bool = False) -> dict:
    """Task parameters drawn from the instance itself.

    Degree/order targets come from the distinct values present (uniform), so
    the counting answer is nonzero unless ``allow_zero`` widens the draw.
    """
    rng = random.Random(derive_seed(seed, "params"))
    if task in ("VC", "HEC", "ISM", "3-CL", "SHC"):
        return {}
    if task == "Ne":
        return {"u": rng.randrange(h.n)}
    if task == "DVC":
        degrees = sorted(set(h.degree_sequence()))
        d = rng.randint(0, max(degrees) + 1) if allow_zero else rng.choice(degrees)
        return {"d": d}
    if task == "OEC":
        orders = sorted(set(h.order_sequence()))
        k = rng.randint(2, max(orders) + 1) if allow_zero else rng.choice(orders)
        return {"k": k}
    if task == "ONe":
        orders = sorted(set(h.order_sequence()))
        return {"u": rng.randrange(h.n), "k": rng.choice(orders)}
    if task in ("OSP", "OMF"):
        s, t = rng.sample(range(h.n), 2)
        return {"s": s, "t": t}
    raise ValueError(f"unknown task {task!r}")


_DEMO_POOL: SourcePool | None = None


def _default_pool() -> SourcePool:
    global _DEMO_POOL
    if _DEMO_POOL is None:
        _DEMO_POOL = demo_pool()
    return _DEMO_POOL


def make_meta(
    task: str,
    index: int,
    scale: str,
    source: str,
    master_seed: int,
    pool: SourcePool | None = None,
    allow_zero: bool = False,
) -> MetaProblem:
    """Build one fully-solved meta problem deterministically from its seed."""
    if task not in TASKS:
        raise ValueError(f"unknown task {task!r}")
    seed = derive_seed(master_seed, task, index)
    spec = GenSpec(task, scale, source, seed)
    if source == "real" and pool is None:
        pool = _default_pool()
    h2 = None
    params: dict = {}

    if task == "ISM":
        pair = gen_ism_pair(spec, pool)
        h, h2 = pair.a, pair.b
        answer = {"kind": "yes_no", "value": pair.isomorphic}
    elif task == "3-CL":
        if source == "real":
            h = subsample_real(pool, spec, require=lambda g: find_3cl(g) is not None)
            coloring = find_3cl(h)
        else:
            inst = gen_3cl_instance(spec)
            h, coloring = inst.hypergraph, inst.coloring
        answer = {"kind": "coloring", "value": format_coloring(coloring)}
    elif task == "SHC":
        if source == "real":
            h = subsample_real(pool, spec, require=lambda g: find_shc(g) is not None)
            cycle = find_shc(h)
        else:
            inst = gen_shc_instance(spec)
            h, cycle = inst.hypergraph, inst.cycle
        answer = {"kind": "cycle", "value": format_cycle(cycle)}
    elif task == "HHM":
        if source == "real":
            h = subsample_real(pool, spec, require=lambda g: find_hhm_any(g) is not None)
            steps, s, t = find_hhm_any(h)
        else:
            inst = gen_hhm_instance(spec)
            h, s, t, steps = inst.hypergraph, inst.start, inst.end, inst.path
        params = {"s": s, "t": t}
        answer = {"kind": "path", "value": format_path(steps)}
    else:
        h = subsample_real(pool, spec) if source == "real" else gen_random_connected(spec)
        params = sample_params(h, task, seed, allow_zero)
        if task == "VC":
            answer = {"kind": "count", "value": h.num_vertices}
        elif task == "HEC":
            answer = {"kind": "count", "value": h.num_edges}
        elif task == "Ne":
            answer = {"kind": "vertex_set", "value": list(h.neighbors(params["u"]))}
        elif task == "DVC":
            answer = {"kind": "count", "value": solve_dvc(h, params["d"])}
        elif task == "OEC":
            answer = {"kind": "count", "value": solve_oec(h, params["k"])}
        elif task == "ONe":
            answer = {"kind": "vertex_set", "value": list(h.neighbors_filtered(params["u"], params["k"]))}
        elif task == "OSP":
            res = solve_osp(h, params["s"], params["t"])
            answer = {
                "kind": "path_weight",
                "value": res.total_weight if res.reachable else None,
                "witness": list(res.witness) if res.witness else None,
            }
        else:  # OMF
            answer = {"kind": "flow", "value": solve_omf(h, params["s"], params["t"])}

    return MetaProblem(
        id=f"{task}-{index:04d}",
        task=task,
        level=TASK_LEVELS[task],
        scale=scale,
        source=source,
        seed=seed,
        hypergraph=h,
        hypergraph_b=h2,
        params=params,
        answer=answer,
    )


def question_sentence(meta: MetaProblem) -> str:
    """The task question with parameters substituted (no graph rendering)."""
    task, p = meta.task, meta.params
    if task == "VC":
        return 'Q: How many vertices are in the hypergraph G? List the answer after "Ans:".'
    if task == "HEC":
        return 'Q: How many hyperedges are in the hypergraph G? List the answer after "Ans:".'
    if task == "Ne":
        return (
            f"Q: What are the direct neighbors of vertex v{p['u']} in hypergraph G? "
            f"(Neighbors = vertices sharing at least one hyperedge with v{p['u']}). "
            'List the answer after "Ans:" in the format {v1,v2,...} or "No neighbors".'
        )
    if task == "DVC":
        return (
            f"Q: How many vertices have degree {p['d']} in hypergraph G? "
            "(Degree = number of hyperedges the vertex belongs to). "
            'List the answer after "Ans:".'
        )
    if task == "OEC":
        return (
            f"Q: How many hyperedges have order {p['k']} in hypergraph G? "
            "(Order = number of vertices in the hyperedge). "
            'List the answer after "Ans:".'
        )
    if task == "ONe":
        return (
            f"Q: What are the neighbors of vertex v{p['u']} when only considering "
            f"hyperedges with order >= {p['k']} in hypergraph G? "
            'List the answer after "Ans:" in the format {v1,v2,...} or "No n-neighbors".'
        )
    if task == "OSP":
        return (
            f"Q: What is the shortest path length from vertex v{p['s']} to vertex v{p['t']} "
            "in hypergraph G, where each hyperedge's weight equals its order (number of "
            'vertices)? If no path exists, answer "No path". List the answer after "Ans:".'
        )
    if task == "OMF":
        return (
            f"Q: What is the estimated maximum flow from vertex v{p['s']} to vertex v{p['t']} "
            "in hypergraph G, where each hyperedge's capacity equals its order? "
            'If no flow exists, answer "0". List the answer after "Ans:".'
        )
    if task == "ISM":
        return (
            "Q: Are these two hypergraphs isomorphic? (Two hypergraphs are isomorphic if "
            "there exists a vertex relabeling that transforms one into the other). "
            'List the answer after "Ans:" in the format [Yes/No].'
        )
    if task == "3-CL":
        return (
            "Q: Please provide a 3-coloring strategy such that each hyperedge contains "
            "nodes with at least 2 different colors (assign each vertex a color from "
            '{c0, c1, c2}). List the answer after "Ans:" as "Coloring:[v0:c0,v1:c1,...]".'
        )
    if task == "SHC":
        return (
            "Q: Please identify a strict hypercycle in the hypergraph G (A strict "
            "hypercycle is a sequence of hyperedges e1,e2,...,ek where adjacent "
            "hyperedges share exactly one vertex, i.e., |e_i ∩ e_{i+1}| = 1, and "
            '|e_k ∩ e_1| = 1, forming a closed loop). List the hypercycle after "Ans:" '
            'as "Cycle:[e0,e1,...]".'
        )
    if task == "HHM":
        return (
            f"Q: Please provide a valid Hamiltonian path from v{p['s']} to v{p['t']}.\n"
            "(Hamiltonian path = path visiting all vertices exactly once). "
            'List the answer after "Ans:" as "Path:[e0,e1,...]".'
        )
    raise ValueError(f"unknown task {task!r}")


def prompt_for(meta: MetaProblem, text_fmt: str) -> str:
    """Full textual prompt: rendering(s) plus the question sentence."""
    if meta.task == "ISM":
        return (
            "There are two hypergraphs: H and G.\n"
            "The description of H is:\n"
            + render_text(meta.hypergraph, text_fmt, name="H")
            + "\nThe description of G is:\n"
            + render_text(meta.hypergraph_b, text_fmt, name="G")
            + "\n"
            + question_sentence(meta)
        )
    return render_text(meta.hypergraph, text_fmt) + "\n" + question_sentence(meta)


def render_meta_svg(meta: MetaProblem, visual_fmt: str) -> str:
    """The sample image for a meta (ISM pairs share one canvas and seed)."""
    svg_seed = derive_seed(meta.seed, "svg", visual_fmt)
    if meta.task == "ISM":
        return render_svg_pair(meta.hypergraph, meta.hypergraph_b, visual_fmt, seed=svg_seed)
    return render_svg(meta.hypergraph, visual_fmt, seed=svg_seed)


def answer_spec_row(meta: MetaProblem) -> dict:
    """Self-contained answer record: kind/value plus the graph(s) and params,
    so graded re-verification never needs the generator."""
    spec = dict(meta.answer)
    spec["graph"] = to_json_dict(meta.hypergraph)
    if meta.hypergraph_b is not None:
        spec["graph_b"] = to_json_dict(meta.hypergraph_b)
    spec["params"] = dict(meta.params)
    return spec


def sample_rows(meta: MetaProblem) -> list[dict]:
    """The 35 manifest rows of one meta, in text-major combo order."""
    prompts = {fmt: prompt_for(meta, fmt) for fmt in TEXT_FORMATS}
    spec = answer_spec_row(meta)
    rows = []
    for text_fmt, visual_fmt in ALL_COMBOS:
        sample_id = f"{meta.id}__{text_fmt}__{visual_fmt}"
        rows.append(
            {
                "sample_id": sample_id,
                "meta_id": meta.id,
                "task": meta.task,
                "level": meta.level,
                "scale": meta.scale,
                "source": meta.source,
                "text_format": text_fmt,
                "visual_format": visual_fmt,
                "prompt": prompts[text_fmt],
                "image_path": f"images/{sample_id}.svg",
                "answer_spec": spec,
            }
        )
    return rows


def plan_mix(count: int, labels, weights, rng: random.Random) -> list[str]:
    """Exact largest-remainder split of ``count`` over labels, shuffled."""
    total = sum(weights)
    base = [count * w // total for w in weights]
    fracs = [count * w % total for w in weights]
    order = sorted(range(len(labels)), key=lambda i: (-fracs[i], rng.random()))
    for i in order[: count - sum(base)]:
        base[i] += 1
    out: list[str] = []
    for label, c in zip(labels, base):
        out.extend([label] * c)
    rng.shuffle(out)
    return out


def plan_assignments(per_task: int, master_seed: int, scale_mix=(1, 2, 1), source_mix=(1, 1)):
    """(task, index, scale, source) for every meta, in emission order."""
    out = []
    for task in TASKS:
        rng = random.Random(derive_seed(master_seed, task, "mix"))
        scales = plan_mix(per_task, SCALE_CLASSES, scale_mix, rng)
        sources = plan_mix(per_task, SOURCES, source_mix, rng)
        for idx in range(per_task):
            out.append((task, idx, scales[idx], sources[idx]))
    return out


_WORKER_POOL: SourcePool | None = None
_WORKER_SEED = 0


def _init_worker(pool: SourcePool | None, master_seed: int) -> None:
    global _WORKER_POOL, _WORKER_SEED
    _WORKER_POOL = pool
    _WORKER_SEED = master_seed


def _meta_worker(assignment) -> MetaProblem:
    task, idx, scale, source = assignment
    return make_meta(task, idx, scale, source, _WORKER_SEED, _WORKER_POOL)


def emit_corpus(
    per_task: int,
    master_seed: int,
    outdir,
    pool: SourcePool | None = None,
    scale_mix=(1, 2, 1),
    source_mix=(1, 1),
    jobs: int = 1,
    write_images: bool = True,
    log=None,
) -> dict:
    """Generate, render, and write the corpus; returns a summary dict.

    The manifest is identical for a given seed regardless of ``jobs`` or
    ``write_images`` (image files are simply skipped when disabled).
    """
    if per_task < 1:
        raise ValueError("per_task must be >= 1")
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    images_dir = outdir / "images"
    if write_images:
        images_dir.mkdir(exist_ok=True)
    assignments = plan_assignments(per_task, master_seed, scale_mix, source_mix)

    if jobs > 1:
        with ProcessPoolExecutor(
            max_workers=jobs, initializer=_init_worker, initargs=(pool, master_seed)
        ) as ex:
            metas = list(ex.map(_meta_worker, assignments, chunksize=8))
    else:
        metas = [make_meta(t, i, sc, so, master_seed, pool) for t, i, sc, so in assignments]

    manifest_path = outdir / "manifest.jsonl"
    sample_count = 0
    image_count = 0
    with open(manifest_path, "w", encoding="utf-8") as mf:
        for meta in metas:
            if log:
                log(f"meta {meta.id} ({meta.scale}/{meta.source})")
            rows = sample_rows(meta)
            if write_images:
                for visual_fmt in VISUAL_FORMATS:
                    svg = render_meta_svg(meta, visual_fmt)
                    for text_fmt in TEXT_FORMATS:
                        path = images_dir / f"{meta.id}__{text_fmt}__{visual_fmt}.svg"
                        path.write_text(svg, encoding="utf-8")
                        image_count += 1
            for row in rows:
                mf.write(json.dumps(row, sort_keys=True))
                mf.write("\n")
                sample_count += 1
    return {
        "metas": len(metas),
        "samples": sample_count,
        "images": image_count,
        "manifest": str(manifest_path),
    }


def load_manifest(path) -> list[dict]:
    rows = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                rows.append(json.loads(line))
    return rows
