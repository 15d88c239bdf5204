import collections
import hashlib
import json
import random

import pytest

from hyperbench import (
    ALL_COMBOS,
    TASKS,
    TEXT_FORMATS,
    VISUAL_FORMATS,
    emit_corpus,
    load_manifest,
    make_meta,
    prompt_for,
    question_sentence,
)
from hyperbench.bench import (
    TASK_LEVELS,
    answer_spec_row,
    plan_assignments,
    plan_mix,
    render_meta_svg,
    sample_params,
    sample_rows,
)


def test_task_tables():
    assert len(TASKS) == 12
    assert len(TEXT_FORMATS) == 7
    assert len(VISUAL_FORMATS) == 5
    assert len(ALL_COMBOS) == 35
    assert sorted(TASK_LEVELS.values()) == sorted([1, 1, 1, 2, 2, 2, 3, 3, 3, 4, 4, 4])


def test_make_meta_deterministic():
    a = make_meta("VC", 3, "small", "synthetic", 99)
    b = make_meta("VC", 3, "small", "synthetic", 99)
    assert a.hypergraph == b.hypergraph
    assert a.answer == b.answer
    assert a.id == "VC-0003"


def test_make_meta_answers_are_ground_truth():
    meta = make_meta("VC", 0, "medium", "synthetic", 5)
    assert meta.answer["value"] == meta.hypergraph.n
    meta = make_meta("HEC", 1, "small", "synthetic", 5)
    assert meta.answer["value"] == meta.hypergraph.num_edges
    meta = make_meta("Ne", 2, "small", "synthetic", 5)
    u = meta.params["u"]
    assert tuple(meta.answer["value"]) == meta.hypergraph.neighbors(u)


def test_make_meta_level4_certificates():
    from hyperbench import verify_shc

    m3 = make_meta("3-CL", 0, "small", "synthetic", 7)
    assert m3.answer["kind"] == "coloring"
    assert m3.answer["value"].startswith("Coloring:[")
    mshc = make_meta("SHC", 0, "small", "synthetic", 7)
    assert mshc.answer["value"].startswith("Cycle:[")
    mhhm = make_meta("HHM", 0, "small", "synthetic", 7)
    assert mhhm.answer["value"].startswith("Path:[")
    ids = [int(x[1:]) for x in mshc.answer["value"][7:-1].split(", ")]
    assert verify_shc(mshc.hypergraph, ids)


def test_make_meta_ism_pair():
    from hyperbench import solve_ism

    meta = make_meta("ISM", 4, "small", "synthetic", 31)
    assert meta.hypergraph_b is not None
    assert meta.answer["kind"] == "yes_no"
    assert meta.answer["value"] == solve_ism(meta.hypergraph, meta.hypergraph_b)


def test_sample_params_in_range(hstar):
    p = sample_params(hstar, "DVC", 3)
    assert p["d"] in set(hstar.degree_sequence())
    p = sample_params(hstar, "OEC", 3)
    assert p["k"] in set(hstar.order_sequence())
    p = sample_params(hstar, "OSP", 3)
    assert p["s"] != p["t"]
    assert 0 <= p["s"] < 5 and 0 <= p["t"] < 5
    assert sample_params(hstar, "VC", 3) == {}


def test_question_sentences(hstar):
    meta = make_meta("ONe", 0, "small", "synthetic", 2)
    q = question_sentence(meta)
    assert "order >=" in q
    assert 'after "Ans:"' in q
    meta = make_meta("HHM", 0, "small", "synthetic", 2)
    q = question_sentence(meta)
    assert "Hamiltonian path" in q
    assert f"v{meta.params['s']}" in q and f"v{meta.params['t']}" in q
    meta = make_meta("SHC", 0, "small", "synthetic", 2)
    assert "|e_i ∩ e_{i+1}| = 1" in question_sentence(meta)


def test_prompt_for_ism_names_both_graphs():
    meta = make_meta("ISM", 0, "small", "synthetic", 13)
    prompt = prompt_for(meta, "N-Set")
    assert "The description of H is:" in prompt
    assert "The description of G is:" in prompt
    assert "The hyperedges in H are:" in prompt
    assert "The hyperedges in G are:" in prompt


def test_sample_rows_shape():
    meta = make_meta("OMF", 2, "small", "synthetic", 17)
    rows = sample_rows(meta)
    assert len(rows) == 35
    combos = [(r["text_format"], r["visual_format"]) for r in rows]
    assert combos == list(ALL_COMBOS)
    for row in rows:
        assert row["sample_id"] == f"{meta.id}__{row['text_format']}__{row['visual_format']}"
        assert row["image_path"] == f"images/{row['sample_id']}.svg"
        assert row["answer_spec"]["kind"] == "flow"
        assert row["prompt"].endswith('List the answer after "Ans:".')


def test_answer_spec_contains_graph():
    meta = make_meta("3-CL", 1, "small", "synthetic", 23)
    spec = answer_spec_row(meta)
    assert spec["graph"]["n"] == meta.hypergraph.n
    assert "params" in spec


def test_render_meta_svg_ism_has_two_sides():
    meta = make_meta("ISM", 1, "small", "synthetic", 29)
    svg = render_meta_svg(meta, "Bi-Inc")
    assert svg.count(">v0<") == 2


def test_plan_mix_exact_counts():
    rng = random.Random(0)
    plan = plan_mix(8, ["small", "medium", "large"], (1, 2, 1), rng)
    counts = collections.Counter(plan)
    assert counts == {"small": 2, "medium": 4, "large": 2}
    plan = plan_mix(10, ["synthetic", "real"], (1, 1), rng)
    counts = collections.Counter(plan)
    assert counts == {"synthetic": 5, "real": 5}


def test_plan_mix_remainders_within_one():
    rng = random.Random(1)
    plan = plan_mix(10, ["small", "medium", "large"], (1, 2, 1), rng)
    counts = collections.Counter(plan)
    assert sum(counts.values()) == 10
    assert abs(counts["medium"] - 5) <= 1
    assert abs(counts["small"] - 2.5) <= 0.5


def test_plan_assignments_deterministic():
    a = plan_assignments(6, 44)
    b = plan_assignments(6, 44)
    assert a == b
    assert len(a) == 6 * len(TASKS)
    per_task = collections.Counter(task for task, _, _, _ in a)
    assert all(per_task[t] == 6 for t in TASKS)
    indices = [idx for task, idx, _, _ in a if task == "OSP"]
    assert indices == list(range(6))


def test_emit_corpus_tiny(tmp_path):
    summary = emit_corpus(per_task=1, master_seed=3, outdir=tmp_path)
    assert summary["metas"] == 12
    assert summary["samples"] == 12 * 35
    rows = load_manifest(tmp_path / "manifest.jsonl")
    assert len(rows) == 420
    tasks = collections.Counter(r["task"] for r in rows)
    assert all(tasks[t] == 35 for t in TASKS)
    for row in rows[:40]:
        assert (tmp_path / row["image_path"]).is_file()
    # rows are serialized with sorted keys
    first_line = (tmp_path / "manifest.jsonl").read_text(encoding="utf-8").splitlines()[0]
    parsed = json.loads(first_line)
    assert first_line == json.dumps(parsed, sort_keys=True)


def _manifest_digest(tmp_path, name, **kwargs):
    out = tmp_path / name
    emit_corpus(outdir=out, **kwargs)
    return hashlib.sha256((out / "manifest.jsonl").read_bytes()).hexdigest()


def test_emit_corpus_reproducible(tmp_path):
    base = dict(per_task=2, master_seed=5, write_images=False)
    a = _manifest_digest(tmp_path, "a", **base)
    b = _manifest_digest(tmp_path, "b", **base)
    c = _manifest_digest(tmp_path, "c", per_task=2, master_seed=5, write_images=False, jobs=3)
    d = _manifest_digest(tmp_path, "d", per_task=2, master_seed=6, write_images=False)
    assert a == b
    assert a == c  # worker count does not change bytes
    assert a != d


def test_emit_corpus_dry_run_skips_images(tmp_path):
    emit_corpus(per_task=1, master_seed=3, outdir=tmp_path, write_images=False)
    assert not list((tmp_path / "images").glob("*.svg"))


def test_emit_rejects_bad_args(tmp_path):
    with pytest.raises(ValueError):
        emit_corpus(per_task=0, master_seed=1, outdir=tmp_path)
