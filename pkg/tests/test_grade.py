import json
import warnings

import pytest

from hyperbench import (
    ALL_COMBOS,
    GradeOptions,
    aggregate,
    build_prm,
    canonical_answer_text,
    corrupted_answer_text,
    emit_corpus,
    grade_responses,
    judge,
    load_manifest,
    parse_answer,
    to_json_dict,
    write_grades,
    write_prm,
)
from hyperbench.grade import GradeRecord, ParsedAnswer, read_responses

STRICT = GradeOptions(lenient=False)


# -- parsing ---------------------------------------------------------------


def test_parse_count_variants():
    assert parse_answer("VC", "Ans: 12").value == 12
    assert parse_answer("VC", "ans:12").value == 12
    assert parse_answer("VC", "thinking...\nAns: 5\n").value == 5
    p = parse_answer("VC", "Ans: there are 12 vertices")
    assert p.value == 12
    assert "prose" in p.flags


def test_parse_marker_selection():
    text = "Ans: 3 ... wait, recount. Ans: 4"
    assert parse_answer("VC", text).value == 4
    first = parse_answer("VC", text, GradeOptions(marker="first"))
    assert first.value == 3


def test_parse_no_marker():
    p = parse_answer("VC", "the count is 9")
    assert p.value == 9
    assert "no_marker" in p.flags
    s = parse_answer("VC", "the count is 9", STRICT)
    assert s.failed


def test_parse_failure():
    p = parse_answer("VC", "Ans: none of the above")
    assert p.failed
    assert "parse_failure" in p.flags


def test_parse_path_weight():
    assert parse_answer("OSP", "Ans: 14").value == 14
    assert parse_answer("OSP", "Ans: No path").value is None
    assert parse_answer("OSP", "ans: there is no path").value is None


def test_parse_vertex_set():
    assert parse_answer("Ne", "Ans: {v2,v5,v1}").value == [1, 2, 5]
    assert parse_answer("Ne", "Ans: {}").value == []
    assert parse_answer("Ne", "Ans: No neighbors").value == []
    assert parse_answer("ONe", "Ans: no n-neighbors").value == []
    p = parse_answer("Ne", "Ans: v1 and v3")
    assert p.value == [1, 3]
    assert "no_braces" in p.flags
    q = parse_answer("Ne", "Ans: {2, 4}")
    assert q.value == [2, 4]
    assert "bare_ids" in q.flags
    assert parse_answer("Ne", "Ans: {v1, v1, v2}").value == [1, 2]


def test_parse_yes_no():
    assert parse_answer("ISM", "Ans: Yes").value is True
    assert parse_answer("ISM", "Ans: [No]").value is False
    p = parse_answer("ISM", "Ans: I believe yes, they match")
    assert p.value is True
    assert "prose" in p.flags
    assert parse_answer("ISM", "Ans: maybe").failed


def test_parse_coloring():
    p = parse_answer("3-CL", "Ans: Coloring:[v0:c0, v1:c2, v2:c1]")
    assert p.value == {0: 0, 1: 2, 2: 1}
    assert p.flags == ()
    q = parse_answer("3-CL", "Ans: [v0:c0,v1:c1]")
    assert q.value == {0: 0, 1: 1}
    assert "missing_keyword" in q.flags
    r = parse_answer("3-CL", "Ans: v0=0, v1=2")
    assert r.value == {0: 0, 1: 2}
    dup = parse_answer("3-CL", "Ans: Coloring:[v0:c0, v0:c1]")
    assert dup.value == {0: 1}
    assert "duplicate_assignment" in dup.flags


def test_parse_cycle_and_path():
    p = parse_answer("SHC", "Ans: Cycle:[e0, e3, e2]")
    assert p.value == [0, 3, 2]
    assert p.flags == ()
    q = parse_answer("HHM", "Ans: Path:[e1,e1,e4]")
    assert q.value == [1, 1, 4]
    r = parse_answer("SHC", "Ans: [1, 2, 3]")
    assert r.value == [1, 2, 3]
    assert "bare_ids" in r.flags
    assert parse_answer("HHM", "Ans: impossible").failed


def test_strict_rejects_leniencies():
    assert parse_answer("Ne", "Ans: v1 and v3", STRICT).failed
    assert parse_answer("3-CL", "Ans: [v0:c0]", STRICT).failed
    assert not parse_answer("Ne", "Ans: {v1,v3}", STRICT).failed


def test_parse_unknown_task():
    with pytest.raises(ValueError):
        parse_answer("XYZ", "Ans: 1")


# -- judging ---------------------------------------------------------------


def _row(task, kind, value, graph=None, params=None, **extra):
    spec = {"kind": kind, "value": value, "params": params or {}}
    if graph is not None:
        spec["graph"] = to_json_dict(graph)
    row = {
        "sample_id": f"{task}-0000__LO-Inc__Enc-Hy",
        "meta_id": f"{task}-0000",
        "task": task,
        "text_format": "LO-Inc",
        "visual_format": "Enc-Hy",
        "prompt": "p",
        "answer_spec": spec,
    }
    row.update(extra)
    return row


def test_judge_count():
    row = _row("VC", "count", 7)
    assert judge(row, parse_answer("VC", "Ans: 7"))[0]
    assert not judge(row, parse_answer("VC", "Ans: 8"))[0]
    assert not judge(row, parse_answer("VC", "Ans: nothing"))[0]


def test_judge_vertex_set_order_free():
    row = _row("Ne", "vertex_set", [1, 4])
    assert judge(row, parse_answer("Ne", "Ans: {v4,v1}"))[0]
    assert not judge(row, parse_answer("Ne", "Ans: {v4}"))[0]


def test_judge_accepts_any_valid_certificate(hstar):
    row = _row("3-CL", "coloring", "Coloring:[v0:c0, v1:c1, v2:c2, v3:c0, v4:c1]", graph=hstar)
    # a different valid coloring still counts
    ok, _ = judge(row, parse_answer("3-CL", "Ans: Coloring:[v0:c1, v1:c2, v2:c0, v3:c1, v4:c2]"))
    assert ok
    bad, flags = judge(row, parse_answer("3-CL", "Ans: Coloring:[v0:c0, v1:c0, v2:c0, v3:c0, v4:c0]"))
    assert not bad
    partial, flags = judge(row, parse_answer("3-CL", "Ans: Coloring:[v0:c0, v1:c1]"))
    assert not partial
    assert "partial_coloring" in flags


def test_judge_shc_flags_two_cycle(hstar):
    row = _row("SHC", "cycle", "Cycle:[e0, e2]", graph=hstar)
    ok, flags = judge(row, parse_answer("SHC", "Ans: Cycle:[e0, e2]"))
    assert ok
    assert "shc_k2" in flags
    bad, flags = judge(row, parse_answer("SHC", "Ans: Cycle:[e0, e9]"))
    assert not bad
    assert "invalid_ids" in flags


def test_judge_hhm(hstar):
    row = _row("HHM", "path", "Path:[e0, e0, e1, e2]", graph=hstar, params={"s": 0, "t": 4})
    assert judge(row, parse_answer("HHM", "Ans: Path:[e0, e0, e1, e2]"))[0]
    assert not judge(row, parse_answer("HHM", "Ans: Path:[e0, e1, e2]"))[0]


def test_grade_responses_rejects_unknown_ids():
    rows = [_row("VC", "count", 3)]
    with pytest.raises(ValueError):
        grade_responses(rows, [{"sample_id": "nope", "raw_text": "Ans: 3"}])


def test_grade_responses_round_trip(tmp_path):
    rows = [_row("VC", "count", 3)]
    resp_path = tmp_path / "r.jsonl"
    resp_path.write_text(json.dumps({"sample_id": rows[0]["sample_id"], "raw_text": "Ans: 3"}) + "\n")
    records = grade_responses(rows, read_responses(resp_path))
    assert len(records) == 1 and records[0].correct
    out = tmp_path / "g.jsonl"
    write_grades(records, out)
    logged = json.loads(out.read_text().strip())
    assert logged["correct"] is True


# -- aggregation -----------------------------------------------------------


def _combo_rows(meta_id, task="VC", value=3):
    rows = []
    for text_fmt, visual_fmt in ALL_COMBOS:
        rows.append(
            {
                "sample_id": f"{meta_id}__{text_fmt}__{visual_fmt}",
                "meta_id": meta_id,
                "task": task,
                "text_format": text_fmt,
                "visual_format": visual_fmt,
                "prompt": f"prompt({meta_id},{text_fmt})",
                "answer_spec": {"kind": "count", "value": value, "params": {}},
            }
        )
    return rows


def test_aggregate_marginals():
    rows = _combo_rows("VC-0000")
    records = []
    for row in rows:
        correct = row["text_format"] == "N-Set"
        records.append(GradeRecord(row["sample_id"], ParsedAnswer("count", 3), correct, ()))
    table = aggregate(records, rows)
    assert table.task_acc["VC"] == pytest.approx(5 / 35)
    assert table.text_acc["N-Set"] == 1.0
    assert table.text_acc["LO-Inc"] == 0.0
    assert table.visual_acc["Enc-Hy"] == pytest.approx(1 / 7)
    assert table.task_acc["OMF"] is None
    assert table.avg_u == pytest.approx(5 / 35)  # only VC graded among understanding tasks
    assert table.avg_r is None
    csv = table.to_csv()
    assert "task,VC,0.1429,35" in csv
    assert "task,OMF,,0" in csv
    assert "average,Avg.R,," in csv


def test_aggregate_order_invariant():
    rows = _combo_rows("VC-0000")
    records = [
        GradeRecord(r["sample_id"], ParsedAnswer("count", 3), i % 2 == 0, ())
        for i, r in enumerate(rows)
    ]
    a = aggregate(records, rows)
    b = aggregate(list(reversed(records)), rows)
    assert a.task_acc == b.task_acc
    assert a.text_acc == b.text_acc


# -- PRM -------------------------------------------------------------------


def _records_with_accuracy(rows, accuracy_by_combo, repeats=2):
    records = []
    for row in rows:
        combo = (row["text_format"], row["visual_format"])
        acc = accuracy_by_combo[combo]
        hits = round(acc * repeats)
        for r in range(repeats):
            records.append(
                GradeRecord(row["sample_id"], ParsedAnswer("count", 3), r < hits, ())
            )
    return records


def test_build_prm_unique_winner():
    rows = _combo_rows("VC-0000")
    acc = {combo: 0.5 for combo in ALL_COMBOS}
    acc[("N-Set", "Cli-Exp")] = 1.0
    pairs = build_prm(_records_with_accuracy(rows, acc), rows)
    assert len(pairs) == 1
    assert pairs[0].label_combo == "N-Set+Cli-Exp"
    assert pairs[0].meta_id == "VC-0000"
    assert pairs[0].input_text == "prompt(VC-0000,HO-Neigh)"
    assert not pairs[0].degenerate_tie


def test_build_prm_tie_keeps_all():
    rows = _combo_rows("VC-0000")
    acc = {combo: 0.0 for combo in ALL_COMBOS}
    acc[("N-Set", "Cli-Exp")] = 1.0
    acc[("Inc-Mat", "Bi-Inc")] = 1.0
    pairs = build_prm(_records_with_accuracy(rows, acc), rows)
    assert {p.label_combo for p in pairs} == {"N-Set+Cli-Exp", "Inc-Mat+Bi-Inc"}


def test_build_prm_degenerate_tie_flagged():
    rows = _combo_rows("VC-0000")
    acc = {combo: 0.0 for combo in ALL_COMBOS}
    pairs = build_prm(_records_with_accuracy(rows, acc), rows)
    assert len(pairs) == 35
    assert all(p.degenerate_tie for p in pairs)


def test_build_prm_skips_partial_coverage():
    rows = _combo_rows("VC-0000") + _combo_rows("VC-0001")
    acc = {combo: 1.0 for combo in ALL_COMBOS}
    records = _records_with_accuracy(rows[:35], acc)  # only the first meta
    records.append(GradeRecord(rows[35]["sample_id"], ParsedAnswer("count", 3), True, ()))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        pairs = build_prm(records, rows)
    assert {p.meta_id for p in pairs} == {"VC-0000"}
    assert any("VC-0001" in str(w.message) for w in caught)


def test_write_prm(tmp_path):
    rows = _combo_rows("VC-0000")
    acc = {combo: 0.5 for combo in ALL_COMBOS}
    acc[("Adj-Mat", "Sh-Inc")] = 1.0
    pairs = build_prm(_records_with_accuracy(rows, acc), rows)
    path = tmp_path / "prm.jsonl"
    write_prm(pairs, path)
    logged = [json.loads(line) for line in path.read_text().splitlines()]
    assert logged == [
        {
            "meta_id": "VC-0000",
            "input_text": "prompt(VC-0000,HO-Neigh)",
            "label_combo": "Adj-Mat+Sh-Inc",
        }
    ]


# -- canonical / corrupted -------------------------------------------------


def test_canonical_and_corrupted_self_consistency(tmp_path):
    emit_corpus(per_task=1, master_seed=21, outdir=tmp_path, write_images=False)
    rows = load_manifest(tmp_path / "manifest.jsonl")
    good = [{"sample_id": r["sample_id"], "raw_text": canonical_answer_text(r)} for r in rows]
    bad = [{"sample_id": r["sample_id"], "raw_text": corrupted_answer_text(r)} for r in rows]
    good_records = grade_responses(rows, good)
    bad_records = grade_responses(rows, bad)
    assert all(r.correct for r in good_records)
    assert not any(r.correct for r in bad_records)
    # canonical answers parse without leniency flags in strict mode too
    strict_records = grade_responses(rows, good, STRICT)
    assert all(r.correct for r in strict_records)


def test_corrupted_empty_set():
    row = _row("Ne", "vertex_set", [])
    assert corrupted_answer_text(row) == "Ans: {v0}"
    single = _row("Ne", "vertex_set", [2])
    assert not judge(single, parse_answer("Ne", corrupted_answer_text(single)))[0]


def test_corrupted_osp_none():
    row = _row("OSP", "path_weight", None)
    assert not judge(row, parse_answer("OSP", corrupted_answer_text(row)))[0]
