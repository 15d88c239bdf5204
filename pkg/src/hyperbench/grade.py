"""Response parsing, judging, accuracy aggregation, and routing-label export.

Parsing finds the final "Ans:" marker (configurable to the first) and reads
the payload per task.  Lenient mode tolerates surrounding prose, missing
braces/keywords, bare numeric ids, and casing — every tolerance applied is
recorded as a flag on the grade record; strict mode rejects any response
that needed one.  NP-hard answers are judged by running the verifier on the
submitted certificate, so any valid certificate counts, not just the stored
one.
"""

from __future__ import annotations

import json
import re
import warnings
from dataclasses import dataclass, field

from .bench import ALL_COMBOS, REASONING_TASKS, TASKS, UNDERSTANDING_TASKS
from .core import from_json_dict
from .text_repr import TEXT_FORMATS
from .verify import format_coloring, verify_3cl, verify_hhm, verify_shc
from .visual_repr import VISUAL_FORMATS

TASK_TO_KIND = {
    "VC": "count", "HEC": "count", "DVC": "count", "OEC": "count",
    "Ne": "vertex_set", "ONe": "vertex_set",
    "OSP": "path_weight", "OMF": "flow",
    "ISM": "yes_no",
    "3-CL": "coloring", "SHC": "cycle", "HHM": "path",
}


@dataclass(frozen=True)
class GradeOptions:
    lenient: bool = True
    marker: str = "last"  # or "first"


DEFAULT_OPTIONS = GradeOptions()


@dataclass(frozen=True)
class ParsedAnswer:
    kind: str
    value: object
    flags: tuple[str, ...] = ()

    @property
    def failed(self) -> bool:
        return self.kind == "failure"


@dataclass(frozen=True)
class GradeRecord:
    sample_id: str
    parsed: ParsedAnswer
    correct: bool
    flags: tuple[str, ...] = ()


_MARKER_RE = re.compile(r"ans\s*:", re.IGNORECASE)


def _failure(*flags: str) -> ParsedAnswer:
    return ParsedAnswer("failure", None, ("parse_failure", *flags))


def _payload(raw_text: str, options: GradeOptions):
    markers = list(_MARKER_RE.finditer(raw_text))
    if markers:
        chosen = markers[-1] if options.marker == "last" else markers[0]
        return raw_text[chosen.end():], []
    if options.lenient:
        return raw_text, ["no_marker"]
    return None, ["no_marker"]


def _parse_count(payload: str, flags: list[str]) -> ParsedAnswer | None:
    m = re.search(r"-?\d+", payload)
    if not m:
        return None
    if payload.strip() != m.group(0):
        flags.append("prose")
    return ParsedAnswer("count", int(m.group(0)), tuple(flags))


def _parse_vertex_set(payload: str, flags: list[str]) -> ParsedAnswer | None:
    if re.search(r"no\s+n?-?\s*neighbors", payload, re.IGNORECASE):
        return ParsedAnswer("vertex_set", [], tuple(flags))
    brace = re.search(r"\{([^{}]*)\}", payload)
    if brace and not brace.group(1).strip():
        return ParsedAnswer("vertex_set", [], tuple(flags))
    region = brace.group(1) if brace else payload
    if not brace:
        flags.append("no_braces")
    ids = re.findall(r"v\s*(\d+)", region)
    if not ids:
        ids = re.findall(r"\d+", region)
        if ids:
            flags.append("bare_ids")
    if not ids:
        return None
    return ParsedAnswer("vertex_set", sorted({int(i) for i in ids}), tuple(flags))


def _parse_yes_no(payload: str, flags: list[str]) -> ParsedAnswer | None:
    m = re.search(r"\b(yes|no)\b", payload, re.IGNORECASE)
    if not m:
        return None
    stripped = payload.strip().strip("[].").strip().lower()
    if stripped not in ("yes", "no"):
        flags.append("prose")
    return ParsedAnswer("yes_no", m.group(1).lower() == "yes", tuple(flags))


def _cert_region(payload: str, keyword: str, flags: list[str]) -> str | None:
    m = re.search(rf"{keyword}\s*:?\s*\[([^\]]*)\]", payload, re.IGNORECASE)
    if m:
        return m.group(1)
    flags.append("missing_keyword")
    m = re.search(r"\[([^\]]*)\]", payload)
    if m:
        return m.group(1)
    flags.append("no_brackets")
    return payload


def _parse_coloring(payload: str, flags: list[str]) -> ParsedAnswer | None:
    region = _cert_region(payload, "coloring", flags)
    pairs = re.findall(r"v\s*(\d+)\s*[:=]\s*c?\s*([012])\b", region, re.IGNORECASE)
    if not pairs:
        return None
    value: dict[int, int] = {}
    for v, c in pairs:
        v = int(v)
        if v in value:
            flags.append("duplicate_assignment")
        value[v] = int(c)
    return ParsedAnswer("coloring", value, tuple(flags))


def _parse_edge_sequence(payload: str, kind: str, keyword: str, flags: list[str]) -> ParsedAnswer | None:
    region = _cert_region(payload, keyword, flags)
    ids = re.findall(r"e\s*(\d+)", region, re.IGNORECASE)
    if not ids:
        ids = re.findall(r"\d+", region)
        if ids:
            flags.append("bare_ids")
    if not ids:
        return None
    return ParsedAnswer(kind, [int(i) for i in ids], tuple(flags))


def parse_answer(task: str, raw_text: str, options: GradeOptions = DEFAULT_OPTIONS) -> ParsedAnswer:
    """Extract the typed answer for ``task`` from a model reply."""
    kind = TASK_TO_KIND.get(task)
    if kind is None:
        raise ValueError(f"unknown task {task!r}")
    payload, flags = _payload(raw_text, options)
    if payload is None:
        return _failure(*flags)
    if kind == "count" or kind == "flow":
        parsed = _parse_count(payload, flags)
        if parsed is not None and kind == "flow":
            parsed = ParsedAnswer("flow", parsed.value, parsed.flags)
    elif kind == "path_weight":
        if re.search(r"no\s+path", payload, re.IGNORECASE):
            parsed = ParsedAnswer("path_weight", None, tuple(flags))
        else:
            got = _parse_count(payload, flags)
            parsed = ParsedAnswer("path_weight", got.value, got.flags) if got else None
    elif kind == "vertex_set":
        parsed = _parse_vertex_set(payload, flags)
    elif kind == "yes_no":
        parsed = _parse_yes_no(payload, flags)
    elif kind == "coloring":
        parsed = _parse_coloring(payload, flags)
    elif kind == "cycle":
        parsed = _parse_edge_sequence(payload, "cycle", "cycle", flags)
    else:
        parsed = _parse_edge_sequence(payload, "path", "path", flags)
    if parsed is None:
        return _failure(*flags)
    if not options.lenient and parsed.flags:
        return _failure("strict_reject", *parsed.flags)
    return parsed


def judge(row: dict, parsed: ParsedAnswer) -> tuple[bool, tuple[str, ...]]:
    """Decide correctness of a parsed answer against a manifest row."""
    spec = row["answer_spec"]
    kind = spec["kind"]
    if parsed.failed:
        return False, parsed.flags
    if parsed.kind != kind:
        return False, parsed.flags + ("kind_mismatch",)
    extra: list[str] = []
    if kind in ("count", "flow"):
        ok = parsed.value == spec["value"]
    elif kind == "path_weight":
        ok = parsed.value == spec["value"]
    elif kind == "vertex_set":
        ok = sorted(parsed.value) == sorted(spec["value"])
    elif kind == "yes_no":
        ok = parsed.value == spec["value"]
    elif kind == "coloring":
        h = from_json_dict(spec["graph"])
        if set(parsed.value) != set(range(h.n)):
            return False, parsed.flags + ("partial_coloring",)
        vec = [parsed.value[v] for v in range(h.n)]
        ok = verify_3cl(h, vec)
    elif kind == "cycle":
        h = from_json_dict(spec["graph"])
        try:
            ok = verify_shc(h, parsed.value)
        except IndexError:
            return False, parsed.flags + ("invalid_ids",)
        if ok and len(parsed.value) == 2:
            extra.append("shc_k2")
    elif kind == "path":
        h = from_json_dict(spec["graph"])
        params = spec["params"]
        try:
            ok = verify_hhm(h, parsed.value, params["s"], params["t"])
        except IndexError:
            return False, parsed.flags + ("invalid_ids",)
    else:
        raise ValueError(f"unknown answer kind {kind!r}")
    return ok, parsed.flags + tuple(extra)


def index_manifest(manifest_rows) -> dict[str, dict]:
    return {row["sample_id"]: row for row in manifest_rows}


def grade_responses(
    manifest_rows,
    responses,
    options: GradeOptions = DEFAULT_OPTIONS,
) -> list[GradeRecord]:
    """Grade ``{"sample_id","raw_text"}`` responses against a manifest."""
    by_id = index_manifest(manifest_rows)
    unknown = [r["sample_id"] for r in responses if r["sample_id"] not in by_id]
    if unknown:
        raise ValueError(f"responses reference unknown sample ids: {unknown[:10]}")
    records = []
    for resp in responses:
        row = by_id[resp["sample_id"]]
        parsed = parse_answer(row["task"], resp["raw_text"], options)
        correct, flags = judge(row, parsed)
        records.append(GradeRecord(resp["sample_id"], parsed, correct, flags))
    return records


@dataclass
class AccuracyTable:
    """Per-task and per-representation-axis accuracies (absent cells = None)."""

    task_acc: dict = field(default_factory=dict)
    task_count: dict = field(default_factory=dict)
    text_acc: dict = field(default_factory=dict)
    text_count: dict = field(default_factory=dict)
    visual_acc: dict = field(default_factory=dict)
    visual_count: dict = field(default_factory=dict)
    avg_u: float | None = None
    avg_r: float | None = None

    def to_csv(self) -> str:
        def fmt(acc):
            return "" if acc is None else f"{acc:.4f}"

        lines = ["section,key,accuracy,count"]
        for task in TASKS:
            lines.append(f"task,{task},{fmt(self.task_acc[task])},{self.task_count[task]}")
        for t in TEXT_FORMATS:
            lines.append(f"text_format,{t},{fmt(self.text_acc[t])},{self.text_count[t]}")
        for v in VISUAL_FORMATS:
            lines.append(f"visual_format,{v},{fmt(self.visual_acc[v])},{self.visual_count[v]}")
        lines.append(f"average,Avg.U,{fmt(self.avg_u)},")
        lines.append(f"average,Avg.R,{fmt(self.avg_r)},")
        return "\n".join(lines) + "\n"


def _bucket_mean(pairs) -> tuple[float | None, int]:
    total = len(pairs)
    if total == 0:
        return None, 0
    return sum(pairs) / total, total


def aggregate(records, manifest_rows) -> AccuracyTable:
    """Accuracy per task and per representation axis, plus Avg.U / Avg.R.

    Each axis marginalizes over the other (a text format's cell averages all
    its graded samples across the five visual formats, and vice versa).
    """
    by_id = index_manifest(manifest_rows)
    unknown = [r.sample_id for r in records if r.sample_id not in by_id]
    if unknown:
        raise ValueError(f"records reference unknown sample ids: {unknown[:10]}")
    task_hits: dict[str, list[int]] = {t: [] for t in TASKS}
    text_hits: dict[str, list[int]] = {t: [] for t in TEXT_FORMATS}
    visual_hits: dict[str, list[int]] = {v: [] for v in VISUAL_FORMATS}
    for rec in records:
        row = by_id[rec.sample_id]
        hit = 1 if rec.correct else 0
        task_hits[row["task"]].append(hit)
        text_hits[row["text_format"]].append(hit)
        visual_hits[row["visual_format"]].append(hit)
    table = AccuracyTable()
    for task in TASKS:
        table.task_acc[task], table.task_count[task] = _bucket_mean(task_hits[task])
    for t in TEXT_FORMATS:
        table.text_acc[t], table.text_count[t] = _bucket_mean(text_hits[t])
    for v in VISUAL_FORMATS:
        table.visual_acc[v], table.visual_count[v] = _bucket_mean(visual_hits[v])
    present_u = [table.task_acc[t] for t in UNDERSTANDING_TASKS if table.task_acc[t] is not None]
    present_r = [table.task_acc[t] for t in REASONING_TASKS if table.task_acc[t] is not None]
    table.avg_u = sum(present_u) / len(present_u) if present_u else None
    table.avg_r = sum(present_r) / len(present_r) if present_r else None
    return table


@dataclass(frozen=True)
class PRMPair:
    """One routing-label row: this meta is best served by this combo."""

    meta_id: str
    text_format: str
    visual_format: str
    input_text: str
    degenerate_tie: bool = False

    @property
    def label_combo(self) -> str:
        return f"{self.text_format}+{self.visual_format}"


def build_prm(records, manifest_rows) -> list[PRMPair]:
    """Per meta, the combo(s) with the highest mean accuracy (ties all kept).

    Metas lacking graded records for any of the 35 combos are skipped with a
    warning.  The router input is the HO-Neigh prompt (rendering + question).
    """
    by_id = index_manifest(manifest_rows)
    unknown = [r.sample_id for r in records if r.sample_id not in by_id]
    if unknown:
        raise ValueError(f"records reference unknown sample ids: {unknown[:10]}")
    meta_order: list[str] = []
    combo_hits: dict[str, dict[tuple[str, str], list[int]]] = {}
    prompts: dict[str, str] = {}
    for row in manifest_rows:
        meta_id = row["meta_id"]
        if meta_id not in combo_hits:
            combo_hits[meta_id] = {}
            meta_order.append(meta_id)
        if row["text_format"] == "HO-Neigh" and meta_id not in prompts:
            prompts[meta_id] = row["prompt"]
    for rec in records:
        row = by_id[rec.sample_id]
        combo = (row["text_format"], row["visual_format"])
        combo_hits[row["meta_id"]].setdefault(combo, []).append(1 if rec.correct else 0)
    pairs: list[PRMPair] = []
    for meta_id in meta_order:
        hits = combo_hits[meta_id]
        missing = [c for c in ALL_COMBOS if not hits.get(c)]
        if missing:
            if hits:
                warnings.warn(
                    f"meta {meta_id}: {len(missing)} combos ungraded; skipped", stacklevel=2
                )
            continue
        means = {combo: sum(h) / len(h) for combo, h in hits.items()}
        best = max(means.values())
        winners = [combo for combo in ALL_COMBOS if means[combo] == best]
        degenerate = len(winners) == len(ALL_COMBOS)
        for text_fmt, visual_fmt in winners:
            pairs.append(PRMPair(meta_id, text_fmt, visual_fmt, prompts[meta_id], degenerate))
    return pairs


# ---------------------------------------------------------------------------
# reference answers (used by the self-consistency and corruption suites)
# ---------------------------------------------------------------------------


def canonical_answer_text(row: dict) -> str:
    """Render a manifest row's ground truth as a canonical model reply."""
    spec = row["answer_spec"]
    kind, value = spec["kind"], spec["value"]
    if kind == "count" or kind == "flow":
        return f"Ans: {value}"
    if kind == "path_weight":
        return "Ans: No path" if value is None else f"Ans: {value}"
    if kind == "vertex_set":
        if not value:
            return "Ans: No n-neighbors" if row["task"] == "ONe" else "Ans: No neighbors"
        return "Ans: {" + ",".join(f"v{v}" for v in value) + "}"
    if kind == "yes_no":
        return "Ans: Yes" if value else "Ans: No"
    if kind in ("coloring", "cycle", "path"):
        return f"Ans: {value}"
    raise ValueError(f"unknown answer kind {kind!r}")


def corrupted_answer_text(row: dict) -> str:
    """A reply one mutation away from the truth that must grade incorrect:
    off-by-one counts, one-vertex-wrong sets, flipped booleans, and a
    verifier-violating edit for certificates."""
    spec = row["answer_spec"]
    kind, value = spec["kind"], spec["value"]
    if kind in ("count", "flow"):
        return f"Ans: {value + 1}"
    if kind == "path_weight":
        return "Ans: 5" if value is None else f"Ans: {value + 1}"
    if kind == "vertex_set":
        if not value:
            return "Ans: {v0}"
        return "Ans: {" + ",".join(f"v{v}" for v in value[1:]) + "}" if len(value) > 1 else "Ans: No neighbors"
    if kind == "yes_no":
        return "Ans: No" if value else "Ans: Yes"
    if kind == "coloring":
        h = from_json_dict(spec["graph"])
        pairs = re.findall(r"v(\d+):c([012])", value)
        vec = [0] * h.n
        for v, c in pairs:
            vec[int(v)] = int(c)
        for v in range(h.n):
            original = vec[v]
            for c in range(3):
                if c == original:
                    continue
                vec[v] = c
                if not verify_3cl(h, vec):
                    return f"Ans: {format_coloring(vec)}"
            vec[v] = original
        # every single recoloring stays valid; collapse to monochrome
        return f"Ans: {format_coloring([0] * h.n)}"
    if kind == "cycle":
        ids = [int(i) for i in re.findall(r"e(\d+)", value)]
        ids[0] = ids[1]  # duplicate id violates strictness
        return "Ans: Cycle:[" + ", ".join(f"e{j}" for j in ids) + "]"
    if kind == "path":
        ids = [int(i) for i in re.findall(r"e(\d+)", value)]
        ids = ids[:-1]  # one step short of covering every vertex
        return "Ans: Path:[" + ", ".join(f"e{j}" for j in ids) + "]"
    raise ValueError(f"unknown answer kind {kind!r}")


# ---------------------------------------------------------------------------
# file I/O
# ---------------------------------------------------------------------------


def read_responses(path) -> list[dict]:
    rows = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                rows.append(json.loads(line))
    return rows


def write_grades(records, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(
                json.dumps(
                    {
                        "sample_id": rec.sample_id,
                        "correct": rec.correct,
                        "flags": list(rec.flags),
                        "parsed_kind": rec.parsed.kind,
                        "parsed_value": _jsonable(rec.parsed.value),
                    },
                    sort_keys=True,
                )
            )
            fh.write("\n")


def write_prm(pairs, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for pair in pairs:
            fh.write(
                json.dumps(
                    {
                        "meta_id": pair.meta_id,
                        "input_text": pair.input_text,
                        "label_combo": pair.label_combo,
                    },
                    sort_keys=True,
                )
            )
            fh.write("\n")


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): v for k, v in value.items()}
    return value
