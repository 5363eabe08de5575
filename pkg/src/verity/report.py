"""Corpus ingestion, per-category tallying, and report rendering.

A corpus is a UTF-8 stream with one JSON object per line: string fields
``id``, ``input``, ``output``, and optionally ``gold`` (a verdict name used
for agreement scoring).  Malformed lines are collected, not fatal; corpus
evaluation has to degrade gracefully on noisy annotation.

The pipeline operates on MR pairs only.  A front end that turns raw
generated text into an output MR (for example an NLI-based extractor) can
feed the same record shape; nothing here would change.

Tallying is order independent and merge homomorphic: tallying a
concatenation equals merging the tallies of the parts.  That equation is
what licenses the optional parallel tally.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from functools import reduce
from typing import Iterable, Mapping, Optional, Sequence

from .entail import DEFAULT_ASSIGNMENT_LIMIT, ResourceLimit
from .mr import Formula, MrError, Schema, SourceError, parse_formula
from .taxonomy import Verdict, classify

REPORT_FORMATS = ("json", "csv", "text")


class UnknownFormat(MrError):
    """The requested report format does not exist."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        super().__init__(
            f"unknown report format {fmt!r}, expected one of: "
            + ", ".join(REPORT_FORMATS)
        )


@dataclass(frozen=True)
class LineError:
    """A corpus line that could not be turned into a record."""

    line_no: int
    message: str


@dataclass(frozen=True)
class CorpusRecord:
    """One (input, output) pair, with its provenance line number."""

    id: str
    input: Formula
    output: Formula
    source_line: int
    gold: Optional[Verdict] = None


@dataclass(frozen=True)
class CategoryCounts:
    """Per-verdict counts plus the bookkeeping buckets around them.

    ``total`` covers classified records only; parse failures and records
    that hit the resource limit are separate buckets.  Gold counts cover
    classified records that carried a gold verdict.
    """

    counts: Mapping[Verdict, int]
    parse_failures: int = 0
    resource_limited: int = 0
    gold_matches: int = 0
    gold_total: int = 0

    def __post_init__(self) -> None:
        full = {v: 0 for v in Verdict}
        for verdict, n in self.counts.items():
            if not isinstance(verdict, Verdict):
                raise TypeError(f"not a verdict: {verdict!r}")
            if n < 0:
                raise ValueError(f"negative count for {verdict.value}")
            full[verdict] = n
        object.__setattr__(self, "counts", full)
        for name in ("parse_failures", "resource_limited", "gold_matches", "gold_total"):
            if getattr(self, name) < 0:
                raise ValueError(f"negative {name}")
        if self.gold_matches > self.gold_total:
            raise ValueError("gold_matches exceeds gold_total")

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def merge(self, other: "CategoryCounts") -> "CategoryCounts":
        return CategoryCounts(
            {v: self.counts[v] + other.counts[v] for v in Verdict},
            self.parse_failures + other.parse_failures,
            self.resource_limited + other.resource_limited,
            self.gold_matches + other.gold_matches,
            self.gold_total + other.gold_total,
        )

    @classmethod
    def empty(cls) -> "CategoryCounts":
        return cls({})


# ---------------------------------------------------------------------------
# Ingestion


def ingest_corpus(
    stream: Iterable[str], schema: Schema
) -> tuple[list[CorpusRecord], list[LineError]]:
    """Read records line by line, isolating bad lines as LineErrors.

    Blank lines are skipped.  Duplicate ids are errors; the first record
    with an id wins.
    """
    records: list[CorpusRecord] = []
    errors: list[LineError] = []
    seen: set[str] = set()
    for line_no, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            doc = json.loads(line)
        except json.JSONDecodeError as exc:
            errors.append(LineError(line_no, f"not valid JSON: {exc}"))
            continue
        try:
            record = _parse_record(doc, schema, line_no)
            if record.id in seen:
                raise ValueError(f"duplicate id {record.id!r}")
        except ValueError as exc:
            errors.append(LineError(line_no, str(exc)))
            continue
        seen.add(record.id)
        records.append(record)
    return records, errors


def _parse_record(doc: object, schema: Schema, line_no: int) -> CorpusRecord:
    if not isinstance(doc, dict):
        raise ValueError("expected a JSON object")

    def text_field(name: str) -> str:
        if name not in doc:
            raise ValueError(f"missing field {name!r}")
        value = doc[name]
        if not isinstance(value, str):
            raise ValueError(f"field {name!r} must be a string")
        return value

    def formula_field(name: str) -> Formula:
        try:
            return parse_formula(text_field(name), schema)
        except SourceError as exc:
            raise ValueError(f"field {name!r}: {exc}") from exc

    record_id = text_field("id")
    input_mr = formula_field("input")
    output_mr = formula_field("output")
    gold = None
    if "gold" in doc:
        gold_name = text_field("gold")
        try:
            gold = Verdict(gold_name)
        except ValueError:
            raise ValueError(f"unknown verdict name {gold_name!r}") from None
    return CorpusRecord(record_id, input_mr, output_mr, line_no, gold)


# ---------------------------------------------------------------------------
# Tallying


def tally(
    schema: Schema,
    records: Sequence[CorpusRecord],
    *,
    parse_failures: int = 0,
    limit: int = DEFAULT_ASSIGNMENT_LIMIT,
    jobs: Optional[int] = None,
) -> CategoryCounts:
    """Classify every record and count verdicts per category.

    A record that exceeds the assignment limit lands in the
    resource_limited bucket instead of aborting the run.  ``jobs`` > 1
    splits the records across threads and merges the partial counts; the
    result is identical either way.
    """
    if jobs is not None and jobs > 1 and len(records) > 1:
        chunks = [records[i::jobs] for i in range(jobs)]
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(lambda chunk: _tally_chunk(schema, chunk, limit), chunks)
            merged = reduce(CategoryCounts.merge, parts)
    else:
        merged = _tally_chunk(schema, records, limit)
    return replace(merged, parse_failures=parse_failures)


def _tally_chunk(
    schema: Schema, records: Sequence[CorpusRecord], limit: int
) -> CategoryCounts:
    counts = {v: 0 for v in Verdict}
    resource_limited = 0
    gold_matches = gold_total = 0
    for record in records:
        try:
            verdict = classify(schema, record.input, record.output, limit=limit)
        except ResourceLimit:
            resource_limited += 1
            continue
        counts[verdict] += 1
        if record.gold is not None:
            gold_total += 1
            if verdict is record.gold:
                gold_matches += 1
    return CategoryCounts(counts, 0, resource_limited, gold_matches, gold_total)


# ---------------------------------------------------------------------------
# Rendering


def render_report(counts: CategoryCounts, fmt: str) -> str:
    """Render counts in the named format, byte stable for equal inputs."""
    if fmt == "json":
        return _render_json(counts)
    if fmt == "csv":
        return _render_csv(counts)
    if fmt == "text":
        return _render_text(counts)
    raise UnknownFormat(fmt)


def _freq(count: int, total: int) -> str:
    return f"{count / total:.4f}" if total else "0.0000"


def _render_json(c: CategoryCounts) -> str:
    doc = {
        "categories": {
            v.value: {"count": c.counts[v], "frequency": _freq(c.counts[v], c.total)}
            for v in Verdict
        },
        "total": c.total,
        "parse_failures": c.parse_failures,
        "resource_limited": c.resource_limited,
        "gold_matches": c.gold_matches,
        "gold_total": c.gold_total,
    }
    return json.dumps(doc, indent=2) + "\n"


def _render_csv(c: CategoryCounts) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["category", "count", "frequency"])
    for v in Verdict:
        writer.writerow([v.value, c.counts[v], _freq(c.counts[v], c.total)])
    if c.parse_failures:
        writer.writerow(["parse-failures", c.parse_failures, ""])
    if c.resource_limited:
        writer.writerow(["resource-limited", c.resource_limited, ""])
    if c.gold_total:
        writer.writerow(["gold-matches", c.gold_matches, ""])
        writer.writerow(["gold-total", c.gold_total, ""])
    writer.writerow(["total", c.total, ""])
    return out.getvalue()


def _render_text(c: CategoryCounts) -> str:
    rows = [(v.value, str(c.counts[v]), _freq(c.counts[v], c.total)) for v in Verdict]
    name_w = max(len("category"), len("total"), *(len(r[0]) for r in rows))
    count_w = max(len("count"), len(str(c.total)), *(len(r[1]) for r in rows))
    freq_w = max(len("frequency"), *(len(r[2]) for r in rows))
    lines = [f"{'category':<{name_w}}  {'count':>{count_w}}  {'frequency':>{freq_w}}"]
    for name, count, freq in rows:
        lines.append(f"{name:<{name_w}}  {count:>{count_w}}  {freq:>{freq_w}}")
    lines.append(f"{'total':<{name_w}}  {str(c.total):>{count_w}}")
    if c.parse_failures:
        lines.append(f"parse failures: {c.parse_failures}")
    if c.resource_limited:
        lines.append(f"resource limited: {c.resource_limited}")
    if c.gold_total:
        lines.append(f"gold matches: {c.gold_matches}/{c.gold_total}")
    return "\n".join(lines) + "\n"
