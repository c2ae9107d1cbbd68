"""Per-sample first Betti numbers for generated batches, written as CSV/JSON.

Output files in an experiment directory:

* ``records.csv``: ``sample_index,order,size,betti1,wall_time_ms,provenance_id,status``;
  ``status`` is ``ok`` or ``capacity`` (then ``betti1`` is empty and the sample
  is left out of the summary).
* ``histogram.csv``: ``betti1,count``.
* ``scatter.csv``: ``order,size,count`` (orders versus sizes).
* ``summary.json``: config echo, counts, ``zero_betti_fraction`` as an exact
  ``"num/den"`` string plus its float value, and the histogram.
* ``graphs.g6`` and ``provenance.json``: the batch itself.
"""

from __future__ import annotations

import csv
import json
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .complex import betti_numbers, neighborhood_complex
from .generators import SampleBatch, gnp
from .graph import CapacityError, Graph

RECORD_FIELDS = ["sample_index", "order", "size", "betti1", "wall_time_ms", "provenance_id", "status"]


@dataclass
class ExperimentRecord:
    sample_index: int
    order: int
    size: int
    betti1: int | None
    wall_time_ms: float
    provenance_id: str
    status: str = "ok"

    def row(self) -> dict:
        return {"sample_index": self.sample_index, "order": self.order, "size": self.size,
                "betti1": "" if self.betti1 is None else self.betti1,
                "wall_time_ms": f"{self.wall_time_ms:.3f}", "provenance_id": self.provenance_id,
                "status": self.status}


@dataclass
class ExperimentSummary:
    config: dict
    count: int
    zero_betti_fraction: Fraction
    histogram: dict[int, int]
    scatter: dict[tuple[int, int], int]
    skipped: int = 0
    extra: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        f = self.zero_betti_fraction
        return {"config": self.config, "count": self.count, "skipped": self.skipped,
                "zero_betti_count": self.histogram.get(0, 0),
                "zero_betti_fraction": f"{f.numerator}/{f.denominator}",
                "zero_betti_fraction_float": float(f),
                "histogram": {str(b): c for b, c in sorted(self.histogram.items())},
                **self.extra}


def worker_count() -> int:
    env = os.environ.get("HAJOSLAB_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _betti1_timed(args) -> tuple[int | None, float, str]:
    g, field_ = args
    t0 = time.perf_counter()
    try:
        b = betti_numbers(neighborhood_complex(g), 1, field_)[1]
        status = "ok"
    except CapacityError:
        b, status = None, "capacity"
    return b, (time.perf_counter() - t0) * 1000, status


def betti1_batch(graphs: list[Graph], field: str = "gf2", workers: int | None = None):
    """``(betti1, ms, status)`` per graph, in input order."""
    workers = worker_count() if workers is None else workers
    jobs = [(g, field) for g in graphs]
    if workers <= 1 or len(jobs) < 2:
        return [_betti1_timed(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(_betti1_timed, jobs, chunksize=8))


def make_records(graphs: list[Graph], ids: list[str], field: str = "gf2",
                 workers: int | None = None) -> list[ExperimentRecord]:
    out = betti1_batch(graphs, field, workers)
    return [ExperimentRecord(i, g.order, g.size, b, ms, pid, status)
            for i, (g, pid, (b, ms, status)) in enumerate(zip(graphs, ids, out))]


def summarize(records: list[ExperimentRecord], config: dict) -> ExperimentSummary:
    ok = [r for r in records if r.status == "ok"]
    hist = Counter(r.betti1 for r in ok)
    scatter = Counter((r.order, r.size) for r in ok)
    frac = Fraction(hist.get(0, 0), len(ok)) if ok else Fraction(0)
    return ExperimentSummary(config, len(ok), frac, dict(hist), dict(scatter), len(records) - len(ok))


def write_outputs(out_dir, records: list[ExperimentRecord], summary: ExperimentSummary,
                  batch: SampleBatch | None = None) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "records.csv", "w", newline="") as fh:
        w = csv.DictWriter(fh, RECORD_FIELDS)
        w.writeheader()
        w.writerows(r.row() for r in records)
    with open(out / "histogram.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["betti1", "count"])
        w.writerows(sorted(summary.histogram.items()))
    with open(out / "scatter.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["order", "size", "count"])
        w.writerows((o, s, c) for (o, s), c in sorted(summary.scatter.items()))
    with open(out / "summary.json", "w") as fh:
        json.dump(summary.to_json_dict(), fh, indent=1)
    if batch is not None:
        batch.write(out / "graphs.g6", out / "provenance.json")
    return out


def read_records(path) -> list[ExperimentRecord]:
    with open(path, newline="") as fh:
        return [ExperimentRecord(int(r["sample_index"]), int(r["order"]), int(r["size"]),
                                 int(r["betti1"]) if r["betti1"] != "" else None,
                                 float(r["wall_time_ms"]), r["provenance_id"], r["status"])
                for r in csv.DictReader(fh)]


def batch_ids(batch: SampleBatch) -> list[str]:
    if batch.kind == "cra":
        return [f"cra:round={p['round']}" for p in batch.provenance]
    return [f"ura:attempt={p['attempt']}" for p in batch.provenance]


def run_batch(batch: SampleBatch, field: str = "gf2", out_dir=None,
              workers: int | None = None) -> tuple[list[ExperimentRecord], ExperimentSummary]:
    records = make_records(batch.graphs, batch_ids(batch), field, workers)
    summary = summarize(records, {"kind": batch.kind, "field": field, **batch.config})
    summary.extra.update(rounds=batch.rounds, duplicates=batch.duplicates, discarded=batch.discarded)
    if out_dir is not None:
        write_outputs(out_dir, records, summary, batch)
    return records, summary


def run_gnp(n: int, p: float, samples: int, seed: int, field: str = "gf2", out_dir=None,
            workers: int | None = None) -> tuple[list[ExperimentRecord], ExperimentSummary]:
    graphs = [gnp(n, p, seed, i) for i in range(samples)]
    records = make_records(graphs, [f"gnp:index={i}" for i in range(samples)], field, workers)
    summary = summarize(records, {"kind": "gnp", "n": n, "p": p, "samples": samples, "seed": seed,
                                  "field": field})
    if out_dir is not None:
        write_outputs(out_dir, records, summary)
    return records, summary
