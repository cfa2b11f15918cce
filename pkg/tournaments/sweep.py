"""Exhaustive conjecture sweeps over every negative connector set of a range of half-orders.

Instances are split into shards of consecutive connector bitmasks. Each shard
is checked by a worker process that writes JSON lines to its own temp file;
the coordinator then merges all shards sorted by (p, bitmask), so the output
does not depend on the worker count.
"""

import csv
import logging
import sys
import tempfile
import time
from multiprocessing import Pool
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator
from tqdm import tqdm

from tournaments.digraph import MAX_VERTICES, ConnectorSet, build_cyclic
from tournaments.distinguishing import CheckMode, check_conjecture
from tournaments.errors import SizeLimitError, TournamentError
from utils.config import get_settings

logger = logging.getLogger(__name__)

# Shards per worker; more shards smooth out uneven instance costs.
SHARDS_PER_WORKER = 4


class SweepConfig(BaseModel):
    """What to sweep and where to write it."""

    p_min: int = Field(ge=1)
    p_max: int = Field(ge=1)
    mode: CheckMode = CheckMode.CERTIFIED
    dedup_converse: bool = False
    workers: int = Field(default=1, ge=1)
    output_path: Path
    summary_path: Optional[Path] = None
    force: bool = False
    record_timings: bool = True
    quiet: bool = False

    @model_validator(mode="after")
    def _check_range(self):
        if self.p_min > self.p_max:
            raise TournamentError(f"p_min={self.p_min} is larger than p_max={self.p_max}")
        if 2 * self.p_max + 1 > MAX_VERTICES:
            raise TournamentError(f"p_max={self.p_max} gives more than {MAX_VERTICES} vertices")
        return self


class SweepRecord(BaseModel):
    """One checked instance, serialised as a single JSON line."""

    model_config = ConfigDict(frozen=True)

    p: int
    neg: List[int]
    holds: bool
    method: str
    aut_order: int
    ms: int
    witness: Optional[str] = None

    @property
    def sort_key(self) -> Tuple[int, int]:
        return self.p, ConnectorSet.of(self.p, self.neg).mask

    def to_line(self) -> str:
        return self.model_dump_json(exclude_none=True)


class SweepReport(BaseModel):
    total: int
    by_method: Dict[str, int]
    failures: List[SweepRecord]
    wall_seconds: float
    output_path: str

    @property
    def all_hold(self) -> bool:
        return not self.failures


def enumerate_connector_sets(p: int, dedup_converse: bool = False) -> Iterator[ConnectorSet]:
    """All subsets of {1..p} in bitmask order.

    With ``dedup_converse`` only the smaller of each mask and its complement is
    kept; T(2p+1;S-) and T(2p+1;complement) are converses of each other.
    """
    if p < 1:
        raise TournamentError(f"Half-order p must be at least 1, got {p}")
    full = (1 << p) - 1
    for mask in range(1 << p):
        if dedup_converse and mask > full ^ mask:
            continue
        yield ConnectorSet.from_mask(p, mask)


def check_instance(p: int, mask: int, mode: CheckMode, record_timings: bool = True) -> SweepRecord:
    """Check one T(2p+1;S-) and package the result as a record."""
    neg = ConnectorSet.from_mask(p, mask)
    started = time.perf_counter()
    result = check_conjecture(build_cyclic(p, neg), mode)
    elapsed_ms = round((time.perf_counter() - started) * 1000) if record_timings else 0
    return SweepRecord(
        p=p,
        neg=list(neg.members),
        holds=result.holds,
        method=result.method,
        aut_order=result.group_order or 0,
        ms=elapsed_ms,
        witness=str(result.witness) if result.witness is not None else None,
    )


def _run_shard(job: Tuple[int, Tuple[int, ...], str, bool, str]) -> Tuple[str, int]:
    """Worker entry point: check every mask of one shard and write its records."""
    p, masks, mode, record_timings, shard_path = job
    with open(shard_path, "w", encoding="utf-8") as fh:
        for mask in masks:
            fh.write(check_instance(p, mask, CheckMode(mode), record_timings).to_line() + "\n")
    return shard_path, len(masks)


def _plan_shards(cfg: SweepConfig, tmp_dir: Path) -> List[Tuple[int, Tuple[int, ...], str, bool, str]]:
    jobs = []
    for p in range(cfg.p_min, cfg.p_max + 1):
        masks = [cs.mask for cs in enumerate_connector_sets(p, cfg.dedup_converse)]
        size = max(1, len(masks) // (cfg.workers * SHARDS_PER_WORKER))
        for start in range(0, len(masks), size):
            shard_path = tmp_dir / f"shard-{p:02d}-{start:08d}.jsonl"
            jobs.append((p, tuple(masks[start : start + size]), cfg.mode.value, cfg.record_timings, str(shard_path)))
    return jobs


def _merge_shards(shard_paths: List[str], output_path: Path) -> List[SweepRecord]:
    records = []
    for path in shard_paths:
        with open(path, encoding="utf-8") as fh:
            records += [SweepRecord.model_validate_json(line) for line in fh if line.strip()]
    records.sort(key=lambda r: r.sort_key)

    output_path.parent.mkdir(parents=True, exist_ok=True)
    with open(output_path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(record.to_line() + "\n")
    logger.info(f"Merged {len(shard_paths)} shards into {output_path} ({len(records)} records)")
    return records


def write_summary(records: List[SweepRecord], summary_path: Path) -> None:
    """CSV of (p, method, count), derived from the merged records."""
    counts: Dict[Tuple[int, str], int] = {}
    for record in records:
        counts[(record.p, record.method)] = counts.get((record.p, record.method), 0) + 1
    summary_path.parent.mkdir(parents=True, exist_ok=True)
    with open(summary_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["p", "method", "count"])
        for (p, method), count in sorted(counts.items()):
            writer.writerow([p, method, count])


def sweep(cfg: SweepConfig) -> SweepReport:
    """Check every instance in the configured range and persist one record per instance."""
    limit = get_settings().sweep_p_max
    if cfg.p_max > limit and not cfg.force:
        raise SizeLimitError(f"p_max={cfg.p_max} is above the sweep limit of {limit}; pass force to override")

    started = time.perf_counter()
    with tempfile.TemporaryDirectory(prefix="sweep-") as tmp:
        jobs = _plan_shards(cfg, Path(tmp))
        total = sum(len(job[1]) for job in jobs)
        logger.info(f"Sweeping p={cfg.p_min}..{cfg.p_max}: {total} instances in {len(jobs)} shards, {cfg.workers} workers")

        progress = tqdm(total=total, unit="inst", disable=cfg.quiet or not sys.stderr.isatty())
        shard_paths = []
        if cfg.workers == 1:
            for job in jobs:
                path, count = _run_shard(job)
                shard_paths.append(path)
                progress.update(count)
        else:
            with Pool(processes=cfg.workers) as pool:
                for path, count in pool.imap_unordered(_run_shard, jobs):
                    shard_paths.append(path)
                    progress.update(count)
        progress.close()

        records = _merge_shards(shard_paths, cfg.output_path)

    if cfg.summary_path is not None:
        write_summary(records, cfg.summary_path)

    by_method: Dict[str, int] = {}
    for record in records:
        by_method[record.method] = by_method.get(record.method, 0) + 1
    failures = [r for r in records if not r.holds]
    for record in failures:
        logger.error(f"Counterexample: p={record.p} neg={record.neg} witness={record.witness}")

    report = SweepReport(
        total=len(records),
        by_method=dict(sorted(by_method.items())),
        failures=failures,
        wall_seconds=round(time.perf_counter() - started, 3),
        output_path=str(cfg.output_path),
    )
    logger.info(f"Sweep finished: {report.total} instances, {len(failures)} failures in {report.wall_seconds}s")
    return report
