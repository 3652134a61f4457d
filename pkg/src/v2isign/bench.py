"""Timing and operation-count benchmarks over the protocol phases.

Each row of the emitted CSV covers one (mode, batch size) pair. Timing
columns are environment-dependent medians and percentiles over repeated
runs with fresh honest batches; the operation-count columns come from the
instrumented group layer and are exact, so they reproduce bit-for-bit
across machines.
"""

from __future__ import annotations

import csv
import hashlib
import io
import math
import random
import statistics
import time
from dataclasses import dataclass

from .group import OpCounter, count_ops
from .rsu import Rsu
from .sim import BASE_TIME, Scenario, run_scenario
from .system import setup_system
from .vehicle import enroll, signcrypt

MODES = ("signcrypt", "verify", "decrypt", "unsigncrypt", "counts", "scenario")

CSV_COLUMNS = (
    "mode",
    "n",
    "median_ms",
    "p10_ms",
    "p90_ms",
    "scalar_mults",
    "h1_calls",
    "h2_calls",
)


@dataclass(frozen=True)
class BenchConfig:
    mode: str
    n_values: tuple[int, ...] = (1, 10, 100)
    repetitions: int = 5
    seed: int = 0

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"unknown bench mode {self.mode!r}")
        if not self.n_values or any(n < 1 for n in self.n_values):
            raise ValueError("batch sizes must be positive")
        if self.repetitions < 1:
            raise ValueError("repetitions must be positive")


@dataclass(frozen=True)
class BenchRow:
    mode: str
    n: int
    median_ms: float
    p10_ms: float
    p90_ms: float
    scalar_mults: int
    h1_calls: int
    h2_calls: int


@dataclass
class _Fixture:
    params: object
    rsu: Rsu
    beacon: object
    fleet: list


def _child_seed(seed: int, label: str) -> int:
    digest = hashlib.sha256(f"{seed}:{label}".encode()).digest()
    return int.from_bytes(digest, "big")


def _build_fixture(n: int, rng: random.Random) -> _Fixture:
    params, kmc, tra = setup_system(rng)
    rsu = Rsu.register(params, b"RSU-bench", kmc, rng)
    beacon = rsu.make_broadcast(BASE_TIME, rng)
    fleet = []
    for _ in range(n):
        rid = rng.randbytes(params.id_len)
        fleet.append(enroll(params, rid, tra, kmc, BASE_TIME, BASE_TIME + 86_400, rng))
    return _Fixture(params=params, rsu=rsu, beacon=beacon, fleet=fleet)


def _fresh_batch(fx: _Fixture, stamp: int, rng: random.Random) -> list:
    params = fx.params
    return [
        signcrypt(params, vkm, fx.beacon, rng.randbytes(params.message_bytes), stamp, rng)
        for vkm in fx.fleet
    ]


def _prepare(phase: str, fx: _Fixture, iteration: int, rng: random.Random):
    """Build the untimed inputs for one iteration; return the timed body."""
    params = fx.params
    stamp = BASE_TIME + 1 + iteration
    nonce = fx.beacon.nonce

    if phase == "signcrypt":
        payloads = [rng.randbytes(params.message_bytes) for _ in fx.fleet]

        def run() -> OpCounter:
            with count_ops() as ops:
                for vkm, payload in zip(fx.fleet, payloads):
                    signcrypt(params, vkm, fx.beacon, payload, stamp, rng)
            return ops

        return run

    batch = _fresh_batch(fx, stamp, rng)

    if phase == "verify":

        def run() -> OpCounter:
            with count_ops() as ops:
                result = fx.rsu.batch_verify(nonce, batch, now=stamp, decrypt=False)
            if not result.accepted:
                raise RuntimeError("benchmark batch unexpectedly rejected")
            return ops

        return run

    if phase == "decrypt":

        def run() -> OpCounter:
            with count_ops() as ops:
                for msg in batch:
                    fx.rsu.decrypt_one(msg)
            return ops

        return run

    if phase == "unsigncrypt":

        def run() -> OpCounter:
            with count_ops() as ops:
                result = fx.rsu.batch_verify(nonce, batch, now=stamp, decrypt=True)
            if not result.accepted:
                raise RuntimeError("benchmark batch unexpectedly rejected")
            return ops

        return run

    raise ValueError(f"unknown phase {phase!r}")


def _measure_phase(phase: str, n: int, cfg: BenchConfig) -> tuple[list[float], OpCounter]:
    rng = random.Random(_child_seed(cfg.seed, f"{phase}-{n}"))

    if phase == "scenario":
        sc = Scenario(n_vehicles=n, reports_per_vehicle=2, seed=cfg.seed)
        times: list[float] = []
        ops = OpCounter()
        for iteration in range(cfg.repetitions + 1):
            t0 = time.perf_counter()
            report = run_scenario(sc)
            elapsed = (time.perf_counter() - t0) * 1000.0
            if iteration == 0:
                continue  # warmup
            times.append(elapsed)
            ops = OpCounter()
            ops.merge(report.verify_ops)
            ops.merge(report.decrypt_ops)
        return times, ops

    fx = _build_fixture(n, rng)
    times = []
    ops = OpCounter()
    for iteration in range(cfg.repetitions + 1):
        run = _prepare(phase, fx, iteration, rng)
        t0 = time.perf_counter()
        ops = run()
        elapsed = (time.perf_counter() - t0) * 1000.0
        if iteration > 0:
            times.append(elapsed)
    return times, ops


def _percentile(sorted_vals: list[float], pct: float) -> float:
    """Nearest-rank percentile over an ascending sample list."""
    if not sorted_vals:
        raise ValueError("no samples")
    rank = math.ceil(pct / 100.0 * len(sorted_vals))
    return sorted_vals[max(0, min(rank, len(sorted_vals)) - 1)]


def run_bench(cfg: BenchConfig) -> list[BenchRow]:
    phases = ("signcrypt", "verify", "decrypt") if cfg.mode == "counts" else (cfg.mode,)
    rows: list[BenchRow] = []
    for phase in phases:
        for n in cfg.n_values:
            times, ops = _measure_phase(phase, n, cfg)
            ordered = sorted(times)
            rows.append(
                BenchRow(
                    mode=phase,
                    n=n,
                    median_ms=round(statistics.median(ordered), 3),
                    p10_ms=round(_percentile(ordered, 10), 3),
                    p90_ms=round(_percentile(ordered, 90), 3),
                    scalar_mults=ops.scalar_mults,
                    h1_calls=ops.hashes_h1,
                    h2_calls=ops.hashes_h2,
                )
            )
    return rows


def render_csv(rows: list[BenchRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(
            [
                row.mode,
                row.n,
                f"{row.median_ms:.3f}",
                f"{row.p10_ms:.3f}",
                f"{row.p90_ms:.3f}",
                row.scalar_mults,
                row.h1_calls,
                row.h2_calls,
            ]
        )
    return buf.getvalue()


def write_csv(rows: list[BenchRow], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(render_csv(rows))
