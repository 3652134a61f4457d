"""Concurrent roadside scenario: many sender threads, one verifying RSU.

Producer threads signcrypt reports and push wire bytes onto a shared
queue; the main thread drains it into batches (size- or window-triggered)
and runs batch verification, falling back to bisection when a batch
rejects. An optional adversary corrupts ciphertext bits in transit or
re-injects old wire bytes.

Reports are reproducible: every vehicle draws from its own seed derived
from the scenario seed, timestamps come from a fixed logical clock, and
the report's comparable fields are all order-independent totals and sets.
Wall-clock timings and batch boundaries depend on scheduling, so those
fields are excluded from report equality.
"""

from __future__ import annotations

import hashlib
import queue
import random
import threading
import time
from dataclasses import dataclass, field

from .errors import ParseError, ProtocolError
from .group import OpCounter, count_ops
from .rsu import Rsu
from .system import setup_system
from .vehicle import (
    DEFAULT_FRESHNESS_WINDOW,
    SigncryptedMessage,
    enroll,
    signcrypt,
)

BASE_TIME = 1_700_000_000  # fixed logical clock keeps runs reproducible

_ADVERSARIES = ("none", "tamper", "replay")

# exclusion reasons that mean "same pseudonym and timestamp seen before"
_REPLAY_REASONS = ("replayed message", "duplicate within batch")


@dataclass(frozen=True)
class Scenario:
    n_vehicles: int
    reports_per_vehicle: int = 1
    batch_window: float = 0.05
    max_batch_size: int = 100
    adversary: str = "none"
    adversary_rate: float = 0.0
    seed: int = 0
    n_workers: int | None = None
    curve_id: str = "p256"

    def __post_init__(self) -> None:
        if self.n_vehicles < 1 or self.reports_per_vehicle < 1:
            raise ValueError("vehicle and report counts must be positive")
        if self.batch_window <= 0:
            raise ValueError("batch window must be positive")
        if self.max_batch_size < 1:
            raise ValueError("max batch size must be positive")
        if self.adversary not in _ADVERSARIES:
            raise ValueError(f"unknown adversary {self.adversary!r}")
        if not 0.0 <= self.adversary_rate <= 1.0:
            raise ValueError("adversary rate must be in [0, 1]")
        if self.adversary == "none" and self.adversary_rate > 0:
            raise ValueError("adversary rate set but adversary is 'none'")
        if self.n_workers is not None and self.n_workers < 1:
            raise ValueError("worker count must be positive")


@dataclass(frozen=True)
class _Truth:
    """Producer-side record of what was actually put on the wire."""

    vehicle: int
    seq: int
    payload: bytes
    tampered: bool
    replayed: bool

    @property
    def ident(self) -> tuple[int, int]:
        return (self.vehicle, self.seq)


@dataclass
class SimReport:
    """Aggregated outcome of one scenario run.

    Equality covers only the scheduling-independent fields; timings,
    batch counts, and operation tallies vary with thread interleaving
    and are informational.
    """

    scenario: Scenario
    messages_sent: int = 0
    messages_accepted: int = 0
    precheck_rejected: int = 0
    replay_rejected: int = 0
    bad_signers_isolated: int = 0
    isolated_honest: int = 0
    aggregate_failed: int = 0
    tamper_injected: int = 0
    replay_injected: int = 0
    mismatched_plaintexts: int = 0
    tampered_ids: frozenset[tuple[int, int]] = frozenset()
    isolated_ids: frozenset[tuple[int, int]] = frozenset()
    accepted_ids: frozenset[tuple[int, int]] = frozenset()
    batches_processed: int = field(default=0, compare=False)
    verify_ops: OpCounter = field(default_factory=OpCounter, compare=False)
    decrypt_ops: OpCounter = field(default_factory=OpCounter, compare=False)
    timings: dict[str, float] = field(default_factory=dict, compare=False)

    @property
    def messages_rejected(self) -> int:
        return (
            self.precheck_rejected
            + self.replay_rejected
            + self.bad_signers_isolated
            + self.aggregate_failed
        )

    def format_lines(self) -> list[str]:
        sc = self.scenario
        lines = [
            f"scenario: vehicles={sc.n_vehicles} reports={sc.reports_per_vehicle}"
            f" adversary={sc.adversary} rate={sc.adversary_rate} seed={sc.seed}",
            f"sent={self.messages_sent} accepted={self.messages_accepted}"
            f" rejected={self.messages_rejected} batches={self.batches_processed}",
            f"rejected breakdown: precheck={self.precheck_rejected}"
            f" replay={self.replay_rejected} isolated={self.bad_signers_isolated}"
            f" unattributed={self.aggregate_failed}",
            f"injected: tampered={self.tamper_injected} replayed={self.replay_injected}",
            f"isolation: honest_casualties={self.isolated_honest}"
            f" plaintext_mismatches={self.mismatched_plaintexts}",
            f"ops: verify mults={self.verify_ops.scalar_mults}"
            f" h1={self.verify_ops.hashes_h1}"
            f" | decrypt mults={self.decrypt_ops.scalar_mults}"
            f" h2={self.decrypt_ops.hashes_h2}",
            f"wall: total={self.timings.get('wall_s', 0.0):.3f}s"
            f" batching={self.timings.get('batch_s', 0.0):.3f}s",
        ]
        return lines


def _child_seed(seed: int, label: str) -> int:
    digest = hashlib.sha256(f"{seed}:{label}".encode()).digest()
    return int.from_bytes(digest, "big")


def _flip_bit(data: bytes, bit_index: int) -> bytes:
    out = bytearray(data)
    out[bit_index // 8] ^= 1 << (bit_index % 8)
    return bytes(out)


def run_scenario(sc: Scenario) -> SimReport:
    start = time.perf_counter()
    sys_rng = random.Random(_child_seed(sc.seed, "system"))
    params, kmc, tra = setup_system(sys_rng, curve_id=sc.curve_id)
    rsu = Rsu.register(
        params,
        b"RSU-sim",
        kmc,
        random.Random(_child_seed(sc.seed, "rsu")),
        freshness_window=DEFAULT_FRESHNESS_WINDOW + sc.reports_per_vehicle,
    )
    beacon = rsu.make_broadcast(BASE_TIME, random.Random(_child_seed(sc.seed, "beacon")))

    fleet = []
    for vid in range(sc.n_vehicles):
        rng = random.Random(_child_seed(sc.seed, f"enroll-{vid}"))
        rid = rng.randbytes(params.id_len)
        fleet.append(
            enroll(params, rid, tra, kmc, BASE_TIME, BASE_TIME + 86_400, rng)
        )

    # offset of the ciphertext inside the wire image: one tagged scalar
    # (response) comes first, so flips land squarely in the ciphertext
    cipher_offset = 1 + params.curve.scalar_width

    wire_queue: queue.Queue = queue.Queue()
    report = SimReport(scenario=sc)

    def produce(vehicle_ids: list[int]) -> None:
        for vid in vehicle_ids:
            rng = random.Random(_child_seed(sc.seed, f"vehicle-{vid}"))
            for seq in range(sc.reports_per_vehicle):
                payload = rng.randbytes(params.message_bytes)
                stamp = BASE_TIME + 1 + seq
                msg = signcrypt(params, fleet[vid], beacon, payload, stamp, rng)
                wire = msg.to_wire(params)
                tampered = sc.adversary == "tamper" and rng.random() < sc.adversary_rate
                if tampered:
                    bit = cipher_offset * 8 + rng.randrange(params.l_m)
                    wire = _flip_bit(wire, bit)
                wire_queue.put((wire, _Truth(vid, seq, payload, tampered, False)))
                if sc.adversary == "replay" and rng.random() < sc.adversary_rate:
                    wire_queue.put((wire, _Truth(vid, seq, payload, tampered, True)))
        wire_queue.put(None)

    n_workers = sc.n_workers or min(sc.n_vehicles, 8)
    workers = [
        threading.Thread(
            target=produce, args=(list(range(w, sc.n_vehicles, n_workers)),)
        )
        for w in range(n_workers)
    ]

    tampered_ids: set[tuple[int, int]] = set()
    isolated_ids: set[tuple[int, int]] = set()
    accepted_ids: set[tuple[int, int]] = set()
    batch_wall = 0.0

    def classify_excluded(excluded) -> None:
        for _, reason in excluded:
            if reason in _REPLAY_REASONS:
                report.replay_rejected += 1
            else:
                report.precheck_rejected += 1

    def record_accepted(result, msgs_truth) -> None:
        for local, plaintext in zip(result.included, result.plaintexts):
            truth = msgs_truth[local]
            report.messages_accepted += 1
            accepted_ids.add(truth.ident)
            if plaintext != truth.payload:
                report.mismatched_plaintexts += 1

    def process(items: list[tuple[bytes, _Truth]]) -> None:
        nonlocal batch_wall
        t0 = time.perf_counter()
        msgs: list[SigncryptedMessage] = []
        truths: list[_Truth] = []
        for wire, truth in items:
            try:
                msgs.append(SigncryptedMessage.from_wire(params, wire))
                truths.append(truth)
            except ParseError:
                report.precheck_rejected += 1
        report.batches_processed += 1
        if not msgs:
            batch_wall += time.perf_counter() - t0
            return
        result = rsu.batch_verify(beacon.nonce, msgs, now=BASE_TIME)
        report.verify_ops.merge(result.counters)
        report.decrypt_ops.merge(result.decrypt_counters)
        classify_excluded(result.excluded)
        if result.accepted:
            record_accepted(result, truths)
            batch_wall += time.perf_counter() - t0
            return

        with count_ops() as iso_ops:
            bad = rsu.isolate_bad_signers(beacon.nonce, msgs, now=BASE_TIME)
        report.verify_ops.merge(iso_ops)
        bad_set = set(bad)
        for idx in bad:
            report.bad_signers_isolated += 1
            isolated_ids.add(truths[idx].ident)
            if not truths[idx].tampered:
                report.isolated_honest += 1
        remainder = [i for i in result.included if i not in bad_set]
        if remainder:
            second = rsu.batch_verify(
                beacon.nonce, [msgs[i] for i in remainder], now=BASE_TIME
            )
            report.verify_ops.merge(second.counters)
            report.decrypt_ops.merge(second.decrypt_counters)
            classify_excluded(second.excluded)
            if second.accepted:
                record_accepted(second, [truths[i] for i in remainder])
            else:
                report.aggregate_failed += len(second.included)
        batch_wall += time.perf_counter() - t0

    for w in workers:
        w.start()
    try:
        pending: list[tuple[bytes, _Truth]] = []
        finished = 0
        while True:
            if finished == len(workers) and wire_queue.empty():
                if pending:
                    process(pending)
                    pending = []
                break
            try:
                item = wire_queue.get(timeout=sc.batch_window)
            except queue.Empty:
                if pending:
                    process(pending)
                    pending = []
                continue
            if item is None:
                finished += 1
                continue
            report.messages_sent += 1
            truth = item[1]
            if truth.tampered and not truth.replayed:
                report.tamper_injected += 1
                tampered_ids.add(truth.ident)
            if truth.replayed:
                report.replay_injected += 1
            pending.append(item)
            if len(pending) >= sc.max_batch_size:
                process(pending)
                pending = []
    finally:
        for w in workers:
            w.join()

    report.tampered_ids = frozenset(tampered_ids)
    report.isolated_ids = frozenset(isolated_ids)
    report.accepted_ids = frozenset(accepted_ids)
    report.timings = {
        "wall_s": time.perf_counter() - start,
        "batch_s": batch_wall,
    }
    return report


def replay_attack_check(sc: Scenario) -> SimReport:
    """Run a replay scenario and confirm every injected copy was dropped."""
    if sc.adversary != "replay" or sc.adversary_rate <= 0:
        raise ValueError("replay check needs a replay adversary with rate > 0")
    report = run_scenario(sc)
    if report.replay_rejected != report.replay_injected:
        raise ProtocolError(
            f"replay leak: injected {report.replay_injected},"
            f" rejected {report.replay_rejected}"
        )
    return report
