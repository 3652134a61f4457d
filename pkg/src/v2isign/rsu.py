"""RSU side: beaconing, batch verification, decryption, fault isolation.

Batch verification costs exactly five scalar multiplications regardless of
batch size. Per message it does three hashes (key binding, signer binding,
payload binding) plus one for the beacon nonce, then folds everything into
a single point equation that lands on the identity iff every signature in
the batch is consistent.

Messages that fail cheap structural checks (stale timestamp, expired
pseudonym, replay, malformed fields) are excluded *before* aggregation so
one bad apple cannot poison the batch; the excluded list records why.
Replay-cache entries are committed only for accepted batches, so a
rejected batch can be retried after isolation without tripping over its
own footprints.
"""

from __future__ import annotations

import random
import threading
from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .codec import Timestamp
from .errors import RegistrationError
from .group import OpCounter, Point, SystemParams, count_ops
from .hashes import TAG_BEACON, TAG_PAYLOAD, TAG_SIGNER, hash_to_scalar, keystream, xor_bytes
from .kmc import Kmc, RSUCertificate, key_binding_hash
from .schnorr import schnorr_sign
from .tra import check_pid_validity
from .vehicle import (
    DEFAULT_FRESHNESS_WINDOW,
    BroadcastPacket,
    SigncryptedMessage,
    beacon_message,
)

DEFAULT_REPLAY_CACHE_SIZE = 4096


@dataclass(frozen=True)
class RSUKeyMaterial:
    rsu_id: bytes
    secret: int
    public_key: Point
    cert: RSUCertificate


@dataclass
class BatchResult:
    """Outcome of one batch verification.

    ``included`` holds the indices that entered the aggregate check;
    ``excluded`` the (index, reason) pairs dropped beforehand. The two
    counters cover the verification and decryption phases separately, so
    callers can see that a rejected batch did zero decryption work.
    """

    accepted: bool
    plaintexts: list[bytes] | None
    included: list[int]
    excluded: list[tuple[int, str]]
    counters: OpCounter = field(default_factory=OpCounter)
    decrypt_counters: OpCounter = field(default_factory=OpCounter)


class Rsu:
    def __init__(
        self,
        params: SystemParams,
        key: RSUKeyMaterial,
        freshness_window: int = DEFAULT_FRESHNESS_WINDOW,
        replay_cache_size: int = DEFAULT_REPLAY_CACHE_SIZE,
    ) -> None:
        if replay_cache_size < 1:
            raise ValueError("replay cache size must be positive")
        self.params = params
        self.key = key
        self.freshness_window = freshness_window
        self._replay_cache_size = replay_cache_size
        self._replay_cache: OrderedDict[tuple[bytes, int], None] = OrderedDict()
        self._replay_lock = threading.Lock()

    @classmethod
    def register(
        cls,
        params: SystemParams,
        rsu_id: bytes,
        kmc: Kmc,
        rng: random.Random,
        **kwargs,
    ) -> "Rsu":
        curve = params.curve
        secret = curve.rand_scalar(rng)
        public = curve.mult(secret, curve.generator)
        cert = kmc.issue_rsu_cert(rsu_id, public, rng)
        if not cert.verify(curve, params.p_pub):
            raise RegistrationError("RSU certificate failed verification")
        key = RSUKeyMaterial(rsu_id=rsu_id, secret=secret, public_key=public, cert=cert)
        return cls(params, key, **kwargs)

    def make_broadcast(self, timestamp: int, rng: random.Random) -> BroadcastPacket:
        """Sign a beacon carrying a fresh nonce for the next batch round."""
        curve = self.params.curve
        nonce = curve.rand_scalar(rng)
        sig = schnorr_sign(
            curve, self.key.secret, beacon_message(curve, nonce, timestamp), rng
        )
        return BroadcastPacket(cert=self.key.cert, nonce=nonce, timestamp=timestamp, sig=sig)

    # ------------------------------------------------------------------
    # batch verification
    # ------------------------------------------------------------------

    def batch_verify(
        self,
        nonce: int,
        batch: Sequence[SigncryptedMessage],
        now: int,
        decrypt: bool = True,
    ) -> BatchResult:
        """Verify a batch under the beacon ``nonce``; decrypt on acceptance.

        Raises ValueError for an empty input batch. A batch whose every
        message is excluded by the structural pre-checks is rejected
        without touching the group.
        """
        if not batch:
            raise ValueError("empty batch")
        included, excluded = self._precheck(batch, now, use_cache=True)
        with count_ops() as verify_ops:
            accepted = bool(included) and self._aggregate_ok(
                nonce, [batch[i] for i in included]
            )
        plaintexts: list[bytes] | None = None
        decrypt_ops = OpCounter()
        if accepted:
            if decrypt:
                with count_ops() as decrypt_ops:
                    plaintexts = [self.decrypt_one(batch[i]) for i in included]
            self._commit_replay_keys(batch[i] for i in included)
        return BatchResult(
            accepted=accepted,
            plaintexts=plaintexts,
            included=included,
            excluded=excluded,
            counters=verify_ops,
            decrypt_counters=decrypt_ops,
        )

    def decrypt_one(self, msg: SigncryptedMessage) -> bytes:
        """Recover one plaintext; call only after the batch has verified."""
        curve = self.params.curve
        shared = curve.mult(self.key.secret, msg.ephemeral_pub)
        return xor_bytes(msg.ciphertext, keystream(curve, shared, self.params.l_m))

    def isolate_bad_signers(
        self,
        nonce: int,
        batch: Sequence[SigncryptedMessage],
        now: int | None = None,
    ) -> list[int]:
        """Bisect a rejected batch down to the indices that break it.

        Returns original batch indices whose messages fail verification
        even in isolation. Pre-excluded messages (stale, replayed within
        the batch, malformed) are not probed; they were never part of the
        aggregate. Does not touch the replay cache.
        """
        if not batch:
            return []
        if now is None:
            included = [
                i for i, msg in enumerate(batch) if self._structural_reason(msg) is None
            ]
            included = self._drop_batch_duplicates(batch, included)
        else:
            included, _ = self._precheck(batch, now, use_cache=False)

        def bisect(indices: list[int]) -> list[int]:
            if not indices:
                return []
            if self._aggregate_ok(nonce, [batch[i] for i in indices]):
                return []
            if len(indices) == 1:
                return list(indices)
            mid = len(indices) // 2
            return bisect(indices[:mid]) + bisect(indices[mid:])

        return bisect(included)

    # ------------------------------------------------------------------
    # internals
    # ------------------------------------------------------------------

    def _structural_reason(self, msg: SigncryptedMessage) -> str | None:
        params = self.params
        curve = params.curve
        if not 0 <= msg.response < curve.order:
            return "response scalar out of range"
        if len(msg.ciphertext) != params.message_bytes:
            return "ciphertext width mismatch"
        if len(msg.pid.masked_id) != curve.scalar_width:
            return "malformed pseudonym"
        for point in (msg.ephemeral_pub, msg.partial_pub, msg.self_pub, msg.pid.blind_point):
            if point.is_identity() or not curve.contains(point):
                return "off-curve or identity point"
        if not check_pid_validity(msg.pid, msg.timestamp):
            return "pseudonym expired at message time"
        return None

    def _precheck(
        self, batch: Sequence[SigncryptedMessage], now: int, use_cache: bool
    ) -> tuple[list[int], list[tuple[int, str]]]:
        included: list[int] = []
        excluded: list[tuple[int, str]] = []
        seen: set[tuple[bytes, int]] = set()
        curve = self.params.curve
        for i, msg in enumerate(batch):
            reason = self._structural_reason(msg)
            if reason is None and abs(now - msg.timestamp) > self.freshness_window:
                reason = "stale timestamp"
            if reason is None:
                key = msg.replay_key(curve)
                if key in seen:
                    reason = "duplicate within batch"
                elif use_cache and self._replay_seen(key):
                    reason = "replayed message"
                else:
                    seen.add(key)
            if reason is None:
                included.append(i)
            else:
                excluded.append((i, reason))
        return included, excluded

    def _drop_batch_duplicates(
        self, batch: Sequence[SigncryptedMessage], indices: list[int]
    ) -> list[int]:
        curve = self.params.curve
        seen: set[tuple[bytes, int]] = set()
        kept: list[int] = []
        for i in indices:
            key = batch[i].replay_key(curve)
            if key not in seen:
                seen.add(key)
                kept.append(i)
        return kept

    def _aggregate_ok(self, nonce: int, msgs: Sequence[SigncryptedMessage]) -> bool:
        """Single-equation batch check: five scalar mults, any batch size."""
        params = self.params
        curve = params.curve
        q = curve.order
        cert_wire = self.key.cert.to_wire(curve)

        binding_sum = 0
        hash_delta_sum = 0
        response_sum = 0
        for msg in msgs:
            pid_wire = msg.pid.to_wire(curve)
            binding_sum += key_binding_hash(curve, msg.pid, msg.partial_pub)
            signer_hash = hash_to_scalar(
                curve,
                TAG_SIGNER,
                [pid_wire, msg.partial_pub, msg.self_pub, Timestamp(msg.timestamp)],
            )
            payload_hash = hash_to_scalar(
                curve,
                TAG_PAYLOAD,
                [msg.ciphertext, msg.ephemeral_pub, cert_wire, Timestamp(msg.timestamp)],
            )
            hash_delta_sum += signer_hash - payload_hash
            response_sum += msg.response

        eph_sum = curve.sum_points(m.ephemeral_pub for m in msgs)
        partial_sum = curve.sum_points(m.partial_pub for m in msgs)
        self_sum = curve.sum_points(m.self_pub for m in msgs)

        beacon_point = curve.mult(self.key.secret * nonce % q, curve.generator)
        beacon_hash = hash_to_scalar(curve, TAG_BEACON, [beacon_point])
        response_point = curve.mult(response_sum % q, curve.generator)
        recovered = curve.mult(
            pow(beacon_hash, -1, q), curve.sub(eph_sum, response_point)
        )
        delta_point = curve.mult(nonce * (hash_delta_sum % q) % q, curve.generator)
        binding_point = curve.mult(binding_sum % q, params.p_pub)

        total = curve.add(delta_point, partial_sum)
        total = curve.add(total, self_sum)
        total = curve.add(total, self_sum)
        total = curve.add(total, binding_point)
        total = curve.sub(total, recovered)
        return total.is_identity()

    def _replay_seen(self, key: tuple[bytes, int]) -> bool:
        with self._replay_lock:
            return key in self._replay_cache

    def _commit_replay_keys(self, msgs: Iterable[SigncryptedMessage]) -> None:
        curve = self.params.curve
        with self._replay_lock:
            for msg in msgs:
                self._replay_cache[msg.replay_key(curve)] = None
            while len(self._replay_cache) > self._replay_cache_size:
                self._replay_cache.popitem(last=False)
