"""Trace authority: pseudonym issuance and identity recovery.

A vehicle picks a one-shot blinding secret and sends the blinded point to
the authority; the authority masks the vehicle's real identity with a
scalar derived from its trace secret and that point. Only the holder of
the trace secret can strip the mask. The identity is zero-left-padded to
scalar width before masking, so the padding doubles as an integrity check
during tracing: unmasking with the wrong key leaves the padding nonzero.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .codec import Reader, Timestamp, encode, scalar_bytes
from .errors import TraceError
from .group import Curve, Point
from .hashes import TAG_PID_MASK, hash_to_scalar, xor_bytes


@dataclass(frozen=True)
class PseudoID:
    """Three-part pseudonym: blinded point, masked identity, validity window."""

    blind_point: Point
    masked_id: bytes
    valid_from: int
    valid_to: int

    def to_wire(self, curve: Curve) -> bytes:
        if len(self.masked_id) != curve.scalar_width:
            raise ValueError("masked_id width mismatch")
        return (
            encode(curve, self.blind_point)
            + self.masked_id
            + encode(curve, Timestamp(self.valid_from))
            + encode(curve, Timestamp(self.valid_to))
        )

    @classmethod
    def read_from(cls, reader: Reader, curve: Curve) -> "PseudoID":
        return cls(
            blind_point=reader.read_point(curve),
            masked_id=reader.read_raw(curve.scalar_width),
            valid_from=int(reader.read_timestamp()),
            valid_to=int(reader.read_timestamp()),
        )

    @classmethod
    def from_wire(cls, curve: Curve, data: bytes) -> "PseudoID":
        reader = Reader(data)
        pid = cls.read_from(reader, curve)
        reader.finish()
        return pid


@dataclass(frozen=True)
class TraceKey:
    secret: int
    public_key: Point


def make_pid_request(curve: Curve, rng: random.Random) -> tuple[int, Point]:
    """Vehicle side: fresh blinding secret and its public point."""
    blinder = curve.rand_scalar(rng)
    return blinder, curve.mult(blinder, curve.generator)


def check_pid_validity(pid: PseudoID, now: int) -> bool:
    return pid.valid_from <= now <= pid.valid_to


def _mask_for(curve: Curve, trace_secret: int, pid_point: Point,
              valid_from: int, valid_to: int) -> bytes:
    shared = curve.mult(trace_secret, pid_point)
    scalar = hash_to_scalar(
        curve,
        TAG_PID_MASK,
        [shared, pid_point, Timestamp(valid_from), Timestamp(valid_to)],
    )
    return scalar_bytes(curve, scalar)


def unmask(curve: Curve, id_len: int, trace_secret: int, pid: PseudoID) -> bytes:
    """Strip the identity mask; raises TraceError when the padding check fails.

    A failed padding check means the pseudonym was not issued under this
    trace secret (or was corrupted in transit).
    """
    if len(pid.masked_id) != curve.scalar_width:
        raise TraceError("masked identity has wrong width")
    mask = _mask_for(curve, trace_secret, pid.blind_point, pid.valid_from, pid.valid_to)
    padded = xor_bytes(pid.masked_id, mask)
    pad_len = curve.scalar_width - id_len
    if any(padded[:pad_len]):
        raise TraceError("padding check failed: pseudonym not issued by this authority")
    return padded[pad_len:]


class Tra:
    """Holds the trace secret; issues pseudonyms and resolves disputes."""

    def __init__(self, curve: Curve, id_len: int, rng: random.Random) -> None:
        secret = curve.rand_scalar(rng)
        self.curve = curve
        self.id_len = id_len
        self.key = TraceKey(secret, curve.mult(secret, curve.generator))

    @property
    def public_key(self) -> Point:
        return self.key.public_key

    def issue_pid(
        self, rid: bytes, blind_point: Point, valid_from: int, valid_to: int
    ) -> PseudoID:
        curve = self.curve
        if len(rid) != self.id_len:
            raise ValueError(f"real identity must be exactly {self.id_len} bytes")
        if blind_point.is_identity() or not curve.contains(blind_point):
            raise ValueError("blind point must be a non-identity curve point")
        if not 0 <= valid_from <= valid_to:
            raise ValueError("invalid validity window")
        mask = _mask_for(curve, self.key.secret, blind_point, valid_from, valid_to)
        padded = b"\x00" * (curve.scalar_width - self.id_len) + rid
        return PseudoID(
            blind_point=blind_point,
            masked_id=xor_bytes(padded, mask),
            valid_from=valid_from,
            valid_to=valid_to,
        )

    def trace(self, pid: PseudoID) -> bytes:
        """Recover the real identity behind ``pid``."""
        return unmask(self.curve, self.id_len, self.key.secret, pid)
