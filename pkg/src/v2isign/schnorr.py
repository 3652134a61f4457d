"""Schnorr signatures over the protocol curve.

Used for RSU certificates (signed by the key authority) and beacon packets
(signed by the RSU). Standard form: commit R = kP, challenge from
``hash_to_scalar``, response s = k + e*sk.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .codec import Reader, encode
from .group import Curve, Point
from .hashes import TAG_SCHNORR, hash_to_scalar


@dataclass(frozen=True)
class SchnorrSignature:
    R: Point
    s: int

    def to_wire(self, curve: Curve) -> bytes:
        return encode(curve, self.R) + encode(curve, self.s)

    @classmethod
    def read_from(cls, reader: Reader, curve: Curve) -> "SchnorrSignature":
        return cls(R=reader.read_point(curve), s=reader.read_scalar(curve))


def schnorr_sign(
    curve: Curve, secret: int, message: bytes, rng: random.Random
) -> SchnorrSignature:
    if not 0 < secret < curve.order:
        raise ValueError("signing key must be a nonzero scalar")
    k = curve.rand_scalar(rng)
    commit = curve.mult(k, curve.generator)
    challenge = hash_to_scalar(curve, TAG_SCHNORR, [commit, message])
    return SchnorrSignature(R=commit, s=(k + challenge * secret) % curve.order)


def schnorr_verify(
    curve: Curve, public: Point, message: bytes, sig: SchnorrSignature
) -> bool:
    """True iff s*P == R + e*public. Malformed inputs verify as False."""
    if public.is_identity() or not curve.contains(public):
        return False
    if not curve.contains(sig.R) or not 0 <= sig.s < curve.order:
        return False
    challenge = hash_to_scalar(curve, TAG_SCHNORR, [sig.R, message])
    lhs = curve.mult(sig.s, curve.generator)
    rhs = curve.add(sig.R, curve.mult(challenge, public))
    return lhs == rhs
