"""Key management center: system master key, partial vehicle keys, RSU certs.

The master secret signs RSU certificates and binds each vehicle's partial
public key to its current pseudonym. A partial key alone cannot sign; the
vehicle combines it with a self-chosen secret, so neither the center nor
the vehicle can forge for the other (the usual certificateless split).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .codec import Reader, encode
from .group import Curve, Point
from .hashes import TAG_KEY_BINDING, hash_to_scalar
from .schnorr import SchnorrSignature, schnorr_sign, schnorr_verify
from .tra import PseudoID


@dataclass(frozen=True)
class MasterKey:
    secret: int
    public_key: Point


@dataclass(frozen=True)
class PartialKey:
    """Center-issued half of a vehicle's signing key."""

    public: Point
    secret: int


def key_binding_hash(curve: Curve, pid: PseudoID, partial_public: Point) -> int:
    """Scalar tying a pseudonym to its partial public key."""
    return hash_to_scalar(curve, TAG_KEY_BINDING, [pid.to_wire(curve), partial_public])


def cert_message(curve: Curve, rsu_id: bytes, public_key: Point) -> bytes:
    return encode(curve, rsu_id) + encode(curve, public_key)


@dataclass(frozen=True)
class RSUCertificate:
    rsu_id: bytes
    public_key: Point
    sig: SchnorrSignature

    def to_wire(self, curve: Curve) -> bytes:
        return (
            encode(curve, self.rsu_id)
            + encode(curve, self.public_key)
            + self.sig.to_wire(curve)
        )

    @classmethod
    def read_from(cls, reader: Reader, curve: Curve) -> "RSUCertificate":
        return cls(
            rsu_id=reader.read_bytes(),
            public_key=reader.read_point(curve),
            sig=SchnorrSignature.read_from(reader, curve),
        )

    @classmethod
    def from_wire(cls, curve: Curve, data: bytes) -> "RSUCertificate":
        reader = Reader(data)
        cert = cls.read_from(reader, curve)
        reader.finish()
        return cert

    def verify(self, curve: Curve, master_public: Point) -> bool:
        if self.public_key.is_identity() or not curve.contains(self.public_key):
            return False
        message = cert_message(curve, self.rsu_id, self.public_key)
        return schnorr_verify(curve, master_public, message, self.sig)


class Kmc:
    def __init__(self, curve: Curve, rng: random.Random) -> None:
        secret = curve.rand_scalar(rng)
        self.curve = curve
        self.key = MasterKey(secret, curve.mult(secret, curve.generator))

    @property
    def public_key(self) -> Point:
        return self.key.public_key

    def issue_partial_key(self, pid: PseudoID, rng: random.Random) -> PartialKey:
        """Issue the center half of a signing key for one pseudonym.

        The secret is ``k + s * Q`` where ``k`` is fresh, ``s`` the master
        secret, and ``Q`` binds the pseudonym to the fresh public point, so
        the key is useless under any other pseudonym.
        """
        curve = self.curve
        k = curve.rand_scalar(rng)
        public = curve.mult(k, curve.generator)
        binding = key_binding_hash(curve, pid, public)
        secret = (k + self.key.secret * binding) % curve.order
        return PartialKey(public=public, secret=secret)

    def issue_rsu_cert(
        self, rsu_id: bytes, rsu_public: Point, rng: random.Random
    ) -> RSUCertificate:
        curve = self.curve
        if rsu_public.is_identity() or not curve.contains(rsu_public):
            raise ValueError("RSU public key must be a non-identity curve point")
        sig = schnorr_sign(
            curve, self.key.secret, cert_message(curve, rsu_id, rsu_public), rng
        )
        return RSUCertificate(rsu_id=rsu_id, public_key=rsu_public, sig=sig)
