"""Vehicle (OBU) side: enrollment, beacon validation, signcryption.

Signcryption spends exactly three scalar multiplications per message: the
ephemeral commitment, the encryption shared point, and the beacon-nonce
point. Everything else is hashing and scalar arithmetic, which is what
keeps the per-message cost flat on embedded hardware.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .codec import Reader, Timestamp, encode
from .errors import ProtocolError, RegistrationError
from .group import Curve, Point, SystemParams
from .hashes import TAG_BEACON, TAG_PAYLOAD, TAG_SIGNER, hash_to_scalar, keystream, xor_bytes
from .kmc import Kmc, RSUCertificate, key_binding_hash
from .schnorr import SchnorrSignature, schnorr_verify
from .tra import PseudoID, Tra, check_pid_validity, make_pid_request

DEFAULT_FRESHNESS_WINDOW = 300


@dataclass(frozen=True)
class VehicleKeyMaterial:
    """Full signing state for one pseudonym period."""

    partial_secret: int
    self_secret: int
    partial_public: Point
    self_public: Point
    pid: PseudoID


@dataclass(frozen=True)
class BroadcastPacket:
    """RSU beacon: certificate, fresh batch nonce, timestamp, signature."""

    cert: RSUCertificate
    nonce: int
    timestamp: int
    sig: SchnorrSignature


def beacon_message(curve: Curve, nonce: int, timestamp: int) -> bytes:
    return encode(curve, nonce) + encode(curve, Timestamp(timestamp))


@dataclass(frozen=True)
class SigncryptedMessage:
    response: int
    ciphertext: bytes
    ephemeral_pub: Point
    partial_pub: Point
    self_pub: Point
    pid: PseudoID
    timestamp: int

    def to_wire(self, params: SystemParams) -> bytes:
        curve = params.curve
        if len(self.ciphertext) != params.message_bytes:
            raise ValueError("ciphertext width mismatch")
        return (
            encode(curve, self.response)
            + self.ciphertext
            + encode(curve, self.ephemeral_pub)
            + encode(curve, self.partial_pub)
            + encode(curve, self.self_pub)
            + self.pid.to_wire(curve)
            + encode(curve, Timestamp(self.timestamp))
        )

    @classmethod
    def from_wire(cls, params: SystemParams, data: bytes) -> "SigncryptedMessage":
        curve = params.curve
        reader = Reader(data)
        msg = cls(
            response=reader.read_scalar(curve),
            ciphertext=reader.read_raw(params.message_bytes),
            ephemeral_pub=reader.read_point(curve),
            partial_pub=reader.read_point(curve),
            self_pub=reader.read_point(curve),
            pid=PseudoID.read_from(reader, curve),
            timestamp=int(reader.read_timestamp()),
        )
        reader.finish()
        return msg

    def replay_key(self, curve: Curve) -> tuple[bytes, int]:
        return self.pid.to_wire(curve), self.timestamp


def register(
    params: SystemParams, pid: PseudoID, kmc: Kmc, rng: random.Random
) -> VehicleKeyMaterial:
    """Obtain a partial key for ``pid`` and pair it with a self-chosen key.

    The center's response is checked against its public key before use;
    a mismatch raises RegistrationError rather than returning a key that
    would fail verification later.
    """
    curve = params.curve
    self_secret = curve.rand_scalar(rng)
    self_public = curve.mult(self_secret, curve.generator)
    partial = kmc.issue_partial_key(pid, rng)
    binding = key_binding_hash(curve, pid, partial.public)
    expected = curve.add(partial.public, curve.mult(binding, params.p_pub))
    if curve.mult(partial.secret, curve.generator) != expected:
        raise RegistrationError("partial key receipt check failed")
    return VehicleKeyMaterial(
        partial_secret=partial.secret,
        self_secret=self_secret,
        partial_public=partial.public,
        self_public=self_public,
        pid=pid,
    )


def enroll(
    params: SystemParams,
    rid: bytes,
    tra: Tra,
    kmc: Kmc,
    valid_from: int,
    valid_to: int,
    rng: random.Random,
) -> VehicleKeyMaterial:
    """Acquire a fresh pseudonym for ``rid`` and register under it."""
    _, blind_point = make_pid_request(params.curve, rng)
    pid = tra.issue_pid(rid, blind_point, valid_from, valid_to)
    return register(params, pid, kmc, rng)


def refresh_pseudonym(
    params: SystemParams,
    rid: bytes,
    tra: Tra,
    kmc: Kmc,
    valid_from: int,
    valid_to: int,
    rng: random.Random,
) -> VehicleKeyMaterial:
    """Replace the current pseudonym and keys with entirely fresh ones.

    Nothing carries over from the previous period: new blinding secret,
    new partial key, new self key. A refresh is therefore just a fresh
    enrollment.
    """
    return enroll(params, rid, tra, kmc, valid_from, valid_to, rng)


def validate_broadcast(
    params: SystemParams,
    pkt: BroadcastPacket,
    now: int,
    freshness_window: int = DEFAULT_FRESHNESS_WINDOW,
) -> bool:
    """Check an RSU beacon: certificate chain, beacon signature, freshness."""
    curve = params.curve
    if not 0 < pkt.nonce < curve.order:
        return False
    if abs(now - pkt.timestamp) > freshness_window:
        return False
    if not pkt.cert.verify(curve, params.p_pub):
        return False
    message = beacon_message(curve, pkt.nonce, pkt.timestamp)
    return schnorr_verify(curve, pkt.cert.public_key, message, pkt.sig)


def signcrypt(
    params: SystemParams,
    vkm: VehicleKeyMaterial,
    pkt: BroadcastPacket,
    message: bytes,
    timestamp: int,
    rng: random.Random,
) -> SigncryptedMessage:
    curve = params.curve
    if len(message) != params.message_bytes:
        raise ValueError(f"message must be exactly {params.message_bytes} bytes")
    if not check_pid_validity(vkm.pid, timestamp):
        raise ProtocolError("pseudonym not valid at signing time")

    rsu_public = pkt.cert.public_key
    eph_secret = curve.rand_scalar(rng)
    eph_public = curve.mult(eph_secret, curve.generator)
    shared = curve.mult(eph_secret, rsu_public)
    ciphertext = xor_bytes(message, keystream(curve, shared, params.l_m))

    pid_wire = vkm.pid.to_wire(curve)
    signer_hash = hash_to_scalar(
        curve,
        TAG_SIGNER,
        [pid_wire, vkm.partial_public, vkm.self_public, Timestamp(timestamp)],
    )
    payload_hash = hash_to_scalar(
        curve,
        TAG_PAYLOAD,
        [ciphertext, eph_public, pkt.cert.to_wire(curve), Timestamp(timestamp)],
    )
    beacon_point = curve.mult(pkt.nonce, rsu_public)
    beacon_hash = hash_to_scalar(curve, TAG_BEACON, [beacon_point])

    q = curve.order
    z = (pkt.nonce * (signer_hash - payload_hash) + vkm.partial_secret + vkm.self_secret) % q
    response = (eph_secret - beacon_hash * (z + vkm.self_secret)) % q
    return SigncryptedMessage(
        response=response,
        ciphertext=ciphertext,
        ephemeral_pub=eph_public,
        partial_pub=vkm.partial_public,
        self_pub=vkm.self_public,
        pid=vkm.pid,
        timestamp=timestamp,
    )
