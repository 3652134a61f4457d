"""The two hash families used by the protocol.

``hash_to_scalar`` maps a domain tag plus a sequence of canonically encoded
items into the unit group of the scalar field: the SHA-256 digest is reduced
modulo (order - 1) and shifted by one, so the output is always in
[1, order - 1] and therefore always invertible. Batch verification divides
by one of these outputs, so invertibility is load-bearing, not cosmetic.

``keystream`` expands a curve point into exactly ``out_bits`` of XOR pad via
counter-chained SHA-256 over the point's canonical encoding.

Domain tags keep the different uses of hash_to_scalar from colliding:

* ``cert``     signature challenges (certificates and beacon signatures)
* ``pid``      pseudonym mask derivation and tracing
* ``partial``  binding a pseudonym to its partial public key
* ``signer``   per-message commitment to the signer's public material
* ``payload``  per-message commitment to ciphertext and beacon context
* ``beacon``   the shared beacon scalar both sides derive independently
"""

from __future__ import annotations

import hashlib

from .codec import encode_items
from .group import Curve, Point, tally

TAG_SCHNORR = b"cert"
TAG_PID_MASK = b"pid"
TAG_KEY_BINDING = b"partial"
TAG_SIGNER = b"signer"
TAG_PAYLOAD = b"payload"
TAG_BEACON = b"beacon"

_CTR_WIDTH = 4


def hash_to_scalar(curve: Curve, tag: bytes, items) -> int:
    """Hash of ``tag`` and ``items`` into [1, order - 1]. Counts one h1."""
    tally("hashes_h1")
    preimage = len(tag).to_bytes(4, "big") + tag + encode_items(curve, items)
    digest = hashlib.sha256(preimage).digest()
    return int.from_bytes(digest, "big") % (curve.order - 1) + 1


def keystream(curve: Curve, point: Point, out_bits: int) -> bytes:
    """Deterministic pad of exactly ``out_bits`` bits derived from ``point``.

    The identity point is rejected: it would mean a degenerate shared
    secret, and its pad must never be used to mask a message.
    """
    if point.is_identity():
        raise ValueError("cannot derive a keystream from the identity point")
    if out_bits < 8 or out_bits % 8 != 0:
        raise ValueError("out_bits must be a positive multiple of 8")
    tally("hashes_h2")
    seed = encode_items(curve, [point])
    out = bytearray()
    counter = 0
    while len(out) < out_bits // 8:
        out += hashlib.sha256(seed + counter.to_bytes(_CTR_WIDTH, "big")).digest()
        counter += 1
    return bytes(out[: out_bits // 8])


def xor_bytes(a: bytes, b: bytes) -> bytes:
    if len(a) != len(b):
        raise ValueError("length mismatch")
    return bytes(x ^ y for x, y in zip(a, b))
