"""Prime-order elliptic curve groups with operation-count instrumentation.

Curves are short Weierstrass (y^2 = x^3 + ax + b over F_p) with prime group
order and cofactor 1, so every non-identity point generates the full group.
Points are immutable affine records; scalar multiplication runs in Jacobian
coordinates internally so only one field inversion is paid per call.

Scalars are plain Python ints reduced modulo the group order. Contexts that
need a unit (key generation, nonces) draw via :meth:`Curve.rand_scalar` with
``nonzero=True``.

Instrumentation: :func:`count_ops` opens a measurement scope; every scalar
multiplication, protocol-level point addition and hash invocation performed
inside the scope is tallied on the yielded :class:`OpCounter`. Scopes are
context-local, so worker threads never report into a scope opened elsewhere.
"""

from __future__ import annotations

import random
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from typing import Iterable, Iterator


@dataclass(frozen=True)
class Point:
    """Affine point; ``infinity=True`` marks the group identity."""

    x: int
    y: int
    infinity: bool = False

    @classmethod
    def identity(cls) -> "Point":
        return cls(0, 0, True)

    def is_identity(self) -> bool:
        return self.infinity


IDENTITY = Point.identity()


@dataclass
class OpCounter:
    """Tally of group and hash operations inside one measurement scope."""

    scalar_mults: int = 0
    hashes_h1: int = 0
    hashes_h2: int = 0
    point_adds: int = 0

    def merge(self, other: "OpCounter") -> None:
        self.scalar_mults += other.scalar_mults
        self.hashes_h1 += other.hashes_h1
        self.hashes_h2 += other.hashes_h2
        self.point_adds += other.point_adds


_ACTIVE: ContextVar[tuple[OpCounter, ...]] = ContextVar(
    "v2isign_op_counters", default=()
)


@contextmanager
def count_ops() -> Iterator[OpCounter]:
    """Open a measurement scope and yield its counter.

    Scopes nest: an operation inside two nested scopes increments both
    counters. The scope is confined to the current execution context.
    """
    counter = OpCounter()
    token = _ACTIVE.set(_ACTIVE.get() + (counter,))
    try:
        yield counter
    finally:
        _ACTIVE.reset(token)


def tally(attr: str, n: int = 1) -> None:
    """Add ``n`` to ``attr`` on every active counter. Used by the hash module."""
    for counter in _ACTIVE.get():
        setattr(counter, attr, getattr(counter, attr) + n)


class Curve:
    """A named prime-order curve plus its group arithmetic.

    All arithmetic validates that inputs lie on the curve and raises
    ``ValueError`` otherwise; the identity point is accepted everywhere.
    """

    def __init__(
        self,
        name: str,
        p: int,
        a: int,
        b: int,
        order: int,
        gx: int,
        gy: int,
    ) -> None:
        self.name = name
        self.p = p
        self.a = a % p
        self.b = b % p
        self.order = order
        self.generator = Point(gx, gy)
        self.coord_width = (p.bit_length() + 7) // 8
        self.scalar_width = (order.bit_length() + 7) // 8
        if not self.contains(self.generator) or self.generator.is_identity():
            raise ValueError(f"bad generator for curve {name}")

    def __repr__(self) -> str:
        return f"Curve({self.name!r})"

    # -- membership ------------------------------------------------------

    def contains(self, point: Point) -> bool:
        if point.is_identity():
            return True
        if not (0 <= point.x < self.p and 0 <= point.y < self.p):
            return False
        lhs = point.y * point.y % self.p
        rhs = (point.x * point.x % self.p * point.x + self.a * point.x + self.b) % self.p
        return lhs == rhs

    def require_on_curve(self, point: Point) -> Point:
        if not self.contains(point):
            raise ValueError(f"point is not on curve {self.name}")
        return point

    # -- scalar helpers ----------------------------------------------------

    def rand_scalar(self, rng: random.Random, nonzero: bool = True) -> int:
        lo = 1 if nonzero else 0
        return rng.randrange(lo, self.order)

    # -- group operations --------------------------------------------------

    def mult(self, k: int, point: Point) -> Point:
        """Scalar multiplication ``k * point``; counts one scalar_mult."""
        self.require_on_curve(point)
        tally("scalar_mults")
        k %= self.order
        if k == 0 or point.is_identity():
            return IDENTITY
        acc = (0, 0, 0)
        addend = (point.x, point.y, 1)
        while k:
            if k & 1:
                acc = self._jadd(acc, addend)
            addend = self._jdbl(addend)
            k >>= 1
        return self._to_affine(acc)

    def add(self, lhs: Point, rhs: Point) -> Point:
        """Point addition; counts one point_add."""
        self.require_on_curve(lhs)
        self.require_on_curve(rhs)
        tally("point_adds")
        if lhs.is_identity():
            return rhs
        if rhs.is_identity():
            return lhs
        p = self.p
        if lhs.x == rhs.x:
            if (lhs.y + rhs.y) % p == 0:
                return IDENTITY
            slope = (3 * lhs.x * lhs.x + self.a) * pow(2 * lhs.y, -1, p) % p
        else:
            slope = (rhs.y - lhs.y) * pow(rhs.x - lhs.x, -1, p) % p
        x3 = (slope * slope - lhs.x - rhs.x) % p
        y3 = (slope * (lhs.x - x3) - lhs.y) % p
        return Point(x3, y3)

    def neg(self, point: Point) -> Point:
        if point.is_identity():
            return IDENTITY
        return Point(point.x, (-point.y) % self.p)

    def sub(self, lhs: Point, rhs: Point) -> Point:
        return self.add(lhs, self.neg(rhs))

    def sum_points(self, points: Iterable[Point]) -> Point:
        total = IDENTITY
        for point in points:
            total = self.add(total, point)
        return total

    # -- compressed coordinates ---------------------------------------------

    def lift_x(self, x: int, y_parity: int) -> Point:
        """Recover the point with abscissa ``x`` and given y parity.

        Raises ``ValueError`` when ``x`` is not the abscissa of any point.
        Assumes p % 4 == 3, which holds for the registered curves.
        """
        if not 0 <= x < self.p:
            raise ValueError("x coordinate out of range")
        rhs = (x * x % self.p * x + self.a * x + self.b) % self.p
        y = pow(rhs, (self.p + 1) // 4, self.p)
        if y * y % self.p != rhs:
            raise ValueError("x is not on the curve")
        if y & 1 != y_parity & 1:
            y = self.p - y
        return Point(x, y)

    # -- Jacobian internals (not instrumented) -------------------------------

    def _jdbl(self, pt: tuple[int, int, int]) -> tuple[int, int, int]:
        x1, y1, z1 = pt
        p = self.p
        if not y1 or not z1:
            return (0, 0, 0)
        xx = x1 * x1 % p
        yy = y1 * y1 % p
        yyyy = yy * yy % p
        zz = z1 * z1 % p
        s = 2 * ((x1 + yy) * (x1 + yy) - xx - yyyy) % p
        m = (3 * xx + self.a * zz % p * zz) % p
        x3 = (m * m - 2 * s) % p
        y3 = (m * (s - x3) - 8 * yyyy) % p
        z3 = ((y1 + z1) * (y1 + z1) - yy - zz) % p
        return (x3, y3, z3)

    def _jadd(
        self, pt1: tuple[int, int, int], pt2: tuple[int, int, int]
    ) -> tuple[int, int, int]:
        x1, y1, z1 = pt1
        x2, y2, z2 = pt2
        if not z1:
            return pt2
        if not z2:
            return pt1
        p = self.p
        z1z1 = z1 * z1 % p
        z2z2 = z2 * z2 % p
        u1 = x1 * z2z2 % p
        u2 = x2 * z1z1 % p
        s1 = y1 * z2 % p * z2z2 % p
        s2 = y2 * z1 % p * z1z1 % p
        if u1 == u2:
            if s1 != s2:
                return (0, 0, 0)
            return self._jdbl(pt1)
        h = (u2 - u1) % p
        i = 4 * h * h % p
        j = h * i % p
        r = 2 * (s2 - s1) % p
        v = u1 * i % p
        x3 = (r * r - j - 2 * v) % p
        y3 = (r * (v - x3) - 2 * s1 * j) % p
        z3 = ((z1 + z2) * (z1 + z2) - z1z1 - z2z2) % p * h % p
        return (x3, y3, z3)

    def _to_affine(self, pt: tuple[int, int, int]) -> Point:
        x, y, z = pt
        if not z:
            return IDENTITY
        p = self.p
        zinv = pow(z, -1, p)
        zinv2 = zinv * zinv % p
        return Point(x * zinv2 % p, y * zinv2 % p * zinv % p)


# NIST P-256 (secp256r1) and secp256k1; both have prime order and cofactor 1.
_P256 = Curve(
    name="p256",
    p=0xFFFFFFFF00000001000000000000000000000000FFFFFFFFFFFFFFFFFFFFFFFF,
    a=-3,
    b=0x5AC635D8AA3A93E7B3EBBD55769886BC651D06B0CC53B0F63BCE3C3E27D2604B,
    order=0xFFFFFFFF00000000FFFFFFFFFFFFFFFFBCE6FAADA7179E84F3B9CAC2FC632551,
    gx=0x6B17D1F2E12C4247F8BCE6E563A440F277037D812DEB33A0F4A13945D898C296,
    gy=0x4FE342E2FE1A7F9B8EE7EB4A7C0F9E162BCE33576B315ECECBB6406837BF51F5,
)

_SECP256K1 = Curve(
    name="secp256k1",
    p=0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEFFFFFC2F,
    a=0,
    b=7,
    order=0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEBAAEDCE6AF48A03BBFD25E8CD0364141,
    gx=0x79BE667EF9DCBBAC55A06295CE870B07029BFCDB2DCE28D959F2815B16F81798,
    gy=0x483ADA7726A3C4655DA4FBFC0E1108A8FD17B448A68554199C47D08FFB10D4B8,
)

CURVES: dict[str, Curve] = {c.name: c for c in (_P256, _SECP256K1)}

DEFAULT_CURVE = "p256"


def get_curve(name: str = DEFAULT_CURVE) -> Curve:
    try:
        return CURVES[name]
    except KeyError:
        raise ValueError(f"unknown curve {name!r}; available: {sorted(CURVES)}") from None


@dataclass(frozen=True)
class SystemParams:
    """Public parameters shared by every party.

    ``p_pub`` is the key authority's master public key, ``t_pub`` the trace
    authority's public key. ``l_m`` is the fixed report length in bits and
    ``id_len`` the byte length of real vehicle identities. ``id_len`` must be
    small enough that an identity (zero-padded to scalar width) is always
    less than the group order.
    """

    curve: Curve
    p_pub: Point
    t_pub: Point
    l_m: int = 256
    id_len: int = 16

    def __post_init__(self) -> None:
        for name, point in (("p_pub", self.p_pub), ("t_pub", self.t_pub)):
            if point.is_identity() or not self.curve.contains(point):
                raise ValueError(f"{name} must be a non-identity curve point")
        if self.l_m < 8 or self.l_m % 8 != 0:
            raise ValueError("l_m must be a positive multiple of 8")
        if self.id_len * 8 >= self.curve.order.bit_length():
            raise ValueError("id_len too large for the scalar field")
        if self.id_len < 1:
            raise ValueError("id_len must be positive")

    @property
    def curve_id(self) -> str:
        return self.curve.name

    @property
    def generator(self) -> Point:
        return self.curve.generator

    @property
    def message_bytes(self) -> int:
        return self.l_m // 8
