"""Curve arithmetic against an independent affine implementation and
published multiples of the standard generators."""

import random
import threading

import pytest

from v2isign import CURVES, IDENTITY, OpCounter, Point, SystemParams, count_ops, get_curve

# public key coordinates for known private scalars, computed with an
# unrelated ECC implementation and frozen here
KNOWN_MULTIPLES = {
    "p256": [
        (
            2,
            0x7CF27B188D034F7E8A52380304B51AC3C08969E277F21B35A60B48FC47669978,
            0x07775510DB8ED040293D9AC69F7430DBBA7DADE63CE982299E04B79D227873D1,
        ),
        (
            0xDEADBEEF1234567890ABCDEF,
            0xFD3605D33533C2C55F340D09E7204DC067EC4A830B2EB5F8CD8FC8AE029BB33B,
            0xC1266AD21FE5B66C807FB2FD6FB18FC3E832AA57A66862033A55EDE044D37C80,
        ),
        (
            2**255 - 19,
            0x7F4668D1713B7298036815413C17BA5286688C39C2C192B5F22D96AC8B7FC1FD,
            0x992DA4ACBA9151A8BE652037814156C43BC2D96BCE8EDB59AD77CF94C32779B5,
        ),
    ],
    "secp256k1": [
        (
            2,
            0xC6047F9441ED7D6D3045406E95C07CD85C778E4B8CEF3CA7ABAC09B95C709EE5,
            0x1AE168FEA63DC339A3C58419466CEAEEF7F632653266D0E1236431A950CFE52A,
        ),
        (
            0xDEADBEEF1234567890ABCDEF,
            0x64FF88781F22246A47057A784FF39A39D38B30C61B8C4B2FF43DAF2A0884C4B1,
            0x32EE9126A3D57E5460B0CBE0113125E64DDABB97DEB1806C17F08D880262F5B3,
        ),
    ],
}


def affine_add(curve, a, b):
    """Textbook short-Weierstrass addition, kept separate on purpose."""
    if a.is_identity():
        return b
    if b.is_identity():
        return a
    p = curve.p
    if a.x == b.x and (a.y + b.y) % p == 0:
        return IDENTITY
    if a == b:
        slope = (3 * a.x * a.x + curve.a) * pow(2 * a.y, -1, p) % p
    else:
        slope = (b.y - a.y) * pow(b.x - a.x, -1, p) % p
    x = (slope * slope - a.x - b.x) % p
    y = (slope * (a.x - x) - a.y) % p
    return Point(x, y)


def slow_mult(curve, k, point):
    acc = IDENTITY
    for _ in range(k):
        acc = affine_add(curve, acc, point)
    return acc


@pytest.mark.parametrize("name", sorted(CURVES))
def test_small_multiples_match_repeated_addition(name):
    curve = get_curve(name)
    g = curve.generator
    for k in range(0, 20):
        assert curve.mult(k, g) == slow_mult(curve, k, g)


@pytest.mark.parametrize("name", sorted(KNOWN_MULTIPLES))
def test_known_generator_multiples(name):
    curve = get_curve(name)
    for k, x, y in KNOWN_MULTIPLES[name]:
        assert curve.mult(k, curve.generator) == Point(x, y)


@pytest.mark.parametrize("name", sorted(CURVES))
def test_mult_is_additive_and_composes(name):
    curve = get_curve(name)
    g = curve.generator
    rng = random.Random(11)
    for _ in range(5):
        a = curve.rand_scalar(rng)
        b = curve.rand_scalar(rng)
        left = curve.mult((a + b) % curve.order, g)
        assert left == curve.add(curve.mult(a, g), curve.mult(b, g))
        assert curve.mult(a * b % curve.order, g) == curve.mult(a, curve.mult(b, g))


def test_identity_and_order_edges():
    curve = get_curve("p256")
    g = curve.generator
    assert curve.mult(0, g).is_identity()
    assert curve.mult(curve.order, g).is_identity()
    assert curve.mult(1, g) == g
    assert curve.add(g, IDENTITY) == g
    assert curve.add(IDENTITY, g) == g
    assert curve.add(g, curve.neg(g)).is_identity()
    assert curve.sub(g, g).is_identity()
    double = curve.add(g, g)
    assert double == affine_add(curve, g, g)
    assert curve.sum_points([g, g, g]) == curve.mult(3, g)


def test_contains_rejects_off_curve_points():
    curve = get_curve("p256")
    g = curve.generator
    assert curve.contains(g)
    assert curve.contains(IDENTITY)
    assert not curve.contains(Point(g.x, (g.y + 1) % curve.p))
    with pytest.raises(ValueError):
        curve.mult(2, Point(g.x, (g.y + 1) % curve.p))


def test_lift_x_recovers_both_parities():
    curve = get_curve("p256")
    rng = random.Random(7)
    for _ in range(10):
        point = curve.mult(curve.rand_scalar(rng), curve.generator)
        assert curve.lift_x(point.x, point.y & 1) == point
    with pytest.raises(ValueError):
        curve.lift_x(1, 0)  # x = 1 has no point on the p256 curve


def test_rand_scalar_bounds():
    curve = get_curve("p256")
    rng = random.Random(3)
    for _ in range(200):
        v = curve.rand_scalar(rng)
        assert 1 <= v < curve.order
    low = min(curve.rand_scalar(rng, nonzero=False) for _ in range(50))
    assert 0 <= low < curve.order


def test_counters_nest_and_tally():
    curve = get_curve("p256")
    g = curve.generator
    with count_ops() as outer:
        curve.mult(5, g)
        with count_ops() as inner:
            curve.mult(7, g)
            curve.add(g, g)
        curve.mult(9, g)
    assert inner == OpCounter(scalar_mults=1, point_adds=1)
    assert outer.scalar_mults == 3
    assert outer.point_adds == 1


def test_counters_are_thread_local():
    curve = get_curve("p256")
    g = curve.generator
    seen = {}

    def worker():
        with count_ops() as ops:
            curve.mult(3, g)
        seen["worker"] = ops.scalar_mults

    with count_ops() as main_ops:
        thread = threading.Thread(target=worker)
        thread.start()
        thread.join()
        curve.mult(2, g)
    assert seen["worker"] == 1
    assert main_ops.scalar_mults == 1  # the worker's mult stays in its scope


def test_counter_merge():
    a = OpCounter(scalar_mults=1, hashes_h1=2)
    a.merge(OpCounter(scalar_mults=3, hashes_h2=4, point_adds=5))
    assert a == OpCounter(scalar_mults=4, hashes_h1=2, hashes_h2=4, point_adds=5)


def test_system_params_validation():
    curve = get_curve("p256")
    g = curve.generator
    good = SystemParams(curve=curve, p_pub=g, t_pub=curve.mult(2, g))
    assert good.message_bytes == 32
    assert good.generator == g
    with pytest.raises(ValueError):
        SystemParams(curve=curve, p_pub=IDENTITY, t_pub=g)
    with pytest.raises(ValueError):
        SystemParams(curve=curve, p_pub=g, t_pub=g, l_m=12)
    with pytest.raises(ValueError):
        SystemParams(curve=curve, p_pub=g, t_pub=g, l_m=0)
    with pytest.raises(ValueError):
        SystemParams(curve=curve, p_pub=g, t_pub=g, id_len=32)


def test_get_curve_unknown_name():
    with pytest.raises(ValueError):
        get_curve("p521")
