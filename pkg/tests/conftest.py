import random

import pytest

from v2isign import BASE_TIME, Rsu, enroll, setup_system, signcrypt

from support import PID_WINDOW, SEED


@pytest.fixture(scope="session")
def system():
    rng = random.Random(SEED)
    return setup_system(rng)


@pytest.fixture(scope="session")
def road(system):
    """RSU registered against the session KMC, plus one signed beacon."""
    params, kmc, _ = system
    rng = random.Random(SEED + 1)
    rsu = Rsu.register(params, b"RSU-test", kmc, rng)
    beacon = rsu.make_broadcast(BASE_TIME, rng)
    return rsu, beacon


@pytest.fixture(scope="session")
def fleet(system):
    """One hundred enrolled vehicles, each under its own pseudonym."""
    params, kmc, tra = system
    rng = random.Random(SEED + 2)
    return [
        enroll(params, rng.randbytes(params.id_len), tra, kmc, *PID_WINDOW, rng)
        for _ in range(100)
    ]


@pytest.fixture()
def fresh_rsu(system, road):
    """Same RSU key, empty replay cache; keeps tests from poisoning each other."""
    params, _, _ = system
    rsu, _ = road
    return Rsu(params, rsu.key)


@pytest.fixture(scope="session")
def make_batch(system, road):
    params, _, _ = system
    _, beacon = road

    def build(vehicles, stamp, rng):
        payloads = [rng.randbytes(params.message_bytes) for _ in vehicles]
        msgs = [
            signcrypt(params, vkm, beacon, payload, stamp, rng)
            for vkm, payload in zip(vehicles, payloads)
        ]
        return msgs, payloads

    return build
