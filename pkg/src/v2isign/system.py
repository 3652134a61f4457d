"""System bootstrap: curve selection, authority key generation, parameters."""

from __future__ import annotations

import random

from .group import DEFAULT_CURVE, SystemParams, get_curve
from .kmc import Kmc
from .tra import Tra


def setup_system(
    rng: random.Random,
    curve_id: str = DEFAULT_CURVE,
    l_m: int = 256,
    id_len: int = 16,
) -> tuple[SystemParams, Kmc, Tra]:
    """Generate both authority keypairs and the published parameter set.

    The key management center and the trace authority draw independent
    secrets from ``rng``; the returned params carry only public material.
    """
    curve = get_curve(curve_id)
    kmc = Kmc(curve, rng)
    tra = Tra(curve, id_len, rng)
    params = SystemParams(
        curve=curve,
        p_pub=kmc.public_key,
        t_pub=tra.public_key,
        l_m=l_m,
        id_len=id_len,
    )
    return params, kmc, tra
