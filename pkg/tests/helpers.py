"""Shared test utilities."""

from tritrade.construct import embed_in_alphabet, grid_cycle_bitrade
from tritrade.cube import Isometry
from tritrade.funcspace import BoolFn, u_from_bool
from tritrade.trade import bipartition


def random_q4_unitrade(rng):
    """Products/embeddings of ternary bitrades and grid cycles, randomly
    isotoped inside Q_4^n."""
    n = rng.choice([1, 2])
    if rng.random() < 0.5:
        B = None
        while B is None:
            f = BoolFn(n, rng.getrandbits(1 << n))
            B = bipartition(u_from_bool(f))
        U = embed_in_alphabet(B, 4).base
    else:
        U = grid_cycle_bitrade(4).base
    g = Isometry.random(rng, U.n, 4, allow_sign=False)
    return U.apply_isometry(g)
