"""Seeded network generators shared by the test modules."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from bcn_decoupling.bcn import BCNet
from bcn_decoupling.files import load_network
from bcn_decoupling.stp import LogicalMatrix

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_net(name: str) -> BCNet:
    return load_network(FIXTURES / f"{name}.json")


def random_net(rng: np.random.Generator, n: int, m: int, p: int) -> BCNet:
    N = 2 ** n
    L = LogicalMatrix(N, rng.integers(1, N + 1, size=2 ** m * N))
    H = [LogicalMatrix(2, rng.integers(1, 3, size=N)) for _ in range(p)]
    return BCNet(n, m, p, L, H)


def channel_net(rng: np.random.Generator, n: int, m: int) -> BCNet:
    """State bit i is driven by u_i and its own value only; outputs read bits 1..m.

    Per channel the update is a random 2-input Boolean function, so the net
    is always Def-1 decoupled and Def-2 decoupled whenever every function
    depends on u_i for both values of x_i.  Residual bits update randomly.
    """
    N, M = 2 ** n, 2 ** m
    funcs = rng.integers(0, 2, size=(m, 2, 2))       # funcs[i, u_bit, x_bit] -> next bit
    rest = rng.integers(0, 2 ** (n - m), size=(M, N)) if n > m else np.zeros((M, N), dtype=int)
    cols = []
    for u in range(M):
        ubits = [(u >> (m - 1 - i)) & 1 for i in range(m)]
        for x in range(N):
            xbits = [(x >> (n - 1 - i)) & 1 for i in range(n)]
            nxt = 0
            for i in range(m):
                nxt = (nxt << 1) | int(funcs[i, ubits[i], xbits[i]])
            nxt = (nxt << (n - m)) | int(rest[u, x])
            cols.append(nxt + 1)
    H = []
    for i in range(m):
        H.append(LogicalMatrix(2, [((x >> (n - 1 - i)) & 1) + 1 for x in range(N)]))
    return BCNet(n, m, m, LogicalMatrix(N, cols), H)


def corpus(seed: int, count: int, max_n: int = 3, max_m: int = 2):
    """Mixed corpus: unstructured random nets plus channel-structured ones."""
    rng = np.random.default_rng(seed)
    nets = []
    for k in range(count):
        m = int(rng.integers(1, max_m + 1))
        n = int(rng.integers(m, max_n + 1))
        if k % 2:
            nets.append(channel_net(rng, n, m))
        else:
            nets.append(random_net(rng, n, m, m))
    return nets
