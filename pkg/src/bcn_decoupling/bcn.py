"""Boolean control networks in algebraic form and their simulation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .stp import DeltaVector, LogicalMatrix

__all__ = [
    "BCNet",
    "Trajectory",
    "gamma_set",
    "omega_set",
    "input_bit",
    "step",
    "outputs",
    "simulate",
    "compose_inputs",
    "transition_table",
    "output_table",
]


@dataclass(frozen=True)
class BCNet:
    """``x(t+1) = L u(t) x(t)``, ``y_i(t) = H_i x(t)``.

    ``L`` is 2^n x 2^(m+n) with column ``(u-1) 2^n + x``; each ``H_i`` is
    2 x 2^n.
    """

    n: int
    m: int
    p: int
    L: LogicalMatrix
    H: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "H", tuple(self.H))
        if min(self.n, self.m, self.p) < 1:
            raise ValueError("n, m and p must be positive")
        N, M = 2 ** self.n, 2 ** self.m
        if self.L.shape != (N, M * N):
            raise ValueError(f"L must be {N}x{M * N}, got {self.L.shape[0]}x{self.L.shape[1]}")
        if len(self.H) != self.p:
            raise ValueError(f"expected {self.p} output matrices, got {len(self.H)}")
        for i, H in enumerate(self.H, 1):
            if H.shape != (2, N):
                raise ValueError(f"H_{i} must be 2x{N}, got {H.shape[0]}x{H.shape[1]}")

    @property
    def num_states(self) -> int:
        return 2 ** self.n

    @property
    def num_inputs(self) -> int:
        return 2 ** self.m


def _check_channel(i: int, count: int, what: str):
    if not 1 <= i <= count:
        raise IndexError(f"{what} index {i} outside [1, {count}]")


def gamma_set(net: BCNet, i: int, j: int) -> list[int]:
    """States (1-based, ascending) whose i-th output is ``delta_2^j``."""
    _check_channel(i, net.p, "output")
    if j not in (1, 2):
        raise ValueError("j must be 1 or 2")
    return [int(a) + 1 for a in np.flatnonzero(net.H[i - 1].idx == j)]


def input_bit(u, i: int, m: int):
    """Value (1 or 2) of channel ``i`` in composite input(s) ``u`` (1-based)."""
    return (((np.asarray(u) - 1) >> (m - i)) & 1) + 1


def omega_set(i: int, j: int, m: int) -> list[int]:
    """Composite inputs (1-based, ascending) whose i-th factor is ``delta_2^j``."""
    _check_channel(i, m, "input")
    if j not in (1, 2):
        raise ValueError("j must be 1 or 2")
    u = np.arange(1, 2 ** m + 1)
    return [int(k) for k in u[input_bit(u, i, m) == j]]


def transition_table(net: BCNet) -> np.ndarray:
    """``T[u-1, x-1]`` = 1-based successor state."""
    return net.L.idx.reshape(net.num_inputs, net.num_states)


def output_table(net: BCNet, i: int) -> np.ndarray:
    """``Y[u-1, x-1]`` = value (1 or 2) of ``H_i L u x``."""
    return net.H[i - 1].idx[transition_table(net) - 1]


def _as_index(v, dim: int, what: str) -> int:
    if isinstance(v, DeltaVector):
        if v.dim != dim:
            raise ValueError(f"{what} must lie in Delta_{dim}, got dimension {v.dim}")
        return v.index
    k = int(v)
    if not 1 <= k <= dim:
        raise ValueError(f"{what} index {k} outside [1, {dim}]")
    return k


def step(net: BCNet, u, x) -> DeltaVector:
    ui = _as_index(u, net.num_inputs, "input")
    xi = _as_index(x, net.num_states, "state")
    return net.L.column((ui - 1) * net.num_states + xi)


def outputs(net: BCNet, x) -> tuple[DeltaVector, ...]:
    xi = _as_index(x, net.num_states, "state")
    return tuple(H.column(xi) for H in net.H)


@dataclass(frozen=True)
class Trajectory:
    states: tuple
    inputs: tuple
    outputs: tuple

    def __len__(self):
        return len(self.states)

    def output_indices(self) -> np.ndarray:
        """``(T+1) x p`` array of output values in {1, 2}."""
        return np.array([[y.index for y in ys] for ys in self.outputs], dtype=np.int64)


def simulate(net: BCNet, x0, inputs: Sequence) -> Trajectory:
    x = DeltaVector(net.num_states, _as_index(x0, net.num_states, "initial state"))
    us = tuple(DeltaVector(net.num_inputs, _as_index(u, net.num_inputs, "input")) for u in inputs)
    states = [x]
    for u in us:
        x = step(net, u, x)
        states.append(x)
    return Trajectory(tuple(states), us, tuple(outputs(net, s) for s in states))


def compose_inputs(channels: Sequence[Sequence[int]]) -> list[int]:
    """Composite 1-based inputs from per-channel value sequences in {1, 2}.

    ``channels[i][t]`` is the value of ``u_{i+1}(t)``; the result is
    ``u(t) = u_1(t) |x ... |x u_m(t)``.
    """
    if not channels:
        raise ValueError("need at least one channel")
    lengths = {len(c) for c in channels}
    if len(lengths) != 1:
        raise ValueError("all channel sequences must have the same length")
    out = []
    for t in range(lengths.pop()):
        k = 0
        for c in channels:
            v = int(c[t])
            if v not in (1, 2):
                raise ValueError(f"channel values must be 1 or 2, got {v}")
            k = 2 * k + (v - 1)
        out.append(k + 1)
    return out
