"""One-step transition IO-decoupling: decision, IO mappings, canonical and
IO-decomposed forms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bcn import BCNet, gamma_set, input_bit, output_table
from .stp import LogicalMatrix, khatri_rao, khatri_rao_chain, stp, swap_matrix

__all__ = [
    "XiMatrix",
    "IOMapping",
    "Decomposition",
    "DecoupledForms",
    "DecouplingVerdict",
    "Failure",
    "NotSquareError",
    "PreconditionError",
    "xi_matrix",
    "check_def1",
    "check_def2",
    "io_mapping",
    "canonical_form",
    "fiber_vector",
    "decomposed_form",
    "decoupled_forms",
]

AMBIGUOUS = "ambiguous-value"
NO_DISTINCT = "no-distinct-control"


class NotSquareError(ValueError):
    """Raised when a decoupling notion needs as many inputs as outputs."""


class PreconditionError(ValueError):
    pass


def _require_square(net: BCNet):
    if net.m != net.p:
        raise NotSquareError(f"decoupling needs m = p, got m={net.m}, p={net.p}")


@dataclass(frozen=True)
class XiMatrix:
    """The 4 x 2 Boolean matrix of reachable next values of output ``channel``.

    Block ``(j, k)`` collects ``y_i(t+1)`` over states with ``y_i(t) =
    delta_2^j`` and inputs with ``u_i(t) = delta_2^k``.  A row whose state
    class is empty (constant ``H_i``) has zero blocks and is marked
    unreachable.
    """

    channel: int
    matrix: np.ndarray
    reachable: tuple

    def block(self, j: int, k: int) -> np.ndarray:
        return self.matrix[2 * (j - 1): 2 * j, k - 1]

    def row(self, j: int) -> np.ndarray:
        """``(delta_2^j)^T Xi``, a 2 x 2 Boolean matrix."""
        return self.matrix[2 * (j - 1): 2 * j, :]

    def __eq__(self, other):
        if not isinstance(other, XiMatrix):
            return NotImplemented
        return self.channel == other.channel and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash((self.channel, self.matrix.tobytes()))


@dataclass(frozen=True)
class Failure:
    channel: int
    row: int
    reason: str


@dataclass(frozen=True)
class DecouplingVerdict:
    definition: int
    failures: tuple
    xi: tuple

    @property
    def decoupled(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.decoupled


@dataclass(frozen=True)
class IOMapping:
    """``y_i(t+1) = M y_i(t) u_i(t)`` with ``M`` in L_{2x4}."""

    channel: int
    M: LogicalMatrix


@dataclass(frozen=True)
class Decomposition:
    """Coordinates ``z = P x`` with ``P = H_1 * ... * H_m * P_tail``."""

    P: LogicalMatrix
    P_tail: LogicalMatrix
    F_tail: LogicalMatrix
    blocks: tuple  # Lambda_j as ascending state lists


@dataclass(frozen=True)
class DecoupledForms:
    canonical: tuple
    decomposed: Optional[Decomposition]
    fibers: np.ndarray


def xi_matrix(net: BCNet, i: int) -> XiMatrix:
    _require_square(net)
    if not 1 <= i <= net.m:
        raise IndexError(f"channel {i} outside [1, {net.m}]")
    Y = output_table(net, i)                       # Y[u, x] in {1, 2}
    H = net.H[i - 1].idx
    u_bit = input_bit(np.arange(1, net.num_inputs + 1), i, net.m)
    Xi = np.zeros((4, 2), dtype=np.uint8)
    reachable = []
    for j in (1, 2):
        in_row = H == j
        reachable.append(bool(in_row.any()))
        for k in (1, 2):
            # exact mass H_i L V(Omega_ik) summed over Gamma_ij, then sgn
            mass = np.bincount(Y[np.ix_(u_bit == k, in_row)].ravel() - 1, minlength=2)
            Xi[2 * (j - 1): 2 * j, k - 1] = mass > 0
    return XiMatrix(i, Xi, tuple(reachable))


def _row_failures(xi: XiMatrix, definition: int) -> list[Failure]:
    out = []
    for j in (1, 2):
        if not xi.reachable[j - 1]:
            continue
        row = xi.row(j).astype(np.int64)
        if (row.sum(axis=0) != 1).any():
            out.append(Failure(xi.channel, j, AMBIGUOUS))
        elif definition == 2 and (row.sum(axis=1) != 1).any():
            # both columns name the same value, so u_i does not steer y_i
            out.append(Failure(xi.channel, j, NO_DISTINCT))
    return out


def check_def2(net: BCNet) -> DecouplingVerdict:
    """Row test ``(delta_2^j)^T Xi^i 1_2 = 1_2`` for every channel and row."""
    _require_square(net)
    xis = tuple(xi_matrix(net, i) for i in range(1, net.m + 1))
    failures = [f for xi in xis for f in _row_failures(xi, 2)]
    return DecouplingVerdict(2, tuple(failures), xis)


def check_def1(net: BCNet) -> DecouplingVerdict:
    """Every reachable row of every ``Xi^i`` is a logical 2 x 2 matrix."""
    _require_square(net)
    xis = tuple(xi_matrix(net, i) for i in range(1, net.m + 1))
    failures = [f for xi in xis for f in _row_failures(xi, 1)]
    return DecouplingVerdict(1, tuple(failures), xis)


def io_mapping(net: BCNet, i: int) -> IOMapping:
    xi = xi_matrix(net, i)
    fails = _row_failures(xi, 1)
    if fails:
        raise PreconditionError(f"channel {i}: row {fails[0].row} of Xi is not logical; no IO mapping")
    cols = []
    for j in (1, 2):
        for k in (1, 2):
            if xi.reachable[j - 1]:
                cols.append(int(np.argmax(xi.block(j, k))) + 1)
            else:
                # y_i never takes value j, and H_i is constant
                cols.append(int(net.H[i - 1].idx[0]))
    return IOMapping(i, LogicalMatrix(2, cols))


def canonical_form(net: BCNet, definition: int = 2) -> tuple:
    """Per-channel ``M_i' = M_i W_[2,2]`` with ``z_i(t+1) = M_i' u_i z_i``."""
    verdict = check_def2(net) if definition == 2 else check_def1(net)
    if not verdict:
        f = verdict.failures[0]
        raise PreconditionError(
            f"not decoupled under definition {definition}: channel {f.channel}, row {f.row} ({f.reason})")
    W = swap_matrix(2, 2)
    return tuple(stp(io_mapping(net, i).M, W) for i in range(1, net.m + 1))


def fiber_vector(net: BCNet, channels: Optional[int] = None) -> np.ndarray:
    """``(H_1 * ... * H_c) 1_{2^n}``: state counts per joint output value."""
    c = net.p if channels is None else channels
    return khatri_rao_chain(net.H[:c]).row_counts()


def _decompose(net: BCNet, c: int) -> Optional[Decomposition]:
    HH = khatri_rao_chain(net.H[:c])
    fibers = HH.row_counts()
    size = 2 ** (net.n - c)
    if (fibers != size).any():
        return None
    P_tail_idx = np.zeros(net.num_states, dtype=np.int64)
    blocks = []
    for j in range(1, 2 ** c + 1):
        members = np.flatnonzero(HH.idx == j)      # ascending state order
        P_tail_idx[members] = np.arange(1, size + 1)
        blocks.append([int(a) + 1 for a in members])
    P_tail = LogicalMatrix(size, P_tail_idx)
    P = khatri_rao(HH, P_tail)
    if not P.is_permutation():
        raise AssertionError("coordinate change is not a permutation")
    # F_tail = P_tail L (I_{2^m} (x) P^T): column (u, z) -> P_tail[L[u, P^{-1} z]]
    Pinv = P.transpose().idx
    T = net.L.idx.reshape(net.num_inputs, net.num_states)
    F_tail = LogicalMatrix(size, P_tail_idx[T[:, Pinv - 1] - 1].ravel())
    return Decomposition(P, P_tail, F_tail, tuple(blocks))


def decomposed_form(net: BCNet) -> Optional[Decomposition]:
    """IO-decomposed form of a decoupled net, or None when output fibers are uneven."""
    if not check_def2(net):
        raise PreconditionError("decomposed form needs a one-step transition IO-decoupled net")
    return _decompose(net, net.m)


def decoupled_forms(net: BCNet, definition: int = 2) -> DecoupledForms:
    canonical = canonical_form(net, definition)
    return DecoupledForms(canonical, _decompose(net, net.m), fiber_vector(net))
