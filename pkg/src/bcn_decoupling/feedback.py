"""State feedback ``u(t) = K x(t) v(t)`` for IO-decoupling.

The auxiliary matrix ``K_i`` records, per state and plant input, which value
output ``i`` takes one step later.  Its channel rows are combined by a
Hadamard product into ``K_hat`` whose column ``(alpha, eta)`` lists the plant
inputs that drive every output ``i`` to ``delta_2^{eta_i}`` from state
``alpha``.  Feedback columns are picked from that set (smallest index).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .bcn import BCNet, input_bit, output_table, transition_table
from .decoupling import Decomposition, PreconditionError, _decompose, check_def1, check_def2
from .stp import LogicalMatrix, identity, kron, power_reducing_matrix, stp_chain, swap_matrix

__all__ = [
    "Status",
    "SynthesisOutcome",
    "Feasibility",
    "aux_matrix",
    "aux_matrix_bar",
    "khat",
    "kbar",
    "feasibility_def2",
    "synthesize_def1",
    "synthesize_def2",
    "synthesize_def3",
    "constant_feedbacks",
    "constant_feedback_fallback",
    "closed_loop",
    "closed_loop_by_formula",
    "decomposed_closed_loop",
    "feedback_from_columns",
]


class Status(enum.Enum):
    SYNTHESIZED = "synthesized"
    INFEASIBLE = "infeasible"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SynthesisOutcome:
    status: Status
    definition: int
    K: Optional[LogicalMatrix] = None
    certificate: Optional[np.ndarray] = field(default=None, repr=False)
    witness: Optional[dict] = None
    reason: str = ""

    @property
    def synthesized(self) -> bool:
        return self.status is Status.SYNTHESIZED


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    witness: Optional[dict] = None

    def __bool__(self):
        return self.feasible


def aux_matrix(net: BCNet, i: int) -> np.ndarray:
    """``K_i`` in B_{2 x 2^(n+m)}; block ``alpha`` is ``K_i delta_{2^n}^alpha``.

    Column ``k`` of block ``alpha`` is ``H_i L delta^k delta^alpha``.
    """
    if not 1 <= i <= net.p:
        raise IndexError(f"channel {i} outside [1, {net.p}]")
    Y = output_table(net, i).T                     # Y[x, u]
    K = np.zeros((2, Y.size), dtype=np.uint8)
    K[Y.ravel() - 1, np.arange(Y.size)] = 1
    return K


def _blocks(K: np.ndarray, width: int) -> np.ndarray:
    """View ``rows x (2^n width)`` as ``2^n x rows x width``."""
    rows = K.shape[0]
    return K.reshape(rows, -1, width).transpose(1, 0, 2)


def _steerable(net: BCNet, Ki: np.ndarray) -> np.ndarray:
    """Per state: ``sgn(K_i delta^alpha 1_{2^m}) == 1_2``."""
    return (_blocks(Ki, net.num_inputs).sum(axis=2) > 0).all(axis=1)


def aux_matrix_bar(net: BCNet, i: int) -> np.ndarray:
    """``K_i`` with every non-steerable state block replaced by all ones."""
    Ki = aux_matrix(net, i)
    bad = ~_steerable(net, Ki)
    blocks = _blocks(Ki, net.num_inputs).copy()
    blocks[bad] = 1
    return blocks.transpose(1, 0, 2).reshape(2, -1)


def _combine(net: BCNet, aux: list) -> np.ndarray:
    """``Col_eta(K delta^alpha) = prod_H_i (K_i delta^alpha)^T delta_2^{eta_i}``."""
    N, M, Pn = net.num_states, net.num_inputs, 2 ** net.p
    eta = np.arange(1, Pn + 1)
    out = np.ones((N, M, Pn), dtype=np.uint8)          # [alpha, k, eta]
    for i, Ki in enumerate(aux, 1):
        blocks = _blocks(Ki, M)                         # [alpha, value, k]
        sel = input_bit(eta, i, net.p) - 1              # row picked by eta_i
        out &= blocks[:, sel, :].transpose(0, 2, 1)
    return out.transpose(1, 0, 2).reshape(M, N * Pn)


def khat(net: BCNet) -> np.ndarray:
    """``K_hat`` in B_{2^m x 2^(n+p)}."""
    return _combine(net, [aux_matrix(net, i) for i in range(1, net.p + 1)])


def kbar(net: BCNet) -> np.ndarray:
    return _combine(net, [aux_matrix_bar(net, i) for i in range(1, net.p + 1)])


def _column_pos(net: BCNet, col: int) -> tuple[int, int]:
    """0-based column of a ``2^(n+p)``-wide matrix -> (alpha, eta), 1-based."""
    Pn = 2 ** net.p
    return col // Pn + 1, col % Pn + 1


def feasibility_def2(net: BCNet) -> Feasibility:
    if net.m < net.p:
        return Feasibility(False, {"clause": "m < p", "m": net.m, "p": net.p})
    for i in range(1, net.p + 1):
        ok = _steerable(net, aux_matrix(net, i))
        if not ok.all():
            alpha = int(np.flatnonzero(~ok)[0]) + 1
            return Feasibility(False, {"clause": "steerable", "channel": i, "state": alpha})
    Kh = khat(net)
    empty = np.flatnonzero(Kh.sum(axis=0) == 0)
    if empty.size:
        alpha, eta = _column_pos(net, int(empty[0]))
        return Feasibility(False, {"clause": "hadamard", "state": alpha, "eta": eta})
    return Feasibility(True)


def feedback_from_columns(net: BCNet, B: np.ndarray) -> LogicalMatrix:
    """Pick the smallest one-position in each column of a Boolean candidate matrix."""
    if (B.sum(axis=0) == 0).any():
        raise ValueError("candidate matrix has a zero column")
    return LogicalMatrix(net.num_inputs, np.argmax(B, axis=0) + 1)


def synthesize_def2(net: BCNet) -> SynthesisOutcome:
    """Necessary-and-sufficient synthesis for one-step transition decoupling."""
    feas = feasibility_def2(net)
    if not feas:
        return SynthesisOutcome(Status.INFEASIBLE, 2, witness=feas.witness,
                                reason=f"condition fails: {feas.witness['clause']}")
    Kh = khat(net)
    return SynthesisOutcome(Status.SYNTHESIZED, 2, K=feedback_from_columns(net, Kh), certificate=Kh)


def constant_feedbacks(net: BCNet):
    """``delta_{2^m}^k (x) 1^T_{2^(n+p)}`` for k = 1..2^m."""
    width = net.num_states * 2 ** net.p
    for k in range(1, net.num_inputs + 1):
        yield LogicalMatrix(net.num_inputs, np.full(width, k))


def constant_feedback_fallback(net: BCNet) -> Optional[LogicalMatrix]:
    if net.m != net.p:
        return None
    for K in constant_feedbacks(net):
        if check_def1(closed_loop(net, K)):
            return K
    return None


def _synthesize_kbar(net: BCNet, definition: int, fallback_constant: bool) -> SynthesisOutcome:
    Kb = kbar(net)
    zero = np.flatnonzero(Kb.sum(axis=0) == 0)
    K, reason, witness = None, "", None
    if zero.size:
        alpha, eta = _column_pos(net, int(zero[0]))
        witness = {"clause": "zero column", "state": alpha, "eta": eta}
        reason = f"K_bar has a zero column at state {alpha}, eta {eta}"
    else:
        K = feedback_from_columns(net, Kb)
        if net.m == net.p and not check_def1(closed_loop(net, K)):
            # the all-ones blocks let channels disagree inside one output class
            witness = {"clause": "closed loop check"}
            reason = "K_bar candidate does not decouple the closed loop"
            K = None
    if K is None and fallback_constant:
        Kc = constant_feedback_fallback(net)
        if Kc is not None:
            return SynthesisOutcome(Status.SYNTHESIZED, definition, K=Kc, certificate=Kb,
                                    witness=witness, reason="constant feedback fallback")
    if K is None:
        return SynthesisOutcome(Status.INCONCLUSIVE, definition, certificate=Kb,
                                witness=witness, reason=reason)
    return SynthesisOutcome(Status.SYNTHESIZED, definition, K=K, certificate=Kb)


def synthesize_def1(net: BCNet, fallback_constant: bool = False) -> SynthesisOutcome:
    """Sufficient-only synthesis for the weaker one-step notion (no channel control)."""
    return _synthesize_kbar(net, 1, fallback_constant)


def synthesize_def3(net: BCNet, fallback_constant: bool = False) -> SynthesisOutcome:
    """Same search as :func:`synthesize_def1`; the closed loop is re-checked on
    the trajectory-level notion by the fixpoint oracle."""
    from .oracle import brute_def3

    out = _synthesize_kbar(net, 3, fallback_constant)
    if out.synthesized and net.m == net.p:
        report = brute_def3(closed_loop(net, out.K))
        if not report.holds:
            return SynthesisOutcome(Status.INCONCLUSIVE, 3, certificate=out.certificate,
                                    witness={"clause": "fixpoint", "counterexample": report.counterexample},
                                    reason="closed loop fails the trajectory check")
    return out


def _check_feedback(net: BCNet, K: LogicalMatrix):
    if K.shape != (net.num_inputs, net.num_states * 2 ** net.p):
        raise ValueError(f"K must be {net.num_inputs}x{net.num_states * 2 ** net.p}, "
                         f"got {K.shape[0]}x{K.shape[1]}")


def closed_loop(net: BCNet, K: LogicalMatrix) -> BCNet:
    """Closed loop with input ``v``: ``L_hat v x = L (K x v) x``."""
    _check_feedback(net, K)
    N, Pn = net.num_states, 2 ** net.p
    u = K.idx.reshape(N, Pn)                          # u[x, v]
    T = transition_table(net)                          # T[u, x]
    x = np.arange(N)[None, :]
    Lhat = T[u.T - 1, x]                               # [v, x]
    return BCNet(net.n, net.p, net.p, LogicalMatrix(N, Lhat.ravel()), net.H)


def closed_loop_by_formula(net: BCNet, K: LogicalMatrix) -> LogicalMatrix:
    """``L K W_[2^p, 2^n] (I_{2^p} (x) Phi_{2^n})`` through the generic product."""
    _check_feedback(net, K)
    N, Pn = net.num_states, 2 ** net.p
    I_phi = kron(identity(Pn), power_reducing_matrix(N))
    return stp_chain(net.L, K, swap_matrix(Pn, N), I_phi)


def decomposed_closed_loop(net: BCNet, K: LogicalMatrix) -> Optional[Decomposition]:
    loop = closed_loop(net, K)
    if not check_def1(loop):
        raise PreconditionError("closed loop is not one-step transition IO-decoupled")
    return _decompose(loop, net.p)
