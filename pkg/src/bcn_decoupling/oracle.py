"""Brute-force deciders that enumerate the decoupling definitions directly.

Nothing here uses the Xi or auxiliary-matrix constructions; the checks work
on raw successor tables so they can referee those constructions.
"""

from __future__ import annotations

import itertools
import os
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .bcn import BCNet, input_bit, simulate, step, transition_table
from .stp import LogicalMatrix, khatri_rao_chain

__all__ = [
    "OracleReport",
    "OneStepCounterexample",
    "TrajectoryCounterexample",
    "BudgetExceeded",
    "brute_def1",
    "brute_def2",
    "brute_def3",
    "brute_check",
    "replay",
    "exhaustive_feedback_search",
    "output_reachability",
    "default_budget",
]

BUDGET_ENV = "BCN_ORACLE_BUDGET"
DEFAULT_BUDGET = 1 << 16


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OneStepCounterexample:
    channel: int
    x: int
    x_hat: int
    u: int
    u_hat: int


@dataclass(frozen=True)
class TrajectoryCounterexample:
    channel: int
    x0: int
    inputs: tuple
    inputs_hat: tuple

    @property
    def divergence_time(self) -> int:
        return len(self.inputs)


Counterexample = Union[OneStepCounterexample, TrajectoryCounterexample]


@dataclass(frozen=True)
class OracleReport:
    holds: bool
    definition: int
    counterexample: Optional[Counterexample] = None

    def __bool__(self):
        return self.holds


def _require_square(net: BCNet):
    if net.m != net.p:
        raise ValueError(f"decoupling needs m = p, got m={net.m}, p={net.p}")


def _same_channel(net: BCNet, i: int) -> np.ndarray:
    bits = input_bit(np.arange(1, net.num_inputs + 1), i, net.m)
    return bits[:, None] == bits[None, :]


def _one_step(net: BCNet, definition: int) -> OracleReport:
    _require_square(net)
    T = transition_table(net)
    for i in range(1, net.m + 1):
        H = net.H[i - 1].idx
        Y = H[T - 1]                                   # y_i(t+1)[u, x]
        same_u = _same_channel(net, i)[:, :, None]
        for x in range(net.num_states):
            partners = np.flatnonzero(H == H[x])       # includes x itself
            same_y = Y[:, x][:, None, None] == Y[:, partners][None, :, :]
            if definition == 2:
                bad = same_y != same_u
            else:
                bad = same_u & ~same_y
            if bad.any():
                u, uh, k = np.argwhere(bad)[0]
                cx = OneStepCounterexample(i, x + 1, int(partners[k]) + 1, int(u) + 1, int(uh) + 1)
                return OracleReport(False, definition, cx)
    return OracleReport(True, definition)


def brute_def2(net: BCNet) -> OracleReport:
    """Equal ``y_i(t)``: ``y_i(t+1)`` agree exactly when ``u_i`` agree."""
    return _one_step(net, 2)


def brute_def1(net: BCNet) -> OracleReport:
    """Equal ``y_i(t)`` and equal ``u_i``: ``y_i(t+1)`` agree."""
    return _one_step(net, 1)


def _refine(net: BCNet, i: int):
    """Greatest fixpoint of output-equivalent pairs closed under matched inputs.

    Returns the surviving relation, per-pair witness inputs for removed pairs,
    and the number of refinement rounds.
    """
    T = transition_table(net) - 1
    H = net.H[i - 1].idx
    R = H[:, None] == H[None, :]
    wit_u = np.full(R.shape, -1, dtype=np.int64)
    wit_uh = np.full(R.shape, -1, dtype=np.int64)
    matched = np.argwhere(_same_channel(net, i))
    rounds = 0
    while True:
        removed = np.zeros_like(R)
        for u, uh in matched:
            leaves = R & ~R[T[u][:, None], T[uh][None, :]] & ~removed
            wit_u[leaves] = u
            wit_uh[leaves] = uh
            removed |= leaves
        if not removed.any():
            return R, wit_u, wit_uh, rounds
        R = R & ~removed
        rounds += 1


def brute_def3(net: BCNet) -> OracleReport:
    """Trajectory-level decoupling: inputs matching on channel ``i`` forever
    give identical ``y_i`` sequences from every initial state."""
    _require_square(net)
    T = transition_table(net) - 1
    for i in range(1, net.m + 1):
        R, wu, wuh, _ = _refine(net, i)
        diag = np.flatnonzero(~np.diag(R))
        if diag.size == 0:
            continue
        x0 = int(diag[0])
        H = net.H[i - 1].idx
        a = b = x0
        us, uhs = [], []
        while H[a] == H[b]:
            u, uh = int(wu[a, b]), int(wuh[a, b])
            us.append(u + 1)
            uhs.append(uh + 1)
            a, b = int(T[u, a]), int(T[uh, b])
        cx = TrajectoryCounterexample(i, x0 + 1, tuple(us), tuple(uhs))
        return OracleReport(False, 3, cx)
    return OracleReport(True, 3)


_CHECKS = {1: brute_def1, 2: brute_def2, 3: brute_def3}


def brute_check(net: BCNet, definition: int) -> OracleReport:
    return _CHECKS[definition](net)


def replay(net: BCNet, report: OracleReport) -> bool:
    """True when the report's counterexample really violates its definition."""
    cx = report.counterexample
    if cx is None:
        return False
    i = cx.channel
    H = net.H[i - 1]
    if isinstance(cx, OneStepCounterexample):
        if H.column(cx.x) != H.column(cx.x_hat):
            return False
        y = H.column(step(net, cx.u, cx.x).index)
        yh = H.column(step(net, cx.u_hat, cx.x_hat).index)
        same_u = int(input_bit(cx.u, i, net.m)) == int(input_bit(cx.u_hat, i, net.m))
        if report.definition == 2:
            return (y == yh) != same_u
        return same_u and y != yh
    if any(int(input_bit(u, i, net.m)) != int(input_bit(uh, i, net.m))
           for u, uh in zip(cx.inputs, cx.inputs_hat)):
        return False
    ya = simulate(net, cx.x0, cx.inputs).outputs
    yb = simulate(net, cx.x0, cx.inputs_hat).outputs
    t = cx.divergence_time
    return ya[t][i - 1] != yb[t][i - 1] and all(ya[s][i - 1] == yb[s][i - 1] for s in range(t))


def default_budget() -> int:
    return int(os.environ.get(BUDGET_ENV, DEFAULT_BUDGET))


def exhaustive_feedback_search(net: BCNet, definition: int, budget: Optional[int] = None,
                               candidates: Optional[Sequence[Iterable[int]]] = None
                               ) -> Optional[LogicalMatrix]:
    """First feedback matrix (lexicographic in its column indices) whose
    closed loop passes the brute check for ``definition``.

    ``candidates[c]`` optionally restricts the plant inputs tried in column
    ``c``.  At most ``budget`` matrices are examined; running out before the
    space is exhausted raises :class:`BudgetExceeded`.  ``None`` means the
    whole space was searched without success.
    """
    from .feedback import closed_loop

    budget = default_budget() if budget is None else budget
    width = net.num_states * 2 ** net.p
    choices = [range(1, net.num_inputs + 1)] * width if candidates is None else [list(c) for c in candidates]
    if len(choices) != width:
        raise ValueError(f"need {width} candidate columns, got {len(choices)}")
    check = _CHECKS[definition]
    for tried, cols in enumerate(itertools.product(*choices)):
        if tried >= budget:
            raise BudgetExceeded(f"feedback search stopped after {budget} candidates")
        K = LogicalMatrix(net.num_inputs, cols)
        if check(closed_loop(net, K)):
            return K
    return None


def output_reachability(net: BCNet) -> bool:
    """Every joint output value is reachable from every initial state."""
    T = transition_table(net) - 1
    joint = khatri_rao_chain(net.H).idx - 1
    targets = 2 ** net.p
    succ = [np.unique(T[:, x]) for x in range(net.num_states)]
    for x0 in range(net.num_states):
        seen = np.zeros(net.num_states, dtype=bool)
        seen[x0] = True
        queue = deque([x0])
        while queue:
            x = queue.popleft()
            for y in succ[x]:
                if not seen[y]:
                    seen[y] = True
                    queue.append(y)
        if np.unique(joint[seen]).size != targets:
            return False
    return True
