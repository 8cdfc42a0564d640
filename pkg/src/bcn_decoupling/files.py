"""JSON network files, feedback files and report encoding.

A network file holds ``n``, ``m``, ``p`` and exactly one of

* expressions: ``updates`` (n strings) and ``outputs`` (p strings), or
* algebraic form: ``L`` (2^(m+n) indices into Delta_{2^n}) and ``H``
  (p lists of 2^n indices into Delta_2).

All indices are 1-based, as in ``delta_8[3 4 1 2 ...]``.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any, Union

import numpy as np

from .bcn import BCNet
from .logic import NetworkDefinition, build_algebraic_form
from .stp import LogicalMatrix

__all__ = [
    "DataError",
    "read_document",
    "load_network",
    "parse_network",
    "network_to_dict",
    "load_feedback",
    "feedback_to_dict",
    "matrix_to_json",
    "matrix_from_json",
    "dumps",
]


class DataError(ValueError):
    """Malformed input document."""


def read_document(path: Union[str, Path]) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DataError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    if not isinstance(doc, dict):
        raise DataError(f"{path}: expected a JSON object")
    return doc


def _dims(doc: dict) -> tuple[int, int, int]:
    try:
        n, m, p = (doc[k] for k in ("n", "m", "p"))
    except KeyError as exc:
        raise DataError(f"missing field {exc.args[0]!r}") from None
    for name, v in zip("nmp", (n, m, p)):
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise DataError(f"{name} must be a positive integer")
    return n, m, p


def _index_list(value: Any, length: int, upper: int, what: str) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise DataError(f"{what} must be a list of integers")
    if len(value) != length:
        raise DataError(f"{what} must have {length} entries, got {len(value)}")
    bad = [v for v in value if not 1 <= v <= upper]
    if bad:
        raise DataError(f"{what} entries must lie in [1, {upper}], found {bad[0]}")
    return value


def is_expression_form(doc: dict) -> bool:
    has_expr = "updates" in doc or "outputs" in doc
    has_alg = "L" in doc or "H" in doc
    if has_expr and has_alg:
        raise DataError("network file mixes expression and algebraic forms")
    if not (has_expr or has_alg):
        raise DataError("network file needs either updates/outputs or L/H")
    return has_expr


def parse_network(doc: dict) -> BCNet:
    n, m, p = _dims(doc)
    if is_expression_form(doc):
        updates, outs = doc.get("updates"), doc.get("outputs")
        if not isinstance(updates, list) or not isinstance(outs, list):
            raise DataError("updates and outputs must be lists of strings")
        try:
            return build_algebraic_form(NetworkDefinition(n, m, p, tuple(updates), tuple(outs)))
        except ValueError as exc:
            raise DataError(str(exc)) from exc
    N = 2 ** n
    L = _index_list(doc.get("L"), 2 ** (m + n), N, "L")
    H = doc.get("H")
    if not isinstance(H, list) or len(H) != p:
        raise DataError(f"H must be a list of {p} index lists")
    Hs = [LogicalMatrix(2, _index_list(h, N, 2, f"H[{j}]")) for j, h in enumerate(H, 1)]
    return BCNet(n, m, p, LogicalMatrix(N, L), Hs)


def load_network(path: Union[str, Path]) -> BCNet:
    return parse_network(read_document(path))


def network_to_dict(net: BCNet) -> dict:
    return {"n": net.n, "m": net.m, "p": net.p,
            "L": net.L.to_list(), "H": [H.to_list() for H in net.H]}


def load_feedback(path: Union[str, Path], net: BCNet) -> LogicalMatrix:
    doc = read_document(path)
    width = net.num_states * 2 ** net.p
    K = doc.get("K")
    if isinstance(K, dict):
        K = K.get("indices")
    return LogicalMatrix(net.num_inputs, _index_list(K, width, net.num_inputs, "K"))


def feedback_to_dict(net: BCNet, K: LogicalMatrix) -> dict:
    return {"n": net.n, "m": net.m, "p": net.p, "K": K.to_list()}


def matrix_to_json(M) -> Any:
    """Logical matrices as ``{"rows", "indices"}``; Boolean arrays as nested lists."""
    if isinstance(M, LogicalMatrix):
        return {"rows": M.rows, "indices": M.to_list(), "delta": repr(M)}
    return np.asarray(M).astype(int).tolist()


def matrix_from_json(obj: dict) -> LogicalMatrix:
    return LogicalMatrix(obj["rows"], obj["indices"])


_FLAT = re.compile(r"\[\s*-?\d+(?:,\s*-?\d+)*\s*\]")


def dumps(doc: dict) -> str:
    """Indented JSON with integer arrays kept on one line."""
    text = json.dumps(doc, indent=2)
    return _FLAT.sub(lambda mt: json.dumps(json.loads(mt.group(0))), text) + "\n"
