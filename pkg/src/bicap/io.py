"""JSON documents for capacities, bi-games and Möbius representations.

    {"n": 2, "kind": "bigame", "encoding": "sparse", "values": {"1|": 0.5, ...}}

Dense values follow ternary-index order (``bigame``, ``moebius``) or bit-mask
order (``capacity``).  Sparse values are keyed by ``"A|B"`` or ``"A"`` and
missing entries are zero.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .game import BiGame, Capacity, FormatError
from .lattice import BiSet, DomainError, format_players, index_tables, parse_players
from .moebius import MoebiusRep

KINDS = ("bigame", "capacity", "moebius")


def _reject_duplicates(pairs):
    out = {}
    for k, val in pairs:
        if k in out:
            raise FormatError(f"duplicate key {k!r}")
        out[k] = val
    return out


def _sparse_values(values: dict, kind: str, n: int) -> np.ndarray:
    out = np.zeros((1 << n) if kind == "capacity" else 3 ** n)
    seen = set()
    for key, val in values.items():
        try:
            slot = parse_players(key, n) if kind == "capacity" else BiSet.parse(key, n).index
        except DomainError as exc:
            raise FormatError(f"bad key {key!r}: {exc}") from exc
        if slot in seen:
            raise FormatError(f"key {key!r} repeats an earlier entry")
        seen.add(slot)
        out[slot] = _number(val, key)
    return out


def _number(val, key) -> float:
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise FormatError(f"value for {key!r} is not a number: {val!r}")
    return float(val)


def from_document(doc: dict) -> Capacity | BiGame | MoebiusRep:
    if not isinstance(doc, dict):
        raise FormatError("document must be a JSON object")
    for field in ("n", "kind", "values"):
        if field not in doc:
            raise FormatError(f"missing field {field!r}")
    n, kind = doc["n"], doc["kind"]
    if kind not in KINDS:
        raise FormatError(f"kind must be one of {KINDS}, got {kind!r}")
    if isinstance(n, bool) or not isinstance(n, int):
        raise FormatError(f"n must be an integer, got {n!r}")
    encoding = doc.get("encoding", "dense")
    values = doc["values"]
    try:
        if encoding == "dense":
            if not isinstance(values, list):
                raise FormatError("dense values must be an array")
            arr = np.array([_number(x, str(k)) for k, x in enumerate(values)])
        elif encoding == "sparse":
            if not isinstance(values, dict):
                raise FormatError("sparse values must be an object")
            arr = _sparse_values(values, kind, n)
        else:
            raise FormatError(f"encoding must be 'dense' or 'sparse', got {encoding!r}")
        if kind == "capacity":
            return Capacity(n, arr)
        if kind == "moebius":
            return MoebiusRep(n, arr)
        return BiGame(n, arr)
    except DomainError as exc:
        raise FormatError(str(exc)) from exc


def load(path) -> Capacity | BiGame | MoebiusRep:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text, object_pairs_hook=_reject_duplicates)
    except json.JSONDecodeError as exc:
        raise FormatError(f"malformed JSON in {path}: {exc}") from exc
    return from_document(doc)


def to_document(obj, encoding: str = "dense", tol: float = 0.0) -> dict:
    if isinstance(obj, Capacity):
        kind, vals = "capacity", obj.values
    elif isinstance(obj, MoebiusRep):
        kind, vals = "moebius", obj.coeffs
    elif isinstance(obj, BiGame):
        kind, vals = "bigame", obj.values
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    doc = {"n": obj.n, "kind": kind, "encoding": encoding}
    if encoding == "dense":
        doc["values"] = [float(x) for x in vals]
    elif encoding == "sparse":
        if kind == "capacity":
            keys = [format_players(m) for m in range(1 << obj.n)]
        else:
            pos, neg = index_tables(obj.n)
            keys = [f"{format_players(a)}|{format_players(b)}"
                    for a, b in zip(pos.tolist(), neg.tolist())]
        doc["values"] = {k: float(x) for k, x in zip(keys, vals) if abs(x) > tol}
    else:
        raise FormatError(f"unknown encoding {encoding!r}")
    return doc


def dumps(obj, encoding: str = "dense") -> str:
    return json.dumps(to_document(obj, encoding), indent=2)


def save(obj, path, encoding: str = "dense") -> None:
    Path(path).write_text(dumps(obj, encoding) + "\n")
