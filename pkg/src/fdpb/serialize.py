"""JSON wire formats.

Matrices are ``{"dim": n, "re": [[...]], "im": [[...]]}`` (row-major, both
parts always present) and vectors are ``{"re": [...], "im": [...]}``.
Floats are written with ``repr`` precision, so reading back reproduces every
entry exactly.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .algebra import FdpbRep
from .chain import BiorthogonalSystem, Label
from .metric import HermitianSystem


class FormatError(ValueError):
    """Malformed JSON artifact."""


def _floats(x) -> list:
    return np.asarray(x, dtype=float).tolist()


def matrix_to_json(m) -> dict:
    m = np.asarray(m, dtype=np.complex128)
    return {"dim": int(m.shape[0]), "re": _floats(m.real), "im": _floats(m.imag)}


def matrix_from_json(obj: Any) -> np.ndarray:
    try:
        dim = obj["dim"]
        re = np.array(obj["re"], dtype=float)
        im = np.array(obj["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad matrix object: {exc}") from exc
    if not isinstance(dim, int) or dim < 1:
        raise FormatError(f"bad matrix dim {dim!r}")
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise FormatError(f"matrix parts must be {dim}x{dim}, got {re.shape} and {im.shape}")
    m = re + 1j * im
    if not np.all(np.isfinite(m)):
        raise FormatError("matrix has non-finite entries")
    return m


def vector_to_json(v) -> dict:
    v = np.asarray(v, dtype=np.complex128)
    return {"re": _floats(v.real), "im": _floats(v.imag)}


def vector_from_json(obj: Any, dim: int | None = None) -> np.ndarray:
    try:
        re = np.array(obj["re"], dtype=float)
        im = np.array(obj["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad vector object: {exc}") from exc
    if re.ndim != 1 or re.shape != im.shape or (dim is not None and re.shape[0] != dim):
        raise FormatError(f"bad vector shape {re.shape} / {im.shape}")
    v = re + 1j * im
    if not np.all(np.isfinite(v)):
        raise FormatError("vector has non-finite entries")
    return v


def rep_to_json(rep: FdpbRep, report: dict | None = None) -> dict:
    meta = {
        "generator": rep.meta.get("generator", "custom"),
        "params": rep.meta.get("params", {}),
        "seed": rep.meta.get("seed"),
    }
    obj = {
        "n": rep.n,
        "a": matrix_to_json(rep.a),
        "b": matrix_to_json(rep.b),
        "k": matrix_to_json(rep.k),
        "meta": meta,
    }
    if report is not None:
        obj["validation"] = report
    return obj


def rep_from_json(obj: Any) -> FdpbRep:
    if not isinstance(obj, dict):
        raise FormatError("representation must be a JSON object")
    try:
        n = obj["n"]
        mats = [matrix_from_json(obj[key]) for key in ("a", "b", "k")]
    except KeyError as exc:
        raise FormatError(f"representation lacks field {exc}") from exc
    if not isinstance(n, int) or n < 2:
        raise FormatError(f"bad n {n!r}")
    if any(m.shape != (n, n) for m in mats):
        raise FormatError(f"matrices must be {n}x{n}")
    meta = obj.get("meta") or {}
    if not isinstance(meta, dict):
        raise FormatError("meta must be an object")
    return FdpbRep(n, *mats, dict(meta))


def system_to_json(sys: BiorthogonalSystem) -> dict:
    return {
        "n": sys.n,
        "labels": [{"h2": lab.h2, "k": lab.k} for lab in sys.labels],
        "phis": [vector_to_json(v) for v in sys.phis],
        "psis": [vector_to_json(v) for v in sys.psis],
        "nus": _floats(sys.nus),
        "mus": _floats(sys.mus),
    }


def system_from_json(obj: Any) -> BiorthogonalSystem:
    try:
        n = obj["n"]
        labels = tuple(Label(int(lab["h2"]), int(lab["k"])) for lab in obj["labels"])
        phis = [vector_from_json(v, n) for v in obj["phis"]]
        psis = [vector_from_json(v, n) for v in obj["psis"]]
        return BiorthogonalSystem(n, labels, np.array(phis), np.array(psis), obj["nus"], obj["mus"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad system object: {exc}") from exc


def hermitian_system_to_json(hs: HermitianSystem) -> dict:
    return {
        "n": hs.n,
        "c": matrix_to_json(hs.c),
        "K": matrix_to_json(hs.bigK),
        "e": [vector_to_json(v) for v in hs.e_basis],
        "labels": [{"h2": lab.h2, "k": lab.k} for lab in hs.labels],
        "H0": matrix_to_json(hs.h0),
    }


def hermitian_system_from_json(obj: Any) -> HermitianSystem:
    try:
        n = obj["n"]
        c = matrix_from_json(obj["c"])
        bigK = matrix_from_json(obj["K"])
        e = np.array([vector_from_json(v, n) for v in obj["e"]])
        labels = tuple(Label(int(lab["h2"]), int(lab["k"])) for lab in obj["labels"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad hermitian system object: {exc}") from exc
    return HermitianSystem(n, c, bigK, labels, e)


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def write_json(obj: dict, path: str | Path) -> None:
    Path(path).write_text(dumps(obj))


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: malformed JSON ({exc})") from exc
