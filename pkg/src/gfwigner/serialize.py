"""JSON and CSV formats for fields, matrices, states, grids and tomograms.

Floats are rounded to 12 decimals (negative zero folded to zero) so that
repeated runs write byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Any, Mapping

import numpy as np

from .errors import DimensionMismatch, FieldError
from .field import FieldSpec, Ordering, default_ordering, make_basis, make_field, ordering
from .operators import Ket, Operator
from .phase_space import WignerGrid

DECIMALS = 12


def rnd(x: float) -> float:
    return round(float(x), DECIMALS) + 0.0


def fmt(x: float) -> str:
    return f"{rnd(x):.{DECIMALS}f}"


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def write_text(path: str | Path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path


# -- field and ordering --------------------------------------------------------

def ordering_from_json(spec: FieldSpec, obj: Mapping | None) -> Ordering:
    if not obj:
        return default_ordering(spec)
    strategy = obj.get("strategy", "radix")
    basis = make_basis(spec, obj["basis"]) if obj.get("basis") else None
    if strategy == "radix" and basis is None and spec.n > 1:
        from .field import polynomial_basis

        basis = polynomial_basis(spec)
    return ordering(spec, strategy, basis=basis, primitive=spec.element(spec.primitive_code))


def field_to_json(spec: FieldSpec, order: Ordering | None = None) -> dict:
    obj = spec.to_json()
    obj["ordering"] = (order or default_ordering(spec)).to_json()
    obj["ordering"].pop("elements", None)
    return obj


def field_from_json(obj: Mapping) -> tuple[FieldSpec, Ordering]:
    try:
        p, n = int(obj["p"]), int(obj.get("n", 1))
    except (KeyError, TypeError, ValueError) as exc:
        raise FieldError(f"field spec needs integer p and n: {exc}") from exc
    spec = make_field(p, n, obj.get("poly"))
    return spec, ordering_from_json(spec, obj.get("ordering"))


# -- matrices and states ---------------------------------------------------------

def matrix_to_json(op: Operator) -> dict:
    m = op.matrix
    return {
        "dim": op.dim,
        "ordering": op.ordering.to_json(),
        "re": [[rnd(x) for x in row] for row in m.real],
        "im": [[rnd(x) for x in row] for row in m.imag],
    }


def matrix_from_json(spec: FieldSpec, obj: Mapping) -> Operator:
    order = ordering_from_json(spec, obj.get("ordering"))
    m = np.asarray(obj["re"], dtype=float) + 1j * np.asarray(obj["im"], dtype=float)
    if m.shape != (spec.d, spec.d) or obj.get("dim", spec.d) != spec.d:
        raise DimensionMismatch(f"expected a {spec.d}x{spec.d} matrix")
    return Operator(m, order)


def matrix_to_csv(op: Operator) -> str:
    """Row-major; each cell contributes a ``re,im`` pair."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in op.matrix:
        w.writerow([t for z in row for t in (fmt(z.real), fmt(z.imag))])
    return buf.getvalue()


def ket_to_json(k: Ket) -> dict:
    return {
        "dim": k.vector.size,
        "ordering": k.ordering.to_json(),
        "re": [rnd(x) for x in k.vector.real],
        "im": [rnd(x) for x in k.vector.imag],
    }


def ket_from_json(spec: FieldSpec, obj: Mapping) -> Ket:
    order = ordering_from_json(spec, obj.get("ordering"))
    im = obj.get("im", [0.0] * len(obj["re"]))
    v = np.asarray(obj["re"], dtype=float) + 1j * np.asarray(im, dtype=float)
    if v.shape != (spec.d,):
        raise DimensionMismatch(f"expected {spec.d} amplitudes, got {v.size}")
    return Ket(v, order)


# -- Wigner grids ------------------------------------------------------------------

def wigner_to_csv(w: WignerGrid) -> str:
    """Header of alpha labels, then one row per beta (label first)."""
    labels = w.ordering.labels
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["beta\\alpha"] + labels)
    for j, beta in enumerate(labels):
        out.writerow([beta] + [fmt(w.values[i, j]) for i in range(len(labels))])
    return buf.getvalue()


def wigner_from_csv(text: str, spec: FieldSpec) -> np.ndarray:
    """Grid in code order ``W[alpha, beta]`` read back from :func:`wigner_to_csv`."""
    rows = list(csv.reader(io.StringIO(text)))
    alphas = [spec.code(a) for a in rows[0][1:]]
    w = np.zeros((spec.d, spec.d))
    for row in rows[1:]:
        b = spec.code(row[0])
        for a, v in zip(alphas, row[1:]):
            w[a, b] = float(v)
    return w


def wigner_to_json(w: WignerGrid) -> dict:
    p_marg, q_marg = w.marginals()
    obj = {
        "field": w.spec.to_json(),
        "ordering": w.ordering.to_json(),
        "rotations": w.rot.to_json() if w.rot is not None else None,
        "alpha": w.ordering.labels,
        "beta": w.ordering.labels,
        "values": [[rnd(w.values[i, j]) for i in range(w.spec.d)] for j in range(w.spec.d)],
        "marginals": {"alpha": [rnd(x) for x in p_marg], "beta": [rnd(x) for x in q_marg]},
        "imag_max": rnd(w.imag_max),
    }
    return obj


def line_sums_to_csv(w: WignerGrid) -> str:
    """One row per striation (slope label or ``inf``), columns intercepts."""
    s = w.spec
    sums = w.line_sums()
    labels = [s.label(c) for c in range(s.d)]
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["slope\\intercept"] + labels)
    for i, row in enumerate(sums):
        out.writerow([labels[i] if i < s.d else "inf"] + [fmt(x) for x in row])
    return buf.getvalue()


__all__ = [
    "DECIMALS",
    "rnd",
    "fmt",
    "dumps",
    "write_text",
    "ordering_from_json",
    "field_to_json",
    "field_from_json",
    "matrix_to_json",
    "matrix_from_json",
    "matrix_to_csv",
    "ket_to_json",
    "ket_from_json",
    "wigner_to_csv",
    "wigner_from_csv",
    "wigner_to_json",
    "line_sums_to_csv",
]
