"""JSON formats for functions, representations and groupoid exports.

Complex numbers are written as ``[re, im]`` pairs and matrices row-major.
Floats are rounded to 12 significant digits so output is reproducible
across BLAS builds.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import CarrierError, ParseError, StructuralError
from .groupoid import GroupoidRep
from .restricted import CFunction, MatrixRep

DIGITS = 12


def _num(v):
    v = float(v)
    if v == 0.0 or not np.isfinite(v):
        return 0.0 if v == 0.0 else v
    return float(f"{v:.{DIGITS}g}")


def complex_pairs(values):
    return [[_num(z.real), _num(z.imag)] for z in np.asarray(values, dtype=complex).ravel()]


def matrix_pairs(m):
    m = np.asarray(m, dtype=complex)
    return [complex_pairs(row) for row in m]


def _pairs_to_array(pairs, where):
    try:
        arr = np.asarray(pairs, dtype=float)
    except (TypeError, ValueError):
        raise ParseError("entries must be [re, im] pairs of numbers", field=where) from None
    if arr.ndim < 1 or arr.shape[-1] != 2:
        raise ParseError("entries must be [re, im] pairs", field=where)
    return arr[..., 0] + 1j * arr[..., 1]


def render_function(f):
    return json.dumps({"carrier": f.carrier, "values": complex_pairs(f.values)}) + "\n"


def parse_function(document, S=None):
    try:
        obj = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    if isinstance(obj, list):  # bare value list
        obj = {"values": obj}
    if not isinstance(obj, dict) or "values" not in obj:
        raise ParseError("missing required field", field="values")
    values = _pairs_to_array(obj["values"], "values")
    if values.ndim != 1:
        raise ParseError("values must be a flat list of pairs", field="values")
    carrier = obj.get("carrier", "")
    if S is not None:
        if len(values) != S.n:
            raise StructuralError(f"function has {len(values)} values, semigroup has {S.n} elements")
        if carrier and S.name and carrier != S.name:
            raise CarrierError(f"function lives on {carrier!r}, not {S.name!r}")
        carrier = S.name
    return CFunction(values, carrier)


def render_rep(pi):
    return json.dumps({"carrier": pi.carrier, "dim": pi.dim,
                       "matrices": [matrix_pairs(m) for m in pi.mats]}) + "\n"


def parse_rep(document):
    obj = json.loads(document)
    mats = _pairs_to_array(obj["matrices"], "matrices")
    dim = int(obj["dim"])
    if mats.size == 0:
        mats = np.zeros((0, dim, dim))
    if mats.ndim != 3 or mats.shape[1:] != (dim, dim):
        raise StructuralError(f"matrices must be {dim}x{dim}")
    return MatrixRep(mats, obj.get("carrier", ""))


def render_groupoid_rep(rep):
    return json.dumps({
        "units": [int(u) for u in rep.units],
        "fiber_dims": {str(u): int(rep.fiber_dims[u]) for u in rep.units},
        "dim": rep.total_dim,
        "matrices": [matrix_pairs(m) for m in rep.mats],
    }) + "\n"


def parse_groupoid_rep(document):
    obj = json.loads(document)
    units = tuple(int(u) for u in obj["units"])
    dims = {int(k): int(v) for k, v in obj["fiber_dims"].items()}
    mats = []
    for i, m in enumerate(obj["matrices"]):
        if not m or not m[0]:  # a fiber of dimension zero on one side
            mats.append(np.zeros((len(m), 0), dtype=complex))
        else:
            mats.append(_pairs_to_array(m, f"matrices[{i}]"))
    return GroupoidRep(units, dims, tuple(mats))


def groupoid_document(G):
    xs, ys = np.nonzero(G.defined)
    return {
        "name": G.name,
        "elements": list(range(G.n)),
        "units": [int(u) for u in G.units],
        "arrows": [[int(x), int(y), int(G.prod[x, y])] for x, y in zip(xs, ys)],
        "inverse": [int(v) for v in G.inv],
    }


def render_groupoid(G):
    return json.dumps(groupoid_document(G)) + "\n"
