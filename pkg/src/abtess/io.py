"""JSON matrix documents.

A document holds ``alpha``, ``beta``, ``rows``, ``cols`` and the component
planes ``a, b, c, d`` (coefficients of 1, i, j, k) as nested row-major
lists.  A generalized matrix adds ``e, f, g, h``: the eps-parts of the same
four components.  Floats are written with ``repr`` so they round-trip
exactly.
"""

import json
import math

import numpy as np

from .algebra import Params
from .errors import ParseError, ValidationError
from .matrix import GTMat, TMat

PLANES = ("a", "b", "c", "d")
EPS_PLANES = ("e", "f", "g", "h")


def matrix_to_doc(X):
    p = X.params
    doc = {"alpha": p.alpha, "beta": p.beta, "rows": X.rows, "cols": X.cols}
    if isinstance(X, GTMat):
        real, eps = X.x1.planes, X.x2.planes
    else:
        real, eps = X.planes, None
    for key, plane in zip(PLANES, real):
        doc[key] = plane.tolist()
    if eps is not None:
        for key, plane in zip(EPS_PLANES, eps):
            doc[key] = plane.tolist()
    return doc


def _plane(doc, key, rows, cols):
    if key not in doc:
        raise ParseError(f"missing component plane {key!r}")
    try:
        arr = np.array(doc[key], dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"component plane {key!r} is not numeric: {exc}") from None
    if arr.shape != (rows, cols):
        raise ValidationError(f"plane {key!r} has shape {arr.shape}, expected {(rows, cols)}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"plane {key!r} has non-finite entries")
    return arr


def _int(doc, key):
    if key not in doc:
        raise ParseError(f"missing key {key!r}")
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, int) or v < 1:
        raise ValidationError(f"{key!r} must be a positive integer, got {v!r}")
    return v


def _num(doc, key):
    if key not in doc:
        raise ParseError(f"missing key {key!r}")
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ValidationError(f"{key!r} must be a finite number, got {v!r}")
    return float(v)


def doc_to_matrix(doc):
    if not isinstance(doc, dict):
        raise ParseError("matrix document must be an object")
    params = Params(_num(doc, "alpha"), _num(doc, "beta"))
    rows, cols = _int(doc, "rows"), _int(doc, "cols")
    real = np.stack([_plane(doc, k, rows, cols) for k in PLANES])
    present = [k for k in EPS_PLANES if k in doc]
    if not present:
        return TMat(params, real)
    if len(present) != 4:
        missing = [k for k in EPS_PLANES if k not in doc]
        raise ParseError(f"incomplete eps quartet; missing component plane {missing[0]!r}")
    eps = np.stack([_plane(doc, k, rows, cols) for k in EPS_PLANES])
    return GTMat(params, TMat(params, real), TMat(params, eps))


def loads_matrix(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return doc_to_matrix(doc)


def dumps_matrix(X):
    return json.dumps(matrix_to_doc(X), allow_nan=False) + "\n"


def load_matrix(path):
    with open(path, encoding="utf-8") as fh:
        return loads_matrix(fh.read())


def save_matrix(X, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_matrix(X))
