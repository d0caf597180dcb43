"""Input coercion shared by the estimator wrappers."""

import numpy as np

from .algebra import Params
from .errors import ValidationError
from .matrix import GTMat, TMat


def check_params(alpha, beta):
    return Params(alpha, beta)


def check_tmat(X, params, name="X"):
    """Coerce ``X`` to a TMat over ``params``.

    Accepts a TMat (parameters must match), an array of planes with shape
    ``(4, rows, cols)``, or a real 2-D array (embedded with zero imaginary
    parts).
    """
    if isinstance(X, GTMat):
        X = X.collapse()
    if isinstance(X, TMat):
        if X.params != params:
            raise ValidationError(f"{name} has parameters {X.params}, expected {params}")
        return X
    arr = np.asarray(X, dtype=float)
    if arr.ndim == 2:
        planes = np.zeros((4,) + arr.shape)
        planes[0] = arr
        return TMat(params, planes)
    if arr.ndim == 3 and arr.shape[0] == 4:
        return TMat(params, arr)
    raise ValidationError(f"{name} must be a TMat, a (4, rows, cols) array or a 2-D array; got shape {arr.shape}")


def check_column(y, params, rows, name="y"):
    y = check_tmat(np.asarray(y, dtype=float)[..., None] if _is_flat(y) else y, params, name)
    if y.shape != (rows, 1):
        raise ValidationError(f"{name} must have shape ({rows}, 1), got {y.shape}")
    return y


def _is_flat(y):
    if isinstance(y, (TMat, GTMat)):
        return False
    arr = np.asarray(y)
    return arr.ndim == 1 or (arr.ndim == 2 and arr.shape[0] == 4)
