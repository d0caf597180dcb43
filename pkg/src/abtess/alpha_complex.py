"""Dense matrix kernels over (alpha)-complex numbers.

A matrix ``X = A + B i`` with ``i**2 = alpha`` is reduced to standard
matrices before calling a dense kernel:

* ``alpha < 0``: one complex matrix ``A + sqrt|alpha| B * 1j``.
* ``alpha > 0``: two real matrices ``A + sqrt(alpha) B`` and ``A - sqrt(alpha) B``.

The kernel results are mapped back by :func:`from_kernel`.  For ``alpha > 0``
a kernel may return complex matrices (square roots, eigenpairs of
non-symmetric splits); the imaginary part is then the eps-part of a
generalized value and ``re``/``im`` become complex arrays.
"""

from dataclasses import dataclass
import math
import warnings

import numpy as np
import scipy.linalg

from .errors import NoSquareRootError, SingularMatrixError, ValidationError

SINGULAR_COND = 1e15


@dataclass(frozen=True)
class CAMat:
    alpha: float
    re: np.ndarray
    im: np.ndarray

    def __post_init__(self):
        re = np.asarray(self.re)
        im = np.asarray(self.im)
        if re.shape != im.shape:
            raise ValidationError("re and im must have the same shape")
        if not (np.all(np.isfinite(re)) and np.all(np.isfinite(im))):
            raise ValidationError("CAMat entries must be finite")
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    @property
    def shape(self):
        return self.re.shape

    @property
    def rows(self):
        return self.re.shape[0]

    @property
    def cols(self):
        return self.re.shape[1]

    def __add__(self, other):
        return CAMat(self.alpha, self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return CAMat(self.alpha, self.re - other.re, self.im - other.im)

    def __matmul__(self, other):
        return CAMat(self.alpha,
                     self.re @ other.re + self.alpha * (self.im @ other.im),
                     self.re @ other.im + self.im @ other.re)

    def hermitian(self, theta):
        """The ``(theta, 1)`` map followed by transposition."""
        return CAMat(self.alpha, self.re.T, self.im.T / theta)

    @classmethod
    def identity(cls, alpha, n):
        return cls(alpha, np.eye(n), np.zeros((n, n)))


@dataclass(frozen=True)
class CALu:
    P: CAMat
    L: CAMat
    U: CAMat
    gammas: tuple


def kernel(X):
    """Standard-matrix representation: one complex or two real matrices."""
    s = math.sqrt(abs(X.alpha))
    if X.alpha < 0:
        return [X.re + 1j * s * X.im]
    return [X.re + s * X.im, X.re - s * X.im]


def from_kernel(parts, alpha):
    s = math.sqrt(abs(alpha))
    if alpha < 0:
        (M,) = parts
        return CAMat(alpha, M.real.copy(), M.imag / s)
    E, F = parts
    C = (E + F) / 2
    return CAMat(alpha, C, (E - C) / s)


def split_names(alpha):
    return ("",) if alpha < 0 else ("+", "-")


def _square(X):
    if X.re.ndim != 2 or X.rows != X.cols:
        raise ValidationError(f"square matrix required, got shape {X.shape}")


def _realify(M, tol=1e-13):
    if np.iscomplexobj(M):
        scale = max(1.0, float(np.max(np.abs(M)))) if M.size else 1.0
        if M.size == 0 or np.max(np.abs(M.imag)) <= tol * scale:
            return M.real.copy()
    return M


def _inv(M):
    """Inverse with a scale-aware singularity check."""
    try:
        inv = np.linalg.inv(M)
    except np.linalg.LinAlgError:
        return None
    if not np.all(np.isfinite(inv)):
        return None
    norm = np.linalg.norm(M, 1)
    if norm == 0 or norm * np.linalg.norm(inv, 1) > SINGULAR_COND:
        return None
    return inv


def ca_inverse(X):
    _square(X)
    out = []
    for name, M in zip(split_names(X.alpha), kernel(X)):
        inv = _inv(M)
        if inv is None:
            raise SingularMatrixError(f"split {name or 'dot'} is singular", channel=name)
        out.append(inv)
    return from_kernel(out, X.alpha)


def _sqrtm(M):
    if M.size == 0:
        return M.copy()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        try:
            S = scipy.linalg.sqrtm(M, disp=False)[0]
        except (np.linalg.LinAlgError, ValueError):
            return None
    if not np.all(np.isfinite(S)):
        return None
    scale = max(1.0, float(np.linalg.norm(M)))
    if np.linalg.norm(S @ S - M) > 1e-8 * scale:
        return None
    return S


def ca_sqrt(X):
    _square(X)
    out = []
    for name, M in zip(split_names(X.alpha), kernel(X)):
        S = _sqrtm(M)
        if S is None:
            raise NoSquareRootError(f"split {name or 'dot'} has no principal square root", channel=name)
        if X.alpha < 0:
            S = S.astype(complex)
        else:
            S = _realify(S)
        out.append(S)
    return from_kernel(out, X.alpha)


def lu_partial_pivot(M):
    """Doolittle LU with partial pivoting; ``M[perm] = L @ U``.

    The pivot is the first row attaining the largest modulus in the column.
    Returns ``(perm, L, U, sign)`` where ``sign`` is the permutation parity.
    """
    U = np.array(M, copy=True)
    n = U.shape[0]
    L = np.eye(n, dtype=U.dtype)
    perm = np.arange(n)
    sign = 1
    for k in range(n):
        piv = k + int(np.argmax(np.abs(U[k:, k])))
        if piv != k:
            U[[k, piv]] = U[[piv, k]]
            L[[k, piv], :k] = L[[piv, k], :k]
            perm[[k, piv]] = perm[[piv, k]]
            sign = -sign
        if U[k, k] != 0 and k + 1 < n:
            m = U[k + 1:, k] / U[k, k]
            L[k + 1:, k] = m
            U[k + 1:, k:] -= np.outer(m, U[k, k:])
            U[k + 1:, k] = 0
    return perm, L, U, sign


def ca_lu(X):
    _square(X)
    n = X.rows
    Ps, Ls, Us, gammas = [], [], [], []
    for M in kernel(X):
        perm, L, U, sign = lu_partial_pivot(M)
        Ps.append(np.eye(n)[perm].astype(M.dtype))
        Ls.append(L)
        Us.append(U)
        gammas.append(sign)
    return CALu(from_kernel(Ps, X.alpha), from_kernel(Ls, X.alpha),
                from_kernel(Us, X.alpha), tuple(gammas))


def sort_order(values):
    """Descending modulus, then descending real part, then original index."""
    values = np.asarray(values)
    idx = np.arange(values.size)
    return np.lexsort((idx, -values.real, -np.abs(values)))


def eig_sorted(M, hermitian=False):
    if hermitian:
        w, V = np.linalg.eigh(M)
    else:
        w, V = np.linalg.eig(M)
    order = sort_order(w)
    return w[order], V[:, order]


def _as_perm(perm, r):
    perm = np.asarray(perm, dtype=int)
    if perm.shape != (r,) or sorted(perm.tolist()) != list(range(r)):
        raise ValidationError(f"expected a permutation of range({r}), got {perm.tolist()}")
    return perm


def ca_eig(X, hermitian=False, perms=None):
    """Eigenvalues (shape ``(p,)``) and eigenvectors as CAMat values."""
    _square(X)
    parts = kernel(X)
    perms = _check_perms(perms, len(parts), X.rows)
    ws, Vs = [], []
    for M, perm in zip(parts, perms):
        w, V = eig_sorted(M, hermitian)
        if perm is not None:
            w, V = w[perm], V[:, perm]
        if X.alpha > 0:
            w, V = _realify(w), _realify(V)
        ws.append(w)
        Vs.append(V)
    if X.alpha < 0:
        ws = [w.astype(complex) for w in ws]
        Vs = [V.astype(complex) for V in Vs]
    elif any(np.iscomplexobj(a) for a in ws + Vs):
        ws = [w.astype(complex) for w in ws]
        Vs = [V.astype(complex) for V in Vs]
    return from_kernel(ws, X.alpha), from_kernel(Vs, X.alpha)


def _check_perms(perms, count, r):
    if perms is None:
        return [None] * count
    perms = list(perms)
    if len(perms) != count:
        raise ValidationError(f"expected {count} permutations, got {len(perms)}")
    return [None if q is None else _as_perm(q, r) for q in perms]


def ca_svd(X, perms=None):
    """Full SVD ``X = U S V^H`` with the regime's Hermitian transpose."""
    p, q = X.shape
    r = min(p, q)
    parts = kernel(X)
    perms = _check_perms(perms, len(parts), r)
    Us, Ss, Vs = [], [], []
    for M, perm in zip(parts, perms):
        U, s, Vh = np.linalg.svd(M, full_matrices=True)
        V = Vh.conj().T
        if perm is not None:
            U[:, :r] = U[:, perm]
            V[:, :r] = V[:, perm]
            s = s[perm]
        S = np.zeros((p, q), dtype=M.dtype)
        S[np.arange(r), np.arange(r)] = s
        Us.append(U)
        Ss.append(S)
        Vs.append(V)
    return from_kernel(Us, X.alpha), from_kernel(Ss, X.alpha), from_kernel(Vs, X.alpha)
