"""Eigen-decomposition, power method, SVD and derived quantities."""

from dataclasses import dataclass, field

import numpy as np

from . import alpha_complex as ac
from .algebra import GTessarine, Tessarine, tess_inverse, tess_sqrt
from .errors import (DefectiveChannelError, NotHermitianError, NotPositiveDefiniteError,
                     SingularMatrixError, ValidationError)
from .matrix import (GTMat, TMat, _channel_name, _square, channels, from_channels_matrix,
                     hermitian_transpose, is_n_hermitian, join_matrix, modulus_vec, mul, scale,
                     split_matrix)


def _diag(values, params):
    """Square diagonal matrix from a ``(4, p)`` array of planes."""
    values = np.asarray(values)
    p = values.shape[1]
    P = np.zeros((4, p, p), dtype=values.dtype)
    P[:, np.arange(p), np.arange(p)] = values
    if np.iscomplexobj(P):
        return GTMat.from_planes(params, P)
    return TMat(params, P)


def _scalar(v):
    v = np.asarray(v)
    if np.iscomplexobj(v):
        return GTessarine.from_complex_array(v)
    return Tessarine.from_array(v)


@dataclass(frozen=True, eq=False)
class EigenDecomp:
    lambdas: list
    U: object
    U_inv_or_H: object
    pairing: tuple
    hermitian: bool = False

    def dominant(self):
        return self.lambdas[0]

    def as_tessarines(self, tol=1e-10):
        """Eigenvalues as plain Tessarines; raises if any eps-part is significant."""
        return [v.collapse(tol) if isinstance(v, GTessarine) else v for v in self.lambdas]

    def Lambda(self):
        planes = np.stack([np.asarray(_planes(v)) for v in self.lambdas], axis=1)
        return _diag(planes, self.U.params)

    def reconstruct(self):
        return mul(mul(self.U, self.Lambda()), self.U_inv_or_H)


def _planes(v):
    return v.to_complex_array() if isinstance(v, GTessarine) else v.to_array()


@dataclass(frozen=True, eq=False)
class SvdDecomp:
    U: TMat
    V: TMat
    sigmas: list
    perms: tuple
    Sigma: TMat = field(repr=False, default=None)

    def truncate(self, k):
        """Sum of the first ``k`` rank-one terms."""
        Uk = TMat(self.U.params, self.U.planes[:, :, :k])
        Vk = TMat(self.V.params, self.V.planes[:, :, :k])
        Sk = _diag(np.stack([s.to_array() for s in self.sigmas[:k]], axis=1), self.U.params)
        return mul(mul(Uk, Sk), hermitian_transpose(Vk, self.U.params.n))

    def reconstruct(self):
        return mul(mul(self.U, self.Sigma), hermitian_transpose(self.V, self.U.params.n))


# ---------------------------------------------------------------- eigen


def _split_perms(perms, params):
    if perms is None:
        return None, None
    perms = tuple(perms)
    if len(perms) != params.n_channels:
        raise ValidationError(f"expected {params.n_channels} channel permutations, got {len(perms)}")
    h = params.n_channels // 2
    return perms[:h], perms[h:]


def _eig(X, hermitian, perms):
    _square(X)
    ps, pd = _split_perms(perms, X.params)
    Xs, Xd = split_matrix(X)
    ls, Vs = ac.ca_eig(Xs, hermitian=hermitian, perms=ps)
    ld, Vd = ac.ca_eig(Xd, hermitian=hermitian, perms=pd)
    as_row = lambda M: ac.CAMat(M.alpha, M.re[None, :], M.im[None, :])
    lam = join_matrix(as_row(ls), as_row(ld), X.params)
    U = join_matrix(Vs, Vd, X.params)
    lambdas = [_scalar(lam.planes[:, 0, t]) for t in range(X.rows)]
    return lambdas, U, (Vs, Vd)


def eig(X, perms=None):
    lambdas, U, (Vs, Vd) = _eig(X, False, perms)
    inv = []
    for half, V in zip("sd", (Vs, Vd)):
        try:
            inv.append(ac.ca_inverse(V))
        except SingularMatrixError as exc:
            name = _channel_name(X.params, half, exc.channel)
            raise DefectiveChannelError(f"channel {name} has no eigenbasis", channel=name) from exc
    U_inv = join_matrix(inv[0], inv[1], X.params)
    return EigenDecomp(lambdas, U, U_inv, tuple(perms) if perms else (), False)


def eig_hermitian(X, perms=None):
    if not is_n_hermitian(X, X.params.n, tol=1e-10):
        raise NotHermitianError(f"matrix is not {X.params.n}-Hermitian")
    lambdas, U, _ = _eig(X, True, perms)
    return EigenDecomp(lambdas, U, hermitian_transpose(U, X.params.n),
                       tuple(perms) if perms else (), True)


def _channel_eigvalsh(X):
    return [np.linalg.eigvalsh(M) for M in channels(X)]


def is_positive_definite(X):
    if X.rows != X.cols or not is_n_hermitian(X, X.params.n, tol=1e-10):
        return False
    ws = _channel_eigvalsh(X)
    top = max(float(np.max(np.abs(w))) for w in ws)
    if top == 0:
        return False
    return all(bool(np.all(w > 1e-12 * top)) for w in ws)


def pd_sqrt(X):
    if not is_positive_definite(X):
        raise NotPositiveDefiniteError("matrix is not positive definite")
    ed = eig_hermitian(X)
    roots = np.stack([tess_sqrt(v, X.params).x1.to_array() for v in ed.lambdas], axis=1)
    return mul(mul(ed.U, _diag(roots, X.params)), ed.U_inv_or_H)


@dataclass(frozen=True, eq=False)
class PowerResult:
    eigenvalue: Tessarine
    vector: TMat
    iterations: int
    converged: bool
    history: list
    near_degenerate: bool


def power_method(X, x0, max_iter=1000, tol=1e-10):
    """Power iteration with the channelwise modulus as the normalizer.

    ``x0`` is normalized before the first step.  ``history[m]`` is the
    Rayleigh value after ``m + 1`` iterations.
    """
    _square(X)
    p = X.params
    if not is_n_hermitian(X, p.n, tol=1e-10):
        raise NotHermitianError(f"matrix is not {p.n}-Hermitian")
    if x0.shape != (X.rows, 1):
        raise ValidationError(f"seed must have shape ({X.rows}, 1), got {x0.shape}")
    x = scale(tess_inverse(modulus_vec(x0), p), x0)
    history = []
    prev = None
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        y = mul(X, x)
        x = scale(tess_inverse(modulus_vec(y), p), y)
        ray = mul(hermitian_transpose(x, p.n), mul(X, x)).entry(0, 0)
        history.append(ray)
        if prev is not None and np.max(np.abs(ray.to_array() - prev.to_array())) < tol:
            converged = True
            break
        prev = ray
    return PowerResult(history[-1] if history else Tessarine(), x, it, converged, history,
                       _near_degenerate(X))


def _near_degenerate(X, rel=1e-8):
    for w in _channel_eigvalsh(X):
        if w.size < 2:
            continue
        m = np.sort(np.abs(w))[::-1]
        if m[0] > 0 and m[0] - m[1] <= rel * m[0]:
            return True
    return False


# ---------------------------------------------------------------- SVD


def svd(X, perms=None):
    ps, pd = _split_perms(perms, X.params)
    Xs, Xd = split_matrix(X)
    Us, Ss, Vs = ac.ca_svd(Xs, ps)
    Ud, Sd, Vd = ac.ca_svd(Xd, pd)
    p = X.params
    U = join_matrix(Us, Ud, p)
    V = join_matrix(Vs, Vd, p)
    S = join_matrix(Ss, Sd, p)
    r = min(X.shape)
    sigmas = [S.entry(t, t) for t in range(r)]
    return SvdDecomp(U, V, sigmas, tuple(perms) if perms else (), S)


def singular_values(X):
    return svd(X).sigmas


def rank(X, rtol=1e-10):
    svals = [np.linalg.svd(M, compute_uv=False) for M in channels(X)]
    top = max((float(s.max()) for s in svals if s.size), default=0.0)
    if top == 0:
        return 0
    return max(int(np.sum(s > rtol * top)) for s in svals)


def rank_k_approx(X, k):
    r = rank(X)
    if not 1 <= k <= r:
        raise ValidationError(f"k must lie in [1, {r}], got {k}")
    return svd(X).truncate(k)


def pseudoinverse(X):
    p = X.params
    dec = svd(X)
    rows, cols = X.shape
    r = min(rows, cols)
    sig = channels(dec.Sigma)
    q = np.zeros((sig.shape[0], cols, rows), dtype=sig.dtype)
    for c in range(sig.shape[0]):
        s = sig[c, np.arange(r), np.arange(r)].real
        cut = max(rows, cols) * np.finfo(float).eps * (s.max() if s.size else 0.0)
        inv = np.where(s > cut, 1.0 / np.where(s > cut, s, 1.0), 0.0)
        q[c, np.arange(r), np.arange(r)] = inv
    Q = from_channels_matrix(q, p)
    return mul(mul(dec.V, Q), hermitian_transpose(dec.U, p.n))
