"""Least-squares projections and the sequential Toeplitz solver."""

from dataclasses import dataclass

import numpy as np

from .algebra import Tessarine, mul_planes, tess_inverse
from .errors import NotToeplitzError, ValidationError, ZeroDivisorError
from .matrix import TMat, hermitian_transpose, inverse, is_n_hermitian, mul
from .spectral import pseudoinverse


@dataclass(frozen=True, eq=False)
class LsSolution:
    h: TMat
    y_hat: TMat
    eps: float


def _residual(X, y, h):
    n = X.params.n
    y_hat = mul(X, h)
    r = mul(hermitian_transpose(y, n), y - y_hat).entry(0, 0)
    return LsSolution(h, y_hat, r.a)


def _check_system(X, y):
    if y.shape != (X.rows, 1):
        raise ValidationError(f"y must have shape ({X.rows}, 1), got {y.shape}")


def lstsq_normal(X, y):
    """Solve the normal equations ``X^H X h = X^H y``."""
    _check_system(X, y)
    XH = hermitian_transpose(X, X.params.n)
    h = mul(inverse(mul(XH, X)), mul(XH, y))
    return _residual(X, y, h)


def lstsq_pinv(X, y):
    _check_system(X, y)
    return _residual(X, y, mul(pseudoinverse(X), y))


def toeplitz_gram(X, tol=1e-10):
    """Gram matrix ``X^H X`` and its first column, checked for Toeplitz form."""
    n = X.params.n
    T = mul(hermitian_transpose(X, n), X)
    P = T.planes
    scale = max(1.0, float(np.max(np.abs(P), initial=0.0)))
    if P.shape[1] > 1 and np.max(np.abs(P[:, 1:, 1:] - P[:, :-1, :-1])) > tol * scale:
        raise NotToeplitzError("Gram matrix is not Toeplitz")
    if not is_n_hermitian(T, n, tol=tol):
        raise NotToeplitzError(f"Gram matrix is not {n}-Hermitian")
    return T, [T.entry(i, 0) for i in range(T.rows)]


@dataclass(frozen=True, eq=False)
class LevinsonStage:
    i: int
    f: np.ndarray
    lam: Tessarine
    eps1: Tessarine
    g: np.ndarray
    eps2: Tessarine


@dataclass(frozen=True, eq=False)
class LevinsonTrace:
    params: object
    stages: list

    def stage(self, i):
        if not 1 <= i <= len(self.stages):
            raise ValidationError(f"stage {i} not in trace (1..{len(self.stages)})")
        return self.stages[i - 1]

    def f(self, i):
        """One-step coefficients of stage ``i`` as an ``i x 1`` TMat."""
        return TMat(self.params, self.stage(i).f[:, :, None])


def _conj_planes(P, params):
    """The ``(3 - 2n, 1)`` conjugation applied to planes."""
    if params.alpha > 0:
        return P
    Q = P.copy()
    Q[1] = -Q[1]
    Q[3] = -Q[3]
    return Q


def levinson_stages(pi, p, stages=None):
    """Yield the stages of the sequential solver one at a time.

    ``pi[m]`` is the Gram entry ``T[m, 0]``; negative lags are conjugates.
    At stage ``i`` the coefficient ``f_j`` multiplies ``x(i + 1 - j)`` and
    ``g_j`` multiplies ``x(j + 1)``, so ``g(i)`` is ``f(i - 1)`` conjugated
    entrywise with the order kept.
    """
    pi_pos = np.stack([v.to_array() for v in pi], axis=1)
    pi_neg = _conj_planes(pi_pos, p)
    count = pi_pos.shape[1] - 1 if stages is None else int(stages)
    if not 0 <= count <= pi_pos.shape[1] - 1:
        raise ValidationError(f"stages must lie in [0, {pi_pos.shape[1] - 1}]")
    one = np.array([1.0, 0.0, 0.0, 0.0])
    eps1 = pi_pos[:, 0]
    f = np.zeros((4, 0))
    for i in range(1, count + 1):
        # numerator: pi(-i) - sum_l pi(l - i) f_l(i - 1), l = 1 .. i - 1
        num = pi_neg[:, i] - mul_planes(pi_neg[:, i - 1:0:-1], f, p).sum(axis=1)
        try:
            lam = mul_planes(num, tess_inverse(Tessarine.from_array(eps1), p).to_array(), p)
        except ZeroDivisorError as exc:
            raise ZeroDivisorError(f"stage {i}: prediction error is not invertible ({exc})",
                                   channel=exc.channel) from exc
        g = _conj_planes(f, p)
        rho = g[:, ::-1]
        f_new = np.concatenate([f - mul_planes(lam[:, None], rho, p), lam[:, None]], axis=1)
        eps_prev = eps1
        eps1 = mul_planes(eps_prev, one - mul_planes(lam, _conj_planes(lam, p), p), p)
        yield LevinsonStage(i, f_new, Tessarine.from_array(lam), Tessarine.from_array(eps1),
                            g, Tessarine.from_array(eps_prev))
        f = f_new


def levinson_solve(pi, p, stages=None):
    """Run the sequential solver and keep every stage."""
    return LevinsonTrace(p, list(levinson_stages(pi, p, stages)))


def fixed_point_projection(trace, i):
    """Coefficients ``g(i)`` and error ``eps2(i)`` of the fixed-point projection."""
    if not 2 <= i <= len(trace.stages) + 1:
        raise ValidationError(f"fixed-point stage {i} needs stage {i - 1} in the trace")
    prev = trace.stages[i - 2]
    g = _conj_planes(prev.f, trace.params)
    return TMat(trace.params, g[:, :, None]), prev.eps1


def convolution_matrix(h, p, params):
    """Padded convolution operator with ``X[k, j] = h[k - j]``.

    ``h`` is a ``(4, L)`` array of planes; the result is ``(p + L - 1) x p``.
    Its Gram matrix is exactly Toeplitz.
    """
    h = np.asarray(h, dtype=float)
    L = h.shape[1]
    P = np.zeros((4, p + L - 1, p))
    for j in range(p):
        P[:, j:j + L, j] = h
    return TMat(params, P)


def random_filter(L, params, rng):
    """A well-conditioned random filter: dominant first tap, decaying tail."""
    h = rng.normal(size=(4, L)) * 0.5 ** np.arange(L)
    h[:, 0] = 0.0
    h[0, 0] = 1.0
    return h / (1 + params.sa + params.sb + params.sa * params.sb)
