"""Matrices over (alpha, beta)-tessarines.

``TMat`` stores its four component planes as one ``(4, rows, cols)`` array.
``GTMat`` is the generalized counterpart ``X1 + X2 eps`` and stores complex
planes whose imaginary part is the eps-part.

Every factorization works on the pair ``(Xs, Xd)`` returned by
:func:`split_matrix`, hands each half to the (alpha)-complex kernels and
recombines with :func:`join_matrix`.
"""

from dataclasses import dataclass
import functools
import itertools
import math

import numpy as np

from . import alpha_complex as ac
from .algebra import (GTessarine, Params, Tessarine, channels_to_planes, mul_planes,
                      planes_to_channels, tess_mul, tess_sqrt)
from .errors import (DomainError, NoSquareRootError, SingularMatrixError,
                     ValidationError)


@dataclass(frozen=True, eq=False)
class TMat:
    params: Params
    planes: np.ndarray

    def __post_init__(self):
        P = np.asarray(self.planes, dtype=float)
        if P.ndim != 3 or P.shape[0] != 4:
            raise ValidationError(f"planes must have shape (4, rows, cols), got {P.shape}")
        if not np.all(np.isfinite(P)):
            raise ValidationError("matrix entries must be finite")
        object.__setattr__(self, "planes", P)

    @classmethod
    def from_components(cls, A, B=None, C=None, D=None, params=None):
        A = np.atleast_2d(np.asarray(A, dtype=float))
        z = np.zeros_like(A)
        parts = [A] + [z if M is None else np.atleast_2d(np.asarray(M, dtype=float)) for M in (B, C, D)]
        return cls(params, np.stack(parts))

    @classmethod
    def from_entries(cls, rows, params):
        """Build from a nested list of Tessarine values or 4-sequences."""
        arr = np.array([[list(e) for e in row] for row in rows], dtype=float)
        return cls(params, np.moveaxis(arr, 2, 0))

    @classmethod
    def zeros(cls, rows, cols, params):
        return cls(params, np.zeros((4, rows, cols)))

    @classmethod
    def eye(cls, n, params):
        P = np.zeros((4, n, n))
        P[0] = np.eye(n)
        return cls(params, P)

    @property
    def A(self):
        return self.planes[0]

    @property
    def B(self):
        return self.planes[1]

    @property
    def C(self):
        return self.planes[2]

    @property
    def D(self):
        return self.planes[3]

    @property
    def rows(self):
        return self.planes.shape[1]

    @property
    def cols(self):
        return self.planes.shape[2]

    @property
    def shape(self):
        return self.planes.shape[1:]

    def entry(self, i, j):
        return Tessarine.from_array(self.planes[:, i, j])

    def column(self, j):
        return TMat(self.params, self.planes[:, :, j:j + 1])

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __neg__(self):
        return TMat(self.params, -self.planes)

    def __matmul__(self, other):
        return mul(self, other)

    def H(self, n=None):
        return hermitian_transpose(self, self.params.n if n is None else n)

    def __repr__(self):
        p = self.params
        return f"TMat({self.rows}x{self.cols}, alpha={p.alpha:g}, beta={p.beta:g})"


@dataclass(frozen=True, eq=False)
class GTMat:
    params: Params
    x1: TMat
    x2: TMat

    def __post_init__(self):
        if self.x1.shape != self.x2.shape:
            raise ValidationError("x1 and x2 must have the same shape")

    @classmethod
    def from_planes(cls, params, planes):
        planes = np.asarray(planes)
        return cls(params, TMat(params, planes.real), TMat(params, np.imag(planes)))

    @classmethod
    def embed(cls, X):
        return cls(X.params, X, TMat.zeros(X.rows, X.cols, X.params))

    @property
    def planes(self):
        return self.x1.planes + 1j * self.x2.planes

    @property
    def shape(self):
        return self.x1.shape

    @property
    def rows(self):
        return self.x1.rows

    @property
    def cols(self):
        return self.x1.cols

    def entry(self, i, j):
        return GTessarine(self.x1.entry(i, j), self.x2.entry(i, j))

    def collapse(self, tol=1e-10):
        """Return ``x1`` when the eps-part is negligible, otherwise raise."""
        scale = max(1.0, float(np.max(np.abs(self.x1.planes), initial=0.0)))
        if np.max(np.abs(self.x2.planes), initial=0.0) > tol * scale:
            raise DomainError("matrix has a non-negligible eps-part")
        return self.x1

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __matmul__(self, other):
        return mul(self, other)

    def H(self, n=None):
        return hermitian_transpose(self, self.params.n if n is None else n)

    def __repr__(self):
        p = self.params
        return f"GTMat({self.rows}x{self.cols}, alpha={p.alpha:g}, beta={p.beta:g})"


@dataclass(frozen=True)
class TessLu:
    P: TMat
    L: TMat
    U: TMat
    gamma: tuple


# ---------------------------------------------------------------- plumbing


def _wrap(planes, params):
    """TMat for real planes, GTMat for complex planes."""
    if np.iscomplexobj(planes):
        return GTMat.from_planes(params, planes)
    return TMat(params, planes)


def _check_pair(X, Y, shape=True):
    if X.params != Y.params:
        raise ValidationError(f"parameter mismatch: {X.params} vs {Y.params}")
    if shape and X.shape != Y.shape:
        raise ValidationError(f"shape mismatch: {X.shape} vs {Y.shape}")


def channels(X):
    """Stacked channel matrices, shape ``(2 or 4, rows, cols)``."""
    return planes_to_channels(X.planes, X.params)


def from_channels_matrix(ch, params):
    return _wrap(channels_to_planes(ch, params), params)


def add(X, Y):
    _check_pair(X, Y)
    return _wrap(X.planes + Y.planes, X.params)


def sub(X, Y):
    _check_pair(X, Y)
    return _wrap(X.planes - Y.planes, X.params)


def mul(X, Y):
    _check_pair(X, Y, shape=False)
    if X.cols != Y.rows:
        raise ValidationError(f"cannot multiply {X.shape} by {Y.shape}")
    return from_channels_matrix(np.matmul(channels(X), channels(Y)), X.params)


def scale(x, Y):
    """Multiply every entry of ``Y`` by the scalar ``x``."""
    if isinstance(x, GTessarine):
        v = x.to_complex_array()
    else:
        v = x.to_array()
    return _wrap(mul_planes(v[:, None, None], Y.planes, Y.params), Y.params)


def hermitian_transpose(X, n):
    if n not in (1, 2):
        raise ValidationError("n must be 1 or 2")
    P = np.swapaxes(X.planes, 1, 2).copy()
    if n == 2:
        P[1] = -P[1]
        P[3] = -P[3]
    return _wrap(P, X.params)


def is_n_hermitian(X, n, tol=1e-12):
    if X.rows != X.cols:
        return False
    diff = X.planes - hermitian_transpose(X, n).planes
    scale = max(1.0, float(np.max(np.abs(X.planes), initial=0.0)))
    return bool(np.max(np.abs(diff), initial=0.0) <= tol * scale)


def split_matrix(X):
    sb = X.params.sb
    A, B, C, D = X.planes
    al = X.params.alpha
    return ac.CAMat(al, A + sb * C, B + sb * D), ac.CAMat(al, A - sb * C, B - sb * D)


def join_matrix(Xs, Xd, params):
    sb = params.sb
    A = (Xs.re + Xd.re) / 2
    B = (Xs.im + Xd.im) / 2
    return _wrap(np.stack([A, B, (Xs.re - A) / sb, (Xs.im - B) / sb]), params)


def _channel_name(params, half, split):
    if params.alpha < 0:
        return half
    return {("s", "+"): "1", ("s", "-"): "2", ("d", "+"): "3", ("d", "-"): "4"}[(half, split)]


def _per_half(X, fn):
    """Apply an (alpha)-complex kernel to both halves, relabelling errors."""
    out = []
    for half, M in zip("sd", split_matrix(X)):
        try:
            out.append(fn(M))
        except (SingularMatrixError, NoSquareRootError) as exc:
            name = _channel_name(X.params, half, exc.channel)
            raise type(exc)(f"channel {name} is {_what(exc)}", channel=name) from exc
    return out


def _what(exc):
    return "singular" if isinstance(exc, SingularMatrixError) else "without a principal square root"


def _square(X):
    if X.rows != X.cols:
        raise ValidationError(f"square matrix required, got {X.shape}")


# ---------------------------------------------------------------- products and norms


def inner_product(X, Y, n=None):
    """Trace of ``X^H Y`` computed entrywise."""
    _check_pair(X, Y)
    n = X.params.n if n is None else n
    Xc = X.planes.copy()
    if n == 2:
        Xc[1] = -Xc[1]
        Xc[3] = -Xc[3]
    s = mul_planes(Xc, Y.planes, X.params).sum(axis=(1, 2))
    if np.iscomplexobj(s):
        return GTessarine.from_complex_array(s)
    return Tessarine.from_array(s)


def norm(X, n=None):
    v = inner_product(X, X, n)
    re = v.x1.a if isinstance(v, GTessarine) else v.a
    if re < 0:
        scale = float(np.sum(X.planes ** 2)) if isinstance(X, TMat) else 1.0
        if re < -1e-12 * max(scale, 1.0):
            raise DomainError("negative real part; n does not match the regime")
        re = 0.0
    return math.sqrt(re)


def modulus_vec(x, n=None):
    """Channelwise square root of ``x^H x``."""
    g = mul(hermitian_transpose(x, x.params.n if n is None else n), x)
    return tess_sqrt(g.entry(0, 0), x.params).collapse()


# ---------------------------------------------------------------- determinants


@functools.lru_cache(maxsize=None)
def _perm_table(p):
    perms = np.array(list(itertools.permutations(range(p))), dtype=int).reshape(-1, p)
    inv = sum((perms[:, i:i + 1] > perms[:, i + 1:]).sum(axis=1) for i in range(p))
    return perms, np.where(inv % 2 == 0, 1.0, -1.0)


def det_permutation(X, max_dim=8):
    """Signed sum over all permutations, evaluated for every permutation at once."""
    _square(X)
    p = X.rows
    if p > max_dim:
        raise ValidationError(f"det_permutation limited to p <= {max_dim}")
    perms, signs = _perm_table(p)
    prod = np.zeros((4, len(perms)))
    prod[0] = 1.0
    for t in range(p):
        prod = mul_planes(prod, X.planes[:, t, perms[:, t]], X.params)
    return Tessarine.from_array(prod @ signs)


def _table_alpha_negative(sb):
    return {
        (1, 1): Tessarine(1),
        (-1, -1): Tessarine(-1),
        (1, -1): Tessarine(0, 0, 1 / sb, 0),
        (-1, 1): Tessarine(0, 0, -1 / sb, 0),
    }


def _table_alpha_positive(sa, sb):
    u_i = 1 / sa
    u_j = 1 / sb
    u_k = 1 / (sa * sb)
    a1 = Tessarine(0.5, 0.5 * u_i, 0.5 * u_j, -0.5 * u_k)
    a2 = Tessarine(-0.5, 0.5 * u_i, 0.5 * u_j, 0.5 * u_k)

    def ci(x):
        return Tessarine(x.a, x.b, -x.c, -x.d)

    def cj(x):
        return Tessarine(x.a, -x.b, x.c, -x.d)

    def ck(x):
        return Tessarine(x.a, -x.b, -x.c, x.d)

    return {
        (1, 1, 1, 1): Tessarine(1),
        (-1, -1, -1, -1): Tessarine(-1),
        (1, -1, 1, -1): Tessarine(0, u_i, 0, 0),
        (-1, 1, -1, 1): Tessarine(0, -u_i, 0, 0),
        (1, 1, -1, -1): Tessarine(0, 0, u_j, 0),
        (-1, -1, 1, 1): Tessarine(0, 0, -u_j, 0),
        (1, -1, -1, 1): Tessarine(0, 0, 0, u_k),
        (-1, 1, 1, -1): Tessarine(0, 0, 0, -u_k),
        (1, 1, 1, -1): a1,
        (1, -1, -1, -1): a2,
        (1, -1, 1, 1): ci(a1),
        (-1, -1, 1, -1): ci(a2),
        (1, 1, -1, 1): cj(a1),
        (-1, 1, -1, -1): cj(a2),
        (-1, 1, 1, 1): ck(a1),
        (-1, -1, -1, 1): ck(a2),
    }


def det_p_from_signatures(gamma, p):
    """Determinant of the LU permutation factor from its channel signatures."""
    try:
        key = tuple(int(g) for g in gamma)
    except (TypeError, ValueError):
        raise ValidationError(f"malformed signature vector {gamma!r}") from None
    want = 2 if p.alpha < 0 else 4
    if len(key) != want or any(g not in (1, -1) for g in key) or any(g != k for g, k in zip(gamma, key)):
        raise ValidationError(f"signature vector must hold {want} entries of +1/-1, got {gamma!r}")
    table = _table_alpha_negative(p.sb) if p.alpha < 0 else _table_alpha_positive(p.sa, p.sb)
    return table[key]


def det_lu(X):
    lu = lu_pp(X)
    d = det_p_from_signatures(lu.gamma, X.params)
    for t in range(X.rows):
        d = tess_mul(d, lu.U.entry(t, t), X.params)
    return d


# ---------------------------------------------------------------- factorizations


def inverse(X):
    _square(X)
    Xs_inv, Xd_inv = _per_half(X, ac.ca_inverse)
    return join_matrix(Xs_inv, Xd_inv, X.params)


def _equiv_split(M, beta_sqrt, params_equiv):
    """Relabel a half of a generalized matrix as a T(-1, alpha) matrix."""
    return TMat(params_equiv, np.stack([M.re.real, M.re.imag, M.im.real, M.im.imag]))


def g_matrix_inverse(X):
    if isinstance(X, TMat):
        X = GTMat.embed(X)
    _square(X)
    p = X.params
    if p.alpha < 0:
        raise DomainError("generalized matrix inverse requires alpha > 0")
    peq = Params(-1.0, p.alpha)
    halves = []
    for half, M in zip("sd", split_matrix(X)):
        T = _equiv_split(M, p.sb, peq)
        try:
            Ti = inverse(T)
        except SingularMatrixError as exc:
            name = f"{half}{exc.channel}"
            raise SingularMatrixError(f"channel {name} is singular", channel=name) from exc
        A, B, C, D = Ti.planes
        halves.append(ac.CAMat(p.alpha, A + 1j * B, C + 1j * D))
    out = join_matrix(halves[0], halves[1], p)
    return out if isinstance(out, GTMat) else GTMat.embed(out)


def sqrt(X):
    _square(X)
    Ss, Sd = _per_half(X, ac.ca_sqrt)
    out = join_matrix(Ss, Sd, X.params)
    return out if isinstance(out, GTMat) else GTMat.embed(out)


def lu_pp(X):
    _square(X)
    lus = _per_half(X, ac.ca_lu)
    p = X.params
    P = join_matrix(lus[0].P, lus[1].P, p)
    L = join_matrix(lus[0].L, lus[1].L, p)
    U = join_matrix(lus[0].U, lus[1].U, p)
    return TessLu(P, L, U, lus[0].gammas + lus[1].gammas)
