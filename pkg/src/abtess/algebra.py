"""Scalar arithmetic over (alpha, beta)-tessarines.

A tessarine is ``a + b i + c j + d k`` with ``i**2 = alpha``, ``j**2 = beta``
and ``k = i j``.  The algebra is commutative and splits into independent
channels through the idempotent units ``w1`` and ``w2``:

* ``alpha < 0``: two standard complex channels ``ch_s``, ``ch_d``.
* ``alpha > 0``: four real channels ``ch1 .. ch4``.

Most routines here are thin wrappers around the array helpers
``mul_planes``, ``planes_to_channels`` and ``channels_to_planes``, which act
on stacks of component planes (leading axis of length 4) and are reused by
the matrix layer.
"""

from dataclasses import dataclass
from enum import Enum
import math

import numpy as np

from .errors import DomainError, ValidationError, ZeroDivisorError

ZERO_TOL = 1e-13


@dataclass(frozen=True)
class Params:
    alpha: float
    beta: float

    def __post_init__(self):
        a, b = float(self.alpha), float(self.beta)
        if not (math.isfinite(a) and math.isfinite(b)):
            raise ValidationError("alpha and beta must be finite")
        if a == 0.0:
            raise ValidationError("alpha must be nonzero")
        if b <= 0.0:
            raise ValidationError("beta must be strictly positive")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @property
    def n(self):
        """Regime index: 1 for alpha > 0, 2 for alpha < 0."""
        return 1 if self.alpha > 0 else 2

    @property
    def theta(self):
        """Conjugation parameter ``3 - 2n`` used by the Hermitian transpose."""
        return 3 - 2 * self.n

    @property
    def n_channels(self):
        return 4 if self.alpha > 0 else 2

    @property
    def sa(self):
        return math.sqrt(abs(self.alpha))

    @property
    def sb(self):
        return math.sqrt(self.beta)


class Regime(Enum):
    TwoComplex = "two-complex"
    FourReal = "four-real"


def _fmt(v):
    return format(float(v) + 0.0, ".15g")


@dataclass(frozen=True)
class Tessarine:
    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, float(getattr(self, name)))

    @classmethod
    def from_array(cls, v):
        v = np.asarray(v, dtype=float).reshape(4)
        return cls(*v)

    def to_array(self):
        return np.array([self.a, self.b, self.c, self.d])

    def __iter__(self):
        return iter((self.a, self.b, self.c, self.d))

    def __add__(self, other):
        other = _as_tess(other)
        return Tessarine(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_tess(other)
        return Tessarine(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __rsub__(self, other):
        return _as_tess(other) - self

    def __neg__(self):
        return Tessarine(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, s):
        if isinstance(s, (int, float, np.floating, np.integer)):
            s = float(s)
            return Tessarine(self.a * s, self.b * s, self.c * s, self.d * s)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, s):
        if isinstance(s, (int, float, np.floating, np.integer)):
            return self * (1.0 / float(s))
        return NotImplemented

    def __str__(self):
        return f"{_fmt(self.a)}{_fmt_signed(self.b)}i{_fmt_signed(self.c)}j{_fmt_signed(self.d)}k"


def _fmt_signed(v):
    s = _fmt(v)
    return s if s.startswith("-") else "+" + s


def _as_tess(x):
    if isinstance(x, Tessarine):
        return x
    if isinstance(x, (int, float, np.floating, np.integer)):
        return Tessarine(float(x))
    raise TypeError(f"cannot interpret {type(x).__name__} as a Tessarine")


@dataclass(frozen=True)
class GTessarine:
    """Generalized tessarine ``x1 + x2 * eps`` with ``eps**2 = -1``."""

    x1: Tessarine = Tessarine()
    x2: Tessarine = Tessarine()

    @classmethod
    def from_complex_array(cls, v):
        v = np.asarray(v).reshape(4)
        return cls(Tessarine.from_array(v.real), Tessarine.from_array(np.imag(v)))

    def to_complex_array(self):
        return self.x1.to_array() + 1j * self.x2.to_array()

    def collapse(self, tol=1e-10):
        """Return ``x1`` if the eps-part is negligible, else raise."""
        scale = max(1.0, float(np.max(np.abs(self.x1.to_array()))))
        if np.max(np.abs(self.x2.to_array())) > tol * scale:
            raise DomainError("value has a non-negligible eps-part")
        return self.x1

    def __add__(self, other):
        return GTessarine(self.x1 + other.x1, self.x2 + other.x2)

    def __sub__(self, other):
        return GTessarine(self.x1 - other.x1, self.x2 - other.x2)

    def __str__(self):
        return f"({self.x1}) + ({self.x2})e"


@dataclass(frozen=True)
class AlphaComplex:
    """Scalar ``re + im * i`` with ``i**2 = alpha``."""

    re: float
    im: float
    alpha: float

    def __add__(self, other):
        return AlphaComplex(self.re + other.re, self.im + other.im, self.alpha)

    def __sub__(self, other):
        return AlphaComplex(self.re - other.re, self.im - other.im, self.alpha)

    def __mul__(self, other):
        return AlphaComplex(self.re * other.re + self.alpha * self.im * other.im,
                            self.re * other.im + self.im * other.re, self.alpha)

    def inverse(self):
        den = self.re * self.re - self.alpha * self.im * self.im
        if den == 0.0:
            raise ZeroDivisorError("(alpha)-complex value is a zero divisor")
        return AlphaComplex(self.re / den, -self.im / den, self.alpha)


@dataclass(frozen=True)
class ChannelSet:
    regime: Regime
    values: tuple

    @property
    def ch_s(self):
        self._need(Regime.TwoComplex)
        return self.values[0]

    @property
    def ch_d(self):
        self._need(Regime.TwoComplex)
        return self.values[1]

    def __getattr__(self, name):
        if name in ("ch1", "ch2", "ch3", "ch4"):
            self._need(Regime.FourReal)
            return self.values[int(name[2]) - 1]
        raise AttributeError(name)

    def _need(self, regime):
        if self.regime is not regime:
            raise AttributeError(f"channel not defined for regime {self.regime.value}")


# ---------------------------------------------------------------- planes


def mul_planes(P, Q, p):
    """Elementwise product of two stacks of component planes."""
    al, be = p.alpha, p.beta
    a1, b1, c1, d1 = P
    a2, b2, c2, d2 = Q
    return np.stack([
        a1 * a2 + al * b1 * b2 + be * c1 * c2 + al * be * d1 * d2,
        a1 * b2 + b1 * a2 + be * (c1 * d2 + d1 * c2),
        a1 * c2 + c1 * a2 + al * (b1 * d2 + d1 * b2),
        a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
    ])


def planes_to_channels(P, p):
    """Map component planes to channel planes.

    Returns shape ``(2, ...)`` complex for alpha < 0 and ``(4, ...)`` for
    alpha > 0 (real, or complex when the input carries eps-parts).
    """
    a, b, c, d = P
    sb = p.sb
    if p.alpha < 0:
        if np.iscomplexobj(P):
            if np.any(P.imag != 0):
                raise DomainError("eps-valued planes are not defined for alpha < 0")
            a, b, c, d = P.real
        sa = p.sa
        return np.stack([(a + sb * c) + 1j * sa * (b + sb * d),
                         (a - sb * c) + 1j * sa * (b - sb * d)])
    sa = p.sa
    sab = sa * sb
    return np.stack([
        a + sa * b + sb * c + sab * d,
        a - sa * b + sb * c - sab * d,
        a + sa * b - sb * c - sab * d,
        a - sa * b - sb * c + sab * d,
    ])


def channels_to_planes(C, p):
    """Inverse of :func:`planes_to_channels`."""
    sb = p.sb
    sa = p.sa
    if p.alpha < 0:
        s, d = C
        a = (s.real + d.real) / 2
        c = (s.real - d.real) / (2 * sb)
        b = (s.imag + d.imag) / (2 * sa)
        dd = (s.imag - d.imag) / (2 * sa * sb)
        return np.stack([a, b, c, dd])
    c1, c2, c3, c4 = C
    return np.stack([
        (c1 + c2 + c3 + c4) / 4,
        (c1 - c2 + c3 - c4) / (4 * sa),
        (c1 + c2 - c3 - c4) / (4 * sb),
        (c1 - c2 - c3 + c4) / (4 * sa * sb),
    ])


def _is_zero_channel(ch):
    mags = np.abs(np.asarray(ch))
    top = float(mags.max())
    return mags <= ZERO_TOL * top if top > 0 else np.ones(mags.shape, dtype=bool)


def channel_names(p):
    return ("s", "d") if p.alpha < 0 else ("1", "2", "3", "4")


# ---------------------------------------------------------------- scalar ops


def special_units(p):
    sb = p.sb
    w1 = Tessarine(0.5, 0.0, 1.0 / (2 * sb), 0.0)
    w2 = Tessarine(0.5, 0.0, -1.0 / (2 * sb), 0.0)
    return w1, w2


def tess_mul(x, y, p):
    return Tessarine.from_array(mul_planes(x.to_array(), y.to_array(), p))


def conjugate(x, axis):
    if axis == "i":
        return Tessarine(x.a, x.b, -x.c, -x.d)
    if axis == "j":
        return Tessarine(x.a, -x.b, x.c, -x.d)
    if axis == "k":
        return Tessarine(x.a, -x.b, -x.c, x.d)
    raise ValidationError(f"unknown conjugation axis {axis!r}")


def theta_tau(x, theta, tau):
    if theta == 0:
        raise ValidationError("theta must be nonzero")
    if not tau > 0:
        raise ValidationError("tau must be positive")
    return Tessarine(x.a, x.b / theta, x.c / tau, x.d / (tau * theta))


def s_sum(x):
    return x.a + x.b + x.c + x.d


def to_channels(x, p):
    ch = planes_to_channels(x.to_array(), p)
    if p.alpha < 0:
        return ChannelSet(Regime.TwoComplex, (complex(ch[0]), complex(ch[1])))
    return ChannelSet(Regime.FourReal, tuple(float(v) for v in ch))


def from_channels(ch, p):
    want = Regime.TwoComplex if p.alpha < 0 else Regime.FourReal
    if ch.regime is not want:
        raise ValidationError(f"channel regime {ch.regime.value} does not match alpha={p.alpha}")
    dtype = complex if p.alpha < 0 else float
    return Tessarine.from_array(channels_to_planes(np.array(ch.values, dtype=dtype), p))


def associated_tessarine(x, p):
    if p.alpha > 0:
        return Tessarine(*to_channels(x, p).values)
    scale = max(abs(v) for v in x)
    if max(abs(x.b), abs(x.d)) > 1e-12 * scale:
        raise DomainError("associated tessarine for alpha < 0 needs zero i and k parts")
    return Tessarine(x.a + p.sb * x.c, 0.0, x.a - p.sb * x.c, 0.0)


def is_semipositive(x, p):
    v = associated_tessarine(x, p).to_array()
    scale = max(1.0, float(np.max(np.abs(v))))
    return bool(np.all(v >= -1e-12 * scale))


def tess_leq(x, y, p):
    """True when ``x`` precedes ``y`` in the channel ordering."""
    return is_semipositive(y - x, p)


def tess_inverse(x, p):
    ch = planes_to_channels(x.to_array(), p)
    zero = _is_zero_channel(ch)
    if zero.any():
        name = channel_names(p)[int(np.argmax(zero))]
        raise ZeroDivisorError(f"channel {name} vanishes; value is not invertible", channel=name)
    return Tessarine.from_array(channels_to_planes(1.0 / ch, p))


def tess_sqrt(x, p):
    ch = planes_to_channels(x.to_array(), p).astype(complex) + 0j
    root = np.sqrt(ch)
    if p.alpha < 0:
        return GTessarine(Tessarine.from_array(channels_to_planes(root, p)), Tessarine())
    return GTessarine.from_complex_array(channels_to_planes(root, p))


def tess_modulus(x, p):
    """Channelwise modulus ``|x|``; satisfies ``|x y| = |x| |y|``."""
    ch = np.abs(planes_to_channels(x.to_array(), p))
    if p.alpha < 0:
        ch = ch.astype(complex)
    return Tessarine.from_array(channels_to_planes(ch, p))


def tess_norm(x, p):
    """Real norm of a scalar computed from its channels."""
    ch = planes_to_channels(x.to_array(), p)
    sq = float(np.sum(np.abs(ch) ** 2))
    return math.sqrt(sq / (4 if p.alpha > 0 else 2))


def _need_positive_alpha(p):
    if p.alpha < 0:
        raise DomainError("generalized tessarine arithmetic requires alpha > 0")


def g_channels(x, p):
    _need_positive_alpha(p)
    return planes_to_channels(x.to_complex_array(), p)


def g_mul(x, y, p):
    _need_positive_alpha(p)
    prod = g_channels(x, p) * g_channels(y, p)
    return GTessarine.from_complex_array(channels_to_planes(prod, p))


def g_inverse(x, p):
    ch = g_channels(x, p)
    zero = _is_zero_channel(ch)
    if zero.any():
        name = channel_names(p)[int(np.argmax(zero))]
        raise ZeroDivisorError(f"channel {name} vanishes; value is not invertible", channel=name)
    return GTessarine.from_complex_array(channels_to_planes(1.0 / ch, p))


def equiv_tessarine(h, alpha):
    """Relabel ``a + b eps + c i + d eps i`` as an element of T(-1, alpha).

    ``h`` is the coefficient quadruple ``(a, b, c, d)``.  Returns the
    relabelled Tessarine and the parameters of its algebra.
    """
    if alpha <= 0:
        raise DomainError("equivalent tessarine requires alpha > 0")
    return Tessarine(*h), Params(-1.0, alpha)
