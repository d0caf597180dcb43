"""Colour images as tessarine matrices and the rank-k watermark experiment.

Pixels map to pure-imaginary tessarines ``R i + G j + B k`` (real part 0).
The watermarked matrix is ``A + mu B``; the host estimate is its rank-k
approximation and the mark estimate is the scaled residual.
"""

from dataclasses import dataclass
import math

import numpy as np
from PIL import Image

from .algebra import Params
from .errors import ValidationError
from .matrix import TMat
from .spectral import svd


def read_rgb(src):
    """Load an 8-bit RGB array from a path, a PIL image or an array."""
    if isinstance(src, np.ndarray):
        arr = src
    else:
        img = src if isinstance(src, Image.Image) else Image.open(src)
        if img.mode not in ("RGB", "RGBA"):
            raise ValidationError(f"unsupported pixel format {img.mode!r}; expected 8-bit RGB")
        arr = np.asarray(img)
    if arr.dtype != np.uint8 or arr.ndim != 3 or arr.shape[2] not in (3, 4):
        raise ValidationError(f"unsupported pixel array {arr.dtype} {arr.shape}; expected HxWx3 uint8")
    return arr[:, :, :3]


def image_to_tessarine(src, params=None):
    rgb = read_rgb(src).astype(float)
    params = params or Params(3.0, 1.0)
    planes = np.concatenate([np.zeros((1,) + rgb.shape[:2]), np.moveaxis(rgb, 2, 0)])
    return TMat(params, planes)


def tessarine_to_image(X):
    """Clamp the i, j, k planes to [0, 255] and round half to even."""
    rgb = np.clip(np.moveaxis(X.planes[1:], 0, 2), 0, 255)
    return np.rint(rgb).astype(np.uint8)


def save_image(arr, path):
    Image.fromarray(np.ascontiguousarray(arr, dtype=np.uint8)).save(path)


def psnr(img1, img2):
    a = read_rgb(img1).astype(float)
    b = read_rgb(img2).astype(float)
    if a.shape != b.shape:
        raise ValidationError(f"image sizes differ: {a.shape} vs {b.shape}")
    mse = np.mean((a - b) ** 2, axis=(0, 1)).mean()
    if mse == 0:
        return math.inf
    return 10 * math.log10(255.0 ** 2 / mse)


@dataclass(frozen=True)
class WatermarkConfig:
    mu: float = 0.04
    k_values: tuple = (50, 150, 250)
    alpha: float = 3.0
    beta: float = 1.0

    def __post_init__(self):
        if not self.mu > 0:
            raise ValidationError("mu must be positive")
        if not self.k_values or any(int(k) < 1 for k in self.k_values):
            raise ValidationError("k values must be positive integers")


@dataclass(frozen=True)
class WatermarkRow:
    mu: float
    k: int
    psnr_host: float
    psnr_mark: float


def embed(host, mark, mu, params):
    A = image_to_tessarine(host, params)
    B = image_to_tessarine(mark, params)
    if A.shape != B.shape:
        raise ValidationError(f"host {A.shape} and mark {B.shape} differ in size")
    return TMat(params, A.planes + mu * B.planes)


def extract(AB, k, mu, decomposition=None):
    """Host estimate ``rank_k(AB)`` and mark estimate ``(AB - host) / mu``."""
    dec = decomposition or svd(AB)
    A_hat = dec.truncate(k)
    return A_hat, TMat(AB.params, (AB.planes - A_hat.planes) / mu)


def watermark_pipeline(host, mark, cfg):
    params = Params(cfg.alpha, cfg.beta)
    host_rgb, mark_rgb = read_rgb(host), read_rgb(mark)
    AB = embed(host_rgb, mark_rgb, cfg.mu, params)
    limit = min(AB.shape)
    if max(cfg.k_values) > limit:
        raise ValidationError(f"k must not exceed {limit}")
    dec = svd(AB)
    rows = []
    for k in cfg.k_values:
        A_hat, B_hat = extract(AB, int(k), cfg.mu, dec)
        rows.append(WatermarkRow(cfg.mu, int(k),
                                 psnr(host_rgb, tessarine_to_image(A_hat)),
                                 psnr(mark_rgb, tessarine_to_image(B_hat))))
    return rows
