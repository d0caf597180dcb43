"""Timing comparison of three ways to obtain the fixed-point coefficients g(i)."""

import csv
import io
import time

import numpy as np

from .algebra import Params
from .leastsq import (_conj_planes, convolution_matrix, fixed_point_projection, levinson_solve,
                      levinson_stages, random_filter, toeplitz_gram)
from .matrix import TMat, inverse, mul
from .spectral import pseudoinverse

P_MAX_GUARD = 500
COLUMNS = ("i", "t_inverse", "t_pinv", "t_sequential", "max_diff")


def make_instance(p, params, seed, filter_len=8):
    rng = np.random.default_rng(seed)
    X = convolution_matrix(random_filter(filter_len, params, rng), p, params)
    T, pi = toeplitz_gram(X)
    return X, T, pi


def _sub(T, i):
    """Gram block and right-hand side regressing x(1) on x(2..i)."""
    p = T.params
    return TMat(p, T.planes[:, 1:i, 1:i]), TMat(p, T.planes[:, 1:i, 0:1])


def g_inverse_route(T, i):
    G, r = _sub(T, i)
    return mul(inverse(G), r)


def g_pinv_route(T, i):
    G, r = _sub(T, i)
    return mul(pseudoinverse(G), r)


def g_sequential_route(pi, params, i):
    trace = levinson_solve(pi, params, stages=i - 1)
    return fixed_point_projection(trace, i)[0]


def _timed(fn, repeats):
    times, out = [], None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return float(np.mean(times)), out


def _sequential_pass(pi, params, sizes):
    """One recursion pass; elapsed time and ``g(i)`` at each requested order."""
    wanted = set(sizes)
    times, gs = {}, {}
    t0 = time.perf_counter()
    for st in levinson_stages(pi, params, stages=max(sizes) - 1):
        i = st.i + 1
        if i in wanted:
            gs[i] = TMat(params, _conj_planes(st.f, params)[:, :, None])
            times[i] = time.perf_counter() - t0
    return times, gs


def levinson_bench(p_max=P_MAX_GUARD, step=10, repeats=1, seed=0, alpha=-2.0, beta=3.0,
                   pinv_every=1, guard=P_MAX_GUARD):
    """Mean wall time per method for each sampled order ``i``.

    ``t_inverse`` and ``t_pinv`` solve the order-``i`` system on their own.
    ``t_sequential`` is the time one recursion pass needs to reach ``g(i)``.
    ``t_pinv`` is measured on every ``pinv_every``-th sampled row only
    (NaN elsewhere).  ``max_diff`` compares the coefficient vectors.
    """
    if p_max > guard:
        raise ValueError(f"p_max must not exceed {guard}")
    if p_max < 2 or step < 1 or repeats < 1 or pinv_every < 1:
        raise ValueError("need p_max >= 2 and step, repeats, pinv_every >= 1")
    params = Params(alpha, beta)
    _, T, pi = make_instance(p_max, params, seed)
    sizes = list(range(max(2, step), p_max + 1, step))
    passes = [_sequential_pass(pi, params, sizes) for _ in range(repeats)]
    g_seq = passes[-1][1]
    rows = []
    for n, i in enumerate(sizes):
        t_seq = float(np.mean([times[i] for times, _ in passes]))
        t_inv, g_inv = _timed(lambda: g_inverse_route(T, i), repeats)
        diff = float(np.max(np.abs(g_inv.planes - g_seq[i].planes)))
        t_pinv = float("nan")
        if n % pinv_every == 0:
            t_pinv, g_pinv = _timed(lambda: g_pinv_route(T, i), repeats)
            diff = max(diff, float(np.max(np.abs(g_pinv.planes - g_seq[i].planes))))
        rows.append({"i": i, "t_inverse": t_inv, "t_pinv": t_pinv,
                     "t_sequential": t_seq, "max_diff": diff})
    return rows


def rows_to_csv(rows):
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: (r[k] if k == "i" else f"{r[k]:.6e}") for k in COLUMNS})
    return buf.getvalue()
