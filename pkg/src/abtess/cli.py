"""Command-line interface.

Matrix commands read a JSON matrix document.  Scalar results print as
``a+bi+cj+dk`` unless ``--format`` asks for json or csv; matrix results print
as JSON documents (or ``row,col,...`` CSV) and can be written with ``--out``.
"""

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import bench, matrix, spectral, watermark
from .algebra import GTessarine, Params
from .errors import TessarineError
from .io import dumps_matrix, load_matrix, matrix_to_doc
from .leastsq import lstsq_normal, lstsq_pinv
from .matrix import GTMat, TMat


def _scalar_fields(v):
    if isinstance(v, GTessarine):
        return list(v.x1) + list(v.x2)
    return list(v)


def _scalar_keys(v):
    return list("abcdefgh"[:8 if isinstance(v, GTessarine) else 4])


def _num(v):
    return repr(float(v) + 0.0)


def _csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _matrix_csv(X):
    if isinstance(X, GTMat):
        planes, keys = np.concatenate([X.x1.planes, X.x2.planes]), list("abcdefgh")
    else:
        planes, keys = X.planes, list("abcd")
    rows = [[i, j] + [_num(v) for v in planes[:, i, j]]
            for i in range(X.rows) for j in range(X.cols)]
    return _csv(["row", "col"] + keys, rows)


def _emit(text, out=None):
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_matrix(X, args):
    _emit(_matrix_csv(X) if args.format == "csv" else dumps_matrix(X), args.out)


def _emit_scalar(v, args, extra=None):
    extra = extra or {}
    if args.format == "json":
        doc = dict(extra)
        doc["value"] = dict(zip(_scalar_keys(v), _scalar_fields(v)))
        text = json.dumps(doc) + "\n"
    elif args.format == "csv":
        text = _csv(list(extra) + _scalar_keys(v),
                    [list(extra.values()) + [_num(x) for x in _scalar_fields(v)]])
    else:
        text = f"{v}\n"
    _emit(text, args.out)


def _load(path, args):
    X = load_matrix(path)
    if args.alpha is None and args.beta is None:
        return X
    p = Params(X.params.alpha if args.alpha is None else args.alpha,
               X.params.beta if args.beta is None else args.beta)
    if isinstance(X, GTMat):
        return GTMat(p, TMat(p, X.x1.planes), TMat(p, X.x2.planes))
    return TMat(p, X.planes)


def _tmat(X):
    if isinstance(X, GTMat):
        return X.collapse()
    return X


def _seed(args):
    if args.seed is not None:
        return args.seed
    env = os.environ.get("ABTESS_SEED")
    return int(env) if env else 0


# ---------------------------------------------------------------- commands


def cmd_inv(args):
    X = _load(args.matrix, args)
    _emit_matrix(matrix.g_matrix_inverse(X) if isinstance(X, GTMat) else matrix.inverse(X), args)


def cmd_sqrt(args):
    _emit_matrix(matrix.sqrt(_tmat(_load(args.matrix, args))), args)


def cmd_lu(args):
    lu = matrix.lu_pp(_tmat(_load(args.matrix, args)))
    doc = {"gamma": list(lu.gamma), "P": matrix_to_doc(lu.P),
           "L": matrix_to_doc(lu.L), "U": matrix_to_doc(lu.U)}
    _emit(json.dumps(doc) + "\n", args.out)


def cmd_det(args):
    X = _tmat(_load(args.matrix, args))
    d = matrix.det_permutation(X) if args.method == "perm" else matrix.det_lu(X)
    _emit_scalar(d, args)


def cmd_eig(args):
    X = _tmat(_load(args.matrix, args))
    ed = spectral.eig_hermitian(X) if args.hermitian else spectral.eig(X)
    keys = _scalar_keys(GTessarine()) if any(isinstance(v, GTessarine) for v in ed.lambdas) else list("abcd")
    rows = []
    for t, v in enumerate(ed.lambdas):
        vals = _scalar_fields(v)
        rows.append([t] + [_num(x) for x in (vals + [0.0] * (len(keys) - len(vals)))])
    if args.format == "json":
        text = json.dumps({"eigenvalues": [dict(zip(keys, map(float, r[1:]))) for r in rows]}) + "\n"
    else:
        text = _csv(["index"] + keys, rows)
    _emit(text, args.out)


def cmd_power(args):
    X = _tmat(_load(args.matrix, args))
    if args.x0:
        x0 = _tmat(load_matrix(args.x0))
        x0 = TMat(X.params, x0.planes)
    else:
        rng = np.random.default_rng(_seed(args))
        x0 = TMat(X.params, rng.normal(size=(4, X.rows, 1)))
    res = spectral.power_method(X, x0, max_iter=args.iters, tol=args.tol)
    extra = {"iterations": res.iterations, "converged": res.converged}
    if args.format is None:
        args.format = "csv"
    _emit_scalar(res.eigenvalue, args, extra)
    if res.near_degenerate:
        print("warning: leading channel eigenvalues are nearly degenerate", file=sys.stderr)


def cmd_svd(args):
    X = _tmat(_load(args.matrix, args))
    dec = spectral.svd(X)
    sig = dec.sigmas[:args.k] if args.k else dec.sigmas
    if args.format == "json":
        doc = {"sigmas": [dict(zip("abcd", s)) for s in sig],
               "U": matrix_to_doc(dec.U), "V": matrix_to_doc(dec.V)}
        _emit(json.dumps(doc) + "\n", args.out)
    else:
        _emit(_csv(["index", "a", "b", "c", "d"], [[t] + [_num(x) for x in s] for t, s in enumerate(sig)]),
              args.out)


def cmd_rank(args):
    _emit(f"{spectral.rank(_tmat(_load(args.matrix, args)))}\n", args.out)


def cmd_pinv(args):
    _emit_matrix(spectral.pseudoinverse(_tmat(_load(args.matrix, args))), args)


def cmd_lstsq(args):
    X = _tmat(_load(args.matrix, args))
    y = TMat(X.params, _tmat(load_matrix(args.y)).planes)
    sol = (lstsq_pinv if args.method == "pinv" else lstsq_normal)(X, y)
    if args.format == "csv":
        _emit(_matrix_csv(sol.h), args.out)
    else:
        doc = {"eps": sol.eps, "h": matrix_to_doc(sol.h)}
        _emit(json.dumps(doc) + "\n", args.out)


def cmd_levinson_bench(args):
    rows = bench.levinson_bench(p_max=args.p_max, step=args.step, repeats=args.repeats,
                                seed=_seed(args), pinv_every=args.pinv_every)
    _emit(bench.rows_to_csv(rows), args.out)


def _csv_floats(text):
    return [float(t) for t in text.split(",") if t.strip()]


def _params(args, default=(3.0, 1.0)):
    return Params(default[0] if args.alpha is None else args.alpha,
                  default[1] if args.beta is None else args.beta)


def cmd_wm_embed(args):
    p = _params(args)
    mus = _csv_floats(args.mu)
    if args.out:
        if len(mus) != 1:
            print("abtess wm-embed: error: --out needs exactly one --mu value", file=sys.stderr)
            raise SystemExit(2)
        AB = watermark.embed(args.host, args.mark, mus[0], p)
        watermark.save_image(watermark.tessarine_to_image(AB), args.out)
    if args.k:
        ks = tuple(int(k) for k in _csv_floats(args.k))
        rows = []
        for mu in mus:
            cfg = watermark.WatermarkConfig(mu=mu, k_values=ks, alpha=p.alpha, beta=p.beta)
            for r in watermark.watermark_pipeline(args.host, args.mark, cfg):
                rows.append([_num(r.mu), r.k, _fmt_db(r.psnr_host), _fmt_db(r.psnr_mark)])
        sys.stdout.write(_csv(["mu", "k", "psnr_host", "psnr_mark"], rows))


def cmd_wm_extract(args):
    p = _params(args)
    AB = watermark.image_to_tessarine(args.watermarked, p)
    mu = float(args.mu)
    A_hat, B_hat = watermark.extract(AB, int(args.k), mu)
    stem = args.out or "extracted"
    watermark.save_image(watermark.tessarine_to_image(A_hat), f"{stem}_host.png")
    watermark.save_image(watermark.tessarine_to_image(B_hat), f"{stem}_mark.png")
    sys.stdout.write(f"{stem}_host.png\n{stem}_mark.png\n")


def _fmt_db(v):
    return "inf" if math.isinf(v) else f"{v:.6f}"


def cmd_psnr(args):
    _emit(_fmt_db(watermark.psnr(args.image1, args.image2)) + "\n", args.out)


# ---------------------------------------------------------------- parser


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha", type=float, help="override alpha")
    common.add_argument("--beta", type=float, help="override beta")
    common.add_argument("--out", help="write the result to this path")
    common.add_argument("--format", choices=("json", "csv"))
    common.add_argument("--seed", type=int, help="random seed (falls back to $ABTESS_SEED)")

    parser = argparse.ArgumentParser(prog="abtess", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, matrix_arg=True):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if matrix_arg:
            sp.add_argument("matrix", help="matrix document (JSON)")
        sp.set_defaults(func=fn)
        return sp

    add("inv", cmd_inv, "matrix inverse")
    add("sqrt", cmd_sqrt, "principal square root")
    add("lu", cmd_lu, "LU factorization with partial pivoting")
    sp = add("det", cmd_det, "determinant")
    sp.add_argument("--method", choices=("lu", "perm"), default="lu")
    sp = add("eig", cmd_eig, "eigenvalues")
    sp.add_argument("--hermitian", action="store_true", help="use the Hermitian route")
    sp = add("power", cmd_power, "dominant eigenvalue by power iteration")
    sp.add_argument("--x0", help="seed vector document (p x 1)")
    sp.add_argument("--iters", type=int, default=1000)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp = add("svd", cmd_svd, "singular values")
    sp.add_argument("--k", type=int, help="report only the first k")
    add("rank", cmd_rank, "numerical rank")
    add("pinv", cmd_pinv, "pseudoinverse")
    sp = add("lstsq", cmd_lstsq, "least-squares solution")
    sp.add_argument("--y", required=True, help="right-hand side document (p x 1)")
    sp.add_argument("--method", choices=("normal", "pinv"), default="normal")

    sp = add("levinson-bench", cmd_levinson_bench, "Toeplitz solver timings", matrix_arg=False)
    sp.add_argument("--p-max", type=int, default=500)
    sp.add_argument("--step", type=int, default=10)
    sp.add_argument("--repeats", type=int, default=1)
    sp.add_argument("--pinv-every", type=int, default=1)

    sp = add("wm-embed", cmd_wm_embed, "embed a watermark / PSNR report", matrix_arg=False)
    sp.add_argument("host")
    sp.add_argument("mark")
    sp.add_argument("--mu", default="0.04", help="embedding strength(s), comma separated")
    sp.add_argument("--k", help="singular-value counts, comma separated (prints a report)")

    sp = add("wm-extract", cmd_wm_extract, "recover host and mark estimates", matrix_arg=False)
    sp.add_argument("watermarked")
    sp.add_argument("--mu", required=True)
    sp.add_argument("--k", required=True)

    sp = add("psnr", cmd_psnr, "peak signal-to-noise ratio", matrix_arg=False)
    sp.add_argument("image1")
    sp.add_argument("image2")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (TessarineError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
