import itertools
import math

import numpy as np
import pytest

from abtess.algebra import (Params, Tessarine, associated_tessarine, conjugate, special_units,
                            tess_inverse, tess_modulus, tess_mul)
from abtess.errors import SingularMatrixError, ValidationError
from abtess.matrix import (GTMat, TMat, channels, det_lu, det_p_from_signatures, det_permutation,
                           from_channels_matrix, g_matrix_inverse, hermitian_transpose, inner_product,
                           inverse, is_n_hermitian, join_matrix, lu_pp, modulus_vec, mul, norm, scale,
                           split_matrix, sqrt)

from conftest import REGIMES, case1, maxabs, oracle_matmul, rand_tmat


def rel(X, Y):
    X = X.planes if hasattr(X, "planes") else np.asarray(X)
    Y = Y.planes if hasattr(Y, "planes") else np.asarray(Y)
    return maxabs(X - Y) / max(1.0, maxabs(Y))


def tarr(x):
    return x.to_array()


def conj_planes(X, axis):
    idx = {"i": (2, 3), "j": (1, 3), "k": (1, 2)}[axis]
    P = X.planes.copy()
    for t in idx:
        P[t] = -P[t]
    return TMat(X.params, P)


class TestArithmetic:
    def test_identity(self, rng, params):
        X = rand_tmat(rng, params, 4)
        assert rel(TMat.eye(4, params) @ X, X) < 1e-15

    def test_matches_unit_table(self, rng, params):
        X = rand_tmat(rng, params, 3, 4)
        Y = rand_tmat(rng, params, 4, 2)
        assert rel(mul(X, Y), oracle_matmul(X, Y)) < 1e-12

    def test_associative(self, rng, params):
        X, Y, Z = (rand_tmat(rng, params, 3) for _ in range(3))
        assert rel((X @ Y) @ Z, X @ (Y @ Z)) < 1e-11

    def test_scale_is_diagonal_product(self, rng, params):
        X = rand_tmat(rng, params, 3)
        x = Tessarine.from_array(rng.normal(size=4))
        D = TMat(params, np.stack([v * np.eye(3) for v in x]))
        assert rel(scale(x, X), D @ X) < 1e-12

    def test_mismatch(self, rng):
        p = Params(2, 1)
        with pytest.raises(ValidationError):
            rand_tmat(rng, p, 2) @ rand_tmat(rng, p, 3)
        with pytest.raises(ValidationError):
            rand_tmat(rng, p, 2) + rand_tmat(rng, Params(3, 1), 2)

    def test_entry_access(self):
        X = TMat.from_entries([[(1, 2, 3, 4)]], Params(1, 1))
        assert X.entry(0, 0) == Tessarine(1, 2, 3, 4)
        assert X.A[0, 0] == 1 and X.D[0, 0] == 4

    def test_rejects_non_finite(self):
        with pytest.raises(ValidationError):
            TMat(Params(1, 1), np.full((4, 1, 1), np.nan))


class TestHermitian:
    def test_one_by_one(self):
        X = TMat.from_entries([[(1, 2, 3, 4)]], Params(-1, 1))
        assert hermitian_transpose(X, 2).entry(0, 0) == Tessarine(1, -2, 3, -4)
        assert hermitian_transpose(X, 1).entry(0, 0) == Tessarine(1, 2, 3, 4)

    @pytest.mark.parametrize("n", [1, 2])
    def test_involution_and_reversal(self, rng, params, n):
        X = rand_tmat(rng, params, 3, 4)
        Y = rand_tmat(rng, params, 4, 2)
        assert rel(hermitian_transpose(hermitian_transpose(X, n), n), X) == 0
        lhs = hermitian_transpose(X @ Y, n)
        rhs = hermitian_transpose(Y, n) @ hermitian_transpose(X, n)
        assert rel(lhs, rhs) < 1e-12

    def test_identity_is_hermitian(self):
        for n in (1, 2):
            assert is_n_hermitian(TMat.eye(3, Params(1, 1)), n)

    def test_case_matrix(self):
        X = case1(Params(14, 2))
        assert is_n_hermitian(X, 1)
        assert not is_n_hermitian(X, 2)

    @pytest.mark.parametrize("n", [1, 2])
    def test_symmetrized(self, rng, params, n):
        X = rand_tmat(rng, params, 4)
        assert is_n_hermitian(X + hermitian_transpose(X, n), n)

    def test_quadratic_form_of_two_hermitian(self, rng):
        p = Params(-2, 3)
        for _ in range(20):
            X = rand_tmat(rng, p, 4)
            H = X + hermitian_transpose(X, 2)
            x = rand_tmat(rng, p, 4, 1)
            q = (hermitian_transpose(x, 2) @ H @ x).entry(0, 0)
            assert abs(q.b) < 1e-12 * max(1, abs(q.a)) * 10
            assert abs(q.d) < 1e-12 * max(1, abs(q.a)) * 10


class TestSplitJoin:
    def test_real_matrix(self, rng, params):
        A = rng.normal(size=(3, 3))
        Xs, Xd = split_matrix(TMat.from_components(A, params=params))
        assert np.array_equal(Xs.re, A) and np.array_equal(Xd.re, A)

    def test_round_trip(self, rng, params):
        X = rand_tmat(rng, params, 3, 5)
        Xs, Xd = split_matrix(X)
        assert rel(join_matrix(Xs, Xd, params), X) < 1e-14

    def test_product_splits(self, rng, params):
        X = rand_tmat(rng, params, 3)
        Y = rand_tmat(rng, params, 3)
        Xs, Xd = split_matrix(X)
        Ys, Yd = split_matrix(Y)
        assert rel(join_matrix(Xs @ Ys, Xd @ Yd, params), X @ Y) < 1e-12

    def test_channel_round_trip(self, rng, params):
        X = rand_tmat(rng, params, 2, 3)
        assert rel(from_channels_matrix(channels(X), params), X) < 1e-14


class TestInnerProductAndNorm:
    def test_identity(self, params):
        I = TMat.eye(3, params)
        assert inner_product(I, I) == Tessarine(3)
        assert math.isclose(norm(I), math.sqrt(3))
        assert norm(TMat.zeros(2, 2, params)) == 0

    def test_symmetry_positive_alpha(self, rng):
        p = Params(3, 2)
        X, Y = rand_tmat(rng, p, 3), rand_tmat(rng, p, 3)
        assert rel(tarr(inner_product(X, Y, 1)), tarr(inner_product(Y, X, 1))) < 1e-13

    def test_symmetry_negative_alpha(self, rng):
        p = Params(-3, 2)
        X, Y = rand_tmat(rng, p, 3), rand_tmat(rng, p, 3)
        lhs = inner_product(X, Y, 2)
        rhs = conjugate(inner_product(Y, X, 2), "j")
        assert rel(tarr(lhs), tarr(rhs)) < 1e-13

    def test_norm_of_j(self):
        x = TMat.from_entries([[(0, 0, 1, 0)]], Params(-1, 2))
        assert math.isclose(norm(x) ** 2, 2.0)

    def test_norm_from_channels(self, rng, params):
        X = rand_tmat(rng, params, 4, 3)
        ch = channels(X)
        expect = np.sum(np.abs(ch) ** 2) / (4 if params.alpha > 0 else 2)
        assert math.isclose(norm(X) ** 2, expect, rel_tol=1e-12)

    def test_modulus_scalar_vector(self, rng, params):
        x = Tessarine.from_array(rng.normal(size=4))
        y = rand_tmat(rng, params, 3, 1)
        lhs = modulus_vec(scale(x, y))
        rhs = tess_mul(tess_modulus(x, params), modulus_vec(y), params)
        assert rel(tarr(lhs), tarr(rhs)) < 1e-11

    def test_unit_modulus_after_normalizing(self, rng, params):
        y = rand_tmat(rng, params, 3, 1)
        x = scale(tess_inverse(modulus_vec(y), params), y)
        assert rel(tarr(modulus_vec(x)), [1, 0, 0, 0]) < 1e-12


class TestDeterminant:
    def test_basic(self, rng, params):
        assert det_permutation(TMat.eye(3, params)) == Tessarine(1)
        x, y = (Tessarine.from_array(rng.normal(size=4)) for _ in range(2))
        D = TMat.from_entries([[x, (0, 0, 0, 0)], [(0, 0, 0, 0), y]], params)
        assert rel(tarr(det_permutation(D)), tarr(tess_mul(x, y, params))) < 1e-14
        A = TMat.from_entries([[(0, 0, 0, 0), x], [y, (0, 0, 0, 0)]], params)
        assert rel(tarr(det_permutation(A)), -tarr(tess_mul(x, y, params))) < 1e-14

    def test_guard(self, params):
        with pytest.raises(ValidationError):
            det_permutation(TMat.eye(9, params))

    @pytest.mark.parametrize("n", [3, 4])
    def test_lu_route(self, rng, params, n):
        X = rand_tmat(rng, params, n)
        assert rel(tarr(det_lu(X)), tarr(det_permutation(X))) < 1e-8

    def test_multiplicative(self, rng, params):
        X, Y = rand_tmat(rng, params, 3), rand_tmat(rng, params, 3)
        lhs = det_lu(X @ Y)
        rhs = tess_mul(det_lu(X), det_lu(Y), params)
        assert rel(tarr(lhs), tarr(rhs)) < 1e-9

    @pytest.mark.parametrize("axis", "ijk")
    def test_conjugation(self, rng, params, axis):
        X = rand_tmat(rng, params, 3)
        lhs = det_permutation(conj_planes(X, axis))
        rhs = conjugate(det_permutation(X), axis)
        assert rel(tarr(lhs), tarr(rhs)) < 1e-12

    def test_inverse_det(self, rng, params):
        X = rand_tmat(rng, params, 3)
        lhs = det_lu(inverse(X))
        rhs = tess_inverse(det_lu(X), params)
        assert rel(tarr(lhs), tarr(rhs)) < 1e-9


class TestSignatureTable:
    def test_listed_values(self):
        p = Params(-2, 4)
        assert det_p_from_signatures([1, 1], p) == Tessarine(1)
        assert det_p_from_signatures([-1, -1], p) == Tessarine(-1)
        assert det_p_from_signatures([1, -1], p) == Tessarine(0, 0, 0.5)
        assert det_p_from_signatures([-1, 1], p) == Tessarine(0, 0, -0.5)
        q = Params(4, 9)
        assert det_p_from_signatures([1, -1, -1, 1], q) == Tessarine(0, 0, 0, 1 / 6)
        assert det_p_from_signatures([1, -1, -1, -1], q) == Tessarine(-0.5, 0.25, 1 / 6, 1 / 12)
        assert det_p_from_signatures([1, 1, 1, -1], q) == Tessarine(0.5, 0.25, 1 / 6, -1 / 12)

    def test_malformed(self):
        with pytest.raises(ValidationError):
            det_p_from_signatures([1, 1, 1], Params(2, 1))
        with pytest.raises(ValidationError):
            det_p_from_signatures([1, 0], Params(-2, 1))
        with pytest.raises(ValidationError):
            det_p_from_signatures([1, 0.5], Params(-2, 1))

    @pytest.mark.parametrize("p", REGIMES)
    def test_unit_modulus(self, p):
        for g in itertools.product([1, -1], repeat=p.n_channels):
            d = det_p_from_signatures(g, p)
            assert rel(tarr(tess_modulus(d, p)), [1, 0, 0, 0]) < 1e-14


class TestInverse:
    def test_identity(self, params):
        assert rel(inverse(TMat.eye(3, params)), TMat.eye(3, params)) < 1e-15

    def test_diagonal(self, rng, params):
        xs = [Tessarine.from_array(v) for v in rng.normal(size=(3, 4)) + [3, 0, 0, 0]]
        D = TMat(params, np.stack([np.diag([x.to_array()[t] for x in xs]) for t in range(4)]))
        inv = inverse(D)
        for t, x in enumerate(xs):
            assert rel(tarr(inv.entry(t, t)), tarr(tess_inverse(x, params))) < 1e-12

    def test_zero_channel(self, params):
        w1, w2 = special_units(params)
        with pytest.raises(SingularMatrixError) as err:
            inverse(scale(w1, TMat.eye(3, params)))
        assert err.value.channel in ("d", "3", "4")
        with pytest.raises(SingularMatrixError) as err:
            inverse(scale(w2, TMat.eye(3, params)))
        assert err.value.channel in ("s", "1", "2")

    def test_residual_and_reversal(self, rng, params):
        X, Y = rand_tmat(rng, params, 4), rand_tmat(rng, params, 4)
        I = TMat.eye(4, params)
        assert rel(X @ inverse(X), I) < 1e-10
        assert rel(inverse(X) @ X, I) < 1e-10
        assert rel(inverse(X @ Y), inverse(Y) @ inverse(X)) < 1e-9


class TestGeneralizedInverse:
    p = Params(3, 2)

    def test_embedding(self, rng):
        X = rand_tmat(rng, self.p, 3)
        G = g_matrix_inverse(GTMat.embed(X))
        assert rel(G.x1, inverse(X)) < 1e-12 and maxabs(G.x2.planes) < 1e-12

    def test_identity(self):
        G = g_matrix_inverse(GTMat.embed(TMat.eye(3, self.p)))
        assert rel(G.x1, TMat.eye(3, self.p)) < 1e-15

    def test_residual(self, rng):
        X = GTMat.from_planes(self.p, rng.normal(size=(4, 3, 3)) + 1j * rng.normal(size=(4, 3, 3)))
        R = X @ g_matrix_inverse(X)
        assert maxabs(R.planes - TMat.eye(3, self.p).planes) < 1e-10


class TestSqrt:
    def test_identity(self, params):
        S = sqrt(TMat.eye(3, params))
        assert rel(S.x1, TMat.eye(3, params)) < 1e-15
        S = sqrt(TMat(params, 4 * TMat.eye(3, params).planes))
        assert rel(S.x1, TMat(params, 2 * TMat.eye(3, params).planes)) < 1e-14

    def test_positive_definite(self, rng, params):
        Y = rand_tmat(rng, params, 4)
        X = hermitian_transpose(Y, params.n) @ Y + TMat.eye(4, params)
        S = sqrt(X)
        assert maxabs((S @ S).planes - X.planes) <= 1e-9 * max(1, maxabs(X.planes))
        if params.alpha < 0:
            assert np.all(S.x2.planes == 0)

    def test_general(self, rng, params):
        X = rand_tmat(rng, params, 4)
        S = sqrt(X)
        assert maxabs((S @ S).planes - X.planes) <= 1e-9 * max(1, maxabs(X.planes))


class TestLU:
    def test_identity(self, params):
        lu = lu_pp(TMat.eye(3, params))
        for M in (lu.P, lu.L, lu.U):
            assert rel(M, TMat.eye(3, params)) == 0
        assert set(lu.gamma) == {1} and len(lu.gamma) == params.n_channels

    def test_permutation_input(self, params):
        perm = [2, 0, 1]
        X = TMat.from_components(np.eye(3)[perm], params=params)
        lu = lu_pp(X)
        assert rel(lu.U, TMat.eye(3, params)) < 1e-15
        assert rel(lu.P, hermitian_transpose(X, 1)) < 1e-15
        assert set(lu.gamma) == {1}

    def test_residual_and_orthogonality(self, rng, params):
        X = rand_tmat(rng, params, 6)
        lu = lu_pp(X)
        assert maxabs((lu.P @ X).planes - (lu.L @ lu.U).planes) <= 1e-10 * norm(X)
        PtP = hermitian_transpose(lu.P, params.n) @ lu.P
        assert rel(PtP, TMat.eye(6, params)) < 1e-10

    def test_det_of_p(self, rng, params):
        lu = lu_pp(rand_tmat(rng, params, 4))
        assert rel(tarr(det_permutation(lu.P)), tarr(det_p_from_signatures(lu.gamma, params))) < 1e-12


def test_trace_homomorphism(rng):
    p = Params(2, 5)
    X = rand_tmat(rng, p, 4)
    tr = Tessarine.from_array(np.trace(X.planes, axis1=1, axis2=2))
    assoc = associated_tessarine(tr, p).to_array()
    assert np.allclose(assoc, np.trace(channels(X), axis1=1, axis2=2), atol=1e-12)
