"""Estimator-style wrappers following the scikit-learn conventions.

The estimators act on a single tessarine matrix: rows are observations and
columns are features, every entry a tessarine.
"""

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_column, check_params, check_tmat
from .errors import ValidationError
from .leastsq import lstsq_normal, lstsq_pinv
from .matrix import TMat, hermitian_transpose, mul
from .spectral import svd


class TessarineSVD(TransformerMixin, BaseEstimator):
    """Truncated SVD over tessarines.

    ``transform`` projects rows onto the leading ``n_components`` right
    singular vectors; ``inverse_transform`` maps back, so the round trip is
    the optimal rank-``n_components`` approximation.
    """

    def __init__(self, n_components=2, alpha=3.0, beta=1.0):
        self.n_components = n_components
        self.alpha = alpha
        self.beta = beta

    def fit(self, X, y=None):
        params = check_params(self.alpha, self.beta)
        X = check_tmat(X, params)
        k = int(self.n_components)
        if not 1 <= k <= min(X.shape):
            raise ValidationError(f"n_components must lie in [1, {min(X.shape)}]")
        dec = svd(X)
        self.params_ = params
        self.singular_values_ = dec.sigmas[:k]
        self.components_ = TMat(params, dec.V.planes[:, :, :k])
        self.n_features_in_ = X.cols
        return self

    def transform(self, X):
        check_is_fitted(self, "components_")
        X = check_tmat(X, self.params_)
        if X.cols != self.n_features_in_:
            raise ValidationError(f"expected {self.n_features_in_} columns, got {X.cols}")
        return mul(X, self.components_)

    def inverse_transform(self, Z):
        check_is_fitted(self, "components_")
        Z = check_tmat(Z, self.params_, "Z")
        return mul(Z, hermitian_transpose(self.components_, self.params_.n))


class TessarineLeastSquares(BaseEstimator):
    """Linear least squares ``y ~ X h`` with tessarine coefficients."""

    def __init__(self, alpha=3.0, beta=1.0, method="normal"):
        self.alpha = alpha
        self.beta = beta
        self.method = method

    def fit(self, X, y):
        params = check_params(self.alpha, self.beta)
        X = check_tmat(X, params)
        y = check_column(y, params, X.rows)
        if self.method not in ("normal", "pinv"):
            raise ValidationError(f"unknown method {self.method!r}")
        sol = (lstsq_normal if self.method == "normal" else lstsq_pinv)(X, y)
        self.params_ = params
        self.coef_ = sol.h
        self.residual_ = sol.eps
        self.n_features_in_ = X.cols
        return self

    def predict(self, X):
        check_is_fitted(self, "coef_")
        X = check_tmat(X, self.params_)
        if X.cols != self.n_features_in_:
            raise ValidationError(f"expected {self.n_features_in_} columns, got {X.cols}")
        return mul(X, self.coef_)
