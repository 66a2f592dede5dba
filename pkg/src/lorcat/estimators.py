"""scikit-learn adapter: boost a batch of events into a moving frame.

Rows of ``X`` are events ``(t, x, y, z)``. There is nothing to learn; ``fit``
only validates the parameters and fixes the matrix.

>>> import numpy as np
>>> ft = FrameTransformer(velocity=[0.6, 0, 0], c=1.0).fit(np.zeros((1, 4)))
>>> ft.transform([[1.0, 0.0, 0.0, 0.0]]).round(6).tolist()
[[1.25, -0.75, 0.0, 0.0]]
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .kinematics import BoostDecomposition, galilean_matrix, relativistic_velocity
from .vecmat import IDENTITY3, lorentz_inverse, mat3, mat4_invert, vec3


class FrameTransformer(TransformerMixin, BaseEstimator):
    """Map events from the rest frame into a frame moving with ``velocity``.

    ``c=None`` selects the Galilean transform; otherwise the Lorentz boost at
    that light speed, optionally followed by ``rotation`` (3x3).
    """

    def __init__(self, velocity=(0.0, 0.0, 0.0), c=1.0, rotation=None):
        self.velocity = velocity
        self.c = c
        self.rotation = rotation

    def fit(self, X, y=None):
        X = check_array(X, dtype=float)
        if X.shape[1] != 4:
            raise ValueError(f"expected 4 columns (t, x, y, z), got {X.shape[1]}")
        if self.c is None:
            if self.rotation is not None:
                raise ValueError("Galilean transforms take no rotation")
            self.matrix_ = np.asarray(galilean_matrix(self.velocity))
            self.inverse_matrix_ = mat4_invert(self.matrix_)
        else:
            v = relativistic_velocity(vec3(self.velocity), self.c)
            r = IDENTITY3 if self.rotation is None else mat3(self.rotation)
            self.matrix_ = np.asarray(BoostDecomposition(r, v, float(self.c)).matrix())
            self.inverse_matrix_ = lorentz_inverse(self.matrix_, self.c)
        self.n_features_in_ = 4
        return self

    def transform(self, X):
        check_is_fitted(self, "matrix_")
        X = check_array(X, dtype=float)
        if X.shape[1] != 4:
            raise ValueError(f"expected 4 columns (t, x, y, z), got {X.shape[1]}")
        return X @ self.matrix_.T

    def inverse_transform(self, X):
        check_is_fitted(self, "matrix_")
        X = check_array(X, dtype=float)
        return X @ np.asarray(self.inverse_matrix_).T
