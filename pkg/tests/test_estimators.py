import math

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.pipeline import make_pipeline

from gfreg import Cusp, Gaussian, Heaviside, Weierstrass
from gfreg.estimators import (GrowthFunctionEstimator, LocalRegularityEstimator, SmoothnessClassifier,
                              ZygmundExponentEstimator)


@pytest.fixture(scope="module")
def X(grid):
    return np.vstack([s.sample(grid).real for s in (Weierstrass(0.3), Cusp(0.5), Gaussian(), Heaviside())])


def test_growth_function_estimator(X):
    est = GrowthFunctionEstimator(max_order=2).fit(X)
    c = est.transform(X)
    assert c.shape == (4, 3)
    assert c[1] == pytest.approx([0, 0.5, 1.5], abs=0.05)
    assert c[2] == pytest.approx([0, 0, 0], abs=0.05)
    assert list(est.get_feature_names_out()) == ["c0", "c1", "c2"]
    assert est.classify(X)[3].k == 0


def test_zygmund_estimator(X):
    r = ZygmundExponentEstimator().fit(X).transform(X)
    assert r.shape == (4, 1)
    assert r[0, 0] == pytest.approx(0.3, abs=0.05)
    assert r[1, 0] == pytest.approx(0.5, abs=0.05)
    assert r[2, 0] == 4.0


def test_local_regularity_estimator(X, grid):
    est = LocalRegularityEstimator().fit(X)
    p = est.transform(X[1:2])
    assert p.shape == (1, est.positions_.size)
    assert p.min() == pytest.approx(0.5, abs=0.05)
    c = Cusp(0.5).singular_points(grid)[0]
    assert abs(est.argmin(X[1:2])[0] - c) < 2 * (est.positions_[1] - est.positions_[0])


def test_smoothness_classifier(X):
    y = np.array([False, False, True, False])
    clf = SmoothnessClassifier().fit(X, y)
    assert clf.predict(X).tolist() == y.tolist()
    assert clf.score(X, y) == 1.0
    scores = clf.decision_function(X)
    assert scores[2] < clf.slack < scores[1]


def test_clone_and_pipeline(X):
    est = clone(ZygmundExponentEstimator(r_cap=3.0))
    assert est.get_params()["r_cap"] == 3.0
    pipe = make_pipeline(ZygmundExponentEstimator())
    assert pipe.fit_transform(X).shape == (4, 1)


def test_unfitted_and_shape_errors(X):
    from sklearn.exceptions import NotFittedError
    with pytest.raises(NotFittedError):
        ZygmundExponentEstimator().transform(X)
    est = ZygmundExponentEstimator().fit(X)
    with pytest.raises(ValueError):
        est.transform(X[:, :2048])


def test_period_must_match_grid():
    with pytest.raises(ValueError):
        ZygmundExponentEstimator(period=-1.0).fit(np.zeros((1, 1024)))
