import numpy as np
import pytest
from sklearn.base import clone

from polypart import IncidenceCounter, PolynomialPartitioner, SurfacePartitioner, configgen
from polypart._validation import check_points, check_slack


def test_partitioner_fit_transform_predict():
    X = configgen.random_box(120, seed=2)
    est = PolynomialPartitioner(rounds=3, seed=1)
    S = est.fit_transform(X)
    assert S.shape == (120, 3) and set(np.unique(S)) <= {-1, 0, 1}
    labels = est.predict(X)
    for j, cell in enumerate(est.cells_):
        assert sorted(np.flatnonzero(labels == j).tolist()) == sorted(est.result_.pieces[cell])
    assert (labels == -1).sum() == len(est.result_.residual)


def test_partitioner_float_input():
    X = np.random.default_rng(0).uniform(-1, 1, size=(50, 3))
    est = PolynomialPartitioner(rounds=2).fit(X)
    assert est.predict(X).shape == (50,)


def test_get_set_params_and_clone():
    est = PolynomialPartitioner(rounds=4, slack=0.2)
    assert est.get_params() == {"rounds": 4, "slack": 0.2, "seed": 0, "degree_constant": 2, "enum_budget": 3000, "restarts": 20}
    c = clone(est.set_params(seed=9))
    assert c.get_params()["seed"] == 9
    for cls in (SurfacePartitioner, IncidenceCounter):
        assert clone(cls()).get_params() == cls().get_params()


def test_not_fitted():
    with pytest.raises(RuntimeError):
        PolynomialPartitioner().transform([(0, 0, 0)])


def test_dimension_mismatch_after_fit():
    est = PolynomialPartitioner(rounds=1).fit(configgen.random_box(10, seed=0))
    with pytest.raises(ValueError):
        est.transform([(0, 0)])


def test_validation_helpers():
    assert check_points([]) == []
    with pytest.raises(ValueError):
        check_points([(0, 0, 0), (1, 1)])
    with pytest.raises(ValueError):
        check_slack(0.5)
