import math

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from kgflow import ConformalFactorModel, eval_conformal

from .conftest import SHEAR_TEXT


@pytest.fixture(scope="module")
def fitted():
    return ConformalFactorModel(hamiltonian=SHEAR_TEXT, order=6).fit()


def test_get_params_round_trip():
    model = ConformalFactorModel(hamiltonian="0", order=3, mode="polynomial")
    params = model.get_params()
    assert params["order"] == 3
    assert params["mode"] == "polynomial"
    other = clone(model)
    assert other.get_params() == params


def test_requires_hamiltonian():
    with pytest.raises(ValueError):
        ConformalFactorModel().fit()


def test_requires_fit_before_predict():
    model = ConformalFactorModel(hamiltonian="0")
    with pytest.raises(NotFittedError):
        model.predict([[0.1, 0.2, 0.0]])


def test_predict_matches_pointwise(fitted):
    X = np.array([[0.1, 0.4, 0.05], [0.8, 0.2, -0.1], [0.3, 0.3, 0.0]])
    got = fitted.predict(X)
    for row, h in zip(X, got):
        want = eval_conformal(fitted.series_, *row).h
        assert math.isclose(h, want, rel_tol=1e-12)


def test_transform_columns(fitted):
    X = [[0.1, 0.4, 0.05]]
    out = fitted.transform(X)
    assert out.shape == (1, 3)
    ref = eval_conformal(fitted.series_, 0.1, 0.4, 0.05)
    assert math.isclose(out[0, 0], ref.h, rel_tol=1e-12)
    assert out[0, 1] == pytest.approx(ref.im_residual, abs=1e-15)
    assert math.isclose(out[0, 2], ref.denom_abs, rel_tol=1e-12)


def test_polynomial_mode():
    model = ConformalFactorModel(
        hamiltonian=SHEAR_TEXT, order=6, mode="polynomial"
    ).fit()
    got = model.predict([[0.1, 0.4, 0.05]])[0]
    want = eval_conformal(model.series_, 0.1, 0.4, 0.05, mode="polynomial").h
    assert math.isclose(got, want, rel_tol=1e-12)


def test_blowup_mask(fitted):
    t = 1.0 / (2 * math.pi)
    X = [[0.25, 0.0, t], [0.0, 0.0, 0.01]]
    mask = fitted.blowup_mask(X)
    assert mask.tolist() == [True, False]


def test_input_validation(fitted):
    with pytest.raises(ValueError):
        fitted.predict([[0.1, 0.2]])
    with pytest.raises(ValueError):
        fitted.predict([[0.1, 0.2, float("nan")]])
    with pytest.raises(ValueError):
        fitted.predict(np.zeros((2, 2, 2)))


def test_trigpoly_hamiltonian_accepted(quartic):
    model = ConformalFactorModel(hamiltonian=quartic, order=2).fit()
    assert model.predict([[0.25, 0.25, 0.0]])[0] == pytest.approx(1.0)
