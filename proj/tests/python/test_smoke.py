import math

import numpy as np
import pytest

import semihilbert as sh

A12 = np.diag([1.0, 2.0])
X = np.array([[0, 1], [0, 0]], dtype=complex)
Y = np.array([[1, 0], [0, 0]], dtype=complex)


def test_metric_fields():
    m = sh.build_metric(A12)
    assert m.rank == 2
    assert np.allclose(m.sqrt_a, np.diag([1.0, math.sqrt(2.0)]))
    assert sh.build_metric(np.diag([1.0, 0.0])).rank == 1


def test_radii_on_nilpotent():
    m = sh.build_metric(A12)
    assert sh.op_seminorm(m, X).value == pytest.approx(1 / math.sqrt(2))
    assert sh.numerical_radius(m, X).value == pytest.approx(1 / (2 * math.sqrt(2)), rel=1e-9)
    est = sh.dw_radius(m, X)
    assert float(est) == pytest.approx(0.5, rel=1e-9)
    assert sh.semi_norm(m, est.witness) == pytest.approx(1.0)
    assert est.method == "multistart"


def test_oracle_and_identity():
    m = sh.build_metric(np.eye(2))
    assert sh.oracle_extremum(m, np.eye(2), "dw", 2000, 1).value == pytest.approx(math.sqrt(2), rel=1e-6)
    with pytest.raises(ValueError):
        sh.oracle_extremum(m, np.eye(2), "nope", 10, 1)


def test_sharp():
    m = sh.build_metric(A12)
    assert np.allclose(sh.sharp(m, X), [[0, 0], [0.5, 0]])
    assert np.allclose(m.a @ sh.sharp(m, X), X.conj().T @ m.a)


def test_exact_and_cardano():
    m = sh.build_metric(A12)
    assert sh.dw_exact_0x(m, X).value == pytest.approx(0.5)
    d = sh.cardano_theta0(1.0)
    assert d["theta0"] == pytest.approx(0.6786578, rel=1e-6)
    assert sh.dw_exact_ix(sh.build_metric(np.eye(1)), np.array([[1.0]])).value == pytest.approx(2.2600488, rel=1e-7)


def test_verify_reports():
    m = sh.build_metric(A12)
    rep = sh.verify_all(m, X, seed=1, samples=2000)
    assert rep["pass"]
    pair = sh.verify_pair(m, X, Y, seed=1, samples=2000)
    sums = [r for r in pair["records"] if r["name"] == "sum_upper"]
    assert sums and sums[0]["value"] == pytest.approx(2.621320, abs=5e-4)


def test_errors_are_typed():
    m = sh.build_metric(np.diag([1.0, 0.0]))
    with pytest.raises(sh.SemiHilbertError, match="NotABounded"):
        sh.dw_radius(m, X)
    with pytest.raises(sh.SemiHilbertError, match="NotPositiveSemidefinite"):
        sh.build_metric(np.diag([1.0, -1.0]))
