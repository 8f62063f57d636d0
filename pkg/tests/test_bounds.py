import numpy as np
import pytest

from qchsh import (
    TSIRELSON,
    CorrelationMatrix,
    chsh_bounds,
    correlation_matrix,
    ghz_chsh_maximum,
    ghz_correlation_matrix,
    ghz_state,
    horodecki_two_qubit,
    random_two_qudit_state,
    top_two_gram_eigenvalues,
)
from qchsh.errors import InvalidDimension, WrongDimension

ROOT2 = np.sqrt(2.0)


def test_top_two_gram_eigenvalues_examples():
    assert top_two_gram_eigenvalues(CorrelationMatrix(2, np.diag([1.0, -1.0, 1.0]))) == (1.0, 1.0)
    assert top_two_gram_eigenvalues(CorrelationMatrix(2, np.zeros((3, 3)))) == (0.0, 0.0)
    for d in range(2, 9):
        lam1, lam2 = top_two_gram_eigenvalues(ghz_correlation_matrix(d))
        assert lam1 == pytest.approx(4.0 / d**2, abs=1e-14)
        assert lam2 == pytest.approx(4.0 / d**2, abs=1e-14)


def test_chsh_bounds_ghz_qutrit():
    report = chsh_bounds(ghz_correlation_matrix(3))
    # (3/2) sqrt(8/9) = sqrt(2) and (2/3)*3*sqrt(8/9) = (4/3) sqrt(2)
    assert report.lower == pytest.approx(ROOT2, abs=1e-14)
    assert report.upper == pytest.approx(4.0 * ROOT2 / 3.0, abs=1e-14)
    assert report.upper_improves_tsirelson


def test_chsh_bounds_ghz_qubit():
    report = chsh_bounds(ghz_correlation_matrix(2))
    assert report.lower == pytest.approx(2.0 * ROOT2, abs=1e-14)
    assert report.upper == pytest.approx(2.0 * ROOT2, abs=1e-14)
    assert not report.upper_improves_tsirelson


def test_chsh_bounds_zero_matrix():
    report = chsh_bounds(CorrelationMatrix(3, np.zeros((8, 8))))
    assert report.lower == 0.0
    assert report.upper == 0.0


def test_bounds_ordering_random_states(basis):
    for d in (2, 3, 4):
        b = basis(d)
        for seed in range(25):
            report = chsh_bounds(correlation_matrix(random_two_qudit_state(d, seed), b))
            assert report.lower <= report.upper + 1e-12
            if d == 2:
                assert report.lower == pytest.approx(report.upper, abs=1e-12)


def test_horodecki_examples(basis):
    assert horodecki_two_qubit(CorrelationMatrix(2, np.diag([1.0, -1.0, 1.0]))) == pytest.approx(
        2.0 * ROOT2, abs=1e-14
    )
    assert horodecki_two_qubit(CorrelationMatrix(2, np.zeros((3, 3)))) == 0.0
    with pytest.raises(WrongDimension):
        horodecki_two_qubit(ghz_correlation_matrix(3))
    # coincides with both spectral bounds at d = 2
    t = correlation_matrix(random_two_qudit_state(2, seed=11), basis(2))
    report = chsh_bounds(t)
    exact = horodecki_two_qubit(t)
    assert report.lower == pytest.approx(exact, abs=1e-12)
    assert report.upper == pytest.approx(exact, abs=1e-12)


def test_ghz_correlation_closed_form_matches_computed(basis):
    np.testing.assert_allclose(
        ghz_correlation_matrix(2).matrix, np.diag([1.0, -1.0, 1.0]), atol=0
    )
    expected3 = np.diag([2 / 3] * 3 + [-2 / 3] * 3 + [2 / 3] * 2)
    np.testing.assert_allclose(ghz_correlation_matrix(3).matrix, expected3, atol=1e-15)
    for d in range(2, 9):
        computed = correlation_matrix(ghz_state(d), basis(d)).matrix
        assert np.max(np.abs(computed - ghz_correlation_matrix(d).matrix)) < 1e-12


def test_ghz_chsh_maximum_values():
    assert ghz_chsh_maximum(2) == pytest.approx(2.828427124746190, abs=1e-12)
    assert ghz_chsh_maximum(3) == pytest.approx(4.0 * ROOT2 / 3.0, abs=1e-14)
    assert ghz_chsh_maximum(5) == pytest.approx(8.0 * ROOT2 / 5.0, abs=1e-14)
    with pytest.raises(InvalidDimension):
        ghz_chsh_maximum(0)


def test_ghz_maximum_equals_upper_bound():
    for d in range(2, 9):
        report = chsh_bounds(ghz_correlation_matrix(d))
        assert abs(ghz_chsh_maximum(d) - report.upper) < 1e-12
        if d % 2 == 1:
            assert report.upper < TSIRELSON - 0.1
