import numpy as np
import pytest

from qchsh import (
    SeesawConfig,
    chsh_expectation_direct,
    closed_form_party_update,
    correlation_matrix,
    ghz_chsh_maximum,
    ghz_optimal_settings,
    ghz_state,
    is_admissible,
    operator_norm,
    optimal_mixing_angle,
    project_to_admissible,
    random_search_max,
    random_two_qudit_state,
    seesaw_maximize,
    traceless_linear_max,
    validate_state,
)
from qchsh.errors import BothDegenerate, DegenerateDirection, InvalidConfig, NotTraceless

from conftest import polytope_vertex_max, random_hermitian

ROOT2 = np.sqrt(2.0)


def random_unitary(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(g)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def test_linear_max_antisymmetric_spectrum(basis):
    c = np.diag([0.7, -0.7]).astype(complex)
    obs, value = traceless_linear_max(c, basis(2))
    assert value == pytest.approx(1.4, abs=1e-14)
    np.testing.assert_allclose(np.linalg.eigvalsh(obs.matrix), [-1.0, 1.0], atol=1e-12)


def test_linear_max_qutrit_example(basis):
    # median 0.3: mu = (1, 0, -1) and value 0.2 + 1.1 = 1.3
    obs, value = traceless_linear_max(np.diag([0.5, 0.3, -0.8]).astype(complex), basis(3))
    assert value == pytest.approx(1.3, abs=1e-14)
    np.testing.assert_allclose(sorted(np.linalg.eigvalsh(obs.matrix)), [-1.0, 0.0, 1.0], atol=1e-12)


def test_linear_max_even_dimension_example(basis):
    obs, value = traceless_linear_max(np.diag([3.0, 1.0, -1.0, -3.0]).astype(complex), basis(4))
    assert value == pytest.approx(8.0, abs=1e-13)
    assert obs.is_admissible()


def test_linear_max_rejects_traceful_input(basis):
    with pytest.raises(NotTraceless):
        traceless_linear_max(np.eye(2, dtype=complex), basis(2))


def test_linear_max_matches_vertex_enumeration(basis, rng):
    for d in (2, 3, 4):
        b = basis(d)
        for _ in range(100):
            c = random_hermitian(rng, d, traceless=True)
            obs, value = traceless_linear_max(c, b)
            lam = np.linalg.eigvalsh(c)
            assert abs(value - polytope_vertex_max(lam)) < 1e-12
            # the certificate reproduces the value and stays admissible
            assert np.trace(obs.matrix @ c).real == pytest.approx(value, abs=1e-10)
            assert obs.is_admissible()


def test_linear_max_invariant_under_rotation(basis, rng):
    b = basis(3)
    lam = np.array([0.5, 0.3, -0.8])
    for _ in range(10):
        u = random_unitary(rng, 3)
        c = u @ np.diag(lam).astype(complex) @ u.conj().T
        _, value = traceless_linear_max(c, b)
        assert value == pytest.approx(1.3, abs=1e-12)


def test_closed_form_update_bell_example(basis):
    from qchsh import chsh_expectation_from_correlations

    b = basis(2)
    t = correlation_matrix(ghz_state(2), b)
    b1 = np.array([1.0, 0.0, 0.0])
    b2 = np.array([0.0, 0.0, 1.0])
    a1, a2 = closed_form_party_update(t, b1, b2, "alice", b)
    np.testing.assert_allclose(a1, np.array([1.0, 0.0, 1.0]) / ROOT2, atol=1e-12)
    np.testing.assert_allclose(a2, np.array([1.0, 0.0, -1.0]) / ROOT2, atol=1e-12)
    assert is_admissible(a1, b) and is_admissible(a2, b)
    # one update already lands on the fixed point with value 2*sqrt(2)
    value = chsh_expectation_from_correlations(t, a1, a2, b1, b2)
    assert value == pytest.approx(2.0 * ROOT2, abs=1e-14)


def test_closed_form_update_degenerate_paths(basis):
    from qchsh import CorrelationMatrix

    b = basis(2)
    zero_t = CorrelationMatrix(2, np.zeros((3, 3)))
    u = np.array([1.0, 0.0, 0.0])
    v = np.array([0.0, 0.0, 1.0])
    with pytest.raises(DegenerateDirection) as info:
        closed_form_party_update(zero_t, u, v, "alice", b)
    assert set(info.value.slots) == {"plus", "minus"}

    t = correlation_matrix(ghz_state(2), b)
    with pytest.raises(DegenerateDirection) as info:
        closed_form_party_update(t, u, u, "bob", b)
    assert info.value.slots == ("minus",)


def test_optimal_mixing_angle(basis):
    b = basis(2)
    t = correlation_matrix(ghz_state(2), b)
    r1 = np.array([1.0, 0.0, 0.0])
    r2 = np.array([0.0, 0.0, 1.0])
    assert optimal_mixing_angle(t, r1, r2, b) == pytest.approx(np.pi / 4.0, abs=1e-12)

    # one degenerate direction pins the angle to an endpoint
    t_x_only = type(t)(2, np.diag([1.0, 0.0, 0.0]))
    assert optimal_mixing_angle(t_x_only, r1, r2, b) == 0.0
    assert optimal_mixing_angle(t_x_only, r2, r1, b) == pytest.approx(np.pi / 2.0)

    with pytest.raises(BothDegenerate):
        optimal_mixing_angle(type(t)(2, np.zeros((3, 3))), r1, r2, b)


def test_optimal_mixing_angle_against_grid_search(basis, rng):
    b3 = basis(3)
    t = correlation_matrix(ghz_state(3), b3)
    cases = [
        (project_to_admissible(np.eye(8)[0], b3), project_to_admissible(np.eye(8)[1], b3)),
    ]
    for _ in range(5):
        cases.append(
            (
                project_to_admissible(rng.standard_normal(8), b3),
                project_to_admissible(rng.standard_normal(8), b3),
            )
        )
    thetas = np.linspace(0.0, np.pi / 2.0, 10_000)
    for r1, r2 in cases:
        w1, w2 = t.matrix @ r1, t.matrix @ r2
        c1 = np.dot(w1, w1) / b3.vector_operator_norm(w1)
        c2 = np.dot(w2, w2) / b3.vector_operator_norm(w2)
        theta0 = optimal_mixing_angle(t, r1, r2, b3)
        objective = c1 * np.cos(thetas) + c2 * np.sin(thetas)
        at_theta0 = c1 * np.cos(theta0) + c2 * np.sin(theta0)
        assert at_theta0 >= float(np.max(objective)) - 1e-8
        assert at_theta0 == pytest.approx(np.hypot(c1, c2), abs=1e-12)
    # orthonormal eigenvector directions with equal gains meet in the middle
    assert optimal_mixing_angle(t, cases[0][0], cases[0][1], b3) == pytest.approx(np.pi / 4)


def test_ghz_optimal_settings_values(basis):
    for d, expected in ((2, 2.0 * ROOT2), (3, 4.0 * ROOT2 / 3.0), (6, 2.0 * ROOT2)):
        settings = ghz_optimal_settings(d, basis(d))
        value = chsh_expectation_direct(ghz_state(d), settings)
        assert value == pytest.approx(expected, abs=1e-12)
        for obs in settings.all:
            assert obs.is_admissible()
            assert np.max(np.abs(obs.matrix.imag)) == 0.0
            assert np.max(np.abs(obs.matrix - obs.matrix.T)) == 0.0


def test_ghz_optimal_settings_odd_padding(basis):
    settings = ghz_optimal_settings(5, basis(5))
    for obs in settings.all:
        assert np.max(np.abs(obs.matrix[4, :])) == 0.0
        assert np.max(np.abs(obs.matrix[:, 4])) == 0.0
        assert operator_norm(obs.matrix) == pytest.approx(1.0, abs=1e-12)


def test_seesaw_reaches_ghz_maximum(basis):
    for d, tol in ((2, 1e-8), (3, 1e-6)):
        config = SeesawConfig(mode="exact", restarts=8, seed=1)
        result = seesaw_maximize(ghz_state(d), basis(d), config)
        assert result.value == pytest.approx(ghz_chsh_maximum(d), abs=tol)
        assert result.monotone


def test_seesaw_on_maximally_mixed_state(basis):
    state = validate_state(np.eye(16, dtype=complex) / 16.0, 4)
    result = seesaw_maximize(state, basis(4), SeesawConfig(restarts=4, seed=0))
    assert abs(result.value) < 1e-9


def test_seesaw_certificate_consistency(basis):
    b = basis(3)
    state = random_two_qudit_state(3, seed=42)
    result = seesaw_maximize(state, b, SeesawConfig(mode="exact", restarts=6, seed=3))
    recomputed = chsh_expectation_direct(state, result.settings)
    assert abs(abs(recomputed) - result.value) < 1e-9
    for vec in (result.a1, result.a2, result.b1, result.b2):
        assert is_admissible(vec, b)
    for obs in result.settings.all:
        assert obs.is_admissible()


def test_seesaw_closed_form_mode(basis):
    result = seesaw_maximize(
        ghz_state(2), basis(2), SeesawConfig(mode="closed-form", restarts=8, seed=3)
    )
    assert result.value == pytest.approx(2.0 * ROOT2, abs=1e-8)
    assert result.mode == "closed-form"


def test_seesaw_deterministic_and_thread_invariant(basis):
    b = basis(3)
    state = random_two_qudit_state(3, seed=9)
    config = SeesawConfig(mode="exact", restarts=5, seed=7)
    first = seesaw_maximize(state, b, config)
    second = seesaw_maximize(state, b, config)
    threaded = seesaw_maximize(state, b, config, threads=4)
    assert first.value == second.value == threaded.value
    np.testing.assert_array_equal(first.a1, threaded.a1)
    np.testing.assert_array_equal(first.b2, threaded.b2)


def test_seesaw_config_validation():
    with pytest.raises(InvalidConfig):
        SeesawConfig(restarts=0)
    with pytest.raises(InvalidConfig):
        SeesawConfig(max_iterations=0)
    with pytest.raises(InvalidConfig):
        SeesawConfig(tolerance=0.0)
    with pytest.raises(InvalidConfig):
        SeesawConfig(mode="gradient")


def test_random_search_bell_state(basis):
    b = basis(2)
    value = random_search_max(ghz_state(2), b, samples=100_000, seed=0)
    assert 2.7 <= value <= 2.0 * ROOT2 + 1e-12


def test_random_search_maximally_mixed(basis):
    state = validate_state(np.eye(4, dtype=complex) / 4.0, 2)
    assert random_search_max(state, basis(2), samples=1000, seed=1) < 1e-12


def test_random_search_never_beats_exact_seesaw(basis):
    b = basis(3)
    for seed in (0, 1):
        state = random_two_qudit_state(3, seed)
        sampled = random_search_max(state, b, samples=2000, seed=seed)
        optimized = seesaw_maximize(state, b, SeesawConfig(mode="exact", restarts=6, seed=seed))
        assert sampled <= optimized.value + 1e-9
