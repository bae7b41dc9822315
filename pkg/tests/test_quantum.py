import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kronlab.errors import ContractError
from kronlab.quantum import (
    DensityOperator,
    bell_basis,
    construct_marginal_uniform,
    hermitian_eigh,
    partial_trace,
    schmidt_coefficients,
    spectrum,
    weyl_operators,
)


def random_density(rng, n):
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = m @ m.conj().T
    return rho / np.trace(rho).real


def random_unit(rng, n):
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return v / np.linalg.norm(v)


def test_qubit_weyl_operators_are_paulis():
    X, Z = weyl_operators(2)
    assert np.allclose(X, [[0, 1], [1, 0]])
    assert np.allclose(Z, [[1, 0], [0, -1]])


@pytest.mark.parametrize("d", range(1, 9))
def test_weyl_relations(d):
    X, Z = weyl_operators(d)
    eye = np.eye(d)
    omega = np.exp(2j * np.pi / d)
    assert np.abs(X.conj().T @ X - eye).max() < 1e-12
    assert np.abs(Z.conj().T @ Z - eye).max() < 1e-12
    assert np.abs(np.linalg.inv(X) @ Z @ X - omega * Z).max() < 1e-12
    assert np.abs(np.linalg.matrix_power(X, d) - eye).max() < 1e-12
    assert np.abs(np.linalg.matrix_power(Z, d) - eye).max() < 1e-12


@pytest.mark.parametrize("d", range(1, 6))
def test_weyl_traces_vanish(d):
    X, Z = weyl_operators(d)
    for a in range(d):
        for b in range(d):
            t = np.trace(np.linalg.matrix_power(X, a) @ np.linalg.matrix_power(Z, b))
            assert abs(t - (d if (a, b) == (0, 0) else 0)) < 1e-12


def test_bell_basis_small():
    assert np.allclose(bell_basis(1).vectors, [[1]])
    s = 1 / np.sqrt(2)
    expected = {
        (0, 0): [s, 0, 0, s],
        (0, 1): [s, 0, 0, -s],
        (1, 0): [0, s, s, 0],
        (1, 1): [0, s, -s, 0],
    }
    basis = bell_basis(2)
    for ij, vec in expected.items():
        assert abs(abs(np.vdot(basis[ij], vec)) - 1) < 1e-12


@pytest.mark.parametrize("d", range(1, 7))
def test_bell_gram_and_schmidt(d):
    basis = bell_basis(d)
    assert np.abs(basis.gram() - np.eye(d * d)).max() < 1e-12
    for v in basis.vectors:
        assert np.abs(schmidt_coefficients(v) - 1 / np.sqrt(d)).max() < 1e-12


def test_construct_pure_and_mixed():
    for d in (2, 3):
        r = np.zeros(d * d)
        r[0] = 1
        rho = construct_marginal_uniform(r)
        psi = bell_basis(d)[0, 0]
        assert np.abs(rho.matrix - np.outer(psi, psi.conj())).max() < 1e-12
        rho = construct_marginal_uniform(np.full(d * d, 1 / (d * d)))
        assert np.abs(rho.matrix - np.eye(d * d) / (d * d)).max() < 1e-12
        for keep in "AB":
            assert np.abs(partial_trace(rho, keep).matrix - np.eye(d) / d).max() < 1e-12


def test_construct_example_spectrum():
    r = [0.4, 0.3, 0.2, 0.1]
    rho = construct_marginal_uniform(r)
    assert np.abs(spectrum(rho) - r).max() < 1e-10
    rho.check()


def test_construct_sorts_input():
    a = construct_marginal_uniform([0.1, 0.2, 0.3, 0.4])
    b = construct_marginal_uniform([0.4, 0.3, 0.2, 0.1])
    assert np.array_equal(a.matrix, b.matrix)


@pytest.mark.parametrize("bad", [[0.5, 0.6], [1.2, -0.2, 0, 0], [0.5, 0.5, 0.5, -0.5], [0.25] * 3])
def test_construct_rejects(bad):
    with pytest.raises(ContractError):
        construct_marginal_uniform(bad)


def test_partial_trace_product_rule():
    rng = np.random.default_rng(1)
    for da in range(1, 5):
        for db in range(1, 5):
            sa = random_density(rng, da)
            sb = rng.normal(size=(db, db)) + 1j * rng.normal(size=(db, db))
            rho = DensityOperator(np.kron(sa, sb), (da, db))
            assert np.abs(partial_trace(rho, "A").matrix - np.trace(sb) * sa).max() < 1e-9
            assert np.abs(partial_trace(rho, "B").matrix - np.trace(sa) * sb).max() < 1e-9


def test_partial_trace_of_bell_state():
    for d in range(1, 6):
        psi = bell_basis(d)[0, 0]
        rho = DensityOperator(np.outer(psi, psi.conj()), (d, d))
        assert np.abs(partial_trace(rho, "A").matrix - np.eye(d) / d).max() < 1e-12


def test_partial_trace_preserves_trace_and_is_linear():
    rng = np.random.default_rng(2)
    for d in (2, 3, 4):
        s = random_density(rng, d * d)
        t = random_density(rng, d * d)
        a, b = 0.3, 0.7
        rs, rt = DensityOperator(s, (d, d)), DensityOperator(t, (d, d))
        mix = DensityOperator(a * s + b * t, (d, d))
        for keep in "AB":
            assert abs(np.trace(partial_trace(rs, keep).matrix) - 1) < 1e-12
            lhs = partial_trace(mix, keep).matrix
            rhs = a * partial_trace(rs, keep).matrix + b * partial_trace(rt, keep).matrix
            assert np.abs(lhs - rhs).max() < 1e-12


def test_partial_trace_needs_dims():
    with pytest.raises(ContractError):
        partial_trace(DensityOperator(np.eye(4) / 4), "A")
    with pytest.raises(ContractError):
        partial_trace(DensityOperator(np.eye(4) / 4, (2, 2)), "C")


def test_spectrum_simple_cases():
    assert np.allclose(spectrum(np.eye(3) / 3), [1 / 3] * 3)
    rng = np.random.default_rng(3)
    v = rng.random(6)
    assert np.abs(spectrum(np.diag(v)) - np.sort(v)[::-1]).max() < 1e-15


def test_spectrum_rejects_non_hermitian():
    with pytest.raises(ContractError):
        spectrum(np.array([[0, 1], [0, 0]], dtype=complex))


@pytest.mark.parametrize("n", [1, 2, 3, 7, 16, 25, 36])
def test_jacobi_reconstruction(n):
    rng = np.random.default_rng(n)
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    H = (m + m.conj().T) / 2
    w, V = hermitian_eigh(H)
    assert np.all(np.diff(w) <= 0)
    assert np.abs(V @ np.diag(w) @ V.conj().T - H).max() < 1e-9
    assert np.abs(V.conj().T @ V - np.eye(n)).max() < 1e-9
    assert np.abs(w - np.linalg.eigvalsh(H)[::-1]).max() < 1e-9


def test_jacobi_degenerate():
    rng = np.random.default_rng(7)
    q, _ = np.linalg.qr(rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5)))
    H = q @ np.diag([2, 2, 1, 1, 1]) @ q.conj().T
    w, _ = hermitian_eigh(H)
    assert np.abs(w - [2, 2, 1, 1, 1]).max() < 1e-12


def test_schmidt_examples():
    for d in range(1, 6):
        assert np.abs(schmidt_coefficients(bell_basis(d)[0, 0]) - 1 / np.sqrt(d)).max() < 1e-12
    rng = np.random.default_rng(4)
    u, v = random_unit(rng, 3), random_unit(rng, 3)
    s = schmidt_coefficients(np.kron(u, v))
    assert abs(s[0] - 1) < 1e-12 and np.abs(s[1:]).max() < 1e-12
    with pytest.raises(ContractError):
        schmidt_coefficients(np.ones(4))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4), st.integers(2, 4), st.integers(0, 2**32 - 1))
def test_schmidt_squares_are_reduced_spectrum(da, db, seed):
    rng = np.random.default_rng(seed)
    psi = random_unit(rng, da * db)
    rho = DensityOperator(np.outer(psi, psi.conj()), (da, db))
    reduced = spectrum(partial_trace(rho, "A"))
    s = schmidt_coefficients(psi, (da, db))
    assert abs(np.sum(s**2) - 1) < 1e-12
    padded = np.zeros(da)
    padded[: len(s)] = s**2
    assert np.abs(reduced - padded).max() < 1e-10


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 5), st.integers(0, 2**32 - 1))
def test_marginals_uniform_for_random_spectra(d, seed):
    rng = np.random.default_rng(seed)
    r = np.sort(rng.dirichlet(np.ones(d * d)))[::-1]
    rho = construct_marginal_uniform(r)
    assert np.abs(spectrum(rho) - r).sum() <= 1e-9
    for keep in "AB":
        assert np.linalg.norm(partial_trace(rho, keep).matrix - np.eye(d) / d) <= 1e-9
