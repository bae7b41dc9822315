"""Bipartite density operators with uniform marginals.

Builds the generalized Bell basis from the discrete Weyl (shift and clock)
operators, mixes it with a prescribed spectrum, and provides the partial
traces and a Hermitian eigensolver needed to check the result.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ContractError

__all__ = [
    "TAU_HERM",
    "TAU_ORTH",
    "TAU_PSD",
    "TAU_TR",
    "TAU_EIG",
    "BellBasis",
    "ConvergenceError",
    "DensityOperator",
    "bell_basis",
    "construct_marginal_uniform",
    "hermitian_eigh",
    "partial_trace",
    "schmidt_coefficients",
    "spectrum",
    "weyl_operators",
]

TAU_HERM = 1e-12
TAU_ORTH = 1e-12
TAU_PSD = 1e-10
TAU_TR = 1e-12
TAU_EIG = 1e-9

JACOBI_OFF_TOL = 1e-13
JACOBI_MAX_SWEEPS = 60


class ConvergenceError(ArithmeticError):
    pass


@dataclass(frozen=True)
class DensityOperator:
    """A density matrix, optionally tagged with bipartite factor dimensions."""

    matrix: np.ndarray
    dims: tuple[int, int] | None = None

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ContractError(f"density operator must be square, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ContractError("density operator has non-finite entries")
        if self.dims is not None and self.dims[0] * self.dims[1] != m.shape[0]:
            raise ContractError(f"factor dimensions {self.dims} do not match size {m.shape[0]}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def check(self) -> None:
        """Raise ContractError unless Hermitian, PSD and of unit trace."""
        m = self.matrix
        if np.max(np.abs(m - m.conj().T), initial=0.0) > TAU_HERM:
            raise ContractError("not Hermitian")
        if abs(np.trace(m) - 1) > TAU_TR * max(1, self.dim):
            raise ContractError(f"trace {np.trace(m).real} is not 1")
        if spectrum(m)[-1] < -TAU_PSD:
            raise ContractError("not positive semidefinite")


@dataclass(frozen=True)
class BellBasis:
    d: int
    vectors: np.ndarray  # row d*i + j holds psi_ij

    def __getitem__(self, ij: tuple[int, int]) -> np.ndarray:
        i, j = ij
        return self.vectors[self.d * i + j]

    def gram(self) -> np.ndarray:
        return self.vectors.conj() @ self.vectors.T


def weyl_operators(d: int) -> tuple[np.ndarray, np.ndarray]:
    """Shift X|i> = |i+1 mod d> and clock Z|i> = w^i |i> with w = exp(2 pi i/d)."""
    if d < 1:
        raise ContractError("d must be >= 1")
    X = np.roll(np.eye(d, dtype=complex), 1, axis=0)
    omega = np.exp(2j * np.pi / d)
    Z = np.diag(omega ** np.arange(d))
    return X, Z


def bell_basis(d: int) -> BellBasis:
    """The d^2 vectors (id x X^i Z^j) psi_00, psi_00 maximally entangled."""
    X, Z = weyl_operators(d)
    psi00 = np.eye(d, dtype=complex).reshape(d * d) / np.sqrt(d)
    vectors = np.empty((d * d, d * d), dtype=complex)
    for i in range(d):
        Xi = np.linalg.matrix_power(X, i)
        for j in range(d):
            U = Xi @ np.linalg.matrix_power(Z, j)
            vectors[d * i + j] = np.kron(np.eye(d), U) @ psi00
    vectors.setflags(write=False)
    return BellBasis(d, vectors)


def _as_distribution(r: Sequence[float]) -> np.ndarray:
    r = np.asarray([float(x) for x in r], dtype=float)
    if r.ndim != 1 or r.size == 0:
        raise ContractError("spectrum must be a nonempty vector")
    if np.any(r < -TAU_PSD):
        raise ContractError("spectrum has negative entries")
    if abs(r.sum() - 1) > TAU_TR * max(1, r.size):
        raise ContractError(f"spectrum sums to {r.sum()}, not 1")
    return r


def construct_marginal_uniform(r: Sequence[float]) -> DensityOperator:
    """Density operator on C^d x C^d with spectrum r and both marginals I/d.

    ``r`` has length d^2; it is sorted decreasingly and entry d*i + j becomes
    the weight of the Bell vector psi_ij.
    """
    r = _as_distribution(r)
    d = int(round(np.sqrt(r.size)))
    if d * d != r.size:
        raise ContractError(f"spectrum length {r.size} is not a perfect square")
    r = np.sort(r)[::-1]
    basis = bell_basis(d).vectors
    rho = (basis.T * r) @ basis.conj()
    return DensityOperator(rho, (d, d))


def partial_trace(rho: DensityOperator, keep: str) -> DensityOperator:
    """Reduced operator on factor ``keep`` ("A" or "B"), tracing out the other."""
    if rho.dims is None:
        raise ContractError("partial_trace needs bipartite factor dimensions")
    da, db = rho.dims
    t = rho.matrix.reshape(da, db, da, db)
    if keep == "A":
        reduced = np.einsum("ijkj->ik", t)
    elif keep == "B":
        reduced = np.einsum("ijil->jl", t)
    else:
        raise ContractError(f"keep must be 'A' or 'B', got {keep!r}")
    return DensityOperator(reduced)


def _off_norm(A: np.ndarray) -> float:
    return float(np.linalg.norm(A - np.diag(np.diag(A))))


def hermitian_eigh(H: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    Returns ``(w, V)`` with ``H = V diag(w) V^H`` and ``w`` decreasing. Each
    rotation first removes the phase of the pivot with a diagonal unitary and
    then applies the real symmetric Jacobi rotation.
    """
    A = np.array(H, dtype=complex)
    n = A.shape[0]
    if A.ndim != 2 or A.shape[1] != n:
        raise ContractError("matrix must be square")
    if np.max(np.abs(A - A.conj().T), initial=0.0) > TAU_HERM * max(1.0, np.abs(A).max(initial=0.0)):
        raise ContractError("matrix is not Hermitian")
    A = (A + A.conj().T) / 2
    V = np.eye(n, dtype=complex)
    scale = max(1.0, np.linalg.norm(A))
    tol = JACOBI_OFF_TOL * scale
    for _ in range(JACOBI_MAX_SWEEPS):
        off = _off_norm(A)
        if off < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                mag = abs(apq)
                if mag < 1e-300 or mag < 1e-18 * scale:
                    continue
                phase = apq / mag
                theta = (A[q, q].real - A[p, p].real) / (2 * mag)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1))
                c = 1 / np.sqrt(t * t + 1)
                s = t * c
                # G = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                G = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                A[:, idx] = A[:, idx] @ G
                A[idx, :] = G.conj().T @ A[idx, :]
                A[q, p] = 0
                A[p, q] = 0
                V[:, idx] = V[:, idx] @ G
    else:
        off = _off_norm(A)
        if off >= tol:
            raise ConvergenceError(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps (off={off:.3e})")
    w = np.diag(A).real
    order = np.argsort(-w, kind="stable")
    return w[order], V[:, order]


def spectrum(rho: DensityOperator | np.ndarray) -> np.ndarray:
    """Eigenvalues in decreasing order."""
    m = rho.matrix if isinstance(rho, DensityOperator) else rho
    return hermitian_eigh(m)[0]


def schmidt_coefficients(psi: np.ndarray, dims: tuple[int, int] | None = None) -> np.ndarray:
    """Singular values of psi reshaped to a d_A x d_B matrix, decreasing."""
    psi = np.asarray(psi, dtype=complex).ravel()
    if abs(np.linalg.norm(psi) - 1) > TAU_TR * 10:
        raise ContractError("schmidt_coefficients needs a unit vector")
    if dims is None:
        d = int(round(np.sqrt(psi.size)))
        if d * d != psi.size:
            raise ContractError("give dims for a non-square bipartite vector")
        dims = (d, d)
    return np.linalg.svd(psi.reshape(dims), compute_uv=False)
