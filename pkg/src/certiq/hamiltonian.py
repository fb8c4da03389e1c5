"""Generalized cluster Hamiltonian and its ground state.

H = sum_j (Z_j + j1 X_j X_{j+1} - j2 X_{j-1} Z_j X_{j+1}) with periodic
boundaries (site indices mod n). The operator is real and sparse in the
computational basis; qubit 0 is the most significant bit of a basis index.
"""

import logging
from typing import Optional, Tuple, Union

import numpy as np
from scipy import sparse
from scipy.linalg import eigh_tridiagonal

from .config import get_settings
from .constants import DEGENERACY_GAP
from .exceptions import ConvergenceError, QubitCountError
from .models.circuit import Statevector
from .models.cluster import ClusterParams

logger = logging.getLogger(__name__)

SeedLike = Union[int, np.random.Generator]


def build_hamiltonian(p: ClusterParams, max_qubits: Optional[int] = None) -> sparse.csr_matrix:
    """Sparse 2^n x 2^n cluster Hamiltonian.

    Args:
        p: Chain length and couplings
        max_qubits: Memory guard; defaults to Settings.max_qubits

    Returns:
        Real symmetric CSR matrix

    Raises:
        QubitCountError: If n exceeds the memory guard
    """
    n = p.n_qubits
    limit = max_qubits if max_qubits is not None else get_settings().max_qubits
    if n > limit:
        raise QubitCountError(n, f"exceeds the configured maximum of {limit} qubits")

    dim = 1 << n
    idx = np.arange(dim, dtype=np.int64)

    def bit(site: int) -> np.ndarray:
        return (idx >> (n - 1 - site)) & 1

    def flip_mask(*sites: int) -> int:
        return sum(1 << (n - 1 - s) for s in sites)

    z_signs = [1 - 2 * bit(j) for j in range(n)]
    rows = [idx]
    cols = [idx]
    vals = [np.sum(z_signs, axis=0).astype(np.float64)]

    for j in range(n):
        if p.j1 != 0.0:
            rows.append(idx ^ flip_mask(j, (j + 1) % n))
            cols.append(idx)
            vals.append(np.full(dim, p.j1))
        if p.j2 != 0.0:
            rows.append(idx ^ flip_mask((j - 1) % n, (j + 1) % n))
            cols.append(idx)
            vals.append(-p.j2 * z_signs[j].astype(np.float64))

    h = sparse.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(dim, dim),
    ).tocsr()
    h.sum_duplicates()
    return h


def _fix_global_phase(vec: np.ndarray) -> np.ndarray:
    """Make the largest-magnitude amplitude real and positive."""
    k = int(np.argmax(np.abs(vec)))
    phase = vec[k] / abs(vec[k])
    return vec * np.conj(phase)


def _first_nonzero_positive(vec: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(np.abs(vec) > 1e-12)
    if nz.size and vec[nz[0]].real < 0:
        return -vec
    return vec


def _resolve_degenerate(values: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """Pick a deterministic ground vector when the lowest levels are degenerate.

    Args:
        values: Ascending eigen/Ritz values
        vectors: Matching column vectors

    Returns:
        The chosen (unnormalized phase) vector
    """
    if values.shape[0] < 2 or values[1] - values[0] >= DEGENERACY_GAP:
        return vectors[:, 0]
    count = int(np.sum(values - values[0] < DEGENERACY_GAP))
    logger.warning("Ground level is %d-fold degenerate within %.0e", count, DEGENERACY_GAP)
    candidates = [_first_nonzero_positive(vectors[:, i]) for i in range(count)]
    keys = [tuple(np.round(c.real, 12)) for c in candidates]
    return candidates[max(range(count), key=lambda i: keys[i])]


def _to_statevector(vec: np.ndarray) -> Statevector:
    vec = _fix_global_phase(vec / np.linalg.norm(vec))
    n = int(np.log2(vec.shape[0]))
    return Statevector(n_qubits=n, amplitudes=vec)


def dense_ground_state(h) -> Tuple[float, Statevector]:
    """Ground pair by full diagonalization (small registers and test oracle)."""
    dense = h.toarray() if sparse.issparse(h) else np.asarray(h)
    values, vectors = np.linalg.eigh(dense)
    vec = _resolve_degenerate(values, vectors)
    return float(values[0]), _to_statevector(vec.astype(np.complex128))


def ground_state(h, seed: SeedLike = 0, max_iter: Optional[int] = None,
                 tol: Optional[float] = None) -> Tuple[float, Statevector]:
    """Lowest eigenpair by Lanczos iteration with full reorthogonalization.

    Args:
        h: Hermitian (here real symmetric) sparse operator
        seed: Seed or generator for the start vector
        max_iter: Krylov dimension budget (Settings.lanczos_max_iter)
        tol: Residual norm at which the Ritz pair is accepted (Settings.lanczos_tol)

    Returns:
        (energy, normalized ground state with fixed global phase)

    Raises:
        ConvergenceError: If the residual stays above tol within the budget
    """
    settings = get_settings()
    max_iter = max_iter if max_iter is not None else settings.lanczos_max_iter
    tol = tol if tol is not None else settings.lanczos_tol
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)

    dim = h.shape[0]
    steps = min(max_iter, dim)
    basis = np.zeros((steps, dim))
    start = rng.standard_normal(dim)
    basis[0] = start / np.linalg.norm(start)
    alpha = np.zeros(steps)
    beta = np.zeros(steps)
    scale = max(float(abs(h).sum(axis=1).max()), 1.0)
    residual = np.inf

    for j in range(steps):
        w = h @ basis[j]
        alpha[j] = basis[j] @ w
        w -= alpha[j] * basis[j]
        if j > 0:
            w -= beta[j - 1] * basis[j - 1]
        for _ in range(2):
            w -= basis[: j + 1].T @ (basis[: j + 1] @ w)
        beta[j] = np.linalg.norm(w)

        if j == 0:
            values, ritz = alpha[:1].copy(), np.ones((1, 1))
        else:
            values, ritz = eigh_tridiagonal(alpha[: j + 1], beta[:j])
        residual = abs(beta[j] * ritz[-1, 0])
        breakdown = beta[j] < 1e-13 * scale
        if residual < tol or breakdown:
            vec = basis[: j + 1].T @ _resolve_degenerate(values, ritz)
            vec /= np.linalg.norm(vec)
            energy = float(values[0])
            true_residual = float(np.linalg.norm(h @ vec - energy * vec))
            logger.debug("Lanczos stopped after %d steps, residual %.2e", j + 1, true_residual)
            if true_residual < max(tol, 1e-12) * 10:
                return energy, _to_statevector(vec.astype(np.complex128))
            residual = true_residual
            break
        if j + 1 < steps:
            basis[j + 1] = w / beta[j]

    raise ConvergenceError("Lanczos", steps, float(residual))
