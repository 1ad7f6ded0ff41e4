"""Small dense complex linear algebra for one- and two-qubit operators.

Matrices are plain ``numpy`` complex arrays of shape (2, 2) or (4, 4).
Two-qubit operators use the ordering |a b> -> index 2*a + b, i.e. subsystem A
is the most significant qubit.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .exceptions import InvalidDirectionError, InvalidInputError, UnsupportedDimensionError

HERMITIAN_TOL = 1e-10
JACOBI_OFFDIAG_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
# eigenvalues closer than this are treated as one degenerate cluster
DEGENERACY_TOL = 1e-10

I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

SUPPORTED_DIMS = (2, 4)


class EigenSystem(NamedTuple):
    """Eigenvalues in ascending order; ``eigenvectors[:, k]`` belongs to ``eigenvalues[k]``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _square(m, name="matrix") -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidInputError(f"{name} must be square, got shape {a.shape}")
    if a.shape[0] not in SUPPORTED_DIMS:
        raise UnsupportedDimensionError(f"{name} has dimension {a.shape[0]}; only 2 and 4 are supported")
    if not np.all(np.isfinite(a)):
        raise InvalidInputError(f"{name} has non-finite entries")
    return a


def dagger(m) -> np.ndarray:
    return np.conj(np.asarray(m)).T


def hermiticity_error(m) -> float:
    a = np.asarray(m, dtype=complex)
    return float(np.max(np.abs(a - a.conj().T)))


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product ``a ⊗ b``; the result must not exceed dimension 4."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim != 2 or b.ndim != 2:
        raise InvalidInputError("tensor_product expects two matrices")
    d = a.shape[0] * b.shape[0]
    if d > 4:
        raise UnsupportedDimensionError(f"tensor product of dimension {d} exceeds the supported 4")
    return np.kron(a, b)


def partial_trace(rho, keep: str) -> np.ndarray:
    """Reduce a 4x4 two-qubit operator to the qubit named by ``keep`` ("A" or "B")."""
    r = np.asarray(rho, dtype=complex)
    if r.shape != (4, 4):
        raise UnsupportedDimensionError(f"partial_trace expects a 4x4 operator, got {r.shape}")
    t = r.reshape(2, 2, 2, 2)
    keep = str(keep).upper()
    if keep == "A":
        return np.einsum("ijkj->ik", t)
    if keep == "B":
        return np.einsum("ijik->jk", t)
    raise InvalidInputError(f"keep must be 'A' or 'B', got {keep!r}")


def bloch_operator(direction) -> np.ndarray:
    """Return ``n_x σ_x + n_y σ_y + n_z σ_z`` for a unit vector ``n``."""
    n = np.asarray(direction, dtype=float)
    if n.shape != (3,) or not np.all(np.isfinite(n)):
        raise InvalidDirectionError(f"direction must be a finite 3-vector, got {direction!r}")
    if abs(np.linalg.norm(n) - 1.0) > 1e-12:
        raise InvalidDirectionError(f"direction must have unit norm, |n| = {np.linalg.norm(n)!r}")
    return n[0] * SIGMA_X + n[1] * SIGMA_Y + n[2] * SIGMA_Z


def _jacobi_rotate(a: list, v: list, n: int, p: int, q: int) -> None:
    # a and v are nested lists of Python complex numbers, updated in place
    apq = a[p][q]
    r = abs(apq)
    app = a[p][p].real
    aqq = a[q][q].real
    if r <= 1e-300 or r <= 1e-17 * max(abs(app), abs(aqq)):
        a[p][q] = a[q][p] = 0j
        return
    tau = (aqq - app) / (2.0 * r)
    if abs(tau) > 1e150:
        t = 0.5 / tau
    else:
        t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.sqrt(1.0 + tau * tau))
    c = 1.0 / math.sqrt(1.0 + t * t)
    s = t * c
    # phase rotation making a[p][q] real, then a real Givens rotation;
    # the combined block acting on columns (p, q) is [[c, s], [-s*ph, c*ph]]
    ph = (apq / r).conjugate()
    u10 = -s * ph
    u11 = c * ph
    for row in a:
        xp, xq = row[p], row[q]
        row[p] = c * xp + u10 * xq
        row[q] = s * xp + u11 * xq
    rp, rq = a[p], a[q]
    cu10, cu11 = u10.conjugate(), u11.conjugate()
    for k in range(n):
        xp, xq = rp[k], rq[k]
        rp[k] = c * xp + cu10 * xq
        rq[k] = s * xp + cu11 * xq
    for row in v:
        xp, xq = row[p], row[q]
        row[p] = c * xp + u10 * xq
        row[q] = s * xp + u11 * xq
    a[p][q] = a[q][p] = 0j
    a[p][p] = complex(a[p][p].real)
    a[q][q] = complex(a[q][q].real)


def _orthonormalize_clusters(values: np.ndarray, vectors: np.ndarray) -> None:
    n = len(values)
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and values[stop] - values[stop - 1] <= DEGENERACY_TOL:
            stop += 1
        for k in range(start, stop):
            w = vectors[:, k]
            for j in range(start, k):
                w = w - np.vdot(vectors[:, j], w) * vectors[:, j]
            vectors[:, k] = w / np.linalg.norm(w)
        start = stop


def hermitian_eigensystem(m) -> EigenSystem:
    """Diagonalize a Hermitian 2x2 or 4x4 matrix with cyclic complex Jacobi sweeps.

    The input is symmetrized before iterating.  Eigenvalues come back in
    ascending order.  Each eigenvector has its largest-magnitude component
    made real and nonnegative, so identical input gives identical output.
    """
    a = _square(m)
    if hermiticity_error(a) > HERMITIAN_TOL:
        raise InvalidInputError(f"matrix is not Hermitian (max |M - M†| = {hermiticity_error(a):.3e})")
    n = a.shape[0]
    a = (0.5 * (a + a.conj().T)).tolist()
    v = np.eye(n, dtype=complex).tolist()
    pairs = [(p, q) for p in range(n - 1) for q in range(p + 1, n)]
    for _ in range(JACOBI_MAX_SWEEPS):
        off = math.sqrt(2.0 * sum(abs(a[p][q]) ** 2 for p, q in pairs))
        if off < JACOBI_OFFDIAG_TOL:
            break
        for p, q in pairs:
            _jacobi_rotate(a, v, n, p, q)

    values = np.array([a[k][k].real for k in range(n)])
    v = np.array(v, dtype=complex)
    order = np.argsort(values, kind="stable")
    values = values[order]
    vectors = v[:, order]
    _orthonormalize_clusters(values, vectors)
    for k in range(n):
        col = vectors[:, k]
        big = col[np.argmax(np.abs(col))]
        vectors[:, k] = col * (np.conj(big) / abs(big))
    return EigenSystem(values, vectors)


def eigenvalues(m) -> np.ndarray:
    return hermitian_eigensystem(m).eigenvalues
