"""Hadamard matrices, unimodular simplices and cosimplices.

All constructors return :class:`~hyperetf.cyclo.CycloMatrix` values whose
entries are roots of unity.  Real +-1 matrices use conductor 2.
"""

from __future__ import annotations

import numpy as np

from .cyclo import CycloMatrix, vstack


def _popcount_parity(a: np.ndarray) -> np.ndarray:
    bits = np.zeros_like(a)
    while a.any():
        bits ^= a & 1
        a = a >> 1
    return bits


def sylvester_hadamard(e: int) -> CycloMatrix:
    """The e-fold Kronecker power of [[1, 1], [1, -1]], entry (i, j) = (-1)**popcount(i & j)."""
    if e < 0:
        raise ValueError("e must be non-negative")
    idx = np.arange(1 << e)
    return CycloMatrix.from_exponents(2, _popcount_parity(idx[:, None] & idx[None, :]))


def dft_hadamard(N: int) -> CycloMatrix:
    """N x N matrix with entry (j, k) = z_N**(j k)."""
    if N < 1:
        raise ValueError("N must be positive")
    idx = np.arange(N)
    return CycloMatrix.from_exponents(N, np.outer(idx, idx) % N)


def _unit_matrix(N: int, exps) -> CycloMatrix:
    return CycloMatrix.from_exponents(N, np.array(exps))


#: 5 x 6 simplex in w = z_6 used for the 76-vector frame (rows a..e), stored as exponents of w.
Q4_SIMPLEX = _unit_matrix(6, [
    [0, 2, 4, 0, 2, 4],
    [0, 4, 2, 0, 4, 2],
    [0, 0, 0, 3, 3, 3],
    [0, 2, 4, 3, 5, 1],
    [0, 4, 2, 3, 1, 5],
])

#: the 4 x 4 Sylvester matrix with its all-ones row removed
SYLVESTER4_SIMPLEX = sylvester_hadamard(2)[1:, :]

#: the same three rows in reverse order; this is the simplex embedded in the q = 2 affine frame
AFFINE_Q2_SIMPLEX = SYLVESTER4_SIMPLEX.row_permuted([2, 1, 0])


def is_power_of_two(x: int) -> bool:
    return x >= 1 and x & (x - 1) == 0


def is_unimodular(M: CycloMatrix) -> bool:
    ms = M.modulus_squared()
    return ms.rational_mask().all() and ms.den == 1 and bool((ms.coeffs[:, :, 0] == 1).all())


def is_hadamard(H: CycloMatrix) -> bool:
    """Square, unimodular, and H H* = N I."""
    N, N2 = H.shape
    return N == N2 and is_unimodular(H) and H @ H.H == CycloMatrix.identity(N) * N


def unimodular_simplex(q: int, hadamard: CycloMatrix | None = None, removed_row: int = 0) -> CycloMatrix:
    """(q+1) x (q+2) matrix: a Hadamard matrix of size q+2 with one row removed.

    The default Hadamard is Sylvester's when q+2 is a power of two and the
    DFT otherwise.
    """
    if q < 1:
        raise ValueError("q must be positive")
    if hadamard is None:
        hadamard = (sylvester_hadamard((q + 2).bit_length() - 1) if is_power_of_two(q + 2)
                    else dft_hadamard(q + 2))
    if hadamard.shape != (q + 2, q + 2):
        raise ValueError(f"need a Hadamard matrix of size {q + 2}")
    keep = [i for i in range(q + 2) if i != removed_row]
    return hadamard[keep, :]


def unimodular_cosimplex(q: int, hadamard: CycloMatrix | None = None) -> CycloMatrix:
    """(q+1) x q matrix: a size-q Hadamard matrix with its negated last row appended."""
    if q < 2:
        raise ValueError("q must be at least 2")
    if hadamard is None:
        hadamard = (sylvester_hadamard(q.bit_length() - 1) if is_power_of_two(q)
                    else dft_hadamard(q))
    if hadamard.shape != (q, q):
        raise ValueError(f"need a Hadamard matrix of size {q}")
    return vstack([hadamard, -hadamard[[q - 1], :]])


def _pairwise_unit(M: CycloMatrix) -> bool:
    G = (M.H @ M).modulus_squared()
    n = G.shape[0]
    off = ~np.eye(n, dtype=bool)
    vals = G.coeffs[off]
    return G.rational_mask()[off].all() and G.den == 1 and bool((vals[:, 0] == 1).all())


def verify_simplex(S: CycloMatrix) -> bool:
    """r x (r+1), unimodular, distinct columns with unit-modulus inner products."""
    r, c = S.shape
    return c == r + 1 and is_unimodular(S) and _pairwise_unit(S)


def verify_cosimplex(C: CycloMatrix) -> bool:
    """r x (r-1), r >= 3, unimodular, last two entries of each column cancel, unit-modulus inner products."""
    r, c = C.shape
    if r < 3 or c != r - 1 or not is_unimodular(C):
        return False
    tail = C[[r - 2], :] + C[[r - 1], :]
    return tail.is_zero() and _pairwise_unit(C)


def rotate_real_columns(S: CycloMatrix) -> CycloMatrix:
    """Multiply every +-1-valued column by z_N, N = conductor (>= 3).

    Column phases do not affect the simplex or cosimplex conditions, so the
    result is an equivalent seed with no real column.
    """
    N = S.conductor
    if N < 3:
        raise ValueError("need a conductor of at least 3 to leave the real line")
    real = np.flatnonzero(S.rational_mask().all(axis=0))
    k = np.zeros(S.shape[1], dtype=np.int64)
    k[real] = 1
    D = CycloMatrix.from_exponents(N, np.diag(k), np.eye(S.shape[1], dtype=bool))
    return S @ D
