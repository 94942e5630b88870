"""Frame assembly: Steiner ETFs, hyperoval ETFs, flattening and extension.

Columns of a design are "embedded": vertex j places the rows of a seed
matrix (simplex or cosimplex) on the blocks containing j, in increasing
block order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import designs, seeds
from .cyclo import CycloMatrix, block_diag, hstack
from .designs import IncidenceMatrix, ParallelClasses
from .errors import (BadHadamard, ConditionViolated, NonconstantColumnSum, NotAffineForm, NotBibd,
                     NotDecomposedForm, PreconditionViolated, SizeMismatch, UnsupportedOrder)
from .frame import FrameMatrix, SpanSpec
from .surd import Surd
from .verify import certify

SUPPORTED_ORDERS = (2, 4, 8)


# ---------------------------------------------------------------------------
# embeddings

@dataclass(frozen=True)
class Embedding:
    """Isometry F^r -> F^b sending the i-th basis vector to basis vector ``support[i]``."""

    target_dim: int
    support: tuple

    def __post_init__(self):
        s = self.support
        if any(a >= b for a, b in zip(s, s[1:])):
            raise ValueError("embedding support must be strictly increasing")
        if s and not 0 <= s[0] <= s[-1] < self.target_dim:
            raise ValueError("embedding support out of range")

    @property
    def source_dim(self) -> int:
        return len(self.support)

    def matrix(self) -> CycloMatrix:
        E = np.zeros((self.target_dim, self.source_dim), dtype=np.int64)
        E[list(self.support), np.arange(self.source_dim)] = 1
        return CycloMatrix(1, E[:, :, None])

    def apply(self, A: CycloMatrix) -> CycloMatrix:
        if A.shape[0] != self.source_dim:
            raise SizeMismatch(f"embedding expects {self.source_dim} rows, got {A.shape[0]}")
        out = np.zeros((self.target_dim, A.shape[1], A.phi), dtype=A.coeffs.dtype)
        out[list(self.support)] = A.coeffs
        return CycloMatrix(A.conductor, out, A.den)


def embeddings_from(X: IncidenceMatrix) -> list[Embedding]:
    cols = X.bits.sum(axis=0)
    if not (cols == cols[0]).all():
        raise NonconstantColumnSum(f"column sums {sorted(set(cols.tolist()))} are not constant")
    return [Embedding(X.b, tuple(int(i) for i in X.support(j))) for j in range(X.v)]


def embed(X: IncidenceMatrix, seed_for_vertex: Sequence[CycloMatrix]) -> CycloMatrix:
    """[E_1 A_1, ..., E_v A_v] for one seed matrix A_j per vertex."""
    embs = embeddings_from(X)
    if len(seed_for_vertex) != len(embs):
        raise SizeMismatch(f"need {len(embs)} seed matrices, got {len(seed_for_vertex)}")
    return hstack([E.apply(A) for E, A in zip(embs, seed_for_vertex)])


# ---------------------------------------------------------------------------
# Steiner ETFs

def steiner_etf(X: IncidenceMatrix, S: CycloMatrix, allow_degenerate: bool = False) -> FrameMatrix:
    """Embed one copy of the r x (r+1) simplex S at every vertex of a BIBD(v, k, 1)."""
    p = designs.verify_bibd(X)
    if p.v == 1 and not allow_degenerate:
        raise NotBibd("single-vertex design; pass allow_degenerate=True to embed it anyway")
    if p.lam != 1:
        raise NotBibd(f"Steiner ETFs need lambda = 1, got {p.lam}")
    if S.shape != (p.r, p.r + 1):
        raise SizeMismatch(f"simplex must be {p.r} x {p.r + 1}, got {S.shape[0]} x {S.shape[1]}")
    Phi = embed(X, [S] * p.v)
    return FrameMatrix(Phi, SpanSpec.full(X.b), {"variant": "steiner", "bibd": list(p)})


# ---------------------------------------------------------------------------
# hyperoval ETFs

@dataclass
class HyperovalConstruction:
    """Everything that went into a hyperoval frame, kept for flattening and reports."""

    q: int
    variant: str
    plane: IncidenceMatrix
    hyperoval: tuple
    design: IncidenceMatrix  # Y (projective) or Z (affine) in block form
    simplex: CycloMatrix
    cosimplex: CycloMatrix
    simplex_vertices: int


def default_simplex(q: int) -> CycloMatrix:
    """Simplex used when none is given: the ones matching the reference q = 2 and q = 4 frames."""
    if q == 2:
        return seeds.AFFINE_Q2_SIMPLEX
    if q == 4:
        return seeds.Q4_SIMPLEX
    return seeds.unimodular_simplex(q)


def hyperoval_etf(q: int, variant: str = "affine", *, simplex: CycloMatrix | None = None,
                  cosimplex: CycloMatrix | None = None, plane: IncidenceMatrix | None = None,
                  hyperoval: Sequence[int] | None = None, removed_row: int | None = None,
                  primitive_poly=None) -> FrameMatrix:
    """The q(q^2+q-1)-vector (affine) or q^2(q+2)-vector (projective) hyperoval ETF.

    By default the plane is the Singer plane over GF(q^3) and the hyperoval
    the canonical one.  A user plane must come with its hyperoval.
    """
    if variant not in ("affine", "projective"):
        raise ValueError(f"unknown variant {variant!r}")
    if plane is None:
        if q not in SUPPORTED_ORDERS:
            raise UnsupportedOrder(f"q must be one of {SUPPORTED_ORDERS}, got {q}")
        plane, field = designs.singer_projective_plane(q.bit_length() - 1, primitive_poly)
        if hyperoval is None:
            hyperoval = designs.canonical_hyperoval(plane, field)
    else:
        if designs.projective_order(plane) != q:
            raise SizeMismatch(f"plane does not have order {q}")
        if hyperoval is None:
            raise ValueError("a user-supplied plane needs an explicit hyperoval")
    Y, Z, _, _ = designs.dual_decomposition(plane, hyperoval, removed_row)
    X = Z if variant == "affine" else Y
    S = default_simplex(q) if simplex is None else simplex
    C = seeds.unimodular_cosimplex(q) if cosimplex is None else cosimplex
    if S.shape != (q + 1, q + 2) or not seeds.verify_simplex(S):
        raise SizeMismatch(f"need a unimodular simplex of shape {(q + 1, q + 2)}")
    if C.shape != (q + 1, q) or not seeds.verify_cosimplex(C):
        raise SizeMismatch(f"need a unimodular cosimplex of shape {(q + 1, q)}")
    n_s = q * (q - 1) // 2
    Phi = embed(X, [S] * n_s + [C] * (X.v - n_s))
    tail = q + 1 if variant == "affine" else q + 2
    info = HyperovalConstruction(q, variant, plane, tuple(hyperoval), X, S, C, n_s)
    meta = {"q": q, "variant": variant, "hyperoval": [int(s) for s in hyperoval]}
    return FrameMatrix(Phi, SpanSpec.zero_sum_tail(X.b, tail), meta, sidecar=info)


def hyperoval_params(q: int) -> dict:
    """Sizes of the affine hyperoval ETF of order q."""
    d = q * q + q - 1
    return {"q": q, "m": d + 1, "d": d, "n": q * d, "welch_sq": Fraction(1, (q + 1) ** 2)}


# ---------------------------------------------------------------------------
# flattening

def flatten(Phi: FrameMatrix, Z: IncidenceMatrix | None = None, classes: ParallelClasses | None = None,
            H: CycloMatrix | None = None) -> FrameMatrix:
    """(I kron H) P Phi for an affine hyperoval frame; the result is flat.

    P groups the rows into parallel classes (representative first) and H is
    a size-q Hadamard matrix with all-ones first column, applied unscaled,
    so the Gram matrix is multiplied by q.
    """
    if not Phi.exact:
        raise NotAffineForm("flattening needs an exact frame")
    if Z is None:
        info = Phi.sidecar
        if not isinstance(info, HyperovalConstruction) or info.variant != "affine":
            raise NotAffineForm("no affine design attached to this frame; pass Z explicitly")
        Z = info.design
    q = designs.affine_order(Z)
    A = Phi.data
    if A.shape[0] != Z.b:
        raise NotAffineForm(f"frame has {A.shape[0]} rows, design has {Z.b} blocks")
    cols = {tuple(Z.support(j)) for j in range(Z.v)}
    nz = A.nonzero_mask()
    for c in range(A.shape[1]):
        if tuple(np.flatnonzero(nz[:, c])) not in cols:
            raise NotAffineForm(f"column {c} is not supported on a vertex of the affine plane")
    if classes is None:
        classes = designs.parallel_classes(Z, bottom=q + 1)
    if H is None:
        if not seeds.is_power_of_two(q):
            raise BadHadamard("no default Hadamard matrix for this order")
        H = seeds.sylvester_hadamard(q.bit_length() - 1)
    if H.shape != (q, q) or not seeds.is_hadamard(H):
        raise BadHadamard(f"need a {q} x {q} Hadamard matrix")
    first = H[:, [0]]
    if first != CycloMatrix.from_rationals([[1]] * q):
        raise BadHadamard("first column of H must be all ones")
    order = classes.row_order()
    if sorted(order) != list(range(Z.b)) or any(len(c) != q for c in classes.classes):
        raise NotAffineForm("parallel classes do not partition the rows")
    flat = block_diag([H] * (q + 1)) @ A.row_permuted(order)
    G0 = A.H @ A
    assert flat.H @ flat == G0 * q, "flattening changed the Gram matrix"
    assert seeds.is_unimodular(flat), "flattened frame is not unimodular"
    meta = dict(Phi.metadata, variant="flat", row_order=order)
    return FrameMatrix(flat, SpanSpec.zero_sum_all(A.shape[0]), meta)


# ---------------------------------------------------------------------------
# extension by f Phi Phi* + g I

def extension_condition(m: int, n: int, d: int) -> bool:
    """1/d = 1/m + 1/n - 1/(m+n-1), the squared equality of the two Welch ratios for m != n."""
    return m != n and Fraction(1, d) == Fraction(1, m) + Fraction(1, n) - Fraction(1, m + n - 1)


def welch_ratio_sq(m: int, n: int, d: int) -> tuple[Fraction, Fraction]:
    """Both sides of (1/n^2)(n-d)/(d(n-1)) = (1/m^2)(m-d)/(d(m-1))."""
    return (Fraction(n - d, n * n * d * (n - 1)), Fraction(m - d, m * m * d * (m - 1)))


@dataclass(frozen=True)
class ExtensionScalars:
    f: Surd
    g: Surd
    branch: str
    m: int
    n: int
    d: int

    @property
    def a(self) -> Fraction:
        return Fraction(self.m * self.n, self.d)

    @property
    def f_float(self) -> float:
        return float(self.f)

    @property
    def g_float(self) -> float:
        return float(self.g)

    def identities(self) -> dict:
        """The exact side identities, each as (left, right)."""
        a, f, g = self.a, self.f, self.g
        return {
            "a f^2 + 2 f g + 1 = 0": (a * f * f + 2 * f * g + 1, Surd.rational(0)),
            "g^2 = m + n": (g * g, Surd.rational(self.m + self.n)),
            "(a f + g)^2 = mn/(m+n-1)": ((a * f + g) ** 2,
                                         Surd.rational(Fraction(self.m * self.n, self.m + self.n - 1))),
        }


def extension_scalars(m: int, n: int, d: int, branch: str = "plus") -> ExtensionScalars:
    """f = -sqrt(m+n-1) / (sqrt(m+n) sqrt(m+n-1) +- sqrt(mn)), g = sqrt(m+n), exactly."""
    if branch not in ("plus", "minus"):
        raise ValueError(f"branch must be 'plus' or 'minus', got {branch!r}")
    if not extension_condition(m, n, d):
        raise ConditionViolated(f"(m, n, d) = ({m}, {n}, {d}) fails 1/d = 1/m + 1/n - 1/(m+n-1)")
    s = m + n
    A = Surd.sqrt(s * (s - 1))
    B = Surd.sqrt(m * n)
    # rationalize: 1 / (A +- B) = (A -+ B) / (A^2 - B^2)
    conj = A - B if branch == "plus" else A + B
    f = -(Surd.sqrt(s - 1) * conj) / (s * (s - 1) - m * n)
    sc = ExtensionScalars(f, Surd.sqrt(s), branch, m, n, d)
    for name, (lhs, rhs) in sc.identities().items():
        assert lhs == rhs, f"extension identity failed: {name}"
    return sc


def extend(Phi: FrameMatrix, branch: str = "plus") -> FrameMatrix:
    """[Phi | f Phi Phi* + g I], an (m+n)-vector ETF for all of F^m.

    The result is exact when f and g are rational; otherwise it is stored
    as floats with the exact scalars kept in ``sidecar``.
    """
    if not Phi.exact:
        raise PreconditionViolated("extension needs an exact frame")
    A = Phi.data
    m, n = A.shape
    if m == n:
        raise PreconditionViolated("frame is square")
    if not seeds.is_unimodular(A):
        raise PreconditionViolated("frame has an entry of modulus other than 1")
    cols = certify(A, own_span=True)
    rows = certify(A.H, own_span=True)
    if not cols.is_etf:
        raise PreconditionViolated("columns do not form an ETF for their span")
    if not rows.is_etf:
        raise PreconditionViolated("rows do not form an ETF for their span")
    d = cols.span_dim
    try:
        sc = extension_scalars(m, n, d, branch)
    except ConditionViolated as exc:
        raise PreconditionViolated(str(exc)) from exc
    F = A @ A.H
    meta = dict(Phi.metadata, variant="extended", branch=branch)
    fq, gq = sc.f.is_rational(), sc.g.is_rational()
    if fq is not None and gq is not None:
        tail = F.scale(fq) + CycloMatrix.identity(m).scale(gq)
        return FrameMatrix(hstack([A, tail]), SpanSpec.full(m), meta, sidecar=sc)
    tail = sc.f_float * F.to_complex() + sc.g_float * np.eye(m)
    return FrameMatrix(np.hstack([A.to_complex(), tail]), SpanSpec.full(m), meta, sidecar=sc)


# ---------------------------------------------------------------------------
# parameter arithmetic

def _odd_square_root(x: Fraction) -> bool:
    if x.denominator != 1 or x < 0:
        return False
    s = math.isqrt(x.numerator)
    return s * s == x.numerator and s % 2 == 1


def admissible_flat_params(max_m: int) -> list[tuple[int, int, int]]:
    """(q, m, n) with q even, m = q(q+1) <= max_m, n = q(q^2+q-1), passing the real-ETF filters.

    Filters for d = m - 1: integrality of (d+1)^2 (n-d)/(d(n-1)) as a
    perfect square, the Gerzon bound, and, unless n = 2d, oddness of the
    integers sqrt(d(n-1)/(n-d)) and sqrt((n-d)(n-1)/d).
    """
    out = []
    q = 2
    while q * (q + 1) <= max_m:
        m, n = q * (q + 1), q * (q * q + q - 1)
        d = m - 1
        w2 = Fraction((d + 1) ** 2 * (n - d), d * (n - 1))
        ok = w2.denominator == 1 and math.isqrt(w2.numerator) ** 2 == w2.numerator
        ok = ok and 2 * n <= d * (d + 1)
        if ok and n != 2 * d and 1 < d < n - 1:
            ok = (_odd_square_root(Fraction(d * (n - 1), n - d))
                  and _odd_square_root(Fraction((n - d) * (n - 1), d)))
        if ok:
            out.append((q, m, n))
        q += 2
    return out


@dataclass(frozen=True)
class BlockTightness:
    tight: bool
    top_eigenvalue: Fraction
    bottom_eigenvalue: Fraction
    k0: Fraction
    v0: Fraction
    b0: int


def block_tightness_eigenvalues(k: int, r: int) -> tuple[Fraction, Fraction]:
    """Frame-operator eigenvalues k(r + 1 - (k+1)/r) and (k+1)(r-1) of the generalized construction."""
    return k * (r + 1 - Fraction(k + 1, r)), Fraction((k + 1) * (r - 1))


def general_block_tightness(X: IncidenceMatrix) -> BlockTightness:
    """Tightness of the simplex/cosimplex embedding for a BIBD(v, k, 1) in 2x2 block form.

    The top-left block must be a BIBD(v0, k0, 1) on the first v0 columns
    and the transposed bottom-right block a BIBD(k+1, 2, 1), where
    k0 = k - k(k+1)/(2r) and v0 = r(k0 - 1) + 1.
    """
    p = designs.verify_bibd(X)
    k, r = p.k, p.r
    k0 = k - Fraction(k * (k + 1), 2 * r)
    v0 = r * (k0 - 1) + 1
    b0 = k + 1
    if k0.denominator != 1 or v0.denominator != 1 or not 0 < v0 < X.v or b0 >= X.b:
        raise NotDecomposedForm(f"no block form with k0={k0}, v0={v0}, b0={b0}")
    v0i, top = int(v0), X.b - b0
    B = X.bits
    if B[top:, :v0i].any():
        raise NotDecomposedForm("lower-left block is not zero")
    try:
        p11 = designs.verify_bibd(IncidenceMatrix(B[:top, :v0i]))
        p22 = designs.verify_bibd(IncidenceMatrix(B[top:, v0i:].T))
    except NotBibd as exc:
        raise NotDecomposedForm(str(exc)) from exc
    if (p11.v, p11.k, p11.lam) != (v0i, int(k0), 1) or (p22.v, p22.k, p22.lam) != (b0, 2, 1):
        raise NotDecomposedForm(f"blocks are {p11} and {p22}")
    e1, e2 = block_tightness_eigenvalues(k, r)
    return BlockTightness(e1 == e2, e1, e2, k0, v0, b0)
