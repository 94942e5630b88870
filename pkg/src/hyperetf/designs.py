"""Incidence-matrix combinatorics for block designs, planes and hyperovals.

Incidence matrices are b x v: rows are blocks, columns are vertices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from . import gf
from .errors import BadRowChoice, NotBibd, NotHyperoval, NotResolvable, OddOrder


class IncidenceMatrix:
    """An immutable binary b x v matrix (rows = blocks, columns = vertices)."""

    __slots__ = ("bits",)

    def __init__(self, bits):
        arr = np.array(bits, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("incidence matrix must be two dimensional")
        if not np.isin(arr, (0, 1)).all():
            raise ValueError("incidence matrix entries must be 0 or 1")
        arr = arr.astype(np.uint8)
        arr.setflags(write=False)
        self.bits = arr

    @property
    def b(self) -> int:
        return self.bits.shape[0]

    @property
    def v(self) -> int:
        return self.bits.shape[1]

    @property
    def T(self) -> "IncidenceMatrix":
        return IncidenceMatrix(self.bits.T)

    def __eq__(self, other):
        return isinstance(other, IncidenceMatrix) and np.array_equal(self.bits, other.bits)

    __hash__ = None

    def __repr__(self):
        return f"IncidenceMatrix(b={self.b}, v={self.v})"

    def support(self, j: int) -> np.ndarray:
        """Row indices of the blocks containing vertex j."""
        return np.flatnonzero(self.bits[:, j])

    def permuted(self, row_perm, col_perm) -> "IncidenceMatrix":
        return IncidenceMatrix(self.bits[np.ix_(row_perm, col_perm)])

    def submatrix(self, rows, cols) -> "IncidenceMatrix":
        return IncidenceMatrix(self.bits[np.ix_(rows, cols)])

    # -- text formats
    def to_ascii(self) -> str:
        return "\n".join("".join(str(x) for x in row) for row in self.bits) + "\n"

    @classmethod
    def from_ascii(cls, text: str) -> "IncidenceMatrix":
        rows = [line.strip() for line in text.splitlines() if line.strip()]
        if not rows:
            raise ValueError("empty incidence matrix")
        widths = {len(r) for r in rows}
        if len(widths) != 1:
            raise ValueError("ragged incidence matrix rows")
        return cls([[int(ch) for ch in r] for r in rows])

    def to_json(self) -> str:
        return json.dumps({"b": self.b, "v": self.v,
                           "rows": ["".join(str(x) for x in row) for row in self.bits]})

    @classmethod
    def from_json(cls, text: str) -> "IncidenceMatrix":
        obj = json.loads(text)
        X = cls([[int(ch) for ch in r] for r in obj["rows"]])
        if X.b != obj["b"] or X.v != obj["v"]:
            raise ValueError("declared b/v disagree with rows")
        return X


def load_incidence(path) -> IncidenceMatrix:
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return IncidenceMatrix.from_json(text)
    return IncidenceMatrix.from_ascii(text)


class BibdParams(NamedTuple):
    v: int
    k: int
    lam: int
    r: int
    b: int


def verify_bibd(X: IncidenceMatrix) -> BibdParams:
    """Check ``X 1 = k 1`` and ``X^T X = (r - lam) I + lam J``.

    A single-vertex design has no vertex pairs, so ``lam`` is vacuous there;
    it is reported as 1.
    """
    M = X.bits.astype(np.int64)
    b, v = M.shape
    if b == 0 or v == 0:
        raise NotBibd("empty incidence matrix")
    rows = M.sum(axis=1)
    if not (rows == rows[0]).all():
        i = int(np.flatnonzero(rows != rows[0])[0])
        raise NotBibd(f"non-constant row sum: block {i} has {rows[i]} vertices, block 0 has {rows[0]}")
    cols = M.sum(axis=0)
    if not (cols == cols[0]).all():
        j = int(np.flatnonzero(cols != cols[0])[0])
        raise NotBibd(f"non-constant column sum: vertex {j} lies in {cols[j]} blocks, vertex 0 in {cols[0]}")
    k, r = int(rows[0]), int(cols[0])
    if k == 0:
        raise NotBibd("blocks are empty")
    if v == 1:
        lam = 1
    else:
        G = M.T @ M
        off = G[~np.eye(v, dtype=bool)]
        lam = int(off[0])
        if not (off == lam).all():
            bad = np.argwhere((G != lam) & ~np.eye(v, dtype=bool))[0]
            raise NotBibd(f"pair-count violation: vertices {bad[0]},{bad[1]} share "
                          f"{G[bad[0], bad[1]]} blocks, expected {lam}")
        if lam == 0:
            raise NotBibd("pair-count violation: no pair of vertices shares a block")
    assert b * k == v * r and lam * (v - 1) == r * (k - 1)
    return BibdParams(v, k, lam, r, b)


def projective_order(X: IncidenceMatrix) -> int:
    """Order q when X is a BIBD(q^2+q+1, q+1, 1); raises NotBibd otherwise."""
    p = verify_bibd(X)
    q = p.k - 1
    if p.lam != 1 or q < 2 or p.v != q * q + q + 1 or p.b != p.v:
        raise NotBibd(f"{p} is not a projective plane")
    return q


def affine_order(X: IncidenceMatrix) -> int:
    """Order q when X is a BIBD(q^2, q, 1); raises NotBibd otherwise."""
    p = verify_bibd(X)
    q = p.k
    if p.lam != 1 or q < 2 or p.v != q * q:
        raise NotBibd(f"{p} is not an affine plane")
    return q


def dual(X: IncidenceMatrix) -> IncidenceMatrix:
    return X.T


# ---------------------------------------------------------------------------
# canonical planes over GF(q), q = 2**e

def singer_difference_set(field: gf.FieldSpec, e: int) -> list[int]:
    """Exponents i mod q^2+q+1 with tr(a**i) = 0, trace from GF(q^3) to GF(q)."""
    if field.degree != 3 * e:
        raise ValueError(f"field degree {field.degree} is not 3*{e}")
    q = 1 << e
    v = q * q + q + 1
    return [i for i in range(v) if not gf.subfield_trace(field.from_log(i), e)]


def singer_projective_plane(e: int, primitive_poly=None) -> tuple[IncidenceMatrix, gf.FieldSpec]:
    """Circulant projective plane of order 2**e; block i = {i + s : s in D}."""
    field = gf.make_field(3 * e, primitive_poly)
    q = 1 << e
    v = q * q + q + 1
    D = np.zeros(v, dtype=bool)
    D[singer_difference_set(field, e)] = True
    diff = (np.arange(v)[None, :] - np.arange(v)[:, None]) % v
    X = IncidenceMatrix(D[diff])
    projective_order(X)
    return X, field


def canonical_hyperoval(plane: IncidenceMatrix, field: gf.FieldSpec) -> list[int]:
    """Vertex indices of {t + t^2 a + a^2 : t in GF(q)} plus a and 1."""
    e = field.degree // 3
    q = 1 << e
    v = q * q + q + 1
    a = field.alpha
    pts = [t + t * t * a + a * a for t in gf.subfield_elements(field, e)] + [a, field.one()]
    s = sorted(field.log(p) % v for p in pts)
    if not is_hyperoval(plane, s):
        raise NotHyperoval("canonical point set is not a hyperoval of the supplied plane")
    return s


def is_hyperoval(plane: IncidenceMatrix, s: Sequence[int]) -> bool:
    q = projective_order(plane)
    s = list(s)
    if len(s) != q + 2 or len(set(s)) != len(s):
        return False
    if not all(0 <= x < plane.v for x in s):
        return False
    hits = plane.bits[:, s].sum(axis=1)
    return bool((hits <= 2).all())


# ---------------------------------------------------------------------------
# block decompositions

@dataclass(frozen=True)
class HyperovalDecomposition:
    """Row/column orders putting a matrix in 2x2 block form with zero lower-left block.

    ``row_perm[i]`` is the source row placed at row i (likewise columns).
    """

    row_perm: tuple
    col_perm: tuple
    split_row: int
    split_col: int
    shape: str  # projective-primal | projective-dual | affine-dual

    def apply(self, X: IncidenceMatrix) -> IncidenceMatrix:
        return X.permuted(self.row_perm, self.col_perm)

    def undo(self, Y: IncidenceMatrix) -> IncidenceMatrix:
        return Y.permuted(np.argsort(self.row_perm), np.argsort(self.col_perm))

    def blocks(self, Y: IncidenceMatrix):
        """(top-left, top-right, bottom-left, bottom-right) of an already permuted matrix."""
        r, c = self.split_row, self.split_col
        B = Y.bits
        return (IncidenceMatrix(B[:r, :c]), IncidenceMatrix(B[:r, c:]),
                IncidenceMatrix(B[r:, :c]), IncidenceMatrix(B[r:, c:]))


def _expect(X: IncidenceMatrix, v: int, k: int, what: str):
    p = verify_bibd(X)
    if (p.v, p.k, p.lam) != (v, k, 1):
        raise NotBibd(f"{what}: got {p}, expected BIBD({v},{k},1)")


def hyperoval_decomposition(plane: IncidenceMatrix, s: Sequence[int]):
    """Hyperoval columns first, secant rows first (both stable)."""
    q = projective_order(plane)
    if q % 2:
        raise OddOrder(f"projective planes of odd order {q} have no hyperovals")
    if not is_hyperoval(plane, s):
        raise NotHyperoval(f"{sorted(s)} is not a hyperoval")
    s_set = set(s)
    cols = sorted(s) + [j for j in range(plane.v) if j not in s_set]
    hits = plane.bits[:, sorted(s)].sum(axis=1)
    rows = [i for i in range(plane.b) if hits[i] == 2] + [i for i in range(plane.b) if hits[i] == 0]
    dec = HyperovalDecomposition(tuple(rows), tuple(cols), (q + 1) * (q + 2) // 2, q + 2,
                                 "projective-primal")
    X = dec.apply(plane)
    X11, X12, X21, X22 = dec.blocks(X)
    assert not X21.bits.any()
    _expect(X11, q + 2, 2, "secant block")
    _expect(X22.T, q * (q - 1) // 2, q // 2, "exterior block (Denniston design)")
    return X, dec


def dual_decomposition(plane: IncidenceMatrix, s: Sequence[int], removed_row: int | None = None):
    """Dual plane Y in block form and the affine plane Z cut out of it.

    Y's rows are the plane's vertices (non-hyperoval first, then hyperoval
    vertices in ascending order); its columns are the plane's blocks
    (exterior first in original order, then secant blocks ordered
    lexicographically by the pair of hyperoval rows they meet).  The
    non-hyperoval rows are then sorted lexicographically.  Z deletes
    ``removed_row`` (default: the first hyperoval row) and the q+1 columns it
    meets.
    """
    X, dec = hyperoval_decomposition(plane, s)
    q = projective_order(plane)
    n_sec = (q + 1) * (q + 2) // 2
    oval = list(dec.col_perm[:q + 2])
    rest = list(dec.col_perm[q + 2:])
    secant = list(dec.row_perm[:n_sec])
    exterior = list(dec.row_perm[n_sec:])

    pos = {vtx: i for i, vtx in enumerate(oval)}

    def pair(block):
        a, b = sorted(pos[j] for j in oval if plane.bits[block, j])
        return a, b

    secant.sort(key=pair)
    cols = exterior + secant
    top = sorted(rest, key=lambda vtx: tuple(plane.bits[cols, vtx]))
    rows = top + oval
    dec_y = HyperovalDecomposition(tuple(rows), tuple(cols), q * q - 1, q * (q - 1) // 2,
                                   "projective-dual")
    Y = dec_y.apply(plane.T)
    Y11, Y12, Y21, Y22 = dec_y.blocks(Y)
    assert not Y21.bits.any()
    _expect(Y11, q * (q - 1) // 2, q // 2, "Y top-left")
    _expect(Y22.T, q + 2, 2, "Y bottom-right")

    if removed_row is None:
        removed_row = q * q - 1
    if not q * q - 1 <= removed_row < Y.b:
        raise BadRowChoice(f"removed row must be one of the last {q + 2} rows "
                           f"({q * q - 1}..{Y.b - 1}), got {removed_row}")
    keep_rows = [i for i in range(Y.b) if i != removed_row]
    keep_cols = [j for j in range(Y.v) if not Y.bits[removed_row, j]]
    dec_z = HyperovalDecomposition(tuple(rows[i] for i in keep_rows),
                                   tuple(cols[j] for j in keep_cols),
                                   q * q - 1, q * (q - 1) // 2, "affine-dual")
    Z = dec_z.apply(plane.T)
    Z11, Z12, Z21, Z22 = dec_z.blocks(Z)
    assert not Z21.bits.any() and Z11 == Y11
    _expect(Z22.T, q + 1, 2, "Z bottom-right")
    if affine_order(Z) != q:
        raise NotBibd("cut-out design is not an affine plane of the right order")
    return Y, Z, dec_y, dec_z


# ---------------------------------------------------------------------------
# resolvability

@dataclass(frozen=True)
class ParallelClasses:
    classes: tuple
    representative_first: bool = False

    def row_order(self) -> list[int]:
        return [i for cls in self.classes for i in cls]


def parallel_classes(Z: IncidenceMatrix, bottom: int = 0) -> ParallelClasses:
    """Group the blocks of an affine plane into parallel classes.

    Classes are ordered by their smallest block index.  With ``bottom > 0``
    each class is led by its unique member among the last ``bottom`` rows.
    """
    q = affine_order(Z)
    M = Z.bits.astype(np.int64)
    meets = (M @ M.T) > 0
    unassigned = list(range(Z.b))
    classes = []
    while unassigned:
        i = unassigned[0]
        cls = [j for j in unassigned if j == i or not meets[i, j]]
        cover = M[cls].sum(axis=0)
        if len(cls) != q or not (cover == 1).all():
            raise NotResolvable(f"block {i} does not generate a parallel class")
        classes.append(cls)
        unassigned = [j for j in unassigned if j not in cls]
    if len(classes) != q + 1:
        raise NotResolvable(f"found {len(classes)} classes, expected {q + 1}")
    if bottom:
        low = set(range(Z.b - bottom, Z.b))
        ordered = []
        for cls in classes:
            reps = [j for j in cls if j in low]
            if len(reps) != 1:
                raise NotResolvable(f"class {cls} has {len(reps)} members among the bottom rows")
            ordered.append(tuple(reps + [j for j in cls if j != reps[0]]))
        return ParallelClasses(tuple(ordered), True)
    return ParallelClasses(tuple(tuple(c) for c in classes), False)


def projective_extension(Z: IncidenceMatrix) -> IncidenceMatrix:
    """Add one vertex at infinity per parallel class and a block at infinity."""
    pc = parallel_classes(Z)
    q = len(pc.classes) - 1
    X = np.zeros((Z.b + 1, Z.v + q + 1), dtype=np.int64)
    X[:Z.b, :Z.v] = Z.bits
    for c, cls in enumerate(pc.classes):
        X[list(cls), Z.v + c] = 1
    X[Z.b, Z.v:] = 1
    return IncidenceMatrix(X)


def affine_restriction(X: IncidenceMatrix, block: int) -> IncidenceMatrix:
    """Delete one block of a projective plane and every vertex on it."""
    projective_order(X)
    cols = [j for j in range(X.v) if not X.bits[block, j]]
    rows = [i for i in range(X.b) if i != block]
    return X.submatrix(rows, cols)
