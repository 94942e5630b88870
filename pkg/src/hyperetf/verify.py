"""Certification of equiangular tight frames.

Exact frames are decided in Q(z_N): norms, pairwise |<phi_i, phi_j>|**2,
rank, tightness and the Welch bound are compared as field elements, never
as floats.  Float frames go through the same checks with a relative
tolerance.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .cyclo import CycloMatrix, CycloNum, _cmul, _imul
from .errors import DegenerateN, NotPlusMinusOne, NotZeroSum, SpecMismatch
from .frame import FrameMatrix, SpanSpec, as_frame

FLOAT_TOL = 1e-9
RANK_TOL = 1e-8


# ---------------------------------------------------------------------------
# scalar bounds

def welch_bound_sq(n: int, d: int) -> Fraction:
    """Squared Welch bound (n - d) / (d (n - 1))."""
    if n == 1:
        raise DegenerateN("the Welch bound needs at least two vectors")
    if not 1 <= d <= n:
        raise ValueError(f"need 1 <= d <= n, got d={d}, n={n}")
    return Fraction(n - d, d * (n - 1))


def gerzon_check(n: int, d: int) -> bool:
    """n <= d (d + 1) / 2, necessary for a real ETF."""
    return 2 * n <= d * (d + 1)


# ---------------------------------------------------------------------------
# products

def _data(Phi):
    return Phi.data if isinstance(Phi, FrameMatrix) else Phi


def gram(Phi):
    A = _data(Phi)
    if isinstance(A, CycloMatrix):
        return A.H @ A
    A = np.asarray(A, dtype=complex)
    return A.conj().T @ A


def frame_operator(Phi):
    A = _data(Phi)
    if isinstance(A, CycloMatrix):
        return A @ A.H
    A = np.asarray(A, dtype=complex)
    return A @ A.conj().T


# ---------------------------------------------------------------------------
# rank

def _bareiss(coeffs: np.ndarray, N: int):
    """Fraction-free row reduction over Z[z_N]; returns (rank, pivot columns).

    Each update is row_i <- (p * row_i - a_i * row_pivot) / previous_pivot,
    where the division is exact in Z[z_N].  It is carried out as a
    multiplication by D / previous_pivot (an algebraic integer times D)
    followed by integer division by D.
    """
    A = np.array(coeffs, dtype=object)
    rows, cols = A.shape[:2]
    prev_adj, prev_den = None, 1
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(np.any(A[r:, c] != 0, axis=1))
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            A[[r, p]] = A[[p, r]]
        piv = A[r, c]
        if r + 1 < rows:
            below = A[r + 1:, c:]
            new = (_cmul(below, piv[None, None, :], N).astype(object)
                   - _cmul(A[r + 1:, c:c + 1], A[r, c:][None], N).astype(object))
            if prev_adj is not None:
                new = _cmul(new, prev_adj[None, None, :], N).astype(object)
                if prev_den != 1:
                    assert not np.any(new % prev_den), "inexact division in elimination"
                    new = new // prev_den
            A[r + 1:, c:] = new
        inv = CycloNum(N, tuple(Fraction(int(x)) for x in piv)).inverse()
        prev_den = math.lcm(*(x.denominator for x in inv.coeffs))
        prev_adj = np.array([int(x * prev_den) for x in inv.coeffs], dtype=object)
        pivots.append(c)
        r += 1
    return r, pivots


def exact_rank(Phi) -> int:
    """Rank over Q(z_N); float input falls back to an SVD with relative cutoff 1e-8."""
    A = _data(Phi)
    if not isinstance(A, CycloMatrix):
        s = np.linalg.svd(np.asarray(A, dtype=complex), compute_uv=False)
        return int((s > RANK_TOL * s[0]).sum()) if s.size and s[0] > 0 else 0
    m, n = A.shape
    K = A @ A.H if m <= n else A.H @ A
    return _bareiss(K.coeffs, K.conductor)[0]


def pivot_columns(Phi) -> list[int]:
    """Indices of a maximal set of linearly independent columns (leftmost first)."""
    A = _data(Phi)
    if not isinstance(A, CycloMatrix):
        raise TypeError("pivot columns are computed exactly only")
    return _bareiss(A.coeffs, A.conductor)[1]


# ---------------------------------------------------------------------------
# tightness

def _first_mismatch(a: np.ndarray, b: np.ndarray):
    """First (i, j) in row-major order where coefficient arrays differ."""
    diff = np.any(a != b, axis=-1) if a.ndim == 3 else (a != b)
    idx = np.argwhere(diff)
    return tuple(int(x) for x in idx[0]) if idx.size else None


def _close(L, R, tol: float = FLOAT_TOL) -> bool:
    """max |L - R| within tol of the larger of max |L|, max |R|."""
    L, R = np.broadcast_arrays(np.asarray(L), np.asarray(R))
    if L.size == 0:
        return True
    scale = max(float(np.abs(L).max()), float(np.abs(R).max()))
    return float(np.abs(L - R).max()) <= tol * scale


def tight_constant(Phi):
    """Candidate a = sum |G_ij|^2 / sum G_ii, forced by trace((Phi* Phi)^2) = a trace(Phi* Phi)."""
    A = _data(Phi)
    G = gram(A)
    if isinstance(A, CycloMatrix):
        ms = G.modulus_squared()
        total = CycloNum(ms.conductor, tuple(Fraction(int(x), ms.den) for x in ms.coeffs.sum(axis=(0, 1))))
        tr = G.trace()
        if tr.is_zero():
            return CycloNum.zero(A.conductor)
        a = total / tr
        q = a.is_rational()
        return q if q is not None else a
    tr = float(np.real(np.trace(G)))
    return float((np.abs(G) ** 2).sum() / tr) if tr else 0.0


def _mismatch(X: CycloMatrix, Y: CycloMatrix):
    """First (i, j) where X and Y differ, or None."""
    X, Y = X._common(Y)
    if X.den == Y.den:
        return _first_mismatch(X.coeffs, Y.coeffs)
    return _first_mismatch(_imul(X.coeffs, np.array(Y.den, dtype=object)),
                           _imul(Y.coeffs, np.array(X.den, dtype=object)))


def _equal_scaled(X: CycloMatrix, Y: CycloMatrix, a):
    """First mismatch of X == a * Y, or None."""
    return _mismatch(X, Y.scale(a))


def check_tight_for_span(Phi, a=None) -> tuple[bool, object]:
    """Decide Phi Phi* Phi = a Phi; returns (verdict, a)."""
    A = _data(Phi)
    if a is None:
        a = tight_constant(A)
    if isinstance(A, CycloMatrix):
        return _equal_scaled(A @ gram(A), A, a) is None, a
    return _close(A @ gram(A), a * A), a


def tightness_verdicts(Phi, a=None) -> dict:
    """Independent evaluations of the four tightness characterizations.

    i:   Phi Phi* b = a b on a basis b of the column span
    ii:  Phi Phi* Phi = a Phi
    iii: (Phi Phi*)^2 = a Phi Phi*
    iv:  (Phi* Phi)^2 = a Phi* Phi
    """
    A = _data(Phi)
    if a is None:
        a = tight_constant(A)
    if isinstance(A, CycloMatrix):
        F, G = A @ A.H, A.H @ A
        basis = A[:, pivot_columns(A)]
        return {
            "i": _equal_scaled(F @ basis, basis, a) is None,
            "ii": _equal_scaled(A @ G, A, a) is None,
            "iii": _equal_scaled(F @ F, F, a) is None,
            "iv": _equal_scaled(G @ G, G, a) is None,
        }
    A = np.asarray(A, dtype=complex)
    F, G = A @ A.conj().T, A.conj().T @ A
    s = np.linalg.svd(A, compute_uv=False)
    live = s[s > RANK_TOL * s[0]] if s.size and s[0] > 0 else s[:0]
    return {
        "i": _close(live ** 2, np.full(live.shape, a)),
        "ii": _close(A @ G, a * A),
        "iii": _close(F @ F, a * F),
        "iv": _close(G @ G, a * G),
    }


def _span_membership(A, span: SpanSpec):
    """First column not inside the span, or None."""
    if span.kind == "full":
        return None
    if isinstance(A, CycloMatrix):
        if span.tail:
            s = A.coeffs[A.shape[0] - span.tail:].sum(axis=0)
            bad = np.flatnonzero(np.any(s != 0, axis=-1))
            return int(bad[0]) if bad.size else None
        hit = _mismatch(span.projection_exact() @ A, A)
        return None if hit is None else hit[1]
    A = np.asarray(A)
    tol = FLOAT_TOL * float(np.abs(A).max()) * A.shape[0]
    if span.tail:
        bad = np.flatnonzero(np.abs(A[A.shape[0] - span.tail:].sum(axis=0)) > tol)
    else:
        bad = np.flatnonzero(np.abs(span.projection_float() @ A - A).max(axis=0) > tol)
    return int(bad[0]) if bad.size else None


def check_projection_span(Phi, spec: SpanSpec, a=None) -> bool:
    """Decide Phi Phi* = a Pi for the projection Pi onto ``spec``."""
    A = _data(Phi)
    if spec.m != A.shape[0]:
        raise SpecMismatch(f"span is for dimension {spec.m}, frame has {A.shape[0]} rows")
    if a is None:
        a = tight_constant(A)
    if isinstance(A, CycloMatrix):
        return _equal_scaled(A @ A.H, spec.projection_exact(), a) is None
    F = A @ np.asarray(A).conj().T
    return _close(F, a * spec.projection_float())


# ---------------------------------------------------------------------------
# certificate

def _ser(x):
    if isinstance(x, Fraction):
        return [x.numerator, x.denominator]
    if isinstance(x, CycloNum):
        return [[c.numerator, c.denominator] for c in x.coeffs]
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    return x


@dataclass
class EtfCertificate:
    n: int
    m: int
    mode: str
    tolerance: float | None
    equal_norm: bool
    common_norm_sq: object
    equiangular: bool
    coherence_sq: object
    welch_bound_sq: object
    welch_equality: bool
    tight_for_span: bool
    tight_constant: object
    span_dim: int
    span: str
    nominal_dim: int
    span_contains_columns: bool
    span_projection: bool
    is_etf: bool
    witnesses: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {}
        for k, v in asdict(self).items():
            if k == "witnesses":
                out[k] = {w: list(p) if isinstance(p, tuple) else p for w, p in v.items()}
            else:
                out[k] = _ser(v)
        return out

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    def summary(self) -> str:
        verdict = "ETF" if self.is_etf else "not an ETF"
        return (f"{verdict}: n={self.n}, m={self.m}, d={self.span_dim}, span={self.span}, "
                f"norm^2={_fmt(self.common_norm_sq)}, coherence^2={_fmt(self.coherence_sq)}, "
                f"welch^2={_fmt(self.welch_bound_sq)}, a={_fmt(self.tight_constant)}")


def _fmt(x):
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def certify(Phi, spec: SpanSpec | None = None, own_span: bool = False) -> EtfCertificate:
    """Full ETF certificate; dispatches on exact versus float entries.

    ``spec`` overrides the span attached to the frame (default: all of F^m).
    With ``own_span`` the target subspace is the column span itself, so only
    Phi Phi* Phi = a Phi is required for tightness.
    """
    frame = as_frame(Phi)
    span = None if own_span else (spec or frame.span)
    if span is not None and span.m != frame.m:
        raise SpecMismatch(f"span is for dimension {span.m}, frame has {frame.m} rows")
    if frame.exact:
        return _certify_exact(frame.data, span)
    return _certify_float(np.asarray(frame.data), span)


def _certify_exact(A: CycloMatrix, span: SpanSpec | None) -> EtfCertificate:
    m, n = A.shape
    wit = {}
    G = A.H @ A
    diag = G.coeffs[np.arange(n), np.arange(n)]
    bad = np.flatnonzero(np.any(diag != diag[0], axis=-1))
    equal_norm = bad.size == 0
    if not equal_norm:
        wit["equal_norm"] = (0, int(bad[0]))
    r = G[0, 0]
    r_q = r.is_rational()

    ms = G.modulus_squared()
    if n > 1:
        off = ~np.eye(n, dtype=bool)
        ref = ms.coeffs[0, 1]
        mism = np.any(ms.coeffs != ref, axis=-1) & off
        idx = np.argwhere(mism)
        equiangular = idx.size == 0
        if not equiangular:
            wit["equiangular"] = tuple(int(x) for x in idx[0])
        w2 = ms[0, 1]
    else:
        equiangular, w2 = True, CycloNum.zero(A.conductor)

    d = exact_rank(A)
    a = tight_constant(A)
    tight_ii = _equal_scaled(A @ G, A, a)
    if tight_ii is not None:
        wit["tight"] = tight_ii
    outside = proj = None
    nominal = d
    if span is not None:
        nominal = span.nominal_dim
        outside = _span_membership(A, span)
        if outside is not None:
            wit["span_membership"] = (0, outside)
        proj = _equal_scaled(A @ A.H, span.projection_exact(), a)
        if proj is not None:
            wit["span_projection"] = proj
        if d != nominal:
            wit["span_dim"] = (d, nominal)
    tight = tight_ii is None and outside is None and proj is None and d == nominal
    if tight:
        assert (G.trace() - a * d).is_zero()

    coherence = None
    welch = None
    welch_eq = False
    if n > 1:
        welch = welch_bound_sq(n, d) if d >= 1 else None
        if welch is not None:
            welch_eq = w2 * (d * (n - 1)) == r * r * (n - d)
        if r_q:
            c = (w2 / (r * r)).is_rational()
            coherence = c
    else:
        welch_eq = True
    if not welch_eq and equiangular:
        wit.setdefault("welch", (0, 1))
    is_etf = bool(equal_norm and equiangular and tight and welch_eq)
    return EtfCertificate(
        n=n, m=m, mode="exact", tolerance=None, equal_norm=bool(equal_norm), common_norm_sq=r_q,
        equiangular=bool(equiangular), coherence_sq=coherence, welch_bound_sq=welch,
        welch_equality=bool(welch_eq), tight_for_span=bool(tight),
        tight_constant=a if isinstance(a, Fraction) else None, span_dim=d,
        span=str(span) if span else "own", nominal_dim=nominal, span_contains_columns=outside is None,
        span_projection=proj is None, is_etf=is_etf, witnesses=wit)


def _certify_float(A: np.ndarray, span: SpanSpec | None, tol: float = FLOAT_TOL) -> EtfCertificate:
    m, n = A.shape
    wit = {}
    G = A.conj().T @ A
    norms = np.real(np.diag(G))
    r = float(norms[0])
    scale = max(abs(r), 1e-300)
    bad = np.flatnonzero(np.abs(norms - r) > tol * scale)
    equal_norm = bad.size == 0
    if not equal_norm:
        wit["equal_norm"] = (0, int(bad[0]))
    ms = np.abs(G) ** 2
    if n > 1:
        off = ~np.eye(n, dtype=bool)
        w2 = float(ms[0, 1])
        idx = np.argwhere((np.abs(ms - w2) > tol * scale ** 2) & off)
        equiangular = idx.size == 0
        if not equiangular:
            wit["equiangular"] = tuple(int(x) for x in idx[0])
    else:
        equiangular, w2 = True, 0.0
    d = exact_rank(A)
    a = tight_constant(A)
    ok_ii, _ = check_tight_for_span(A, a)
    if not ok_ii:
        wit["tight"] = (0, 0)
    outside, proj, nominal = None, True, d
    if span is not None:
        nominal = span.nominal_dim
        outside = _span_membership(A, span)
        if outside is not None:
            wit["span_membership"] = (0, outside)
        proj = check_projection_span(A, span, a)
        if not proj:
            wit["span_projection"] = (0, 0)
        if d != nominal:
            wit["span_dim"] = (d, nominal)
    tight = ok_ii and outside is None and proj and d == nominal
    welch = coherence = None
    welch_eq = True
    if n > 1:
        welch = float(welch_bound_sq(n, d)) if d >= 1 else None
        coherence = w2 / (r * r) if r else None
        welch_eq = welch is not None and coherence is not None and abs(coherence - welch) <= tol * max(welch, 1.0)
    is_etf = bool(equal_norm and equiangular and tight and welch_eq)
    return EtfCertificate(
        n=n, m=m, mode="float", tolerance=tol, equal_norm=bool(equal_norm), common_norm_sq=r,
        equiangular=bool(equiangular), coherence_sq=coherence, welch_bound_sq=welch,
        welch_equality=bool(welch_eq), tight_for_span=bool(tight), tight_constant=float(a),
        span_dim=d, span=str(span) if span else "own", nominal_dim=nominal,
        span_contains_columns=outside is None, span_projection=bool(proj), is_etf=is_etf,
        witnesses=wit)


# ---------------------------------------------------------------------------
# supersaturated designs

class ES2(NamedTuple):
    value: Fraction
    lower_bound: Fraction
    optimal: bool


def e_s2(Phi) -> ES2:
    """Mean squared off-diagonal inner product of a +-1 design and its lower bound."""
    A = _data(Phi)
    if isinstance(A, CycloMatrix):
        vals = A.rational_values()
        if vals is None or A.den != 1:
            raise NotPlusMinusOne("entries are not all +-1")
        M = np.array(vals, dtype=object).astype(np.int64)
    else:
        arr = np.asarray(A)
        if np.iscomplexobj(arr):
            if np.abs(arr.imag).max(initial=0) > 0:
                raise NotPlusMinusOne("entries are not all +-1")
            arr = arr.real
        M = np.rint(arr).astype(np.int64)
        if not np.array_equal(M, arr):
            raise NotPlusMinusOne("entries are not all +-1")
    if not np.isin(M, (-1, 1)).all():
        raise NotPlusMinusOne("entries are not all +-1")
    m, n = M.shape
    s = M.sum(axis=0)
    if s.any():
        raise NotZeroSum(f"column {int(np.flatnonzero(s)[0])} does not sum to zero")
    if n < 2 or m < 2:
        raise ValueError("need at least two rows and two columns")
    G = M.T @ M
    total = int((G.astype(object) ** 2).sum()) - n * m * m
    value = Fraction(total, n * (n - 1))
    bound = Fraction(m * m * (n - m + 1), (m - 1) * (n - 1))
    return ES2(value, bound, value == bound)
