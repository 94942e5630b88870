"""Finite abelian groups, character tables, difference sets and paired difference sets.

A group Z_{n_1} x ... x Z_{n_t} is stored by its factors.  Elements are
integers in mixed radix with the first factor most significant, so in
Z_2^4 the element 0010 is the integer 2.  Characters are identified with
elements the same way: chi_c(g) = prod_i z_{n_i}^(g_i c_i).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterable, Sequence

import numpy as np

from .cyclo import CycloMatrix
from .errors import NotDifferenceSet, TooLarge
from .frame import FrameMatrix, SpanSpec
from .surd import Surd
from .verify import certify

MAX_TABLE_ORDER = 4096
MAX_SEARCH_ORDER = 16


@dataclass(frozen=True)
class AbelianGroup:
    invariant_factors: tuple

    def __post_init__(self):
        f = tuple(int(x) for x in self.invariant_factors)
        if not f or any(x < 2 for x in f):
            raise ValueError("factors must be integers >= 2")
        object.__setattr__(self, "invariant_factors", f)

    @classmethod
    def parse(cls, text: str) -> "AbelianGroup":
        """From a comma-separated factor list such as ``"2,2,2,2"``."""
        return cls(tuple(int(x) for x in text.replace(" ", "").split(",") if x))

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return reduce(math.lcm, self.invariant_factors, 1)

    def __str__(self):
        return " x ".join(f"Z{n}" for n in self.invariant_factors)

    @cached_property
    def coords(self) -> np.ndarray:
        """order x t array: row g holds the digits of element g."""
        grids = np.meshgrid(*[np.arange(n) for n in self.invariant_factors], indexing="ij")
        return np.stack([g.ravel() for g in grids], axis=1)

    def encode(self, digits: Sequence[int]) -> int:
        out = 0
        for d, n in zip(digits, self.invariant_factors):
            if not 0 <= d < n:
                raise ValueError(f"digit {d} out of range for Z{n}")
            out = out * n + int(d)
        return out

    def decode(self, g: int) -> tuple:
        return tuple(int(x) for x in self.coords[g])

    def parse_element(self, text: str) -> int:
        """Accept ``"0010"`` (one digit per factor, factors < 10) or ``"0,0,1,0"``."""
        text = text.strip()
        digits = [int(x) for x in text.split(",")] if "," in text else [int(ch) for ch in text]
        if len(digits) != len(self.invariant_factors):
            raise ValueError(f"{text!r} does not have {len(self.invariant_factors)} digits")
        return self.encode(digits)

    def format_element(self, g: int) -> str:
        digits = self.decode(g)
        if max(self.invariant_factors) <= 10:
            return "".join(str(d) for d in digits)
        return ",".join(str(d) for d in digits)

    @cached_property
    def sub_table(self) -> np.ndarray:
        """sub_table[a, b] = a - b."""
        c = self.coords
        diff = (c[:, None, :] - c[None, :, :]) % np.array(self.invariant_factors)
        weights = np.array([math.prod(self.invariant_factors[i + 1:])
                            for i in range(len(self.invariant_factors))])
        return diff @ weights

    def translate(self, D: Iterable[int], t: int) -> tuple:
        neg = self.sub_table[0]  # 0 - g
        return tuple(sorted(int(self.sub_table[g, neg[t]]) for g in D))


def _character_exponents(G: AbelianGroup) -> np.ndarray:
    E = G.exponent
    c = G.coords
    scale = np.array([E // n for n in G.invariant_factors])
    return (c * scale) @ c.T % E


def character_table(G: AbelianGroup) -> CycloMatrix:
    """order x order table over conductor exponent(G); row g, column chi."""
    if G.order > MAX_TABLE_ORDER:
        raise TooLarge(f"order {G.order} exceeds {MAX_TABLE_ORDER}")
    return CycloMatrix.from_exponents(G.exponent, _character_exponents(G))


def _character_table_float(G: AbelianGroup) -> np.ndarray:
    return np.exp(2j * np.pi * _character_exponents(G) / G.exponent)


def is_difference_set(G: AbelianGroup, D: Iterable[int]) -> int | None:
    """lambda if every nonzero element is a difference of members of D equally often."""
    D = sorted(set(int(x) for x in D))
    if any(not 0 <= g < G.order for g in D):
        raise ValueError("element out of range")
    if G.order == 1:
        return len(D)
    diffs = G.sub_table[np.ix_(D, D)].ravel()
    counts = np.bincount(diffs, minlength=G.order)[1:]
    return int(counts[0]) if (counts == counts[0]).all() else None


def harmonic_etf(G: AbelianGroup, D: Iterable[int]) -> FrameMatrix:
    """Rows D of the character table: an ETF for F^|D| exactly when D is a difference set."""
    D = sorted(set(int(x) for x in D))
    if is_difference_set(G, D) is None:
        raise NotDifferenceSet(f"{[G.format_element(g) for g in D]} is not a difference set of {G}")
    H = character_table(G)
    return FrameMatrix(H[D, :], SpanSpec.full(len(D)),
                       {"variant": "harmonic", "group": list(G.invariant_factors), "rows": D})


def difference_sets(G: AbelianGroup, k: int) -> list[tuple]:
    """All k-element difference sets, in lexicographic order of their sorted elements."""
    v = G.order
    if not 1 <= k <= v:
        return []
    if k > v // 2:
        # complements of difference sets are difference sets
        small = difference_sets(G, v - k)
        full = set(range(v))
        return sorted(tuple(sorted(full - set(D))) for D in small)
    H = _character_table_float(G)
    out = []
    batch = []

    def flush():
        if not batch:
            return
        ind = np.zeros((len(batch), v))
        for r, D in enumerate(batch):
            ind[r, list(D)] = 1
        power = np.abs(ind @ H) ** 2  # |chi(D)|^2 per character
        ok = np.all(np.abs(power[:, 1:] - power[:, 1:2]) < 1e-6, axis=1)
        for r in np.flatnonzero(ok):
            if is_difference_set(G, batch[r]) is not None:
                out.append(batch[r])
        batch.clear()

    for D in itertools.combinations(range(v), k):
        batch.append(D)
        if len(batch) == 4096:
            flush()
    flush()
    return out


def canonical_translate(G: AbelianGroup, D: Iterable[int]) -> tuple:
    """The lexicographically smallest translate of D (it contains 0)."""
    D = tuple(sorted(D))
    return min(G.translate(D, t) for t in range(G.order))


@dataclass(frozen=True)
class PairedDifferenceSets:
    group: AbelianGroup
    rows: tuple
    cols: tuple
    d: int
    column_ratio: Surd  # (1/n) sqrt((n-d)/(d(n-1)))
    row_ratio: Surd     # (1/m) sqrt((m-d)/(d(m-1)))

    def describe(self) -> str:
        f = self.group.format_element
        return ("D = {" + ", ".join(f(g) for g in self.rows) + "}, D' = {"
                + ", ".join(f(g) for g in self.cols) + f"}}, d = {self.d}, "
                f"ratios {self.column_ratio} = {self.row_ratio}")

    def to_dict(self) -> dict:
        f = self.group.format_element
        return {"D": [f(g) for g in self.rows], "D_prime": [f(g) for g in self.cols], "d": self.d,
                "column_ratio": str(self.column_ratio), "row_ratio": str(self.row_ratio)}


def _float_pair_ok(M: np.ndarray) -> bool:
    """Quick screen: equiangular rows and columns."""
    for A in (M, M.conj().T):
        G = np.abs(A.conj().T @ A) ** 2
        off = G[~np.eye(G.shape[0], dtype=bool)]
        if off.size and np.abs(off - off[0]).max() > 1e-6:
            return False
    return True


def check_pair(G: AbelianGroup, D: Sequence[int], Dp: Sequence[int], H: CycloMatrix | None = None):
    """Exact test of one pair; returns PairedDifferenceSets or None."""
    H = character_table(G) if H is None else H
    Phi = H[list(D), list(Dp)]
    m, n = Phi.shape
    if m == n:
        return None
    cols = certify(Phi, own_span=True)
    rows = certify(Phi.H, own_span=True)
    if not (cols.equiangular and rows.equiangular):
        return None
    d = cols.span_dim
    if not (cols.is_etf and rows.is_etf):
        return None
    lhs = Surd.sqrt(Fraction(n - d, d * (n - 1))) / n
    rhs = Surd.sqrt(Fraction(m - d, d * (m - 1))) / m
    if lhs != rhs:
        return None
    return PairedDifferenceSets(G, tuple(D), tuple(Dp), d, lhs, rhs)


def paired_search(G: AbelianGroup, m: int, n: int, all: bool = False) -> list[PairedDifferenceSets]:
    """Pairs (D, D') of difference sets of sizes m and n whose character submatrix
    has equiangular rows and columns, both ETFs for their d-dimensional spans,
    with (1/n) sqrt((n-d)/(d(n-1))) = (1/m) sqrt((m-d)/(d(m-1))).

    Translating D or D' rescales rows or columns by unimodular factors, so by
    default each set is reported once per translation class (its smallest
    translate).  ``all=True`` lists every pair.
    """
    if G.order > MAX_SEARCH_ORDER:
        raise TooLarge(f"exhaustive search is limited to order {MAX_SEARCH_ORDER}, got {G.order}")
    A = difference_sets(G, m)
    B = difference_sets(G, n)
    if not all:
        A = sorted({canonical_translate(G, D) for D in A})
        B = sorted({canonical_translate(G, D) for D in B})
    H = character_table(G)
    Hf = _character_table_float(G)
    out = []
    for D in A:
        for Dp in B:
            if not _float_pair_ok(Hf[np.ix_(D, Dp)]):
                continue
            hit = check_pair(G, D, Dp, H)
            if hit is not None:
                out.append(hit)
    return out
