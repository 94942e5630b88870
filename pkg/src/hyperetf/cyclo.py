"""Exact arithmetic in cyclotomic fields Q(z), z = exp(2 pi i / N).

Every value is kept in the power basis 1, z, ..., z**(phi(N) - 1) after
reduction modulo the N-th cyclotomic polynomial, so two values are equal
exactly when their coefficient vectors are.

:class:`CycloNum` is the scalar type (Fraction coefficients).
:class:`CycloMatrix` stores a whole matrix as an integer array of shape
``(rows, cols, phi(N))`` over one common denominator.  Matrix products are
routed through float64 BLAS whenever an a-priori bound shows every partial
sum is an integer below 2**53, which keeps them exact; otherwise they fall
back to int64 or Python integers.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from numbers import Rational

import numpy as np

from .errors import ConductorMismatch

_FLOAT_EXACT = 2**53
_INT64_SAFE = 2**62


# ---------------------------------------------------------------------------
# integer polynomials (low degree first)

def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod(num, den):
    """Long division; ``den`` must be monic so integer inputs stay integral."""
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    if len(num) - 1 < dd:
        return [0], num
    quot = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            c = c / lead if lead != 1 else c
            quot[k - dd] = c
            for i, d in enumerate(den):
                num[k - dd + i] -= c * d
    rem = num[:dd] or [0]
    return quot, rem


def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


@lru_cache(maxsize=None)
def cyclotomic_poly(N: int) -> tuple[int, ...]:
    """Integer coefficients of the N-th cyclotomic polynomial, lowest first.

    Computed as ``(x**N - 1)`` divided by the cyclotomic polynomials of all
    proper divisors of N.
    """
    if N < 1:
        raise ValueError(f"conductor must be positive, got {N}")
    num = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            quot, rem = _poly_divmod(num, list(cyclotomic_poly(d)))
            assert not any(rem), "cyclotomic division left a remainder"
            num = quot
    return tuple(int(c) for c in _trim(num))


def euler_phi(N: int) -> int:
    return len(cyclotomic_poly(N)) - 1


@lru_cache(maxsize=None)
def _power_table(N: int) -> np.ndarray:
    """Row t holds the coefficients of x**t mod Phi_N for 0 <= t < max(N, 2 phi - 1)."""
    cp = cyclotomic_poly(N)
    phi = len(cp) - 1
    count = max(N, 2 * phi - 1, 1)
    rows = []
    v = [1] + [0] * (phi - 1)
    for _ in range(count):
        rows.append(list(v))
        carry = v[-1]
        v = [0] + v[:-1]
        if carry:
            v = [a - carry * c for a, c in zip(v, cp[:phi])]
    table = np.array(rows, dtype=object)
    if _maxabs(table) < _INT64_SAFE:
        table = table.astype(np.int64)
    return table


@lru_cache(maxsize=None)
def _conj_matrix(N: int) -> np.ndarray:
    """phi x phi integer matrix sending power-basis coefficients to those of the conjugate."""
    table = _power_table(N)
    phi = euler_phi(N)
    return np.stack([table[(-k) % N] for k in range(phi)])


@lru_cache(maxsize=None)
def _lift_matrix(N: int, M: int) -> np.ndarray:
    """phi(N) x phi(M) matrix re-expressing z_N**k = z_M**(k M / N)."""
    table = _power_table(M)
    step = M // N
    return np.stack([table[(k * step) % M] for k in range(euler_phi(N))])


# ---------------------------------------------------------------------------
# exact integer array kernels

def _maxabs(a) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return int(np.abs(a).max())


def _tidy(a: np.ndarray) -> np.ndarray:
    """Demote object arrays back to int64 when every entry fits."""
    if a.dtype == object and _maxabs(a) < _INT64_SAFE:
        return a.astype(np.int64)
    return a


def _imatmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact integer matrix product."""
    inner = a.shape[-1]
    bound = _maxabs(a) * _maxabs(b) * max(inner, 1)
    if a.dtype != object and b.dtype != object:
        if bound < _FLOAT_EXACT:
            return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
        if bound < _INT64_SAFE:
            return a.astype(np.int64) @ b.astype(np.int64)
    return _tidy(a.astype(object) @ b.astype(object))


def _iadd(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.dtype != object and b.dtype != object and _maxabs(a) + _maxabs(b) < _INT64_SAFE:
        return a + b
    return _tidy(a.astype(object) + b.astype(object))


def _imul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact elementwise product (with broadcasting)."""
    if a.dtype != object and b.dtype != object and _maxabs(a) * _maxabs(b) < _INT64_SAFE:
        return np.multiply(a, b, dtype=np.int64)
    return _tidy(np.multiply(a.astype(object), b.astype(object)))


def _reduce_raw(raw: np.ndarray, N: int) -> np.ndarray:
    """Reduce (..., T) raw power coefficients to (..., phi) canonical ones."""
    T = raw.shape[-1]
    table = _power_table(N)
    if T > table.shape[0]:
        # fold exponents modulo N first; z**N = 1
        folded = np.zeros(raw.shape[:-1] + (N,), dtype=raw.dtype)
        for t in range(T):
            folded[..., t % N] = folded[..., t % N] + raw[..., t]
        raw, T = folded, N
    lead = raw.shape[:-1]
    flat = raw.reshape(-1, T)
    out = _imatmul(flat, table[:T])
    return out.reshape(lead + (table.shape[1],))


def _cmul(a: np.ndarray, b: np.ndarray, N: int) -> np.ndarray:
    """Elementwise product of coefficient arrays (..., phi) in Q(z_N)."""
    phi = a.shape[-1]
    shape = np.broadcast_shapes(a.shape[:-1], b.shape[:-1])
    raw = [None] * (2 * phi - 1)
    for i in range(phi):
        ai = a[..., i]
        if not np.any(ai):
            continue
        for j in range(phi):
            bj = b[..., j]
            if not np.any(bj):
                continue
            p = np.broadcast_to(_imul(ai, bj), shape)
            raw[i + j] = p if raw[i + j] is None else _iadd(raw[i + j], p)
    parts = [np.zeros(shape, dtype=np.int64) if x is None else x for x in raw]
    dtype = object if any(p.dtype == object for p in parts) else np.int64
    return _reduce_raw(np.stack([p.astype(dtype) for p in parts], axis=-1), N)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"expected a rational number, got {type(x).__name__}")


# ---------------------------------------------------------------------------
# scalars

def _reduce_scalar(poly, N: int) -> tuple[Fraction, ...]:
    """Reduce a polynomial in z_N (any length) to canonical coefficients."""
    cp = cyclotomic_poly(N)
    phi = len(cp) - 1
    poly = [_as_fraction(c) for c in poly] or [Fraction(0)]
    if len(poly) > phi:
        _, rem = _poly_divmod(poly, list(cp))
    else:
        rem = poly
    rem = list(rem) + [Fraction(0)] * (phi - len(rem))
    return tuple(Fraction(c) for c in rem[:phi])


@dataclass(frozen=True)
class CycloNum:
    """An element of Q(z_N) in canonical power-basis form."""

    conductor: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != euler_phi(self.conductor):
            raise ValueError("coefficient vector length must equal phi(conductor)")

    # constructors
    @classmethod
    def from_poly(cls, N: int, poly) -> "CycloNum":
        return cls(N, _reduce_scalar(poly, N))

    @classmethod
    def rational(cls, value, N: int = 1) -> "CycloNum":
        return cls.from_poly(N, [_as_fraction(value)])

    @classmethod
    def zero(cls, N: int = 1) -> "CycloNum":
        return cls.rational(0, N)

    @classmethod
    def one(cls, N: int = 1) -> "CycloNum":
        return cls.rational(1, N)

    @classmethod
    def root_of_unity(cls, N: int, k: int = 1) -> "CycloNum":
        k %= N
        return cls.from_poly(N, [0] * k + [1])

    # coercion
    def lift(self, M: int) -> "CycloNum":
        if M == self.conductor:
            return self
        if M % self.conductor:
            raise ConductorMismatch(f"cannot lift conductor {self.conductor} to {M}")
        step = M // self.conductor
        poly = [Fraction(0)] * (step * (len(self.coeffs) - 1) + 1)
        for k, c in enumerate(self.coeffs):
            poly[k * step] = c
        return CycloNum.from_poly(M, poly)

    def _coerce(self, other) -> tuple["CycloNum", "CycloNum"]:
        if not isinstance(other, CycloNum):
            other = CycloNum.rational(other, self.conductor)
        a, b = self.conductor, other.conductor
        if a == b:
            return self, other
        if b % a == 0:
            return self.lift(b), other
        if a % b == 0:
            return self, other.lift(a)
        raise ConductorMismatch(f"conductors {a} and {b} are not nested")

    # ring operations
    def __add__(self, other):
        a, b = self._coerce(other)
        return CycloNum(a.conductor, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloNum(self.conductor, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        a, b = self._coerce(other)
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._coerce(other)
        return CycloNum.from_poly(a.conductor, _poly_mul(list(a.coeffs), list(b.coeffs)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        a, b = self._coerce(other)
        return a * b.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = CycloNum.one(self.conductor)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conj(self) -> "CycloNum":
        N = self.conductor
        poly = [Fraction(0)] * N
        for k, c in enumerate(self.coeffs):
            poly[(-k) % N] += c
        return CycloNum.from_poly(N, poly)

    def inverse(self) -> "CycloNum":
        """Multiplicative inverse via the extended Euclidean algorithm against Phi_N."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        N = self.conductor
        r0, r1 = [Fraction(c) for c in cyclotomic_poly(N)], _trim(list(self.coeffs))
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while _trim(r1) != [0]:
            q, r = _poly_divmod(_trim(r0), _trim(r1))
            q = [Fraction(c) for c in q]
            r0, r1 = r1, _trim(r)
            qs = _poly_mul(q, s1)
            width = max(len(s0), len(qs))
            s_next = [(s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0)
                      for i in range(width)]
            s0, s1 = s1, _trim(s_next)
        g = _trim(r0)
        assert len(g) == 1, "Phi_N is irreducible, gcd must be constant"
        return CycloNum.from_poly(N, [c / g[0] for c in s0])

    def modulus_squared(self) -> "CycloNum":
        return self * self.conj()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self):
        """The rational value if this number lies in Q, else None."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def to_complex(self) -> complex:
        N = self.conductor
        return complex(sum(float(c) * cmath.exp(2j * math.pi * k / N)
                           for k, c in enumerate(self.coeffs)))

    def __complex__(self):
        return self.to_complex()

    def __repr__(self):
        terms = [f"{c}*z^{k}" for k, c in enumerate(self.coeffs) if c]
        return f"CycloNum(N={self.conductor}: {' + '.join(terms) or '0'})"


def root_of_unity(N: int, k: int = 1) -> CycloNum:
    return CycloNum.root_of_unity(N, k)


# ---------------------------------------------------------------------------
# matrices

class CycloMatrix:
    """Matrix over Q(z_N): integer coefficients ``(rows, cols, phi)`` over ``den``.

    Instances are treated as immutable.
    """

    __slots__ = ("conductor", "coeffs", "den")

    def __init__(self, conductor: int, coeffs, den: int = 1):
        coeffs = np.asarray(coeffs)
        if coeffs.dtype != object:
            coeffs = coeffs.astype(np.int64)
        if coeffs.ndim != 3 or coeffs.shape[2] != euler_phi(conductor):
            raise ValueError(f"coefficient array must have shape (r, c, {euler_phi(conductor)})")
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            coeffs, den = -coeffs, -den
        if den != 1:
            g = reduce(math.gcd, (int(x) for x in np.unique(coeffs)), den) if coeffs.size else den
            if g > 1:
                coeffs = coeffs // g
                den //= g
        self.conductor = conductor
        self.coeffs = _tidy(coeffs)
        self.den = den

    # -- constructors
    @classmethod
    def zeros(cls, rows: int, cols: int, N: int = 1) -> "CycloMatrix":
        return cls(N, np.zeros((rows, cols, euler_phi(N)), dtype=np.int64))

    @classmethod
    def identity(cls, n: int, N: int = 1) -> "CycloMatrix":
        c = np.zeros((n, n, euler_phi(N)), dtype=np.int64)
        c[np.arange(n), np.arange(n), 0] = 1
        return cls(N, c)

    @classmethod
    def from_exponents(cls, N: int, exps, mask=None) -> "CycloMatrix":
        """Entries z_N**exps[i, j], or 0 where ``mask`` is False."""
        exps = np.asarray(exps, dtype=np.int64) % N
        coeffs = _power_table(N)[exps]
        if mask is not None:
            coeffs = np.where(np.asarray(mask, dtype=bool)[..., None], coeffs, 0)
        return cls(N, coeffs)

    @classmethod
    def from_rationals(cls, values, N: int = 1) -> "CycloMatrix":
        rows = [[_as_fraction(x) for x in row] for row in values]
        den = reduce(math.lcm, (x.denominator for row in rows for x in row), 1)
        phi = euler_phi(N)
        c = np.zeros((len(rows), len(rows[0]) if rows else 0, phi), dtype=object)
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                c[i, j, 0] = x.numerator * (den // x.denominator)
        return cls(N, c, den)

    @classmethod
    def from_entries(cls, entries, N: int | None = None) -> "CycloMatrix":
        """Build from a nested list of CycloNum / rationals."""
        flat = [x for row in entries for x in row]
        if N is None:
            N = reduce(math.lcm, (x.conductor for x in flat if isinstance(x, CycloNum)), 1)
        phi = euler_phi(N)
        vals = [[(x if isinstance(x, CycloNum) else CycloNum.rational(x)).lift(N) for x in row]
                for row in entries]
        den = reduce(math.lcm, (c.denominator for row in vals for x in row for c in x.coeffs), 1)
        c = np.zeros((len(vals), len(vals[0]) if vals else 0, phi), dtype=object)
        for i, row in enumerate(vals):
            for j, x in enumerate(row):
                for k, q in enumerate(x.coeffs):
                    c[i, j, k] = q.numerator * (den // q.denominator)
        return cls(N, c, den)

    # -- basic properties
    @property
    def shape(self) -> tuple[int, int]:
        return self.coeffs.shape[0], self.coeffs.shape[1]

    @property
    def phi(self) -> int:
        return self.coeffs.shape[2]

    def __repr__(self):
        return f"CycloMatrix(N={self.conductor}, shape={self.shape}, den={self.den})"

    def lift(self, M: int) -> "CycloMatrix":
        if M == self.conductor:
            return self
        if M % self.conductor:
            raise ConductorMismatch(f"cannot lift conductor {self.conductor} to {M}")
        L = _lift_matrix(self.conductor, M)
        r, c, phi = self.coeffs.shape
        new = _imatmul(self.coeffs.reshape(-1, phi), L).reshape(r, c, -1)
        return CycloMatrix(M, new, self.den)

    def _common(self, other: "CycloMatrix") -> tuple["CycloMatrix", "CycloMatrix"]:
        M = math.lcm(self.conductor, other.conductor)
        return self.lift(M), other.lift(M)

    def __getitem__(self, key):
        i, j = key
        if isinstance(i, (int, np.integer)) and isinstance(j, (int, np.integer)):
            return CycloNum(self.conductor, tuple(Fraction(int(c), self.den) for c in self.coeffs[i, j]))
        if not isinstance(i, slice):
            i = np.atleast_1d(np.asarray(i))
        if not isinstance(j, slice):
            j = np.atleast_1d(np.asarray(j))
        if isinstance(i, slice) or isinstance(j, slice):
            sub = self.coeffs[i][:, j]
        else:
            sub = self.coeffs[np.ix_(i, j)]
        return CycloMatrix(self.conductor, sub, self.den)

    # -- arithmetic
    def __eq__(self, other):
        if not isinstance(other, CycloMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        a, b = self._common(other)
        return a.den == b.den and np.array_equal(a.coeffs, b.coeffs)

    __hash__ = None

    def __add__(self, other: "CycloMatrix") -> "CycloMatrix":
        a, b = self._common(other)
        if a.shape != b.shape:
            raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
        den = math.lcm(a.den, b.den)
        ca = _imul(a.coeffs, np.array(den // a.den, dtype=object if den // a.den >= _INT64_SAFE else np.int64))
        cb = _imul(b.coeffs, np.array(den // b.den, dtype=object if den // b.den >= _INT64_SAFE else np.int64))
        return CycloMatrix(a.conductor, _iadd(ca, cb), den)

    def __neg__(self):
        return CycloMatrix(self.conductor, -self.coeffs, self.den)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "CycloMatrix":
        """Multiply by a rational or a CycloNum scalar."""
        if isinstance(s, CycloNum):
            M = math.lcm(self.conductor, s.conductor)
            a, s = self.lift(M), s.lift(M)
            den = reduce(math.lcm, (c.denominator for c in s.coeffs), 1)
            vec = np.array([int(c * den) for c in s.coeffs], dtype=object)
            return CycloMatrix(M, _cmul(a.coeffs, _tidy(vec), M), a.den * den)
        s = _as_fraction(s)
        num = np.array(s.numerator, dtype=object if abs(s.numerator) >= _INT64_SAFE else np.int64)
        return CycloMatrix(self.conductor, _imul(self.coeffs, num), self.den * s.denominator)

    def __mul__(self, s):
        return self.scale(s)

    __rmul__ = __mul__

    def hadamard(self, other: "CycloMatrix") -> "CycloMatrix":
        a, b = self._common(other)
        return CycloMatrix(a.conductor, _cmul(a.coeffs, b.coeffs, a.conductor), a.den * b.den)

    def __matmul__(self, other: "CycloMatrix") -> "CycloMatrix":
        a, b = self._common(other)
        (r, k), (k2, c) = a.shape, b.shape
        if k != k2:
            raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
        N, phi = a.conductor, a.phi
        raw = [None] * (2 * phi - 1)
        for i in range(phi):
            ai = a.coeffs[:, :, i]
            if not ai.any():
                continue
            for j in range(phi):
                bj = b.coeffs[:, :, j]
                if not bj.any():
                    continue
                p = _imatmul(ai, bj)
                raw[i + j] = p if raw[i + j] is None else _iadd(raw[i + j], p)
        zero = np.zeros((r, c), dtype=np.int64)
        parts = [zero if x is None else x for x in raw]
        dtype = object if any(p.dtype == object for p in parts) else np.int64
        stacked = np.stack([p.astype(dtype) for p in parts], axis=-1)
        return CycloMatrix(N, _reduce_raw(stacked, N), a.den * b.den)

    @property
    def T(self) -> "CycloMatrix":
        return CycloMatrix(self.conductor, self.coeffs.transpose(1, 0, 2), self.den)

    def conj(self) -> "CycloMatrix":
        r, c, phi = self.coeffs.shape
        C = _conj_matrix(self.conductor)
        return CycloMatrix(self.conductor, _imatmul(self.coeffs.reshape(-1, phi), C).reshape(r, c, phi), self.den)

    @property
    def H(self) -> "CycloMatrix":
        """Conjugate transpose."""
        return self.conj().T

    def modulus_squared(self) -> "CycloMatrix":
        """Elementwise |entry|**2."""
        return CycloMatrix(self.conductor, _cmul(self.coeffs, self.conj().coeffs, self.conductor),
                           self.den * self.den)

    def trace(self) -> CycloNum:
        n = min(self.shape)
        s = self.coeffs[np.arange(n), np.arange(n)].sum(axis=0) if n else np.zeros(self.phi, dtype=np.int64)
        return CycloNum(self.conductor, tuple(Fraction(int(x), self.den) for x in s))

    # -- queries
    def nonzero_mask(self) -> np.ndarray:
        return np.any(self.coeffs != 0, axis=2)

    def rational_mask(self) -> np.ndarray:
        if self.phi == 1:
            return np.ones(self.shape, dtype=bool)
        return ~np.any(self.coeffs[:, :, 1:] != 0, axis=2)

    def rational_values(self):
        """Object array of Fractions if every entry is rational, else None."""
        if not self.rational_mask().all():
            return None
        out = np.empty(self.shape, dtype=object)
        for (i, j), v in np.ndenumerate(self.coeffs[:, :, 0]):
            out[i, j] = Fraction(int(v), self.den)
        return out

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def to_complex(self) -> np.ndarray:
        N = self.conductor
        basis = np.exp(2j * np.pi * np.arange(self.phi) / N)
        return (self.coeffs.astype(np.float64) @ basis) / self.den

    def row_permuted(self, perm) -> "CycloMatrix":
        return CycloMatrix(self.conductor, self.coeffs[np.asarray(perm)], self.den)

    def col_permuted(self, perm) -> "CycloMatrix":
        return CycloMatrix(self.conductor, self.coeffs[:, np.asarray(perm)], self.den)


def hstack(mats) -> CycloMatrix:
    mats = list(mats)
    N = reduce(math.lcm, (m.conductor for m in mats), 1)
    den = reduce(math.lcm, (m.den for m in mats), 1)
    parts = [_imul(m.lift(N).coeffs, np.array(den // m.den, dtype=object)) for m in mats]
    dtype = object if any(p.dtype == object for p in parts) else np.int64
    return CycloMatrix(N, np.concatenate([p.astype(dtype) for p in parts], axis=1), den)


def vstack(mats) -> CycloMatrix:
    return hstack([m.T for m in mats]).T


def block_diag(blocks) -> CycloMatrix:
    blocks = list(blocks)
    N = reduce(math.lcm, (b.conductor for b in blocks), 1)
    den = reduce(math.lcm, (b.den for b in blocks), 1)
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = np.zeros((rows, cols, euler_phi(N)), dtype=object)
    r = c = 0
    for b in blocks:
        h, w = b.shape
        out[r:r + h, c:c + w] = _imul(b.lift(N).coeffs, np.array(den // b.den, dtype=object))
        r, c = r + h, c + w
    return CycloMatrix(N, out, den)
