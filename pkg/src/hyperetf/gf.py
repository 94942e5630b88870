"""Arithmetic in GF(2**k) with polynomial-basis bit representation.

An element is a k-bit integer whose bit i is the coefficient of a**i, where
``a`` is a root of the field's primitive polynomial.  Addition is XOR;
multiplication goes through discrete-log tables that are rebuilt and
validated every time a field is constructed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BadDegreeDivision, MixedFields, RejectDegree, RejectNotPrimitive

MAX_DEGREE = 24

#: primitive polynomials for GF(2**3), GF(2**6), GF(2**9) -- used for q = 2, 4, 8
DEFAULT_PRIMITIVE = {
    3: 0b1011,          # x^3 + x + 1
    6: 0b1000011,       # x^6 + x + 1
    9: 0b1000010001,    # x^9 + x^4 + 1
}


def parse_poly(text) -> int:
    """Accept an int or a hex/binary/decimal string such as ``"0x43"``."""
    if isinstance(text, int):
        return text
    return int(str(text).strip(), 0)


@dataclass(frozen=True, eq=False)
class FieldSpec:
    degree: int
    primitive_poly: int
    log_table: np.ndarray = field(repr=False)
    antilog_table: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        return 1 << self.degree

    @property
    def alpha(self) -> "FieldElement":
        return FieldElement(self.antilog_table[1 % len(self.antilog_table)].item(), self)

    def element(self, bits: int) -> "FieldElement":
        bits = int(bits)
        if not 0 <= bits < self.order:
            raise ValueError(f"{bits} is not a {self.degree}-bit field element")
        return FieldElement(bits, self)

    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    def one(self) -> "FieldElement":
        return FieldElement(1, self)

    def from_log(self, i: int) -> "FieldElement":
        return FieldElement(int(self.antilog_table[i % (self.order - 1)]), self)

    def log(self, x: "FieldElement | int") -> int:
        bits = x.bits if isinstance(x, FieldElement) else int(x)
        if bits == 0:
            raise ValueError("log of zero")
        return int(self.log_table[bits])

    def elements(self):
        return [FieldElement(b, self) for b in range(self.order)]

    def __eq__(self, other):
        return (isinstance(other, FieldSpec) and self.degree == other.degree
                and self.primitive_poly == other.primitive_poly)

    def __hash__(self):
        return hash((self.degree, self.primitive_poly))


@dataclass(frozen=True)
class FieldElement:
    bits: int
    spec: FieldSpec = field(repr=False)

    def _check(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.spec != self.spec:
            raise MixedFields("operands belong to different fields")
        return other

    def __add__(self, other):
        return add(self, other)

    __sub__ = __add__

    def __mul__(self, other):
        return mul(self, other)

    def __pow__(self, e: int):
        return pow_(self, e)

    def __bool__(self):
        return self.bits != 0

    def __repr__(self):
        return f"GF(2^{self.spec.degree})[{self.bits:#0{self.spec.degree + 2}b}]"


def make_field(degree: int, primitive_poly=None) -> FieldSpec:
    """Build GF(2**degree) and verify that x has multiplicative order 2**degree - 1."""
    if not 1 <= degree <= MAX_DEGREE:
        raise RejectDegree(f"degree {degree} outside 1..{MAX_DEGREE}")
    if primitive_poly is None:
        if degree not in DEFAULT_PRIMITIVE:
            raise RejectDegree(f"no default primitive polynomial for degree {degree}")
        primitive_poly = DEFAULT_PRIMITIVE[degree]
    poly = parse_poly(primitive_poly)
    if poly.bit_length() - 1 != degree:
        raise RejectDegree(f"polynomial {poly:#x} does not have degree {degree}")
    size = 1 << degree
    n = size - 1
    antilog = np.zeros(n, dtype=np.int64)
    log = np.full(size, -1, dtype=np.int64)
    x = 1
    for i in range(n):
        if x == 1 and i > 0:
            raise RejectNotPrimitive(f"{poly:#x}: root has order {i} < {n}")
        antilog[i] = x
        log[x] = i
        x <<= 1
        if x & size:
            x ^= poly
    if x != 1:
        raise RejectNotPrimitive(f"{poly:#x}: root does not generate the multiplicative group")
    return FieldSpec(degree, poly, log, antilog)


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    a._check(b)
    return FieldElement(a.bits ^ b.bits, a.spec)


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    a._check(b)
    if a.bits == 0 or b.bits == 0:
        return FieldElement(0, a.spec)
    s = a.spec
    i = s.log_table[a.bits] + s.log_table[b.bits]
    return FieldElement(int(s.antilog_table[i % (s.order - 1)]), s)


def pow_(a: FieldElement, e: int) -> FieldElement:
    s = a.spec
    if a.bits == 0:
        if e < 0:
            raise ZeroDivisionError("zero to a negative power")
        return FieldElement(1 if e == 0 else 0, s)
    i = int(s.log_table[a.bits]) * e
    return FieldElement(int(s.antilog_table[i % (s.order - 1)]), s)


def subfield_trace(beta: FieldElement, subfield_degree: int) -> FieldElement:
    """Relative trace to GF(2**subfield_degree): sum of beta**(q**i), q = 2**subfield_degree."""
    k = beta.spec.degree
    if subfield_degree < 1 or k % subfield_degree:
        raise BadDegreeDivision(f"{subfield_degree} does not divide {k}")
    q = 1 << subfield_degree
    out = beta.spec.zero()
    term = beta
    for _ in range(k // subfield_degree):
        out = out + term
        term = pow_(term, q)
    return out


def subfield_elements(spec: FieldSpec, subfield_degree: int) -> list[FieldElement]:
    """The copy of GF(2**subfield_degree) inside ``spec``: zero and the powers of a**((2**k-1)/(q-1))."""
    k = spec.degree
    if subfield_degree < 1 or k % subfield_degree:
        raise BadDegreeDivision(f"{subfield_degree} does not divide {k}")
    q = 1 << subfield_degree
    step = (spec.order - 1) // (q - 1)
    return [spec.zero()] + [spec.from_log(step * i) for i in range(q - 1)]
