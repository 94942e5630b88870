"""Real numbers of the form sum_k c_k * sqrt(k) with rational c_k and squarefree k.

Products are closed because sqrt(a) * sqrt(b) = s * sqrt(t) with ab = s**2 t.
That is all the extension scalars need: they are built from square roots
of integers by ring operations and division by rationals.
"""

from __future__ import annotations

import math
from fractions import Fraction


def _split_square(n: int) -> tuple[int, int]:
    """Return (s, t) with n = s*s*t and t squarefree."""
    if n < 0:
        raise ValueError("square root of a negative number")
    if n == 0:
        return 0, 1
    s, t = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        t *= p ** (e % 2)
        p += 1
    return s, t * n


class Surd:
    """Immutable element of Q(sqrt 2, sqrt 3, sqrt 5, ...)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for k, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[int(k)] = clean.get(int(k), Fraction(0)) + c
        self.terms = {k: c for k, c in clean.items() if c}

    @classmethod
    def rational(cls, x) -> "Surd":
        return cls({1: Fraction(x)})

    @classmethod
    def sqrt(cls, x) -> "Surd":
        """Exact square root of a non-negative rational."""
        x = Fraction(x)
        if x < 0:
            raise ValueError("square root of a negative number")
        # sqrt(p/q) = sqrt(p q) / q
        s, t = _split_square(x.numerator * x.denominator)
        return cls({t: Fraction(s, x.denominator)})

    @staticmethod
    def _lift(x) -> "Surd":
        return x if isinstance(x, Surd) else Surd.rational(x)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return Surd(out)

    __radd__ = __add__

    def __neg__(self):
        return Surd({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out: dict[int, Fraction] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                g = math.gcd(a, b)
                # sqrt(a) sqrt(b) = g sqrt(ab / g^2), and ab/g^2 is squarefree
                k = (a // g) * (b // g)
                out[k] = out.get(k, Fraction(0)) + ca * cb * g
        return Surd(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Surd):
            r = other.is_rational()
            if r is None:
                raise TypeError("division by an irrational surd is not supported")
            other = r
        other = Fraction(other)
        return Surd({k: c / other for k, c in self.terms.items()})

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported")
        out = Surd.rational(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Surd.rational(other)
        if not isinstance(other, Surd):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> Fraction | None:
        if not self.terms:
            return Fraction(0)
        if set(self.terms) == {1}:
            return self.terms[1]
        return None

    def __float__(self):
        return float(sum(float(c) * math.sqrt(k) for k, c in self.terms.items()))

    def __repr__(self):
        return f"Surd({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            c = self.terms[k]
            parts.append(str(c) if k == 1 else f"{c}*sqrt({k})")
        return " + ".join(parts)

    def to_json(self):
        """[[radicand, [num, den]], ...] sorted by radicand."""
        return [[k, [c.numerator, c.denominator]] for k, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, obj) -> "Surd":
        return cls({k: Fraction(n, d) for k, (n, d) in obj})
