"""Frame matrices (synthesis operators) together with the subspace they should span."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .cyclo import CycloMatrix
from .errors import SpecMismatch

SPAN_KINDS = ("full", "zero-sum-tail", "zero-sum-all", "explicit-projection")


@dataclass(frozen=True)
class SpanSpec:
    """Subspace of F^m a frame is meant to be tight for.

    ``zero-sum-tail`` with parameter t is the set of vectors whose last t
    coordinates sum to zero; ``zero-sum-all`` is the case t = m.
    """

    kind: str
    m: int
    t: int | None = None
    dim: int | None = None  # only for explicit projections
    projection: CycloMatrix | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.kind not in SPAN_KINDS:
            raise SpecMismatch(f"unknown span kind {self.kind!r}")
        if self.kind == "zero-sum-tail" and not (self.t and 1 <= self.t <= self.m):
            raise SpecMismatch(f"zero-sum-tail needs 1 <= t <= {self.m}, got {self.t}")
        if self.kind == "explicit-projection" and (self.projection is None or self.dim is None):
            raise SpecMismatch("explicit projection needs the matrix and its rank")

    @classmethod
    def full(cls, m: int) -> "SpanSpec":
        return cls("full", m)

    @classmethod
    def zero_sum_tail(cls, m: int, t: int) -> "SpanSpec":
        return cls("zero-sum-tail", m, t)

    @classmethod
    def zero_sum_all(cls, m: int) -> "SpanSpec":
        return cls("zero-sum-all", m, m)

    @classmethod
    def explicit(cls, projection: CycloMatrix, dim: int) -> "SpanSpec":
        return cls("explicit-projection", projection.shape[0], dim=dim, projection=projection)

    @classmethod
    def parse(cls, text: str, m: int) -> "SpanSpec":
        """Parse ``full``, ``zero-sum-all`` or ``zero-sum-tail:t``."""
        text = text.strip()
        if text == "full":
            return cls.full(m)
        if text == "zero-sum-all":
            return cls.zero_sum_all(m)
        if text.startswith("zero-sum-tail:"):
            return cls.zero_sum_tail(m, int(text.split(":", 1)[1]))
        raise SpecMismatch(f"cannot parse span {text!r}")

    def __str__(self):
        return f"zero-sum-tail:{self.t}" if self.kind == "zero-sum-tail" else self.kind

    @property
    def nominal_dim(self) -> int:
        if self.kind == "full":
            return self.m
        if self.kind == "explicit-projection":
            return self.dim
        return self.m - 1

    @property
    def tail(self) -> int | None:
        """Length of the trailing block that must sum to zero, if any."""
        return self.t if self.kind in ("zero-sum-tail", "zero-sum-all") else None

    def projection_exact(self) -> CycloMatrix:
        if self.kind == "explicit-projection":
            return self.projection
        P = [[Fraction(int(i == j)) for j in range(self.m)] for i in range(self.m)]
        if self.tail:
            lo = self.m - self.tail
            for i in range(lo, self.m):
                for j in range(lo, self.m):
                    P[i][j] -= Fraction(1, self.tail)
        return CycloMatrix.from_rationals(P)

    def projection_float(self) -> np.ndarray:
        if self.kind == "explicit-projection":
            return self.projection.to_complex()
        P = np.eye(self.m, dtype=complex)
        if self.tail:
            lo = self.m - self.tail
            P[lo:, lo:] -= 1.0 / self.tail
        return P

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "nominal_dim": self.nominal_dim}
        if self.tail and self.kind == "zero-sum-tail":
            out["t"] = self.t
        return out

    @classmethod
    def from_dict(cls, obj: dict, m: int) -> "SpanSpec":
        kind = obj["kind"]
        if kind == "zero-sum-tail":
            return cls.zero_sum_tail(m, int(obj["t"]))
        if kind == "zero-sum-all":
            return cls.zero_sum_all(m)
        if kind == "full":
            return cls.full(m)
        raise SpecMismatch(f"span kind {kind!r} cannot be read from a file")


class FrameMatrix:
    """An m x n synthesis operator: exact (CycloMatrix) or float (complex ndarray)."""

    def __init__(self, data, span: SpanSpec | None = None, metadata: dict | None = None, sidecar=None):
        if isinstance(data, CycloMatrix):
            self.data = data
        else:
            arr = np.array(data, dtype=complex)
            if arr.ndim != 2:
                raise ValueError("frame data must be two dimensional")
            arr.setflags(write=False)
            self.data = arr
        m, n = self.data.shape
        if m < 1 or n < 1:
            raise ValueError("frame must have at least one row and one column")
        if span is not None and span.m != m:
            raise SpecMismatch(f"span is for dimension {span.m}, frame has {m} rows")
        self.span = span or SpanSpec.full(m)
        self.metadata = dict(metadata or {})
        self.sidecar = sidecar

    @property
    def exact(self) -> bool:
        return isinstance(self.data, CycloMatrix)

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def m(self) -> int:
        return self.data.shape[0]

    @property
    def n(self) -> int:
        return self.data.shape[1]

    @property
    def conductor(self) -> int | None:
        return self.data.conductor if self.exact else None

    def to_complex(self) -> np.ndarray:
        return self.data.to_complex() if self.exact else np.array(self.data)

    def to_float(self) -> "FrameMatrix":
        return FrameMatrix(self.to_complex(), self.span, self.metadata, self.sidecar)

    def with_span(self, span: SpanSpec) -> "FrameMatrix":
        return FrameMatrix(self.data, span, self.metadata, self.sidecar)

    def __eq__(self, other):
        if not isinstance(other, FrameMatrix) or self.exact != other.exact:
            return NotImplemented
        if self.exact:
            return self.data == other.data
        return self.shape == other.shape and np.array_equal(self.data, other.data)

    __hash__ = None

    def __repr__(self):
        mode = f"exact N={self.conductor}" if self.exact else "float"
        return f"FrameMatrix({self.m}x{self.n}, {mode}, span={self.span})"


def as_frame(obj, span: SpanSpec | None = None) -> FrameMatrix:
    if isinstance(obj, FrameMatrix):
        return obj if span is None else obj.with_span(span)
    return FrameMatrix(obj, span)
