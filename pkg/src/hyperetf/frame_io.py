"""Reading and writing frame files.

JSON (``etf-frame/1``) is the archival format.  In cyclotomic mode each
entry is its list of phi(N) power-basis coefficients, each written as a
``[num, den]`` pair, so files round-trip exactly.  Float mode stores
``[re, im]`` pairs.  CSV holds complex decimals ``a+bi`` and is lossy.
"""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from pathlib import Path

import numpy as np

from .cyclo import CycloMatrix, euler_phi
from .errors import FrameFileError, HyperEtfError
from .frame import FrameMatrix, SpanSpec
from .verify import EtfCertificate, certify

FORMAT_TAG = "etf-frame/1"


def _encode_exact(M: CycloMatrix) -> list:
    den = M.den
    return [[[Fraction(int(c), den).numerator, Fraction(int(c), den).denominator] for c in entry]
            for entry in M.coeffs.reshape(-1, M.phi)]


def _decode_exact(entries, m: int, n: int, N: int) -> CycloMatrix:
    phi = euler_phi(N)
    if len(entries) != m * n:
        raise FrameFileError(f"expected {m * n} entries, found {len(entries)}")
    fracs = []
    for k, entry in enumerate(entries):
        if len(entry) != phi:
            raise FrameFileError(f"entry {k} has {len(entry)} coefficients, expected {phi}")
        fracs.append([Fraction(int(p), int(q)) for p, q in entry])
    den = math.lcm(*(f.denominator for row in fracs for f in row)) if fracs else 1
    coeffs = np.array([[int(f * den) for f in row] for row in fracs], dtype=object)
    if coeffs.size and max(abs(int(x)) for x in coeffs.ravel()) < 2**62:
        coeffs = coeffs.astype(np.int64)
    return CycloMatrix(N, coeffs.reshape(m, n, phi), den)


def _span_to_dict(span: SpanSpec) -> dict:
    out = span.to_dict()
    if span.kind == "explicit-projection":
        P = span.projection
        out.update(dim=span.dim, conductor=P.conductor, projection=_encode_exact(P))
    return out


def _span_from_dict(obj: dict, m: int) -> SpanSpec:
    if obj.get("kind") == "explicit-projection":
        P = _decode_exact(obj["projection"], m, m, int(obj["conductor"]))
        return SpanSpec.explicit(P, int(obj["dim"]))
    return SpanSpec.from_dict(obj, m)


def frame_to_dict(frame: FrameMatrix, certificate: EtfCertificate | None = None) -> dict:
    m, n = frame.shape
    out = {"format_tag": FORMAT_TAG, "m": m, "n": n}
    if frame.exact:
        out.update(representation="cyclotomic", conductor=frame.conductor,
                   entries=_encode_exact(frame.data))
    else:
        z = frame.to_complex().ravel()
        out.update(representation="float", entries=[[float(x.real), float(x.imag)] for x in z])
    meta = {k: v for k, v in frame.metadata.items() if k != "span"}
    meta["span"] = _span_to_dict(frame.span)
    out["metadata"] = meta
    if certificate is not None:
        out["certificate"] = certificate.to_dict()
    return out


def frame_from_dict(obj: dict) -> FrameMatrix:
    try:
        if obj.get("format_tag") != FORMAT_TAG:
            raise FrameFileError(f"unknown format tag {obj.get('format_tag')!r}")
        m, n = int(obj["m"]), int(obj["n"])
        rep = obj["representation"]
        if rep == "cyclotomic":
            data = _decode_exact(obj["entries"], m, n, int(obj["conductor"]))
        elif rep == "float":
            vals = np.array(obj["entries"], dtype=float)
            if vals.shape != (m * n, 2):
                raise FrameFileError(f"expected {m * n} [re, im] pairs")
            data = (vals[:, 0] + 1j * vals[:, 1]).reshape(m, n)
        else:
            raise FrameFileError(f"unknown representation {rep!r}")
        meta = dict(obj.get("metadata") or {})
        span = _span_from_dict(meta.pop("span"), m) if "span" in meta else None
        return FrameMatrix(data, span, meta)
    except FrameFileError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError, HyperEtfError) as exc:
        raise FrameFileError(f"malformed frame file: {exc}") from exc


def write_json(frame: FrameMatrix, path, certificate: EtfCertificate | None = None) -> None:
    if certificate is None:
        certificate = certify(frame)
    Path(path).write_text(json.dumps(frame_to_dict(frame, certificate), indent=1) + "\n")


def read_json(path) -> FrameMatrix:
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise FrameFileError(f"cannot read {path}: {exc}") from exc
    if not isinstance(obj, dict):
        raise FrameFileError("top level of a frame file must be an object")
    return frame_from_dict(obj)


def format_complex(z: complex) -> str:
    return f"{z.real:.15g}{z.imag:+.15g}i"


def to_csv(frame: FrameMatrix) -> str:
    """CSV text; a leading ``#`` line records the span so it survives re-import."""
    buf = io.StringIO()
    buf.write(f"# span={frame.span}\n")
    w = csv.writer(buf, lineterminator="\n")
    for row in frame.to_complex():
        w.writerow(format_complex(z) for z in row)
    return buf.getvalue()


def from_csv(text: str) -> FrameMatrix:
    lines = text.splitlines()
    span_text = None
    while lines and lines[0].startswith("#"):
        head = lines.pop(0)[1:].strip()
        if head.startswith("span="):
            span_text = head[5:]
    try:
        rows = [[complex(cell.strip().replace("i", "j")) for cell in row]
                for row in csv.reader(lines) if row]
        arr = np.array(rows, dtype=complex)
        if arr.ndim != 2 or arr.size == 0:
            raise FrameFileError("CSV rows have unequal lengths or no data")
        span = SpanSpec.parse(span_text, arr.shape[0]) if span_text and span_text != "explicit-projection" else None
        return FrameMatrix(arr, span)
    except FrameFileError:
        raise
    except (ValueError, HyperEtfError) as exc:
        raise FrameFileError(f"malformed CSV: {exc}") from exc


def write_csv(frame: FrameMatrix, path) -> None:
    Path(path).write_text(to_csv(frame))


def read_frame(path) -> FrameMatrix:
    """Dispatch on extension: ``.csv`` or JSON otherwise."""
    path = Path(path)
    if path.suffix.lower() == ".csv":
        try:
            text = path.read_text()
        except (OSError, UnicodeDecodeError) as exc:
            raise FrameFileError(f"cannot read {path}: {exc}") from exc
        return from_csv(text)
    return read_json(path)
