"""Command-line interface.

Exit codes: 0 certified, 1 not an ETF, 2 a construction failed its own
certificate (a regression), 64 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import designs, etf, golden, groups
from .errors import HyperEtfError, UnsupportedOrder
from .frame import SpanSpec
from .frame_io import read_frame, to_csv, frame_to_dict
from .seeds import unimodular_simplex
from .verify import certify

EXIT_OK, EXIT_NOT_ETF, EXIT_REGRESSION, EXIT_USAGE = 0, 1, 2, 64

VARIANTS = ("affine", "projective", "steiner", "flat", "extended")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.replace(" ", "").split(",") if x]


# ---------------------------------------------------------------------------

def cmd_info(args) -> int:
    q = args.q
    if q not in etf.SUPPORTED_ORDERS:
        raise UnsupportedOrder(f"q must be one of {etf.SUPPORTED_ORDERS}, got {q}")
    p = etf.hyperoval_params(q)
    welch = Fraction(1, q + 1)
    print(f"q = {q}")
    print(f"d = {p['d']}  (dimension of the span)")
    print(f"m = {p['m']}  (ambient dimension)")
    print(f"n = {p['n']}  (number of vectors)")
    print(f"Welch bound = {welch} = {float(welch):.12f}")
    print(f"projective variant: {q * q * (q + 2)} vectors spanning dimension {q * q + q + 1}")
    return EXIT_OK


def _build(args):
    q = args.q
    plane = designs.load_incidence(args.plane) if args.plane else None
    hyperoval = _int_list(args.hyperoval) if args.hyperoval else None
    kw = dict(plane=plane, hyperoval=hyperoval, removed_row=args.removed_row)
    v = args.variant
    if v in ("affine", "projective"):
        return etf.hyperoval_etf(q, v, **kw)
    if v == "steiner":
        if plane is not None and hyperoval is None:
            X = plane  # any BIBD with lambda = 1
        else:
            if plane is None and q not in etf.SUPPORTED_ORDERS:
                raise UnsupportedOrder(f"q must be one of {etf.SUPPORTED_ORDERS}, got {q}")
            X = etf.hyperoval_etf(q, "affine", **kw).sidecar.design
        r = int(X.bits.sum(axis=0)[0])  # replication number
        frame = etf.steiner_etf(X, unimodular_simplex(r - 1))
        frame.metadata.update(q=q, variant="steiner")
        return frame
    if v == "flat":
        return etf.flatten(etf.hyperoval_etf(q, "affine", **kw))
    if v == "extended":
        if q == 2 and plane is None:
            base = golden.golden_frames()["design_flat_6x10"]
            base.metadata.update(q=2, source="6x10 E(s^2)-optimal design")
        else:
            base = etf.flatten(etf.hyperoval_etf(q, "affine", **kw))
        out = etf.extend(base, args.branch)
        out.metadata["q"] = q
        return out
    raise ValueError(f"unknown variant {v!r}")


def cmd_generate(args) -> int:
    frame = _build(args)
    frame.metadata.setdefault("provenance", f"hyperetf generate --q {args.q} --variant {args.variant}"
                              + (f" --branch {args.branch}" if args.variant == "extended" else ""))
    sc = frame.sidecar
    if isinstance(sc, etf.ExtensionScalars):
        frame.metadata["extension"] = {"f": str(sc.f), "g": str(sc.g), "branch": sc.branch}
    cert = certify(frame)
    text = to_csv(frame) if args.format == "csv" else json.dumps(frame_to_dict(frame, cert), indent=1) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(cert.summary(), file=sys.stderr)
    return EXIT_OK if cert.is_etf else EXIT_REGRESSION


def cmd_verify(args) -> int:
    frame = read_frame(args.file)
    if args.span != "auto":
        frame = frame.with_span(SpanSpec.parse(args.span, frame.m))
    cert = certify(frame)
    print(cert.to_json(indent=1))
    print(cert.summary(), file=sys.stderr)
    return EXIT_OK if cert.is_etf else EXIT_NOT_ETF


def cmd_search(args) -> int:
    G = groups.AbelianGroup.parse(args.group)
    hits = groups.paired_search(G, args.m, args.n, all=args.all)
    if args.json:
        print(json.dumps({"group": list(G.invariant_factors), "m": args.m, "n": args.n,
                          "pairs": [h.to_dict() for h in hits]}, indent=1))
    elif not hits:
        print(f"{G}, m={args.m}, n={args.n}: no pairs found")
    else:
        print(f"{G}, m={args.m}, n={args.n}: {len(hits)} pair(s)")
        for h in hits:
            print("  " + h.describe())
    return EXIT_OK


ANNOTATIONS = {2: "exists (6x10 E(s^2)-optimal design)", 4: "real existence refuted"}


def cmd_admissible(args) -> int:
    rows = etf.admissible_flat_params(args.max_m)
    print(f"{'q':>4} {'m':>6} {'n':>8}  note")
    for q, m, n in rows:
        print(f"{q:>4} {m:>6} {n:>8}  {ANNOTATIONS.get(q, 'open')}")
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hyperetf", description="Hyperoval equiangular tight frames")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("info", help="frame sizes and Welch bound for an order q")
    s.add_argument("--q", type=int, required=True)
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("generate", help="build and certify a frame")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--variant", choices=VARIANTS, default="affine")
    s.add_argument("--branch", choices=("plus", "minus"), default="plus")
    s.add_argument("--out")
    s.add_argument("--format", choices=("json", "csv"), default="json")
    s.add_argument("--plane", help="ASCII incidence matrix of a projective plane")
    s.add_argument("--hyperoval", help="comma-separated vertex indices")
    s.add_argument("--removed-row", type=int, default=None)
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("verify", help="certify a frame file")
    s.add_argument("file")
    s.add_argument("--span", default="auto",
                   help="auto | full | zero-sum-tail:t | zero-sum-all")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="paired difference sets in a finite abelian group")
    s.add_argument("--group", required=True, help="invariant factors, e.g. 2,2,2,2")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--all", action="store_true", help="list every translate, not one per class")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("admissible", help="orders passing the real flat-ETF filters")
    s.add_argument("--max-m", type=int, required=True)
    s.set_defaults(func=cmd_admissible)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (HyperEtfError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
