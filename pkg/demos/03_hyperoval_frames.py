"""Hyperoval ETFs for q = 2, 4, 8, certified in exact cyclotomic arithmetic."""

import time

from hyperetf import certify, hyperoval_etf
from hyperetf.etf import hyperoval_params

for q in (2, 4, 8):
    t = time.perf_counter()
    frame = hyperoval_etf(q)
    cert = certify(frame)
    print(f"q={q}: {hyperoval_params(q)}")
    print(f"   conductor {frame.conductor}, {time.perf_counter() - t:.2f}s")
    print("  ", cert.summary())

proj = hyperoval_etf(4, "projective")
print("\nprojective variant, q=4:", certify(proj).summary())
