"""Flattening to unimodular entries, then appending a scaled identity.

The flat q=2 frame is a +-1 matrix.  Appending f*Phi*Phi^* + g*I as six new
columns gives 16 vectors in R^6 that are again equiangular; the minus branch
stays +-1 valued.
"""

from hyperetf import certify, extend, flatten, hyperoval_etf
from hyperetf.etf import extension_scalars

flat = flatten(hyperoval_etf(2))
print("flat 6x10:")
print(flat.data.to_complex().real.astype(int))
print(certify(flat).summary())

for branch in ("plus", "minus"):
    sc = extension_scalars(6, 10, 5, branch)
    ext = extend(flat, branch)
    print(f"\n{branch} branch: f = {sc.f}, g = {sc.g}")
    print(certify(ext).summary())

flat4 = flatten(hyperoval_etf(4))
print("\nflat q=4:", certify(flat4).summary())
