"""Welch bound and the Steiner construction on the 6-block affine plane of order 2.

Every vertex of the design gets a copy of a 4-vector simplex in C^3, placed
on the blocks through that vertex.  The 16 resulting vectors in C^6 meet the
Welch bound with equality.
"""

from hyperetf import certify, steiner_etf, verify_bibd, welch_bound_sq
from hyperetf.golden import AFFINE_PLANE_2, SIMPLEX_3X4

print("design:", verify_bibd(AFFINE_PLANE_2))
print("incidence (blocks x vertices):")
print(AFFINE_PLANE_2.bits.astype(int))

print("\nsimplex in C^3 (4 vectors):")
print(SIMPLEX_3X4.to_complex().round(3))

frame = steiner_etf(AFFINE_PLANE_2, SIMPLEX_3X4)
cert = certify(frame)
print("\nframe shape:", frame.shape)
print("Welch bound squared for n=16, d=6:", welch_bound_sq(16, 6))
print(cert.summary())
