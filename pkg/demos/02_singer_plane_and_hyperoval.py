"""From GF(64) to the affine plane of order 4 that drives the q=4 frame.

The Singer difference set gives the projective plane of order 4.  Removing
a hyperoval (6 points, no three on a line) and dualizing leaves a 20 x 16
design whose rows split into 5 parallel classes.
"""

from hyperetf import designs, gf

POLY = 0b1000011  # x^6 + x + 1
field = gf.make_field(6, POLY)
D = designs.singer_difference_set(field, 2)
print("Singer difference set mod 21:", D)

plane, F = designs.singer_projective_plane(2, POLY)
print("projective plane:", designs.verify_bibd(plane))

oval = designs.canonical_hyperoval(plane, F)
print("hyperoval:", oval, "valid:", designs.is_hyperoval(plane, oval))

Y, Z, *_ = designs.dual_decomposition(plane, oval)
print("affine part:", Z.bits.shape, designs.verify_bibd(Z), "order", designs.affine_order(Z))
pc = designs.parallel_classes(Z)
print("parallel classes:", len(pc.classes), "of sizes", [len(c) for c in pc.classes])
