"""The headline computation: dimensions of the bounded cohomology
H^n_cb(Aut(T_q), H_pi) for every irreducible-representation descriptor.

Everything vanishes except degree 2 on centipede-type cuspidal classes,
where the dimension is dim V^Q(x,y) - dim V^Qtilde(x,y).  The q=2
centipedes carry the order-8 dihedral group: exactly two non-degenerate
characters, one contributing dimension 1 and one dimension 0.
"""

from arbocoh import (
    RepDescriptor,
    centipede_shape,
    classify_bounded_cohomology,
    enumerate_nondegenerate,
    star_shape,
    y_shape,
)

print("== spherical and special classes: everything vanishes ==")
for label, d in [
    ("spherical z=1/2      ", RepDescriptor.spherical(2, 0.5)),
    ("spherical z=1/2+2i   ", RepDescriptor.spherical(2, 0.5 + 2j)),
    ("spherical z=0.3      ", RepDescriptor.spherical(2, 0.3)),
    ("special +            ", RepDescriptor.special(2, "+")),
    ("special -            ", RepDescriptor.special(2, "-")),
]:
    dims = [classify_bounded_cohomology(d, n) for n in range(1, 7)]
    print(f"  {label} dim H^n for n=1..6: {dims}")

print("\n== cuspidal classes: the shape decides ==")
for name, s in [
    ("star (2-centipede)", star_shape(2)),
    ("3-centipede", centipede_shape(2, 3)),
    ("4-centipede", centipede_shape(2, 4)),
    ("5-centipede", centipede_shape(2, 5)),
    ("Y-shape (3 heads)", y_shape(2)),
]:
    print(f"  {name}:")
    for row, deg, _h2 in enumerate_nondegenerate(s):
        d = RepDescriptor.cuspidal(s, row)
        dims = [classify_bounded_cohomology(d, n) for n in range(1, 7)]
        print(f"    row {row} (degree {deg}): dim H^n = {dims}")

print("\nonly degree 2 on centipedes is ever nonzero, with exactly one")
print("contributing character per q=2 centipede (the sign killing the rotation).")
