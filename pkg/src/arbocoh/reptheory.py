"""Non-degeneracy, the degree-2 dimension formula, and the classifier.

An irreducible of Aut(S) is non-degenerate when it has no invariant
vectors under any A_j, the pointwise stabilizer (inside Aut(S)) of a
maximal proper complete subtree S_j.  Non-degenerate irreducibles on a
shape S are exactly the cuspidal representation classes with minimal tree
of that shape; spherical and special classes are tagged directly.

The only non-vanishing bounded cohomology happens in degree 2 for
centipede shapes, where the dimension is

    dim V^Q(x,y) - dim V^Qtilde(x,y)

for any admissible vertex pair (x, y) taken from complements of two
distinct maximal proper complete subtrees; the difference is independent
of the pair, and the classifier uses the lexicographically smallest one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chartab import CharacterTable, character_table, invariant_dim
from .errors import (
    BadVertexChoice,
    DegenerateIrrep,
    InvalidDescriptor,
    NotACentipede,
    TooSmall,
)
from .perm import pointwise_stabilizer, setwise_stabilizer, shape_automorphism_group
from .shapes import Shape, classify_shape, maximal_proper_complete_subtrees, validate_complete
from .spherical import is_admissible


@dataclass(frozen=True)
class RepDescriptor:
    """Tagged irreducible-representation class descriptor.

    spherical(z): boundary-parameter z with mu(z) in [-1, 1];
    special(sign): sign in {+, -};
    cuspidal(shape, irrep): complete shape of diameter >= 2 plus the row
    index of a non-degenerate irreducible of Aut(shape).
    """

    tag: str
    z: complex = 0j
    sign: str = ""
    shape: Shape | None = None
    irrep: int = -1
    q: int = 0  # spherical/special need the tree parameter explicitly

    @staticmethod
    def spherical(q: int, z: complex) -> "RepDescriptor":
        return RepDescriptor("spherical", z=complex(z), q=q)

    @staticmethod
    def special(q: int, sign: str) -> "RepDescriptor":
        return RepDescriptor("special", sign=sign, q=q)

    @staticmethod
    def cuspidal(shape: Shape, irrep: int) -> "RepDescriptor":
        return RepDescriptor("cuspidal", shape=shape, irrep=irrep, q=shape.q)


def is_nondegenerate(s: Shape, t: CharacterTable, row: int) -> bool:
    """No nonzero vectors fixed by any pointwise stabilizer of a maximal
    proper complete subtree."""
    if len(s.vertices) <= 2 or s.diameter() < 2:
        raise TooSmall("non-degeneracy needs diameter >= 2")
    index = {v: i for i, v in enumerate(s.vertices)}
    for sub in maximal_proper_complete_subtrees(s):
        a_j = pointwise_stabilizer(t.group, [index[v] for v in sub])
        if invariant_dim(t, row, a_j) != 0:
            return False
    return True


def admissible_vertex_pairs(s: Shape) -> list:
    """All ordered pairs (x, y) of distinct vertex ids such that x avoids
    one maximal proper complete subtree and y avoids a different one."""
    subs = maximal_proper_complete_subtrees(s)
    out = []
    for x in s.vertices:
        for y in s.vertices:
            if x == y:
                continue
            ok = any(
                x not in s1 and y not in s2
                for s1 in subs
                for s2 in subs
                if s1 != s2
            )
            if ok:
                out.append((x, y))
    return out


def h2_dimension(s: Shape, t: CharacterTable, row: int, x, y) -> int:
    """dim V^Q(x,y) - dim V^Qtilde(x,y) for the pointwise/setwise
    stabilizers of {x, y} inside Aut(s)."""
    if classify_shape(s).tag != "centipede":
        raise NotACentipede("the degree-2 formula applies to centipedes only")
    if not is_nondegenerate(s, t, row):
        raise DegenerateIrrep(f"row {row} is degenerate on this shape")
    x, y = str(x), str(y)
    if (x, y) not in set(admissible_vertex_pairs(s)):
        raise BadVertexChoice(
            f"({x}, {y}) do not avoid two distinct maximal complete proper subtrees"
        )
    index = {v: i for i, v in enumerate(s.vertices)}
    pts = [index[x], index[y]]
    q_point = pointwise_stabilizer(t.group, pts)
    q_set = setwise_stabilizer(t.group, pts)
    dim = invariant_dim(t, row, q_point) - invariant_dim(t, row, q_set)
    assert dim >= 0, "setwise invariants exceed pointwise invariants"
    return dim


def canonical_vertex_pair(s: Shape):
    pairs = admissible_vertex_pairs(s)
    if not pairs:
        raise BadVertexChoice("shape admits no valid vertex pair")
    return min(pairs)


def classify_bounded_cohomology(d: RepDescriptor, n: int) -> int:
    """Dimension of the degree-n continuous bounded cohomology with
    coefficients in the descriptor's representation class."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    if d.tag == "spherical":
        if d.q < 2 or not is_admissible(d.q, d.z):
            raise InvalidDescriptor(f"z = {d.z} is not an admissible parameter")
        return 0
    if d.tag == "special":
        if d.q < 2:
            raise InvalidDescriptor(f"branching parameter {d.q} < 2")
        if d.sign not in ("+", "-"):
            raise InvalidDescriptor(f"special sign must be + or -, got {d.sign!r}")
        return 0
    if d.tag == "cuspidal":
        s = d.shape
        if s is None or not validate_complete(s) or s.diameter() < 2:
            raise InvalidDescriptor("cuspidal descriptor needs a complete shape of diameter >= 2")
        t = character_table(shape_automorphism_group(s))
        if not 0 <= d.irrep < t.n_rows:
            raise InvalidDescriptor(f"row index {d.irrep} out of range")
        if not is_nondegenerate(s, t, d.irrep):
            raise InvalidDescriptor(f"row {d.irrep} is degenerate on this shape")
        if n != 2:
            return 0
        if classify_shape(s).tag != "centipede":
            return 0
        x, y = canonical_vertex_pair(s)
        return h2_dimension(s, t, d.irrep, x, y)
    raise InvalidDescriptor(f"unknown descriptor tag {d.tag!r}")


def enumerate_nondegenerate(s: Shape):
    """All non-degenerate rows of Aut(s) with their degree and degree-2
    dimension: list of (row, degree, h2_dim)."""
    if len(s.vertices) <= 2 or s.diameter() < 2:
        raise TooSmall("enumeration needs diameter >= 2")
    t = character_table(shape_automorphism_group(s))
    is_centipede = classify_shape(s).tag == "centipede"
    out = []
    for row in range(t.n_rows):
        if not is_nondegenerate(s, t, row):
            continue
        if is_centipede:
            x, y = canonical_vertex_pair(s)
            h2 = h2_dimension(s, t, row, x, y)
        else:
            h2 = 0
        out.append((row, t.degrees[row], h2))
    return out
