"""Exact geometry of the (q+1)-regular tree and its boundary.

Vertices are encoded as label words rooted at a basepoint o (the empty
word): the first label ranges over 0..q (the q+1 edges at o), every later
label over 0..q-1 (the q downward edges at any other vertex).  Depth of a
word equals its distance from o, and longest-common-prefix computations
give all distances in O(depth).

A RayPrefix with word w stands for the cylinder of boundary points whose
ray from o passes through w.  Operations that consume ray prefixes verify
that the prefix actually determines the answer and raise InsufficientDepth
otherwise -- they never guess how a ray continues below its frontier.

Measures and kernels are exact: cylinder masses and Radon-Nikodym ratios
are Fractions, Busemann values are ints.

Finite partial automorphisms are TreeIsometry objects: an injective,
adjacency-preserving map on a finite connected subtree.  Any such map
extends to a full automorphism of the tree; extend_isometry realizes a
canonical (lexicographically smallest) such extension on a ball.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DegenerateCylinder,
    InsufficientDepth,
    NotDistinct,
    OutOfDomain,
)

Word = tuple  # tuple of int labels


@dataclass(frozen=True)
class TreeParams:
    """Branching parameter q >= 2 of the (q+1)-regular tree."""

    q: int

    def __post_init__(self):
        if self.q < 2:
            raise ValueError(f"q must be >= 2, got {self.q}")


@dataclass(frozen=True, order=True)
class Vertex:
    """A vertex of the tree, encoded as a root-based label word."""

    word: Word = ()

    @property
    def depth(self) -> int:
        return len(self.word)

    def parent(self) -> "Vertex":
        if not self.word:
            raise ValueError("the basepoint has no parent")
        return Vertex(self.word[:-1])

    def __repr__(self):
        return f"V{list(self.word)}"


@dataclass(frozen=True, order=True)
class RayPrefix:
    """The cylinder of boundary points whose ray from o passes through word."""

    word: Word = ()

    @property
    def depth(self) -> int:
        return len(self.word)

    def __repr__(self):
        return f"Ray{list(self.word)}"


O = Vertex(())


def check_word(word: Word, q: int) -> None:
    """Validate the label ranges of a root-based word."""
    for i, lab in enumerate(word):
        hi = q if i == 0 else q - 1
        if not 0 <= lab <= hi:
            raise ValueError(f"label {lab} at position {i} out of range 0..{hi}")


def word_children(word: Word, q: int) -> list:
    hi = q if len(word) == 0 else q - 1
    return [word + (lab,) for lab in range(hi + 1)]


def word_neighbors(word: Word, q: int) -> list:
    """Neighbors in canonical order: parent first, then children by label."""
    nbrs = [] if not word else [word[:-1]]
    nbrs.extend(word_children(word, q))
    return nbrs


def lcp_len(a: Word, b: Word) -> int:
    n = min(len(a), len(b))
    i = 0
    while i < n and a[i] == b[i]:
        i += 1
    return i


def word_distance(a: Word, b: Word) -> int:
    return len(a) + len(b) - 2 * lcp_len(a, b)


def distance(u: Vertex, v: Vertex) -> int:
    """Combinatorial distance between two vertices."""
    return word_distance(u.word, v.word)


def _is_proper_prefix(a: Word, b: Word) -> bool:
    """True iff a is a proper prefix of b."""
    return len(a) < len(b) and b[: len(a)] == a


def vertex_to_ray_path(x: Word, w: Word) -> list:
    """The known portion of the ray from vertex x toward the boundary
    cylinder at w, as a list of words: x climbs to lcp(x, w), then follows w.

    The continuation below w is unknown; raises InsufficientDepth when w is
    a proper prefix of x (the join with the ray is then below the frontier).
    """
    if _is_proper_prefix(w, x):
        raise InsufficientDepth(
            f"ray prefix {list(w)} too shallow: vertex {list(x)} hangs below it"
        )
    k = lcp_len(x, w)
    path = [x[:i] for i in range(len(x), k - 1, -1)]  # x down to the join
    path.extend(w[: i + 1] for i in range(k, len(w)))  # join down along w
    return path


def _geodesic_data(a, b):
    """Known vertex path of the geodesic between a and b, plus the frontier
    words below which the geodesic continues into unknown territory.

    Returns (path_words, frontiers).  Raises NotDistinct for identical ray
    prefixes and InsufficientDepth when divergence is not visible.
    """
    if isinstance(a, Vertex) and isinstance(b, Vertex):
        k = lcp_len(a.word, b.word)
        path = [a.word[:i] for i in range(len(a.word), k - 1, -1)]
        path.extend(b.word[: i + 1] for i in range(k, len(b.word)))
        return path, []
    if isinstance(a, Vertex):
        return vertex_to_ray_path(a.word, b.word), [b.word]
    if isinstance(b, Vertex):
        return vertex_to_ray_path(b.word, a.word), [a.word]
    wa, wb = a.word, b.word
    if wa == wb:
        raise NotDistinct("identical ray prefixes do not determine a geodesic")
    if _is_proper_prefix(wa, wb) or _is_proper_prefix(wb, wa):
        raise InsufficientDepth(
            f"prefixes {list(wa)}, {list(wb)} do not show where the rays diverge"
        )
    k = lcp_len(wa, wb)
    path = [wa[:i] for i in range(len(wa), k - 1, -1)]
    path.extend(wb[: i + 1] for i in range(k, len(wb)))
    return path, [wa, wb]


def gromov_product(a, b, base: Vertex) -> int:
    """(a, b)_base: half of d(a,base)+d(b,base)-d(a,b), which on a tree is
    the distance from base to the geodesic joining a and b.

    a and b may each be a Vertex or a RayPrefix.  Identical ray prefixes
    raise NotDistinct (the +infinity convention is the caller's business).
    """
    path, frontiers = _geodesic_data(a, b)
    for f in frontiers:
        if _is_proper_prefix(f, base.word):
            raise InsufficientDepth(
                f"base {base} hangs below the frontier {list(f)} of the geodesic"
            )
    return min(word_distance(base.word, v) for v in path)


def median(g0: RayPrefix, g1: RayPrefix, g2: RayPrefix) -> Vertex:
    """The unique vertex at which all three pairwise geodesics meet.

    Equals the common prefix of the pair with the longest common prefix;
    the three rays leave it in three distinct directions, so all pairwise
    Gromov products vanish there.
    """
    rays = (g0, g1, g2)
    best = None
    for i in range(3):
        for j in range(i + 1, 3):
            wi, wj = rays[i].word, rays[j].word
            if wi == wj:
                raise NotDistinct(f"rays {i} and {j} have identical prefixes")
            if _is_proper_prefix(wi, wj) or _is_proper_prefix(wj, wi):
                raise InsufficientDepth(
                    f"rays {i} and {j} do not visibly diverge within their prefixes"
                )
            k = lcp_len(wi, wj)
            if best is None or k > best[0]:
                best = (k, wi[:k])
    return Vertex(best[1])


def busemann(g: RayPrefix, x: Vertex, y: Vertex) -> int:
    """Signed horodistance B_g(x, y) = d(x, c) - d(y, c), where c is the
    first common vertex of the rays from x and from y toward g."""
    w = g.word
    for v in (x, y):
        if _is_proper_prefix(w, v.word):
            raise InsufficientDepth(
                f"ray prefix {list(w)} too shallow: {v} hangs below it"
            )
    lx = lcp_len(x.word, w)
    ly = lcp_len(y.word, w)
    # both rays travel along w from depth max(lx, ly) on; the difference of
    # distances to any shared point is (|x| - 2 lx) - (|y| - 2 ly)
    return (len(x.word) - 2 * lx) - (len(y.word) - 2 * ly)


def poisson_kernel(x: Vertex, y: Vertex, g: RayPrefix, q: int) -> Fraction:
    """Radon-Nikodym ratio of the visual measures at y vs x, evaluated on
    the cylinder g: exactly q**B_g(x, y)."""
    return Fraction(q) ** busemann(g, x, y)


def cylinder_measure(x: Vertex, w: Vertex, q: int) -> Fraction:
    """Visual measure, seen from x, of the boundary cylinder through w:
    1/(q+1) * (1/q)**(d(x,w)-1).  Exact."""
    if x == w:
        raise DegenerateCylinder("cylinder U(x, w) needs w != x")
    d = distance(x, w)
    return Fraction(1, q + 1) * Fraction(1, q) ** (d - 1)


def ball_words(center: Word, radius: int, q: int) -> list:
    """All words within the given distance of center, in BFS order."""
    out = [center]
    seen = {center}
    frontier = [center]
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for n in word_neighbors(w, q):
                if n not in seen:
                    seen.add(n)
                    out.append(n)
                    nxt.append(n)
        frontier = nxt
    return out


class TreeIsometry:
    """A finite partial automorphism: an injective, adjacency-preserving map
    on a finite connected subtree, given as a word -> word dict.

    Such a map preserves all distances on its domain and extends to a full
    automorphism of the tree.  Instances are immutable after construction.
    """

    __slots__ = ("q", "mapping")

    def __init__(self, q: int, mapping: dict, validate: bool = True):
        self.q = q
        self.mapping = dict(mapping)
        if validate:
            self._validate()

    def _validate(self):
        m = self.mapping
        if not m:
            raise ValueError("empty isometry domain")
        for w, v in m.items():
            check_word(w, self.q)
            check_word(v, self.q)
        if len(set(m.values())) != len(m):
            raise ValueError("mapping is not injective")
        # connectivity over parent links, and adjacency preservation
        roots = 0
        for w in m:
            p = w[:-1]
            if w and p in m:
                if word_distance(m[w], m[p]) != 1:
                    raise ValueError(
                        f"adjacency broken at {list(w)}: image not adjacent to parent image"
                    )
            else:
                roots += 1
        if roots != 1:
            raise ValueError("domain is not a connected subtree")

    @property
    def domain(self):
        return self.mapping.keys()

    def root_most(self) -> Vertex:
        """The unique minimal-depth vertex of the domain."""
        return Vertex(min(self.mapping, key=lambda w: (len(w), w)))

    def apply_word(self, w: Word) -> Word:
        try:
            return self.mapping[w]
        except KeyError:
            raise OutOfDomain(f"{list(w)} not in isometry domain") from None

    def apply_vertex(self, v: Vertex) -> Vertex:
        return Vertex(self.apply_word(v.word))

    def apply_ray(self, r: RayPrefix) -> RayPrefix:
        """Image of a boundary cylinder.

        The image of U(o, w) is the set of boundary points through f(w) on
        the far side from f(parent-chain); this is a root cylinder exactly
        when the image path ends with a parent-child step, in which case the
        result is the cylinder at f(w).

        The result may be shallower or deeper than the input; it is the
        exact image as a set of boundary points.
        """
        w = r.word
        if not w:
            return RayPrefix(())
        imgs = [self.apply_word(w[:t]) for t in range(len(w) + 1)]
        if imgs[-2] != imgs[-1][:-1]:
            raise InsufficientDepth(
                "image cylinder is not a root cylinder; deepen the prefix"
            )
        return RayPrefix(imgs[-1])

    def apply(self, p):
        if isinstance(p, Vertex):
            return self.apply_vertex(p)
        if isinstance(p, RayPrefix):
            return self.apply_ray(p)
        raise TypeError(f"cannot apply isometry to {type(p).__name__}")

    def inverse(self) -> "TreeIsometry":
        return TreeIsometry(self.q, {v: w for w, v in self.mapping.items()})

    def compose(self, other: "TreeIsometry") -> "TreeIsometry":
        """self after other, on the largest domain where that is defined."""
        m = {}
        for w, v in other.mapping.items():
            out = self.mapping.get(v)
            if out is not None:
                m[w] = out
        return TreeIsometry(self.q, m)

    def fixes_word(self, w: Word) -> bool:
        return self.mapping.get(w) == w

    def __eq__(self, other):
        return (
            isinstance(other, TreeIsometry)
            and self.q == other.q
            and self.mapping == other.mapping
        )

    def __repr__(self):
        return f"TreeIsometry(q={self.q}, |domain|={len(self.mapping)})"


def identity_isometry(q: int, words=((),)) -> TreeIsometry:
    return TreeIsometry(q, {w: w for w in words})


def extend_isometry(f: TreeIsometry, target_depth: int) -> TreeIsometry:
    """Extend f so its domain covers the ball of radius target_depth around
    the root-most domain vertex.

    Extension choices are canonical: vertices are visited in breadth-first
    order (distance from the root-most vertex, then word order), and each
    newly reached vertex receives the smallest available neighbor of its
    anchor's image, neighbors ordered parent-first then children by label.
    Deterministic, so extending twice equals extending once.
    """
    q = f.q
    root = f.root_most().word
    target = set(ball_words(root, target_depth, q))
    target.update(f.domain)
    mapping = dict(f.mapping)

    heap = [(0, root)]
    seen = {root}
    while heap:
        dist, u = heapq.heappop(heap)
        fu = mapping[u]
        used = set()
        unmapped = []
        for n in word_neighbors(u, q):
            if n in mapping:
                used.add(mapping[n])
            elif n in target:
                unmapped.append(n)
        avail = [v for v in word_neighbors(fu, q) if v not in used]
        for n in unmapped:
            mapping[n] = avail.pop(0)
        for n in word_neighbors(u, q):
            if n in target and n in mapping and n not in seen:
                seen.add(n)
                heapq.heappush(heap, (dist + 1, n))
    return TreeIsometry(q, mapping)


def apply_isometry(f: TreeIsometry, p):
    """Image of a Vertex or RayPrefix under f (see TreeIsometry.apply)."""
    return f.apply(p)
