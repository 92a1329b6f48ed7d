"""Finite complete subtrees: validation, taxonomy, embeddings, hit counts.

A finite subtree of the (q+1)-regular tree is *complete* when it is a
single vertex or every vertex has degree 1 or q+1.  Complete subtrees are
described abstractly by Shape objects (opaque vertex ids plus edges) and
concretely by EmbeddedSubtree placements into the word-encoded tree.

The taxonomy runs through the maximal proper complete subtrees: a complete
subtree of diameter > 2 with exactly k of them is k-headed, a 2-headed one
is a centipede, and diameter-2 stars count as 2-centipedes by decree.
Maximal subtrees are found by brute-force enumeration of all complete
subtrees (cached per shape), never by a closed-form shortcut; the head
characterization is checked in tests instead of assumed.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .errors import (
    InvalidShape,
    NotATree,
    NotCuspidalShape,
    TooSmall,
)
from .tree import (
    RayPrefix,
    Vertex,
    ball_words,
    check_word,
    median,
    word_distance,
)


@dataclass(frozen=True)
class Shape:
    """An abstract finite tree with branching parameter q.

    vertices are opaque string ids; edges are unordered id pairs.  Stored in
    canonical sorted order so equal shapes compare and hash equal.
    """

    q: int
    vertices: tuple
    edges: tuple  # tuple of sorted (a, b) id pairs

    def __init__(self, q, vertices, edges):
        if q < 2:
            raise ValueError(f"q must be >= 2, got {q}")
        vs = tuple(sorted(str(v) for v in vertices))
        if len(set(vs)) != len(vs):
            raise ValueError("duplicate vertex ids")
        es = []
        for e in edges:
            a, b = (str(x) for x in e)
            if a == b:
                raise NotATree(f"self-loop at {a}")
            if a not in vs or b not in vs:
                raise ValueError(f"edge ({a}, {b}) references unknown vertex")
            es.append((min(a, b), max(a, b)))
        es = tuple(sorted(set(es)))
        if len(es) != len(edges):
            raise NotATree("duplicate edges")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", es)

    # -- basic structure ----------------------------------------------------

    def adjacency(self) -> dict:
        adj = {v: [] for v in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return {v: sorted(n) for v, n in adj.items()}

    def degree(self, v) -> int:
        return sum(v in e for e in self.edges)

    def check_tree(self):
        """Raise NotATree unless connected and acyclic."""
        if len(self.edges) != len(self.vertices) - 1:
            raise NotATree("edge count is not vertex count minus one")
        adj = self.adjacency()
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for n in adj[stack.pop()]:
                if n not in seen:
                    seen.add(n)
                    stack.append(n)
        if len(seen) != len(self.vertices):
            raise NotATree("graph is disconnected")

    def internal_vertices(self) -> tuple:
        return tuple(v for v in self.vertices if self.degree(v) == self.q + 1)

    def diameter(self) -> int:
        ecc = self._bfs_dist(self.vertices[0])
        far = max(ecc, key=lambda v: ecc[v])
        return max(self._bfs_dist(far).values())

    def _bfs_dist(self, start) -> dict:
        adj = self.adjacency()
        dist = {start: 0}
        frontier = [start]
        while frontier:
            nxt = []
            for u in frontier:
                for n in adj[u]:
                    if n not in dist:
                        dist[n] = dist[u] + 1
                        nxt.append(n)
            frontier = nxt
        return dist

    def path(self, a, b) -> list:
        """The unique path between two vertices, endpoints included."""
        adj = self.adjacency()
        prev = {a: None}
        frontier = [a]
        while b not in prev and frontier:
            nxt = []
            for u in frontier:
                for n in adj[u]:
                    if n not in prev:
                        prev[n] = u
                        nxt.append(n)
            frontier = nxt
        out = [b]
        while out[-1] != a:
            out.append(prev[out[-1]])
        return out[::-1]

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
        }

    @staticmethod
    def from_json(data: dict) -> "Shape":
        return Shape(int(data["q"]), data["vertices"], data["edges"])


@dataclass(frozen=True)
class ShapeClass:
    """Taxonomy tag: vertex | edge | centipede(k) | multi_headed(h, diam)."""

    tag: str
    k: int = 0          # centipede diameter
    n_heads: int = 0    # multi_headed head count
    diam: int = 0       # multi_headed diameter

    def __post_init__(self):
        if self.tag == "centipede" and self.k < 2:
            raise ValueError("centipede needs k >= 2")
        if self.tag == "multi_headed" and (self.n_heads < 3 or self.diam < 3):
            raise ValueError("multi_headed needs >= 3 heads and diameter >= 3")


@dataclass(frozen=True)
class EmbeddedSubtree:
    """A concrete placement of a Shape into the word-encoded tree."""

    shape: Shape
    placement: tuple  # tuple of (vertex id, word) pairs, sorted by id

    def __init__(self, shape: Shape, placement):
        items = tuple(sorted((str(k), tuple(w)) for k, w in dict(placement).items()))
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "placement", items)
        self._validate()

    def _validate(self):
        q = self.shape.q
        pl = dict(self.placement)
        if set(pl) != set(self.shape.vertices):
            raise ValueError("placement does not cover the shape's vertices")
        words = list(pl.values())
        if len(set(words)) != len(words):
            raise ValueError("placement is not injective")
        for w in words:
            check_word(w, q)
        for a, b in self.shape.edges:
            if word_distance(pl[a], pl[b]) != 1:
                raise ValueError(f"edge ({a}, {b}) not mapped to adjacent words")

    def mapping(self) -> dict:
        return dict(self.placement)

    def image_words(self) -> frozenset:
        return frozenset(w for _, w in self.placement)

    def image_degree(self, word) -> int:
        img = self.image_words()
        pl = dict(self.placement)
        adj = 0
        for a, b in self.shape.edges:
            if pl[a] == word or pl[b] == word:
                adj += 1
        return adj


# -- completeness and taxonomy ----------------------------------------------


def validate_complete(s: Shape) -> bool:
    """True iff s is a single vertex or every degree is 1 or q+1."""
    s.check_tree()
    if len(s.vertices) == 1:
        return True
    ok = {1, s.q + 1}
    return all(s.degree(v) in ok for v in s.vertices)


def _require_complete(s: Shape):
    if not validate_complete(s):
        raise InvalidShape("shape is not a complete subtree")


@functools.lru_cache(maxsize=None)
def _complete_subtrees(s: Shape) -> tuple:
    """All vertex sets of complete subtrees of s, as frozensets.

    A complete subtree with >= 3 vertices is I union N(I) for a nonempty
    connected set I of full-degree vertices; singletons and edges are the
    rest.  Brute force over connected subsets, cached per shape.
    """
    adj = s.adjacency()
    out = {frozenset([v]) for v in s.vertices}
    out.update(frozenset(e) for e in s.edges)
    internal = [v for v in s.vertices if s.degree(v) == s.q + 1]
    n = len(internal)
    idx = {v: i for i, v in enumerate(internal)}
    for mask in range(1, 1 << n):
        chosen = [internal[i] for i in range(n) if mask >> i & 1]
        seen = {chosen[0]}
        stack = [chosen[0]]
        while stack:
            for nb in adj[stack.pop()]:
                if nb in idx and mask >> idx[nb] & 1 and nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        if len(seen) != len(chosen):
            continue
        hull = set(chosen)
        for v in chosen:
            hull.update(adj[v])
        out.add(frozenset(hull))
    return tuple(sorted(out, key=lambda fs: (len(fs), tuple(sorted(fs)))))


def maximal_proper_complete_subtrees(s: Shape) -> list:
    """All proper complete subtrees maximal under inclusion, as sorted
    frozensets of vertex ids."""
    _require_complete(s)
    if len(s.vertices) <= 2:
        raise TooSmall("vertex and edge shapes have no maximal proper complete subtrees")
    full = frozenset(s.vertices)
    proper = [t for t in _complete_subtrees(s) if t != full]
    maximal = [
        t for t in proper if not any(t < u for u in proper)
    ]
    return sorted(maximal, key=lambda fs: tuple(sorted(fs)))


def heads(s: Shape) -> list:
    """One head per maximal proper complete subtree S': the minimal subtree
    containing the vertices outside S'.  Defined only for diameter > 2."""
    _require_complete(s)
    if s.diameter() <= 2:
        raise TooSmall("heads are undefined for shapes of diameter <= 2")
    out = []
    for sub in maximal_proper_complete_subtrees(s):
        rest = sorted(set(s.vertices) - sub)
        hull = set()
        for v in rest:
            hull.update(s.path(rest[0], v))
        out.append(frozenset(hull))
    return sorted(out, key=lambda fs: tuple(sorted(fs)))


def classify_shape(s: Shape) -> ShapeClass:
    """vertex | edge | centipede(diam) for diameter 2 or two-headed shapes |
    multi_headed(h, diam) otherwise."""
    _require_complete(s)
    if len(s.vertices) == 1:
        return ShapeClass("vertex")
    if len(s.vertices) == 2:
        return ShapeClass("edge")
    diam = s.diameter()
    if diam == 2:
        return ShapeClass("centipede", k=2)
    h = len(heads(s))
    if h == 2:
        return ShapeClass("centipede", k=diam)
    return ShapeClass("multi_headed", n_heads=h, diam=diam)


# -- embeddings into the word tree -------------------------------------------


def enumerate_embeddings(s: Shape, anchor: Vertex, radius: int) -> list:
    """All placements of s inside the ball around anchor, one per vertex-set
    image, in deterministic order (sorted by image word set).

    One representative placement per image: the lexicographically smallest
    mapping over the shape's sorted vertex ids.
    """
    _require_complete(s)
    q = s.q
    ball = set(ball_words(anchor.word, radius, q))
    adj = s.adjacency()
    # visit shape vertices so each new one is adjacent to a placed one
    start = max(s.vertices, key=lambda v: (s.degree(v), v))
    order = [start]
    seen = {start}
    for u in order:
        for n in adj[u]:
            if n not in seen:
                seen.add(n)
                order.append(n)
    anchor_of = {
        v: next(n for n in adj[v] if n in order[: order.index(v)])
        for v in order[1:]
    }

    found = {}

    def extend(i, pl, used):
        if i == len(order):
            key = frozenset(used)
            cand = tuple(pl[v] for v in s.vertices)
            if key not in found or cand < found[key]:
                found[key] = cand
            return
        v = order[i]
        base = pl[anchor_of[v]]
        for w in _word_nbrs_in(base, ball, q):
            if w not in used:
                pl[v] = w
                used.add(w)
                extend(i + 1, pl, used)
                used.discard(w)
                del pl[v]

    for w0 in ball:
        extend(1, {start: w0}, {w0})

    out = []
    for key in sorted(found, key=lambda fs: tuple(sorted(fs))):
        words = found[key]
        out.append(EmbeddedSubtree(s, dict(zip(s.vertices, words))))
    return out


def _word_nbrs_in(w, ball, q):
    out = []
    if w:
        p = w[:-1]
        if p in ball:
            out.append(p)
    hi = q if not w else q - 1
    for lab in range(hi + 1):
        c = w + (lab,)
        if c in ball:
            out.append(c)
    return out


def hits(e: EmbeddedSubtree, g0: RayPrefix, g1: RayPrefix, g2: RayPrefix) -> bool:
    """True iff the median of the triple is a full-degree vertex of the
    embedded image, i.e. the subtree passes through the median."""
    m = median(g0, g1, g2)
    if m.word not in e.image_words():
        return False
    return e.image_degree(m.word) == e.shape.q + 1


def count_hitting(s: Shape, g0: RayPrefix, g1: RayPrefix, g2: RayPrefix) -> int:
    """Number of unlabeled embeddings of s whose image passes through the
    median of the triple, by exhaustive search in a ball of radius
    diameter+1 around the median.  Constant over triples."""
    cls = classify_shape(s)
    if cls.tag in ("vertex", "edge"):
        raise NotCuspidalShape(f"hit counts need diameter >= 2, got a {cls.tag}")
    m = median(g0, g1, g2)
    embs = enumerate_embeddings(s, m, s.diameter() + 1)
    return sum(hits(e, g0, g1, g2) for e in embs)


# -- canonical shape builders -------------------------------------------------


def vertex_shape(q: int) -> Shape:
    return Shape(q, ["v0"], [])


def edge_shape(q: int) -> Shape:
    return Shape(q, ["v0", "v1"], [["v0", "v1"]])


def complete_shape_from_internal(q: int, internal_vertices, internal_edges) -> Shape:
    """Fill every internal vertex up to degree q+1 with fresh leaves."""
    vs = [str(v) for v in internal_vertices]
    es = [tuple(sorted((str(a), str(b)))) for a, b in internal_edges]
    deg = {v: 0 for v in vs}
    for a, b in es:
        deg[a] += 1
        deg[b] += 1
    out_vs = list(vs)
    out_es = list(es)
    for v in vs:
        if deg[v] > q + 1:
            raise InvalidShape(f"internal vertex {v} has degree {deg[v]} > q+1")
        for i in range(q + 1 - deg[v]):
            leaf = f"{v}.L{i}"
            out_vs.append(leaf)
            out_es.append((v, leaf))
    return Shape(q, out_vs, out_es)


def star_shape(q: int) -> Shape:
    """The diameter-2 complete subtree: one center, q+1 leaves."""
    return complete_shape_from_internal(q, ["c"], [])


def centipede_shape(q: int, k: int) -> Shape:
    """The k-centipede: internal spine of k-1 vertices, diameter k (k >= 2)."""
    if k < 2:
        raise ValueError("centipedes need k >= 2")
    spine = [f"s{i}" for i in range(k - 1)]
    edges = [(spine[i], spine[i + 1]) for i in range(k - 2)]
    return complete_shape_from_internal(q, spine, edges)


def y_shape(q: int) -> Shape:
    """Three-headed shape of diameter 4: an internal star with 3 branches."""
    if q < 2:
        raise ValueError("q must be >= 2")
    internal = ["c", "b0", "b1", "b2"]
    edges = [("c", "b0"), ("c", "b1"), ("c", "b2")]
    return complete_shape_from_internal(q, internal, edges)
