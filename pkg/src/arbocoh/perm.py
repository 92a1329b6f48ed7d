"""Finite permutation groups on shape vertices.

Groups are stored by full element enumeration (breadth-first closure of
the generators, deterministic order) -- all groups at the scale of this
library have order at most a few thousand, and a GroupTooLarge guard keeps
that assumption honest.

shape_automorphism_group computes Aut(S) of a finite tree via canonical
subtree codes rooted at the tree center: sibling subtrees with equal codes
yield swap generators, and an isomorphic center-edge split yields the
flip.  The result is verified against a brute-force search in the tests.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

from .errors import GroupTooLarge, NotASubgroup
from .shapes import Shape

DEFAULT_ORDER_BOUND = 10**6


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of 0..n-1, stored as the image tuple."""

    mapping: tuple

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(n)))

    @staticmethod
    def from_dict(n: int, moves: dict) -> "Permutation":
        images = list(range(n))
        for a, b in moves.items():
            images[a] = b
        return Permutation(tuple(images))

    def __post_init__(self):
        n = len(self.mapping)
        if sorted(self.mapping) != list(range(n)):
            raise ValueError(f"not a bijection of 0..{n - 1}: {self.mapping}")

    @property
    def degree(self) -> int:
        return len(self.mapping)

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: (p * q)(x) = p(q(x))."""
        return Permutation(tuple(self.mapping[other.mapping[i]] for i in range(self.degree)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, v in enumerate(self.mapping):
            inv[v] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.mapping))

    def order(self) -> int:
        k, p = 1, self
        while not p.is_identity():
            p = p * self
            k += 1
        return k

    def __repr__(self):
        return f"Perm{list(self.mapping)}"


@dataclass(frozen=True)
class PermGroup:
    """A fully enumerated permutation group; elements in deterministic
    (breadth-first discovery) order."""

    degree: int
    generators: tuple
    elements: tuple
    element_set: frozenset = field(repr=False, compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Permutation) -> bool:
        return p in self.element_set

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def key(self) -> frozenset:
        return self.element_set


def closure(gens, degree: int | None = None, bound: int = DEFAULT_ORDER_BOUND) -> PermGroup:
    """Breadth-first closure of the generators.  Raises GroupTooLarge when
    the enumeration exceeds bound elements."""
    gens = sorted(set(gens))
    if degree is None:
        if not gens:
            raise ValueError("degree required for an empty generating set")
        degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise ValueError("generators act on different index sets")
    ident = Permutation.identity(degree)
    elements = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                r = g * p
                if r not in seen:
                    if len(seen) >= bound:
                        raise GroupTooLarge(f"closure exceeded bound {bound}")
                    seen.add(r)
                    elements.append(r)
                    nxt.append(r)
        frontier = nxt
    return PermGroup(degree, tuple(gens), tuple(elements), frozenset(elements))


def conjugacy_classes(G: PermGroup) -> list:
    """Conjugation orbits, each a tuple of elements, sorted by (size,
    minimal element); elements within a class in sorted order."""
    gens = G.generators if G.generators else ()
    seen = set()
    classes = []
    for x in G.elements:
        if x in seen:
            continue
        orbit = {x}
        frontier = [x]
        while frontier:
            y = frontier.pop()
            for g in gens:
                z = g * y * g.inverse()
                if z not in orbit:
                    orbit.add(z)
                    frontier.append(z)
        seen |= orbit
        classes.append(tuple(sorted(orbit)))
    classes.sort(key=lambda c: (len(c), c[0]))
    return classes


def _sub_from_elements(G: PermGroup, elements) -> PermGroup:
    elements = tuple(elements)
    return PermGroup(G.degree, elements, elements, frozenset(elements))


def pointwise_stabilizer(G: PermGroup, points) -> PermGroup:
    """Subgroup of elements fixing every given point."""
    pts = sorted(points)
    return _sub_from_elements(
        G, (p for p in G.elements if all(p(i) == i for i in pts))
    )


def setwise_stabilizer(G: PermGroup, points) -> PermGroup:
    """Subgroup of elements mapping the given point set onto itself."""
    pts = set(points)
    return _sub_from_elements(
        G, (p for p in G.elements if {p(i) for i in pts} == pts)
    )


def check_subgroup(G: PermGroup, H: PermGroup) -> None:
    if H.degree != G.degree or not H.element_set <= G.element_set:
        raise NotASubgroup("H is not contained in G")


def all_subgroups(G: PermGroup) -> list:
    """Every subgroup, by closing known subgroups under extra generators.
    Exponential in principle; fine for the small groups used here."""
    triv = _sub_from_elements(G, (G.identity(),))
    known = {triv.key(): triv}
    frontier = [triv]
    while frontier:
        nxt = []
        for H in frontier:
            for g in G.elements:
                if g in H.element_set:
                    continue
                K = closure(tuple(set(H.generators) | {g}), degree=G.degree)
                if K.key() not in known:
                    known[K.key()] = K
                    nxt.append(K)
        frontier = nxt
    return sorted(known.values(), key=lambda H: (H.order, tuple(H.elements)))


# -- tree automorphism groups -------------------------------------------------


def _tree_center(adj) -> list:
    """One or two central vertices, by peeling leaves."""
    deg = {v: len(ns) for v, ns in adj.items()}
    layer = sorted(v for v, d in deg.items() if d <= 1)
    alive = set(adj)
    while len(alive) > 2:
        nxt = []
        for v in layer:
            alive.discard(v)
            for n in adj[v]:
                if n in alive:
                    deg[n] -= 1
                    if deg[n] == 1:
                        nxt.append(n)
        layer = sorted(nxt)
    return sorted(alive)


def _rooted_codes(adj, root, parent_of):
    """Canonical code of each subtree hanging below each vertex."""
    order = [root]
    for u in order:
        for n in adj[u]:
            if n != parent_of[u]:
                parent_of[n] = u
                order.append(n)
    code = {}
    for u in reversed(order):
        kids = sorted(code[n] for n in adj[u] if parent_of.get(n) == u)
        code[u] = "(" + "".join(kids) + ")"
    return code


def _subtree_vertices(adj, root, parent):
    out = [root]
    for u in out:
        for n in adj[u]:
            if n != parent and n not in out:
                out.append(n)
    return out


def _map_subtrees(adj, code, a, pa, b, pb, moves):
    """Extend moves with the canonical isomorphism subtree(a) -> subtree(b),
    children matched in (code, id) order."""
    moves[a] = b
    kids_a = sorted((n for n in adj[a] if n != pa), key=lambda n: (code[n], n))
    kids_b = sorted((n for n in adj[b] if n != pb), key=lambda n: (code[n], n))
    for ka, kb in zip(kids_a, kids_b):
        _map_subtrees(adj, code, ka, a, kb, b, moves)


@functools.lru_cache(maxsize=None)
def shape_automorphism_group(s: Shape, bound: int = DEFAULT_ORDER_BOUND) -> PermGroup:
    """Aut(s) as a permutation group on the sorted vertex ids of s."""
    s.check_tree()
    ids = list(s.vertices)
    index = {v: i for i, v in enumerate(ids)}
    n = len(ids)
    adj = s.adjacency()
    if n == 1:
        return closure([], degree=1, bound=bound)

    center = _tree_center(adj)
    gens = []

    def add_gen(moves):
        images = {index[a]: index[b] for a, b in moves.items()}
        gens.append(Permutation.from_dict(n, images))

    def sibling_gens(root, parent_of, code):
        order = _subtree_vertices(adj, root, parent_of.get(root))
        for u in order:
            kids = sorted(
                (v for v in adj[u] if parent_of.get(v) == u), key=lambda v: (code[v], v)
            )
            for x, y in zip(kids, kids[1:]):
                if code[x] == code[y]:
                    moves = {}
                    _map_subtrees(adj, code, x, u, y, u, moves)
                    inv = {b: a for a, b in moves.items()}
                    moves.update(inv)
                    add_gen(moves)

    if len(center) == 1:
        root = center[0]
        parent_of = {root: None}
        code = _rooted_codes(adj, root, parent_of)
        sibling_gens(root, parent_of, code)
    else:
        a, b = center
        parent_a = {a: b}
        code = _rooted_codes(adj, a, parent_a)
        parent_b = {b: a}
        code_b = _rooted_codes(adj, b, parent_b)
        code.update(code_b)
        sibling_gens(a, parent_a, code)
        sibling_gens(b, parent_b, code)
        if code[a] == code[b]:
            moves = {}
            _map_subtrees(adj, code, a, b, b, a, moves)
            inv = {y: x for x, y in moves.items()}
            moves.update(inv)
            add_gen(moves)

    return closure(gens, degree=n, bound=bound)
