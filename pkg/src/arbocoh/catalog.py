"""Enumeration of all complete-subtree shapes up to a diameter bound.

A complete subtree of diameter d >= 2 is determined by its internal tree
(the full-degree vertices), an arbitrary tree of diameter d - 2 with
maximum degree at most q+1; leaves are then attached to fill every
internal vertex up to degree q+1.  Unlabeled internal trees are generated
by leaf growth with canonical-code deduplication.
"""

from __future__ import annotations

from .shapes import complete_shape_from_internal, edge_shape, vertex_shape


def _canonical_code(adj) -> str:
    """Canonical string code of an unlabeled tree given by adjacency."""
    if len(adj) == 1:
        return "()"
    deg = {v: len(ns) for v, ns in adj.items()}
    alive = set(adj)
    layer = sorted(v for v in adj if deg[v] <= 1)
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

    def code(v, parent):
        kids = sorted(code(n, v) for n in adj[v] if n != parent)
        return "(" + "".join(kids) + ")"

    center = sorted(alive)
    if len(center) == 1:
        return code(center[0], None)
    a, b = center
    return "[" + "".join(sorted((code(a, b), code(b, a)))) + "]"


def enumerate_trees(max_vertices: int, max_degree: int = 0, max_diameter: int = -1) -> list:
    """All unlabeled trees with 1..max_vertices vertices, as adjacency
    dicts on integer vertices.  Growth by leaf attachment with
    canonical-code dedup; degree and diameter bounds prune the search
    (neither can decrease when a leaf is attached)."""
    out = [{0: []}]
    level = [{0: []}]
    for _ in range(1, max_vertices):
        seen = {}
        for adj in level:
            n = len(adj)
            for v in range(n):
                if max_degree and len(adj[v]) >= max_degree:
                    continue
                grown = {u: list(ns) for u, ns in adj.items()}
                grown[v].append(n)
                grown[n] = [v]
                if max_diameter >= 0 and _tree_diameter(grown) > max_diameter:
                    continue
                key = _canonical_code(grown)
                if key not in seen:
                    seen[key] = grown
        level = [seen[k] for k in sorted(seen)]
        out.extend(level)
    return out


def _tree_diameter(adj) -> int:
    def far(start):
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
        v = max(dist, key=lambda u: (dist[u], u))
        return v, dist[v]

    v, _ = far(next(iter(adj)))
    _, d = far(v)
    return d


def _internal_size_bound(q: int, internal_diameter: int) -> int:
    """Vertices of the largest degree-(q+1) tree of the given diameter."""
    r = (internal_diameter + 1) // 2
    total = 1
    layer = q + 1
    for _ in range(r):
        total += layer
        layer *= q
    return total


def enumerate_complete_shapes(q: int, max_diameter: int) -> list:
    """All complete shapes with diameter <= max_diameter, up to
    isomorphism, ordered by (diameter, vertex count, code)."""
    shapes = []
    if max_diameter >= 0:
        shapes.append((0, vertex_shape(q)))
    if max_diameter >= 1:
        shapes.append((1, edge_shape(q)))
    if max_diameter >= 2:
        bound = _internal_size_bound(q, max_diameter - 2)
        for adj in enumerate_trees(bound, max_degree=q + 1, max_diameter=max_diameter - 2):
            d = _tree_diameter(adj)
            ids = [f"i{v}" for v in adj]
            edges = [
                (f"i{u}", f"i{v}") for u, ns in adj.items() for v in ns if u < v
            ]
            shapes.append((d + 2, complete_shape_from_internal(q, ids, edges)))
    shapes.sort(key=lambda t: (t[0], len(t[1].vertices), t[1].edges))
    return [s for _, s in shapes]
