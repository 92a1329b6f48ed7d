"""Complete subtrees: validation, maximal subtrees, heads, classification,
embeddings, and hit counts, cross-checked against subset brute force."""

import itertools

import numpy as np
import pytest

from arbocoh.errors import NotATree, NotCuspidalShape, TooSmall
from arbocoh.shapes import (
    EmbeddedSubtree,
    Shape,
    centipede_shape,
    classify_shape,
    count_hitting,
    edge_shape,
    enumerate_embeddings,
    heads,
    hits,
    maximal_proper_complete_subtrees,
    star_shape,
    validate_complete,
    vertex_shape,
    y_shape,
)
from arbocoh.tree import RayPrefix, Vertex
from arbocoh.verify import random_isometry, random_rays


# -- independent oracle: maximal complete subtrees by raw subset search -------


def brute_force_maximal(s: Shape):
    """All maximal proper complete subtrees by filtering every vertex
    subset; independent of the library's internal-vertex method."""
    ids = list(s.vertices)
    adj = s.adjacency()
    complete = []
    for r in range(1, len(ids)):
        for sub in itertools.combinations(ids, r):
            subset = set(sub)
            seen = {sub[0]}
            stack = [sub[0]]
            while stack:
                for n in adj[stack.pop()]:
                    if n in subset and n not in seen:
                        seen.add(n)
                        stack.append(n)
            if len(seen) != len(subset):
                continue
            degs = [sum(n in subset for n in adj[v]) for v in sub]
            if len(sub) == 1 or all(d in (1, s.q + 1) for d in degs):
                complete.append(frozenset(sub))
    return sorted(
        (t for t in complete if not any(t < u for u in complete)),
        key=lambda fs: tuple(sorted(fs)),
    )


def test_validate_complete_examples():
    assert validate_complete(vertex_shape(2))
    assert validate_complete(edge_shape(2))
    path3 = Shape(2, ["a", "b", "c"], [["a", "b"], ["b", "c"]])
    assert not validate_complete(path3)


def test_incomplete_shape_rejected_by_taxonomy():
    from arbocoh.errors import InvalidShape

    path3 = Shape(2, ["a", "b", "c"], [["a", "b"], ["b", "c"]])
    with pytest.raises(InvalidShape):
        classify_shape(path3)
    with pytest.raises(InvalidShape):
        maximal_proper_complete_subtrees(path3)


def test_not_a_tree():
    with pytest.raises(NotATree):
        validate_complete(Shape(2, ["a", "b", "c"], [["a", "b"]]))
    with pytest.raises(NotATree):
        validate_complete(
            Shape(3, ["a", "b", "c"], [["a", "b"], ["b", "c"], ["c", "a"]])
        )


@pytest.mark.parametrize(
    "shape,expect",
    [
        (star_shape(2), 3),
        (centipede_shape(2, 3), 2),
        (centipede_shape(2, 4), 2),
        (y_shape(2), 3),
        (star_shape(3), 4),
        (centipede_shape(3, 3), 2),
    ],
)
def test_maximal_subtrees_against_brute_force(shape, expect):
    got = maximal_proper_complete_subtrees(shape)
    assert len(got) == expect
    assert got == brute_force_maximal(shape)
    for sub in got:
        sub_ids = sorted(sub)
        sub_edges = [e for e in shape.edges if e[0] in sub and e[1] in sub]
        assert validate_complete(Shape(shape.q, sub_ids, sub_edges))


def test_star_maximal_are_edges():
    for sub in maximal_proper_complete_subtrees(star_shape(2)):
        assert len(sub) == 2


def test_maximal_subtrees_whole_catalog_against_brute_force():
    """Every complete shape with at most 16 vertices in the desk catalog."""
    from arbocoh.catalog import enumerate_complete_shapes

    shapes = enumerate_complete_shapes(2, 5) + enumerate_complete_shapes(3, 3)
    for s in shapes:
        if len(s.vertices) <= 16 and s.diameter() >= 2:
            got = maximal_proper_complete_subtrees(s)
            assert got == brute_force_maximal(s)
            if s.diameter() > 2:
                assert len(heads(s)) == len(got)


def test_maximal_subtrees_too_small():
    with pytest.raises(TooSmall):
        maximal_proper_complete_subtrees(edge_shape(2))


def test_heads_counts():
    assert len(heads(centipede_shape(2, 3))) == 2
    assert len(heads(centipede_shape(3, 4))) == 2
    assert len(heads(y_shape(2))) == 3
    with pytest.raises(TooSmall):
        heads(star_shape(2))


def test_head_count_equals_maximal_count_small_shapes():
    shapes = [
        centipede_shape(2, 3),
        centipede_shape(2, 4),
        centipede_shape(2, 5),
        y_shape(2),
        centipede_shape(3, 3),
    ]
    for s in shapes:
        assert len(s.vertices) <= 16
        assert len(heads(s)) == len(maximal_proper_complete_subtrees(s))


def test_classify_examples():
    assert classify_shape(vertex_shape(2)).tag == "vertex"
    assert classify_shape(edge_shape(3)).tag == "edge"
    cls = classify_shape(star_shape(2))
    assert (cls.tag, cls.k) == ("centipede", 2)
    cls = classify_shape(centipede_shape(2, 4))
    assert (cls.tag, cls.k) == ("centipede", 4)
    cls = classify_shape(y_shape(2))
    assert (cls.tag, cls.n_heads, cls.diam) == ("multi_headed", 3, 4)


def test_enumerate_embeddings_examples():
    assert len(enumerate_embeddings(star_shape(2), Vertex(()), 1)) == 1
    assert len(enumerate_embeddings(edge_shape(2), Vertex(()), 1)) == 3


def test_embedding_count_isometry_invariant():
    rng = np.random.default_rng(5)
    s = star_shape(2)
    base = len(enumerate_embeddings(s, Vertex(()), 2))
    f = random_isometry(rng, 2, 4, move=2)
    moved = len(enumerate_embeddings(s, f.apply_vertex(Vertex(())), 2))
    assert base == moved


def test_embeddings_deduped_and_deterministic():
    s = star_shape(2)
    embs = enumerate_embeddings(s, Vertex(()), 2)
    images = [e.image_words() for e in embs]
    assert len(set(images)) == len(images)
    assert embs == enumerate_embeddings(s, Vertex(()), 2)


def test_hits_examples():
    s = star_shape(2)
    center_star = next(
        e for e in enumerate_embeddings(s, Vertex(()), 1) if () in e.image_words()
    )
    r3 = [RayPrefix((0, 0)), RayPrefix((1, 0)), RayPrefix((2, 0))]
    assert hits(center_star, *r3)
    # median at (0,), a leaf of the star: miss
    assert not hits(center_star, RayPrefix((0, 0, 1)), RayPrefix((0, 1, 1)), RayPrefix((1, 0)))
    v = vertex_shape(2)
    ve = EmbeddedSubtree(v, {"v0": ()})
    assert not hits(ve, *r3)


def test_count_hitting_examples_and_constancy():
    rng = np.random.default_rng(12)
    star, c3 = star_shape(2), centipede_shape(2, 3)
    for _ in range(10):
        rays = random_rays(rng, 2, 3, 10)
        assert count_hitting(star, *rays) == 1
        assert count_hitting(c3, *rays) == 3
    with pytest.raises(NotCuspidalShape):
        count_hitting(edge_shape(2), *random_rays(rng, 2, 3, 10))


def test_centipede_spine_diameter_on_geodesic():
    # a k-centipede placed on a geodesic overlaps it in diameter exactly k
    from arbocoh.witness import reference_configuration

    for k in (2, 3, 4):
        s = centipede_shape(2, k)
        ref = reference_configuration(s, k + 4)
        line = set()
        for p in range(-(k + 4), k + 5):
            line.add((0,) * (-p) if p <= 0 else (1,) + (0,) * (p - 1))
        overlap = [w for w in ref.embedding.image_words() if w in line]
        dmax = max(
            len(a) + len(b) - 2 * len(_lcp(a, b)) for a in overlap for b in overlap
        )
        assert dmax == k


def _lcp(a, b):
    out = []
    for x, y in zip(a, b):
        if x != y:
            break
        out.append(x)
    return tuple(out)


def test_shape_json_roundtrip():
    s = centipede_shape(2, 4)
    assert Shape.from_json(s.to_json()) == s
