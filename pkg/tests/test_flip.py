"""Branch-swap witnesses: postconditions, involution, and error cases."""

import numpy as np
import pytest

from arbocoh.config import Config
from arbocoh.errors import InsufficientDepth, NotDistinct, SubtreeHitsTriple
from arbocoh.flip import check_flip_witness, find_flip
from arbocoh.shapes import edge_shape, enumerate_embeddings, star_shape
from arbocoh.tree import RayPrefix, Vertex
from arbocoh.verify import flip_suite, random_flip_instance


def _ray(labels, depth=12):
    labels = tuple(labels)
    return RayPrefix(labels + (0,) * (depth - len(labels)))


def test_three_directions_no_subtree():
    rays = [_ray([0]), _ray([1]), _ray([2])]
    w = find_flip(2, rays, None, 12)
    assert not check_flip_witness(2, rays, None, w)
    # involution on the certified prefixes
    for word in list(w.h.mapping):
        assert w.h.mapping[w.h.mapping[word]] == word


def test_flip_fixes_named_subtree():
    # subtree = an edge hanging off the third branch; rays split at the root
    rays = [_ray([0]), _ray([1]), _ray([2, 1])]
    e = next(
        emb
        for emb in enumerate_embeddings(edge_shape(2), Vertex((2,)), 1)
        if emb.image_words() == frozenset({(2,), (2, 0)})
    )
    w = find_flip(2, rays, e, 12)
    assert not check_flip_witness(2, rays, e, w)
    assert w.h.mapping[(2,)] == (2,)
    assert w.h.mapping[(2, 0)] == (2, 0)


def test_flip_many_rays_subtree_off_spine():
    # six rays, subtree an edge off the spine between rays 0 and 2, after
    # the style of a two-sided configuration with a far cluster
    rays = [
        _ray([0, 0]),
        _ray([1, 0, 0]),
        _ray([2]),
        _ray([1, 0, 1, 0]),
        _ray([0, 1]),
        _ray([1, 0, 1, 1]),
    ]
    e = next(
        emb
        for emb in enumerate_embeddings(edge_shape(2), Vertex((0, 0)), 1)
        if emb.image_words() == frozenset({(0, 0), (0, 0, 0)})
    )
    w = find_flip(2, rays, e, 12)
    assert not check_flip_witness(2, rays, e, w)
    assert {w.i, w.j} == {3, 5}  # the deepest-splitting pair wins


def test_subtree_hitting_triple_rejected():
    rays = [_ray([0]), _ray([1]), _ray([2])]
    center_star = next(
        emb
        for emb in enumerate_embeddings(star_shape(2), Vertex(()), 1)
        if () in emb.image_words()
    )
    with pytest.raises(SubtreeHitsTriple):
        find_flip(2, rays, center_star, 12)


def test_flip_input_validation():
    rays = [_ray([0]), _ray([1]), _ray([2])]
    with pytest.raises(ValueError):
        find_flip(2, rays[:2], None, 12)
    with pytest.raises(InsufficientDepth):
        find_flip(2, rays, None, 13)
    same = [_ray([0]), _ray([0]), _ray([1])]
    with pytest.raises(NotDistinct):
        find_flip(2, same, None, 12)


def test_random_instances_small():
    rng = np.random.default_rng(99)
    for k in range(150):
        q = 2 if k % 2 == 0 else 3
        rays, s = random_flip_instance(rng, q, 12)
        w = find_flip(q, rays, s, 12)
        assert not check_flip_witness(q, rays, s, w), f"instance {k}"


def test_flip_suite_entry_point():
    report = flip_suite(Config(seed=5), n_instances=60)
    assert report["passed"]
    assert report["checks"][0]["instances"] == 60


def test_clustered_rays_fuzz():
    """Adversarial configurations: most rays packed below a common deep
    vertex, some outside.  Forces deep medians, secondary medians above
    the median, and swaps of branches containing the basepoint."""
    from arbocoh.tree import lcp_len
    from arbocoh.verify import random_word

    rng = np.random.default_rng(101)
    depth, full = 12, 15
    for k in range(300):
        q = 2 if k % 2 == 0 else 3
        base = random_word(rng, q, int(rng.integers(1, 7)))
        n = int(rng.integers(3, 8))
        rays = []
        guard = 0
        while len(rays) < n and guard < 200:
            guard += 1
            if rng.integers(0, 3) == 0:
                w = random_word(rng, q, full)
            else:
                w = (base + tuple(int(rng.integers(0, q)) for _ in range(full)))[:full]
            r = RayPrefix(w)
            if all(lcp_len(r.word, s.word) < depth for s in rays):
                rays.append(r)
        if len(rays) < 3:
            continue
        w = find_flip(q, rays, None, depth)
        assert not check_flip_witness(q, rays, None, w), f"instance {k}"
