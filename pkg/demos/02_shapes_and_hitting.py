"""Finite complete subtrees: taxonomy and hit counts against ray triples.

A complete subtree has every vertex of degree 1 or q+1.  Its maximal
proper complete subtrees determine heads; two-headed shapes (and all
diameter-2 stars) are centipedes.  A shape "hits" a boundary triple when
the triple's median is one of its full-degree vertices; the number of
embedded copies hitting a triple depends only on the shape.
"""

import numpy as np

from arbocoh import (
    centipede_shape,
    classify_shape,
    count_hitting,
    heads,
    maximal_proper_complete_subtrees,
    star_shape,
    y_shape,
)
from arbocoh.verify import random_rays

q = 2
shapes = {
    "star (diameter 2)": star_shape(q),
    "3-centipede": centipede_shape(q, 3),
    "4-centipede": centipede_shape(q, 4),
    "5-centipede": centipede_shape(q, 5),
    "Y-shape (three heads)": y_shape(q),
}

print(f"== taxonomy at q = {q} ==")
for name, s in shapes.items():
    cls = classify_shape(s)
    tag = f"centipede({cls.k})" if cls.tag == "centipede" else f"{cls.tag}(heads={cls.n_heads})"
    subs = maximal_proper_complete_subtrees(s)
    hd = len(heads(s)) if s.diameter() > 2 else "n/a (diameter 2)"
    print(f"  {name:24s} |V|={len(s.vertices):2d} diam={s.diameter()} "
          f"maximal-subtrees={len(subs)} heads={hd} -> {tag}")

print("\n== hit counts are triple-independent ==")
rng = np.random.default_rng(0)
for name, s in shapes.items():
    counts = {count_hitting(s, *random_rays(rng, q, 3, 12)) for _ in range(8)}
    print(f"  {name:24s} copies through a random median: {sorted(counts)}")
print("  (the star admits exactly 1 copy through any median, the 3-centipede 3)")
