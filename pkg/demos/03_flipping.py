"""Branch-swap witnesses: an order-2 automorphism that exchanges two rays
while fixing a subtree pointwise and every other ray.

The construction picks, among the rays leaving the median of the leading
triple through the two subtree-free directions, the pair splitting
deepest, and swaps the two branches at their divergence vertex.
"""

from arbocoh import RayPrefix, Vertex, edge_shape, enumerate_embeddings
from arbocoh.flip import check_flip_witness, find_flip


def ray(labels, depth=12):
    labels = tuple(labels)
    return RayPrefix(labels + (0,) * (depth - len(labels)))


q = 2
rays = [
    ray([0, 0]),        # gamma_0
    ray([1, 0, 0]),     # gamma_1
    ray([2]),           # gamma_2
    ray([1, 0, 1, 0]),  # gamma_3
    ray([0, 1]),        # gamma_4
    ray([1, 0, 1, 1]),  # gamma_5
]
subtree = next(
    e
    for e in enumerate_embeddings(edge_shape(q), Vertex((0, 0)), 1)
    if e.image_words() == frozenset({(0, 0), (0, 0, 0)})
)

print("rays (prefixes):")
for k, r in enumerate(rays):
    print(f"  gamma_{k} = {list(r.word)}")
print("subtree to fix pointwise:", sorted(list(w) for w in subtree.image_words()))

w = find_flip(q, rays, subtree, 12)
print(f"\nwitness swaps gamma_{w.i} <-> gamma_{w.j}"
      f" (their paths split deepest), certified {w.certified_depth} steps")
print(f"isometry domain size: {len(w.h.mapping)} vertices")

fails = check_flip_witness(q, rays, subtree, w)
print("postconditions:", "all hold" if not fails else fails)

print("\nspot checks:")
print("  h fixes the subtree:",
      all(w.h.mapping[x] == x for x in subtree.image_words()))
img = w.h.apply_ray(rays[w.i])
print(f"  h(gamma_{w.i}) lands in gamma_{w.j}'s cylinder: {list(img.word)}")
others = [k for k in range(len(rays)) if k not in (w.i, w.j)]
print("  other rays fixed exactly:",
      all(w.h.apply_ray(rays[k]) == rays[k] for k in others))
print("  involution:", all(w.h.mapping[v] == u for u, v in w.h.mapping.items()))
