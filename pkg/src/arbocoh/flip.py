"""Constructive branch-swap witnesses.

Given pairwise distinct boundary rays gamma_0..gamma_n (n >= 2) and a
finite subtree S that misses the leading triple, there is an order-2 tree
automorphism fixing S pointwise, swapping two of the rays and fixing all
the others.  find_flip produces such a witness explicitly:

  * locate the median m of the leading triple and the pair of its branch
    directions that S avoids;
  * collect the indices J0 of rays leaving m in one of those two
    directions, and pick the pair (i, j) in J0 with the largest mutual
    Gromov product at m (ties: lexicographically smallest pair);
  * let m' be the divergence vertex of the rays i and j seen from m, and
    swap the two branches at m' containing them.

The swap is pinned along the two known ray paths (so it exchanges the
certified prefixes of gamma_i and gamma_j exactly) and matches all other
children in canonical sorted order, making it a deterministic involution.
Everything outside the two branches, in particular S and every other ray,
is fixed pointwise.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InsufficientDepth, NotDistinct, SubtreeHitsTriple
from .shapes import EmbeddedSubtree
from .tree import (
    RayPrefix,
    TreeIsometry,
    Vertex,
    gromov_product,
    lcp_len,
    median,
    vertex_to_ray_path,
    word_neighbors,
)


@dataclass(frozen=True)
class FlipWitness:
    """Indices (i, j), the swapping isometry h, and the number of exact
    swap steps beyond the secondary median."""

    i: int
    j: int
    h: TreeIsometry
    certified_depth: int


def _vv_path(a, b):
    """Word path from a to b: climb to the common prefix, then descend."""
    k = lcp_len(a, b)
    path = [a[:i] for i in range(len(a), k - 1, -1)]
    path.extend(b[: i + 1] for i in range(k, len(b)))
    return path


def _missing_pair(rays, s, m):
    """Lexicographically smallest pair (a, b) in {0,1,2} such that every
    subtree vertex has zero Gromov product with both rays at the median."""
    image = [] if s is None else [Vertex(w) for w in sorted(s.image_words())]
    for a in range(3):
        for b in range(a + 1, 3):
            if all(
                gromov_product(rays[a], x, m) == 0
                and gromov_product(rays[b], x, m) == 0
                for x in image
            ):
                return a, b
    raise SubtreeHitsTriple("the subtree hits the leading ray triple")


class _BranchSwap:
    """The order-2 swap of the branches at m' containing spines A and B.

    Spines are the known vertex paths from m' toward the two rays; the
    walk from m' to any vertex is replayed on the mirror side, following
    the spine pin while on it and canonical child order off it.
    """

    def __init__(self, q, m_prime, spine_a, spine_b):
        self.q = q
        self.m = m_prime
        self.spines = {0: spine_a, 1: spine_b}
        self.reach = min(len(spine_a), len(spine_b)) - 1

    def image(self, u):
        path = _vv_path(self.m, u)
        if len(path) == 1:
            return u
        side = None
        for k in (0, 1):
            if path[1] == self.spines[k][1]:
                side = k
        if side is None:
            return u
        src, dst = self.spines[side], self.spines[1 - side]
        a, b = self.m, self.m
        prev_a, prev_b = None, None
        r = 0  # spine position while the walk follows it; -1 once off
        for a2 in path[1:]:
            if r >= 0 and r + 1 < len(src) and r + 1 < len(dst) and a2 == src[r + 1]:
                a, b, prev_a, prev_b = a2, dst[r + 1], a, b
                r += 1
                continue
            b2 = self._match(a, b, prev_a, prev_b, r, a2)
            a, b, prev_a, prev_b = a2, b2, a, b
            r = -1
        return b

    def _match(self, a, b, prev_a, prev_b, r, a2):
        """Rank-match a2 among the unpinned neighbors of a onto those of b."""
        pin_a = pin_b = None
        if r >= 0:
            for k in (0, 1):
                sp = self.spines[k]
                if r < len(sp) and sp[r] == a:
                    if r + 1 < len(sp) and r + 1 < len(self.spines[1 - k]):
                        pin_a = sp[r + 1]
                        pin_b = self.spines[1 - k][r + 1]
                    break
        nbrs_a = [w for w in word_neighbors(a, self.q) if w != prev_a and w != pin_a]
        nbrs_b = [w for w in word_neighbors(b, self.q) if w != prev_b and w != pin_b]
        return nbrs_b[nbrs_a.index(a2)]


def find_flip(q: int, rays, s, depth: int) -> FlipWitness:
    """Produce a branch-swap witness; see the module docstring.

    rays: list of at least 3 RayPrefix, pairwise divergent within depth.
    s: an EmbeddedSubtree missing the triple (rays[0..2]), or None.
    Raises SubtreeHitsTriple / InsufficientDepth / NotDistinct.
    """
    n = len(rays)
    if n < 3:
        raise ValueError("need at least 3 rays")
    for k, r in enumerate(rays):
        if r.depth < depth:
            raise InsufficientDepth(f"ray {k} shallower than requested depth {depth}")
    for a in range(n):
        for b in range(a + 1, n):
            if lcp_len(rays[a].word, rays[b].word) >= depth:
                raise NotDistinct(f"rays {a} and {b} agree to depth {depth}")

    m = median(rays[0], rays[1], rays[2])
    pa, pb = _missing_pair(rays, s, m)

    j0 = []
    for k in range(n):
        if k in (pa, pb):
            j0.append(k)
        elif (
            gromov_product(rays[k], rays[pa], m) > 0
            or gromov_product(rays[k], rays[pb], m) > 0
        ):
            j0.append(k)

    best = None
    for ii in j0:
        for jj in j0:
            if ii < jj:
                g = gromov_product(rays[ii], rays[jj], m)
                if best is None or g > best[0]:
                    best = (g, ii, jj)
    _, i, j = best

    path_i = vertex_to_ray_path(m.word, rays[i].word)
    path_j = vertex_to_ray_path(m.word, rays[j].word)
    t = 0
    while t < len(path_i) and t < len(path_j) and path_i[t] == path_j[t]:
        t += 1
    if t == len(path_i) or t == len(path_j):
        raise InsufficientDepth(f"rays {i} and {j} do not visibly diverge")
    spine_i = path_i[t - 1:]
    spine_j = path_j[t - 1:]

    swap = _BranchSwap(q, path_i[t - 1], spine_i, spine_j)

    dom = set()
    for r in rays:
        dom.update(r.word[:k] for k in range(len(r.word) + 1))
    if s is not None:
        for w in s.image_words():
            dom.update(w[:k] for k in range(len(w) + 1))
    mapping = {u: swap.image(u) for u in sorted(dom)}
    for u, v in list(mapping.items()):
        if v not in mapping:
            mapping[v] = swap.image(v)
    h = TreeIsometry(q, mapping)
    return FlipWitness(i=i, j=j, h=h, certified_depth=swap.reach)


def check_flip_witness(q: int, rays, s, w: FlipWitness, strict: bool = True) -> list:
    """Verify the witness postconditions prefix-exactly: the subtree is
    fixed pointwise, h exchanges the two ray paths beyond the secondary
    median step for step to the certified depth, every other ray's
    cylinder is fixed exactly, and h is an involution.  With strict=True
    also check the zero Gromov products at the secondary median.  Returns
    a list of failure descriptions (empty = pass)."""
    fails = []
    h = w.h
    if s is not None:
        for word in sorted(s.image_words()):
            if h.mapping.get(word) != word:
                fails.append(f"subtree vertex {list(word)} moved")

    m = median(rays[0], rays[1], rays[2])
    path_i = vertex_to_ray_path(m.word, rays[w.i].word)
    path_j = vertex_to_ray_path(m.word, rays[w.j].word)
    t = 0
    while t < len(path_i) and t < len(path_j) and path_i[t] == path_j[t]:
        t += 1
    spine_i, spine_j = path_i[t - 1:], path_j[t - 1:]
    reach = min(len(spine_i), len(spine_j)) - 1
    if w.certified_depth > reach:
        fails.append("certified depth exceeds the visible spine overlap")
    for r in range(min(reach, w.certified_depth) + 1):
        if h.mapping.get(spine_i[r]) != spine_j[r] or h.mapping.get(spine_j[r]) != spine_i[r]:
            fails.append(f"spines not exchanged at step {r}")
            break

    for k, ray in enumerate(rays):
        if k in (w.i, w.j):
            continue
        if h.apply_ray(ray) != ray:
            fails.append(f"ray {k} not fixed")

    for u, v in h.mapping.items():
        if h.mapping.get(v, u) != u:
            fails.append(f"not an involution at {list(u)}")
            break

    if strict:
        m2 = Vertex(spine_i[0])
        for k, ray in enumerate(rays):
            if k in (w.i, w.j):
                continue
            if (
                gromov_product(ray, rays[w.i], m2) != 0
                or gromov_product(ray, rays[w.j], m2) != 0
            ):
                fails.append(f"ray {k} meets a swapped branch at the secondary median")
        if s is not None:
            for word in sorted(s.image_words()):
                x = Vertex(word)
                if (
                    gromov_product(rays[w.i], x, m2) != 0
                    or gromov_product(rays[w.j], x, m2) != 0
                ):
                    fails.append(f"subtree vertex {list(word)} meets a swapped branch")
    return fails
