"""Seeded invariant suites behind the `verify` CLI command.

Each suite returns a report dict with one entry per check: name, pass
flag, and a residual or counter where meaningful.  All randomness flows
from a single seed recorded in the report.
"""

from __future__ import annotations

import numpy as np

from .catalog import enumerate_complete_shapes
from .chartab import character_table, invariant_dim, realize_irrep
from .config import Config
from .errors import UnknownSuite
from .flip import check_flip_witness, find_flip
from .perm import (
    Permutation,
    all_subgroups,
    pointwise_stabilizer,
    shape_automorphism_group,
)
from .reptheory import (
    RepDescriptor,
    admissible_vertex_pairs,
    classify_bounded_cohomology,
    enumerate_nondegenerate,
    h2_dimension,
    is_nondegenerate,
)
from .shapes import (
    Shape,
    centipede_shape,
    edge_shape,
    enumerate_embeddings,
    hits,
    maximal_proper_complete_subtrees,
    star_shape,
    y_shape,
)
from .spherical import (
    CylinderFunction,
    eigen_residual,
    gram_psd_check,
    inner_product_z,
    intertwiner_defining_residual,
    intertwiner_matrix,
    phi_values,
    pi_z_apply,
)
from .tree import (
    RayPrefix,
    TreeIsometry,
    Vertex,
    ball_words,
    busemann,
    cylinder_measure,
    distance,
    gromov_product,
    median,
    poisson_kernel,
    word_children,
    word_neighbors,
)
from .witness import (
    induced_reference_permutation,
    map_embedding,
    reference_configuration,
    witness_cochain,
)

# -- randomness helpers -------------------------------------------------------


def random_word(rng, q, depth):
    if depth == 0:
        return ()
    labels = [int(rng.integers(0, q + 1))]
    labels.extend(int(rng.integers(0, q)) for _ in range(depth - 1))
    return tuple(labels)


def random_rays(rng, q, n, depth):
    """n rays, pairwise divergent strictly before the given depth."""
    while True:
        rays = [RayPrefix(random_word(rng, q, depth)) for _ in range(n)]
        ok = all(
            rays[i].word[: depth - 1] != rays[j].word[: depth - 1]
            for i in range(n)
            for j in range(i + 1, n)
        )
        if ok:
            return rays


def random_isometry(rng, q, radius, move=0):
    """Random automorphism germ on the radius ball: the basepoint goes to a
    random word of the given length, children assigned in random order."""
    return _random_on_domain(rng, q, ball_words((), radius, q), move)


def random_isometry_on(rng, q, words, move=0):
    """Random automorphism germ defined on the ancestor closure of the
    given words (cheap when the words are few but deep)."""
    dom = set()
    for w in words:
        dom.update(w[:k] for k in range(len(w) + 1))
    return _random_on_domain(rng, q, sorted(dom, key=lambda w: (len(w), w)), move)


def _random_on_domain(rng, q, ordered_words, move):
    """ordered_words must list parents before children and contain ()."""
    domain = set(ordered_words)
    mapping = {(): random_word(rng, q, move)}
    for u in ordered_words:
        fu = mapping[u]
        used, unmapped = set(), []
        for nb in word_neighbors(u, q):
            if nb in mapping:
                used.add(mapping[nb])
            elif nb in domain and len(nb) > len(u):
                unmapped.append(nb)
        avail = [w for w in word_neighbors(fu, q) if w not in used]
        idx = list(rng.permutation(len(avail)))
        for k, nb in enumerate(unmapped):
            mapping[nb] = avail[idx[k]]
    return TreeIsometry(q, mapping)


def _check(name, passed, **detail):
    out = {"name": name, "passed": bool(passed)}
    out.update(detail)
    return out


def _report(suite, seed, checks):
    return {
        "suite": suite,
        "seed": seed,
        "passed": all(c["passed"] for c in checks),
        "checks": checks,
    }


# -- geometry -----------------------------------------------------------------


def geometry_suite(cfg: Config, n_instances: int = 500) -> dict:
    rng = np.random.default_rng(cfg.seed)
    bad_cocycle = bad_rn = bad_median = bad_additive = bad_isom = 0

    for k in range(n_instances):
        q = 2 if k % 2 == 0 else 3
        g = RayPrefix(random_word(rng, q, 12))
        x, y, z = (Vertex(random_word(rng, q, int(rng.integers(0, 7)))) for _ in range(3))
        bxy, byz, bxz = busemann(g, x, y), busemann(g, y, z), busemann(g, x, z)
        if bxy + byz != bxz or bxy != -busemann(g, y, x) or abs(bxy) > distance(x, y):
            bad_cocycle += 1

        w = Vertex(g.word[: int(rng.integers(8, 12))])
        ratio = cylinder_measure(y, w, q) / cylinder_measure(x, w, q)
        if ratio != poisson_kernel(x, y, g, q):
            bad_rn += 1

        rays = random_rays(rng, q, 3, 10)
        m = median(*rays)
        if any(
            gromov_product(rays[i], rays[j], m) != 0
            for i in range(3)
            for j in range(i + 1, 3)
        ):
            bad_median += 1

        wa = Vertex(random_word(rng, q, int(rng.integers(1, 7))))
        xa = Vertex(random_word(rng, q, int(rng.integers(0, 5))))
        below = len(wa.word) < len(xa.word) and xa.word[: len(wa.word)] == wa.word
        if not below and xa != wa:
            total = sum(
                cylinder_measure(xa, Vertex(c), q) for c in word_children(wa.word, q)
            )
            if total != cylinder_measure(xa, wa, q):
                bad_additive += 1

    for k in range(60):
        q = 2 if k % 2 == 0 else 3
        f = random_isometry(rng, q, 7, move=int(rng.integers(0, 3)))
        u = Vertex(random_word(rng, q, int(rng.integers(0, 5))))
        v = Vertex(random_word(rng, q, int(rng.integers(0, 5))))
        base = Vertex(random_word(rng, q, int(rng.integers(0, 4))))
        if distance(f.apply_vertex(u), f.apply_vertex(v)) != distance(u, v):
            bad_isom += 1
            continue
        rays = random_rays(rng, q, 3, 5)
        try:
            imgs = [f.apply_ray(r) for r in rays]
            if gromov_product(imgs[0], imgs[1], f.apply_vertex(base)) != gromov_product(
                rays[0], rays[1], base
            ):
                bad_isom += 1
            elif median(*imgs) != f.apply_vertex(median(*rays)):
                bad_isom += 1
        except Exception:
            bad_isom += 1

    checks = [
        _check("busemann_cocycle_exact", bad_cocycle == 0, failures=bad_cocycle),
        _check("radon_nikodym_exact", bad_rn == 0, failures=bad_rn),
        _check("median_gromov_products_zero", bad_median == 0, failures=bad_median),
        _check("cylinder_measure_additive", bad_additive == 0, failures=bad_additive),
        _check("isometry_invariance", bad_isom == 0, failures=bad_isom),
    ]
    return _report("geometry", cfg.seed, checks)


# -- flip ---------------------------------------------------------------------


def random_flip_instance(rng, q, depth):
    """Rays plus a random embedded subtree missing the leading triple (or
    None)."""
    n = int(rng.integers(3, 8))
    rays = random_rays(rng, q, n, depth)
    if rng.integers(0, 2) == 0:
        return rays, None
    maker = [star_shape, edge_shape, lambda qq: centipede_shape(qq, 3)][int(rng.integers(0, 3))]
    shape = maker(q)
    for _ in range(20):
        anchor = Vertex(random_word(rng, q, int(rng.integers(0, 4))))
        embs = enumerate_embeddings(shape, anchor, 2)
        if not embs:
            continue
        e = embs[int(rng.integers(0, len(embs)))]
        if len(shape.vertices) <= 2:
            cls_hit = False  # vertex/edge shapes never pass through a median
        else:
            cls_hit = hits(e, rays[0], rays[1], rays[2])
        if not cls_hit:
            return rays, e
    return rays, None


def flip_suite(cfg: Config, n_instances: int = 1000) -> dict:
    rng = np.random.default_rng(cfg.seed)
    failures = 0
    first_failure = ""
    for k in range(n_instances):
        q = 2 if k % 2 == 0 else 3
        rays, s = random_flip_instance(rng, q, 12)
        try:
            w = find_flip(q, rays, s, 12)
            fails = check_flip_witness(q, rays, s, w)
        except Exception as exc:  # any raise counts as a failed instance
            fails = [f"exception: {exc}"]
        if fails:
            failures += 1
            if not first_failure:
                first_failure = f"instance {k}: {fails[0]}"
    checks = [
        _check(
            "flip_witnesses_valid",
            failures == 0,
            instances=n_instances,
            failures=failures,
            first_failure=first_failure,
        )
    ]
    return _report("flip", cfg.seed, checks)


# -- groups -------------------------------------------------------------------


def brute_force_automorphisms(s: Shape):
    """All adjacency-preserving vertex bijections, by backtracking."""
    ids = list(s.vertices)
    index = {v: i for i, v in enumerate(ids)}
    adj = s.adjacency()
    order = [ids[0]]
    for u in order:
        for nb in adj[u]:
            if nb not in order:
                order.append(nb)
    out = []

    def extend(i, img):
        if i == len(order):
            out.append(Permutation(tuple(index[img[v]] for v in ids)))
            return
        v = order[i]
        placed_nbrs = [nb for nb in adj[v] if nb in img]
        for cand in ids:
            if cand in img.values():
                continue
            if s.degree(cand) != s.degree(v):
                continue
            if all(cand in adj[img[nb]] for nb in placed_nbrs):
                img[v] = cand
                extend(i + 1, img)
                del img[v]

    extend(0, {})
    return set(out)


def groups_suite(cfg: Config) -> dict:
    checks = []
    small = [
        star_shape(2),
        centipede_shape(2, 3),
        centipede_shape(2, 4),
        centipede_shape(2, 5),
        y_shape(2),
        star_shape(3),
        edge_shape(2),
        Shape(2, ["v"], []),
    ]
    bad = []
    for s in small:
        got = set(shape_automorphism_group(s).elements)
        want = brute_force_automorphisms(s)
        if got != want:
            bad.append(f"{len(s.vertices)}-vertex shape: {len(got)} vs {len(want)}")
    checks.append(_check("aut_matches_brute_force", not bad, mismatches=bad))

    lagrange_bad = 0
    zoo = [
        shape_automorphism_group(star_shape(2)),
        shape_automorphism_group(star_shape(3)),
        shape_automorphism_group(centipede_shape(2, 4)),
    ]
    for G in zoo:
        for H in all_subgroups(G):
            if G.order % H.order != 0:
                lagrange_bad += 1
    checks.append(_check("lagrange", lagrange_bad == 0, failures=lagrange_bad))

    aj_bad = []
    for s in [star_shape(2), centipede_shape(2, 3), centipede_shape(2, 4), y_shape(2)]:
        G = shape_automorphism_group(s)
        index = {v: i for i, v in enumerate(s.vertices)}
        for sub in maximal_proper_complete_subtrees(s):
            a_j = pointwise_stabilizer(G, [index[v] for v in sub])
            comp = {index[v] for v in s.vertices if v not in sub}
            for p in a_j.elements:
                moved = {i for i in range(p.degree) if p(i) != i}
                if not moved <= comp:
                    aj_bad.append("stabilizer moves a subtree vertex")
            inside = [
                p
                for p in G.elements
                if {i for i in range(p.degree) if p(i) != i} <= comp
            ]
            if set(inside) != set(a_j.elements):
                aj_bad.append("complement-supported permutations differ from stabilizer")
    checks.append(_check("pointwise_stabilizer_is_complement_supported", not aj_bad, mismatches=aj_bad))
    return _report("groups", cfg.seed, checks)


# -- representation theory ------------------------------------------------------


def reps_suite(cfg: Config) -> dict:
    rng = np.random.default_rng(cfg.seed)
    checks = []

    worst_row = worst_col = 0.0
    deg_ok = True
    shapes = enumerate_complete_shapes(2, 5) + enumerate_complete_shapes(3, 3)
    for s in shapes:
        t = character_table(shape_automorphism_group(s, cfg.group_order_bound))
        worst_row = max(worst_row, t.row_orthogonality_residual())
        worst_col = max(worst_col, t.column_orthogonality_residual())
        if sum(d * d for d in t.degrees) != t.group.order:
            deg_ok = False
    tol = cfg.tolerances.orthogonality
    checks.append(
        _check(
            "character_tables_orthogonal",
            worst_row < tol and worst_col < tol and deg_ok,
            worst_row_residual=worst_row,
            worst_col_residual=worst_col,
            n_shapes=len(shapes),
        )
    )

    proj_bad = 0
    for host in [star_shape(2), star_shape(3), centipede_shape(2, 4)]:
        G = shape_automorphism_group(host)
        t = character_table(G)
        models = [realize_irrep(t, r) for r in range(t.n_rows)]
        for H in all_subgroups(G):
            for r, model in enumerate(models):
                P = model.subspace_projector(H)
                rank = int(np.sum(np.linalg.svd(P, compute_uv=False) > 1e-8))
                if rank != invariant_dim(t, r, H):
                    proj_bad += 1
    checks.append(_check("invariant_dim_matches_projector_rank", proj_bad == 0, failures=proj_bad))

    h2_bad = []
    for q in (2, 3):
        for k in (2, 3, 4):
            s = centipede_shape(q, k)
            t = character_table(shape_automorphism_group(s))
            for row in range(t.n_rows):
                if not is_nondegenerate(s, t, row):
                    continue
                dims = {
                    h2_dimension(s, t, row, x, y)
                    for x, y in admissible_vertex_pairs(s)
                }
                if len(dims) != 1:
                    h2_bad.append(f"q={q} k={k} row={row}: {sorted(dims)}")
    checks.append(_check("h2_pair_independent", not h2_bad, mismatches=h2_bad))

    grid_bad = []
    for n in range(1, 7):
        for z in (0.5, 0.5 + 2j, 0.3):
            if classify_bounded_cohomology(RepDescriptor.spherical(2, z), n) != 0:
                grid_bad.append(f"spherical z={z} n={n}")
        for sign in "+-":
            if classify_bounded_cohomology(RepDescriptor.special(2, sign), n) != 0:
                grid_bad.append(f"special {sign} n={n}")
    ys = y_shape(2)
    for row, _deg, _h2 in enumerate_nondegenerate(ys):
        for n in range(1, 7):
            if classify_bounded_cohomology(RepDescriptor.cuspidal(ys, row), n) != 0:
                grid_bad.append(f"y-shape row={row} n={n}")
    cent = centipede_shape(2, 4)
    for row, _deg, _h2 in enumerate_nondegenerate(cent):
        for n in (1, 3, 4, 5, 6):
            if classify_bounded_cohomology(RepDescriptor.cuspidal(cent, row), n) != 0:
                grid_bad.append(f"4-centipede row={row} n={n}")
    checks.append(_check("vanishing_grid", not grid_bad, mismatches=grid_bad))

    checks.append(_witness_check(rng, n_instances=100, n_triples=3))
    return _report("reps", cfg.seed, checks)


def kernel_st_row(s: Shape):
    """The degree-1 non-degenerate row with nonzero degree-2 dimension on a
    4-centipede (the sign character killing the rotation)."""
    rows = enumerate_nondegenerate(s)
    return next(r for r, deg, h2 in rows if deg == 1 and h2 == 1)


def _witness_check(rng, n_instances=100, n_triples=3, depth=10):
    s = centipede_shape(2, 4)
    t = character_table(shape_automorphism_group(s))
    row = kernel_st_row(s)
    model = realize_irrep(t, row)
    ref = reference_configuration(s, depth)
    v = np.array([1.0 + 0j])

    bad = []
    base_val = witness_cochain(s, model, v, ref.gamma0, ref.gamma1, ref.embedding, depth)
    if np.max(np.abs(base_val - v)) > 1e-10:
        bad.append("reference value is not v")
    swapped = witness_cochain(s, model, v, ref.gamma1, ref.gamma0, ref.embedding, depth)
    if np.max(np.abs(swapped + v)) > 1e-10:
        bad.append("swapped reference is not -v")

    needed = [ref.gamma0.word, ref.gamma1.word] + sorted(ref.embedding.image_words())
    for k in range(n_instances):
        f = random_isometry_on(rng, 2, needed, move=int(rng.integers(0, 3)))
        fg = f.apply_ray(ref.gamma0)
        fh = f.apply_ray(ref.gamma1)
        fe = map_embedding(f, ref.embedding)
        lhs = witness_cochain(s, model, v, fg, fh, fe, depth)
        twist = induced_reference_permutation(ref, ref.embedding, fe, f)
        rhs = model.matrix(twist) @ base_val
        if np.max(np.abs(lhs - rhs)) > 1e-10:
            bad.append(f"equivariance failed at instance {k}")
            break
        alt = witness_cochain(s, model, v, fh, fg, fe, depth)
        if np.max(np.abs(alt + lhs)) > 1e-10:
            bad.append(f"alternation failed at instance {k}")
            break

    support_bad = 0
    for _ in range(n_triples):
        # rays must reach well below the embedding window around the median
        rays = random_rays(rng, 2, 3, depth + 10)
        m = median(*rays)
        embs = enumerate_embeddings(s, m, 6)
        for e in embs:
            if hits(e, *rays):
                continue
            val = (
                witness_cochain(s, model, v, rays[1], rays[2], e, depth)
                - witness_cochain(s, model, v, rays[0], rays[2], e, depth)
                + witness_cochain(s, model, v, rays[0], rays[1], e, depth)
            )
            if np.max(np.abs(val)) > 1e-10:
                support_bad += 1
    if support_bad:
        bad.append(f"coboundary supported off the hitting set ({support_bad} embeddings)")
    return _check("witness_cochain_laws", not bad, mismatches=bad)


# -- spherical ------------------------------------------------------------------


def spherical_suite(cfg: Config) -> dict:
    rng = np.random.default_rng(cfg.seed)
    checks = []
    import math as _math

    worst = 0.0
    for q in (2, 3):
        zs = [0.5, 0.5 + 0.7j, 0.3, 0.3 + 1j * _math.pi / _math.log(q)]
        for z in zs:
            worst = max(worst, eigen_residual(q, z, 8))
    checks.append(_check("eigen_residual", worst < 1e-10, worst_residual=worst))

    sym = 0.0
    for q in (2, 3):
        for z in (0.5 + 0.7j, 0.3, 0.25 + 0.4j):
            a = phi_values(q, z, 8)
            b = phi_values(q, 1 - z, 8)
            sym = max(sym, max(abs(a[d] - b[d]) for d in range(9)))
    checks.append(_check("phi_z_symmetry", sym < 1e-12, worst=sym))

    min_eig = 0.0
    for z in (0.5, 0.5 + 1.3j, 0.3):
        vs = [Vertex(random_word(rng, 2, int(rng.integers(0, 8)))) for _ in range(20)]
        min_eig = min(min_eig, gram_psd_check(2, z, vs))
    path = [Vertex((0,) * d) for d in range(6)]
    violation = gram_psd_check(2, 2.0, path)
    checks.append(
        _check(
            "gram_psd",
            min_eig >= -cfg.tolerances.psd and violation < -1e-6,
            min_eigenvalue=min_eig,
            z2_violation=violation,
        )
    )

    iz = intertwiner_matrix(2, 0.3, 3, tol=cfg.tolerances.intertwiner)
    deep = intertwiner_defining_residual(iz, 5)
    checks.append(
        _check(
            "intertwiner_identity",
            deep < cfg.tolerances.intertwiner,
            residual=deep,
        )
    )

    z = 0.5 + 0.3j
    worst_u = 0.0
    for _ in range(20):
        f = random_isometry(rng, 2, 6, move=int(rng.integers(0, 3)))
        phi = CylinderFunction(
            2, 1, {w: complex(rng.standard_normal(), rng.standard_normal()) for w in [(0,), (1,), (2,)]}
        )
        psi = CylinderFunction(
            2, 1, {w: complex(rng.standard_normal(), rng.standard_normal()) for w in [(0,), (1,), (2,)]}
        )
        before = inner_product_z(phi, psi, 2, z)
        after = inner_product_z(pi_z_apply(f, phi, 2, z), pi_z_apply(f, psi, 2, z), 2, z)
        worst_u = max(worst_u, abs(after - before))
    checks.append(
        _check("pi_z_unitary", worst_u < cfg.tolerances.unitarity, worst_deviation=worst_u)
    )
    return _report("spherical", cfg.seed, checks)


SUITES = {
    "geometry": geometry_suite,
    "flip": flip_suite,
    "groups": groups_suite,
    "reps": reps_suite,
    "spherical": spherical_suite,
}


def run_suite(name: str, cfg: Config) -> dict:
    if name == "all":
        reports = [SUITES[s](cfg) for s in ("geometry", "flip", "groups", "reps", "spherical")]
        return {
            "suite": "all",
            "seed": cfg.seed,
            "passed": all(r["passed"] for r in reports),
            "reports": reports,
        }
    if name not in SUITES:
        raise UnknownSuite(f"no suite named {name!r}")
    return SUITES[name](cfg)
