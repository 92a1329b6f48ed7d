"""Acceptance criteria, one test per criterion, each printing a pass/fail
line with its elapsed time.  Tolerances are pinned here and nowhere else.

Run with `pytest -s tests/test_acceptance.py` to see the per-criterion
lines.
"""

import time

import numpy as np
import pytest

from arbocoh.catalog import enumerate_complete_shapes
from arbocoh.chartab import character_table, invariant_dim, realize_irrep
from arbocoh.config import Config
from arbocoh.perm import (
    all_subgroups,
    closure,
    pointwise_stabilizer,
    setwise_stabilizer,
    shape_automorphism_group,
)
from arbocoh.reptheory import (
    RepDescriptor,
    admissible_vertex_pairs,
    canonical_vertex_pair,
    classify_bounded_cohomology,
    enumerate_nondegenerate,
    h2_dimension,
)
from arbocoh.shapes import (
    centipede_shape,
    enumerate_embeddings,
    hits,
    maximal_proper_complete_subtrees,
    star_shape,
    y_shape,
)
from arbocoh.spherical import (
    CylinderFunction,
    eigen_residual,
    gram_psd_check,
    inner_product_z,
    intertwiner_defining_residual,
    intertwiner_matrix,
    phi_values,
    pi_z_apply,
)
from arbocoh.tree import RayPrefix, Vertex, busemann, cylinder_measure, distance, gromov_product, median, poisson_kernel
from arbocoh.verify import (
    flip_suite,
    kernel_st_row,
    random_isometry,
    random_isometry_on,
    random_rays,
    random_word,
)
from arbocoh.witness import (
    induced_reference_permutation,
    map_embedding,
    reference_configuration,
    witness_cochain,
)

import math


class _Criterion:
    def __init__(self, number, label, budget):
        self.number = number
        self.label = label
        self.budget = budget

    def __enter__(self):
        self.t0 = time.time()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.time() - self.t0
        status = "PASS" if exc_type is None else "FAIL"
        print(f"ACCEPTANCE {self.number}: {status} ({elapsed:.1f}s / budget {self.budget}s) {self.label}")
        if exc_type is None:
            assert elapsed < self.budget, f"criterion {self.number} exceeded its runtime budget"
        return False


def test_criterion_1_dihedral_example():
    with _Criterion(1, "order-8 dihedral centipedes, two classes, dims {1,0}", 5):
        for k in (3, 4, 5):
            s = centipede_shape(2, k)
            G = shape_automorphism_group(s)
            assert G.order == 8
            pairs = [
                (a, b)
                for a in G.elements
                for b in G.elements
                if a.order() == 2 and b.order() == 2 and (a * b).order() == 4
                and closure([a, b], degree=G.degree).order == 8
            ]
            assert pairs, f"no dihedral presentation pair for k={k}"
            rows = enumerate_nondegenerate(s)
            assert len(rows) == 2
            assert all(deg == 1 for _r, deg, _h in rows)
            assert sorted(h2 for _r, _d, h2 in rows) == [0, 1]
            hot = next(r for r, _d, h2 in rows if h2 == 1)
            # the nonzero class is the sign character killing the rotation:
            # some dihedral pair has chi(s) = chi(t) = -1
            t = character_table(G)
            assert any(
                round(t.value(hot, a).real) == -1 and round(t.value(hot, b).real) == -1
                for a, b in pairs
            )
            assert classify_bounded_cohomology(RepDescriptor.cuspidal(s, hot), 2) == 1


def test_criterion_2_diameter_two():
    with _Criterion(2, "stars: q=2 sign only; q=3 matches projector oracle", 10):
        s2 = star_shape(2)
        rows = enumerate_nondegenerate(s2)
        t2 = character_table(shape_automorphism_group(s2))
        assert t2.group.order == 6
        assert len(rows) == 1
        row, deg, h2 = rows[0]
        assert deg == 1 and h2 == 1
        # the unique entry is the sign character: -1 on some class
        assert any(round(v.real) == -1 for v in t2.characters[row])

        s3 = star_shape(3)
        G = shape_automorphism_group(s3)
        t3 = character_table(G)
        index = {v: i for i, v in enumerate(s3.vertices)}
        subs = maximal_proper_complete_subtrees(s3)
        x, y = canonical_vertex_pair(s3)

        def rank(model, H):
            P = model.subspace_projector(H)
            return int(np.sum(np.linalg.svd(P, compute_uv=False) > 1e-8))

        oracle = []
        for r in range(t3.n_rows):
            model = realize_irrep(t3, r)
            nondeg = all(
                rank(model, pointwise_stabilizer(G, [index[v] for v in sub])) == 0
                for sub in subs
            )
            if nondeg:
                pts = [index[x], index[y]]
                h2 = rank(model, pointwise_stabilizer(G, pts)) - rank(
                    model, setwise_stabilizer(G, pts)
                )
                oracle.append((r, t3.degrees[r], h2))
        assert oracle == enumerate_nondegenerate(s3)


def test_criterion_3_vanishing_grid():
    with _Criterion(3, "all-degree vanishing off the centipede/degree-2 cell", 5):
        for n in range(1, 7):
            for z in (0.5, 0.5 + 2j, 0.3):
                assert classify_bounded_cohomology(RepDescriptor.spherical(2, z), n) == 0
            for sign in "+-":
                assert classify_bounded_cohomology(RepDescriptor.special(2, sign), n) == 0
            ys = y_shape(2)
            for row, _d, _h in enumerate_nondegenerate(ys):
                assert classify_bounded_cohomology(RepDescriptor.cuspidal(ys, row), n) == 0
        for k in (2, 3, 4):
            s = centipede_shape(2, k)
            for row, _d, _h in enumerate_nondegenerate(s):
                for n in (1, 3, 4, 5, 6):
                    assert classify_bounded_cohomology(RepDescriptor.cuspidal(s, row), n) == 0


def test_criterion_4_geometry_exactness():
    with _Criterion(4, "exact geometry on 500 random instances, zero tolerance", 5):
        rng = np.random.default_rng(0)
        for i in range(500):
            q = 2 if i % 2 == 0 else 3
            g = RayPrefix(random_word(rng, q, 12))
            x, y, z = (
                Vertex(random_word(rng, q, int(rng.integers(0, 7)))) for _ in range(3)
            )
            assert busemann(g, x, y) + busemann(g, y, z) == busemann(g, x, z)
            assert busemann(g, x, y) == -busemann(g, y, x)
            assert abs(busemann(g, x, y)) <= distance(x, y)

            w = Vertex(g.word[: int(rng.integers(8, 12))])
            assert cylinder_measure(y, w, q) / cylinder_measure(x, w, q) == poisson_kernel(x, y, g, q)

            rays = random_rays(rng, q, 3, 10)
            m = median(*rays)
            for a in range(3):
                for b in range(a + 1, 3):
                    assert gromov_product(rays[a], rays[b], m) == 0

            wa = Vertex(random_word(rng, q, int(rng.integers(1, 7))))
            xa = Vertex(random_word(rng, q, int(rng.integers(0, 5))))
            below = len(wa.word) < len(xa.word) and xa.word[: len(wa.word)] == wa.word
            if not below and xa != wa:
                from arbocoh.tree import word_children

                assert cylinder_measure(xa, wa, q) == sum(
                    cylinder_measure(xa, Vertex(c), q) for c in word_children(wa.word, q)
                )


def test_criterion_5_flip_suite():
    with _Criterion(5, "1000 random flip witnesses, prefix-exact, 0 failures", 30):
        report = flip_suite(Config(seed=0), n_instances=1000)
        check = report["checks"][0]
        assert check["instances"] == 1000
        assert check["failures"] == 0, check["first_failure"]


def test_criterion_6_hitting_count_constancy():
    with _Criterion(6, "hit counts constant over 50 triples per shape", 60):
        rng = np.random.default_rng(1)
        from arbocoh.shapes import count_hitting

        expected = {"star": 1, "cent3": 3}
        shapes = {
            "star": star_shape(2),
            "cent3": centipede_shape(2, 3),
            "cent4": centipede_shape(2, 4),
            "y": y_shape(2),
        }
        for name, s in shapes.items():
            counts = {
                count_hitting(s, *random_rays(rng, 2, 3, 12)) for _ in range(50)
            }
            assert len(counts) == 1, f"{name}: counts varied: {counts}"
            if name in expected:
                assert counts == {expected[name]}


def test_criterion_7_character_table_validity():
    with _Criterion(7, "orthogonality over the shape catalog; dims = projector ranks", 60):
        shapes = enumerate_complete_shapes(2, 5) + enumerate_complete_shapes(3, 3)
        for s in shapes:
            t = character_table(shape_automorphism_group(s))
            assert t.row_orthogonality_residual() < 1e-9
            assert t.column_orthogonality_residual() < 1e-9
            assert sum(d * d for d in t.degrees) == t.group.order
        for host in (star_shape(2), star_shape(3), centipede_shape(2, 4)):
            G = shape_automorphism_group(host)
            t = character_table(G)
            models = [realize_irrep(t, r) for r in range(t.n_rows)]
            for H in all_subgroups(G):
                for r, model in enumerate(models):
                    P = model.subspace_projector(H)
                    rank = int(np.sum(np.linalg.svd(P, compute_uv=False) > 1e-8))
                    assert rank == invariant_dim(t, r, H)


def test_criterion_8_h2_choice_independence():
    with _Criterion(8, "degree-2 dimension identical over all admissible pairs", 60):
        for q in (2, 3):
            for k in (2, 3, 4):
                s = centipede_shape(q, k)
                t = character_table(shape_automorphism_group(s))
                for row, _deg, h2 in enumerate_nondegenerate(s):
                    dims = {
                        h2_dimension(s, t, row, x, y)
                        for x, y in admissible_vertex_pairs(s)
                    }
                    assert dims == {h2}, f"q={q} k={k} row={row}: {dims}"


def test_criterion_9_spherical_suite():
    with _Criterion(9, "spherical residuals, symmetry, PSD, intertwiner, unitarity", 60):
        for q in (2, 3):
            for z in (0.5, 0.5 + 0.7j, 0.3, 0.3 + 1j * math.pi / math.log(q)):
                assert eigen_residual(q, z, 8) < 1e-10

        for q in (2, 3):
            for z in (0.3, 0.5 + 0.7j, 0.25 + 0.4j):
                a, b = phi_values(q, z, 8), phi_values(q, 1 - z, 8)
                assert max(abs(a[d] - b[d]) for d in range(9)) < 1e-12

        rng = np.random.default_rng(2)
        for z in (0.5, 0.5 + 1.3j, 0.3):
            vs = [Vertex(random_word(rng, 2, int(rng.integers(0, 8)))) for _ in range(20)]
            assert gram_psd_check(2, z, vs) >= -1e-9
        path = [Vertex((0,) * d) for d in range(6)]
        violation = gram_psd_check(2, 2.0, path)
        assert violation < -1e-6  # recorded counterexample set for z = 2

        for n in (1, 2, 3, 4):
            iz = intertwiner_matrix(2, 0.3, n)
            assert intertwiner_defining_residual(iz, n + 2) < 1e-8

        z = 0.5 + 0.3j
        for _ in range(20):
            f = random_isometry(rng, 2, 6, move=int(rng.integers(0, 3)))
            phi = CylinderFunction(
                2, 1, {(i,): complex(rng.standard_normal(), rng.standard_normal()) for i in range(3)}
            )
            psi = CylinderFunction(
                2, 1, {(i,): complex(rng.standard_normal(), rng.standard_normal()) for i in range(3)}
            )
            before = inner_product_z(phi, psi, 2, z)
            after = inner_product_z(
                pi_z_apply(f, phi, 2, z), pi_z_apply(f, psi, 2, z), 2, z
            )
            assert abs(after - before) < 1e-6


def test_criterion_10_witness_suite():
    with _Criterion(10, "witness equivariance/alternation x100; support in hit set", 120):
        depth = 10
        s = centipede_shape(2, 4)
        t = character_table(shape_automorphism_group(s))
        model = realize_irrep(t, kernel_st_row(s))
        ref = reference_configuration(s, depth)
        v = np.array([1.0 + 0j])
        base = witness_cochain(s, model, v, ref.gamma0, ref.gamma1, ref.embedding, depth)
        assert np.allclose(base, v)

        rng = np.random.default_rng(3)
        needed = [ref.gamma0.word, ref.gamma1.word] + sorted(ref.embedding.image_words())
        for _ in range(100):
            f = random_isometry_on(rng, 2, needed, move=int(rng.integers(0, 3)))
            fg, fh = f.apply_ray(ref.gamma0), f.apply_ray(ref.gamma1)
            fe = map_embedding(f, ref.embedding)
            lhs = witness_cochain(s, model, v, fg, fh, fe, depth)
            twist = induced_reference_permutation(ref, ref.embedding, fe, f)
            assert np.max(np.abs(lhs - model.matrix(twist) @ base)) < 1e-10
            alt = witness_cochain(s, model, v, fh, fg, fe, depth)
            assert np.max(np.abs(alt + lhs)) < 1e-10

        for _ in range(3):
            rays = random_rays(rng, 2, 3, depth + 10)
            m = median(*rays)
            for e in enumerate_embeddings(s, m, 6):
                val = (
                    witness_cochain(s, model, v, rays[1], rays[2], e, depth)
                    - witness_cochain(s, model, v, rays[0], rays[2], e, depth)
                    + witness_cochain(s, model, v, rays[0], rays[1], e, depth)
                )
                if np.max(np.abs(val)) > 1e-10:
                    assert hits(e, *rays), "coboundary supported off the hitting set"
