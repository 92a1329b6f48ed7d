"""Complex character tables and explicit unitary irreducible models.

Tables are computed by the class-algebra method: the structure constants
of the class sums give commuting integer matrices whose simultaneous
eigenvectors are the central characters; degrees follow from the second
orthogonality relation.  A random linear combination separates the
eigenspaces; the eigenproblem runs in 60-digit arithmetic and entries are
snapped to nearby Gaussian integers when that is exact (it is for every
tree-automorphism group that arises here).  Row/column orthogonality is
validated on the final table and a failed separation retries with a fresh
combination before raising NumericalDegeneracy.

realize_irrep builds actual unitary matrices: project the regular
representation onto the chosen isotypic component, then split off a single
irreducible copy as an eigenspace of a random averaged (hence commuting)
Hermitian operator.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

import mpmath
import numpy as np

from .errors import NonIntegralDimension, NumericalDegeneracy
from .perm import PermGroup, Permutation, check_subgroup, conjugacy_classes

_DPS = 60
_SNAP_TOL = 1e-20
_ORTHO_TOL = 1e-9


@dataclass(frozen=True)
class CharacterTable:
    """Rows are irreducible characters, columns are conjugacy classes."""

    group: PermGroup
    classes: tuple  # tuple of tuples of Permutation
    characters: np.ndarray = field(compare=False)  # complex, rows x classes
    degrees: tuple = ()

    @property
    def n_rows(self) -> int:
        return len(self.degrees)

    def class_sizes(self) -> tuple:
        return tuple(len(c) for c in self.classes)

    def class_index(self, p: Permutation) -> int:
        return self._class_of()[p]

    def _class_of(self) -> dict:
        if not hasattr(self, "_class_map"):
            object.__setattr__(
                self,
                "_class_map",
                {p: i for i, c in enumerate(self.classes) for p in c},
            )
        return self._class_map

    def value(self, row: int, p: Permutation) -> complex:
        return complex(self.characters[row, self.class_index(p)])

    def row_orthogonality_residual(self) -> float:
        X = self.characters
        n = np.array(self.class_sizes(), dtype=float)
        gram = (X * n) @ X.conj().T / self.group.order
        return float(np.max(np.abs(gram - np.eye(self.n_rows))))

    def column_orthogonality_residual(self) -> float:
        X = self.characters
        n = np.array(self.class_sizes(), dtype=float)
        gram = X.conj().T @ X  # (l, l') -> sum_r chi_r(l)* chi_r(l')
        target = np.diag(self.group.order / n)
        return float(np.max(np.abs((gram - target) * (n[:, None] / self.group.order))))

    def to_json(self) -> dict:
        return {
            "order": self.group.order,
            "degrees": list(self.degrees),
            "classes": [
                {"size": len(c), "representative": list(c[0].mapping)}
                for c in self.classes
            ],
            "characters": [
                [[float(v.real), float(v.imag)] for v in row] for row in self.characters
            ],
        }


def _class_constants(G: PermGroup, classes):
    """c[i][j][l] = #{x in C_i : x^{-1} z_l in C_j} for class reps z_l."""
    k = len(classes)
    class_of = {p: i for i, c in enumerate(classes) for p in c}
    reps = [c[0] for c in classes]
    c = [[[0] * k for _ in range(k)] for _ in range(k)]
    for i in range(k):
        for x in classes[i]:
            xi = x.inverse()
            for ell in range(k):
                j = class_of[xi * reps[ell]]
                c[i][j][ell] += 1
    return c


@functools.lru_cache(maxsize=None)
def character_table(G: PermGroup, retries: int = 8, seed: int = 12345) -> CharacterTable:
    """Full character table of G; see the module docstring."""
    classes = tuple(conjugacy_classes(G))
    k = len(classes)
    sizes = [len(c) for c in classes]
    order = G.order
    if k == 1:
        return CharacterTable(G, classes, np.array([[1.0 + 0j]]), (1,))

    cc = _class_constants(G, classes)
    rng = np.random.default_rng(seed)

    with mpmath.workdps(_DPS):
        B = [mpmath.matrix(k, k) for _ in range(k)]
        for i in range(k):
            for j in range(k):
                for ell in range(k):
                    B[i][j, ell] = cc[i][j][ell]

        last_err = None
        for _ in range(retries):
            coeffs = rng.integers(1, 10**6, size=k)
            M = mpmath.matrix(k, k)
            for i in range(k):
                M += int(coeffs[i]) * B[i]
            try:
                E, ER = mpmath.eig(M, left=False, right=True)
            except Exception as exc:  # singular iterations are a retry case
                last_err = str(exc)
                continue
            sep = min(
                abs(E[a] - E[b]) for a in range(k) for b in range(a + 1, k)
            )
            scale = max(abs(e) for e in E) + 1
            if sep < scale * mpmath.mpf(10) ** (-_DPS // 2):
                last_err = f"eigenvalue separation {sep}"
                continue
            try:
                rows = _rows_from_eigenvectors(E, ER, B, sizes, order, k)
            except NumericalDegeneracy as exc:
                last_err = str(exc)
                continue
            table = CharacterTable(G, classes, rows[0], rows[1])
            if (
                table.row_orthogonality_residual() < _ORTHO_TOL
                and table.column_orthogonality_residual() < _ORTHO_TOL
                and sum(d * d for d in table.degrees) == order
            ):
                return table
            last_err = "orthogonality validation failed"
        raise NumericalDegeneracy(f"character table failed after {retries} tries: {last_err}")


def _rows_from_eigenvectors(E, ER, B, sizes, order, k):
    rows = []
    for col in range(k):
        v = [ER[r, col] for r in range(k)]
        if abs(v[0]) < mpmath.mpf(10) ** (-_DPS // 2):
            raise NumericalDegeneracy("eigenvector vanishes at the identity class")
        w = [v[r] / v[0] for r in range(k)]
        s = sum(abs(w[r]) ** 2 / sizes[r] for r in range(k))
        deg_f = mpmath.sqrt(order / s)
        deg = int(mpmath.nint(deg_f.real))
        if abs(deg_f - deg) > 1e-10 or deg < 1:
            raise NumericalDegeneracy(f"non-integral degree {deg_f}")
        chi = [w[r] * deg / sizes[r] for r in range(k)]
        chi = [_snap(x) for x in chi]
        rows.append((deg, chi))
    rows.sort(key=lambda t: (t[0], [(float(x.real), float(x.imag)) for x in t[1]]))
    mat = np.array([[complex(x) for x in chi] for _, chi in rows])
    degrees = tuple(d for d, _ in rows)
    return mat, degrees


def _snap(x):
    """Round to the nearest Gaussian integer when that is exact to working
    precision; otherwise keep the high-precision value."""
    re, im = mpmath.nint(x.real), mpmath.nint(x.imag)
    if abs(x.real - re) < _SNAP_TOL and abs(x.imag - im) < _SNAP_TOL:
        return mpmath.mpc(re, im)
    return x


def invariant_dim(t: CharacterTable, row: int, H: PermGroup) -> int:
    """dim of the H-fixed subspace of the row's irreducible:
    (1/|H|) sum over H of the character."""
    check_subgroup(t.group, H)
    total = 0.0 + 0.0j
    for h in H.elements:
        total += t.characters[row, t.class_index(h)]
    val = total / H.order
    if abs(val.imag) > 1e-6 or abs(val.real - round(val.real)) > 1e-6:
        raise NonIntegralDimension(f"invariant dimension {val} is not an integer")
    return int(round(val.real))


@dataclass(frozen=True)
class IrrepModel:
    """Unitary matrices for one irreducible row, indexed by group element."""

    table: CharacterTable
    row: int
    matrices: dict = field(compare=False)

    @property
    def degree(self) -> int:
        return self.table.degrees[self.row]

    def matrix(self, p: Permutation) -> np.ndarray:
        return self.matrices[p]

    def subspace_projector(self, H: PermGroup) -> np.ndarray:
        """Orthogonal projector onto the H-fixed subspace."""
        d = self.degree
        P = np.zeros((d, d), dtype=complex)
        for h in H.elements:
            P += self.matrices[h]
        return P / H.order


@functools.lru_cache(maxsize=None)
def realize_irrep(t: CharacterTable, row: int, seed: int = 7, tol: float = 1e-10) -> IrrepModel:
    """Explicit unitary matrices realizing one character row."""
    G = t.group
    d = t.degrees[row]
    if d == 1:
        mats = {
            g: np.array([[complex(t.characters[row, t.class_index(g)])]])
            for g in G.elements
        }
        return IrrepModel(t, row, mats)

    order = G.order
    elems = list(G.elements)
    idx = {g: i for i, g in enumerate(elems)}
    reg = {}
    for g in elems:
        P = np.zeros((order, order))
        for h in elems:
            P[idx[g * h], idx[h]] = 1.0
        reg[g] = P

    chi = {g: complex(t.characters[row, t.class_index(g)]) for g in elems}
    proj = np.zeros((order, order), dtype=complex)
    for g in elems:
        proj += np.conj(chi[g]) * reg[g]
    proj *= d / order

    vals, vecs = np.linalg.eigh(proj)
    keep = vals > 0.5
    if int(keep.sum()) != d * d:
        raise NumericalDegeneracy(
            f"isotypic projector rank {int(keep.sum())} != degree^2 {d * d}"
        )
    basis = vecs[:, keep]  # order x d^2, orthonormal
    sigma = {g: basis.conj().T @ reg[g] @ basis for g in elems}

    # split off one irreducible copy: eigenspace of a random averaged
    # Hermitian operator, which lies in the commutant of sigma
    rng = np.random.default_rng(seed)
    for _ in range(8):
        X = rng.standard_normal((d * d, d * d)) + 1j * rng.standard_normal((d * d, d * d))
        X = X + X.conj().T
        T = np.zeros_like(X)
        for g in elems:
            T += sigma[g] @ X @ sigma[g].conj().T
        T /= order
        tvals, tvecs = np.linalg.eigh(T)
        groups = _group_close(tvals, 1e-8)
        if all(len(g) == d for g in groups):
            C = tvecs[:, groups[0]]  # d^2 x d
            mats = {g: C.conj().T @ sigma[g] @ C for g in elems}
            model = IrrepModel(t, row, mats)
            _validate_model(model, chi, tol)
            return model
    raise NumericalDegeneracy("could not split a single irreducible copy")


def _group_close(vals, tol):
    groups = [[0]]
    for i in range(1, len(vals)):
        if vals[i] - vals[groups[-1][-1]] < tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def _validate_model(model: IrrepModel, chi: dict, tol: float):
    d = model.degree
    eye = np.eye(d)
    for g, M in model.matrices.items():
        if np.max(np.abs(M @ M.conj().T - eye)) > tol:
            raise NumericalDegeneracy(f"model not unitary at {g}")
        if abs(np.trace(M) - chi[g]) > tol:
            raise NumericalDegeneracy(f"trace mismatch at {g}")
