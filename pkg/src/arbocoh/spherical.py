"""Spherical functions, the boundary intertwiner, and the twisted action.

The radial eigenfunctions of the neighbor-averaging operator with
eigenvalue mu(z) = (q^z + q^(1-z))/(q+1) are evaluated exactly as finite
sums: the boundary integral of the z-th power of the Radon-Nikodym kernel
splits over the levels at which a boundary ray leaves the geodesic to the
evaluation vertex, and each level carries an exact rational mass times an
integer power q^(z*b).  The same level decomposition gives exact cylinder
integrals, from which the intertwiner exchanging the z and 1-z pairings is
assembled as an (over-determined) linear system on cylinder coordinates.

Positive definiteness is probed through Gram matrices of the radial kernel
and through the inner product (f, g)_z = integral of (I_z f) conj(g); the
twisted boundary action multiplies by the kernel power and precomposes
with the inverse isometry, refining cylinder depth until both factors are
constant on every output cell.
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import IllConditioned, InsufficientDepth, OutOfDomain
from .tree import (
    O,
    RayPrefix,
    TreeIsometry,
    Vertex,
    busemann,
    cylinder_measure,
    lcp_len,
    word_children,
    word_distance,
)


def mu_of_z(q: int, z: complex) -> complex:
    """Averaging-operator eigenvalue (q^z + q^(1-z)) / (q+1)."""
    return (q**complex(z) + q ** (1 - complex(z))) / (q + 1)


def is_admissible(q: int, z: complex, tol: float = 1e-12) -> bool:
    """Positive definiteness criterion: Re z = 1/2, or 0 <= Re z <= 1 with
    Im z an integer multiple of pi/ln q."""
    z = complex(z)
    if abs(z.real - 0.5) <= tol:
        return True
    if -tol <= z.real <= 1 + tol:
        step = math.pi / math.log(q)
        k = round(z.imag / step)
        return abs(z.imag - k * step) <= tol
    return False


@dataclass(frozen=True)
class SphericalParam:
    q: int
    z: complex

    @property
    def admissible(self) -> bool:
        return is_admissible(self.q, self.z)

    @property
    def mu(self) -> complex:
        return mu_of_z(self.q, self.z)


@dataclass(frozen=True)
class RadialFunction:
    """Values at distances 0..D from the basepoint."""

    values: tuple

    def __getitem__(self, d: int) -> complex:
        return self.values[d]

    @property
    def max_distance(self) -> int:
        return len(self.values) - 1


def _level_masses(q: int, d: int):
    """Exact masses m_j of the boundary sets where a ray's word agrees with
    a fixed depth-d vertex for exactly j letters; the kernel exponent on
    that set is 2j - d."""
    if d == 0:
        return [(Fraction(1), 0)]
    out = [(Fraction(q, q + 1), -d)]
    for j in range(1, d):
        out.append((Fraction(q - 1, (q + 1) * q**j), 2 * j - d))
    out.append((Fraction(1, (q + 1) * q ** (d - 1)), d))
    return out


def phi_values(q: int, z: complex, D: int) -> RadialFunction:
    """Spherical function values phi_z(0..D), each an exact finite sum of
    rational masses times q^(z*b)."""
    vals = []
    for d in range(D + 1):
        total = 0j
        for mass, b in _level_masses(q, d):
            total += float(mass) * cmath.exp(complex(z) * b * math.log(q))
        vals.append(total)
    return RadialFunction(tuple(vals))


def eigen_residual(q: int, z: complex, D: int) -> float:
    """Worst deviation of phi_z from the averaging eigen-relation up to D."""
    phi = phi_values(q, z, D)
    mu = mu_of_z(q, z)
    worst = abs(phi[1] - mu * phi[0])
    for d in range(1, D):
        lhs = (phi[d - 1] + q * phi[d + 1]) / (q + 1)
        worst = max(worst, abs(lhs - mu * phi[d]))
    return worst


def gram_psd_check(q: int, z: complex, vertices) -> float:
    """Minimum eigenvalue of the Hermitian Gram matrix of the radial kernel
    over the given vertices."""
    words = [v.word for v in vertices]
    n = len(words)
    dmax = max(
        (word_distance(a, b) for a in words for b in words), default=0
    )
    phi = phi_values(q, z, dmax)
    K = np.array(
        [[phi[word_distance(a, b)] for b in words] for a in words], dtype=complex
    )
    K = (K + K.conj().T) / 2
    return float(np.linalg.eigvalsh(K)[0])


# -- locally constant boundary functions --------------------------------------


@dataclass(frozen=True)
class CylinderFunction:
    """A function on the boundary, constant on each depth-n cylinder."""

    q: int
    depth: int
    coeffs: tuple  # sorted (word, complex) pairs

    def __init__(self, q, depth, coeffs):
        items = dict(coeffs)
        words = sorted(_depth_words(q, depth))
        full = tuple((w, complex(items.get(w, 0.0))) for w in words)
        extra = set(items) - set(words)
        if extra:
            raise ValueError(f"coefficients on non-depth-{depth} words: {extra}")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "depth", depth)
        object.__setattr__(self, "coeffs", full)

    @staticmethod
    def constant(q: int, value: complex, depth: int = 0) -> "CylinderFunction":
        return CylinderFunction(q, 0, {(): value}).refine(depth)

    def coeff_map(self) -> dict:
        return dict(self.coeffs)

    def value_on(self, word) -> complex:
        """Value on any cylinder at least as deep as the function."""
        if len(word) < self.depth:
            raise InsufficientDepth("cylinder shallower than the function depth")
        return self.coeff_map()[word[: self.depth]]

    def refine(self, depth: int) -> "CylinderFunction":
        if depth < self.depth:
            raise ValueError("refinement cannot decrease depth")
        cur = self.coeff_map()
        for _ in range(depth - self.depth):
            nxt = {}
            for w, c in cur.items():
                for child in word_children(w, self.q):
                    nxt[child] = c
            cur = nxt
        return CylinderFunction(self.q, depth, cur)

    def vector(self) -> np.ndarray:
        return np.array([c for _, c in self.coeffs])


def _depth_words(q: int, depth: int):
    words = [()]
    for _ in range(depth):
        words = [c for w in words for c in word_children(w, q)]
    return words


def cylinder_poisson_integral(q: int, z: complex, x: Vertex, cyl) -> complex:
    """Exact integral of the z-th kernel power P^z(o, x, .) over the
    boundary cylinder at the given word."""
    w = tuple(cyl)
    xw = x.word
    if len(w) == 0:
        if len(xw) == 0:
            return 1.0 + 0j
        return sum(cylinder_poisson_integral(q, z, x, c) for c in word_children(w, q))
    k = lcp_len(xw, w)
    logq = math.log(q)
    if k == len(xw):
        mass = cylinder_measure(O, Vertex(w), q)
        return float(mass) * cmath.exp(complex(z) * len(xw) * logq)
    if k < len(w):
        mass = cylinder_measure(O, Vertex(w), q)
        return float(mass) * cmath.exp(complex(z) * (2 * k - len(xw)) * logq)
    return sum(cylinder_poisson_integral(q, z, x, c) for c in word_children(w, q))


@dataclass(frozen=True)
class Intertwiner:
    """Matrix exchanging the z and 1-z kernel pairings on depth-n cylinder
    coordinates, with the residual of its defining linear system."""

    q: int
    z: complex
    depth: int
    cylinders: tuple
    matrix: np.ndarray
    residual: float

    def apply(self, f: CylinderFunction) -> CylinderFunction:
        f = f.refine(self.depth)
        out = self.matrix @ f.vector()
        return CylinderFunction(self.q, self.depth, dict(zip(self.cylinders, out)))


def _pairing_matrix(q, z, probes, cylinders):
    return np.array(
        [[cylinder_poisson_integral(q, z, Vertex(x), c) for c in cylinders] for x in probes]
    )


def _check_mu(q, z):
    mu = mu_of_z(q, z)
    if abs(mu.imag) > 1e-9 or not -1 + 1e-12 < mu.real < 1 - 1e-12:
        raise ValueError(f"intertwiner needs mu(z) in (-1, 1), got {mu}")


def _solve_exchange(q: int, a: complex, b: complex, n: int, tol: float):
    """Matrix X with W^a X = W^b on all probe vertices of the radius-n
    ball, by least squares; returns (cylinders, X, residual)."""
    cylinders = tuple(_depth_words(q, n))
    probes = [w for d in range(n + 1) for w in _depth_words(q, d)]
    Wa = _pairing_matrix(q, a, probes, cylinders)
    Wb = _pairing_matrix(q, b, probes, cylinders)
    X, *_ = np.linalg.lstsq(Wa, Wb, rcond=None)
    residual = float(np.max(np.abs(Wa @ X - Wb)))
    if residual > tol:
        raise IllConditioned(f"intertwiner residual {residual} exceeds {tol}")
    return cylinders, X, residual


@functools.lru_cache(maxsize=None)
def intertwiner_matrix(
    q: int, z: complex, n: int, tol: float = 1e-8
) -> Intertwiner:
    """The operator exchanging the z and 1-z kernel pairings:
    integral of P^z (I_z f) equals integral of P^(1-z) f at every probe."""
    _check_mu(q, z)
    if n < 1:
        raise ValueError("depth must be >= 1")
    cylinders, X, residual = _solve_exchange(q, complex(z), 1 - complex(z), n, tol)
    return Intertwiner(q, complex(z), n, cylinders, X, residual)


@functools.lru_cache(maxsize=None)
def _inner_pairing(q: int, z: complex, n: int, tol: float = 1e-8) -> Intertwiner:
    """Operator of the invariant Hermitian form: solves
    W^(conj z) X = W^(1-z).  For real z this is the intertwiner itself; on
    the unitary principal series (Re z = 1/2) it is the identity and the
    form reduces to the plain boundary L^2 product, which is the invariant
    one there."""
    _check_mu(q, z)
    z = complex(z)
    cylinders, X, residual = _solve_exchange(q, z.conjugate(), 1 - z, n, tol)
    return Intertwiner(q, z, n, cylinders, X, residual)


def intertwiner_defining_residual(iz: Intertwiner, probe_radius: int) -> float:
    """Residual of the defining identity over all probes in a (possibly
    deeper) ball; an over-determination check."""
    probes = [w for d in range(probe_radius + 1) for w in _depth_words(iz.q, d)]
    Wz = _pairing_matrix(iz.q, iz.z, probes, iz.cylinders)
    W1z = _pairing_matrix(iz.q, 1 - iz.z, probes, iz.cylinders)
    return float(np.max(np.abs(Wz @ iz.matrix - W1z)))


def inner_product_z(
    f: CylinderFunction, g: CylinderFunction, q: int, z: complex
) -> complex:
    """The invariant inner product: integral of (A_z f) conj(g) against the
    visual measure, A_z the pairing operator of _inner_pairing (equal to
    I_z whenever z is real)."""
    depth = max(f.depth, g.depth, 1)
    az = _inner_pairing(q, z, depth)
    fv = az.apply(f).vector()
    gv = g.refine(depth).vector()
    mass = float(Fraction(1, q + 1) * Fraction(1, q) ** (depth - 1))
    return complex(np.sum(fv * np.conj(gv)) * mass)


def pi_z_apply(
    f: TreeIsometry, phi: CylinderFunction, q: int, z: complex, max_extra: int = 8
) -> CylinderFunction:
    """Twisted boundary action: gamma -> P^z(o, f o, gamma) phi(f^-1 gamma),
    returned at the shallowest depth where both factors are cylinder-wise
    constant."""
    fo = f.apply_vertex(O)
    finv = f.inverse()
    logq = math.log(q)
    for depth in range(phi.depth, phi.depth + max_extra + 1):
        try:
            out = {}
            for w in _depth_words(q, max(depth, 1)):
                b = busemann(RayPrefix(w), O, fo)
                pre = finv.apply_ray(RayPrefix(w))
                out[w] = cmath.exp(complex(z) * b * logq) * phi.value_on(pre.word)
            return CylinderFunction(q, max(depth, 1), out)
        except (InsufficientDepth, OutOfDomain):
            continue
    raise InsufficientDepth(
        "isometry domain or cylinder depth too small for the twisted action"
    )
