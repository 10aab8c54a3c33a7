"""Rigidity matrices, equilibrium stresses, stress matrices and certificates.

Two coordinate orders are used for vectors in R^{3n}:

* vertex order ``(x_0, y_0, z_0, x_1, ...)`` indexes the columns of the
  rigidity matrices;
* block order ``(x_0..x_{n-1}, y_0..y_{n-1}, z_0..z_{n-1})`` indexes the
  stress matrix, the configuration matrix and the energy gradient.

:func:`vertex_to_block` is the bridge between the two.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import numeric
from .errors import (
    CertificateRefused,
    DegenerateConfigurationError,
    GenericityError,
    ParameterError,
)
from .graph import Graph, is_k_connected, remove_edge
from .numeric import DEFAULT_TOL, exact_array
from .surface import (
    Kind,
    SurfaceFamily,
    constraint_value,
    energy_weight,
    induced_family,
    sample_generic_points,
    tangency_vector,
)

ON_SURFACE_TOL = 1e-8


def _is_exact_scalar(x) -> bool:
    return isinstance(x, (Fraction, int)) and not isinstance(x, bool)


@dataclass(frozen=True)
class Framework:
    """A graph placed on a surface family, one point per vertex."""

    graph: Graph
    points: tuple
    family: SurfaceFamily
    exact: bool = field(init=False, compare=False)

    def __post_init__(self):
        pts = tuple(tuple(p) for p in self.points)
        n = self.graph.n
        if n < 1:
            raise ParameterError("a framework needs at least one vertex")
        if len(pts) != n or self.family.n != n:
            raise ParameterError(
                f"graph has {n} vertices but {len(pts)} points and {self.family.n} radii were given")
        if any(len(p) != 3 for p in pts):
            raise ParameterError("every point must have three coordinates")
        exact = all(_is_exact_scalar(c) for p in pts for c in p) and all(
            _is_exact_scalar(r) for r in self.family.radii)
        if exact:
            pts = tuple(tuple(Fraction(c) for c in p) for p in pts)
            fam = SurfaceFamily(self.family.kind, tuple(Fraction(r) for r in self.family.radii),
                                Fraction(self.family.alpha), Fraction(self.family.beta))
        else:
            pts = tuple(tuple(float(c) for c in p) for p in pts)
            fam = self.family.to_float()
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "family", fam)
        object.__setattr__(self, "exact", exact)
        for i, p in enumerate(pts):
            _check_regular(fam.kind, i, p)
            h = constraint_value(fam, i, p)
            if exact:
                if h != 0:
                    raise ParameterError(f"vertex {i} is not on its surface (residual {h})")
            elif abs(h) > ON_SURFACE_TOL * max(1.0, fam.radii[i], sum(c * c for c in p)):
                raise ParameterError(f"vertex {i} is not on its surface (residual {h:.3g})")

    @classmethod
    def induced(cls, graph: Graph, points, kind, alpha=None, beta=None) -> "Framework":
        """Framework on the family induced by ``points``."""
        kw = {}
        if alpha is not None:
            kw["alpha"] = alpha
        if beta is not None:
            kw["beta"] = beta
        return cls(graph, tuple(points), induced_family(kind, points, **kw))

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m

    @property
    def kind(self) -> Kind:
        return self.family.kind

    def to_float(self) -> "Framework":
        pts = tuple(tuple(float(c) for c in p) for p in self.points)
        return Framework(self.graph, pts, self.family.to_float())


def _check_regular(kind, i, p):
    x, y, z = p
    if kind is Kind.ELLIPSOID:
        if x == 0 and y == 0 and z == 0:
            raise DegenerateConfigurationError(f"vertex {i} is at the origin", vertex=i)
    elif x == 0 and y == 0:
        what = "the cone apex" if kind is Kind.CONE else "the z-axis"
        raise DegenerateConfigurationError(f"vertex {i} lies on {what}", vertex=i)


@dataclass(frozen=True)
class Stress:
    """Edge weights ``omega`` (in graph edge order) and vertex weights ``lam``."""

    omega: tuple
    lam: tuple

    def __post_init__(self):
        object.__setattr__(self, "omega", tuple(self.omega))
        object.__setattr__(self, "lam", tuple(self.lam))

    @classmethod
    def from_vector(cls, v, m: int) -> "Stress":
        v = list(v)
        return cls(tuple(v[:m]), tuple(v[m:]))

    @classmethod
    def zero(cls, m: int, n: int, exact: bool = True) -> "Stress":
        z = Fraction(0) if exact else 0.0
        return cls((z,) * m, (z,) * n)

    def vector(self) -> list:
        return list(self.omega) + list(self.lam)

    @property
    def exact(self) -> bool:
        return all(_is_exact_scalar(x) for x in self.vector())

    def scaled(self, c) -> "Stress":
        return Stress(tuple(c * w for w in self.omega), tuple(c * x for x in self.lam))

    def plus(self, other: "Stress") -> "Stress":
        return Stress(tuple(a + b for a, b in zip(self.omega, other.omega)),
                      tuple(a + b for a, b in zip(self.lam, other.lam)))


def _array(rows, exact):
    return exact_array(rows) if exact else np.array(rows, dtype=float)


def _zero(exact):
    return Fraction(0) if exact else 0.0


def vertex_to_block(n: int) -> np.ndarray:
    """Index array ``perm`` with ``block_vector = vertex_vector[perm]``."""
    return np.array([3 * i + k for k in range(3) for i in range(n)])


def block_vector(points) -> list:
    """Coordinates in block order ``(x..., y..., z...)``."""
    return [p[k] for k in range(3) for p in points]


def euclidean_rigidity_matrix(fw: Framework) -> np.ndarray:
    n = fw.n
    rows = []
    for i, j in fw.graph.edges:
        row = [_zero(fw.exact)] * (3 * n)
        for k in range(3):
            d = fw.points[i][k] - fw.points[j][k]
            row[3 * i + k] = d
            row[3 * j + k] = -d
        rows.append(row)
    if not rows:
        return _array(np.zeros((0, 3 * n)), fw.exact)
    return _array(rows, fw.exact)


def surface_block(fw: Framework) -> np.ndarray:
    n = fw.n
    rows = []
    for i, p in enumerate(fw.points):
        row = [_zero(fw.exact)] * (3 * n)
        row[3 * i:3 * i + 3] = tangency_vector(fw.family, i, p)
        rows.append(row)
    return _array(rows, fw.exact)


def surface_rigidity_matrix(fw: Framework) -> np.ndarray:
    """``(m + n) x 3n`` matrix: bar rows over the surface tangency rows."""
    return np.vstack([euclidean_rigidity_matrix(fw), surface_block(fw)])


def rigidity_rank(fw: Framework, tol: float = DEFAULT_TOL) -> int:
    return numeric.rank(surface_rigidity_matrix(fw), tol)


def is_infinitesimally_rigid(fw: Framework, tol: float = DEFAULT_TOL) -> bool:
    return rigidity_rank(fw, tol) == 3 * fw.n - fw.family.ell


def equilibrium_stress_basis(fw: Framework, tol: float = DEFAULT_TOL) -> list[Stress]:
    basis = numeric.cokernel_basis(surface_rigidity_matrix(fw), tol)
    return [Stress.from_vector(v, fw.m) for v in basis]


def _check_sizes(fw, s):
    if len(s.omega) != fw.m or len(s.lam) != fw.n:
        raise ParameterError(
            f"stress has {len(s.omega)} edge and {len(s.lam)} vertex weights; "
            f"framework has {fw.m} edges and {fw.n} vertices")


def equilibrium_residual(fw: Framework, s: Stress) -> np.ndarray:
    """The row vector ``(omega, lambda) . R_F``; zero iff ``s`` is an equilibrium stress."""
    _check_sizes(fw, s)
    R = surface_rigidity_matrix(fw)
    v = exact_array(s.vector()) if fw.exact and s.exact else np.array(s.vector(), dtype=float)
    if not (fw.exact and s.exact):
        R = R.astype(float)
    return v @ R


def verify_equilibrium(fw: Framework, s: Stress, tol: float = DEFAULT_TOL) -> bool:
    res = equilibrium_residual(fw, s)
    if res.dtype == object:
        return all(x == 0 for x in res)
    R = surface_rigidity_matrix(fw).astype(float)
    bound = tol * np.linalg.norm(np.array(s.vector(), dtype=float)) * np.linalg.norm(R)
    return bool(np.linalg.norm(res) <= bound)


def laplacian(graph: Graph, omega, exact: bool) -> np.ndarray:
    """Weighted Laplacian: off-diagonal ``-omega_ij``, diagonal row sums of ``omega``."""
    n = graph.n
    L = [[_zero(exact)] * n for _ in range(n)]
    for (i, j), w in zip(graph.edges, omega):
        L[i][j] -= w
        L[j][i] -= w
        L[i][i] += w
        L[j][j] += w
    return _array(L, exact)


def _block_diag(a, b, c):
    n = a.shape[0]
    out = np.zeros((3 * n, 3 * n), dtype=a.dtype)
    if a.dtype == object:
        out[:] = Fraction(0)
    out[:n, :n] = a
    out[n:2 * n, n:2 * n] = b
    out[2 * n:, 2 * n:] = c
    return out


def _stress_matrix(graph: Graph, family: SurfaceFamily, s: Stress, exact: bool) -> np.ndarray:
    if not exact:
        s = Stress(tuple(float(w) for w in s.omega), tuple(float(x) for x in s.lam))
        family = family.to_float()
    omega = laplacian(graph, s.omega, exact)
    lam = _array(np.diag(np.array(s.lam, dtype=object)), exact)
    if family.kind is Kind.CYLINDER:
        return _block_diag(omega + lam, omega + lam, omega)
    if family.kind is Kind.CONE:
        delta = _array(np.diag(np.array([x * r for x, r in zip(s.lam, family.radii)], dtype=object)), exact)
        return _block_diag(omega + lam, omega + lam, omega - delta)
    return _block_diag(omega + lam, omega + family.alpha * lam, omega + family.beta * lam)


def stress_matrix(fw: Framework, s: Stress) -> np.ndarray:
    """The ``3n x 3n`` block-diagonal stress matrix, in block coordinate order."""
    _check_sizes(fw, s)
    return _stress_matrix(fw.graph, fw.family, s, fw.exact and s.exact)


def stress_rank(fw: Framework, s: Stress, tol: float = DEFAULT_TOL) -> int:
    return numeric.rank(stress_matrix(fw, s), tol)


def configuration_matrix(fw: Framework) -> np.ndarray:
    n = fw.n
    z0 = _zero(fw.exact)
    xs = [p[0] for p in fw.points]
    ys = [p[1] for p in fw.points]
    zs = [p[2] for p in fw.points]
    zero = [z0] * n
    rows = [xs + zero + zero, zero + ys + zero, zero + zero + zs]
    if fw.kind in (Kind.CYLINDER, Kind.CONE):
        rows += [ys + zero + zero, zero + xs + zero]
    if fw.kind is Kind.CYLINDER:
        one = Fraction(1) if fw.exact else 1.0
        rows.append(zero + zero + [one] * n)
    return _array(rows, fw.exact)


def is_fully_realised(fw: Framework, tol: float = DEFAULT_TOL) -> bool:
    return numeric.rank(configuration_matrix(fw), tol) == fw.family.mu


def energy(points, family: SurfaceFamily, graph: Graph, s: Stress):
    """Stress energy: weighted squared edge lengths plus the vertex terms ``lambda_i k(q_i)``.

    ``points`` need not lie on ``family``.
    """
    total = 0
    for (i, j), w in zip(graph.edges, s.omega):
        total += w * sum((a - b) * (a - b) for a, b in zip(points[i], points[j]))
    for i, (lam, p) in enumerate(zip(s.lam, points)):
        total += lam * energy_weight(family, i, p)
    return total


def _exact_inputs(points, family, s):
    return (all(_is_exact_scalar(c) for p in points for c in p)
            and all(_is_exact_scalar(r) for r in family.radii) and s.exact)


def energy_quadratic_form(points, family: SurfaceFamily, graph: Graph, s: Stress):
    """``x^T Omega_F x`` with ``x`` the block-ordered coordinates of ``points``."""
    exact = _exact_inputs(points, family, s)
    M = _stress_matrix(graph, family, s, exact)
    x = exact_array(block_vector(points)) if exact else np.array(block_vector(points), dtype=float)
    return x @ M @ x


def energy_gradient(points, family: SurfaceFamily, graph: Graph, s: Stress) -> np.ndarray:
    """Gradient ``2 Omega_F x`` of :func:`energy`, in block coordinate order."""
    exact = _exact_inputs(points, family, s)
    M = _stress_matrix(graph, family, s, exact)
    x = exact_array(block_vector(points)) if exact else np.array(block_vector(points), dtype=float)
    return 2 * (M @ x)


def affine_image(fw: Framework, params) -> list[tuple]:
    """Image of the points under ``q = A p + (0, 0, f)``, ``A = [[a, b, 0], [c, d, 0], [0, 0, e]]``.

    Cones and ellipsoids need ``f = 0``; ellipsoids also need ``b = c = 0``.
    The result is not checked to lie on the family.
    """
    a, b, c, d, e, f = params
    if fw.kind in (Kind.CONE, Kind.ELLIPSOID) and f != 0:
        raise ParameterError(f"translation f must be 0 on a {fw.kind.value}")
    if fw.kind is Kind.ELLIPSOID and (b != 0 or c != 0):
        raise ParameterError("b and c must be 0 on an ellipsoid")
    return [(a * x + b * y, c * x + d * y, e * z + f) for x, y, z in fw.points]


def max_rank_stress(fw: Framework, rng, attempts: int = 20,
                    tol: float = DEFAULT_TOL) -> tuple[Stress, int]:
    """Random combination of the equilibrium stresses with the largest stress-matrix rank.

    Exact frameworks draw integer coefficients so the result stays exact.
    The first combination to reach the best rank wins.
    """
    if attempts < 1:
        raise ParameterError("attempts must be at least 1")
    basis = equilibrium_stress_basis(fw, tol)
    if not basis:
        return Stress.zero(fw.m, fw.n, fw.exact), 0
    ceiling = 3 * fw.n - numeric.rank(configuration_matrix(fw), tol)
    if len(basis) == 1:
        return basis[0], stress_rank(fw, basis[0], tol)
    vectors = np.array([b.vector() for b in basis], dtype=object if fw.exact else float)
    best, best_rank = None, -1
    for _ in range(attempts):
        if fw.exact:
            t = exact_array([int(c) for c in rng.integers(-1000, 1001, size=len(basis))])
        else:
            t = rng.standard_normal(len(basis))
        s = Stress.from_vector(t @ vectors, fw.m)
        r = stress_rank(fw, s, tol)
        if r > best_rank:
            best, best_rank = s, r
        if best_rank >= ceiling:
            break
    return best, best_rank


class Theorem(str, enum.Enum):
    MAX_RANK_GENERIC = "MAX_RANK_GENERIC"
    PSD_MAX_RANK = "PSD_MAX_RANK"
    NO_CERTIFICATE = "NO_CERTIFICATE"


@dataclass
class Certificate:
    kind: Kind
    n: int
    m: int
    theorem: Theorem
    target_rank: int
    stress_rank: int
    stress: Stress
    rigidity_rank: int
    infinitesimally_rigid: bool
    fully_realised: bool
    psd: bool | None
    genericity: str
    seed: int | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.theorem is not Theorem.NO_CERTIFICATE

    @property
    def max_rank_found(self) -> bool:
        return self.stress_rank == self.target_rank


def certify_global_rigidity(fw: Framework, rng=None, attempts: int = 20, route: str = "auto",
                            genericity: str | None = None, seed: int | None = None,
                            tol: float = DEFAULT_TOL) -> Certificate:
    """Look for a maximum-rank stress and report which sufficient condition it meets.

    ``route`` is ``"auto"``, ``"max_rank_generic"`` or ``"psd"``.  Both routes
    rest on ``p`` being generic, which cannot be checked numerically; pass
    ``genericity="asserted"`` for hand-built frameworks.  Float frameworks
    default to ``"sampled"``, exact ones to ``"unasserted"``.  A missing
    certificate says nothing about global flexibility.
    """
    if route not in ("auto", "max_rank_generic", "psd"):
        raise ParameterError(f"unknown certificate route {route!r}")
    if genericity is None:
        genericity = "unasserted" if fw.exact else "sampled"
    if route == "max_rank_generic":
        if fw.kind is Kind.CONE:
            raise CertificateRefused(
                "the maximum-rank route covers cylinders and ellipsoids only, not cones")
        if fw.n < 5:
            raise CertificateRefused("the maximum-rank route needs at least 5 vertices")
    if rng is None:
        rng = np.random.default_rng(seed)
    stress, srank = max_rank_stress(fw, rng, attempts, tol)
    target = 3 * fw.n - fw.family.mu
    M = stress_matrix(fw, stress)
    cert = Certificate(
        kind=fw.kind, n=fw.n, m=fw.m, theorem=Theorem.NO_CERTIFICATE,
        target_rank=target, stress_rank=srank, stress=stress,
        rigidity_rank=rigidity_rank(fw, tol),
        infinitesimally_rigid=is_infinitesimally_rigid(fw, tol),
        fully_realised=is_fully_realised(fw, tol),
        psd=numeric.is_psd(M, tol) if srank == target else None,
        genericity=genericity, seed=seed,
    )
    generic = genericity in ("asserted", "sampled")
    if srank != target:
        cert.notes.append(f"best stress-matrix rank {srank} is below 3n - mu = {target}")
        return cert
    if fw.n < 5:
        cert.notes.append("congruence of affine images needs at least 5 vertices")
        return cert
    if not generic:
        cert.notes.append("genericity of the realization was not asserted")
        return cert
    if route in ("auto", "max_rank_generic") and fw.kind is not Kind.CONE:
        cert.theorem = Theorem.MAX_RANK_GENERIC
        cert.notes.append(
            "maximum-rank equilibrium stress on the family induced by a generic point; "
            "globally rigid on that family")
        return cert
    if route == "max_rank_generic":
        return cert
    if cert.psd and cert.fully_realised:
        cert.theorem = Theorem.PSD_MAX_RANK
        cert.notes.append("positive semi-definite maximum-rank stress matrix on a fully realised framework")
    elif not cert.psd:
        cert.notes.append("stress matrix has maximum rank but is not positive semi-definite")
    else:
        cert.notes.append("framework is not fully realised")
    return cert


def _edge_entry_nonzero(x, exact, scale, tol):
    return x != 0 if exact else abs(x) > tol * scale


def nonzero_stress_repair(fw: Framework, s: Stress, tol: float = DEFAULT_TOL,
                          max_halvings: int = 60) -> Stress:
    """Make every edge weight nonzero while keeping the stress-matrix rank at 3n - mu.

    For each edge with zero weight, an equilibrium stress nonzero on that
    edge exists when the graph minus the edge stays infinitesimally rigid;
    a small multiple of it is added.
    """
    if fw.kind is Kind.CONE:
        raise ParameterError("nonzero-weight repair applies to cylinders and ellipsoids only")
    exact = fw.exact and s.exact
    target = 3 * fw.n - fw.family.mu
    if not verify_equilibrium(fw, s, tol):
        raise ParameterError("input is not an equilibrium stress")
    if stress_rank(fw, s, tol) != target:
        raise ParameterError(f"input stress matrix does not have rank 3n - mu = {target}")
    basis = equilibrium_stress_basis(fw, tol)

    def scale_of(st):
        return max((abs(float(w)) for w in st.vector()), default=1.0) or 1.0

    current = s
    for idx, (u, v) in enumerate(fw.graph.edges):
        sc = scale_of(current)
        if _edge_entry_nonzero(current.omega[idx], exact, sc, tol):
            continue
        sub = Framework(remove_edge(fw.graph, u, v), fw.points, fw.family)
        if not is_infinitesimally_rigid(sub, tol):
            raise GenericityError(
                f"graph minus edge {(u, v)} is not rigid here, so no stress is nonzero on it")
        helper = next((b for b in basis
                       if _edge_entry_nonzero(b.omega[idx], exact, scale_of(b), tol)), None)
        if helper is None:
            raise GenericityError(f"no equilibrium stress is nonzero on edge {(u, v)}")
        helper = helper.scaled(Fraction(1) if exact else sc / scale_of(helper))
        keep = [k for k, w in enumerate(current.omega) if _edge_entry_nonzero(w, exact, sc, tol)]
        c = Fraction(1) if exact else 1.0
        for _ in range(max_halvings):
            cand = current.plus(helper.scaled(c))
            csc = scale_of(cand)
            if (stress_rank(fw, cand, tol) == target
                    and all(_edge_entry_nonzero(cand.omega[k], exact, csc, tol) for k in keep + [idx])):
                current = cand
                break
            c = c / 2
        else:
            raise GenericityError(f"could not repair edge {(u, v)} without losing rank")
    return current


def random_framework(g: Graph, kind, rng, alpha=None, beta=None) -> Framework:
    """Float framework at random points on the family those points induce."""
    return Framework.induced(g, sample_generic_points(g.n, kind, rng), kind, alpha, beta)


def is_rigid_generic(g: Graph, kind, rng, retries: int = 3, tol: float = DEFAULT_TOL) -> bool:
    """Infinitesimal rigidity at a random realization, resampled on failure."""
    for _ in range(retries):
        if is_infinitesimally_rigid(random_framework(g, kind, rng), tol):
            return True
    return False


def is_redundantly_rigid(g: Graph, kind, rng, retries: int = 3, tol: float = DEFAULT_TOL) -> bool:
    if not is_rigid_generic(g, kind, rng, retries, tol):
        return False
    return all(is_rigid_generic(remove_edge(g, u, v), kind, rng, retries, tol) for u, v in g.edges)


def hendrickson_necessary(g: Graph, kind, rng, retries: int = 3, tol: float = DEFAULT_TOL) -> bool:
    """Connectivity (2 on cylinders and cones, 1 on ellipsoids) and redundant rigidity."""
    kind = Kind.parse(kind)
    k = 1 if kind is Kind.ELLIPSOID else 2
    return is_k_connected(g, k) and is_redundantly_rigid(g, kind, rng, retries, tol)
