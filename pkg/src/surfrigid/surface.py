"""Families of concentric cylinders, cones and ellipsoids.

A family assigns each vertex ``i`` its own surface through a positive
parameter ``r_i``:

* cylinder   ``x^2 + y^2 = r_i``
* cone       ``x^2 + y^2 = r_i z^2``
* ellipsoid  ``x^2 + alpha y^2 + beta z^2 = r_i`` with ``1 < alpha < beta``

All functions work on any scalar type that supports ``+ - *`` so the same
code serves ``Fraction`` and ``float`` inputs.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DegenerateConfigurationError, ParameterError

DEFAULT_ALPHA = Fraction(2)
DEFAULT_BETA = Fraction(3)
# Cone samples stay away from the apex by this margin in |z|.
CONE_MIN_ABS_Z = 0.1


class Kind(str, enum.Enum):
    CYLINDER = "cylinder"
    CONE = "cone"
    ELLIPSOID = "ellipsoid"

    @classmethod
    def parse(cls, value) -> "Kind":
        if isinstance(value, Kind):
            return value
        aliases = {"y": "cylinder", "c": "cone", "e": "ellipsoid"}
        key = str(value).strip().lower()
        try:
            return cls(aliases.get(key, key))
        except ValueError:
            raise ParameterError(f"unknown surface kind {value!r}") from None

    @property
    def ell(self) -> int:
        """Dimension of the continuous isometry group of the family."""
        return {Kind.CYLINDER: 2, Kind.CONE: 1, Kind.ELLIPSOID: 0}[self]

    @property
    def mu(self) -> int:
        """Row count of the configuration matrix."""
        return {Kind.CYLINDER: 6, Kind.CONE: 5, Kind.ELLIPSOID: 3}[self]


@dataclass(frozen=True)
class SurfaceFamily:
    kind: Kind
    radii: tuple
    alpha: object = DEFAULT_ALPHA
    beta: object = DEFAULT_BETA

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind.parse(self.kind))
        object.__setattr__(self, "radii", tuple(self.radii))
        for i, r in enumerate(self.radii):
            if not r > 0:
                raise ParameterError(f"radius of vertex {i} must be positive, got {r}")
        if self.kind is Kind.ELLIPSOID and not 1 < self.alpha < self.beta:
            raise ParameterError(f"ellipsoid needs 1 < alpha < beta, got {self.alpha}, {self.beta}")

    @property
    def n(self) -> int:
        return len(self.radii)

    @property
    def ell(self) -> int:
        return self.kind.ell

    @property
    def mu(self) -> int:
        return self.kind.mu

    def to_float(self) -> "SurfaceFamily":
        return SurfaceFamily(self.kind, tuple(float(r) for r in self.radii),
                             float(self.alpha), float(self.beta))


def constraint_value(f: SurfaceFamily, i: int, pt):
    """``h_i(pt)``; zero exactly when ``pt`` lies on the i-th surface."""
    x, y, z = pt
    r = f.radii[i]
    if f.kind is Kind.CYLINDER:
        return x * x + y * y - r
    if f.kind is Kind.CONE:
        return x * x + y * y - r * z * z
    return x * x + f.alpha * y * y + f.beta * z * z - r


def tangency_vector(f: SurfaceFamily, i: int, pt) -> tuple:
    """Half the gradient of ``h_i``; the row of the surface block of the rigidity matrix."""
    x, y, z = pt
    if f.kind is Kind.CYLINDER:
        return (x, y, 0 * z)
    if f.kind is Kind.CONE:
        return (x, y, -f.radii[i] * z)
    return (x, f.alpha * y, f.beta * z)


def energy_weight(f: SurfaceFamily, i: int, pt):
    """The per-vertex term ``k`` of the stress energy (``h_i`` without ``-r_i`` on Y and E)."""
    x, y, z = pt
    if f.kind is Kind.CYLINDER:
        return x * x + y * y
    if f.kind is Kind.CONE:
        return x * x + y * y - f.radii[i] * z * z
    return x * x + f.alpha * y * y + f.beta * z * z


def induced_family(kind, points, alpha=DEFAULT_ALPHA, beta=DEFAULT_BETA) -> SurfaceFamily:
    """The unique family of the given kind passing through every point."""
    kind = Kind.parse(kind)
    radii = []
    for i, (x, y, z) in enumerate(points):
        if kind is Kind.ELLIPSOID:
            if x == 0 and y == 0 and z == 0:
                raise DegenerateConfigurationError(f"vertex {i} is at the origin", vertex=i)
            radii.append(x * x + alpha * y * y + beta * z * z)
            continue
        if x == 0 and y == 0:
            raise DegenerateConfigurationError(f"vertex {i} lies on the z-axis", vertex=i)
        if kind is Kind.CYLINDER:
            radii.append(x * x + y * y)
        else:
            if z == 0:
                raise DegenerateConfigurationError(f"vertex {i} has z = 0, no cone through it", vertex=i)
            radii.append((x * x + y * y) / (z * z))
    return SurfaceFamily(kind, tuple(radii), alpha, beta)


def random_point(f: SurfaceFamily, i: int, rng, z_scale: float = 1.0) -> tuple:
    """Random float point on the i-th surface of ``f``.

    Cylinder: angle uniform on [0, 2pi), height uniform on [-z_scale, z_scale].
    Cone: angle uniform, |z| uniform on [0.1, 0.1 + 2 z_scale] with a random
    sign.  Ellipsoid: a uniform direction on the unit sphere mapped onto the
    ellipsoid by axis scaling.
    """
    if not isinstance(f.radii[i], float):
        raise ParameterError("random points are only available on the float backend")
    r = f.radii[i]
    if f.kind is Kind.CYLINDER:
        theta = rng.uniform(0.0, 2 * math.pi)
        s = math.sqrt(r)
        return (s * math.cos(theta), s * math.sin(theta), float(rng.uniform(-z_scale, z_scale)))
    if f.kind is Kind.CONE:
        theta = rng.uniform(0.0, 2 * math.pi)
        z = float(rng.uniform(CONE_MIN_ABS_Z, CONE_MIN_ABS_Z + 2 * z_scale))
        z = z if rng.random() < 0.5 else -z
        s = math.sqrt(r) * abs(z)
        return (s * math.cos(theta), s * math.sin(theta), z)
    u = rng.standard_normal(3)
    u /= np.linalg.norm(u)
    s = math.sqrt(r)
    return (float(s * u[0]), float(s * u[1] / math.sqrt(f.alpha)), float(s * u[2] / math.sqrt(f.beta)))


def sample_generic_points(n: int, kind, rng) -> list[tuple]:
    """Random points in R^3 usable to induce a family of the given kind.

    Coordinates are standard normal; samples too close to the z-axis, the
    origin or (for cones) the plane z = 0 are redrawn.
    """
    kind = Kind.parse(kind)
    points = []
    while len(points) < n:
        x, y, z = (float(c) for c in rng.standard_normal(3))
        if kind is Kind.ELLIPSOID:
            if x * x + y * y + z * z < 1e-4:
                continue
        elif x * x + y * y < 1e-4:
            continue
        if kind is Kind.CONE and abs(z) < CONE_MIN_ABS_Z:
            continue
        points.append((x, y, z))
    return points
