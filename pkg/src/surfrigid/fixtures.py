"""Exact base frameworks K5-e, H1 and H2 on induced concentric cylinders.

Vertices are 0-based here; edge ``(0, 1)`` is the edge between the first
two labelled vertices.  The edge weights of H1 and H2 are the primitive
cokernel vector of the rigidity matrix scaled to the listed vertex
weights (see ``scripts/derive_fixture_stresses.py``).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParameterError
from .graph import Graph
from .rigidity import Framework, Stress
from .surface import Kind


def _edges(labels):
    return tuple((int(a) - 1, int(b) - 1) for a, b in labels.split())


@dataclass(frozen=True)
class BaseFixture:
    name: str
    graph: Graph
    points: tuple
    stress: Stress
    expected_rigidity_rank: int
    expected_stress_rank: int

    @property
    def ranks(self) -> tuple[int, int]:
        return self.expected_rigidity_rank, self.expected_stress_rank

    @property
    def omega(self) -> tuple:
        return self.stress.omega

    @property
    def lam(self) -> tuple:
        return self.stress.lam

    def framework(self, kind=Kind.CYLINDER) -> Framework:
        """The fixture on the family induced by its points (cylinders by default)."""
        return Framework.induced(self.graph, self.points, kind)


def _fixture(name, n, labels, points, omega, lam, ranks):
    F = Fraction
    return BaseFixture(
        name=name,
        graph=Graph(n, _edges(labels)),
        points=tuple(tuple(F(c) for c in p) for p in points),
        stress=Stress(tuple(F(w) for w in omega), tuple(F(x) for x in lam)),
        expected_rigidity_rank=ranks[0],
        expected_stress_rank=ranks[1],
    )


_FIXTURES = {
    "K5_E": _fixture(
        "K5_E", 5, "12 13 14 15 23 24 25 35 45",
        [(0, 1, 0), (1, 1, 1), (-1, -2, -1), (2, 3, 4), (5, 1, -1)],
        (-369, 192, 153, 51, -96, -279, -138, 32, 45),
        (-270, -270, -192, 54, -6),
        (13, 9),
    ),
    "H1": _fixture(
        "H1", 6, "12 14 15 23 24 25 26 35 36 45 56",
        [(0, 1, 0), (3, 1, 0), (1, 4, 1), (1, 2, 2), (2, 2, 3), (6, 0, 2)],
        (-41, -369, 246, -60, 123, -30, -48, -50, 40, -492, -56),
        (-123, -39, 30, 123, -102, 28),
        (16, 12),
    ),
    "H2": _fixture(
        "H2", 7, "12 14 15 23 24 25 35 36 37 45 56 57 67",
        [(0, 1, 0), (3, 1, 0), (1, 4, 1), (1, 2, 2), (2, 2, 3), (6, 0, 2), (3, 4, 3)],
        (-58, -522, 348, -24, 174, -108, -40, 14, 21, -696, 56, 588, -42),
        (-174, -6, 24, 174, 372, -28, -252),
        (19, 15),
    ),
}

_ALIASES = {"K5-E": "K5_E", "K5E": "K5_E", "K5_E": "K5_E", "H1": "H1", "H2": "H2"}

FIXTURE_NAMES = tuple(_FIXTURES)


def fixture(name: str) -> BaseFixture:
    key = _ALIASES.get(str(name).upper().replace(" ", ""))
    if key is None:
        raise ParameterError(f"unknown base fixture {name!r}; expected one of {', '.join(FIXTURE_NAMES)}")
    return _FIXTURES[key]
