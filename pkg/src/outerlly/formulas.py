"""Closed-form edge curvature of maximal outerplanar graphs.

Around an edge ``xy`` (oriented so ``d_x <= d_y``) an optimal integer
potential takes ``f(x) = 0``, ``f(y) = 1``, ``-1`` on the private neighbors of
``x`` and ``2`` on those of ``y``. Only the values at the common neighbors are
free, each in ``{0, 1}``, and the curvature is a linear function of them.
The ``δ`` parameters count, for each endpoint ``a`` and common neighbor ``b``,
the extra vertices in ``N(a, b)`` besides the other endpoint.

The reference rows of the two degree-pair tables are kept here as data so
that tests and the CLI can diff the formulas against them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Union

from .graph import EdgeKind, Graph, GraphError, OuterplanarWitness, common_neighbors, edge_kind


class ConfigError(GraphError):
    """Local configuration that cannot occur in a maximal outerplanar graph."""


@dataclass(frozen=True)
class ExteriorConfig:
    x: int
    y: int
    z: int
    delta_xz: int
    delta_yz: int
    d_x: int
    d_y: int
    swapped: bool = False

    @property
    def deltas(self) -> tuple[int, int]:
        return (self.delta_xz, self.delta_yz)


@dataclass(frozen=True)
class InteriorConfig:
    x: int
    y: int
    w: int
    z: int
    delta_xw: int
    delta_xz: int
    delta_yw: int
    delta_yz: int
    d_x: int
    d_y: int
    swapped: bool = False

    @property
    def deltas(self) -> tuple[int, int, int, int]:
        return (self.delta_xw, self.delta_xz, self.delta_yw, self.delta_yz)


Config = Union[ExteriorConfig, InteriorConfig]


@dataclass(frozen=True)
class TableRow:
    """One configuration row: δ tuple, degree constraints, formula, positive pairs.

    Degree bounds are inclusive (``None`` for unbounded); ``d_x <= d_y`` is
    always required.

    ``formula`` holds ``(a, b)`` for ``a/d_x + b/d_y - 2``; ``split_formula``
    (if any) replaces it when ``2 d_x <= d_y``.
    """

    deltas: tuple[int, ...]
    dx_min: int
    dx_max: int | None
    dy_min: int
    dy_max: int | None
    formula: tuple[int, int]
    split_formula: tuple[int, int] | None
    positive_pairs: frozenset

    def admits(self, dx: int, dy: int) -> bool:
        if dx < self.dx_min or (self.dx_max is not None and dx > self.dx_max):
            return False
        if dy < self.dy_min or (self.dy_max is not None and dy > self.dy_max):
            return False
        return dx <= dy

    def value(self, dx: int, dy: int) -> Fraction:
        a, b = self.formula
        if self.split_formula is not None and 2 * dx <= dy:
            a, b = self.split_formula
        return Fraction(a, dx) + Fraction(b, dy) - 2


def _pairs(*pairs):
    return frozenset(pairs)


EXTERIOR_TABLE = (
    TableRow((0, 0), 2, 2, 2, 2, (3, 4), None, _pairs((2, 2))),
    TableRow((0, 1), 2, 2, 3, None, (4, 3), (3, 5),
             _pairs(*[(2, k) for k in range(3, 10)])),
    TableRow((1, 1), 3, None, 3, None, (3, 5), None, _pairs((3, 3), (3, 4))),
)

INTERIOR_TABLE = (
    TableRow((0, 0, 0, 0), 3, 3, 3, 3, (4, 6), None, _pairs((3, 3))),
    TableRow((0, 0, 0, 1), 3, 3, 4, None, (5, 5), (4, 7),
             _pairs(*[(3, k) for k in range(4, 10)])),
    TableRow((0, 0, 1, 1), 3, 3, 5, None, (6, 4), (4, 8),
             _pairs(*[(3, k) for k in range(5, 10)])),
    TableRow((0, 1, 0, 1), 4, None, 4, None, (4, 7), None,
             _pairs((4, 4), (4, 5), (4, 6), (5, 5))),
    TableRow((0, 1, 1, 0), 4, None, 4, None, (5, 5), (4, 7),
             _pairs((4, 4), (4, 5), (4, 6))),
    TableRow((0, 1, 1, 1), 4, None, 5, None, (5, 6), (4, 8),
             _pairs((4, 5), (4, 6), (4, 7), (5, 5))),
    TableRow((1, 1, 0, 1), 5, None, 5, None, (4, 7), None, _pairs((5, 5))),
    TableRow((1, 1, 1, 1), 5, None, 5, None, (4, 8), None, _pairs((5, 5), (5, 6))),
)

EXTERIOR_POSITIVE_PAIRS = frozenset([(2, k) for k in range(2, 10)] + [(3, 3), (3, 4)])

_EXTERIOR_ROWS = {row.deltas: row for row in EXTERIOR_TABLE}
_INTERIOR_ROWS = {row.deltas: row for row in INTERIOR_TABLE}


def _check_bits(*deltas: int) -> None:
    if any(d not in (0, 1) for d in deltas):
        raise ConfigError(f"δ values must be 0 or 1, got {deltas}")


def _slope(dx: int, dy: int, d_xb: int, d_yb: int) -> Fraction:
    """Coefficient of ``f(b)`` for a common neighbor ``b``."""
    return Fraction(1 + d_xb, dx) - Fraction(1 + d_yb, dy)


def exterior_choice(dx: int, dy: int, delta_xz: int, delta_yz: int) -> int:
    """Optimal ``f(z)``: 1 exactly when its coefficient is negative."""
    return int(_slope(dx, dy, delta_xz, delta_yz) < 0)


def exterior_kappa(dx: int, dy: int, delta_xz: int, delta_yz: int) -> Fraction:
    _check_bits(delta_xz, delta_yz)
    if dx > dy:
        raise ConfigError("orient the edge so that d_x <= d_y")
    if dx < 2:
        raise ConfigError("exterior edges need d_x >= 2")
    if (delta_xz, delta_yz) == (1, 0):
        raise ConfigError("(δ_xz, δ_yz) = (1, 0) is impossible when d_x <= d_y")
    base = Fraction(3, dx) + Fraction(4 + delta_yz, dy) - 2
    slope = _slope(dx, dy, delta_xz, delta_yz)
    return base + min(0, slope)


def interior_choice(dx, dy, delta_xw, delta_xz, delta_yw, delta_yz) -> tuple[int, int]:
    """Optimal ``(f(w), f(z))``."""
    return (int(_slope(dx, dy, delta_xw, delta_yw) < 0),
            int(_slope(dx, dy, delta_xz, delta_yz) < 0))


def interior_kappa(dx, dy, delta_xw, delta_xz, delta_yw, delta_yz) -> Fraction:
    _check_bits(delta_xw, delta_xz, delta_yw, delta_yz)
    if dx > dy:
        raise ConfigError("orient the edge so that d_x <= d_y")
    if dx < 3:
        raise ConfigError("interior edges need d_x >= 3")
    if delta_xw + delta_xz >= 1 and delta_yw == delta_yz == 0:
        raise ConfigError("δ_yw = δ_yz = 0 with δ_xw + δ_xz >= 1 is impossible when d_x <= d_y")
    base = Fraction(4, dx) + Fraction(6 + delta_yw + delta_yz, dy) - 2
    sw = _slope(dx, dy, delta_xw, delta_yw)
    sz = _slope(dx, dy, delta_xz, delta_yz)
    return base + min(0, sw) + min(0, sz)


def config_kappa(config: Config) -> Fraction:
    if isinstance(config, ExteriorConfig):
        return exterior_kappa(config.d_x, config.d_y, *config.deltas)
    return interior_kappa(config.d_x, config.d_y, *config.deltas)


def is_good_pair(kind: EdgeKind, config: Config) -> bool:
    expected = ExteriorConfig if kind is EdgeKind.EXTERIOR else InteriorConfig
    if not isinstance(config, expected):
        raise ConfigError(f"{kind.value} edge with a {type(config).__name__}")
    return config_kappa(config) > 0


def _delta(g: Graph, a: int, b: int, other: int) -> int:
    count = len(set(common_neighbors(g, a, b)) - {other})
    if count > 1:
        raise ConfigError(f"|N({a},{b}) \\ {{{other}}}| = {count} > 1: not outerplanar")
    return count


def _orientations(g: Graph, x: int, y: int) -> list[tuple[int, int, bool]]:
    dx, dy = g.degree(x), g.degree(y)
    if dx < dy:
        return [(x, y, False)]
    if dx > dy:
        return [(y, x, True)]
    return [(x, y, False), (y, x, True)]


def extract_config(g: Graph, witness: OuterplanarWitness, x: int, y: int) -> Config:
    """Local configuration of the edge ``xy`` in canonical orientation.

    Endpoints are swapped so that ``d_x <= d_y``; ties, and the order of the
    two common neighbors of an interior edge, are resolved by taking the
    lexicographically smallest δ tuple among those listed in the tables.
    Configurations outside the tables, or whose degrees break a row's degree
    constraints, raise :class:`ConfigError`.
    """
    kind = edge_kind(g, witness, x, y)
    common = common_neighbors(g, x, y)
    candidates = []
    if kind is EdgeKind.EXTERIOR:
        if len(common) != 1:
            raise ConfigError(f"exterior edge {x}-{y} must have one common neighbor")
        (z,) = common
        for a, b, swapped in _orientations(g, x, y):
            deltas = (_delta(g, a, z, b), _delta(g, b, z, a))
            if deltas in _EXTERIOR_ROWS:
                candidates.append((deltas, ExteriorConfig(a, b, z, *deltas, g.degree(a), g.degree(b), swapped)))
        table = _EXTERIOR_ROWS
    else:
        if len(common) != 2:
            raise ConfigError(f"interior edge {x}-{y} must have two common neighbors")
        for a, b, swapped in _orientations(g, x, y):
            for w, z in (common, common[::-1]):
                deltas = (_delta(g, a, w, b), _delta(g, a, z, b), _delta(g, b, w, a), _delta(g, b, z, a))
                if deltas in _INTERIOR_ROWS:
                    candidates.append(
                        (deltas, InteriorConfig(a, b, w, z, *deltas, g.degree(a), g.degree(b), swapped)))
        table = _INTERIOR_ROWS
    if not candidates:
        raise ConfigError(f"edge {x}-{y}: local configuration matches no table row")
    deltas, config = min(candidates, key=lambda c: c[0])
    if not table[deltas].admits(config.d_x, config.d_y):
        raise ConfigError(
            f"edge {x}-{y}: degrees ({config.d_x}, {config.d_y}) violate the constraints of row {deltas}")
    return config


def closed_form_kappa(g: Graph, witness: OuterplanarWitness, x: int, y: int) -> Fraction:
    return config_kappa(extract_config(g, witness, x, y))


def row_positive_pairs(row: TableRow, kind: EdgeKind, d_max: int = 9) -> frozenset:
    """Degree pairs admitted by ``row`` (both degrees ``<= d_max``) with positive κ."""
    kappa = exterior_kappa if kind is EdgeKind.EXTERIOR else interior_kappa
    return frozenset(
        (dx, dy)
        for dx, dy in product(range(2, d_max + 1), repeat=2)
        if row.admits(dx, dy) and kappa(dx, dy, *row.deltas) > 0
    )
