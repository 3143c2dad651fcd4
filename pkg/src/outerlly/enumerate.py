"""Maximal outerplanar graphs up to isomorphism, as triangulated polygons.

For n >= 4 a maximal outerplanar graph has a unique Hamiltonian outer cycle,
so two triangulations give isomorphic graphs exactly when one is carried to
the other by a rotation or reflection of the polygon. The canonical code of a
triangulation is therefore the smallest sorted diagonal list over the 2n
dihedral relabelings.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .graph import GraphError, PolygonTriangulation

N_MIN, N_MAX = 3, 16

Diagonal = tuple[int, int]


def _check_range(n: int) -> None:
    if not N_MIN <= n <= N_MAX:
        raise GraphError(f"n must lie in [{N_MIN}, {N_MAX}], got {n}")


def _triangulate(corners: tuple[int, ...]) -> Iterator[list[Diagonal]]:
    """All diagonal lists of the sub-polygon ``corners`` (base edge first-last)."""
    if len(corners) < 3:
        yield []
        return
    first, last = corners[0], corners[-1]
    for k in range(1, len(corners) - 1):
        apex = corners[k]
        own = []
        if k > 1:
            own.append((first, apex))
        if k < len(corners) - 2:
            own.append((apex, last))
        for lower in _triangulate(corners[: k + 1]):
            for upper in _triangulate(corners[k:]):
                yield own + lower + upper


def all_triangulations(n: int) -> Iterator[PolygonTriangulation]:
    """Every triangulation of the labeled convex ``n``-gon (no deduplication).

    The triangle on the boundary edge ``{0, n-1}`` picks its apex, and the two
    sub-polygons on either side are triangulated recursively.
    """
    _check_range(n)
    for diags in _triangulate(tuple(range(n))):
        yield PolygonTriangulation(n, frozenset(diags))


def _dihedral_images(n: int, diagonals) -> Iterator[tuple[Diagonal, ...]]:
    for r in range(n):
        for sign in (1, -1):
            image = []
            for a, b in diagonals:
                a2, b2 = (sign * a + r) % n, (sign * b + r) % n
                image.append((a2, b2) if a2 < b2 else (b2, a2))
            yield tuple(sorted(image))


def canonical_diagonals(t: PolygonTriangulation) -> tuple[Diagonal, ...]:
    return min(_dihedral_images(t.n, t.diagonals))


def canonical_code(t: PolygonTriangulation) -> str:
    """Text code (``"n:a-b,..."``) of the dihedrally minimal relabeling of ``t``."""
    return PolygonTriangulation(t.n, frozenset(canonical_diagonals(t))).to_code()


def canonical_form(t: PolygonTriangulation) -> PolygonTriangulation:
    return PolygonTriangulation(t.n, frozenset(canonical_diagonals(t)))


def enumerate_triangulations(n: int) -> list[PolygonTriangulation]:
    """One canonical triangulation per isomorphism class, sorted by diagonal tuple."""
    _check_range(n)
    seen = set()
    for t in all_triangulations(n):
        seen.add(canonical_diagonals(t))
    return [PolygonTriangulation(n, frozenset(d)) for d in sorted(seen)]


def raw_count(n: int) -> int:
    """Number of labeled triangulations the generator produces (Catalan(n-2))."""
    return sum(1 for _ in all_triangulations(n))


@lru_cache(maxsize=None)
def catalan(k: int) -> int:
    if k <= 1:
        return 1
    return sum(catalan(i) * catalan(k - 1 - i) for i in range(k))
