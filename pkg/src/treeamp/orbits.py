"""Small-subgroup orbits in products of tree pairs and their
intersections with one-sided Hecke supports.

Two orbit shapes occur.  The diagonal orbit {(v, v)} (conjugates of the
real subgroup) never meets a one-sided support: the right coordinate
would have to be the root, pinning the left coordinate there too.  The
torus orbit is a product of two apartments through the root; the left
apartment crosses each sphere of positive radius in exactly two
vertices, once per coset translate.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from . import tree
from .hecke import GlobalHeckeElement

__all__ = [
    "OrbitKind",
    "OrbitModel",
    "ProductPoint",
    "one_sided_support",
    "orbit_intersect_one_sided",
    "brute_force_intersect",
    "count_global_intersections",
]


class OrbitKind(enum.Enum):
    MULTIPLICATIVE = "multiplicative"
    SL2 = "sl2"


@dataclass(frozen=True)
class OrbitModel:
    """An orbit shape together with its finite-index multiplier.

    The multiplier counts coset translates of the base orbit; root-
    stabilizer translation leaves intersection cardinalities unchanged,
    so translates only scale counts.
    """

    kind: OrbitKind
    index_multiplier: int = 1

    def __post_init__(self):
        if self.index_multiplier < 1:
            raise ValueError("index multiplier must be >= 1")


@dataclass(frozen=True)
class ProductPoint:
    """A point of (tree x tree) at a single prime."""

    left: tree.TreeVertex
    right: tree.TreeVertex

    def __post_init__(self):
        if self.left.prime != self.right.prime:
            raise ValueError("coordinates must share a prime")


def one_sided_support(p: int, j: int) -> frozenset[ProductPoint]:
    """Support of the radius-2j one-sided operator: sphere x {root}."""
    if j < 1:
        raise ValueError("j must be >= 1; j = 0 is the identity coset")
    o = tree.root(p)
    return frozenset(ProductPoint(v, o) for v in tree.iter_sphere(p, 2 * j))


def orbit_intersect_one_sided(model: OrbitModel, p: int, j: int) -> int:
    """Closed-form count of orbit points inside a one-sided support."""
    if j < 1:
        raise ValueError("j must be >= 1")
    if model.kind is OrbitKind.SL2:
        return 0
    return 2 * model.index_multiplier


def _apartment_points(p: int, max_depth: int) -> list[tree.TreeVertex]:
    """The canonical geodesic through the root, truncated to a ball.

    One ray is 0, 00, 000, ...; the other is 1, 10, 100, ...
    """
    points = [tree.root(p)]
    for k in range(1, max_depth + 1):
        points.append(tree.TreeVertex(p, (0,) * k))
        points.append(tree.TreeVertex(p, (1,) + (0,) * (k - 1)))
    return points


def brute_force_intersect(model: OrbitModel, p: int, j: int, ball_radius: int) -> int:
    """Enumerate the orbit inside a ball and count one-sided support hits.

    Independent of the closed form: membership is tested point by point
    against the materialized support.
    """
    if ball_radius < 2 * j:
        raise ValueError(f"ball radius {ball_radius} too small for j={j}")
    o = tree.root(p)
    if j == 0:
        support = frozenset([ProductPoint(o, o)])
    else:
        support = one_sided_support(p, j)
    if model.kind is OrbitKind.SL2:
        # diagonal orbit: all (v, v) within the ball
        base = sum(
            1
            for r in range(ball_radius + 1)
            for v in tree.iter_sphere(p, r)
            if ProductPoint(v, v) in support
        )
    else:
        apartment = _apartment_points(p, ball_radius)
        base = sum(
            1
            for left in apartment
            for right in apartment
            if ProductPoint(left, right) in support
        )
    return base * model.index_multiplier


def count_global_intersections(model: OrbitModel, tau: GlobalHeckeElement) -> int:
    """Orbit points inside the support of a globally assembled element.

    Each support point is a product of spheres across its primes; the
    orbit meets it in the product of the per-prime sphere counts, and
    the finite-index multiplier scales each support point once.
    """
    total = 0
    for point, _ in tau.coeffs:
        if not point:
            continue  # identity coset carries no off-origin support
        if model.kind is OrbitKind.SL2:
            continue
        prod = 1
        for _p, r in point:
            if r < 2:
                raise ValueError("support points must have positive even radii")
            prod *= 2  # apartment meets each positive-radius sphere twice
        total += model.index_multiplier * prod
    return total
