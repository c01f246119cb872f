"""Certified polygonal approximation of closed paths.

Given a closed path with modulus delta and a budget eps, sample the path on a
uniform partition finer than delta(eps/3) and connect the samples by straight
segments.  On each panel the value stays within eps/3 of the left vertex and
the chord stays within eps/3 of it too, so the polyline is uniformly within
2*eps/3 of the path; that sharper constant is what the certificate carries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidEpsilon
from .paths import Path, PiecewisePath, reparametrize_to_unit

__all__ = ["PolygonalApproximation", "polygonal_approximation"]

_MAX_PANELS = 5_000_000


@dataclass(frozen=True, eq=False)
class PolygonalApproximation:
    """A closed polyline interpolating the input at partition points.

    ``bound`` is the certified value of sup |input - polyline|; ``epsilon`` is
    the budget it was built for (bound = 2*epsilon/3 <= epsilon).
    """

    path: PiecewisePath
    bound: float
    epsilon: float

    @property
    def num_segments(self) -> int:
        return self.path.num_segments


def polygonal_approximation(f: Path, eps: float) -> PolygonalApproximation:
    """Closed polyline g with g(0) = f(0) = g(1) bit-exactly and sup |f-g| <= 2*eps/3.

    The partition is uniform with floor(1/delta) + 1 panels, where delta is
    the modulus at eps/3 clipped below 1; panel width is then strictly less
    than delta, which is exactly what the certified bound needs.
    """
    eps = float(eps)
    if not (math.isfinite(eps) and eps > 0):
        raise InvalidEpsilon(f"eps must be a positive finite number, got {eps!r}")
    f = reparametrize_to_unit(f)
    delta = min(f.modulus.delta(eps / 3), math.nextafter(1.0, 0.0))
    n = math.floor(1.0 / delta) + 1
    if n > _MAX_PANELS:
        raise InvalidEpsilon(
            f"partition of {n} panels exceeds the budget; eps too small for this modulus")
    xs = np.arange(n + 1) / n
    xs[-1] = 1.0
    verts = f.values(xs)
    if verts[-1] != verts[0]:
        raise ValueError("input path is not closed: f(0) != f(1)")
    return PolygonalApproximation(path=PiecewisePath.from_vertices(verts, xs, closed=True),
                                  bound=2 * eps / 3, epsilon=eps)
