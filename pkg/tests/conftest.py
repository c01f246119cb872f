"""Shared generators and oracles for the test suite."""

import cmath
import math
import random

import numpy as np
import pytest

from contourchain import circle, ellipse, polyline, square


def random_builtin_path(rng: random.Random):
    """One of the built-in closed path families with random parameters."""
    kind = rng.choice(["circle", "ellipse", "square", "polyline"])
    if kind == "circle":
        return circle(center=complex(rng.uniform(-1, 1), rng.uniform(-1, 1)),
                      radius=rng.uniform(0.3, 1.5))
    if kind == "ellipse":
        return ellipse(rng.uniform(0.3, 1.5), rng.uniform(0.3, 1.5),
                       center=complex(rng.uniform(-1, 1), rng.uniform(-1, 1)))
    if kind == "square":
        return square(rng.uniform(0.4, 2.0),
                      center=complex(rng.uniform(-1, 1), rng.uniform(-1, 1)))
    return random_polyline(rng, rng.randint(3, 7), radius=rng.uniform(0.4, 1.4))


def random_polyline(rng: random.Random, n_vertices: int, radius: float = 1.0,
                    center: complex = 0j):
    """Closed star-shaped polyline about ``center`` (vertices sorted by angle,
    so the polyline never degenerates)."""
    angles = sorted(rng.uniform(0, 2 * math.pi) for _ in range(n_vertices))
    verts = [center + rng.uniform(0.3, 1.0) * radius * cmath.exp(1j * a) for a in angles]
    return polyline(verts, closed=True)


def dense_sup(p, q, n: int = 10_000) -> float:
    """Brute-force sup |p - q| on a dense uniform grid (independent oracle)."""
    a, b = p.interval
    xs = a + (b - a) * np.arange(n + 1) / n
    return float(np.abs(p.values(xs) - q.values(xs)).max())


# Antiderivative oracles for the entire functions used in corollary tests:
# each maps an expression label to (integrand text, antiderivative callable).
ENTIRE_FUNCTIONS = {
    "poly": ("z^2 - 3*z + 2",
             lambda z: z ** 3 / 3 - 1.5 * z ** 2 + 2 * z),
    "exp": ("exp(z)", cmath.exp),
    "sin": ("sin(z)", lambda z: -cmath.cos(z)),
}


@pytest.fixture(scope="session")
def rng():
    return random.Random(20260810)
