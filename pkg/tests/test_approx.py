import math

import numpy as np
import pytest

from contourchain import (
    InvalidEpsilon,
    LipschitzModulus,
    circle,
    constant_path,
    polygonal_approximation,
    polyline,
)
from conftest import dense_sup, random_builtin_path


class TestConstantPath:
    def test_all_vertices_at_the_point(self):
        result = polygonal_approximation(constant_path(1 - 2j), 0.3)
        assert np.all(result.path.vertices() == 1 - 2j)
        assert result.bound == pytest.approx(0.2)
        assert dense_sup(constant_path(1 - 2j), result.path, 500) == 0.0


class TestUnitCircleExample:
    def test_segment_count(self):
        # lipschitz 2 pi at eps = pi/3: delta = 1/18, panels = floor(18) + 1 = 19
        result = polygonal_approximation(circle(), math.pi / 3)
        assert result.num_segments == 19

    def test_certified_bound_holds_densely(self):
        eps = math.pi / 3
        result = polygonal_approximation(circle(), eps)
        oracle = dense_sup(circle(), result.path, 10_000)
        assert oracle <= 2 * eps / 3 + 1e-12
        assert result.bound == pytest.approx(2 * eps / 3)


class TestEndpointAndVertexExactness:
    def test_endpoints_bit_exact(self):
        f = circle()
        g = polygonal_approximation(f, 0.2).path
        assert g.value(0.0) == f.value(0.0)
        assert g.value(1.0) == f.value(0.0)

    def test_vertices_interpolate_input(self):
        f = circle(radius=1.3, center=0.2 + 0.1j)
        result = polygonal_approximation(f, 0.15)
        breaks = result.path.breakpoints
        verts = result.path.vertices()
        assert np.array_equal(verts, f.values(breaks))

    def test_polyline_input_vertices_stay_on_input(self):
        f = polyline([1 + 0j, 1j, -1 + 0j, -1j])
        result = polygonal_approximation(f, 0.4)
        oracle = dense_sup(f, result.path, 10_000)
        assert oracle <= result.bound + 1e-12
        assert np.array_equal(result.path.vertices(), f.values(result.path.breakpoints))


class TestRefinement:
    def test_halving_eps_never_increases_sup(self):
        f = circle()
        sups = []
        for eps in [0.8, 0.4, 0.2, 0.1]:
            g = polygonal_approximation(f, eps).path
            sups.append(dense_sup(f, g, 10_000))
        assert all(s2 <= s1 + 1e-15 for s1, s2 in zip(sups, sups[1:]))

    def test_panel_count_formula(self):
        # lipschitz values at or above the circle's own bound, so the probe
        # modulus is exactly the requested one
        for lip, eps in [(2 * math.pi, 0.3), (10.0, 0.02), (7.0, 2.5), (8.0, 30.0)]:
            delta = min((eps / 3) / lip, math.nextafter(1.0, 0.0))
            expected = math.floor(1.0 / delta) + 1
            probe = _with_lipschitz(circle(), lip)
            assert polygonal_approximation(probe, eps).num_segments == expected


def _with_lipschitz(path, lip):
    """Same geometry, deliberately coarser modulus (only ever more conservative)."""
    from contourchain import ClosedPath

    conservative = max(lip, path.lipschitz_bound)
    return ClosedPath(0.0, 1.0, path.values, LipschitzModulus(conservative))


class TestValidation:
    @pytest.mark.parametrize("eps", [0.0, -1.0, float("nan"), float("inf")])
    def test_invalid_epsilon(self, eps):
        with pytest.raises(InvalidEpsilon):
            polygonal_approximation(circle(), eps)

    def test_open_input_rejected(self):
        open_path = polyline([0j, 1 + 0j, 1 + 1j], closed=False)
        with pytest.raises(ValueError, match="not closed"):
            polygonal_approximation(open_path, 0.3)


class TestRandomPaths:
    @pytest.mark.parametrize("eps", [0.5, 0.1, 0.02])
    def test_certified_bound_on_random_builtins(self, eps, rng):
        for _ in range(10):
            f = random_builtin_path(rng)
            g = polygonal_approximation(f, eps)
            assert dense_sup(f, g.path, 2000) <= 2 * eps / 3 + 1e-12
            assert g.path.value(0.0) == f.value(0.0) == g.path.value(1.0)
