"""Homotopies of closed paths and certified interpolation chains.

A homotopy is a continuous map on [0,1]^2 with an explicit two-variable
modulus (measured against the euclidean distance of parameter pairs) whose
time slices are closed paths.  ``build_chain`` discretizes a homotopy into a
finite run of closed polylines: pick a containment margin for the carrier,
split the time axis finely enough that neighbouring slices stay within a sixth
of the budget, replace each interior slice by its polygonal approximation, and
certify every consecutive sup-distance with the triangle-inequality bounds
eps/3, eps/2, ..., eps/2, eps/3.  Every certified bound is cross-checked
against a sampled lower bound and a violation fails hard, since it would mean
a broken modulus upstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .approx import polygonal_approximation
from .errors import (
    CertificateViolation,
    ContainmentNotCertified,
    EndpointMismatch,
    InvalidEpsilon,
    MismatchedDomains,
)
from .geometry import (
    Bounds,
    CompactCarrier,
    ContainmentCertificate,
    DomainDescriptor,
    require_finite_complex,
    well_contained,
)
from .paths import (
    ClosedPath,
    LipschitzModulus,
    Modulus,
    Path,
    PiecewisePath,
    constant_path,
    reparametrize_to_unit,
    sup_distance,
)

__all__ = [
    "Homotopy",
    "linear_homotopy",
    "star_null_homotopy",
    "homotopy_carrier",
    "PairBound",
    "ChainCertificate",
    "Chain",
    "build_chain",
]

_SMALL_TOL = 1e-3
_GRID_BUDGET = 4_000_000
_MAX_SLICES = 4000
_ENDPOINT_TOL = 1e-9


class Homotopy:
    """Continuous interpolation between two closed paths on [0,1]^2.

    ``evaluator(t, x)`` gives the point of the time-t slice at parameter x.
    Constructors may supply a vectorized grid evaluator and per-slice moduli
    or value functions; the defaults fall back to the scalar evaluator and the
    two-variable modulus, which are always valid but slower and coarser.
    """

    def __init__(self, evaluator, modulus2d: Modulus, gamma0: Path, gamma1: Path, *,
                 grid_evaluator=None, slice_modulus=None, slice_values=None):
        self.evaluator = evaluator
        self.modulus2d = modulus2d
        self.gamma0 = gamma0
        self.gamma1 = gamma1
        self._grid_evaluator = grid_evaluator
        self._slice_modulus = slice_modulus
        self._slice_values = slice_values

    def value(self, t: float, x: float) -> complex:
        return complex(self.evaluator(float(t), float(x)))

    def grid_values(self, ts, xs) -> np.ndarray:
        ts = np.asarray(ts, dtype=np.float64)
        xs = np.asarray(xs, dtype=np.float64)
        if self._grid_evaluator is not None:
            return np.asarray(self._grid_evaluator(ts, xs), dtype=np.complex128)
        ev = self.evaluator
        return np.array([[ev(t, x) for x in xs] for t in ts], dtype=np.complex128)

    def slice_at(self, t: float) -> ClosedPath:
        t = float(t)
        if self._slice_values is not None:
            vec = self._slice_values(t)
        else:
            ev = self.evaluator

            def vec(xs, _t=t):
                xs = np.asarray(xs, dtype=np.float64)
                return np.array([ev(_t, x) for x in xs], dtype=np.complex128)

        mod = self._slice_modulus(t) if self._slice_modulus is not None else self.modulus2d
        return ClosedPath(0.0, 1.0, vec, mod)


def _require_unit_closed(path: Path, name: str):
    if path.interval != (0.0, 1.0):
        raise MismatchedDomains(
            f"{name} must live on [0, 1] (reparametrize_to_unit first), got {path.interval}")


def _lipschitz_of(path: Path, name: str) -> float:
    constant = path.modulus.lipschitz_constant
    if constant is None:
        raise TypeError(f"{name} needs a Lipschitz modulus to combine into a homotopy modulus")
    return constant


def linear_homotopy(gamma0: Path, gamma1: Path) -> Homotopy:
    """Pointwise convex blend (1-t) gamma0 + t gamma1 with a conservative modulus."""
    if gamma0.interval != gamma1.interval:
        raise MismatchedDomains(
            f"paths live on {gamma0.interval} and {gamma1.interval}")
    _require_unit_closed(gamma0, "gamma0")
    l0 = _lipschitz_of(gamma0, "gamma0")
    l1 = _lipschitz_of(gamma1, "gamma1")
    gap = sup_distance(gamma0, gamma1, _SMALL_TOL).hi
    modulus2d = LipschitzModulus(max(l0, l1) + gap)

    def evaluator(t, x):
        return (1.0 - t) * gamma0.value(x) + t * gamma1.value(x)

    def grid_evaluator(ts, xs):
        v0 = gamma0.values(xs)
        v1 = gamma1.values(xs)
        return np.outer(1.0 - ts, v0) + np.outer(ts, v1)

    def slice_modulus(t):
        return LipschitzModulus((1.0 - t) * l0 + t * l1)

    def slice_values(t):
        def vec(xs):
            return (1.0 - t) * gamma0.values(xs) + t * gamma1.values(xs)
        return vec

    return Homotopy(evaluator, modulus2d, gamma0, gamma1, grid_evaluator=grid_evaluator,
                    slice_modulus=slice_modulus, slice_values=slice_values)


def star_null_homotopy(gamma: Path, center: complex) -> Homotopy:
    """Contract a closed path onto a point along straight rays.

    The time-1 slice is the constant path at the center; whether the swept
    cone stays inside a given domain is not checked here but by the chain
    builder's containment certificate.
    """
    center = require_finite_complex(center, "center")
    gamma = reparametrize_to_unit(gamma)
    lip = _lipschitz_of(gamma, "gamma")
    reach = sup_distance(gamma, constant_path(center), _SMALL_TOL).hi
    modulus2d = LipschitzModulus(lip + reach)
    gamma1 = constant_path(center)

    def evaluator(t, x):
        return (1.0 - t) * gamma.value(x) + t * center

    def grid_evaluator(ts, xs):
        v = gamma.values(xs)
        return np.outer(1.0 - ts, v) + np.outer(ts, np.full(xs.shape, center, dtype=np.complex128))

    def slice_modulus(t):
        return LipschitzModulus((1.0 - t) * lip)

    def slice_values(t):
        def vec(xs):
            return (1.0 - t) * gamma.values(xs) + t * center
        return vec

    return Homotopy(evaluator, modulus2d, gamma, gamma1, grid_evaluator=grid_evaluator,
                    slice_modulus=slice_modulus, slice_values=slice_values)


def _grid_steps(sigma: Homotopy, eta: float) -> int:
    spacing = sigma.modulus2d.delta(eta) / math.sqrt(2.0)
    return max(1, math.ceil(1.0 / min(spacing, 1.0)))


def homotopy_carrier(sigma: Homotopy, eta: float) -> CompactCarrier:
    """Eta-net of the closure of the homotopy's range, by uniform grid sampling.

    Grid spacing is delta(eta)/sqrt(2) in each axis so every parameter pair is
    within euclidean distance delta(eta) of a grid point.
    """
    if not eta > 0:
        raise ValueError(f"eta must be positive, got {eta}")
    steps = _grid_steps(sigma, eta)
    if (steps + 1) ** 2 > 5 * _GRID_BUDGET:
        raise ValueError(f"carrier grid of {(steps + 1) ** 2} points exceeds the budget")
    ts = np.arange(steps + 1) / steps
    grid = sigma.grid_values(ts, ts)
    return CompactCarrier(grid.ravel(), eta)


@dataclass(frozen=True)
class PairBound:
    """Certified bound for one consecutive pair, with its sampled cross-check."""

    analytic: float
    sampled: Bounds


@dataclass(frozen=True)
class ChainCertificate:
    entries: tuple[PairBound, ...]


@dataclass(frozen=True, eq=False)
class Chain:
    """Run of closed piecewise paths interpolating a homotopy.

    Members are [gamma0, phi_1, ..., phi_{n-1}, gamma1]; the certificate holds
    one entry per consecutive pair (eps/3 at the ends, eps/2 inside), and the
    containment certificate witnesses that the carrier's eps-inflation stays
    inside the domain.
    """

    members: tuple[PiecewisePath, ...]
    epsilon: float
    certificate: ChainCertificate
    containment: ContainmentCertificate
    carrier: CompactCarrier
    partition: np.ndarray

    def __len__(self) -> int:
        return len(self.members)


def _check_endpoint_slices(sigma: Homotopy, gamma0: Path, gamma1: Path):
    xs = np.arange(257) / 256
    for t, path, name in ((0.0, gamma0, "gamma0"), (1.0, gamma1, "gamma1")):
        gap = float(np.abs(sigma.grid_values(np.array([t]), xs)[0] - path.values(xs)).max())
        if gap > _ENDPOINT_TOL:
            raise EndpointMismatch(
                f"homotopy slice at t={t} differs from {name} by {gap:.3g} (> {_ENDPOINT_TOL})")


def _estimate_diameter(sigma: Homotopy) -> float:
    grid = sigma.grid_values(np.arange(9) / 8, np.arange(17) / 16).ravel()
    width = grid.real.max() - grid.real.min()
    height = grid.imag.max() - grid.imag.min()
    return math.hypot(width, height)


def _certify_containment(sigma: Homotopy, domain: DomainDescriptor, max_refinements: int):
    diameter = _estimate_diameter(sigma)
    eta = 0.05 * diameter if diameter > 0 else 0.05
    last_failure = None
    for _ in range(max_refinements + 1):
        if (_grid_steps(sigma, eta) + 1) ** 2 > _GRID_BUDGET:
            raise ContainmentNotCertified(
                "containment not certified within the sampling budget"
                + (f": {last_failure}" if last_failure else ""),
                min_complement_distance=getattr(last_failure, "min_complement_distance", None),
                resolution=eta)
        carrier = homotopy_carrier(sigma, eta)
        try:
            cert = well_contained(carrier, domain)
            if cert.margin > 4 * eta:
                return carrier, cert
            last_failure = ContainmentNotCertified(
                f"margin {cert.margin:.6g} not above 4*eta={4 * eta:.6g}", resolution=eta)
        except ContainmentNotCertified as exc:
            last_failure = exc
        eta /= 2
    raise ContainmentNotCertified(
        f"containment not certified after {max_refinements} refinements: {last_failure}",
        min_complement_distance=getattr(last_failure, "min_complement_distance", None),
        resolution=getattr(last_failure, "resolution", None))


def build_chain(sigma: Homotopy, gamma0: PiecewisePath, gamma1: PiecewisePath,
                domain: DomainDescriptor, *, eps: float | None = None,
                max_refinements: int = 8) -> Chain:
    """Discretize a homotopy into a chain with certified consecutive bounds.

    Steps: certify the carrier's containment (refining the net until the
    margin clears 4*eta), set eps to half the certified margin so the
    eps/6-inflated carrier still sits well inside the domain, split the time
    axis at the two-variable modulus of eps/6, polygonally approximate every
    interior slice to eps/6, and record the eps/3 - eps/2 - eps/3 bounds with
    sampled cross-checks.
    """
    for name, path in (("gamma0", gamma0), ("gamma1", gamma1)):
        if not isinstance(path, PiecewisePath):
            raise TypeError(f"{name} must be a piecewise-differentiable path")
        if not path.is_closed:
            raise ValueError(f"{name} must be closed")
        _require_unit_closed(path, name)
    _check_endpoint_slices(sigma, gamma0, gamma1)

    carrier, containment = _certify_containment(sigma, domain, max_refinements)
    if eps is None:
        eps = containment.margin / 2
    else:
        eps = float(eps)
        if not (0 < eps <= containment.margin * 6 / 7):
            raise InvalidEpsilon(
                f"eps override {eps} outside (0, {containment.margin * 6 / 7:.6g}] "
                "allowed by the containment margin")

    delta = min(sigma.modulus2d.delta(eps / 6), math.nextafter(1.0, 0.0))
    n = math.floor(1.0 / delta) + 1
    if n > _MAX_SLICES:
        raise ValueError(
            f"chain would need {n} time slices; homotopy modulus too steep for margin {containment.margin:.3g}")
    ts = np.arange(n + 1) / n
    ts[-1] = 1.0

    members: list[PiecewisePath] = [gamma0]
    for i in range(1, n):
        members.append(polygonal_approximation(sigma.slice_at(ts[i]), eps / 6).path)
    members.append(gamma1)

    if n >= 2:
        bounds = [eps / 3] + [eps / 2] * (n - 2) + [eps / 3]
    else:
        bounds = [eps / 3]

    entries = []
    tol_cc = eps / 12
    for j, bound in enumerate(bounds):
        sampled = sup_distance(members[j], members[j + 1], tol_cc)
        if sampled.lo > bound:
            raise CertificateViolation(
                f"sampled sup-distance lower bound {sampled.lo:.6g} exceeds the certified "
                f"bound {bound:.6g} for pair {j}; a modulus upstream is broken")
        entries.append(PairBound(analytic=bound, sampled=sampled))

    return Chain(members=tuple(members), epsilon=eps,
                 certificate=ChainCertificate(tuple(entries)),
                 containment=containment, carrier=carrier, partition=ts)
