"""Hyperboloid-model geometry: distances, geodesics, projections, tubes.

Points are unit-norm vectors for the Minkowski-like form
B(x, y) = x.ell * y.ell - sum_k x[k] * y[k]  with  cosh dist(x, y) = B(x, y).
This module works in double precision (stated tolerances); exact lattice
classes convert in via :func:`as_vector`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Dict, Hashable, Tuple, Union

from .lattice import PMClass

#: hyperbolicity constant of the hyperbolic plane, log(1 + sqrt(2))
DELTA = math.log(1.0 + math.sqrt(2.0))

_UNIT_TOL = 1e-9


class HVec:
    """Sparse float vector in the ambient Minkowski space."""

    __slots__ = ("ell", "exc")

    def __init__(self, ell: float, exc: Dict[Hashable, float]):
        self.ell = float(ell)
        self.exc = {k: float(v) for k, v in exc.items() if v}

    def __add__(self, other: "HVec") -> "HVec":
        exc = dict(self.exc)
        for k, v in other.exc.items():
            exc[k] = exc.get(k, 0.0) + v
        return HVec(self.ell + other.ell, exc)

    def __sub__(self, other: "HVec") -> "HVec":
        return self + other * -1.0

    def __mul__(self, t: float) -> "HVec":
        return HVec(self.ell * t, {k: v * t for k, v in self.exc.items()})

    __rmul__ = __mul__

    def __repr__(self):
        return f"HVec(ell={self.ell!r}, support={len(self.exc)})"


VectorLike = Union[HVec, PMClass, Tuple[float, float, float]]


def as_vector(x: VectorLike) -> HVec:
    """Coerce a lattice class, a 3-tuple (Minkowski plane), or an HVec."""
    if isinstance(x, HVec):
        return x
    if isinstance(x, PMClass):
        return HVec(float(x.ell), {k: float(v) for k, v in x.exc.items()})
    if isinstance(x, tuple) and len(x) == 3:
        t, u, v = x
        return HVec(float(t), {"_plane0": float(u), "_plane1": float(v)})
    raise TypeError(f"cannot interpret {type(x).__name__} as a Minkowski vector")


def mdot(x: VectorLike, y: VectorLike) -> float:
    """The bilinear form B (signature (1, oo))."""
    xv, yv = as_vector(x), as_vector(y)
    total = xv.ell * yv.ell
    a, b = xv.exc, yv.exc
    if len(b) < len(a):
        a, b = b, a
    for k, v in a.items():
        w = b.get(k)
        if w is not None:
            total -= v * w
    return total


def check_point(x: VectorLike, tol: float = 1e-12) -> HVec:
    """Validate the point invariant: B(x, x) = 1 within tol, positive ell."""
    xv = as_vector(x)
    if abs(mdot(xv, xv) - 1.0) > tol or xv.ell <= 0:
        raise ValueError("not a unit timelike vector with positive ell-coefficient")
    return xv


def distance(x: VectorLike, y: VectorLike) -> float:
    """Hyperbolic distance: argcosh of the pairing of two unit timelike points."""
    b = mdot(x, y)
    if b < 1.0 - _UNIT_TOL:
        raise ValueError(f"pairing {b} < 1: inputs are not both unit timelike")
    return math.acosh(max(b, 1.0))


def geodesic_point(x: VectorLike, y: VectorLike, t: float) -> HVec:
    """Point at arclength t along the unit-speed geodesic from x toward y."""
    xv, yv = as_vector(x), as_vector(y)
    d = distance(xv, yv)
    if d == 0.0:
        raise ValueError("geodesic direction undefined for coincident points")
    u = (yv - xv * math.cosh(d)) * (1.0 / math.sinh(d))
    return xv * math.cosh(t) + u * math.sinh(t)


class GeodesicSpec:
    """Geodesic given by its two ideal endpoint classes.

    Endpoints must be (near-)null with positive ell-coefficient; they are
    rescaled so that B(plus, minus) = 1.
    """

    __slots__ = ("plus", "minus")

    def __init__(self, ideal_plus: VectorLike, ideal_minus: VectorLike, null_tol: float = 1e-6):
        plus, minus = as_vector(ideal_plus), as_vector(ideal_minus)
        for end in (plus, minus):
            if end.ell <= 0:
                raise ValueError("ideal endpoints need a positive ell-coefficient")
            if abs(mdot(end, end)) > null_tol:
                raise ValueError("ideal endpoints must be null (within tolerance)")
        pairing = mdot(plus, minus)
        if pairing <= 0:
            raise ValueError("ideal endpoints must pair positively")
        self.plus = plus
        self.minus = minus * (1.0 / pairing)

    def point(self, t: float) -> HVec:
        """Unit-speed parameterization (e^t * plus + e^-t * minus)/sqrt(2)."""
        return (self.plus * math.exp(t) + self.minus * math.exp(-t)) * (1.0 / math.sqrt(2.0))


def project_to_geodesic(x: VectorLike, g: GeodesicSpec) -> HVec:
    """Closest point of the geodesic: ((x.b-)b+ + (x.b+)b-)/sqrt(2(x.b+)(x.b-))."""
    xv = as_vector(x)
    a = mdot(xv, g.plus)
    b = mdot(xv, g.minus)
    if a <= 0 or b <= 0:
        raise ValueError("point does not pair positively with both ideal endpoints")
    return (g.plus * b + g.minus * a) * (1.0 / math.sqrt(2.0 * a * b))


def quad_fourth_side(d_dc: float, d_cb: float) -> float:
    """Side AB of a quadrilateral with right angles at B, C, D.

    tanh(AB) = tanh(DC) * cosh(CB); infeasible when that product reaches 1.
    """
    if d_dc < 0 or d_cb < 0:
        raise ValueError("side lengths must be nonnegative")
    arg = math.tanh(d_dc) * math.cosh(d_cb)
    if arg >= 1.0:
        raise ValueError("no such quadrilateral: tanh(DC)*cosh(CB) >= 1")
    return math.atanh(arg)


@dataclass(frozen=True)
class Tube:
    """Geodesic tube along a reference geodesic, in arclength coordinates.

    Ends at lo and hi (hi > lo) with the same end radius; the radius profile
    between the ends follows tanh r(z) = tanh(end_radius) * cosh(z - mid) / cosh(half).
    """

    lo: float
    hi: float
    end_radius: float

    def __post_init__(self):
        if not self.hi > self.lo:
            raise ValueError("tube needs hi > lo")
        if self.end_radius < 0:
            raise ValueError("tube radius must be nonnegative")


def tube_radius(t: Tube, z: float) -> float:
    """Radius of the tube at arclength z in [lo, hi]; minimal at the midpoint."""
    if z < t.lo or z > t.hi:
        raise ValueError(f"coordinate {z} outside tube [{t.lo}, {t.hi}]")
    if t.end_radius == 0.0:
        return 0.0
    mid = 0.5 * (t.lo + t.hi)
    half = 0.5 * (t.hi - t.lo)
    tanh_eps = math.tanh(t.end_radius)
    arg = min(tanh_eps * math.cosh(z - mid) / math.cosh(half), tanh_eps)
    if arg >= 1.0:
        return t.end_radius
    return math.atanh(arg)


def tube_traverses(outer: Tube, inner: Tube, tol: float = 1e-12) -> bool:
    """True iff the outer tube's radius at both inner ends is <= the inner radius."""
    if not (outer.lo <= inner.lo < inner.hi <= outer.hi):
        raise ValueError("inner tube ends must be nested inside the outer tube")
    return (
        tube_radius(outer, inner.lo) <= inner.end_radius + tol
        and tube_radius(outer, inner.hi) <= inner.end_radius + tol
    )


def traversal_offset(eps: float, eta: float, d_wz: float) -> float:
    """Half-length making a symmetric eps-tube have radius exactly eta at d_wz.

    Returns argcosh(tanh(eps) * cosh(d_wz) / tanh(eta)).  When the argument is
    below 1 the eps-tube is already thinner than eta there; by convention the
    offset is 0, flagged with a RuntimeWarning.
    """
    if eps < 0 or eta <= 0 or d_wz < 0:
        raise ValueError("need eps >= 0, eta > 0, d_wz >= 0")
    arg = math.tanh(eps) * math.cosh(d_wz) / math.tanh(eta)
    if arg < 1.0:
        warnings.warn(
            "tube radius is already below eta at the requested coordinate; offset 0",
            RuntimeWarning,
            stacklevel=2,
        )
        return 0.0
    return math.acosh(arg)


def wpd_exponents(eps: float, eta: float, L: float, z: float, z_prime: float, w: float) -> Tuple[int, int]:
    """Smallest powers (N, M) whose eps-tube traverses the eta/3-tube on [z, z'].

    The outer tube has ends w - N*L + eps and w + M*L - eps; minimality is
    relative to the symmetric-offset construction (conservative for an
    asymmetric grid), and the result is re-verified with tube_traverses.
    """
    if eps < 0 or eta <= 0 or L <= 0:
        raise ValueError("need eps >= 0, eta > 0, L > 0")
    if not z < z_prime:
        raise ValueError("need z < z_prime")
    inner = Tube(z - eps, z_prime + eps, eta / 3.0)
    mid = 0.5 * (inner.lo + inner.hi)
    half_in = 0.5 * (inner.hi - inner.lo)
    if eta / 3.0 >= eps:
        reach = half_in
    else:
        reach = traversal_offset(eps, eta / 3.0, half_in)
    # smallest naturals with  w - N*L + eps <= mid - reach <= mid + reach <= w + M*L - eps
    n_exp = max(0, math.ceil((w - mid + reach + eps) / L - 1e-12))
    m_exp = max(0, math.ceil((mid + reach - w + eps) / L - 1e-12))
    for _ in range(4):
        lo = w - n_exp * L + eps
        hi = w + m_exp * L - eps
        if lo <= inner.lo and inner.hi <= hi and tube_traverses(Tube(lo, hi, eps), inner):
            return n_exp, m_exp
        n_exp += 1
        m_exp += 1
    raise AssertionError("traversal verification failed unexpectedly")
