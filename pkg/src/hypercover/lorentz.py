"""Lorentzian linear algebra of the projective (Beltrami-Cayley-Klein) model.

Vectors live in E^{1,n} (n = 2 or 3) with the bilinear form

    <x, y> = -x0*y0 + x1*y1 + ... + xn*yn.

Projective points with <x,x> < 0 are proper points of hyperbolic space,
<x,x> = 0 are ideal, <x,x> > 0 are outer.  Hyperplanes are represented by
their polar vectors under the same form, so incidence of a point x with a
plane a reads <x, a> = 0.
"""

from enum import Enum

import numpy as np

# |<x,x>| <= IDEAL_TOL * ||x||^2 classifies a point as ideal
IDEAL_TOL = 1e-10
# acosh arguments this far below 1 are treated as roundoff; bigger deficits
# signal a logic error upstream
ACOSH_DEFICIT = 1e-12


class GeometryError(ValueError):
    """Base error for invalid geometric input."""


class NonProperPoint(GeometryError):
    """An argument that must be a proper point is ideal or outer."""


class DomainError(GeometryError):
    """A distance formula produced an argument outside its domain."""


class DegeneratePlane(GeometryError):
    """Plane polar vector has <a,a> <= 0, so the plane misses the model."""


class PointClass(Enum):
    PROPER = "proper"
    IDEAL = "ideal"
    OUTER = "outer"


class _Homogeneous:
    """Immutable homogeneous coordinate vector in E^{1,2} or E^{1,3}."""

    __slots__ = ("v",)

    def __init__(self, coords):
        v = np.array(coords, dtype=float)
        if v.ndim != 1 or v.shape[0] not in (3, 4):
            raise GeometryError(f"expected 3 or 4 coordinates, got shape {v.shape}")
        if not np.any(v):
            raise GeometryError("zero vector has no projective class")
        v.flags.writeable = False
        self.v = v

    def __repr__(self):
        body = ", ".join(f"{c:.6g}" for c in self.v)
        return f"{type(self).__name__}({body})"


class ProjPoint(_Homogeneous):
    """Projective point; scale of the coordinate vector carries no meaning."""

    def chart(self):
        """Representative with x0 = 1 (affine chart of the Klein ball)."""
        if abs(self.v[0]) < 1e-300:
            raise GeometryError("point at infinity of the affine chart")
        return self.v / self.v[0]


class ProjForm(_Homogeneous):
    """Hyperplane form, identified with the polar vector of the plane."""


def _vec(x):
    if isinstance(x, _Homogeneous):
        return x.v
    return np.asarray(x, dtype=float)


def bilinear(x, y) -> float:
    """Signature (1, n) inner product -x0*y0 + x1*y1 + ... + xn*yn."""
    xv, yv = _vec(x), _vec(y)
    return float(xv[1:] @ yv[1:] - xv[0] * yv[0])


def classify(x, tol: float = IDEAL_TOL) -> PointClass:
    """Classify a point by the sign of <x,x>, scale-invariantly.

    ``tol`` bounds |<x,x>| relative to the Euclidean norm squared of the
    coordinate vector; within it the point counts as ideal.
    """
    xv = _vec(x)
    if not np.any(xv):
        raise GeometryError("zero vector has no projective class")
    q = bilinear(xv, xv)
    scale = float(xv @ xv)
    if abs(q) <= tol * scale:
        return PointClass.IDEAL
    return PointClass.PROPER if q < 0 else PointClass.OUTER


def _acosh_guarded(arg: float) -> float:
    """acosh with a roundoff allowance of ACOSH_DEFICIT below 1."""
    if arg < 1.0:
        if arg < 1.0 - ACOSH_DEFICIT:
            raise DomainError(f"acosh argument {arg!r} below 1 beyond tolerance")
        return 0.0
    return float(np.arccosh(arg))


def distance(x, y) -> float:
    """Hyperbolic distance of two proper points.

    cosh d = -<x,y> / sqrt(<x,x> <y,y>); the absolute value of the numerator
    is taken so the result is invariant under rescaling by negative factors.
    """
    xv, yv = _vec(x), _vec(y)
    for p in (xv, yv):
        if classify(p) is not PointClass.PROPER:
            raise NonProperPoint(f"distance needs proper points, got {p}")
    qx, qy = bilinear(xv, xv), bilinear(yv, yv)
    return _acosh_guarded(abs(bilinear(xv, yv)) / np.sqrt(qx * qy))


def point_plane_distance(x, a) -> float:
    """Distance from a proper point to a plane that intersects the model.

    sinh d = |<x,a>| / sqrt(-<x,x> <a,a>); zero exactly when x is incident
    with the plane.  Points at distance h from the plane form the equidistant
    (hypersphere) surface of height h.
    """
    xv, av = _vec(x), _vec(a)
    if classify(xv) is not PointClass.PROPER:
        raise NonProperPoint(f"point_plane_distance needs a proper point, got {xv}")
    qa = bilinear(av, av)
    if qa <= 0.0:
        raise DegeneratePlane(f"<a,a> = {qa!r} <= 0: plane does not meet the model")
    qx = bilinear(xv, xv)
    return float(np.arcsinh(abs(bilinear(xv, av)) / np.sqrt(-qx * qa)))


def polar(x) -> ProjForm:
    """Polar hyperplane of a point: the form with the same coordinate tuple."""
    xv = _vec(x)
    if not np.any(xv):
        raise GeometryError("zero vector has no polar")
    return ProjForm(xv)


def segment_point(p, q, t: float) -> ProjPoint:
    """Affine-chart interpolation between two points, t=0 at p, t=1 at q.

    Both points are normalized to x0 = 1 first, so for p = (1,x,y,0) and
    q = (1,x,y,-zH) the result is (1, x, y, -t*zH).
    """
    pv, qv = _vec(p), _vec(q)
    pc = ProjPoint(pv).chart()
    qc = ProjPoint(qv).chart()
    if np.max(np.abs(pc - qc)) <= 1e-14 * (1.0 + np.max(np.abs(pc))):
        raise GeometryError("segment endpoints are projectively equal")
    return ProjPoint((1.0 - t) * pc + t * qc)
