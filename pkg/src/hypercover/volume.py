"""Special functions and volumes: Lobachevsky function, the closed-form
volume of a complete orthoscheme, truncating-triangle areas, and the volume
of a bounded hyperball piece.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import zeta

from .lorentz import GeometryError, distance
from .orthoscheme import TruncatedOrthoscheme

# L(theta) = theta - theta*log(2 theta) + theta * sum_n c_n theta^(2n)
# with c_n = zeta(2n) / (n (2n+1) pi^(2n)); after reduction to [0, pi/2]
# the terms decay like 4^-n, so 26 of them land well below 1e-15.
_N_TERMS = 26
_LOB_COEFFS = np.array([
    zeta(2.0 * n) / (n * (2.0 * n + 1.0) * math.pi ** (2 * n))
    for n in range(1, _N_TERMS + 1)
])


class DegenerateTriangle(GeometryError):
    """Triangle vertices are collinear or coincident within tolerance."""


class NegativeHeight(GeometryError):
    """Hyperball height must be >= 0."""


def lobachevsky(x):
    """Lobachevsky function L(x) = -integral_0^x log|2 sin t| dt.

    Odd and pi-periodic; evaluated by the classical power series with
    zeta(2n) coefficients after reduction to [0, pi/2], absolute error
    below 1e-12 everywhere.  Accepts scalars or arrays.
    """
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    y = np.mod(arr, math.pi)
    flip = y > math.pi / 2
    theta = np.where(flip, math.pi - y, y)
    sign = np.where(flip, -1.0, 1.0)

    t2 = theta * theta
    series = np.zeros_like(theta)
    power = np.ones_like(theta)
    for c in _LOB_COEFFS:
        power = power * t2
        series = series + c * power
    safe = np.where(theta > 0.0, theta, 1.0)
    val = np.where(theta > 0.0,
                   theta * (1.0 - np.log(2.0 * safe)) + theta * series,
                   0.0)
    out = sign * val
    return float(out) if scalar else out


def theta(u: float, v: float, w: float) -> float:
    """Auxiliary angle of the orthoscheme volume formula, in [0, pi/2).

    tan(theta) = sqrt(cos^2(pi/v) - sin^2(pi/u) sin^2(pi/w))
                 / (cos(pi/u) cos(pi/w)).

    The radicand equals -det of the Coxeter-Schlafli matrix, so it is
    positive for admissible parameters; values within 1e-14 below zero are
    clamped, anything lower raises DomainError.
    """
    a01, a12, a23 = math.pi / u, math.pi / v, math.pi / w
    rad = math.cos(a12) ** 2 - math.sin(a01) ** 2 * math.sin(a23) ** 2
    if rad < -1e-14:
        raise GeometryError(
            f"negative radicand {rad:.3e}: parameters are not admissible")
    rad = max(rad, 0.0)
    return math.atan(math.sqrt(rad) / (math.cos(a01) * math.cos(a23)))


def orthoscheme_volume(u: float, v: float, w: float) -> float:
    """Hyperbolic volume of the complete orthoscheme with angles pi/u, pi/v, pi/w.

    Kellerhals' closed form: with th = theta(u,v,w) and L the Lobachevsky
    function,

        V = 1/4 [ L(a01+th) - L(a01-th) + L(pi/2 + a12 - th)
                  + L(pi/2 - a12 - th) + L(a23+th) - L(a23-th)
                  + 2 L(pi/2 - th) ].
    """
    a01, a12, a23 = math.pi / u, math.pi / v, math.pi / w
    th = theta(u, v, w)
    L = lobachevsky
    half = math.pi / 2
    return 0.25 * (
        L(a01 + th) - L(a01 - th)
        + L(half + a12 - th) + L(half - a12 - th)
        + L(a23 + th) - L(a23 - th)
        + 2.0 * L(half - th)
    )


def triangle_area(p, q, r) -> float:
    """Area of the hyperbolic triangle pqr by angle defect.

    The three interior angles come from the law of cosines on the side
    lengths, so only pairwise distances of the vertices are needed.
    """
    a = distance(q, r)
    b = distance(p, r)
    c = distance(p, q)
    if min(a, b, c) < 1e-12:
        raise DegenerateTriangle("two vertices coincide within tolerance")

    def angle(s1, s2, opposite):
        cosang = ((math.cosh(s1) * math.cosh(s2) - math.cosh(opposite))
                  / (math.sinh(s1) * math.sinh(s2)))
        if abs(cosang) > 1.0 + 1e-9:
            raise DegenerateTriangle(f"law of cosines out of range: {cosang}")
        return math.acos(min(1.0, max(-1.0, cosang)))

    defect = math.pi - (angle(b, c, a) + angle(a, c, b) + angle(a, b, c))
    return defect


def hyperball_piece_volume(area: float, h: float) -> float:
    """Volume of a hyperball piece of base area `area` and height h.

    Bolyai's formula: V = area * (sinh(2h) + 2h) / 4 for the solid between
    a plane polygon, its equidistant surface at distance h, and the walls
    perpendicular to the base through the polygon edges.
    """
    if h < 0:
        raise NegativeHeight(f"height {h} < 0")
    if area < 0:
        raise GeometryError(f"base area {area} < 0")
    return 0.25 * area * (math.sinh(2.0 * h) + 2.0 * h)


@dataclass(frozen=True)
class VolumeReport:
    """Volume data of one orthoscheme: body volume, theta, triangle areas."""

    orthoscheme_volume: float
    theta: float
    area_QEJ: float
    area_HLC: float


def volume_report(o: TruncatedOrthoscheme) -> VolumeReport:
    p = o.params
    return VolumeReport(
        orthoscheme_volume=orthoscheme_volume(p.u, p.v, p.w),
        theta=theta(p.u, p.v, p.w),
        area_QEJ=triangle_area(o.Q, o.E, o.J),
        area_HLC=triangle_area(o.H, o.L, o.C),
    )
