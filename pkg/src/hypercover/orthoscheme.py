"""Doubly truncated Coxeter orthoschemes F_u^{(v,w)} in hyperbolic 3-space.

An orthoscheme with dihedral angle data {u, v, w} (angles pi/u, pi/v, pi/w
along the three essential edges) whose principal vertices A0, A3 fall outside
the model is made compact by cutting with the polar planes of A0 and A3.  The
result is bounded by the eight proper vertices

    Q, E, J        on pol(A3),
    H, L, C        on pol(A0),
    A1, A2         original proper vertices,

and carries a canonical coordinate placement: Q = (1,0,0,0), E = (1,0,y,0),
J = (1,x,y,0), A1 = (1,0,y,-z1), A2 = (1,0,0,-z2), H = (1,x,y,-zH),
A0 = (1,x,y,-z0), A3 = (0,0,0,1).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .lorentz import (
    GeometryError,
    ProjForm,
    ProjPoint,
    _acosh_guarded,
    bilinear,
    segment_point,
)

# the four infinite series of {u,v,w} tilings whose orthoscheme has two
# outer principal vertices
_SERIES = (
    ("u>=3, v>=7, w>=3", lambda u, v, w: u >= 3 and v >= 7 and w >= 3),
    ("u>=4, v in {5,6}, w>=4", lambda u, v, w: u >= 4 and v in (5, 6) and w >= 4),
    ("u>=5, v=4, w>=5", lambda u, v, w: u >= 5 and v == 4 and w >= 5),
    ("u>=7, v=3, w>=7", lambda u, v, w: u >= 7 and v == 3 and w >= 7),
)

_INT_TOL = 1e-9


class InadmissibleParameters(GeometryError):
    """Parameter triple fails hyperbolicity or an outer-vertex condition."""


class EmbeddingFailure(GeometryError):
    """Gram matrix realization did not produce signature (1,3)."""


@dataclass(frozen=True)
class SchlafliParams:
    """Admissible parameter triple with its series classification.

    ``series`` is None for real-parameter triples that are not one of the
    four integer tiling series; ``extendable`` marks whether reflections in
    the facets tile all of hyperbolic space (integers in a series) or only
    generate a local configuration.
    """

    u: float
    v: float
    w: float
    B: float
    series: str | None
    extendable: bool


def classify_params(u: float, v: float, w: float) -> SchlafliParams:
    """Check admissibility of {u,v,w} and tag its series.

    Admissible means the Coxeter-Schlafli matrix is hyperbolic (negative
    determinant B) and both principal vertices are outer points:
    1/u + 1/v < 1/2 and 1/w + 1/v < 1/2.

    Raises InadmissibleParameters naming the violated inequality.
    """
    if min(u, v, w) < 3:
        raise InadmissibleParameters(
            f"parameters must be >= 3, got ({u}, {v}, {w})")
    cv2 = math.cos(math.pi / v) ** 2
    B = math.sin(math.pi / u) ** 2 * math.sin(math.pi / w) ** 2 - cv2
    if B >= 0:
        raise InadmissibleParameters(
            f"not hyperbolic: sin^2(pi/u) sin^2(pi/w) - cos^2(pi/v) = {B:.6g} >= 0")
    if 1.0 / u + 1.0 / v >= 0.5:
        raise InadmissibleParameters(
            f"principal vertex A3 not outer: 1/u + 1/v = {1/u + 1/v:.6g} >= 1/2")
    if 1.0 / w + 1.0 / v >= 0.5:
        raise InadmissibleParameters(
            f"principal vertex A0 not outer: 1/w + 1/v = {1/w + 1/v:.6g} >= 1/2")

    series = None
    is_int = all(abs(p - round(p)) <= _INT_TOL for p in (u, v, w))
    if is_int:
        iu, iv, iw = (int(round(p)) for p in (u, v, w))
        for label, member in _SERIES:
            if member(iu, iv, iw):
                series = label
                break
    return SchlafliParams(float(u), float(v), float(w), B, series, series is not None)


@dataclass(frozen=True)
class GramPair:
    """Coxeter-Schlafli matrix b, its closed-form inverse h, determinant B."""

    b: np.ndarray
    h: np.ndarray
    B: float


def gram(params: SchlafliParams) -> GramPair:
    """Build b^{ij} and its closed-form inverse h_ij = <a_i, a_j>.

    The inverse is written out entrywise (divided by B = det b) rather than
    computed numerically; agreement with the numeric inverse is a test
    invariant, not an implementation detail.
    """
    u, v, w = params.u, params.v, params.w
    cu, cv, cw = (math.cos(math.pi / p) for p in (u, v, w))
    su2, sw2 = math.sin(math.pi / u) ** 2, math.sin(math.pi / w) ** 2
    b = np.array([
        [1.0, -cu, 0.0, 0.0],
        [-cu, 1.0, -cv, 0.0],
        [0.0, -cv, 1.0, -cw],
        [0.0, 0.0, -cw, 1.0],
    ])
    B = su2 * sw2 - cv * cv
    h = np.array([
        [sw2 - cv * cv, cu * sw2, cu * cv, cu * cv * cw],
        [cu * sw2, sw2, cv, cw * cv],
        [cu * cv, cv, su2, cw * su2],
        [cu * cv * cw, cw * cv, cw * su2, su2 - cv * cv],
    ]) / B
    b.flags.writeable = False
    h.flags.writeable = False
    return GramPair(b, h, B)


@dataclass(frozen=True)
class PlacementScalars:
    """Coordinates of the canonical placement (all positive, t's in (0,1))."""

    x: float
    y: float
    z0: float
    z1: float
    z2: float
    zH: float
    t1: float
    t2: float


_VERTEX_NAMES = ("Q", "E", "J", "H", "L", "C", "A0", "A1", "A2", "A3")


@dataclass(frozen=True)
class TruncatedOrthoscheme:
    """Full geometric realization of a doubly truncated orthoscheme."""

    params: SchlafliParams
    gram: GramPair
    Q: ProjPoint
    E: ProjPoint
    J: ProjPoint
    H: ProjPoint
    L: ProjPoint
    C: ProjPoint
    A0: ProjPoint
    A1: ProjPoint
    A2: ProjPoint
    A3: ProjPoint
    pi0: ProjForm
    pi3: ProjForm
    placement: PlacementScalars

    def vertex(self, name: str) -> ProjPoint:
        if name not in _VERTEX_NAMES:
            raise KeyError(f"unknown vertex {name!r}")
        return getattr(self, name)

    def base_form(self, plane: str) -> ProjForm:
        """Polar form of a truncating plane, 'QEJ' (= pol A3) or 'HLC' (= pol A0)."""
        if plane == "QEJ":
            return self.pi3
        if plane == "HLC":
            return self.pi0
        raise KeyError(f"unknown base plane {plane!r}")

    def to_dict(self) -> dict:
        p = self.params
        return {
            "params": {"u": p.u, "v": p.v, "w": p.w, "B": p.B,
                       "series": p.series, "extendable": p.extendable},
            "matrices": {"b": self.gram.b.tolist(), "h": self.gram.h.tolist(),
                         "B": self.gram.B},
            "vertices": {n: self.vertex(n).v.tolist() for n in _VERTEX_NAMES},
            "polar_planes": {"pi0": self.pi0.v.tolist(), "pi3": self.pi3.v.tolist()},
            "placement": {k: getattr(self.placement, k)
                          for k in ("x", "y", "z0", "z1", "z2", "zH", "t1", "t2")},
        }


def _realize_gram(h: np.ndarray) -> np.ndarray:
    """Rows a_0..a_3 with <a_i, a_j> = h_ij under diag(-1,1,1,1)."""
    evals, evecs = np.linalg.eigh(h)
    order = np.argsort(evals)
    evals, evecs = evals[order], evecs[:, order]
    if not (evals[0] < 0 and np.all(evals[1:] > 0)):
        raise EmbeddingFailure(f"Gram matrix has signature eigenvalues {evals}")
    return evecs @ np.diag(np.sqrt(np.abs(evals)))


def _incidence_parameter(p: np.ndarray, q: np.ndarray, form: np.ndarray) -> float:
    """t with <(1-t) p + t q, form> = 0 for chart-normalized p, q (linear)."""
    bp, bq = bilinear(p, form), bilinear(q, form)
    return bp / (bp - bq)


def embed(params: SchlafliParams) -> TruncatedOrthoscheme:
    """Realize the orthoscheme in the canonical coordinate placement.

    Steps: realize vertex vectors from the Gram matrix, form the truncation
    points q = a2 h33 - a3 h23 (and its five siblings), then move everything
    into the frame obtained by Lorentz Gram-Schmidt over (q, e, j, a3).  In
    that frame Q sits at the origin, pol(A3) is the plane x3 = 0, and the
    remaining coordinates match the placement pattern by construction.
    """
    gp = gram(params)
    h = gp.h
    A = _realize_gram(h)
    a0, a1, a2, a3 = A

    q = a2 * h[3, 3] - a3 * h[2, 3]
    e = a1 * h[3, 3] - a3 * h[1, 3]
    j = a0 * h[3, 3] - a3 * h[0, 3]

    # Lorentz Gram-Schmidt: timelike f0 from q, then spacelike f2, f1, f3.
    # a3 is already orthogonal to q, e, j (they lie on its polar plane).
    f0 = q / math.sqrt(-bilinear(q, q))
    g2 = e + bilinear(e, f0) * f0
    f2 = g2 / math.sqrt(bilinear(g2, g2))
    g1 = j + bilinear(j, f0) * f0 - bilinear(j, f2) * f2
    f1 = g1 / math.sqrt(bilinear(g1, g1))
    f3 = a3 / math.sqrt(bilinear(a3, a3))

    frame = np.vstack([f0, f1, f2, f3])
    signs = np.array([-1.0, 1.0, 1.0, 1.0])

    def coords(vector):
        return signs * (frame @ (signs * vector))  # (-<p,f0>, <p,f1>, ...)

    def chart(vector):
        c = coords(vector)
        if abs(c[0]) < 1e-12:
            raise EmbeddingFailure(f"vertex unexpectedly at chart infinity: {c}")
        return c / c[0]

    Q, E, J = chart(q), chart(e), chart(j)
    A0c, A1c, A2c = chart(a0), chart(a1), chart(a2)
    A3c = coords(a3)
    A3c = A3c / A3c[3]  # exactly (0,0,0,1) up to roundoff in the first three

    x, y = J[1], E[2]
    z0, z1, z2 = -A0c[3], -A1c[3], -A2c[3]
    pattern_ok = (
        x > 0 and y > 0 and min(z0, z1, z2) > 0
        and abs(J[2] - y) < 1e-9 and abs(A1c[2] - y) < 1e-9
        and abs(A0c[1] - x) < 1e-9 and abs(A0c[2] - y) < 1e-9
        and max(abs(A1c[1]), abs(A2c[1]), abs(A2c[2])) < 1e-9
        and max(abs(A3c[0]), abs(A3c[1]), abs(A3c[2])) < 1e-9
    )
    if not pattern_ok:
        raise EmbeddingFailure("coordinate placement pattern violated")

    pi3 = ProjForm([0.0, 0.0, 0.0, 1.0])
    pi0 = ProjForm(A0c)  # polar form of A0 shares its coordinate tuple

    # H on edge A0 A3: same chart (x, y) column, cut by pol(A0)
    hv = a3 * h[0, 0] - a0 * h[0, 3]
    Hc = chart(hv)
    zH = -Hc[3]

    # L on A2 A0 and C on A1 A0 from the linear incidence with pol(A0)
    t1 = _incidence_parameter(A2c, A0c, pi0.v)
    t2 = _incidence_parameter(A1c, A0c, pi0.v)
    Lc = (1.0 - t1) * A2c + t1 * A0c
    Cc = (1.0 - t2) * A1c + t2 * A0c

    placement = PlacementScalars(x=float(x), y=float(y), z0=float(z0),
                                 z1=float(z1), z2=float(z2), zH=float(zH),
                                 t1=float(t1), t2=float(t2))
    return TruncatedOrthoscheme(
        params=params, gram=gp,
        Q=ProjPoint(Q), E=ProjPoint(E), J=ProjPoint(J),
        H=ProjPoint(Hc), L=ProjPoint(Lc), C=ProjPoint(Cc),
        A0=ProjPoint(A0c), A1=ProjPoint(A1c), A2=ProjPoint(A2c),
        A3=ProjPoint(A3c), pi0=pi0, pi3=pi3, placement=placement,
    )


def closed_form_distances(gp: GramPair) -> dict[str, float]:
    """The five edge distances expressible directly in the h_ij entries.

    Returns {"QE", "QJ", "EA1", "QA2", "JH"} in hyperbolic length units.
    These come from the truncation-point vectors, e.g.
    cosh d(Q,E) = (h13 h23 - h12 h33) / sqrt((h22 h33 - h23^2)(h11 h33 - h13^2)),
    and for the common perpendicular of the two polar planes
    cosh d(J,H) = -h03 / sqrt(h00 h33).
    """
    h = gp.h
    m22 = h[2, 2] * h[3, 3] - h[2, 3] ** 2   # <q,q>/h33, negative
    m11 = h[1, 1] * h[3, 3] - h[1, 3] ** 2   # <e,e>/h33, negative
    m00 = h[0, 0] * h[3, 3] - h[0, 3] ** 2   # <j,j>/h33, negative
    cQE = (h[1, 3] * h[2, 3] - h[1, 2] * h[3, 3]) / math.sqrt(m22 * m11)
    cQJ = (h[0, 3] * h[2, 3] - h[0, 2] * h[3, 3]) / math.sqrt(m22 * m00)
    cEA1 = math.sqrt(m11 / (h[1, 1] * h[3, 3]))
    cQA2 = math.sqrt(m22 / (h[2, 2] * h[3, 3]))
    cJH = -h[0, 3] / math.sqrt(h[0, 0] * h[3, 3])
    return {
        "QE": _acosh_guarded(cQE),
        "QJ": _acosh_guarded(cQJ),
        "EA1": _acosh_guarded(cEA1),
        "QA2": _acosh_guarded(cQA2),
        "JH": _acosh_guarded(cJH),
    }


def build(u: float, v: float, w: float) -> TruncatedOrthoscheme:
    """classify_params + embed in one call."""
    return embed(classify_params(u, v, w))
