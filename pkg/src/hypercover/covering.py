"""Two-hyperball coverings of a doubly truncated orthoscheme.

One hyperball is based on the truncating plane QEJ, the other on HLC.  A
covering configuration is fixed by a contact point T on one of the six
non-polar edges: the heights are h1 = d(T, QEJ) and h2 = d(T, HLC), so T
lies on both equidistant surfaces.  The configuration covers the orthoscheme
iff it covers all six edges, which reduces per edge to a quadratic
inequality in the segment parameter.  Density is the total hyperball-piece
volume over the orthoscheme volume.
"""

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.optimize import brentq

from .lorentz import GeometryError, point_plane_distance, segment_point
from .orthoscheme import SchlafliParams, TruncatedOrthoscheme, classify_params, embed
from . import volume as _vol

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
MERGE_TOL = 1e-12           # interval-union assembly tolerance
DEFAULT_GRID = 257
DEFAULT_REFINE_TOL = 1e-12


class NoFeasiblePoint(GeometryError):
    """No contact parameter on the edge yields a covering."""


class NoRoot(GeometryError):
    """Equal-height equation has constant sign along the edge."""


class EdgeId(Enum):
    """The six non-polar edges; value = (endpoint at t=0, endpoint at t=1).

    t = 0 sits at the endpoint on a polar plane (Q, E, J, L, C); A1A2 runs
    from A1.
    """

    QA2 = ("Q", "A2")
    EA1 = ("E", "A1")
    JH = ("J", "H")
    LA2 = ("L", "A2")
    CA1 = ("C", "A1")
    A1A2 = ("A1", "A2")

    @property
    def endpoints(self):
        return self.value


class BasePlane(Enum):
    QEJ = "QEJ"
    HLC = "HLC"


@dataclass(frozen=True)
class EdgeReport:
    covered: bool
    witness: tuple[float, float] | None = None


@dataclass
class CoveringConfig:
    """One contact configuration and (once checked) its per-edge coverage."""

    orthoscheme: TruncatedOrthoscheme
    contact_edge: EdgeId
    t: float
    h1: float
    h2: float
    feasible: bool | None = None
    per_edge: dict | None = None


@dataclass
class DensityResult:
    config: CoveringConfig
    density: float
    vol_H1: float
    vol_H2: float
    vol_F: float
    optimizer_trace: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        c = self.config
        p = c.orthoscheme.params
        per_edge = []
        if c.per_edge is not None:
            for e in EdgeId:
                rep = c.per_edge[e]
                per_edge.append({"edge": e.name, "covered": rep.covered,
                                 "witness": list(rep.witness) if rep.witness else None})
        return {
            "params": {"u": p.u, "v": p.v, "w": p.w},
            "contact_edge": c.contact_edge.name,
            "t": c.t, "h1": c.h1, "h2": c.h2,
            "density": self.density,
            "volumes": {"H1": self.vol_H1, "H2": self.vol_H2, "F": self.vol_F},
            "feasible": c.feasible,
            "per_edge": per_edge,
        }


# ---------------------------------------------------------------------------
# per-orthoscheme cache of the scalar data the hot loops need

class _Geometry:
    """Chart vectors, base forms, quadratic coefficients, and volumes."""

    def __init__(self, o: TruncatedOrthoscheme):
        self.o = o
        self.ends = {e: (o.vertex(e.endpoints[0]).v, o.vertex(e.endpoints[1]).v)
                     for e in EdgeId}
        self.forms = {BasePlane.QEJ: o.pi3.v, BasePlane.HLC: o.pi0.v}
        # for each (edge, plane): <P0,n>, <P1,n>, <P0,P0>, <P0,P1>, <P1,P1>, <n,n>
        self.quad = {}
        for e, (p0, p1) in self.ends.items():
            g00, g01, g11 = _bl(p0, p0), _bl(p0, p1), _bl(p1, p1)
            for plane, n in self.forms.items():
                self.quad[e, plane] = (_bl(p0, n), _bl(p1, n), g00, g01, g11,
                                       _bl(n, n))
        rep = _vol.volume_report(o)
        self.vol_F = rep.orthoscheme_volume
        self.area_QEJ = rep.area_QEJ
        self.area_HLC = rep.area_HLC

    def height(self, plane: BasePlane, edge: EdgeId, t: float) -> float:
        b0, b1, g00, g01, g11, gnn = self.quad[edge, plane]
        bt = b0 + t * (b1 - b0)
        gt = g00 + 2.0 * t * (g01 - g00) + t * t * (g00 - 2.0 * g01 + g11)
        return math.asinh(abs(bt) / math.sqrt(-gt * gnn))

    def density_value(self, h1: float, h2: float) -> float:
        return (_vol.hyperball_piece_volume(self.area_QEJ, h1)
                + _vol.hyperball_piece_volume(self.area_HLC, h2)) / self.vol_F


def _bl(x, y) -> float:
    return float(x[1:] @ y[1:] - x[0] * y[0])


# ---------------------------------------------------------------------------
# public distance/height operations

def edge_plane_distance(o: TruncatedOrthoscheme, plane, edge: EdgeId,
                        t: float) -> float:
    """Distance from the edge point at parameter t to a truncating plane."""
    plane = BasePlane(plane) if not isinstance(plane, BasePlane) else plane
    n0, n1 = edge.endpoints
    T = segment_point(o.vertex(n0), o.vertex(n1), t)
    return point_plane_distance(T, o.base_form(plane.value))


def heights_at(o: TruncatedOrthoscheme, contact_edge: EdgeId,
               t: float) -> tuple[float, float]:
    """Hyperball heights (h1, h2) placing the contact point on both surfaces."""
    return (edge_plane_distance(o, BasePlane.QEJ, contact_edge, t),
            edge_plane_distance(o, BasePlane.HLC, contact_edge, t))


# ---------------------------------------------------------------------------
# edge coverage by closed-form quadratic roots

def _covered_intervals(coeffs, h: float):
    """Sub-intervals of [0,1] where the edge lies within distance h of a plane.

    The condition sinh^2 d(T(t)) <= sinh^2 h unfolds to
    f(t) = <T,n>^2 + <T,T> <n,n> sinh^2(h) <= 0 with f quadratic in t.
    """
    b0, b1, g00, g01, g11, gnn = coeffs
    s2 = math.sinh(h) ** 2
    db = b1 - b0
    ca = db * db + (g00 - 2.0 * g01 + g11) * gnn * s2
    cb = 2.0 * b0 * db + 2.0 * (g01 - g00) * gnn * s2
    cc = b0 * b0 + g00 * gnn * s2
    if abs(ca) < 1e-300:
        if abs(cb) < 1e-300:
            return [(0.0, 1.0)] if cc <= 0.0 else []
        r = -cc / cb
        iv = (0.0, min(1.0, r)) if cb > 0.0 else (max(0.0, r), 1.0)
        return [iv] if iv[0] < iv[1] else []
    disc = cb * cb - 4.0 * ca * cc
    if disc <= 0.0:
        return [] if ca > 0.0 else [(0.0, 1.0)]
    sq = math.sqrt(disc)
    r1 = (-cb - sq) / (2.0 * ca)
    r2 = (-cb + sq) / (2.0 * ca)
    if r1 > r2:
        r1, r2 = r2, r1
    if ca > 0.0:  # <= 0 between the roots
        lo, hi = max(0.0, r1), min(1.0, r2)
        return [(lo, hi)] if lo < hi else []
    out = []
    if r1 > 0.0:
        out.append((0.0, min(1.0, r1)))
    if r2 < 1.0:
        out.append((max(0.0, r2), 1.0))
    return out


def _uncovered_gaps(intervals, tol: float = MERGE_TOL):
    """Maximal open sub-intervals of [0,1] not covered by the given intervals."""
    gaps = []
    cursor = 0.0
    for lo, hi in sorted(intervals):
        if lo > cursor + tol:
            gaps.append((cursor, lo))
        cursor = max(cursor, hi)
        if cursor >= 1.0 - tol:
            return gaps
    if cursor < 1.0 - tol:
        gaps.append((cursor, 1.0))
    return gaps


def _edge_report(geom: _Geometry, edge: EdgeId, h1: float, h2: float) -> EdgeReport:
    ivs = (_covered_intervals(geom.quad[edge, BasePlane.QEJ], h1)
           + _covered_intervals(geom.quad[edge, BasePlane.HLC], h2))
    gaps = _uncovered_gaps(ivs)
    # confirm each candidate gap pointwise; root roundoff at interval ends can
    # fabricate slivers far below the merge tolerance's meaning
    real = []
    for lo, hi in gaps:
        mid = 0.5 * (lo + hi)
        d1 = geom.height(BasePlane.QEJ, edge, mid)
        d2 = geom.height(BasePlane.HLC, edge, mid)
        if d1 > h1 * (1.0 + 1e-12) + 1e-13 and d2 > h2 * (1.0 + 1e-12) + 1e-13:
            real.append((lo, hi))
    if not real:
        return EdgeReport(covered=True)
    widest = max(real, key=lambda g: g[1] - g[0])
    return EdgeReport(covered=False, witness=widest)


def edge_covered(o: TruncatedOrthoscheme, edge: EdgeId, h1: float,
                 h2: float) -> EdgeReport:
    """Check whether hyperballs of heights (h1, h2) cover one edge."""
    if h1 < 0 or h2 < 0:
        raise _vol.NegativeHeight(f"heights ({h1}, {h2}) must be >= 0")
    return _edge_report(_Geometry(o), edge, h1, h2)


def coverage_check(o: TruncatedOrthoscheme, config: CoveringConfig,
                   _geom: _Geometry | None = None) -> CoveringConfig:
    """Fill the per-edge coverage report and the feasibility flag."""
    geom = _geom if _geom is not None else _Geometry(o)
    per_edge = {e: _edge_report(geom, e, config.h1, config.h2) for e in EdgeId}
    config.per_edge = per_edge
    config.feasible = all(rep.covered for rep in per_edge.values())
    return config


def config_at(o: TruncatedOrthoscheme, contact_edge: EdgeId, t: float,
              check: bool = True) -> CoveringConfig:
    """Covering configuration with contact at parameter t of the given edge."""
    h1, h2 = heights_at(o, contact_edge, t)
    cfg = CoveringConfig(o, contact_edge, t, h1, h2)
    return coverage_check(o, cfg) if check else cfg


# ---------------------------------------------------------------------------
# density and optimizers

def density(o: TruncatedOrthoscheme, config: CoveringConfig) -> DensityResult:
    """Covering density (vol H1 + vol H2) / vol F for a configuration."""
    geom = _Geometry(o)
    if config.feasible is None:
        coverage_check(o, config, _geom=geom)
    v1 = _vol.hyperball_piece_volume(geom.area_QEJ, config.h1)
    v2 = _vol.hyperball_piece_volume(geom.area_HLC, config.h2)
    return DensityResult(config=config, density=(v1 + v2) / geom.vol_F,
                         vol_H1=v1, vol_H2=v2, vol_F=geom.vol_F)


def _golden_section(f, lo: float, hi: float, tol: float):
    """Deterministic golden-section minimizer; tolerates +inf values."""
    c = hi - GOLDEN * (hi - lo)
    d = lo + GOLDEN * (hi - lo)
    fc, fd = f(c), f(d)
    iters = 0
    while hi - lo > tol:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - GOLDEN * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + GOLDEN * (hi - lo)
            fd = f(d)
        iters += 1
    return 0.5 * (lo + hi), iters


def _result_at(geom: _Geometry, contact_edge: EdgeId, t: float,
               trace: dict) -> DensityResult:
    o = geom.o
    h1 = geom.height(BasePlane.QEJ, contact_edge, t)
    h2 = geom.height(BasePlane.HLC, contact_edge, t)
    cfg = coverage_check(o, CoveringConfig(o, contact_edge, t, h1, h2), _geom=geom)
    v1 = _vol.hyperball_piece_volume(geom.area_QEJ, h1)
    v2 = _vol.hyperball_piece_volume(geom.area_HLC, h2)
    return DensityResult(config=cfg, density=(v1 + v2) / geom.vol_F,
                         vol_H1=v1, vol_H2=v2, vol_F=geom.vol_F,
                         optimizer_trace=trace)


def minimize_noncongruent(o: TruncatedOrthoscheme, contact_edge: EdgeId,
                          grid: int = DEFAULT_GRID,
                          refine_tol: float = DEFAULT_REFINE_TOL) -> DensityResult:
    """Minimize covering density over the contact parameter on one edge.

    Coarse uniform grid over t in [0,1], then golden-section refinement of
    the bracketing cell; parameters where any edge is left uncovered are
    rejected with +inf density.  Deterministic for fixed grid and tolerance.
    """
    geom = _Geometry(o)
    evaluations = 0

    def objective(t):
        nonlocal evaluations
        evaluations += 1
        h1 = geom.height(BasePlane.QEJ, contact_edge, t)
        h2 = geom.height(BasePlane.HLC, contact_edge, t)
        for e in EdgeId:
            if not _edge_report(geom, e, h1, h2).covered:
                return math.inf
        return geom.density_value(h1, h2)

    ts = np.linspace(0.0, 1.0, grid)
    vals = [objective(t) for t in ts]
    i = int(np.argmin(vals))
    if not math.isfinite(vals[i]):
        raise NoFeasiblePoint(
            f"no covering for contact on {contact_edge.name} at any grid point")
    lo, hi = ts[max(0, i - 1)], ts[min(grid - 1, i + 1)]
    t_star, iters = _golden_section(objective, lo, hi, refine_tol)
    trace = {"grid": grid, "bracket": (float(lo), float(hi)),
             "golden_iterations": iters, "evaluations": evaluations,
             "refine_tol": refine_tol}
    return _result_at(geom, contact_edge, t_star, trace)


def solve_congruent(o: TruncatedOrthoscheme,
                    contact_edge: EdgeId = EdgeId.A1A2) -> DensityResult:
    """Contact point with equal heights: root of h1(t) - h2(t) on the edge.

    Raises NoRoot when the difference has constant sign over [0,1] (the
    expected outcome on QA2 and CA1).
    """
    geom = _Geometry(o)

    def diff(t):
        return (geom.height(BasePlane.QEJ, contact_edge, t)
                - geom.height(BasePlane.HLC, contact_edge, t))

    d0, d1 = diff(0.0), diff(1.0)
    if d0 == 0.0:
        t_star = 0.0
    elif d1 == 0.0:
        t_star = 1.0
    elif d0 * d1 > 0.0:
        raise NoRoot(
            f"h1 - h2 keeps sign {math.copysign(1, d0):+.0f} on {contact_edge.name}")
    else:
        t_star = brentq(diff, 0.0, 1.0, xtol=1e-14)
    return _result_at(geom, contact_edge, float(t_star),
                      {"method": "brentq", "xtol": 1e-14})


@dataclass
class FamilyResult:
    u: float
    result: DensityResult
    extendable: bool = False
    optimizer_trace: dict = field(default_factory=dict)


def optimize_family_u37(u_lo: float, u_hi: float, grid: int = DEFAULT_GRID,
                        refine_tol: float = 1e-10) -> FamilyResult:
    """Minimize the A1A2-contact covering density of {u,3,7} over u.

    Nested search: for each u the inner t-minimizer runs, and the outer
    search over u applies the same grid-plus-golden-section scheme to the
    per-u optimum.  The resulting configuration is a local covering only;
    non-integer u does not extend to a tiling of the whole space.
    """
    if not (6.0 < u_lo < u_hi < 7.0):
        raise GeometryError(f"family range ({u_lo}, {u_hi}) not inside (6, 7)")

    def per_u(u):
        return minimize_noncongruent(embed(classify_params(u, 3, 7)),
                                     EdgeId.A1A2)

    def objective(u):
        return per_u(u).density

    us = np.linspace(u_lo, u_hi, grid)
    vals = [objective(u) for u in us]
    i = int(np.argmin(vals))
    lo, hi = us[max(0, i - 1)], us[min(grid - 1, i + 1)]
    u_star, iters = _golden_section(objective, lo, hi, refine_tol)
    best = per_u(u_star)
    trace = {"grid": grid, "bracket": (float(lo), float(hi)),
             "golden_iterations": iters, "refine_tol": refine_tol}
    return FamilyResult(u=float(u_star), result=best, extendable=False,
                        optimizer_trace=trace)
