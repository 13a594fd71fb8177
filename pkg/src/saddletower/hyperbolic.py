"""Poincare-disk geometry kernel.

Points live in the closed unit disk: interior points carry coordinates,
boundary ("ideal") points carry only an angle.  The metric is the conformal
one, 4/(1-x^2-y^2)^2 (dx^2+dy^2).  Geodesics are diameters and circular arcs
orthogonal to the unit circle; horocycles are stored by (ideal base, Busemann
level) and realized as Euclidean circles only on demand.

Conventions
-----------
* busemann(xi, p) is normalized to 0 at the origin and decreases at unit rate
  along the geodesic ray toward xi.
* A Horocycle at level s is the set {busemann = -s}; s = 0 passes through the
  origin, larger s means a smaller horocycle (deeper toward the base point).
* side_of(g, p) returns +1 for the component of the disk to the *left* when
  traversing g from its first endpoint to its second.

Everything here is a pure function of immutable values.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

EPS_DISK = 1e-12          # interior points must satisfy |p|^2 < 1 - EPS_DISK
SIDE_BAND = 1e-9          # |signed distance| below this counts as "on" a geodesic
TANGENCY_BAND = 1e-9      # circle intersection counts use this band around tangency
ROOT_XTOL = 1e-12         # bracketing bisection tolerance for 1-D solves


class GeometryError(ValueError):
    """Invalid input to a geometry operation (ideal where interior needed, etc.)."""


# ---------------------------------------------------------------------------
# points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HPoint:
    """A point of the closed disk: interior (x, y) or ideal (boundary angle)."""

    kind: str                     # "interior" | "ideal"
    x: float = 0.0
    y: float = 0.0
    theta: float = 0.0

    @staticmethod
    def interior(x: float, y: float) -> "HPoint":
        if x * x + y * y >= 1.0 - EPS_DISK:
            raise GeometryError(
                f"point ({x}, {y}) too close to the rim; use an ideal point")
        return HPoint("interior", float(x), float(y))

    @staticmethod
    def ideal(theta: float) -> "HPoint":
        return HPoint("ideal", theta=float(theta) % (2.0 * math.pi))

    @property
    def is_ideal(self) -> bool:
        return self.kind == "ideal"

    def as_complex(self) -> complex:
        if self.is_ideal:
            raise GeometryError("ideal point has no interior coordinates")
        return complex(self.x, self.y)

    def rim_xy(self) -> tuple[float, float]:
        """Euclidean coordinates: on the unit circle for ideal points.

        Only for Euclidean carrier computations; never feed rim coordinates to
        hyperbolic formulas.
        """
        if self.is_ideal:
            return (math.cos(self.theta), math.sin(self.theta))
        return (self.x, self.y)

    def close_to(self, other: "HPoint", tol: float = 1e-12) -> bool:
        if self.kind != other.kind:
            return False
        if self.is_ideal:
            d = abs((self.theta - other.theta + math.pi) % (2.0 * math.pi) - math.pi)
            return d <= tol
        return math.hypot(self.x - other.x, self.y - other.y) <= tol


def _require_interior(p: HPoint, what: str = "operation") -> None:
    if p.is_ideal:
        raise GeometryError(f"{what} requires an interior point")


def conformal_factor(p: HPoint) -> float:
    """lambda(p) = 2 / (1 - |p|^2), the length scale of the metric at p."""
    _require_interior(p)
    return 2.0 / (1.0 - (p.x * p.x + p.y * p.y))


# ---------------------------------------------------------------------------
# distance and Busemann functions
# ---------------------------------------------------------------------------

def dist(p: HPoint, q: HPoint) -> float:
    """Hyperbolic distance between interior points."""
    if p.is_ideal or q.is_ideal:
        raise GeometryError("distance to an ideal point is infinite")
    zp, zq = p.as_complex(), q.as_complex()
    num = abs(zp - zq)
    if num == 0.0:
        return 0.0
    den = abs(1.0 - zp.conjugate() * zq)
    return 2.0 * math.atanh(num / den)


def busemann(xi: HPoint, p: HPoint) -> float:
    """Busemann function of the ideal point xi, zero at the origin.

    busemann(xi, .) decreases at unit rate along the ray toward xi; its level
    sets are the horocycles based at xi.
    """
    if not xi.is_ideal:
        raise GeometryError("busemann base point must be ideal")
    _require_interior(p, "busemann")
    cx, cy = math.cos(xi.theta), math.sin(xi.theta)
    d2 = (cx - p.x) ** 2 + (cy - p.y) ** 2
    return math.log(d2 / (1.0 - (p.x * p.x + p.y * p.y)))


# ---------------------------------------------------------------------------
# Minkowski helpers (hyperboloid model, used for signed distances to geodesics)
# ---------------------------------------------------------------------------

def _mink_point(p: HPoint) -> tuple[float, float, float]:
    """Lift to the hyperboloid (interior) or the null cone (ideal)."""
    if p.is_ideal:
        return (1.0, math.cos(p.theta), math.sin(p.theta))
    s = 1.0 - (p.x * p.x + p.y * p.y)
    return ((1.0 + p.x * p.x + p.y * p.y) / s, 2.0 * p.x / s, 2.0 * p.y / s)


def _mink_dot(a, b) -> float:
    return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _mink_cross(a, b) -> tuple[float, float, float]:
    # v with <v, a> = <v, b> = 0:  v = J (a x b), J = diag(-1, 1, 1)
    cx = a[1] * b[2] - a[2] * b[1]
    cy = a[2] * b[0] - a[0] * b[2]
    cz = a[0] * b[1] - a[1] * b[0]
    return (-cx, cy, cz)


# ---------------------------------------------------------------------------
# geodesics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Geodesic:
    """Geodesic through two points of the closed disk, oriented a -> b.

    Carrier is either a diameter segment or a circular arc with Euclidean
    center ``center`` and radius ``radius`` satisfying |c|^2 = r^2 + 1.
    ``normal`` is the unit spacelike Minkowski normal oriented so that
    sinh(signed distance) = <lift(p), normal> is positive on the left of the
    traversal a -> b.
    """

    a: HPoint
    b: HPoint
    is_diameter: bool
    center: tuple[float, float]       # arc only
    radius: float                     # arc only
    normal: tuple[float, float, float]
    _canon: "Isometry | None" = field(default=None, compare=False, repr=False)

    def signed_sinh(self, p: HPoint) -> float:
        """sinh of the signed distance from p to the carrier (left positive)."""
        return _mink_dot(_mink_point(p), self.normal)

    def signed_dist(self, p: HPoint) -> float:
        _require_interior(p, "signed_dist")
        return math.asinh(self.signed_sinh(p))

    def ideal_endpoints(self) -> tuple[HPoint, HPoint]:
        """The two ends of the complete carrier, in traversal order."""
        if self.is_diameter:
            ax, ay = self.a.rim_xy()
            bx, by = self.b.rim_xy()
            ang = math.atan2(by - ay, bx - ax)
            return (HPoint.ideal(ang + math.pi), HPoint.ideal(ang))
        # carrier circle meets the unit circle where |p|=1 and |p-c|=r
        cx, cy = self.center
        c2 = cx * cx + cy * cy
        # intersection chord: p . c = (|c|^2 - r^2 + 1)/2 = 1
        # param: p = c/|c|^2 + t * perp(c), |p| = 1
        t = math.sqrt(max(c2 - 1.0, 0.0)) / c2
        px, py = cx / c2, cy / c2
        e1 = (px - t * cy, py + t * cx)
        e2 = (px + t * cy, py - t * cx)
        th1, th2 = math.atan2(e1[1], e1[0]), math.atan2(e2[1], e2[0])
        # order along traversal: first endpoint behind a, second beyond b
        pa = self._angle_of(self.a.rim_xy())
        pb = self._angle_of(self.b.rim_xy())
        q1 = self._angle_of(e1)
        sweep = _angle_diff(pb, pa)
        lead1 = _angle_diff(q1, pa)
        if sweep * lead1 > 0:
            return (HPoint.ideal(th2), HPoint.ideal(th1))
        return (HPoint.ideal(th1), HPoint.ideal(th2))

    def _angle_of(self, xy: tuple[float, float]) -> float:
        return math.atan2(xy[1] - self.center[1], xy[0] - self.center[0])

    def canonical_isometry(self) -> "Isometry":
        """Isometry sending the carrier to the x-axis, travel direction +x."""
        if self._canon is None:
            canon = _carrier_to_xaxis(self)
            object.__setattr__(self, "_canon", canon)
        return self._canon

    def point_at(self, t: float) -> HPoint:
        """Unit-speed point, t measured from the canonical foot.

        For interior first endpoint a, t is arclength from a (t=0 at a);
        otherwise t is arclength from the carrier point nearest the origin.
        """
        canon = self.canonical_isometry()
        return canon.inverse()(HPoint.interior(math.tanh(t / 2.0), 0.0))

    def length(self) -> float:
        if self.a.is_ideal or self.b.is_ideal:
            return math.inf
        return dist(self.a, self.b)


def _angle_diff(a: float, b: float) -> float:
    return (a - b + math.pi) % (2.0 * math.pi) - math.pi


def geodesic_between(p: HPoint, q: HPoint) -> Geodesic:
    """Oriented geodesic from p to q (interior or ideal endpoints)."""
    if p.close_to(q):
        raise GeometryError("geodesic endpoints must be distinct")
    rp = _mink_point(p)
    rq = _mink_point(q)
    w = _mink_cross(rp, rq)
    w2 = _mink_dot(w, w)
    if w2 <= 0.0:
        raise GeometryError("degenerate geodesic (endpoints coincide or are antipodal lifts)")
    s = 1.0 / math.sqrt(w2)
    w = (w[0] * s, w[1] * s, w[2] * s)

    # carrier: solve 2 c . p = 1 + |p|^2 (interior) / c . xi = 1 (ideal)
    ax, ay = p.rim_xy()
    bx, by = q.rim_xy()
    ra = 0.5 * (1.0 + ax * ax + ay * ay) if not p.is_ideal else 1.0
    rb = 0.5 * (1.0 + bx * bx + by * by) if not q.is_ideal else 1.0
    det = ax * by - ay * bx
    scale = max(abs(ax) + abs(ay), abs(bx) + abs(by))
    if abs(det) <= 1e-14 * max(scale * scale, 1e-30):
        diameter = True
        center, radius = (0.0, 0.0), 0.0
    else:
        cx = (ra * by - rb * ay) / det
        cy = (ax * rb - bx * ra) / det
        r2 = cx * cx + cy * cy - 1.0
        if r2 <= 0.0:
            diameter = True
            center, radius = (0.0, 0.0), 0.0
        else:
            diameter = False
            center, radius = (cx, cy), math.sqrt(r2)

    g = Geodesic(p, q, diameter, center, radius, w)

    # orient the normal: +1 on the left of travel, tested at a carrier point
    m, tangent = _carrier_point_and_tangent(g)
    nx, ny = -tangent[1], tangent[0]              # left normal
    eps = 2e-4 * (1.0 - (m[0] ** 2 + m[1] ** 2))
    probe = HPoint.interior(m[0] + eps * nx, m[1] + eps * ny)
    if g.signed_sinh(probe) < 0.0:
        g = Geodesic(p, q, diameter, center, radius, (-w[0], -w[1], -w[2]))
    return g


def _carrier_point_and_tangent(g: Geodesic) -> tuple[tuple[float, float], tuple[float, float]]:
    """An interior point on the carrier plus the unit tangent of travel there."""
    ax, ay = g.a.rim_xy()
    bx, by = g.b.rim_xy()
    if g.is_diameter:
        if not g.a.is_ideal:
            m = (ax, ay) if (ax * ax + ay * ay) > 0 else (0.0, 0.0)
        elif not g.b.is_ideal:
            m = (bx, by)
        else:
            m = (0.0, 0.0)
        t = math.hypot(bx - ax, by - ay)
        return m, ((bx - ax) / t, (by - ay) / t)
    cx, cy = g.center
    nc = math.hypot(cx, cy)
    m = (cx * (1.0 - g.radius / nc), cy * (1.0 - g.radius / nc))
    # tangent at m, oriented toward b's angle around the carrier circle
    pa = math.atan2(ay - cy, ax - cx)
    pb = math.atan2(by - cy, bx - cx)
    pm = math.atan2(m[1] - cy, m[0] - cx)
    sweep = _angle_diff(pb, pa)
    tang = (-(m[1] - cy), m[0] - cx)
    tn = math.hypot(*tang)
    tang = (tang[0] / tn, tang[1] / tn)
    if sweep < 0:
        tang = (-tang[0], -tang[1])
    return m, tang


def _carrier_to_xaxis(g: Geodesic) -> "Isometry":
    """Isometry mapping the carrier onto the x-axis, travel direction -> +x.

    If a is interior, a maps to the origin; else the carrier point nearest the
    origin does.
    """
    if not g.a.is_ideal:
        base = g.a
    else:
        m, _ = _carrier_point_and_tangent(g)
        base = HPoint.interior(*m)
    T = Isometry.to_origin(base)
    if not g.b.is_ideal:
        w = T(g.b).as_complex()
        ang = cmath.phase(w)
    else:
        ang = T(g.b).theta
    return Isometry.rotation(-ang).compose(T)


def side_of(g: Geodesic, p: HPoint) -> int:
    """-1/0/+1: the component of the disk minus the carrier holding p.

    +1 is the left side when traversing g from its first to its second
    endpoint.  Interior points within SIDE_BAND (hyperbolic) of the carrier,
    and ideal points at its ends, report 0.
    """
    s = g.signed_sinh(p)
    if p.is_ideal:
        if abs(s) <= 1e-12:
            return 0
        return 1 if s > 0 else -1
    d = math.asinh(s)
    if abs(d) <= SIDE_BAND:
        return 0
    return 1 if d > 0 else -1


# ---------------------------------------------------------------------------
# horocycles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Horocycle:
    """Horocycle by (ideal base, Busemann level); the curve {busemann = -level}.

    level = 0 passes through the origin; the Euclidean radius 1/(1+e^level)
    strictly decreases as the level increases.
    """

    base: HPoint
    level: float

    def __post_init__(self):
        if not self.base.is_ideal:
            raise GeometryError("horocycle base must be ideal")

    def euclid(self) -> tuple[tuple[float, float], float]:
        """Euclidean (center, radius) of the realization, computed on demand."""
        r = 1.0 / (1.0 + math.exp(self.level))
        cx, cy = math.cos(self.base.theta), math.sin(self.base.theta)
        return ((cx * (1.0 - r), cy * (1.0 - r)), r)

    def point_toward_base(self) -> HPoint:
        """The point of the horocycle on the ray origin -> base."""
        t = math.tanh(self.level / 2.0)
        return HPoint.interior(t * math.cos(self.base.theta),
                               t * math.sin(self.base.theta))


def dist_point_horocycle(p: HPoint, h: Horocycle) -> float:
    """Signed distance from p to the horocycle; positive outside the horodisk."""
    return busemann(h.base, p) + h.level


def level_of(xi: HPoint, p: HPoint) -> float:
    """The level of the horocycle at xi passing through p."""
    return -busemann(xi, p)


# ---------------------------------------------------------------------------
# circles and intersections
# ---------------------------------------------------------------------------

def circle_euclid(center: HPoint, rho: float) -> tuple[tuple[float, float], float]:
    """Euclidean (center, radius) of the hyperbolic circle dist(., center)=rho."""
    _require_interior(center, "circle_euclid")
    t = math.tanh(rho / 2.0)
    c2 = center.x * center.x + center.y * center.y
    den = 1.0 - t * t * c2
    f = (1.0 - t * t) / den
    return ((center.x * f, center.y * f), t * (1.0 - c2) / den)


def _euclid_circle_circle(c1, r1, c2, r2) -> list[tuple[float, float]]:
    """Intersection points of two Euclidean circles (0, 1 or 2 points)."""
    dx, dy = c2[0] - c1[0], c2[1] - c1[1]
    d = math.hypot(dx, dy)
    if d == 0.0:
        return []
    a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d)
    h2 = r1 * r1 - a * a
    ux, uy = dx / d, dy / d
    mx, my = c1[0] + a * ux, c1[1] + a * uy
    if h2 < 0.0:
        return []
    h = math.sqrt(h2)
    if h == 0.0:
        return [(mx, my)]
    return [(mx - h * uy, my + h * ux), (mx + h * uy, my - h * ux)]


def _polish_two_residuals(p: HPoint, f1, f2) -> HPoint:
    """One 2x2 Newton step on (f1, f2)(x, y) with central differences."""
    step = 1e-7
    x, y = p.x, p.y

    def val(f, xx, yy):
        return f(HPoint.interior(xx, yy))

    r1, r2 = val(f1, x, y), val(f2, x, y)
    a11 = (val(f1, x + step, y) - val(f1, x - step, y)) / (2 * step)
    a12 = (val(f1, x, y + step) - val(f1, x, y - step)) / (2 * step)
    a21 = (val(f2, x + step, y) - val(f2, x - step, y)) / (2 * step)
    a22 = (val(f2, x, y + step) - val(f2, x, y - step)) / (2 * step)
    det = a11 * a22 - a12 * a21
    if abs(det) < 1e-30:
        return p
    dx = (r1 * a22 - r2 * a12) / det
    dy = (a11 * r2 - a21 * r1) / det
    nx, ny = x - dx, y - dy
    if nx * nx + ny * ny >= 1.0 - EPS_DISK:
        return p
    cand = HPoint.interior(nx, ny)
    if abs(val(f1, nx, ny)) + abs(val(f2, nx, ny)) < abs(r1) + abs(r2):
        return cand
    return p


def circle_intersect(c1: HPoint, r1: float, c2: HPoint, r2: float) -> list[HPoint]:
    """Intersection of two hyperbolic circles: 0, 1 or 2 interior points.

    Two points iff |r1 - r2| < dist(c1, c2) < r1 + r2 outside the tangency
    band; exact tangencies (within TANGENCY_BAND) return a single point.
    """
    if r1 <= 0.0 or r2 <= 0.0:
        raise GeometryError("circle radii must be positive")
    d = dist(c1, c2)
    if d <= TANGENCY_BAND and abs(r1 - r2) <= TANGENCY_BAND:
        raise GeometryError("coincident circles")
    if d > r1 + r2 + TANGENCY_BAND or d < abs(r1 - r2) - TANGENCY_BAND:
        return []
    if abs(d - (r1 + r2)) <= TANGENCY_BAND:
        g = geodesic_between(c1, c2)
        off = dist(c1, g.point_at(0.0))  # 0 unless c1 is not the base; it is
        return [g.point_at(r1)] if off == 0.0 else [g.point_at(r1)]
    if abs(d - abs(r1 - r2)) <= TANGENCY_BAND:
        g = geodesic_between(c1, c2)
        t = r1 if r1 <= r2 + d else -r1
        return [g.point_at(t)]

    e1, rr1 = circle_euclid(c1, r1)
    e2, rr2 = circle_euclid(c2, r2)
    pts = _euclid_circle_circle(e1, rr1, e2, rr2)
    out = []
    for (x, y) in pts:
        if x * x + y * y >= 1.0 - EPS_DISK:
            continue
        p = HPoint.interior(x, y)
        p = _polish_two_residuals(
            p, lambda q: dist(q, c1) - r1, lambda q: dist(q, c2) - r2)
        out.append(p)
    return out


def horocycle_intersect(h1: Horocycle, h2: Horocycle) -> list[HPoint]:
    """Intersection points of two horocycles with distinct bases (0, 1 or 2)."""
    if h1.base.close_to(h2.base):
        raise GeometryError("horocycle bases must be distinct")
    e1, r1 = h1.euclid()
    e2, r2 = h2.euclid()
    pts = _euclid_circle_circle(e1, r1, e2, r2)
    out = []
    for (x, y) in pts:
        if x * x + y * y >= 1.0 - EPS_DISK:
            continue
        p = HPoint.interior(x, y)
        p = _polish_two_residuals(
            p,
            lambda q: busemann(h1.base, q) + h1.level,
            lambda q: busemann(h2.base, q) + h2.level)
        out.append(p)
    return out


def geodesic_horocycle_crossing(g: Geodesic, h: Horocycle) -> HPoint:
    """The crossing of a geodesic ending at h.base with the horocycle.

    The carrier meets the realization at the base point and exactly one other
    point; that second point is returned.
    """
    if not (g.a.close_to(h.base) or g.b.close_to(h.base)):
        raise GeometryError("geodesic must end at the horocycle base")
    ec, er = h.euclid()
    bx, by = h.base.rim_xy()
    if g.is_diameter:
        ax, ay = g.a.rim_xy()
        bx2, by2 = g.b.rim_xy()
        ux, uy = bx2 - ax, by2 - ay
        n = math.hypot(ux, uy)
        ux, uy = ux / n, uy / n
        # line through origin: points t*(ux,uy); |t u - ec| = er
        pb = ux * ec[0] + uy * ec[1]
        disc = pb * pb - (ec[0] ** 2 + ec[1] ** 2 - er * er)
        disc = max(disc, 0.0)
        cands = [(pb + math.sqrt(disc)), (pb - math.sqrt(disc))]
        pts = [(t * ux, t * uy) for t in cands]
    else:
        pts = _euclid_circle_circle(g.center, g.radius, ec, er)
    best, bestd = None, -1.0
    for (x, y) in pts:
        d = math.hypot(x - bx, y - by)
        if d > bestd:
            best, bestd = (x, y), d
    if best is None or bestd < 1e-9:
        raise GeometryError("no transversal horocycle crossing found")
    p = HPoint.interior(*best)
    return _polish_two_residuals(
        p,
        lambda q: busemann(h.base, q) + h.level,
        lambda q: g.signed_sinh(q))


# ---------------------------------------------------------------------------
# 1-D root finding (bracketing bisection + one Newton polish)
# ---------------------------------------------------------------------------

def bisect_root(f, lo: float, hi: float, *, xtol: float = ROOT_XTOL,
                flo: float | None = None, fhi: float | None = None) -> float:
    """Bracketing bisection to xtol in the parameter, then one Newton polish."""
    a, b = float(lo), float(hi)
    fa = f(a) if flo is None else flo
    fb = f(b) if fhi is None else fhi
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if fa * fb > 0.0:
        raise GeometryError(f"no sign change on [{lo}, {hi}] (f: {fa:.3e}, {fb:.3e})")
    while b - a > xtol:
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            break
        fm = f(m)
        if fm == 0.0:
            return m
        if fa * fm < 0.0:
            b, fb = m, fm
        else:
            a, fa = m, fm
    x = 0.5 * (a + b)
    # single Newton polish with a central-difference derivative
    step = max(1e-7 * abs(x), 1e-10 * (hi - lo), 1e-300)
    fx = f(x)
    dfx = (f(x + step) - f(x - step)) / (2.0 * step)
    if dfx != 0.0:
        xn = x - fx / dfx
        if lo <= xn <= hi and abs(f(xn)) <= abs(fx):
            return xn
    return x


def equidistant_ideal(a: HPoint, b: HPoint, arc: tuple[float, float]) -> HPoint:
    """The ideal point xi on the given angular arc with busemann(xi,a)=busemann(xi,b).

    The arc (theta_lo, theta_hi) is traversed counterclockwise from theta_lo;
    the difference of Busemann functions must change sign across it.
    """
    _require_interior(a)
    _require_interior(b)
    lo, hi = arc
    width = (hi - lo) % (2.0 * math.pi)
    if width == 0.0:
        width = 2.0 * math.pi

    def f(t: float) -> float:
        xi = HPoint.ideal(lo + t)
        return busemann(xi, a) - busemann(xi, b)

    t = bisect_root(f, 0.0, width)
    return HPoint.ideal(lo + t)


# ---------------------------------------------------------------------------
# isometries
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Isometry:
    """Disk isometry z -> (a z + b) / (conj(b) z + conj(a)), |a|^2-|b|^2 = 1.

    With ``reflect`` set, z is conjugated first (orientation-reversing).
    """

    a: complex
    b: complex
    reflect: bool = False

    @staticmethod
    def identity() -> "Isometry":
        return Isometry(1.0 + 0.0j, 0.0j)

    @staticmethod
    def rotation(alpha: float) -> "Isometry":
        return Isometry(cmath.exp(0.5j * alpha), 0.0j)

    @staticmethod
    def to_origin(p: HPoint) -> "Isometry":
        """The isometry z -> (z - p)/(1 - conj(p) z) sending p to the origin."""
        _require_interior(p, "to_origin")
        zp = p.as_complex()
        s = math.sqrt(1.0 - abs(zp) ** 2)
        return Isometry(1.0 / s, -zp / s)

    @staticmethod
    def from_origin(p: HPoint) -> "Isometry":
        return Isometry.to_origin(p).inverse()

    @staticmethod
    def translate_along(g: Geodesic, d: float) -> "Isometry":
        """Hyperbolic translation along g by distance d (toward its b end)."""
        canon = g.canonical_isometry()
        t = math.tanh(d / 2.0)
        s = 1.0 / math.sqrt(1.0 - t * t)
        shift = Isometry(complex(s, 0.0), complex(s * t, 0.0))
        return canon.inverse().compose(shift).compose(canon)

    @staticmethod
    def reflect_across(g: Geodesic) -> "Isometry":
        canon = g.canonical_isometry()
        conj = Isometry(1.0 + 0.0j, 0.0j, reflect=True)
        return canon.inverse().compose(conj).compose(canon)

    def _normalized(self) -> "Isometry":
        n = math.sqrt(abs(self.a) ** 2 - abs(self.b) ** 2)
        return Isometry(self.a / n, self.b / n, self.reflect)

    def compose(self, other: "Isometry") -> "Isometry":
        """self after other."""
        oa, ob = other.a, other.b
        if self.reflect:
            oa, ob = oa.conjugate(), ob.conjugate()
        a = self.a * oa + self.b * ob.conjugate()
        b = self.a * ob + self.b * oa.conjugate()
        return Isometry(a, b, self.reflect ^ other.reflect)._normalized()

    def inverse(self) -> "Isometry":
        a, b = self.a.conjugate(), -self.b
        if self.reflect:
            a, b = a.conjugate(), b.conjugate()
        return Isometry(a, b, self.reflect)

    def __call__(self, p: HPoint) -> HPoint:
        if p.is_ideal:
            z = cmath.exp(1j * p.theta)
            if self.reflect:
                z = z.conjugate()
            w = (self.a * z + self.b) / (self.b.conjugate() * z + self.a.conjugate())
            return HPoint.ideal(cmath.phase(w))
        z = p.as_complex()
        if self.reflect:
            z = z.conjugate()
        w = (self.a * z + self.b) / (self.b.conjugate() * z + self.a.conjugate())
        if abs(w) >= 1.0:
            w = w / abs(w) * (1.0 - 1e-15)
        return HPoint.interior(w.real, w.imag)

    def apply_horocycle(self, h: Horocycle) -> Horocycle:
        base = self(h.base)
        on_curve = self(h.point_toward_base())
        return Horocycle(base, level_of(base, on_curve))

    def apply_geodesic(self, g: Geodesic) -> Geodesic:
        return geodesic_between(self(g.a), self(g.b))


def apply_isometry(t: Isometry, p: HPoint) -> HPoint:
    return t(p)


def random_isometry(rng) -> Isometry:
    """A generic orientation-preserving isometry (for property tests)."""
    alpha = rng.uniform(0.0, 2.0 * math.pi)
    beta = rng.uniform(0.0, 2.0 * math.pi)
    r = rng.uniform(0.0, 0.85)
    phi = rng.uniform(0.0, 2.0 * math.pi)
    p = HPoint.interior(r * math.cos(phi), r * math.sin(phi))
    return (Isometry.rotation(alpha)
            .compose(Isometry.from_origin(p))
            .compose(Isometry.rotation(beta)))


# ---------------------------------------------------------------------------
# small extras used across modules
# ---------------------------------------------------------------------------

def midpoint(p: HPoint, q: HPoint) -> HPoint:
    g = geodesic_between(p, q)
    return g.point_at(0.5 * dist(p, q))


def direction_angle(at: HPoint, toward: HPoint) -> float:
    """Angle at ``at`` of the geodesic ray toward ``toward`` (after moving at to 0)."""
    T = Isometry.to_origin(at)
    w = T(toward)
    if w.is_ideal:
        return w.theta
    return math.atan2(w.y, w.x)


def angle_between(at: HPoint, p: HPoint, q: HPoint) -> float:
    """Interior angle at ``at`` between the rays toward p and q, in [0, pi]."""
    a1 = direction_angle(at, p)
    a2 = direction_angle(at, q)
    d = abs(_angle_diff(a1, a2))
    return d


def point_at_angle_dist(at: HPoint, ang: float, d: float) -> HPoint:
    """The point at hyperbolic distance d from ``at`` in local direction ang."""
    T = Isometry.from_origin(at)
    t = math.tanh(d / 2.0)
    return T(HPoint.interior(t * math.cos(ang), t * math.sin(ang)))
