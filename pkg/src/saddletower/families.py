"""Constructors for the three domain families and their degenerating sequences.

All three constructors consume exactly 2k-3 free reals beyond the
normalization (k, and the edge length where applicable):

* bounded:    interior angles theta_2 .. theta_{2k-2} (turtle walk, closing
              vertex from a circle intersection);
* semi-ideal: the interior-vertex chain (first arc length, then
              direction/length pairs), ideal vertices from the equal
              horocycle-distance condition;
* ideal:      boundary angles of p_3 .. p_{2k-1}; the last vertex solves
              alpha = beta.

Vertex indexing is 0-based here; position 0 plays the role of the first
vertex, so "odd" vertices of the construction sit at even indices.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .domains import (
    DomainError,
    PolygonalDomain,
    check_condition_star,
    js_check,
    truncated_length,
)
from .hyperbolic import (
    GeometryError,
    HPoint,
    Horocycle,
    Isometry,
    angle_between,
    bisect_root,
    busemann,
    circle_intersect,
    dist,
    equidistant_ideal,
    geodesic_between,
    geodesic_horocycle_crossing,
    horocycle_intersect,
    level_of,
    point_at_angle_dist,
    side_of,
)

_TWO_PI = 2.0 * math.pi


class FamilyError(ValueError):
    """Parameters outside the feasible set of a constructor."""


def _require_count(name: str, values, k: int) -> None:
    want = 2 * k - 3
    if len(values) != want:
        raise FamilyError(
            f"{name}: expected 2k-3 = {want} parameters for k={k}, got {len(values)}")


# ---------------------------------------------------------------------------
# parameter records
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundedParams:
    k: int
    ell: float
    angles: tuple[float, ...]          # interior angles at p_2 .. p_{2k-2}

    def __post_init__(self):
        if self.k < 2:
            raise FamilyError("k must be at least 2")
        if not self.ell > 0.0:
            raise FamilyError("edge length must be positive")
        _require_count("bounded family", self.angles, self.k)
        for a in self.angles:
            if not 0.0 < a < math.pi:
                raise FamilyError(f"interior angle {a} outside (0, pi)")


@dataclass(frozen=True)
class SemiIdealParams:
    """Chain of interior vertices: first arc length, then (turn, length) pairs.

    The turn entries are the interior angles of the chain at the middle odd
    vertices, in (0, pi)."""

    k: int
    params: tuple[float, ...]

    def __post_init__(self):
        if self.k < 2:
            raise FamilyError("k must be at least 2")
        _require_count("semi-ideal family", self.params, self.k)
        if not self.params[0] > 0.0:
            raise FamilyError("first arc length must be positive")
        rest = self.params[1:]
        for turn, length in zip(rest[0::2], rest[1::2]):
            if not 0.0 < turn < math.pi:
                raise FamilyError(f"chain angle {turn} outside (0, pi)")
            if not length > 0.0:
                raise FamilyError("arc lengths must be positive")


@dataclass(frozen=True)
class IdealParams:
    k: int
    thetas: tuple[float, ...]          # boundary angles of p_3 .. p_{2k-1}

    def __post_init__(self):
        if self.k < 2:
            raise FamilyError("k must be at least 2")
        _require_count("ideal family", self.thetas, self.k)
        prev = math.pi / 2.0
        for t in self.thetas:
            if not prev < t < _TWO_PI:
                raise FamilyError(
                    "boundary angles must increase strictly within (pi/2, 2*pi)")
            prev = t


@dataclass(frozen=True)
class SequenceStep:
    n: int
    ell_n: float
    domain: PolygonalDomain
    drift: float
    delta_n: float | None = None


# ---------------------------------------------------------------------------
# bounded domains
# ---------------------------------------------------------------------------

def interior_angles(domain: PolygonalDomain) -> list[float]:
    """Interior angle at each vertex (finite vertices only)."""
    out = []
    n = domain.n
    for i, v in enumerate(domain.vertices):
        if v.is_ideal:
            out.append(0.0)
            continue
        out.append(angle_between(v, domain.vertices[(i - 1) % n],
                                 domain.vertices[(i + 1) % n]))
    return out


def bounded_from_angles(params: BoundedParams) -> PolygonalDomain:
    """Equal-edge bounded domain from its 2k-3 interior angle parameters.

    p_1 sits at the origin with the first edge along +x; the walk keeps the
    interior on the left, and the last vertex is the circle-intersection point
    that closes the polygon convexly.
    """
    k, ell = params.k, params.ell
    verts = [HPoint.interior(0.0, 0.0),
             HPoint.interior(math.tanh(ell / 2.0), 0.0)]
    for theta in params.angles:
        at = verts[-1]
        toward_prev = _direction(at, verts[-2])
        verts.append(point_at_angle_dist(at, toward_prev - theta, ell))
    # closing vertex: circles of radius ell about the last and first vertices
    p_last, p_first = verts[-1], verts[0]
    gap = dist(p_last, p_first)
    if not gap < 2.0 * ell:
        raise FamilyError(
            f"closing intersection empty: dist(p_{2*k-1}, p_1) = {gap:.6f} >= 2*ell")
    if gap < 1e-12:
        raise FamilyError("chain closed onto the first vertex; degenerate angles")
    candidates = circle_intersect(p_last, ell, p_first, ell)
    errors = []
    for cand in candidates:
        domain = PolygonalDomain(tuple(verts + [cand]))
        try:
            domain.validate()
        except DomainError as exc:
            errors.append(str(exc))
            continue
        _check_edges_equal(domain, ell)
        return domain
    raise FamilyError(
        "no convex closing vertex; the angle vector is infeasible "
        f"({'; '.join(errors) if errors else 'no intersection candidates'})")


def _direction(at: HPoint, toward: HPoint) -> float:
    T = Isometry.to_origin(at)
    w = T(toward)
    return w.theta if w.is_ideal else math.atan2(w.y, w.x)


def _check_edges_equal(domain: PolygonalDomain, ell: float,
                       tol: float = 1e-9) -> None:
    n = domain.n
    for i in range(n):
        l = dist(domain.vertices[i], domain.vertices[(i + 1) % n])
        if abs(l - ell) > tol:
            raise FamilyError(f"edge {i} has length {l}, expected {ell}")


def symmetric_bounded(k: int, lam: float, mu: float) -> tuple[PolygonalDomain, float]:
    """Vertices alternating on circles of radius lam and mu about the origin.

    Odd-position vertices sit at angles 2*pi*i/k, even ones at the bisecting
    angles; all 2k edges automatically share one length, returned alongside.
    """
    if k < 2 or lam <= 0.0 or mu <= 0.0:
        raise FamilyError("k >= 2 and positive radii required")
    t_l, t_m = math.tanh(lam / 2.0), math.tanh(mu / 2.0)
    verts = []
    for i in range(k):
        a = _TWO_PI * i / k
        verts.append(HPoint.interior(t_l * math.cos(a), t_l * math.sin(a)))
        b = a + math.pi / k
        verts.append(HPoint.interior(t_m * math.cos(b), t_m * math.sin(b)))
    domain = PolygonalDomain(tuple(verts), dihedral_order=(2 * k if lam == mu else k))
    ell = dist(verts[0], verts[1])
    _check_edges_equal(domain, ell)
    domain.validate()
    return domain, ell


def symmetric_bounded_with_edge(k: int, ell: float) -> PolygonalDomain:
    """The lam = mu symmetric domain with prescribed edge length."""

    def f(lam: float) -> float:
        t = math.tanh(lam / 2.0)
        a = HPoint.interior(t, 0.0)
        b = HPoint.interior(t * math.cos(math.pi / k), t * math.sin(math.pi / k))
        return dist(a, b) - ell

    lam = bisect_root(f, 1e-6, 8.0)
    domain, got = symmetric_bounded(k, lam, lam)
    if abs(got - ell) > 1e-9:
        raise FamilyError(f"edge solve failed: {got} vs {ell}")
    return domain


# ---------------------------------------------------------------------------
# semi-ideal domains
# ---------------------------------------------------------------------------

def _odd_chain(params: SemiIdealParams) -> list[HPoint]:
    """The k interior vertices from the 2k-3 chain parameters."""
    pts = [HPoint.interior(0.0, 0.0)]
    first_len = params.params[0]
    pts.append(HPoint.interior(math.tanh(first_len / 2.0), 0.0))
    rest = params.params[1:]
    for turn, length in zip(rest[0::2], rest[1::2]):
        at = pts[-1]
        toward_prev = _direction(at, pts[-2])
        pts.append(point_at_angle_dist(at, toward_prev - turn, length))
    return pts


def _outward_ideal(a: HPoint, b: HPoint, inward_side: int) -> HPoint:
    """Equal-Busemann ideal point on the far side of geodesic(a, b)."""
    g = geodesic_between(a, b)
    e1, e2 = g.ideal_endpoints()
    th1, th2 = e1.theta, e2.theta
    for lo, hi in ((th1, th2), (th2, th1)):
        width = (hi - lo) % _TWO_PI
        mid = HPoint.ideal(lo + 0.5 * width)
        if side_of(g, mid) == -inward_side:
            return equidistant_ideal(a, b, (lo, hi))
    raise FamilyError("could not identify the outward boundary arc")


def semiideal_from_params(params: SemiIdealParams) -> PolygonalDomain:
    """Semi-ideal domain: interior chain plus equal-distance ideal vertices.

    Horocycle levels are fitted so every ideal vertex sits at one common
    distance ell_0 from its interior neighbours, with the separation bound
    dist(p_prev, p_next) < 2*ell_0 held with a 10% margin.
    """
    odd = _odd_chain(params)
    k = params.k
    # the chain turns keep the interior on the left of each diagonal
    verts: list[HPoint] = []
    max_sep = 0.0
    for i in range(k):
        a = odd[i]
        b = odd[(i + 1) % k]
        inward = _chain_inward_side(odd, i)
        verts.append(a)
        verts.append(_outward_ideal(a, b, inward))
        max_sep = max(max_sep, dist(a, b))
    ell0 = 0.55 * max_sep  # 10% margin over the separation bound
    for _ in range(60):
        levels = {}
        for i in range(k):
            xi = verts[2 * i + 1]
            levels[2 * i + 1] = ell0 - busemann(xi, verts[2 * i])
        domain = PolygonalDomain(tuple(verts), levels)
        try:
            domain.validate()
        except DomainError:
            ell0 += 0.25
            continue
        report = check_condition_star(domain)
        if not report.passed:
            raise FamilyError(
                f"condition (star) violated after construction: {report}")
        return domain
    raise FamilyError("could not fit admissible horocycle levels")


def _chain_inward_side(odd: list[HPoint], i: int) -> int:
    """Side of geodesic(odd[i], odd[i+1]) holding the rest of the chain."""
    k = len(odd)
    g = geodesic_between(odd[i], odd[(i + 1) % k])
    votes = [side_of(g, odd[j]) for j in range(k) if j not in (i, (i + 1) % k)]
    votes = [v for v in votes if v != 0]
    if votes and all(v == votes[0] for v in votes):
        return votes[0]
    if k == 2:
        # two interior vertices only: orient by the walk, interior on the left
        return 1 if i == 0 else 1
    raise FamilyError("interior vertex chain is not convex")


def symmetric_semiideal(k: int, lam: float) -> PolygonalDomain:
    """Interior vertices on the radius-lam circle, ideal ones at bisectors."""
    if k < 2 or lam <= 0.0:
        raise FamilyError("k >= 2 and lam > 0 required")
    t = math.tanh(lam / 2.0)
    verts: list[HPoint] = []
    for i in range(k):
        a = _TWO_PI * i / k
        verts.append(HPoint.interior(t * math.cos(a), t * math.sin(a)))
        verts.append(HPoint.ideal(a + math.pi / k))
    max_sep = dist(verts[0], verts[2]) if k > 2 else dist(verts[0], verts[2])
    ell0 = 0.55 * max_sep
    for _ in range(60):
        levels = {2 * i + 1: ell0 - busemann(verts[2 * i + 1], verts[2 * i])
                  for i in range(k)}
        domain = PolygonalDomain(tuple(verts), levels, dihedral_order=k)
        try:
            domain.validate()
        except DomainError:
            ell0 += 0.25
            continue
        return domain
    raise FamilyError("could not fit admissible horocycle levels")


def semiideal_sequence(limit: PolygonalDomain, n: int, *,
                       check: bool = True) -> SequenceStep:
    """Bounded domain Omega_n: ideal vertices replaced by circle intersections.

    ell_n = ell_0 + n; each new vertex is the radius-ell_n circle intersection
    about its interior neighbours, on the old ideal vertex's side of the
    diagonal, giving 2k equal edges.
    """
    if n < 0:
        raise FamilyError("sequence index must be nonnegative")
    star = check_condition_star(limit)
    if not star.passed:
        raise FamilyError("limit domain violates condition (star)")
    if check:
        verdict = js_check(limit)
        if not verdict.passed:
            warnings.warn("limit domain fails the Jenkins-Serrin check",
                          stacklevel=2)
    ell_n = star.ell0 + n
    nv = limit.n
    verts = list(limit.vertices)
    drift = 0.0
    for j in range(1, nv, 2):
        xi = limit.vertices[j]
        prev_v = limit.vertices[(j - 1) % nv]
        next_v = limit.vertices[(j + 1) % nv]
        pts = circle_intersect(prev_v, ell_n, next_v, ell_n)
        if len(pts) != 2:
            raise FamilyError(
                f"circle intersection degenerate at vertex {j} (n={n})")
        gamma = geodesic_between(prev_v, next_v)
        want = side_of(gamma, xi)
        chosen = [p for p in pts if side_of(gamma, p) == want]
        if len(chosen) != 1:
            raise FamilyError(f"side selection failed at vertex {j}")
        p_new = chosen[0]
        # the new vertex sits between the old edges, outside no horocycle level
        level_new = level_of(xi, p_new)
        if level_new <= limit.horocycle_levels[j] + n:
            # must lie inside the region cut by H_j(n)
            warnings.warn(f"vertex {j} not beyond H_{j}(n); sequence shallow")
        verts[j] = p_new
        ang = math.atan2(p_new.y, p_new.x) % _TWO_PI
        drift = max(drift, abs((ang - xi.theta + math.pi) % _TWO_PI - math.pi))
    domain = PolygonalDomain(tuple(verts), {},
                             dihedral_order=limit.dihedral_order)
    domain.validate()
    _check_edges_equal(domain, ell_n)
    return SequenceStep(n, ell_n, domain, drift)


# ---------------------------------------------------------------------------
# ideal domains
# ---------------------------------------------------------------------------

def _alternating_chord_sum(thetas: list[float]) -> float:
    """alpha - beta for the ideal polygon with the given boundary angles.

    Independent of horocycle levels: the level contributions cancel around the
    cycle, leaving the alternating sum of 2*log(chord/2)."""
    n = len(thetas)
    total = 0.0
    for j in range(n):
        a, b = thetas[j], thetas[(j + 1) % n]
        chord = 2.0 * abs(math.sin(0.5 * (a - b)))
        sign = 1.0 if j % 2 == 0 else -1.0
        total += sign * 2.0 * math.log(chord / 2.0)
    return total


def ideal_from_params(params: IdealParams) -> PolygonalDomain:
    """Ideal domain with p_1 = ideal(0), p_2 = ideal(pi/2); the last vertex is
    solved so that alpha = beta, and horocycle levels are fitted so that all
    consecutive horocycle gaps equal one common ell_0."""
    thetas = [0.0, math.pi / 2.0, *params.thetas]
    lo = thetas[-1]

    def f(theta_last: float) -> float:
        return _alternating_chord_sum(thetas + [theta_last])

    eps = 1e-9
    theta_last = bisect_root(f, lo + eps, _TWO_PI - eps)
    if not lo < theta_last < _TWO_PI:
        raise FamilyError("closing angle violates the cyclic order")
    thetas.append(theta_last)
    return _fit_ideal_levels(thetas, params.k)


def _fit_ideal_levels(thetas: list[float], k: int,
                      dihedral_order: int | None = None) -> PolygonalDomain:
    n = len(thetas)
    cs = []
    for j in range(n):
        chord = 2.0 * abs(math.sin(0.5 * (thetas[j] - thetas[(j + 1) % n])))
        cs.append(2.0 * math.log(chord / 2.0))
    base = 1.0 + max(0.0, -min(cs))
    for _ in range(80):
        # solve s_j + s_{j+1} = base - c_j with the minimum-norm free parameter
        b = [0.0] * n
        for j in range(1, n):
            b[j] = base - cs[j - 1] - b[j - 1]
        sigma = [1.0 if j % 2 == 0 else -1.0 for j in range(n)]
        tau = -sum(s * v for s, v in zip(sigma, b)) / n
        levels = {j: b[j] + sigma[j] * tau for j in range(n)}
        verts = tuple(HPoint.ideal(t) for t in thetas)
        domain = PolygonalDomain(verts, levels, dihedral_order=dihedral_order)
        try:
            domain.validate()
        except DomainError:
            base += 0.5
            continue
        return domain
    raise FamilyError("could not fit horocycle levels with equal gaps")


def symmetric_ideal(k: int) -> PolygonalDomain:
    """Ideal 2k-gon with equally spaced vertices (self-conjugate family)."""
    thetas = [math.pi * j / k for j in range(2 * k)]
    return _fit_ideal_levels(thetas, k, dihedral_order=2 * k)


def horocycle_gap(domain: PolygonalDomain) -> float:
    """Common truncated length of the edges of an ideal domain (validated)."""
    n = domain.n
    gaps = [truncated_length(domain.vertices[j], domain.vertices[(j + 1) % n],
                             domain.horocycle_levels.get(j),
                             domain.horocycle_levels.get((j + 1) % n))
            for j in range(n)]
    g0 = gaps[0]
    if max(abs(g - g0) for g in gaps) > 1e-9:
        raise FamilyError(f"horocycle gaps are not equal: {gaps}")
    return g0


def ideal_sequence(limit: PolygonalDomain, n: int, *,
                   check: bool = True) -> SequenceStep:
    """Semi-ideal domain Omega_n approximating an ideal limit domain.

    delta_n is the largest distance between the two crossings of each level-n
    horocycle with its incident edges; ell_n = ell_0 + 2n + 2*delta_n.  New
    interior vertices replace the even-position ideal ones as intersections of
    enlarged horocycles at their neighbours.
    """
    if limit.kind != "ideal":
        raise FamilyError("ideal_sequence needs an ideal limit domain")
    if n < 0:
        raise FamilyError("sequence index must be nonnegative")
    if check:
        verdict = js_check(limit)
        if not verdict.passed:
            warnings.warn("ideal limit fails the Jenkins-Serrin check",
                          stacklevel=2)
    ell0 = horocycle_gap(limit)
    nv = limit.n
    edges = limit.edges()

    # delta_n: horocycle-edge crossing separations at level + n
    delta_n = 0.0
    for j in range(nv):
        h = Horocycle(limit.vertices[j], limit.horocycle_levels[j] + n)
        e_in = edges[(j - 1) % nv]     # ends at vertex j
        e_out = edges[j]               # starts at vertex j
        x1 = geodesic_horocycle_crossing(e_in, h)
        x2 = geodesic_horocycle_crossing(e_out, h)
        delta_n = max(delta_n, dist(x1, x2))
    ell_n = ell0 + 2.0 * n + 2.0 * delta_n

    # enlarged horocycles at the odd-position (kept) vertices
    big = {}
    for j in range(1, nv, 2):
        big[j] = Horocycle(limit.vertices[j],
                           limit.horocycle_levels[j] + n - ell_n)

    verts = list(limit.vertices)
    levels = {}
    drift = 0.0
    for j in range(0, nv, 2):
        xi = limit.vertices[j]
        jm, jp = (j - 1) % nv, (j + 1) % nv
        pts = horocycle_intersect(big[jm], big[jp])
        if len(pts) != 2:
            raise FamilyError(
                f"horocycle intersection degenerate at vertex {j} (n={n})")
        gamma = geodesic_between(limit.vertices[jm], limit.vertices[jp])
        want = side_of(gamma, xi)
        chosen = [p for p in pts if side_of(gamma, p) == want]
        if len(chosen) != 1:
            raise FamilyError(f"side selection failed at vertex {j}")
        p_new = chosen[0]
        verts[j] = p_new
        ang = math.atan2(p_new.y, p_new.x) % _TWO_PI
        drift = max(drift, abs((ang - xi.theta + math.pi) % _TWO_PI - math.pi))
    for j in range(1, nv, 2):
        levels[j] = limit.horocycle_levels[j] + n

    domain = PolygonalDomain(tuple(verts), levels,
                             dihedral_order=limit.dihedral_order)
    domain.validate()
    star = check_condition_star(domain)
    if not star.passed:
        raise FamilyError("constructed Omega_n violates condition (star)")
    if abs(star.ell0 - ell_n) > 1e-8:
        raise FamilyError(
            f"fitted ell_0 = {star.ell0} disagrees with ell_n = {ell_n}")
    return SequenceStep(n, ell_n, domain, drift, delta_n)


def chain_to_bounded(ideal_limit: PolygonalDomain, n: int, m: int) -> PolygonalDomain:
    """Ideal -> semi-ideal (step n) -> bounded (step m)."""
    step1 = ideal_sequence(ideal_limit, n, check=False)
    step2 = semiideal_sequence(step1.domain, m, check=False)
    return step2.domain


# ---------------------------------------------------------------------------
# counterexample fixtures
# ---------------------------------------------------------------------------

def fig1_domain(ell: float = 1.0) -> PolygonalDomain:
    """Eight equal edges from a geodesic square translated twice along an axis.

    The square is bounded by a segment, its translate, and two connector
    edges; the union of three translates is convex with all edges of length
    ell but fails the inscribed-polygon inequality (with equality).
    """
    half = math.tanh(ell / 4.0)
    a = HPoint.interior(0.0, half)
    b = HPoint.interior(0.0, -half)
    axis = geodesic_between(HPoint.interior(-0.5, 0.0), HPoint.interior(0.5, 0.0))

    def f(d: float) -> float:
        phi = Isometry.translate_along(axis, d)
        return dist(a, phi(a)) - ell

    d_star = bisect_root(f, 1e-6, 4.0 * (1.0 + ell))
    phi = Isometry.translate_along(axis, d_star)
    a1, b1 = phi(a), phi(b)
    a2, b2 = phi(a1), phi(b1)
    a3, b3 = phi(a2), phi(b2)
    verts = (a, b, b1, b2, b3, a3, a2, a1)
    domain = PolygonalDomain(verts)
    domain.validate()
    _check_edges_equal(domain, ell)
    return domain


def fig2_domain(ell: float = 1.6) -> PolygonalDomain:
    """Ten equal edges: a right-angled-at-four-vertices hexagon reflected.

    The hexagon has edges of length ell, right angles except at two opposite
    vertices (strictly smaller there); reflecting it across an edge avoiding
    those vertices yields a ten-edge equal-length domain failing the check.
    """
    hexagon = _fig2_hexagon(ell)
    p = hexagon  # vertices p1..p6, p1/p4 the sharp ones; reflect across p2-p3
    mirror = Isometry.reflect_across(geodesic_between(p[1], p[2]))
    verts = (p[2], p[3], p[4], p[5], p[0], p[1],
             mirror(p[0]), mirror(p[5]), mirror(p[4]), mirror(p[3]))
    domain = PolygonalDomain(verts)
    domain.validate()
    _check_edges_equal(domain, ell)
    return domain


def _fig2_hexagon(ell: float) -> list[HPoint]:
    """Hexagon with all edges ell, right angles at four vertices.

    Symmetric about both axes: p1 = (-d, 0), p2 = (-x, y), p3 = (x, y),
    p4 = (d, 0), p5 = (x, -y), p6 = (-x, -y).  Solved by nested bisection
    on y with x(y) and d(y) forced by the two edge-length constraints.
    """

    def x_of(y: float) -> float:
        def g(x: float) -> float:
            return dist(HPoint.interior(-x, y), HPoint.interior(x, y)) - ell
        hi = math.sqrt(max(1.0 - y * y, 0.0)) - 1e-9
        return bisect_root(g, 1e-9, hi * 0.999)

    def angle_residual(y: float) -> float:
        x = x_of(y)
        p2 = HPoint.interior(-x, y)
        p3 = HPoint.interior(x, y)

        def g(d: float) -> float:
            return dist(p3, HPoint.interior(d, 0.0)) - ell

        d = bisect_root(g, x, 0.999999)
        p4 = HPoint.interior(d, 0.0)
        return angle_between(p3, p2, p4) - math.pi / 2.0

    # bracket: scan y upward until the right-angle residual changes sign
    ys = [0.02 + 0.005 * i for i in range(180)]
    prev_y, prev_r = None, None
    root_y = None
    for y in ys:
        try:
            r = angle_residual(y)
        except GeometryError:
            continue
        if prev_r is not None and (r < 0.0) != (prev_r < 0.0):
            root_y = bisect_root(angle_residual, prev_y, y)
            break
        prev_y, prev_r = y, r
    if root_y is None:
        raise FamilyError(f"no right-angled hexagon with edge length {ell}")
    y = root_y
    x = x_of(y)
    p3 = HPoint.interior(x, y)

    def g(d: float) -> float:
        return dist(p3, HPoint.interior(d, 0.0)) - ell

    d = bisect_root(g, x, 0.999999)
    verts = [HPoint.interior(-d, 0.0), HPoint.interior(-x, y), p3,
             HPoint.interior(d, 0.0), HPoint.interior(x, -y),
             HPoint.interior(-x, -y)]
    sharp = angle_between(verts[0], verts[1], verts[5])
    if not sharp < math.pi / 2.0:
        raise FamilyError(
            f"edge length {ell} gives angle {sharp:.4f} >= pi/2 at the tips; "
            "increase ell")
    return verts
