"""Disk-model geometry kernel: examples with independent oracles + invariants."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from saddletower.hyperbolic import (
    EPS_DISK,
    GeometryError,
    Geodesic,
    HPoint,
    Horocycle,
    Isometry,
    angle_between,
    bisect_root,
    busemann,
    circle_euclid,
    circle_intersect,
    conformal_factor,
    dist,
    dist_point_horocycle,
    equidistant_ideal,
    geodesic_between,
    geodesic_horocycle_crossing,
    horocycle_intersect,
    level_of,
    midpoint,
    point_at_angle_dist,
    random_isometry,
    side_of,
)

O = HPoint.interior(0.0, 0.0)


def _rand_pt(rng, rmax=0.8):
    r = rmax * math.sqrt(rng.uniform())
    phi = rng.uniform(0.0, 2.0 * math.pi)
    return HPoint.interior(r * math.cos(phi), r * math.sin(phi))


def _arclength(path_xy, ts):
    """Numeric hyperbolic arclength of a parametric Euclidean path (oracle)."""
    total = 0.0
    pts = [path_xy(t) for t in ts]
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        xm, ym = 0.5 * (x0 + x1), 0.5 * (y0 + y1)
        lam = 2.0 / (1.0 - xm * xm - ym * ym)
        total += lam * math.hypot(x1 - x0, y1 - y0)
    return total


class TestDist:
    def test_coincident(self):
        assert dist(O, O) == 0.0

    def test_radial_against_integral_oracle(self):
        # oracle: integrate 2/(1-t^2) dt along the diameter from 0 to 0.5
        oracle, err = quad(lambda t: 2.0 / (1.0 - t * t), 0.0, 0.5)
        assert err < 1e-12
        assert oracle == pytest.approx(math.log(3.0), abs=1e-12)
        assert dist(O, HPoint.interior(0.5, 0.0)) == pytest.approx(oracle, abs=1e-12)

    def test_isometry_invariance(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            phi = random_isometry(rng)
            p = _rand_pt(rng, 0.6)
            q = _rand_pt(rng, 0.6)
            assert dist(phi(p), phi(q)) == pytest.approx(dist(p, q), abs=1e-10)

    def test_rejects_ideal(self):
        with pytest.raises(GeometryError):
            dist(O, HPoint.ideal(0.3))

    def test_metric_axioms_random(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            pts = [_rand_pt(rng, 0.7) for _ in range(3)]
            p, q, r = pts
            assert dist(p, q) == dist(q, p)
            assert dist(p, q) >= 0.0
            assert dist(p, r) <= dist(p, q) + dist(q, r) + 1e-10


class TestGeodesic:
    def test_symmetric_pair_gives_diameter(self):
        g = geodesic_between(HPoint.interior(0.5, 0.0), HPoint.interior(-0.5, 0.0))
        assert g.is_diameter

    def test_arc_center_against_linear_solve_oracle(self):
        # oracle: solve |c-p|^2 = r^2, |c-q|^2 = r^2, |c|^2 = r^2 + 1
        # subtracting: 2 c.p = 1+|p|^2 and 2 c.q = 1+|q|^2
        p, q = (0.5, 0.0), (0.0, 0.5)
        A = np.array([[2 * p[0], 2 * p[1]], [2 * q[0], 2 * q[1]]])
        b = np.array([1 + p[0] ** 2 + p[1] ** 2, 1 + q[0] ** 2 + q[1] ** 2])
        c = np.linalg.solve(A, b)
        r = math.sqrt(c @ c - 1.0)
        assert c == pytest.approx([1.25, 1.25], abs=1e-14)
        assert r == pytest.approx(math.sqrt(2.125), abs=1e-14)

        g = geodesic_between(HPoint.interior(*p), HPoint.interior(*q))
        assert not g.is_diameter
        assert g.center == pytest.approx((1.25, 1.25), abs=1e-12)
        assert g.radius == pytest.approx(math.sqrt(2.125), abs=1e-12)

    def test_antipodal_ideals_give_diameter(self):
        g = geodesic_between(HPoint.ideal(0.0), HPoint.ideal(math.pi))
        assert g.is_diameter

    def test_coincident_endpoints_rejected(self):
        with pytest.raises(GeometryError):
            geodesic_between(O, O)

    def test_orthogonality_residual_random(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            p = _rand_pt(rng, 0.8)
            q = _rand_pt(rng, 0.8)
            if p.close_to(q, 1e-6):
                continue
            g = geodesic_between(p, q)
            if g.is_diameter:
                continue
            c2 = g.center[0] ** 2 + g.center[1] ** 2
            assert abs(c2 - g.radius ** 2 - 1.0) <= 1e-12 * max(c2, 1.0)

    def test_endpoints_on_carrier(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            p = _rand_pt(rng, 0.8)
            q = _rand_pt(rng, 0.8)
            if p.close_to(q, 1e-6):
                continue
            g = geodesic_between(p, q)
            for e in (p, q):
                if g.is_diameter:
                    continue
                on = math.hypot(e.x - g.center[0], e.y - g.center[1]) - g.radius
                assert abs(on) <= 1e-10

    def test_dist_equals_integrated_arclength(self):
        # oracle: adaptive quadrature of the conformal factor along the carrier
        rng = np.random.default_rng(13)
        for _ in range(20):
            p = _rand_pt(rng, 0.7)
            q = _rand_pt(rng, 0.7)
            if p.close_to(q, 1e-3):
                continue
            g = geodesic_between(p, q)
            L = dist(p, q)
            if g.is_diameter:
                def speed(t):
                    x = p.x + t * (q.x - p.x)
                    y = p.y + t * (q.y - p.y)
                    lam = 2.0 / (1.0 - x * x - y * y)
                    return lam * math.hypot(q.x - p.x, q.y - p.y)
                arc, err = quad(speed, 0.0, 1.0, epsabs=1e-12, epsrel=1e-12)
            else:
                cx, cy = g.center
                r = g.radius
                a0 = math.atan2(p.y - cy, p.x - cx)
                a1 = math.atan2(q.y - cy, q.x - cx)
                da = (a1 - a0 + math.pi) % (2 * math.pi) - math.pi

                def speed(s):
                    ang = a0 + s * da
                    x = cx + r * math.cos(ang)
                    y = cy + r * math.sin(ang)
                    lam = 2.0 / (1.0 - x * x - y * y)
                    return lam * r * abs(da)
                arc, err = quad(speed, 0.0, 1.0, epsabs=1e-12, epsrel=1e-12)
            assert arc == pytest.approx(L, abs=1e-8)

    def test_point_at_unit_speed(self):
        p = HPoint.interior(0.2, -0.1)
        q = HPoint.interior(-0.4, 0.5)
        g = geodesic_between(p, q)
        for t in (0.1, 0.5, 1.0):
            assert dist(p, g.point_at(t)) == pytest.approx(t, abs=1e-11)

    def test_ideal_endpoints_of_arc(self):
        g = geodesic_between(HPoint.interior(0.5, 0.0), HPoint.interior(0.0, 0.5))
        e1, e2 = g.ideal_endpoints()
        for e in (e1, e2):
            x, y = e.rim_xy()
            assert math.hypot(x - g.center[0], y - g.center[1]) == pytest.approx(
                g.radius, abs=1e-9)
        # ordered along the traversal: e2 is ahead of b
        assert side_of(g, e1) == 0 and side_of(g, e2) == 0


class TestBusemann:
    def test_origin_normalization(self):
        for th in (0.0, 1.0, 4.5):
            assert busemann(HPoint.ideal(th), O) == pytest.approx(0.0, abs=1e-15)

    def test_along_ray_value(self):
        # point at distance ln 3 from origin along the ray toward ideal(0)
        d = math.log(3.0)
        p = HPoint.interior(math.tanh(d / 2.0), 0.0)
        assert p.x == pytest.approx(0.5, abs=1e-15)
        assert busemann(HPoint.ideal(0.0), p) == pytest.approx(-d, abs=1e-12)

    def test_rotation_equivariance(self):
        rng = np.random.default_rng(23)
        for _ in range(50):
            alpha = rng.uniform(0, 2 * math.pi)
            rot = Isometry.rotation(alpha)
            xi = HPoint.ideal(rng.uniform(0, 2 * math.pi))
            p = _rand_pt(rng, 0.6)
            assert busemann(rot(xi), rot(p)) == pytest.approx(
                busemann(xi, p), abs=1e-12)

    def test_unit_rate_along_ray(self):
        rng = np.random.default_rng(29)
        for _ in range(50):
            xi = HPoint.ideal(rng.uniform(0, 2 * math.pi))
            p = _rand_pt(rng, 0.5)
            g = geodesic_between(p, xi)
            b0 = busemann(xi, p)
            for t in (0.2, 1.0, 2.5):
                assert busemann(xi, g.point_at(t)) == pytest.approx(
                    b0 - t, abs=1e-9)


class TestHorocycle:
    def test_point_on_curve_has_zero_distance(self):
        h = Horocycle(HPoint.ideal(0.7), 0.9)
        p = h.point_toward_base()
        assert dist_point_horocycle(p, h) == pytest.approx(0.0, abs=1e-12)

    def test_origin_distance_is_level(self):
        for s in (-1.0, 0.0, 0.4, 2.0):
            h = Horocycle(HPoint.ideal(1.1), s)
            assert dist_point_horocycle(O, h) == pytest.approx(s, abs=1e-12)

    def test_level_through_half_point(self):
        # horocycle at ideal(0) through (0.5, 0): its level via busemann
        xi = HPoint.ideal(0.0)
        p = HPoint.interior(0.5, 0.0)
        h = Horocycle(xi, level_of(xi, p))
        assert h.level == pytest.approx(math.log(3.0), abs=1e-12)
        assert dist_point_horocycle(O, h) == pytest.approx(math.log(3.0), abs=1e-12)

    def test_euclid_radius_decreases_with_level(self):
        radii = [Horocycle(HPoint.ideal(0.0), s).euclid()[1]
                 for s in (-1.0, 0.0, 1.0, 3.0)]
        assert all(0.0 < r < 1.0 for r in radii)
        assert all(a > b for a, b in zip(radii, radii[1:]))

    def test_realization_tangent_at_base(self):
        h = Horocycle(HPoint.ideal(2.2), 0.37)
        (cx, cy), r = h.euclid()
        bx, by = h.base.rim_xy()
        assert math.hypot(bx - cx, by - cy) == pytest.approx(r, abs=1e-14)
        assert math.hypot(cx, cy) + r == pytest.approx(1.0, abs=1e-14)


class TestCircleIntersect:
    def test_concentric_disjoint(self):
        c = HPoint.interior(0.1, 0.2)
        assert circle_intersect(c, 0.5, c, 1.0) == []

    def test_tangency_band(self):
        c1 = HPoint.interior(-0.2, 0.0)
        c2 = HPoint.interior(0.2, 0.0)
        d = dist(c1, c2)
        pts = circle_intersect(c1, d / 2, c2, d / 2)
        assert len(pts) == 1
        assert dist(pts[0], c1) == pytest.approx(d / 2, abs=1e-9)

    def test_two_points_against_bisector_oracle(self):
        # oracle: by symmetry the intersections lie on the y-axis; bisection on
        # y with f(y) = dist(c1, (0, y)) - r
        c1 = HPoint.interior(-0.3, 0.0)
        c2 = HPoint.interior(0.3, 0.0)
        r = 1.0

        def f(y):
            return dist(c1, HPoint.interior(0.0, y)) - r

        y_star = bisect_root(f, 0.0, 0.9)
        pts = circle_intersect(c1, r, c2, r)
        assert len(pts) == 2
        ys = sorted(p.y for p in pts)
        assert ys[0] == pytest.approx(-y_star, abs=1e-9)
        assert ys[1] == pytest.approx(+y_star, abs=1e-9)
        for p in pts:
            assert abs(p.x) <= 1e-9
            assert dist(p, c1) == pytest.approx(r, abs=1e-9)
            assert dist(p, c2) == pytest.approx(r, abs=1e-9)

    def test_count_matches_distance_predicate(self):
        rng = np.random.default_rng(41)
        for _ in range(300):
            c1 = _rand_pt(rng, 0.5)
            c2 = _rand_pt(rng, 0.5)
            if c1.close_to(c2, 1e-3):
                continue
            r1 = rng.uniform(0.1, 1.5)
            r2 = rng.uniform(0.1, 1.5)
            d = dist(c1, c2)
            band = 1e-9
            if abs(d - (r1 + r2)) < 10 * band or abs(d - abs(r1 - r2)) < 10 * band:
                continue  # perturb inputs near tangency, per the documented contract
            pts = circle_intersect(c1, r1, c2, r2)
            expect = 2 if abs(r1 - r2) < d < r1 + r2 else 0
            assert len(pts) == expect
            for p in pts:
                assert abs(dist(p, c1) - r1) < 1e-9
                assert abs(dist(p, c2) - r2) < 1e-9


class TestHorocycleIntersect:
    def test_deep_horoballs_disjoint(self):
        h1 = Horocycle(HPoint.ideal(0.0), 6.0)
        h2 = Horocycle(HPoint.ideal(2.0), 6.0)
        assert horocycle_intersect(h1, h2) == []

    def test_common_origin_point(self):
        h1 = Horocycle(HPoint.ideal(0.0), 0.0)
        h2 = Horocycle(HPoint.ideal(math.pi), 0.0)
        pts = horocycle_intersect(h1, h2)
        assert any(p.close_to(O, 1e-9) for p in pts)

    def test_two_points_against_euclid_oracle(self):
        h1 = Horocycle(HPoint.ideal(0.0), 0.0)
        h2 = Horocycle(HPoint.ideal(math.pi / 2), 0.0)
        # oracle: the realizations are |p - (0.5, 0)| = 0.5, |p - (0, 0.5)| = 0.5
        # quadratic solve: x^2+y^2 = x and x^2+y^2 = y -> x = y, 2x^2 = x
        oracle = [(0.0, 0.0), (0.5, 0.5)]
        pts = horocycle_intersect(h1, h2)
        assert len(pts) == 2
        got = sorted((round(p.x, 9), round(p.y, 9)) for p in pts)
        for (gx, gy), (ox, oy) in zip(got, sorted(oracle)):
            assert gx == pytest.approx(ox, abs=1e-9)
            assert gy == pytest.approx(oy, abs=1e-9)
        for p in pts:
            assert abs(dist_point_horocycle(p, h1)) < 1e-9
            assert abs(dist_point_horocycle(p, h2)) < 1e-9


class TestSideOf:
    def test_on_geodesic(self):
        g = geodesic_between(HPoint.interior(-0.5, 0.0), HPoint.interior(0.5, 0.0))
        assert side_of(g, HPoint.interior(0.2, 0.0)) == 0

    def test_left_convention_upper_half(self):
        # traversing -x -> +x, the upper half disk is on the left
        g = geodesic_between(HPoint.interior(-0.5, 0.0), HPoint.interior(0.5, 0.0))
        assert side_of(g, HPoint.interior(0.0, 0.5)) == 1
        assert side_of(g, HPoint.interior(0.0, -0.5)) == -1
        g_ideal = geodesic_between(HPoint.ideal(math.pi), HPoint.ideal(0.0))
        assert side_of(g_ideal, HPoint.interior(0.0, 0.5)) == 1

    def test_ideal_point_sides(self):
        g = geodesic_between(HPoint.ideal(math.pi), HPoint.ideal(0.0))
        assert side_of(g, HPoint.ideal(math.pi / 2)) == 1
        assert side_of(g, HPoint.ideal(-math.pi / 2)) == -1
        assert side_of(g, HPoint.ideal(0.0)) == 0

    def test_constant_on_non_crossing_segments(self):
        rng = np.random.default_rng(17)
        g = geodesic_between(HPoint.interior(-0.4, 0.1), HPoint.interior(0.5, 0.3))
        for _ in range(50):
            p = _rand_pt(rng, 0.7)
            q = _rand_pt(rng, 0.7)
            if p.close_to(q, 1e-3):
                continue
            sp, sq = side_of(g, p), side_of(g, q)
            if sp != sq or sp == 0:
                continue
            seg = geodesic_between(p, q)
            L = dist(p, q)
            for t in np.linspace(0.0, L, 20):
                assert side_of(g, seg.point_at(float(t))) == sp


class TestEquidistantIdeal:
    def test_symmetric_pair(self):
        a = HPoint.interior(-0.3, 0.2)
        b = HPoint.interior(0.3, 0.2)
        xi = equidistant_ideal(a, b, (math.pi / 4, 3 * math.pi / 4))
        assert xi.theta == pytest.approx(math.pi / 2, abs=1e-9)

    def test_generic_against_scan_oracle(self):
        a = HPoint.interior(0.2, 0.0)
        b = HPoint.interior(0.4, 0.0)
        lo, hi = math.pi / 4, 3 * math.pi / 4

        def f(th):
            xi = HPoint.ideal(th)
            return busemann(xi, a) - busemann(xi, b)

        # oracle: dense scan confirms a unique sign change, bisect on the grid
        grid = np.linspace(lo, hi, 20001)
        vals = np.array([f(t) for t in grid])
        flips = np.nonzero(np.signbit(vals[:-1]) != np.signbit(vals[1:]))[0]
        assert len(flips) == 1
        t_scan = 0.5 * (grid[flips[0]] + grid[flips[0] + 1])

        xi = equidistant_ideal(a, b, (lo, hi))
        assert abs(busemann(xi, a) - busemann(xi, b)) < 1e-10
        assert xi.theta == pytest.approx(t_scan, abs=1e-3)

    def test_rotation_equivariance(self):
        a = HPoint.interior(0.2, 0.1)
        b = HPoint.interior(0.45, -0.05)
        xi = equidistant_ideal(a, b, (0.3, 2.0))
        alpha = 0.63
        rot = Isometry.rotation(alpha)
        xi_rot = equidistant_ideal(rot(a), rot(b), (0.3 + alpha, 2.0 + alpha))
        assert xi_rot.theta == pytest.approx(
            (xi.theta + alpha) % (2 * math.pi), abs=1e-9)

    def test_no_sign_change_is_error(self):
        a = HPoint.interior(0.2, 0.0)
        b = HPoint.interior(0.4, 0.0)
        with pytest.raises(GeometryError):
            equidistant_ideal(a, b, (1.4, 1.5))


class TestIsometry:
    def test_identity(self):
        p = HPoint.interior(0.3, -0.2)
        assert Isometry.identity()(p).close_to(p, 1e-15)

    def test_quarter_rotation(self):
        rot = Isometry.rotation(math.pi / 2)
        q = rot(HPoint.interior(0.5, 0.0))
        assert q.close_to(HPoint.interior(0.0, 0.5), 1e-15)

    def test_group_laws(self):
        rng = np.random.default_rng(31)
        for _ in range(50):
            f = random_isometry(rng)
            g = random_isometry(rng)
            p = _rand_pt(rng, 0.7)
            lhs = f.compose(g)(p)
            rhs = f(g(p))
            assert lhs.close_to(rhs, 1e-12)
            assert f.compose(f.inverse())(p).close_to(p, 1e-12)

    def test_distance_preserving(self):
        rng = np.random.default_rng(37)
        for _ in range(100):
            f = random_isometry(rng)
            p = _rand_pt(rng, 0.8)
            q = _rand_pt(rng, 0.8)
            assert dist(f(p), f(q)) == pytest.approx(dist(p, q), abs=1e-10)

    def test_geodesic_to_xaxis(self):
        p = HPoint.interior(0.1, 0.4)
        q = HPoint.interior(-0.3, -0.2)
        g = geodesic_between(p, q)
        T = g.canonical_isometry()
        e1, e2 = g.ideal_endpoints()
        # endpoints land at ideal(pi) and ideal(0): verify via busemann/dist residuals
        assert abs(math.sin(T(e2).theta)) < 1e-9 and math.cos(T(e2).theta) > 0
        assert abs(math.sin(T(e1).theta)) < 1e-9 and math.cos(T(e1).theta) < 0
        assert abs(T(p).y) < 1e-12
        assert dist(T(p), T(q)) == pytest.approx(dist(p, q), abs=1e-10)

    def test_reflection_fixes_axis_and_preserves_dist(self):
        g = geodesic_between(HPoint.interior(-0.2, 0.3), HPoint.interior(0.4, 0.1))
        R = Isometry.reflect_across(g)
        m = midpoint(g.a, g.b)
        assert R(m).close_to(m, 1e-10)
        p = HPoint.interior(0.5, -0.4)
        assert dist(R(p), m) == pytest.approx(dist(p, m), abs=1e-10)
        assert R.compose(R)(p).close_to(p, 1e-10)

    def test_translate_along(self):
        g = geodesic_between(HPoint.interior(-0.5, 0.0), HPoint.interior(0.5, 0.0))
        T = Isometry.translate_along(g, 0.8)
        assert dist(O, T(O)) == pytest.approx(0.8, abs=1e-12)
        assert T(O).x > 0

    def test_horocycle_transport(self):
        rng = np.random.default_rng(43)
        for _ in range(30):
            f = random_isometry(rng)
            h = Horocycle(HPoint.ideal(rng.uniform(0, 2 * math.pi)),
                          rng.uniform(-1, 2))
            p = _rand_pt(rng, 0.5)
            h2 = f.apply_horocycle(h)
            assert dist_point_horocycle(f(p), h2) == pytest.approx(
                dist_point_horocycle(p, h), abs=1e-9)


class TestHelpers:
    def test_midpoint(self):
        p = HPoint.interior(0.4, 0.1)
        q = HPoint.interior(-0.2, 0.3)
        m = midpoint(p, q)
        assert dist(p, m) == pytest.approx(dist(q, m), abs=1e-10)
        assert dist(p, m) + dist(m, q) == pytest.approx(dist(p, q), abs=1e-10)

    def test_angle_between_right_angle(self):
        at = HPoint.interior(0.0, 0.0)
        assert angle_between(at, HPoint.interior(0.5, 0.0),
                             HPoint.interior(0.0, 0.5)) == pytest.approx(
            math.pi / 2, abs=1e-12)

    def test_point_at_angle_dist(self):
        at = HPoint.interior(0.2, -0.3)
        p = point_at_angle_dist(at, 1.1, 0.7)
        assert dist(at, p) == pytest.approx(0.7, abs=1e-11)

    def test_geodesic_horocycle_crossing(self):
        xi = HPoint.ideal(0.8)
        h = Horocycle(xi, 1.3)
        p = HPoint.interior(-0.3, -0.4)
        g = geodesic_between(p, xi)
        c = geodesic_horocycle_crossing(g, h)
        assert abs(dist_point_horocycle(c, h)) < 1e-9
        assert abs(g.signed_sinh(c)) < 1e-9
        # the crossing sits at arclength dist(p, H) from p along the ray
        assert dist(p, c) == pytest.approx(dist_point_horocycle(p, h), abs=1e-8)

    def test_conformal_factor(self):
        assert conformal_factor(O) == pytest.approx(2.0, abs=1e-15)

    def test_circle_euclid_matches_points(self):
        c = HPoint.interior(0.3, -0.1)
        rho = 0.9
        (ex, ey), er = circle_euclid(c, rho)
        g = geodesic_between(c, HPoint.interior(0.6, 0.6))
        p = g.point_at(rho)
        assert math.hypot(p.x - ex, p.y - ey) == pytest.approx(er, abs=1e-12)


class TestEquivariance:
    def test_operations_commute_with_isometries(self):
        rng = np.random.default_rng(53)
        for _ in range(40):
            f = random_isometry(rng)
            p = _rand_pt(rng, 0.6)
            q = _rand_pt(rng, 0.6)
            if p.close_to(q, 1e-3):
                continue
            g = geodesic_between(p, q)
            x = _rand_pt(rng, 0.6)
            # signed distance to a geodesic is equivariant
            g2 = geodesic_between(f(p), f(q))
            assert g2.signed_dist(f(x)) == pytest.approx(
                g.signed_dist(x), abs=1e-9)
            # circle intersections are equivariant as sets
            r1 = rng.uniform(0.5, 1.2)
            r2 = rng.uniform(0.5, 1.2)
            pts = circle_intersect(p, r1, q, r2)
            pts_f = circle_intersect(f(p), r1, f(q), r2)
            assert len(pts) == len(pts_f)
            for a in pts:
                assert any(f(a).close_to(b, 1e-8) for b in pts_f)
