import numpy as np
import pytest
from hypothesis import given

from conftest import BIDISC, DISC, M22, M23
from strategies import rng_from, seeds, spaces
from symdom import (
    FlatChart,
    GeodesicRay,
    OutsideDomainError,
    bergman_distance,
    bergman_on_flat,
    bergman_operator,
    caratheodory_distance,
    element,
    flat_compose_mobius,
    geodesic_symmetry,
    is_almost_geodesic,
    mobius,
    spectral_norm,
)
from symdom.geometry import (
    bergman_midpoint_from_origin,
    caratheodory_distance_direct,
    is_psi_almost_nonincreasing,
    mobius_derivative,
)
from symdom.tripotents import random_frame, random_minimal

E11, E22 = M22.unit(0, 0, 0), M22.unit(0, 1, 1)


def _disc(z):
    return element(DISC, [[z]])


def _disc_mobius(a, x):
    return (a + x) / (1 + np.conj(a) * x)


class TestMobius:
    def test_disc_value(self):
        assert mobius(_disc(0.5), _disc(0.5)).blocks[0][0, 0] == pytest.approx(0.8)

    def test_origin_and_identity(self, rng):
        a, x = M23.random_in_ball(rng), M23.random_in_ball(rng)
        assert mobius(a, M23.zeros()).allclose(a, 1e-14)
        assert mobius(M23.zeros(), x).allclose(x, 1e-14)

    def test_outside(self):
        with pytest.raises(OutsideDomainError):
            mobius(_disc(1.0), _disc(0.1))

    @given(seeds)
    def test_disc_formula(self, seed):
        rng = rng_from(seed)
        a, x = (complex(*rng.uniform(-0.7, 0.7, 2)) for _ in range(2))
        assert mobius(_disc(a), _disc(x)).blocks[0][0, 0] == pytest.approx(_disc_mobius(a, x), abs=1e-13)


@given(seeds, spaces)
def test_mobius_inverse(seed, space):
    rng = rng_from(seed)
    a, x = space.random_in_ball(rng), space.random_in_ball(rng)
    y = mobius(a, x)
    assert spectral_norm(y) < 1
    assert mobius(-a, y).allclose(x, 1e-10)


class TestDistances:
    def test_bidisc(self):
        x, y = BIDISC.zeros(), element(BIDISC, [[0.5]], [[0.8]])
        assert caratheodory_distance(x, y) == pytest.approx(np.log(3.0), abs=1e-14)

    def test_zero_on_diagonal(self, rng):
        x = M23.random_in_ball(rng)
        assert caratheodory_distance(x, x) == pytest.approx(0, abs=1e-12)
        assert bergman_distance(x, x) == pytest.approx(0, abs=1e-12)

    def test_minimal_ray(self, rng):
        u = random_minimal(M23, rng)
        for t in (0.1, 0.5, 0.9, 0.999):
            assert caratheodory_distance(M23.zeros(), t * u) == pytest.approx(np.arctanh(t), abs=1e-12)
            assert bergman_distance(M23.zeros(), t * u) == pytest.approx(np.arctanh(t), abs=1e-12)

    def test_bergman_equal_coordinates(self):
        x = 0.5 * E11 + 0.5 * E22
        assert bergman_distance(M22.zeros(), x) == pytest.approx(np.sqrt(2) * np.arctanh(0.5), abs=1e-14)

    def test_outside(self):
        with pytest.raises(OutsideDomainError):
            caratheodory_distance(_disc(0.0), _disc(1.2))

    def test_disc_is_poincare(self, rng):
        for _ in range(20):
            a, b = (complex(*rng.uniform(-0.6, 0.6, 2)) for _ in range(2))
            pseudo = abs((a - b) / (1 - np.conj(b) * a))
            assert caratheodory_distance(_disc(a), _disc(b)) == pytest.approx(np.arctanh(pseudo), abs=1e-12)

    def test_direct_route_agrees(self, rng):
        for _ in range(20):
            x, y = M23.random_in_ball(rng, 0.9), M23.random_in_ball(rng, 0.9)
            assert caratheodory_distance(x, y) == pytest.approx(caratheodory_distance_direct(x, y), abs=1e-9)


@given(seeds, spaces)
def test_distance_mobius_invariance(seed, space):
    rng = rng_from(seed)
    a, x, y = (space.random_in_ball(rng, 0.9) for _ in range(3))
    ga_x, ga_y = mobius(a, x), mobius(a, y)
    assert abs(caratheodory_distance(ga_x, ga_y) - caratheodory_distance(x, y)) <= 1e-9
    assert abs(bergman_distance(ga_x, ga_y) - bergman_distance(x, y)) <= 1e-9


@given(seeds, spaces)
def test_metric_axioms(seed, space):
    rng = rng_from(seed)
    x, y, z = (space.random_in_ball(rng) for _ in range(3))
    for d in (caratheodory_distance, bergman_distance):
        assert abs(d(x, y) - d(y, x)) <= 1e-9
        assert d(x, z) <= d(x, y) + d(y, z) + 1e-9
        assert d(x, y) >= 0


@given(seeds, spaces)
def test_caratheodory_below_bergman(seed, space):
    rng = rng_from(seed)
    x, y = space.random_in_ball(rng), space.random_in_ball(rng)
    # max vs Euclidean norm of the same atanh vector
    assert caratheodory_distance(x, y) <= bergman_distance(x, y) + 1e-9
    assert bergman_distance(x, y) <= np.sqrt(space.rank) * caratheodory_distance(x, y) + 1e-9


@given(seeds, spaces)
def test_flat_is_linf(seed, space):
    rng = rng_from(seed)
    chart = FlatChart(random_frame(space, rng))
    p, q = rng.uniform(-3, 3, space.rank), rng.uniform(-3, 3, space.rank)
    d = caratheodory_distance(chart.exp0(p), chart.exp0(q))
    assert abs(d - np.max(np.abs(p - q))) <= 1e-9


@given(seeds, spaces)
def test_flat_compose(seed, space):
    rng = rng_from(seed)
    frame = random_frame(space, rng)
    alpha, beta = rng.uniform(-1.5, 1.5, space.rank), rng.uniform(-1.5, 1.5, space.rank)
    rec = flat_compose_mobius(frame, alpha, beta, rng)
    assert rec.residual <= 1e-9
    assert np.allclose(rec.c_coords, np.tanh(alpha + beta))


def test_flat_compose_disc_value():
    frame = random_frame(DISC, np.random.default_rng(0))
    alpha = [np.arctanh(0.5)]
    rec = flat_compose_mobius(frame, alpha, alpha)
    assert rec.c_coords[0] == pytest.approx(0.8)
    assert flat_compose_mobius(frame, alpha, [0.0]).residual <= 1e-12


@given(seeds, spaces)
def test_bergman_on_flat(seed, space):
    rng = rng_from(seed)
    frame = random_frame(space, rng)
    a, b = rng.uniform(-0.95, 0.95, space.rank), rng.uniform(-0.95, 0.95, space.rank)
    lhs = bergman_on_flat(frame, a, b).matrix
    rhs = bergman_operator(frame.point(a), frame.point(b)).matrix
    assert np.abs(lhs - rhs).max() <= 1e-12


def test_bergman_on_flat_examples():
    from symdom import Frame

    frame = Frame([E11, E22])
    assert np.allclose(bergman_on_flat(frame, [0.3, -0.2], [0, 0]).matrix, np.eye(4))
    op = bergman_on_flat(frame, [0.5, 0.0], [0.5, 0.0])
    e12 = M22.unit(0, 0, 1)
    assert op(e12).allclose(0.75 * e12, 1e-14)
    disc_frame = Frame([DISC.unit(0, 0, 0)])
    assert np.allclose(bergman_on_flat(disc_frame, [0.5], [0.5]).matrix, [[9 / 16]])


class TestSymmetry:
    def test_origin(self, rng):
        y = M23.random_in_ball(rng)
        assert geodesic_symmetry(M23.zeros(), y).allclose(-y, 1e-14)

    @given(seeds, spaces)
    def test_involution_and_fixed_point(self, seed, space):
        rng = rng_from(seed)
        x, y = space.random_in_ball(rng, 0.9), space.random_in_ball(rng, 0.9)
        assert geodesic_symmetry(x, x).allclose(x, 1e-10)
        assert geodesic_symmetry(x, geodesic_symmetry(x, y)).allclose(y, 1e-9)
        assert abs(bergman_distance(y, x) - bergman_distance(x, geodesic_symmetry(x, y))) <= 1e-9

    @given(seeds, spaces)
    def test_mobius_factorisation(self, seed, space):
        rng = rng_from(seed)
        z, x = space.random_in_ball(rng, 0.9), space.random_in_ball(rng, 0.9)
        w = bergman_midpoint_from_origin(z)
        assert geodesic_symmetry(w, space.zeros()).allclose(z, 1e-10)
        assert mobius(z, x).allclose(geodesic_symmetry(w, -x), 1e-9)


@given(seeds)
def test_derivative_finite_difference(seed):
    rng = rng_from(seed)
    a, b, h = M22.random_in_ball(rng, 0.8), M22.random_in_ball(rng, 0.5), M22.random(rng, 1.0)
    step = 1e-6
    fd = (mobius(a, b + step * h) - mobius(a, b - step * h)) * (0.5 / step)
    exact = mobius_derivative(a, b)(h)
    assert spectral_norm(fd - exact) <= 1e-5 * spectral_norm(exact)


class TestAlmostGeodesic:
    def test_ray(self):
        ray = GeodesicRay.from_lambdas([DISC.unit(0, 0, 0)], [1.0])
        pts = [ray(float(t)).x for t in range(11)]
        assert is_almost_geodesic(pts, 1e-6)
        assert is_psi_almost_nonincreasing(pts, 1e-6)

    def test_alternating(self):
        pts = [_disc(0.9 if k % 2 else -0.9) for k in range(6)]
        assert not is_almost_geodesic(pts, 0.1)
        assert not is_psi_almost_nonincreasing(pts, 0.1)

    def test_interleaved_translates(self):
        # gamma(n) and its Möbius translate by x alternately
        lam = 0.3
        frame = [E11, E22]
        x = lam * E11
        ray = GeodesicRay(tuple(frame), (0.0, 0.0))
        pts = []
        for n in range(1, 9):
            pts.append(ray(float(n)).x)
            pts.append(mobius(x, ray(float(n)).x))
        assert is_almost_geodesic(pts, 2 * np.arctanh(lam) + 1e-6)

    @given(seeds)
    def test_predicates_agree(self, seed):
        rng = rng_from(seed)
        pts = [M22.random_in_ball(rng, 0.95) for _ in range(5)]
        eps = float(rng.uniform(0.0, 2.0))
        assert is_almost_geodesic(pts, eps) == is_psi_almost_nonincreasing(pts, eps)

    def test_too_short(self):
        with pytest.raises(ValueError):
            is_almost_geodesic([_disc(0), _disc(0.1)], 1.0)
