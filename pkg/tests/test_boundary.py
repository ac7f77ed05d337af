import numpy as np
import pytest
from hypothesis import given

from conftest import BIDISC, M22, M23
from strategies import rng_from, seeds, spaces
from symdom import (
    ConePoint,
    HorofunctionSpec,
    classify_pair,
    cone_M,
    detour_cost,
    detour_cost_numeric,
    detour_metric,
    flat_membership_test,
    gromov_numeric,
    gromov_singletons,
    hilbert,
    horofunction_eval,
    is_orthogonal,
    part_cross_section,
    part_of,
    peirce_projection,
    singleton_eval,
    spectral_norm,
    thompson,
    translation_action_check,
)
from symdom.boundary import (
    cone_frame,
    cone_inverse,
    gromov_from_peirce,
    gromov_norm,
    horofunction_norm_lower_bound,
    v0_membership_test,
)
from symdom.maps import random_unitary_map
from symdom.tripotents import Frame, random_frame, random_minimal

LOG2 = np.log(2.0)
E11, E12, E22 = M22.unit(0, 0, 0), M22.unit(0, 0, 1), M22.unit(0, 1, 1)
B1, B2 = BIDISC.unit(0, 0, 0), BIDISC.unit(1, 0, 0)


def _cone(*diag):
    return ConePoint((np.diag(np.asarray(diag, float)),), E11)


class TestSingleton:
    @given(seeds, spaces)
    def test_flat_values(self, seed, space):
        rng = rng_from(seed)
        frame = random_frame(space, rng)
        lam = rng.uniform(-0.95, 0.95, space.rank)
        x = frame.point(lam)
        for e, l in zip(frame, lam):
            assert abs(singleton_eval(e, x) + np.arctanh(l)) <= 1e-10

    def test_origin(self, rng):
        assert abs(singleton_eval(random_minimal(M23, rng), M23.zeros())) <= 1e-12

    def test_vanishes_on_v0(self, rng):
        e = random_minimal(M23, rng)
        z = peirce_projection(e, 0)(M23.random(rng))
        z = z * (0.9 / spectral_norm(z))
        assert abs(singleton_eval(e, z)) <= 1e-12
        assert v0_membership_test(e, z)

    def test_rejects_non_minimal(self):
        with pytest.raises(ValueError):
            singleton_eval(E11 + E22, M22.zeros())


class TestHorofunction:
    @given(seeds, spaces)
    def test_singleton_limit_matches_closed_form(self, seed, space):
        rng = rng_from(seed)
        e = random_minimal(space, rng)
        z = space.random_in_ball(rng, 0.9)
        rep = horofunction_eval(HorofunctionSpec.singleton(e), z)
        assert rep.converged
        assert abs(rep.value - singleton_eval(e, z)) <= 1e-6

    def test_origin(self, rng):
        frame = random_frame(M23, rng)
        spec = HorofunctionSpec(frame.members, (1.0, 0.4))
        assert abs(horofunction_eval(spec, M23.zeros()).value) <= 1e-9

    def test_rank_two_flat_values(self):
        # both rays run at unit speed, so the limit is max over i of -atanh(z_i)
        spec = HorofunctionSpec((E11, E22), (1.0, 1.0))
        assert abs(horofunction_eval(spec, 0.5 * E11).value) <= 1e-6
        assert horofunction_eval(spec, 0.5 * (E11 + E22)).value == pytest.approx(-np.arctanh(0.5), abs=1e-6)

    def test_weighted_flat_value(self):
        # in the l_inf flat, max_i |p_i - (t - a_i)| - t  ->  -min_i (a_i + p_i)
        spec = HorofunctionSpec((E11, E22), (1.0, 0.5))
        p = np.array([0.2, -0.4])
        z = np.tanh(p[0]) * E11 + np.tanh(p[1]) * E22
        alpha = np.array([0.0, np.log(2.0)])
        expected = -np.min(alpha + p)
        assert horofunction_eval(spec, z).value == pytest.approx(expected, abs=1e-6)

    def test_norm_lower_bound_is_below_value(self, rng):
        spec = HorofunctionSpec.singleton(E11)
        z = M22.random_in_ball(rng, 0.6)
        bound = horofunction_norm_lower_bound(spec, z, rng)
        # the ascent starts at e itself, where the operator reproduces the closed form
        assert abs(bound - singleton_eval(E11, z)) <= 1e-9

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            HorofunctionSpec((E11, E12), (1.0, 1.0)).validate()
        with pytest.raises(ValueError):
            HorofunctionSpec((E11,), (0.5,)).validate()

    def test_canonical_equality(self):
        a = HorofunctionSpec((E11, E22), (1.0, 0.5))
        b = HorofunctionSpec((E22, E11), (0.5, 1.0))
        assert a.same_as(b)
        assert not a.same_as(HorofunctionSpec((E11, E22), (0.5, 1.0)))


class TestGromov:
    def test_opposite(self, rng):
        u = random_minimal(M23, rng)
        assert gromov_singletons(u, -u) == pytest.approx(0.0, abs=1e-12)
        assert gromov_numeric(u, -u).value == pytest.approx(0.0, abs=1e-3)

    def test_i_multiple(self, rng):
        u = random_minimal(M23, rng)
        assert gromov_singletons(u, 1j * u) == pytest.approx(0.5 * LOG2, abs=1e-12)
        assert gromov_numeric(u, 1j * u).value == pytest.approx(0.5 * LOG2, abs=1e-3)

    def test_orthogonal(self):
        assert gromov_singletons(E11, E22) == np.inf

    def test_same_diverges(self, rng):
        u = random_minimal(M23, rng)
        assert gromov_singletons(u, u) == np.inf
        rep = gromov_numeric(u, u)
        assert rep.divergent and not rep.converged

    @given(seeds, spaces)
    def test_symmetric_and_peirce_form(self, seed, space):
        rng = rng_from(seed)
        u, v = random_minimal(space, rng), random_minimal(space, rng)
        g = gromov_singletons(u, v)
        assert g == gromov_singletons(v, u) or abs(g - gromov_singletons(v, u)) <= 1e-10
        alt = gromov_from_peirce(u, v)
        assert (g == np.inf and alt == np.inf) or abs(g - alt) <= 1e-10

    @given(seeds)
    def test_numeric_limit(self, seed):
        rng = rng_from(seed)
        u, v = random_minimal(M23, rng, 0), random_minimal(M23, rng, 0)
        g = gromov_singletons(u, v)
        rep = gromov_numeric(u, v)
        assert abs(rep.value - g) <= 1e-3

    def test_disc_value(self):
        # on the disc, (1 | e^{i theta})_0 = 1/2 log(2 / (1 - cos theta))... via oracle |1 - e^{i theta}|
        from symdom import element, TripleSpace

        disc = TripleSpace.of((1, 1))
        for theta in (0.3, 1.0, 2.5):
            u, v = element(disc, [[1.0]]), element(disc, [[np.exp(1j * theta)]])
            expected = -np.log(abs(1 - np.exp(1j * theta)) / 2)
            assert gromov_singletons(u, v) == pytest.approx(expected, abs=1e-12)

    @given(seeds)
    def test_invariant_under_unitaries(self, seed):
        rng = rng_from(seed)
        u, v = random_minimal(M23, rng), random_minimal(M23, rng)
        phi = random_unitary_map(M23, rng)
        assert abs(gromov_singletons(phi(u), phi(v)) - gromov_singletons(u, v)) <= 1e-10

    def test_norm_threshold(self):
        assert gromov_norm(E11, E22) < 1e-10


class TestClassify:
    def test_examples(self, rng):
        u = random_minimal(M23, rng)
        assert classify_pair(u, -u) == "opposite"
        assert classify_pair(E11, E22) == "orthogonal"
        assert classify_pair(u, 1j * u) == "i-multiple"
        assert classify_pair(u, -1j * u) == "minus-i-multiple"
        assert gromov_singletons(u, 1j * u) + gromov_singletons(u, -1j * u) == pytest.approx(LOG2, abs=1e-12)

    def test_generic(self, rng):
        u, v = random_minimal(M23, rng, 0), random_minimal(M23, rng, 0)
        assert classify_pair(u, v) == "generic"

    def test_rotation_in_v2_is_generic(self):
        # same Peirce-2 space but not +-i: the Gromov sum is not log 2
        assert classify_pair(E11, np.exp(0.7j) * E11) == "generic"


class TestCone:
    def test_identity(self):
        i = _cone(1, 1)
        assert cone_M(i, i) == pytest.approx(1.0)
        assert thompson(i, i) == pytest.approx(0.0) and hilbert(i, i) == pytest.approx(0.0)

    def test_diagonal(self):
        x, i = _cone(1, 0.25), _cone(1, 1)
        assert hilbert(x, i) == pytest.approx(LOG2, abs=1e-14)
        assert thompson(x, i) == pytest.approx(np.log(4.0), abs=1e-14)

    @given(seeds)
    def test_inverse_and_scale(self, seed):
        rng = rng_from(seed)
        blocks = []
        for _ in range(2):
            a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
            blocks.append(a @ a.conj().T + 0.1 * np.eye(3))
        x, y = ConePoint((blocks[0],), E11), ConePoint((blocks[1],), E11)
        assert cone_M(x, y) == pytest.approx(cone_M(cone_inverse(y), cone_inverse(x)), rel=1e-9)
        scaled = ConePoint((3.0 * blocks[0],), E11)
        assert hilbert(scaled, y) == pytest.approx(hilbert(x, y), abs=1e-10)
        assert thompson(x, y) >= hilbert(x, y) - 1e-12

    def test_singular_reference(self):
        with pytest.raises(ValueError):
            cone_M(_cone(1, 1), _cone(1, 0))

    def test_non_hermitian(self):
        with pytest.raises(ValueError):
            ConePoint((np.array([[1, 1], [0, 1]], complex),), E11)


class TestDetour:
    xi = HorofunctionSpec((B1, B2), (1.0, 1.0))
    eta = HorofunctionSpec((B1, B2), (1.0, 0.5))

    def test_bidisc_closed_form(self):
        assert detour_cost(self.xi, self.eta) == pytest.approx(0.0, abs=1e-14)
        assert detour_cost(self.eta, self.xi) == pytest.approx(LOG2, abs=1e-14)
        assert detour_metric(self.xi, self.eta) == pytest.approx(LOG2, abs=1e-14)

    def test_bidisc_numeric(self):
        assert detour_cost_numeric(self.eta, self.xi).value == pytest.approx(LOG2, abs=1e-4)
        assert detour_cost_numeric(self.xi, self.eta).value == pytest.approx(0.0, abs=1e-4)

    def test_busemann(self, rng):
        spec = HorofunctionSpec.singleton(random_minimal(M23, rng))
        assert detour_cost(spec, spec) == pytest.approx(0.0, abs=1e-12)
        assert detour_cost_numeric(spec, spec).value == pytest.approx(0.0, abs=1e-4)

    def test_orthogonal_singletons(self):
        a, b = HorofunctionSpec.singleton(E11), HorofunctionSpec.singleton(E22)
        assert detour_cost(a, b) == np.inf and detour_metric(a, b) == np.inf
        assert detour_cost_numeric(a, b).divergent

    def test_not_below(self):
        xi, eta = HorofunctionSpec.singleton(E11), HorofunctionSpec((E11, E22), (1.0, 1.0))
        assert detour_cost(xi, eta) == np.inf
        assert np.isfinite(detour_cost(eta, xi))

    def test_cross_section(self):
        frame = cone_frame(part_of(self.xi))
        a = part_cross_section(self.xi, frame)
        b = part_cross_section(self.eta, frame)
        assert np.allclose(a.dense(), np.eye(2))
        assert np.allclose(np.abs(b.dense()), np.diag([1.0, 0.25]))
        assert hilbert(a, b) == pytest.approx(detour_metric(self.xi, self.eta), abs=1e-12)
        assert cone_M(b, a) == pytest.approx(1.0)

    @given(seeds)
    def test_hilbert_isometry(self, seed):
        rng = rng_from(seed)
        frame = random_frame(M23, rng)
        mu1, mu2 = rng.uniform(0.05, 1.0, 2), rng.uniform(0.05, 1.0, 2)
        mu1[rng.integers(2)] = 1.0
        mu2[rng.integers(2)] = 1.0
        # same part, different frames of the same tripotent
        e = frame[0] + frame[1]
        theta = rng.uniform(0, 2 * np.pi)
        rot = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
        u, _s, vh = np.linalg.svd(e.blocks[0])
        u2, v2 = u[:, :2] @ rot, vh[:2].conj().T @ rot
        other = [M23.embed(0, np.outer(u2[:, k], v2[:, k].conj())) for k in range(2)]
        xi = HorofunctionSpec(frame.members, mu1)
        eta = HorofunctionSpec(other, mu2)
        chart = cone_frame(e)
        d = hilbert(part_cross_section(xi, chart), part_cross_section(eta, chart))
        assert abs(detour_metric(xi, eta) - d) <= 1e-10

    @given(seeds)
    def test_invariant_under_unitaries(self, seed):
        rng = rng_from(seed)
        frame = random_frame(M23, rng)
        xi = HorofunctionSpec(frame.members, (1.0, float(rng.uniform(0.1, 1))))
        eta = HorofunctionSpec(frame.members, (float(rng.uniform(0.1, 1)), 1.0))
        phi = random_unitary_map(M23, rng)
        moved = [HorofunctionSpec([phi(e) for e in s.tripotents], s.lambdas) for s in (xi, eta)]
        assert abs(detour_cost(*moved) - detour_cost(xi, eta)) <= 1e-10


class TestFlatMembership:
    def test_flat_point(self):
        frame = Frame([E11, E22])
        assert flat_membership_test(frame, 0.3 * E11 - 0.6 * E22).member
        assert flat_membership_test(frame, M22.zeros()).member

    def test_perturbed(self):
        frame = Frame([E11, E22])
        rep = flat_membership_test(frame, 0.3 * E11 - 0.6 * E22 + 0.1 * E12)
        assert not rep.member and rep.agree

    @given(seeds, spaces)
    def test_random(self, seed, space):
        rng = rng_from(seed)
        frame = random_frame(space, rng)
        x = frame.point(rng.uniform(-0.9, 0.9, space.rank))
        assert flat_membership_test(frame, x).member
        off = space.random(rng, 0.05)
        if spectral_norm(off - sum((np.vdot(e.vec(), off.vec()) * e for e in frame), space.zeros())) > 1e-3:
            assert not flat_membership_test(frame, x * 0.9 + off).member


class TestTranslation:
    def test_origin_reduces(self, rng):
        frame = random_frame(M23, rng)
        assert translation_action_check(frame, [0.4, -0.7], M23.zeros()) <= 1e-12
        assert translation_action_check(frame, [0.0, 0.0], M23.random_in_ball(rng)) <= 1e-14

    @given(seeds, spaces)
    def test_random(self, seed, space):
        rng = rng_from(seed)
        frame = random_frame(space, rng)
        coords = rng.uniform(-0.9, 0.9, space.rank)
        assert translation_action_check(frame, coords, space.random_in_ball(rng, 0.9)) <= 1e-8


def test_orthogonal_helper_consistent():
    assert is_orthogonal(E11, E22)
