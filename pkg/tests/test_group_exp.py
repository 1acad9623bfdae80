import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isoforge.bridge import (
    GeneratorMatrix,
    boost_generator,
    isometry_basis,
    lift_generator,
    lorentz_rotation_generator,
    poincare_translation_generator,
    rotation_generator,
    translation_generator,
)
from isoforge.group_exp import (
    GroupElement,
    GroupInvariantError,
    apply,
    compose,
    expm,
    expm_closed,
    expm_matrix,
    identity,
    invert,
    isometry_defect,
    preserves_metric,
    se_compose_parts,
    se_decompose,
)
from isoforge.metric_space import Point, euclidean, lift_point, minkowski
from isoforge.suite import constructor_generators, derivative_errors

METRICS = [euclidean(2), euclidean(3), euclidean(4), minkowski(2), minkowski(3)]


def rel(a, b):
    return np.linalg.norm(a - b) / np.linalg.norm(b)


def taylor_oracle(A, terms=60):
    # plain unscaled series; only for small |A|
    S = np.eye(A.shape[0])
    term = np.eye(A.shape[0])
    for k in range(1, terms):
        term = term @ A / k
        S = S + term
    return S


class TestExpm:
    def test_zero_time_is_identity(self):
        for g in isometry_basis(minkowski(3)):
            np.testing.assert_array_equal(expm(g, 0.0).m, np.eye(5))

    def test_quarter_turn(self):
        e = expm(rotation_generator(2, 3, 3), math.pi / 2)
        np.testing.assert_allclose(e.m @ [0, 1, 0], [0, 0, 1], atol=1e-12)

    def test_boost_block(self):
        phi = 0.7
        m = expm(boost_generator(1, 3), phi).m
        expected = np.eye(4)
        expected[:2, :2] = [[math.cosh(phi), math.sinh(phi)], [math.sinh(phi), math.cosh(phi)]]
        np.testing.assert_allclose(m, expected, rtol=1e-14, atol=1e-15)

    def test_guard(self):
        with pytest.raises(ValueError):
            expm(boost_generator(1, 3), 2e4)

    def test_against_unscaled_series(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            A = 0.3 * rng.standard_normal((4, 4))
            np.testing.assert_allclose(expm_matrix(A), taylor_oracle(A), rtol=1e-13, atol=1e-15)

    def test_translation_exp_is_exact(self):
        for t in (0.1, 3.0, -7.25, 123.5):
            g = translation_generator(2, 3)
            np.testing.assert_array_equal(expm(g, t).m, np.eye(4) + t * g.m)

    @pytest.mark.parametrize("metric", METRICS)
    def test_matches_closed_form(self, metric):
        rng = np.random.default_rng(1)
        for g in constructor_generators(metric):
            for t in rng.uniform(-10, 10, 25) / max(1.0, np.linalg.norm(g.m, 1)):
                assert rel(expm(g, t).m, expm_closed(g, t).m) <= 1e-13

    @pytest.mark.parametrize("metric", METRICS)
    def test_one_parameter_subgroup(self, metric):
        rng = np.random.default_rng(2)
        for g in constructor_generators(metric):
            for s, t in rng.uniform(-5, 5, (10, 2)):
                lhs = compose(expm(g, s), expm(g, t)).m
                rhs = expm(g, s + t).m
                assert rel(lhs, rhs) < 1e-11

    @pytest.mark.parametrize("metric", METRICS)
    def test_det_is_one(self, metric):
        rng = np.random.default_rng(4)
        for g in constructor_generators(metric):
            for t in rng.uniform(-10, 10, 10):
                e = expm(g, t)
                block = e.m[:-1, :-1] if e.lifted else e.m
                _, det_dev, scale = isometry_defect(block, metric)
                assert det_dev <= 1e-10 * scale
                assert np.trace(g.m) == 0


class TestClosedForm:
    def test_translation_operator_r3(self):
        eps = np.array([2.0, -3.0, 5.0])
        g = GeneratorMatrix(sum(e * translation_generator(i + 1, 3).m for i, e in enumerate(eps)),
                            True, None, euclidean(3))
        expected = np.eye(4)
        expected[:3, 3] = eps
        np.testing.assert_array_equal(expm_closed(g, 1.0).m, expected)

    def test_translation_operator_r4(self):
        a = np.array([1.0, -2.0, 0.5, 4.0])
        g = GeneratorMatrix(sum(c * poincare_translation_generator(mu, 3).m
                                for mu, c in enumerate(a)), True, None, minkowski(3))
        expected = np.eye(5)
        expected[:4, 4] = a
        np.testing.assert_array_equal(expm_closed(g, 1.0).m, expected)
        x = np.array([0.1, 0.2, 0.3, 0.4])
        np.testing.assert_array_equal(apply(expm_closed(g), x).coords, x + a)

    def test_half_turn_plane(self):
        m = expm_closed(rotation_generator(1, 2, 2), math.pi).m
        np.testing.assert_allclose(m, -np.eye(2), atol=1e-15)

    def test_lifted_rotation(self):
        g = lift_generator(rotation_generator(1, 3, 3))
        np.testing.assert_allclose(expm_closed(g, 0.4).m, expm(g, 0.4).m, atol=1e-15)

    def test_unsupported(self):
        g = GeneratorMatrix(rotation_generator(1, 2, 3).m + rotation_generator(2, 3, 3).m,
                            False, None, euclidean(3))
        with pytest.raises(ValueError):
            expm_closed(g, 1.0)


class TestMetricPreservation:
    def test_rotation_passes(self):
        rep = preserves_metric(expm(rotation_generator(2, 3, 3), 1.234), samples=50, seed=1)
        assert rep.passed

    def test_identity_is_exact(self):
        rep = preserves_metric(identity(minkowski(3)), samples=20, seed=3)
        assert rep.max_deviation == 0.0 and rep.passed

    def test_scaling_fails(self):
        e = GroupElement(np.diag([2.0, 1.0, 1.0]), False, euclidean(3), check=False)
        assert not preserves_metric(e, samples=20, seed=5).passed
        with pytest.raises(GroupInvariantError):
            GroupElement(np.diag([2.0, 1.0, 1.0]), False, euclidean(3))

    def test_lifted_uses_differences(self):
        e = expm(poincare_translation_generator(0, 3), 3.0)
        assert preserves_metric(e, samples=20, seed=9).passed

    def test_report_is_seeded(self):
        e = expm(boost_generator(2, 3), 2.5)
        assert preserves_metric(e, 30, seed=11) == preserves_metric(e, 30, seed=11)


class TestComposition:
    def test_inverse(self):
        for g in isometry_basis(minkowski(3)):
            e = expm(g, 1.3)
            np.testing.assert_allclose(compose(e, invert(e)).m, np.eye(5), atol=1e-10)

    def test_translations_add(self):
        g1 = GeneratorMatrix(0.5 * translation_generator(1, 3).m + 2 * translation_generator(3, 3).m,
                             True, None, euclidean(3))
        g2 = GeneratorMatrix(-1.5 * translation_generator(2, 3).m, True, None, euclidean(3))
        c = compose(expm_closed(g1), expm_closed(g2)).m
        np.testing.assert_array_equal(c[:3, 3], [0.5, -1.5, 2.0])
        np.testing.assert_array_equal(c[:3, :3], np.eye(3))

    def test_angles_add(self):
        g = rotation_generator(1, 2, 3)
        c = compose(expm_closed(g, 0.4), expm_closed(g, 1.1)).m
        np.testing.assert_allclose(c, expm_closed(g, 1.5).m, atol=1e-15)

    def test_mismatch(self):
        with pytest.raises(ValueError):
            compose(identity(euclidean(3)), identity(euclidean(3), lifted=True))

    def test_decay_caught(self):
        e = expm(rotation_generator(1, 2, 2), 0.3)
        bent = GroupElement(e.m * (1 + 1e-6), False, e.metric, check=False)
        with pytest.raises(GroupInvariantError):
            compose(e, bent)


class TestSemidirect:
    def test_translation_operator_decomposes(self):
        eps = np.array([2.0, -3.0, 5.0])
        e = se_compose_parts(np.eye(3), eps, euclidean(3))
        R, t = se_decompose(e)
        np.testing.assert_array_equal(R.m, np.eye(3))
        np.testing.assert_array_equal(t, eps)

    def test_pure_rotation(self):
        e = expm(lift_generator(rotation_generator(1, 2, 3)), 0.8)
        R, t = se_decompose(e)
        np.testing.assert_array_equal(t, np.zeros(3))
        np.testing.assert_allclose(R.m, expm_closed(rotation_generator(1, 2, 3), 0.8).m,
                                   atol=1e-15)

    def test_needs_isometric_block(self):
        m = np.eye(4)
        m[0, 0] = 2.0
        with pytest.raises(GroupInvariantError):
            se_decompose(GroupElement(m, True, euclidean(3), check=False))

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.booleans())
    def test_semidirect_law(self, seed, lorentz):
        rng = np.random.default_rng(seed)
        metric = minkowski(3) if lorentz else euclidean(3)
        gens = isometry_basis(metric, lifted=False)

        def random_linear():
            c = rng.uniform(-1, 1, len(gens))
            return expm(GeneratorMatrix(sum(ci * g.m for ci, g in zip(c, gens)), False, None,
                                        metric))

        R1, R2 = random_linear(), random_linear()
        t1, t2 = rng.standard_normal((2, metric.d))
        lhs = compose(se_compose_parts(R1, t1), se_compose_parts(R2, t2)).m
        rhs = se_compose_parts(compose(R1, R2), R1.m @ t2 + t1).m
        np.testing.assert_allclose(lhs, rhs, atol=1e-12 * max(1, np.abs(lhs).max()))


@pytest.mark.parametrize("metric", [euclidean(3), minkowski(3)])
def test_derivative_law(metric):
    rng = np.random.default_rng(8)
    for g in constructor_generators(metric):
        errs = derivative_errors(g, rng.standard_normal(metric.d))
        if not np.any(g.m @ g.m):
            assert errs.max() < 1e-9
            continue
        ratios = errs[:-1] / errs[1:]
        assert np.all((ratios > 9) & (ratios < 11))


def test_apply_lifted_point():
    e = expm(translation_generator(1, 3), 2.0)
    assert apply(e, lift_point((1, 1, 1))) == Point((3, 1, 1, 1), lifted=True)
    assert apply(e, (1, 1, 1)) == Point((3, 1, 1))


def test_json():
    e = expm(lorentz_rotation_generator(1, 2, 3), 0.5)
    doc = e.to_dict()
    assert abs(doc["det"] - 1) < 1e-14
    np.testing.assert_array_equal(GroupElement.from_dict(doc).m, e.m)
