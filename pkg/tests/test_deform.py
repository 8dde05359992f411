import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.spatial.transform import Rotation

from sqsample.deform import (
    DeformationSpec,
    apply_pipeline,
    bend_points,
    deform_points,
    invert_pipeline,
    pose_points,
    rotation_matrix,
    taper_points,
)
from sqsample.params import SamplingConfig, SuperquadricParams, inside_outside_se
from sqsample.surface import sample_superellipsoid

RNG = np.random.default_rng(11)
CLOUD = RNG.uniform(-1, 1, size=(200, 3))


class TestTaper:
    def test_zero_is_identity(self):
        np.testing.assert_array_equal(taper_points(CLOUD, 0, 0, 1.3), CLOUD)

    def test_examples(self):
        np.testing.assert_allclose(taper_points([[1, 1, 2.0]], 1, 0, 2.0), [[2, 1, 2]])
        np.testing.assert_allclose(taper_points([[1, 0, 2.0]], -1, 0, 2.0), [[0, 0, 2]])

    def test_z_untouched(self):
        out = taper_points(CLOUD, 0.4, -0.7, 0.8)
        np.testing.assert_array_equal(out[:, 2], CLOUD[:, 2])


class TestBend:
    def test_plane_z0_unchanged(self):
        pts = CLOUD.copy()
        pts[:, 2] = 0
        np.testing.assert_array_equal(bend_points(pts, 2.0), pts)

    def test_example(self):
        k = 1.7
        np.testing.assert_allclose(bend_points([[0, 0, k]], k), [[k * (1 - math.sqrt(2)), 0, k]])

    def test_huge_radius_is_near_identity(self):
        a3 = 1.0
        out = bend_points(CLOUD, 1e6 * a3)
        assert np.abs(out - CLOUD).max() < 1e-6 * a3

    def test_y_z_untouched(self):
        out = bend_points(CLOUD, 1.2)
        np.testing.assert_array_equal(out[:, 1:], CLOUD[:, 1:])


class TestPose:
    def test_identity(self):
        np.testing.assert_array_equal(pose_points(CLOUD, (0, 0, 0), (0, 0, 0)), CLOUD)

    def test_quarter_turn_about_z(self):
        np.testing.assert_allclose(pose_points([[1, 0, 0]], (math.pi / 2, 0, 0), (0, 0, 0)), [[0, 1, 0]], atol=1e-15)

    @settings(max_examples=50, deadline=None)
    @given(st.tuples(*[st.floats(-math.pi, math.pi)] * 3))
    def test_matches_intrinsic_zyz(self, angles):
        expected = Rotation.from_euler("ZYZ", angles).as_matrix()
        np.testing.assert_allclose(rotation_matrix(angles), expected, atol=1e-12)

    def test_isometry(self):
        out = pose_points(CLOUD, (0.3, -1.1, 2.2), (4, -5, 6))
        d0 = np.linalg.norm(CLOUD[:, None] - CLOUD[None], axis=-1)
        d1 = np.linalg.norm(out[:, None] - out[None], axis=-1)
        assert np.abs(d0 - d1).max() < 1e-12

    def test_rotation_before_translation(self):
        out = pose_points([[1, 0, 0]], (math.pi / 2, 0, 0), (1, 2, 3))
        np.testing.assert_allclose(out, [[1, 3, 3]], atol=1e-15)


class TestPipeline:
    def test_no_deformation_is_identity(self):
        s = sample_superellipsoid(SuperquadricParams(), SamplingConfig(D=0.2))
        out = apply_pipeline(s)
        np.testing.assert_array_equal(out.points, s.points)

    def test_taper_and_bend_do_not_commute(self):
        a3 = 1.0
        tb = bend_points(taper_points(CLOUD, 0.5, 0, a3), a3)
        bt = taper_points(bend_points(CLOUD, a3), 0.5, 0, a3)
        assert np.abs(tb - bt).max() > 1e-3

    def test_order_is_taper_bend_rotate_translate(self):
        params = SuperquadricParams(Kx=0.3, Ky=-0.2, bend_k=1.5, euler_zyz=(0.2, 0.4, 0.6), position=(1, 2, 3))
        manual = pose_points(bend_points(taper_points(CLOUD, 0.3, -0.2, 1.0), 1.5), (0.2, 0.4, 0.6), (1, 2, 3))
        np.testing.assert_array_equal(deform_points(CLOUD, params), manual)

    def test_inverse_mapped_points_are_on_surface(self):
        params = SuperquadricParams(Kx=0.5)
        s = sample_superellipsoid(params, SamplingConfig(D=0.1))
        out = apply_pipeline(s)
        back = invert_pipeline(out.points, params)
        assert np.abs(inside_outside_se(back, params) - 1).max() < 1e-6

    def test_full_round_trip(self):
        params = SuperquadricParams(a1=1.3, eps1=0.6, Kx=-0.4, Ky=0.7, bend_k=2.0,
                                    euler_zyz=(1.0, -0.5, 2.5), position=(-3, 0.5, 8))
        np.testing.assert_allclose(invert_pipeline(deform_points(CLOUD, params), params), CLOUD, atol=1e-12)

    def test_preserves_count_and_order(self):
        params = SuperquadricParams(Kx=0.2, bend_k=3.0, euler_zyz=(0.1, 0.2, 0.3))
        s = sample_superellipsoid(params, SamplingConfig(D=0.1))
        out = apply_pipeline(s)
        assert len(out) == len(s)
        np.testing.assert_array_equal(out.param_coords, s.param_coords)


def test_spec_from_params():
    spec = DeformationSpec.from_params(SuperquadricParams(a3=2.0, Kx=0.1, bend_k=4.0))
    assert spec == DeformationSpec(0.1, 0.0, 4.0, 2.0)
