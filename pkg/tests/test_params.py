import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sqsample.params import (
    BendRadiusTooSmall,
    EpsOutOfRange,
    InvalidParams,
    Kind,
    NonPositiveScale,
    SamplingConfig,
    ScaleRatioTooLarge,
    SuperquadricParams,
    TaperOutOfRange,
    check,
    inside_outside_se,
    inside_outside_sp,
    signed_pow,
    validate,
)

SPHERE = SuperquadricParams()
UNIT_SP = SuperquadricParams(kind=Kind.SUPERPARABOLOID)


def codes(params):
    return sorted(type(e).__name__ for e in check(params))


class TestValidate:
    def test_unit_sphere_is_valid(self):
        assert validate(SPHERE) is SPHERE

    @pytest.mark.parametrize(
        "changes, expected",
        [
            ({"eps1": 2.5}, EpsOutOfRange),
            ({"eps2": 0.0}, EpsOutOfRange),
            ({"eps1": 0.005}, EpsOutOfRange),
            ({"a1": 20.0}, ScaleRatioTooLarge),
            ({"a2": -1.0}, NonPositiveScale),
            ({"Kx": 1.5}, TaperOutOfRange),
            ({"Ky": -1.01}, TaperOutOfRange),
            ({"bend_k": 0.5}, BendRadiusTooSmall),
        ],
    )
    def test_each_invariant(self, changes, expected):
        params = SuperquadricParams(**changes)
        with pytest.raises(InvalidParams) as info:
            validate(params)
        assert [type(e) for e in info.value.errors] == [expected]
        assert expected.code in str(info.value)

    def test_envelope_edges_are_valid(self):
        validate(SuperquadricParams(a1=10.0, eps1=2.0, eps2=0.01, Kx=-1.0, Ky=1.0, bend_k=1.0))

    def test_reports_every_violation(self):
        params = SuperquadricParams(a1=20.0, eps1=3.0, Kx=2.0, bend_k=0.1)
        assert codes(params) == ["BendRadiusTooSmall", "EpsOutOfRange", "ScaleRatioTooLarge", "TaperOutOfRange"]

    @given(
        a=st.tuples(*[st.floats(-1, 30, allow_nan=False)] * 3),
        eps=st.tuples(*[st.floats(-1, 3, allow_nan=False)] * 2),
        kx=st.floats(-2, 2, allow_nan=False),
    )
    def test_check_is_idempotent_and_pure(self, a, eps, kx):
        params = SuperquadricParams(a1=a[0], a2=a[1], a3=a[2], eps1=eps[0], eps2=eps[1], Kx=kx)
        first = [str(e) for e in check(params)]
        assert [str(e) for e in check(params)] == first
        assert params == SuperquadricParams(a1=a[0], a2=a[1], a3=a[2], eps1=eps[0], eps2=eps[1], Kx=kx)


class TestSamplingConfig:
    def test_defaults(self):
        cfg = SamplingConfig()
        assert cfg.theta_singular == 0.01

    @pytest.mark.parametrize("kwargs", [{"D": 0}, {"D": -1}, {"theta_singular": 1.0}, {"max_samples_per_curve": 1}])
    def test_rejects(self, kwargs):
        with pytest.raises(ValueError):
            SamplingConfig(**kwargs)


class TestInsideOutside:
    @pytest.mark.parametrize("x, expected", [((0, 0, 0), 0.0), ((1, 0, 0), 1.0), ((2, 0, 0), 4.0)])
    def test_sphere(self, x, expected):
        assert inside_outside_se(x, SPHERE) == pytest.approx(expected, abs=1e-15)

    @pytest.mark.parametrize("x, expected", [((1, 0, 0), 1.0), ((0, 0, -1), 1.0), ((0, 0, 0), 0.0)])
    def test_superparaboloid(self, x, expected):
        assert inside_outside_sp(x, UNIT_SP) == pytest.approx(expected, abs=1e-15)

    def test_negative_octants_are_real(self):
        params = SuperquadricParams(eps1=0.3, eps2=0.7)
        x = np.array([[0.3, -0.2, -0.1], [-0.3, 0.2, 0.1]])
        f = inside_outside_se(x, params)
        assert np.all(np.isfinite(f))
        assert f[0] == pytest.approx(f[1])

    def test_classifies_inside_and_outside(self):
        params = SuperquadricParams(a1=2, a2=1, a3=0.5, eps1=0.4, eps2=1.3)
        assert inside_outside_se((0.5, 0.2, 0.1), params) < 1
        assert inside_outside_se((2.5, 0, 0), params) > 1

    def test_superparaboloid_is_one_on_parametric_surface(self):
        params = SuperquadricParams(kind="sp", a1=1.5, a2=0.7, a3=2.0, eps1=0.6, eps2=1.4)
        rng = np.random.default_rng(3)
        u = rng.uniform(0, 1, 200)
        w = rng.uniform(0, np.pi / 2, 200)
        x = params.a1 * u * np.cos(w) ** params.eps2
        y = params.a2 * u * np.sin(w) ** params.eps2
        z = params.a3 * (u ** (2 / params.eps1) - 1)
        f = inside_outside_sp(np.stack([x, y, z], axis=-1), params)
        np.testing.assert_allclose(f, 1.0, atol=1e-12)


def test_signed_pow():
    np.testing.assert_allclose(signed_pow([-8.0, 0.0, 8.0], 1 / 3), [-2.0, 0.0, 2.0])
