import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from qarea.errors import DomainError, EvaluationError, ParameterError
from qarea.maps import Identity, PowerStretch, RadialMap, dilatations_at, extremal_map
from qarea.profiles import (
    Constant,
    Logarithmic,
    PowerLaw,
    ScalarField,
    Table,
    circle_average,
    eval_profile,
    profile_from_dict,
    profile_from_map,
    profile_to_dict,
)


def theta_mean(f, z0, t):
    """Oracle: adaptive quadrature of the circle mean in theta."""
    val, _ = quad(lambda th: f(z0 + t * np.exp(1j * th)), 0, 2 * np.pi, limit=200)
    return val / (2 * np.pi)


class TestEvalProfile:
    def test_constant(self):
        assert eval_profile(Constant(2.0), 0.3) == 2.0

    def test_power_law(self):
        assert eval_profile(PowerLaw(1.0, 1.0), 0.5) == 2.0

    def test_logarithmic(self):
        assert eval_profile(Logarithmic(1.0), math.exp(-1), p=3) == pytest.approx(math.e, rel=1e-15)

    def test_logarithmic_needs_p(self):
        with pytest.raises(ParameterError):
            eval_profile(Logarithmic(1.0), 0.5)

    @pytest.mark.parametrize("t", [1.0, 1.5])
    def test_logarithmic_domain(self, t):
        with pytest.raises(DomainError):
            eval_profile(Logarithmic(1.0), t, p=3)

    @pytest.mark.parametrize("t", [0.0, -1.0, math.inf])
    def test_bad_radius(self, t):
        with pytest.raises(DomainError):
            eval_profile(Constant(1.0), t)

    def test_vectorised(self):
        out = PowerLaw(2.0, 2.0)(np.array([0.5, 1.0, 2.0]))
        np.testing.assert_allclose(out, [8.0, 2.0, 0.5])

    @pytest.mark.parametrize(
        "bad",
        [lambda: Constant(0.0), lambda: Constant(-1.0), lambda: PowerLaw(1.0, math.nan), lambda: Logarithmic(math.inf)],
    )
    def test_invalid_parameters(self, bad):
        with pytest.raises(ParameterError):
            bad()


class TestTable:
    knots = ((0.01, 3.0), (0.1, 2.0), (1.0, 1.0))

    def test_exact_at_knots(self):
        tab = Table(self.knots)
        for t, q in self.knots:
            assert tab(t) == q

    def test_loglog_interpolation_of_power_law_is_exact(self):
        ts = np.geomspace(1e-3, 1, 7)
        tab = Table(tuple((t, 3 * t**-1.5) for t in ts))
        probe = np.geomspace(1e-3, 1, 101)
        np.testing.assert_allclose(tab(probe), 3 * probe**-1.5, rtol=1e-12)

    def test_out_of_range(self):
        tab = Table(self.knots)
        with pytest.raises(DomainError):
            tab(0.001)
        with pytest.raises(DomainError):
            tab(2.0)

    def test_extension_below_first_knot(self):
        tab = Table(self.knots)
        assert tab.extended(1e-5) == 3.0

    @pytest.mark.parametrize(
        "knots",
        [((0.1, 1.0),), ((0.2, 1.0), (0.1, 2.0)), ((0.1, 1.0), (0.2, 0.0)), ((0.1, 1.0), (0.2, math.inf))],
    )
    def test_invalid_knots(self, knots):
        with pytest.raises(ParameterError):
            Table(knots)

    @settings(max_examples=60, deadline=None)
    @given(
        st.lists(st.floats(0.1, 10.0), min_size=2, max_size=8),
        st.floats(0.0, 1.0),
    )
    def test_monotone_between_knots(self, qs, frac):
        qs = sorted(qs, reverse=True)
        ts = np.geomspace(0.01, 1, len(qs))
        tab = Table(tuple(zip(ts, qs)))
        for i in range(len(ts) - 1):
            t = ts[i] * (ts[i + 1] / ts[i]) ** frac
            val = tab(t)
            assert qs[i + 1] * (1 - 1e-12) <= val <= qs[i] * (1 + 1e-12)


class TestCircleAverage:
    def test_constant_field(self):
        field = ScalarField(lambda z: np.full(np.shape(z), 3.5), 1.0)
        assert circle_average(field, 0.2 + 0.1j, 0.4, 16) == pytest.approx(3.5, rel=1e-15)

    def test_inverse_distance(self):
        z0 = 0.3 - 0.2j
        field = ScalarField(lambda z: 1 / np.abs(z - z0), 1.0)
        assert circle_average(field, z0, 0.25, 16) == pytest.approx(4.0, rel=1e-12)

    def test_abs_cosine(self):
        z0 = 0.1j
        field = ScalarField(lambda z: np.abs((z - z0).real) / np.abs(z - z0), 2.0)
        oracle = theta_mean(lambda z: abs((z - z0).real) / abs(z - z0), z0, 0.7)
        assert oracle == pytest.approx(2 / math.pi, rel=1e-10)
        assert circle_average(field, z0, 0.7, 4096) == pytest.approx(2 / math.pi, rel=1e-6)

    def test_smooth_field_matches_quadrature_oracle(self):
        z0 = 0.2 + 0.1j
        f = lambda z: np.exp(np.real(z)) * (2 + np.cos(3 * np.imag(z)))  # noqa: E731
        field = ScalarField(f, 5.0)
        assert circle_average(field, z0, 0.9, 64) == pytest.approx(theta_mean(f, z0, 0.9), rel=1e-12)

    @pytest.mark.parametrize("n", [16, 32, 100])
    def test_radial_field_equals_pointwise_value(self, n):
        field = ScalarField(lambda z: 1 + np.abs(z) ** 2 * np.log1p(np.abs(z)), 3.0)
        t = 1.3
        assert circle_average(field, 0, t, n) == pytest.approx(1 + t**2 * math.log1p(t), rel=1e-12)

    def test_non_finite_reports_theta(self):
        field = ScalarField(lambda z: np.where(np.imag(z) > 0.49, np.nan, 1.0), 1.0)
        with pytest.raises(EvaluationError) as info:
            circle_average(field, 0, 0.5, 16)
        assert info.value.theta == pytest.approx(math.pi / 2)

    def test_preconditions(self):
        field = ScalarField(lambda z: np.ones(np.shape(z)), 1.0)
        with pytest.raises(ParameterError):
            circle_average(field, 0, 0.5, 4)
        with pytest.raises(DomainError):
            circle_average(field, 0, 1.0, 16)

    @settings(max_examples=40, deadline=None)
    @given(st.floats(0.0, 3.0), st.floats(0.0, 3.0), st.floats(0.05, 0.95))
    def test_linear_and_monotone(self, a, b, t):
        f1 = lambda z: 1 + np.real(z) ** 2  # noqa: E731
        f2 = lambda z: f1(z) + np.abs(np.imag(z))  # noqa: E731
        F1, F2 = ScalarField(f1, 1.0), ScalarField(f2, 1.0)
        combo = ScalarField(lambda z: a * f1(z) + b * f2(z), 1.0)
        m1, m2 = circle_average(F1, 0, t, 32), circle_average(F2, 0, t, 32)
        assert circle_average(combo, 0, t, 32) == pytest.approx(a * m1 + b * m2, rel=1e-12, abs=1e-15)
        assert m1 <= m2


class TestProfileFromMap:
    def test_extremal_map_gives_q0(self):
        prof = profile_from_map(extremal_map(4.0, 3.0), 3.0)
        assert isinstance(prof, Constant)
        assert prof.q0 == pytest.approx(4.0, rel=1e-15)

    def test_identity(self):
        assert profile_from_map(Identity(), 5.0) == Constant(1.0)

    def test_power_stretch(self):
        assert profile_from_map(PowerStretch(2.0), 4.0) == PowerLaw(2.0, 2.0)

    def test_rejects_small_p(self):
        with pytest.raises(ParameterError):
            profile_from_map(Identity(), 2.0)

    @pytest.mark.parametrize("s", [0.3, 0.5, 0.8, 1.0, 1.5, 2.0, 3.0])
    @pytest.mark.parametrize("p", [2.5, 3.0, 4.0, 8.0])
    def test_matches_pointwise_dilatation(self, s, p):
        prof = profile_from_map(PowerStretch(s), p)
        for t in np.geomspace(1e-3, 0.99, 9):
            lead = s if s >= 1 else s ** (1 - p)
            expected = lead * t ** ((s - 1) * (2 - p))
            assert prof(t) == pytest.approx(expected, rel=1e-12)
            assert prof(t) == pytest.approx(dilatations_at(PowerStretch(s), t, p).K_Ip, rel=1e-12)

    def test_generic_radial_map_is_tabulated(self):
        class Cubic(RadialMap):
            def rho(self, t):
                return t + t**3

            def drho(self, t):
                return 1 + 3 * t**2

        prof = profile_from_map(Cubic(), 3.0, t_range=(1e-3, 1.0), n=50)
        assert isinstance(prof, Table)
        t = prof.knots[10][0]
        assert prof(t) == pytest.approx(dilatations_at(Cubic(), t, 3.0).K_Ip, rel=1e-14)


class TestJson:
    @pytest.mark.parametrize(
        "text",
        [
            '{"type":"constant","q0":2.0}',
            '{"type":"power","q0":1.0,"alpha":1.0}',
            '{"type":"log","q0":1.0}',
            '{"type":"table","knots":[[0.01,3.0],[0.1,2.0],[1.0,1.0]]}',
        ],
    )
    def test_round_trip(self, text):
        data = json.loads(text)
        assert profile_to_dict(profile_from_dict(data)) == data

    @pytest.mark.parametrize("data", [{"type": "weird"}, {"type": "constant"}, {"q0": 1.0}, {"type": "table", "knots": 3}])
    def test_malformed(self, data):
        with pytest.raises(ParameterError):
            profile_from_dict(data)
