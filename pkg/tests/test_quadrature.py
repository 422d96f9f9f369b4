import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from qarea.errors import ConvergenceError, DivergenceError, DomainError, ParameterError
from qarea.profiles import Constant, Logarithmic, PowerLaw, Table
from qarea.quadrature import QuadratureConfig, bound_integral, closed_form_integral

GRID_P = [2.5, 3.0, 4.0, 8.0]
GRID_Q0 = [0.5, 1.0, 4.0]
GRID_ALPHA = [0.0, 1.0, 2.0]


def _inv_root(profile, p):
    """``q(t)**(-1/(p-1))`` written out from the profile parameters, with its t -> 0 limit."""
    k = 1 / (p - 1)
    if isinstance(profile, Constant):
        return lambda t: profile.q0**-k
    if isinstance(profile, Logarithmic):
        return lambda t: profile.q0**-k * t**k * math.log(1 / t) if t > 0 else 0.0
    ts = np.log([kn[0] for kn in profile.knots])
    qs = np.log([kn[1] for kn in profile.knots])
    return lambda t: math.exp(-k * np.interp(math.log(max(t, profile.knots[0][0])), ts, qs))


def oracle(profile, p, r):
    """scipy QAWS: the t**(-1/(p-1)) factor is handled as an algebraic weight."""
    k = 1 / (p - 1)
    opts = dict(epsabs=0, epsrel=1e-13, limit=200)
    if isinstance(profile, PowerLaw):
        # the whole integrand is an algebraic weight times a constant
        expo = (profile.alpha - 1) * k
        return profile.q0**-k * quad(lambda t: 1.0, 0, r, weight="alg", wvar=(expo, 0), **opts)[0]
    g = _inv_root(profile, p)
    points = [t for t, _ in profile.knots if 0 < t < r] if isinstance(profile, Table) else []
    first = points[0] if points else r
    total = quad(g, 0, first, weight="alg", wvar=(-k, 0), **opts)[0]
    edges = points + [r]
    for a, b in zip(edges[:-1], edges[1:]):
        total += quad(lambda t: t**-k * g(t), a, b, **opts)[0]
    return total


class TestExamples:
    def test_constant_p4(self):
        assert bound_integral(Constant(1.0), 4.0, 1.0) == pytest.approx(1.5, rel=1e-15)
        assert bound_integral(Constant(1.0), 4.0, 1.0, fast_path=False) == pytest.approx(1.5, rel=1e-12)

    def test_power_law_unit_integrand(self):
        assert bound_integral(PowerLaw(1.0, 1.0), 4.0, 0.5) == pytest.approx(0.5, rel=1e-15)
        assert bound_integral(PowerLaw(1.0, 1.0), 4.0, 0.5, fast_path=False) == pytest.approx(0.5, rel=1e-12)

    def test_constant_two_p3(self):
        assert bound_integral(Constant(2.0), 3.0, 1.0) == pytest.approx(math.sqrt(2), rel=1e-15)
        assert bound_integral(Constant(2.0), 3.0, 1.0, fast_path=False) == pytest.approx(math.sqrt(2), rel=1e-12)


class TestClosedFormsAgainstOracle:
    @pytest.mark.parametrize("p", GRID_P)
    @pytest.mark.parametrize("q0", GRID_Q0)
    @pytest.mark.parametrize("alpha", GRID_ALPHA)
    def test_power_law(self, p, q0, alpha):
        prof = PowerLaw(q0, alpha)
        for r in (0.1, 0.5, 0.9):
            ref = oracle(prof, p, r)
            assert closed_form_integral(prof, p, r) == pytest.approx(ref, rel=1e-11)
            assert bound_integral(prof, p, r, fast_path=False) == pytest.approx(ref, rel=1e-9)

    @pytest.mark.parametrize("p", GRID_P)
    @pytest.mark.parametrize("q0", GRID_Q0)
    def test_logarithmic(self, p, q0):
        prof = Logarithmic(q0)
        for r in (0.05, 0.5, 0.95):
            ref = oracle(prof, p, r)
            assert closed_form_integral(prof, p, r) == pytest.approx(ref, rel=1e-10)
            assert bound_integral(prof, p, r, fast_path=False) == pytest.approx(ref, rel=1e-9)

    @pytest.mark.parametrize("p", [3.0, 4.0])
    @pytest.mark.parametrize("s", [0.5, 0.7])
    def test_negative_alpha_from_contracting_stretch(self, p, s):
        prof = PowerLaw(s ** (1 - p), (s - 1) * (p - 2))
        r = 0.6
        exact = closed_form_integral(prof, p, r)
        assert exact == pytest.approx(oracle(prof, p, r), rel=1e-10)
        assert bound_integral(prof, p, r, fast_path=False) == pytest.approx(exact, rel=1e-8)


class TestTable:
    knots = ((0.01, 3.0), (0.1, 2.0), (1.0, 1.0))

    @pytest.mark.parametrize("p", [2.5, 3.0, 6.0])
    @pytest.mark.parametrize("r", [0.005, 0.05, 0.5, 1.0])
    def test_against_oracle(self, p, r):
        tab = Table(self.knots)
        assert bound_integral(tab, p, r) == pytest.approx(oracle(tab, p, r), rel=1e-9)

    def test_power_law_table_matches_closed_form_above_first_knot(self):
        p, q0, alpha = 4.0, 2.0, 1.0
        ts = np.geomspace(1e-8, 1, 9)
        tab = Table(tuple((t, q0 * t**-alpha) for t in ts))
        # below the first knot the table is held constant at q(1e-8)
        k = 1 / (p - 1)
        below = (p - 1) / (p - 2) * (q0 * 1e8) ** -k * 1e-8 ** ((p - 2) * k)
        exact = closed_form_integral(PowerLaw(q0, alpha), p, 0.7)
        exact_below = closed_form_integral(PowerLaw(q0, alpha), p, 1e-8)
        assert bound_integral(tab, p, 0.7) == pytest.approx(exact - exact_below + below, rel=1e-9)

    def test_beyond_last_knot(self):
        with pytest.raises(DomainError):
            bound_integral(Table(self.knots), 3.0, 1.5)


class TestErrors:
    @pytest.mark.parametrize("fast", [True, False])
    def test_divergent_power_law(self, fast):
        # integrand exponent (alpha-1)/(p-1) = -1 exactly at alpha = 2 - p
        with pytest.raises(DivergenceError):
            bound_integral(PowerLaw(1.0, -1.0), 3.0, 0.5, fast_path=fast)
        with pytest.raises(DivergenceError):
            bound_integral(PowerLaw(1.0, -3.0), 3.0, 0.5, fast_path=fast)

    def test_p_at_most_two(self):
        with pytest.raises(ParameterError):
            bound_integral(Constant(1.0), 2.0, 0.5)

    @pytest.mark.parametrize("r", [0.0, -0.1, math.nan])
    def test_bad_radius(self, r):
        with pytest.raises(DomainError):
            bound_integral(Constant(1.0), 3.0, r)

    def test_log_domain(self):
        with pytest.raises(DomainError):
            bound_integral(Logarithmic(1.0), 3.0, 1.0)

    def test_convergence_error_carries_estimate(self):
        cfg = QuadratureConfig(rel_tol=1e-300, abs_tol=1e-300, max_depth=10)
        with pytest.raises(ConvergenceError) as info:
            bound_integral(Logarithmic(1.0), 3.0, 0.5, cfg, fast_path=False)
        assert info.value.estimate == pytest.approx(0.5 * math.log(2 * math.e), rel=1e-8)

    def test_config_validation(self):
        with pytest.raises(ParameterError):
            QuadratureConfig(rel_tol=0)
        with pytest.raises(ParameterError):
            QuadratureConfig(max_depth=5)


class TestProperties:
    @settings(max_examples=60, deadline=None)
    @given(st.sampled_from(GRID_P), st.floats(0.2, 5.0), st.floats(0.0, 3.0), st.floats(0.01, 0.98), st.floats(0.01, 0.98))
    def test_increasing_in_r(self, p, q0, alpha, r1, r2):
        lo, hi = sorted((r1, r2))
        assume(hi - lo > 1e-6 * hi)
        prof = PowerLaw(q0, alpha)
        assert bound_integral(prof, p, lo, fast_path=False) < bound_integral(prof, p, hi, fast_path=False)

    @pytest.mark.parametrize("p", GRID_P)
    def test_vanishes_at_zero(self, p):
        vals = [bound_integral(Logarithmic(1.0), p, r, fast_path=False) for r in (1e-2, 1e-4, 1e-8)]
        assert vals[0] > vals[1] > vals[2]
        assert vals[2] < 1e-6

    @settings(max_examples=40, deadline=None)
    @given(st.sampled_from(GRID_P), st.floats(0.2, 5.0), st.floats(1.0, 3.0), st.floats(0.01, 0.98))
    def test_antitone_in_profile(self, p, q0, factor, r):
        # q1 <= q2 pointwise
        small = Table(((1e-3, q0), (0.5, 2 * q0), (1.0, q0)))
        large = Table(((1e-3, q0 * factor), (0.5, 2 * q0 * factor), (1.0, q0 * factor)))
        assert bound_integral(small, p, r) >= bound_integral(large, p, r)

    def test_deterministic(self):
        tab = Table(((0.01, 3.0), (0.1, 2.0), (1.0, 1.0)))
        a = bound_integral(tab, 3.7, 0.77)
        b = bound_integral(tab, 3.7, 0.77)
        assert a == b
