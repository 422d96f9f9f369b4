"""Radial weight profiles ``q(t)`` and circle averages of planar weights.

A profile is a radial majorant of the circle means of a weight ``Q``.  Four
shapes are supported:

================  ==========================================
``Constant``      ``q0``
``PowerLaw``      ``q0 * t**(-alpha)``
``Logarithmic``   ``q0 / (t * log(1/t)**(p-1))`` on ``(0, 1)``
``Table``         log-log interpolation between knots
================  ==========================================

The logarithmic shape depends on the exponent ``p``, which is passed at
evaluation time so that one profile object can be reused across ``p``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, EvaluationError, ParameterError
from .maps import Identity, LinearScaling, PowerStretch, RadialMap, dilatations_at

__all__ = [
    "WeightProfile",
    "Constant",
    "PowerLaw",
    "Logarithmic",
    "Table",
    "ScalarField",
    "eval_profile",
    "circle_average",
    "profile_from_map",
    "profile_to_dict",
    "profile_from_dict",
    "load_profile",
]


def _positive(name, value):
    if not (value > 0 and math.isfinite(value)):
        raise ParameterError(f"{name} must be positive and finite, got {value!r}")


def _radii(t):
    t = np.asarray(t, dtype=float)
    if not np.all(t > 0) or not np.all(np.isfinite(t)):
        raise DomainError(f"radius must be positive and finite, got {t!r}")
    return t


def _scalar_or_array(values, like):
    return float(values) if np.ndim(like) == 0 else values


class WeightProfile:
    """Common interface: ``profile(t, p=None)`` evaluates ``q(t)``."""

    #: largest radius the profile accepts (exclusive for ``Logarithmic``)
    t_max = math.inf

    def __call__(self, t, p=None):
        t = _radii(t)
        return _scalar_or_array(self._eval(t, p), t)

    def _eval(self, t, p):
        raise NotImplementedError

    @property
    def profile_id(self) -> str:
        fields = ",".join(f"{k}={v!r}" for k, v in profile_to_dict(self).items() if k != "type")
        return f"{profile_to_dict(self)['type']}({fields})"


@dataclass(frozen=True)
class Constant(WeightProfile):
    q0: float

    def __post_init__(self):
        _positive("q0", self.q0)

    def _eval(self, t, p):
        return np.full_like(t, self.q0)


@dataclass(frozen=True)
class PowerLaw(WeightProfile):
    """``q0 * t**(-alpha)``.

    ``alpha`` may be negative: power stretches that contract the disc
    (``s < 1``) induce such profiles.  Whether the radial integral converges
    then depends on ``p`` and is decided by :func:`qarea.quadrature.bound_integral`.
    """

    q0: float
    alpha: float = 0.0

    def __post_init__(self):
        _positive("q0", self.q0)
        if not math.isfinite(self.alpha):
            raise ParameterError(f"alpha must be finite, got {self.alpha!r}")

    def _eval(self, t, p):
        return self.q0 * t ** (-self.alpha)


@dataclass(frozen=True)
class Logarithmic(WeightProfile):
    q0: float
    t_max = 1.0

    def __post_init__(self):
        _positive("q0", self.q0)

    def _eval(self, t, p):
        if p is None:
            raise ParameterError("the logarithmic profile needs the exponent p")
        if not np.all(t < 1):
            raise DomainError("the logarithmic profile is defined only for t in (0, 1)")
        return self.q0 / (t * np.log(1 / t) ** (p - 1))


@dataclass(frozen=True)
class Table(WeightProfile):
    """Tabulated profile, interpolated linearly in ``(log t, log q)``.

    Evaluation outside the knot range is a :class:`DomainError`.  The radial
    integrator extends the table by the first knot value below ``t[0]``.
    """

    knots: tuple

    def __post_init__(self):
        knots = tuple((float(t), float(q)) for t, q in self.knots)
        if len(knots) < 2:
            raise ParameterError("a table profile needs at least two knots")
        ts = np.array([k[0] for k in knots])
        qs = np.array([k[1] for k in knots])
        if not (np.all(ts > 0) and np.all(np.diff(ts) > 0)):
            raise ParameterError("table radii must be positive and strictly increasing")
        if not (np.all(np.isfinite(qs)) and np.all(qs > 0)):
            raise ParameterError("table values must be finite and positive")
        object.__setattr__(self, "knots", knots)

    @property
    def t_min(self):
        return self.knots[0][0]

    @property
    def t_max(self):
        return self.knots[-1][0]

    def _logs(self):
        arr = np.log(np.array(self.knots))
        return arr[:, 0], arr[:, 1]

    def _eval(self, t, p):
        if np.any(t < self.t_min) or np.any(t > self.t_max):
            raise DomainError(f"t outside table range [{self.t_min}, {self.t_max}]")
        return self._interp(t)

    def _interp(self, t):
        lt, lq = self._logs()
        out = np.exp(np.interp(np.log(t), lt, lq))
        # exact at the knots
        idx = np.searchsorted(lt, np.log(t))
        idx = np.clip(idx, 0, len(lt) - 1)
        hit = np.asarray(t) == np.array([k[0] for k in self.knots])[idx]
        return np.where(hit, np.array([k[1] for k in self.knots])[idx], out)

    def extended(self, t):
        """Interpolate, holding the first knot value constant for ``t < t_min``."""
        t = np.asarray(t, dtype=float)
        if np.any(t > self.t_max):
            raise DomainError(f"t beyond the last table knot {self.t_max}")
        return self._interp(np.maximum(t, self.t_min))


def eval_profile(profile: WeightProfile, t, p=None):
    """Evaluate ``q(t)``; ``p`` is required only for ``Logarithmic``."""
    return profile(t, p)


@dataclass(frozen=True)
class ScalarField:
    """A nonnegative planar weight.

    ``eval`` receives an array of complex points and returns an array of
    weights of the same shape.
    """

    eval: Callable
    domain_radius: float = math.inf


def circle_average(field: ScalarField, z0: complex, t: float, n: int = 64) -> float:
    """Mean of ``field`` over the circle ``|z - z0| = t``.

    Uses the ``n``-point trapezoid rule, which is spectrally accurate for
    smooth periodic integrands.
    """
    if n < 8:
        raise ParameterError(f"need at least 8 samples, got {n}")
    if not (0 < t < field.domain_radius):
        raise DomainError(f"t={t!r} outside (0, {field.domain_radius})")
    theta = 2 * np.pi * np.arange(n) / n
    values = np.asarray(field.eval(complex(z0) + t * np.exp(1j * theta)), dtype=float)
    values = np.broadcast_to(values, theta.shape)
    bad = ~np.isfinite(values)
    if bad.any():
        k = int(np.argmax(bad))
        raise EvaluationError(
            f"non-finite field value at theta={theta[k]!r}", theta=float(theta[k])
        )
    return float(np.sum(values) / n)


def profile_from_map(fmap: RadialMap, p: float, *, t_range=(1e-6, 1.0), n: int = 241):
    """Circle-average profile of ``K_Ip`` for a radial map.

    ``K_Ip`` is constant on circles centred at the origin, so its circle mean
    is its value.  Maps without a closed form are tabulated on a log grid
    over ``t_range``.
    """
    if not p > 2:
        raise ParameterError(f"exponent p must exceed 2, got {p!r}")
    if isinstance(fmap, Identity):
        return Constant(1.0)
    if isinstance(fmap, LinearScaling):
        return Constant(fmap.c ** (2 - p))
    if isinstance(fmap, PowerStretch):
        s = fmap.s
        q0 = s if s >= 1 else s ** (1 - p)
        return PowerLaw(q0, (s - 1) * (p - 2))
    ts = np.geomspace(t_range[0], t_range[1], n)
    return Table(tuple((float(t), dilatations_at(fmap, float(t), p).K_Ip) for t in ts))


def profile_to_dict(profile: WeightProfile) -> dict:
    if isinstance(profile, Constant):
        return {"type": "constant", "q0": profile.q0}
    if isinstance(profile, PowerLaw):
        return {"type": "power", "q0": profile.q0, "alpha": profile.alpha}
    if isinstance(profile, Logarithmic):
        return {"type": "log", "q0": profile.q0}
    if isinstance(profile, Table):
        return {"type": "table", "knots": [list(k) for k in profile.knots]}
    raise ParameterError(f"no JSON encoding for {type(profile).__name__}")


def profile_from_dict(data: dict) -> WeightProfile:
    try:
        kind = data["type"]
        if kind == "constant":
            return Constant(float(data["q0"]))
        if kind == "power":
            return PowerLaw(float(data["q0"]), float(data.get("alpha", 0.0)))
        if kind == "log":
            return Logarithmic(float(data["q0"]))
        if kind == "table":
            return Table(tuple(tuple(k) for k in data["knots"]))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParameterError):
            raise
        raise ParameterError(f"malformed profile spec {data!r}") from exc
    raise ParameterError(f"unknown profile type {kind!r}")


def load_profile(path) -> WeightProfile:
    with open(path) as fh:
        return profile_from_dict(json.load(fh))
