"""Radial test homeomorphisms with exact dilatations and image areas.

Every map here has the form ``z -> rho(|z|) * z / |z|``.  Such a map sends
the disc of radius ``r`` onto the disc of radius ``rho(r)``, so image areas
are known exactly and the lower bounds of :mod:`qarea.bounds` can be checked
against them.

For a radial map the two principal stretchings at radius ``t`` are the
radial one ``rho'(t)`` and the tangential one ``rho(t)/t``.  The inner
p-dilatation ``K_Ip = J / l**p`` is used as the weight ``Q`` of the map; the
package takes this as given rather than re-deriving the modulus inequality.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import DomainError, ParameterError

__all__ = [
    "RadialMap",
    "Identity",
    "LinearScaling",
    "PowerStretch",
    "Dilatations",
    "dilatations_at",
    "image_disc_area",
    "extremal_map",
    "area_functional",
    "map_to_dict",
    "map_from_dict",
    "load_map",
]


def _check_p(p):
    if not p > 2:
        raise ParameterError(f"exponent p must exceed 2, got {p!r}")


def _check_radius(t, name="t"):
    if not (t > 0 and math.isfinite(t)):
        raise DomainError(f"{name} must be a positive finite radius, got {t!r}")


@dataclass(frozen=True)
class Dilatations:
    """Stretchings of a map at one point.

    ``l`` and ``L`` are the smallest and largest stretching, ``J`` the
    Jacobian and ``K_Ip`` the inner p-dilatation ``J / l**p``.
    """

    l: float
    L: float
    J: float
    K_Ip: float


class RadialMap:
    """Base class; subclasses define the radial profile ``rho`` and ``drho``."""

    def rho(self, t):
        raise NotImplementedError

    def drho(self, t):
        raise NotImplementedError

    def __call__(self, z):
        z = complex(z)
        if z == 0:
            return 0j
        t = abs(z)
        return self.rho(t) * z / t


@dataclass(frozen=True)
class Identity(RadialMap):
    def rho(self, t):
        return t

    def drho(self, t):
        return 1.0


@dataclass(frozen=True)
class LinearScaling(RadialMap):
    """``z -> c z``."""

    c: float

    def __post_init__(self):
        if not (self.c > 0 and math.isfinite(self.c)):
            raise ParameterError(f"scale factor c must be positive, got {self.c!r}")

    def rho(self, t):
        return self.c * t

    def drho(self, t):
        return self.c


@dataclass(frozen=True)
class PowerStretch(RadialMap):
    """``z -> |z|**(s-1) z``, i.e. ``rho(t) = t**s``."""

    s: float

    def __post_init__(self):
        if not (self.s > 0 and math.isfinite(self.s)):
            raise ParameterError(f"stretch exponent s must be positive, got {self.s!r}")

    def rho(self, t):
        return t**self.s

    def drho(self, t):
        return self.s * t ** (self.s - 1)


def dilatations_at(fmap: RadialMap, t: float, p: float) -> Dilatations:
    """Dilatations of ``fmap`` on the circle ``|z| = t`` for exponent ``p``."""
    _check_radius(t)
    _check_p(p)
    if isinstance(fmap, Identity):
        return Dilatations(1.0, 1.0, 1.0, 1.0)
    if isinstance(fmap, LinearScaling):
        c = fmap.c
        return Dilatations(c, c, c * c, c ** (2 - p))
    if isinstance(fmap, PowerStretch):
        s = fmap.s
        base = t ** (s - 1)
        k_shape = t ** ((s - 1) * (2 - p))
        if s >= 1:
            return Dilatations(base, s * base, s * t ** (2 * s - 2), s * k_shape)
        return Dilatations(s * base, base, s * t ** (2 * s - 2), s ** (1 - p) * k_shape)
    # generic radial map: principal stretchings are rho' and rho/t
    radial = fmap.drho(t)
    tangential = fmap.rho(t) / t
    lo, hi = min(radial, tangential), max(radial, tangential)
    jac = radial * tangential
    return Dilatations(lo, hi, jac, jac / lo**p)


def image_disc_area(fmap: RadialMap, r: float) -> float:
    """Area of the image of the closed disc of radius ``r``: ``pi rho(r)**2``."""
    _check_radius(r, "r")
    radius = fmap.rho(r)
    return math.pi * radius * radius


def extremal_map(q0: float, p: float) -> LinearScaling:
    """The linear scaling ``z -> q0**(1/(2-p)) z`` whose ``K_Ip`` is ``q0``."""
    if not (q0 > 0 and math.isfinite(q0)):
        raise ParameterError(f"q0 must be positive, got {q0!r}")
    _check_p(p)
    return LinearScaling(q0 ** (1 / (2 - p)))


def area_functional(fmap: RadialMap, r: float) -> float:
    """``S_r(f) = |f(B_r)|`` on the unit disc; ``r`` must lie in (0, 1]."""
    if r > 1:
        raise DomainError(f"area functional is defined for r <= 1, got {r!r}")
    return image_disc_area(fmap, r)


def map_to_dict(fmap: RadialMap) -> dict:
    if isinstance(fmap, Identity):
        return {"type": "identity"}
    if isinstance(fmap, LinearScaling):
        return {"type": "scale", "c": fmap.c}
    if isinstance(fmap, PowerStretch):
        return {"type": "power", "s": fmap.s}
    raise ParameterError(f"no JSON encoding for {type(fmap).__name__}")


def map_from_dict(data: dict) -> RadialMap:
    try:
        kind = data["type"]
        if kind == "identity":
            return Identity()
        if kind == "scale":
            return LinearScaling(float(data["c"]))
        if kind == "power":
            return PowerStretch(float(data["s"]))
    except (KeyError, TypeError) as exc:
        raise ParameterError(f"malformed map spec {data!r}") from exc
    raise ParameterError(f"unknown map type {kind!r}")


def load_map(path) -> RadialMap:
    with open(path) as fh:
        return map_from_dict(json.load(fh))
