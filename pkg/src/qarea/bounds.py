"""Lower bounds for the area of the image of a disc.

For a weight with circle-mean profile ``q`` the image of the disc
``B(z0, r)`` has area at least

    pi * ((p-2)/(p-1) * I(r)) ** (2(p-1)/(p-2))

with ``I(r)`` from :func:`qarea.quadrature.bound_integral`.  The closed-form
special cases (constant, power-law and logarithmic majorants) and the
minimum of the area functional over the constant-bounded class are provided
alongside, so every fast path has an independent general-path counterpart.
"""
from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParameterError, QAreaError
from .profiles import WeightProfile
from .quadrature import QuadratureConfig, bound_integral

__all__ = [
    "BoundParams",
    "BoundCurve",
    "area_lower_bound",
    "power_law_bound",
    "constant_bound",
    "log_bound",
    "extremal_min",
    "bound_curve",
    "worker_count",
]


def _powlog(base, expo):
    """``base ** expo`` through logarithms; exact when ``base == 1`` or ``expo`` is 0 or 1."""
    if expo == 0 or base == 1:
        return 1.0
    if expo == 1:
        return float(base)
    if base == 0:
        return 0.0 if expo > 0 else math.inf
    val = expo * math.log(base)
    if val > 709.0:
        return math.inf
    return math.exp(val)


def _product(factors, logs):
    """Product of ``factors``, redone as ``exp(sum(logs))`` when it leaves the normal range."""
    out = math.prod(factors)
    if 0 < out < math.inf:
        return out
    total = math.fsum(logs)
    if total > 709.0:
        return math.inf
    return math.exp(total)


def _check_common(q0, p, r):
    if not (q0 > 0 and math.isfinite(q0)):
        raise ParameterError(f"q0 must be positive and finite, got {q0!r}")
    if not p > 2:
        raise ParameterError(f"exponent p must exceed 2, got {p!r}")
    if not (r > 0 and math.isfinite(r)):
        raise DomainError(f"radius r must be positive, got {r!r}")


def _weight_factor(q0, p):
    # q0 ** (2/(2-p))
    return _powlog(q0, 2.0 / (2.0 - p))


@dataclass(frozen=True)
class BoundParams:
    p: float
    r: float
    d0: float = 1.0
    z0: complex = 0j

    def __post_init__(self):
        if not self.p > 2:
            raise ParameterError(f"exponent p must exceed 2, got {self.p!r}")
        if not (self.d0 > 0 and math.isfinite(self.d0)):
            raise ParameterError(f"d0 must be positive, got {self.d0!r}")
        if not 0 < self.r < self.d0:
            raise DomainError(f"need 0 < r < d0, got r={self.r!r}, d0={self.d0!r}")


def area_lower_bound(
    profile: WeightProfile,
    params: BoundParams,
    cfg: QuadratureConfig | None = None,
    *,
    fast_path: bool = True,
) -> float:
    """Lower bound on ``|f B(z0, r)|`` for a weight majorised by ``profile``."""
    p = params.p
    integral = bound_integral(profile, p, params.r, cfg, fast_path=fast_path)
    if integral == 0:
        return 0.0
    return math.pi * _powlog((p - 2) / (p - 1) * integral, 2 * (p - 1) / (p - 2))


def power_law_bound(q0: float, alpha: float, p: float, r: float) -> float:
    """Closed-form bound for ``q(t) <= q0 * t**(-alpha)``, ``alpha >= 0``."""
    _check_common(q0, p, r)
    if not (alpha >= 0 and math.isfinite(alpha)):
        raise ParameterError(f"alpha must be finite and >= 0, got {alpha!r}")
    e_pi, e_c, e_disc = -alpha / (p - 2), 2 * (p - 1) / (p - 2), 1 + alpha / (p - 2)
    c = (p - 2) / (alpha + p - 2)
    shape = _powlog(math.pi, e_pi) * _powlog(c, e_c) * _powlog(math.pi * r * r, e_disc)
    logs = [
        e_pi * math.log(math.pi),
        e_c * math.log(c),
        e_disc * (math.log(math.pi) + 2 * math.log(r)),
        2.0 / (2.0 - p) * math.log(q0),
    ]
    return _product([_weight_factor(q0, p), shape], logs)


def constant_bound(q0: float, p: float, r: float) -> float:
    """``q0**(2/(2-p)) * pi * r**2``; also covers a pointwise bound ``Q <= q0``."""
    return power_law_bound(q0, 0.0, p, r)


def log_bound(q0: float, p: float, r: float) -> float:
    """Bound for ``q(t) <= q0 / (t log(1/t)**(p-1))`` on the unit disc."""
    _check_common(q0, p, r)
    if not r < 1:
        raise DomainError(f"logarithmic bound needs r < 1, got {r!r}")
    e = 2 * (p - 1) / (p - 2)
    c = (p - 2) / (p - 1)
    g = r * math.log(math.e / r)
    factors = [math.pi, _powlog(c, e), _weight_factor(q0, p), _powlog(g, e)]
    logs = [math.log(math.pi), e * math.log(c), 2.0 / (2.0 - p) * math.log(q0), e * math.log(g)]
    return _product(factors, logs)


def extremal_min(q0: float, p: float, r: float) -> float:
    """Minimum of ``|f(B_r)|`` over the class bounded by ``q(t) <= q0``; ``r in [0, 1]``."""
    if r == 0:
        _check_common(q0, p, 1.0)
        return 0.0
    if r > 1:
        raise DomainError(f"extremal problem is posed for r in [0, 1], got {r!r}")
    return constant_bound(q0, p, r)


@dataclass(frozen=True)
class BoundCurve:
    samples: tuple
    profile_id: str
    p: float

    @property
    def radii(self):
        return np.array([s[0] for s in self.samples])

    @property
    def bounds(self):
        return np.array([s[1] for s in self.samples])

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["r", "bound"])
        for r, b in self.samples:
            writer.writerow([format(r, ".17g"), format(b, ".17g")])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, profile_id: str = "", p: float = math.nan):
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or rows[0] != ["r", "bound"]:
            raise ParameterError("bound curve CSV must start with header 'r,bound'")
        return cls(tuple((float(a), float(b)) for a, b in rows[1:]), profile_id, p)

    def to_json(self) -> str:
        return json.dumps(
            {
                "profile_id": self.profile_id,
                "p": self.p,
                "samples": [[r, b] for r, b in self.samples],
            },
            indent=1,
        )

    @classmethod
    def from_json(cls, text: str):
        data = json.loads(text)
        return cls(tuple((float(r), float(b)) for r, b in data["samples"]), data["profile_id"], float(data["p"]))


def worker_count() -> int:
    """Thread cap from ``QAREA_THREADS`` (default 1)."""
    raw = os.environ.get("QAREA_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ParameterError(f"QAREA_THREADS must be an integer, got {raw!r}") from None


def geometric_radii(d0: float, n: int, r_min_ratio: float = 1e-3) -> np.ndarray:
    """``n`` radii spaced geometrically in ``[r_min_ratio * d0, d0)``."""
    return np.geomspace(d0 * r_min_ratio, d0, n, endpoint=False)


def bound_curve(
    profile: WeightProfile,
    p: float,
    d0: float,
    n: int,
    cfg: QuadratureConfig | None = None,
    *,
    radii=None,
    fast_path: bool = True,
) -> BoundCurve:
    """Sweep :func:`area_lower_bound` over a geometric grid of radii in ``(0, d0)``.

    Explicit ``radii`` override the grid.  Errors are re-raised with the
    offending radius attached as ``r``.
    """
    if radii is None:
        if n < 2:
            raise ParameterError(f"a bound curve needs at least 2 samples, got {n}")
        radii = geometric_radii(d0, n)
    radii = [float(r) for r in radii]
    if any(b <= a for a, b in zip(radii[:-1], radii[1:])):
        raise ParameterError("curve radii must be strictly increasing")

    def one(r):
        try:
            return area_lower_bound(profile, BoundParams(p, r, d0), cfg, fast_path=fast_path)
        except QAreaError as exc:
            exc.r = r
            exc.args = (f"at r={r!r}: {exc}",)
            raise

    workers = min(worker_count(), len(radii))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(one, radii))
    else:
        values = [one(r) for r in radii]
    return BoundCurve(tuple(zip(radii, values)), profile.profile_id, float(p))
