"""p-capacity of ring condensers, the Kruzhkov lower bound, and the
isoperimetric deficit of polygons.

Three independent routes to the capacity of the ring ``r < |z - c| < R``:

* :func:`ring_capacity_closed` -- the exact value
  ``2 pi beta**(p-1) (R**beta - r**beta)**(1-p)`` with ``beta = (p-2)/(p-1)``;
* :func:`radial_capacity_1d` -- exact minimisation of the radial p-energy
  over piecewise-linear profiles on a geometric grid (an upper bound);
* :func:`grid_capacity_2d` -- nonlinear conjugate-gradient minimisation of
  a discrete Dirichlet p-energy on a square grid.
"""
from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import GeometryError, LineSearchError, NumericalError, ParameterError

__all__ = [
    "RingCondenser",
    "OptimizerConfig",
    "GridField",
    "CapacityResult",
    "OptimizerWarning",
    "ring_capacity_closed",
    "radial_capacity_1d",
    "radial_sampled_energy",
    "radial_solution",
    "grid_energy",
    "grid_capacity_2d",
    "kruzhkov_bound",
    "ring_kruzhkov_bound",
    "isoperimetric_deficit",
    "polygon_perimeter_area",
]


class OptimizerWarning(UserWarning):
    """The iteration cap was reached before the stopping rule fired."""


def _check_p(p):
    if not p > 2:
        raise ParameterError(f"exponent p must exceed 2, got {p!r}")


@dataclass(frozen=True)
class RingCondenser:
    """The condenser ``(B(c, R), closed B(c, r))``."""

    inner: float
    outer: float
    center: complex = 0j

    def __post_init__(self):
        if not (self.inner > 0 and math.isfinite(self.outer)):
            raise ParameterError("ring radii must be positive and finite")
        if not self.inner < self.outer:
            raise ParameterError(
                f"degenerate condenser: need inner < outer, got {self.inner!r}, {self.outer!r}"
            )

    @property
    def area(self):
        return math.pi * (self.outer**2 - self.inner**2)


def ring_capacity_closed(cond: RingCondenser, p: float) -> float:
    _check_p(p)
    beta = (p - 2) / (p - 1)
    gap = cond.outer**beta - cond.inner**beta
    if gap <= 0:
        raise NumericalError("ring too thin: capacity diverges at working precision")
    return 2 * math.pi * beta ** (p - 1) * gap ** (1 - p)


def radial_solution(cond: RingCondenser, p: float):
    """The extremal radial function ``u(t) = (R**b - t**b) / (R**b - r**b)``."""
    beta = (p - 2) / (p - 1)
    rb, Rb = cond.inner**beta, cond.outer**beta

    def u(t):
        t = np.clip(np.asarray(t, dtype=float), cond.inner, cond.outer)
        return (Rb - t**beta) / (Rb - rb)

    return u


def _radial_grid(cond, n):
    if n < 16:
        raise ParameterError(f"radial grid needs n >= 16 intervals, got {n}")
    t = np.geomspace(cond.inner, cond.outer, n + 1)
    t[0], t[-1] = cond.inner, cond.outer
    return t


def _radial_coefficients(t, p):
    # energy of a linear piece with drop d on [t_i, t_{i+1}] is c_i |d|**p
    h = np.diff(t)
    return 2 * np.pi * 0.5 * (t[1:] ** 2 - t[:-1] ** 2) / h**p


def radial_capacity_1d(cond: RingCondenser, p: float, n: int = 4096) -> float:
    """Minimum radial p-energy over continuous piecewise-linear profiles.

    With ``c_i`` the energy of a unit drop on interval ``i``, minimising
    ``sum c_i |d_i|**p`` subject to ``sum d_i = 1`` gives
    ``d_i ~ c_i**(-1/(p-1))`` and the minimum ``S**(1-p)`` with
    ``S = sum c_i**(-1/(p-1))``.  Being a minimum over a subspace of
    competitors it is never below the true capacity.
    """
    _check_p(p)
    c = _radial_coefficients(_radial_grid(cond, n), p)
    s = math.fsum(c ** (-1 / (p - 1)))
    value = s ** (1 - p)
    if not math.isfinite(value):
        raise NumericalError("radial minimisation produced a non-finite energy", residual=value)
    return value


def radial_sampled_energy(cond: RingCondenser, p: float, n: int = 4096) -> float:
    """Radial p-energy of the exact solution interpolated on the radial grid."""
    _check_p(p)
    t = _radial_grid(cond, n)
    d = np.abs(np.diff(radial_solution(cond, p)(t)))
    return math.fsum(_radial_coefficients(t, p) * d**p)


def kruzhkov_bound(sep_length: float, ring_area: float, p: float) -> float:
    """``sep_length**p / ring_area**(p-1)``, a lower bound for the capacity.

    ``sep_length`` is the infimum of lengths of smooth curves separating the
    plates and ``ring_area`` the area between them.
    """
    if not sep_length >= 0:
        raise ParameterError(f"separating length must be nonnegative, got {sep_length!r}")
    if not ring_area > 0:
        raise ParameterError(f"ring area must be positive, got {ring_area!r}")
    if not p >= 1:
        raise ParameterError(f"exponent p must be at least 1, got {p!r}")
    return sep_length**p / ring_area ** (p - 1)


def ring_kruzhkov_bound(cond: RingCondenser, p: float) -> float:
    # shortest separating curve of a ring is the inner circle
    return kruzhkov_bound(2 * math.pi * cond.inner, cond.area, p)


# ---------------------------------------------------------------------------
# 2D grid minimiser

INTERIOR, CLAMPED_ONE, CLAMPED_ZERO = 0, 1, 2


@dataclass(frozen=True)
class OptimizerConfig:
    max_iters: int = 20000
    tol: float = 1e-10
    ls_backtrack: float = 0.5
    ls_c: float = 1e-4
    window: int = 25

    def __post_init__(self):
        if self.max_iters < 1 or self.window < 1:
            raise ParameterError("max_iters and window must be positive")
        if not self.tol > 0:
            raise ParameterError("tol must be positive")
        if not 0 < self.ls_backtrack < 1:
            raise ParameterError("ls_backtrack must lie in (0, 1)")
        if not 0 < self.ls_c < 1:
            raise ParameterError("ls_c must lie in (0, 1)")

    @classmethod
    def from_dict(cls, data: dict):
        unknown = set(data) - {"max_iters", "tol", "ls_backtrack", "ls_c", "window"}
        if unknown:
            raise ParameterError(f"unknown optimizer settings {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self):
        return {
            "max_iters": self.max_iters,
            "tol": self.tol,
            "ls_backtrack": self.ls_backtrack,
            "ls_c": self.ls_c,
            "window": self.window,
        }


@dataclass
class GridField:
    """Cell-centred values on the square ``[-R, R]**2`` around the ring.

    ``mask`` classifies each cell by its centre: inside the inner disc
    (clamped to 1), outside the outer disc (clamped to 0), or free.
    """

    values: np.ndarray
    mask: np.ndarray
    h: float

    @property
    def resolution(self):
        return self.values.shape[0]

    @classmethod
    def for_ring(cls, cond: RingCondenser, N: int, initial=None, p=None):
        """Build the grid; ``initial`` is ``"radial"`` (needs ``p``), ``"linear"`` or a callable of radius."""
        if N < 32:
            raise ParameterError(f"grid resolution must be at least 32, got {N}")
        h = 2 * cond.outer / N
        centres = -cond.outer + h * (np.arange(N) + 0.5)
        x, y = np.meshgrid(centres, centres, indexing="ij")
        rho = np.hypot(x, y)
        mask = np.full((N, N), INTERIOR, dtype=np.int8)
        mask[rho <= cond.inner] = CLAMPED_ONE
        mask[rho >= cond.outer] = CLAMPED_ZERO
        if initial is None or initial == "radial":
            if p is None:
                raise ParameterError("radial initial guess needs the exponent p")
            guess = radial_solution(cond, p)(rho)
        elif initial == "linear":
            guess = (cond.outer - np.clip(rho, cond.inner, cond.outer)) / (cond.outer - cond.inner)
        else:
            guess = np.asarray(initial(rho), dtype=float)
        values = np.where(mask == CLAMPED_ONE, 1.0, np.where(mask == CLAMPED_ZERO, 0.0, guess))
        if not np.all(np.isfinite(values)):
            raise ParameterError("initial guess has non-finite values")
        return cls(values, mask, h)

    @property
    def free(self):
        return self.mask == INTERIOR


def _energy_grad(padded, h, p, grad=True):
    """Discrete p-energy of a zero-padded nodal array and its gradient.

    Each square of four neighbouring cell centres is split into triangles
    along both diagonals; the gradient is constant on each of the four
    triangles, which carry a quarter of the square's area each.
    """
    a = padded[:-1, :-1]
    b = padded[1:, :-1]
    c = padded[:-1, 1:]
    d = padded[1:, 1:]
    ex0 = (b - a) / h
    ex1 = (d - c) / h
    ey0 = (c - a) / h
    ey1 = (d - b) / h
    x0, x1, y0, y1 = ex0 * ex0, ex1 * ex1, ey0 * ey0, ey1 * ey1
    squares = (x0 + y0, x1 + y1, x0 + y1, x1 + y0)
    weight = 0.25 * h * h
    half = 0.5 * p - 1
    powers = [np.power(s, half) for s in squares]
    energy = weight * math.fsum(float(np.sum(pw * s)) for pw, s in zip(powers, squares))
    if not grad:
        return energy
    k = weight * p / h
    gx0 = k * (powers[0] + powers[2]) * ex0
    gx1 = k * (powers[1] + powers[3]) * ex1
    gy0 = k * (powers[0] + powers[3]) * ey0
    gy1 = k * (powers[1] + powers[2]) * ey1
    g = np.zeros_like(padded)
    g[:-1, :-1] -= gx0 + gy0
    g[1:, :-1] += gx0 - gy1
    g[:-1, 1:] += gy0 - gx1
    g[1:, 1:] += gx1 + gy1
    return energy, g


def _pad(values):
    return np.pad(values, 1)


def grid_energy(gf: GridField, p: float) -> float:
    """Discrete p-energy of a grid field (cells beyond the square count as 0)."""
    _check_p(p)
    return _energy_grad(_pad(gf.values), gf.h, p, grad=False)


@dataclass
class CapacityResult:
    energy: float
    initial_energy: float
    iterations: int
    status: str
    field: GridField
    history: list = field(default_factory=list, repr=False)


def grid_capacity_2d(
    cond: RingCondenser,
    p: float,
    N: int,
    config: OptimizerConfig | None = None,
    *,
    initial=None,
) -> CapacityResult:
    """Minimise the discrete p-energy over grid functions clamped by the mask.

    Polak-Ribiere nonlinear conjugate gradient with automatic restart.  The
    first trial step of each line search comes from a secant fit of the
    directional derivative; Armijo backtracking then guarantees descent, so
    ``history`` is nonincreasing.

    The run stops when the energy drops by less than ``tol`` (relative) over
    ``window`` iterations.  Reaching ``max_iters`` returns the best value
    with ``status == "max_iters"`` and an :class:`OptimizerWarning`.
    """
    _check_p(p)
    cfg = config or OptimizerConfig()
    gf = initial if isinstance(initial, GridField) else GridField.for_ring(cond, N, initial, p)
    free = _pad(gf.free)
    u = _pad(gf.values)
    h = gf.h

    energy, g = _energy_grad(u, h, p)
    g[~free] = 0.0
    history = [energy]
    direction = -g
    gg = float(np.sum(g * g))
    step = None
    status = "converged"
    it = 0

    while gg > 0:
        if it >= cfg.max_iters:
            status = "max_iters"
            break
        it += 1
        slope = float(np.sum(g * direction))
        if slope >= 0:
            direction = -g
            slope = -gg
        trial = 1.0 / math.sqrt(gg) if step is None else step
        _, g_trial = _energy_grad(u + trial * direction, h, p)
        g_trial[~free] = 0.0
        slope_trial = float(np.sum(g_trial * direction))
        if slope_trial > slope:
            secant = trial * slope / (slope - slope_trial)
            if math.isfinite(secant) and secant > 0:
                trial = secant
        while True:
            candidate = u + trial * direction
            new_energy, new_g = _energy_grad(candidate, h, p)
            if new_energy <= energy + cfg.ls_c * trial * slope:
                break
            trial *= cfg.ls_backtrack
            if trial * math.sqrt(float(np.sum(direction * direction))) < 1e-300 or trial == 0:
                raise LineSearchError(
                    f"line search failed after {it} iterations", energy=energy
                )
        step = trial
        new_g[~free] = 0.0
        beta = max(0.0, float(np.sum(new_g * (new_g - g))) / gg)
        u, energy, g = candidate, new_energy, new_g
        gg = float(np.sum(g * g))
        direction = -g + beta * direction
        history.append(energy)
        if len(history) > cfg.window and history[-cfg.window - 1] - energy <= cfg.tol * abs(energy):
            break

    if status == "max_iters":
        warnings.warn(
            f"optimizer stopped at the iteration cap ({cfg.max_iters}); energy {energy!r}",
            OptimizerWarning,
            stacklevel=2,
        )
    final = GridField(u[1:-1, 1:-1].copy(), gf.mask, h)
    return CapacityResult(energy, history[0], it, status, final, history)


# ---------------------------------------------------------------------------
# polygons


def _as_vertices(polygon):
    pts = np.asarray(polygon)
    if np.iscomplexobj(pts):
        pts = np.column_stack([pts.real, pts.imag])
    pts = np.asarray(pts, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise GeometryError("polygon must be a sequence of (x, y) vertices")
    if len(pts) < 3:
        raise GeometryError(f"polygon needs at least 3 vertices, got {len(pts)}")
    if not np.all(np.isfinite(pts)):
        raise GeometryError("polygon vertices must be finite")
    return pts


def _cross(o, a, b):
    return (a[..., 0] - o[..., 0]) * (b[..., 1] - o[..., 1]) - (a[..., 1] - o[..., 1]) * (b[..., 0] - o[..., 0])


def _check_simple(pts):
    n = len(pts)
    nxt = np.roll(pts, -1, axis=0)
    if np.any(np.all(pts == nxt, axis=1)):
        raise GeometryError("polygon has repeated consecutive vertices")
    i, j = np.triu_indices(n, k=1)
    adjacent = (j == i + 1) | ((i == 0) & (j == n - 1))
    i, j = i[~adjacent], j[~adjacent]
    p1, p2, q1, q2 = pts[i], nxt[i], pts[j], nxt[j]
    d1 = _cross(q1, q2, p1)
    d2 = _cross(q1, q2, p2)
    d3 = _cross(p1, p2, q1)
    d4 = _cross(p1, p2, q2)
    proper = (d1 * d2 < 0) & (d3 * d4 < 0)

    def on_segment(a, b, c, d):
        # c collinear with segment ab and within its bounding box
        return (
            (d == 0)
            & (np.minimum(a[:, 0], b[:, 0]) <= c[:, 0])
            & (c[:, 0] <= np.maximum(a[:, 0], b[:, 0]))
            & (np.minimum(a[:, 1], b[:, 1]) <= c[:, 1])
            & (c[:, 1] <= np.maximum(a[:, 1], b[:, 1]))
        )

    touching = (
        on_segment(q1, q2, p1, d1)
        | on_segment(q1, q2, p2, d2)
        | on_segment(p1, p2, q1, d3)
        | on_segment(p1, p2, q2, d4)
    )
    if np.any(proper | touching):
        raise GeometryError("polygon is self-intersecting")
    # adjacent edges folding back onto each other
    prev = np.roll(pts, 1, axis=0)
    fold = (_cross(prev, pts, nxt) == 0) & (np.sum((pts - prev) * (nxt - pts), axis=1) < 0)
    if np.any(fold):
        raise GeometryError("polygon edges fold back on themselves")


def polygon_perimeter_area(polygon):
    """Perimeter and (unsigned, shoelace) area of a simple polygon."""
    pts = _as_vertices(polygon)
    _check_simple(pts)
    nxt = np.roll(pts, -1, axis=0)
    perimeter = math.fsum(np.hypot(*(nxt - pts).T))
    area = 0.5 * abs(math.fsum(pts[:, 0] * nxt[:, 1] - nxt[:, 0] * pts[:, 1]))
    if area == 0:
        raise GeometryError("polygon encloses no area")
    return perimeter, area


def isoperimetric_deficit(polygon) -> float:
    """``L**2 - 4 pi A``; nonnegative for every simple polygon."""
    perimeter, area = polygon_perimeter_area(polygon)
    return perimeter * perimeter - 4 * math.pi * area
