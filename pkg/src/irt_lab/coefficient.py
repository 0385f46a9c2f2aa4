"""Leading-coefficient analysis for lattice sections of the unit square and
unit disk, and for the two-disk construction.

For a unit-area shape K, ``f_K(z)`` is the area shared by K and its quarter
turn about z. Integrating ``f_K`` over K gives the n^2 coefficient of the IRT
count of the lattice points inside a large copy of K.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

SQRT2 = math.sqrt(2.0)
DISK_RADIUS = 1.0 / math.sqrt(math.pi)
DISK_SUPPORT = math.sqrt(2.0 / math.pi)
DISK_COEFFICIENT = 0.75 - 1.0 / math.pi
SQUARE_COEFFICIENT = 5.0 / 12.0

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class Shape(enum.Enum):
    UNIT_SQUARE = "square"
    UNIT_DISK = "disk"

    @property
    def half_width(self) -> float:
        return 0.5 if self is Shape.UNIT_SQUARE else DISK_RADIUS


def _disk_overlap(r):
    r = np.abs(np.asarray(r, dtype=float))
    inside = r < DISK_SUPPORT
    rc = np.where(inside, r, 0.0)
    u = np.clip(math.sqrt(2.0 * math.pi) / 2.0 * rc, -1.0, 1.0)
    val = (2.0 / math.pi) * np.arccos(u) - rc * np.sqrt(np.maximum(2.0 / math.pi - rc * rc, 0.0))
    return np.where(inside, np.maximum(val, 0.0), 0.0)


def _square_overlap(x, y):
    ax, ay = np.abs(np.asarray(x, dtype=float)), np.abs(np.asarray(y, dtype=float))
    a = 1.0 - ax - ay
    b = 1.0 - np.abs(ax - ay)
    return np.where(a > 0, a * b, 0.0)


def f_shape(shape: Shape, x, y=0.0):
    """Overlap area of the shape and its quarter turn about (x, y).

    Accepts scalars or arrays; scalars give a float back.
    """
    if shape is Shape.UNIT_SQUARE:
        out = _square_overlap(x, y)
    else:
        out = _disk_overlap(np.hypot(x, y))
    return float(out) if np.ndim(out) == 0 else out


def _in_shape(shape: Shape, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if shape is Shape.UNIT_SQUARE:
        return (np.abs(x) <= 0.5) & (np.abs(y) <= 0.5)
    return x * x + y * y <= DISK_RADIUS ** 2


def f_numeric(shape: Shape, x: float, y: float, resolution: int = 2048) -> float:
    """Midpoint-grid estimate of the same overlap area, measured directly."""
    if resolution < 64:
        raise ValueError("resolution must be at least 64")
    h = shape.half_width
    step = 2 * h / resolution
    axis = -h + step * (np.arange(resolution) + 0.5)
    total = 0
    # row blocks keep memory flat at high resolution
    for lo in range(0, resolution, 256):
        gx = axis[lo:lo + 256][:, None]
        gy = axis[None, :]
        # a sample s lies in the rotated copy iff its inverse quarter turn is in K
        inv_x = x + (gy - y)
        inv_y = y - (gx - x)
        mask = _in_shape(shape, gx, gy) & _in_shape(shape, inv_x, inv_y)
        total += int(mask.sum())
    return total * step * step


def shape_integral(shape: Shape, resolution: int = 4000) -> float:
    """Midpoint-rule integral of ``f_shape`` over the shape itself."""
    h = shape.half_width
    step = 2 * h / resolution
    axis = -h + step * (np.arange(resolution) + 0.5)
    total = 0.0
    for lo in range(0, resolution, 500):
        gx = axis[lo:lo + 500][:, None]
        gy = axis[None, :]
        vals = f_shape(shape, gx, gy) * _in_shape(shape, gx, gy)
        total += float(vals.sum())
    return total * step * step


def integral_I(t: float) -> float:
    """Integral of the disk overlap function over the disk scaled by ``t``."""
    if t < 0 or t > SQRT2 * (1 + 1e-12):
        raise ValueError(f"t must lie in [0, sqrt(2)], got {t}")
    u = min(t / SQRT2, 1.0)
    return (4 * t * t * math.acos(u) + 2 * math.asin(u)
            - t * (t * t + 1) * math.sqrt(max(2 - t * t, 0.0))) / (2 * math.pi)


def integral_I_radial(t: float) -> float:
    """Same integral by adaptive radial quadrature of the overlap function."""
    from scipy.integrate import quad

    upper = min(t, SQRT2) / math.sqrt(math.pi)
    val, _ = quad(lambda r: float(_disk_overlap(r)) * r, 0.0, upper,
                  epsabs=1e-14, epsrel=1e-13, limit=200)
    return 2 * math.pi * val


@dataclass(frozen=True)
class CoefficientResult:
    x: float
    value: float
    branch: str
    cases: tuple[float, float, float, float]


def _c_low(x: float) -> float:
    s = math.sqrt(x / 2)
    inner = (8 * x * math.acos(s) + 4 * math.asin(s) + (5 * math.pi - 4) * x * x
             + (3 * math.pi - 4) - 2 * (x + 1) * math.sqrt(2 * x - x * x))
    return inner / (4 * math.pi * (x + 1) ** 2)


def _c_high(x: float) -> float:
    s, w = math.sqrt(x / 2), math.sqrt(min(1 / (2 * x), 1.0))
    inner = (8 * x * (math.acos(s) + math.acos(w)) + 4 * math.asin(s)
             + 4 * x * x * math.asin(w) + (3 * math.pi - 4) * (x * x + 1)
             - 2 * (x + 1) * (math.sqrt(2 * x - x * x) + math.sqrt(max(2 * x - 1, 0.0))))
    return inner / (4 * math.pi * (x + 1) ** 2)


def case_contributions(x: float) -> tuple[float, float, float, float]:
    """n^2 coefficients of the four vertex-placement classes of A ∪ B.

    Order: all in A, all in B, right angle in B, right angle in A.
    """
    d = (1 + x) ** 2
    a_only = DISK_COEFFICIENT / d
    b_only = DISK_COEFFICIENT * x * x / d
    apex_b = integral_I(math.sqrt(x)) / d
    if x <= 0.5:
        apex_a = integral_I(SQRT2) * x * x / d
    else:
        apex_a = integral_I(1 / math.sqrt(x)) * x * x / d
    return a_only, b_only, apex_b, apex_a


def coefficient_c(x: float) -> CoefficientResult:
    """n^2 coefficient of the two-disk construction with size ratio ``x``."""
    if not 0 < x < 1:
        raise ValueError(f"x must lie in (0, 1), got {x}")
    branch = "low" if x <= 0.5 else "high"
    value = _c_low(x) if branch == "low" else _c_high(x)
    cases = case_contributions(x)
    if abs(sum(cases) - value) > 1e-12:
        raise ArithmeticError(f"case sum {sum(cases)!r} disagrees with closed form {value!r} at x={x}")
    return CoefficientResult(x, value, branch, cases)


def golden_section_max(f: Callable[[float], float], a: float, b: float,
                       tol: float = 1e-10) -> tuple[float, float]:
    """Maximize a unimodal ``f`` on [a, b]; returns (argmax, max)."""
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    x = (a + b) / 2
    return x, f(x)


def optimize_c(step: float = 1e-4, tol: float = 1e-10) -> tuple[float, float]:
    """Grid scan of c over (0, 1), then golden-section refinement."""
    grid = np.arange(step, 1.0, step)
    values = [coefficient_c(float(x)).value for x in grid]
    i = int(np.argmax(values))
    x0 = float(grid[i])
    lo, hi = max(x0 - step, step / 10), min(x0 + step, 1 - step / 10)
    # stay on one branch so the refined function is a single smooth piece
    if x0 <= 0.5:
        hi = min(hi, 0.5)
    else:
        lo = max(lo, 0.5 + 1e-15)
    return golden_section_max(lambda x: coefficient_c(x).value, lo, hi, tol)


def curve_samples(x_min: float, x_max: float, steps: int) -> list[tuple[float, float, str]]:
    if not 0 < x_min < x_max < 1:
        raise ValueError("need 0 < x_min < x_max < 1")
    if steps < 2:
        raise ValueError("steps must be at least 2")
    out = []
    for x in np.linspace(x_min, x_max, steps):
        res = coefficient_c(float(x))
        out.append((res.x, res.value, res.branch))
    return out
