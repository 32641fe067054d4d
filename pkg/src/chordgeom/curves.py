"""Strictly convex plane curves as graphs with exact derivative oracles.

Every curve is a graph y = f(x) over an open interval, with closed-form
f, f' and f'' and f'' > 0 throughout.  A probe at abscissa x_P yields a
local orthonormal frame (unit tangent T, unit normal N toward the convex
side); in that frame the probe point is the origin and the tangent line
is the horizontal axis, so the curve opens upward like a parabola near
the origin.
"""

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ConvexityError, DomainError

__all__ = [
    "CATALOG_KINDS",
    "CurveSpec",
    "ProbeFrame",
    "make_curve",
    "curvature_at",
    "probe_frame",
    "to_frame",
    "from_frame",
]

CATALOG_KINDS = ("parabola", "circle", "ellipse", "catenary", "exp", "poly")

_INF = math.inf


@dataclass(frozen=True, eq=False)
class CurveSpec:
    """A strictly convex graph curve with exact scalar-function oracles.

    ``f``, ``fp`` and ``fpp`` accept floats or numpy arrays.  ``domain``
    is an open interval; every downstream operation validates against it.
    """

    kind: str
    params: tuple[float, ...]
    domain: tuple[float, float]
    f: Callable
    fp: Callable
    fpp: Callable
    label: str

    def contains(self, x: float) -> bool:
        lo, hi = self.domain
        return lo < x < hi

    def require_inside(self, x: float) -> None:
        if not self.contains(x):
            raise DomainError(
                f"x={x!r} is outside the open domain ({self.domain[0]!r}, "
                f"{self.domain[1]!r}) of {self.label}"
            )


@dataclass(frozen=True, eq=False)
class ProbeFrame:
    """Probe point with unit tangent/normal and the rotation angle.

    T points along increasing x, N toward the convex side, and
    det[T N] = +1.  ``theta`` satisfies tan(theta) = f'(x_p).
    """

    x_p: float
    P: np.ndarray
    T: np.ndarray
    N: np.ndarray
    theta: float


def _poly_fpp_has_real_root(coeffs: Sequence[float], domain: tuple[float, float]) -> bool:
    """True if the second derivative of the polynomial vanishes inside domain."""
    dd = np.polynomial.polynomial.polyder(np.asarray(coeffs, float), 2)
    if dd.size == 0 or not np.any(dd):
        return True  # f'' identically zero: never strictly convex
    if dd.size == 1:
        return False  # constant, nonzero
    roots = np.polynomial.polynomial.polyroots(dd)
    lo, hi = domain
    for r in roots:
        if abs(r.imag) <= 1e-9 * (1.0 + abs(r.real)) and lo < r.real < hi:
            return True
    return False


def _convexity_samples(domain: tuple[float, float]) -> np.ndarray:
    lo, hi = domain
    lo = max(lo, -4.0) if math.isinf(lo) else lo
    hi = min(hi, 4.0) if math.isinf(hi) else hi
    span = hi - lo
    return np.linspace(lo + 1e-9 * span, hi - 1e-9 * span, 33)


def make_curve(kind: str, params: Sequence[float] = (), domain: tuple[float, float] | None = None) -> CurveSpec:
    """Build a catalog curve, rejecting nonconvex parameterizations.

    Catalog: ``parabola`` (a*x^2, a > 0), ``circle`` (lower arc of radius
    r through the origin), ``ellipse`` (lower arc, semi-axes a, b),
    ``catenary`` (cosh(x) - 1), ``exp`` (e^x - 1 - x), ``poly``
    (coefficients in increasing degree, f'' > 0 required on the domain).
    An explicit ``domain`` restricts the default one.
    """
    params = tuple(float(p) for p in params)

    if kind == "parabola":
        if len(params) != 1:
            raise ValueError("parabola takes exactly one parameter a")
        (a,) = params
        if a <= 0:
            raise ConvexityError("parabola coefficient a must be positive")
        f = lambda x: a * np.square(x)
        fp = lambda x: 2.0 * a * np.asarray(x, float)
        fpp = lambda x: np.full_like(np.asarray(x, float), 2.0 * a)
        base = (-_INF, _INF)
        label = f"parabola:a={a!r}"
    elif kind == "circle":
        if len(params) != 1:
            raise ValueError("circle takes exactly one parameter r")
        (r,) = params
        if r <= 0:
            raise ConvexityError("circle radius r must be positive")
        f = lambda x: r - np.sqrt(r * r - np.square(x))
        fp = lambda x: np.asarray(x, float) / np.sqrt(r * r - np.square(x))
        fpp = lambda x: r * r / np.power(r * r - np.square(x), 1.5)
        base = (-r, r)
        label = f"circle:r={r!r}"
    elif kind == "ellipse":
        if len(params) != 2:
            raise ValueError("ellipse takes exactly two parameters a, b")
        a, b = params
        if a <= 0 or b <= 0:
            raise ConvexityError("ellipse semi-axes must be positive")
        f = lambda x: b * (1.0 - np.sqrt(1.0 - np.square(x) / (a * a)))
        fp = lambda x: b * np.asarray(x, float) / (a * a * np.sqrt(1.0 - np.square(x) / (a * a)))
        fpp = lambda x: b / (a * a * np.power(1.0 - np.square(x) / (a * a), 1.5))
        base = (-a, a)
        label = f"ellipse:a={a!r},b={b!r}"
    elif kind == "catenary":
        if params:
            raise ValueError("catenary takes no parameters")
        f = lambda x: np.cosh(x) - 1.0
        fp = np.sinh
        fpp = np.cosh
        base = (-_INF, _INF)
        label = "catenary"
    elif kind == "exp":
        if params:
            raise ValueError("exp takes no parameters")
        f = lambda x: np.expm1(x) - np.asarray(x, float)
        fp = np.expm1
        fpp = np.exp
        base = (-_INF, _INF)
        label = "exp"
    elif kind == "poly":
        if len(params) < 3:
            raise ConvexityError("poly needs degree >= 2 for strict convexity")
        coeffs = np.asarray(params, float)
        f = lambda x: np.polynomial.polynomial.polyval(np.asarray(x, float), coeffs)
        dc = np.polynomial.polynomial.polyder(coeffs)
        ddc = np.polynomial.polynomial.polyder(coeffs, 2)
        fp = lambda x: np.polynomial.polynomial.polyval(np.asarray(x, float), dc)
        fpp = lambda x: np.polynomial.polynomial.polyval(np.asarray(x, float), ddc)
        base = (-_INF, _INF)
        label = "poly:" + ",".join(repr(c) for c in params)
    else:
        raise ValueError(f"unknown curve kind {kind!r}; expected one of {CATALOG_KINDS}")

    if domain is not None:
        lo, hi = float(domain[0]), float(domain[1])
        lo, hi = max(lo, base[0]), min(hi, base[1])
        if not lo < hi:
            raise ValueError(f"empty domain for {kind}: ({lo!r}, {hi!r})")
        dom = (lo, hi)
    else:
        dom = base

    if kind == "poly" and _poly_fpp_has_real_root(params, dom):
        raise ConvexityError(f"poly coefficients {params} give f'' <= 0 somewhere on the domain")
    samples = _convexity_samples(dom)
    vals = np.asarray(fpp(samples), float)
    if not np.all(vals > 0):
        raise ConvexityError(f"{kind} with params {params} is not strictly convex on the domain")

    return CurveSpec(kind=kind, params=params, domain=dom, f=f, fp=fp, fpp=fpp, label=label)


def curvature_at(curve: CurveSpec, x: float) -> float:
    """Curvature of the graph at abscissa x, positive toward the convex side."""
    curve.require_inside(x)
    d1 = float(curve.fp(x))
    d2 = float(curve.fpp(x))
    return d2 / (1.0 + d1 * d1) ** 1.5


def probe_frame(curve: CurveSpec, x_p: float) -> ProbeFrame:
    """Local frame at the probe point: tangent along increasing x, normal upward-convex."""
    curve.require_inside(x_p)
    x_p = float(x_p)
    slope = float(curve.fp(x_p))
    c = math.hypot(1.0, slope)
    T = np.array([1.0, slope]) / c
    N = np.array([-slope, 1.0]) / c
    P = np.array([x_p, float(curve.f(x_p))])
    return ProbeFrame(x_p=x_p, P=P, T=T, N=N, theta=math.atan(slope))


def to_frame(frame: ProbeFrame, point) -> np.ndarray:
    """World point -> frame coordinates (u along T, v along N)."""
    d = np.asarray(point, float) - frame.P
    return np.array([d @ frame.T, d @ frame.N])


def from_frame(frame: ProbeFrame, point) -> np.ndarray:
    """Frame coordinates -> world point (inverse of to_frame)."""
    u, v = float(point[0]), float(point[1])
    return frame.P + u * frame.T + v * frame.N
