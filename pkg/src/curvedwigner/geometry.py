"""Hyperboloid geometry: ambient Minkowski vectors, the plane-wave (Shapiro)
basis, geodesic-midpoint machinery, isometry actions, and the 1-D transform
between position and momentum profiles.

The configuration space is the upper sheet x0^2 - |xs|^2 = R^2, x0 > 0 of a
two-sheeted hyperboloid in (D+1)-dimensional Minkowski space, 1 <= D <= 3.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, OffShellError
from .quadrature import QuadratureSpec, adaptive_gauss_kronrod
from .sampling import FieldSampler

__all__ = [
    "AmbientVector",
    "HyperbolicAngleCoord",
    "MomentumLabel",
    "BoostParams",
    "ambient_from_angle",
    "hyperbolic_angle",
    "shapiro_phi",
    "norm_factor",
    "geodesic_pair",
    "binding_delta_midpoint",
    "boost_point",
    "boost_direction",
    "shapiro_covariance_check",
    "bargmann_angle",
    "shapiro_forward_1d",
    "shapiro_inverse_1d",
    "fold_momentum_1d",
    "fold_angle_1d",
]

SHELL_RTOL = 1e-12
ORTHO_RTOL = 1e-10

_SUPPORTED_D = (1, 2, 3)


def _unit(vec, what: str) -> np.ndarray:
    v = np.asarray(vec, dtype=float)
    if v.ndim != 1 or len(v) not in _SUPPORTED_D:
        raise ValueError(f"{what} must be a 1-, 2- or 3-component vector")
    if abs(np.dot(v, v) - 1.0) > 1e-14 * 2.0 + 1e-14:
        raise ValueError(f"{what} must be a unit vector (|v|^2 off by more than 1e-14)")
    return v


@dataclass(frozen=True)
class AmbientVector:
    """A (D+1)-component Minkowski vector (x0, xs)."""

    x0: float
    xs: np.ndarray

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        if xs.ndim != 1 or len(xs) not in _SUPPORTED_D:
            raise ValueError("xs must have 1, 2 or 3 components")
        if not (math.isfinite(self.x0) and np.isfinite(xs).all()):
            raise ValueError("ambient vector components must be finite")
        object.__setattr__(self, "xs", xs)

    @property
    def dim(self) -> int:
        return len(self.xs)

    def minkowski_dot(self, other: "AmbientVector") -> float:
        return self.x0 * other.x0 - float(np.dot(self.xs, other.xs))

    def shell_kind(self, radius: float) -> str:
        """Classify against the shells of the given radius: "timelike" for
        x.x = +R^2 with x0 > 0, "spacelike" for x.x = -R^2, else "free"."""
        norm2 = self.minkowski_dot(self)
        tol = SHELL_RTOL * radius * radius
        if abs(norm2 - radius * radius) <= tol and self.x0 > 0:
            return "timelike"
        if abs(norm2 + radius * radius) <= tol:
            return "spacelike"
        return "free"

    def project_timelike(self, radius: float) -> "AmbientVector":
        """Rescale onto the upper timelike shell (re-normalization helper for
        slightly off-shell intermediates)."""
        norm2 = self.minkowski_dot(self)
        if norm2 <= 0 or self.x0 <= 0:
            raise OffShellError("cannot project a non-timelike vector onto the upper sheet")
        scale = radius / math.sqrt(norm2)
        return AmbientVector(self.x0 * scale, self.xs * scale)


def _require_shell(x: AmbientVector, radius: float, kind: str, what: str,
                   rtol: float = SHELL_RTOL) -> None:
    norm2 = x.minkowski_dot(x)
    target = radius * radius if kind == "timelike" else -radius * radius
    if abs(norm2 - target) > rtol * radius * radius or (kind == "timelike" and x.x0 <= 0):
        raise OffShellError(f"{what} is not {kind}-on-shell for R={radius} "
                            f"(Minkowski norm^2 = {norm2!r})")


@dataclass(frozen=True)
class HyperbolicAngleCoord:
    """Polar coordinates on the upper sheet: x0 = R cosh(chi),
    xs = R xi sinh(chi)."""

    chi: float
    xi: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "xi", _unit(self.xi, "xi"))


@dataclass(frozen=True)
class MomentumLabel:
    """Wavenumber magnitude p >= 0 and a unit direction on S^{D-1}."""

    p: float
    n: np.ndarray

    def __post_init__(self):
        if self.p < 0:
            raise ValueError("momentum magnitude must be non-negative")
        object.__setattr__(self, "n", _unit(self.n, "n"))

    @property
    def dim(self) -> int:
        return len(self.n)


@dataclass(frozen=True)
class BoostParams:
    """Hyperbolic translation: direction m on S^{D-1} and rapidity zeta."""

    m: np.ndarray
    zeta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "m", _unit(self.m, "m"))


def ambient_from_angle(coord: HyperbolicAngleCoord, radius: float) -> AmbientVector:
    return AmbientVector(radius * math.cosh(coord.chi),
                         radius * math.sinh(coord.chi) * coord.xi)


def hyperbolic_angle(x: AmbientVector, radius: float) -> HyperbolicAngleCoord:
    _require_shell(x, radius, "timelike", "x")
    r = float(np.linalg.norm(x.xs))
    chi = math.asinh(r / radius)
    if r == 0.0:
        xi = np.zeros(x.dim)
        xi[0] = 1.0
    else:
        xi = x.xs / r
    return HyperbolicAngleCoord(chi, xi)


def shapiro_phi(D: int, mom: MomentumLabel, x: AmbientVector, radius: float) -> complex:
    """Plane-wave basis function ((x0 - n.xs)/R)^(-(D-1)/2 - i p R) on the
    upper sheet."""
    if D not in _SUPPORTED_D:
        raise ValueError("D must be 1, 2 or 3")
    if mom.dim != D or x.dim != D:
        raise ValueError("dimension mismatch between D, momentum and point")
    _require_shell(x, radius, "timelike", "x")
    base = (x.x0 - float(np.dot(mom.n, x.xs))) / radius
    if base <= 0:
        raise OffShellError("x0 - n.xs must be positive on the upper sheet")
    exponent = complex(-(D - 1) / 2.0, -mom.p * radius)
    return cmath.exp(exponent * math.log(base))


def norm_factor(D: int, p: float, radius: float) -> float:
    """Plancherel weight |Gamma(i p R) / Gamma((D-1)/2 + i p R)|^2 (pR)^(D-1)
    of the plane-wave basis.

    For odd D the gamma recurrence cancels the ratio exactly:
    N = 1 for D = 1 and, via |Gamma(1+iq)|^2 = q^2 |Gamma(iq)|^2, for D = 3.
    For D = 2 the weight is computed from the gammas and equals coth(pi p R).
    """
    from .specfun import gamma_abs_squared

    if D not in _SUPPORTED_D:
        raise ValueError("D must be 1, 2 or 3")
    if p < 0:
        raise DomainError("momentum magnitude must be non-negative")
    if D in (1, 3):
        return 1.0
    if p == 0:
        raise DomainError("norm_factor diverges at p = 0 for D = 2")
    q = p * radius
    return gamma_abs_squared(1j * q) / gamma_abs_squared(0.5 + 1j * q) * q


def geodesic_pair(x: AmbientVector, y: AmbientVector, tau: float):
    """Split the geodesic through x with (spacelike, Minkowski-orthogonal)
    direction y into endpoints at geodesic distance R*tau:

        x' = x cosh(tau/2) - y sinh(tau/2),
        x'' = x cosh(tau/2) + y sinh(tau/2).

    x is the geodesic midpoint of the returned pair.
    """
    norm2 = x.minkowski_dot(x)
    if norm2 <= 0:
        raise OffShellError("x must be timelike")
    radius = math.sqrt(norm2)
    _require_shell(x, radius, "timelike", "x")
    _require_shell(y, radius, "spacelike", "y")
    if abs(x.minkowski_dot(y)) > ORTHO_RTOL * radius * radius:
        raise OffShellError("x and y must be Minkowski-orthogonal")
    ch, sh = math.cosh(tau / 2.0), math.sinh(tau / 2.0)
    xp = AmbientVector(x.x0 * ch - y.x0 * sh, x.xs * ch - y.xs * sh)
    xpp = AmbientVector(x.x0 * ch + y.x0 * sh, x.xs * ch + y.xs * sh)
    return xp, xpp


def binding_delta_midpoint(xp: AmbientVector, xpp: AmbientVector, radius: float) -> AmbientVector:
    """Geodesic midpoint x = (x' + x'') / (2 cosh(tau/2)) of two points on
    the same upper sheet, where R^2 cosh(tau) = x'.x''.  Round-trips with
    geodesic_pair."""
    _require_shell(xp, radius, "timelike", "x'")
    _require_shell(xpp, radius, "timelike", "x''")
    cosh_tau = xp.minkowski_dot(xpp) / (radius * radius)
    if cosh_tau < 1.0 - 1e-12:
        raise OffShellError("mixed Minkowski product below R^2; points not on one sheet")
    cosh_half = math.sqrt((max(cosh_tau, 1.0) + 1.0) / 2.0)
    mid = AmbientVector((xp.x0 + xpp.x0) / (2.0 * cosh_half),
                        (xp.xs + xpp.xs) / (2.0 * cosh_half))
    _require_shell(mid, radius, "timelike", "midpoint", rtol=1e-9)
    return mid


def boost_point(b: BoostParams, x: AmbientVector) -> AmbientVector:
    """Apply the hyperbolic translation along m with rapidity zeta:

        x0   -> x0 cosh(zeta) - (m.xs) sinh(zeta)
        x_|| -> x_|| cosh(zeta) - x0 m sinh(zeta)
        x_T  -> x_T
    """
    ch, sh = math.cosh(b.zeta), math.sinh(b.zeta)
    par = float(np.dot(b.m, x.xs))
    perp = x.xs - par * b.m
    x0 = x.x0 * ch - par * sh
    xs = perp + (par * ch - x.x0 * sh) * b.m
    return AmbientVector(x0, xs)


def boost_direction(b: BoostParams, n) -> tuple[np.ndarray, float]:
    """Transform a momentum direction under a boost; returns (n', mu) with
    multiplier mu = cosh(zeta) + m.n sinh(zeta) > 0."""
    n = _unit(n, "n")
    ch, sh = math.cosh(b.zeta), math.sinh(b.zeta)
    dot = float(np.dot(b.m, n))
    mu = ch + dot * sh
    perp = n - dot * b.m
    n_new = perp / mu + ((dot * ch + sh) / mu) * b.m
    return n_new, mu


def shapiro_covariance_check(D: int, mom: MomentumLabel, x: AmbientVector,
                             b: BoostParams) -> float:
    """Pointwise deviation of the basis covariance identity

        Phi_{p n}(B x) = mu^{-(D-1)/2 - i p R} Phi_{p n'}(x),

    with the radius read off the on-shell point x.
    """
    norm2 = x.minkowski_dot(x)
    if norm2 <= 0 or x.x0 <= 0:
        raise OffShellError("x must lie on an upper timelike shell")
    radius = math.sqrt(norm2)
    lhs = shapiro_phi(D, mom, boost_point(b, x), radius)
    n_new, mu = boost_direction(b, mom.n)
    exponent = complex(-(D - 1) / 2.0, -mom.p * radius)
    rhs = cmath.exp(exponent * math.log(mu)) * shapiro_phi(D, MomentumLabel(mom.p, n_new), x, radius)
    return abs(lhs - rhs)


def bargmann_angle(zeta: float, phi: float) -> float:
    """Deformation tan(phi/2) -> exp(-zeta) tan(phi/2) of an angle in
    (-pi, pi] under a boost of rapidity zeta."""
    if not -math.pi < phi <= math.pi:
        raise ValueError("phi must lie in (-pi, pi]")
    if phi == math.pi:
        return math.pi
    return 2.0 * math.atan(math.exp(-zeta) * math.tan(phi / 2.0))


def fold_momentum_1d(mom: MomentumLabel) -> float:
    """Fold (p >= 0, n = +-1) into a signed 1-D wavenumber."""
    if mom.dim != 1:
        raise ValueError("fold_momentum_1d requires D = 1")
    return float(mom.n[0]) * mom.p


def fold_angle_1d(x: AmbientVector, radius: float) -> float:
    """Fold a point of the 1-D hyperbola into a signed hyperbolic angle."""
    if x.dim != 1:
        raise ValueError("fold_angle_1d requires D = 1")
    _require_shell(x, radius, "timelike", "x")
    return math.asinh(x.xs[0] / radius)


def _transform_truncation(f: FieldSampler, prefactor: float, spec: QuadratureSpec) -> float:
    tail = 0.1 * spec.abs_tol / max(prefactor, 1e-300)
    return max(4.0, f.envelope.tail_radius(tail))


def shapiro_forward_1d(f: FieldSampler, p: float, radius: float,
                       spec: QuadratureSpec | None = None) -> complex:
    """Momentum profile of a decaying 1-D field:

        ft(p) = sqrt(R / 2 pi) * integral dchi exp(-i p R chi) f(chi).

    The signed wavenumber p may be negative.  Together with
    shapiro_inverse_1d this forms a unitary pair on (dchi, dp).
    """
    spec = spec or QuadratureSpec()
    pref = math.sqrt(radius / (2.0 * math.pi))
    T = _transform_truncation(f, pref, spec)
    q = p * radius

    def integrand(chi):
        return f(chi) * np.exp(-1j * q * chi)

    n0 = max(8, int(abs(q) * T / 3.0) + 1)
    val, _ = adaptive_gauss_kronrod(integrand, -T, T, spec, initial_panels=n0)
    return pref * val


def shapiro_inverse_1d(ftilde: FieldSampler, chi: float, radius: float,
                       spec: QuadratureSpec | None = None) -> complex:
    """Inverse of shapiro_forward_1d:

        f(chi) = sqrt(R / 2 pi) * integral dp exp(+i p R chi) ft(p).
    """
    spec = spec or QuadratureSpec()
    pref = math.sqrt(radius / (2.0 * math.pi))
    T = _transform_truncation(ftilde, pref, spec)

    def integrand(p):
        return ftilde(p) * np.exp(1j * p * radius * chi)

    n0 = max(8, int(abs(radius * chi) * T / 3.0) + 1)
    val, _ = adaptive_gauss_kronrod(integrand, -T, T, spec, initial_panels=n0)
    return pref * val
