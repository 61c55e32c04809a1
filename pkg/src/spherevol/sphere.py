"""Geometry of the twice-punctured unit sphere.

Conventions, fixed once and used by every module in the package:

* Points are spherical coordinates ``(alpha, beta)`` with latitude
  ``alpha`` in the open interval ``(-pi/2, pi/2)`` and longitude ``beta``
  in ``[0, 2*pi)``.  The embedding is

      p(alpha, beta) = (cos a cos b, cos a sin b, sin a).

* The global orthonormal tangent frame is

      e1 = (-sin b, cos b, 0)                       (east, along parallels)
      e2 = (sin a cos b, sin a sin b, -cos a)       (south, along meridians)

  so ``e1 x e2 = -p``: the frame is negatively oriented with respect to
  the outward normal.  Both formulas are smooth away from the punctures.

* A unit tangent field is represented by an angle function,

      v = cos(theta) e1 + sin(theta) e2,

  where ``theta(alpha, beta)`` carries an integer winding ``w``:
  ``theta(a, b + 2*pi) = theta(a, b) + 2*pi*w``.

* Directional derivatives of the angle along the frame:

      theta1 = dtheta(e1) = (1/cos a) * dtheta/dbeta
      theta2 = dtheta(e2) = -dtheta/dalpha.

* Pole labels.  The puncture reached as ``alpha -> -pi/2`` (embedded at
  (0, 0, -1)) is labeled ``N``; the one at ``alpha -> +pi/2`` is ``S``.
  With the frame above, a field of winding ``w`` has Poincare index
  ``1 + w`` at ``N`` and ``1 - w`` at ``S``, so the standard spinning
  fields of winding ``k - 1`` carry their supremal index ``k`` at ``N``.

The geodesic curvatures of the integral curves of ``v`` and of its
rotation ``v_perp`` are

    gamma = cos(theta) (tan a + theta1) + sin(theta) theta2
    delta = sin(theta) (tan a + theta1) - cos(theta) theta2

and satisfy ``gamma^2 + delta^2 = (tan a + theta1)^2 + theta2^2``.  The
area of the graph of ``v`` in the unit tangent bundle therefore has the
density ``sqrt(1 + (tan a + theta1)^2 + theta2^2)`` per unit sphere area.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

__all__ = [
    "PoleProximityError",
    "SphericalPoint",
    "Frame",
    "AngleField",
    "frame_at",
    "frame_arrays",
    "field_vector",
    "geodesic_curvatures",
    "volume_integrand",
]

#: Points with |cos(alpha)| below this are treated as polar and rejected.
POLE_COS_LIMIT = 1e-9


class PoleProximityError(ValueError):
    """Raised when an operation is evaluated too close to a puncture."""


def _wrap_longitude(beta: float) -> float:
    b = math.fmod(beta, 2.0 * math.pi)
    return b + 2.0 * math.pi if b < 0.0 else b


@dataclass(frozen=True)
class SphericalPoint:
    """A point of the punctured sphere in latitude/longitude coordinates."""

    alpha: float
    beta: float

    def __post_init__(self) -> None:
        if not (-math.pi / 2 < self.alpha < math.pi / 2):
            raise PoleProximityError(
                f"latitude {self.alpha!r} outside the open interval (-pi/2, pi/2)"
            )
        object.__setattr__(self, "beta", _wrap_longitude(self.beta))

    def embed(self) -> np.ndarray:
        """Unit vector in R^3: (cos a cos b, cos a sin b, sin a)."""
        ca = math.cos(self.alpha)
        return np.array(
            [ca * math.cos(self.beta), ca * math.sin(self.beta), math.sin(self.alpha)]
        )

    @staticmethod
    def from_xyz(x: float, y: float, z: float) -> "SphericalPoint":
        r = math.sqrt(x * x + y * y + z * z)
        if r == 0.0:
            raise ValueError("zero vector has no direction")
        return SphericalPoint(math.asin(z / r), math.atan2(y, x))


@dataclass(frozen=True)
class Frame:
    """The global orthonormal tangent frame evaluated at one point.

    ``e1`` points east along the parallel, ``e2`` south along the
    meridian; ``e1 x e2 = -p``.
    """

    e1: np.ndarray
    e2: np.ndarray


def frame_arrays(alpha, beta):
    """Vectorized frame: returns (e1, e2) with shape ``alpha.shape + (3,)``."""
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    ca, sa = np.cos(alpha), np.sin(alpha)
    cb, sb = np.cos(beta), np.sin(beta)
    e1 = np.stack([-sb, cb, np.zeros_like(sb)], axis=-1)
    e2 = np.stack([sa * cb, sa * sb, -ca], axis=-1)
    return e1, e2


def frame_at(p: SphericalPoint) -> Frame:
    """Evaluate the global frame at ``p``.

    Raises :class:`PoleProximityError` when ``|cos(alpha)| < 1e-9``.
    """
    if abs(math.cos(p.alpha)) < POLE_COS_LIMIT:
        raise PoleProximityError(f"frame undefined this close to a pole: {p}")
    e1, e2 = frame_arrays(p.alpha, p.beta)
    return Frame(e1=e1, e2=e2)


@dataclass(frozen=True)
class AngleField:
    """A unit tangent field represented by its frame angle.

    ``theta`` must accept numpy arrays of latitudes and longitudes and
    broadcast.  ``winding`` is the integer w in
    ``theta(a, b + 2*pi) = theta(a, b) + 2*pi*w``; it is stored rather
    than inferred so that index-constrained searches stay well posed.

    Analytic partial derivatives may be supplied; otherwise central
    finite differences with step ``fd_step`` are used.  The derivative
    accessors :meth:`theta1` and :meth:`theta2` are expressed along the
    frame directions (``theta2`` has the sign of the southward ``e2``).
    """

    theta: Callable[..., np.ndarray]
    winding: int
    dtheta_dalpha: Optional[Callable[..., np.ndarray]] = None
    dtheta_dbeta: Optional[Callable[..., np.ndarray]] = None
    fd_step: float = 1e-5
    description: str = field(default="", compare=False)

    def _d_alpha(self, alpha, beta):
        if self.dtheta_dalpha is not None:
            return np.asarray(self.dtheta_dalpha(alpha, beta), dtype=float)
        h = self.fd_step
        return (self.theta(alpha + h, beta) - self.theta(alpha - h, beta)) / (2.0 * h)

    def _d_beta(self, alpha, beta):
        if self.dtheta_dbeta is not None:
            return np.asarray(self.dtheta_dbeta(alpha, beta), dtype=float)
        h = self.fd_step
        return (self.theta(alpha, beta + h) - self.theta(alpha, beta - h)) / (2.0 * h)

    def theta1(self, alpha, beta):
        """dtheta(e1) = (1/cos a) dtheta/dbeta."""
        alpha = np.asarray(alpha, dtype=float)
        return self._d_beta(alpha, beta) / np.cos(alpha)

    def theta2(self, alpha, beta):
        """dtheta(e2) = -dtheta/dalpha."""
        return -self._d_alpha(alpha, beta)

    def shifted(self, c: float) -> "AngleField":
        """The field with angle theta + c; the volume density is unchanged."""
        base = self.theta
        return replace(
            self,
            theta=lambda a, b, _f=base, _c=c: _f(a, b) + _c,
            description=f"{self.description}+{c:g}" if self.description else "",
        )

    def mirrored(self) -> "AngleField":
        """Pull back under the latitude flip (x, y, z) -> (x, y, -z).

        The flip pushes e1 to e1 and e2 to -e2, so the mirrored angle is
        ``-theta(-a, b)`` and the winding changes sign; the two pole
        indices swap.
        """
        th, da, db = self.theta, self.dtheta_dalpha, self.dtheta_dbeta
        return AngleField(
            theta=lambda a, b: -th(-np.asarray(a, dtype=float), b),
            winding=-self.winding,
            dtheta_dalpha=None if da is None else (lambda a, b: da(-np.asarray(a, dtype=float), b)),
            dtheta_dbeta=None if db is None else (lambda a, b: -db(-np.asarray(a, dtype=float), b)),
            fd_step=self.fd_step,
            description=f"mirror({self.description})" if self.description else "",
        )


def field_vector(f: AngleField, p: SphericalPoint) -> np.ndarray:
    """The unit tangent vector cos(theta) e1 + sin(theta) e2 at ``p``."""
    fr = frame_at(p)
    th = float(np.asarray(f.theta(p.alpha, p.beta)))
    return math.cos(th) * fr.e1 + math.sin(th) * fr.e2


def field_vector_arrays(f: AngleField, alpha, beta) -> np.ndarray:
    """Vectorized :func:`field_vector`; shape ``alpha.shape + (3,)``."""
    e1, e2 = frame_arrays(alpha, beta)
    th = np.asarray(f.theta(alpha, beta), dtype=float)
    return np.cos(th)[..., None] * e1 + np.sin(th)[..., None] * e2


def geodesic_curvatures(f: AngleField, p: SphericalPoint) -> tuple[float, float]:
    """(gamma, delta): geodesic curvatures of the v- and v_perp-curves."""
    if abs(math.cos(p.alpha)) < POLE_COS_LIMIT:
        raise PoleProximityError(f"curvatures undefined this close to a pole: {p}")
    th = float(np.asarray(f.theta(p.alpha, p.beta)))
    t1 = float(np.asarray(f.theta1(p.alpha, p.beta)))
    t2 = float(np.asarray(f.theta2(p.alpha, p.beta)))
    slope = math.tan(p.alpha) + t1
    gamma = math.cos(th) * slope + math.sin(th) * t2
    delta = math.sin(th) * slope - math.cos(th) * t2
    return gamma, delta


def volume_integrand(f: AngleField, p: SphericalPoint) -> float:
    """Graph-area density sqrt(1 + (tan a + theta1)^2 + theta2^2) >= 1."""
    if abs(math.cos(p.alpha)) < POLE_COS_LIMIT:
        raise PoleProximityError(f"integrand undefined this close to a pole: {p}")
    t1 = float(np.asarray(f.theta1(p.alpha, p.beta)))
    t2 = float(np.asarray(f.theta2(p.alpha, p.beta)))
    slope = math.tan(p.alpha) + t1
    return math.sqrt(1.0 + slope * slope + t2 * t2)


def volume_integrand_arrays(f: AngleField, alpha, beta) -> np.ndarray:
    """Vectorized :func:`volume_integrand` on broadcastable arrays."""
    alpha = np.asarray(alpha, dtype=float)
    slope = np.tan(alpha) + f.theta1(alpha, beta)
    t2 = f.theta2(alpha, beta)
    return np.sqrt(1.0 + slope * slope + t2 * t2)
