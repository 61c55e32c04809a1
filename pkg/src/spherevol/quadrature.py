"""Improper-integral evaluation of the graph-area (volume) functional.

The functional is an integral over the punctured sphere that is improper
at both poles.  It is evaluated on the truncated band ``|alpha| <=
pi/2 - eps`` with composite Gauss-Legendre panels in latitude and the
periodic trapezoid rule in longitude, for every cutoff in a decreasing
sequence, and then extrapolated to ``eps -> 0``.

For integrands whose density extends continuously to the poles the
truncation deficit expands in odd powers of the cutoff,

    V(eps) = V0 - A*eps - B*eps^3 - ...,

so the extrapolation fits the basis {1, eps, eps^3, eps^5, ...}.  The
reported error estimate is the difference between the full extrapolant
and the one recomputed without the coarsest cutoff; it bounds the
distance between the last two extrapolants, which in practice bounds the
truncation error by a wide margin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss

from .sphere import AngleField

__all__ = [
    "QuadratureConfig",
    "VolumeResult",
    "NotConvergedError",
    "volume",
    "volume_lower_floor",
    "band_integral",
    "latitude_integral",
    "spherical_integral_extrapolated",
]


class NotConvergedError(RuntimeError):
    """Cutoff extrapolation did not reach the requested relative error."""

    def __init__(self, message: str, result: "VolumeResult"):
        super().__init__(message)
        self.result = result


@dataclass(frozen=True)
class QuadratureConfig:
    """Controls for the truncated-band quadrature and its extrapolation.

    ``n_alpha`` Gauss-Legendre nodes (grouped into panels of
    ``panel_size``) span each truncated latitude range; ``n_beta``
    equispaced longitudes feed the periodic trapezoid rule.  The band is
    evaluated once per entry of ``cutoff_sequence`` (strictly
    decreasing, ending at ``pole_cutoff``).
    """

    n_alpha: int = 192
    n_beta: int = 256
    pole_cutoff: float = 2.5e-3
    cutoff_sequence: tuple[float, ...] = (1e-2, 5e-3, 2.5e-3)
    rel_tol: float = 1e-5
    panel_size: int = 16

    def __post_init__(self) -> None:
        if self.n_alpha < 2 or self.n_beta < 4:
            raise ValueError("grid sizes too small")
        if not (0.0 < self.pole_cutoff < math.pi / 4):
            raise ValueError("pole_cutoff must lie in (0, pi/4)")
        seq = tuple(float(e) for e in self.cutoff_sequence)
        if any(not (0.0 < e < math.pi / 4) for e in seq):
            raise ValueError("cutoffs must lie in (0, pi/4)")
        if any(a <= b for a, b in zip(seq, seq[1:])):
            raise ValueError("cutoff_sequence must be strictly decreasing")
        if abs(seq[-1] - self.pole_cutoff) > 1e-15:
            raise ValueError("pole_cutoff must equal the last cutoff in the sequence")
        if self.rel_tol <= 0.0:
            raise ValueError("rel_tol must be positive")
        object.__setattr__(self, "cutoff_sequence", seq)

    @staticmethod
    def with_cutoffs(eps: float, n_alpha: int = 192, n_beta: int = 256,
                     rel_tol: float = 1e-5) -> "QuadratureConfig":
        """A config whose cutoff sequence is (4*eps, 2*eps, eps)."""
        return QuadratureConfig(
            n_alpha=n_alpha,
            n_beta=n_beta,
            pole_cutoff=eps,
            cutoff_sequence=(4 * eps, 2 * eps, eps),
            rel_tol=rel_tol,
        )


@dataclass(frozen=True)
class VolumeResult:
    """Extrapolated value of the volume functional with an error bound."""

    value: float
    error_estimate: float
    converged: bool
    per_cutoff: tuple[tuple[float, float], ...]


def volume_lower_floor() -> float:
    """4*pi: the unconditional floor (density >= 1 over a 4*pi area)."""
    return 4.0 * math.pi


def _gl_nodes(lo: float, hi: float, n_nodes: int, panel: int):
    npan = max(1, -(-n_nodes // panel))
    xs, ws = leggauss(panel)
    edges = np.linspace(lo, hi, npan + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (half[:, None] * xs[None, :] + mid[:, None]).ravel()
    weights = (half[:, None] * ws[None, :]).ravel()
    return nodes, weights


def band_integral(density: Callable[[np.ndarray, np.ndarray], np.ndarray],
                  eps: float, cfg: QuadratureConfig) -> float:
    """Integral of density(a, b) * cos(a) over |a| <= pi/2 - eps, b in [0, 2pi).

    Panels are summed in a fixed order (numpy pairwise reduction), so the
    value is reproducible run to run.
    """
    al, wa = _gl_nodes(-math.pi / 2 + eps, math.pi / 2 - eps, cfg.n_alpha, cfg.panel_size)
    bs = np.arange(cfg.n_beta) * (2.0 * math.pi / cfg.n_beta)
    A, B = np.meshgrid(al, bs, indexing="ij")
    vals = np.asarray(density(A, B), dtype=float) * np.cos(A)
    row = vals.sum(axis=1) * (2.0 * math.pi / cfg.n_beta)
    return float(np.sum(row * wa))


def latitude_integral(density: Callable[[np.ndarray], np.ndarray],
                      eps: float, cfg: QuadratureConfig) -> float:
    """Integral of density(a) over |a| <= pi/2 - eps (no area weight)."""
    al, wa = _gl_nodes(-math.pi / 2 + eps, math.pi / 2 - eps, cfg.n_alpha, cfg.panel_size)
    return float(np.sum(np.asarray(density(al), dtype=float) * wa))


def _odd_power_extrapolate(eps: Sequence[float], vals: Sequence[float]):
    """Fit vals ~ c0 + c1*eps + c2*eps^3 + ... and return (c0, c0_without_coarsest)."""
    eps = np.asarray(eps, dtype=float)
    vals = np.asarray(vals, dtype=float)
    powers = [0, 1, 3, 5, 7][: len(eps)]
    scale = eps.max()

    def fit(e, v):
        M = np.column_stack([(e / scale) ** p for p in powers[: len(e)]])
        coef = np.linalg.solve(M, v)
        return float(coef[0])

    full = fit(eps, vals)
    if len(eps) >= 2:
        trimmed = fit(eps[1:], vals[1:])
    else:
        trimmed = math.inf
    return full, trimmed


def spherical_integral_extrapolated(
    density: Callable[[np.ndarray, np.ndarray], np.ndarray],
    cfg: QuadratureConfig,
) -> VolumeResult:
    """Cutoff-extrapolated integral of density * (area form) over the sphere."""
    per = []
    for eps in cfg.cutoff_sequence:
        per.append((eps, band_integral(density, eps, cfg)))
    vals = [v for _, v in per]
    value, trimmed = _odd_power_extrapolate([e for e, _ in per], vals)
    err = abs(value - trimmed) if math.isfinite(trimmed) else math.inf
    converged = err <= cfg.rel_tol * max(abs(value), 1.0)
    return VolumeResult(
        value=value,
        error_estimate=err,
        converged=converged,
        per_cutoff=tuple(per),
    )


def volume(f: AngleField, cfg: QuadratureConfig | None = None) -> VolumeResult:
    """Volume of the unit field: extrapolated integral of the graph density.

    Raises :class:`NotConvergedError` when the extrapolants still differ
    by more than ``rel_tol * value`` after the whole cutoff sequence (for
    instance when the volume integral diverges).
    """
    cfg = cfg or QuadratureConfig()

    def density(a, b):
        slope = np.tan(a) + f.theta1(a, b)
        t2 = f.theta2(a, b)
        return np.sqrt(1.0 + slope * slope + t2 * t2)

    result = spherical_integral_extrapolated(density, cfg)
    if not result.converged:
        raise NotConvergedError(
            f"volume extrapolation error {result.error_estimate:.3e} exceeds "
            f"rel_tol*value = {cfg.rel_tol * abs(result.value):.3e}",
            result,
        )
    return result
