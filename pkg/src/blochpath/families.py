"""Hamiltonian families with known efficiency behavior.

Two constructions live here.  The stationary one-parameter family rotates an
initial Bloch vector ``a`` into a target ``b`` about the axis ``n(alpha)``;
only ``alpha = pi/2`` follows the great circle.  The Uzdin construction
turns a prescribed normalized path ``|m(t)>`` into the traceless driving
Hamiltonian ``H = i|dm><m| - i|m><dm|``, plus its sub-optimal variants that
add a phase term ``phidot |m><m|`` (kept or made traceless).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from .core import FieldSpec, bloch_from_state, clamped_arccos, pauli_decompose
from .errors import (
    ConfigError,
    DegenerateEndpointsError,
    NormalizationError,
    NumericalError,
    PreconditionError,
    RangeError,
)

__all__ = [
    "SuboptimalStationary",
    "UzdinFamily",
    "rodrigues_rotate",
    "endpoint_angle",
    "suboptimal_axis",
    "rotation_angle",
    "travel_time",
    "arc_length_alpha",
    "delta_e_alpha",
    "orbit_radius",
    "suboptimal_hamiltonian",
    "uzdin_optimal",
    "uzdin_suboptimal",
]

#: endpoint separations closer than this to 0 or pi are rejected
TOL_DEG = 1e-6


def rodrigues_rotate(v, axis, angle: float) -> np.ndarray:
    """Rotate ``v`` about the unit ``axis`` by ``angle`` (right-hand rule)."""
    v = np.asarray(v, dtype=float)
    k = np.asarray(axis, dtype=float)
    c, s = np.cos(angle), np.sin(angle)
    return v * c + np.cross(k, v) * s + k * (k @ v) * (1.0 - c)


def endpoint_angle(a, b) -> float:
    """Angular separation ``arccos(a.b)``, rejected near 0 and pi.

    The family's axis construction divides by both ``cos(theta/2)`` and
    ``sin(theta)``, so (anti)parallel endpoints are out of domain.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    theta = clamped_arccos(float(a @ b))
    if theta <= TOL_DEG or theta >= np.pi - TOL_DEG:
        raise DegenerateEndpointsError(
            f"endpoint separation {theta!r} too close to 0 or pi"
        )
    return theta


def suboptimal_axis(alpha: float, a, b) -> np.ndarray:
    """Rotation axis ``n(alpha)`` carrying ``a`` to ``b``.

    A combination of the normalized bisector ``(a+b)/(2 cos(theta/2))`` and
    the normal ``(a x b)/sin(theta)`` weighted by ``cos(alpha)`` and
    ``sin(alpha)``; unit norm for every ``alpha``.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    theta = endpoint_angle(a, b)
    bisector = (a + b) / (2.0 * np.cos(0.5 * theta))
    normal = np.cross(a, b) / np.sin(theta)
    n = np.cos(alpha) * bisector + np.sin(alpha) * normal
    norm = np.linalg.norm(n)
    if abs(norm - 1.0) > 1e-12:
        raise NumericalError(f"axis norm {norm!r} deviates from 1")
    return n / norm


def orbit_radius(alpha: float, theta_ab: float) -> float:
    """Radius ``sqrt(1 - cos^2(alpha) cos^2(theta/2))`` of the circle traced
    by the Bloch vector while precessing about ``n(alpha)``."""
    c = np.cos(alpha) * np.cos(0.5 * theta_ab)
    return float(np.sqrt(1.0 - c * c))


def rotation_angle(alpha: float, theta_ab: float) -> float:
    """Rotation angle ``phi(alpha)`` about ``n(alpha)`` that lands on ``b``.

    ``phi = 2 arccos(sin(alpha) cos(theta/2) / orbit_radius)``; decreases
    from pi at ``alpha = 0`` to ``theta_ab`` at ``alpha = pi/2``.
    """
    radius = orbit_radius(alpha, theta_ab)
    if radius < 1e-12:
        raise DegenerateEndpointsError(
            "orbit radius vanishes; alpha in {0, pi} with theta_ab = 0"
        )
    return 2.0 * clamped_arccos(np.sin(alpha) * np.cos(0.5 * theta_ab) / radius)


def travel_time(alpha: float, theta_ab: float, E: float) -> float:
    """Time ``phi/(2E)`` to reach the target; minimal at ``alpha = pi/2``."""
    if E <= 0.0:
        raise RangeError(f"energy scale must be positive, got {E!r}")
    return rotation_angle(alpha, theta_ab) / (2.0 * E)


def arc_length_alpha(alpha: float, theta_ab: float) -> float:
    """Fubini-Study length ``orbit_radius * phi`` of the traced arc.

    Equals ``theta_ab`` exactly at ``alpha = pi/2`` (the geodesic) and grows
    on both sides; tends to pi as ``theta_ab -> pi`` for every ``alpha``.
    """
    return orbit_radius(alpha, theta_ab) * rotation_angle(alpha, theta_ab)


def delta_e_alpha(alpha: float, theta_ab: float, E: float) -> float:
    """Energy dispersion ``E * orbit_radius`` along the stationary orbit.

    Constant in time, so the arc length is also ``2 delta_e * travel_time``.
    """
    if E <= 0.0:
        raise RangeError(f"energy scale must be positive, got {E!r}")
    return E * orbit_radius(alpha, theta_ab)


@dataclass(frozen=True)
class SuboptimalStationary:
    """Stationary drive rotating ``a_hat`` into ``b_hat`` about ``n(alpha)``.

    Derived geometry is validated on construction: the axis is unit and
    equidistant from both endpoints, and a Rodrigues rotation by ``phi``
    actually lands on ``b_hat``.
    """

    alpha: float
    a_hat: np.ndarray
    b_hat: np.ndarray
    E: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "a_hat", np.asarray(self.a_hat, dtype=float))
        object.__setattr__(self, "b_hat", np.asarray(self.b_hat, dtype=float))
        if not 0.0 < self.alpha < np.pi:
            raise RangeError(f"alpha must lie in (0, pi), got {self.alpha!r}")
        if self.E <= 0.0:
            raise RangeError(f"energy scale must be positive, got {self.E!r}")
        for name in ("a_hat", "b_hat"):
            v = getattr(self, name)
            if abs(v @ v - 1.0) > 1e-12:
                raise NormalizationError(f"{name} must be a unit vector")
        axis = self.n_hat
        if abs(axis @ (self.a_hat - self.b_hat)) > 1e-12:
            raise NumericalError("axis is not equidistant from the endpoints")
        landed = rodrigues_rotate(self.a_hat, axis, self.phi)
        if np.max(np.abs(landed - self.b_hat)) > 1e-10:
            raise NumericalError("rotation by phi does not reach b_hat")

    @property
    def theta_ab(self) -> float:
        return endpoint_angle(self.a_hat, self.b_hat)

    @property
    def n_hat(self) -> np.ndarray:
        return suboptimal_axis(self.alpha, self.a_hat, self.b_hat)

    @property
    def phi(self) -> float:
        return rotation_angle(self.alpha, self.theta_ab)

    @property
    def t_ab(self) -> float:
        return travel_time(self.alpha, self.theta_ab, self.E)

    @property
    def radius(self) -> float:
        return orbit_radius(self.alpha, self.theta_ab)


def suboptimal_hamiltonian(family: SuboptimalStationary) -> FieldSpec:
    """Constant traceless field ``h = E n(alpha)`` over ``[0, t_ab]``."""
    return FieldSpec(h0=0.0, h=family.E * family.n_hat,
                     t_span=(0.0, family.t_ab))


@dataclass
class UzdinFamily:
    """Prescribed state path ``|m(t)>`` plus optional phase ``phi(t)``.

    ``m_dot`` and ``phase_dot`` may be omitted; central differences with
    step ``fd_step`` stand in.  ``variant`` selects which Hamiltonian the
    constructors below produce.
    """

    m_state: Callable[[float], np.ndarray]
    m_dot: Optional[Callable[[float], np.ndarray]] = None
    phase: Optional[Callable[[float], float]] = None
    phase_dot: Optional[Callable[[float], float]] = None
    variant: str = "optimal"
    t_span: Tuple[float, float] = (0.0, 1.0)
    fd_step: float = 1e-6

    def m_at(self, t: float) -> np.ndarray:
        m = np.asarray(self.m_state(t), dtype=complex)
        norm = np.vdot(m, m).real
        if abs(norm - 1.0) > 1e-10:
            raise NormalizationError(f"m({t!r}) has norm^2 = {norm!r}")
        return m

    def m_dot_at(self, t: float) -> np.ndarray:
        if self.m_dot is not None:
            return np.asarray(self.m_dot(t), dtype=complex)
        d = self.fd_step
        return (np.asarray(self.m_state(t + d), dtype=complex)
                - np.asarray(self.m_state(t - d), dtype=complex)) / (2.0 * d)

    def phase_dot_at(self, t: float) -> float:
        if self.phase_dot is not None:
            return float(self.phase_dot(t))
        if self.phase is None:
            raise ConfigError("phase derivative requested but neither "
                              "phase nor phase_dot was supplied")
        d = self.fd_step
        return (float(self.phase(t + d)) - float(self.phase(t - d))) / (2.0 * d)


def _optimal_field_at(fam: UzdinFamily, t: float) -> np.ndarray:
    m = fam.m_at(t)
    md = fam.m_dot_at(t)
    gauge = abs(np.vdot(m, md))
    if gauge > 1e-8 * (1.0 + np.linalg.norm(md)):
        raise PreconditionError(
            f"<m|dm/dt| = {gauge:.3e} at t = {t!r}; the path must be "
            "parallel transported (phase-fixed) before constructing the drive"
        )
    matrix = 1j * (np.outer(md, m.conj()) - np.outer(m, md.conj()))
    _, h = pauli_decompose(matrix)
    return h


def uzdin_optimal(fam: UzdinFamily,
                  h_dot: Optional[Callable] = None) -> FieldSpec:
    """Traceless field driving ``|m(t)>`` exactly, with unit speed efficiency.

    Implements ``H(t) = i|dm><m| - i|m><dm|``.  Requires the transported
    gauge ``<m|dm/dt> = 0``; the resulting field satisfies ``a.h = 0`` along
    the path, so no energy sits in the parallel component.
    """
    return FieldSpec(h0=0.0, h=lambda t: _optimal_field_at(fam, t),
                     h_dot=h_dot, t_span=fam.t_span)


def uzdin_suboptimal(fam: UzdinFamily,
                     h_dot: Optional[Callable] = None) -> FieldSpec:
    """Sub-optimal drive obtained by adding the phase term ``phidot |m><m|``.

    ``variant = "trace_nonzero"`` keeps the trace (``h0 = phidot/2``) and
    drives ``exp(-i phi(t)) |m(t)>``; ``variant = "trace_zero"`` subtracts
    ``(phidot/2) I`` (so ``h0 = 0``) and drives ``exp(-i phi(t)/2) |m(t)>``.
    Both share the traceless part ``h = h_opt + (phidot/2) a_m`` and trace
    the same Bloch path as the optimal drive.
    """
    if fam.variant not in ("trace_nonzero", "trace_zero"):
        raise ConfigError(
            f"variant must be trace_nonzero or trace_zero, got {fam.variant!r}"
        )
    if fam.phase is None and fam.phase_dot is None:
        raise ConfigError("sub-optimal variants need phase or phase_dot")

    def h(t: float) -> np.ndarray:
        a_m = bloch_from_state(fam.m_at(t))
        return _optimal_field_at(fam, t) + 0.5 * fam.phase_dot_at(t) * a_m

    if fam.variant == "trace_nonzero":
        h0 = lambda t: 0.5 * fam.phase_dot_at(t)
    else:
        h0 = 0.0
    return FieldSpec(h0=h0, h=h, h_dot=h_dot, t_span=fam.t_span)
