"""Curvature coefficient of a transported qubit trajectory, three ways.

The coefficient is the squared norm of the second covariant derivative of
the parallel-transported state with respect to arc length; it vanishes
exactly on geodesics.  Three equivalent evaluations are provided:

* a closed form in Bloch-space data ``(a, h, dh/dt)``;
* an expectation-value form built from the normalized dispersion operator
  ``Dh = (H - <H>) / dE`` and its transported derivative;
* a direct finite-difference evaluation of the covariant derivative,
  useful as a method-independent cross-check.

Inside this module the arc-length speed is ``v = dE`` (not the factor-2
normalization used for the path length ``s_accum`` elsewhere); the
coefficient is dimensionless either way.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .core import FieldSpec, pauli_compose
from .errors import (
    NumericalError,
    PreconditionError,
    SingularEvolutionError,
)
from .evolve import Trajectory, parallel_transport

__all__ = [
    "CurvatureSample",
    "curvature_bloch",
    "curvature_bloch_profile",
    "curvature_transverse",
    "curvature_expectation",
    "curvature_numeric_oracle",
    "curvature_numeric_profile",
    "curvature_sample",
]

#: dispersion denominators below this are singular (eigenstate evolution)
TOL_SING = 1e-12
#: squared-norm results may undershoot 0 by at most this
TOL_NEG = 1e-9


def _clamp_nonneg(value: float) -> float:
    if value < 0.0:
        if value < -TOL_NEG:
            raise NumericalError(f"curvature {value!r} is negative beyond tolerance")
        return 0.0
    return float(value)


def curvature_bloch(a, h, h_dot) -> float:
    """Closed-form curvature from Bloch-space data of a traceless field.

    Three terms: a parallel-component term ``4 (a.h)^2 / D``, a
    field-rotation term, and a mixed term, with ``D = h^2 - (a.h)^2``.
    The trace part of the Hamiltonian cannot bend the path and must be
    dropped by the caller (only ``h`` enters).
    """
    a = np.asarray(a, dtype=float)
    h = np.asarray(h, dtype=float)
    hd = np.asarray(h_dot, dtype=float)
    ah = float(a @ h)
    d = float(h @ h) - ah * ah
    if d <= TOL_SING:
        raise SingularEvolutionError(
            "a is (anti)parallel to h; eigenstate evolutions have no "
            "arc-length parameterization"
        )
    term1 = 4.0 * ah * ah / d
    w = (a @ hd) * h - ah * hd
    term2 = ((h @ h) * (hd @ hd) - float(h @ hd) ** 2 - float(w @ w)) / d**3
    term3 = 4.0 * ah * float(a @ np.cross(h, hd)) / d**2
    return _clamp_nonneg(term1 + term2 + term3)


def curvature_bloch_profile(traj: Trajectory, field: FieldSpec) -> np.ndarray:
    """Node-wise :func:`curvature_bloch` along a trajectory.

    ``dh/dt`` comes from ``field.h_dot`` when supplied, otherwise from a
    central difference with the grid spacing.
    """
    step = traj.grid.dt
    out = np.empty(traj.n_nodes)
    for k, t in enumerate(traj.times):
        hd = field.h_dot_at(t, step=step)
        out[k] = curvature_bloch(traj.bloch[k], traj.h_nodes[k], hd)
    return out


def curvature_transverse(h_perp, t: float, a=None, fd_step: float = 1e-6) -> float:
    """Curvature of a purely transverse field: ``|d(unit h)/dt|^2 / h^2``.

    Valid when the field stays orthogonal to the Bloch vector (``a.h = 0``),
    in which case the coefficient only measures how fast the field
    direction turns relative to the precession rate.  Pass ``a`` to have
    the orthogonality precondition checked.
    """
    h = np.asarray(h_perp(t), dtype=float)
    h_sq = float(h @ h)
    if h_sq <= TOL_SING:
        raise SingularEvolutionError("transverse field vanishes at this time")
    if a is not None:
        a = np.asarray(a, dtype=float)
        if abs(float(a @ h)) > 1e-9 * max(1.0, np.sqrt(h_sq)):
            raise PreconditionError(
                "field is not orthogonal to the Bloch vector; use "
                "curvature_bloch for the general case"
            )
    plus = np.asarray(h_perp(t + fd_step), dtype=float)
    minus = np.asarray(h_perp(t - fd_step), dtype=float)
    unit_dot = (plus / np.linalg.norm(plus) - minus / np.linalg.norm(minus)) \
        / (2.0 * fd_step)
    return _clamp_nonneg(float(unit_dot @ unit_dot) / h_sq)


def _dispersion_operator(traj: Trajectory, k: int) -> np.ndarray:
    """Matrix ``Dh = (H - <H>) / dE`` at node ``k``."""
    de = traj.delta_e[k]
    if de <= TOL_SING:
        raise SingularEvolutionError(f"dE = {de!r} at node {k}; eigenstate evolution")
    matrix = pauli_compose(traj.h0_nodes[k], traj.h_nodes[k])
    expect = traj.h0_nodes[k] + float(traj.bloch[k] @ traj.h_nodes[k])
    return (matrix - expect * np.eye(2)) / de


def curvature_expectation(traj: Trajectory, field: Optional[FieldSpec] = None,
                          k: int = 0) -> float:
    """Curvature at node ``k`` from moments of the dispersion operator.

    Evaluates ``<Dh^4> - <Dh^2>^2 + <Dh'^2> - <Dh'>^2 + i<[Dh^2, Dh']>``
    in the state at node ``k``, where ``Dh' = (dDh/dt) / v`` and ``v = dE``.
    The time derivative uses a central difference over the neighboring
    nodes (one-sided second order at the ends, which carries a larger
    error).  The commutator expectation is purely imaginary in exact
    arithmetic; a real residual above 1e-10 flags the node with a warning.

    ``field`` is unused (the trajectory carries its samples) and accepted
    for symmetry with the other curvature evaluators.
    """
    n = traj.n_nodes
    if not 0 <= k < n:
        raise IndexError(f"node {k} outside trajectory of {n} nodes")
    dt = traj.grid.dt
    dh = _dispersion_operator(traj, k)
    if k == 0:
        ddh = (-3.0 * dh + 4.0 * _dispersion_operator(traj, 1)
               - _dispersion_operator(traj, 2)) / (2.0 * dt)
    elif k == n - 1:
        ddh = (3.0 * dh - 4.0 * _dispersion_operator(traj, n - 2)
               + _dispersion_operator(traj, n - 3)) / (2.0 * dt)
    else:
        ddh = (_dispersion_operator(traj, k + 1)
               - _dispersion_operator(traj, k - 1)) / (2.0 * dt)
    dh_prime = ddh / traj.delta_e[k]

    psi = traj.states[k]

    def expect(op: np.ndarray) -> complex:
        return complex(np.vdot(psi, op @ psi))

    dh_sq = dh @ dh
    moment4 = expect(dh_sq @ dh_sq).real
    moment2 = expect(dh_sq).real
    prime_var = expect(dh_prime @ dh_prime).real - expect(dh_prime).real ** 2
    comm = expect(dh_sq @ dh_prime - dh_prime @ dh_sq)
    if abs(comm.real) > 1e-10:
        warnings.warn(
            f"commutator expectation has real residual {comm.real:.3e} "
            f"at node {k}; finite-difference noise suspected",
            RuntimeWarning,
            stacklevel=2,
        )
    cross = (1j * comm).real
    return _clamp_nonneg(moment4 - moment2**2 + prime_var + cross)


def curvature_numeric_profile(traj: Trajectory) -> np.ndarray:
    """Direct covariant-derivative curvature at every node.

    Parallel transports the states, reparameterizes by arc length
    ``s = integral dE dt``, differentiates twice with second-order
    ``numpy.gradient`` stencils, projects out the state component, and
    returns the squared norm.  End nodes lean on one-sided stencils and are
    less accurate; exclude them when comparing against closed forms.
    """
    m = parallel_transport(traj)
    s = cumulative_trapezoid(traj.delta_e, traj.times, initial=0.0)
    if np.any(np.diff(s) <= 0.0):
        raise SingularEvolutionError(
            "arc length is not strictly increasing; dE vanishes on the grid"
        )
    tangent = np.gradient(m, s, axis=0, edge_order=2)
    tangent_prime = np.gradient(tangent, s, axis=0, edge_order=2)
    overlap = np.einsum("ij,ij->i", m.conj(), tangent_prime)
    normal = tangent_prime - overlap[:, None] * m
    return np.einsum("ij,ij->i", normal.conj(), normal).real


def curvature_numeric_oracle(traj: Trajectory, field: Optional[FieldSpec] = None,
                             k: int | None = None):
    """Covariant-derivative curvature, per node or as a full profile.

    ``field`` is unused and accepted for symmetry.  With ``k`` given, the
    node must be interior (the boundary stencils are not acceptance grade).
    """
    profile = curvature_numeric_profile(traj)
    if k is None:
        return profile
    if not 0 < k < traj.n_nodes - 1:
        raise PreconditionError("numeric curvature is only trusted at interior nodes")
    return float(profile[k])


@dataclass(frozen=True)
class CurvatureSample:
    """One node's curvature by every available method."""

    t: float
    kappa_bloch: float
    kappa_expect: Optional[float] = None
    kappa_numeric: Optional[float] = None


def curvature_sample(traj: Trajectory, field: FieldSpec, k: int,
                     include_numeric: bool = False) -> CurvatureSample:
    """Evaluate all curvature forms at node ``k`` of a trajectory."""
    hd = field.h_dot_at(traj.times[k], step=traj.grid.dt)
    kb = curvature_bloch(traj.bloch[k], traj.h_nodes[k], hd)
    ke = curvature_expectation(traj, field, k)
    kn = curvature_numeric_oracle(traj, field, k) if include_numeric else None
    return CurvatureSample(t=float(traj.times[k]), kappa_bloch=kb,
                           kappa_expect=ke, kappa_numeric=kn)
