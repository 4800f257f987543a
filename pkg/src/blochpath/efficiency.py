"""Efficiency measures of a qubit evolution and the waste classifier.

Geodesic efficiency compares the geodesic distance covered so far against
the Fubini-Study length actually traced; speed efficiency compares the
energy dispersion against the spectral norm of the Hamiltonian.  Their time
averages multiply into the hybrid efficiency, which is the only two-factor
combination satisfying the obvious axioms (range, reduction when one factor
is 1, bounded by the smaller factor).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.integrate import trapezoid

from .core import spectral_norm as _spectral_norm, energy_uncertainty as _energy_uncertainty
from .errors import (
    NumericalError,
    RangeError,
    ZeroHamiltonianError,
    ZeroPathError,
)
from .evolve import Trajectory, sample_field

__all__ = [
    "Classification",
    "EfficiencyReport",
    "geodesic_efficiency_global",
    "geodesic_efficiency_instant",
    "geodesic_efficiency_profile",
    "speed_efficiency",
    "speed_efficiency_profile",
    "speed_efficiency_tracenonzero",
    "speed_efficiency_tracezero",
    "averaged_efficiencies",
    "hybrid_efficiency",
    "classify",
    "efficiency_report",
]

#: path lengths below this are treated as zero (0/0 anchor convention)
TOL_S = 1e-9
#: a factor within this of 1 counts as exactly 1 for classification
TOL_ONE = 1e-3
#: relative tolerance when comparing the two loss diagnostics
TOL_CMP = 1e-3
#: efficiencies may exceed 1 by at most this before the run is rejected
TOL_EXCESS = 1e-9


class Classification(str, Enum):
    """Waste taxonomy of an averaged evolution."""

    GEODESIC_UNWASTEFUL = "GeodesicUnwasteful"
    NONGEODESIC_UNWASTEFUL = "NongeodesicUnwasteful"
    GEODESIC_WASTEFUL = "GeodesicWasteful"
    MORE_WASTEFUL_THAN_NONGEODESIC = "MoreWastefulThanNongeodesic"
    LESS_WASTEFUL_THAN_NONGEODESIC = "LessWastefulThanNongeodesic"
    AS_WASTEFUL_AS_NONGEODESIC = "AsWastefulAsNongeodesic"


def _unit_ratio(value):
    """Round a float or array of efficiencies into [0, 1].

    Values above ``1 + TOL_EXCESS`` indicate quadrature trouble and raise.
    """
    arr = np.asarray(value, dtype=float)
    excess = arr.max() - 1.0 if arr.size else 0.0
    if excess > TOL_EXCESS:
        raise NumericalError(f"efficiency exceeds 1 by {excess:.3e}")
    out = np.clip(arr, 0.0, 1.0)
    return float(out) if out.ndim == 0 else out


def geodesic_efficiency_global(traj: Trajectory) -> float:
    """Endpoint geodesic distance over total path length, in (0, 1]."""
    s = float(traj.s_accum[-1])
    if s <= TOL_S:
        raise ZeroPathError(f"path length {s!r} too short for a ratio")
    return _unit_ratio(float(traj.s0[-1]) / s)


def geodesic_efficiency_instant(traj: Trajectory, k: int) -> float:
    """Geodesic efficiency accumulated from the start node up to node ``k``.

    At the start node (and anywhere the accumulated length is below
    ``TOL_S``) the 0/0 limit is 1: both the distance and the length vanish
    linearly with slope ``2 dE``.
    """
    s = float(traj.s_accum[k])
    if s < TOL_S:
        return 1.0
    return _unit_ratio(float(traj.s0[k]) / s)


def geodesic_efficiency_profile(traj: Trajectory) -> np.ndarray:
    """Vectorized :func:`geodesic_efficiency_instant` over all nodes."""
    out = np.ones(traj.n_nodes)
    live = traj.s_accum >= TOL_S
    out[live] = traj.s0[live] / traj.s_accum[live]
    return _unit_ratio(out)


def speed_efficiency(a, h0: float, h) -> float:
    """Energy dispersion over spectral norm, ``dE / (|h0| + |h|)``.

    Equals 1 exactly when the field is traceless and orthogonal to the
    Bloch vector; any parallel component or trace part wastes speed.
    """
    norm = _spectral_norm(h0, h)
    if norm == 0.0:
        raise ZeroHamiltonianError("speed efficiency undefined for H = 0")
    return _unit_ratio(_energy_uncertainty(a, h0, h) / norm)


def speed_efficiency_profile(traj: Trajectory) -> np.ndarray:
    """Node-wise speed efficiency from the trajectory's stored field samples."""
    norms = np.abs(traj.h0_nodes) + np.linalg.norm(traj.h_nodes, axis=1)
    if np.any(norms == 0.0):
        raise ZeroHamiltonianError("speed efficiency undefined where H = 0")
    return _unit_ratio(traj.delta_e / norms)


def speed_efficiency_tracenonzero(cdot_sq, phidot):
    """Closed-form speed efficiency of the trace-keeping sub-optimal drive.

    ``sqrt(c^2) / sqrt(phidot^2/2 + c^2 + (|phidot|/2) sqrt(phidot^2 + 4c^2))``
    where ``c^2 = |dc0/dt|^2 + |dc1/dt|^2`` for the driven path amplitudes.
    Accepts scalars or arrays in ``phidot``.
    """
    c2 = np.asarray(cdot_sq, dtype=float)
    pd = np.asarray(phidot, dtype=float)
    if np.any(c2 < 0.0):
        raise RangeError("cdot_sq must be nonnegative")
    denom_sq = 0.5 * pd**2 + c2 + 0.5 * np.abs(pd) * np.sqrt(pd**2 + 4.0 * c2)
    if np.any(denom_sq == 0.0):
        raise ZeroHamiltonianError("speed efficiency undefined for H = 0")
    return _unit_ratio(np.sqrt(c2 / denom_sq))


def speed_efficiency_tracezero(cdot_sq, phidot):
    """Closed-form speed efficiency of the traceless sub-optimal drive.

    ``sqrt(c^2) / sqrt(phidot^2/4 + c^2)``; for small ``phidot`` behaves as
    ``1 - phidot^2 / (8 c^2)``.
    """
    c2 = np.asarray(cdot_sq, dtype=float)
    pd = np.asarray(phidot, dtype=float)
    if np.any(c2 < 0.0):
        raise RangeError("cdot_sq must be nonnegative")
    denom_sq = 0.25 * pd**2 + c2
    if np.any(denom_sq == 0.0):
        raise ZeroHamiltonianError("speed efficiency undefined for H = 0")
    return _unit_ratio(np.sqrt(c2 / denom_sq))


def averaged_efficiencies(traj: Trajectory, field=None) -> tuple[float, float]:
    """Trapezoid time averages of both instantaneous efficiencies.

    Field samples stored on the trajectory are used unless ``field`` is
    passed explicitly, in which case it is resampled on the nodes.
    """
    if field is not None:
        h0, h = sample_field(field, traj.times)
        norms = np.abs(h0) + np.linalg.norm(h, axis=1)
        if np.any(norms == 0.0):
            raise ZeroHamiltonianError("speed efficiency undefined where H = 0")
        se = _unit_ratio(traj.delta_e / norms)
    else:
        se = speed_efficiency_profile(traj)
    ge = geodesic_efficiency_profile(traj)
    duration = traj.times[-1] - traj.times[0]
    ge_bar = float(trapezoid(ge, traj.times)) / duration
    se_bar = float(trapezoid(se, traj.times)) / duration
    return _unit_ratio(ge_bar), _unit_ratio(se_bar)


def hybrid_efficiency(eta_ge_bar: float, eta_se_bar: float) -> float:
    """Product of the averaged efficiencies.

    The product is the natural combination: it stays in [0, 1], reduces to
    either factor when the other is 1, and never exceeds the smaller factor.
    Arithmetic and geometric means violate all three (see the tests).
    """
    for name, value in (("eta_ge_bar", eta_ge_bar), ("eta_se_bar", eta_se_bar)):
        if not -TOL_EXCESS <= value <= 1.0 + TOL_EXCESS:
            raise RangeError(f"{name} = {value!r} outside [0, 1]")
    return float(np.clip(eta_ge_bar, 0.0, 1.0) * np.clip(eta_se_bar, 0.0, 1.0))


@dataclass(frozen=True)
class EfficiencyReport:
    """Per-node efficiency curves, their averages, and the classification."""

    eta_ge_t: np.ndarray
    eta_se_t: np.ndarray
    eta_ge_bar: float
    eta_se_bar: float
    eta_he: float
    classification: Classification
    mean_length_loss: float
    mean_energy_loss: float
    s_total: float
    s0_total: float
    duration: float


def _classify_values(eta_ge_bar: float, eta_se_bar: float,
                     tol_one: float, tol_cmp: float) -> Classification:
    geodesic = eta_ge_bar >= 1.0 - tol_one
    unwasteful = eta_se_bar >= 1.0 - tol_one
    if geodesic and unwasteful:
        return Classification.GEODESIC_UNWASTEFUL
    if unwasteful:
        return Classification.NONGEODESIC_UNWASTEFUL
    if geodesic:
        return Classification.GEODESIC_WASTEFUL
    length_loss = 1.0 - eta_ge_bar
    energy_loss = 1.0 - eta_se_bar
    if abs(energy_loss - length_loss) <= tol_cmp * max(length_loss, energy_loss):
        return Classification.AS_WASTEFUL_AS_NONGEODESIC
    if energy_loss > length_loss:
        return Classification.MORE_WASTEFUL_THAN_NONGEODESIC
    return Classification.LESS_WASTEFUL_THAN_NONGEODESIC


def classify(report: EfficiencyReport, tol_one: float = TOL_ONE,
             tol_cmp: float = TOL_CMP) -> Classification:
    """Assign the waste taxonomy label from a report's averaged factors.

    A factor within ``tol_one`` of 1 counts as 1.  When both factors fall
    short, the relative losses ``1 - eta`` are compared with relative
    tolerance ``tol_cmp`` to pick among the wasteful sub-cases.
    """
    return _classify_values(report.eta_ge_bar, report.eta_se_bar,
                            tol_one, tol_cmp)


def efficiency_report(traj: Trajectory, field=None, tol_one: float = TOL_ONE,
                      tol_cmp: float = TOL_CMP) -> EfficiencyReport:
    """Evaluate both efficiency curves, averages, product, and label."""
    ge = geodesic_efficiency_profile(traj)
    if field is not None:
        ge_bar, se_bar = averaged_efficiencies(traj, field)
        h0, h = sample_field(field, traj.times)
        se = _unit_ratio(traj.delta_e / (np.abs(h0) + np.linalg.norm(h, axis=1)))
    else:
        se = speed_efficiency_profile(traj)
        duration = traj.times[-1] - traj.times[0]
        ge_bar = _unit_ratio(float(trapezoid(ge, traj.times)) / duration)
        se_bar = _unit_ratio(float(trapezoid(se, traj.times)) / duration)
    return EfficiencyReport(
        eta_ge_t=ge,
        eta_se_t=se,
        eta_ge_bar=ge_bar,
        eta_se_bar=se_bar,
        eta_he=hybrid_efficiency(ge_bar, se_bar),
        classification=_classify_values(ge_bar, se_bar, tol_one, tol_cmp),
        mean_length_loss=1.0 - ge_bar,
        mean_energy_loss=1.0 - se_bar,
        s_total=float(traj.s_accum[-1]),
        s0_total=float(traj.s0[-1]),
        duration=float(traj.times[-1] - traj.times[0]),
    )
