"""Fixed-step integration of qubit dynamics and parallel transport.

The Schrodinger equation ``i dpsi/dt = H psi`` is integrated with classic
RK4 on a uniform grid, renormalizing after every step; the matching Bloch
equation ``da/dt = 2 h x a`` gets the same treatment.  Both samplers share
one grid so line integrals (path length, time averages) can use trapezoid
rules on identical nodes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .core import FieldSpec, TOL_RADICAND, clamped_arccos
from .errors import (
    BlochPathError,
    ConfigError,
    FieldError,
    IntegrationError,
    NormalizationError,
    NumericalError,
    ShapeError,
)

__all__ = [
    "TimeGrid",
    "Trajectory",
    "sample_field",
    "schrodinger_evolve",
    "feynman_evolve",
    "parallel_transport",
    "transport_residual",
    "path_length",
]

#: default number of RK4 steps per unit time
STEPS_PER_UNIT = 2000
#: per-step norm drift (before renormalization) that aborts the integration
MAX_STEP_DRIFT = 1e-4
#: allowed Bloch-norm deviation on stored trajectory nodes
TOL_DRIFT = 1e-8


@dataclass(frozen=True)
class TimeGrid:
    """Uniform time grid with ``n_steps`` intervals."""

    t_start: float
    t_end: float
    n_steps: int

    def __post_init__(self):
        if not np.isfinite(self.t_start) or not np.isfinite(self.t_end):
            raise ConfigError("grid endpoints must be finite")
        if self.t_end <= self.t_start:
            raise ConfigError(
                f"t_end ({self.t_end}) must exceed t_start ({self.t_start})"
            )
        if int(self.n_steps) < 2:
            raise ConfigError("n_steps must be an integer >= 2")

    @classmethod
    def with_density(cls, t_start: float, t_end: float,
                     steps_per_unit: int = STEPS_PER_UNIT) -> "TimeGrid":
        n = max(2, int(np.ceil((t_end - t_start) * steps_per_unit)))
        return cls(t_start, t_end, n)

    @property
    def dt(self) -> float:
        return (self.t_end - self.t_start) / self.n_steps

    @property
    def n_nodes(self) -> int:
        return self.n_steps + 1

    @property
    def times(self) -> np.ndarray:
        return np.linspace(self.t_start, self.t_end, self.n_steps + 1)

    @property
    def half_times(self) -> np.ndarray:
        """Nodes and midpoints interleaved: ``t_start + k dt/2``."""
        return self.t_start + 0.5 * self.dt * np.arange(2 * self.n_steps + 1)


def sample_field(field: FieldSpec, times) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate ``(h0(t), h(t))`` on an array of times.

    Exceptions raised inside user callables, and non-finite return values,
    surface as :class:`FieldError`.
    """
    times = np.asarray(times, dtype=float)
    h0 = np.empty(times.shape[0])
    h = np.empty((times.shape[0], 3))
    for k, t in enumerate(times):
        try:
            h0[k] = field.h0_at(t)
            h[k] = field.h_at(t)
        except BlochPathError:
            raise
        except Exception as exc:
            raise FieldError(f"field evaluation failed at t = {t!r}: {exc}") from exc
    if not (np.all(np.isfinite(h0)) and np.all(np.isfinite(h))):
        raise FieldError("field returned non-finite values")
    return h0, h


def _matrices(h0: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Stack of 2x2 Hamiltonians from sampled field components."""
    out = np.empty((h0.shape[0], 2, 2), dtype=complex)
    out[:, 0, 0] = h0 + h[:, 2]
    out[:, 0, 1] = h[:, 0] - 1j * h[:, 1]
    out[:, 1, 0] = h[:, 0] + 1j * h[:, 1]
    out[:, 1, 1] = h0 - h[:, 2]
    return out


def _bloch_of(states: np.ndarray) -> np.ndarray:
    cross = np.conj(states[:, 0]) * states[:, 1]
    return np.stack(
        [
            2.0 * cross.real,
            2.0 * cross.imag,
            np.abs(states[:, 0]) ** 2 - np.abs(states[:, 1]) ** 2,
        ],
        axis=1,
    )


def _dispersion(bloch: np.ndarray, h: np.ndarray) -> np.ndarray:
    radicand = np.einsum("ij,ij->i", h, h) - np.einsum("ij,ij->i", bloch, h) ** 2
    low = radicand.min() if radicand.size else 0.0
    if low < -TOL_RADICAND:
        raise NumericalError(f"negative dispersion radicand {low:.3e}")
    return np.sqrt(np.clip(radicand, 0.0, None))


@dataclass
class Trajectory:
    """Sampled evolution: states, Bloch path, field and derived line data.

    ``s_accum`` is the Fubini-Study path length ``integral 2 dE dt`` up to
    each node; ``s0`` is the geodesic distance from the initial node.
    """

    grid: TimeGrid
    times: np.ndarray
    states: np.ndarray
    bloch: np.ndarray
    h0_nodes: np.ndarray
    h_nodes: np.ndarray
    delta_e: np.ndarray
    s_accum: np.ndarray
    s0: np.ndarray

    @property
    def n_nodes(self) -> int:
        return self.times.shape[0]

    def validate(self) -> None:
        n = self.n_nodes
        shapes = {
            "times": (n,),
            "states": (n, 2),
            "bloch": (n, 3),
            "h0_nodes": (n,),
            "h_nodes": (n, 3),
            "delta_e": (n,),
            "s_accum": (n,),
            "s0": (n,),
        }
        for name, want in shapes.items():
            got = np.asarray(getattr(self, name)).shape
            if got != want:
                raise ShapeError(f"trajectory field {name} has shape {got}, want {want}")
        norms = np.einsum("ij,ij->i", self.bloch, self.bloch)
        worst = np.max(np.abs(norms - 1.0))
        if worst > TOL_DRIFT:
            raise NumericalError(f"Bloch norm drift {worst:.3e} exceeds {TOL_DRIFT}")


def _finish_trajectory(grid, states, h0_half, h_half,
                       validate: bool = True) -> Trajectory:
    times = grid.times
    bloch = _bloch_of(states)
    h0_nodes = h0_half[::2]
    h_nodes = h_half[::2]
    delta_e = _dispersion(bloch, h_nodes)
    s_accum = cumulative_trapezoid(2.0 * delta_e, times, initial=0.0)
    s0 = clamped_arccos(bloch @ bloch[0])
    traj = Trajectory(grid, times, states, bloch, h0_nodes, h_nodes,
                      delta_e, s_accum, s0)
    if validate:
        traj.validate()
    return traj


def schrodinger_evolve(field: FieldSpec, psi0, grid: TimeGrid | None = None,
                       renormalize: bool = True) -> Trajectory:
    """Integrate ``i dpsi/dt = H(t) psi`` with RK4 on a fixed grid.

    Parameters
    ----------
    field : FieldSpec
        Control field; sampled once on nodes and midpoints.
    psi0 : array_like, shape (2,)
        Normalized initial state.
    grid : TimeGrid, optional
        Defaults to ``field.t_span`` with 2000 steps per unit time.
    renormalize : bool
        Rescale the state after every step.  The pre-renormalization drift
        is monitored either way and a step drift above 1e-4 raises
        :class:`IntegrationError`.
    """
    if grid is None:
        grid = TimeGrid.with_density(*field.t_span)
    psi0 = np.asarray(psi0, dtype=complex)
    if psi0.shape != (2,):
        raise ShapeError(f"expected a length-2 state, got shape {psi0.shape}")
    norm0 = np.sqrt(np.vdot(psi0, psi0).real)
    if abs(norm0 - 1.0) > 1e-10:
        raise NormalizationError(f"initial state norm {norm0!r}, expected 1")

    h0_half, h_half = sample_field(field, grid.half_times)
    gen = -1j * _matrices(h0_half, h_half)
    dt = grid.dt

    states = np.empty((grid.n_nodes, 2), dtype=complex)
    states[0] = psi0
    y = psi0
    prev_norm = norm0
    for k in range(grid.n_steps):
        a0 = gen[2 * k]
        am = gen[2 * k + 1]
        a1 = gen[2 * k + 2]
        k1 = a0 @ y
        k2 = am @ (y + (0.5 * dt) * k1)
        k3 = am @ (y + (0.5 * dt) * k2)
        k4 = a1 @ (y + dt * k3)
        y = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        norm = np.sqrt(np.vdot(y, y).real)
        drift = abs(norm / prev_norm - 1.0)
        if drift > MAX_STEP_DRIFT:
            raise IntegrationError(
                f"norm drift {drift:.3e} in step {k}; reduce dt"
            )
        if renormalize:
            y = y / norm
            prev_norm = 1.0
        else:
            prev_norm = norm
        states[k + 1] = y
    return _finish_trajectory(grid, states, h0_half, h_half,
                              validate=renormalize)


def feynman_evolve(field: FieldSpec, a0, grid: TimeGrid | None = None,
                   renormalize: bool = True) -> np.ndarray:
    """Integrate the Bloch equation ``da/dt = 2 h(t) x a`` with RK4.

    Returns the ``(n_nodes, 3)`` Bloch path.  Independent of
    :func:`schrodinger_evolve`; useful as a cross-check of the state-space
    integration.
    """
    if grid is None:
        grid = TimeGrid.with_density(*field.t_span)
    a0 = np.asarray(a0, dtype=float)
    if a0.shape != (3,):
        raise ShapeError(f"expected a length-3 Bloch vector, got shape {a0.shape}")
    if abs(a0 @ a0 - 1.0) > 1e-10:
        raise NormalizationError("initial Bloch vector must be unit length")

    _, h_half = sample_field(field, grid.half_times)
    dt = grid.dt
    out = np.empty((grid.n_nodes, 3))
    out[0] = a0
    a = a0
    for k in range(grid.n_steps):
        h_a = h_half[2 * k]
        h_m = h_half[2 * k + 1]
        h_b = h_half[2 * k + 2]
        k1 = 2.0 * np.cross(h_a, a)
        k2 = 2.0 * np.cross(h_m, a + (0.5 * dt) * k1)
        k3 = 2.0 * np.cross(h_m, a + (0.5 * dt) * k2)
        k4 = 2.0 * np.cross(h_b, a + dt * k3)
        a = a + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        norm = np.sqrt(a @ a)
        if abs(norm - 1.0) > MAX_STEP_DRIFT:
            raise IntegrationError(f"Bloch norm drift in step {k}; reduce dt")
        if renormalize:
            a = a / norm
        out[k + 1] = a
    return out


def parallel_transport(traj: Trajectory, field: FieldSpec | None = None) -> np.ndarray:
    """Phase-align the sampled states so that ``<m | dm/dt> ~ 0``.

    Multiplies each state by ``exp(i beta(t))`` with
    ``beta = integral <H> dt`` and ``<H> = h0 + a . h``, removing the
    dynamical phase accumulated along the trajectory.  By default the field
    samples stored on the trajectory are used; passing ``field`` resamples
    it on the trajectory nodes instead.
    """
    traj.validate()
    if field is None:
        h0_nodes, h_nodes = traj.h0_nodes, traj.h_nodes
    else:
        h0_nodes, h_nodes = sample_field(field, traj.times)
    if h0_nodes.shape[0] != traj.n_nodes:
        raise ShapeError("field samples and trajectory have different lengths")
    expect_h = h0_nodes + np.einsum("ij,ij->i", traj.bloch, h_nodes)
    beta = cumulative_trapezoid(expect_h, traj.times, initial=0.0)
    return np.exp(1j * beta)[:, None] * traj.states


def transport_residual(m_states, times) -> np.ndarray:
    """Centered-difference check ``|<m_k | dm/dt (t_k)>|`` at interior nodes.

    For a parallel-transported path this is O(dt^2); it quantifies how well
    the transported gauge kills the dynamical phase.
    """
    m = np.asarray(m_states, dtype=complex)
    t = np.asarray(times, dtype=float)
    if m.ndim != 2 or m.shape[0] != t.shape[0]:
        raise ShapeError("state array and time array lengths differ")
    if m.shape[0] < 3:
        raise ShapeError("need at least 3 nodes for a centered difference")
    dm = (m[2:] - m[:-2]) / (t[2:] - t[:-2])[:, None]
    overlap = np.einsum("ij,ij->i", np.conj(m[1:-1]), dm)
    return np.abs(overlap)


def path_length(traj: Trajectory) -> float:
    """Total Fubini-Study length ``integral 2 dE dt`` along the trajectory."""
    return float(traj.s_accum[-1])
