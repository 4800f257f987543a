"""Single-qubit algebra: Pauli decompositions, Bloch vectors, basic geometry.

Conventions used throughout the package (hbar = 1):

* a Hamiltonian is stored as the pair ``(h0, h)`` with
  ``H = h0 * I + h . sigma``, so ``h0`` is half the trace and ``h`` is the
  traceless part in the Pauli basis;
* a pure state ``psi = (c0, c1)`` maps to the Bloch vector
  ``a = (2 Re c0* c1, 2 Im c0* c1, |c0|^2 - |c1|^2)``;
* energies carry the same units as the field components.
"""

from __future__ import annotations

from dataclasses import dataclass, field as _field
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import (
    HermiticityError,
    NormalizationError,
    NumericalError,
    ShapeError,
)

__all__ = [
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "IDENTITY2",
    "QubitState",
    "BlochVector",
    "HermitianMatrix2",
    "FieldSpec",
    "clamped_arccos",
    "pauli_compose",
    "pauli_decompose",
    "bloch_from_state",
    "state_from_bloch",
    "energy_uncertainty",
    "spectral_norm",
    "fubini_study_distance",
]

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY2 = np.eye(2, dtype=complex)

#: tolerance on norms of states and Bloch vectors
TOL_NORM = 1e-12
#: tolerance on Hermiticity of decomposed matrices
TOL_HERM = 1e-12
#: allowed excursion of an arccos argument beyond [-1, 1]
TOL_ARCCOS = 1e-9
#: magnitude below which a negative ``h^2 - (a.h)^2`` radicand is rounded to 0
TOL_RADICAND = 1e-14


def clamped_arccos(x: Union[float, np.ndarray], excess_tol: float = TOL_ARCCOS):
    """arccos with the argument clipped to [-1, 1].

    Arguments beyond the interval by more than ``excess_tol`` indicate a real
    numerical problem upstream and raise :class:`NumericalError` instead of
    being silently clipped.
    """
    x = np.asarray(x, dtype=float)
    excess = np.max(np.abs(x)) - 1.0
    if excess > excess_tol:
        raise NumericalError(
            f"arccos argument exceeds [-1, 1] by {excess:.3e}"
        )
    out = np.arccos(np.clip(x, -1.0, 1.0))
    return float(out) if out.ndim == 0 else out


def _as_state(psi) -> np.ndarray:
    vec = np.asarray(psi, dtype=complex)
    if vec.shape != (2,):
        raise ShapeError(f"expected a length-2 state vector, got shape {vec.shape}")
    return vec


def _as_vec3(v, name: str = "vector") -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise ShapeError(f"expected a length-3 {name}, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class QubitState:
    """Normalized pure state ``c0 |0> + c1 |1>``."""

    c0: complex
    c1: complex

    def __post_init__(self):
        norm = abs(self.c0) ** 2 + abs(self.c1) ** 2
        if abs(norm - 1.0) > TOL_NORM:
            raise NormalizationError(f"state norm^2 = {norm!r}, expected 1")

    @classmethod
    def from_vec(cls, vec) -> "QubitState":
        vec = _as_state(vec)
        return cls(complex(vec[0]), complex(vec[1]))

    @property
    def vec(self) -> np.ndarray:
        return np.array([self.c0, self.c1], dtype=complex)

    @property
    def bloch(self) -> np.ndarray:
        return bloch_from_state(self.vec)

    def __array__(self, dtype=None, copy=None):
        return np.array([self.c0, self.c1], dtype=dtype or complex)


@dataclass(frozen=True)
class BlochVector:
    """Unit vector on the Bloch sphere."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        norm = self.x**2 + self.y**2 + self.z**2
        if abs(norm - 1.0) > TOL_NORM:
            raise NormalizationError(f"Bloch norm^2 = {norm!r}, expected 1")

    @classmethod
    def from_vec(cls, vec) -> "BlochVector":
        vec = _as_vec3(vec, "Bloch vector")
        return cls(float(vec[0]), float(vec[1]), float(vec[2]))

    @property
    def vec(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    def __array__(self, dtype=None, copy=None):
        return np.array([self.x, self.y, self.z], dtype=dtype or float)


@dataclass(frozen=True)
class HermitianMatrix2:
    """2x2 Hermitian matrix stored canonically as ``(h0, h)``."""

    h0: float
    hx: float
    hy: float
    hz: float

    @classmethod
    def from_parts(cls, h0: float, h) -> "HermitianMatrix2":
        h = _as_vec3(h, "field")
        return cls(float(h0), float(h[0]), float(h[1]), float(h[2]))

    @classmethod
    def from_matrix(cls, matrix) -> "HermitianMatrix2":
        h0, h = pauli_decompose(matrix)
        return cls.from_parts(h0, h)

    @property
    def h(self) -> np.ndarray:
        return np.array([self.hx, self.hy, self.hz], dtype=float)

    @property
    def matrix(self) -> np.ndarray:
        return pauli_compose(self.h0, self.h)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype or complex)


def pauli_compose(h0: float, h) -> np.ndarray:
    """Assemble ``h0 * I + h . sigma`` as an explicit 2x2 complex matrix."""
    h = _as_vec3(h, "field")
    return np.array(
        [
            [h0 + h[2], h[0] - 1j * h[1]],
            [h[0] + 1j * h[1], h0 - h[2]],
        ],
        dtype=complex,
    )


def pauli_decompose(matrix, tol: float = TOL_HERM) -> Tuple[float, np.ndarray]:
    """Split a 2x2 Hermitian matrix into its trace part and Pauli vector.

    Parameters
    ----------
    matrix : array_like, shape (2, 2)
        Matrix to decompose. Must be Hermitian within ``tol`` in the
        entrywise max norm.

    Returns
    -------
    h0 : float
        Half the trace.
    h : ndarray, shape (3,)
        Real coefficients of (sigma_x, sigma_y, sigma_z).
    """
    m = np.asarray(matrix, dtype=complex)
    if m.shape != (2, 2):
        raise ShapeError(f"expected a 2x2 matrix, got shape {m.shape}")
    defect = np.max(np.abs(m - m.conj().T))
    if defect > tol:
        raise HermiticityError(f"matrix deviates from Hermiticity by {defect:.3e}")
    h0 = 0.5 * (m[0, 0].real + m[1, 1].real)
    h = np.array(
        [
            0.5 * (m[0, 1] + m[1, 0]).real,
            0.5 * (m[1, 0] - m[0, 1]).imag,
            0.5 * (m[0, 0].real - m[1, 1].real),
        ]
    )
    return h0, h


def bloch_from_state(psi) -> np.ndarray:
    """Bloch vector of a normalized pure state."""
    vec = _as_state(psi)
    norm = np.vdot(vec, vec).real
    if abs(norm - 1.0) > TOL_NORM:
        raise NormalizationError(f"state norm^2 = {norm!r}, expected 1")
    cross = np.conj(vec[0]) * vec[1]
    return np.array(
        [2.0 * cross.real, 2.0 * cross.imag, abs(vec[0]) ** 2 - abs(vec[1]) ** 2]
    )


def state_from_bloch(a) -> np.ndarray:
    """Pure state on the given Bloch direction, with ``c0`` real and >= 0.

    The azimuth is taken from ``atan2(a_y, a_x)``, which makes the gauge
    choice deterministic; the south pole comes out as ``(0, 1)``.
    """
    a = _as_vec3(a, "Bloch vector")
    norm = float(a @ a)
    if abs(norm - 1.0) > TOL_NORM:
        raise NormalizationError(f"Bloch norm^2 = {norm!r}, expected 1")
    ax, ay, az = float(a[0]), float(a[1]), float(a[2])
    # branch per hemisphere so the small amplitude is recovered from the
    # transverse components rather than from a cancellation in 1 -+ a_z
    if az >= 0.0:
        c0 = np.sqrt(0.5 * (1.0 + az))
        c1 = (ax + 1j * ay) / (2.0 * c0)
    else:
        r1 = np.sqrt(0.5 * (1.0 - az))
        c0 = np.hypot(ax, ay) / (2.0 * r1)
        c1 = r1 * np.exp(1j * np.arctan2(ay, ax))
    return np.array([c0, c1], dtype=complex)


def energy_uncertainty(a, h0: float, h) -> float:
    """Instantaneous energy dispersion ``sqrt(h^2 - (a.h)^2)``.

    The trace part ``h0`` shifts all eigenvalues equally and cannot
    contribute to the dispersion; the argument is accepted so call sites can
    pass a field sample through unchanged.
    """
    a = _as_vec3(a, "Bloch vector")
    h = _as_vec3(h, "field")
    radicand = float(h @ h) - float(a @ h) ** 2
    if radicand < 0.0:
        if radicand > -TOL_RADICAND:
            radicand = 0.0
        else:
            raise NumericalError(
                f"negative dispersion radicand {radicand:.3e}; "
                "check normalization of the Bloch vector"
            )
    return float(np.sqrt(radicand))


def spectral_norm(h0: float, h) -> float:
    """Spectral norm ``|h0| + |h|`` of ``h0 * I + h . sigma``."""
    h = _as_vec3(h, "field")
    return abs(float(h0)) + float(np.linalg.norm(h))


def fubini_study_distance(a, b) -> float:
    """Geodesic (Fubini-Study) distance between two Bloch directions.

    Equals ``arccos(a . b)``, i.e. twice ``arccos |<A|B>|`` for the
    corresponding pure states.
    """
    a = _as_vec3(a, "Bloch vector")
    b = _as_vec3(b, "Bloch vector")
    return clamped_arccos(float(a @ b))


def _constant_scalar(value: float) -> Callable[[float], float]:
    val = float(value)
    return lambda t: val


def _constant_vector(value) -> Callable[[float], np.ndarray]:
    val = np.asarray(value, dtype=float).copy()
    return lambda t: val


@dataclass
class FieldSpec:
    """Time-dependent control field ``H(t) = h0(t) * I + h(t) . sigma``.

    ``h0`` and ``h`` may be callables of time or constants; constants are
    wrapped into closures.  ``h_dot`` is the optional analytic derivative of
    ``h`` used by curvature routines; when absent a central difference is
    taken.
    """

    h0: Union[Callable[[float], float], float]
    h: Union[Callable[[float], Sequence[float]], Sequence[float]]
    h_dot: Optional[Callable[[float], Sequence[float]]] = None
    t_span: Tuple[float, float] = (0.0, 1.0)

    def __post_init__(self):
        if not callable(self.h0):
            self.h0 = _constant_scalar(self.h0)
        if not callable(self.h):
            self.h = _constant_vector(self.h)
            if self.h_dot is None:
                self.h_dot = _constant_vector((0.0, 0.0, 0.0))

    def h0_at(self, t: float) -> float:
        return float(self.h0(t))

    def h_at(self, t: float) -> np.ndarray:
        return _as_vec3(self.h(t), "field")

    def h_dot_at(self, t: float, step: float = 1e-6) -> np.ndarray:
        """Analytic ``dh/dt`` when available, else a central difference."""
        if self.h_dot is not None:
            return _as_vec3(self.h_dot(t), "field derivative")
        return (self.h_at(t + step) - self.h_at(t - step)) / (2.0 * step)

    def matrix_at(self, t: float) -> np.ndarray:
        return pauli_compose(self.h0_at(t), self.h_at(t))
