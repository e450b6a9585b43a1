"""Driven two-qubit gate: rotating-frame dynamics and first-order emission.

Two always-coupled qubits under a shared classical drive.  The 4x4 matrices
use basis order (|11>, |10>, |01>, |00>); matrix element [r, c] maps initial
state c to final state r.  Frequencies are dimensionless multiples of a
common reference; times are in the inverse unit.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, replace
from math import atan2, cos, pi, sin

import numpy as np
from scipy.optimize import minimize_scalar

STATE_INDEX = {"11": 0, "10": 1, "01": 2, "00": 3}
TRACKED_TRANSITIONS = (("11", "11"), ("11", "10"), ("10", "01"), ("01", "00"))


@dataclass(frozen=True)
class TwoQubitParams:
    """Qubit splittings, exchange coupling, drive amplitude and frame frequency."""

    omega1: float
    omega2: float
    coupling: float
    rabi: float
    center_frequency: float = 0.0
    duration: float = 0.0

    def __post_init__(self) -> None:
        vals = (self.omega1, self.omega2, self.coupling, self.rabi,
                self.center_frequency, self.duration)
        if not all(np.isfinite(vals)):
            raise ValueError("parameters must be finite")
        if self.omega2 <= self.omega1:
            raise ValueError("omega2 must exceed omega1")
        if self.duration < 0:
            raise ValueError("duration must be nonnegative")
        if self.omega2 - self.omega1 < 2.0 * abs(self.coupling):
            warnings.warn(
                "qubit splitting within twice the coupling; spectral lines overlap",
                stacklevel=2,
            )


def rotating_hamiltonian(params: TwoQubitParams) -> np.ndarray:
    """4x4 frame Hamiltonian: exchange on the middle block, drive on single flips."""
    w1, w2 = params.omega1, params.omega2
    j, ke, wc = params.coupling, params.rabi, params.center_frequency
    half_sum = 0.5 * (w1 + w2)
    half_diff = 0.5 * (w1 - w2)
    h = np.diag([half_sum - wc + j / 4.0, half_diff - j / 4.0,
                 -half_diff - j / 4.0, -half_sum + wc + j / 4.0]).astype(complex)
    for r, c in ((0, 1), (0, 2), (1, 3), (2, 3)):
        h[r, c] = h[c, r] = ke / 2.0
    h[1, 2] = h[2, 1] = j / 2.0
    return h


@dataclass(frozen=True)
class Eigensystem:
    """Ascending eigenvalues and matching eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray


def eigensystem(params: TwoQubitParams) -> Eigensystem:
    values, vectors = np.linalg.eigh(rotating_hamiltonian(params))
    return Eigensystem(values=values, vectors=vectors)


def classical_propagator(params: TwoQubitParams, duration: float | None = None) -> np.ndarray:
    """U(t) = V exp(-i lambda t) V+ for the time-independent frame Hamiltonian."""
    t = params.duration if duration is None else duration
    es = eigensystem(params)
    return (es.vectors * np.exp(-1j * es.values * t)) @ es.vectors.conj().T


def _bare_levels(params: TwoQubitParams) -> np.ndarray:
    """Undriven, unshifted level energies labeled by dominant basis state.

    energies[i] is the eigenvalue whose eigenvector has the largest weight on
    basis state i, in STATE_INDEX order.
    """
    bare = replace(params, rabi=0.0, center_frequency=0.0)
    es = eigensystem(bare)
    order = np.argmax(np.abs(es.vectors), axis=1)
    return es.values[order]


def transition_frequencies(params: TwoQubitParams) -> np.ndarray:
    """The four ascending single-flip line frequencies of the undriven system."""
    e11, e10, e01, e00 = _bare_levels(params)
    lines = np.array([e11 - e10, e11 - e01, e10 - e00, e01 - e00])
    return np.sort(lines)


def mixing_angle(params: TwoQubitParams) -> float:
    """Half the rotation diagonalizing the single-excitation block."""
    return 0.5 * atan2(params.coupling, params.omega2 - params.omega1)


def effective_rabi(params: TwoQubitParams) -> float:
    """Drive matrix element between |11> and the lower dressed single-flip state."""
    chi = mixing_angle(params)
    return 0.5 * params.rabi * (cos(chi) - sin(chi))


def transfer_amplitude(params: TwoQubitParams, duration: float | None = None) -> float:
    """|<10| U |11>| for the calibrated conditional pi pulse."""
    return float(abs(classical_propagator(params, duration)[1, 0]))


def calibrate_pulse(omega1: float, omega2: float, coupling: float, rabi: float) -> TwoQubitParams:
    """Frame frequency on the |10> -> |11> dressed line and duration of peak transfer.

    The frame frequency is the exact dressed-level difference; the duration is
    located by scanning |<11|U(t)|10>| over two Rabi half-periods of the
    effective drive matrix element and polishing the best scan point.
    """
    probe = TwoQubitParams(omega1=omega1, omega2=omega2, coupling=coupling, rabi=rabi)
    energies = _bare_levels(probe)
    center = energies[0] - energies[1]
    params = replace(probe, center_frequency=center)

    es = eigensystem(params)
    weights = es.vectors[1, :] * es.vectors[0, :].conj()

    def amp(t: float) -> float:
        return abs(np.sum(weights * np.exp(-1j * es.values * t)))

    t_half = pi / (2.0 * abs(effective_rabi(params)))
    ts = np.linspace(0.0, 2.2 * t_half, 4001)
    amps = np.abs(np.exp(-1j * np.outer(ts, es.values)) @ weights)
    best = int(np.argmax(amps))
    step = ts[1] - ts[0]
    lo = max(ts[best] - step, 0.0)
    res = minimize_scalar(lambda t: -amp(t), bounds=(lo, ts[best] + step),
                          method="bounded", options={"xatol": 1e-9})
    return replace(params, duration=float(res.x))


# ---------------------------------------------------------------------------
# first-order emission spectrum


@dataclass(frozen=True)
class DysonSpectrum:
    """First-order emission amplitudes M(x) on a grid of frequency offsets.

    offsets are drive-frame detunings of the emitted photon; matrices[i] is
    the 4x4 amplitude matrix at offsets[i], in units of the coupling scale.
    """

    params: TwoQubitParams
    scale: float
    offsets: np.ndarray
    matrices: np.ndarray

    def element(self, initial: str, final: str) -> np.ndarray:
        return self.matrices[:, STATE_INDEX[final], STATE_INDEX[initial]]


def _pulse_window(u: np.ndarray, t: float) -> np.ndarray:
    """integral_0^T e^{i u t} dt = T e^{i u T / 2} sinc(u T / (2 pi))."""
    return t * np.exp(0.5j * u * t) * np.sinc(u * t / (2.0 * pi))


def dyson_first_order(params: TwoQubitParams, offsets: np.ndarray, scale: float = 1.0) -> DysonSpectrum:
    """First-order amplitude for one photon emitted at offset x during the pulse.

    The emission vertex lowers one qubit; sandwiching it between dressed-state
    projectors resolves the propagation before and after the event, and the
    finite pulse window supplies the line shape around each dressed-level
    difference.
    """
    offsets = np.asarray(offsets, dtype=float)
    if offsets.ndim != 1 or offsets.size == 0 or not np.all(np.isfinite(offsets)):
        raise ValueError("offsets must be a finite 1-d array")
    if params.duration <= 0:
        raise ValueError("params.duration must be positive")
    t = params.duration
    es = eigensystem(params)
    lowering = np.zeros((4, 4))
    for r, c in ((1, 0), (2, 0), (3, 1), (3, 2)):
        lowering[r, c] = 1.0
    vecs = es.vectors
    out = np.zeros((offsets.size, 4, 4), dtype=complex)
    for n in range(4):
        pn = np.outer(vecs[:, n], vecs[:, n].conj())
        for m in range(4):
            pm = np.outer(vecs[:, m], vecs[:, m].conj())
            coeff = pn @ lowering @ pm * np.exp(1j * es.values[n] * t)
            window = _pulse_window(offsets + es.values[m] - es.values[n], t)
            out += window[:, None, None] * coeff[None, :, :]
    return DysonSpectrum(params=params, scale=scale, offsets=offsets,
                         matrices=-0.5 * scale * out)
