"""Single qubit driven by a square coherent pulse in the rotating frame.

Matrices are indexed by bit value: basis order (|0>, |1>) throughout the
package, so the raising operator is [[0, 0], [1, 0]].  All frequencies are
angular and carry the same arbitrary unit; durations carry its inverse.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import cos, pi, sqrt

import numpy as np

SQRT2 = sqrt(2.0)

HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]]) / SQRT2


@dataclass(frozen=True)
class PulseParams:
    """Square-pulse drive: detuning, signed Rabi amplitude, phase, duration."""

    detuning: float
    rabi: float
    phase: float = 0.0
    duration: float = 0.0
    center_frequency: float = 0.0  # bookkeeping only; does not enter the propagator

    def __post_init__(self) -> None:
        if self.duration < 0:
            raise ValueError("duration must be nonnegative")
        vals = (self.detuning, self.rabi, self.phase, self.duration)
        if not all(np.isfinite(v) for v in vals):
            raise ValueError("pulse parameters must be finite")

    @property
    def tip_angle(self) -> float:
        """Half the generalized Rabi frequency, theta = sqrt(dw^2 + kE^2)/2."""
        return sqrt(self.detuning**2 + self.rabi**2) / 2.0


def _sin_over(theta: float, t: float) -> float:
    """sin(theta*t)/theta, finite at theta = 0."""
    return t * np.sinc(theta * t / pi)


def rotating_frame_propagator(p: PulseParams, duration: float | None = None) -> np.ndarray:
    """Propagator exp(-iAt) of the time-independent rotating-frame generator.

    A = [[-dw/2, (kE/2) e^{i phi}], [(kE/2) e^{-i phi}, dw/2]].  This form
    composes: U(t1 + t2) = U(t2) @ U(t1).
    """
    t = p.duration if duration is None else duration
    th = p.tip_angle
    c = cos(th * t)
    s = _sin_over(th, t)
    dw, ke, ph = p.detuning, p.rabi, p.phase
    return np.array(
        [
            [c + 0.5j * dw * s, -0.5j * ke * s * np.exp(1j * ph)],
            [-0.5j * ke * s * np.exp(-1j * ph), c - 0.5j * dw * s],
        ]
    )


def frame_phases(p: PulseParams, duration: float | None = None) -> np.ndarray:
    """Diagonal frame factor D(t) = diag(e^{-i dw t/2}, e^{+i dw t/2})."""
    t = p.duration if duration is None else duration
    return np.diag([np.exp(-0.5j * p.detuning * t), np.exp(+0.5j * p.detuning * t)])


def classical_propagator(p: PulseParams, duration: float | None = None) -> np.ndarray:
    """Zeroth-order gate in the doubly rotating frame: D(t) @ rotating_frame_propagator.

    Entry layout: [[U_beta, U_minus], [U_plus, U_alpha]], i.e. columns are the
    initial bit value and rows the final one.  The extra frame phase D(t) means
    this closed form does not compose in t; use rotating_frame_propagator for
    the composable generator form.
    """
    return frame_phases(p, duration) @ rotating_frame_propagator(p, duration)


def walsh_hadamard_calibration(omega: float) -> PulseParams:
    """Pulse realizing the Walsh-Hadamard gate at drive rate omega.

    Detuned below the qubit by omega/sqrt2 with Rabi amplitude -omega/sqrt2
    for a duration pi/omega; after stripping the row frame phases the gate is
    the Hadamard matrix.
    """
    if omega <= 0:
        raise ValueError("omega must be positive")
    return PulseParams(
        detuning=omega / SQRT2, rabi=-omega / SQRT2, phase=0.0, duration=pi / omega
    )


def _leading_entry(g: np.ndarray) -> int:
    """Flat index of the first entry within rounding of the largest magnitude."""
    mags = np.abs(g).ravel()
    return int(np.argmax(mags >= mags.max() * (1.0 - 1e-12)))


def strip_global_phase(gate: np.ndarray) -> np.ndarray:
    """Divide by the phase of the largest-magnitude entry (made real positive).

    Ties are broken toward the first such entry in row-major order, with a
    relative tolerance so that rounding cannot flip the choice.
    """
    g = np.asarray(gate)
    entry = g.ravel()[_leading_entry(g)]
    return g * np.conj(entry / abs(entry))


def strip_row_phases(gate: np.ndarray) -> np.ndarray:
    """Divide each row by the phase of its largest-magnitude entry.

    Removes diagonal frame factors such as diag(i e^{-i pi/sqrt8},
    i e^{+i pi/sqrt8}) that the square-pulse bookkeeping attaches to the
    calibrated gate.
    """
    g = np.asarray(gate)
    out = np.empty_like(g)
    for r in range(g.shape[0]):
        entry = g[r, _leading_entry(g[r])]
        out[r] = g[r] * np.conj(entry / abs(entry))
    return out
