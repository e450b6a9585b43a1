"""Photon budgets: pulse energies to photon counts to qubit ceilings.

The per-gate scattering probability scales as the reciprocal of the photon
number in the driving pulse; with the 0.2 K 2^{K/2} gate-count law for a full
Grover search, a platform's pulse parameters bound the number of qubits it
can drive before decoherence reaches a chosen threshold.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

PLANCK = 6.62607015e-34  # J s
LIGHT_SPEED = 2.99792458e8  # m / s

_SCATTER_PREFACTOR = 0.2


@dataclass(frozen=True)
class PlatformPreset:
    """Pulse power, duration, carrier, and ensemble size of one platform."""

    name: str
    power: float  # watts
    duration: float  # seconds
    frequency: float | None = None  # hertz
    wavelength: float | None = None  # meters
    ensemble: float = 1.0  # independent computers driven by the same pulse

    def __post_init__(self) -> None:
        if (self.frequency is None) == (self.wavelength is None):
            raise ValueError("exactly one of frequency or wavelength must be set")
        carrier = self.frequency if self.frequency is not None else self.wavelength
        if self.power <= 0 or self.duration <= 0 or carrier <= 0:
            raise ValueError("power, duration and carrier must be positive")
        if self.ensemble < 1:
            raise ValueError("ensemble must be at least 1")

    @property
    def carrier_frequency(self) -> float:
        if self.frequency is not None:
            return self.frequency
        return LIGHT_SPEED / self.wavelength


PRESETS: dict[str, PlatformPreset] = {
    "be_ion": PlatformPreset(name="be_ion", power=1e-3, duration=1e-4, wavelength=300e-9),
    "nmr": PlatformPreset(name="nmr", power=100.0, duration=10e-6, frequency=1e8),
    "esr": PlatformPreset(name="esr", power=1e3, duration=10e-9, frequency=1e10),
}


def photons_per_pulse(preset: PlatformPreset) -> float:
    """Pulse energy divided by the photon energy at the carrier."""
    return preset.power * preset.duration / (PLANCK * preset.carrier_frequency)


def decoherence_probability(k: int, n_photons: float, ensemble: float = 1.0) -> float:
    """First-order scatter probability 0.2 K 2^{K/2} M / N_ph of a full search."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if n_photons <= 0:
        raise ValueError("n_photons must be positive")
    return _SCATTER_PREFACTOR * k * 2.0 ** (k / 2.0) * ensemble / n_photons


def max_qubits(n_photons: float, ensemble: float = 1.0, threshold: float = 1.0) -> int:
    """Largest K whose full-search scatter probability stays at or below threshold."""
    if n_photons <= 0 or ensemble < 1:
        raise ValueError("n_photons must be positive and ensemble at least 1")
    if n_photons / ensemble <= 1.0:
        raise ValueError("n_photons per computer must exceed 1")
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    k = 0
    while decoherence_probability(k + 1, n_photons, ensemble) <= threshold:
        k += 1
    return k


@dataclass(frozen=True)
class BudgetReport:
    """Ceiling and scatter probability of one platform at one threshold."""

    preset: PlatformPreset
    photons: float
    threshold: float
    max_qubits: int
    k: int  # qubit count the probability is quoted at (max_qubits by default)
    probability: float
    regime_breakdown: bool  # probability exceeds 1: first order is not a probability

    def to_dict(self) -> dict:
        return {
            "preset": self.preset.name,
            "power": self.preset.power,
            "duration": self.preset.duration,
            "carrier_frequency": self.preset.carrier_frequency,
            "ensemble": self.preset.ensemble,
            "photons_per_pulse": self.photons,
            "threshold": self.threshold,
            "max_qubits": self.max_qubits,
            "k": self.k,
            "probability": self.probability,
            "regime_breakdown": self.regime_breakdown,
        }


def budget_report(preset: PlatformPreset, threshold: float = 1.0, k: int | None = None) -> BudgetReport:
    """Ceiling for one platform, with the scatter probability at k (or the ceiling)."""
    photons = photons_per_pulse(preset)
    ceiling = max_qubits(photons, preset.ensemble, threshold)
    at = ceiling if k is None else k
    prob = decoherence_probability(max(at, 1), photons, preset.ensemble) if at >= 1 else 0.0
    return BudgetReport(
        preset=preset,
        photons=photons,
        threshold=threshold,
        max_qubits=ceiling,
        k=at,
        probability=prob,
        regime_breakdown=prob > 1.0,
    )


_PRESET_FIELDS = ("power", "duration", "frequency", "wavelength", "ensemble")


def load_presets(path: str) -> dict[str, PlatformPreset]:
    """Presets from a flat key-value file with dotted keys, e.g. 'nmr.power = 90'.

    Lines are 'name.field = value'; blank lines and '#' comments are ignored.
    Unknown fields are rejected by name.
    """
    raw: dict[str, dict[str, float]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            if "=" not in text or "." not in text.split("=", 1)[0]:
                raise ValueError(f"line {lineno}: expected 'name.field = value', got {text!r}")
            key, value = (part.strip() for part in text.split("=", 1))
            name, field = key.split(".", 1)
            if field not in _PRESET_FIELDS:
                raise ValueError(f"line {lineno}: unknown preset field '{field}'")
            raw.setdefault(name, {})[field] = float(value)
    return {name: PlatformPreset(name=name, **fields) for name, fields in raw.items()}


def with_ensemble(preset: PlatformPreset, ensemble: float) -> PlatformPreset:
    """Copy of a preset driving a different number of independent computers."""
    return replace(preset, ensemble=ensemble)
