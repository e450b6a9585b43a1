import pytest

from drivenqc.photon_budget import (
    PRESETS,
    PlatformPreset,
    budget_report,
    decoherence_probability,
    load_presets,
    max_qubits,
    photons_per_pulse,
    with_ensemble,
)
from drivenqc import targets

GOLDEN_COUNTS = {"be_ion": 1.51024e11, "nmr": 1.50919e22, "esr": 1.50919e18}


def test_photon_counts_golden_and_within_factor_ten():
    for name, golden in GOLDEN_COUNTS.items():
        count = photons_per_pulse(PRESETS[name])
        assert count == pytest.approx(golden, rel=1e-4)
        target = targets.PHOTON_COUNTS[name]
        assert max(count / target, target / count) < 10.0


def test_decoherence_probability_example():
    assert decoherence_probability(70, 1e12) == pytest.approx(0.481036337152, abs=1e-12)
    assert decoherence_probability(10, 1e12, ensemble=2.0) == pytest.approx(
        2.0 * decoherence_probability(10, 1e12), rel=1e-15)
    with pytest.raises(ValueError):
        decoherence_probability(0, 1e12)
    with pytest.raises(ValueError):
        decoherence_probability(10, 0.0)


def test_probability_strictly_increasing_in_k():
    values = [decoherence_probability(k, 1e12) for k in range(1, 120)]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_ceilings_match_references():
    computed = []
    for n_ph, ensemble, target in targets.CEILING_CASES:
        ceiling = max_qubits(n_ph, ensemble)
        computed.append(ceiling)
        assert abs(ceiling - target) <= targets.CEILING_ATOL
    assert computed == [72, 136, 28]


def test_max_qubits_round_trip():
    for n_ph in (1e8, 1e12, 3e15, 1e22):
        for ensemble in (1.0, 10.0, 1e6):
            for threshold in (0.1, 1.0, 2.0):
                k = max_qubits(n_ph, ensemble, threshold)
                assert decoherence_probability(k, n_ph, ensemble) <= threshold
                assert decoherence_probability(k + 1, n_ph, ensemble) > threshold


def test_max_qubits_monotonicity():
    assert max_qubits(1e14) >= max_qubits(1e12)
    assert max_qubits(1e12, ensemble=100.0) <= max_qubits(1e12)
    assert max_qubits(1e12, threshold=0.1) <= max_qubits(1e12, threshold=1.0)


def test_max_qubits_validation():
    with pytest.raises(ValueError):
        max_qubits(10.0, ensemble=20.0)
    with pytest.raises(ValueError):
        max_qubits(-1.0)
    with pytest.raises(ValueError):
        max_qubits(1e12, threshold=0.0)


def test_preset_validation():
    with pytest.raises(ValueError):
        PlatformPreset(name="x", power=1.0, duration=1.0)
    with pytest.raises(ValueError):
        PlatformPreset(name="x", power=1.0, duration=1.0, frequency=1e8, wavelength=1e-6)
    with pytest.raises(ValueError):
        PlatformPreset(name="x", power=-1.0, duration=1.0, frequency=1e8)
    with pytest.raises(ValueError):
        PlatformPreset(name="x", power=1.0, duration=1.0, frequency=1e8, ensemble=0.5)


def test_carrier_frequency_from_wavelength():
    p = PlatformPreset(name="x", power=1.0, duration=1.0, wavelength=2.99792458e-1)
    assert p.carrier_frequency == pytest.approx(1e9, rel=1e-12)


def test_budget_report_nmr_ensemble_example():
    report = budget_report(with_ensemble(PRESETS["nmr"], 1e17))
    assert abs(report.max_qubits - 25) <= 5
    assert report.probability <= 1.0
    assert not report.regime_breakdown
    d = report.to_dict()
    assert d["preset"] == "nmr" and d["ensemble"] == 1e17


def test_budget_report_flags_regime_breakdown():
    report = budget_report(with_ensemble(PRESETS["nmr"], 1e17), k=40)
    assert report.probability > 1.0
    assert report.regime_breakdown


def test_load_presets_round_trip(tmp_path):
    path = tmp_path / "presets.cfg"
    path.write_text(
        "# two custom platforms\n"
        "weak.power = 1e-3\n"
        "weak.duration = 1e-4  # seconds\n"
        "weak.wavelength = 3e-7\n"
        "strong.power = 10\n"
        "strong.duration = 1e-6\n"
        "strong.frequency = 1e9\n"
        "strong.ensemble = 4\n"
    )
    presets = load_presets(str(path))
    assert set(presets) == {"weak", "strong"}
    assert presets["strong"].ensemble == 4.0
    assert presets["weak"].wavelength == 3e-7


def test_load_presets_rejects_unknown_field(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("weak.volume = 3\n")
    with pytest.raises(ValueError, match="volume"):
        load_presets(str(path))


def test_load_presets_rejects_malformed_line(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("just a sentence\n")
    with pytest.raises(ValueError, match="line 1"):
        load_presets(str(path))
