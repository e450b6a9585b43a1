import numpy as np
import pytest

from drivenqc.backreaction import (
    KINDS,
    ConvergenceError,
    PhotonKind,
    classical_envelope,
    classical_spectrum,
    envelope,
    g_samples,
    g_value,
    gram_matrix,
    integral_table,
    scattering_operators,
)
from drivenqc.driven_qubit import HADAMARD

PI = np.pi
SQRT2 = np.sqrt(2.0)

# closed forms obtained independently by contour integration of the rational-
# plus-oscillatory integrands; frozen here as oracles for the quadrature
EXACT_NORMS = {
    PhotonKind.ALPHA: 7.0 * PI**2 / 16.0,
    PhotonKind.BETA: 7.0 * PI**2 / 16.0,
    PhotonKind.PLUS: PI**2 / 16.0,
    PhotonKind.MINUS: 17.0 * PI**2 / 16.0,
}
EXACT_CROSS = {
    (PhotonKind.ALPHA, PhotonKind.BETA): PI**2 / 16.0 + 1j * PI / SQRT2,
    (PhotonKind.ALPHA, PhotonKind.PLUS): -(PI**2) / 16.0 + 1j * PI / np.sqrt(8.0),
    (PhotonKind.ALPHA, PhotonKind.MINUS): 7.0 * PI**2 / 16.0 - 3j * PI / np.sqrt(8.0),
    (PhotonKind.BETA, PhotonKind.PLUS): PI**2 / 16.0 + 1j * PI / np.sqrt(8.0),
    (PhotonKind.BETA, PhotonKind.MINUS): -7.0 * PI**2 / 16.0 - 3j * PI / np.sqrt(8.0),
    (PhotonKind.PLUS, PhotonKind.MINUS): -3.0 * PI**2 / 16.0 + 0j,
}

MID_GRID = np.linspace(-2.0, 6.0, 1024)


def test_integral_table_matches_contour_values(table):
    for kind, exact in EXACT_NORMS.items():
        assert table.norm(kind) == pytest.approx(exact, abs=1e-12)
    for pair, exact in EXACT_CROSS.items():
        assert table.overlap(*pair) == pytest.approx(exact, abs=1e-12)
    assert table.est_error < 1e-6


def test_integral_table_truncation_independent(table):
    other = integral_table(truncation=77.5, tol=1e-8)
    for kind in KINDS:
        assert other.norm(kind) == pytest.approx(table.norm(kind), abs=1e-12)
    for pair in EXACT_CROSS:
        assert other.overlap(*pair) == pytest.approx(table.overlap(*pair), abs=1e-12)


def test_overlap_hermitian_lookup(table):
    a, b = PhotonKind.ALPHA, PhotonKind.BETA
    assert table.overlap(b, a) == pytest.approx(np.conj(table.overlap(a, b)), abs=1e-15)


def test_integral_table_validation():
    with pytest.raises(ValueError):
        integral_table(truncation=49.0)
    with pytest.raises(ValueError):
        integral_table(tol=1e-5)
    with pytest.raises(ValueError):
        integral_table(tol=0.0)


def test_convergence_error_propagates(monkeypatch):
    import drivenqc.backreaction as br

    monkeypatch.setattr(br, "_pair_core", lambda *a: (0.0 + 0.0j, 1.0))
    with pytest.raises(ConvergenceError):
        br.integral_table()


def test_table_serialization(table):
    d = table.to_dict()
    assert set(d["norms"]) == {k.value for k in KINDS}
    assert d["overlaps"]["alpha_beta"]["im"] == pytest.approx(PI / SQRT2, abs=1e-12)
    assert d["truncation"] == 200.0


def test_g_identities_random():
    rng = np.random.default_rng(7)
    x = rng.uniform(-50.0, 50.0, 1000)
    ga, gb = g_samples(PhotonKind.ALPHA, x), g_samples(PhotonKind.BETA, x)
    gp, gm = g_samples(PhotonKind.PLUS, x), g_samples(PhotonKind.MINUS, x)
    assert np.abs(gb + np.exp(1j * PI * x) * np.conj(ga)).max() < 1e-12
    assert np.abs(gm + (4.0 * x + 3.0 * SQRT2) / SQRT2 * gp).max() < 1e-12


def test_g_special_values():
    assert g_value(PhotonKind.PLUS, 0.0) == pytest.approx(0.5, abs=1e-12)
    assert g_value(PhotonKind.PLUS, 1.0) == pytest.approx(1j * PI / 8.0, abs=1e-12)
    assert g_value(PhotonKind.PLUS, -1.0) == pytest.approx(-1j * PI / 8.0, abs=1e-12)
    assert g_value(PhotonKind.MINUS, 0.0) == pytest.approx(-1.5, abs=1e-12)


def test_g_removable_continuity():
    for kind in KINDS:
        for x0 in (0.0, 1.0, -1.0):
            center = g_value(kind, x0)
            sym = 0.5 * (g_value(kind, x0 + 1e-6) + g_value(kind, x0 - 1e-6))
            assert abs(sym - center) < 1e-8
            assert abs(g_value(kind, x0 + 1e-9) - center) < 1e-8


def test_g_series_matches_direct_formula_inside_window():
    # inside the protection window the Taylor-ratio series must agree with the
    # raw rational formula wherever the latter is still well conditioned
    from drivenqc.backreaction import _POLYS

    for kind in KINDS:
        p, q, d = _POLYS[kind]
        for x0 in (0.0, 1.0, -1.0):
            for side in (+1.0, -1.0):
                x = x0 + side * 0.9e-3
                direct = (p(x) + q(x) * np.exp(1j * PI * x)) / d(x)
                assert abs(g_value(kind, x) - direct) < 1e-9


def test_g_value_validation():
    with pytest.raises(ValueError):
        g_value(PhotonKind.ALPHA, np.inf)
    with pytest.raises(ValueError):
        g_value(PhotonKind.ALPHA, np.nan)


def test_gram_matrix_properties(table):
    gamma = gram_matrix(table)
    assert np.allclose(np.diag(gamma).real, 1.0, atol=1e-12)
    assert np.abs(gamma - gamma.conj().T).max() < 1e-12
    assert np.linalg.eigvalsh(gamma).min() > -1e-8


def test_envelope_plus_is_quarter_sine(table):
    env = envelope(PhotonKind.PLUS, MID_GRID)
    inside = (MID_GRID > 1e-9) & (MID_GRID < PI - 1e-9)
    assert np.abs(env.values[inside] - np.sin(MID_GRID[inside]) / 4.0).max() < 1e-12
    assert np.abs(env.values[~inside & (np.abs(MID_GRID) > 1e-9) & (np.abs(MID_GRID - PI) > 1e-9)]).max() == 0.0


def test_envelope_parseval(table):
    for kind in KINDS:
        env = envelope(kind, MID_GRID)
        measured = np.trapezoid(np.abs(env.values) ** 2, MID_GRID)
        expected = table.norm(kind) / (2.0 * PI)
        assert measured == pytest.approx(expected, rel=0.01)


def test_envelope_edge_midpoint():
    grid = np.sort(np.concatenate([MID_GRID, [0.0, 1e-9, PI, PI - 1e-9]]))
    for kind in KINDS:
        env = envelope(kind, grid)
        at0 = env.values[np.searchsorted(grid, 0.0)]
        near0 = env.values[np.searchsorted(grid, 1e-9)]
        assert abs(at0 - 0.5 * near0) < 1e-6
        at_pi = env.values[np.searchsorted(grid, PI)]
        near_pi = env.values[np.searchsorted(grid, PI - 1e-9)]
        assert abs(at_pi - 0.5 * near_pi) < 1e-6


def test_envelope_fft_matches_exact(table):
    away = (np.abs(MID_GRID) > 0.5) & (np.abs(MID_GRID - PI) > 0.5)
    for kind in KINDS:
        exact = envelope(kind, MID_GRID).values
        fft = envelope(kind, MID_GRID, method="fft").values
        assert np.abs(exact - fft)[away].max() < 2e-2
        measured = np.trapezoid(np.abs(fft) ** 2, MID_GRID)
        assert measured == pytest.approx(table.norm(kind) / (2.0 * PI), rel=0.01)


def test_envelope_grid_validation():
    with pytest.raises(ValueError):
        envelope(PhotonKind.ALPHA, np.linspace(-2.0, 6.0, 100))
    with pytest.raises(ValueError):
        envelope(PhotonKind.ALPHA, np.zeros(300))
    with pytest.raises(ValueError):
        envelope(PhotonKind.ALPHA, np.linspace(-1.0, 6.0, 300))
    with pytest.raises(ValueError):
        envelope(PhotonKind.ALPHA, np.linspace(-2.0, 5.0, 300))
    with pytest.raises(ValueError):
        envelope(PhotonKind.ALPHA, MID_GRID, method="dct")


def test_classical_spectrum_closed_form():
    rng = np.random.default_rng(5)
    x = rng.uniform(-30.0, 30.0, 200)
    x = x[np.abs(x) > 1e-3]
    direct = (np.exp(1j * PI * x) - 1.0) / (1j * x)
    assert np.abs(classical_spectrum(x) - direct).max() < 1e-12
    assert classical_spectrum(np.array([0.0]))[0] == pytest.approx(PI, abs=1e-15)


def test_classical_envelope_unit_square():
    env = classical_envelope(MID_GRID)
    inside = (MID_GRID > 1e-9) & (MID_GRID < PI - 1e-9)
    assert np.abs(env.values[inside] - 1.0).max() < 1e-12
    outside = (MID_GRID < -1e-9) | (MID_GRID > PI + 1e-9)
    assert np.abs(env.values[outside]).max() == 0.0


def test_scattering_operator_patterns(table):
    ops = scattering_operators(table)
    # elementary transition matrix of each kind: (final bit, initial bit)
    slots = {
        PhotonKind.BETA: (0, 0),
        PhotonKind.MINUS: (0, 1),
        PhotonKind.PLUS: (1, 0),
        PhotonKind.ALPHA: (1, 1),
    }
    for kind, (r, c) in slots.items():
        m = np.zeros((2, 2))
        m[r, c] = 1.0
        coeff = SQRT2 * np.sqrt(table.norm(kind))
        assert np.abs(HADAMARD @ ops.b[kind] - coeff * m).max() < 1e-12
        assert np.abs(ops.a[kind] @ HADAMARD - coeff * m).max() < 1e-12


def test_scattering_operators_reject_bad_norms(table):
    import dataclasses

    bad = dataclasses.replace(table, norms={**table.norms, PhotonKind.PLUS: 0.0})
    with pytest.raises(ValueError):
        scattering_operators(bad)
    with pytest.raises(ValueError):
        gram_matrix(bad)
