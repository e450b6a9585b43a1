"""One-photon back-reaction of the driven Walsh-Hadamard gate.

Spectral functions g_k(x) of the dimensionless frequency offset x for the
four qubit transition kinds, their overlap integrals, exact time-domain
emission envelopes on the gate window [0, pi], and the scattering-operator
coefficients used by the decoherent Grover simulation.

Each g_k is (P_k(x) + Q_k(x) e^{i pi x}) / D_k(x) with real polynomials whose
denominator roots (x in {0, +-1}) are all removable.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial, pi, sqrt

import numpy as np
from numpy.polynomial import Polynomial
from scipy.interpolate import CubicSpline
from scipy.special import exp1

SQRT2 = sqrt(2.0)


class ConvergenceError(RuntimeError):
    """Raised when a quadrature cannot meet its requested tolerance."""


class PhotonKind(enum.Enum):
    """Transition kind of the emitted photon during a driven gate."""

    ALPHA = "alpha"  # |1> -> |1>
    BETA = "beta"    # |0> -> |0>
    PLUS = "plus"    # |0> -> |1>
    MINUS = "minus"  # |1> -> |0>


KINDS = (PhotonKind.ALPHA, PhotonKind.BETA, PhotonKind.PLUS, PhotonKind.MINUS)

# (P, Q, D) ascending-coefficient polynomials for g = (P + Q e^{i pi x})/D.
_POLYS: dict[PhotonKind, tuple[Polynomial, Polynomial, Polynomial]] = {
    PhotonKind.ALPHA: (
        Polynomial([-1.0, 1.0 / SQRT2, 2.0]),
        Polynomial([1.0, 1.0 / SQRT2]),
        Polynomial([0.0, -2.0 * SQRT2, 0.0, 2.0 * SQRT2]),
    ),
    PhotonKind.BETA: (
        Polynomial([-1.0, -1.0 / SQRT2]),
        Polynomial([1.0, -1.0 / SQRT2, -2.0]),
        Polynomial([0.0, -2.0 * SQRT2, 0.0, 2.0 * SQRT2]),
    ),
    PhotonKind.PLUS: (
        Polynomial([-1.0]),
        Polynomial([-1.0]),
        Polynomial([-4.0, 0.0, 4.0]),
    ),
    PhotonKind.MINUS: (
        Polynomial([3.0 * SQRT2, 4.0]),
        Polynomial([3.0 * SQRT2, 4.0]),
        Polynomial([-4.0 * SQRT2, 0.0, 4.0 * SQRT2]),
    ),
}

_SERIES_WINDOW = 1e-3  # switch to series evaluation within this distance of a root
_SERIES_TERMS = 8


def _removable_points(kind: PhotonKind) -> tuple[float, ...]:
    _, _, d = _POLYS[kind]
    return tuple(sorted(float(np.real(r)) for r in d.roots()))


_SERIES_CACHE: dict[tuple[PhotonKind, float], tuple[np.ndarray, np.ndarray]] = {}


def _series_tables(kind: PhotonKind, x0: float) -> tuple[np.ndarray, np.ndarray]:
    """Taylor coefficients of numerator and denominator at a removable root x0.

    Both vanish at x0, so the returned arrays start at the first derivative:
    entry k holds f^{(k+1)}(x0)/(k+1)!.
    """
    key = (kind, x0)
    if key in _SERIES_CACHE:
        return _SERIES_CACHE[key]
    p, q, d = _POLYS[kind]
    e0 = np.exp(1j * pi * x0)
    pd = [p.deriv(k)(x0) if k <= p.degree() else 0.0 for k in range(_SERIES_TERMS + 1)]
    qd = [q.deriv(k)(x0) if k <= q.degree() else 0.0 for k in range(_SERIES_TERMS + 1)]
    dd = [d.deriv(k)(x0) if k <= d.degree() else 0.0 for k in range(_SERIES_TERMS + 1)]
    num = np.array(
        [
            (pd[k] + e0 * sum(comb(k, j) * (1j * pi) ** (k - j) * qd[j] for j in range(k + 1)))
            / factorial(k)
            for k in range(1, _SERIES_TERMS + 1)
        ]
    )
    den = np.array([dd[k] / factorial(k) for k in range(1, _SERIES_TERMS + 1)])
    _SERIES_CACHE[key] = (num, den)
    return num, den


def _g_series(kind: PhotonKind, x0: float, h: np.ndarray) -> np.ndarray:
    num, den = _series_tables(kind, x0)
    hp = h[..., None] ** np.arange(_SERIES_TERMS)
    return (hp @ num) / (hp @ den)


def g_samples(kind: PhotonKind, x: np.ndarray) -> np.ndarray:
    """Vectorized g_k(x); series evaluation near the removable points."""
    x = np.asarray(x, dtype=float)
    p, q, d = _POLYS[kind]
    out = np.empty(x.shape, dtype=complex)
    direct = np.ones(x.shape, dtype=bool)
    for x0 in _removable_points(kind):
        near = np.abs(x - x0) < _SERIES_WINDOW
        if near.any():
            out[near] = _g_series(kind, x0, x[near] - x0)
            direct &= ~near
    if direct.any():
        xd = x[direct]
        out[direct] = (p(xd) + np.exp(1j * pi * xd) * q(xd)) / d(xd)
    return out


def g_value(kind: PhotonKind, x: float) -> complex:
    """g_k(x) with the analytic limit at the removable points x in {0, +-1}."""
    if not np.isfinite(x):
        raise ValueError("x must be finite")
    return complex(g_samples(kind, np.array([float(x)]))[0])


# ---------------------------------------------------------------------------
# overlap integrals


@dataclass(frozen=True)
class OverlapTable:
    """Norms I_k and pairwise overlaps I_{k,k'} of the four one-photon states."""

    norms: dict[PhotonKind, float]
    overlaps: dict[tuple[PhotonKind, PhotonKind], complex]
    truncation: float
    tol: float
    est_error: float

    def norm(self, kind: PhotonKind) -> float:
        return self.norms[kind]

    def overlap(self, k1: PhotonKind, k2: PhotonKind) -> complex:
        """I_{k1,k2} = integral of conj(g_{k1}) g_{k2}; Hermitian in (k1, k2)."""
        if k1 == k2:
            return complex(self.norms[k1])
        if (k1, k2) in self.overlaps:
            return self.overlaps[(k1, k2)]
        return np.conj(self.overlaps[(k2, k1)])

    def matrix(self) -> np.ndarray:
        """4x4 overlap matrix in KINDS order (alpha, beta, plus, minus)."""
        return np.array([[self.overlap(k1, k2) for k2 in KINDS] for k1 in KINDS])

    def to_dict(self) -> dict:
        return {
            "truncation": self.truncation,
            "tol": self.tol,
            "est_error": self.est_error,
            "norms": {k.value: self.norms[k] for k in KINDS},
            "overlaps": {
                f"{k1.value}_{k2.value}": {"re": v.real, "im": v.imag}
                for (k1, k2), v in self.overlaps.items()
            },
        }


def _laurent(num: Polynomial, den: Polynomial, terms: int) -> tuple[int, np.ndarray]:
    """Coefficients c_j of num/den = sum_j c_j x^{p-j} for large |x|."""
    nn = num.coef[::-1]
    dd = den.coef[::-1]
    power = (len(nn) - 1) - (len(dd) - 1)
    rem = np.zeros(terms + len(dd))
    rem[: len(nn)] = nn
    c = np.zeros(terms)
    for j in range(terms):
        c[j] = rem[j] / dd[0]
        rem[j : j + len(dd)] -= c[j] * dd
    return power, c


def _oscillatory_tails(x_cut: float, nmax: int) -> np.ndarray:
    """T_m = integral_X^inf x^{-m} e^{i pi x} dx for m = 1..nmax."""
    t = np.zeros(nmax + 1, dtype=complex)
    t[1] = exp1(-1j * pi * x_cut)
    phase = np.exp(1j * pi * x_cut)
    for m in range(2, nmax + 1):
        t[m] = (x_cut ** (1 - m) * phase + 1j * pi * t[m - 1]) / (m - 1)
    return t


def _pair_tail(k1: PhotonKind, k2: PhotonKind, x_cut: float, terms: int = 16) -> tuple[complex, float]:
    """Analytic tail integral of conj(g_{k1}) g_{k2} over |x| > x_cut.

    conj(g_{k1}) g_{k2} = (P1 P2 + Q1 Q2)/(D1 D2) + P1 Q2 e^{i pi x}/(D1 D2)
    + Q1 P2 e^{-i pi x}/(D1 D2) on the real axis; each rational factor is
    expanded in a Laurent series (valid for |x| > 1) and integrated term by
    term.  Returns (tail value, residual estimate from the last series term).
    """
    p1, q1, d1 = _POLYS[k1]
    p2, q2, d2 = _POLYS[k2]
    den = d1 * d2
    # m = j - power can exceed terms by the pole order of the rational factor
    t_osc = _oscillatory_tails(x_cut, terms + 8)
    total = 0.0 + 0.0j
    resid = 0.0
    for num, phase in ((p1 * p2 + q1 * q2, 0), (p1 * q2, +1), (q1 * p2, -1)):
        if num.degree() < 0 or not np.any(num.coef):
            continue
        for side in (+1, -1):  # right tail as-is; left tail via x -> -x
            if side == +1:
                n_side, d_side, ph = num, den, phase
            else:
                n_side = Polynomial(num.coef * (-1.0) ** np.arange(len(num.coef)))
                d_side = Polynomial(den.coef * (-1.0) ** np.arange(len(den.coef)))
                ph = -phase
            power, c = _laurent(n_side, d_side, terms)
            for j, cj in enumerate(c):
                if cj == 0.0:
                    continue
                m = j - power  # term cj * x^{-m}
                if m < 1 or (m < 2 and ph == 0):
                    raise ConvergenceError("tail series has a non-integrable term")
                if ph == 0:
                    term = cj * x_cut ** (1 - m) / (m - 1)
                elif ph == +1:
                    term = cj * t_osc[m]
                else:
                    term = cj * np.conj(t_osc[m])
                total += term
                if j >= terms - 2:
                    resid += abs(term)
    return total, resid


@lru_cache(maxsize=8)
def _panel_rule(x_cut: float, n_nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre nodes and weights on [-x_cut, x_cut].

    Panels are at most two units wide (one oscillation period), so the rule
    converges spectrally in n_nodes for the analytic integrands used here.
    """
    n_panels = max(4, int(np.ceil(x_cut)))
    edges = np.linspace(-x_cut, x_cut, n_panels + 1)
    nodes, weights = np.polynomial.legendre.leggauss(n_nodes)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    xs = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    ws = (half[:, None] * weights[None, :]).ravel()
    return xs, ws


def _pair_core(k1: PhotonKind, k2: PhotonKind, x_cut: float) -> tuple[complex, float]:
    """Quadrature of conj(g_{k1}) g_{k2}) on [-x_cut, x_cut] with error estimate.

    The error estimate is the difference between 16- and 24-node panel rules;
    both are far beyond convergence for these integrands, so the estimate is
    dominated by accumulated rounding.
    """
    vals = []
    for n_nodes in (16, 24):
        xs, ws = _panel_rule(float(x_cut), n_nodes)
        fx = np.conj(g_samples(k1, xs)) * g_samples(k2, xs)
        vals.append(complex(np.sum(fx * ws)))
    return vals[1], abs(vals[1] - vals[0])


def integral_table(truncation: float = 200.0, tol: float = 1e-6) -> OverlapTable:
    """Norms and overlaps of the four one-photon states by quadrature plus tails.

    Panel Gauss-Legendre quadrature on [-truncation, truncation] with analytic
    Laurent tails for the remainder.  Raises ConvergenceError if the residual
    estimate exceeds tol.
    """
    if truncation < 50:
        raise ValueError("truncation must be at least 50")
    if not 0 < tol <= 1e-6:
        raise ValueError("tol must be positive and at most 1e-6")
    norms: dict[PhotonKind, float] = {}
    overlaps: dict[tuple[PhotonKind, PhotonKind], complex] = {}
    worst = 0.0
    for i, k1 in enumerate(KINDS):
        for k2 in KINDS[i:]:
            core, core_err = _pair_core(k1, k2, truncation)
            tail, tail_resid = _pair_tail(k1, k2, truncation)
            est = core_err + tail_resid
            if est > tol:
                raise ConvergenceError(
                    f"overlap ({k1.value},{k2.value}): residual estimate {est:.2e} exceeds tol {tol:.2e}"
                )
            worst = max(worst, est)
            val = core + tail
            if k1 == k2:
                norms[k1] = float(val.real)
            else:
                overlaps[(k1, k2)] = complex(val)
    return OverlapTable(norms=norms, overlaps=overlaps, truncation=float(truncation),
                        tol=float(tol), est_error=worst)


def gram_matrix(table: OverlapTable) -> np.ndarray:
    """Normalized Gram matrix I_{k,k'}/sqrt(I_k I_k') in KINDS order."""
    norms = np.array([table.norm(k) for k in KINDS])
    if np.any(norms <= 0):
        raise ValueError("all norms must be positive")
    return table.matrix() / np.sqrt(np.outer(norms, norms))


# ---------------------------------------------------------------------------
# time-domain envelopes


@dataclass(frozen=True)
class OnePhotonEnvelope:
    """Complex emission envelope sampled on a time grid (gate window [0, pi])."""

    kind: PhotonKind | None  # None marks the classical reference pulse
    times: np.ndarray
    values: np.ndarray


def _residues(kind: PhotonKind) -> list[tuple[float, complex]]:
    p, _, d = _POLYS[kind]
    dp = d.deriv()
    return [(x0, complex(p(x0) / dp(x0))) for x0 in _removable_points(kind)]


def _exact_envelope(kind: PhotonKind, t: np.ndarray) -> np.ndarray:
    """Closed-form inverse transform: sum_j (-i) r_j e^{-i x_j t} on (0, pi).

    r_j is the residue of P_k/D_k at the removable point x_j; the e^{i pi x}
    part of g_k is fixed by removability and carries the same residues, so
    the transform vanishes outside the gate window.  Window edges take the
    Fourier midpoint convention (half value).
    """
    vals = np.zeros(t.shape, dtype=complex)
    for x0, r in _residues(kind):
        vals += -1j * r * np.exp(-1j * x0 * t)
    window = np.where((t > 0.0) & (t < pi), 1.0, 0.0)
    edge = (np.abs(t) < 1e-12) | (np.abs(t - pi) < 1e-12)
    window = np.where(edge, 0.5, window)
    return vals * window


_FFT_POINTS = 4096
_FFT_CUT = 64.0


def _fft_inverse(samples_of_x) -> tuple[np.ndarray, np.ndarray]:
    """Inverse transform (1/2pi) int g(x) e^{-ixt} dx on an FFT grid."""
    m = _FFT_POINTS
    dx = 2.0 * _FFT_CUT / m
    xs = -_FFT_CUT + dx * np.arange(m)
    gx = samples_of_x(xs)
    dt = 2.0 * pi / (m * dx)
    ks = np.arange(m)
    env = (dx / (2.0 * pi)) * np.exp(1j * _FFT_CUT * ks * dt) * np.fft.fft(gx)
    ts = ks * dt
    # fold to [-T/2, T/2)
    half = m // 2
    ts = np.concatenate([ts[half:] - m * dt, ts[:half]])
    env = np.concatenate([env[half:], env[:half]])
    return ts, env


def _fft_envelope(samples_of_x, grid: np.ndarray) -> np.ndarray:
    ts, env = _fft_inverse(samples_of_x)
    re = CubicSpline(ts, env.real)
    im = CubicSpline(ts, env.imag)
    inside = (grid >= ts[0]) & (grid <= ts[-1])
    out = np.zeros(grid.shape, dtype=complex)
    out[inside] = re(grid[inside]) + 1j * im(grid[inside])
    return out


def _check_grid(grid: np.ndarray) -> np.ndarray:
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 256:
        raise ValueError("grid must be a 1-d array with at least 256 points")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("grid must be strictly increasing")
    if grid[0] > -2.0 + 1e-9 or grid[-1] < 6.0 - 1e-9:
        raise ValueError("grid must span at least [-2, 6] gate-time units")
    return grid


def envelope(kind: PhotonKind, grid: np.ndarray, method: str = "exact") -> OnePhotonEnvelope:
    """Time-domain emission envelope of kind k sampled on the grid.

    method="exact" evaluates the closed-form inverse transform; method="fft"
    runs the documented numerical pipeline (4096 samples of g on
    x in [-64, 64], FFT, cubic interpolation onto the grid).
    """
    grid = _check_grid(grid)
    if method == "exact":
        vals = _exact_envelope(kind, grid)
    elif method == "fft":
        vals = _fft_envelope(lambda xs: g_samples(kind, xs), grid)
    else:
        raise ValueError("method must be 'exact' or 'fft'")
    return OnePhotonEnvelope(kind=kind, times=grid, values=vals)


def classical_spectrum(x: np.ndarray) -> np.ndarray:
    """Fourier components of the unit square pulse on [0, pi]: pi e^{i pi x/2} sinc(x/2)."""
    x = np.asarray(x, dtype=float)
    return pi * np.exp(0.5j * pi * x) * np.sinc(x / 2.0)


def classical_envelope(grid: np.ndarray, method: str = "exact") -> OnePhotonEnvelope:
    """Reference square pulse: unit height on (0, pi), midpoint value at the edges."""
    grid = _check_grid(grid)
    if method == "exact":
        vals = np.where((grid > 0.0) & (grid < pi), 1.0 + 0.0j, 0.0j)
        edge = (np.abs(grid) < 1e-12) | (np.abs(grid - pi) < 1e-12)
        vals = np.where(edge, 0.5 + 0.0j, vals)
    elif method == "fft":
        vals = _fft_envelope(classical_spectrum, grid)
    else:
        raise ValueError("method must be 'exact' or 'fft'")
    return OnePhotonEnvelope(kind=None, times=grid, values=vals)


# ---------------------------------------------------------------------------
# scattering operators


@dataclass(frozen=True)
class ScatterOps:
    """Kind-indexed 2x2 coefficient matrices for the two scattering slots.

    Slot B acts on the register before the invert-about-average block, slot A
    after it; entries are +-sqrt(I_k) placed so that removing one ideal
    Hadamard factor leaves the bare transition matrix of each kind.
    """

    a: dict[PhotonKind, np.ndarray]
    b: dict[PhotonKind, np.ndarray]


_A_PATTERNS = {
    PhotonKind.ALPHA: np.array([[0.0, 0.0], [1.0, -1.0]]),
    PhotonKind.BETA: np.array([[1.0, 1.0], [0.0, 0.0]]),
    PhotonKind.PLUS: np.array([[0.0, 0.0], [1.0, 1.0]]),
    PhotonKind.MINUS: np.array([[1.0, -1.0], [0.0, 0.0]]),
}

_B_PATTERNS = {
    PhotonKind.ALPHA: np.array([[0.0, 1.0], [0.0, -1.0]]),
    PhotonKind.BETA: np.array([[1.0, 0.0], [1.0, 0.0]]),
    PhotonKind.PLUS: np.array([[1.0, 0.0], [-1.0, 0.0]]),
    PhotonKind.MINUS: np.array([[0.0, 1.0], [0.0, 1.0]]),
}


def scattering_operators(table: OverlapTable) -> ScatterOps:
    """Build the slot-A and slot-B coefficient matrices from the overlap norms."""
    for k in KINDS:
        if table.norm(k) <= 0:
            raise ValueError("all norms must be positive")
    a = {k: sqrt(table.norm(k)) * _A_PATTERNS[k] for k in KINDS}
    b = {k: sqrt(table.norm(k)) * _B_PATTERNS[k] for k in KINDS}
    return ScatterOps(a=a, b=b)
