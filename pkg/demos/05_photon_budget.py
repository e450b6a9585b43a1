"""Photon budgets: how many qubits a classical drive can serve coherently.

Each gate scatters a fraction ~ K 2^(K/2) / N_ph of a run's probability out
of the vacuum, so a platform's photons per pulse cap the register size.  The
demo prints the photon budget of three hardware presets, the qubit ceiling
each supports at unit scatter threshold, and how an NMR-style ensemble
(many molecules sharing one drive) pays for its photon richness.
"""
from pathlib import Path

import numpy as np

from drivenqc import targets
from drivenqc.photon_budget import (
    PRESETS,
    budget_report,
    decoherence_probability,
    max_qubits,
    photons_per_pulse,
    with_ensemble,
)

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None


def main() -> None:
    print(f"{'platform':<8} {'photons/pulse':>14} {'reference':>10} {'max qubits':>11}")
    for name in sorted(PRESETS):
        preset = PRESETS[name]
        report = budget_report(preset)
        print(f"{name:<8} {photons_per_pulse(preset):>14.3e} "
              f"{targets.PHOTON_COUNTS[name]:>10.0e} {report.max_qubits:>11}")

    print("\nscatter probability grows as K 2^(K/2), so ceilings move slowly:")
    n_ph = photons_per_pulse(PRESETS["be_ion"])
    for k in (60, 70, 72, 73, 80):
        p = decoherence_probability(k, n_ph)
        note = " <- beyond first order" if p > 1 else ""
        print(f"  be_ion, K={k:<3} p = {p:10.4e}{note}")

    ensemble = 1e17
    nmr = with_ensemble(PRESETS["nmr"], ensemble)
    print(f"\nan NMR ensemble of {ensemble:.0e} molecules divides the photon pool:")
    print(f"  single copy ceiling {max_qubits(photons_per_pulse(PRESETS['nmr'])):>4}")
    print(f"  ensemble ceiling    {budget_report(nmr).max_qubits:>4}  "
          f"(reference {targets.CEILING_CASES[2][2]})")

    if plt is None:
        print("\nmatplotlib not installed; skipping figure")
        return
    ks = np.arange(2, 160)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for name in sorted(PRESETS):
        n = photons_per_pulse(PRESETS[name])
        ax.semilogy(ks, [decoherence_probability(int(k), n) for k in ks], label=name)
    ax.semilogy(ks, [decoherence_probability(int(k), photons_per_pulse(nmr), ensemble)
                     for k in ks], "--", label=f"nmr x {ensemble:.0e}")
    ax.axhline(1.0, color="gray", lw=0.8, ls=":")
    ax.set_xlabel("register size K")
    ax.set_ylabel("scattered probability per run")
    ax.set_title("photon budgets and qubit ceilings (dotted line: threshold)")
    ax.legend(fontsize=8)
    fig.tight_layout()
    out = Path(__file__).with_name("fig_photon_budget.png")
    fig.savefig(out, dpi=120)
    print(f"\nwrote {out}")


if __name__ == "__main__":
    main()
