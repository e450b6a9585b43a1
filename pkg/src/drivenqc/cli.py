"""Deterministic command-line front end.

One subcommand per capability, each writing fixed-name artifacts into --out.
Identical inputs produce byte-identical files: no timestamps, sorted JSON
keys, fixed float formatting.  Exit codes: 0 success, 1 invalid input,
2 numerical non-convergence.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace

import numpy as np

from . import targets
from .backreaction import (
    KINDS,
    ConvergenceError,
    PhotonKind,
    classical_envelope,
    envelope,
    g_samples,
    integral_table,
)
from .cnot_sim import TRACKED_TRANSITIONS, calibrate_pulse, dyson_first_order, transfer_amplitude
from .grover_sim import GroverConfig, closed_form_scatter, decoherent_run, ideal_run
from .photon_budget import PRESETS, budget_report, load_presets, with_ensemble

ENVELOPE_GRID = (-2.0, 6.0, 1024)
CNOT_GRID = (-2.0, 1.0, 6001)
CNOT_DRIVE = {"omega1": 20.0, "omega2": 21.0, "coupling": 0.4, "rabi": 0.01}


class _Parser(argparse.ArgumentParser):
    """argparse parser that exits with status 1 on usage errors."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# deterministic serialization


def _pyval(value):
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, np.ndarray):
        return [_pyval(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {str(k): _pyval(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_pyval(v) for v in value]
    return value


def _write_json(path: str, payload: dict) -> None:
    text = json.dumps(_pyval(payload), sort_keys=True, indent=2)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text + "\n")


def _write_csv(path: str, header: list[str], columns: list[np.ndarray]) -> None:
    rows = len(columns[0])
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for i in range(rows):
            fh.write(",".join(format(float(col[i]), ".12g") for col in columns) + "\n")


def _out_path(args, name: str) -> str:
    os.makedirs(args.out, exist_ok=True)
    return os.path.join(args.out, name)


# ---------------------------------------------------------------------------
# config file: flat key = value lines, flags win


def _load_config(path: str) -> dict[str, str]:
    config: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            if "=" not in text:
                raise ValueError(f"config line {lineno}: expected 'key = value', got {text!r}")
            key, value = (part.strip() for part in text.split("=", 1))
            config[key] = value
    return config


_CONFIG_KEYS = {
    "integrals": {"truncation", "tol", "out", "format"},
    "envelopes": {"out", "format"},
    "grover": {"k", "y", "epsilon", "iterations", "truncation", "tol", "out", "format"},
    "grover-scaling": {"k", "epsilon", "truncation", "tol", "out", "format"},
    "cnot": {"out", "format"},
    "budget": {"preset", "presets", "ensemble", "threshold", "k", "out", "format"},
}

_CASTS = {
    "k": int, "y": int, "iterations": int,
    "epsilon": float, "tol": float, "truncation": float,
    "threshold": float, "ensemble": float,
    "preset": str, "presets": str, "out": str, "format": str,
}


def _apply_config(args: argparse.Namespace) -> None:
    """Fill unset flags from the config file; reject keys the subcommand lacks."""
    if not args.config:
        return
    allowed = _CONFIG_KEYS[args.command]
    for key, raw in _load_config(args.config).items():
        if key not in allowed:
            raise ValueError(f"unknown config key '{key}' for subcommand {args.command}")
        if getattr(args, key) is None:
            try:
                setattr(args, key, _CASTS[key](raw))
            except ValueError:
                raise ValueError(f"invalid config value for '{key}': {raw!r}") from None


def _defaults(args: argparse.Namespace, **values) -> None:
    for name, value in values.items():
        if getattr(args, name) is None:
            setattr(args, name, value)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_integrals(args) -> int:
    _defaults(args, truncation=200.0, tol=1e-6, format="json")
    if args.format != "json":
        raise ValueError("integrals supports only --format json")
    table = integral_table(truncation=args.truncation, tol=args.tol)
    payload = table.to_dict()

    norm_checks = {}
    all_passed = True
    for kind, target in targets.OVERLAP_NORMS.items():
        value = table.norm(kind)
        rel = abs(value - target) / target
        passed = rel <= targets.NORM_RTOL
        all_passed &= passed
        norm_checks[kind.value] = {"value": value, "target": target,
                                   "rel_error": rel, "rtol": targets.NORM_RTOL,
                                   "passed": passed}
    cross_checks = {}
    for (k1, k2), target in targets.OVERLAP_CROSS.items():
        value = table.overlap(k1, k2)
        err = max(abs(value.real - target.real), abs(value.imag - target.imag))
        passed = err <= targets.CROSS_ATOL
        all_passed &= passed
        cross_checks[f"{k1.value}_{k2.value}"] = {
            "re": value.real, "im": value.imag,
            "target_re": target.real, "target_im": target.imag,
            "max_component_error": err, "atol": targets.CROSS_ATOL, "passed": passed,
        }

    xs = np.concatenate([np.linspace(-40.0, 40.0, 2001),
                         np.random.default_rng(0).uniform(-40.0, 40.0, 1000)])
    ga, gb = g_samples(PhotonKind.ALPHA, xs), g_samples(PhotonKind.BETA, xs)
    gp, gm = g_samples(PhotonKind.PLUS, xs), g_samples(PhotonKind.MINUS, xs)
    identities = {
        "beta_from_alpha": float(np.abs(gb + np.exp(1j * np.pi * xs) * np.conj(ga)).max()),
        "minus_from_plus": float(np.abs(gm + (4.0 * xs + 3.0 * np.sqrt(2.0)) / np.sqrt(2.0) * gp).max()),
    }

    payload.update({
        "norm_checks": norm_checks,
        "overlap_checks": cross_checks,
        "identity_residuals": identities,
        "all_passed": bool(all_passed),
    })
    path = _out_path(args, "integrals.json")
    _write_json(path, payload)
    print(f"integrals: wrote {path}")
    print(f"integrals: reference comparisons {'passed' if all_passed else 'FAILED'}")
    return 0


def _cmd_envelopes(args) -> int:
    _defaults(args, format="csv")
    grid = np.linspace(*ENVELOPE_GRID)
    series: list[tuple[str, np.ndarray]] = []
    for kind in KINDS:
        series.append((kind.value, envelope(kind, grid).values))
    series.append(("classical", classical_envelope(grid).values))

    if args.format == "json":
        payload = {"times": grid}
        for name, values in series:
            payload[name] = {"re": values.real, "im": values.imag}
        path = _out_path(args, "envelopes.json")
        _write_json(path, payload)
    else:
        header = ["t"]
        columns = [grid]
        for name, values in series:
            header += [f"re_{name}", f"im_{name}", f"abs_{name}"]
            columns += [values.real, values.imag, np.abs(values)]
        path = _out_path(args, "envelopes.csv")
        _write_csv(path, header, columns)
    print(f"envelopes: wrote {path}")

    table = integral_table()
    for kind in KINDS:
        values = next(v for n, v in series if n == kind.value)
        measured = float(np.trapezoid(np.abs(values) ** 2, grid))
        expected = table.norm(kind) / (2.0 * np.pi)
        print(f"envelopes: parseval {kind.value}: {measured:.6f} vs {expected:.6f} "
              f"(rel {abs(measured - expected) / expected:.2e})")
    return 0


def _grover_config(args) -> GroverConfig:
    return GroverConfig(k=args.k, marked=args.y, iterations=args.iterations,
                        epsilon=args.epsilon)


def _cmd_grover(args) -> int:
    _defaults(args, k=3, y=2, epsilon=0.0, truncation=200.0, tol=1e-6, format="json")
    if args.format != "json":
        raise ValueError("grover supports only --format json")
    cfg = _grover_config(args)
    run = ideal_run(cfg)
    trajectory = [
        {"iteration": i, "a_y": float(a), "success": float(s)}
        for i, (a, s) in enumerate(zip(run.a_y, run.success))
    ]
    if cfg.epsilon > 0:
        table = integral_table(truncation=args.truncation, tol=args.tol)
        state, report = decoherent_run(cfg, table)
        payload = report.to_dict()
        payload["vacuum_probability"] = state.vacuum_probability
        payload["total_probability"] = state.total_probability()
        doubled = decoherent_run(replace(cfg, epsilon=2.0 * cfg.epsilon), table)[1]
        payload["scatter_ratio_on_epsilon_doubling"] = doubled.total_scatter / report.total_scatter
        summary = (f"grover: total_scatter={report.total_scatter:.6e} "
                   f"success_decoherent={report.success_decoherent:.6f}")
    else:
        payload = {
            "K": cfg.k, "y": cfg.marked, "epsilon": 0.0, "N": cfg.resolved_iterations(),
            "total_scatter": 0.0, "success_ideal": float(run.success[-1]),
            "success_decoherent": None, "per_step": [],
        }
        summary = f"grover: ideal success={run.success[-1]:.6f} after {cfg.resolved_iterations()} iterations"
    payload["trajectory"] = trajectory
    path = _out_path(args, "grover_report.json")
    _write_json(path, payload)
    print(f"grover: wrote {path}")
    print(summary)
    return 0


def _cmd_grover_scaling(args) -> int:
    _defaults(args, k=8, epsilon=1e-3, truncation=200.0, tol=1e-6, format="csv")
    if args.k < 2:
        raise ValueError("k must be at least 2 for the scaling sweep")
    if args.epsilon <= 0:
        raise ValueError("epsilon must be positive for the scaling sweep")
    table = integral_table(truncation=args.truncation, tol=args.tol)
    rows = []
    for k in range(2, args.k + 1):
        cfg = GroverConfig(k=k, marked=2**k - 1, epsilon=args.epsilon)
        sim = decoherent_run(cfg, table)[1]
        closed = closed_form_scatter(cfg, table)
        asym = closed_form_scatter(cfg, table, mode="asymptotic")
        rows.append({
            "k": k, "y": cfg.marked, "iterations": sim.iterations,
            "total_sim": sim.total_scatter,
            "total_closed_form": closed.total_scatter,
            "rel_difference": abs(sim.total_scatter - closed.total_scatter) / closed.total_scatter,
            "total_asymptotic": asym.total_scatter,
            "asymptotic_over_closed": asym.total_scatter / closed.total_scatter,
        })
    header = list(rows[0].keys())
    if args.format == "json":
        path = _out_path(args, "grover_scaling.json")
        _write_json(path, {"epsilon": args.epsilon, "rows": rows})
    else:
        path = _out_path(args, "grover_scaling.csv")
        _write_csv(path, header, [np.array([r[h] for r in rows], dtype=float) for h in header])
    coeffs = closed_form_scatter(
        GroverConfig(k=args.k, marked=2**args.k - 1, epsilon=args.epsilon),
        table, mode="asymptotic",
    ).extras
    print(f"grover-scaling: wrote {path}")
    print("grover-scaling: asymptotic coefficients recomputed "
          f"({coeffs['asymptotic_coefficients'][0]:.4f}, {coeffs['asymptotic_coefficients'][1]:.4f}) "
          f"vs reference ({coeffs['reference_coefficients'][0]}, {coeffs['reference_coefficients'][1]})")
    return 0


def _cmd_cnot(args) -> int:
    _defaults(args, format="csv")
    params = calibrate_pulse(**CNOT_DRIVE)
    amplitude = transfer_amplitude(params)
    reference = targets.CNOT_REFERENCE
    transfer = {
        "calibrated": {
            "center_frequency": params.center_frequency,
            "duration": params.duration,
            "amplitude": amplitude,
            "probability": amplitude**2,
        },
        "reference": reference,
        "amplitude_at_reference_duration": transfer_amplitude(params, reference["duration"]),
    }
    tpath = _out_path(args, "cnot_transfer.json")
    _write_json(tpath, transfer)

    grid = np.linspace(*CNOT_GRID)
    spectrum = dyson_first_order(params, grid)
    doubled = dyson_first_order(replace(params, duration=2.0 * params.duration), grid)
    header = ["offset"]
    columns = [grid]
    for initial, final in TRACKED_TRANSITIONS:
        values = spectrum.element(initial, final)
        header += [f"re_{initial}_to_{final}", f"im_{initial}_to_{final}", f"abs_{initial}_to_{final}"]
        columns += [values.real, values.imag, np.abs(values)]
    if args.format == "json":
        payload = {"offsets": grid}
        for initial, final in TRACKED_TRANSITIONS:
            values = spectrum.element(initial, final)
            payload[f"{initial}_to_{final}"] = {"re": values.real, "im": values.imag}
        spath = _out_path(args, "cnot_spectrum.json")
        _write_json(spath, payload)
    else:
        spath = _out_path(args, "cnot_spectrum.csv")
        _write_csv(spath, header, columns)

    peak = float(np.abs(spectrum.element("01", "00")).max())
    ratio = float(np.abs(doubled.element("01", "00")).max()) / peak
    print(f"cnot: wrote {tpath}")
    print(f"cnot: wrote {spath}")
    print(f"cnot: calibrated duration={params.duration:.4f} amplitude={amplitude:.6f} "
          f"(reference duration={reference['duration']} "
          f"probability={reference['transfer_probability']})")
    print(f"cnot: dominant 01->00 peak {peak:.4f}; doubling duration scales peak by {ratio:.6f}")
    return 0


def _cmd_budget(args) -> int:
    _defaults(args, threshold=1.0, format="json")
    presets = dict(PRESETS)
    if args.presets:
        presets.update(load_presets(args.presets))
    if args.preset is not None:
        if args.preset not in presets:
            raise ValueError(f"unknown preset '{args.preset}' (choose from {', '.join(sorted(presets))})")
        selected = [presets[args.preset]]
    else:
        selected = [presets[name] for name in sorted(presets)]
    if args.ensemble is not None:
        selected = [with_ensemble(p, args.ensemble) for p in selected]
    reports = [budget_report(p, threshold=args.threshold, k=args.k) for p in selected]

    if args.format == "csv":
        path = _out_path(args, "budget.csv")
        header = ["preset", "photons_per_pulse", "ensemble", "threshold",
                  "max_qubits", "k", "probability", "regime_breakdown"]
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(",".join(header) + "\n")
            for r in reports:
                fh.write(",".join([
                    r.preset.name, format(r.photons, ".12g"), format(r.preset.ensemble, ".12g"),
                    format(r.threshold, ".12g"), str(r.max_qubits), str(r.k),
                    format(r.probability, ".12g"), str(int(r.regime_breakdown)),
                ]) + "\n")
    else:
        path = _out_path(args, "budget.json")
        _write_json(path, {"reports": [r.to_dict() for r in reports]})
    print(f"budget: wrote {path}")
    print(f"budget: {'preset':>8} {'photons':>12} {'ensemble':>10} {'max_qubits':>10} {'p(k)':>12}")
    for r in reports:
        flag = " [p > 1: beyond first order]" if r.regime_breakdown else ""
        print(f"budget: {r.preset.name:>8} {r.photons:>12.3e} {r.preset.ensemble:>10.3g} "
              f"{r.max_qubits:>10d} {r.probability:>12.4e}{flag}")
    return 0


# ---------------------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(prog="drivenqc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: _Parser) -> None:
        p.add_argument("--out", default=".", help="output directory (default: current)")
        p.add_argument("--format", choices=("csv", "json"), default=None)
        p.add_argument("--config", default=None, help="flat key=value config file; flags win")

    p = sub.add_parser("integrals", help="overlap-integral table vs reference values")
    p.add_argument("--truncation", type=float, default=None)
    p.add_argument("--tol", type=float, default=None)
    common(p)

    p = sub.add_parser("envelopes", help="time-domain emission envelopes, four kinds + classical")
    common(p)

    p = sub.add_parser("grover", help="one Grover run, ideal or decoherent")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--y", type=int, default=None)
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--iterations", type=int, default=None)
    p.add_argument("--truncation", type=float, default=None)
    p.add_argument("--tol", type=float, default=None)
    common(p)

    p = sub.add_parser("grover-scaling", help="branch sim vs closed form over a K sweep")
    p.add_argument("--k", type=int, default=None, help="largest K in the sweep")
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--truncation", type=float, default=None)
    p.add_argument("--tol", type=float, default=None)
    common(p)

    p = sub.add_parser("cnot", help="two-qubit pulse calibration and emission spectrum")
    common(p)

    p = sub.add_parser("budget", help="photon counts and qubit ceilings per platform")
    p.add_argument("--preset", default=None)
    p.add_argument("--presets", default=None, help="extra presets from a name.field = value file")
    p.add_argument("--ensemble", type=float, default=None)
    p.add_argument("--threshold", type=float, default=None)
    p.add_argument("--k", type=int, default=None, help="quote the probability at this K")
    common(p)

    return parser


_COMMANDS = {
    "integrals": _cmd_integrals,
    "envelopes": _cmd_envelopes,
    "grover": _cmd_grover,
    "grover-scaling": _cmd_grover_scaling,
    "cnot": _cmd_cnot,
    "budget": _cmd_budget,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args)
        return _COMMANDS[args.command](args)
    except ConvergenceError as exc:
        print(f"drivenqc {args.command}: did not converge: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"drivenqc {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
