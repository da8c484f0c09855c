"""Command-line interface: tables, pulse design, sweeps and ensemble runs.

Subcommands: jtable, spectrum, design, sweep, ensemble, ee-cnot. Tabular
results go to CSV (deterministic formatting, header row, newline
terminated); --format json wraps results and the resolved configuration in
a single document. Exit status: 0 success, 2 usage error, 3 physics
validity guard, 1 internal error.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .constants import TWO_PI
from .exchange import exchange_table
from .geometry import DEFAULT_GEOMETRY, DeviceGeometry
from .protocols import (EnsembleConfig, ensemble_init, run_ee_cnot,
                        sweep_gate_error)
from .pulses import (DEFAULT_K_ELECTRON, DEFAULT_K_NUCLEAR, GATES,
                     design_gate, displacement_detuning, leading_order_design)
from .spectrum import ValidityError, compute_spectrum
from . import register as reg

PERT_FLAG_THRESHOLD_HZ = 100.0

GEOMETRY_KEYS = ("N0", "gradient_T_per_m", "b_tesla", "m1", "m2")
CONFIG_KEYS = GEOMETRY_KEYS + (
    "gate", "K", "Kn", "chains", "realizations", "law", "seed", "threads",
    "out", "format")


def _mhz(omega: float) -> float:
    return omega / TWO_PI / 1e6


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="donorpair",
        description="Two-donor spin register: spectra, pulse design, gate-error sweeps")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--config", help="JSON file with default option values")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--N0", type=int, default=None, help="nominal site separation")
    common.add_argument("--gradient-T-per-m", type=float, default=None, dest="gradient_T_per_m")
    common.add_argument("--b-tesla", type=float, default=None, dest="b_tesla")
    common.add_argument("--m1", type=int, default=None, help="displacement of atom 1 (sites)")
    common.add_argument("--m2", type=int, default=None, help="displacement of atom 2 (sites)")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), default=None)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("jtable", parents=[common],
                       help="exchange constant versus donor separation")
    p.add_argument("n_min", type=int)
    p.add_argument("n_max", type=int)

    sub.add_parser("spectrum", parents=[common],
                   help="labelled level energies, exact and perturbative")

    p = sub.add_parser("design", parents=[common], help="pulse parameters of one gate")
    p.add_argument("--gate", choices=sorted(GATES), required=True)
    p.add_argument("--K", type=int, default=None)

    p = sub.add_parser("sweep", parents=[common],
                       help="gate error versus displacement for several K")
    p.add_argument("--gate", choices=("a", "b"), required=True)
    p.add_argument("--K", default=None, help="comma-separated K values")
    p.add_argument("--displaced-atom", type=int, choices=(1, 2), default=1)

    p = sub.add_parser("ensemble", parents=[common],
                       help="initialization error over an ensemble of chains")
    p.add_argument("--chains", type=int, default=None)
    p.add_argument("--realizations", type=int, default=None)
    p.add_argument("--law", default=None, help="comma-separated laws from {A,B,none}")
    p.add_argument("--Kn", default=None, help="comma-separated nuclear K values")
    p.add_argument("--K", type=int, default=None, help="electron K")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--threads", type=int, default=None)

    p = sub.add_parser("ee-cnot", parents=[common],
                       help="two-electron CNOT error versus displacement")
    p.add_argument("--K", type=int, default=None)

    return parser


def _load_config_file(path: str | None) -> dict:
    if not path:
        return {}
    data = json.loads(Path(path).read_text())
    unknown = set(data) - set(CONFIG_KEYS)
    if unknown:
        raise ValidityError(f"unknown configuration keys: {sorted(unknown)}")
    return data


def _resolve(args: argparse.Namespace, file_cfg: dict, key: str, default):
    value = getattr(args, key, None)
    if value is not None:
        return value
    if key in file_cfg:
        return file_cfg[key]
    return default


def _geometry(args: argparse.Namespace, file_cfg: dict) -> DeviceGeometry:
    return DeviceGeometry(
        n0=_resolve(args, file_cfg, "N0", DEFAULT_GEOMETRY.n0),
        gradient=_resolve(args, file_cfg, "gradient_T_per_m", DEFAULT_GEOMETRY.gradient),
        mean_field_b=_resolve(args, file_cfg, "b_tesla", DEFAULT_GEOMETRY.mean_field_b),
        m1=_resolve(args, file_cfg, "m1", 0),
        m2=_resolve(args, file_cfg, "m2", 0),
    )


def _emit(rows: list[dict], header: list[str], args, file_cfg, resolved: dict) -> None:
    fmt = _resolve(args, file_cfg, "format", "csv")
    out = _resolve(args, file_cfg, "out", None)
    if out is None:
        outdir = os.environ.get("DONORPAIR_OUTDIR")
        stream = None if not outdir else outdir
    else:
        stream = out
    resolved = dict(resolved, command=args.command, version=__version__)
    if fmt == "json":
        doc = {"config": resolved, "columns": header, "rows": rows}
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        lines = [",".join(header)]
        for row in rows:
            lines.append(",".join(_format_cell(row[h]) for h in header))
        text = "\n".join(lines) + "\n"
        print(f"# config: {json.dumps(resolved, sort_keys=True)}", file=sys.stderr)
    if stream is None:
        sys.stdout.write(text)
    else:
        path = Path(stream)
        if path.is_dir() or str(stream).endswith(os.sep):
            path = path / f"{args.command}.{fmt}"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        print(f"wrote {path}", file=sys.stderr)


def _format_cell(x) -> str:
    if isinstance(x, (float, np.floating)):
        return repr(float(x))  # shortest exactly round-tripping decimal
    if isinstance(x, np.integer):
        return str(int(x))
    return str(x)


def cmd_jtable(args, file_cfg) -> None:
    if args.n_min > args.n_max:
        raise ValidityError("n_min must not exceed n_max")
    rows = [{"N": n, "a_nm": a, "J_MHz": j}
            for n, a, j in exchange_table(args.n_min, args.n_max)]
    _emit(rows, ["N", "a_nm", "J_MHz"], args, file_cfg,
          {"n_min": args.n_min, "n_max": args.n_max})


def cmd_spectrum(args, file_cfg) -> None:
    geometry = _geometry(args, file_cfg)
    spec = compute_spectrum(geometry)
    rows = []
    worst = 0.0
    for i in range(reg.DIM):
        dev_hz = (spec.pert_energies[i] - spec.exact_energies[i]) / TWO_PI
        worst = max(worst, abs(dev_hz))
        rows.append({
            "level": i,
            "ket": reg.ket_label(i),
            "exact_MHz": _mhz(spec.exact_energies[i]),
            "pert_MHz": _mhz(spec.pert_energies[i]),
            "zeroth_MHz": _mhz(spec.zeroth[i]),
            "dev_Hz": dev_hz,
        })
    eps, eps_p, xi = spec.smallness
    resolved = {
        "geometry": dataclasses.asdict(geometry),
        "J_MHz": _mhz(spec.params.j),
        "epsilon": eps, "epsilon_prime": eps_p, "xi": xi,
        "max_pert_dev_Hz": worst,
        "pert_dev_flagged": bool(worst > PERT_FLAG_THRESHOLD_HZ),
    }
    _emit(rows, ["level", "ket", "exact_MHz", "pert_MHz", "zeroth_MHz", "dev_Hz"],
          args, file_cfg, resolved)


def cmd_design(args, file_cfg) -> None:
    geometry = _geometry(args, file_cfg)
    gate = GATES[args.gate]
    default_k = DEFAULT_K_ELECTRON if gate.species == "e" else DEFAULT_K_NUCLEAR
    k = _resolve(args, file_cfg, "K", default_k)
    gate = gate.with_k(k)
    spec0 = compute_spectrum(geometry.displaced(0, 0))
    pulse = design_gate(spec0, gate)
    lead = leading_order_design(gate, geometry.displaced(0, 0))
    p, q = gate.resonant
    pp, qp = gate.suppressed
    delta = ((spec0.exact_energies[qp] - spec0.exact_energies[pp])
             - (spec0.exact_energies[q] - spec0.exact_energies[p]))
    omega = pulse.omega_e if gate.species == "e" else pulse.omega_n
    rows = [{
        "gate": gate.name, "K": k,
        "nu_MHz": _mhz(pulse.nu),
        "Delta_MHz": _mhz(delta),
        "Omega_MHz": _mhz(omega),
        "tau_us": pulse.tau * 1e6,
        "B1_mT": pulse.b1_amplitude * 1e3,
        "nu_leading_MHz": _mhz(lead["nu"]),
        "Delta_leading_MHz": _mhz(lead["delta"]),
    }]
    resolved = {"geometry": dataclasses.asdict(geometry), "gate": args.gate, "K": k}
    if geometry.m1 != 0 or geometry.m2 != 0:
        rows[0]["detuning_shift_kHz"] = displacement_detuning(gate, geometry) / TWO_PI / 1e3
    _emit(rows, list(rows[0].keys()), args, file_cfg, resolved)


def cmd_sweep(args, file_cfg) -> None:
    geometry = _geometry(args, file_cfg)
    default_k = "1,2,3,4" if args.gate == "a" else "700,2000,5000,10000,30000"
    k_raw = _resolve(args, file_cfg, "K", default_k)
    k_list = [int(x) for x in str(k_raw).split(",") if x]
    table = sweep_gate_error(args.gate, range(-4, 5), tuple(k_list),
                             displaced_atom=args.displaced_atom,
                             geometry_nominal=geometry.displaced(0, 0))
    rows = [{"m": m, "K": k, "P": table[(m, k)]}
            for k in k_list for m in range(-4, 5)]
    resolved = {"gate": args.gate, "K": k_list, "displaced_atom": args.displaced_atom}
    _emit(rows, ["m", "K", "P"], args, file_cfg, resolved)


def cmd_ensemble(args, file_cfg) -> None:
    laws = [x for x in str(_resolve(args, file_cfg, "law", "A,B,none")).split(",") if x]
    kns = [int(x) for x in str(_resolve(args, file_cfg, "Kn", "700,2000,5000,10000")).split(",") if x]
    chains = _resolve(args, file_cfg, "chains", 2000)
    realizations = _resolve(args, file_cfg, "realizations", 8)
    seed = _resolve(args, file_cfg, "seed", 0)
    threads = _resolve(args, file_cfg, "threads", os.cpu_count() or 1)
    k_e = _resolve(args, file_cfg, "K", DEFAULT_K_ELECTRON)
    rows = []
    for kn in kns:
        for law in laws:
            config = EnsembleConfig(num_chains=chains, num_realizations=realizations,
                                    law=law, k_e=k_e, k_n=kn, seed=seed, threads=threads)
            result = ensemble_init(config)
            rows.append({"K_n": kn, "law": law,
                         "mean_P": result.mean_error, "stderr": result.stderr})
    resolved = {"chains": chains, "realizations": realizations, "laws": laws,
                "Kn": kns, "K_e": k_e, "seed": seed, "threads": threads}
    _emit(rows, ["K_n", "law", "mean_P", "stderr"], args, file_cfg, resolved)


def cmd_ee_cnot(args, file_cfg) -> None:
    k = _resolve(args, file_cfg, "K", 1)
    rows = []
    for m in range(-4, 5):
        p_e = run_ee_cnot(DEFAULT_GEOMETRY.displaced(m1=m), k_prime=k)
        rows.append({"m": m, "P_e": p_e})
    _emit(rows, ["m", "P_e"], args, file_cfg, {"K_prime": k})


COMMANDS = {
    "jtable": cmd_jtable,
    "spectrum": cmd_spectrum,
    "design": cmd_design,
    "sweep": cmd_sweep,
    "ensemble": cmd_ensemble,
    "ee-cnot": cmd_ee_cnot,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        file_cfg = _load_config_file(args.config)
        COMMANDS[args.command](args, file_cfg)
    except (ValidityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # noqa: BLE001 - top-level guard
        print(f"internal error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
