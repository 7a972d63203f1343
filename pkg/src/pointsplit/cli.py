"""Batch experiment runner: verify | anomaly | vacuum | kernel | derive.

Every subcommand resolves a RunConfig (defaults < config file < flags),
runs pure computations, and emits a self-describing report: a single JSON
object {config, checks, tables} or one flat CSV per table.  Identical
configs produce byte-identical reports; there are no timestamps and all
orderings are fixed.

Exit codes: 0 all checks passed, 1 a check failed, 2 usage/config error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

from .anomaly import (
    AnomalyReport,
    damped_kernel_integral,
    double_commutator_direct,
    double_commutator_spectral,
    finite_difference_limit,
    kernel_asymptote,
    split_commutator_integral,
    split_vev_kernel,
)
from .checks import run_verify_suite
from .fock import n_slots_for
from .groundstate import (
    ENUMERATION_MAX_SLOTS,
    ground_state_bruteforce,
    redefined_vacuum,
    redefined_vacuum_energy,
    split_spectrum,
)
from .lattice import LatticeConfig
from .modeops import apply_operator, split_hamiltonian
from .fock import inner
from .symbolic import formal_smeared_commutator, format_expr
from .trigpoly import TrigPoly


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    mass: float = 1.0
    delta_p: float = 1.0
    n_max: int = 2
    eps: list[float] = field(default_factory=lambda: [0.3])
    f_harmonics: list[tuple[int, float, float]] = field(default_factory=list)
    eta: float | None = None
    cutoff: float | None = None
    format: str = "json"
    out: str | None = None

    def lattice(self) -> LatticeConfig:
        try:
            return LatticeConfig(self.mass, self.delta_p, self.n_max)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def smearing(self, required: bool) -> TrigPoly | None:
        if not self.f_harmonics:
            if required:
                raise ConfigError("this command needs a smearing function; pass --f-harmonic n:re:im")
            return None
        cfg = self.lattice()
        try:
            f = TrigPoly.from_harmonics(cfg.box_length, self.f_harmonics)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if f.max_harmonic > 2 * self.n_max:
            raise ConfigError(
                f"harmonic {f.max_harmonic} out of range for n_max={self.n_max} (limit {2 * self.n_max})"
            )
        return f

    def to_dict(self) -> dict:
        # the output path is emission plumbing, not part of the computation,
        # so it is left out of the echoed config to keep reports byte-stable
        return {
            "mass": self.mass,
            "delta_p": self.delta_p,
            "n_max": self.n_max,
            "eps": list(self.eps),
            "f_harmonics": [list(h) for h in self.f_harmonics],
            "eta": self.eta,
            "cutoff": self.cutoff,
            "format": self.format,
        }


def _parse_harmonic(text: str) -> tuple[int, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected n:re:im, got {text!r}")
    try:
        return int(parts[0]), float(parts[1]), float(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad harmonic {text!r}: {exc}") from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pointsplit",
        description="Exact workbench for point-split commutators of a 1+1D fermion field.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("verify", "run the identity suites (anticommutators, spinors, continuity, split continuity)"),
        ("anomaly", "formal-vs-exact juxtaposition for a smearing function"),
        ("vacuum", "split-Hamiltonian spectrum, negative set and redefined vacuum"),
        ("kernel", "small-separation asymptotics of the split vacuum kernel"),
        ("derive", "print the formal rewriting transcript"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="JSON file with the same keys as the flags")
        p.add_argument("--mass", type=float, default=None)
        p.add_argument("--delta-p", type=float, default=None, dest="delta_p")
        p.add_argument("--n-max", type=int, default=None, dest="n_max")
        p.add_argument("--eps", type=float, action="append", default=None, help="repeatable")
        p.add_argument(
            "--f-harmonic",
            type=_parse_harmonic,
            action="append",
            default=None,
            dest="f_harmonics",
            help="smearing harmonic n:re:im (n >= 0, mirrored to -n); repeatable",
        )
        p.add_argument("--eta", type=float, default=None)
        p.add_argument("--cutoff", type=float, default=None)
        p.add_argument("--format", choices=["json", "csv"], default=None)
        p.add_argument("--out", default=None)
        if name == "verify":
            p.add_argument("--corrupt-sign-hook", action="store_true", help=argparse.SUPPRESS)
    return parser


def _load_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                raw = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        allowed = {"mass", "delta_p", "n_max", "eps", "f_harmonics", "eta", "cutoff", "format", "out"}
        unknown = set(raw) - allowed
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        for key, value in raw.items():
            if key == "f_harmonics":
                value = [(int(n), float(re), float(im)) for n, re, im in value]
            if key == "eps":
                value = [float(x) for x in value]
            setattr(cfg, key, value)
    for key in ("mass", "delta_p", "n_max", "eps", "f_harmonics", "eta", "cutoff", "format", "out"):
        value = getattr(args, key, None)
        if value is not None:
            setattr(cfg, key, value)
    if not isinstance(cfg.n_max, int) or cfg.n_max < 1:
        raise ConfigError(f"n_max must be a positive integer, got {cfg.n_max}")
    if not cfg.mass > 0:
        raise ConfigError(f"mass must be positive, got {cfg.mass}")
    if not cfg.delta_p > 0:
        raise ConfigError(f"delta_p must be positive, got {cfg.delta_p}")
    if cfg.format not in ("json", "csv"):
        raise ConfigError(f"format must be json or csv, got {cfg.format}")
    cfg.lattice()
    cfg.smearing(required=False)
    return cfg


# -- emission ---------------------------------------------------------------

_COLUMNS = {
    "checks": ["name", "passed", "residual", "tolerance", "detail"],
    "summary": ["quantity", "value"],
    "pointsplit": ["eps", "value", "positive"],
    "kernel": ["g", "kernel_imag"],
    "kernel_asymptote": ["eps", "eta", "cutoff", "damped", "extrapolated", "eps_times_extrapolated"],
    "continuum": ["eps", "finite_difference", "limit", "abs_error"],
    "spectrum": ["eps", "j", "p", "energy", "split_energy", "negative", "zero"],
    "ground_state": ["quantity", "value"],
    "derivation": ["pipeline", "step", "expression"],
}


def _emit(report: dict, config: RunConfig, stream) -> None:
    if config.format == "json":
        text = json.dumps(report, sort_keys=True, indent=2) + "\n"
        if config.out:
            with open(config.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            stream.write(text)
        return
    lines: list[str] = []
    for name in sorted(report.get("tables", {})):
        rows = report["tables"][name]
        cols = _COLUMNS.get(name)
        if cols is None:
            cols = sorted(rows[0]) if rows else []
        lines.append(f"# table: {name}")
        lines.append(",".join(cols))
        for row in rows:
            lines.append(",".join(_csv_cell(row.get(c)) for c in cols))
        lines.append("")
    text = "\n".join(lines)
    if config.out:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stream.write(text)


def _csv_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ""
    text = str(value)
    if any(ch in text for ch in ",\"\n"):
        text = '"' + text.replace('"', '""') + '"'
    return text


# -- subcommands --------------------------------------------------------------


def cmd_verify(config: RunConfig, corrupt_sign: bool = False, stream=None) -> int:
    stream = stream or sys.stdout
    lattice = config.lattice()
    f = config.smearing(required=False) or TrigPoly.from_harmonics(lattice.box_length, [(1, 0.5, 0.0)])
    results = run_verify_suite(lattice, config.eps, f=f, corrupt_sign=corrupt_sign)
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        stream.write(f"{status} {res.name} max_residual={res.residual:.3e} tol={res.tolerance:.1e}\n")
    report = {
        "config": config.to_dict(),
        "checks": [r.to_dict() for r in results],
        "tables": {"checks": [r.to_dict() for r in results]},
    }
    if config.out:  # stdout already carries the human-readable lines
        _emit(report, config, stream)
    return 0 if all(r.passed for r in results) else 1


def cmd_anomaly(config: RunConfig, stream=None) -> int:
    stream = stream or sys.stdout
    lattice = config.lattice()
    f = config.smearing(required=True)
    transcript_steps: list = []
    formal = formal_smeared_commutator(split=False, record=transcript_steps)
    direct = double_commutator_direct(f, lattice)
    spectral = double_commutator_spectral(f, lattice)
    pointsplit_rows = []
    kernel_rows = []
    continuum_rows = []
    for eps in sorted(config.eps):
        value = split_commutator_integral(f, eps, lattice)
        pointsplit_rows.append({"eps": eps, "value": value, "positive": value > 0})
        for g in (eps, -eps):
            kernel_rows.append({"g": g, "kernel_imag": split_vev_kernel(g, lattice).imag})
        if eps != 0:
            fd, limit = finite_difference_limit(f, eps)
            continuum_rows.append(
                {"eps": eps, "finite_difference": fd, "limit": limit, "abs_error": abs(fd - limit)}
            )
    kernel_rows.sort(key=lambda row: row["g"])
    report_obj = AnomalyReport(
        config=config.to_dict(),
        exact_direct=direct,
        exact_spectral=spectral,
        formal_zero=formal.is_zero(),
        formal_transcript=format_expr(formal),
        pointsplit=pointsplit_rows,
        kernel=kernel_rows,
        continuum=continuum_rows,
    )
    report = report_obj.to_dict()
    report["tables"]["summary"] = [
        {"quantity": "exact_direct", "value": direct},
        {"quantity": "exact_spectral", "value": spectral},
        {"quantity": "formal_zero", "value": formal.is_zero()},
    ]
    _emit(report, config, stream)
    return 0 if formal.is_zero() else 1


def cmd_vacuum(config: RunConfig, stream=None) -> int:
    stream = stream or sys.stdout
    lattice = config.lattice()
    failed = False
    spectrum_rows = []
    ground_rows = []
    for eps in sorted(config.eps):
        spec = split_spectrum(eps, lattice)
        if lattice.cutoff * abs(eps) <= math.pi / 2:
            stream.write(
                f"WARNING eps={eps}: cutoff*|eps| = {lattice.cutoff * abs(eps):.3f} <= pi/2; "
                "no mode can reach a negative split energy at this cutoff\n"
            )
        zero_set = set(spec.zero_modes)
        neg_set = set(spec.negative_modes)
        for j, p, energy, split_energy in spec.entries:
            spectrum_rows.append(
                {
                    "eps": eps,
                    "j": j,
                    "p": p,
                    "energy": energy,
                    "split_energy": split_energy,
                    "negative": j in neg_set,
                    "zero": j in zero_set,
                }
            )
        additive = redefined_vacuum_energy(eps, lattice)
        state = redefined_vacuum(eps, lattice)
        h = split_hamiltonian(lattice, eps)
        via_ops = inner(state, apply_operator(h, state)).real
        ground_rows.append({"quantity": f"redefined_vacuum_energy[eps={eps!r}]", "value": additive})
        ground_rows.append({"quantity": f"redefined_vacuum_energy_operator[eps={eps!r}]", "value": via_ops})
        if n_slots_for(lattice.n_max) <= ENUMERATION_MAX_SLOTS:
            rep = ground_state_bruteforce(eps, lattice)
            ground_rows.append({"quantity": f"bruteforce_minimum[eps={eps!r}]", "value": rep.energy})
            ground_rows.append({"quantity": f"bruteforce_degeneracy[eps={eps!r}]", "value": rep.degeneracy})
            ground_rows.append(
                {
                    "quantity": f"bruteforce_matches_redefined_vacuum[eps={eps!r}]",
                    "value": rep.matches_redefined_vacuum,
                }
            )
            if abs(rep.energy - additive) > 1e-10 * max(1.0, abs(additive)):
                failed = True
        else:
            ground_rows.append({"quantity": f"bruteforce_skipped[eps={eps!r}]", "value": "enumeration bound"})
    report = {
        "config": config.to_dict(),
        "tables": {"spectrum": spectrum_rows, "ground_state": ground_rows},
    }
    _emit(report, config, stream)
    return 1 if failed else 0


def cmd_kernel(config: RunConfig, stream=None) -> int:
    stream = stream or sys.stdout
    lattice = config.lattice()
    rows = []
    for eps in sorted(config.eps):
        if eps <= 0:
            raise ConfigError(f"kernel asymptote needs eps > 0, got {eps}")
        eta = config.eta if config.eta is not None else eps * eps
        cutoff = config.cutoff if config.cutoff is not None else max(1e4, 100.0 / eps)
        damped = damped_kernel_integral(eps, eta, cutoff, lattice.mass)
        extrapolated = kernel_asymptote(eps, eta, cutoff, lattice.mass)
        rows.append(
            {
                "eps": eps,
                "eta": eta,
                "cutoff": cutoff,
                "damped": damped,
                "extrapolated": extrapolated,
                "eps_times_extrapolated": eps * extrapolated,
            }
        )
    report = {"config": config.to_dict(), "tables": {"kernel_asymptote": rows}}
    _emit(report, config, stream)
    return 0


def cmd_derive(config: RunConfig, stream=None) -> int:
    stream = stream or sys.stdout
    rows = []
    for label, split in (("coincident", False), ("split", True)):
        steps: list = []
        final = formal_smeared_commutator(split=split, record=steps)
        for step_name, text in steps:
            rows.append({"pipeline": label, "step": step_name, "expression": text})
        rows.append({"pipeline": label, "step": "final", "expression": format_expr(final)})
    report = {"config": config.to_dict(), "tables": {"derivation": rows}}
    _emit(report, config, stream)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args)
        if args.command == "verify":
            return cmd_verify(config, corrupt_sign=getattr(args, "corrupt_sign_hook", False))
        if args.command == "anomaly":
            return cmd_anomaly(config)
        if args.command == "vacuum":
            return cmd_vacuum(config)
        if args.command == "kernel":
            return cmd_kernel(config)
        if args.command == "derive":
            return cmd_derive(config)
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
