"""Command-line front end: ``parafock {basis,verify,spectrum,export}``.

Exit codes: 0 all checks pass, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field

from . import oscillator as osc
from . import superlin as sl
from .repcore import COEFFICIENT_SETS, DEFAULT_COEFFICIENTS, FockBasis

SCHEMA_VERSION = 1
SUITES = ("triple", "defining", "adjoint", "wqs", "all")


@dataclass(frozen=True)
class RunConfig:
    p: int = 1
    cutoff: int = 8
    tolerance: float = 1e-10
    params: osc.OscillatorParams = field(default_factory=osc.OscillatorParams)
    output_format: str = "plain"
    coefficients: str = DEFAULT_COEFFICIENTS

    def echo(self) -> dict:
        return {
            "p": self.p,
            "cutoff": self.cutoff,
            "tolerance": self.tolerance,
            "mass": self.params.mass,
            "omega": self.params.omega,
            "hbar": self.params.hbar,
            "coefficients": self.coefficients,
        }


@dataclass(frozen=True)
class CheckRecord:
    id: str
    realization: str
    probe_size: int
    residual: float
    threshold: float
    bound: str = "upper"   # "upper": pass iff residual <= threshold; "lower": residual >= threshold

    @property
    def passed(self) -> bool:
        if self.bound == "lower":
            return self.residual >= self.threshold
        return self.residual <= self.threshold


@dataclass
class VerificationReport:
    suite: str
    config: RunConfig
    checks: list[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, id, realization, probe_size, residual, threshold, bound="upper"):
        self.checks.append(CheckRecord(id, realization, int(probe_size), float(residual),
                                       float(threshold), bound))

    def extend(self, other: VerificationReport) -> None:
        self.checks.extend(other.checks)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite,
            "config": self.config.echo(),
            "pass": self.passed,
            "max_residual": max((c.residual for c in self.checks if c.bound == "upper"), default=0.0),
            "checks": [
                {
                    "id": c.id,
                    "realization": c.realization,
                    "probe_size": c.probe_size,
                    "residual": c.residual,
                    "threshold": c.threshold,
                    "bound": c.bound,
                    "pass": c.passed,
                }
                for c in self.checks
            ],
        }


def _fmt_instance(inst) -> str:
    j, k, l, xi, eta, eps = inst
    s = {1: "+", -1: "-"}
    return f"c{j}{s[xi]},c{k}{s[eta]},c{l}{s[eps]}"


# --- suites -----------------------------------------------------------------


def suite_defining(config: RunConfig) -> VerificationReport:
    report = VerificationReport("defining", config)
    rep = sl.build_defining_realization()
    tol = config.tolerance
    for inst, res in sl.triple_relation_sweep(rep).items():
        report.add(f"triple[{_fmt_instance(inst)}]", "defining", 25, res, tol)
    for name, res in sl.cartan_bracket_residuals(rep).items():
        report.add(name, "defining", 25, res, tol)
    report.add("block_structure", "defining", 25, sl.block_structure_residual(rep), tol)
    return report


def suite_triple(config: RunConfig) -> VerificationReport:
    report = VerificationReport("triple", config)
    rep = sl.FockRealization(config.p, config.coefficients)
    probe = FockBasis(config.p, config.cutoff)
    realization = f"fock(p={config.p})"
    for inst, res in sl.triple_relation_sweep(rep, probe).items():
        report.add(f"triple[{_fmt_instance(inst)}]", realization, len(probe), res, config.tolerance)
    return report


def suite_adjoint(config: RunConfig) -> VerificationReport:
    report = VerificationReport("adjoint", config)
    p, tol = config.p, config.tolerance
    basis = FockBasis(p, config.cutoff)
    realization = f"fock(p={p})"
    n_int = len(basis.interior_indices())
    report.add("adjointness", realization, n_int, sl.adjointness_residual(basis, config.coefficients), tol)
    for name, res in sl.vacuum_condition_residuals(p, config.coefficients).items():
        report.add(f"vacuum:{name}", realization, 1, res, tol)
    rep = sl.FockRealization(p, config.coefficients)
    for name, res in sl.cartan_bracket_residuals(rep, basis).items():
        report.add(name, realization, len(basis), res, tol)
    for k in (1, 2):
        report.add(f"hermitian:h{k}", realization, n_int, sl.hermiticity_residual(rep.h(k), basis), tol)
    return report


NONZERO_THRESHOLD = 1e-3


def suite_wqs(config: RunConfig) -> VerificationReport:
    report = VerificationReport("wqs", config)
    p, tol = config.p, config.tolerance
    obs = osc.build_observables(p, config.params, config.coefficients)
    probe = FockBasis(p, config.cutoff)
    realization = f"fock(p={p})"
    n_int = len(probe.interior_indices())
    for k in (1, 2, 3):
        for sign in (+1, -1):
            s = "+" if sign > 0 else "-"
            report.add(f"ccs:a{k}{s}", realization, len(probe),
                       osc.compatibility_residual(obs, k, sign, probe), tol)
    report.add("ladder_sum", realization, len(probe), osc.ladder_sum_residual(obs, probe), tol)
    for name, res in osc.hamilton_heisenberg_residuals(obs, probe).items():
        report.add(f"hamilton_heisenberg:{name}", realization, len(probe), res, tol)
    for name, res in osc.hermiticity_report(obs, probe).items():
        report.add(f"hermitian:{name}", realization, n_int, res, tol)

    levels_out = osc.spectrum(p, config.cutoff, config.params, obs=obs)
    report.add("spectrum:closed_vs_diag", realization, n_int, levels_out.max_deviation, tol)
    report.add("spectrum:levels", realization, n_int, levels_out.formula_deviation, tol)
    report.add("spectrum:H_diagonal", realization, n_int, levels_out.diagonal_residual, tol)
    bad_mult = sum(mult != (p + 1 if n == 0 else 2 * p) for n, _, mult in levels_out.levels)
    report.add("spectrum:multiplicities", realization, n_int, bad_mult, 0)

    nc = osc.noncommutativity_report(p, config.cutoff, config.params, obs=obs)
    for name, value in nc.items():
        if name.startswith("{") or "-i" in name:
            report.add(f"noncommutativity:{name}", realization, n_int, value, tol)
        elif name.startswith("[r") or name.startswith("[p") or name.startswith("[M"):
            report.add(f"noncommutativity:{name}", realization, n_int, value, NONZERO_THRESHOLD, "lower")
    for which in ("M", "r", "p"):
        report.add(f"vector_transform:{which}", realization, len(probe),
                   osc.vector_transform_residual(obs, which, probe), tol)
    report.add("angular_momentum_conserved", realization, len(probe),
               osc.angular_momentum_conservation_residual(obs, probe), tol)
    forms = osc.angular_momentum_form_differences(obs, probe)
    report.add("M1_bilinear_eq_c1", realization, len(probe), forms["M1"]["difference"], tol)
    report.add("M2_bilinear_eq_c1", realization, len(probe), forms["M2"]["difference"], tol)
    report.add("M3_bilinear_eq_minus_c1", realization, len(probe), forms["M3"]["sum"], tol)
    table = osc.m3_eigenvalue_table(p, config.cutoff, obs=obs)
    report.add("M3_diagonal", realization, len(probe), table.offdiagonal, tol)
    report.add("M3_spin_content", realization, len(probe), 0 if table.spin_content_ok else 1, 0)
    if p == 1:
        oracle = osc.p1_oracle_equivalence(config.cutoff, config.coefficients)
        report.add("p1_oracle:triple", "fermion(x)boson", 2 * (config.cutoff - 2),
                   oracle.triple_residual, tol)
        report.add("p1_oracle:match", "fermion(x)boson", len(probe),
                   max(oracle.match_residual, oracle.unitarity_residual), tol)
        report.add("p1_oracle:nullity", "fermion(x)boson", len(probe), abs(oracle.nullity - 1), 0)
    return report


def run_suite(name: str, config: RunConfig) -> VerificationReport:
    runners = {"defining": suite_defining, "triple": suite_triple,
               "adjoint": suite_adjoint, "wqs": suite_wqs}
    if name == "all":
        report = VerificationReport("all", config)
        for key in ("defining", "triple", "adjoint", "wqs"):
            report.extend(runners[key](config))
        return report
    return runners[name](config)


# --- formatting ---------------------------------------------------------------


def render_report(report: VerificationReport, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["id", "realization", "probe_size", "residual", "threshold", "bound", "pass"])
        for c in report.checks:
            writer.writerow([c.id, c.realization, c.probe_size, repr(c.residual),
                             repr(c.threshold), c.bound, c.passed])
        return buf.getvalue()
    lines = [f"suite {report.suite}: {'PASS' if report.passed else 'FAIL'} "
             f"({sum(c.passed for c in report.checks)}/{len(report.checks)} checks)"]
    for c in report.checks:
        op = ">=" if c.bound == "lower" else "<="
        lines.append(f"  [{'ok' if c.passed else 'FAIL'}] {c.id:<40} {c.realization:<16} "
                     f"{c.residual:.3e} {op} {c.threshold:.1e}")
    return "\n".join(lines) + "\n"


def _g17(x: float) -> str:
    return format(x, ".17g")


def matrix_json(matrix: sl.SparseComplexMatrix, p: int, cutoff: int) -> str:
    """Serialize in the export schema with 17 significant digits per float."""
    basis = ",\n    ".join(json.dumps(list(lab)) for lab in matrix.basis)
    entries = ",\n    ".join(
        f"[{r}, {c}, {_g17(v.real)}, {_g17(v.imag)}]" for r, c, v in matrix.entries()
    )
    boundary = json.dumps(sorted(matrix.boundary_rows))
    return (
        "{\n"
        f'  "schema": 1,\n  "p": {p},\n  "cutoff": {cutoff},\n'
        f'  "basis": [\n    {basis}\n  ],\n'
        f'  "entries": [{chr(10) + "    " + entries + chr(10) + "  " if entries else ""}],\n'
        f'  "boundary_rows": {boundary}\n'
        "}\n"
    )


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- commands -----------------------------------------------------------------


def cmd_basis(config: RunConfig, out: str | None = None) -> int:
    basis = FockBasis(config.p, config.cutoff)
    rows = [
        (lab.mu12, lab.mu22, lab.mu11, lab.theta, lab.level,
         osc.closed_form_energy(lab, config.p, config.params))
        for lab in basis
    ]
    header = ["mu12", "mu22", "mu11", "theta", "n", "energy"]
    if config.output_format == "json":
        text = json.dumps({"schema": 1, "p": config.p, "cutoff": config.cutoff,
                           "labels": [dict(zip(header, r)) for r in rows]}, indent=2) + "\n"
    elif config.output_format == "csv":
        text = ",".join(header) + "\n" + "".join(",".join(map(repr, r)) + "\n" for r in rows)
    else:
        text = "".join(f"{r[0]:>5} {r[1]:>5} {r[2]:>5} {r[3]:>5} {r[4]:>5} {r[5]:>10g}\n" for r in rows)
    _emit(text, out)
    return 0


def cmd_verify(config: RunConfig, suite: str, out: str | None = None) -> int:
    report = run_suite(suite, config)
    _emit(render_report(report, config.output_format), out)
    return 0 if report.passed else 1


def cmd_spectrum(config: RunConfig, out: str | None = None) -> int:
    levels_out = osc.spectrum(config.p, config.cutoff, config.params, config.coefficients)
    ok = levels_out.max_deviation <= config.tolerance and levels_out.formula_deviation <= config.tolerance
    if config.output_format == "csv":
        text = "n,energy,multiplicity\n" + "".join(f"{n},{e!r},{m}\n" for n, e, m in levels_out.levels)
    elif config.output_format == "json":
        text = json.dumps({
            "schema": 1, "config": config.echo(),
            "levels": [{"n": n, "energy": e, "multiplicity": m} for n, e, m in levels_out.levels],
            "closed_vs_diag": levels_out.max_deviation,
            "formula_deviation": levels_out.formula_deviation,
            "pass": ok,
        }, indent=2) + "\n"
    else:
        hw = config.params.hbar * config.params.omega
        lines = [f"{'n':>4} {'E_n':>12} {'mult':>5}"]
        lines += [f"{n:>4} {e:>12.10g} {m:>5}" for n, e, m in levels_out.levels]
        lines.append(f"check E_n = {hw:g}*(n + {config.p}/2): "
                     f"max deviation {max(levels_out.max_deviation, levels_out.formula_deviation):.3e} "
                     f"({'ok' if ok else 'FAIL'})")
        text = "\n".join(lines) + "\n"
    _emit(text, out)
    return 0 if ok else 1


def cmd_export(config: RunConfig, name: str, out: str | None = None) -> int:
    obs = osc.build_observables(config.p, config.params, config.coefficients)
    basis = FockBasis(config.p, config.cutoff)
    matrix = sl.matrix_of(obs.by_name(name), basis)
    _emit(matrix_json(matrix, config.p, config.cutoff), out)
    return 0


# --- argument parsing -----------------------------------------------------------


def _common(min_cutoff: int = 0) -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--p", type=int, default=1, help="order of parastatistics (>= 1)")
    parent.add_argument("--cutoff", type=int, default=8, help="highest level n kept")
    parent.add_argument("--tol", type=float, default=1e-10)
    parent.add_argument("--mass", type=float, default=1.0)
    parent.add_argument("--omega", type=float, default=1.0)
    parent.add_argument("--hbar", type=float, default=1.0)
    parent.add_argument("--format", choices=("json", "csv", "plain"), default="plain")
    parent.add_argument("--out", default=None, help="write output to this path")
    parent.add_argument("--coefficients", choices=COEFFICIENT_SETS, default=DEFAULT_COEFFICIENTS,
                        help="ladder coefficient set")
    parent.set_defaults(min_cutoff=min_cutoff)
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="parafock", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("basis", parents=[_common(0)], help="list the truncated Fock basis")
    verify = sub.add_parser("verify", parents=[_common(3)], help="run a verification suite")
    verify.add_argument("--suite", choices=SUITES, default="all")
    sub.add_parser("spectrum", parents=[_common(1)], help="oscillator energy levels")
    export = sub.add_parser("export", parents=[_common(0)], help="export an operator matrix as JSON")
    export.add_argument("object", choices=osc.EXPORTABLE)
    return parser


def config_from_args(parser: argparse.ArgumentParser, args) -> RunConfig:
    if args.p < 1:
        parser.error("--p must be >= 1")
    if args.cutoff < args.min_cutoff:
        parser.error(f"--cutoff must be >= {args.min_cutoff} for {args.command}")
    if not 0 < args.tol < 1:
        parser.error("--tol must lie in (0, 1)")
    try:
        params = osc.OscillatorParams(args.mass, args.omega, args.hbar)
    except ValueError as exc:
        parser.error(str(exc))
    return RunConfig(args.p, args.cutoff, args.tol, params, args.format, args.coefficients)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = config_from_args(parser, args)
    if args.command == "basis":
        return cmd_basis(config, args.out)
    if args.command == "verify":
        return cmd_verify(config, args.suite, args.out)
    if args.command == "spectrum":
        return cmd_spectrum(config, args.out)
    return cmd_export(config, args.object, args.out)


if __name__ == "__main__":
    sys.exit(main())
