"""Command-line front end: ``hodgephase {table,verify,decompose,audit,spha,dynamics}``.

Exit status: 0 when every check passes, 1 on a verification failure, 2 on a
usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .algebra import EXACT, CoefficientMode, Signature, blade_label, blade_product
from .dynamics import SCHEMES, PairRef, PhaseState, integrate, parse_hamiltonian
from .errors import CliffordError, DimensionTooLarge, NonFiniteState
from .identities import SUITES, run_suites
from .phase_space import audit_paper_claims, decompose
from .spha import build_generators, verify_spha

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
TABLE_MAX_N = 6


@dataclass
class RunConfig:
    command: str
    sig: Signature = field(default_factory=lambda: Signature(3, 0))
    mode: CoefficientMode = EXACT
    output: str | None = None
    format: str = "text"
    seed: int = 0
    params: dict = field(default_factory=dict)


class UsageError(Exception):
    pass


def _sig(text: str) -> Signature:
    try:
        return Signature.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_fraction(text: str) -> Fraction:
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--sig", type=_sig, default=Signature(3, 0), help="signature p,q (default 3,0)")
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument("--format", choices=("text", "json", "csv"), default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--mode", choices=("exact", "float"), default="exact")
    common.add_argument("--epsilon", type=float, default=1e-12, help="tolerance in float mode")

    parser = _Parser(prog="hodgephase", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("table", parents=[common], help="signed basis-blade multiplication table")

    p = sub.add_parser("verify", parents=[common], help="run identity suites")
    p.add_argument("--suites", default="hodge,dual,norm,clifford,assoc",
                   help=f"comma list from {{{','.join(SUITES)}}}")

    sub.add_parser("decompose", parents=[common], help="position/momentum pair decomposition")

    p = sub.add_parser("audit", parents=[common], help="commutation-class audit")
    p.add_argument("--n-max", type=int, default=6)

    p = sub.add_parser("spha", parents=[common], help="SPHA commutator table")
    p.add_argument("--ell", type=_positive_fraction, default=Fraction(1))
    p.add_argument("--R", type=_positive_fraction, default=Fraction(1))
    p.add_argument("--hbar", type=_positive_fraction, default=None, help="default ell/R")
    p.add_argument("--rescale", action="store_true", help="use X -> ell X, P -> P/R")
    p.add_argument("--eta", choices=("time-first", "time-last"), default="time-first",
                   help="for 3,1: which basis vector squares to -1")

    p = sub.add_parser("dynamics", parents=[common], help="integrate a polynomial Hamiltonian")
    p.add_argument("--k", type=int, default=1, help="grade of the position blade e1...ek")
    p.add_argument("--h", dest="hfile", required=True, help="Hamiltonian file: '<coeff> <xPower> <pPower>' per line")
    p.add_argument("--x0", type=float, default=1.0)
    p.add_argument("--p0", type=float, default=0.0)
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--steps", type=int, default=10000)
    p.add_argument("--stride", type=int, default=1)
    p.add_argument("--scheme", choices=SCHEMES, default="leapfrog")
    return parser


def config_from_args(args) -> RunConfig:
    mode = EXACT if args.mode == "exact" else CoefficientMode.float_mode(args.epsilon)
    default_format = "csv" if args.command == "dynamics" else "text"
    params = {k: v for k, v in vars(args).items()
              if k not in {"command", "sig", "out", "format", "seed", "mode", "epsilon"}}
    cfg = RunConfig(args.command, args.sig, mode, args.out, args.format or default_format, args.seed, params)
    allowed = {
        "table": {"text", "json"}, "verify": {"text", "json"}, "decompose": {"text", "json"},
        "audit": {"text", "json"}, "spha": {"text", "json"}, "dynamics": {"csv"},
    }[cfg.command]
    if cfg.format not in allowed:
        raise UsageError(f"--format {cfg.format} not supported by {cfg.command}")
    return cfg


# --- commands ----------------------------------------------------------------------------


def cmd_table(cfg: RunConfig) -> tuple[str, int]:
    sig = cfg.sig
    if sig.n > TABLE_MAX_N:
        raise DimensionTooLarge(f"full tables are limited to n <= {TABLE_MAX_N}, got n={sig.n}")
    masks = sig.basis()
    labels = [blade_label(m, sig.n) for m in masks]

    def cell(a, b):
        m, s = blade_product(a, b, sig)
        return ("-" if s < 0 else "") + blade_label(m, sig.n)

    rows = [[cell(a, b) for b in masks] for a in masks]
    if cfg.format == "json":
        doc = {"signature": [sig.p, sig.q], "metric": list(sig.metric), "blades": labels, "table": rows}
        return json.dumps(doc, indent=2) + "\n", EXIT_OK
    w = max(len(c) for r in rows for c in r + labels)
    lines = [f"Multiplication table of {sig} (row * column)"]
    lines.append(" " * (w + 1) + "| " + " ".join(f"{l:>{w}}" for l in labels))
    lines.append("-" * len(lines[-1]))
    for lab, r in zip(labels, rows):
        lines.append(f"{lab:>{w}} | " + " ".join(f"{c:>{w}}" for c in r))
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    names = [s.strip() for s in cfg.params["suites"].split(",") if s.strip()]
    if not names:
        raise UsageError("--suites is empty")
    try:
        results = run_suites(cfg.sig, names, cfg.mode, seed=cfg.seed)
    except ValueError as exc:
        if isinstance(exc, CliffordError):
            raise
        raise UsageError(str(exc)) from None
    ok = all(r.passed for r in results)
    if cfg.format == "json":
        doc = {
            "signature": [cfg.sig.p, cfg.sig.q],
            "mode": str(cfg.mode),
            "seed": cfg.seed,
            "passed": ok,
            "suites": [
                {"suite": r.suite, "passed": r.passed, "identities": [
                    {"name": i.name, "checks": i.checks, "failures": i.failures,
                     "passed": i.passed, "counterexample": i.counterexample}
                    for i in r.identities]}
                for r in results
            ],
        }
        text = json.dumps(doc, indent=2) + "\n"
    else:
        lines = [f"verify {cfg.sig} mode={cfg.mode} seed={cfg.seed}"]
        for r in results:
            for i in r.identities:
                status = "PASS" if i.passed else "FAIL"
                lines.append(f"  [{status}] {r.suite}/{i.name}: {i.checks} checks, {i.failures} failures")
                if i.counterexample:
                    lines.append(f"         counterexample: {i.counterexample}")
        lines.append("all passed" if ok else "FAILURES present")
        text = "\n".join(lines) + "\n"
    return text, EXIT_OK if ok else EXIT_FAIL


def cmd_decompose(cfg: RunConfig) -> tuple[str, int]:
    d = decompose(cfg.sig)
    return (d.to_json() if cfg.format == "json" else d.to_text()), EXIT_OK


def cmd_audit(cfg: RunConfig) -> tuple[str, int]:
    n_max = cfg.params["n_max"]
    if not 2 <= n_max <= 8:
        raise UsageError(f"--n-max must be in 2..8, got {n_max}")
    report = audit_paper_claims(n_max)
    return (report.to_json() if cfg.format == "json" else report.to_text()), EXIT_OK


def cmd_spha(cfg: RunConfig) -> tuple[str, int]:
    sig = cfg.sig
    if (sig.p, sig.q) == (3, 1):
        sig = Signature(3, 1, negative_first=cfg.params["eta"] == "time-first")
    gens = build_generators(sig, cfg.params["ell"], cfg.params["R"], cfg.params["hbar"],
                            rescale=cfg.params["rescale"])
    report = verify_spha(gens)
    text = report.to_json() if cfg.format == "json" else report.to_text()
    return text, EXIT_OK if report.structural_ok else EXIT_FAIL


def cmd_dynamics(cfg: RunConfig) -> tuple[str, int]:
    prm = cfg.params
    try:
        src = Path(prm["hfile"]).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read Hamiltonian file: {exc}") from None
    if not 0 <= prm["k"] <= cfg.sig.n:
        raise UsageError(f"--k must be in 0..{cfg.sig.n}")
    pair = PairRef.first(cfg.sig, prm["k"])
    h = parse_hamiltonian(src, pair)
    try:
        traj = integrate(h, PhaseState(prm["x0"], prm["p0"]), prm["dt"], prm["steps"],
                         prm["scheme"], prm["stride"])
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    except NonFiniteState as exc:
        text = exc.trajectory.to_csv() if exc.trajectory is not None else ""
        print(f"hodgephase: {exc}", file=sys.stderr)
        return text, EXIT_FAIL
    print(f"{pair.comm_class} pair, {traj.scheme}: max |dH| = {traj.energy_error:.3e}, "
          f"final |dH| = {traj.final_energy_error:.3e}", file=sys.stderr)
    return traj.to_csv(), EXIT_OK


COMMANDS = {
    "table": cmd_table,
    "verify": cmd_verify,
    "decompose": cmd_decompose,
    "audit": cmd_audit,
    "spha": cmd_spha,
    "dynamics": cmd_dynamics,
}


def run(cfg: RunConfig) -> int:
    text, status = COMMANDS[cfg.command](cfg)
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)
    return status


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = config_from_args(args)
        return run(cfg)
    except UsageError as exc:
        print(f"hodgephase: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CliffordError as exc:
        print(f"hodgephase: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
