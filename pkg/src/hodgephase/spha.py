"""SPHA generators inside Cl(4) and Cl(3,1), their commutator table, and a pattern fit.

Generators are ``X_a = gamma_a`` (vectors), ``P_a = *gamma_a`` (trivectors),
``M_ab = gamma_a gamma_b`` (bivectors) and the pseudoscalar ``I``, with
``gamma_a = e_{a+1}``. Every commutator is computed exactly and compared with
the expected right-hand side for its line of the algebra; the multiplying
constant is fitted, not assumed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from .algebra import (
    Multivector,
    Signature,
    anticommutator,
    commutator,
    hodge_dual,
)
from .errors import UnexpectedForm, UnsupportedSignature

__all__ = [
    "SphaGenerators",
    "BracketEntry",
    "LineFit",
    "SphaReport",
    "build_generators",
    "commutator",
    "anticommutator",
    "verify_spha",
]

@dataclass(frozen=True)
class Generator:
    name: str
    kind: str
    indices: tuple[int, ...]
    value: Multivector


@dataclass(frozen=True)
class SphaGenerators:
    sig: Signature
    X: tuple[Multivector, ...]
    P: tuple[Multivector, ...]
    M: dict
    I: Multivector
    ell: Fraction
    R: Fraction
    h: Fraction
    rescaled: bool = False

    @property
    def eta(self) -> tuple[int, ...]:
        return self.sig.metric

    def m(self, a: int, b: int) -> Multivector:
        """``M_ab`` for any index order; ``M_aa = 0``."""
        if a == b:
            return Multivector.zero(self.sig)
        if a < b:
            return self.M[(a, b)]
        return -self.M[(b, a)]

    def generators(self) -> list[Generator]:
        gens = [Generator(f"M{a}{b}", "M", (a, b), v) for (a, b), v in sorted(self.M.items())]
        gens += [Generator(f"X{a}", "X", (a,), v) for a, v in enumerate(self.X)]
        gens += [Generator(f"P{a}", "P", (a,), v) for a, v in enumerate(self.P)]
        gens.append(Generator("I", "I", (), self.I))
        return gens


def build_generators(sig: Signature, ell=1, R=1, h=None, rescale: bool = False) -> SphaGenerators:
    """Build the 15 generators in a 4-dimensional algebra of signature (4,0) or (3,1).

    Without ``rescale`` the generators are unit blades and ``ell``, ``R``, ``h``
    are only recorded. With ``rescale``, ``X -> ell X`` and ``P -> P / R``.
    ``h`` defaults to ``ell / R``.
    """
    if (sig.p, sig.q) not in {(4, 0), (3, 1)}:
        raise UnsupportedSignature(f"SPHA generators need Cl(4,0) or Cl(3,1), got {sig}")
    ell, R = Fraction(ell), Fraction(R)
    if ell <= 0 or R <= 0:
        raise ValueError("ell and R must be positive")
    h = ell / R if h is None else Fraction(h)
    gammas = [sig.vector(a + 1) for a in range(4)]
    xs = tuple(g * ell if rescale else g for g in gammas)
    ps = tuple(hodge_dual(g) / R if rescale else hodge_dual(g) for g in gammas)
    ms = {(a, b): gammas[a] * gammas[b] for a, b in combinations(range(4), 2)}
    return SphaGenerators(sig, xs, ps, ms, sig.pseudoscalar(), ell, R, h, rescale)


# --- expected right-hand sides ------------------------------------------------------

LINE_TEXT = {
    "MM": "[M_ab, M_cd] = c (M_ad eta_bc + M_bc eta_ad - M_bd eta_ac - M_ac eta_bd)",
    "MP": "[M_ab, P_c] = c (P_a eta_bc - P_b eta_ac)",
    "MX": "[M_ab, X_c] = c (X_a eta_bc - X_b eta_ac)",
    "XP": "[X_a, P_b] = c eta_ab I",
    "XX": "[X_a, X_b] = c M_ab",
    "PP": "[P_a, P_b] = c M_ab",
    "PI": "[P_a, I] = c X_a",
    "XI": "[X_a, I] = c P_a",
    "MI": "[M_ab, I] = 0",
    "II": "[I, I] = 0",
}


def _pattern(gens: SphaGenerators, A: Generator, B: Generator) -> tuple[str, Multivector]:
    eta = gens.eta
    m = gens.m
    line = A.kind + B.kind
    if line == "MM":
        (a, b), (c, d) = A.indices, B.indices
        rhs = m(a, d) * eta_(eta, b, c) + m(b, c) * eta_(eta, a, d) \
            - m(b, d) * eta_(eta, a, c) - m(a, c) * eta_(eta, b, d)
    elif line in ("MP", "MX"):
        (a, b), (c,) = A.indices, B.indices
        vec = gens.P if line == "MP" else gens.X
        rhs = vec[a] * eta_(eta, b, c) - vec[b] * eta_(eta, a, c)
    elif line == "XP":
        (a,), (b,) = A.indices, B.indices
        rhs = gens.I * eta_(eta, a, b)
    elif line in ("XX", "PP"):
        (a,), (b,) = A.indices, B.indices
        rhs = m(a, b)
    elif line == "PI":
        rhs = gens.X[A.indices[0]]
    elif line == "XI":
        rhs = gens.P[A.indices[0]]
    elif line in ("MI", "II"):
        rhs = Multivector.zero(gens.sig)
    else:
        raise UnexpectedForm(f"no pattern for {A.name}, {B.name}")
    return line, rhs


def eta_(eta, a, b):
    return eta[a] if a == b else 0


def fit_constant(result: Multivector, pattern: Multivector):
    """Return ``(matched, c)`` with ``result == c * pattern``; ``c`` is None for a zero pattern."""
    if not pattern:
        return (not result), None
    mask, ref = next(iter(pattern))
    c = Fraction(result[mask]) / ref
    return result == pattern * c, c


# --- table and report -------------------------------------------------------------


@dataclass(frozen=True)
class BracketEntry:
    lhs: str
    rhs: str
    result: Multivector
    pattern_line: str
    fitted_constant: Fraction | None
    matched: bool
    closure: bool

    def to_dict(self) -> dict:
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "result": str(self.result),
            "pattern_line": self.pattern_line,
            "fitted_constant": None if self.fitted_constant is None else _frac_str(self.fitted_constant),
            "closure": self.closure,
            "matched": self.matched,
        }


@dataclass
class LineFit:
    line: str
    instances: int = 0
    matched: int = 0
    constants: set = field(default_factory=set)

    @property
    def uniform(self) -> bool:
        return self.matched == self.instances and len(self.constants) <= 1

    @property
    def constant(self) -> Fraction | None:
        if self.uniform and self.constants:
            return next(iter(self.constants))
        return None

    def to_dict(self) -> dict:
        return {
            "line": self.line,
            "pattern": LINE_TEXT[self.line],
            "instances": self.instances,
            "matched": self.matched,
            "uniform": self.uniform,
            "fitted_constant": None if self.constant is None else _frac_str(self.constant),
        }


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


@dataclass
class SphaReport:
    gens: SphaGenerators
    entries: list[BracketEntry]
    lines: dict[str, LineFit]
    antisymmetry: bool
    antisymmetry_checks: int
    jacobi: bool
    jacobi_triples: int
    consistency: dict

    @property
    def closure(self) -> bool:
        return all(e.closure for e in self.entries)

    @property
    def distinct_pairs(self) -> int:
        return sum(e.lhs != e.rhs for e in self.entries)

    @property
    def all_lines_uniform(self) -> bool:
        return all(f.uniform for f in self.lines.values())

    @property
    def structural_ok(self) -> bool:
        return self.closure and self.antisymmetry and self.jacobi and self.all_lines_uniform

    def entry(self, lhs: str, rhs: str) -> BracketEntry:
        for e in self.entries:
            if (e.lhs, e.rhs) == (lhs, rhs):
                return e
        raise KeyError((lhs, rhs))

    def to_dict(self) -> dict:
        g = self.gens
        return {
            "signature": [g.sig.p, g.sig.q],
            "eta": list(g.eta),
            "scale": {"ell": _frac_str(g.ell), "R": _frac_str(g.R), "h": _frac_str(g.h), "rescaled": g.rescaled},
            "generators": len(g.generators()),
            "pairs": len(self.entries),
            "distinct_pairs": self.distinct_pairs,
            "closure": self.closure,
            "antisymmetry": self.antisymmetry,
            "jacobi": self.jacobi,
            "jacobi_triples": self.jacobi_triples,
            "lines": [f.to_dict() for f in self.lines.values()],
            "consistency": self.consistency,
            "entries": [e.to_dict() for e in self.entries],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        g = self.gens
        gens = g.generators()
        names = [x.name for x in gens]
        lookup = {(e.lhs, e.rhs): e for e in self.entries}
        width = max(len(str(e.result)) for e in self.entries)
        width = min(max(width, 4), 18)
        out = [f"SPHA commutator table in {g.sig}, eta = diag{tuple(g.eta)}"]
        out.append(" " * 4 + " ".join(f"{nm:>{width}}" for nm in names))
        for a in names:
            cells = []
            for b in names:
                e = lookup.get((a, b))
                if e is None:
                    cells.append(f"{'':>{width}}")
                else:
                    s = str(e.result)
                    cells.append(f"{s if len(s) <= width else s[:width - 1] + '~':>{width}}")
            out.append(f"{a:>3} " + " ".join(cells))
        out.append("")
        out.append(f"closure over {len(self.entries)} pairs ({self.distinct_pairs} distinct): {self.closure}")
        out.append(f"antisymmetry ({self.antisymmetry_checks} ordered pairs): {self.antisymmetry}")
        out.append(f"jacobi ({self.jacobi_triples} triples): {self.jacobi}")
        out.append("pattern lines:")
        for f in self.lines.values():
            c = "-" if f.constant is None else _frac_str(f.constant)
            out.append(f"  {f.line}: {f.matched}/{f.instances} matched, uniform={f.uniform}, c={c}   {LINE_TEXT[f.line]}")
        out.append("parameter consistency:")
        for key, val in self.consistency.items():
            out.append(f"  {key}: {val}")
        return "\n".join(out) + "\n"


def _closure(result: Multivector, span_masks: set[int]) -> bool:
    return all(m in span_masks for m, _ in result)


def _consistency(lines: dict[str, LineFit]) -> dict:
    """Solve the fitted constants for one (ell^2, 1/R^2, h) and report each constraint.

    The three Lorentz-type lines fix a common bracket normalisation ``lam``; the
    remaining constants are divided by it before being read as parameters.
    """
    c = {k: f.constant for k, f in lines.items()}
    out: dict = {}
    lorentz = {c["MM"], c["MX"], c["MP"]}
    out["lorentz_normalisation_common"] = len(lorentz) == 1 and None not in lorentz
    if not out["lorentz_normalisation_common"] or any(c[k] is None for k in ("XP", "XX", "PP", "PI", "XI")):
        out["consistent"] = False
        return out
    lam = c["MM"]
    norm = {k: c[k] / lam for k in ("XP", "XX", "PP", "PI", "XI")}
    ell2_from_xx, ell2_from_xi = -norm["XX"], norm["XI"]
    inv_r2_from_pp, inv_r2_from_pi = -norm["PP"], -norm["PI"]
    h = norm["XP"]
    out["normalisation"] = _frac_str(lam)
    out["ell2_from_XX"] = _frac_str(ell2_from_xx)
    out["ell2_from_XI"] = _frac_str(ell2_from_xi)
    out["invR2_from_PP"] = _frac_str(inv_r2_from_pp)
    out["invR2_from_PI"] = _frac_str(inv_r2_from_pi)
    out["h_from_XP"] = _frac_str(h)
    ell_ok = ell2_from_xx == ell2_from_xi and ell2_from_xx > 0
    r_ok = inv_r2_from_pp == inv_r2_from_pi and inv_r2_from_pp > 0
    out["ell_consistent"] = ell_ok
    out["R_consistent"] = r_ok
    out["consistent"] = ell_ok and r_ok and h != 0
    out["h_equals_ell_over_R"] = bool(out["consistent"] and h * h == ell2_from_xx * inv_r2_from_pp and h > 0)
    return out


def verify_spha(gens: SphaGenerators) -> SphaReport:
    """Compute all commutators among the 15 generators and check closure, antisymmetry,
    Jacobi, and the per-line pattern fits."""
    gl = gens.generators()
    span = {0}
    for g in gl:
        if len(g.value) != 1:
            raise UnexpectedForm(f"generator {g.name} is not a single blade")
        span.update(m for m, _ in g.value)

    table = {}
    for A in gl:
        for B in gl:
            table[(A.name, B.name)] = commutator(A.value, B.value)

    anti_ok = all(table[(a.name, b.name)] == -table[(b.name, a.name)] for a in gl for b in gl)

    lines = {k: LineFit(k) for k in LINE_TEXT}
    entries = []
    for i, A in enumerate(gl):
        for B in gl[i:]:
            res = table[(A.name, B.name)]
            line, pat = _pattern(gens, A, B)
            matched, const = fit_constant(res, pat)
            fit = lines[line]
            fit.instances += 1
            fit.matched += matched
            if matched and const is not None:
                fit.constants.add(const)
            entries.append(BracketEntry(A.name, B.name, res, line, const, matched, _closure(res, span)))

    jacobi_ok = True
    triples = 0
    for A, B, C in combinations_with_replacement(gl, 3):
        triples += 1
        total = (commutator(A.value, table[(B.name, C.name)])
                 + commutator(B.value, table[(C.name, A.name)])
                 + commutator(C.value, table[(A.name, B.name)]))
        if total:
            jacobi_ok = False

    return SphaReport(
        gens=gens,
        entries=entries,
        lines=lines,
        antisymmetry=anti_ok,
        antisymmetry_checks=len(gl) ** 2,
        jacobi=jacobi_ok,
        jacobi_triples=triples,
        consistency=_consistency(lines),
    )
