"""Exhaustive and randomised checks of the algebra's duality identities.

Each suite returns a :class:`SuiteResult` holding one :class:`IdentityResult`
per identity it covers, so the CLI can print pass/fail plus a counterexample.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable

from .algebra import (
    EXACT,
    CoefficientMode,
    Multivector,
    Signature,
    hodge_dual,
    inner,
    wedge,
)
from .errors import GradeMismatch, NonEuclideanSignature


@dataclass(frozen=True)
class HodgeCheck:
    lhs: Multivector
    rhs: Multivector
    equal: bool


def _require_euclidean(sig: Signature, what: str):
    if not sig.euclidean():
        raise NonEuclideanSignature(f"{what} needs a Euclidean signature, got {sig}")


def hodge_relation_check(a: Multivector, b: Multivector, mode: CoefficientMode = EXACT) -> HodgeCheck:
    """Compare ``g(A, B) I`` against ``A ^ *B`` for same-grade blades."""
    _require_euclidean(a.sig, "the Hodge relation")
    ga, gb = a.grades(), b.grades()
    if len(ga) > 1 or len(gb) > 1 or (ga and gb and ga != gb):
        raise GradeMismatch(f"need equal single grades, got {sorted(ga)} and {sorted(gb)}")
    lhs = a.sig.pseudoscalar() * inner(a, b)
    rhs = wedge(a, hodge_dual(b))
    return HodgeCheck(lhs, rhs, mode.equal(lhs, rhs))


def double_dual_sign(n: int, k: int) -> int:
    return -1 if (k * (n - k)) & 1 else 1


@dataclass
class IdentityResult:
    name: str
    checks: int = 0
    failures: int = 0
    counterexample: str | None = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, describe: Callable[[], str]):
        self.checks += 1
        if not ok:
            self.failures += 1
            if self.counterexample is None:
                self.counterexample = describe()


@dataclass
class SuiteResult:
    suite: str
    sig: Signature
    identities: list[IdentityResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(i.passed for i in self.identities)


def _unit(sig: Signature, mask: int, mode: CoefficientMode) -> Multivector:
    return sig.blade(mask, mode.one())


def suite_hodge(sig: Signature, mode: CoefficientMode = EXACT, rng=None) -> SuiteResult:
    _require_euclidean(sig, "the hodge suite")
    n = sig.n
    rel = IdentityResult("hodge_relation")
    swap = IdentityResult("wedge_dual_swap")
    for k in range(n + 1):
        masks = sig.basis(k)
        for ma, mb in product(masks, masks):
            a, b = _unit(sig, ma, mode), _unit(sig, mb, mode)
            chk = hodge_relation_check(a, b, mode)
            rel.record(chk.equal, lambda: f"A={a}, B={b}: g(A,B)I={chk.lhs}, A^*B={chk.rhs}")
            db = hodge_dual(b)
            left, right = wedge(a, db), wedge(db, a) * double_dual_sign(n, k)
            swap.record(mode.equal(left, right), lambda: f"A={a}, B={b}: A^*B={left}, sign*(*B^A)={right}")
    return SuiteResult("hodge", sig, [rel, swap])


def suite_dual(sig: Signature, mode: CoefficientMode = EXACT, rng=None) -> SuiteResult:
    _require_euclidean(sig, "the dual suite")
    res = IdentityResult("double_dual_sign")
    for mask in sig.basis():
        b = _unit(sig, mask, mode)
        k = mask.bit_count()
        got = hodge_dual(hodge_dual(b))
        want = b * double_dual_sign(sig.n, k)
        res.record(mode.equal(got, want), lambda: f"B={b}: **B={got}, expected {want}")
    return SuiteResult("dual", sig, [res])


def suite_norm(sig: Signature, mode: CoefficientMode = EXACT, rng=None) -> SuiteResult:
    _require_euclidean(sig, "the norm suite")
    res = IdentityResult("dual_norm")
    for mask in sig.basis():
        b = _unit(sig, mask, mode)
        db = hodge_dual(b)
        got, want = inner(db, db), inner(b, b)
        res.record(mode.equal(got, want), lambda: f"B={b}: g(*B,*B)={got}, g(B,B)={want}")
    return SuiteResult("norm", sig, [res])


def suite_clifford(sig: Signature, mode: CoefficientMode = EXACT, rng=None) -> SuiteResult:
    res = IdentityResult("clifford_relation")
    for i, j in product(range(1, sig.n + 1), repeat=2):
        ei, ej = sig.vector(i, mode.one()), sig.vector(j, mode.one())
        got = ei * ej + ej * ei
        want = sig.scalar(2 * sig.g(i, j) * mode.one())
        res.record(mode.equal(got, want), lambda: f"e{i}e{j}+e{j}e{i}={got}, expected {want}")
    return SuiteResult("clifford", sig, [res])


def random_multivector(sig: Signature, rng: random.Random, density: float = 0.5,
                       mode: CoefficientMode = EXACT) -> Multivector:
    """Small random multivector with coefficients like ``-3/2``; deterministic given ``rng``."""
    terms = {}
    for mask in range(sig.size):
        if rng.random() < density:
            c = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            terms[mask] = c if mode.exact else float(c)
    return Multivector(sig, terms)


def suite_assoc(sig: Signature, mode: CoefficientMode = EXACT, rng=None, trials: int = 20) -> SuiteResult:
    rng = rng if rng is not None else random.Random(0)
    assoc = IdentityResult("associativity")
    dist = IdentityResult("distributivity")
    for _ in range(trials):
        a, b, c = (random_multivector(sig, rng, mode=mode) for _ in range(3))
        l1, r1 = (a * b) * c, a * (b * c)
        assoc.record(mode.equal(l1, r1), lambda: f"A={a}, B={b}, C={c}: (AB)C={l1}, A(BC)={r1}")
        l2, r2 = a * (b + c), a * b + a * c
        dist.record(mode.equal(l2, r2), lambda: f"A={a}, B={b}, C={c}: A(B+C)={l2}, AB+AC={r2}")
    return SuiteResult("assoc", sig, [assoc, dist])


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "hodge": suite_hodge,
    "dual": suite_dual,
    "norm": suite_norm,
    "clifford": suite_clifford,
    "assoc": suite_assoc,
}
EUCLIDEAN_ONLY = frozenset({"hodge", "dual", "norm"})


def run_suites(sig: Signature, names, mode: CoefficientMode = EXACT, seed: int = 0) -> list[SuiteResult]:
    """Run the named suites in the given order; Euclidean-only suites are rejected up front."""
    names = list(names)
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s): {', '.join(unknown)}")
    if not sig.euclidean():
        bad = [s for s in names if s in EUCLIDEAN_ONLY]
        if bad:
            raise NonEuclideanSignature(f"suite(s) {', '.join(bad)} need a Euclidean signature, got {sig}")
    rng = random.Random(seed)
    return [SUITES[s](sig, mode, rng=rng) for s in names]
