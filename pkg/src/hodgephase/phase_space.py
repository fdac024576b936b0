"""Pairing of grade-k "positions" with grade-(n-k) "momenta" in Euclidean Cl(n).

Momenta are built as ``P = X^{-1} I``, so ``X P = I`` exactly for any
non-null blade. Whether a pair commutes is decided here by multiplying blades,
never by a parity formula; :func:`audit_paper_claims` compares that result with
the claimed parity rule (the half-integer exponent ``k(n-k)/2``) and with the
worked examples that accompany it.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Callable

from .algebra import (
    BasisBlade,
    Multivector,
    Signature,
    geometric_inverse,
    geometric_product,
    wedge,
)
from .errors import InvalidSplit, NonEuclideanSignature, UnexpectedForm


class CommClass(enum.Enum):
    COMMUTING = "commuting"
    ANTICOMMUTING = "anticommuting"

    @property
    def exchange_sign(self) -> int:
        """``s`` with ``P X = s X P``."""
        return 1 if self is CommClass.COMMUTING else -1

    def __str__(self):
        return self.value


def momentum_of(x: Multivector) -> Multivector:
    """Conjugate momentum ``X^{-1} I`` of a homogeneous blade."""
    return geometric_inverse(x)


@dataclass(frozen=True)
class PairClassification:
    comm_class: CommClass
    xp: Multivector
    px: Multivector


def classify_pair(x: Multivector, p: Multivector) -> PairClassification:
    """Decide from ``XP`` and ``PX`` whether a position/momentum pair commutes.

    ``P`` is expected to be ``momentum_of(X)``; ``XP`` must then be a multiple
    of ``I`` and anything else raises :class:`UnexpectedForm`.
    """
    xp = geometric_product(x, p)
    px = geometric_product(p, x)
    top = x.sig.pseudoscalar_mask
    if not xp or any(m != top for m, _ in xp):
        raise UnexpectedForm(f"XP = {xp} is not proportional to I")
    if xp == px:
        cls = CommClass.COMMUTING
    elif xp == -px:
        cls = CommClass.ANTICOMMUTING
    else:
        raise UnexpectedForm(f"XP = {xp} and PX = {px} neither commute nor anticommute")
    return PairClassification(cls, xp, px)


def classify_blade(sig: Signature, mask: int) -> CommClass:
    x = sig.blade(mask)
    return classify_pair(x, momentum_of(x)).comm_class


# --- decomposition --------------------------------------------------------------

MiddleSplitRule = Callable[[int], bool]


def contains_first_index(mask: int) -> bool:
    """Default middle-grade rule: blades containing ``e1`` go to the position side."""
    return bool(mask & 1)


def contains_last_index_rule(n: int) -> MiddleSplitRule:
    top = 1 << (n - 1)
    return lambda mask: bool(mask & top)


@dataclass(frozen=True)
class PhasePair:
    k: int
    dual_grade: int
    x_basis: tuple[BasisBlade, ...]
    # p_basis[i] is the signed momentum of x_basis[i], i.e. geometric_inverse(x_basis[i])
    p_basis: tuple[Multivector, ...]
    comm_class: CommClass

    @property
    def size(self) -> int:
        return len(self.x_basis)

    def to_dict(self, n: int) -> dict:
        return {
            "k": self.k,
            "dual_grade": self.dual_grade,
            "comm_class": self.comm_class.value,
            "x_basis": [b.label(n) for b in self.x_basis],
            "p_basis": [str(p) for p in self.p_basis],
        }


@dataclass(frozen=True)
class Decomposition:
    sig: Signature
    pairs: tuple[PhasePair, ...]
    middle_rule_name: str | None = None
    middle_x_masks: tuple[int, ...] = ()

    def covered_masks(self) -> list[int]:
        out = []
        for pair in self.pairs:
            out.extend(b.mask for b in pair.x_basis)
            for p in pair.p_basis:
                out.extend(m for m, _ in p)
        return out

    def to_dict(self) -> dict:
        n = self.sig.n
        return {
            "signature": [self.sig.p, self.sig.q],
            "n": n,
            "middle_split": None if self.middle_rule_name is None else {
                "rule": self.middle_rule_name,
                "x_side": [BasisBlade(m).label(n) for m in self.middle_x_masks],
            },
            "pairs": [p.to_dict(n) for p in self.pairs],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        n = self.sig.n
        lines = [f"Decomposition of {self.sig} into {len(self.pairs)} position/momentum pairs"]
        for pair in self.pairs:
            lines.append(f"  k={pair.k} <-> {pair.dual_grade}  ({pair.comm_class}, {pair.size} pairs)")
            for x, p in zip(pair.x_basis, pair.p_basis):
                lines.append(f"    {x.label(n):>8}  <->  {p}")
        if self.middle_rule_name is not None:
            lines.append(f"  middle grade split rule: {self.middle_rule_name}")
        return "\n".join(lines) + "\n"


def _make_pair(sig: Signature, k: int, masks) -> PhasePair:
    xs = tuple(BasisBlade(m) for m in masks)
    ps = tuple(momentum_of(b.of(sig)) for b in xs)
    classes = {classify_pair(b.of(sig), p).comm_class for b, p in zip(xs, ps)}
    if len(classes) != 1:
        raise UnexpectedForm(f"grade {k} blades of {sig} disagree on commutation class")
    return PhasePair(k, sig.n - k, xs, ps, classes.pop())


def decompose(sig: Signature, middle_rule: MiddleSplitRule = contains_first_index,
              rule_name: str | None = None) -> Decomposition:
    """Split Euclidean Cl(n) into (grade k, grade n-k) pairs, k < n/2, plus the middle split."""
    if not sig.euclidean():
        raise NonEuclideanSignature(f"phase-space decomposition needs a Euclidean signature, got {sig}")
    n = sig.n
    pairs = [_make_pair(sig, k, sig.basis(k)) for k in range((n + 1) // 2)]
    name, x_side = None, ()
    if n % 2 == 0:
        mid = sig.basis(n // 2)
        x_side = tuple(m for m in mid if middle_rule(m))
        full = sig.pseudoscalar_mask
        chosen = set(x_side)
        if len(x_side) * 2 != len(mid) or any((full ^ m) in chosen for m in x_side):
            raise InvalidSplit("middle split rule must pick exactly one blade from each dual pair")
        pairs.append(_make_pair(sig, n // 2, x_side))
        name = rule_name or getattr(middle_rule, "__name__", "custom")
    return Decomposition(sig, tuple(pairs), name, x_side)


# --- audit -------------------------------------------------------------------------

# Commutation classes asserted by the worked examples (n, k) -> class.
PAPER_EXAMPLES: dict[tuple[int, int], CommClass] = {
    (3, 1): CommClass.ANTICOMMUTING,
    (4, 1): CommClass.COMMUTING,
    (4, 2): CommClass.ANTICOMMUTING,
}


def paper_parity_class(n: int, k: int) -> CommClass | None:
    """Class from the parity of ``k(n-k)/2``; ``None`` when that is not an integer."""
    twice = k * (n - k)
    if twice % 2:
        return None
    return CommClass.COMMUTING if (twice // 2) % 2 == 0 else CommClass.ANTICOMMUTING


@dataclass(frozen=True)
class AuditRow:
    n: int
    k: int
    computed_class: CommClass
    paper_parity_defined: bool
    paper_class: CommClass | None
    agree: bool | None
    example_class: CommClass | None = None
    agree_example: bool | None = None
    blades_checked: int = 0

    def to_dict(self) -> dict:
        def v(c):
            return None if c is None else c.value

        return {
            "n": self.n,
            "k": self.k,
            "computed_class": self.computed_class.value,
            "paper_parity_defined": self.paper_parity_defined,
            "paper_class": v(self.paper_class),
            "agree": self.agree,
            "example_class": v(self.example_class),
            "agree_example": self.agree_example,
            "blades_checked": self.blades_checked,
        }


@dataclass(frozen=True)
class AuditReport:
    n_max: int
    rows: tuple[AuditRow, ...] = field(default_factory=tuple)

    def row(self, n: int, k: int) -> AuditRow:
        for r in self.rows:
            if (r.n, r.k) == (n, k):
                return r
        raise KeyError((n, k))

    @property
    def disagreements(self) -> list[AuditRow]:
        return [r for r in self.rows if r.agree is False or r.agree_example is False]

    def to_dict(self) -> dict:
        return {
            "n_max": self.n_max,
            "rows": [r.to_dict() for r in self.rows],
            "summary": {
                "rows": len(self.rows),
                "parity_undefined": sum(not r.paper_parity_defined for r in self.rows),
                "parity_agree": sum(r.agree is True for r in self.rows),
                "parity_disagree": sum(r.agree is False for r in self.rows),
                "example_disagree": sum(r.agree_example is False for r in self.rows),
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        def v(c):
            return "-" if c is None else c.value

        def b(x):
            return "-" if x is None else ("yes" if x else "NO")

        head = f"{'n':>2} {'k':>2}  {'computed':<13} {'k(n-k)/2':>8}  {'parity rule':<13} {'agree':<5}  {'example':<13} {'agree':<5}"
        lines = ["Commutation audit", head, "-" * len(head)]
        for r in self.rows:
            half = f"{r.k * (r.n - r.k) // 2}" if r.paper_parity_defined else f"{r.k * (r.n - r.k)}/2"
            lines.append(
                f"{r.n:>2} {r.k:>2}  {r.computed_class.value:<13} {half:>8}  {v(r.paper_class):<13} "
                f"{b(r.agree):<5}  {v(r.example_class):<13} {b(r.agree_example):<5}"
            )
        s = self.to_dict()["summary"]
        lines.append(
            f"rows={s['rows']} parity_undefined={s['parity_undefined']} parity_agree={s['parity_agree']} "
            f"parity_disagree={s['parity_disagree']} example_disagree={s['example_disagree']}"
        )
        return "\n".join(lines) + "\n"


def audit_paper_claims(n_max: int) -> AuditReport:
    """Classify every (n, k), 2 <= n <= n_max, 1 <= k <= n-1, by blade arithmetic and
    set the result beside the parity rule and the worked examples."""
    if not 2 <= n_max <= 8:
        raise ValueError(f"n_max must be in 2..8, got {n_max}")
    rows = []
    for n in range(2, n_max + 1):
        sig = Signature(n)
        for k in range(1, n):
            masks = sig.basis(k)
            classes = {classify_blade(sig, m) for m in masks}
            if len(classes) != 1:
                raise UnexpectedForm(f"grade {k} blades of {sig} disagree on commutation class")
            computed = classes.pop()
            claimed = paper_parity_class(n, k)
            example = PAPER_EXAMPLES.get((n, k))
            rows.append(AuditRow(
                n=n,
                k=k,
                computed_class=computed,
                paper_parity_defined=claimed is not None,
                paper_class=claimed,
                agree=None if claimed is None else claimed is computed,
                example_class=example,
                agree_example=None if example is None else example is computed,
                blades_checked=len(masks),
            ))
    return AuditReport(n_max, tuple(rows))


def wedge_is_pseudoscalar(x: Multivector) -> bool:
    """``X ^ momentum_of(X) == I``."""
    return wedge(x, momentum_of(x)) == x.sig.pseudoscalar()
