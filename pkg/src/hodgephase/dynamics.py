"""Hamiltonian mechanics on a single (X_k, P_k) pair.

The phase-space variables are real coefficients: ``X = x e_K`` and
``P = p *e_K``. Hamiltonians are polynomials in ``(x, p)``.

Sign conventions, keyed off the pair's computed commutation class:

* flow: ``dx/dt = +dH/dp`` (commuting) or ``-dH/dp`` (anticommuting);
  ``dp/dt = -dH/dx`` in both cases.
* bracket: ``{F, G} = (F_x G_p + s F_p G_x) I`` with ``s = -1`` for a
  commuting pair (antisymmetric, c-number bracket) and ``s = +1`` for an
  anticommuting one (symmetric, Grassmann-like bracket).

Note ``s`` is the opposite of the blade exchange sign ``PX = (+/-1) XP``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Number
from typing import Iterable, NamedTuple

from .algebra import Multivector, Signature, hodge_dual, reversion
from .errors import NonFiniteState, PairMismatch, ParseError, UnclassifiedPair
from .phase_space import CommClass, classify_pair, momentum_of


class Polynomial:
    """Sparse polynomial ``sum c * x**a * p**b`` keyed by ``(a, b)``."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        acc: dict[tuple[int, int], Number] = {}
        items = terms.items() if isinstance(terms, dict) else (terms or ())
        for key, c in items:
            a, b = key
            if a < 0 or b < 0:
                raise ValueError(f"negative exponent in term {key}")
            acc[(a, b)] = acc.get((a, b), 0) + c
        self._terms = {k: c for k, c in acc.items() if c != 0}

    @classmethod
    def from_terms(cls, rows: Iterable[tuple[Number, int, int]]) -> "Polynomial":
        """From ``(coeff, x_power, p_power)`` rows; duplicate exponents are summed."""
        return cls([((a, b), c) for c, a, b in rows])

    @classmethod
    def x(cls):
        return cls({(1, 0): 1})

    @classmethod
    def p(cls):
        return cls({(0, 1): 1})

    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    @property
    def terms(self) -> dict[tuple[int, int], Number]:
        return dict(self._terms)

    def rows(self) -> list[tuple[Number, int, int]]:
        return [(c, a, b) for (a, b), c in sorted(self._terms.items())]

    def degree(self) -> int:
        return max((a + b for a, b in self._terms), default=0)

    def __call__(self, x, p):
        return sum((c * x**a * p**b for (a, b), c in self._terms.items()), 0)

    def d_dx(self) -> "Polynomial":
        return Polynomial({(a - 1, b): c * a for (a, b), c in self._terms.items() if a})

    def d_dp(self) -> "Polynomial":
        return Polynomial({(a, b - 1): c * b for (a, b), c in self._terms.items() if b})

    def __add__(self, other):
        if isinstance(other, Number):
            other = Polynomial.const(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Number):
            return Polynomial({k: c * other for k, c in self._terms.items()})
        out: dict[tuple[int, int], Number] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + c1 * c2
        return Polynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Number):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def __repr__(self):
        if not self._terms:
            return "Polynomial(0)"
        return "Polynomial(" + " + ".join(f"{c}*x^{a}*p^{b}" for (a, b), c in sorted(self._terms.items())) + ")"


@dataclass(frozen=True)
class PairRef:
    """Which blade ``e_K`` of which algebra the coefficients ``x, p`` multiply."""

    sig: Signature
    mask: int
    comm_class: CommClass | None = None

    @classmethod
    def of(cls, sig: Signature, mask: int) -> "PairRef":
        x = sig.blade(mask)
        return cls(sig, mask, classify_pair(x, momentum_of(x)).comm_class)

    @classmethod
    def first(cls, sig: Signature, k: int) -> "PairRef":
        """The pair built on ``e_1 e_2 ... e_k``."""
        if not 0 <= k <= sig.n:
            raise ValueError(f"k={k} outside 0..{sig.n}")
        return cls.of(sig, (1 << k) - 1)

    @property
    def n(self) -> int:
        return self.sig.n

    @property
    def k(self) -> int:
        return self.mask.bit_count()

    def _class(self) -> CommClass:
        if self.comm_class is None:
            raise UnclassifiedPair(f"pair on blade {self.mask:#b} of {self.sig} has not been classified")
        return self.comm_class

    @property
    def bracket_sign(self) -> int:
        return -1 if self._class() is CommClass.COMMUTING else 1

    @property
    def flow_sign(self) -> int:
        """Sign multiplying ``dH/dp`` in ``dx/dt``."""
        return 1 if self._class() is CommClass.COMMUTING else -1

    def position_blade(self) -> Multivector:
        return self.sig.blade(self.mask)

    def momentum_blade(self) -> Multivector:
        return hodge_dual(self.position_blade())


@dataclass(frozen=True)
class HamiltonianSpec:
    poly: Polynomial
    pair: PairRef | None = None

    @classmethod
    def from_terms(cls, rows, pair: PairRef | None = None) -> "HamiltonianSpec":
        return cls(Polynomial.from_terms(rows), pair)

    def __call__(self, x, p):
        return self.poly(x, p)


def parse_hamiltonian(text: str, pair: PairRef | None = None) -> HamiltonianSpec:
    """Read ``<coeff> <xPower> <pPower>`` lines; ``#`` starts a comment."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"line {lineno}: expected '<coeff> <xPower> <pPower>', got {raw!r}")
        try:
            coeff = float(Fraction(parts[0]))
            a, b = int(parts[1]), int(parts[2])
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"line {lineno}: cannot read {raw!r}") from None
        if a < 0 or b < 0:
            raise ParseError(f"line {lineno}: exponents must be non-negative")
        rows.append((coeff, a, b))
    return HamiltonianSpec.from_terms(rows, pair)


def format_hamiltonian(h: HamiltonianSpec) -> str:
    return "".join(f"{c} {a} {b}\n" for c, a, b in h.poly.rows())


@dataclass(frozen=True)
class PhaseState:
    x: float
    p: float
    t: float = 0.0


# --- derivatives and equations of motion ---------------------------------------------


def _need_pair(h: HamiltonianSpec) -> PairRef:
    if h.pair is None:
        raise UnclassifiedPair("Hamiltonian has no phase pair attached")
    return h.pair


def mv_derivative_x(h: HamiltonianSpec, state: PhaseState) -> Multivector:
    """``e_K^dagger dH/dx``."""
    pair = _need_pair(h)
    return reversion(pair.position_blade()) * h.poly.d_dx()(state.x, state.p)


def mv_derivative_p(h: HamiltonianSpec, state: PhaseState) -> Multivector:
    """``(*e_K)^dagger dH/dp``."""
    pair = _need_pair(h)
    return reversion(pair.momentum_blade()) * h.poly.d_dp()(state.x, state.p)


def hamilton_rhs(h: HamiltonianSpec, state: PhaseState) -> tuple:
    pair = _need_pair(h)
    sign = pair.flow_sign
    hx = h.poly.d_dx()(state.x, state.p)
    hp = h.poly.d_dp()(state.x, state.p)
    return sign * hp, -hx


def bracket_poly(f: Polynomial, g: Polynomial, sign: int) -> Polynomial:
    """Coefficient of ``I`` in ``{F, G}``, as a polynomial."""
    return f.d_dx() * g.d_dp() + sign * (f.d_dp() * g.d_dx())


def _common_pair(f: HamiltonianSpec, g: HamiltonianSpec, pair: PairRef | None) -> PairRef:
    refs = {r for r in (f.pair, g.pair, pair) if r is not None}
    if not refs:
        raise UnclassifiedPair("no phase pair given")
    if len(refs) > 1:
        raise PairMismatch("F and G live on different phase pairs")
    return refs.pop()


def poisson_bracket(f: HamiltonianSpec, g: HamiltonianSpec, state: PhaseState,
                    pair: PairRef | None = None) -> Multivector:
    ref = _common_pair(f, g, pair)
    value = bracket_poly(f.poly, g.poly, ref.bracket_sign)(state.x, state.p)
    return ref.sig.pseudoscalar() * value


@dataclass(frozen=True)
class BracketWithH:
    bracket: Multivector
    flow_form: Multivector
    consistent: bool | None


def bracket_with_H(f: HamiltonianSpec, h: HamiltonianSpec, state: PhaseState,
                   pair: PairRef | None = None, epsilon: float = 1e-12) -> BracketWithH:
    """``{F, H}`` next to ``(F_x dx/dt + F_p dp/dt) I``.

    ``consistent`` is only evaluated for commuting pairs in a Euclidean algebra;
    for anticommuting pairs the two forms are reported side by side.
    """
    ref = _common_pair(f, h, pair)
    h_on = HamiltonianSpec(h.poly, ref)
    br = poisson_bracket(f, h_on, state, ref)
    dx, dp = hamilton_rhs(h_on, state)
    fx = f.poly.d_dx()(state.x, state.p)
    fp = f.poly.d_dp()(state.x, state.p)
    flow = ref.sig.pseudoscalar() * (fx * dx + fp * dp)
    consistent = None
    if ref.comm_class is CommClass.COMMUTING and ref.sig.euclidean():
        consistent = br.isclose(flow, epsilon) if _is_float(br, flow) else br == flow
    return BracketWithH(br, flow, consistent)


def _is_float(*mvs: Multivector) -> bool:
    return any(isinstance(c, float) for mv in mvs for _, c in mv)


# --- integration ----------------------------------------------------------------------


class Sample(NamedTuple):
    t: float
    x: float
    p: float
    H: float


@dataclass
class Trajectory:
    samples: list[Sample]
    dt: float
    steps: int
    scheme: str
    stride: int = 1
    flow_sign: int = 1
    comm_class: str = ""
    meta: dict = field(default_factory=dict)

    @property
    def energy_error(self) -> float:
        """Largest ``|H(t) - H(0)|`` over the recorded samples."""
        h0 = self.samples[0].H
        return max(abs(s.H - h0) for s in self.samples)

    @property
    def final_energy_error(self) -> float:
        return abs(self.samples[-1].H - self.samples[0].H)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "x", "p", "H"])
        for s in self.samples:
            w.writerow([repr(s.t), repr(s.x), repr(s.p), repr(s.H)])
        return buf.getvalue()


SCHEMES = ("leapfrog", "symplectic-euler", "rk4")


def _step_leapfrog(f, x, p, dt):
    # kick-drift-kick; symplectic for separable H
    _, dp = f(x, p)
    p_half = p + 0.5 * dt * dp
    dx, _ = f(x, p_half)
    x_new = x + dt * dx
    _, dp = f(x_new, p_half)
    return x_new, p_half + 0.5 * dt * dp


def _step_symplectic_euler(f, x, p, dt):
    _, dp = f(x, p)
    p_new = p + dt * dp
    dx, _ = f(x, p_new)
    return x + dt * dx, p_new


def _step_rk4(f, x, p, dt):
    k1 = f(x, p)
    k2 = f(x + 0.5 * dt * k1[0], p + 0.5 * dt * k1[1])
    k3 = f(x + 0.5 * dt * k2[0], p + 0.5 * dt * k2[1])
    k4 = f(x + dt * k3[0], p + dt * k3[1])
    return (x + dt / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
            p + dt / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]))


_STEPPERS = {
    "leapfrog": _step_leapfrog,
    "symplectic-euler": _step_symplectic_euler,
    "rk4": _step_rk4,
}


def integrate(h: HamiltonianSpec, initial: PhaseState, dt: float, steps: int,
              scheme: str = "leapfrog", stride: int = 1) -> Trajectory:
    """Advance Hamilton's equations with real coefficients.

    Records ``(t, x, p, H)`` every ``stride`` steps, plus the initial state.
    Raises :class:`NonFiniteState` (carrying the partial trajectory) on overflow.
    """
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    if stride < 1 or steps % stride:
        raise ValueError(f"stride must be a positive divisor of steps, got {stride}")
    scheme = scheme.lower().replace("_", "-")
    if scheme not in _STEPPERS:
        raise ValueError(f"unknown scheme {scheme!r}; choose from {', '.join(SCHEMES)}")
    pair = _need_pair(h)
    sign = pair.flow_sign
    hx_poly, hp_poly = h.poly.d_dx(), h.poly.d_dp()

    def f(x, p):
        return sign * hp_poly(x, p), -hx_poly(x, p)

    step = _STEPPERS[scheme]
    x, p, t0 = float(initial.x), float(initial.p), float(initial.t)
    traj = Trajectory([Sample(t0, x, p, float(h.poly(x, p)))], dt, steps, scheme, stride,
                      sign, pair.comm_class.value)
    for i in range(1, steps + 1):
        try:
            x, p = step(f, x, p, dt)
            energy = float(h.poly(x, p))
        except OverflowError:
            x = p = energy = math.inf
        if not (math.isfinite(x) and math.isfinite(p) and math.isfinite(energy)):
            raise NonFiniteState(f"state became non-finite at step {i}", traj)
        if i % stride == 0:
            traj.samples.append(Sample(t0 + i * dt, x, p, energy))
    return traj
