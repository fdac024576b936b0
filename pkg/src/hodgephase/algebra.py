"""Sparse Clifford algebra arithmetic over Cl(p, q).

Basis blades are bit masks: bit ``i`` set means ``e_{i+1}`` is a factor, with
factors kept in ascending index order. A :class:`Multivector` is a sparse map
from mask to coefficient. Coefficients are whatever numbers you put in; ints
and :class:`fractions.Fraction` keep every operation exact, floats are for the
dynamics integrator.

The pseudoscalar is always ``I = e1 e2 ... en`` in ascending order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Number
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .errors import (
    GradeOutOfRange,
    NotABlade,
    NullBlade,
    SignatureMismatch,
)

MAX_DIMENSION = 12
# Above this the 4**n sign table is not worth building.
TABLE_DIMENSION_LIMIT = 8


@dataclass(frozen=True)
class Signature:
    """Metric signature: ``p`` basis vectors square to +1, ``q`` to -1.

    By default the positive vectors come first (``e1..ep``). With
    ``negative_first=True`` the order is flipped, so e.g. ``Signature(3, 1,
    negative_first=True)`` gives ``e1**2 = -1`` and ``e2..e4`` squaring to +1,
    i.e. a time-first Minkowski metric.
    """

    p: int
    q: int = 0
    negative_first: bool = False

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise ValueError(f"p and q must be non-negative, got ({self.p}, {self.q})")
        if not 1 <= self.p + self.q <= MAX_DIMENSION:
            raise ValueError(f"dimension p+q must be in 1..{MAX_DIMENSION}, got {self.p + self.q}")

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def metric(self) -> tuple[int, ...]:
        if self.negative_first:
            return (-1,) * self.q + (1,) * self.p
        return (1,) * self.p + (-1,) * self.q

    @property
    def negative_mask(self) -> int:
        """Bit mask of the basis vectors that square to -1."""
        mask = 0
        for i, g in enumerate(self.metric):
            if g < 0:
                mask |= 1 << i
        return mask

    @property
    def pseudoscalar_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def size(self) -> int:
        return 1 << self.n

    def euclidean(self) -> bool:
        return self.q == 0

    def g(self, i: int, j: int) -> int:
        """Metric component for 1-based indices."""
        return self.metric[i - 1] if i == j else 0

    @classmethod
    def parse(cls, text: str) -> "Signature":
        """Parse ``"p,q"`` (or just ``"p"``)."""
        parts = [s.strip() for s in text.split(",")]
        try:
            nums = [int(s) for s in parts]
        except ValueError:
            raise ValueError(f"bad signature {text!r}; expected 'p,q'") from None
        if len(nums) == 1:
            return cls(nums[0], 0)
        if len(nums) != 2:
            raise ValueError(f"bad signature {text!r}; expected 'p,q'")
        return cls(nums[0], nums[1])

    def __str__(self):
        suffix = " (negative first)" if self.negative_first and self.q else ""
        return f"Cl({self.p},{self.q}){suffix}"

    # convenience constructors -------------------------------------------------

    def scalar(self, value=1) -> "Multivector":
        return Multivector(self, {0: value})

    def pseudoscalar(self, value=1) -> "Multivector":
        return Multivector(self, {self.pseudoscalar_mask: value})

    def vector(self, i: int, value=1) -> "Multivector":
        return self.e(i, value=value)

    def e(self, *indices: int, value=1) -> "Multivector":
        """Product ``e_{i1} e_{i2} ...`` of 1-based basis vectors, in the given order."""
        mask, sign = 0, 1
        for i in indices:
            if not 1 <= i <= self.n:
                raise ValueError(f"basis index {i} out of range for {self}")
            mask, s = blade_product(mask, 1 << (i - 1), self)
            sign *= s
        return Multivector(self, {mask: sign * value})

    def blade(self, mask: int, value=1) -> "Multivector":
        return Multivector(self, {mask: value})

    def basis(self, grade: int | None = None) -> list[int]:
        """Masks of the basis blades, grade-major then ascending index order."""
        if grade is None:
            return sorted(range(self.size), key=_blade_sort_key)
        if not 0 <= grade <= self.n:
            raise GradeOutOfRange(f"grade {grade} outside 0..{self.n}")
        return sorted((m for m in range(self.size) if m.bit_count() == grade), key=_blade_sort_key)


def blade_indices(mask: int) -> tuple[int, ...]:
    """1-based indices of the factors in a basis blade."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def blade_grade(mask: int) -> int:
    return mask.bit_count()


def _blade_sort_key(mask: int):
    return (mask.bit_count(), blade_indices(mask))


@dataclass(frozen=True, order=True)
class BasisBlade:
    """A basis monomial ``e_K``; sign bookkeeping lives in the operations."""

    mask: int

    @property
    def grade(self) -> int:
        return self.mask.bit_count()

    @property
    def indices(self) -> tuple[int, ...]:
        return blade_indices(self.mask)

    def label(self, n: int = 9) -> str:
        return blade_label(self.mask, n)

    def of(self, sig: Signature, value=1) -> "Multivector":
        return Multivector(sig, {self.mask: value})


def blade_label(mask: int, n: int = 9) -> str:
    if mask == 0:
        return "1"
    idx = blade_indices(mask)
    if n <= 9:
        return "e" + "".join(str(i) for i in idx)
    return "e{" + ",".join(str(i) for i in idx) + "}"


# --- blade product ------------------------------------------------------------


def reorder_sign(a: int, b: int) -> int:
    """Sign of the permutation that sorts the factors of ``e_a e_b`` into ascending order.

    Each factor of ``a`` must hop over every factor of ``b`` with a smaller index.
    """
    a >>= 1
    swaps = 0
    while a:
        swaps += (a & b).bit_count()
        a >>= 1
    return -1 if swaps & 1 else 1


def _blade_sign(a: int, b: int, neg: int) -> int:
    sign = reorder_sign(a, b)
    if (a & b & neg).bit_count() & 1:
        sign = -sign
    return sign


@lru_cache(maxsize=None)
def _sign_table(sig: Signature) -> tuple[int, ...]:
    n, neg = sig.n, sig.negative_mask
    size = 1 << n
    return tuple(_blade_sign(a, b, neg) for a in range(size) for b in range(size))


def blade_product(a: int, b: int, sig: Signature) -> tuple[int, int]:
    """Product of basis blades ``e_a e_b`` as ``(mask, sign)``."""
    if sig.n <= TABLE_DIMENSION_LIMIT:
        return a ^ b, _sign_table(sig)[(a << sig.n) | b]
    return a ^ b, _blade_sign(a, b, sig.negative_mask)


# --- multivectors -------------------------------------------------------------


def _exact_div(c, d):
    if isinstance(c, float) or isinstance(d, float):
        return c / d
    if isinstance(c, (int, Fraction)) and isinstance(d, (int, Fraction)):
        return Fraction(c) / d
    return c / d


def _simplify(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class Multivector:
    """Immutable sparse multivector. Zero coefficients are never stored."""

    __slots__ = ("sig", "_terms")

    def __init__(self, sig: Signature, terms: Mapping[int, Number] | None = None):
        self.sig = sig
        limit = sig.size
        clean = {}
        for mask, c in (terms or {}).items():
            if not 0 <= mask < limit:
                raise ValueError(f"blade mask {mask} out of range for {sig}")
            if c != 0:
                clean[mask] = _simplify(c)
        self._terms = clean

    @classmethod
    def _raw(cls, sig: Signature, terms: dict) -> "Multivector":
        obj = cls.__new__(cls)
        obj.sig = sig
        obj._terms = {m: _simplify(c) for m, c in terms.items() if c != 0}
        return obj

    @classmethod
    def zero(cls, sig: Signature) -> "Multivector":
        return cls._raw(sig, {})

    @property
    def terms(self) -> Mapping[int, Number]:
        return MappingProxyType(self._terms)

    def __getitem__(self, mask: int):
        return self._terms.get(mask, 0)

    def __iter__(self) -> Iterator[tuple[int, Number]]:
        return iter(sorted(self._terms.items(), key=lambda kv: _blade_sort_key(kv[0])))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def grades(self) -> set[int]:
        return {m.bit_count() for m in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.grades()) <= 1

    def scalar_part(self):
        return self._terms.get(0, 0)

    def is_scalar(self) -> bool:
        return all(m == 0 for m in self._terms)

    def grade(self, k: int) -> "Multivector":
        return grade_project(self, k)

    def map(self, f) -> "Multivector":
        return Multivector._raw(self.sig, {m: f(c) for m, c in self._terms.items()})

    def to_float(self) -> "Multivector":
        return self.map(float)

    # arithmetic -------------------------------------------------------------

    def _coerce(self, other) -> "Multivector":
        if isinstance(other, Multivector):
            if other.sig != self.sig:
                raise SignatureMismatch(f"{self.sig} vs {other.sig}")
            return other
        if isinstance(other, Number):
            return Multivector._raw(self.sig, {0: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Multivector._raw(self.sig, out)

    __radd__ = __add__

    def __neg__(self):
        return Multivector._raw(self.sig, {m: -c for m, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, Number):
            return Multivector._raw(self.sig, {m: c * other for m, c in self._terms.items()})
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Number):
            return Multivector._raw(self.sig, {m: other * c for m, c in self._terms.items()})
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Number):
            return Multivector._raw(self.sig, {m: _exact_div(c, other) for m, c in self._terms.items()})
        return NotImplemented

    def __xor__(self, other):
        return wedge(self, self._coerce(other))

    def __rxor__(self, other):
        return wedge(self._coerce(other), self)

    def __or__(self, other):
        return dot(self, self._coerce(other))

    def __ror__(self, other):
        return dot(self._coerce(other), self)

    def __invert__(self):
        return reversion(self)

    def __eq__(self, other):
        if isinstance(other, Number):
            other = Multivector._raw(self.sig, {0: other})
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.sig == other.sig and self._terms == other._terms

    __hash__ = None

    def isclose(self, other, epsilon: float) -> bool:
        """Term-wise ``|a - b| <= epsilon``."""
        if isinstance(other, Number):
            other = Multivector._raw(self.sig, {0: other})
        if self.sig != other.sig:
            return False
        for m in set(self._terms) | set(other._terms):
            if abs(self[m] - other[m]) > epsilon:
                return False
        return True

    def __repr__(self):
        from .textfmt import format_multivector

        return f"Multivector({self.sig}, {format_multivector(self)!r})"

    def __str__(self):
        from .textfmt import format_multivector

        return format_multivector(self)


@dataclass(frozen=True)
class CoefficientMode:
    """Exact mode (``epsilon is None``) never rounds; float mode compares within ``epsilon``."""

    epsilon: float | None = None

    @property
    def exact(self) -> bool:
        return self.epsilon is None

    @classmethod
    def float_mode(cls, epsilon: float = 1e-12) -> "CoefficientMode":
        if epsilon < 0:
            raise ValueError("epsilon must be non-negative")
        return cls(epsilon)

    def one(self):
        return 1 if self.exact else 1.0

    def equal(self, a, b) -> bool:
        if isinstance(a, Multivector):
            return a == b if self.exact else a.isclose(b, self.epsilon)
        if isinstance(b, Multivector):
            return self.equal(b, a)
        return a == b if self.exact else abs(a - b) <= self.epsilon

    def __str__(self):
        return "exact" if self.exact else f"float(eps={self.epsilon:g})"


EXACT = CoefficientMode()


# --- products -----------------------------------------------------------------


def _check_sig(a: Multivector, b: Multivector) -> Signature:
    if a.sig != b.sig:
        raise SignatureMismatch(f"{a.sig} vs {b.sig}")
    return a.sig


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    sig = _check_sig(a, b)
    out: dict[int, Number] = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            m, s = blade_product(ma, mb, sig)
            c = ca * cb
            out[m] = out.get(m, 0) + (c if s > 0 else -c)
    return Multivector._raw(sig, out)


def _graded_product(a: Multivector, b: Multivector, target) -> Multivector:
    sig = _check_sig(a, b)
    out: dict[int, Number] = {}
    for ma, ca in a._terms.items():
        ga = ma.bit_count()
        for mb, cb in b._terms.items():
            m = ma ^ mb
            if m.bit_count() != target(ga, mb.bit_count()):
                continue
            _, s = blade_product(ma, mb, sig)
            c = ca * cb
            out[m] = out.get(m, 0) + (c if s > 0 else -c)
    return Multivector._raw(sig, out)


def wedge(a: Multivector, b: Multivector) -> Multivector:
    """Grade ``i+j`` part of the product of each grade-i / grade-j component pair."""
    return _graded_product(a, b, lambda i, j: i + j)


def dot(a: Multivector, b: Multivector) -> Multivector:
    """Grade ``|i-j|`` part of the product of each grade-i / grade-j component pair.

    Scalars are not special-cased: ``dot(2, B) == 2*B``.
    """
    return _graded_product(a, b, lambda i, j: abs(i - j))


def grade_project(a: Multivector, k: int) -> Multivector:
    if not 0 <= k <= a.sig.n:
        raise GradeOutOfRange(f"grade {k} outside 0..{a.sig.n}")
    return Multivector._raw(a.sig, {m: c for m, c in a._terms.items() if m.bit_count() == k})


def reversion_sign(k: int) -> int:
    return -1 if (k * (k - 1) // 2) & 1 else 1


def reversion(a: Multivector) -> Multivector:
    return Multivector._raw(
        a.sig, {m: c * reversion_sign(m.bit_count()) for m, c in a._terms.items()}
    )


def inner(a: Multivector, b: Multivector):
    """``g(A, B)``: the scalar part of ``dot(reversion(B), A)``."""
    _check_sig(a, b)
    return dot(reversion(b), a).scalar_part()


def norm2(a: Multivector):
    return inner(a, a)


def hodge_dual(a: Multivector) -> Multivector:
    """``A^dagger I``."""
    return geometric_product(reversion(a), a.sig.pseudoscalar())


def inverse(a: Multivector) -> Multivector:
    """``A^dagger / g(A, A)`` for a blade ``A``."""
    if not a.is_homogeneous():
        raise NotABlade(f"inverse needs a homogeneous blade, got grades {sorted(a.grades())}")
    rev = reversion(a)
    if not geometric_product(a, rev).is_scalar():
        raise NotABlade(f"{a} is homogeneous but not a blade")
    n2 = norm2(a)
    if n2 == 0:
        raise NullBlade(f"{a} has zero norm")
    return rev / n2


def geometric_inverse(a: Multivector) -> Multivector:
    """``A^{-1} I``: the dual with inverse magnitude."""
    return geometric_product(inverse(a), a.sig.pseudoscalar())


def commutator(a: Multivector, b: Multivector) -> Multivector:
    return geometric_product(a, b) - geometric_product(b, a)


def anticommutator(a: Multivector, b: Multivector) -> Multivector:
    return geometric_product(a, b) + geometric_product(b, a)


def basis_blades(sig: Signature, grade: int | None = None) -> Iterable[Multivector]:
    for m in sig.basis(grade):
        yield Multivector._raw(sig, {m: 1})
