"""Plain-text multivector format: ``1 + 2*e12 - e134``, ``1/2*I``, ``-3*e{1,10,12}``.

Blade indices are 1-based. ``e132`` is read as the product ``e1 e3 e2`` and
canonicalised (here to ``-e123``); repeated indices contract with the metric.
Single-digit concatenation only works for n <= 9, so larger algebras use the
braced form, which is also what the formatter emits there.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import EXACT, CoefficientMode, Multivector, Signature, blade_label
from .errors import ParseError

_TERM = re.compile(
    r"""
    \s*(?P<sign>[+-])?\s*
    (?:
        (?P<coeff>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?(?:/\d+)?|\.\d+(?:[eE][+-]?\d+)?)
        \s*(?P<star>\*)?\s*
    )?
    (?P<blade>I|e\{[\d,\s]*\}|e\d+)?
    \s*
    """,
    re.VERBOSE,
)


def _number(text: str, mode: CoefficientMode):
    if mode.exact:
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad coefficient {text!r}") from None
    if "/" in text:
        num, den = text.split("/")
        return float(num) / float(den)
    return float(text)


def _blade(token: str, sig: Signature) -> Multivector:
    if token == "I":
        return sig.pseudoscalar()
    body = token[1:]
    if body.startswith("{"):
        inner = body[1:-1].strip()
        idx = [int(s) for s in inner.split(",") if s.strip()] if inner else []
    else:
        idx = [int(ch) for ch in body]
    try:
        return sig.e(*idx)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def parse_multivector(text: str, sig: Signature, mode: CoefficientMode = EXACT) -> Multivector:
    """Parse the text format into a multivector over ``sig``."""
    src = text.strip()
    if not src:
        raise ParseError("empty multivector text")
    pos = 0
    total = Multivector.zero(sig)
    first = True
    while pos < len(src):
        m = _TERM.match(src, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"cannot parse {src[pos:]!r}")
        sign, coeff, star, blade = m.group("sign", "coeff", "star", "blade")
        if sign is None and not first:
            raise ParseError(f"missing '+' or '-' before {src[pos:]!r}")
        if coeff is None and blade is None:
            raise ParseError(f"dangling sign in {src!r}")
        if star and blade is None:
            raise ParseError(f"'*' not followed by a blade in {src!r}")
        if coeff is not None and blade is not None and not star:
            raise ParseError(f"expected '*' between coefficient and blade in {src!r}")
        value = _number(coeff, mode) if coeff is not None else mode.one()
        if sign == "-":
            value = -value
        term = _blade(blade, sig) * value if blade is not None else sig.scalar(value)
        total = total + term
        pos = m.end()
        first = False
    return total


def _format_coeff(c) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}" if c.denominator != 1 else str(c.numerator)
    if isinstance(c, float):
        return repr(c)
    return str(c)


def format_multivector(mv: Multivector) -> str:
    """Render in canonical order (grade, then index tuple). Zero renders as ``0``."""
    parts: list[str] = []
    for mask, c in mv:
        negative = c < 0
        mag = -c if negative else c
        label = blade_label(mask, mv.sig.n)
        if mask == 0:
            body = _format_coeff(mag)
        elif mag == 1:
            body = label
        else:
            body = f"{_format_coeff(mag)}*{label}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(parts) if parts else "0"
