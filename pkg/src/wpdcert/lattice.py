"""Sparse lattice classes over Q with the signature-(1,oo) intersection form.

A class is a rational multiple of the line class ``l`` plus finitely many
rational multiples of exceptional classes ``e_label``.  The intersection form
is ``l.l = 1``, ``e.e = -1``, all distinct basis classes orthogonal:

    intersect(c, d) = c.ell * d.ell - sum_label c[label] * d[label]

All arithmetic is exact (``fractions.Fraction``); the numeric hyperbolic layer
lives in :mod:`wpdcert.hyperbolic`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Tuple, Union

Rational = Union[int, Fraction]

FAMILY_P = "p"
FAMILY_Q = "q"
FAMILY_ANON = "anon"

_LABEL_RE = re.compile(r"^([pq])(\d+)@n(\d+)$|^anon(\d+)$")


@dataclass(frozen=True, order=True)
class PointLabel:
    """Identifier of an exceptional class.

    Family "p"/"q" labels carry the tower index and the parameter n of the
    map they belong to; "anon" labels stand for hypothetical base points and
    never collide with the p/q families.
    """

    family: str
    index: int
    context_n: Optional[int] = None

    def __post_init__(self):
        if self.family in (FAMILY_P, FAMILY_Q):
            if self.context_n is None or self.context_n < 2:
                raise ValueError("p/q labels need a context n >= 2")
        elif self.family == FAMILY_ANON:
            if self.context_n is not None:
                raise ValueError("anonymous labels carry no context n")
        else:
            raise ValueError(f"unknown label family {self.family!r}")
        if self.index < 0:
            raise ValueError("label index must be a natural number")

    def __str__(self):
        if self.family == FAMILY_ANON:
            return f"anon{self.index}"
        return f"{self.family}{self.index}@n{self.context_n}"


def p_label(index: int, n: int) -> PointLabel:
    return PointLabel(FAMILY_P, index, n)


def q_label(index: int, n: int) -> PointLabel:
    return PointLabel(FAMILY_Q, index, n)


def anon_label(index: int) -> PointLabel:
    return PointLabel(FAMILY_ANON, index)


def parse_label(text: str) -> PointLabel:
    m = _LABEL_RE.match(text.strip())
    if not m:
        raise ValueError(f"cannot parse point label {text!r}")
    if m.group(4) is not None:
        return anon_label(int(m.group(4)))
    return PointLabel(m.group(1), int(m.group(2)), int(m.group(3)))


class PMClass:
    """Finite-support class: ell_coeff * l + sum of exc[label] * e_label.

    Canonical sparse form: ``exc`` holds no zero entries, so structural
    equality is mathematical equality.  Instances are immutable.
    """

    __slots__ = ("ell", "exc")

    def __init__(self, ell: Rational = 0, exc: Union[Mapping[PointLabel, Rational], Iterable[Tuple[PointLabel, Rational]], None] = None):
        object.__setattr__(self, "ell", Fraction(ell))
        items = exc.items() if isinstance(exc, Mapping) else (exc or ())
        clean = {}
        for label, coeff in items:
            coeff = Fraction(coeff)
            if coeff:
                clean[label] = clean.get(label, Fraction(0)) + coeff
                if not clean[label]:
                    del clean[label]
        object.__setattr__(self, "exc", clean)

    def __setattr__(self, name, value):
        raise AttributeError("PMClass is immutable")

    def coeff(self, label: PointLabel) -> Fraction:
        return self.exc.get(label, Fraction(0))

    def support(self):
        return self.exc.keys()

    def is_zero(self) -> bool:
        return not self.ell and not self.exc

    def __add__(self, other: "PMClass") -> "PMClass":
        exc = dict(self.exc)
        for label, coeff in other.exc.items():
            s = exc.get(label, Fraction(0)) + coeff
            if s:
                exc[label] = s
            else:
                exc.pop(label, None)
        out = PMClass.__new__(PMClass)
        object.__setattr__(out, "ell", self.ell + other.ell)
        object.__setattr__(out, "exc", exc)
        return out

    def __neg__(self) -> "PMClass":
        return self * -1

    def __sub__(self, other: "PMClass") -> "PMClass":
        return self + (-other)

    def __mul__(self, t: Rational) -> "PMClass":
        t = Fraction(t)
        out = PMClass.__new__(PMClass)
        if not t:
            object.__setattr__(out, "ell", Fraction(0))
            object.__setattr__(out, "exc", {})
            return out
        object.__setattr__(out, "ell", self.ell * t)
        object.__setattr__(out, "exc", {label: coeff * t for label, coeff in self.exc.items()})
        return out

    __rmul__ = __mul__

    def __truediv__(self, t: Rational) -> "PMClass":
        return self * (Fraction(1) / Fraction(t))

    def __eq__(self, other):
        return isinstance(other, PMClass) and self.ell == other.ell and self.exc == other.exc

    def __hash__(self):
        return hash((self.ell, frozenset(self.exc.items())))

    def __repr__(self):
        if self.is_zero():
            return "PMClass(0)"
        parts = []
        if self.ell:
            parts.append(f"{self.ell}*l")
        for label in sorted(self.exc):
            parts.append(f"{self.exc[label]}*e[{label}]")
        return "PMClass(" + " + ".join(parts) + ")"


def line_class() -> PMClass:
    """The class l of a line (self-intersection 1)."""
    return PMClass(1)


def exceptional(label: PointLabel) -> PMClass:
    """The exceptional class e_label (self-intersection -1)."""
    return PMClass(0, {label: 1})


def intersect(c: PMClass, d: PMClass) -> Fraction:
    """Intersection pairing; bilinear, symmetric, signature (1, oo)."""
    total = c.ell * d.ell
    a, b = c.exc, d.exc
    if len(b) < len(a):
        a, b = b, a
    for label, coeff in a.items():
        other = b.get(label)
        if other is not None:
            total -= coeff * other
    return total


def add(c: PMClass, d: PMClass) -> PMClass:
    return c + d


def scale(c: PMClass, t: Rational) -> PMClass:
    return c * t


def is_unit_timelike(c: PMClass) -> bool:
    """True iff c.c = 1 and the l-coefficient is positive (l is the ample reference)."""
    return c.ell > 0 and intersect(c, c) == 1


def format_rational(x: Rational) -> str:
    return str(Fraction(x))


def to_json_dict(c: PMClass) -> dict:
    """JSON form {"ell": "p/q", "exc": [{"label": ..., "coeff": "p/q"}, ...]}."""
    return {
        "ell": format_rational(c.ell),
        "exc": [
            {"label": str(label), "coeff": format_rational(c.exc[label])}
            for label in sorted(c.exc)
        ],
    }


def from_json_dict(data: dict) -> PMClass:
    exc = [(parse_label(entry["label"]), Fraction(entry["coeff"])) for entry in data.get("exc", ())]
    return PMClass(Fraction(data.get("ell", 0)), exc)
