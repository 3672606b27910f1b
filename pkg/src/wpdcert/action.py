"""Action of the shift maps (x,y) -> (y, y^n - x) on sparse lattice classes.

The map has 2n-1 base points forming a tower: p_0 with multiplicity n-1 and
p_1..p_{2n-2} with multiplicity 1; its inverse has the mirror family q_k.
Iterating the map shifts the exceptional towers by 2n-1 per power, so the
action on classes is a signed index shift plus the rule on the line class,
l -> n*l - e_n^-(aggregate).  The action is partial: the forward image of an
individual low-index p-class (and the backward image of a low-index q-class)
would need the full resolution lattice, which is not modeled; only the
aggregate block e_n^+/- has a forced image via the group law.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .lattice import (
    FAMILY_ANON,
    FAMILY_P,
    FAMILY_Q,
    PMClass,
    PointLabel,
    exceptional,
    intersect,
    line_class,
    p_label,
    q_label,
)


class ActionDomainError(ValueError):
    """Raised when a class leaves the domain of the partial lattice action."""


def base_points(n: int, family: str = FAMILY_P) -> List[Tuple[PointLabel, int]]:
    """Base points of the shift map (family "p") or of its inverse ("q").

    Multiplicities are (n-1, 1, ..., 1) over the tower of 2n-1 points; the
    squared multiplicities sum to n^2 - 1.
    """
    if n < 2:
        raise ValueError("base_points needs n >= 2")
    if family not in (FAMILY_P, FAMILY_Q):
        raise ValueError("family must be 'p' or 'q'")
    mk = p_label if family == FAMILY_P else q_label
    return [(mk(0, n), n - 1)] + [(mk(k, n), 1) for k in range(1, 2 * n - 1)]


def exceptional_block(n: int, family: str) -> PMClass:
    """The weighted sum of exceptional classes over one base-point tower."""
    out = PMClass()
    for label, mult in base_points(n, family):
        out = out + exceptional(label) * mult
    return out


def orbit_label(n: int, label: PointLabel, i: int) -> PointLabel:
    """Image label of e_label under the i-th power of the shift map.

    Powers move the q-family up by i*(2n-1) and the p-family down; a shift
    that would produce a negative index is outside the action's domain.
    """
    if label.family == FAMILY_ANON:
        raise ActionDomainError("anonymous labels are not in any orbit")
    if label.context_n != n:
        raise ActionDomainError(f"label {label} does not belong to the n={n} tower")
    step = 2 * n - 1
    shift = i * step if label.family == FAMILY_Q else -i * step
    new_index = label.index + shift
    if new_index < 0:
        raise ActionDomainError(
            f"power {i} of the shift map does not act on e[{label}] "
            "(index would leave the tower)"
        )
    return PointLabel(label.family, new_index, n)


def _act_once(n: int, c: PMClass, sign: int) -> PMClass:
    """One application of the shift map (sign=+1) or its inverse (sign=-1)."""
    step = 2 * n - 1
    low_family = FAMILY_P if sign == 1 else FAMILY_Q
    other_family = FAMILY_Q if sign == 1 else FAMILY_P
    out = PMClass()
    if c.ell:
        # l -> n*l - (aggregate block of the inverse map's base points)
        out = out + (line_class() * n - exceptional_block(n, other_family)) * c.ell
    low_block = {}
    for label, coeff in c.exc.items():
        if label.family == FAMILY_ANON or label.context_n != n:
            raise ActionDomainError(f"class touches label {label} outside the n={n} action")
        if label.family == other_family:
            out = out + exceptional(PointLabel(label.family, label.index + step, n)) * coeff
        elif label.index >= step:
            out = out + exceptional(PointLabel(label.family, label.index - step, n)) * coeff
        else:
            low_block[label.index] = coeff
    if low_block:
        # Only the aggregate block (n-1, 1, ..., 1) has a forced image:
        # applying the map to (inverse map)(l) = n*l - block gives
        # block -> (n^2-1)*l - n*(mirror block).
        mu = low_block.get(0, Fraction(0)) / (n - 1)
        pattern_ok = all(low_block.get(k, Fraction(0)) == mu for k in range(1, step))
        if not pattern_ok or low_block.get(0, Fraction(0)) != mu * (n - 1):
            raise ActionDomainError(
                f"class touches the low {low_family}-tower in a non-aggregate way; "
                "individual images there are not modeled"
            )
        out = out + (line_class() * (n * n - 1) - exceptional_block(n, other_family) * n) * mu
    return out


def henon_act(n: int, c: PMClass, power: int) -> PMClass:
    """Linear extension of the shift-map action to a signed power."""
    if n < 2:
        raise ValueError("henon_act needs n >= 2")
    sign = 1 if power > 0 else -1
    for _ in range(abs(power)):
        c = _act_once(n, c, sign)
    return c


@dataclass(frozen=True)
class AxisData:
    """Truncated axis data of the shift map, all coefficients exact.

    b_plus/b_minus are the truncations of the ideal endpoint classes, r the
    truncation of the combined orbit series, and w_scaled the projection of l
    onto the axis times sqrt(2): w_scaled = 2*l - r, so that every stored
    coefficient stays rational.  Intersections of true axis classes follow by
    scaling:  w.w = (w_scaled.w_scaled)/2,  w.l = (w_scaled.l)/sqrt(2).
    tail_norm_sq = 2*n^(-2*depth-2) bounds the discarded tail of r exactly.
    """

    n: int
    depth: int
    b_plus: PMClass
    b_minus: PMClass
    r: PMClass
    w_scaled: PMClass
    tail_norm_sq: Fraction

    def w_norm_sq(self) -> Fraction:
        """Exact w.w of the truncated, sqrt(2)-normalized projection point."""
        return intersect(self.w_scaled, self.w_scaled) / 2

    def w_dot(self, c: PMClass) -> float:
        """Numeric w.c (the 1/sqrt(2) scale applied)."""
        return float(intersect(self.w_scaled, c)) / 2 ** 0.5

    def translate_w(self, power: int) -> PMClass:
        """Image of w_scaled under a signed power of the shift map."""
        return henon_act(self.n, self.w_scaled, power) if power else self.w_scaled


def axis_classes(n: int, depth: int) -> AxisData:
    """Truncate the axis series of the shift map at the given depth (>= 1).

    The truncated endpoint classes satisfy, exactly:
      b_plus . b_minus = 1,   b_plus . b_plus = b_minus . b_minus = n^(-2*depth-2),
      w_scaled . w_scaled = 2 + 2*n^(-2*depth-2).
    """
    if n < 2:
        raise ValueError("axis_classes needs n >= 2")
    if depth < 1:
        raise ValueError("axis_classes needs depth >= 1")
    e_plus = exceptional_block(n, FAMILY_P)
    e_minus = exceptional_block(n, FAMILY_Q)
    ell = line_class()
    b_plus = ell
    b_minus = ell
    r = PMClass()
    fwd = e_minus
    bwd = e_plus
    for i in range(depth + 1):
        weight = Fraction(1, n ** (i + 1))
        b_plus = b_plus - fwd * weight
        b_minus = b_minus - bwd * weight
        r = r + (fwd + bwd) * weight
        if i < depth:
            fwd = henon_act(n, fwd, 1)
            bwd = henon_act(n, bwd, -1)
    tail = Fraction(2, n ** (2 * depth + 2))
    return AxisData(n, depth, b_plus, b_minus, r, ell * 2 - r, tail)
