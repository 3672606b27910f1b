"""Mechanical re-verification of the discrete-action certificate.

For each n >= 2 this pipeline re-derives, with exact arithmetic where the
quantities are rational and stated tolerances elsewhere:

  * the admissible tolerance window for the axis of the shift map,
  * the degree bound cosh(2 argcosh sqrt(2) + eps) < 4,
  * the exact worst-case pairings of hypothetical degree-2/3 base-point
    classes against the truncated axis series (-3 and -2 + 1/n),
  * the resulting exclusion of degrees 2 and 3,
  * the Fix set of diagonal maps (a x, a^n y), a^(n^2-1) = 1, both in closed
    form and by exhaustive search over a prime field,
  * the geometric inclusion hypothesis behind Fix-set monotonicity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import _bruteforce as _pure_kernel
from .action import AxisData, axis_classes
from .fields import PrimeField
from .hyperbolic import distance, geodesic_point, as_vector
from .lattice import intersect
from .polymaps import PolyMap, affine_map

try:
    from . import _ffbrute as _compiled_kernel
except ImportError:  # pure-Python install
    _compiled_kernel = None

SQRT2 = math.sqrt(2.0)
ACOSH_SQRT2 = math.acosh(SQRT2)

#: slack for verdicts that sit exactly on the window boundary (chosen_eps = eps_max
#: makes the first window inequality an equality in exact arithmetic)
BOUNDARY_TOL = 1e-12

_MAX_BRUTEFORCE_CANDIDATES = 500_000_000


class ParameterError(ValueError):
    """Invalid certification parameters (CLI exit code 2)."""


def kernel_name() -> str:
    return "compiled" if _compiled_kernel is not None else "pure"


# ---------------------------------------------------------------------------
# tolerance window and degree bound


@dataclass(frozen=True)
class StarWindow:
    """Admissible tolerance window for a given n.

    eps_max = argcosh(sqrt(2) + 1/(n sqrt(2))) - argcosh(sqrt(2)); any
    chosen_eps in (0, eps_max] keeps the three window inequalities valid
    (the first one with equality at the right endpoint).
    """

    n: int
    eps_max: float
    chosen_eps: float

    def checks(self) -> dict:
        deg2_threshold = math.acosh(SQRT2 + 1.0 / (self.n * SQRT2))
        lhs1 = ACOSH_SQRT2 + self.chosen_eps
        rhs2 = math.acosh(3.0 / SQRT2)
        lhs3 = 2.0 * ACOSH_SQRT2 + self.chosen_eps
        rhs3 = math.acosh(4.0)
        return {
            "proj_plus_eps_le_deg2_threshold": {
                "lhs": lhs1,
                "rhs": deg2_threshold,
                "ok": lhs1 <= deg2_threshold + BOUNDARY_TOL,
            },
            "deg2_threshold_lt_deg3_bound": {
                "lhs": deg2_threshold,
                "rhs": rhs2,
                "ok": deg2_threshold < rhs2,
            },
            "double_proj_plus_eps_lt_acosh4": {
                "lhs": lhs3,
                "rhs": rhs3,
                "ok": lhs3 < rhs3,
            },
        }

    def all_ok(self) -> bool:
        return all(c["ok"] for c in self.checks().values())


def epsilon_window(n: int, eps: Optional[float] = None) -> StarWindow:
    """Window for n, with chosen_eps = eps_max (maximal choice) by default."""
    if n < 2:
        raise ParameterError("need n >= 2")
    eps_max = math.acosh(SQRT2 + 1.0 / (n * SQRT2)) - ACOSH_SQRT2
    chosen = eps_max if eps is None else float(eps)
    if not 0.0 < chosen <= eps_max + BOUNDARY_TOL:
        raise ParameterError(f"eps must lie in (0, {eps_max:.12g}] for n={n}")
    return StarWindow(n, eps_max, chosen)


def degree_bound(n: int, eps: float) -> float:
    """cosh(2 argcosh sqrt(2) + eps); must stay below 4 inside the window."""
    epsilon_window(n, eps)  # validates eps against the window
    return math.cosh(2.0 * ACOSH_SQRT2 + eps)


# ---------------------------------------------------------------------------
# worst-case pairings and degree exclusion

_MULTIPLICITIES = {2: (1, 1, 1), 3: (2, 1, 1, 1, 1)}


def worst_case_intersection(n: int, deg: int, axis: AxisData) -> Fraction:
    """Exact minimum of (sum m_i e_i) . r over injective label assignments.

    Hypothetical base-point classes of a degree-2 (multiplicities 1,1,1) or
    degree-3 (2,1,1,1,1) map each meet at most one term of the axis series r,
    whose terms are pairwise orthogonal, so the minimum is minus the greedy
    pairing of multiplicities with the largest coefficients of r.
    """
    if deg not in _MULTIPLICITIES:
        raise ValueError("only degrees 2 and 3 occur below the degree bound")
    if axis.n != n:
        raise ValueError("axis data belongs to a different n")
    if axis.depth < 2:
        raise ValueError("need axis truncation depth >= 2")
    mults = _MULTIPLICITIES[deg]
    coeffs = sorted(axis.r.exc.values(), reverse=True)
    if len(coeffs) < len(mults):
        raise ValueError("truncation too shallow to host the assignment")
    return -sum((m * c for m, c in zip(mults, coeffs)), Fraction(0))


def exclusion_data(n: int, deg: int, eps: float, axis: AxisData) -> dict:
    """Lower bound for the pairing of a degree-deg image of l with the axis point.

    bound = deg*sqrt(2) + worst_case/sqrt(2) must reach cosh(argcosh sqrt(2) + eps)
    for the degree to be excluded; equality holds for deg=2 at eps = eps_max.
    """
    wci = worst_case_intersection(n, deg, axis)
    bound = deg * SQRT2 + float(wci) / SQRT2
    threshold = math.cosh(ACOSH_SQRT2 + eps)
    return {
        "worst_case": wci,
        "bound": bound,
        "threshold": threshold,
        "ok": bound >= threshold - BOUNDARY_TOL,
    }


def exclusion_check(n: int, deg: int, eps: float, axis: AxisData) -> bool:
    return exclusion_data(n, deg, eps, axis)["ok"]


# ---------------------------------------------------------------------------
# Fix sets


@dataclass(frozen=True, order=True)
class RootExponentMap:
    """Diagonal map (zeta^a_exp x, zeta^c_exp y), zeta a primitive root of unity.

    Symbolic form of a Fix-set element over Q, where the roots of unity are
    not rational; modulus is n^2 - 1 and c_exp = n * a_exp (mod modulus).
    """

    modulus: int
    a_exp: int
    c_exp: int

    def __str__(self):
        m = self.modulus
        return f"zeta{m}^{self.a_exp}*x; zeta{m}^{self.c_exp}*y"


def fix_set_symbolic(n: int, p: Optional[int] = None):
    """The diagonal maps (a x, a^n y) with a^(n^2-1) = 1.

    Over F_p the list holds the p-rational roots (all n^2 - 1 of them iff
    p = 1 mod n^2 - 1); without a prime, root-of-unity exponent pairs are
    returned since Q itself lacks the roots.
    """
    if n < 2:
        raise ParameterError("need n >= 2")
    m = n * n - 1
    if p is None:
        return [RootExponentMap(m, k, n * k % m) for k in range(m)]
    field = PrimeField(p)
    if n % p == 0:
        raise ParameterError("characteristic divides n")
    return [affine_map(field, a, 0, pow(a, n, p), 0) for a in field.roots_of_unity(m)]


def fix_set_bruteforce(n: int, p: int, force_pure: bool = False) -> List[PolyMap]:
    """Exhaustive search over all affine (a x + b, c y + d), a, c != 0, in F_p.

    Independent oracle for the Fix set: keeps candidates whose generic
    conjugates by the shift map pass the degree-1 and base-point checks (see
    _bruteforce).  Uses the compiled kernel when available.
    """
    if n < 2:
        raise ParameterError("need n >= 2")
    field = PrimeField(p)  # validates primality
    if n % p == 0:
        raise ParameterError("characteristic divides n")
    if p * p * (p - 1) * (p - 1) > _MAX_BRUTEFORCE_CANDIDATES:
        raise ParameterError(f"brute-force search over F_{p} is infeasible")
    if _compiled_kernel is not None and not force_pure:
        tuples = _compiled_kernel.enumerate_fix_candidates(n, p)
    else:
        tuples = _pure_kernel.enumerate_fix_candidates(n, p)
    return [affine_map(field, a, b, c, d) for (a, b, c, d) in sorted(tuples)]


def _as_tuples(maps: Sequence[PolyMap]) -> List[Tuple]:
    out = []
    for f in maps:
        out.append(
            (
                f.comp_x.coeff(1, 0),
                f.comp_x.coeff(0, 0),
                f.comp_y.coeff(0, 1),
                f.comp_y.coeff(0, 0),
            )
        )
    return sorted(out)


# ---------------------------------------------------------------------------
# Fix-set monotonicity (geometric inclusion hypothesis)


def fix_monotonicity_check(axis: AxisData) -> dict:
    """Verify the convexity hypothesis behind the Fix-set inclusion chain.

    The five truncated axis points h^k(w), k = -2..2, must lie in order on a
    common geodesic up to a tail-derived tolerance; then for every isometry at
    once, moving the outer pair by at most eps moves the inner points by at
    most eps + 2*deviation.  Direct evaluation on the Fix members themselves
    would need the action on infinitely-near points, which is out of scope.
    """
    points = []
    for k in (-2, -1, 0, 1, 2):
        cls = axis.translate_w(k)
        norm_sq = intersect(cls, cls)
        points.append(as_vector(cls) * (1.0 / math.sqrt(float(norm_sq))))
    total = distance(points[0], points[-1])
    consecutive = [distance(points[i], points[i + 1]) for i in range(4)]
    additivity_gap = abs(total - sum(consecutive))
    deviations = []
    for k in (1, 2, 3):
        t = distance(points[0], points[k])
        on_geodesic = geodesic_point(points[0], points[-1], t)
        deviations.append(distance(points[k], on_geodesic))
    tolerance = 1e-7 + 10.0 * math.sqrt(float(axis.tail_norm_sq))
    max_dev = max(deviations + [additivity_gap])
    ordered = all(
        distance(points[0], points[i]) < distance(points[0], points[i + 1]) for i in range(4)
    )
    return {
        "max_deviation": max_dev,
        "additivity_gap": additivity_gap,
        "tolerance": tolerance,
        "ordered": ordered,
        "ok": ordered and max_dev <= tolerance,
    }


# ---------------------------------------------------------------------------
# full pipeline


@dataclass
class CertReport:
    """Aggregated result of the certification pipeline; see to_json_dict."""

    n: int
    depth: int
    prime: Optional[int]
    star: StarWindow
    degree_bound_value: float
    axis_facts: dict
    worst_case: dict
    projection: dict
    translation: dict
    monotonicity: dict
    fix_symbolic: list
    fix_bruteforce: Optional[List[PolyMap]]
    oracle_count: Optional[int]
    kernel: Optional[str]
    verdicts: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    def to_json_dict(self) -> dict:
        from .report import cert_report_json  # local import to keep layering flat

        return cert_report_json(self)


def certify(
    n: int,
    depth: int = 20,
    p: Optional[int] = None,
    eps: Optional[float] = None,
    force_pure: bool = False,
) -> CertReport:
    """Run the whole pipeline; the report passes iff every verdict holds."""
    if not isinstance(n, int) or n < 2:
        raise ParameterError("need an integer n >= 2")
    if not isinstance(depth, int) or depth < 2:
        raise ParameterError("need an integer truncation depth >= 2")
    m = n * n - 1
    if p is not None:
        field = PrimeField(p)  # raises on non-primes
        if n % p == 0:
            raise ParameterError("characteristic divides n")
        if (p - 1) % m != 0:
            raise ParameterError(
                f"prime {p} has no full set of (n^2-1)-th roots of unity; "
                f"pick p = 1 (mod {m})"
            )

    star = epsilon_window(n, eps)
    dbound = degree_bound(n, star.chosen_eps)
    axis = axis_classes(n, depth)

    tail_exp = Fraction(1, n ** (2 * depth + 2))
    axis_facts = {
        "tail_norm_sq": axis.tail_norm_sq,
        "b_cross": intersect(axis.b_plus, axis.b_minus),
        "b_plus_self": intersect(axis.b_plus, axis.b_plus),
        "b_minus_self": intersect(axis.b_minus, axis.b_minus),
        "w_norm_sq": axis.w_norm_sq(),
        "expected_b_cross": Fraction(1),
        "expected_b_self": tail_exp,
        "expected_w_norm_sq": 1 + tail_exp,
    }
    axis_ok = (
        axis_facts["b_cross"] == 1
        and axis_facts["b_plus_self"] == tail_exp
        and axis_facts["b_minus_self"] == tail_exp
        and axis_facts["w_norm_sq"] == 1 + tail_exp
    )

    worst_case = {
        2: exclusion_data(n, 2, star.chosen_eps, axis),
        3: exclusion_data(n, 3, star.chosen_eps, axis),
    }
    wci_ok = (
        worst_case[3]["worst_case"] == -3
        and worst_case[2]["worst_case"] == Fraction(-2) + Fraction(1, n)
    )

    # distance from l to the normalized truncated projection point
    proj_cosh = SQRT2 / math.sqrt(float(axis.w_norm_sq()))
    proj_dist = math.acosh(max(proj_cosh, 1.0)) if proj_cosh >= 1.0 else float("nan")
    proj_tol = 1e-9 + SQRT2 * float(tail_exp)
    projection = {
        "distance": proj_dist,
        "expected": ACOSH_SQRT2,
        "tolerance": proj_tol,
        "ok": abs(proj_dist - ACOSH_SQRT2) <= proj_tol,
    }

    # translation length: cosh of the displacement of the normalized axis point
    w = axis.w_scaled
    hw = axis.translate_w(1)
    cosh_ratio = Fraction(intersect(w, hw), intersect(w, w))
    expected_cosh = Fraction(n * n + 1, 2 * n)
    trans_tol = SQRT2 * float(Fraction(1, n ** (depth + 1)))
    translation = {
        "cosh_value": cosh_ratio,
        "expected": expected_cosh,
        "tolerance": trans_tol,
        "ok": abs(float(cosh_ratio - expected_cosh)) <= trans_tol,
    }

    monotonicity = fix_monotonicity_check(axis)

    fix_sym = fix_set_symbolic(n, p)
    fix_bf = None
    oracle_count = None
    kernel = None
    match_ok = True
    if p is not None:
        fix_bf = fix_set_bruteforce(n, p, force_pure=force_pure)
        oracle_count = p * p * (p - 1) * (p - 1)
        kernel = "pure" if force_pure else kernel_name()
        match_ok = _as_tuples(fix_bf) == _as_tuples(fix_sym)
    cardinality_ok = len(fix_sym) == m

    verdicts = {
        "star_window_ok": star.all_ok(),
        "degree_bound_ok": dbound < 4.0,
        "axis_normalization_ok": axis_ok,
        "worst_case_exact_ok": wci_ok,
        "exclusion_deg2_ok": worst_case[2]["ok"],
        "exclusion_deg3_ok": worst_case[3]["ok"],
        "projection_ok": projection["ok"],
        "translation_ok": translation["ok"],
        "monotonicity_ok": monotonicity["ok"],
        "fix_cardinality_ok": cardinality_ok,
        "oracle_match_ok": match_ok,
    }

    return CertReport(
        n=n,
        depth=depth,
        prime=p,
        star=star,
        degree_bound_value=dbound,
        axis_facts=axis_facts,
        worst_case=worst_case,
        projection=projection,
        translation=translation,
        monotonicity=monotonicity,
        fix_symbolic=fix_sym,
        fix_bruteforce=fix_bf,
        oracle_count=oracle_count,
        kernel=kernel,
        verdicts=verdicts,
    )
