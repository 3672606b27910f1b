"""Pure-Python brute-force search kernel over F_p.

Reference implementation of the Fix-set enumeration; a Cython twin with the
same contract lives in ``_ffbrute``.  Every candidate affine map
(a x + b, c y + d), a, c != 0, is conjugated generically (no closed forms)
and kept iff

  * both single conjugates h f h^-1 and h^-1 f h have degree 1,
  * the forward conjugate fixes the base point p_0 = [1:0:0] (no x-term in
    its second component) and the backward one fixes q_0 = [0:1:0],
  * for n = 2 only, both double conjugates h^2 f h^-2, h^-2 f h^2 also have
    degree 1.

Returns the sorted list of surviving (a, b, c, d) tuples.
"""

from __future__ import annotations

from typing import List, Tuple

from .fields import PrimeField
from .polymaps import PolyMap, affine_map, compose, henon_inverse, henon_map


def _degree_at_most_one(f: PolyMap) -> bool:
    return f.comp_x.degree() <= 1 and f.comp_y.degree() <= 1


def enumerate_fix_candidates(n: int, p: int) -> List[Tuple[int, int, int, int]]:
    field = PrimeField(p)
    if n % p == 0:
        raise ValueError("characteristic divides n")
    h = henon_map(n, field)
    hinv = henon_inverse(n, field)
    survivors = []
    for a in field.units():
        for c in field.units():
            for b in range(p):
                for d in range(p):
                    f = affine_map(field, a, b, c, d)
                    fwd = compose(h, compose(f, hinv))
                    if not _degree_at_most_one(fwd):
                        continue
                    bwd = compose(hinv, compose(f, h))
                    if not _degree_at_most_one(bwd):
                        continue
                    if fwd.comp_y.coeff(1, 0) != 0:  # moves p_0
                        continue
                    if bwd.comp_x.coeff(0, 1) != 0:  # moves q_0
                        continue
                    if n == 2:
                        fwd2 = compose(h, compose(fwd, hinv))
                        if not _degree_at_most_one(fwd2):
                            continue
                        bwd2 = compose(hinv, compose(bwd, h))
                        if not _degree_at_most_one(bwd2):
                            continue
                    survivors.append((a, b, c, d))
    survivors.sort()
    return survivors
