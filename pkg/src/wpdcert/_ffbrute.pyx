# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled brute-force search kernel over F_p.

Same contract as _bruteforce.enumerate_fix_candidates: generic modular
polynomial arithmetic on dense (x-degree, y-degree) coefficient grids, no
closed-form shortcuts.  Supports n <= 16; coefficients are kept normalized
in 0..p-1.
"""

cdef enum:
    STRIDE = 17
    BUF = 289  # STRIDE * STRIDE


cdef inline void pzero(long long* f) noexcept nogil:
    cdef int k
    for k in range(BUF):
        f[k] = 0


cdef inline void pcopy(long long* src, long long* dst) noexcept nogil:
    cdef int k
    for k in range(BUF):
        dst[k] = src[k]


cdef inline long long submod(long long x, long long y, long long p) noexcept nogil:
    return (x - y + p) % p


cdef inline void pmul(long long* a, long long* b, long long* out,
                      int deg_a, int deg_b, long long p) noexcept nogil:
    # out = a * b mod p; deg_a + deg_b must stay below STRIDE
    cdef int i1, j1, i2, j2, at
    cdef long long ca
    pzero(out)
    for i1 in range(deg_a + 1):
        for j1 in range(deg_a - i1 + 1):
            ca = a[i1 * STRIDE + j1]
            if ca == 0:
                continue
            for i2 in range(deg_b + 1):
                for j2 in range(deg_b - i2 + 1):
                    if b[i2 * STRIDE + j2] == 0:
                        continue
                    at = (i1 + i2) * STRIDE + (j1 + j2)
                    out[at] = (out[at] + ca * b[i2 * STRIDE + j2]) % p


cdef inline void ppow(long long* base, int k, long long* out, long long* tmp,
                      int deg_base, long long p) noexcept nogil:
    # out = base ** k
    cdef int step, cur_deg
    pzero(out)
    out[0] = 1
    cur_deg = 0
    for step in range(k):
        pmul(out, base, tmp, cur_deg, deg_base, p)
        pcopy(tmp, out)
        cur_deg += deg_base


cdef inline bint deg_le1(long long* f, int max_deg) noexcept nogil:
    cdef int i, j
    for i in range(max_deg + 1):
        for j in range(max_deg - i + 1):
            if i + j >= 2 and f[i * STRIDE + j] != 0:
                return 0
    return 1


cdef inline int poly_degree(long long* f, int max_deg) noexcept nogil:
    cdef int i, j, d = 0
    for i in range(max_deg + 1):
        for j in range(max_deg - i + 1):
            if f[i * STRIDE + j] != 0 and i + j > d:
                d = i + j
    return d


def enumerate_fix_candidates(int n, long long p):
    """Sorted (a, b, c, d) tuples surviving the conjugation filter (see _bruteforce)."""
    if n < 2:
        raise ValueError("need n >= 2")
    if n > 16 or n * n >= STRIDE:
        raise ValueError("compiled kernel supports n <= 16; use the pure kernel")
    if p < 2:
        raise ValueError("p must be a prime >= 2")
    if n % p == 0:
        raise ValueError("characteristic divides n")

    cdef long long a, b, c, d
    cdef long long fwd[BUF]
    cdef long long bwd[BUF]
    cdef long long base[BUF]
    cdef long long tmp[BUF]
    cdef long long v1[BUF]
    cdef long long v2[BUF]
    cdef long long gg[BUF]
    cdef long long e_x, e_y, e_0
    cdef int k, dv, scan
    cdef bint ok

    survivors = []
    for a in range(1, p):
        for c in range(1, p):
            for b in range(p):
                for d in range(p):
                    # forward conjugate: (c x + d, (c x + d)^n - a x^n + a y - b)
                    pzero(base)
                    base[STRIDE] = c
                    base[0] = d
                    ppow(base, n, fwd, tmp, 1, p)
                    fwd[n * STRIDE] = submod(fwd[n * STRIDE], a, p)
                    fwd[1] = (fwd[1] + a) % p
                    fwd[0] = submod(fwd[0], b, p)
                    if not deg_le1(fwd, n):
                        continue
                    if fwd[STRIDE] != 0:  # x-term: conjugate moves p_0
                        continue
                    # backward conjugate: ((a y + b)^n - c y^n + c x - d, a y + b)
                    pzero(base)
                    base[1] = a
                    base[0] = b
                    ppow(base, n, bwd, tmp, 1, p)
                    bwd[n] = submod(bwd[n], c, p)
                    bwd[STRIDE] = (bwd[STRIDE] + c) % p
                    bwd[0] = submod(bwd[0], d, p)
                    if not deg_le1(bwd, n):
                        continue
                    if bwd[1] != 0:  # y-term: conjugate moves q_0
                        continue
                    ok = 1
                    if n == 2:
                        scan = n * n
                        # double forward conjugate of g = (c x + d, e_x x + e_y y + e_0):
                        # g o h^-1 = (c(x^n - y) + d, e_x(x^n - y) + e_y x + e_0),
                        # then apply (x, y) -> (y, y^n - x) once more
                        e_x = fwd[STRIDE]
                        e_y = fwd[1]
                        e_0 = fwd[0]
                        pzero(v1)
                        v1[n * STRIDE] = c
                        v1[1] = submod(0, c, p)
                        v1[0] = d
                        pzero(v2)
                        v2[n * STRIDE] = e_x
                        v2[1] = submod(0, e_x, p)
                        v2[STRIDE] = (v2[STRIDE] + e_y) % p
                        v2[0] = e_0
                        dv = poly_degree(v2, scan)
                        if dv > 1:
                            ok = 0
                        else:
                            ppow(v2, n, gg, tmp, dv, p)
                            for k in range(BUF):
                                gg[k] = submod(gg[k], v1[k], p)
                            if not deg_le1(gg, scan):
                                ok = 0
                        if ok:
                            # double backward conjugate of g = (f_x x + f_y y + f_0, a y + b):
                            # g o h = (f_x y + f_y(y^n - x) + f_0, a(y^n - x) + b),
                            # then apply (x, y) -> (x^n - y, x) once more
                            e_x = bwd[STRIDE]
                            e_y = bwd[1]
                            e_0 = bwd[0]
                            pzero(v1)
                            v1[n] = e_y
                            v1[STRIDE] = submod(0, e_y, p)
                            v1[1] = (v1[1] + e_x) % p
                            v1[0] = e_0
                            pzero(v2)
                            v2[n] = a
                            v2[STRIDE] = submod(0, a, p)
                            v2[0] = b
                            dv = poly_degree(v1, scan)
                            if dv > 1:
                                ok = 0
                            else:
                                ppow(v1, n, gg, tmp, dv, p)
                                for k in range(BUF):
                                    gg[k] = submod(gg[k], v2[k], p)
                                if not deg_le1(gg, scan):
                                    ok = 0
                    if ok:
                        survivors.append((a, b, c, d))
    survivors.sort()
    return survivors
