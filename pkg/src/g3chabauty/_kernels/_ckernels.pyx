# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels: dense modular polynomial arithmetic and point scans.

Coefficients are arbitrary-precision Python ints (moduli reach p^150), so the
speedup comes from removing interpreter dispatch in the loops, plus C-typed
index arithmetic.  Contracts match _pykernels exactly.
"""

from math import gcd, isqrt

BACKEND = "cython"


def poly_trim(list a):
    cdef Py_ssize_t n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return a[:n]


def poly_mul_mod(list a, list b, mod):
    cdef Py_ssize_t na = len(a), nb = len(b), i, j
    if na == 0 or nb == 0:
        return []
    cdef list out = [0] * (na + nb - 1)
    cdef object ai, acc
    for i in range(na):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(nb):
            acc = out[i + j]
            out[i + j] = acc + ai * b[j]
    for i in range(na + nb - 1):
        out[i] = out[i] % mod
    return poly_trim(out)


def poly_divmod_monic_mod(list a, list b, mod):
    cdef Py_ssize_t db = len(b) - 1, i, j
    if db < 0 or b[db] != 1:
        raise ValueError("divisor must be monic and nonzero")
    cdef list r = [c % mod for c in a]
    if len(r) <= db:
        return [], poly_trim(r)
    cdef list q = [0] * (len(r) - db)
    cdef object c
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if c == 0:
            continue
        q[i - db] = c
        r[i] = 0
        for j in range(db):
            r[i - db + j] = (r[i - db + j] - c * b[j]) % mod
    return poly_trim(q), poly_trim(r[:db])


def poly_eval_mod(coeffs, x, mod):
    cdef object acc = 0
    cdef Py_ssize_t i
    cdef list cs = list(coeffs)
    for i in range(len(cs) - 1, -1, -1):
        acc = (acc * x + cs[i]) % mod
    return acc


def fp_curve_points(f_coeffs, long p):
    cdef long x, y, fx
    cdef list root = [-1] * p
    for y in range((p - 1) // 2, -1, -1):
        root[(y * y) % p] = y
    cdef list pts = []
    for x in range(p):
        fx = poly_eval_mod(f_coeffs, x, p)
        y = root[fx]
        if y < 0:
            continue
        if y == 0:
            pts.append((x, 0))
        else:
            pts.append((x, y))
            pts.append((x, p - y))
    pts.sort()
    return pts


cdef list _fmul(list u, list v, long p, list mod_c, Py_ssize_t k):
    cdef list out = [0] * (2 * k - 1)
    cdef Py_ssize_t i, j
    cdef long ui, c
    for i in range(k):
        ui = u[i]
        if ui == 0:
            continue
        for j in range(k):
            out[i + j] = (out[i + j] + ui * (<long> v[j])) % p
    for i in range(2 * k - 2, k - 1, -1):
        c = out[i]
        if c == 0:
            continue
        out[i] = 0
        for j in range(k):
            out[i - k + j] = (out[i - k + j] - c * (<long> mod_c[j])) % p
    return out[:k]


def count_points_gf(f_coeffs, long p, Py_ssize_t k, modulus_low):
    if k == 1:
        return len(fp_curve_points(f_coeffs, p))
    cdef long q = p ** k
    cdef list mod_c = list(modulus_low)
    cdef long half = (q - 1) // 2
    cdef list one = [1] + [0] * (k - 1)
    cdef list fc = []
    for c in f_coeffs:
        fc.append([c % p] + [0] * (k - 1))
    fc.reverse()
    cdef long total = 0, n, m, e
    cdef Py_ssize_t i
    cdef list x, acc, r, base
    cdef bint zero
    for n in range(q):
        x = []
        m = n
        for i in range(k):
            x.append(m % p)
            m //= p
        acc = [0] * k
        for ce in fc:
            acc = _fmul(acc, x, p, mod_c, k)
            for i in range(k):
                acc[i] = (acc[i] + (<long> (<list> ce)[i])) % p
        zero = True
        for i in range(k):
            if acc[i] != 0:
                zero = False
                break
        if zero:
            total += 1
            continue
        r = [1] + [0] * (k - 1)
        base = acc
        e = half
        while e:
            if e & 1:
                r = _fmul(r, base, p, mod_c, k)
            base = _fmul(base, base, p, mod_c, k)
            e >>= 1
        if r == one:
            total += 2
    return total


def search_x_squares(cnum, d7, long height):
    cdef long a, b
    cdef Py_ssize_t i
    cdef list cs = list(cnum)
    cdef list bpows
    cdef object s, ap, t, rr
    cdef list hits = []
    for b in range(1, height + 1):
        bpows = [1] * 8
        for i in range(1, 8):
            bpows[i] = bpows[i - 1] * b
        for a in range(-height, height + 1):
            if gcd(a, b) != 1:
                continue
            s = 0
            ap = 1
            for i in range(8):
                s = s + cs[i] * ap * bpows[7 - i]
                ap = ap * a
            t = s * d7 * b
            if t < 0:
                continue
            rr = isqrt(t)
            if rr * rr == t:
                hits.append((a, b))
    return hits
