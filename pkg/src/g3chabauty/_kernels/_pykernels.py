"""Pure Python fallback for the compiled kernels.

Same contracts as _ckernels: dense little-endian integer coefficient lists,
all arithmetic modulo a (possibly huge) modulus passed explicitly.
"""

from math import gcd, isqrt

BACKEND = "python"


def poly_trim(a):
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return a[:n]


def poly_mul_mod(a, b, mod):
    """Dense product of coefficient lists modulo mod."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return poly_trim([c % mod for c in out])


def poly_divmod_monic_mod(a, b, mod):
    """Quotient and remainder of a by a monic b, modulo mod."""
    db = len(b) - 1
    if db < 0 or b[db] != 1:
        raise ValueError("divisor must be monic and nonzero")
    r = [c % mod for c in a]
    if len(r) <= db:
        return [], poly_trim(r)
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if not c:
            continue
        q[i - db] = c
        r[i] = 0
        for j in range(db):
            r[i - db + j] = (r[i - db + j] - c * b[j]) % mod
    return poly_trim(q), poly_trim(r[:db])


def poly_eval_mod(coeffs, x, mod):
    """Horner evaluation of a coefficient list at x modulo mod."""
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % mod
    return acc


def fp_curve_points(f_coeffs, p):
    """Affine points (x, y) of y^2 = f(x) over F_p, ordered by (x, y)."""
    root = [-1] * p
    for y in range((p - 1) // 2, -1, -1):
        root[y * y % p] = y
    pts = []
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


def count_points_gf(f_coeffs, p, k, modulus_low):
    """#{(x, y) in GF(p^k)^2 : y^2 = f(x)} (affine points only).

    GF(p^k) = F_p[T] / (T^k + modulus_low(T)) with modulus_low of degree < k;
    elements are enumerated as base-p integers.  The count uses the quadratic
    character chi(u) = u^((q-1)/2).
    """
    if k == 1:
        return len(fp_curve_points(f_coeffs, p))
    q = p ** k
    mod_c = list(modulus_low)

    def fmul(u, v):
        out = [0] * (2 * k - 1)
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                out[i + j] = (out[i + j] + ui * vj) % p
        for i in range(2 * k - 2, k - 1, -1):
            c = out[i]
            if not c:
                continue
            out[i] = 0
            for j in range(k):
                out[i - k + j] = (out[i - k + j] - c * mod_c[j]) % p
        return out[:k]

    def fpow(u, e):
        r = [1] + [0] * (k - 1)
        base = list(u)
        while e:
            if e & 1:
                r = fmul(r, base)
            base = fmul(base, base)
            e >>= 1
        return r

    half = (q - 1) // 2
    one = [1] + [0] * (k - 1)
    fc = [[c % p] + [0] * (k - 1) for c in f_coeffs]
    total = 0
    for n in range(q):
        x = []
        m = n
        for _ in range(k):
            x.append(m % p)
            m //= p
        acc = [0] * k
        for ce in reversed(fc):
            acc = fmul(acc, x)
            acc = [(acc[i] + ce[i]) % p for i in range(k)]
        if all(c == 0 for c in acc):
            total += 1
        elif fpow(acc, half) == one:
            total += 2
    return total


def search_x_squares(cnum, d7, height):
    """Inner loop of the rational point search for y^2 = F(x), deg F = 7.

    F_i = cnum[i] / d7 exactly with d7 > 0 the common denominator.  For
    x = a/b in lowest terms, F(a/b) = s / (d7 b^7) with
    s = sum_i cnum[i] a^i b^(7-i), and F(a/b) is a rational square iff
    s * d7 * b is a perfect square (b > 0).  Returns the list of such (a, b).
    """
    hits = []
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
                s += cnum[i] * ap * bpows[7 - i]
                ap *= a
            t = s * d7 * b
            if t < 0:
                continue
            r = isqrt(t)
            if r * r == t:
                hits.append((a, b))
    return hits
