"""Mumford representation and Cantor arithmetic on J(F_p) for genus 3.

Divisor classes are pairs (u, v) of F_p polynomials with u monic of degree
<= 3, deg v < deg u, and u | v^2 - f.  The curve has one point at infinity
(odd-degree model), so every class has a unique reduced representative.
"""

from __future__ import annotations

from .curve import FpPoint
from .errors import InputError


def _trim(a):
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return a[:n]


def _padd(a, b, p):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _trim(out)


def _pneg(a, p):
    return [(-c) % p for c in a]


def _psub(a, b, p):
    return _padd(a, _pneg(b, p), p)


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _pdivmod(a, b, p):
    """Division with remainder; b need not be monic."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    binv = pow(b[-1], -1, p)
    r = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(_trim(r)) >= len(b):
        r = _trim(r)
        c = r[-1] * binv % p
        d = len(r) - len(b)
        q[d] = c
        for i, bc in enumerate(b):
            r[d + i] = (r[d + i] - c * bc) % p
    return _trim(q), _trim(r)


def _pmonic(a, p):
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _pxgcd(a, b, p):
    """Monic g = gcd(a, b) and s, t with s*a + t*b = g."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1, p), p)
        t0, t1 = t1, _psub(t0, _pmul(q, t1, p), p)
    if not r0:
        return [], s0, t0
    inv = pow(r0[-1], -1, p)
    scale = lambda c: [x * inv % p for x in c]
    return scale(r0), scale(s0), scale(t0)


def _pmod(a, b, p):
    return _pdivmod(a, b, p)[1]


def _pexactdiv(a, b, p):
    q, r = _pdivmod(a, b, p)
    if r:
        raise InputError("division was not exact")
    return q


class MumfordDivisorFp:
    """Reduced Mumford pair over F_p for y^2 = f(x), deg f = 7, genus 3."""

    __slots__ = ("p", "f", "u", "v")

    def __init__(self, p, f, u, v, reduce=False):
        self.p = p
        self.f = tuple(f)
        u = _trim([c % p for c in u])
        v = _trim([c % p for c in v])
        if reduce:
            u, v = self._reduce(u, v)
        if not u or u[-1] != 1:
            raise InputError("u must be monic")
        if len(u) - 1 > 3:
            raise InputError("unreduced divisor")
        if len(v) >= len(u):
            raise InputError("deg v must be < deg u")
        chk = _pmod(_psub(_pmul(v, v, p), list(self.f), p), u, p)
        if chk:
            raise InputError("v^2 - f not divisible by u")
        self.u = tuple(u)
        self.v = tuple(v)

    def _reduce(self, u, v):
        p, f = self.p, list(self.f)
        u = _pmonic(u, p)
        while len(u) - 1 > 3:
            u2 = _pexactdiv(_psub(f, _pmul(v, v, p), p), u, p)
            u2 = _pmonic(u2, p)
            v = _pneg(_pmod(v, u2, p), p)
            u = u2
        return u, v

    # -- constructors -------------------------------------------------------

    @staticmethod
    def identity(p, f):
        return MumfordDivisorFp(p, f, [1], [])

    @staticmethod
    def from_point(pt: FpPoint, p, f):
        """The class [P - infinity]."""
        if pt.is_infinity:
            return MumfordDivisorFp.identity(p, f)
        return MumfordDivisorFp(p, f, [(-pt.x) % p, 1], [pt.y % p])

    # -- group law -----------------------------------------------------------

    @property
    def is_identity(self):
        return self.u == (1,)

    def __eq__(self, other):
        return (isinstance(other, MumfordDivisorFp) and self.p == other.p
                and self.u == other.u and self.v == other.v)

    def __hash__(self):
        return hash((self.p, self.u, self.v))

    def __neg__(self):
        return MumfordDivisorFp(self.p, self.f, list(self.u),
                                _pneg(list(self.v), self.p))

    def __add__(self, other):
        if not isinstance(other, MumfordDivisorFp):
            return NotImplemented
        if self.p != other.p or self.f != other.f:
            raise InputError("divisors on different curves")
        p, f = self.p, list(self.f)
        u1, v1 = list(self.u), list(self.v)
        u2, v2 = list(other.u), list(other.v)
        g1, e1, e2 = _pxgcd(u1, u2, p)
        vsum = _padd(v1, v2, p)
        if g1 == [1]:
            d, c1, c2 = [1], [1], []
        else:
            d, c1, c2 = _pxgcd(g1, vsum, p)
        s1 = _pmul(c1, e1, p)
        s2 = _pmul(c1, e2, p)
        s3 = c2
        dd = _pmul(d, d, p)
        u = _pexactdiv(_pmul(u1, u2, p), dd, p)
        num = _padd(_padd(_pmul(_pmul(s1, u1, p), v2, p),
                          _pmul(_pmul(s2, u2, p), v1, p), p),
                    _pmul(s3, _padd(_pmul(v1, v2, p), f, p), p), p)
        v = _pmod(_pexactdiv(num, d, p), u, p)
        return MumfordDivisorFp(p, self.f, u, v, reduce=True)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (-n) * (-self)
        acc = MumfordDivisorFp.identity(self.p, self.f)
        base = self
        while n:
            if n & 1:
                acc = acc + base
            n >>= 1
            if n:
                base = base + base
        return acc

    def order(self, group_order):
        """Order of the class given a multiple of it (the group order)."""
        if group_order * self != MumfordDivisorFp.identity(self.p, self.f):
            raise InputError("group_order does not annihilate the class")
        o = group_order
        for q in _prime_factors(group_order):
            while o % q == 0 and ((o // q) * self).is_identity:
                o //= q
        return o

    def __repr__(self):
        return "MumfordDivisorFp(u=%s, v=%s)" % (list(self.u), list(self.v))


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def reduction_class(curve, point, p):
    """[Pbar - infinitybar] in J(F_p) for a monic-model point given as a
    RationalPoint, CurvePoint, or FpPoint."""
    f = curve.fbar(p)
    if isinstance(point, FpPoint):
        red = point
    elif hasattr(point, "is_infinity") and point.is_infinity:
        red = FpPoint.infinity()
    elif hasattr(point, "x") and hasattr(point.x, "prime"):
        red = curve.reduce_curve_point(point, p)
    else:
        red = curve.reduce_point(point, p)
    return MumfordDivisorFp.from_point(red, p, f)


def anomaly_flags(curve, p, divisor, jac_order):
    """Flags used by precision lemmas: class order coprime to p, and
    p^2 not dividing #J(F_p)."""
    o = divisor.order(jac_order)
    return {
        "class_order": o,
        "order_prime_to_p": o % p != 0,
        "jac_order_p2_free": jac_order % (p * p) != 0,
    }
