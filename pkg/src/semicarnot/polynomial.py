"""Univariate rational polynomials, Sturm root counting, and Q(t) elements.

``RatFunc`` lets the generic linear algebra run with one symbolic parameter.
Every zero test that comes out "nonzero" records the polynomial whose roots
could flip the answer, so a symbolic run is valid for all t off those roots.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Poly = tuple  # coefficients, constant term first, no trailing zeros


def poly(coeffs: Iterable) -> Poly:
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(p: Poly) -> int:
    return len(p) - 1


def p_add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return poly((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


def p_neg(p: Poly) -> Poly:
    return tuple(-a for a in p)


def p_sub(p: Poly, q: Poly) -> Poly:
    return p_add(p, p_neg(q))


def p_mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly(out)


def p_divmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    out = [Fraction(0)] * max(len(p) - len(q) + 1, 1)
    lead = q[-1]
    while len(r) >= len(q) and r:
        c = r[-1] / lead
        k = len(r) - len(q)
        out[k] = c
        for i, b in enumerate(q):
            r[i + k] -= c * b
        while r and r[-1] == 0:
            r.pop()
    return poly(out), poly(r)


def p_monic(p: Poly) -> Poly:
    return tuple(a / p[-1] for a in p) if p else p


def p_gcd(p: Poly, q: Poly) -> Poly:
    while q:
        p, q = q, p_divmod(p, q)[1]
    return p_monic(p)


def p_eval(p: Poly, x):
    acc = Fraction(0)
    for a in reversed(p):
        acc = acc * x + a
    return acc


def p_deriv(p: Poly) -> Poly:
    return poly(i * a for i, a in enumerate(p) if i)


def squarefree(p: Poly) -> Poly:
    if degree(p) < 1:
        return p_monic(p)
    return p_monic(p_divmod(p, p_gcd(p, p_deriv(p)))[0])


def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [p, p_deriv(p)]
    while seq[-1]:
        r = p_divmod(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append(p_neg(r))
    return [s for s in seq if s]


def _sign_changes(values: Sequence) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _cauchy_bound(p: Poly) -> Fraction:
    return 1 + max(abs(a / p[-1]) for a in p[:-1]) if len(p) > 1 else Fraction(1)


def count_real_roots(p: Poly, lo=None, hi=None) -> int:
    """Number of distinct real roots in the half-open interval (lo, hi]."""
    p = squarefree(p)
    if degree(p) < 1:
        return 0
    b = _cauchy_bound(p)
    lo = -b if lo is None else Fraction(lo)
    hi = b if hi is None else Fraction(hi)
    seq = sturm_sequence(p)
    return _sign_changes([p_eval(s, lo) for s in seq]) - _sign_changes([p_eval(s, hi) for s in seq])


def rational_roots(p: Poly) -> list[Fraction]:
    """All rational roots, by the rational root theorem on the integer-scaled polynomial."""
    p = squarefree(p)
    if degree(p) < 1:
        return []
    roots = []
    while p and p[0] == 0:
        roots.append(Fraction(0))
        p = p[1:]
    if degree(p) < 1:
        return sorted(roots)
    den = 1
    for a in p:
        den = den * a.denominator // gcd(den, a.denominator)
    ints = [int(a * den) for a in p]
    a0, an = abs(ints[0]), abs(ints[-1])
    for num in _divisors(a0):
        for d in _divisors(an):
            for s in (1, -1):
                x = Fraction(s * num, d)
                if x not in roots and p_eval(p, x) == 0:
                    roots.append(x)
    return sorted(roots)


def _divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def isolate_real_roots(p: Poly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (lo, hi] each holding exactly one real root, in increasing order."""
    p = squarefree(p)
    if degree(p) < 1:
        return []
    b = _cauchy_bound(p)
    out = []
    stack = [(-b, b)]
    while stack:
        lo, hi = stack.pop()
        k = count_real_roots(p, lo, hi)
        if k == 0:
            continue
        if k == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((lo, mid))
        stack.append((mid, hi))
    return sorted(out)


def sample_points_between_roots(p: Poly) -> list[Fraction]:
    """One rational point in every open interval cut out by the real roots of p."""
    p = squarefree(p)
    ivs = isolate_real_roots(p)
    if not ivs:
        return [Fraction(0)]
    pts = [ivs[0][0] - 1]
    for (_, hi1), (_, hi2) in zip(ivs, ivs[1:]):
        # the left root is <= hi1 and the right root lies in (hi1, hi2]
        x = hi2
        while p_eval(p, x) == 0 or count_real_roots(p, hi1, x) != 0:
            x = (hi1 + x) / 2
        pts.append(x)
    pts.append(ivs[-1][1] + 1)
    return pts


class RatFunc:
    """Element of Q(t) with zero-test recording."""

    __slots__ = ("num", "den")
    recorder: list | None = None

    def __init__(self, num: Poly, den: Poly = (Fraction(1),)):
        if not den:
            raise ZeroDivisionError("zero denominator")
        g = p_gcd(num, den) if num else (Fraction(1),)
        if degree(g) > 0:
            num = p_divmod(num, g)[0]
            den = p_divmod(den, g)[0]
        lead = den[-1]
        self.num = tuple(a / lead for a in num)
        self.den = tuple(a / lead for a in den)

    @classmethod
    def t(cls) -> "RatFunc":
        return cls((Fraction(0), Fraction(1)))

    @staticmethod
    def _lift(x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, Fraction)):
            return RatFunc(poly([x]))
        return NotImplemented

    def __add__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return RatFunc(p_add(p_mul(self.num, o.den), p_mul(o.num, self.den)), p_mul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(p_neg(self.num), self.den)

    def __sub__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return RatFunc(p_mul(self.num, o.num), p_mul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        if not o.num:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(p_mul(self.num, o.den), p_mul(self.den, o.num))

    def __rtruediv__(self, o):
        return self._lift(o) / self

    def _nonzero(self) -> bool:
        nz = bool(self.num)
        if nz and RatFunc.recorder is not None:
            if degree(self.num) > 0:
                RatFunc.recorder.append(self.num)
            if degree(self.den) > 0:
                RatFunc.recorder.append(self.den)
        return nz

    def __bool__(self):
        return self._nonzero()

    def __eq__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return False
        return not (self - o)._nonzero()

    def __ne__(self, o):
        return not self.__eq__(o)

    def __hash__(self):
        return hash((self.num, self.den))

    def __gt__(self, o):
        raise TypeError("rational functions have no order")

    __lt__ = __ge__ = __le__ = __gt__

    def at(self, x) -> Fraction:
        return p_eval(self.num, x) / p_eval(self.den, x)

    def __repr__(self):
        return f"RatFunc({self.num}, {self.den})"
