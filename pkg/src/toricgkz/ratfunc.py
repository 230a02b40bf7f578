"""Exact univariate rational functions over the rationals.

A :class:`RatFunc` is an element of Q(a), where ``a`` is the single symbolic
parameter carried through the hypergeometric computations.  Values are kept in
a canonical form (coprime numerator/denominator, monic denominator) so that
equal values compare and hash identically.

:class:`LinearProduct` is a multiplicative representation ``c * prod (a - r)^e``
used for series coefficients, which are always products and quotients of
affine functions of ``a``.  It avoids polynomial gcds in hot loops while
staying exact.
"""

from __future__ import annotations

from contextlib import contextmanager
from fractions import Fraction
from typing import Iterable, Union

from .errors import DegreeOverflow, ZeroDivision

Poly = tuple  # tuple[Fraction, ...], lowest degree first, no trailing zeros

_ZERO = Fraction(0)
_ONE = Fraction(1)

MAX_DEGREE = 64


@contextmanager
def degree_cap(cap: int):
    """Temporarily change the degree cap enforced on every RatFunc."""
    global MAX_DEGREE
    old, MAX_DEGREE = MAX_DEGREE, cap
    try:
        yield
    finally:
        MAX_DEGREE = old


# -- dense polynomial helpers -------------------------------------------------

def _trim(c: list) -> Poly:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def padd(p: Poly, q: Poly) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return _trim(out)


def pneg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def psub(p: Poly, q: Poly) -> Poly:
    return padd(p, pneg(q))


def pmul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    if len(p) == 1:
        return tuple(p[0] * c for c in q)
    if len(q) == 1:
        return tuple(q[0] * c for c in p)
    out = [_ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def pdivmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivision("polynomial division by zero")
    rem = list(p)
    dq = len(q) - 1
    lead = q[-1]
    quo = [_ZERO] * max(len(p) - dq, 0)
    for k in range(len(p) - 1 - dq, -1, -1):
        c = rem[k + dq] / lead
        quo[k] = c
        if c:
            for j in range(dq + 1):
                rem[k + j] -= c * q[j]
    return _trim(quo), _trim(rem[:dq] if dq else [])


def pmonic(p: Poly) -> Poly:
    if not p or p[-1] == 1:
        return p
    lead = p[-1]
    return tuple(c / lead for c in p)


def pgcd(p: Poly, q: Poly) -> Poly:
    while q:
        p, q = q, pdivmod(p, q)[1]
    return pmonic(p)


def peval(p: Poly, x) -> Fraction:
    acc = _ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def pderiv(p: Poly) -> Poly:
    return _trim([i * c for i, c in enumerate(p)][1:])


def rational_roots(p: Poly) -> list[Fraction]:
    """All distinct rational roots of ``p`` (rational root theorem)."""
    p = _trim(list(p))
    if len(p) <= 1:
        return []
    roots = []
    # clear denominators, strip the zero root
    den = 1
    for c in p:
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    if ints[0] == 0:
        roots.append(_ZERO)
        while ints and ints[0] == 0:
            ints.pop(0)
    if len(ints) <= 1:
        return roots
    a0, an = abs(ints[0]), abs(ints[-1])
    for num in _divisors(a0):
        for dd in _divisors(an):
            for s in (1, -1):
                r = Fraction(s * num, dd)
                if r not in roots and peval(tuple(Fraction(c) for c in ints), r) == 0:
                    roots.append(r)
    return sorted(roots)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _divisors(k: int) -> list[int]:
    out = []
    i = 1
    while i * i <= k:
        if k % i == 0:
            out.append(i)
            if i * i != k:
                out.append(k // i)
        i += 1
    return out


# -- Q(a) ---------------------------------------------------------------------

Scalar = Union[int, Fraction, "RatFunc"]


class RatFunc:
    """An element of Q(a) in canonical form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Iterable = (), den: Iterable = (1,), *, _canonical=False):
        if _canonical:
            self.num, self.den = num, den
        else:
            n = _trim([Fraction(c) for c in num])
            d = _trim([Fraction(c) for c in den])
            if not d:
                raise ZeroDivision("rational function with zero denominator")
            if not n:
                n, d = (), (_ONE,)
            elif len(d) > 1:
                g = pgcd(n, d)
                if len(g) > 1:
                    n = pdivmod(n, g)[0]
                    d = pdivmod(d, g)[0]
            lead = d[-1]
            if lead != 1:
                n = tuple(c / lead for c in n)
                d = tuple(c / lead for c in d)
            self.num, self.den = n, d
        if len(self.num) > MAX_DEGREE + 1 or len(self.den) > MAX_DEGREE + 1:
            raise DegreeOverflow(
                f"degree {max(len(self.num), len(self.den)) - 1} exceeds cap {MAX_DEGREE}")
        self._hash = None

    # constructors
    @classmethod
    def const(cls, q) -> "RatFunc":
        q = Fraction(q)
        return cls((q,) if q else (), (_ONE,), _canonical=True)

    @classmethod
    def var(cls) -> "RatFunc":
        return cls((_ZERO, _ONE), (_ONE,), _canonical=True)

    @classmethod
    def affine(cls, c0, c1) -> "RatFunc":
        return cls((Fraction(c0), Fraction(c1)))

    @staticmethod
    def lift(x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        return RatFunc.const(x)

    # predicates
    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num[0] if self.num else _ZERO

    def is_integer(self) -> bool:
        return self.is_constant() and self.constant_value().denominator == 1

    def degree(self) -> int:
        return max(len(self.num), len(self.den)) - 1

    def is_affine(self) -> bool:
        return len(self.den) == 1 and len(self.num) <= 2

    def affine_coeffs(self) -> tuple[Fraction, Fraction]:
        if not self.is_affine():
            raise ValueError(f"{self} is not affine in a")
        c = self.num + (_ZERO,) * (2 - len(self.num))
        return c[0], c[1]

    def __call__(self, x) -> Fraction:
        d = peval(self.den, x)
        if d == 0:
            raise ZeroDivision(f"pole of {self} at {x}")
        return peval(self.num, x) / d

    # arithmetic
    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if len(self.den) == 1 and len(o.den) == 1:
            return RatFunc(padd(self.num, o.num), (_ONE,), _canonical=True)
        if self.den == o.den:
            return RatFunc(padd(self.num, o.num), self.den)
        return RatFunc(padd(pmul(self.num, o.den), pmul(o.num, self.den)),
                       pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(pneg(self.num), self.den, _canonical=True)

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if len(self.den) == 1 and len(o.den) == 1:
            return RatFunc(pmul(self.num, o.num), (_ONE,), _canonical=True)
        return RatFunc(pmul(self.num, o.num), pmul(self.den, o.den))

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivision("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = RatFunc.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # comparison / hashing
    def __eq__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def sort_key(self):
        return (len(self.den), self.den, len(self.num), self.num)

    # rendering
    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        n = _poly_str(self.num)
        if len(self.den) == 1:
            return n
        d = _poly_str(self.den)
        if len(self.num) > 1 or (self.num and self.num[0] < 0):
            n = f"({n})"
        return f"{n}/({d})"

    def to_json(self) -> dict:
        return {"num": [str(c) for c in self.num] or ["0"],
                "den": [str(c) for c in self.den]}

    @classmethod
    def from_json(cls, obj: dict) -> "RatFunc":
        return cls([Fraction(c) for c in obj["num"]],
                   [Fraction(c) for c in obj["den"]])


def _coerce(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction)):
        return RatFunc.const(x)
    return NotImplemented


def _poly_str(p: Poly, var: str = "a") -> str:
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if not c:
            continue
        if k == 0:
            body = str(abs(c))
        else:
            mag = abs(c)
            mono = var if k == 1 else f"{var}^{k}"
            if mag == 1:
                body = mono
            elif mag.denominator == 1:
                body = f"{mag}{mono}"
            else:
                num = "" if mag.numerator == 1 else str(mag.numerator)
                body = f"{num}{mono}/{mag.denominator}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# -- scalar helpers -----------------------------------------------------------

def scalar_str(x) -> str:
    return str(x)


def is_integer_value(x) -> bool:
    """True iff ``x`` is an integer constant (symbolic entries never are)."""
    if isinstance(x, RatFunc):
        return x.is_integer()
    return Fraction(x).denominator == 1


def constant_of(x) -> Fraction:
    if isinstance(x, RatFunc):
        return x.constant_value()
    return Fraction(x)


def simplify(x):
    """Collapse constant RatFuncs to Fractions."""
    if isinstance(x, RatFunc) and x.is_constant():
        return x.constant_value()
    return x


# -- multiplicative form ------------------------------------------------------

class LinearProduct:
    """Exact value ``coef * prod_r (a - r)^e_r``; zero when ``coef == 0``."""

    __slots__ = ("coef", "factors")

    def __init__(self, coef=1, factors=None):
        self.coef = Fraction(coef)
        self.factors = {} if factors is None or self.coef == 0 else factors

    @classmethod
    def of_affine(cls, x) -> "LinearProduct":
        if isinstance(x, RatFunc):
            c0, c1 = x.affine_coeffs()
        else:
            c0, c1 = Fraction(x), _ZERO
        if c1 == 0:
            return cls(c0)
        return cls(c1, {-c0 / c1: 1})

    def is_zero(self) -> bool:
        return self.coef == 0

    def __mul__(self, other: "LinearProduct") -> "LinearProduct":
        if self.coef == 0 or other.coef == 0:
            return LinearProduct(0)
        f = dict(self.factors)
        for r, e in other.factors.items():
            k = f.get(r, 0) + e
            if k:
                f[r] = k
            else:
                f.pop(r, None)
        return LinearProduct(self.coef * other.coef, f)

    def __truediv__(self, other: "LinearProduct") -> "LinearProduct":
        if other.coef == 0:
            raise ZeroDivision("division by a zero product")
        return self * LinearProduct(1 / other.coef, {r: -e for r, e in other.factors.items()})

    def __eq__(self, other):
        if not isinstance(other, LinearProduct):
            return NotImplemented
        return self.coef == other.coef and self.factors == other.factors

    def __hash__(self):
        return hash((self.coef, frozenset(self.factors.items())))

    def to_ratfunc(self) -> RatFunc:
        num: Poly = (self.coef,) if self.coef else ()
        den: Poly = (_ONE,)
        for r, e in sorted(self.factors.items()):
            lin = (-r, _ONE)
            for _ in range(abs(e)):
                if e > 0:
                    num = pmul(num, lin)
                else:
                    den = pmul(den, lin)
        return RatFunc(num, den, _canonical=True)

    def to_scalar(self):
        return simplify(self.to_ratfunc())

    def __repr__(self):
        return f"LinearProduct({self.coef}, {self.factors})"
