"""Pure-Python reference implementation of the inner loops.

``_kernels.pyx`` mirrors this module function for function; ``kernels``
picks whichever is importable.
"""

from __future__ import annotations


class MonomialReducer:
    """Reduction of monomials modulo a list of binomials and monomials.

    Each reducer is ``lead -> tail`` (a binomial ``x^lead - x^tail`` with
    ``lead`` the larger term) or ``lead -> None`` (a monomial generator).
    Reducers are scanned in insertion order; the first whose lead divides the
    current exponent is applied.
    """

    def __init__(self, n: int):
        self.n = n
        self.leads: list[tuple] = []
        self.tails: list = []

    def __len__(self):
        return len(self.leads)

    def add(self, lead, tail=None):
        self.leads.append(tuple(lead))
        self.tails.append(None if tail is None else tuple(tail))

    def find_divisor(self, u) -> int:
        for i, a in enumerate(self.leads):
            for x, y in zip(u, a):
                if x < y:
                    break
            else:
                return i
        return -1

    def reduce(self, u):
        """Fully reduce ``x^u``; ``None`` means the monomial lies in the ideal."""
        u = tuple(u)
        leads, tails = self.leads, self.tails
        while True:
            for i, a in enumerate(leads):
                for x, y in zip(u, a):
                    if x < y:
                        break
                else:
                    t = tails[i]
                    if t is None:
                        return None
                    u = tuple(x - y + z for x, y, z in zip(u, a, t))
                    break
            else:
                return u


def nested_points(levels) -> list[tuple]:
    """Integer points of a system given by its successive projections.

    ``levels[k]`` is a list of ``(coeffs, rhs)`` with ``len(coeffs) == k + 1``
    meaning ``coeffs . (z_0..z_k) <= rhs``, all integers; it must be the
    projection onto the first ``k + 1`` coordinates, and bound ``z_k`` once
    ``z_0..z_{k-1}`` are fixed.  Points come out in lexicographic order.
    """
    m = len(levels)
    if m == 0:
        return [()]
    out = []
    z = [0] * m

    def rec(k):
        lo = hi = None
        for coeffs, rhs in levels[k]:
            a = coeffs[k]
            rest = rhs
            for i in range(k):
                rest -= coeffs[i] * z[i]
            if a > 0:
                b = rest // a
                if hi is None or b < hi:
                    hi = b
            elif a < 0:
                b = -((-rest) // a)
                if lo is None or b > lo:
                    lo = b
            elif rest < 0:
                return
        if lo is None or hi is None:
            raise ValueError(f"coordinate {k} is unbounded")
        for v in range(lo, hi + 1):
            z[k] = v
            if k == m - 1:
                out.append(tuple(z))
            else:
                rec(k + 1)

    rec(0)
    return out
