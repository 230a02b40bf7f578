"""Kernel selection: compiled extension when available, Python otherwise.

Set ``TORICGKZ_PURE_PYTHON=1`` to force the fallback.  ``BACKEND`` names the
active choice.  The compiled kernels use 64-bit C integers, so calls whose
inputs could overflow are routed to the Python version automatically.
"""

from __future__ import annotations

import os

from . import _kernels_py

_LIMIT = 1 << 31

try:
    if os.environ.get("TORICGKZ_PURE_PYTHON"):
        raise ImportError("pure python requested")
    from . import _kernels as _compiled  # type: ignore[attr-defined]
    BACKEND = "cython"
except ImportError:
    _compiled = None
    BACKEND = "python"


def _fits(values) -> bool:
    return all(-_LIMIT < v < _LIMIT for v in values)


class MonomialReducer:
    """Facade over the compiled or Python reducer with overflow routing."""

    def __init__(self, n: int, backend: str | None = None):
        self.n = n
        use_c = _compiled is not None and n <= 64 and backend != "python"
        self._impl = _compiled.MonomialReducer(n) if use_c else _kernels_py.MonomialReducer(n)
        self.backend = "cython" if use_c else "python"

    def __len__(self):
        return len(self._impl)

    @property
    def leads(self):
        return self._impl.leads

    @property
    def tails(self):
        return self._impl.tails

    def add(self, lead, tail=None):
        if self.backend == "cython" and not (_fits(lead) and (tail is None or _fits(tail))):
            self._switch_to_python()
        self._impl.add(lead, tail)

    def _switch_to_python(self):
        py = _kernels_py.MonomialReducer(self.n)
        for a, t in zip(self._impl.leads, self._impl.tails):
            py.add(a, t)
        self._impl = py
        self.backend = "python"

    def find_divisor(self, u) -> int:
        return self._impl.find_divisor(u)

    def reduce(self, u):
        if self.backend == "cython" and not _fits(u):
            self._switch_to_python()
        return self._impl.reduce(u)


def nested_points(levels, backend: str | None = None) -> list[tuple]:
    if _compiled is not None and backend != "python":
        flat = [x for lev in levels for coeffs, rhs in lev for x in (*coeffs, rhs)]
        if _fits(flat) and max((abs(x) for x in flat), default=0) < (1 << 20):
            return _compiled.nested_points(levels)
    return _kernels_py.nested_points(levels)
