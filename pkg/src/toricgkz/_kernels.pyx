# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the inner loops in ``_kernels_py``.

Values are held as C ``long long``; ``kernels`` only routes inputs here after
checking they fit comfortably in 32 bits, so intermediate sums cannot
overflow.
"""

from libc.stdlib cimport malloc, realloc, free


cdef class MonomialReducer:
    cdef public int n
    cdef long long *lead_buf
    cdef long long *tail_buf
    cdef char *has_tail
    cdef Py_ssize_t count, capacity

    def __cinit__(self, int n):
        self.n = n
        self.count = 0
        self.capacity = 16
        self.lead_buf = <long long *> malloc(self.capacity * max(n, 1) * sizeof(long long))
        self.tail_buf = <long long *> malloc(self.capacity * max(n, 1) * sizeof(long long))
        self.has_tail = <char *> malloc(self.capacity * sizeof(char))
        if not self.lead_buf or not self.tail_buf or not self.has_tail:
            raise MemoryError()

    def __dealloc__(self):
        free(self.lead_buf)
        free(self.tail_buf)
        free(self.has_tail)

    def __len__(self):
        return self.count

    @property
    def leads(self):
        return [tuple(self.lead_buf[i * self.n + j] for j in range(self.n))
                for i in range(self.count)]

    @property
    def tails(self):
        return [tuple(self.tail_buf[i * self.n + j] for j in range(self.n))
                if self.has_tail[i] else None for i in range(self.count)]

    cdef void _grow(self):
        self.capacity *= 2
        cdef int w = max(self.n, 1)
        self.lead_buf = <long long *> realloc(self.lead_buf, self.capacity * w * sizeof(long long))
        self.tail_buf = <long long *> realloc(self.tail_buf, self.capacity * w * sizeof(long long))
        self.has_tail = <char *> realloc(self.has_tail, self.capacity * sizeof(char))

    def add(self, lead, tail=None):
        cdef Py_ssize_t j, base
        if self.count == self.capacity:
            self._grow()
        base = self.count * self.n
        for j in range(self.n):
            self.lead_buf[base + j] = lead[j]
            self.tail_buf[base + j] = tail[j] if tail is not None else 0
        self.has_tail[self.count] = tail is not None
        self.count += 1

    def find_divisor(self, u):
        cdef long long buf[64]
        cdef Py_ssize_t j
        for j in range(self.n):
            buf[j] = u[j]
        return self._find(buf, 0)

    cdef Py_ssize_t _find(self, long long *u, Py_ssize_t start):
        cdef Py_ssize_t i, j, base
        cdef int ok
        for i in range(start, self.count):
            base = i * self.n
            ok = 1
            for j in range(self.n):
                if u[j] < self.lead_buf[base + j]:
                    ok = 0
                    break
            if ok:
                return i
        return -1

    def reduce(self, u):
        cdef long long buf[64]
        cdef Py_ssize_t i, j, base
        cdef int n = self.n
        if n > 64:
            raise ValueError("compiled reducer supports at most 64 variables")
        for j in range(n):
            buf[j] = u[j]
        while True:
            i = self._find(buf, 0)
            if i < 0:
                return tuple(buf[j] for j in range(n))
            if not self.has_tail[i]:
                return None
            base = i * n
            for j in range(n):
                buf[j] = buf[j] - self.lead_buf[base + j] + self.tail_buf[base + j]


def nested_points(levels):
    cdef Py_ssize_t m = len(levels)
    if m == 0:
        return [()]
    cdef Py_ssize_t k, i, c, ncons_total = 0
    for k in range(m):
        ncons_total += len(levels[k])
    # flatten: per level, constraints of width k+1 followed by rhs
    cdef long long *coef = <long long *> malloc((ncons_total * m + 1) * sizeof(long long))
    cdef long long *rhs = <long long *> malloc((ncons_total + 1) * sizeof(long long))
    cdef Py_ssize_t *start = <Py_ssize_t *> malloc((m + 1) * sizeof(Py_ssize_t))
    cdef long long *z = <long long *> malloc(m * sizeof(long long))
    cdef long long *hi = <long long *> malloc(m * sizeof(long long))
    cdef long long rest, a, b, lo_k, hi_k
    cdef int has_lo, has_hi, dead
    if not coef or not rhs or not start or not z or not hi:
        raise MemoryError()
    out = []
    try:
        c = 0
        for k in range(m):
            start[k] = c
            for coeffs, r in levels[k]:
                for i in range(k + 1):
                    coef[c * m + i] = coeffs[i]
                rhs[c] = r
                c += 1
        start[m] = c

        # iterative depth-first walk; z[k] runs up to hi[k]
        k = 0
        while k >= 0:
            # compute bounds for level k given z[0..k-1]
            has_lo = 0
            has_hi = 0
            dead = 0
            lo_k = 0
            hi_k = 0
            for c in range(start[k], start[k + 1]):
                a = coef[c * m + k]
                rest = rhs[c]
                for i in range(k):
                    rest -= coef[c * m + i] * z[i]
                if a > 0:
                    b = _floordiv(rest, a)
                    if not has_hi or b < hi_k:
                        hi_k = b
                        has_hi = 1
                elif a < 0:
                    b = -_floordiv(-rest, a)
                    if not has_lo or b > lo_k:
                        lo_k = b
                        has_lo = 1
                elif rest < 0:
                    dead = 1
                    break
            if not dead and (not has_lo or not has_hi):
                raise ValueError(f"coordinate {k} is unbounded")
            if dead or lo_k > hi_k:
                k = _advance(z, hi, k - 1)
                continue
            z[k] = lo_k
            hi[k] = hi_k
            if k == m - 1:
                while True:
                    out.append(tuple(z[i] for i in range(m)))
                    if z[k] == hi[k]:
                        break
                    z[k] += 1
                k = _advance(z, hi, k - 1)
            else:
                k += 1
    finally:
        free(coef)
        free(rhs)
        free(start)
        free(z)
        free(hi)
    return out


cdef inline long long _floordiv(long long x, long long y):
    cdef long long q = x // y
    # C division truncates; Cython's // on C ints follows Python semantics by
    # default (cdivision=False), so q is already floored.
    return q


cdef Py_ssize_t _advance(long long *z, long long *hi, Py_ssize_t k):
    # step the deepest level with room left; -1 when exhausted
    while k >= 0:
        if z[k] < hi[k]:
            z[k] += 1
            return k + 1
        k -= 1
    return -1
