# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled brute-force coloring kernel.

Walks every coloring of ``n`` vertices with colors ``0..k-1`` in odometer
order (vertex 0 most significant) and returns the first one on which every
checked vertex passes the hard-coded rules of its family.
"""

import numpy as np

cdef enum:
    SIGMA = 0
    PI = 1
    PROPER = 2
    ROOT = 1
    ANCHOR = 2


cdef inline bint child_rules_ok(const int* f, int v, int l, int r) noexcept nogil:
    cdef int c = f[v]
    if c == 1:
        return r >= 0 and f[r] >= 1
    if c >= 2:
        return l >= 0 and f[l] == c - 1
    return True


cdef inline bint vertex_ok(int family, const int* f, int v, signed char level,
                           const int* left, const int* right, const int* nbr, int width,
                           const signed char* flags) noexcept nogil:
    cdef int j, u, count
    cdef int c = f[v]
    if family == SIGMA:
        if (flags[v] & ROOT) and c < 1:
            return False
        if level == 2:
            return child_rules_ok(f, v, left[v], right[v])
        return True
    if family == PI:
        if flags[v] & ANCHOR:
            count = 0
            for j in range(width):
                u = nbr[v * width + j]
                if u >= 0 and f[u] >= 1:
                    count += 1
            return count == 1
        if level == 2:
            return child_rules_ok(f, v, left[v], right[v])
        return True
    if family == PROPER:
        if level == 2:
            for j in range(width):
                u = nbr[v * width + j]
                if u >= 0 and f[u] == c:
                    return False
        return True
    return False


def first_solution(int family, int k, const int[::1] left, const int[::1] right,
                   const int[:, ::1] nbr, const signed char[::1] flags,
                   const signed char[::1] levels, limit=None):
    if family not in (SIGMA, PI, PROPER):
        raise ValueError(f"unknown rule family {family}")
    cdef int n = levels.shape[0]
    cdef int width = nbr.shape[1]
    cdef long long total = 1
    cdef int i
    for i in range(n):
        total *= k
    if limit is not None and limit < total:
        total = limit
    # checks touching the fastest-moving digits first; the order never changes the result
    reach = [max([v] + [u for u in nbr[v] if u >= 0]) for v in range(n)]
    active_np = np.array(
        sorted((v for v in range(n) if levels[v] > 0), key=lambda v: -reach[v]), dtype=np.int32
    )
    f_np = np.zeros(max(n, 1), dtype=np.int32)
    cdef int[::1] f_view = f_np
    cdef int[::1] active_view = active_np if active_np.size else np.zeros(1, dtype=np.int32)
    cdef int* f = &f_view[0]
    cdef const int* act = &active_view[0]
    cdef int m = active_np.size
    cdef const int* lp = &left[0] if n else NULL
    cdef const int* rp = &right[0] if n else NULL
    cdef const int* np_ = &nbr[0, 0] if n else NULL
    cdef const signed char* fl = &flags[0] if n else NULL
    cdef const signed char* lv = &levels[0] if n else NULL
    cdef long long examined = 0
    cdef int a, pos, v
    cdef bint ok = False
    with nogil:
        while examined < total:
            examined += 1
            ok = True
            for a in range(m):
                v = act[a]
                if not vertex_ok(family, f, v, lv[v], lp, rp, np_, width, fl):
                    ok = False
                    break
            if ok:
                break
            pos = n - 1
            while pos >= 0:
                f[pos] += 1
                if f[pos] < k:
                    break
                f[pos] = 0
                pos -= 1
    if ok:
        return f_np[:n], examined
    return None, total
