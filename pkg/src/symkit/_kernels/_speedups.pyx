# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled 2-D convex hull chain kernel.

Same contract as _fallback.convex_hull_idx; selected at import by
symkit._kernels when the extension built successfully.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def convex_hull_idx(double[::1] xs, double[::1] ys, double eps):
    """Hull vertex indices (counterclockwise from the lexicographic minimum).

    Input points must be sorted lexicographically by (x, y).  ``eps`` is an
    absolute threshold on the doubled ear area used to prune collinear and
    near-collinear chain points.
    """
    cdef Py_ssize_t n = xs.shape[0]
    if n <= 2:
        return np.arange(n, dtype=np.intp)

    lower_arr = np.empty(n, dtype=np.intp)
    upper_arr = np.empty(n, dtype=np.intp)
    cdef cnp.intp_t[::1] lower = lower_arr
    cdef cnp.intp_t[::1] upper = upper_arr
    cdef Py_ssize_t ln = 0, un = 0, i, j, k
    cdef double xi, yi

    for i in range(n):
        xi = xs[i]
        yi = ys[i]
        while ln >= 2:
            j = lower[ln - 2]
            k = lower[ln - 1]
            if (xs[k] - xs[j]) * (yi - ys[j]) - (ys[k] - ys[j]) * (xi - xs[j]) <= eps:
                ln -= 1
            else:
                break
        lower[ln] = i
        ln += 1

    for i in range(n - 1, -1, -1):
        xi = xs[i]
        yi = ys[i]
        while un >= 2:
            j = upper[un - 2]
            k = upper[un - 1]
            if (xs[k] - xs[j]) * (yi - ys[j]) - (ys[k] - ys[j]) * (xi - xs[j]) <= eps:
                un -= 1
            else:
                break
        upper[un] = i
        un += 1

    return np.concatenate([lower_arr[: ln - 1], upper_arr[: un - 1]])


def concave_envelope_grid(double[::1] t, double[:, ::1] g):
    """Per-column least concave majorant of g sampled on the shared grid t.

    t has shape (S,), strictly increasing; g has shape (S, Y).  Returns the
    (S, Y) array of upper-hull interpolant values, column by column.
    """
    cdef Py_ssize_t S = g.shape[0]
    cdef Py_ssize_t Y = g.shape[1]
    out_arr = np.empty((S, Y), dtype=np.float64)
    stack_arr = np.empty(S, dtype=np.intp)
    cdef double[:, ::1] out = out_arr
    cdef cnp.intp_t[::1] stack = stack_arr
    cdef Py_ssize_t col, i, k, sn, a, b
    cdef double gi, slope

    for col in range(Y):
        sn = 0
        for i in range(S):
            gi = g[i, col]
            while sn >= 2:
                a = stack[sn - 2]
                b = stack[sn - 1]
                if (t[b] - t[a]) * (gi - g[a, col]) - (g[b, col] - g[a, col]) * (
                    t[i] - t[a]
                ) >= 0:
                    sn -= 1
                else:
                    break
            stack[sn] = i
            sn += 1
        # evaluate the chain on the grid
        k = 0
        for i in range(S):
            while k + 1 < sn and t[stack[k + 1]] <= t[i]:
                k += 1
            a = stack[k]
            if k + 1 < sn:
                b = stack[k + 1]
                slope = (g[b, col] - g[a, col]) / (t[b] - t[a])
                out[i, col] = g[a, col] + slope * (t[i] - t[a])
            else:
                out[i, col] = g[a, col]
    return out_arr
