"""Pure-Python fallback for the 2-D convex hull chain kernel."""

import numpy as np


def convex_hull_idx(xs, ys, eps):
    """Hull vertex indices (counterclockwise from the lexicographic minimum).

    Input points must be sorted lexicographically by (x, y).  ``eps`` is an
    absolute threshold on the doubled ear area: a chain vertex is popped when
    the turn it makes is not right of that margin, which prunes collinear and
    near-collinear points in the same pass.
    """
    n = len(xs)
    if n <= 2:
        return np.arange(n, dtype=np.intp)
    lower = []
    for i in range(n):
        xi = xs[i]
        yi = ys[i]
        while len(lower) >= 2:
            j = lower[-2]
            k = lower[-1]
            if (xs[k] - xs[j]) * (yi - ys[j]) - (ys[k] - ys[j]) * (xi - xs[j]) <= eps:
                lower.pop()
            else:
                break
        lower.append(i)
    upper = []
    for i in range(n - 1, -1, -1):
        xi = xs[i]
        yi = ys[i]
        while len(upper) >= 2:
            j = upper[-2]
            k = upper[-1]
            if (xs[k] - xs[j]) * (yi - ys[j]) - (ys[k] - ys[j]) * (xi - xs[j]) <= eps:
                upper.pop()
            else:
                break
        upper.append(i)
    return np.array(lower[:-1] + upper[:-1], dtype=np.intp)


def concave_envelope_grid(t, g):
    """Per-column least concave majorant of g sampled on the shared grid t.

    t has shape (S,), strictly increasing; g has shape (S, Y).  Returns the
    (S, Y) array of upper-hull interpolant values, column by column.
    """
    S, Y = g.shape
    out = np.empty_like(g)
    for col in range(Y):
        col_g = g[:, col]
        stack = []
        for i in range(S):
            while len(stack) >= 2:
                a = stack[-2]
                b = stack[-1]
                if (t[b] - t[a]) * (col_g[i] - col_g[a]) - (col_g[b] - col_g[a]) * (
                    t[i] - t[a]
                ) >= 0:
                    stack.pop()
                else:
                    break
            stack.append(i)
        out[:, col] = np.interp(t, t[stack], col_g[stack])
    return out
