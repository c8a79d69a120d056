"""Kernel selection: compiled extension when available, pure Python otherwise.

Set SYMKIT_PURE_PYTHON=1 to force the fallback (useful for benchmarking and
for debugging suspected extension issues).
"""

import os

if os.environ.get("SYMKIT_PURE_PYTHON") == "1":
    from ._fallback import concave_envelope_grid, convex_hull_idx

    BACKEND = "python"
else:
    try:
        from ._speedups import concave_envelope_grid, convex_hull_idx

        BACKEND = "compiled"
    except ImportError:
        from ._fallback import concave_envelope_grid, convex_hull_idx

        BACKEND = "python"

__all__ = ["convex_hull_idx", "concave_envelope_grid", "BACKEND"]
