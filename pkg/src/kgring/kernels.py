"""Backend dispatch for the hot tridiagonal kernels.

The compiled extension is preferred; the pure-Python mirror is the fallback
and can be forced with KGRING_PURE_PYTHON=1 (checked once, at import). Both
expose the same two functions with identical semantics:

    count_below(diag, off_sq, x)                 -> #eigenvalues < x
    count_below_affine(dbase, dlin, c, off_sq, x)-> same for diag = dbase + c*dlin

Arrays must be contiguous float64 (the compiled kernel is typed; use
`as_kernel_array`). The bisection driver below is shared by both backends:
counting is the only part worth compiling.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import DomainError

if os.environ.get("KGRING_PURE_PYTHON"):
    from . import _sturm_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _sturm_cy as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _sturm_py as _impl

        BACKEND = "python"

count_below = _impl.count_below
count_below_affine = _impl.count_below_affine


def as_kernel_array(a) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.float64)


def eigenvalue_indexed(diag, off, k: int, rel_tol: float = 1e-14) -> float:
    """k-th smallest eigenvalue of the symmetric tridiagonal (diag, off).

    Sturm bisection inside the Gershgorin enclosure: count_below(x) <= k
    exactly while x <= lambda_k, so the midpoint test needs one pivot sweep
    and no eigenvectors.
    """
    d = as_kernel_array(diag)
    e = as_kernel_array(off)
    n = d.shape[0]
    if not 0 <= k < n:
        raise DomainError(f"eigenvalue index {k} outside 0..{n - 1}")
    if e.shape[0] != n - 1:
        raise DomainError("off-diagonal length must be n - 1")
    e2 = e * e
    radius = np.zeros(n)
    radius[:-1] += np.abs(e)
    radius[1:] += np.abs(e)
    lo = float(np.min(d - radius))
    hi = float(np.max(d + radius))
    span = max(hi - lo, 1.0)
    lo -= 1e-12 * span
    hi += 1e-12 * span
    while hi - lo > rel_tol * max(1.0, abs(lo), abs(hi)):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if count_below(d, e2, mid) <= k:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
