"""Pure-Python Sturm pivot counting; mirror of the compiled kernel.

count_below walks the LDL^T pivots of T - x I for a symmetric tridiagonal T
(diagonal d, squared off-diagonal e2): q_i = d_i - x - e2_{i-1}/q_{i-1}.
The number of negative pivots equals the number of eigenvalues strictly
below x. Pivots inside (-PIVMIN, PIVMIN) are pushed to -PIVMIN, the standard
guard against division blow-up; it can only perturb counts at x ulp-close to
an eigenvalue, which the bisection drivers tolerate by construction.
"""

_PIVMIN = 1e-290


def count_below(diag, off_sq, x) -> int:
    d = diag.tolist() if hasattr(diag, "tolist") else list(diag)
    e2 = off_sq.tolist() if hasattr(off_sq, "tolist") else list(off_sq)
    q = d[0] - x
    if -_PIVMIN < q < _PIVMIN:
        q = -_PIVMIN
    count = 1 if q < 0.0 else 0
    for i in range(1, len(d)):
        q = d[i] - x - e2[i - 1] / q
        if -_PIVMIN < q < _PIVMIN:
            q = -_PIVMIN
        if q < 0.0:
            count += 1
    return count


def count_below_affine(diag_base, diag_lin, c, off_sq, x) -> int:
    """Same count for T(c) with diagonal diag_base + c*diag_lin."""
    db = diag_base.tolist() if hasattr(diag_base, "tolist") else list(diag_base)
    dl = diag_lin.tolist() if hasattr(diag_lin, "tolist") else list(diag_lin)
    e2 = off_sq.tolist() if hasattr(off_sq, "tolist") else list(off_sq)
    q = db[0] + c * dl[0] - x
    if -_PIVMIN < q < _PIVMIN:
        q = -_PIVMIN
    count = 1 if q < 0.0 else 0
    for i in range(1, len(db)):
        q = db[i] + c * dl[i] - x - e2[i - 1] / q
        if -_PIVMIN < q < _PIVMIN:
            q = -_PIVMIN
        if q < 0.0:
            count += 1
    return count
