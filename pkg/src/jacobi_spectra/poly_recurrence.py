"""Polynomials of the first and second kind, Wronskians and Sturm counts.

For an ``N x N`` Jacobi matrix the three-term recurrence

    b_{k-1} f_{k-1} + q_k f_k + b_k f_{k+1} = z f_k

is run up to ``f_{N+1}`` with the convention ``b_N = 1``.  With that
convention ``pi_{N+1}(z)`` is ``det(z - J) / (b_1 ... b_{N-1})`` and vanishes
exactly at the eigenvalues.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# sup-norm rescaling is checked every RESCALE_EVERY steps
RESCALE_EVERY = 32
_RESCALE_ABOVE = 2.0 ** 400


@dataclass(frozen=True, eq=False)
class PolySequence:
    """Values ``f_1(z), ..., f_M(z)`` of a recurrence solution.

    ``values[k - 1]`` holds ``f_k`` up to the factor ``2**exponents[k - 1]``.
    The exponents are all zero unless the sequence needed rescaling to avoid
    overflow; :meth:`true_values` undoes the scaling.  When ``argument`` is
    an array, ``values`` has shape ``(M, len(argument))``.
    """

    values: np.ndarray
    exponents: np.ndarray
    argument: object
    kind: str

    def __len__(self):
        return self.values.shape[0]

    def true_values(self):
        return self.values * np.exp2(self.exponents.astype(float))

    def __getitem__(self, k):
        """1-based access to the unscaled value ``f_k``."""
        if k < 1 or k > len(self):
            raise IndexError(f"index {k} outside 1..{len(self)}")
        return self.values[k - 1] * np.exp2(
            np.asarray(self.exponents[k - 1], dtype=float))


def _run_recurrence(J, z, count, f1, f2, kind):
    N = J.size
    if not 1 <= count <= N + 1:
        raise ValueError(f"count must lie in 1..{N + 1}, got {count}")
    z = np.asarray(z)
    scalar = z.ndim == 0
    zz = np.atleast_1d(z).astype(complex if np.iscomplexobj(z) else float)
    dtype = np.result_type(zz.dtype, float)
    vals = np.zeros((count, zz.size), dtype=dtype)
    expo = np.zeros((count, zz.size), dtype=np.int64)
    vals[0] = f1
    if count >= 2:
        vals[1] = f2(zz)
    q, b = J.diag, J.offdiag
    cur_exp = np.zeros(zz.size, dtype=np.int64)
    for k in range(2, count):
        # row k (1-based) defines f_{k+1}
        bk = b[k - 1] if k <= N - 1 else 1.0
        vals[k] = ((zz - q[k - 1]) * vals[k - 1] - b[k - 2] * vals[k - 2]) / bk
        expo[k] = cur_exp
        if k % RESCALE_EVERY == 0:
            sup = np.maximum(np.abs(vals[k]), np.abs(vals[k - 1]))
            big = sup > _RESCALE_ABOVE
            if np.any(big):
                _, e = np.frexp(np.where(big, sup, 1.0))
                shift = np.where(big, e, 0).astype(np.int64)
                # the two most recent entries carry the recurrence forward
                factor = np.exp2(-shift.astype(float))
                vals[k] = vals[k] * factor
                vals[k - 1] = vals[k - 1] * factor
                cur_exp = cur_exp + shift
                expo[k] = cur_exp
                expo[k - 1] = cur_exp
    if scalar:
        return PolySequence(vals[:, 0], expo[:, 0], z.item(), kind)
    return PolySequence(vals, expo, zz, kind)


def eval_pi(J, z, count=None):
    """Polynomials of the first kind ``pi_1(z), ..., pi_count(z)``.

    ``pi_1 = 1`` and ``pi_k`` has degree ``k - 1``.  ``count`` defaults to
    ``N + 1``.  ``z`` may be a scalar or a 1-D array.
    """
    count = J.size + 1 if count is None else count
    return _run_recurrence(J, z, count, 1.0,
                           lambda zz: (zz - J.diag[0]) / J.b(1), "first")


def eval_theta(J, z, count=None):
    """Polynomials of the second kind: ``theta_1 = 0``, ``theta_2 = 1/b_1``."""
    count = J.size + 1 if count is None else count
    return _run_recurrence(J, z, count, 0.0,
                           lambda zz: np.full(zz.shape, 1.0 / J.b(1)), "second")


def _entry(seq, k):
    if hasattr(seq, "values") and hasattr(seq, "exponents"):
        return seq[k] if k <= len(seq) else None
    if hasattr(seq, "values"):  # WeylSolution: psi_{N+1} = 0
        vals = seq.values
        if k == len(vals) + 1:
            return 0.0
        return vals[k - 1]
    seq = np.asarray(seq)
    return seq[k - 1] if k <= len(seq) else None


def wronskian(J, u, v, n):
    """Modified Wronskian ``b_n (u_n v_{n+1} - u_{n+1} v_n)``.

    ``u`` and ``v`` are :class:`PolySequence`, Weyl solutions or plain
    sequences indexed from 1.  ``b_N`` is taken as 1.
    """
    if not 1 <= n <= J.size:
        raise IndexError(f"n must lie in 1..{J.size}, got {n}")
    un, un1 = _entry(u, n), _entry(u, n + 1)
    vn, vn1 = _entry(v, n), _entry(v, n + 1)
    if any(x is None for x in (un, un1, vn, vn1)):
        raise IndexError(f"sequences are not defined at indices {n}, {n + 1}")
    return J.b(n) * (un * vn1 - un1 * vn)


def sturm_count(J, x):
    """Number of eigenvalues of ``J`` strictly below ``x``.

    Counts negative pivots of the LDL^T factorisation of ``J - x``.  A zero
    pivot is replaced by ``+eps * (|q_k| + b_{k-1}**2 + 1)``, which acts like
    moving ``x`` down by a rounding error, so an eigenvalue equal to ``x`` is
    not counted.
    ``x`` may be a scalar or an array; the result has the same shape.
    """
    x = np.asarray(x, dtype=float)
    q, b = J.diag, J.offdiag
    eps = np.finfo(float).eps
    d = q[0] - x
    d = np.where(d == 0.0, eps * (abs(q[0]) + 1.0), d)
    count = (d < 0).astype(np.int64)
    for k in range(1, J.size):
        b2 = b[k - 1] ** 2
        d = (q[k] - x) - b2 / d
        d = np.where(d == 0.0, eps * (abs(q[k]) + b2 + 1.0), d)
        count += d < 0
    return int(count) if count.ndim == 0 else count
