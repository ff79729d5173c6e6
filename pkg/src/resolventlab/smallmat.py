"""Self-contained dense complex linear algebra for small matrices.

Kernels for the 4x4 modal blocks (and general n <= 16): linear solve with
partial pivoting, operator norm through cyclic Jacobi iteration on the
Hermitian cross matrix, eigenvalues through the characteristic polynomial
(Faddeev-LeVerrier coefficients, Durand-Kerner root iteration, one Newton
polish per root), and the matrix exponential through scaling-and-squaring
with a degree-6 Pade approximant.

Matrices this small sit below the dispatch overhead of array libraries, so
the iterative kernels run on plain lists of Python complex numbers; public
functions accept any nested sequence (or numpy array) and return numpy
arrays for matrix/vector results.  All tolerances are fixed constants:
determinism matters more than configurability here.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import ConvergenceError, SingularMatrixError

MAX_DIM = 16

# degree-6 diagonal Pade coefficients of exp
_PADE6 = (1.0, 1 / 2, 5 / 44, 1 / 66, 1 / 792, 1 / 15840, 1 / 665280)


def _as_rows(m, maxdim=MAX_DIM):
    """Coerce a square array-like to a list of row lists of complex."""
    rows = [[complex(x) for x in row] for row in m]
    n = len(rows)
    if n == 0 or n > maxdim:
        raise ValueError(f"matrix dimension must be in 1..{maxdim}, got {n}")
    for r in rows:
        if len(r) != n:
            raise ValueError("matrix must be square")
        for x in r:
            if not (math.isfinite(x.real) and math.isfinite(x.imag)):
                raise ValueError("matrix entries must be finite")
    return rows


def _as_vec(v, n):
    vec = [complex(x) for x in v]
    if len(vec) != n:
        raise ValueError(f"vector length {len(vec)} does not match dimension {n}")
    for x in vec:
        if not (math.isfinite(x.real) and math.isfinite(x.imag)):
            raise ValueError("vector entries must be finite")
    return vec


def _lu_factor(rows):
    """In-place LU with partial pivoting; returns the row permutation.

    Raises SingularMatrixError when a pivot falls below 1e-300 times the
    largest entry of the input matrix.
    """
    n = len(rows)
    scale = max(max(abs(x) for x in r) for r in rows)
    if scale == 0.0:
        raise SingularMatrixError("zero matrix")
    guard = 1e-300 * scale
    perm = list(range(n))
    for k in range(n):
        p, pv = k, abs(rows[k][k])
        for i in range(k + 1, n):
            v = abs(rows[i][k])
            if v > pv:
                p, pv = i, v
        if pv <= guard:
            raise SingularMatrixError(f"pivot {pv:.3e} below guard at column {k}")
        if p != k:
            rows[k], rows[p] = rows[p], rows[k]
            perm[k], perm[p] = perm[p], perm[k]
        rk = rows[k]
        piv = rk[k]
        for i in range(k + 1, n):
            ri = rows[i]
            mult = ri[k] / piv
            ri[k] = mult
            for j in range(k + 1, n):
                ri[j] -= mult * rk[j]
    return perm


def _lu_solve(rows, perm, b):
    n = len(rows)
    x = [b[p] for p in perm]
    for k in range(n):
        rk = rows[k]
        xk = x[k]
        for j in range(k):
            xk -= rk[j] * x[j]
        x[k] = xk
    for k in range(n - 1, -1, -1):
        rk = rows[k]
        xk = x[k]
        for j in range(k + 1, n):
            xk -= rk[j] * x[j]
        x[k] = xk / rk[k]
    return x


def _solve_rows(m_rows, b):
    rows = [list(r) for r in m_rows]
    perm = _lu_factor(rows)
    return _lu_solve(rows, perm, b)


def _inverse_rows(m_rows):
    n = len(m_rows)
    rows = [list(r) for r in m_rows]
    perm = _lu_factor(rows)
    cols = []
    for j in range(n):
        e = [0j] * n
        e[j] = 1.0 + 0j
        cols.append(_lu_solve(rows, perm, e))
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _cross_rows(m_rows):
    """m^H m as a Hermitian list-of-lists."""
    n = len(m_rows)
    B = [[0j] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            s = 0j
            for k in range(n):
                s += m_rows[k][i].conjugate() * m_rows[k][j]
            B[i][j] = s
            if i != j:
                B[j][i] = s.conjugate()
    return B


def _jacobi_hermitian(B0, tol=1e-14, max_sweeps=60):
    """Eigenvalues of a Hermitian matrix via cyclic Jacobi rotations.

    Quadratically convergent for these dimensions; the sweep cap is a
    defensive bound, not a tuning knob.
    """
    n = len(B0)
    B = [list(r) for r in B0]
    nrm = math.sqrt(sum(abs(B[i][j]) ** 2 for i in range(n) for j in range(n)))
    if nrm == 0.0:
        return [0.0] * n
    thr = tol * nrm
    skip = 1e-18 * nrm
    for _ in range(max_sweeps):
        off = math.sqrt(2.0 * sum(abs(B[i][j]) ** 2 for i in range(n) for j in range(i + 1, n)))
        if off <= thr:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = B[p][q]
                ag = abs(g)
                if ag <= skip:
                    continue
                tau = (B[q][q].real - B[p][p].real) / (2.0 * ag)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                su = (t * c) * (g / ag)
                suc = su.conjugate()
                for k in range(n):
                    bkp = B[k][p]
                    bkq = B[k][q]
                    B[k][p] = c * bkp - suc * bkq
                    B[k][q] = su * bkp + c * bkq
                for k in range(n):
                    bpk = B[p][k]
                    bqk = B[q][k]
                    B[p][k] = c * bpk - su * bqk
                    B[q][k] = suc * bpk + c * bqk
    else:
        raise ConvergenceError("Jacobi iteration did not converge")
    return [B[i][i].real for i in range(n)]


def solve(m, rhs):
    """Solve m x = rhs by Gaussian elimination with partial pivoting.

    The residual satisfies ||m x - rhs|| <= 1e-12 (||m|| ||x|| + ||rhs||)
    for well-conditioned systems; a pivot below 1e-300 times the matrix
    scale raises SingularMatrixError.
    """
    rows = _as_rows(m)
    b = _as_vec(rhs, len(rows))
    return np.array(_solve_rows(rows, b), dtype=complex)


def inverse(m):
    """Explicit inverse via column-wise solves of the unit vectors."""
    rows = _as_rows(m)
    return np.array(_inverse_rows(rows), dtype=complex)


def determinant(m):
    """Determinant from the LU factorization (product of pivots)."""
    rows = _as_rows(m)
    try:
        perm = _lu_factor(rows)
    except SingularMatrixError:
        return 0j
    det = 1.0 + 0j
    for k in range(len(rows)):
        det *= rows[k][k]
    swaps = 0
    seen = list(perm)
    for i in range(len(seen)):
        while seen[i] != i:
            j = seen[i]
            seen[i], seen[j] = seen[j], seen[i]
            swaps += 1
    return -det if swaps % 2 else det


def operator_norm(m):
    """Largest singular value: sqrt of the top eigenvalue of m^H m (Jacobi)."""
    rows = _as_rows(m)
    ev = _jacobi_hermitian(_cross_rows(rows))
    return math.sqrt(max(0.0, max(ev)))


def singular_values(m):
    """All singular values, descending, from the Jacobi eigenvalues of m^H m.

    The small singular values of a badly conditioned matrix lose relative
    accuracy to the explicit formation of the cross matrix; use the inverse
    route (1/operator_norm(inverse(m))) where that matters.
    """
    rows = _as_rows(m)
    ev = _jacobi_hermitian(_cross_rows(rows))
    return sorted((math.sqrt(max(0.0, e)) for e in ev), reverse=True)


def _char_poly(rows):
    """Monic characteristic polynomial coefficients [1, c1, ..., cn].

    Faddeev-LeVerrier recursion: M_k = A M_{k-1} + c_{k-1} I,
    c_k = -tr(A M_k)/k.
    """
    n = len(rows)
    coeffs = [1.0 + 0j]
    M = [[1.0 + 0j if i == j else 0j for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        if k > 1:
            AM = [[sum(rows[i][l] * M[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
            ck_prev = coeffs[-1]
            for i in range(n):
                AM[i][i] += ck_prev
            M = AM
        AMk = [[sum(rows[i][l] * M[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        trace = sum(AMk[i][i] for i in range(n))
        coeffs.append(-trace / k)
    return coeffs


def _poly_eval(coeffs, z):
    v = coeffs[0]
    for c in coeffs[1:]:
        v = v * z + c
    return v


def _poly_eval_deriv(coeffs, z):
    v = coeffs[0]
    d = 0j
    for c in coeffs[1:]:
        d = d * z + v
        v = v * z + c
    return v, d


def eigenvalues(m, max_iter=500):
    """All eigenvalues with multiplicity for n <= 8.

    Characteristic-polynomial coefficients via Faddeev-LeVerrier, roots via
    Durand-Kerner, then one Newton polish per root.  The input is prescaled
    by its Frobenius norm so the coefficients stay well-conditioned for the
    weighted modal blocks.
    """
    rows = _as_rows(m, maxdim=8)
    n = len(rows)
    scale = math.sqrt(sum(abs(rows[i][j]) ** 2 for i in range(n) for j in range(n)))
    if scale == 0.0:
        return [0j] * n
    A = [[rows[i][j] / scale for j in range(n)] for i in range(n)]
    coeffs = _char_poly(A)
    radius = 1.0 + max(abs(c) for c in coeffs[1:])
    roots = [radius * cmath.exp(1j * (2 * math.pi * k / n + 0.4)) for k in range(n)]
    tol = 1e-14 * radius
    for _ in range(max_iter):
        shift = 0.0
        new = list(roots)
        for j in range(n):
            zj = roots[j]
            denom = 1.0 + 0j
            for k in range(n):
                if k != j:
                    denom *= zj - roots[k]
            if denom == 0j:
                denom = 1e-30 + 0j
            step = _poly_eval(coeffs, zj) / denom
            new[j] = zj - step
            shift = max(shift, abs(step))
        roots = new
        if shift <= tol:
            break
    else:
        raise ConvergenceError(f"Durand-Kerner did not converge in {max_iter} iterations")
    polished = []
    for z in roots:
        p, d = _poly_eval_deriv(coeffs, z)
        if d != 0j:
            z = z - p / d
        polished.append(z * scale)
    return polished


def expm(m, t):
    """exp(t*m) by scaling-and-squaring with the degree-6 Pade approximant."""
    rows = _as_rows(m)
    n = len(rows)
    if not math.isfinite(t):
        raise ValueError(f"time must be finite, got {t}")
    A = [[t * rows[i][j] for j in range(n)] for i in range(n)]
    nrm = max(sum(abs(x) for x in r) for r in A)
    s = 0
    if nrm > 0.25:
        s = min(64, int(math.ceil(math.log2(nrm / 0.25))))
        f = 0.5 ** s
        A = [[f * A[i][j] for j in range(n)] for i in range(n)]

    def matmul(X, Y):
        return [[sum(X[i][k] * Y[k][j] for k in range(n)) for j in range(n)] for i in range(n)]

    ident = [[1.0 + 0j if i == j else 0j for j in range(n)] for i in range(n)]
    A2 = matmul(A, A)
    A4 = matmul(A2, A2)
    b = _PADE6
    U_in = [[b[1] * ident[i][j] + b[3] * A2[i][j] + b[5] * A4[i][j] for j in range(n)] for i in range(n)]
    U = matmul(A, U_in)
    A6 = matmul(A4, A2)
    V = [[b[0] * ident[i][j] + b[2] * A2[i][j] + b[4] * A4[i][j] + b[6] * A6[i][j]
          for j in range(n)] for i in range(n)]
    denom = [[V[i][j] - U[i][j] for j in range(n)] for i in range(n)]
    numer = [[V[i][j] + U[i][j] for j in range(n)] for i in range(n)]
    rows_f = [list(r) for r in denom]
    perm = _lu_factor(rows_f)
    cols = [_lu_solve(rows_f, perm, [numer[i][j] for i in range(n)]) for j in range(n)]
    F = [[cols[j][i] for j in range(n)] for i in range(n)]
    for _ in range(s):
        F = matmul(F, F)
    return np.array(F, dtype=complex)
