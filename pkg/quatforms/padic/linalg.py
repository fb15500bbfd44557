"""
Linear algebra over Z/p^N.

Matrices are numpy arrays of dtype=object holding Python ints in [0, p^N).
Nothing here divides by p: characteristic polynomials come from a
division-free recurrence, and the solver records how many digits it loses.
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from quatforms.errors import SingularToPrecision
from quatforms.padic.residue import PrecCtx
from quatforms.padic.series import PadicPoly

logger = logging.getLogger(__name__)

BERKOWITZ_MAX_DIM = 16


def as_matrix(rows, ctx: PrecCtx) -> np.ndarray:
    """Copy rows (nested lists or an array) into a reduced object matrix."""
    arr = np.array(rows, dtype=object)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    q = ctx.modulus
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        out[idx] = int(x) % q
    return out


def zero_matrix(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=object)


def identity_matrix(n: int) -> np.ndarray:
    out = zero_matrix(n, n)
    for i in range(n):
        out[i, i] = 1
    return out


def mat_mul(A: np.ndarray, B: np.ndarray, ctx: PrecCtx) -> np.ndarray:
    return A.dot(B) % ctx.modulus


def min_valuation(A: np.ndarray, ctx: PrecCtx) -> int:
    """Smallest valuation among the entries (N when everything vanishes)."""
    best = ctx.N
    for x in A.flat:
        if x % ctx.modulus:
            best = min(best, ctx.valuation(int(x)))
            if best == 0:
                break
    return best


def strip_zero_rows(A: np.ndarray, ctx: PrecCtx) -> Tuple[np.ndarray, int]:
    """
    Remove rows that vanish mod p^N together with the matching columns.

    det(xI - A) = x^removed * det(xI - A') for the returned A'.
    """
    removed = 0
    q = ctx.modulus
    while A.shape[0]:
        zero = [i for i in range(A.shape[0]) if not any(x % q for x in A[i])]
        if not zero:
            break
        dropped = set(zero)
        keep = [i for i in range(A.shape[0]) if i not in dropped]
        A = A[np.ix_(keep, keep)]
        removed += len(zero)
    return A, removed


def _berkowitz(A: np.ndarray, q: int) -> List[int]:
    """Coefficients of det(xI - A), highest degree first."""
    n = A.shape[0]
    vec = [1]
    for size in range(1, n + 1):
        i0 = n - size
        a = A[i0, i0]
        R = A[i0, i0 + 1 :]
        C = A[i0 + 1 :, i0]
        S = A[i0 + 1 :, i0 + 1 :]
        # Toeplitz column: 1, -a, -RC, -RSC, -RS^2C, ...
        diags = [1, -a]
        v = C
        for _ in range(size - 1):
            diags.append(-int(R.dot(v)) % q)
            v = S.dot(v) % q
        new = []
        for i in range(size + 1):
            acc = 0
            for j in range(min(i, size - 1) + 1):
                acc += diags[i - j] * vec[j]
            new.append(acc % q)
        vec = new
    return vec


def hessenberg_form(A: np.ndarray, ctx: PrecCtx) -> np.ndarray:
    """
    Upper Hessenberg matrix similar to A over Z/p^N.

    Each step pivots on the subdiagonal entry of least valuation, so every
    multiplier is integral and the similarity is unimodular.
    """
    H = A.copy()
    n = H.shape[0]
    p, N, q = ctx.p, ctx.N, ctx.modulus
    for k in range(n - 2):
        column = H[k + 1 :, k]
        vals = [ctx.valuation(int(x)) for x in column]
        best = min(range(len(vals)), key=vals.__getitem__)
        v = vals[best]
        if v >= N:
            continue
        r = k + 1 + best
        if r != k + 1:
            H[[k + 1, r], :] = H[[r, k + 1], :]
            H[:, [k + 1, r]] = H[:, [r, k + 1]]
        scale = p**v
        u_inv = pow(int(H[k + 1, k]) // scale, -1, q)
        mult = np.array([(int(x) // scale) * u_inv % q for x in H[k + 2 :, k]], dtype=object)
        if not any(mult):
            continue
        H[k + 2 :, :] = (H[k + 2 :, :] - np.outer(mult, H[k + 1, :])) % q
        H[:, k + 1] = (H[:, k + 1] + H[:, k + 2 :].dot(mult)) % q
    return H


def _hessenberg_charpoly(H: np.ndarray, q: int) -> List[int]:
    """Coefficients of det(xI - H) for upper Hessenberg H, lowest degree first."""
    n = H.shape[0]
    P = np.zeros((n + 1, n + 1), dtype=object)
    P[0, 0] = 1
    for m in range(1, n + 1):
        prev = P[m - 1]
        new = np.zeros(n + 1, dtype=object)
        new[1:] = prev[:-1]
        new = new - H[m - 1, m - 1] * prev
        prod = 1
        coefs = []
        rows = []
        for i in range(m - 1, 0, -1):
            prod = prod * H[i, i - 1] % q
            if prod == 0:
                break
            coefs.append(H[i - 1, m - 1] * prod % q)
            rows.append(i - 1)
        if coefs:
            new = new - np.array(coefs, dtype=object).dot(P[rows])
        P[m] = new % q
    return [int(x) for x in P[n]]


def charpoly(A, ctx: PrecCtx, method: str = "auto") -> PadicPoly:
    """
    det(xI - A) mod p^N, monic, coefficients lowest degree first.

    Args:
        A: square matrix (array or nested lists)
        ctx: precision context
        method: "berkowitz", "hessenberg" or "auto" (Berkowitz for small matrices)
    """
    A = as_matrix(A, ctx)
    if A.shape[0] != A.shape[1]:
        raise ValueError(f"charpoly needs a square matrix, got shape {A.shape}")
    reduced, removed = strip_zero_rows(A, ctx)
    n = reduced.shape[0]
    if method == "auto":
        method = "berkowitz" if n <= BERKOWITZ_MAX_DIM else "hessenberg"
    if method == "berkowitz":
        coeffs = list(reversed(_berkowitz(reduced, ctx.modulus)))
    elif method == "hessenberg":
        coeffs = _hessenberg_charpoly(hessenberg_form(reduced, ctx), ctx.modulus) if n else [1]
    else:
        raise ValueError(f"unknown charpoly method {method!r}")
    logger.debug("charpoly: dim %d, %d vanishing rows stripped, method %s", A.shape[0], removed, method)
    return PadicPoly(tuple([0] * removed + coeffs), ctx)


def evaluate_matrix_poly(f: PadicPoly, A: np.ndarray, ctx: PrecCtx) -> np.ndarray:
    """f(A) by Horner's rule."""
    n = A.shape[0]
    acc = zero_matrix(n, n)
    for c in reversed(f.coeffs):
        acc = (acc.dot(A) + c * identity_matrix(n)) % ctx.modulus
    return acc


@dataclass
class SolveResult:
    """Solution of A X = B mod p^N; the congruence holds mod p^(N - loss)."""

    X: np.ndarray
    loss: int
    pivots: List[Tuple[int, int, int]]


def _eliminate(A: np.ndarray, B: np.ndarray, ctx: PrecCtx, steps: int):
    p, N, q = ctx.p, ctx.N, ctx.modulus
    Aw = A.copy()
    Bw = B.copy()
    free_rows = set(range(Aw.shape[0]))
    free_cols = set(range(Aw.shape[1]))
    pivots = []
    for _ in range(steps):
        best = None
        for i in sorted(free_rows):
            for j in sorted(free_cols):
                v = ctx.valuation(int(Aw[i, j]))
                if best is None or v < best[2]:
                    best = (i, j, v)
        if best is None or best[2] >= N:
            break
        row, col, v = best
        pivots.append(best)
        free_rows.discard(row)
        free_cols.discard(col)
        scale = p**v
        u_inv = pow(int(Aw[row, col]) // scale, -1, q)
        for i in free_rows:
            x = int(Aw[i, col])
            if x == 0:
                continue
            f = (x // scale) * u_inv % q
            Aw[i, :] = (Aw[i, :] - f * Aw[row, :]) % q
            Bw[i, :] = (Bw[i, :] - f * Bw[row, :]) % q
    return Aw, Bw, pivots


def pivot_valuations(A, ctx: PrecCtx) -> List[int]:
    """Valuations of the pivots found by least-valuation elimination; their count is the rank mod p^N."""
    A = as_matrix(A, ctx)
    _, _, pivots = _eliminate(A, zero_matrix(A.shape[0], 1), ctx, min(A.shape))
    return [v for _, _, v in pivots]


def solve_pivoted(A, B, ctx: PrecCtx) -> SolveResult:
    """
    Solve A X = B over Z/p^N with least-valuation pivoting.

    Pivots divisible by p are divided out of the right-hand side by exact
    integer division of representatives. Each division by p^v leaves the top
    v digits of X undetermined, so the reported loss is the larger of the
    summed pivot valuations and the loss read off the residual A X - B.

    Raises:
        SingularToPrecision: if some column of A has no nonzero pivot mod p^N
    """
    A = as_matrix(A, ctx)
    B = as_matrix(B, ctx)
    p, q = ctx.p, ctx.modulus
    rows, cols = A.shape
    Aw, Bw, pivots = _eliminate(A, B, ctx, cols)
    if len(pivots) < cols:
        raise SingularToPrecision(f"only {len(pivots)} of {cols} columns have a pivot mod {ctx.p}^{ctx.N}")
    X = zero_matrix(cols, B.shape[1])
    solved: List[int] = []
    for row, col, v in reversed(pivots):
        rhs = Bw[row, :].copy()
        for c in solved:
            rhs = (rhs - Aw[row, c] * X[c, :]) % q
        scale = p**v
        u_inv = pow(int(Aw[row, col]) // scale, -1, q)
        X[col, :] = np.array([(int(x) // scale) * u_inv % q for x in rhs], dtype=object)
        solved.append(col)
    residual = (A.dot(X) - B) % q
    pivot_loss = sum(v for _, _, v in pivots)
    loss = max(pivot_loss, ctx.N - min_valuation(residual, ctx))
    if pivots and max(v for _, _, v in pivots):
        logger.debug("solve_pivoted: pivot valuations %s, loss %d", [v for _, _, v in pivots], loss)
    return SolveResult(X=X, loss=loss, pivots=pivots)


def kernel_vector_2x2(M: Sequence[Sequence[int]], ctx: PrecCtx) -> Tuple[int, int]:
    """A vector with a unit coordinate killed by a 2x2 matrix that is singular mod p^N."""
    (a, b), (c, d) = M
    q = ctx.modulus
    for cand in ((b, -a), (d, -c)):
        x, y = cand[0] % q, cand[1] % q
        if ctx.is_unit(x) or ctx.is_unit(y):
            return (x, y)
    raise SingularToPrecision("2x2 matrix vanishes mod p; kernel is not a line")
