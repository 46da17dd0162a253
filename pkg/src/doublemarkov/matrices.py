"""Dense symmetric matrix layer: definiteness, minors, CI extraction.

Matrices are plain numpy arrays.  Float arrays go through LAPACK; arrays of
dtype object holding ``fractions.Fraction`` entries run through exact
rational routines (Sylvester minors, fraction-free elimination) so paper
examples can be checked without rounding.

Frozen minor convention: the almost-principal minor for (ij|K) is the
determinant of the submatrix with row set iK and column set jK, the
distinguished index first and K ascending after it.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import scipy.linalg

from .errors import NotPositiveDefinite
from .graphs import Graph
from . import ci

DEFAULT_TOL = 1e-8
PIVOT_TOL = 1e-12


def is_exact(a: np.ndarray) -> bool:
    return np.asarray(a).dtype == object


def as_sym(a, name: str = "matrix") -> np.ndarray:
    """Validate a square symmetric matrix and hand it back as an ndarray."""
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be square, got shape {a.shape}")
    if is_exact(a):
        if not all(a[i, j] == a[j, i] for i in range(a.shape[0]) for j in range(i)):
            raise ValueError(f"{name} must be symmetric")
        if a.shape[0] > 1 and not all(
            isinstance(x, (Fraction, int)) for x in a.flat
        ):
            raise ValueError(f"exact {name} entries must be Fraction or int")
    else:
        a = a.astype(float)
        if not np.isfinite(a).all():
            raise ValueError(f"{name} has non-finite entries")
        asym = np.abs(a - a.T).max()
        if asym > 0:
            # canonicalize away rounding-level asymmetry, reject real asymmetry
            if asym > 1e-12 * max(1.0, np.abs(a).max()):
                raise ValueError(f"{name} must be symmetric")
            a = (a + a.T) / 2
    return a


def rational_matrix(rows) -> np.ndarray:
    """Object array of Fractions from nested ints/Fractions/strings like '3/7'."""
    data = [[Fraction(x) for x in row] for row in rows]
    n = len(data)
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        if len(data[i]) != n:
            raise ValueError("matrix rows have unequal lengths")
        for j in range(n):
            out[i, j] = data[i][j]
    return as_sym(out)


def _det_exact(a: np.ndarray) -> Fraction:
    """Exact determinant by fraction Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in a]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] * inv
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


def det(a: np.ndarray):
    a = np.asarray(a)
    if a.shape[0] == 0:
        return Fraction(1) if is_exact(a) else 1.0
    if is_exact(a):
        return _det_exact(a)
    return float(np.linalg.det(a))


def _cholesky_or_none(a: np.ndarray):
    try:
        return np.linalg.cholesky(a)
    except np.linalg.LinAlgError:
        return None


def leading_minors_exact(a: np.ndarray) -> list[Fraction]:
    return [_det_exact(a[: k + 1, : k + 1]) for k in range(a.shape[0])]


def is_pd(a, pivot_tol: float = PIVOT_TOL) -> bool:
    """Positive definiteness; Cholesky pivots (exact: Sylvester minors).

    Float mode requires every Cholesky pivot to exceed
    pivot_tol * max(1, max|entry|), so barely singular matrices are rejected.
    """
    a = as_sym(a)
    if is_exact(a):
        return all(m > 0 for m in leading_minors_exact(a))
    L = _cholesky_or_none(a)
    if L is None:
        return False
    scale = max(1.0, float(np.abs(a).max()))
    return bool((np.diag(L) ** 2 > pivot_tol * scale).all())


def _require_pd(a):
    if not is_pd(a):
        raise NotPositiveDefinite("matrix is not positive definite")


def inverse(a) -> np.ndarray:
    """Inverse of a positive definite matrix; float mode goes via Cholesky."""
    a = as_sym(a)
    _require_pd(a)
    if is_exact(a):
        return _inverse_exact(a)
    c, low = scipy.linalg.cho_factor(a)
    inv = scipy.linalg.cho_solve((c, low), np.eye(a.shape[0]))
    return (inv + inv.T) / 2


def _inverse_exact(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    m = [[Fraction(a[i, j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if m[r][c] != 0)
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            out[i, j] = m[i][j + n]
    return out


def almost_principal_minor(a, i: int, j: int, K=()):
    """det of the (ij|K) minor: rows [i] + sorted K, columns [j] + sorted K."""
    a = as_sym(a)
    n = a.shape[0]
    s = ci.make_statement(i, j, K)
    for v in (s.i, s.j, *s.K):
        if not 1 <= v <= n:
            raise ValueError(f"vertex {v} out of range 1..{n}")
    ks = sorted(s.K)
    rows = [i - 1] + [v - 1 for v in ks]
    cols = [j - 1] + [v - 1 for v in ks]
    return det(a[np.ix_(rows, cols)])


def relation_of_matrix(a, tol: float = DEFAULT_TOL) -> ci.Relation:
    """CI relation <a>: statements whose almost-principal minor vanishes.

    Float entries use |minor| <= tol * sqrt(prod of diagonal entries over
    the minor's rows and columns), which is invariant under diagonal
    rescaling D a D and, unlike a column-norm scale, does not degenerate on
    1x1 minors (where the only column is the tested entry itself).  Exact
    entries use minor == 0.
    """
    a = as_sym(a)
    _require_pd(a)
    n = a.shape[0]
    exact = is_exact(a)
    diag = None if exact else np.diag(a).astype(float)
    bits = 0
    for idx in range(ci.num_statements(n)):
        s = ci.statement_at(n, idx)
        ks = sorted(s.K)
        rows = [s.i - 1] + [v - 1 for v in ks]
        cols = [s.j - 1] + [v - 1 for v in ks]
        d = det(a[np.ix_(rows, cols)])
        if exact:
            hit = d == 0
        else:
            scale = float(np.sqrt(np.prod(diag[rows]) * np.prod(diag[cols])))
            hit = abs(d) <= tol * (scale if scale > 0 else 1.0)
        if hit:
            bits |= 1 << idx
    return ci.Relation(n, bits)


def to_correlation(a) -> tuple[np.ndarray, np.ndarray]:
    """Split a = D R D with D = diag(sqrt of a's diagonal) and unit-diagonal R."""
    a = as_sym(a)
    if is_exact(a):
        raise ValueError("to_correlation needs float input; square roots are irrational")
    dvec = np.diag(a)
    if (dvec <= 0).any():
        raise NotPositiveDefinite("diagonal must be strictly positive")
    d = np.sqrt(dvec)
    r = a / np.outer(d, d)
    np.fill_diagonal(r, 1.0)
    return d, (r + r.T) / 2


def marginal_matrix(a, k: int) -> np.ndarray:
    """Principal submatrix dropping row and column k."""
    a = as_sym(a)
    _require_pd(a)
    keep = [v for v in range(a.shape[0]) if v != k - 1]
    return a[np.ix_(keep, keep)]


def conditional_matrix(a, k: int) -> np.ndarray:
    """Schur complement of the k-th diagonal entry."""
    a = as_sym(a)
    _require_pd(a)
    k0 = k - 1
    keep = [v for v in range(a.shape[0]) if v != k0]
    col = a[keep, k0]
    if is_exact(a):
        inv = 1 / Fraction(a[k0, k0])
        out = a[np.ix_(keep, keep)] - inv * np.outer(col, col)
    else:
        out = a[np.ix_(keep, keep)] - np.outer(col, col) / a[k0, k0]
        out = (out + out.T) / 2
    return out


def hadamard(a, w) -> np.ndarray:
    a = as_sym(a)
    w = as_sym(w, "weight matrix")
    if a.shape != w.shape:
        raise ValueError("size mismatch in Hadamard product")
    return a * w


def direct_sum_matrix(a, b) -> np.ndarray:
    a = as_sym(a)
    b = as_sym(b, "second matrix")
    if is_exact(a) != is_exact(b):
        raise ValueError("cannot mix exact and float blocks")
    n, m = a.shape[0], b.shape[0]
    if is_exact(a):
        out = np.full((n + m, n + m), Fraction(0), dtype=object)
    else:
        out = np.zeros((n + m, n + m))
    out[:n, :n] = a
    out[n:, n:] = b
    return out


def membership_residual(a, g: Graph, h: Graph) -> np.ndarray:
    """Concatenated (a^-1)_ij over non-edges of g, then a_kl over non-edges of h.

    Pairs run in lexicographic order.  a belongs to the model of (g, h)
    numerically iff the max-norm of this vector is below tolerance.
    """
    a = as_sym(a)
    if g.n != h.n or g.n != a.shape[0]:
        raise ValueError("matrix and graphs must share the ground set")
    inv = inverse(a)
    out = [inv[i - 1, j - 1] for i, j in g.non_edges()]
    out += [a[k - 1, l - 1] for k, l in h.non_edges()]
    dtype = object if is_exact(a) else float
    return np.array(out, dtype=dtype)


def is_member(a, g: Graph, h: Graph, tol: float = DEFAULT_TOL) -> bool:
    res = membership_residual(a, g, h)
    if res.size == 0:
        return True
    if is_exact(a):
        return all(x == 0 for x in res)
    return bool(np.abs(res).max() <= tol)


# -- plain text I/O -----------------------------------------------------------

def parse_matrix(text: str) -> np.ndarray:
    """Parse 'n' then n rows of n numbers; any 'p/q' token switches to exact mode."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix file")
    try:
        n = int(lines[0].split()[0])
    except (ValueError, IndexError):
        raise ValueError(f"line 1: expected the matrix size, got {lines[0]!r}") from None
    if len(lines) < n + 1:
        raise ValueError(f"expected {n} matrix rows, found {len(lines) - 1}")
    rows = [ln.split() for ln in lines[1 : n + 1]]
    for no, row in enumerate(rows, start=2):
        if len(row) != n:
            raise ValueError(f"line {no}: expected {n} entries, found {len(row)}")
    exact = any("/" in tok for row in rows for tok in row)
    if exact:
        return rational_matrix(rows)
    try:
        vals = [[float(tok) for tok in row] for row in rows]
    except ValueError as e:
        raise ValueError(f"bad matrix entry: {e}") from None
    return as_sym(np.array(vals))


def format_matrix(a) -> str:
    a = as_sym(a)
    n = a.shape[0]
    if is_exact(a):
        body = "\n".join(" ".join(str(Fraction(x)) for x in row) for row in a)
    else:
        body = "\n".join(" ".join(repr(float(x)) for x in row) for row in a)
    return f"{n}\n{body}\n"
