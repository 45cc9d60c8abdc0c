"""Exact linear algebra over a prime field F_p.

Matrices are sequences of rows of ints; results are lists of lists with
entries reduced mod p. Everything here is plain Gaussian elimination,
kept dependency-free so the oracle's checks stay self-contained.
"""

from __future__ import annotations

from .errors import SingularMatrix


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a, b, p):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        for t in range(k):
            if a[i][t] % p == 0:
                continue
            ait = a[i][t] % p
            for j in range(m):
                out[i][j] = (out[i][j] + ait * b[t][j]) % p
    return out


def rref(rows, p):
    """Reduced row echelon form; returns (rows, pivot column list)."""
    mat = [[x % p for x in row] for row in rows]
    pivots = []
    r = 0
    cols = len(mat[0]) if mat else 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = pow(mat[r][c], p - 2, p)
        mat[r] = [(x * inv) % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat, pivots


def rank(rows, p):
    if not rows or not rows[0]:
        return 0
    return len(rref(rows, p)[1])


def inverse(rows, p):
    n = len(rows)
    aug = [[x % p for x in row] + identity(n)[i]
           for i, row in enumerate(rows)]
    red, pivots = rref(aug, p)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix(f"matrix is singular over F_{p}")
    return [row[n:] for row in red[:n]]


def kernel_basis(rows, p):
    """Basis of the right null space, as column vectors (lists)."""
    if not rows or not rows[0]:
        return identity(len(rows[0]) if rows else 0)
    red, pivots = rref(rows, p)
    cols = len(rows[0])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        vec = [0] * cols
        vec[f] = 1
        for r, c in enumerate(pivots):
            vec[c] = (-red[r][f]) % p
        basis.append(vec)
    return basis


def in_row_span(rows, vec, p):
    if not any(x % p for x in vec):
        return True
    if not rows:
        return False
    return rank(rows, p) == rank(list(rows) + [vec], p)


def same_row_span(rows_a, rows_b, p):
    ra = rank(rows_a, p) if rows_a else 0
    rb = rank(rows_b, p) if rows_b else 0
    if ra != rb:
        return False
    return rank(list(rows_a) + list(rows_b), p) == ra


# Polynomials over F_p, stored as tuples of coefficients in ascending
# degree with no trailing zeros, so () is the zero polynomial.

def _ptrim(coeffs, p):
    out = [c % p for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _padd(a, b, p):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _ptrim(out, p)


def _psub(a, b, p):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _ptrim(out, p)


def _pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c:
            for j, d in enumerate(b):
                out[i + j] = (out[i + j] + c * d) % p
    return _ptrim(out, p)


def _pdivmod(a, b, p):
    inv = pow(b[-1], p - 2, p)
    quot = [0] * max(0, len(a) - len(b) + 1)
    rem = _ptrim(a, p)
    while len(rem) >= len(b):
        k = len(rem) - len(b)
        s = (rem[-1] * inv) % p
        quot[k] = s
        shifted = (0,) * k + b
        rem = _psub(rem, tuple((s * c) % p for c in shifted), p)
    return _ptrim(quot, p), rem


def _pmonic(a, p):
    inv = pow(a[-1], p - 2, p)
    return tuple((c * inv) % p for c in a)


def invariant_factors(rows, p):
    """Invariant factors of xI - M over F_p[x], for a square M.

    Returns the nonconstant diagonal entries of the Smith normal form as
    monic coefficient tuples in divisibility order. Two square matrices
    over F_p are similar exactly when these agree, and for an empty
    matrix the answer is the empty tuple.
    """
    n = len(rows)
    mat = [[_ptrim(((-rows[i][j]) % p, 1) if i == j
                   else ((-rows[i][j]) % p,), p)
            for j in range(n)] for i in range(n)]
    factors = []
    for t in range(n):
        while True:
            spots = [(len(mat[i][j]), i, j)
                     for i in range(t, n) for j in range(t, n) if mat[i][j]]
            if not spots:
                break
            _, bi, bj = min(spots)
            mat[t], mat[bi] = mat[bi], mat[t]
            for row in mat:
                row[t], row[bj] = row[bj], row[t]
            dirty = False
            for i in range(t + 1, n):
                if mat[i][t]:
                    q, r = _pdivmod(mat[i][t], mat[t][t], p)
                    mat[i] = [_psub(x, _pmul(q, y, p), p)
                              for x, y in zip(mat[i], mat[t])]
                    dirty = dirty or bool(r)
            for j in range(t + 1, n):
                if mat[t][j]:
                    q, r = _pdivmod(mat[t][j], mat[t][t], p)
                    for row in mat:
                        row[j] = _psub(row[j], _pmul(q, row[t], p), p)
                    dirty = dirty or bool(r)
            if dirty:
                continue
            stray = next((i for i in range(t + 1, n)
                          for j in range(t + 1, n)
                          if _pdivmod(mat[i][j], mat[t][t], p)[1]), None)
            if stray is None:
                break
            # fold the offending row into row t so the pivot shrinks
            mat[t] = [_padd(x, y, p) for x, y in zip(mat[t], mat[stray])]
        assert mat[t][t], "xI - M lost its determinant"
        factors.append(_pmonic(mat[t][t], p))
    return tuple(f for f in factors if len(f) > 1)
