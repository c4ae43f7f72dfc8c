"""Dense determinants over both fields plus the closed-form factorizations.

Matrices are plain row-major lists of lists.  Complex matrices go through
LU with partial pivoting by modulus; exact matrices go through
fraction-free Bareiss elimination, so rational input gives a bit-exact
rational determinant.  A singular matrix returns 0 rather than raising:
the vanishing lemmas downstream rely on exact zero determinants being
legitimate values.

The closed forms implemented here:

* Cauchy determinant in theta form ("Frobenius determinant"):
      det[ theta(L u_i / v_j) / (theta(L) theta(u_i / v_j)) ]
        = theta(L prod u / prod v) prod_{i<j} u_j theta(u_i/u_j) v_j^{-1} theta(v_j/v_i)
          / ( theta(L) prod_{i,j} theta(u_i/v_j) )
* theta Vandermonde factorization:
      det[ psi_j(u_k; p, r) ] = (p;p)_inf^n / (p^n;p^n)_inf^n
          * theta(r prod u) * prod_{i<j} u_j theta(u_i/u_j)
* Cauchy-Vandermonde block determinant (n >= m):
      det X = prod_{i<j<=m} (v_j - v_i) prod_{i<j<=n} (u_i - u_j)
              / prod_{i<=m, k<=n} (v_i - u_k)
  with X stacking Cauchy rows 1/(v_i - u_j) over monomial rows u_j^{n-i}.

All three degenerate to exact rational statements at p = 0.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .qseries import DEFAULT_TRUNCATION, psi_A, qpoch_inf, theta


def det(rows):
    """Determinant of a square list-of-lists matrix; empty matrix gives 1."""
    n = len(rows)
    if n == 0:
        return 1
    if any(len(r) != n for r in rows):
        raise ValueError("determinant requires a square matrix")
    if _all_exact(rows):
        return det_exact(rows)
    return det_complex(rows)


def _all_exact(rows) -> bool:
    return all(isinstance(x, (Fraction, int)) for r in rows for x in r)


def det_exact(rows) -> Fraction:
    """Fraction-free Bareiss elimination; exact over the rationals."""
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    sign = 1
    prev = Fraction(1)
    for col in range(n - 1):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[piv], a[col] = a[col], a[piv]
            sign = -sign
        pivot = a[col][col]
        for r in range(col + 1, n):
            for c in range(col + 1, n):
                a[r][c] = (a[r][c] * pivot - a[r][col] * a[col][c]) / prev
            a[r][col] = Fraction(0)
        prev = pivot
    return sign * a[n - 1][n - 1]


def det_complex(rows) -> complex:
    """LU with partial pivoting by modulus."""
    a = [[complex(x) for x in r] for r in rows]
    n = len(a)
    acc = 1 + 0j
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(a[r][col]))
        if a[piv][col] == 0:
            return 0j
        if piv != col:
            a[piv], a[col] = a[col], a[piv]
            acc = -acc
        pivot = a[col][col]
        acc *= pivot
        for r in range(col + 1, n):
            f = a[r][col] / pivot
            if f == 0:
                continue
            row_r = a[r]
            row_c = a[col]
            for c in range(col + 1, n):
                row_r[c] -= f * row_c[c]
    return acc


def prod(values, start=1):
    return math.prod(values, start=start)


# ---------------------------------------------------------------------------
# Frobenius (theta-Cauchy) determinant
# ---------------------------------------------------------------------------


def frobenius_matrix(u, v, lam, p, trunc=DEFAULT_TRUNCATION):
    n = len(u)
    if len(v) != n:
        raise ValueError("frobenius_matrix needs len(u) == len(v)")
    th_lam = theta(lam, p, trunc)
    return [
        [
            theta(lam * u[i] / v[j], p, trunc) / (th_lam * theta(u[i] / v[j], p, trunc))
            for j in range(n)
        ]
        for i in range(n)
    ]


def frobenius_closed(u, v, lam, p, trunc=DEFAULT_TRUNCATION):
    n = len(u)
    if len(v) != n:
        raise ValueError("frobenius_closed needs len(u) == len(v)")
    num = theta(lam * prod(u) / prod(v), p, trunc)
    for i in range(n):
        for j in range(i + 1, n):
            num *= u[j] * theta(u[i] / u[j], p, trunc)
            num *= theta(v[j] / v[i], p, trunc) / v[j]
    den = theta(lam, p, trunc)
    for ui in u:
        for vj in v:
            den *= theta(ui / vj, p, trunc)
    return num / den


# ---------------------------------------------------------------------------
# theta Vandermonde factorization
# ---------------------------------------------------------------------------


def psi_vandermonde_matrix(u, p, r, trunc=DEFAULT_TRUNCATION):
    """Matrix [psi_j(u_k)] with row index j, column index k."""
    n = len(u)
    return [[psi_A(j, n, u[k], p, r, trunc) for k in range(n)] for j in range(1, n + 1)]


def elliptic_vandermonde_sides(u, p, r, trunc=DEFAULT_TRUNCATION):
    """(lhs, rhs) of the theta Vandermonde factorization."""
    n = len(u)
    lhs = det(psi_vandermonde_matrix(u, p, r, trunc))
    if p == 0:
        rhs = 1 - r * prod(u)
        for i in range(n):
            for j in range(i + 1, n):
                rhs *= u[j] - u[i]
        return lhs, rhs
    rhs = (qpoch_inf(p, p, trunc) / qpoch_inf(p**n, p**n, trunc)) ** n
    rhs *= theta(r * prod(u), p, trunc)
    for i in range(n):
        for j in range(i + 1, n):
            rhs *= u[j] * theta(u[i] / u[j], p, trunc)
    return lhs, rhs


# ---------------------------------------------------------------------------
# Cauchy-Vandermonde block determinant
# ---------------------------------------------------------------------------


def cauchy_vandermonde_matrix(u, v):
    """n x n block matrix: Cauchy rows 1/(v_i - u_j), then rows u_j^{n-i}."""
    n, m = len(u), len(v)
    if m > n:
        raise ValueError("cauchy_vandermonde_matrix needs len(u) >= len(v)")
    rows = [[1 / (v[i] - u[j]) for j in range(n)] for i in range(m)]
    rows += [[u[j] ** (n - i) for j in range(n)] for i in range(m + 1, n + 1)]
    return rows


def cauchy_vandermonde_closed(u, v):
    n, m = len(u), len(v)
    if m > n:
        raise ValueError("cauchy_vandermonde_closed needs len(u) >= len(v)")
    num = 1
    for i in range(m):
        for j in range(i + 1, m):
            num *= v[j] - v[i]
    for i in range(n):
        for j in range(i + 1, n):
            num *= u[i] - u[j]
    den = 1
    for vi in v:
        for uk in u:
            den *= vi - uk
    return num / den
