"""Divided differences, the c-twisted symmetrizer, and its closed forms.

Operators on functions of u_1, ..., u_n:

    d_k f = (f - f with u_k <-> u_{k+1}) / (u_k - u_{k+1})

    Sym_c(f) = sum_{w in S_n} w . ( Delta(1..n) f ),
    Delta(k_1..k_n) = prod_{i<j} (u_{k_i} - u_{k_j} - c) / (u_{k_i} - u_{k_j})

    theta: index shift u_k -> u_{k+1} with wraparound u_{k+n} = u_k + c
    tau:   index shift u_j -> u_{j+1} that erases the last factor of the
           double product it acts on (see lascoux_tau_sides)

The chain d_{n-1} ... d_1 f(u_1) equals the Newton divided difference
f[u_1, ..., u_n]; ``newton_chain`` computes it by the O(n^2) table, and the
agreement with the literal operator chain is itself a tested property.

The two symmetrization formulas verified here evaluate Sym_c of
(1 - theta)^{n-1} prod_{j>=2} prod_k (u_j - v_k) f(u_1), resp. of
(1 - tau)^n prod_{j,k} (u_j - v_k - c)/(u_j - v_k), in closed form through
the n = m, z = 1 cleared source polynomial (the ik determinant).
"""

from __future__ import annotations

import math
from itertools import permutations

from .linalg import det, prod
from .sources import RatParams, rational_P

PERM_CAP = 8


def poly_eval(coeffs, x):
    """Evaluate a coefficient-list polynomial a_0 + a_1 x + ... at x."""
    acc = x - x
    for a in reversed(list(coeffs)):
        acc = acc * x + a
    return acc


def divided_difference(f, u, k: int):
    """d_k f at the point u (0-based k, acting on slots k and k+1)."""
    u = tuple(u)
    if u[k] == u[k + 1]:
        raise ZeroDivisionError("divided difference needs u_k != u_{k+1}")
    swapped = list(u)
    swapped[k], swapped[k + 1] = swapped[k + 1], swapped[k]
    return (f(u) - f(tuple(swapped))) / (u[k] - u[k + 1])


def newton_chain(coeffs, u):
    """d_{n-1} ... d_1 f(u_1) as the Newton divided difference f[u_1..u_n]."""
    u = tuple(u)
    if len(set(u)) != len(u):
        raise ZeroDivisionError("newton_chain needs pairwise distinct points")
    table = [poly_eval(coeffs, x) for x in u]
    n = len(u)
    for level in range(1, n):
        table = [
            (table[i + 1] - table[i]) / (u[i + level] - u[i]) for i in range(n - level)
        ]
    return table[0]


def delta_product(xs, c):
    """Delta factor prod_{i<j} (x_i - x_j - c)/(x_i - x_j)."""
    acc = c - c + 1
    n = len(xs)
    for i in range(n):
        for j in range(i + 1, n):
            acc *= (xs[i] - xs[j] - c) / (xs[i] - xs[j])
    return acc


def sym_c(g, u, c):
    """Sym_c(g) at the point u: sum over S_n of Delta-twisted permuted values."""
    u = tuple(u)
    n = len(u)
    if n > PERM_CAP:
        raise ValueError(f"sym_c is capped at n <= {PERM_CAP}")
    if len(set(u)) != n:
        raise ZeroDivisionError("sym_c needs pairwise distinct points")
    total = None
    for w in permutations(range(n)):
        xs = tuple(u[i] for i in w)
        term = delta_product(xs, c) * g(xs)
        total = term if total is None else total + term
    return total


def _theta_shifted_integrand(n, v, c, coeffs, ell):
    """theta^{ell-1} applied to prod_{j=2}^n prod_k (u_j - v_k) f(u_1).

    theta renames u_k to u_{k+1} with u_{k+n} = u_k + c, so the factor at
    original slot j lands at slot j + ell - 1, wrapping into a +c shift.
    """

    def integrand(xs):
        term = poly_eval(coeffs, xs[ell - 1])
        for j in range(2, n + 1):
            jj = j + ell - 1
            if jj <= n:
                for vk in v:
                    term *= xs[jj - 1] - vk
            else:
                for vk in v:
                    term *= xs[jj - n - 1] - vk + c
        return term

    return integrand


def lascoux_symmetrized_sides(u, v, c, coeffs):
    """Both sides of the symmetrization identity for a polynomial f.

    lhs = Sym_c( (1-theta)^{n-1} prod_{j=2}^n prod_k (u_j - v_k) f(u_1) ),
    the power expanded binomially into theta shifts.

    rhs = (n-1)! (-c)^{n-1}
          * prod_{i,k} (v_i - u_k)(v_i - u_k - c)
            / ( prod_{i<j} (v_j - v_i) prod_{i<j} (u_i - u_j) )
          * det 1/((v_j - u_k)(v_j - u_k - c))
          * d_{n-1} ... d_1 f(u_1)
    """
    u, v = tuple(u), tuple(v)
    n = len(u)
    if len(v) != n or n < 1:
        raise ValueError("needs len(u) == len(v) >= 1")
    lhs = None
    for ell in range(1, n + 1):
        coef = (-1) ** (ell - 1) * math.comb(n - 1, ell - 1)
        term = coef * sym_c(_theta_shifted_integrand(n, v, c, coeffs, ell), u, c)
        lhs = term if lhs is None else lhs + term

    pref = math.factorial(n - 1) * (-c) ** (n - 1)
    pref *= prod((vi - uk) * (vi - uk - c) for vi in v for uk in u)
    for i in range(n):
        for j in range(i + 1, n):
            pref /= (v[j] - v[i]) * (u[i] - u[j])
    entries = [[1 / ((vj - uk) * (vj - uk - c)) for uk in u] for vj in v]
    rhs = pref * det(entries) * newton_chain(coeffs, u)
    return lhs, rhs


def lascoux_rhs_via_source(u, v, c, coeffs):
    """Same rhs routed through the cleared source polynomial at z = 1:

    (n-1)!/(-c) * P_{n,n}^{(z=1)}(u | v) * d_{n-1} ... d_1 f(u_1).
    """
    n = len(u)
    p_val = rational_P(RatParams(c=c, z=c - c + 1, u=tuple(u), v=tuple(v)))
    return math.factorial(n - 1) / (-c) * p_val * newton_chain(coeffs, u)


def lascoux_tau_sides(u, v, c):
    """Both sides of the tau-shift symmetrization identity.

    tau^t of the double product prod_{j=1}^n prod_k (u_j - v_k - c)/(u_j - v_k)
    is the tail prod_{j=t+1}^n prod_k (u_j - v_k - c)/(u_j - v_k), so

    lhs = Sym_c( sum_{t=0}^n (-1)^t C(n, t) * tail_t )
    rhs = n! c^n prod_{i,k} (v_i - u_k + c)
          / ( prod_{i<j} (v_j - v_i) prod_{i<j} (u_i - u_j) )
          * det 1/((v_j - u_k + c)(v_j - u_k))
    """
    u, v = tuple(u), tuple(v)
    n = len(u)
    if len(v) != n or n < 1:
        raise ValueError("needs len(u) == len(v) >= 1")

    def h(xs):
        total = None
        for t in range(n + 1):
            term = (-1) ** t * math.comb(n, t) * (c - c + 1)
            for j in range(t, n):
                for vk in v:
                    term *= (xs[j] - vk - c) / (xs[j] - vk)
            total = term if total is None else total + term
        return total

    lhs = sym_c(h, u, c)

    pref = math.factorial(n) * c**n
    pref *= prod(vi - uk + c for vi in v for uk in u)
    for i in range(n):
        for j in range(i + 1, n):
            pref /= (v[j] - v[i]) * (u[i] - u[j])
    entries = [[1 / ((vj - uk + c) * (vj - uk)) for uk in u] for vj in v]
    rhs = pref * det(entries)
    return lhs, rhs


def lascoux_tau_rhs_via_source(u, v, c):
    """tau-identity rhs as n! / prod (u_j - v_k) * P_{n,n}^{(z=1)}(u | v + c)."""
    n = len(u)
    one = c - c + 1
    shifted = tuple(vk + c for vk in v)
    p_val = rational_P(RatParams(c=c, z=one, u=tuple(u), v=shifted))
    return math.factorial(n) * p_val / prod(uj - vk for uj in u for vk in v)


def reduction_identity_sides(u, v, c):
    """Both sides of the f(u_1)-coefficient identity behind the theta formula.

    lhs = sum_{ell=1}^n (-1)^{ell-1} C(n-1, ell-1)
            sum_{w in S_n, w(1)=1} w . ( Delta(ell,2,..,ell-1,1,ell+1,..,n)
                prod_{j=ell+1}^n prod_k (u_j - v_k)
                prod_{j=2}^{ell} prod_k (u_j - v_k + c) )
    rhs = (n-1)! / ( -c prod_{j>=2} (u_1 - u_j) ) * P_{n,n}^{(z=1)}(u | v)
    """
    u, v = tuple(u), tuple(v)
    n = len(u)
    one = c - c + 1
    lhs = None
    for ell in range(1, n + 1):
        seq = list(range(n))  # transposition (1 ell), 0-based
        seq[0], seq[ell - 1] = seq[ell - 1], seq[0]
        coef = (-1) ** (ell - 1) * math.comb(n - 1, ell - 1)
        for w in permutations(range(1, n)):
            xs = (u[0],) + tuple(u[i] for i in w)
            term = coef * delta_product(tuple(xs[i] for i in seq), c)
            for j in range(ell, n):
                for vk in v:
                    term *= xs[j] - vk
            for j in range(1, ell):
                for vk in v:
                    term *= xs[j] - vk + c
            lhs = term if lhs is None else lhs + term

    p_val = rational_P(RatParams(c=c, z=one, u=u, v=v))
    rhs = math.factorial(n - 1) * p_val / (-c * prod(u[0] - u[j] for j in range(1, n)))
    return lhs, rhs
