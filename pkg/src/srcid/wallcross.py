"""Wall-crossing combinatorics: decreasing-minima collections, chi_t sums.

``enumerate_dec(l, k)`` lists the collections (I_1, ..., I_j) of disjoint
nonempty subsets of [1..l] with min(I_1) > ... > min(I_j) and total size
|I_1| + ... + |I_j| = k.  Distinct minima force the ordering, so the
collections are exactly the set partitions of the k-subsets of [1..l].

``chi_genus_integral`` evaluates the two fixed-point subset sums

    '+' : sum_{K subset [1..m], |K| = l}
             prod_{i in K, j notin K} (1 - t v_i/v_j)/(1 - v_i/v_j)
             prod_{i in K, k <= n}    (1 - t u_k/v_i)/(1 - u_k/v_i)
    '-' : sum_{K subset [1..n], |K| = l}
             prod_{i in K, j notin K} (1 - t u_j/u_i)/(1 - u_j/u_i)
             prod_{i in K, k <= m}    (1 - t u_i/v_k)/(1 - u_i/v_k)

which are the coefficients of (-z)^l (up to t^{l(l-1)/2}) in the two sides
of the generating-series identity

    sum_l (-z)^l t^{l(l-1)/2} chi+(l)
        = prod_{j=1}^{m-n} (1 - t^{m-j} z) * sum_l (-z)^l t^{l(l-1)/2} chi-(l).

The singleton-weighted correction formula expresses chi+(l) - chi-(l)
through chi-(l - k) with weights built from the statistic

    s(I1, I2) = #{(i, j) in I1 x I2 : i < j}        (unsigned)
              [- #{(i, j) : i > j}  when signed]

where the collection weight kills every part of size >= 2.  The hook
product identity evaluates the resulting chain sums in closed form with
symmetric q-numbers (n)_t, parametrized by s = t^{1/2}; its t -> 1 limit
produces plain binomial coefficients.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations

from .qseries import q_factorial, q_binomial, sym_q_factorial, sym_q_number

DEC_CAP = 8


def _set_partitions(elems):
    if not elems:
        yield []
        return
    first, rest = elems[0], elems[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]


def enumerate_dec(ell: int, k: int, singletons_only: bool = False):
    """All collections with total size k, as tuples of frozensets.

    Parts are ordered by strictly decreasing minimum.  With
    ``singletons_only`` the collections biject with chains
    l >= h_1 > ... > h_k >= 1 via I_i = {h_i}.
    """
    if not 0 <= k <= ell <= DEC_CAP:
        raise ValueError(f"need 0 <= k <= l <= {DEC_CAP}")
    out = []
    for support in combinations(range(1, ell + 1), k):
        if singletons_only:
            parts = sorted(([x] for x in support), key=min, reverse=True)
            out.append(tuple(frozenset(p) for p in parts))
            continue
        for partition in _set_partitions(list(support)):
            parts = sorted(partition, key=min, reverse=True)
            out.append(tuple(frozenset(p) for p in parts))
    return out


def s_stat(i1, i2, signed: bool = False) -> int:
    """#{(a, b) in I1 x I2 : a < b}, minus the a > b count when signed."""
    below = sum(1 for a in i1 for b in i2 if a < b)
    if not signed:
        return below
    above = sum(1 for a in i1 for b in i2 if a > b)
    return below - above


def chi_genus_integral(sign: str, ell: int, t, u, v):
    """Fixed-point subset sum of size ell on the chosen side ('+' or '-')."""
    n, m = len(u), len(v)
    if sign == "+":
        total = t - t
        for kset in combinations(range(m), ell):
            inside = set(kset)
            term = t - t + 1
            for i in kset:
                for j in range(m):
                    if j not in inside:
                        term *= (1 - t * v[i] / v[j]) / (1 - v[i] / v[j])
                for uk in u:
                    term *= (1 - t * uk / v[i]) / (1 - uk / v[i])
            total += term
        return total
    if sign == "-":
        total = t - t
        for kset in combinations(range(n), ell):
            inside = set(kset)
            term = t - t + 1
            for i in kset:
                for j in range(n):
                    if j not in inside:
                        term *= (1 - t * u[j] / u[i]) / (1 - u[j] / u[i])
                for vk in v:
                    term *= (1 - t * u[i] / vk) / (1 - u[i] / vk)
            total += term
        return total
    raise ValueError("sign must be '+' or '-'")


def geometric_sides(z, t, u, v):
    """Both sides of the generating-series identity (requires n <= m)."""
    n, m = len(u), len(v)
    if n > m:
        raise ValueError("needs n <= m")
    lhs = sum(
        ((-z) ** l * t ** (l * (l - 1) // 2) * chi_genus_integral("+", l, t, u, v))
        for l in range(m + 1)
    )
    rhs = sum(
        ((-z) ** l * t ** (l * (l - 1) // 2) * chi_genus_integral("-", l, t, u, v))
        for l in range(n + 1)
    )
    for j in range(1, m - n + 1):
        rhs *= 1 - t ** (m - j) * z
    return lhs, rhs


def coeff_identity_sides(ell: int, m: int, n: int, t, u, v):
    """(lhs, rhs) of the coefficient identity at order (-z)^ell, n <= m."""
    if len(u) != n or len(v) != m or n > m:
        raise ValueError("needs len(u) = n <= len(v) = m")
    lhs = t ** (ell * (ell - 1) // 2) * chi_genus_integral("+", ell, t, u, v)
    rhs = t - t
    for k in range(0, min(ell, m - n) + 1):
        term = t ** (n * k) * t ** (k * (k - 1) // 2) * q_binomial(m - n, k, t)
        term *= t ** ((ell - k) * (ell - k - 1) // 2)
        term *= chi_genus_integral("-", ell - k, t, u, v)
        rhs += term
    return lhs, rhs


def verify_coeff_identity(ell, m, n, t, u, v):
    lhs, rhs = coeff_identity_sides(ell, m, n, t, u, v)
    return lhs - rhs


def dec_weight(coll, ell: int, m: int, n: int, t, apply_gamma: bool = True):
    """Weight of one collection in the singleton correction formula.

    [l-k]_t!/[l]_t! * prod_i [d_i - 1]_t!/(t-1) * gamma(d_i)
        * t^{-(l-i) d_i} * (t^{s(I_i, R_i) + m d_i} - t^{s(R_i, I_i) + n d_i})

    with R_i = [1..l] minus the union of the first i parts, and
    gamma(d) = 1 for d = 1, 0 otherwise.
    """
    k = sum(len(part) for part in coll)
    weight = q_factorial(ell - k, t) / q_factorial(ell, t)
    remaining = set(range(1, ell + 1))
    for i, part in enumerate(coll, start=1):
        d = len(part)
        if apply_gamma and d != 1:
            return t - t
        remaining -= part
        factor = q_factorial(d - 1, t) / (t - 1)
        factor *= t ** (-(ell - i) * d)
        factor *= t ** (s_stat(part, remaining) + m * d) - t ** (s_stat(remaining, part) + n * d)
        weight *= factor
    return weight


def wallcrossing_sides(ell: int, m: int, n: int, t, u, v, singletons_only: bool = True):
    """(lhs, rhs) of the correction formula: chi+ - chi- vs the Dec sum."""
    if len(u) != n or len(v) != m:
        raise ValueError("needs len(u) = n, len(v) = m")
    lhs = chi_genus_integral("+", ell, t, u, v) - chi_genus_integral("-", ell, t, u, v)
    rhs = t - t
    for k in range(1, ell + 1):
        chi_rest = chi_genus_integral("-", ell - k, t, u, v)
        for coll in enumerate_dec(ell, k, singletons_only=singletons_only):
            rhs += dec_weight(coll, ell, m, n, t) * chi_rest
    return lhs, rhs


def verify_wallcrossing_K(ell, m, n, t, u, v):
    lhs, rhs = wallcrossing_sides(ell, m, n, t, u, v)
    return lhs - rhs


def hook_product_identity(ell: int, k: int, d: int, s):
    """(lhs, rhs) of the chain-sum factorization in symmetric q-numbers.

    lhs = sum_{l >= h_1 > ... > h_k >= 1} prod_i (l - 2 h_i - i + 2 + d)_t
    rhs = (d)_t! (l)_t! / ( (k)_t! (d-k)_t! (l-k)_t! ),  t = s^2.
    """
    if not 0 <= k <= ell <= DEC_CAP:
        raise ValueError(f"need 0 <= k <= l <= {DEC_CAP}")
    if d < k:
        raise ValueError("factorial form needs d >= k")
    one = s - s + 1
    lhs = s - s
    for combo in combinations(range(1, ell + 1), k):
        h = tuple(reversed(combo))
        term = one
        for i, hi in enumerate(h, start=1):
            term *= sym_q_number(ell - 2 * hi - i + 2 + d, s)
        lhs += term
    rhs = (
        sym_q_factorial(d, s)
        * sym_q_factorial(ell, s)
        / (sym_q_factorial(k, s) * sym_q_factorial(d - k, s) * sym_q_factorial(ell - k, s))
    )
    return lhs, rhs


def hook_product_limit(ell: int, k: int, d: int):
    """t -> 1 limit: signed-statistic chain sum against binomial(d, k).

    lhs = sum_{chains} (l-k)!/l! prod_i ( s_signed({h_i}, R_i) + d ),
    rhs = C(d, k), with R_i = [1..l] minus {h_1, ..., h_i}.
    """
    if not 0 <= k <= ell <= DEC_CAP:
        raise ValueError(f"need 0 <= k <= l <= {DEC_CAP}")
    weight = Fraction(math.factorial(ell - k), math.factorial(ell))
    lhs = Fraction(0)
    for combo in combinations(range(1, ell + 1), k):
        h = tuple(reversed(combo))
        remaining = set(range(1, ell + 1))
        term = weight
        for hi in h:
            remaining.discard(hi)
            term *= s_stat({hi}, remaining, signed=True) + d
        lhs += term
    return lhs, Fraction(math.comb(d, k))
