"""Scalar special-function kernel: q-products, theta, q-binomials.

Conventions used throughout the library:

    (u; q)_inf = prod_{j>=0} (1 - u q^j)                       (|q| < 1)

    (u; q)_n   = prod_{j=0}^{n-1} (1 - u q^j)                  (n > 0)
               = 1                                             (n = 0)
               = 1 / prod_{j=1}^{-n} (1 - u q^{-j})            (n < 0)

    theta(u; p) = (u; p)_inf * (p/u; p)_inf ,  theta(u; 0) = 1 - u

    [n]_q = 1 + q + ... + q^{n-1}      (q-integer; equals n at q = 1)

    (n)_s = (s^n - s^{-n}) / (s - s^{-1})   symmetric q-number, s = t^{1/2}

    psi_j(u; p, r | rank n) = u^{j-1} * theta(p^{j-1} (-1)^{n-1} r u^n; p^n)

The infinite products are truncated with a geometric tail bound: with
target epsilon and ratio |q|, N = ceil(log eps / log |q|) + guard terms,
capped at ``max_terms``, and |q| <= 0.9 is enforced as a hard limit.
``theta`` stays exact (both fields) when p = 0; every truncated product
is complex-only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .fields import ExactFieldUnavailableError

_Q_ABS_LIMIT = 0.9


class TruncationError(ValueError):
    """Ratio outside the convergence budget of the truncated products."""


@dataclass(frozen=True)
class Truncation:
    """Truncation policy for infinite q-products."""

    epsilon: float = 1e-14
    max_terms: int = 10_000
    guard_terms: int = 8

    def __post_init__(self):
        if not (0 < self.epsilon < 1):
            raise ValueError("epsilon must lie in (0, 1)")
        if self.max_terms < 1 or self.guard_terms < 0:
            raise ValueError("max_terms >= 1 and guard_terms >= 0 required")

    def num_terms(self, ratio_abs: float) -> int:
        if ratio_abs > _Q_ABS_LIMIT:
            raise TruncationError(f"|q| = {ratio_abs:.4g} exceeds the {_Q_ABS_LIMIT} limit")
        if ratio_abs == 0.0:
            return 1
        n = math.ceil(math.log(self.epsilon) / math.log(ratio_abs)) + self.guard_terms
        return max(1, min(n, self.max_terms))


DEFAULT_TRUNCATION = Truncation()


def _reject_exact(*values):
    for x in values:
        if isinstance(x, Fraction):
            raise ExactFieldUnavailableError(
                "truncated infinite products are complex-only; got a Fraction"
            )


def qpoch_inf(u, q, trunc: Truncation = DEFAULT_TRUNCATION):
    """Truncated (u; q)_inf over the complex field, |q| <= 0.9."""
    _reject_exact(u, q)
    u = complex(u)
    q = complex(q)
    n = trunc.num_terms(abs(q))
    acc = 1 + 0j
    power = 1 + 0j
    for _ in range(n):
        acc *= 1 - u * power
        power *= q
    return acc


def qpoch_n(u, q, n: int):
    """Finite (u; q)_n with the piecewise extension to negative n.

    Works over both fields; q must be nonzero.  A vanishing factor in the
    negative-n branch raises ``ZeroDivisionError``.
    """
    if q == 0:
        raise ValueError("qpoch_n requires q != 0")
    one = u - u + 1
    acc = one
    if n >= 0:
        power = one
        for _ in range(n):
            acc *= 1 - u * power
            power *= q
        return acc
    qinv = one / q
    power = one
    for _ in range(-n):
        power *= qinv
        factor = 1 - u * power
        if factor == 0:
            raise ZeroDivisionError("vanishing factor in (u; q)_n for n < 0")
        acc *= factor
    return one / acc


def theta(u, p, trunc: Truncation = DEFAULT_TRUNCATION):
    """Odd theta function theta(u; p) = (u; p)_inf (p/u; p)_inf.

    At p = 0 this is exactly 1 - u and is evaluated exactly over either
    field; for p != 0 it is complex-only with truncated products.
    """
    if u == 0:
        raise ValueError("theta requires u != 0")
    if p == 0:
        return 1 - u
    _reject_exact(u, p)
    return qpoch_inf(u, p, trunc) * qpoch_inf(complex(p) / complex(u), p, trunc)


def q_int(k: int, q):
    """q-integer [k]_q = 1 + q + ... + q^{k-1}, exact at q = 1."""
    if k < 0:
        raise ValueError("q_int requires k >= 0")
    one = q - q + 1
    acc = one - one
    power = one
    for _ in range(k):
        acc += power
        power *= q
    return acc


def q_factorial(k: int, q):
    one = q - q + 1
    acc = one
    for j in range(1, k + 1):
        acc *= q_int(j, q)
    return acc


def q_binomial(n: int, l: int, q):
    """Gaussian binomial [n choose l]_q as a ratio of q-integer products.

    Exact over the rationals.  l outside [0, n] is rejected; callers that
    want the zero convention must guard themselves.
    """
    if l < 0 or l > n:
        raise ValueError(f"q_binomial needs 0 <= l <= n, got n={n}, l={l}")
    one = q - q + 1
    acc = one
    for j in range(1, l + 1):
        acc = acc * q_int(n - l + j, q) / q_int(j, q)
    return acc


def sym_q_number(n: int, s):
    """Symmetric q-number (n)_t = (s^n - s^{-n}) / (s - s^{-1}), s = t^{1/2}.

    Defined for any integer n; (-n)_t = -(n)_t falls out of the formula.
    """
    if s == 0 or s == 1 or s == -1:
        raise ValueError("sym_q_number requires s not in {0, 1, -1}")
    return (s**n - s**(-n)) / (s - 1 / s)


def sym_q_factorial(n: int, s):
    """(n)_t! = prod_{j=1}^n (j)_t for n >= 0."""
    if n < 0:
        raise ValueError("sym_q_factorial requires n >= 0")
    one = s - s + 1
    acc = one
    for j in range(1, n + 1):
        acc *= sym_q_number(j, s)
    return acc


def psi_A(j: int, n: int, u, p, r, trunc: Truncation = DEFAULT_TRUNCATION):
    """Row function psi_j(u; p, r) of the rank-(n-1) theta Vandermonde basis.

    psi_j(u; p, r) = u^{j-1} theta(p^{j-1} (-1)^{n-1} r u^n; p^n) for
    1 <= j <= n.  At p = 0 the piecewise form is used and stays exact:
    1 - (-1)^{n-1} r u^n for j = 1, u^{j-1} otherwise.
    """
    if not 1 <= j <= n:
        raise ValueError(f"psi_A needs 1 <= j <= n, got j={j}, n={n}")
    sign = 1 if (n - 1) % 2 == 0 else -1
    if p == 0:
        if j == 1:
            return 1 - sign * r * u**n
        return u ** (j - 1)
    return u ** (j - 1) * theta(p ** (j - 1) * sign * r * u**n, p**n, trunc)
