"""Source functions: subset sums, polynomial versions, difference-operator forms.

A source function is a sum over subsets K of an index interval, each term
weighted by (-z)^|K| and cross-ratio products.  The pair (F, G) in each
regime satisfies F = G; this identity is what most of the verification
suite exercises.  Writing s = |K|:

rational (shift parameter c):

    F = sum_{K subset [1..m]} (-z)^s  prod_{i in K, j notin K} (v_i - v_j - c)/(v_i - v_j)
                                      prod_{i in K, k <= n}   (v_i - u_k)/(v_i - u_k - c)
    G = (1-z)^{m-n} sum_{K subset [1..n]} (-z)^s
                                      prod_{i in K, j notin K} (u_i - u_j + c)/(u_i - u_j)
                                      prod_{i in K, k <= m}   (u_i - v_k)/(u_i - v_k + c)

trigonometric (multiplicative shift q):

    F = sum_{K subset [1..m]} (-z)^s q^{s(s-1)/2}
            prod (v_i - q v_j)/(v_i - v_j) prod (v_i - u_k)/(v_i - q u_k)
    G = (z; q)_{m-n} sum_{K subset [1..n]} (-q^{m-n} z)^s q^{s(s-1)/2}
            prod (q u_i - u_j)/(u_i - u_j) prod (v_k - u_i)/(v_k - q u_i)

elliptic (nome p, n = m), with L the extra balancing parameter:

    F = sum_K (-z)^s q^{s(s-1)/2} theta(q^s L prod u / prod v; p)
            prod theta(q v_j/v_i)/theta(v_j/v_i) prod theta(u_k/v_i)/theta(q u_k/v_i)
    G = same with u <-> v roles swapped on the cross ratios.

``trig_lambda`` is the Lambda-weighted trigonometric family in which each
term additionally carries (1 - q^s Lambda); its F/G pair is tied together
by the finite q-binomial degeneration identity checked in the engine.

The polynomial versions P and Q are the same sums with the denominators
(v_i - q u_k), resp. theta(q u_k / v_i), cleared; they are what the
vanishing and evaluation lemmas specialize, so they are implemented
directly from their cleared form rather than by multiplying F by the
clearing factor (which would be 0/0 at exactly the interesting points).

Subsets are enumerated by bitmask; the hard size cap is max(n, m) <= 12.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .linalg import frobenius_matrix, det, prod
from .qseries import DEFAULT_TRUNCATION, qpoch_n, theta

SIZE_CAP = 12


class SizeCapError(ValueError):
    """Subset enumeration beyond 2^12 terms is refused."""


@dataclass(frozen=True)
class EllipticParams:
    p: complex
    q: complex
    lam: complex
    z: complex
    u: tuple
    v: tuple

    def __post_init__(self):
        if len(self.u) != len(self.v):
            raise ValueError("elliptic source functions need len(u) == len(v)")
        if any(x == 0 for x in self.u) or any(x == 0 for x in self.v):
            raise ValueError("all u_i, v_j must be nonzero")

    @property
    def n(self) -> int:
        return len(self.u)


@dataclass(frozen=True)
class TrigParams:
    q: object
    z: object
    u: tuple
    v: tuple
    lam: Optional[object] = None

    @property
    def n(self) -> int:
        return len(self.u)

    @property
    def m(self) -> int:
        return len(self.v)


@dataclass(frozen=True)
class RatParams:
    c: object
    z: object
    u: tuple
    v: tuple

    @property
    def n(self) -> int:
        return len(self.u)

    @property
    def m(self) -> int:
        return len(self.v)


def _check_cap(*sizes):
    if max(sizes, default=0) > SIZE_CAP:
        raise SizeCapError(f"subset enumeration capped at max(n, m) <= {SIZE_CAP}")


def _signed_powers(z, size):
    # (-z)^s for s = 0..size
    out = [z - z + 1]
    for _ in range(size):
        out.append(out[-1] * -z)
    return out


def _q_triangle_powers(q, size):
    # q^{s(s-1)/2} for s = 0..size
    out = [q - q + 1]
    for s in range(1, size + 1):
        out.append(out[-1] * q ** (s - 1))
    return out


def _subset_sum(m, term_weight, pair_ratio, member_factor):
    """Generic sum over K subset [0..m).

    ``term_weight(s)`` is the size-only factor, ``pair_ratio[i][j]`` the
    (i in K, j notin K) factor, ``member_factor[i]`` the per-member factor.
    """
    total = None
    for mask in range(1 << m):
        inside = [i for i in range(m) if mask >> i & 1]
        outside = [j for j in range(m) if not mask >> j & 1]
        term = term_weight(len(inside))
        for i in inside:
            row = pair_ratio[i]
            for j in outside:
                term *= row[j]
            term *= member_factor[i]
        total = term if total is None else total + term
    return total


# ---------------------------------------------------------------------------
# rational regime
# ---------------------------------------------------------------------------


def rational_F(params: RatParams):
    c, z, u, v = params.c, params.z, params.u, params.v
    n, m = params.n, params.m
    _check_cap(n, m)
    pair = [
        [(v[i] - v[j] - c) / (v[i] - v[j]) if j != i else None for j in range(m)]
        for i in range(m)
    ]
    member = [prod((v[i] - uk) / (v[i] - uk - c) for uk in u) for i in range(m)]
    zpow = _signed_powers(z, m)
    return _subset_sum(m, lambda s: zpow[s], pair, member)


def rational_G(params: RatParams):
    c, z, u, v = params.c, params.z, params.u, params.v
    n, m = params.n, params.m
    _check_cap(n, m)
    pair = [
        [(u[i] - u[j] + c) / (u[i] - u[j]) if j != i else None for j in range(n)]
        for i in range(n)
    ]
    member = [prod((u[i] - vk) / (u[i] - vk + c) for vk in v) for i in range(n)]
    zpow = _signed_powers(z, n)
    body = _subset_sum(n, lambda s: zpow[s], pair, member)
    return (1 - z) ** (m - n) * body


def rational_P(params: RatParams):
    c, z, u, v = params.c, params.z, params.u, params.v
    n, m = params.n, params.m
    _check_cap(n, m)
    pair = [
        [(v[i] - v[j] - c) / (v[i] - v[j]) if j != i else None for j in range(m)]
        for i in range(m)
    ]
    inside_row = [prod(v[i] - uk for uk in u) for i in range(m)]
    outside_row = [prod(v[j] - uk - c for uk in u) for j in range(m)]
    zpow = _signed_powers(z, m)
    total = None
    for mask in range(1 << m):
        inside = [i for i in range(m) if mask >> i & 1]
        outside = [j for j in range(m) if not mask >> j & 1]
        term = zpow[len(inside)]
        for i in inside:
            row = pair[i]
            for j in outside:
                term *= row[j]
            term *= inside_row[i]
        for j in outside:
            term *= outside_row[j]
        total = term if total is None else total + term
    return total


def rational_Q(params: RatParams):
    c, z, u, v = params.c, params.z, params.u, params.v
    n, m = params.n, params.m
    _check_cap(n, m)
    pair = [
        [(u[i] - u[j] + c) / (u[i] - u[j]) if j != i else None for j in range(n)]
        for i in range(n)
    ]
    inside_row = [prod(vk - u[i] for vk in v) for i in range(n)]
    outside_row = [prod(vk - u[j] - c for vk in v) for j in range(n)]
    zpow = _signed_powers(z, n)
    total = None
    for mask in range(1 << n):
        inside = [i for i in range(n) if mask >> i & 1]
        outside = [j for j in range(n) if not mask >> j & 1]
        term = zpow[len(inside)]
        for i in inside:
            row = pair[i]
            for j in outside:
                term *= row[j]
            term *= inside_row[i]
        for j in outside:
            term *= outside_row[j]
        total = term if total is None else total + term
    return (1 - z) ** (m - n) * total


# ---------------------------------------------------------------------------
# trigonometric regime
# ---------------------------------------------------------------------------


def trig_F(params: TrigParams):
    q, z, u, v = params.q, params.z, params.u, params.v
    n, m = params.n, params.m
    _check_cap(n, m)
    pair = [
        [(v[i] - q * v[j]) / (v[i] - v[j]) if j != i else None for j in range(m)]
        for i in range(m)
    ]
    member = [prod((v[i] - uk) / (v[i] - q * uk) for uk in u) for i in range(m)]
    zpow = _signed_powers(z, m)
    qtri = _q_triangle_powers(q, m)
    return _subset_sum(m, lambda s: zpow[s] * qtri[s], pair, member)


def trig_G(params: TrigParams):
    q, z, u, v = params.q, params.z, params.u, params.v
    n, m = params.n, params.m
    _check_cap(n, m)
    zq = q ** (m - n) * z
    pair = [
        [(q * u[i] - u[j]) / (u[i] - u[j]) if j != i else None for j in range(n)]
        for i in range(n)
    ]
    member = [prod((vk - u[i]) / (vk - q * u[i]) for vk in v) for i in range(n)]
    zpow = _signed_powers(zq, n)
    qtri = _q_triangle_powers(q, n)
    body = _subset_sum(n, lambda s: zpow[s] * qtri[s], pair, member)
    return qpoch_n(z, q, m - n) * body


def trig_P(params: TrigParams):
    q, z, u, v = params.q, params.z, params.u, params.v
    n, m = params.n, params.m
    _check_cap(n, m)
    pair = [
        [(v[i] - q * v[j]) / (v[i] - v[j]) if j != i else None for j in range(m)]
        for i in range(m)
    ]
    inside_row = [prod(v[i] - uk for uk in u) for i in range(m)]
    outside_row = [prod(v[j] - q * uk for uk in u) for j in range(m)]
    zpow = _signed_powers(z, m)
    qtri = _q_triangle_powers(q, m)
    total = None
    for mask in range(1 << m):
        inside = [i for i in range(m) if mask >> i & 1]
        outside = [j for j in range(m) if not mask >> j & 1]
        term = zpow[len(inside)] * qtri[len(inside)]
        for i in inside:
            row = pair[i]
            for j in outside:
                term *= row[j]
            term *= inside_row[i]
        for j in outside:
            term *= outside_row[j]
        total = term if total is None else total + term
    return total


def trig_Q(params: TrigParams):
    q, z, u, v = params.q, params.z, params.u, params.v
    n, m = params.n, params.m
    _check_cap(n, m)
    zq = q ** (m - n) * z
    pair = [
        [(q * u[i] - u[j]) / (u[i] - u[j]) if j != i else None for j in range(n)]
        for i in range(n)
    ]
    inside_row = [prod(vk - u[i] for vk in v) for i in range(n)]
    outside_row = [prod(vk - q * u[j] for vk in v) for j in range(n)]
    zpow = _signed_powers(zq, n)
    qtri = _q_triangle_powers(q, n)
    total = None
    for mask in range(1 << n):
        inside = [i for i in range(n) if mask >> i & 1]
        outside = [j for j in range(n) if not mask >> j & 1]
        term = zpow[len(inside)] * qtri[len(inside)]
        for i in inside:
            row = pair[i]
            for j in outside:
                term *= row[j]
            term *= inside_row[i]
        for j in outside:
            term *= outside_row[j]
        total = term if total is None else total + term
    return qpoch_n(z, q, m - n) * total


def trig_lambda_F(params: TrigParams):
    """Lambda-weighted v-side sum: each term carries (1 - q^s Lambda)."""
    if params.lam is None:
        raise ValueError("trig_lambda regime needs params.lam")
    q, z, u, v, lam = params.q, params.z, params.u, params.v, params.lam
    n, m = params.n, params.m
    _check_cap(n, m)
    pair = [
        [(v[i] - q * v[j]) / (v[i] - v[j]) if j != i else None for j in range(m)]
        for i in range(m)
    ]
    member = [prod((v[i] - uk) / (v[i] - q * uk) for uk in u) for i in range(m)]
    zpow = _signed_powers(z, m)
    qtri = _q_triangle_powers(q, m)
    lamw = [1 - q**s * lam for s in range(m + 1)]
    return _subset_sum(m, lambda s: zpow[s] * qtri[s] * lamw[s], pair, member)


def trig_lambda_G(params: TrigParams):
    """Lambda-weighted u-side sum (no q-Pochhammer prefactor)."""
    if params.lam is None:
        raise ValueError("trig_lambda regime needs params.lam")
    q, z, u, v, lam = params.q, params.z, params.u, params.v, params.lam
    n, m = params.n, params.m
    _check_cap(n, m)
    pair = [
        [(q * u[i] - u[j]) / (u[i] - u[j]) if j != i else None for j in range(n)]
        for i in range(n)
    ]
    member = [prod((vk - u[i]) / (vk - q * u[i]) for vk in v) for i in range(n)]
    zpow = _signed_powers(z, n)
    qtri = _q_triangle_powers(q, n)
    lamw = [1 - q**s * lam for s in range(n + 1)]
    return _subset_sum(n, lambda s: zpow[s] * qtri[s] * lamw[s], pair, member)


# ---------------------------------------------------------------------------
# elliptic regime
# ---------------------------------------------------------------------------


def elliptic_F(params: EllipticParams, trunc=DEFAULT_TRUNCATION):
    p, q, lam, z, u, v = params.p, params.q, params.lam, params.z, params.u, params.v
    n = params.n
    _check_cap(n)
    base = lam * prod(u) / prod(v)
    th_lam = [theta(q**s * base, p, trunc) for s in range(n + 1)]
    pair = [
        [
            theta(q * v[j] / v[i], p, trunc) / theta(v[j] / v[i], p, trunc) if j != i else None
            for j in range(n)
        ]
        for i in range(n)
    ]
    member = [
        prod(theta(uk / v[i], p, trunc) / theta(q * uk / v[i], p, trunc) for uk in u)
        for i in range(n)
    ]
    zpow = _signed_powers(z, n)
    qtri = _q_triangle_powers(q, n)
    return _subset_sum(n, lambda s: zpow[s] * qtri[s] * th_lam[s], pair, member)


def elliptic_G(params: EllipticParams, trunc=DEFAULT_TRUNCATION):
    p, q, lam, z, u, v = params.p, params.q, params.lam, params.z, params.u, params.v
    n = params.n
    _check_cap(n)
    base = lam * prod(u) / prod(v)
    th_lam = [theta(q**s * base, p, trunc) for s in range(n + 1)]
    pair = [
        [
            theta(q * u[i] / u[j], p, trunc) / theta(u[i] / u[j], p, trunc) if j != i else None
            for j in range(n)
        ]
        for i in range(n)
    ]
    member = [
        prod(theta(u[i] / vk, p, trunc) / theta(q * u[i] / vk, p, trunc) for vk in v)
        for i in range(n)
    ]
    zpow = _signed_powers(z, n)
    qtri = _q_triangle_powers(q, n)
    return _subset_sum(n, lambda s: zpow[s] * qtri[s] * th_lam[s], pair, member)


def elliptic_P(params: EllipticParams, trunc=DEFAULT_TRUNCATION):
    p, q, lam, z, u, v = params.p, params.q, params.lam, params.z, params.u, params.v
    n = params.n
    _check_cap(n)
    base = lam * prod(u) / prod(v)
    th_lam = [theta(q**s * base, p, trunc) for s in range(n + 1)]
    pair = [
        [
            theta(q * v[j] / v[i], p, trunc) / theta(v[j] / v[i], p, trunc) if j != i else None
            for j in range(n)
        ]
        for i in range(n)
    ]
    inside_row = [prod(theta(uk / v[i], p, trunc) for uk in u) for i in range(n)]
    outside_row = [prod(theta(q * uk / v[j], p, trunc) for uk in u) for j in range(n)]
    zpow = _signed_powers(z, n)
    qtri = _q_triangle_powers(q, n)
    total = None
    for mask in range(1 << n):
        inside = [i for i in range(n) if mask >> i & 1]
        outside = [j for j in range(n) if not mask >> j & 1]
        term = zpow[len(inside)] * qtri[len(inside)] * th_lam[len(inside)]
        for i in inside:
            row = pair[i]
            for j in outside:
                term *= row[j]
            term *= inside_row[i]
        for j in outside:
            term *= outside_row[j]
        total = term if total is None else total + term
    return total


def elliptic_Q(params: EllipticParams, trunc=DEFAULT_TRUNCATION):
    p, q, lam, z, u, v = params.p, params.q, params.lam, params.z, params.u, params.v
    n = params.n
    _check_cap(n)
    base = lam * prod(u) / prod(v)
    th_lam = [theta(q**s * base, p, trunc) for s in range(n + 1)]
    pair = [
        [
            theta(q * u[i] / u[j], p, trunc) / theta(u[i] / u[j], p, trunc) if j != i else None
            for j in range(n)
        ]
        for i in range(n)
    ]
    inside_row = [prod(theta(u[i] / vk, p, trunc) for vk in v) for i in range(n)]
    outside_row = [prod(theta(q * u[j] / vk, p, trunc) for vk in v) for j in range(n)]
    zpow = _signed_powers(z, n)
    qtri = _q_triangle_powers(q, n)
    total = None
    for mask in range(1 << n):
        inside = [i for i in range(n) if mask >> i & 1]
        outside = [j for j in range(n) if not mask >> j & 1]
        term = zpow[len(inside)] * qtri[len(inside)] * th_lam[len(inside)]
        for i in inside:
            row = pair[i]
            for j in outside:
                term *= row[j]
            term *= inside_row[i]
        for j in outside:
            term *= outside_row[j]
        total = term if total is None else total + term
    return total


# ---------------------------------------------------------------------------
# dispatchers
# ---------------------------------------------------------------------------

_SUBSET = {
    ("rational", "F"): rational_F,
    ("rational", "G"): rational_G,
    ("trig", "F"): trig_F,
    ("trig", "G"): trig_G,
    ("trig_lambda", "F"): trig_lambda_F,
    ("trig_lambda", "G"): trig_lambda_G,
}

_POLY = {
    ("rational", "P"): rational_P,
    ("rational", "Q"): rational_Q,
    ("trig", "P"): trig_P,
    ("trig", "Q"): trig_Q,
}


def source_subset_sum(regime: str, side: str, params, trunc=DEFAULT_TRUNCATION):
    """Literal subset-sum evaluation of a source function."""
    if regime == "elliptic":
        fn = elliptic_F if side == "F" else elliptic_G if side == "G" else None
        if fn is None:
            raise ValueError(f"unknown side {side!r}")
        return fn(params, trunc)
    try:
        return _SUBSET[regime, side](params)
    except KeyError:
        raise ValueError(f"unknown (regime, side) = ({regime!r}, {side!r})") from None


def source_polynomial_form(regime: str, side: str, params, trunc=DEFAULT_TRUNCATION):
    """Denominator-cleared polynomial version P/Q of a source function."""
    if regime == "elliptic":
        fn = elliptic_P if side == "P" else elliptic_Q if side == "Q" else None
        if fn is None:
            raise ValueError(f"unknown side {side!r}")
        return fn(params, trunc)
    try:
        return _POLY[regime, side](params)
    except KeyError:
        raise ValueError(f"unknown (regime, side) = ({regime!r}, {side!r})") from None


# ---------------------------------------------------------------------------
# difference-operator product expansion
# ---------------------------------------------------------------------------


def apply_difference_product(f, indices, shift, z, point):
    """Expand prod_{j in indices} (1 - z T_j) f at ``point``.

    T_j applies ``shift`` to coordinate j once; the expansion is
    sum_{K subset indices} (-z)^{|K|} f(point with K shifted).
    """
    indices = tuple(indices)
    point = tuple(point)
    k = len(indices)
    total = None
    for mask in range(1 << k):
        coords = list(point)
        bits = 0
        for pos in range(k):
            if mask >> pos & 1:
                j = indices[pos]
                coords[j] = shift(coords[j])
                bits += 1
        term = (-z) ** bits * f(tuple(coords))
        total = term if total is None else total + term
    return total


def source_via_difference_ops(regime: str, side: str, params, trunc=DEFAULT_TRUNCATION):
    """Source function as prefactor times a product of difference operators.

    Contract: agrees with :func:`source_subset_sum` on the same parameters
    (exactly over the rationals, to truncation accuracy over the complex
    field).
    """
    if regime == "rational":
        c, z, u, v = params.c, params.z, params.u, params.v
        n, m = params.n, params.m
        if side == "F":
            pref = prod(vi - uk for vi in v for uk in u)
            pref /= prod(v[j] - v[i] for i in range(m) for j in range(i + 1, m))

            def inner(vv):
                num = prod(vv[j] - vv[i] for i in range(m) for j in range(i + 1, m))
                return num / prod(vi - uk for vi in vv for uk in u)

            return pref * apply_difference_product(inner, range(m), lambda x: x - c, z, v)
        if side == "G":
            pref = (1 - z) ** (m - n) * prod(ui - vk for ui in u for vk in v)
            pref /= prod(u[j] - u[i] for i in range(n) for j in range(i + 1, n))

            def inner(uu):
                num = prod(uu[j] - uu[i] for i in range(n) for j in range(i + 1, n))
                return num / prod(ui - vk for ui in uu for vk in v)

            return pref * apply_difference_product(inner, range(n), lambda x: x + c, z, u)
        raise ValueError(f"unknown side {side!r}")

    if regime == "trig":
        q, z, u, v = params.q, params.z, params.u, params.v
        n, m = params.n, params.m
        if side == "F":
            pref = prod(vi - uk for vi in v for uk in u)
            pref /= prod(v[j] - v[i] for i in range(m) for j in range(i + 1, m))

            def inner(vv):
                num = prod(vv[j] - vv[i] for i in range(m) for j in range(i + 1, m))
                return num / prod(vi - uk for vi in vv for uk in u)

            zeff = z * q ** (m - n - 1)
            return pref * apply_difference_product(inner, range(m), lambda x: x / q, zeff, v)
        if side == "G":
            pref = qpoch_n(z, q, m - n) * prod(vi - uk for vi in v for uk in u)
            pref /= prod(u[j] - u[i] for i in range(n) for j in range(i + 1, n))

            def inner(uu):
                num = prod(uu[j] - uu[i] for i in range(n) for j in range(i + 1, n))
                return num / prod(vi - uk for vi in v for uk in uu)

            zeff = z * q ** (m - n)
            return pref * apply_difference_product(inner, range(n), lambda x: q * x, zeff, u)
        raise ValueError(f"unknown side {side!r}")

    if regime == "elliptic":
        p, q, lam, z, u, v = params.p, params.q, params.lam, params.z, params.u, params.v
        n = params.n
        pref = theta(lam, p, trunc)
        pref *= prod(theta(ui / vj, p, trunc) for ui in u for vj in v)
        for i in range(n):
            for j in range(i + 1, n):
                pref /= u[j] * theta(u[i] / u[j], p, trunc)
                pref /= theta(v[j] / v[i], p, trunc) / v[j]
        if side == "F":

            def inner(vv):
                return det(frobenius_matrix(u, vv, lam, p, trunc))

            return pref * apply_difference_product(inner, range(n), lambda x: x / q, z, v)
        if side == "G":

            def inner(uu):
                return det(frobenius_matrix(uu, v, lam, p, trunc))

            return pref * apply_difference_product(inner, range(n), lambda x: q * x, z, u)
        raise ValueError(f"unknown side {side!r}")

    raise ValueError(f"unknown regime {regime!r}")
