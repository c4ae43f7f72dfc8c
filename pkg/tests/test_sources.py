"""Source functions: subset sums, polynomial versions, difference operators."""

import cmath
import math
import random
from fractions import Fraction

import pytest

from srcid.qseries import Truncation, qpoch_n
from srcid.sources import (
    EllipticParams,
    RatParams,
    SizeCapError,
    TrigParams,
    apply_difference_product,
    elliptic_F,
    elliptic_G,
    elliptic_P,
    elliptic_Q,
    rational_F,
    rational_G,
    rational_P,
    rational_Q,
    source_polynomial_form,
    source_subset_sum,
    source_via_difference_ops,
    trig_F,
    trig_G,
    trig_P,
    trig_Q,
    trig_lambda_F,
    trig_lambda_G,
)

TRUNC = Truncation()


def rand_fraction(rng, nonzero=True):
    while True:
        x = Fraction(rng.randint(-9, 9), rng.randint(1, 6))
        if not nonzero or x != 0:
            return x


def rand_complex(rng, lo=0.4, hi=2.0):
    return rng.uniform(lo, hi) * cmath.exp(1j * rng.uniform(0, 2 * math.pi))


def sample_rational(rng, n, m):
    while True:
        c = rand_fraction(rng)
        z = rand_fraction(rng)
        u = tuple(rand_fraction(rng) for _ in range(n))
        v = tuple(rand_fraction(rng) for _ in range(m))
        dens = [1 - z]
        dens += [a - b for i, a in enumerate(u) for b in u[i + 1 :]]
        dens += [a - b for i, a in enumerate(v) for b in v[i + 1 :]]
        dens += [vi - uk for vi in v for uk in u]
        dens += [vi - uk - c for vi in v for uk in u]
        if all(d != 0 for d in dens):
            return RatParams(c=c, z=z, u=u, v=v)


def sample_trig(rng, n, m, with_lam=False):
    while True:
        q = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
        if q == 0 or abs(q) == 1:
            continue
        z = rand_fraction(rng)
        u = tuple(rand_fraction(rng) for _ in range(n))
        v = tuple(rand_fraction(rng) for _ in range(m))
        dens = []
        dens += [a - b for i, a in enumerate(u) for b in u[i + 1 :]]
        dens += [a - b for i, a in enumerate(v) for b in v[i + 1 :]]
        dens += [vi - uk for vi in v for uk in u]
        dens += [vi - q * uk for vi in v for uk in u]
        dens += [1 - q ** (-j) * z for j in range(1, max(0, n - m) + 1)]
        if all(d != 0 for d in dens):
            lam = rand_fraction(rng) if with_lam else None
            return TrigParams(q=q, z=z, u=u, v=v, lam=lam)


def sample_elliptic(rng, n):
    p = rng.uniform(0.1, 0.4) * cmath.exp(1j * rng.uniform(0, 2 * math.pi))
    return EllipticParams(
        p=p,
        q=rand_complex(rng, 0.5, 1.7),
        lam=rand_complex(rng),
        z=rand_complex(rng),
        u=tuple(rand_complex(rng) for _ in range(n)),
        v=tuple(rand_complex(rng) for _ in range(n)),
    )


# ---------------------------------------------------------------------------
# stated examples
# ---------------------------------------------------------------------------


def test_trig_F_at_z_zero_is_one():
    rng = random.Random(2)
    params = sample_trig(rng, 3, 2)
    params = TrigParams(q=params.q, z=Fraction(0), u=params.u, v=params.v)
    assert trig_F(params) == 1


def test_rational_two_term_example():
    params = RatParams(c=Fraction(1), z=Fraction(1), u=(Fraction(0),), v=(Fraction(2),))
    assert rational_F(params) == -1
    assert rational_G(params) == -1


def test_rational_P_single_pair_is_minus_c():
    rng = random.Random(3)
    for _ in range(5):
        u1, v1, c = rand_fraction(rng), rand_fraction(rng), rand_fraction(rng)
        params = RatParams(c=c, z=Fraction(1), u=(u1,), v=(v1,))
        assert rational_P(params) == -c


def test_trig_P_vanishing_pair():
    rng = random.Random(5)
    params = sample_trig(rng, 2, 2)
    q, z, u = params.q, params.z, params.u
    v = (u[0], q * u[0])
    sub = TrigParams(q=q, z=z, u=u, v=v)
    assert trig_P(sub) == 0
    assert trig_Q(sub) == 0


def test_empty_conventions():
    rat = RatParams(c=Fraction(2), z=Fraction(3), u=(), v=())
    assert rational_F(rat) == 1
    assert rational_G(rat) == 1
    tri = TrigParams(q=Fraction(2), z=Fraction(3), u=(), v=())
    assert trig_F(tri) == 1
    assert trig_G(tri) == 1


def test_size_cap():
    u = tuple(Fraction(k + 1) for k in range(13))
    with pytest.raises(SizeCapError):
        rational_F(RatParams(c=Fraction(1), z=Fraction(2), u=u, v=u))


# ---------------------------------------------------------------------------
# the source identities
# ---------------------------------------------------------------------------


def test_rational_identity_exact():
    rng = random.Random(7)
    for _ in range(30):
        n, m = rng.randint(0, 5), rng.randint(0, 5)
        params = sample_rational(rng, n, m)
        assert rational_F(params) == rational_G(params)


def test_trig_identity_exact():
    rng = random.Random(11)
    for _ in range(30):
        n, m = rng.randint(0, 5), rng.randint(0, 5)
        params = sample_trig(rng, n, m)
        assert trig_F(params) == trig_G(params)


def test_elliptic_identity_numeric():
    rng = random.Random(13)
    for _ in range(8):
        n = rng.randint(1, 4)
        params = sample_elliptic(rng, n)
        f = elliptic_F(params, TRUNC)
        g = elliptic_G(params, TRUNC)
        assert abs(f - g) <= 1e-8 * max(1.0, abs(f), abs(g))


# ---------------------------------------------------------------------------
# polynomial versions
# ---------------------------------------------------------------------------


def test_polynomial_clearing_relation_rational():
    rng = random.Random(17)
    params = sample_rational(rng, 3, 2)
    clear = 1
    for vi in params.v:
        for uk in params.u:
            clear *= vi - uk - params.c
    assert rational_P(params) == clear * rational_F(params)
    assert rational_Q(params) == clear * rational_G(params)


def test_polynomial_clearing_relation_trig():
    rng = random.Random(19)
    params = sample_trig(rng, 2, 3)
    clear = 1
    for vi in params.v:
        for uk in params.u:
            clear *= vi - params.q * uk
    assert trig_P(params) == clear * trig_F(params)
    assert trig_Q(params) == clear * trig_G(params)


def test_polynomial_clearing_relation_elliptic():
    from srcid.qseries import theta

    rng = random.Random(23)
    params = sample_elliptic(rng, 2)
    clear = 1
    for vi in params.v:
        for uk in params.u:
            clear *= theta(params.q * uk / vi, params.p, TRUNC)
    lhs = elliptic_P(params, TRUNC)
    rhs = clear * elliptic_F(params, TRUNC)
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(rhs))
    lhs_q = elliptic_Q(params, TRUNC)
    rhs_q = clear * elliptic_G(params, TRUNC)
    assert abs(lhs_q - rhs_q) <= 1e-9 * max(1.0, abs(rhs_q))


def test_polynomials_symmetric_in_v():
    rng = random.Random(29)
    params = sample_rational(rng, 3, 3)
    base_p = rational_P(params)
    base_q = rational_Q(params)
    perm_v = list(params.v)
    for _ in range(10):
        rng.shuffle(perm_v)
        shuffled = RatParams(c=params.c, z=params.z, u=params.u, v=tuple(perm_v))
        assert rational_P(shuffled) == base_p
        assert rational_Q(shuffled) == base_q
    trig = sample_trig(rng, 3, 3)
    base_tp = trig_P(trig)
    base_tq = trig_Q(trig)
    perm_v = list(trig.v)
    for _ in range(10):
        rng.shuffle(perm_v)
        shuffled = TrigParams(q=trig.q, z=trig.z, u=trig.u, v=tuple(perm_v))
        assert trig_P(shuffled) == base_tp
        assert trig_Q(shuffled) == base_tq


def test_rational_P_degree_bound_in_v1():
    # (n+1)-st forward differences of a degree <= n polynomial vanish
    rng = random.Random(31)
    n, m = 4, 3
    params = sample_rational(rng, n, m)
    samples = []
    for j in range(2 * (n + 1)):
        shifted = None
        while shifted is None:
            v1 = params.v[0] + j + 1
            v = (v1,) + params.v[1:]
            if all(v1 != x for x in params.v[1:]):
                shifted = RatParams(c=params.c, z=params.z, u=params.u, v=v)
        samples.append(rational_P(shifted))
    diffs = samples
    for _ in range(n + 1):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    assert all(d == 0 for d in diffs)


def test_swap_reduction_maps_small_side_identity_to_large():
    # substitution v -> 1/u, u -> 1/v, z -> q^{n-m} z turns the n < m identity
    # into the n > m one; check the resulting display directly for m > n
    rng = random.Random(37)
    for _ in range(20):
        n = rng.randint(0, 3)
        m = rng.randint(n + 1, 5)
        params = sample_trig(rng, m, n)  # m "u" variables, n "v" variables
        q, z, u, v = params.q, params.z, params.u, params.v
        if any(1 - q ** (-j) * z == 0 for j in range(1, m - n + 1)):
            continue
        lhs = 0
        for mask in range(1 << m):
            inside = [i for i in range(m) if mask >> i & 1]
            s = len(inside)
            term = (-(q ** (n - m)) * z) ** s * q ** (s * (s - 1) // 2)
            for i in inside:
                for j in range(m):
                    if not mask >> j & 1:
                        term *= (q * u[i] - u[j]) / (u[i] - u[j])
                for vk in v:
                    term *= (vk - u[i]) / (vk - q * u[i])
            lhs += term
        rhs = 0
        for mask in range(1 << n):
            inside = [i for i in range(n) if mask >> i & 1]
            s = len(inside)
            term = (-z) ** s * q ** (s * (s - 1) // 2)
            for i in inside:
                for j in range(n):
                    if not mask >> j & 1:
                        term *= (v[i] - q * v[j]) / (v[i] - v[j])
                for uk in u:
                    term *= (v[i] - uk) / (v[i] - q * uk)
            rhs += term
        for j in range(1, m - n + 1):
            rhs *= 1 - q ** (-j) * z
        assert lhs == rhs


# ---------------------------------------------------------------------------
# difference-operator forms
# ---------------------------------------------------------------------------


def test_apply_difference_product_trivial():
    f = lambda pt: pt[0] * pt[1]
    point = (Fraction(2), Fraction(5))
    assert apply_difference_product(f, (), lambda x: x + 1, Fraction(3), point) == 10
    assert apply_difference_product(f, (0, 1), lambda x: x + 1, Fraction(0), point) == 10


def test_difference_ops_match_subset_sums_exact():
    rng = random.Random(41)
    for regime in ("rational", "trig"):
        for side in ("F", "G"):
            for _ in range(4):
                n, m = rng.randint(1, 4), rng.randint(1, 4)
                params = (
                    sample_rational(rng, n, m)
                    if regime == "rational"
                    else sample_trig(rng, n, m)
                )
                lhs = source_via_difference_ops(regime, side, params)
                rhs = source_subset_sum(regime, side, params)
                assert lhs == rhs


def test_difference_ops_match_subset_sums_elliptic():
    rng = random.Random(43)
    for side in ("F", "G"):
        params = sample_elliptic(rng, 3)
        lhs = source_via_difference_ops("elliptic", side, params, TRUNC)
        rhs = source_subset_sum("elliptic", side, params, TRUNC)
        assert abs(lhs - rhs) <= 1e-8 * max(1.0, abs(rhs))


def test_rational_difference_example_from_inverse_shift():
    # prod_{i<j}(v_j - v_i) / prod (v_i - u_k) expanded with inverse shifts
    rng = random.Random(47)
    params = sample_rational(rng, 2, 3)
    lhs = source_via_difference_ops("rational", "F", params)
    assert lhs == rational_F(params)


# ---------------------------------------------------------------------------
# the Lambda-weighted family
# ---------------------------------------------------------------------------


def test_lambda_weighted_binomial_expansion():
    from srcid.qseries import q_binomial

    rng = random.Random(53)
    for _ in range(10):
        n = rng.randint(1, 5)
        m = rng.randint(0, n)
        params = sample_trig(rng, n, m, with_lam=True)
        q, z, lam = params.q, params.z, params.lam
        lhs = 0
        for ell in range(n - m + 1):
            shifted = TrigParams(
                q=q, z=q ** (n - m) * z, u=params.u, v=params.v, lam=q**ell * lam
            )
            lhs += (
                (-z) ** ell
                * q ** (ell * (ell - 1) // 2)
                * q_binomial(n - m, ell, q)
                * trig_lambda_F(shifted)
            )
        assert lhs == trig_lambda_G(params)


def test_lambda_zero_reduces_to_plain_identity():
    rng = random.Random(59)
    for _ in range(10):
        n = rng.randint(1, 5)
        m = rng.randint(0, n)
        params = sample_trig(rng, n, m)
        q, z = params.q, params.z
        weighted = TrigParams(
            q=q, z=q ** (n - m) * z, u=params.u, v=params.v, lam=Fraction(0)
        )
        lhs = trig_lambda_F(weighted)
        for j in range(1, n - m + 1):
            lhs *= 1 - q ** (j - 1) * z
        rhs = trig_lambda_G(
            TrigParams(q=q, z=z, u=params.u, v=params.v, lam=Fraction(0))
        )
        assert lhs == rhs


def test_trig_G_prefactor_uses_piecewise_pochhammer():
    rng = random.Random(61)
    params = sample_trig(rng, 4, 1)  # n > m exercises the negative index
    body = trig_G(params) / qpoch_n(params.z, params.q, params.m - params.n)
    assert body * qpoch_n(params.z, params.q, params.m - params.n) == trig_G(params)


def test_dispatchers():
    rng = random.Random(67)
    params = sample_rational(rng, 2, 2)
    assert source_subset_sum("rational", "F", params) == rational_F(params)
    assert source_polynomial_form("rational", "Q", params) == rational_Q(params)
    with pytest.raises(ValueError):
        source_subset_sum("rational", "X", params)
    with pytest.raises(ValueError):
        source_subset_sum("nope", "F", params)
