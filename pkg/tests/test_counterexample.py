from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from wkrull import counterexample as ce
from wkrull.errors import DepthExceeded, PreconditionViolated

P = ce.DyadicLaurentPoly.from_dict


# -- independent oracles on integer coefficient lists (ascending) -------------

def poly_divmod(num, den):
    num = [Fraction(c) for c in num]
    den = [Fraction(c) for c in den]
    while den and den[-1] == 0:
        den.pop()
    q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
    while len(num) >= len(den) and any(num):
        while num and num[-1] == 0:
            num.pop()
        if len(num) < len(den):
            break
        k = len(num) - len(den)
        c = num[-1] / den[-1]
        q[k] = c
        for i, d in enumerate(den):
            num[i + k] -= c * d
        num.pop()
    return q, num


def divides_oracle(a, b):
    _, r = poly_divmod(b, a)
    return not any(r)


def divisors(n):
    n = abs(n)
    ds = [d for d in range(1, n + 1) if n % d == 0]
    return ds + [-d for d in ds]


def interpolate(xs, ys):
    """Coefficients (ascending) of the Lagrange interpolant."""
    k = len(xs)
    out = [Fraction(0)] * k
    for i in range(k):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(k):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xs[j] * basis[t + 1]
            denom *= xs[i] - xs[j]
        for t in range(k):
            out[t] += ys[i] * basis[t] / denom
    return out


def kronecker_irreducible(coeffs):
    """Irreducibility over Q by Kronecker's factor search (small degree only)."""
    d = len(coeffs) - 1
    if d <= 0:
        return False
    if d == 1:
        return True

    def ev(x):
        return sum(c * x ** i for i, c in enumerate(coeffs))
    pts = [x for x in (0, 1, -1, 2, -2, 3, -3, 4, -4) if ev(x) != 0]
    for k in range(1, d // 2 + 1):
        xs = pts[:k + 1]
        for ys in product(*(divisors(ev(x)) for x in xs)):
            g = interpolate(xs, ys)
            while g and g[-1] == 0:
                g.pop()
            if len(g) - 1 != k:
                continue
            if divides_oracle(g, coeffs):
                return False
    return True


# -- examples ---------------------------------------------------------------

def test_to_univariate_examples():
    assert ce.to_univariate(ce.one_plus(1), 1) == ((1, 1), 0)
    assert ce.to_univariate(ce.one_plus(2), 2) == ((1, 1), 0)
    assert ce.to_univariate(P({Fraction(-1, 2): 1, Fraction(1, 2): 1}), 1) == ((1, 0, 1), -1)
    with pytest.raises(DepthExceeded):
        ce.to_univariate(ce.one_plus(3), 2)


def test_primality_examples():
    for n in range(0, 17):
        assert ce.is_prime_in_gn(ce.one_plus(n), n)
    assert ce.is_prime_in_gn(P({0: 1, 1: -1}), 0)
    for n in range(1, 8):
        assert not ce.is_prime_in_gn(ce.one_plus(n - 1, -1), n)
    assert not ce.is_prime_in_gn(P({Fraction(3, 4): 2}), 2)
    with pytest.raises(PreconditionViolated):
        ce.is_prime_in_gn(P({}), 1)


def test_divisibility_examples():
    for n in range(1, 11):
        for m in range(n):
            assert not ce.divides_in_gn(ce.one_plus(n), ce.one_plus(m), n)
    f = P({0: 3, Fraction(1, 4): -1, Fraction(1, 2): 2})
    assert ce.divides_in_gn(f, f, 2)
    assert ce.divides_in_gn(ce.one_plus(1), P({0: 1, 1: -1}), 1)


def test_coprimality():
    for n in range(2, 11):
        for m in range(1, n):
            assert ce.coprime_in_gn(ce.one_plus(n), ce.one_plus(m), n)
    assert not ce.coprime_in_gn(ce.one_plus(1), P({0: 1, 1: -1}), 1)


def test_telescoping():
    assert len(ce.telescoping_identity(1)) == 2
    factors = ce.telescoping_identity(16)
    assert len(factors) == 17
    prod = factors[-1]
    for f in reversed(factors[:-1]):
        prod = f * prod
    assert prod == P({0: 1, 1: -1})
    with pytest.raises(PreconditionViolated):
        ce.telescoping_identity(0)


def test_telescoping_factors_pairwise_coprime():
    factors = ce.telescoping_identity(3)[:-1]
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            assert ce.coprime_in_gn(factors[i], factors[j], 3)


def test_root_extension_examples():
    assert ce.root_extension_check(5, 3, 2) == 3
    assert ce.root_extension_check(7, 1, 0) == 1
    assert ce.root_extension_check(1, 6, 1) == 6


def test_suite_depth_limits():
    assert all(r.passed for r in ce.run_suite(16))
    with pytest.raises(DepthExceeded):
        ce.run_suite(17)


# -- oracle comparisons -----------------------------------------------------

dyadic = st.dictionaries(st.sampled_from([Fraction(k, 4) for k in range(0, 5)]),
                         st.integers(-3, 3), min_size=1, max_size=4).map(P)


@given(dyadic)
def test_primality_matches_kronecker(f):
    if f.is_zero():
        return
    coeffs, _ = ce.to_univariate(f, 2)
    ints = [int(c) for c in coeffs]
    assert ce.is_prime_in_gn(f, 2) == kronecker_irreducible(ints)


@given(dyadic, dyadic)
def test_divides_matches_long_division(a, b):
    if a.is_zero():
        return
    ca, _ = ce.to_univariate(a, 2)
    cb, _ = ce.to_univariate(b, 2)
    expect = True if not cb else divides_oracle(ca, cb)
    assert ce.divides_in_gn(a, b, 2) == expect


@given(dyadic, dyadic)
def test_products_divide(a, b):
    if a.is_zero() or b.is_zero():
        return
    assert ce.divides_in_gn(a, a * b, 2)
