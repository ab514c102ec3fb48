"""Laurent polynomials with dyadic exponents: the chain K[G_n], G_n = <1/2^n> in Q.

In K[G_n] put y = X^(1/2^n); then K[G_n] = K[y, 1/y] and everything reduces
to univariate polynomials over Q.
"""

from dataclasses import dataclass
from fractions import Fraction

import sympy

from .errors import DepthExceeded, PreconditionViolated

MAX_DEPTH = 16

_y = sympy.Symbol("y")


def _depth_of(q):
    d = q.denominator
    if d & (d - 1):
        raise ValueError(f"exponent {q} is not dyadic")
    return d.bit_length() - 1


@dataclass(frozen=True)
class DyadicLaurentPoly:
    """Finite sum c*X^q, q dyadic, stored as sorted (exponent, coefficient) pairs."""
    terms: tuple

    @classmethod
    def from_dict(cls, d):
        acc = {}
        for q, c in d.items():
            q, c = Fraction(q), Fraction(c)
            _depth_of(q)
            acc[q] = acc.get(q, 0) + c
        return cls(tuple((q, c) for q, c in sorted(acc.items()) if c != 0))

    @property
    def depth(self):
        return max((_depth_of(q) for q, _ in self.terms), default=0)

    def is_zero(self):
        return not self.terms

    def __mul__(self, other):
        acc = {}
        for q1, c1 in self.terms:
            for q2, c2 in other.terms:
                acc[q1 + q2] = acc.get(q1 + q2, 0) + c1 * c2
        return DyadicLaurentPoly.from_dict(acc)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*X^({q})" for q, c in self.terms)


def one_plus(n, sign=1):
    """1 + sign*X^(1/2^n)."""
    return DyadicLaurentPoly.from_dict({0: 1, Fraction(1, 2 ** n): sign})


def to_univariate(f, n):
    """(coefficients ascending, k) with f = y^k * sum c_i y^i and c_0 != 0."""
    if f.depth > n:
        raise DepthExceeded(f"element needs depth {f.depth} > {n}")
    if f.is_zero():
        return (), 0
    ints = [(int(q * 2 ** n), c) for q, c in f.terms]
    k = ints[0][0]
    top = ints[-1][0] - k
    coeffs = [Fraction(0)] * (top + 1)
    for e, c in ints:
        coeffs[e - k] = c
    return tuple(coeffs), k


def _poly(coeffs):
    return sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in coeffs])),
                      _y, domain=sympy.QQ)


def is_prime_in_gn(f, n):
    """Prime in K[G_n] = K[y, 1/y] iff the monomial-free part is irreducible over Q."""
    if f.is_zero():
        raise PreconditionViolated("f must be nonzero")
    coeffs, _ = to_univariate(f, n)
    if len(coeffs) == 1:
        return False
    if len(coeffs) == 2:
        return True
    _, factors = _poly(coeffs).factor_list()
    return len(factors) == 1 and factors[0][1] == 1


def _sparse_rem(coeffs, modulus):
    """Remainder of sum c_i y^i modulo a dense Poly, without densifying the dividend."""
    out = sympy.Poly(0, _y, domain=sympy.QQ)
    if modulus.degree() == 0:
        return out
    y = sympy.Poly(_y, _y, domain=sympy.QQ)
    powers = {}
    for e, c in enumerate(coeffs):
        if c == 0:
            continue
        if e not in powers:
            r, base, k = sympy.Poly(1, _y, domain=sympy.QQ), y.rem(modulus), e
            while k:
                if k & 1:
                    r = (r * base).rem(modulus)
                base = (base * base).rem(modulus)
                k >>= 1
            powers[e] = r
        out += powers[e] * sympy.Rational(c.numerator, c.denominator)
    return out.rem(modulus)


def divides_in_gn(a, b, n):
    """a | b in K[G_n]: the monomial-free image of a divides that of b in Q[y]."""
    if a.is_zero():
        raise PreconditionViolated("divisor must be nonzero")
    ca, _ = to_univariate(a, n)
    cb, _ = to_univariate(b, n)
    if not cb:
        return True
    if len(ca) > len(cb):
        return False
    return _sparse_rem(cb, _poly(ca)).is_zero


def coprime_in_gn(a, b, n):
    """The images share no non-unit factor, i.e. their gcd in Q[y] is constant."""
    ca, _ = to_univariate(a, n)
    cb, _ = to_univariate(b, n)
    if len(ca) > len(cb):
        ca, cb = cb, ca
    small = _poly(ca)
    if small.degree() == 0:
        return True
    return small.gcd(_sparse_rem(cb, small)).degree() == 0


def telescoping_identity(n):
    """Factors (1+X^(1/2)), ..., (1+X^(1/2^n)), (1-X^(1/2^n)) whose product is 1 - X."""
    if n < 1:
        raise PreconditionViolated("n must be at least 1")
    factors = [one_plus(i) for i in range(1, n + 1)] + [one_plus(n, -1)]
    prod = factors[-1]
    for fac in reversed(factors[:-1]):
        prod = fac * prod
    target = DyadicLaurentPoly.from_dict({0: 1, 1: -1})
    if prod != target:
        raise AssertionError(f"telescoping product at depth {n} is {prod}")
    return factors


def root_extension_check(numerator, denominator, n):
    """Multiplier b with b*(a/b) = a in Z, and a = (2^n a)(1/2^n) lies in G_n."""
    if denominator < 1:
        raise PreconditionViolated("denominator must be positive")
    b = denominator
    val = b * Fraction(numerator, denominator)
    assert val.denominator == 1 and (val * 2 ** n).denominator == 1
    return b


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    detail: str


def run_suite(depth):
    """The five checks behind the dyadic counterexample, at the given depth."""
    if not 1 <= depth <= MAX_DEPTH:
        raise DepthExceeded(f"depth must be in 1..{MAX_DEPTH}")
    out = []
    bad = []
    for n in range(1, depth + 1):
        try:
            telescoping_identity(n)
        except AssertionError:
            bad.append(n)
    out.append(SuiteResult("telescoping", not bad, f"1 - X factored exactly for n <= {depth}"))
    bad = [n for n in range(0, depth + 1) if not is_prime_in_gn(one_plus(n), n)]
    out.append(SuiteResult("primality", not bad, f"1 + X^(1/2^n) prime in K[G_n] for n <= {depth}"))
    bad = [(m, n) for n in range(1, depth + 1) for m in range(n)
           if divides_in_gn(one_plus(n), one_plus(m), n)]
    out.append(SuiteResult("non_divisibility", not bad,
                           f"1 + X^(1/2^n) does not divide 1 + X^(1/2^m), 0 <= m < n <= {depth}"))
    bad = [(m, n) for n in range(2, depth + 1) for m in range(1, n)
           if not coprime_in_gn(one_plus(n), one_plus(m), n)]
    out.append(SuiteResult("coprimality", not bad, f"pairwise coprime for 1 <= m < n <= {depth}"))
    ok = all(root_extension_check(a, b, depth) == b for a in range(-3, 4) for b in range(1, 7))
    out.append(SuiteResult("root_extension", ok, "b*(a/b) lies in G_n for a/b in Q"))
    return out
