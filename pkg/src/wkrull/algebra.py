"""Sparse monoid algebras K[S] over the rationals and the monomial-prime procedures."""

import re
from dataclasses import dataclass
from fractions import Fraction

from . import monoid as mn
from .errors import (BoundExceeded, Inconclusive, NotNormal, ParentMismatch,
                     PreconditionViolated)
from .lattice import dot, vadd, vsub


class AlgebraElement:
    """Finite sum of c*X^e with rational c != 0 and exponents in the ambient lattice.

    ``parent`` is the monoid whose algebra (or quotient-group algebra) the
    element lives in; ``None`` means the plain Laurent ring.
    """

    __slots__ = ("terms", "parent")

    def __init__(self, terms=(), parent=None):
        acc = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for e, c in items:
            e = tuple(int(x) for x in e)
            c = Fraction(c)
            acc[e] = acc.get(e, 0) + c
        self.terms = {e: c for e, c in sorted(acc.items()) if c != 0}
        self.parent = parent
        if parent is not None:
            for e in self.terms:
                if len(e) != parent.ambient_dim:
                    raise ValueError(f"exponent {list(e)} has the wrong length")

    @classmethod
    def monomial(cls, exponent, coeff=1, parent=None):
        return cls({tuple(exponent): coeff}, parent)

    @classmethod
    def one(cls, parent):
        return cls({tuple([0] * parent.ambient_dim): 1}, parent)

    def is_zero(self):
        return not self.terms

    def exponents(self):
        return list(self.terms)

    def coeff(self, e):
        return self.terms.get(tuple(e), Fraction(0))

    def _check(self, other):
        if self.parent is not other.parent:
            raise ParentMismatch("elements belong to different algebras")

    def __add__(self, other):
        self._check(other)
        acc = dict(self.terms)
        for e, c in other.terms.items():
            acc[e] = acc.get(e, 0) + c
        return AlgebraElement(acc, self.parent)

    def __neg__(self):
        return AlgebraElement({e: -c for e, c in self.terms.items()}, self.parent)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        acc = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = vadd(e1, e2)
                acc[e] = acc.get(e, 0) + c1 * c2
        return AlgebraElement(acc, self.parent)

    def shift(self, s):
        return AlgebraElement({vadd(e, s): c for e, c in self.terms.items()}, self.parent)

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.parent is other.parent and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __repr__(self):
        return f"AlgebraElement({render(self)!r})"


def add(f, g):
    return f + g


def mul(f, g):
    return f * g


_TERM = re.compile(r"^(-?\d+(?:/\d+)?)\*X\^\[(-?\d+(?:,-?\d+)*)\]$")


def render(f):
    """Text form ``c*X^[e1,e2] + c*X^[...]`` in canonical (lex) order; ``0`` for zero."""
    if not f.terms:
        return "0"
    return " + ".join(f"{c}*X^[{','.join(str(x) for x in e)}]" for e, c in f.terms.items())


def parse(text, parent=None):
    text = text.strip()
    if text == "0":
        return AlgebraElement({}, parent)
    terms = []
    for part in text.split(" + "):
        m = _TERM.match(part.strip())
        if not m:
            raise ValueError(f"cannot parse term {part!r}")
        terms.append((tuple(int(x) for x in m.group(2).split(",")), Fraction(m.group(1))))
    return AlgebraElement(terms, parent)


# ---------------------------------------------------------------------------
# monomial primes

@dataclass(frozen=True)
class MonomialPrime:
    """K[P] for a face prime P: polynomials all of whose exponents lie in P."""
    monoid: object
    prime: object

    def exponent_in_prime(self, e):
        S = self.monoid
        z = S.reduce(e)
        return S.contains(z) and not S.on_face(z, self.prime.face)

    def contains(self, f):
        return all(self.exponent_in_prime(e) for e in f.terms)


def order_key(S):
    """Grading-then-lex key on ambient exponents; compatible with addition."""
    def key(e):
        return (S.degree(S.reduce(e)), tuple(e))
    return key


def _in_algebra(S, f):
    return all(S.contains(S.reduce(e)) for e in f.terms)


def prime_product_witness(f, g, P):
    """Exponent s_u + t_v of fg outside P, with s_u, t_v the least exponents outside P.

    The coefficient there is a_u*b_v: any other pair summing to it would put
    one summand before the minimal one, hence in P, and then the sum in P.
    """
    S = P.monoid
    if f.is_zero() or g.is_zero():
        raise PreconditionViolated("f and g must be nonzero")
    if not (_in_algebra(S, f) and _in_algebra(S, g)):
        raise PreconditionViolated("f and g must lie in K[S]")
    if P.contains(f) or P.contains(g):
        raise PreconditionViolated("f or g lies in K[P]")
    key = order_key(S)
    su = min((e for e in f.terms if not P.exponent_in_prime(e)), key=key)
    tv = min((e for e in g.terms if not P.exponent_in_prime(e)), key=key)
    w = vadd(su, tv)
    prod = f * g
    expected = f.terms[su] * g.terms[tv]
    assert not P.exponent_in_prime(w)
    assert prod.coeff(w) == expected != 0
    return w


# ---------------------------------------------------------------------------
# Claim A on a box

@dataclass(frozen=True)
class ClaimAResult:
    verified: bool
    box: int
    b_exponents: tuple = ()
    counterexample: tuple = None


def claimA_bounded_check(S, P, f, bound=None):
    """Check (X^b1, ..., X^bm, f)^-1 has no monomial X^d with d outside S in the box.

    The b's are the generators of P, which already give (P, s)^-1 = S for
    every exponent s of f off P when every maximal t-ideal has height one.
    """
    wk = mn.is_weakly_krull(S, bound)
    if wk.value is not True:
        raise PreconditionViolated("S must be weakly Krull")
    if P.prime.height != 1:
        raise PreconditionViolated("P must be a height-one prime")
    if not _in_algebra(S, f):
        raise PreconditionViolated("f must lie in K[S]")
    fpart = [S.reduce(e) for e in f.terms if not P.exponent_in_prime(e)]
    if not fpart:
        raise PreconditionViolated("f lies in K[P]")
    bs = list(P.prime.ideal_generators)
    for s in fpart:
        try:
            D = mn.ideal_dual(mn.FractionalIdeal(S, bs + [s]), bound)
        except BoundExceeded as exc:
            raise Inconclusive(f"witness construction exceeded bound {exc.bound}") from exc
        if not D.is_unit_ideal():
            extra = next(g for g in D.generators if g != S.zero)
            return ClaimAResult(False, S.bound(bound), tuple(S.lift(b) for b in bs), S.lift(extra))
    box = S.bound(bound)
    gens = bs + fpart
    if S.dim == 0:
        return ClaimAResult(True, box, ())
    # every monomial of the dual satisfies d + b1 in S, so d = x - b1 with x in S
    anchor = min(gens, key=lambda y: (S.degree(y), y))
    for x in S.elements.upto(box + S.degree(anchor)):
        d = vsub(x, anchor)
        if all(S.contains(vadd(d, y)) for y in gens) and not S.contains(d):
            return ClaimAResult(False, box, tuple(S.lift(b) for b in bs), S.lift(d))
    return ClaimAResult(True, box, tuple(S.lift(b) for b in bs))


# ---------------------------------------------------------------------------
# UMT evidence and facet valuations

@dataclass(frozen=True)
class ShiftResult:
    found: bool
    shift: tuple = None
    element: AlgebraElement = None
    box: int = 0


def umt_monomial_shift_witness(S, P, f, box=None):
    """Find s with X^s f in K[S] and some exponent of X^s f outside P."""
    if f.is_zero():
        raise PreconditionViolated("f must be nonzero")
    top = S.bound(box)
    exps = [S.reduce(e) for e in f.terms]
    for t in S.elements.upto(top):
        if not S.on_face(t, P.prime.face):
            continue
        for e in exps:
            s = vsub(t, e)
            if all(S.contains(vadd(x, s)) for x in exps):
                amb = S.lift(s)
                return ShiftResult(True, amb, f.shift(amb), top)
    return ShiftResult(False, None, None, top)


def facet_valuation_extend(S, P, f):
    """Minimum over exponents of the primitive facet functional of P."""
    if not S.is_normal:
        raise NotNormal("facet valuations need a normal monoid")
    if f.is_zero():
        raise PreconditionViolated("f must be nonzero")
    if P.prime.height != 1:
        raise PreconditionViolated("P must be a height-one prime")
    sigma = S.cone.facets[P.prime.face.facets[0]]
    return min(dot(sigma, S.reduce(e)) for e in f.terms)
