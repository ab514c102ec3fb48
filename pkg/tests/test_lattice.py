from fractions import Fraction
from itertools import combinations, product
from math import gcd

import pytest
import sympy
from hypothesis import given, strategies as st

from wkrull import lattice as lt
from wkrull.errors import NotPointed, NotPositive, UnsupportedDimension


def small_matrix(rows=st.integers(1, 3), cols=st.integers(1, 3)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(st.integers(-6, 6), min_size=rc[1], max_size=rc[1]),
                            min_size=rc[0], max_size=rc[0]))


def determinantal_divisors(m):
    """gcd of k x k minors, k = 1..rank (independent of any elimination code)."""
    M = sympy.Matrix(m)
    out = []
    for k in range(1, min(M.shape) + 1):
        g = 0
        for rs in combinations(range(M.rows), k):
            for cs in combinations(range(M.cols), k):
                g = gcd(g, int(M.extract(list(rs), list(cs)).det()))
        if g == 0:
            break
        out.append(g)
    return out


@given(small_matrix())
def test_snf_matches_determinantal_divisors(m):
    d, left, right = lt.smith_normal_form(m)
    assert lt.matmul(lt.matmul(left, m), right) == [list(r) for r in d] or \
        [tuple(r) for r in lt.matmul(lt.matmul(left, m), right)] == [tuple(r) for r in d]
    assert abs(sympy.Matrix(left).det()) == 1
    assert abs(sympy.Matrix(right).det()) == 1
    diag = lt.invariant_factors(m)
    for a, b in zip(diag, diag[1:]):
        assert b % a == 0
    dd = determinantal_divisors(m)
    prods = []
    acc = 1
    for x in diag:
        acc *= x
        prods.append(acc)
    assert prods == dd


def test_snf_small_examples():
    assert lt.invariant_factors([[2, 0], [0, 4]]) == [2, 4]
    assert lt.invariant_factors([[2, 4], [6, 8]]) == [2, 4]
    assert lt.invariant_factors([[0, 0]]) == []


@given(small_matrix(rows=st.integers(1, 4)), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_hnf_spans_same_lattice(rows, coeffs):
    basis = lt.hermite_normal_form(rows)
    assert len(basis) == lt.rank(rows)
    for r in rows:
        assert lt.lattice_coordinates(basis, r) is not None
    for b in basis:
        x = lt.integer_solve(rows, b)
        assert x is not None
        assert lt.vecmat(x, rows) == tuple(b)
    v = [0] * len(rows[0])
    for c, r in zip(coeffs, rows):
        v = [a + c * b for a, b in zip(v, r)]
    assert lt.lattice_coordinates(basis, v) is not None


def test_lattice_coordinates_rejects_outside():
    basis = lt.hermite_normal_form([(2, 0), (0, 3)])
    assert lt.lattice_coordinates(basis, (1, 0)) is None
    assert lt.lattice_coordinates(basis, (4, 6)) is not None


def test_integer_solve_agrees_with_hnf():
    rows = [(2, 1), (4, 3)]
    for x, y in product(range(-4, 5), repeat=2):
        a = lt.integer_solve(rows, (x, y))
        b = lt.lattice_coordinates(lt.hermite_normal_form(rows), (x, y))
        assert (a is None) == (b is None)


def brute_facets(gens):
    """Facet normals of a full-dimensional cone from all (k-1)-subsets of generators."""
    k = len(gens[0])
    found = set()
    for sub in combinations(gens, k - 1):
        ns = sympy.Matrix(sub).nullspace()
        if len(ns) != 1:
            continue
        v = ns[0]
        den = sympy.ilcm(*[x.q for x in v])
        v = [int(x * den) for x in v]
        for sign in (1, -1):
            w = tuple(sign * x for x in v)
            if all(lt.dot(w, g) >= 0 for g in gens):
                found.add(lt.primitive(w))
    return found


vec3 = st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(1, 4))


@given(st.lists(vec3, min_size=3, max_size=6, unique=True))
def test_cone_facets_against_brute_force(gens):
    if lt.rank(gens) < 3:
        return
    c = lt.cone_of(gens)
    assert set(c.facets) == brute_facets(gens)
    for r in c.rays:
        tight = [s for s in c.facets if lt.dot(s, r) == 0]
        assert lt.rank(tight) == 2


def test_cone_examples():
    c = lt.cone_of([(1, 0), (1, 1), (1, 2)])
    assert set(c.facets) == {(0, 1), (2, -1)}
    assert set(c.rays) == {(1, 0), (1, 2)}
    c = lt.cone_of([(1, 0), (-1, 0), (0, 1)])
    assert c.lineality_dim == 1
    with pytest.raises(UnsupportedDimension):
        lt.cone_of(lt.identity(5))


def brute_hilbert_basis(c, top):
    """Irreducible lattice points of the cone with coordinates sum <= top (2D/3D)."""
    d = len(c.rays[0])
    pts = [p for p in product(range(-top, top + 1), repeat=d)
           if any(p) and c.contains(p) and sum(abs(x) for x in p) <= top]
    s = set(pts)
    return {p for p in pts if not any(lt.vsub(p, q) in s for q in pts if q != p)}


@given(st.lists(st.tuples(st.integers(0, 4), st.integers(1, 4)), min_size=2, max_size=4, unique=True))
def test_hilbert_basis_2d_against_brute_force(gens):
    if lt.rank(gens) < 2:
        return
    c = lt.cone_of(gens)
    hb = lt.hilbert_basis(c, lt.identity(2))
    top = max(sum(abs(x) for x in h) for h in hb)
    assert {h for h in hb} == brute_hilbert_basis(c, top + 2)


def test_hilbert_basis_examples():
    c = lt.cone_of([(0, 1), (3, 1)])
    assert lt.hilbert_basis(c, lt.identity(2)) == [(0, 1), (1, 1), (2, 1), (3, 1)]
    c = lt.cone_of([(1, 0, 0), (0, 1, 0), (1, 1, 2)])
    hb = set(lt.hilbert_basis(c, lt.identity(3)))
    assert hb == brute_hilbert_basis(c, 6)
    with pytest.raises(NotPointed):
        lt.hilbert_basis(lt.cone_of([(1, 0), (-1, 0), (0, 1)]), lt.identity(2))


@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), min_size=1, max_size=4))
def test_grading_positive_and_optimal(gens):
    gens = [g for g in gens if any(g)]
    if not gens:
        return
    l = lt.positive_grading(gens)
    assert all(lt.dot(l, g) > 0 for g in gens)
    # l rescaled to min degree 1 is an optimal vertex of the LP relaxation
    best = Fraction(sum(lt.dot(l, g) for g in set(gens)), min(lt.dot(l, g) for g in gens))
    for cand in product(range(-6, 7), repeat=2):
        if all(lt.dot(cand, g) >= 1 for g in gens):
            assert sum(lt.dot(cand, g) for g in set(gens)) >= best


def test_grading_examples():
    assert lt.positive_grading([(1, 0), (0, 1)]) == (1, 1)
    assert lt.positive_grading([(2,), (3,)]) == (1,)
    with pytest.raises(NotPositive):
        lt.positive_grading([(1, 0), (-1, 0)])


def brute_membership(target, gens, top):
    for m in product(range(top + 1), repeat=len(gens)):
        v = [0] * len(target)
        for c, g in zip(m, gens):
            v = [a + c * b for a, b in zip(v, g)]
        if tuple(v) == tuple(target):
            return True
    return False


@given(st.lists(st.tuples(st.integers(0, 3), st.integers(1, 3)), min_size=1, max_size=3),
       st.tuples(st.integers(0, 8), st.integers(0, 8)))
def test_solve_membership_against_brute_force(gens, target):
    grading = lt.positive_grading(gens)
    got = lt.solve_membership(target, gens, grading)
    assert (got is not None) == brute_membership(target, gens, 8)
    if got is not None:
        v = [0, 0]
        for c, g in zip(got, gens):
            v = [a + c * b for a, b in zip(v, g)]
        assert tuple(v) == tuple(target)


def test_solve_membership_example():
    assert lt.solve_membership((7,), [(2,), (3,)], (1,)) == (2, 1)
    assert lt.solve_membership((1,), [(2,), (3,)], (1,)) is None


@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)),
                min_size=1, max_size=3))
def test_span_coordinates_round_trip(vectors):
    sp = lt.span_of(vectors, 3)
    for v in vectors:
        y = sp.to_coords(v)
        assert sp.from_coords(y) == tuple(v)
        assert all(lt.dot(e, v) == 0 for e in sp.equations)
