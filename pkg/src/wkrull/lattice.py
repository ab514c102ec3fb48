"""Exact integer linear algebra and small-dimensional cone combinatorics.

Everything here works with plain tuples of Python ints (arbitrary precision)
and ``fractions.Fraction`` where division is unavoidable. Matrices are lists
of row tuples.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import gcd

from .errors import NotPointed, NotPositive, UnsupportedDimension

MAX_DIM = 4


# ---------------------------------------------------------------------------
# small helpers

def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, u):
    return tuple(c * a for a in u)


def is_zero(u):
    return not any(u)


def primitive(v):
    """Smallest positive integer multiple of a rational vector with coprime entries."""
    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def identity(n):
    return [tuple(int(i == j) for j in range(n)) for i in range(n)]


def transpose(m):
    return [tuple(col) for col in zip(*m)]


def matmul(a, b):
    bt = transpose(b)
    return [tuple(dot(row, col) for col in bt) for row in a]


def vecmat(v, m):
    """Row vector times matrix."""
    if not m:
        return ()
    return tuple(sum(v[i] * m[i][j] for i in range(len(m))) for j in range(len(m[0])))


def rank(rows):
    """Rank over the rationals."""
    rows = [[Fraction(x) for x in r] for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def inverse(m):
    """Inverse of a square matrix over the rationals (rows of Fractions)."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [tuple(row[n:]) for row in a]


def inverse_unimodular(m):
    inv = inverse(m)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append(tuple(int(x) for x in row))
    return out


def determinant(m):
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return int(det)


def solve_rational(rows, target):
    """Some rational x with x·rows = target, or None. rows must be independent."""
    k = len(rows)
    if k == 0:
        return () if is_zero(target) else None
    d = len(target)
    # augmented system rows^T x = target
    a = [[Fraction(rows[i][j]) for i in range(k)] + [Fraction(target[j])] for j in range(d)]
    r = 0
    pivots = []
    for c in range(k):
        piv = next((i for i in range(r, d) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(d):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    if any(a[i][k] != 0 for i in range(r, d)):
        return None
    x = [Fraction(0)] * k
    for i, c in enumerate(pivots):
        x[c] = a[i][k]
    return tuple(x)


# ---------------------------------------------------------------------------
# normal forms

def smith_normal_form(m):
    """Return ``(diagonal, left, right)`` with ``left * m * right == diagonal``.

    The diagonal entries are nonnegative and each divides the next; ``left``
    and ``right`` are unimodular.
    """
    if not m or not m[0]:
        raise ValueError("smith_normal_form needs a nonempty matrix")
    a = [list(r) for r in m]
    nr, nc = len(a), len(a[0])
    if any(len(r) != nc for r in a):
        raise ValueError("matrix is not rectangular")
    left = [list(r) for r in identity(nr)]
    right = [list(r) for r in identity(nc)]

    def row_add(dst, src, q):
        # row dst += q * row src (on a and left)
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        left[dst] = [x + q * y for x, y in zip(left[dst], left[src])]

    def col_add(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in right:
            row[dst] += q * row[src]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    for t in range(min(nr, nc)):
        while True:
            best = None
            for i in range(t, nr):
                for j in range(t, nc):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nr):
                q = a[i][t] // p
                if q:
                    row_add(i, t, -q)
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, nc):
                q = a[t][j] // p
                if q:
                    col_add(j, t, -q)
                if a[t][j]:
                    dirty = True
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                        if a[i][j] % p), None)
            if bad is None:
                break
            row_add(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]
    return ([tuple(r) for r in a], [tuple(r) for r in left], [tuple(r) for r in right])


def invariant_factors(m):
    d, _, _ = smith_normal_form(m)
    return [d[i][i] for i in range(min(len(d), len(d[0]))) if d[i][i] != 0]


def hermite_normal_form(rows):
    """Row-style Hermite normal form; returns the nonzero rows (a lattice basis)."""
    a = [list(r) for r in rows if any(r)]
    if not a:
        return []
    nc = len(a[0])
    r = 0
    for c in range(nc):
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[i0] = a[i0], a[r]
            if len(nz) == 1:
                break
            for i in range(r + 1, len(a)):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        if r < len(a) and a[r][c]:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
            r += 1
            if r == len(a):
                break
    return [tuple(row) for row in a[:r]]


def lattice_coordinates(basis, x):
    """Integer coordinates of x in a Hermite basis, or None if x is not in the lattice."""
    x = list(x)
    coeffs = []
    for row in basis:
        p = next(j for j, v in enumerate(row) if v)
        if any(x[:p]):
            return None
        if x[p] % row[p]:
            return None
        q = x[p] // row[p]
        coeffs.append(q)
        x = [a - q * b for a, b in zip(x, row)]
    if any(x):
        return None
    return tuple(coeffs)


def integer_solve(rows, target):
    """Integer x with sum x_i * rows[i] == target, or None."""
    if not rows:
        return () if is_zero(target) else None
    d, u, v = smith_normal_form(rows)
    w = vecmat(target, v)
    z = [0] * len(rows)
    n = min(len(d), len(d[0]))
    for j, wj in enumerate(w):
        dj = d[j][j] if j < n else 0
        if dj == 0:
            if wj:
                return None
        else:
            if wj % dj:
                return None
            z[j] = wj // dj
    return vecmat(z, u)


@dataclass(frozen=True)
class Span:
    """Saturated integer coordinates on the linear span of a set of vectors.

    ``to_coords(x) = x * coords`` (d -> k) and ``from_coords(y) = y * lift``
    (k -> d) are mutually inverse on span ∩ Z^d; ``equations`` are integer
    functionals cutting out the span.
    """
    ambient_dim: int
    rank: int
    coords: tuple
    lift: tuple
    equations: tuple

    def to_coords(self, x):
        return vecmat(x, self.coords)

    def from_coords(self, y):
        if not self.rank:
            return tuple([0] * self.ambient_dim)
        return vecmat(y, self.lift)


def span_of(vectors, ambient_dim):
    vectors = [tuple(v) for v in vectors if any(v)]
    r = rank(vectors)
    if r == ambient_dim:
        eye = tuple(identity(ambient_dim))
        return Span(ambient_dim, r, eye, eye, ())
    if r == 0:
        return Span(ambient_dim, 0, tuple(() for _ in range(ambient_dim)), (),
                    tuple(identity(ambient_dim)))
    _, _, right = smith_normal_form(vectors)
    winv = inverse_unimodular(right)
    coords = tuple(tuple(row[:r]) for row in right)
    lift = tuple(winv[:r])
    equations = tuple(tuple(right[i][j] for i in range(ambient_dim)) for j in range(r, ambient_dim))
    return Span(ambient_dim, r, coords, lift, equations)


# ---------------------------------------------------------------------------
# cones

@dataclass(frozen=True)
class Cone:
    rays: tuple
    facets: tuple
    equations: tuple = ()
    dim: int = 0
    lineality_dim: int = 0
    span: Span = field(default=None, repr=False, compare=False)

    @property
    def pointed(self):
        return self.lineality_dim == 0

    def contains(self, x):
        return (all(dot(s, x) >= 0 for s in self.facets)
                and all(dot(e, x) == 0 for e in self.equations))


@dataclass(frozen=True)
class Face:
    facets: tuple
    support: tuple
    dim: int


def _independent_rows(rows):
    chosen = []
    for i, r in enumerate(rows):
        if rank([rows[j] for j in chosen] + [r]) > len(chosen):
            chosen.append(i)
    return chosen


def extreme_rays_dd(ineqs, k):
    """Extreme rays of {s in R^k : a·s >= 0 for a in ineqs}, by double description.

    The inequality rows must have rank k (so the cone is pointed).
    """
    ineqs = [tuple(a) for a in ineqs]
    idx = _independent_rows(ineqs)
    if len(idx) != k:
        raise ValueError("inequalities do not have full rank")
    inv = inverse([ineqs[i] for i in idx])
    rays = [primitive([inv[r][c] for r in range(k)]) for c in range(k)]
    processed = list(idx)
    for i in range(len(ineqs)):
        if i in idx:
            continue
        a = ineqs[i]
        vals = [dot(a, r) for r in rays]
        plus = [r for r, v in zip(rays, vals) if v > 0]
        zero = [r for r, v in zip(rays, vals) if v == 0]
        minus = [r for r, v in zip(rays, vals) if v < 0]
        new = plus + zero
        for p in plus:
            ap = dot(a, p)
            for n in minus:
                an = dot(a, n)
                tight = [ineqs[j] for j in processed if dot(ineqs[j], p) == 0 and dot(ineqs[j], n) == 0]
                if rank(tight) == k - 2:
                    new.append(primitive(vsub(vscale(ap, n), vscale(an, p))))
        rays = sorted(set(new))
        processed.append(i)
    return sorted(set(rays))


def _cone_in_coords(coord_gens, k):
    """Facets (primitive inner normals) of the full-dimensional cone spanned by coord_gens."""
    if k == 0:
        return []
    return extreme_rays_dd(coord_gens, k)


def cone_of(gens):
    """The cone generated by ``gens``: facets, extreme rays, lineality."""
    gens = [tuple(g) for g in gens]
    if not gens:
        raise ValueError("cone_of needs at least one generator")
    d = len(gens[0])
    nonzero = [g for g in gens if any(g)]
    sp = span_of(nonzero, d)
    k = sp.rank
    if k > MAX_DIM:
        raise UnsupportedDimension(f"cone of dimension {k} exceeds supported dimension {MAX_DIM}")
    cg = [sp.to_coords(g) for g in nonzero]
    facets_k = _cone_in_coords(cg, k)
    facets = sorted(primitive(vecmat(s, transpose(sp.coords))) for s in facets_k)
    lin = k - rank(facets_k)
    rays = set()
    target = k - lin - 1
    for g, c in zip(nonzero, cg):
        tight = [s for s in facets_k if dot(s, c) == 0]
        if len(tight) == len(facets_k) and lin > 0:
            continue  # in the lineality space
        if rank(tight) == target:
            rays.add(primitive(g))
    return Cone(tuple(sorted(rays)), tuple(facets), tuple(sp.equations), k, lin, sp)


def face_lattice(c, gens):
    """All faces of ``c = cone_of(gens)``, largest first."""
    gens = [tuple(g) for g in gens]
    facets = c.facets
    nf = len(facets)
    zero_on = [frozenset(i for i, g in enumerate(gens) if dot(s, g) == 0) for s in facets]
    all_gens = frozenset(range(len(gens)))

    def support_of(fset):
        sup = all_gens
        for i in fset:
            sup = sup & zero_on[i]
        return sup

    def closure(sup):
        return frozenset(i for i in range(nf) if sup <= zero_on[i])

    start = closure(all_gens)
    seen = {start: support_of(start)}
    todo = [start]
    while todo:
        fset = todo.pop()
        sup = seen[fset]
        for i in range(nf):
            if i in fset:
                continue
            new = closure(sup & zero_on[i])
            if new not in seen:
                seen[new] = support_of(new)
                todo.append(new)
    faces = []
    for fset, sup in seen.items():
        dim = rank([gens[j] for j in sup])
        faces.append(Face(tuple(sorted(fset)), tuple(sorted(sup)), dim))
    faces.sort(key=lambda f: (-f.dim, f.facets))
    return faces


# ---------------------------------------------------------------------------
# gradings

def positive_grading(gens):
    """An integral primitive functional that is strictly positive on every generator.

    Chosen as a vertex of ``{l : l·g >= 1 for all g}`` minimising the total
    degree of the generators (exact vertex enumeration), ties broken
    lexicographically.
    """
    gens = [tuple(g) for g in gens if any(g)]
    if not gens:
        raise ValueError("positive_grading needs a nonzero generator")
    gens = sorted(set(gens))
    d = len(gens[0])
    sp = span_of(gens, d)
    k = sp.rank
    cg = [sp.to_coords(g) for g in gens]
    facets_k = _cone_in_coords(cg, k)
    if k - rank(facets_k) > 0:
        raise NotPositive("generators span a cone containing a line")
    best = None
    total = tuple(sum(c[j] for c in cg) for j in range(k))
    for sub in combinations(range(len(cg)), k):
        m = [cg[i] for i in sub]
        if determinant(m) == 0:
            continue
        inv = inverse(m)
        lam = tuple(sum(inv[r][c] for c in range(k)) for r in range(k))
        if any(dot(c, lam) < 1 for c in cg):
            continue
        prim = primitive(lam)
        key = (dot(total, lam), prim)
        if best is None or key < best:
            best = key
    lam = best[1]
    return primitive(vecmat(lam, transpose(sp.coords)))


# ---------------------------------------------------------------------------
# Hilbert bases

def _pulling_triangulation(rays, facets):
    """Simplicial cones (tuples of ray indices) triangulating a pointed full cone."""
    k = len(rays[0])
    cone = Cone(tuple(rays), tuple(facets), (), k, 0, None)
    faces = face_lattice(cone, rays)
    by_dim = {}
    for f in faces:
        by_dim.setdefault(f.dim, []).append(f)
    memo = {}

    def tri(face):
        key = face.support
        if key in memo:
            return memo[key]
        if face.dim == 1:
            out = [(face.support[0],)]
        else:
            r = min(face.support)
            sup = set(face.support)
            out = []
            for h in by_dim.get(face.dim - 1, []):
                if r in h.support or not set(h.support) < sup:
                    continue
                for tau in tri(h):
                    out.append(tau + (r,))
        memo[key] = out
        return out

    top = by_dim[k][0]
    return [tuple(sorted(s)) for s in tri(top)]


def parallelepiped_points(simplex):
    """Lattice points of the half-open parallelepiped spanned by ``simplex`` (square, nonsingular)."""
    m = [tuple(r) for r in simplex]
    d, _, right = smith_normal_form(m)
    winv = inverse_unimodular(right)
    minv = inverse(m)
    k = len(m)
    pts = []
    for t in product(*(range(d[i][i]) for i in range(k))):
        x = vecmat(t, winv)
        lam = vecmat(x, minv)
        frac = [l - (l.numerator // l.denominator) for l in lam]
        p = vecmat(frac, m)
        pts.append(tuple(int(v) for v in p))
    return pts


def _hilbert_basis_full(rays, facets):
    k = len(rays[0])
    grading = tuple(sum(s[j] for s in facets) for j in range(k))
    cands = set(rays)
    for simplex in _pulling_triangulation(rays, facets):
        for p in parallelepiped_points([rays[i] for i in simplex]):
            if any(p):
                cands.add(p)
    ordered = sorted(cands, key=lambda x: (dot(grading, x), x))
    basis = []
    for x in ordered:
        reducible = False
        for h in basis:
            diff = vsub(x, h)
            if all(dot(s, diff) >= 0 for s in facets):
                reducible = True
                break
        if not reducible:
            basis.append(x)
    return basis


def hilbert_basis(c, lattice_basis):
    """Minimal generating set of ``c ∩ L`` where L is spanned by ``lattice_basis``.

    The cone must be pointed and lie in the rational span of L.
    """
    if not c.pointed:
        raise NotPointed("Hilbert basis requested for a cone with lineality")
    if not c.rays:
        return []
    b = hermite_normal_form(lattice_basis)
    m = len(b)
    ray_l = []
    for r in c.rays:
        y = solve_rational(b, r)
        if y is None:
            raise ValueError(f"ray {r} is outside the span of the lattice")
        ray_l.append(primitive(y))
    sp = span_of(ray_l, m)
    k = sp.rank
    ray_k = [primitive(sp.to_coords(y)) for y in ray_l]
    facets_k = _cone_in_coords(ray_k, k)
    hb_k = _hilbert_basis_full(ray_k, facets_k)
    out = [vecmat(sp.from_coords(h), b) for h in hb_k]
    return sorted(out)


# ---------------------------------------------------------------------------
# membership by bounded knapsack

def solve_membership(target, gens, grading):
    """Lexicographically smallest multiplicities ``m`` with ``sum m_i g_i == target``.

    Returns ``None`` when no representation exists; the search is exhaustive
    because the grading bounds every multiplicity.
    """
    target = tuple(target)
    gens = [tuple(g) for g in gens]
    degs = [dot(grading, g) for g in gens]
    if any(dg <= 0 for dg in degs):
        raise ValueError("grading must be strictly positive on the generators")
    n = len(gens)
    if dot(grading, target) < 0:
        return None

    @lru_cache(maxsize=None)
    def search(i, rem):
        deg = dot(grading, rem)
        if deg < 0:
            return None
        if i == n:
            return () if is_zero(rem) else None
        g = gens[i]
        if i == n - 1:
            if deg % degs[i]:
                return None
            q = deg // degs[i]
            return (q,) if vscale(q, g) == rem else None
        for mult in range(deg // degs[i] + 1):
            sub = search(i + 1, vsub(rem, vscale(mult, g)))
            if sub is not None:
                return (mult,) + sub
        return None

    if n == 0:
        return () if is_zero(target) else None
    return search(0, target)
