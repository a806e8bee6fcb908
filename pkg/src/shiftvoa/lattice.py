"""Positive-definite even lattices given by integral Gram matrices.

Vectors are tuples of ``Fraction`` in the lattice basis.  A vector ``v``
lies in the dual lattice exactly when ``G v`` is integral.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import floor, lcm

from gmpy2 import isqrt, mpq

from . import linalg
from .errors import (
    BadParameter,
    DimensionMismatch,
    EmptyInput,
    NegativeBound,
    NotEven,
    NotPositiveDefinite,
    NotSymmetric,
    UnknownName,
)

E8_GRAM = (
    (2, 0, -1, 0, 0, 0, 0, 0),
    (0, 2, 0, -1, 0, 0, 0, 0),
    (-1, 0, 2, -1, 0, 0, 0, 0),
    (0, -1, -1, 2, -1, 0, 0, 0),
    (0, 0, 0, -1, 2, -1, 0, 0),
    (0, 0, 0, 0, -1, 2, -1, 0),
    (0, 0, 0, 0, 0, -1, 2, -1),
    (0, 0, 0, 0, 0, 0, -1, 2),
)


def vec(coords):
    """Coerce a sequence of numbers or "p/q" strings into a rational vector."""
    return tuple(Fraction(c) for c in coords)


@dataclass(frozen=True)
class Lattice:
    gram: tuple
    name: str = field(default=None, compare=False)

    @property
    def rank(self):
        return len(self.gram)

    @cached_property
    def det(self):
        return linalg.bareiss_det(self.gram)

    @cached_property
    def _ldl(self):
        return linalg.ldl(self.gram)

    @cached_property
    def _ldl_mpq(self):
        lower, pivots = self._ldl
        conv = lambda f: mpq(f.numerator, f.denominator)
        return [[conv(v) for v in row] for row in lower], [conv(p) for p in pivots]

    @cached_property
    def _inverse(self):
        return tuple(tuple(row) for row in linalg.inverse(self.gram))

    @cached_property
    def blocks(self):
        """Index sets of the orthogonal summands visible in the Gram matrix."""
        n = self.rank
        seen = [False] * n
        out = []
        for start in range(n):
            if seen[start]:
                continue
            comp, stack = [], [start]
            seen[start] = True
            while stack:
                i = stack.pop()
                comp.append(i)
                for j in range(n):
                    if not seen[j] and self.gram[i][j]:
                        seen[j] = True
                        stack.append(j)
            out.append(tuple(sorted(comp)))
        return tuple(out)

    def sublattice(self, idx):
        return Lattice(tuple(tuple(self.gram[i][j] for j in idx) for i in idx))

    def __repr__(self):
        label = self.name or f"gram={[list(r) for r in self.gram]}"
        return f"Lattice({label}, rank={self.rank})"


def validate(gram, name=None):
    """Check that ``gram`` defines a positive-definite even lattice."""
    rows = [list(r) for r in gram]
    n = len(rows)
    if n == 0:
        raise EmptyInput("Gram matrix must have rank >= 1")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise DimensionMismatch(f"row {i} has length {len(row)}, expected {n}")
        for j, x in enumerate(row):
            if Fraction(x).denominator != 1:
                raise BadParameter(f"entry ({i},{j}) = {x} is not an integer")
    g = tuple(tuple(int(x) for x in row) for row in rows)
    for i in range(n):
        for j in range(i + 1, n):
            if g[i][j] != g[j][i]:
                raise NotSymmetric(f"G[{i}][{j}] = {g[i][j]} but G[{j}][{i}] = {g[j][i]}")
    for i in range(n):
        if g[i][i] % 2:
            raise NotEven(f"diagonal entry G[{i}][{i}] = {g[i][i]} is odd")
    _, pivots = linalg.ldl(g)
    if len(pivots) < n or pivots[-1] <= 0:
        k = len(pivots)
        raise NotPositiveDefinite(f"leading principal minor of size {k} is not positive")
    return Lattice(g, name)


def named(name, param=None):
    """Standard lattices: ``rank1`` (param = 2N), ``A`` (param = l) or ``E8``."""
    if name == "E8":
        return validate(E8_GRAM, "E8")
    if name == "rank1":
        if not isinstance(param, int) or param < 2 or param % 2:
            raise BadParameter(f"rank1 needs an even norm 2N >= 2, got {param!r}")
        return validate([[param]], f"rank1({param})")
    if name == "A":
        if not isinstance(param, int) or param < 1:
            raise BadParameter(f"A(l) needs l >= 1, got {param!r}")
        g = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(param)]
             for i in range(param)]
        return validate(g, f"A{param}")
    raise UnknownName(f"unknown lattice {name!r}")


def direct_sum(lattices):
    lattices = list(lattices)
    if not lattices:
        raise EmptyInput("direct sum of no lattices")
    n = sum(L.rank for L in lattices)
    g = [[0] * n for _ in range(n)]
    off = 0
    for L in lattices:
        for i in range(L.rank):
            for j in range(L.rank):
                g[off + i][off + j] = L.gram[i][j]
        off += L.rank
    names = [L.name or "?" for L in lattices]
    return Lattice(tuple(map(tuple, g)), "+".join(names))


def _check_dim(L, *vs):
    for v in vs:
        if len(v) != L.rank:
            raise DimensionMismatch(f"vector of length {len(v)} used with rank {L.rank}")


def _cleared(v):
    """(integer numerators, common denominator) of a rational vector."""
    fr = [Fraction(x) for x in v]
    d = lcm(*(x.denominator for x in fr))
    return [x.numerator * (d // x.denominator) for x in fr], d


def inner(L, u, v):
    _check_dim(L, u, v)
    (iu, du), (iv, dv) = _cleared(u), _cleared(v)
    g = L.gram
    total = 0
    for i, x in enumerate(iu):
        if x:
            row = g[i]
            total += x * sum(row[j] * y for j, y in enumerate(iv) if y)
    return Fraction(total, du * dv)


def norm(L, v):
    return inner(L, v, v)


def pair(L, v):
    """G v, i.e. the pairings (v, alpha_i) with the basis vectors."""
    _check_dim(L, v)
    return tuple(sum(Fraction(x) * y for x, y in zip(row, v)) for row in L.gram)


def dual_basis(L):
    return [list(row) for row in L._inverse]


def in_lattice(L, v):
    _check_dim(L, v)
    return all(Fraction(x).denominator == 1 for x in v)


def in_dual(L, v):
    return all(x.denominator == 1 for x in pair(L, v))


@dataclass(frozen=True)
class DiscriminantGroup:
    order: int
    elementary_divisors: tuple
    representatives: tuple
    # representatives are reduced to coordinates in [0, 1)
    normalization: str = "fractional-part"


def reduce_mod_lattice(v):
    return tuple(Fraction(x) - (Fraction(x).numerator // Fraction(x).denominator) for x in v)


def discriminant(L):
    """Discriminant group L°/L from the Smith form U G V = D.

    The classes are ``V D^{-1} t`` for ``t`` in the box ``0 <= t_i < d_i``.
    """
    _, diag, right = linalg.smith_normal_form(L.gram)
    divisors = [diag[i][i] for i in range(L.rank)]
    reps = set()
    for t in product(*(range(d) for d in divisors)):
        scaled = [Fraction(ti, d) for ti, d in zip(t, divisors)]
        reps.add(reduce_mod_lattice(linalg.matvec(right, scaled)))
    order = 1
    for d in divisors:
        order *= d
    return DiscriminantGroup(
        order=order,
        elementary_divisors=tuple(d for d in divisors if d != 1) or (1,),
        representatives=tuple(sorted(reps)),
    )


def _integer_range(t, r2):
    """Integers x with (x - t)^2 <= r2, as (lo, hi); empty when lo > hi."""
    s = int(isqrt(r2.numerator * r2.denominator) // r2.denominator)
    ft = int(floor(t))
    lo = ft - s - 1
    while (lo - t) ** 2 > r2 and lo <= t:
        lo += 1
    hi = ft + s + 2
    while (hi - t) ** 2 > r2 and hi >= t:
        hi -= 1
    return lo, hi


def enumerate_in_ellipsoid(L, center, bound):
    """All integer vectors x with (x - center, x - center) <= bound, sorted."""
    return [x for x, _ in enumerate_with_norms(L, center, bound)]


def enumerate_with_norms(L, center, bound):
    """Pairs (x, (x - center, x - center)) for the points of the ellipsoid.

    Fincke-Pohst style: with G = M diag(d) M^T the quadratic form is a sum of
    d_j y_j^2, and each coordinate range is fixed exactly once the outer
    coordinates are chosen.  Output is sorted lexicographically.
    """
    _check_dim(L, center)
    bound = Fraction(bound)
    if bound < 0:
        raise NegativeBound(f"bound {bound} < 0")
    lower, pivots = L._ldl_mpq
    n = L.rank
    c = [mpq(Fraction(x).numerator, Fraction(x).denominator) for x in center]
    top = mpq(bound.numerator, bound.denominator)
    out = []
    z = [mpq(0)] * n
    x = [0] * n
    zero = mpq(0)
    # only nonzero subdiagonal entries matter for the partial sums
    links = [[(i, lower[i][j]) for i in range(j + 1, n) if lower[i][j]] for j in range(n)]

    def recurse(j, remaining):
        shift = sum((m * z[i] for i, m in links[j]), zero)
        t = c[j] - shift
        lo, hi = _integer_range(t, remaining / pivots[j])
        for xj in range(lo, hi + 1):
            x[j] = xj
            z[j] = xj - c[j]
            y = xj - t
            rem = remaining - pivots[j] * y * y
            if rem < 0:
                continue
            if j == 0:
                q = top - rem
                out.append((tuple(x), Fraction(int(q.numerator), int(q.denominator))))
            else:
                recurse(j - 1, rem)

    recurse(n - 1, top)
    out.sort()
    return out


def min_norm_in_coset(L, center):
    """Minimum of (x - center, x - center) over integer vectors x."""
    # coordinatewise rounding gives a feasible upper bound
    rounded = tuple(round(Fraction(x)) for x in center)
    bound = norm(L, tuple(a - Fraction(b) for a, b in zip(rounded, center)))
    return min(q for _, q in enumerate_with_norms(L, center, bound))


def lcm_of_denominators(values):
    return lcm(*(Fraction(v).denominator for v in values)) if values else 1
