"""Sparse truncated q-expansions with rational exponents.

A ``QSeries`` stores its nonzero terms below ``order``; everything below
``order`` is known exactly and nothing at or above it is known at all.
Arithmetic propagates the tightest order that is still sound.
"""

from fractions import Fraction
from functools import lru_cache
from math import ceil

from . import lattice as lat
from .errors import BeyondOrder


class QSeries:
    __slots__ = ("terms", "order")

    def __init__(self, terms, order):
        order = Fraction(order)
        clean = {}
        for e, c in dict(terms).items():
            e, c = Fraction(e), Fraction(c)
            if c and e < order:
                clean[e] = clean.get(e, 0) + c
        self.terms = {e: c for e, c in clean.items() if c}
        self.order = order

    @classmethod
    def one(cls, order):
        return cls({0: 1}, order)

    @classmethod
    def monomial(cls, exponent, coeff, order):
        return cls({exponent: coeff}, order)

    def leading(self):
        """(exponent, coefficient) of the lowest term; raises if none is known."""
        if not self.terms:
            raise BeyondOrder(f"no nonzero term below order {self.order}")
        e = min(self.terms)
        return e, self.terms[e]

    def _floor(self):
        # lowest exponent that may be nonzero
        return min(self.terms) if self.terms else self.order

    def coefficient(self, e):
        e = Fraction(e)
        if e >= self.order:
            raise BeyondOrder(f"exponent {e} is not below order {self.order}")
        return self.terms.get(e, Fraction(0))

    def items(self):
        return sorted(self.terms.items())

    def truncate(self, order):
        order = Fraction(order)
        if order > self.order:
            raise BeyondOrder(f"cannot extend order {self.order} to {order}")
        return QSeries(self.terms, order)

    def shift(self, exponent):
        """Multiply by q**exponent."""
        exponent = Fraction(exponent)
        return QSeries({e + exponent: c for e, c in self.terms.items()}, self.order + exponent)

    def scale(self, k):
        return QSeries({e: k * c for e, c in self.terms.items()}, self.order)

    def __neg__(self):
        return self.scale(-1)

    def __add__(self, other):
        order = min(self.order, other.order)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return QSeries(out, order)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(Fraction(other))
        order = min(self.order + other._floor(), other.order + self._floor())
        out = {}
        b_items = sorted(other.terms.items())
        for ea, ca in self.terms.items():
            for eb, cb in b_items:
                e = ea + eb
                if e >= order:
                    break
                out[e] = out.get(e, 0) + ca * cb
        return QSeries(out, order)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative powers are not supported")
        if k == 0:
            return QSeries.one(self.order - self._floor())
        base, result = self, None
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms

    def __hash__(self):
        return hash((self.order, frozenset(self.terms.items())))

    def __repr__(self):
        shown = " + ".join(f"{c}*q^({e})" for e, c in self.items()[:8])
        more = " + ..." if len(self.terms) > 8 else ""
        return f"QSeries({shown or '0'}{more} + O(q^({self.order})))"

    def to_json(self):
        return {
            "order": _rat(self.order),
            "terms": [[_rat(e), _rat(c)] for e, c in self.items()],
        }

    @classmethod
    def from_json(cls, data):
        return cls({Fraction(e): Fraction(c) for e, c in data["terms"]}, Fraction(data["order"]))


def _rat(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def eq_to_order(a, b, order):
    """True when a and b agree on every exponent below ``order``."""
    order = Fraction(order)
    if order > a.order or order > b.order:
        raise BeyondOrder(f"comparison order {order} exceeds {min(a.order, b.order)}")
    return a.truncate(order).terms == b.truncate(order).terms


@lru_cache(maxsize=None)
def colored_partitions(colors, n_max):
    """p_colors(n) for n = 0..n_max: coefficients of prod (1 - q^k)^(-colors)."""
    dp = [0] * (n_max + 1)
    dp[0] = 1
    for part in range(1, n_max + 1):
        for _ in range(colors):
            for i in range(part, n_max + 1):
                dp[i] += dp[i - part]
    return tuple(dp)


def _euler_product(n_max):
    """prod_{n>=1} (1 - q^n) up to q^n_max via pentagonal numbers."""
    coeffs = [0] * (n_max + 1)
    k = 0
    while True:
        done = True
        for kk in ((k, -k) if k else (0,)):
            e = kk * (3 * kk - 1) // 2
            if e <= n_max:
                coeffs[e] += -1 if kk % 2 else 1
                done = False
        if done:
            break
        k += 1
    return coeffs


def eta_power(l, order):
    """eta(q)^l truncated below ``order``; negative l gives 1/eta^|l|."""
    order = Fraction(order)
    if l == 0:
        return QSeries.one(order)
    lead = Fraction(l, 24)
    n_max = ceil(order - lead) - 1
    if n_max < 0:
        return QSeries({}, order)
    if l < 0:
        p = colored_partitions(-l, n_max)
        return QSeries({lead + n: c for n, c in enumerate(p)}, order)
    base = QSeries(dict(enumerate(_euler_product(n_max))), n_max + 1)
    return (base ** l).shift(lead).truncate(order)


def theta_coset(L, h, order):
    """Sum over alpha in L of q^((alpha - h, alpha - h)/2), truncated below ``order``.

    Orthogonal summands of L are handled separately and multiplied, so a
    direct sum of k copies of E8 costs k rank-8 enumerations at most.
    """
    h = lat.vec(h)
    lat._check_dim(L, h)
    order = Fraction(order)
    blocks = L.blocks
    parts = [(L.sublattice(b), tuple(h[i] for i in b)) for b in blocks]
    if len(parts) == 1:
        return _theta_block(L.gram, h, order)
    mins = [lat.min_norm_in_coset(sub, hb) / 2 for sub, hb in parts]
    total_min = sum(mins)
    result = None
    for (sub, hb), m in zip(parts, mins):
        block_order = order - (total_min - m)
        s = _theta_block(sub.gram, hb, block_order)
        result = s if result is None else result * s
    return result.truncate(order) if result.order >= order else result


@lru_cache(maxsize=256)
def _theta_block(gram, h, order):
    L = lat.Lattice(gram)
    if order <= 0:
        return QSeries({}, order)
    terms = {}
    for _, q in lat.enumerate_with_norms(L, h, 2 * order):
        e = q / 2
        if e < order:
            terms[e] = terms.get(e, 0) + 1
    return QSeries(terms, order)
