"""Shifted lattice vertex operator algebras V_{L,h}.

The conformal vector is shifted by h(-2)1, so the grading operator becomes
L_h(0) = L(0) - h(0) and a state u (x) e^alpha with u of Heisenberg degree n
has weight n + (alpha, alpha)/2 - (h, alpha).  The shift h = a + ib is
stored as two rational vectors in the lattice basis.
"""

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor

from . import lattice as lat
from .errors import (
    CentralChargeTooNegative,
    ClassificationMismatch,
    ComplexShiftUnsupported,
    NotInDualLattice,
    NotMultipleOf8,
    NotVOACase,
)
from .qseries import QSeries, colored_partitions, eta_power, theta_coset


@dataclass(frozen=True, order=True)
class GradeValue:
    """A complex rational re + i*im; also used for complex central charges."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @property
    def is_real(self):
        return self.im == 0

    def to_json(self):
        return {"re": _rat(self.re), "im": _rat(self.im)}

    def __str__(self):
        if not self.im:
            return str(self.re)
        sign = "+" if self.im > 0 else "-"
        return f"{self.re} {sign} {abs(self.im)}i"


def _rat(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class ShiftedVOA:
    lattice: lat.Lattice
    shift_real: tuple
    shift_imag: tuple
    central_charge: object = field(compare=False)
    grading_denominator: int = field(compare=False)

    @property
    def rank(self):
        return self.lattice.rank

    @property
    def is_real(self):
        return not any(self.shift_imag)

    @property
    def is_voa(self):
        """Real shift inside the dual lattice: an honest Z-graded VOA."""
        return self.is_real and lat.in_dual(self.lattice, self.shift_real)

    def shift_norm(self):
        return lat.norm(self.lattice, self.shift_real)


@dataclass(frozen=True)
class TypeRecord:
    self_dual: bool
    dim_V0: int
    dim_Vm1: int
    codim_L1V1: object
    label: str

    def to_json(self):
        return {
            "self_dual": self.self_dual,
            "dim_V0": self.dim_V0,
            "dim_Vm1": self.dim_Vm1,
            "codim_L1V1": self.codim_L1V1,
            "label": self.label,
        }


def make(L, a, b=None):
    a = lat.vec(a)
    b = lat.vec(b) if b is not None else tuple(Fraction(0) for _ in a)
    lat._check_dim(L, a, b)
    na, nb, ab = lat.norm(L, a), lat.norm(L, b), lat.inner(L, a, b)
    # c_h = l - 12 (h, h) with (h, h) = (a,a) - (b,b) + 2i (a,b)
    c_re = L.rank - 12 * (na - nb)
    c_im = -24 * ab
    if any(b):
        central = GradeValue(c_re, c_im)
        den = lat.lcm_of_denominators(lat.pair(L, a) + lat.pair(L, b))
    else:
        central = Fraction(c_re)
        den = lat.lcm_of_denominators(lat.pair(L, a))
    return ShiftedVOA(L, a, b, central, den)


def _require_real(V):
    if not V.is_real:
        raise ComplexShiftUnsupported("operation needs a real shift (b = 0)")


def _require_voa(V):
    if not V.is_voa:
        raise NotVOACase("shift must be real and lie in the dual lattice")


def lattice_weight(V, alpha):
    """Weight contribution (alpha,alpha)/2 - (h,alpha) of the label e^alpha."""
    L = V.lattice
    x = lat.norm(L, alpha) / 2 - lat.inner(L, V.shift_real, alpha)
    y = -lat.inner(L, V.shift_imag, alpha) if not V.is_real else Fraction(0)
    return GradeValue(x, y)


def weight(V, n, alpha):
    """L_h(0)-eigenvalue of u (x) e^alpha with u of Heisenberg degree n."""
    w = lattice_weight(V, tuple(Fraction(x) for x in alpha))
    return GradeValue(n + w.re, w.im)


def labels_below(V, x_max):
    """Pairs (alpha, lattice weight) with real part of the weight <= x_max.

    Uses (alpha - a, alpha - a)/2 = x + (a, a)/2 with x the real weight.
    """
    an = V.shift_norm()
    bound = 2 * Fraction(x_max) + an
    if bound < 0:
        return []
    out = []
    for alpha, q in lat.enumerate_with_norms(V.lattice, V.shift_real, bound):
        y = Fraction(0) if V.is_real else -lat.inner(V.lattice, V.shift_imag, alpha)
        out.append((alpha, GradeValue((q - an) / 2, y)))
    return out


def spectrum(V, W):
    """All grades r with Re(r) <= W and their dimensions, sorted by (re, im)."""
    W = Fraction(W)
    dims = defaultdict(int)
    for _, g in labels_below(V, W):
        n_max = floor(W - g.re)
        if n_max < 0:
            continue
        p = colored_partitions(V.rank, n_max)
        for n in range(n_max + 1):
            dims[GradeValue(g.re + n, g.im)] += p[n]
    return sorted(dims.items())


def weight_space_dim(V, r):
    if not isinstance(r, GradeValue):
        r = GradeValue(r)
    total = 0
    for _, g in labels_below(V, r.re):
        n = r.re - g.re
        if g.im != r.im or n < 0 or n.denominator != 1:
            continue
        total += colored_partitions(V.rank, int(n))[int(n)]
    return total


def truncation_violations(V, radius_scale=1):
    """Grades r with Re(r) < |Im(r)|, with their dimensions.

    Labels with (alpha, alpha) >= 4 max((a+b, a+b), (a-b, a-b)) cannot
    violate the bound (Schwarz), so only the finitely many shorter labels
    are scanned.  ``radius_scale`` enlarges the scan for completeness checks.
    """
    L = V.lattice
    a, b = V.shift_real, V.shift_imag
    plus = tuple(x + y for x, y in zip(a, b))
    minus = tuple(x - y for x, y in zip(a, b))
    radius = 4 * max(lat.norm(L, plus), lat.norm(L, minus)) * Fraction(radius_scale)
    dims = defaultdict(int)
    zero = tuple(Fraction(0) for _ in a)
    for alpha in lat.enumerate_in_ellipsoid(L, zero, radius):
        g = lattice_weight(V, alpha)
        gap = abs(g.im) - g.re
        if gap <= 0:
            continue
        # n ranges over 0 <= n < gap
        n_max = -(-gap.numerator // gap.denominator) - 1
        p = colored_partitions(V.rank, n_max)
        for n in range(n_max + 1):
            dims[GradeValue(g.re + n, g.im)] += p[n]
    return sorted(dims.items())


def partition_function_direct(V, order):
    """Tr q^(L_h(0) - c_h/24) summed state by state from the weight formula."""
    _require_real(V)
    order = Fraction(order)
    w_max = order + V.central_charge / 24
    L = V.lattice
    blocks = L.blocks
    if len(blocks) == 1:
        terms = {}
        for g, d in spectrum(V, w_max):
            if g.re < w_max:
                terms[g.re - V.central_charge / 24] = d
        return QSeries(terms, order)
    # orthogonal summands: the label weights split as a sum over blocks
    parts = []
    for idx in blocks:
        sub = L.sublattice(idx)
        a = tuple(V.shift_real[i] for i in idx)
        low = lat.min_norm_in_coset(sub, a) / 2 - lat.norm(sub, a) / 2
        parts.append((make(sub, a), low))
    total_low = sum(low for _, low in parts)
    result = None
    for sub_v, low in parts:
        cap = w_max - (total_low - low)
        terms = defaultdict(int)
        for _, g in labels_below(sub_v, cap):
            if g.re < cap:
                terms[g.re] += 1
        s = QSeries(terms, cap)
        result = s if result is None else result * s
    n_max = max(-1, ceil(w_max - total_low) - 1)
    heis = QSeries(dict(enumerate(colored_partitions(V.rank, max(n_max, 0)))), n_max + 1)
    result = result * heis
    return result.shift(-V.central_charge / 24).truncate(order)


def partition_function_theta(V, order):
    """theta_{L-h}(q) / eta(q)^l."""
    _require_real(V)
    return _theta_over_eta(V.lattice, V.shift_real, order)


def _theta_over_eta(L, center, order):
    order = Fraction(order)
    lead = lat.min_norm_in_coset(L, center) / 2
    eta_inv = eta_power(-L.rank, order - lead)
    theta = theta_coset(L, center, order - Fraction(-L.rank, 24))
    return (theta * eta_inv).truncate(order)


def module_partition_function(V, lam, order):
    """Partition function of the simple module V_{L-lam} over V_{L,h}."""
    _require_real(V)
    lam = lat.vec(lam)
    if not lat.in_dual(V.lattice, lam):
        raise NotInDualLattice(f"{[str(x) for x in lam]} is not in the dual lattice")
    center = tuple(x + y for x, y in zip(lam, V.shift_real))
    return _theta_over_eta(V.lattice, center, order)


def canonical_class(L, lam):
    lam = lat.vec(lam)
    if not lat.in_dual(L, lam):
        raise NotInDualLattice(f"{[str(x) for x in lam]} is not in the dual lattice")
    return lat.reduce_mod_lattice(lam)


def dual_module_coset(L, lam):
    """Class of the contragredient module: V_{L-lam}' = V_{L+lam}."""
    canonical_class(L, lam)
    return lat.reduce_mod_lattice(tuple(-x for x in lat.vec(lam)))


def is_self_dual(V):
    _require_voa(V)
    return lat.in_lattice(V.lattice, tuple(2 * x for x in V.shift_real))


def _label(codim, dim0, dim_m1):
    roman = "II" if codim == 1 else "I"
    letter = "A" if dim0 > 1 else "B"
    sign = "-" if dim_m1 > 0 else "+"
    return roman + letter + sign


def classify(V, with_codim=False):
    _require_voa(V)
    self_dual = is_self_dual(V)
    dim0 = weight_space_dim(V, 0)
    dim_m1 = weight_space_dim(V, -1)
    if with_codim:
        from .fock import l1_codimension

        codim = l1_codimension(V)
        if codim != (1 if self_dual else 0):
            raise ClassificationMismatch(
                f"codim L(1)V_1 = {codim} but self_dual = {self_dual}")
    else:
        codim = 1 if self_dual else 0
    return TypeRecord(self_dual, dim0, dim_m1, codim, _label(codim, dim0, dim_m1))


def same_Z_family(L, lam, count, direction=None):
    """Shifts lam + m*beta (m = 0, 1, ...) with strictly increasing (h, h)."""
    lam = lat.vec(lam)
    if not lat.in_dual(L, lam):
        raise NotInDualLattice(f"{[str(x) for x in lam]} is not in the dual lattice")
    if direction is None:
        direction = tuple(int(i == 0) for i in range(L.rank))
    beta = lat.vec(direction)
    if not lat.in_lattice(L, beta) or not any(beta):
        raise NotInDualLattice("family direction must be a nonzero lattice vector")
    out, last, m = [], None, 0
    while len(out) < count:
        h = tuple(x + m * y for x, y in zip(lam, beta))
        nh = lat.norm(L, h)
        if last is None or nh > last:
            out.append(make(L, h))
            last = nh
        m += 1
    return out


def holomorphic_family(c, r):
    """V_{L,h} with L = E8^(3r + c/8), h in L of norm 2r, central charge c."""
    if c % 8:
        raise NotMultipleOf8(f"central charge {c} is not divisible by 8")
    if 24 * r + c <= 0:
        raise CentralChargeTooNegative(f"24r + c = {24 * r + c} must be positive")
    copies = 3 * r + c // 8
    e8 = lat.named("E8")
    L = lat.direct_sum([e8] * copies)
    L = lat.Lattice(L.gram, f"E8^{copies}")
    h = [0] * (8 * copies)
    if r <= copies:
        roots = range(r)
        tail = None
    else:
        # not enough summands for one root each: the last summand carries the rest
        roots = range(copies - 1)
        tail = r - (copies - 1)
    for k in roots:
        h[8 * k] = 1
    if tail:
        vec_tail = _e8_vector_of_norm(e8, 2 * tail)
        h[8 * (copies - 1):] = vec_tail
    return make(L, h)


def _e8_vector_of_norm(e8, n):
    zero = (Fraction(0),) * 8
    for v in lat.enumerate_in_ellipsoid(e8, zero, n):
        if lat.norm(e8, v) == n:
            return list(v)
    raise ValueError(f"no E8 vector of norm {n}")
