"""Explicit Fock space M(1) (x) C[L] with exact mode actions.

A basis state is ``FockState(partition, label)``: the partition lists the
creation operators alpha_c(-m) as ``(m, c)`` pairs, with ``c`` a lattice
basis index, sorted by mode descending then color ascending; ``label`` is
the integer vector alpha of the factor e^alpha.

Every operator here acts on finitely many explicit states and returns the
exact image, so nothing is ever truncated: the weight bound ``W`` only
limits which test states are generated.
"""

from collections import Counter, defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from . import lattice as lat
from . import linalg
from .errors import NonIntegralExponent, TruncationTooSmall
from .qseries import QSeries
from .voashift import _require_real, _require_voa, labels_below, make


class FockState(NamedTuple):
    partition: tuple
    label: tuple

    @property
    def heisenberg_degree(self):
        return sum(m for m, _ in self.partition)


def _canon(parts):
    return tuple(sorted(parts, key=lambda p: (-p[0], p[1])))


def vacuum(rank, label=None):
    return FockState((), tuple(label) if label is not None else (0,) * rank)


class FockVector:
    """Finite rational combination of FockStates."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {s: Fraction(c) for s, c in (terms or {}).items() if c}

    @classmethod
    def basis_vector(cls, state, coeff=1):
        return cls({state: coeff})

    def __add__(self, other):
        out = dict(self.terms)
        for s, c in other.terms.items():
            out[s] = out.get(s, 0) + c
        return FockVector(out)

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, k):
        k = Fraction(k)
        return FockVector({s: k * c for s, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        parts = [f"{c}*{_fmt_state(s)}" for s, c in sorted(self.terms.items())]
        return "FockVector(" + (" + ".join(parts) or "0") + ")"

    def to_json(self):
        return [{"partition": [list(p) for p in s.partition], "label": list(s.label),
                 "coeff": f"{c.numerator}/{c.denominator}"}
                for s, c in sorted(self.terms.items())]


def _fmt_state(s):
    ops = "".join(f"a{c}(-{m})" for m, c in s.partition)
    return f"{ops or '1'}e^{list(s.label)}"


def _as_vector(x):
    return x if isinstance(x, FockVector) else FockVector.basis_vector(x)


# -- Heisenberg modes --------------------------------------------------------

@lru_cache(maxsize=None)
def _mode_on_state(gram, v, n, state):
    """v(n) applied to one basis state, as a tuple of (state, coeff)."""
    if n < 0:
        out = []
        for c, vc in enumerate(v):
            if vc:
                out.append((FockState(_canon(state.partition + ((-n, c),)), state.label), vc))
        return tuple(out)
    gv = [sum(Fraction(g) * x for g, x in zip(row, v)) for row in gram]
    if n == 0:
        pairing = sum(x * a for x, a in zip(gv, state.label))
        return ((state, pairing),) if pairing else ()
    counts = Counter(state.partition)
    out = []
    for (m, c), mult in counts.items():
        if m == n and gv[c]:
            rest = list(state.partition)
            rest.remove((m, c))
            out.append((FockState(tuple(rest), state.label), mult * n * gv[c]))
    return tuple(out)


def heisenberg(L, v, n, x):
    """Action of the Heisenberg mode v(n), v a rational vector in the lattice basis."""
    v = lat.vec(v)
    lat._check_dim(L, v)
    x = _as_vector(x)
    out = defaultdict(Fraction)
    for s, c in x.terms.items():
        for t, k in _mode_on_state(L.gram, v, n, s):
            out[t] += c * k
    return FockVector(out)


def _unit(rank, i):
    return tuple(Fraction(int(j == i)) for j in range(rank))


@lru_cache(maxsize=None)
def _dual_rows(gram):
    return tuple(tuple(row) for row in linalg.inverse(gram))


def _normal_ordered(L, u, w, p, q, x):
    """:u(p) w(q): with the larger (annihilation) mode acting first."""
    if p >= q:
        return heisenberg(L, w, q, heisenberg(L, u, p, x))
    return heisenberg(L, u, p, heisenberg(L, w, q, x))


@lru_cache(maxsize=None)
def _virasoro_on_state(gram, n, state):
    L = lat.Lattice(gram)
    rank = len(gram)
    dual = _dual_rows(gram)
    d = state.heisenberg_degree
    x = FockVector.basis_vector(state)
    total = FockVector()
    # L(n) = 1/2 sum_i sum_{p+q=n} :alpha_i(p) alpha^i(q):
    for p in range(n - d, d + 1):
        q = n - p
        for i in range(rank):
            total = total + _normal_ordered(L, _unit(rank, i), dual[i], p, q, x)
    return tuple((total * Fraction(1, 2)).terms.items())


def virasoro(L, n, x):
    """Mode L(n) of the unshifted conformal vector of V_L."""
    x = _as_vector(x)
    out = defaultdict(Fraction)
    for s, c in x.terms.items():
        for t, k in _virasoro_on_state(L.gram, n, s):
            out[t] += c * k
    return FockVector(out)


def shifted_virasoro(V, n, x):
    """L_h(n) = L(n) - (n + 1) h(n)."""
    _require_real(V)
    base = virasoro(V.lattice, n, x)
    if n == -1 or not any(V.shift_real):
        return base
    return base - heisenberg(V.lattice, V.shift_real, n, x) * (n + 1)


# -- bases -------------------------------------------------------------------

def colored_partitions_list(n, colors):
    """All multisets of (mode, color) with modes summing to n, canonical order."""
    parts = [(m, c) for m in range(n, 0, -1) for c in range(colors)]
    out = []

    def rec(start, remaining, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for idx in range(start, len(parts)):
            m, c = parts[idx]
            if m <= remaining:
                acc.append((m, c))
                rec(idx, remaining - m, acc)
                acc.pop()

    rec(0, n, [])
    return out


def basis(V, W):
    """All basis states of L_h(0)-weight <= W, ordered by (weight, label, partition)."""
    _require_real(V)
    W = Fraction(W)
    rows = []
    for alpha, g in labels_below(V, W):
        n_max = W - g.re
        for n in range(0, int(n_max // 1) + 1):
            for part in colored_partitions_list(n, V.rank):
                rows.append((g.re + n, alpha, part))
    rows.sort()
    return [FockState(part, alpha) for _, alpha, part in rows]


def state_weight(V, state):
    return state.heisenberg_degree + lat.norm(V.lattice, state.label) / 2 \
        - lat.inner(V.lattice, V.shift_real, state.label)


def conformal_vector(L):
    """omega = 1/2 sum_i alpha_i(-1) alpha^i(-1) 1."""
    rank = L.rank
    dual = _dual_rows(L.gram)
    vac = FockVector.basis_vector(vacuum(rank))
    total = FockVector()
    for i in range(rank):
        total = total + heisenberg(L, _unit(rank, i), -1, heisenberg(L, dual[i], -1, vac))
    return total * Fraction(1, 2)


def weight_one_state(L, v):
    """The state v(-1)1."""
    return heisenberg(L, v, -1, vacuum(L.rank))


# -- checks ------------------------------------------------------------------

def bracket_check(V, m, n, W):
    """[L_h(m), L_h(n)] = (m-n) L_h(m+n) + (m^3-m)/12 delta_{m,-n} c_h on every basis state of weight <= W."""
    return not bracket_failures(V, m, n, W)


def bracket_failures(V, m, n, W):
    central = Fraction(m ** 3 - m, 12) * V.central_charge if m == -n else 0
    bad = []
    for s in basis(V, W):
        x = FockVector.basis_vector(s)
        lhs = shifted_virasoro(V, m, shifted_virasoro(V, n, x)) \
            - shifted_virasoro(V, n, shifted_virasoro(V, m, x))
        rhs = shifted_virasoro(V, m + n, x) * (m - n) + x * central
        if lhs != rhs:
            bad.append(s)
    return bad


def l1_matrix(V):
    """Matrix of L_h(1): V_1 -> V_0 in the explicit bases (rows index V_0)."""
    _require_voa(V)
    states = basis(V, 1)
    b0 = [s for s in states if state_weight(V, s) == 0]
    b1 = [s for s in states if state_weight(V, s) == 1]
    index = {s: i for i, s in enumerate(b0)}
    cols = []
    for s in b1:
        img = shifted_virasoro(V, 1, s)
        col = [Fraction(0)] * len(b0)
        for t, c in img.terms.items():
            col[index[t]] = c
        cols.append(col)
    rows = [list(r) for r in zip(*cols)] if cols else [[] for _ in b0]
    return rows, b0, b1


def l1_codimension(V):
    """dim V_0 - rank(L_h(1): V_1 -> V_0)."""
    rows, b0, b1 = l1_matrix(V)
    r = linalg.rank(rows) if b1 else 0
    return len(b0) - r


def delta_apply(L, v, x, depth=None, integer_exponents=False):
    """Laurent expansion of Delta(v, z) x as {z-exponent: FockVector}.

    Delta(v, z) = z^{v(0)} exp(-sum_{k>=1} v(k)/k (-z)^{-k}).  Modes above the
    Heisenberg degree of x annihilate it, so the default depth is that degree.
    """
    v = lat.vec(v)
    x = _as_vector(x)
    if depth is None:
        depth = max((s.heisenberg_degree for s in x.terms), default=0)
    result = {Fraction(0): x}
    for k in range(1, depth + 1):
        c_k = Fraction((-1) ** (k + 1), k)
        nxt = defaultdict(FockVector)
        for e, vecx in result.items():
            term, j = vecx, 0
            coeff = Fraction(1)
            while term:
                nxt[e - k * j] = nxt[e - k * j] + term * coeff
                j += 1
                term = heisenberg(L, v, k, term)
                coeff = coeff * c_k / j
        result = {e: w for e, w in nxt.items() if w}
    final = defaultdict(FockVector)
    for e, vecx in result.items():
        for s, c in vecx.terms.items():
            shift = lat.inner(L, v, s.label)
            if integer_exponents and shift.denominator != 1:
                raise NonIntegralExponent(f"(v, alpha) = {shift} for label {s.label}")
            final[e + shift] = final[e + shift] + FockVector({s: c})
    return {e: w for e, w in sorted(final.items()) if w}


def field_mode(L, u, k, x):
    """Mode u_k of Y(u, z) = sum u_k z^{-k-1}, for u in the span of 1, a(-1)1, a(-2)1, a(-1)b(-1)1.

    These are the only states needed to read off zero modes from
    Delta(-h, z) omega; general lattice vertex operators are not modelled.
    """
    x = _as_vector(x)
    rank = L.rank
    out = FockVector()
    for s, c in u.terms.items():
        if any(s.label):
            raise NotImplementedError("vertex operators of e^alpha states are not modelled")
        part = s.partition
        if not part:
            img = x if k == -1 else FockVector()
        elif part == ((1, part[0][1]),):
            img = heisenberg(L, _unit(rank, part[0][1]), k, x)
        elif part == ((2, part[0][1]),):
            img = heisenberg(L, _unit(rank, part[0][1]), k - 1, x) * (-k)
        elif len(part) == 2 and part[0][0] == part[1][0] == 1:
            a, b = _unit(rank, part[0][1]), _unit(rank, part[1][1])
            d = max((t.heisenberg_degree for t in x.terms), default=0)
            img = FockVector()
            for p in range(k - 1 - d, d + 1):
                img = img + _normal_ordered(L, a, b, p, k - 1 - p, x)
        else:
            raise NotImplementedError(f"field of {_fmt_state(s)} is not modelled")
        out = out + img * c
    return out


def delta_zero_mode(L, h, x):
    """L_{Delta,-h}(0) x: the z^{-2} coefficient of Y(Delta(-h, z) omega, z) x."""
    neg = tuple(-Fraction(t) for t in lat.vec(h))
    expansion = delta_apply(L, neg, conformal_vector(L))
    out = FockVector()
    for e, u in expansion.items():
        if e.denominator != 1:
            raise NonIntegralExponent(f"exponent {e} in Delta(-h, z) omega")
        out = out + field_mode(L, u, int(e) + 1, x)
    return out


def trace_identity_check(V, order, W=None):
    """Tr q^{L_{Delta,-h}(0) - c/24} == Tr q^{L_h(0) - c_h/24} over the adjoint module, below ``order``."""
    _require_real(V)
    order = Fraction(order)
    needed = order + V.central_charge / 24
    if W is not None and Fraction(W) < needed:
        raise TruncationTooSmall(f"weight bound {W} < {needed}", minimal_bound=needed)
    L, h = V.lattice, V.shift_real
    c = Fraction(L.rank)
    lhs, rhs = defaultdict(Fraction), defaultdict(Fraction)
    for s in basis(V, needed):
        x = FockVector.basis_vector(s)
        a = delta_zero_mode(L, h, x)
        b = shifted_virasoro(V, 0, x)
        if set(a.terms) - {s} or set(b.terms) - {s}:
            return False
        lhs[a.terms.get(s, 0) - c / 24] += 1
        rhs[b.terms.get(s, 0) - V.central_charge / 24] += 1
    return QSeries(lhs, order) == QSeries(rhs, order)


def trace_series(V, order):
    """Tr q^{L_h(0) - c_h/24} from the explicit basis (diagonal of L_h(0))."""
    order = Fraction(order)
    needed = order + V.central_charge / 24
    terms = defaultdict(Fraction)
    for s in basis(V, needed):
        ev = shifted_virasoro(V, 0, s).terms.get(s, 0)
        terms[ev - V.central_charge / 24] += 1
    return QSeries(terms, order)


def check_h_conditions(L, v, W):
    """Check conditions (i)-(iv) for h = v(-1)1 in V_L on the weight <= W basis.

    Returns a list of ``{"condition", "passed", "witness"}`` dicts.
    """
    v = lat.vec(v)
    V0 = make(L, [0] * L.rank)
    h = weight_one_state(L, v)
    vac = FockVector.basis_vector(vacuum(L.rank))
    states = basis(V0, W)
    report = []

    bad = [n for n in (1, 2, 3) if virasoro(L, n, h)]
    report.append({"condition": "i", "passed": not bad,
                   "witness": f"L(n)h != 0 for n in {bad}" if bad else "L(n)h = 0 for n = 1..3"})

    bad = []
    for s in states:
        ev = lat.inner(L, v, s.label)
        if heisenberg(L, v, 0, s) != FockVector.basis_vector(s, ev):
            bad.append(s)
    report.append({"condition": "ii", "passed": not bad,
                   "witness": f"h(0) not diagonal on {bad[:3]}" if bad
                   else f"h(0) diagonal with rational eigenvalues on {len(states)} states"})

    hh = heisenberg(L, v, 1, h)
    scalar = hh.terms.get(vacuum(L.rank), Fraction(0))
    bad = [n for n in (0, 2, 3) if heisenberg(L, v, n, h)]
    ok = not bad and hh == vac * scalar
    report.append({"condition": "iii", "passed": ok,
                   "witness": f"h(1)h = {scalar}*1" + (f"; h(n)h != 0 for n in {bad}" if bad else "")})

    bad = []
    for s in states:
        x = FockVector.basis_vector(s)
        for m in range(-3, 4):
            for n in range(-3, 4):
                comm = heisenberg(L, v, m, heisenberg(L, v, n, x)) \
                    - heisenberg(L, v, n, heisenberg(L, v, m, x))
                expect = x * (m * scalar) if m == -n else FockVector()
                if comm != expect:
                    bad.append((m, n, s))
    report.append({"condition": "iv", "passed": not bad,
                   "witness": f"failures {bad[:3]}" if bad else "[h(m), h(n)] = m delta (h,h) for |m|,|n| <= 3"})
    return report
