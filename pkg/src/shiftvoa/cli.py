"""Command-line front end.

    shiftvoa analyze  --config job.json [--order p/q] [--json|--table]
    shiftvoa spectrum --config job.json
    shiftvoa theta    --config job.json
    shiftvoa family   --config family.json
    shiftvoa verify   --suite prop32 [--config job.json]

Exit codes: 0 success, 1 a verification reported a mismatch, 2 usage or
configuration error.  All rationals in JSON output are "p/q" strings.
"""

import argparse
import json
import random
import sys
from fractions import Fraction

from . import fock, lattice as lat, voashift as vs
from .errors import ConfigError, ShiftVOAError, TruncationTooSmall
from .qseries import eq_to_order, theta_coset

SUITES = ("prop32", "virasoro", "lemma51", "lemma52", "delta", "prop62", "cgraded")


def rat(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _parse_rational(value, where):
    try:
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{where}: cannot read {value!r} as a rational") from exc


def parse_lattice(spec, where="lattice"):
    if not isinstance(spec, dict) or len(spec) != 1:
        raise ConfigError(f"{where}: expected one of gram / named / direct_sum")
    (key, val), = spec.items()
    if key == "gram":
        return lat.validate(val)
    if key == "named":
        if val == "E8":
            return lat.named("E8")
        if isinstance(val, dict) and len(val) == 1:
            (name, param), = val.items()
            if name in ("A", "rank1"):
                return lat.named(name, param)
        raise ConfigError(f"{where}.named: unknown lattice {val!r}")
    if key == "direct_sum":
        if not isinstance(val, list):
            raise ConfigError(f"{where}.direct_sum: expected a list")
        parts = [parse_lattice(s, f"{where}.direct_sum[{i}]") for i, s in enumerate(val)]
        return lat.direct_sum(parts)
    raise ConfigError(f"{where}: unknown key {key!r}")


def parse_vector(L, raw, where, basis="L"):
    if not isinstance(raw, list) or len(raw) != L.rank:
        raise ConfigError(f"{where}: expected a list of {L.rank} rationals")
    v = [_parse_rational(x, f"{where}[{i}]") for i, x in enumerate(raw)]
    if basis == "dual":
        rows = lat.dual_basis(L)
        v = [sum(v[i] * rows[i][j] for i in range(L.rank)) for j in range(L.rank)]
    elif basis != "L":
        raise ConfigError(f"{where}: basis must be 'L' or 'dual', got {basis!r}")
    return tuple(v)


def parse_job(cfg):
    if "lattice" not in cfg:
        raise ConfigError("config: missing field 'lattice'")
    L = parse_lattice(cfg["lattice"])
    shift = cfg.get("shift", {})
    basis = shift.get("basis", "L")
    a = parse_vector(L, shift.get("real", [0] * L.rank), "shift.real", basis)
    b = parse_vector(L, shift["imag"], "shift.imag", basis) if "imag" in shift else None
    return vs.make(L, a, b)


def default_order(V, steps=5):
    low = lat.min_norm_in_coset(V.lattice, V.shift_real) / 2 - V.shift_norm() / 2
    return low - V.central_charge / 24 + steps


def _lattice_json(L):
    return {"name": L.name, "rank": L.rank, "det": L.det, "gram": [list(r) for r in L.gram]}


def _charge_json(c):
    return c.to_json() if isinstance(c, vs.GradeValue) else rat(c)


def _spectrum_json(spec):
    return [{"grade": g.to_json(), "dim": d} for g, d in spec]


def analyze(V, order=None, W=2):
    out = {
        "lattice": _lattice_json(V.lattice),
        "shift": {"real": [rat(x) for x in V.shift_real], "imag": [rat(x) for x in V.shift_imag]},
        "central_charge": _charge_json(V.central_charge),
        "grading_denominator": V.grading_denominator,
        "z_graded": V.is_voa,
    }
    if not V.is_real:
        out["spectrum"] = _spectrum_json(vs.spectrum(V, W))
        out["truncation_violations"] = _spectrum_json(vs.truncation_violations(V))
        out["verified"] = True
        return out
    order = Fraction(order) if order is not None else default_order(V)
    direct = vs.partition_function_direct(V, order)
    theta = vs.partition_function_theta(V, order)
    equal = eq_to_order(direct, theta, order)
    out["spectrum"] = _spectrum_json(vs.spectrum(V, W))
    out["partition_function"] = {"direct": direct.to_json(), "theta": theta.to_json(), "equal": equal}
    if V.is_voa:
        out["self_dual"] = vs.is_self_dual(V)
        out["type"] = vs.classify(V).to_json()
    out["verified"] = equal
    return out


def family(cfg):
    if "same_Z" in cfg:
        f = cfg["same_Z"]
        L = parse_lattice(f.get("lattice"), "same_Z.lattice")
        lam = parse_vector(L, f.get("lambda", [0] * L.rank), "same_Z.lambda", f.get("basis", "L"))
        direction = parse_vector(L, f["direction"], "same_Z.direction") if "direction" in f else None
        members = vs.same_Z_family(L, lam, int(f.get("count", 3)), direction)
        order = _parse_rational(f.get("order", 10), "same_Z.order")
        series = [vs.partition_function_theta(V, order) for V in members]
        equal = all(eq_to_order(series[0], s, order) for s in series[1:])
        charges = [V.central_charge for V in members]
        distinct = len(set(charges)) == len(charges)
        return {
            "kind": "same_Z",
            "members": [{"shift": [rat(x) for x in V.shift_real],
                         "shift_norm": rat(V.shift_norm()),
                         "central_charge": rat(V.central_charge),
                         "leading": [rat(x) for x in s.leading()]}
                        for V, s in zip(members, series)],
            "partition_functions_equal": equal,
            "central_charges_distinct": distinct,
            "verified": equal and distinct,
        }
    if "holomorphic" in cfg:
        f = cfg["holomorphic"]
        c = int(f["c"])
        lo, hi = f.get("r_range", [1, 2])
        members = []
        for r in range(int(lo), int(hi) + 1):
            V = vs.holomorphic_family(c, r)
            lead_exp = Fraction(-r) - Fraction(c, 24)
            order = lead_exp + int(f.get("terms", 1))
            z = vs.partition_function_theta(V, order)
            members.append({"r": r, "rank": V.rank, "shift_norm": rat(V.shift_norm()),
                            "central_charge": rat(V.central_charge),
                            "leading": [rat(x) for x in z.leading()]})
        leads = [m["leading"][0] for m in members]
        distinct = len(set(leads)) == len(leads)
        return {"kind": "holomorphic", "c": c, "members": members,
                "leading_exponents_distinct": distinct, "verified": distinct}
    raise ConfigError("family config needs 'same_Z' or 'holomorphic'")


# -- verification suites ------------------------------------------------------

def rank1_battery(ns=(1, 2, 3)):
    for N in ns:
        L = lat.named("rank1", 2 * N)
        for k in range(2 * N + 1):
            yield f"rank1({2 * N}) k={k}", vs.make(L, [Fraction(k, 2 * N)])


def _check(name, passed, witness=""):
    return {"check": name, "passed": bool(passed), "witness": witness}


def suite_prop32(targets, steps=10):
    out = []
    for name, V in targets:
        low = lat.min_norm_in_coset(V.lattice, V.shift_real) / 2 - V.shift_norm() / 2
        order = low - V.central_charge / 24 + steps
        d = vs.partition_function_direct(V, order)
        t = vs.partition_function_theta(V, order)
        out.append(_check(f"prop32 {name}", eq_to_order(d, t, order), f"order {rat(order)}"))
    return out


def suite_virasoro(targets, W=3):
    out = []
    for name, V in targets:
        bad = [(m, n) for m in range(-2, 3) for n in range(-2, 3) if not fock.bracket_check(V, m, n, W)]
        out.append(_check(f"virasoro {name}", not bad,
                          f"c_h = {rat(V.central_charge)}" + (f"; failing (m, n) {bad}" if bad else "")))
    return out


def suite_lemma51(targets):
    out = []
    for name, V in targets:
        codim = fock.l1_codimension(V)
        sd = vs.is_self_dual(V)
        out.append(_check(f"lemma51 {name}", codim in (0, 1) and (codim == 1) == sd,
                          f"codim {codim}, self_dual {sd}"))
    return out


def suite_lemma52(targets):
    out = []
    for name, V in targets:
        d0, d1 = vs.weight_space_dim(V, 0), vs.weight_space_dim(V, -1)
        out.append(_check(f"lemma52 {name}", d0 > d1, f"dim V0 = {d0}, dim V-1 = {d1}"))
    return out


def suite_delta(targets):
    out = []
    for name, V in targets:
        L, h = V.lattice, V.shift_real
        got = fock.delta_apply(L, tuple(-x for x in h), fock.conformal_vector(L))
        vac = fock.FockVector.basis_vector(fock.vacuum(L.rank))
        expect = {Fraction(0): fock.conformal_vector(L),
                  Fraction(-1): fock.weight_one_state(L, h) * -1,
                  Fraction(-2): vac * (V.shift_norm() / 2)}
        expect = {e: w for e, w in expect.items() if w}
        out.append(_check(f"delta {name}", got == expect, f"{len(got)} Laurent terms"))
    return out


def suite_prop62(targets, steps=3):
    out = []
    for name, V in targets:
        low = lat.min_norm_in_coset(V.lattice, V.shift_real) / 2 - V.shift_norm() / 2
        order = low - V.central_charge / 24 + steps
        out.append(_check(f"prop62 {name}", fock.trace_identity_check(V, order), f"order {rat(order)}"))
    return out


def suite_cgraded(targets):
    out = []
    for name, V in targets:
        viol = vs.truncation_violations(V)
        wider = vs.truncation_violations(V, radius_scale=3)
        ok = viol == wider and all(g.re < abs(g.im) for g, _ in viol)
        if V.is_real:
            neg = [(g, d) for g, d in vs.spectrum(V, 0) if g.re < 0]
            ok = ok and viol == neg
        out.append(_check(f"cgraded {name}", ok,
                          "violations: " + ", ".join(f"{g} (dim {d})" for g, d in viol)))
    return out


def _default_targets(suite):
    if suite == "cgraded":
        L = lat.named("rank1", 2)
        return [("rank1(2) h=(1+i)a/2", vs.make(L, ["1/2"], ["1/2"])),
                ("rank1(4) k=4", vs.make(lat.named("rank1", 4), [1]))]
    if suite == "virasoro":
        L = lat.named("rank1", 2)
        return [(f"rank1(2) h={h}a", vs.make(L, [h])) for h in ("0", "1/2", "1")]
    if suite in ("delta", "prop62"):
        rng = random.Random(7)
        out = []
        for L in (lat.named("rank1", 2), lat.named("rank1", 4), lat.named("A", 2)):
            h = [Fraction(rng.choice((-3, -2, -1, 1, 2, 3)), rng.randint(1, 4)) for _ in range(L.rank)]
            out.append((f"{L.name} h={[rat(x) for x in h]}", vs.make(L, h)))
        return out
    return list(rank1_battery())


SUITE_FUNCS = {
    "prop32": suite_prop32, "virasoro": suite_virasoro, "lemma51": suite_lemma51,
    "lemma52": suite_lemma52, "delta": suite_delta, "prop62": suite_prop62,
    "cgraded": suite_cgraded,
}


def verify(suite, V=None):
    names = SUITES if suite == "all" else (suite,)
    results = []
    for s in names:
        targets = [("config", V)] if V is not None else _default_targets(s)
        results.extend(SUITE_FUNCS[s](targets))
    return {"suite": suite, "results": results, "verified": all(r["passed"] for r in results)}


# -- output --------------------------------------------------------------------

def _table(report):
    lines = []
    if "type" in report:
        t = report["type"]
        lines.append(f"central charge: {report['central_charge']}")
        lines.append(f"{'codim L(1)V1':>14} {'dim V-1':>8} {'dim V0':>7} {'Type':>6}")
        lines.append(f"{t['codim_L1V1']:>14} {t['dim_Vm1']:>8} {t['dim_V0']:>7} {t['label']:>6}")
    if "spectrum" in report:
        lines.append("spectrum:")
        for row in report["spectrum"]:
            g = row["grade"]
            lines.append(f"  {g['re']:>8} {g['im']:>8}  dim {row['dim']}")
    if "partition_function" in report:
        pf = report["partition_function"]
        lines.append(f"partition function (order {pf['theta']['order']}), methods agree: {pf['equal']}")
        for e, c in pf["theta"]["terms"]:
            lines.append(f"  {c} q^({e})")
    if "results" in report:
        for r in report["results"]:
            lines.append(f"{'PASS' if r['passed'] else 'FAIL'}  {r['check']}  {r['witness']}")
    if "members" in report:
        for m in report["members"]:
            lines.append("  " + ", ".join(f"{k}={v}" for k, v in m.items()))
    if "series" in report:
        for e, c in report["series"]["terms"]:
            lines.append(f"  {c} q^({e})")
    return "\n".join(lines)


def build_parser():
    p = argparse.ArgumentParser(prog="shiftvoa", description="Shifted lattice vertex operator algebras")
    p.add_argument("command", choices=["analyze", "family", "verify", "theta", "spectrum"])
    p.add_argument("--config", help="path to a UTF-8 JSON job file")
    p.add_argument("--order", help="truncation order p/q")
    p.add_argument("--suite", default="all", choices=SUITES + ("all",))
    p.add_argument("--W", default="2", help="weight bound for spectra")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--table", dest="fmt", action="store_const", const="table")
    p.set_defaults(fmt="json")
    return p


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from exc


def run(argv=None):
    args = build_parser().parse_args(argv)
    cfg = _load(args.config) if args.config else None
    order = _parse_rational(args.order, "--order") if args.order else None
    if cfg is not None and order is None and "order" in cfg:
        order = _parse_rational(cfg["order"], "order")
    W = _parse_rational(args.W, "--W")
    if args.command in ("analyze", "theta", "spectrum", "family") and cfg is None:
        raise ConfigError(f"{args.command} needs --config")
    if args.command == "analyze":
        report = analyze(parse_job(cfg), order, W)
    elif args.command == "spectrum":
        V = parse_job(cfg)
        report = {"spectrum": _spectrum_json(vs.spectrum(V, W)), "verified": True}
    elif args.command == "theta":
        V = parse_job(cfg)
        order = order if order is not None else Fraction(5)
        report = {"series": theta_coset(V.lattice, V.shift_real, order).to_json(), "verified": True}
    elif args.command == "family":
        report = family(cfg)
    else:
        report = verify(args.suite, parse_job(cfg) if cfg else None)
    return report, args.fmt


def main(argv=None):
    try:
        report, fmt = run(argv)
    except TruncationTooSmall as exc:
        print(f"error: {exc} (minimal sufficient bound {exc.minimal_bound})", file=sys.stderr)
        return 2
    except ShiftVOAError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if fmt == "table":
        print(_table(report))
    else:
        print(json.dumps(report, indent=2, sort_keys=True))
    return 0 if report.get("verified", True) else 1


if __name__ == "__main__":
    sys.exit(main())
