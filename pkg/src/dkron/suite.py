"""The acceptance battery: one function per criterion, shared by the CLI and the tests."""
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import cm_heights as cm
from .algebra_core import GroundField, LogExact, LogPoly, Poly, RatFunc, mat_det, mat_inv, mat_mul
from .drinfeld import norm_compat_check
from .eisenstein import (analyze, eis_exact, functional_equation_check, kronecker_check,
                         mirabolic_series, second_limit_check)
from .errors import DkronError
from .lattices import SchwartzData, lattice_from_point
from .period_domain import (PointH, VertexLabel, building_map, coefficient_identity_sides, j_factor, mobius_act,
                            standard_point, vertex_point)
from .siegel import lattice_jacobi_check, lerch_check, level_compat_check


@dataclass
class CriterionResult:
    number: int
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self):
        return f"criterion {self.number:2d} {'PASS' if self.ok else 'FAIL'}  {self.name}  ({self.seconds:.1f}s)"

    def to_json(self):
        return {"criterion": self.number, "name": self.name, "ok": self.ok,
                "seconds": round(self.seconds, 2), "detail": _jsonable(self.detail)}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return str(x)


# instance generators

def _rf(p, c):
    return RatFunc(Poly(p, tuple(c)))


def kronecker_points(q, r):
    """Vertex points, shifted points and one point with a ramified coordinate."""
    gf = GroundField(q)
    if r == 1:
        z = PointH(1, [], gf)
        T = RatFunc.T(q)
        return [(z, Y) for Y in (None, [[T]], [[T.inv()]], [[T + RatFunc.const(q, 1)]])]
    pts = []
    if r == 2:
        texts = [["zeta"], ["zeta*T"], ["zeta*T^2 + 1"], ["zeta + 1/T"], ["zeta*T^(1/2)"],
                 ["zeta^3*T^(3/2) + T"]]
    else:
        texts = [["zeta^2", "zeta"], ["zeta^2*T^2", "zeta*T"], ["zeta^2*T^(2/3)", "zeta*T^(1/3)"],
                 ["zeta^2 + T", "zeta*T + 1"]]
    for t in texts:
        pts.append((PointH.parse(gf, r, t), None))
    if r == 2:
        lab = VertexLabel((1, 0), {(0, 1): {-1: 1}})
        pts.append((vertex_point(lab, gf), None))
    return pts


def torsion_points(L, level, limit):
    """Nonzero mu-coordinates of L in (1/level)L/L."""
    out = []
    for x in L.torsion_reps(level):
        if any(x):
            out.append(x)
        if len(out) >= limit:
            break
    return out


def random_point(rng, q, r):
    gf = GroundField(q)
    n = q ** r
    for _ in range(50):
        texts = []
        for i in range(r - 1):
            a = rng.randrange(1, n - 1)
            e = rng.choice([1, 1, 2, 3]) if r == 2 else rng.choice([1, 3])
            k = rng.randrange(-2, 5)
            tail = rng.choice(["", " + 1", " + T", " + 2*T^2", " + 1/T"])
            texts.append(f"zeta^{a}*T^({k}/{e}){tail}")
        try:
            z = PointH.parse(gf, r, texts)
            z.profile()
            return z
        except DkronError:
            continue
    raise DkronError("could not sample a point")


def random_vector(rng, q, r):
    while True:
        v = [_rf(q, [rng.randrange(q) for _ in range(rng.randrange(0, 3))]) for _ in range(r)]
        if any(v):
            return v


def random_gamma(rng, q):
    while True:
        ent = []
        for _ in range(4):
            num = _rf(q, [rng.randrange(q) for _ in range(rng.randrange(0, 3))])
            den = RatFunc.T(q) if rng.random() < 0.3 else RatFunc.const(q, 1)
            ent.append(num / den)
        g = [ent[:2], ent[2:]]
        if mat_det(g):
            return g


# criteria

def c01_kronecker(qs=(3, 5)):
    rows, ok = [], True
    anchor = None
    for q in qs:
        for r in (1, 2, 3):
            for z, Y in kronecker_points(q, r):
                L = lattice_from_point(z, Y)
                k = kronecker_check(L)
                good = k["ok"] and k["lattice_form"]["ok"]
                ok &= good
                rows.append({"q": q, "r": r, "z": str(z), "deriv0": k["deriv0"], "rhs": k["rhs"], "ok": good})
                if q == 3 and r == 1 and Y is None:
                    anchor = k["deriv0"]
    if 3 in qs:
        ok &= anchor == LogExact(0, Fraction(-3, 2))
    return ok and len(rows) >= 20, {"instances": len(rows), "anchor_q3_r1": anchor, "rows": rows}


def c02_second_limit(qs=(3, 5)):
    rows, ok = [], True
    for q in qs:
        T = Poly.T(q)
        for r in (1, 2):
            for z, Y in kronecker_points(q, r)[:3]:
                L = lattice_from_point(z, Y)
                for level in (T, T + Poly(q, (1,))):
                    for w in torsion_points(L, level, 3 if r == 2 else 2):
                        a = second_limit_check(L, w)
                        b = lattice_jacobi_check(L, w)
                        good = a["ok"] and b["ok"]
                        ok &= good
                        rows.append({"q": q, "r": r, "level": str(level), "w": [str(x) for x in w],
                                     "deriv0": a["deriv0"], "ok": good})
    return ok and len(rows) >= 10, {"instances": len(rows), "rows": rows}


def c03_values_at_zero(qs=(3, 5)):
    bad = []
    n = 0
    for q in qs:
        T = Poly.T(q)
        for r in (1, 2, 3):
            for z, Y in kronecker_points(q, r):
                L = lattice_from_point(z, Y)
                n += 1
                if analyze(eis_exact(L)).value0 != LogExact(-1):
                    bad.append(str(z))
                if r <= 2:
                    for w in torsion_points(L, T, 2):
                        n += 1
                        if second_limit_check(L, w)["value0"] != LogExact(0):
                            bad.append((str(z), [str(x) for x in w]))
    return not bad, {"instances": n, "failures": bad}


def c04_a_independence(qs=(3, 5)):
    rows, ok = [], True
    svals = [Fraction(-1), Fraction(1, 2), Fraction(2), Fraction(3)]
    for q in qs:
        T = Poly.T(q)
        auxes = [T, T * T, T + Poly(q, (1,))]
        for r in (1, 2):
            for z, Y in kronecker_points(q, r)[:4 if q == 3 else 2]:
                L = lattice_from_point(z, Y)
                Es = [eis_exact(L, a) for a in auxes]
                good = all(Es[0].agrees_at(E, q, s) for E in Es[1:] for s in svals)
                ident = all(Es[0] == E for E in Es[1:])
                ok &= good and ident
                rows.append({"q": q, "r": r, "z": str(z), "sampled": good, "identity": ident})
    return ok and len(rows) >= 10, {"instances": len(rows), "rows": rows}


def c05_coefficient_identity(seed=0, n=50):
    rng = random.Random(seed)
    bad, count = [], 0
    while count < n:
        q = rng.choice([3, 5])
        r = rng.choice([2, 2, 3])
        z = random_point(rng, q, r)
        x = random_vector(rng, q, r)
        try:
            lhs, rhs = coefficient_identity_sides(z, x)
        except DkronError:
            continue
        count += 1
        if lhs != rhs:
            bad.append((str(z), [str(v) for v in x]))
    return not bad, {"pairs": count, "failures": bad}


def c06_transformation_laws(seed=1, n=50):
    rng = random.Random(seed)
    bad, count = [], 0
    while count < n:
        q = rng.choice([3, 5])
        z = random_point(rng, q, 2)
        g = random_gamma(rng, q)
        try:
            gz = mobius_act(g, z)
            j = j_factor(g, z)
            gz.profile()
        except DkronError:
            continue
        count += 1
        im_ok = gz.profile().im_total == z.profile().im_total + mat_det(g).deg - 2 * j.log_abs()
        Y = [[RatFunc.T(q), RatFunc.const(q, 1)], [RatFunc.const(q, 0), RatFunc.const(q, 1)]]
        L1 = lattice_from_point(gz, mat_mul(Y, mat_inv(g)))
        L0 = lattice_from_point(z, Y)
        ji = j.inv()
        lat_ok = all((b1 - b0 * ji).is_known_zero() for b1, b0 in zip(L1.basis, L0.basis))
        lat_ok &= L1.norms == tuple(n_ - j.log_abs() for n_ in L0.norms)
        if not (im_ok and lat_ok):
            bad.append({"z": str(z), "gamma": [[str(a) for a in row] for row in g],
                        "im": im_ok, "lattice": lat_ok})
    return not bad, {"gammas": count, "failures": bad}


def c07_norm_compat(qs=(3, 5)):
    rows, ok = [], True
    for q in qs:
        gf = GroundField(q)
        T = RatFunc.T(q)
        one, zero = RatFunc.const(q, 1), RatFunc.const(q, 0)
        for txt in (["zeta"], ["zeta*T^(1/2)"], ["zeta*T + 1"]):
            z = PointH.parse(gf, 2, txt)
            L = lattice_from_point(z)
            for name, S in (("index q", [[one, zero], [zero, T]]),
                            ("index q^2", [[T, zero], [zero, T]]),
                            ("index q^2 skew", [[T + one, one], [zero, T]])):
                c = norm_compat_check(L, L.sublattice(S))
                ok &= c["ok"]
                rows.append({"q": q, "z": txt[0], "sub": name, "index": c["index"], "ok": c["ok"]})
            D = SchwartzData(2, q, {(T.inv(), zero): 1, (zero, T.inv()): -1, (zero, zero): 3})
            lv = level_compat_check(z, D, [[T, zero], [zero, one]])
            ok &= lv["ok"]
            rows.append({"q": q, "z": txt[0], "siegel refinement": lv["ok"]})
    return ok, {"rows": rows}


def _mirabolic_vertices(q):
    labs = [VertexLabel.standard(2), VertexLabel((1, 0), {}), VertexLabel((2, 0), {}),
            VertexLabel((1, 0), {(0, 1): {-1: 1}}), VertexLabel((-1, 0), {})]
    gf = GroundField(q)
    return [(lab, vertex_point(lab, gf)) for lab in labs]


def c08_mirabolic(qs=(3,)):
    rows, ok = [], True
    for q in qs:
        T = RatFunc.T(q)
        zero = RatFunc.const(q, 0)
        T1 = T + RatFunc.const(q, 1)
        phis = {"1_A^2": SchwartzData.delta0(2, q),
                "balanced level T": SchwartzData(2, q, {(T.inv(), zero): 1, (zero, T.inv()): -1}),
                "balanced level T(T+1)": SchwartzData(2, q, {(T.inv(), zero): 1, (zero, T1.inv()): -1})}
        for lab, z in _mirabolic_vertices(q):
            for name, phi in phis.items():
                c = lerch_check(z, phi, averaged=True)
                ok &= c["ok"]
                rows.append({"q": q, "vertex": lab.to_json(q), "phi": name, "residue": c["residue"],
                             "constant": c["constant"], "eta": c["eta"], "ok": c["ok"]})
        # same building image, identical series
        gf = GroundField(q)
        z1, z2 = standard_point(gf, 2), PointH.parse(gf, 2, ["zeta + 1/T"])
        same = building_map(z1) == building_map(z2)
        phi = phis["balanced level T(T+1)"]
        ident = same and mirabolic_series(z1, phi) == mirabolic_series(z2, phi)
        ok &= ident
        rows.append({"q": q, "factors through building": ident})
    return ok, {"rows": rows}


ORDERS = [("T", "1"), ("T^3+T+2", "1"), ("2*T^2+1", "1"), ("T", "T"), ("T^3+T+2", "T"), ("2*T^2+1", "T")]


def _orders():
    return [cm.make_order(D, f, 3) for D, f in ORDERS]


def c09_colmez(cache=None):
    rows, ok = [], True
    hs = []
    for O in _orders():
        c = cm.taguchi_check(O)
        if cache is not None:
            cache[(str(O.D), str(O.f))] = c
        ok &= c["ok"]
        hs.append(c["h"])
        rows.append({"D": str(O.D), "f": str(O.f), "h": c["h"], "path_a": c["path_a"], "path_b": c["path_b"],
                     "ok": c["ok"]})
    ok &= max(hs) >= 2
    return ok, {"rows": rows}


def c10_zeta_at_zero(cache=None):
    rows, ok = [], True
    for O in _orders():
        c = (cache or {}).get((str(O.D), str(O.f))) or cm.taguchi_check(O)
        ok &= c["zeta0_ok"]
        rows.append({"D": str(O.D), "f": str(O.f), "zeta0": c["zeta0"], "h": c["h"], "ok": c["zeta0_ok"]})
    return ok, {"rows": rows}


def c11_curve_zeta():
    rows, ok = [], True
    for O in _orders():
        if not O.maximal:
            continue
        ek = cm.euler_kronecker(O)
        brute = cm.ideal_counts_brute(O, O.unit_ideal(), 3)
        counted = cm.ideal_counts(O, 3)
        good = ek["zeta_matches_curve"] and ek["functional_equation"] and ek["logder_ok"] and ek["height_ok"]
        good &= brute == counted
        ok &= good
        rows.append({"D": str(O.D), "gamma_K": ek["gamma"], "zeta=curve": ek["zeta_matches_curve"],
                     "functional equation": ek["functional_equation"], "log-derivative": ek["logder_ok"],
                     "height identity": ek["height_ok"], "brute counts": brute, "ok": good})
    return ok, {"rows": rows}


def c12_covolume():
    rows, ok = [], True
    anchor = None
    for O in _orders():
        c = cm.covolume_order(O)
        ok &= c["ok"]
        if str(O.D) == "T" and O.maximal:
            anchor = c["direct"]
        rows.append({"D": str(O.D), "f": str(O.f), **c})
    ok &= anchor == Fraction(1, 4)
    return ok, {"anchor_log3_DA": anchor, "rows": rows}


def c13_carlitz(qs=(3, 5)):
    rows, ok = [], True
    for q in qs:
        c = cm.carlitz_height(q)
        ok &= c["ok"]
        rows.append({"q": q, **c})
    return ok, {"rows": rows}


def c14_functional_equation(qs=(3, 5)):
    rows, ok = [], True
    for q in qs:
        T = RatFunc.T(q)
        for y in (RatFunc.const(q, 1), T, T.inv(), T + RatFunc.const(q, 1)):
            c = functional_equation_check(y, q)
            ok &= c["ok"]
            rows.append({"q": q, "y": str(y), "ok": c["ok"]})
    return ok, {"rows": rows}


CRITERIA = [
    (1, "Kronecker limit formula", c01_kronecker),
    (2, "second limit formula", c02_second_limit),
    (3, "values at s = 0", c03_values_at_zero),
    (4, "auxiliary a independence", c04_a_independence),
    (5, "building coefficient identity", c05_coefficient_identity),
    (6, "Im and lattice transformation laws", c06_transformation_laws),
    (7, "norm compatibilities", c07_norm_compat),
    (8, "mirabolic pole structure", c08_mirabolic),
    (9, "CM height dual path", c09_colmez),
    (10, "zeta at zero", c10_zeta_at_zero),
    (11, "curve zeta oracle", c11_curve_zeta),
    (12, "order covolume dual path", c12_covolume),
    (13, "Carlitz height", c13_carlitz),
    (14, "weak functional equation (stretch)", c14_functional_equation),
]

Q_AWARE = {1, 2, 3, 4, 7, 8, 13, 14}


def run_criterion(number, q=None, cache=None):
    num, name, fn = CRITERIA[number - 1]
    kw = {}
    if q is not None and num in Q_AWARE:
        kw["qs"] = (q,)
    if num in (9, 10):
        kw["cache"] = cache
    t0 = time.time()
    try:
        ok, detail = fn(**kw)
    except DkronError as e:
        ok, detail = False, {"error": f"{type(e).__name__}: {e}"}
    return CriterionResult(num, name, bool(ok), detail, time.time() - t0)


def run_suite(q=None, only=None):
    cache = {}
    out = []
    for num, _, _ in CRITERIA:
        if only and num not in only:
            continue
        if q is not None and q != 3 and num in (9, 10, 11, 12):
            continue
        out.append(run_criterion(num, q, cache))
    return out
