"""Closed forms of the non-holomorphic Eisenstein series and their data at s = 0."""
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .algebra_core import ExpPoly, ExpRat, LogExact, LogPoly, Poly, RatFunc, mat_det, mat_identity
from .algebra_core.polys import pgcd
from .cinfty import CInftyElem
from .drinfeld import discriminant_valuation, exp_valuation
from .errors import DkronError, OnLattice
from .lattices import lattice_from_point


@dataclass
class EisResult:
    series: ExpRat
    value0: LogExact
    deriv0: LogExact
    higher: list = field(default_factory=list)
    provenance: str = ""

    def to_json(self):
        return {"series": self.series.to_json(), "value0": self.value0.to_json(),
                "deriv0": self.deriv0.to_json(), "provenance": self.provenance}


def norm_exponent(L):
    """log_q of the factor raised to s: Im(z) for point lattices, D_A^r otherwise."""
    if L.provenance == "from-point" and L.point is not None:
        return L.point.profile().im_total
    return L.r * L.covolume()


def _as_poly(p, a):
    return a if isinstance(a, Poly) else Poly(p, (a,))


def _bracket_coords(L, x):
    """sum_{|lambda| <= |w|} |lambda - w|^{-rs} - sum_{0 != lambda, |lambda| <= |w|} |lambda|^{-rs}."""
    cache = L.__dict__.setdefault("_bracket_cache", {})
    from .drinfeld import _descriptor
    key = _descriptor(x)
    if key in cache:
        return cache[key]
    B = L.coords_norm(x)
    if B is None:
        raise OnLattice("w is a lattice point")
    r = L.r
    terms = {}
    for v, c in L.shell_distribution(x, B).items():
        if v is None:
            raise OnLattice("w is a lattice point")
        terms[r * v] = terms.get(r * v, 0) + c
    for v, c in L.norm_distribution(B).items():
        terms[r * v] = terms.get(r * v, 0) - c
    out = ExpPoly(terms)
    cache[key] = out
    return out


def _bracket_enum(L, w):
    if w.is_known_zero():
        raise OnLattice("w is zero")
    B = w.log_abs()
    r = L.r
    terms = {r * B: 1}
    for _, lam in L.enumerate_points(B, with_values=True):
        d = lam - w
        if d.is_known_zero():
            raise OnLattice("w coincides with a lattice point")
        v1, v2 = d.log_abs(), lam.log_abs()
        terms[r * v1] = terms.get(r * v1, 0) + 1
        terms[r * v2] = terms.get(r * v2, 0) - 1
    return ExpPoly(terms)


def bracket(L, w):
    if isinstance(w, CInftyElem):
        return _bracket_enum(L, w)
    return _bracket_coords(L, w)


def eis_exact(L, a=None):
    """E(s) = N^s / (|a|^{rs} - |a|^r) * sum over nonzero (1/a)L/L of the bracket."""
    p, r, q = L.p, L.r, L.q
    a = Poly.T(p) if a is None else _as_poly(p, a)
    if a.deg < 1:
        raise DkronError("a must be nonconstant")
    acc = ExpPoly()
    for x in L.torsion_reps(a):
        if any(x):
            acc = acc + _bracket_coords(L, x)
    pref = ExpPoly({-norm_exponent(L): 1})
    den = ExpPoly({-r * a.deg: 1, 0: -(q ** (r * a.deg))})
    return ExpRat(pref * acc, den)


def eis_jacobi_exact(L, w, a=None):
    """E(s) + N^s [ |w|^{-rs} + sum (|lambda - w|^{-rs} - |lambda|^{-rs}) ]."""
    E = eis_exact(L, a)
    pref = ExpPoly({-norm_exponent(L): 1})
    return E + ExpRat(pref * bracket(L, w))


def analyze(R, order=1, provenance=""):
    lau = R.laurent(max(order, 1))
    if lau.start < 0:
        raise DkronError("series has a pole at s = 0")
    c0 = lau.coeff(0).to_logexact()
    c1 = lau.coeff(1).to_logexact()
    higher = [lau.coeff(k) for k in range(order + 1)]
    return EisResult(R, c0, c1, higher, provenance)


def taylor_at_zero(E, n):
    """Taylor coefficients c_0..c_n of E at s = 0 (LogPoly in ln q)."""
    lau = E.laurent(n)
    return [lau.coeff(k) for k in range(n + 1)]


# limit formulas

def kronecker_rhs(L):
    """-ln N - (r/(q^r-1)) ln|Delta| in ln q units."""
    q, r = L.q, L.r
    d = discriminant_valuation(L)
    return LogExact(0, -norm_exponent(L) - Fraction(r, q ** r - 1) * d)


def kronecker_check(L, a=None):
    lhs = analyze(eis_exact(L, a), 1)
    rhs = kronecker_rhs(L)
    q, r = L.q, L.r
    # lattice-normalized form: derivative of E(L,s) = (D_A^r/N)^s E^Y(z,s)
    shift = ExpPoly({norm_exponent(L) - r * L.covolume(): 1})
    lat = analyze(eis_exact(L, a) * shift, 1)
    d = discriminant_valuation(L, check=False)
    lat_rhs = LogExact(0, -r * (L.covolume() + Fraction(d, q ** r - 1)))
    return {"value0": lhs.value0, "deriv0": lhs.deriv0, "rhs": rhs,
            "ok": lhs.value0 == LogExact(-1) and lhs.deriv0 == rhs,
            "lattice_form": {"deriv0": lat.deriv0, "rhs": lat_rhs, "ok": lat.deriv0 == lat_rhs}}


def second_limit_check(L, w, a=None):
    """Jacobi-type series: value 0 at s = 0 and the exp-valuation derivative."""
    q, r = L.q, L.r
    res = analyze(eis_jacobi_exact(L, w, a), 1)
    d = discriminant_valuation(L, check=False)
    ev = exp_valuation(L, w)
    rhs = LogExact(0, -Fraction(r, q ** r - 1) * d - r * ev)
    # lattice-normalized derivative: shift by (D_A^r/N)^s
    shift = ExpPoly({norm_exponent(L) - r * L.covolume(): 1})
    lat = analyze(eis_jacobi_exact(L, w, a) * shift, 1)
    return {"value0": res.value0, "deriv0": res.deriv0, "rhs": rhs,
            "ok": res.value0 == LogExact(0) and res.deriv0 == rhs and lat.deriv0 == rhs}


def stieltjes_rhs(L, a, n):
    """(-r)^n sum_{w} [ln^n|w| + sum (ln^n|lambda-w| - ln^n|lambda|)] over L/aL, lambda in aL."""
    a = _as_poly(L.p, a)
    r = L.r
    acc = Fraction(0)
    da = a.deg
    for x in L.torsion_reps(a):
        if not any(x):
            continue
        B = L.coords_norm(x)
        for v, c in L.shell_distribution(x, B).items():
            acc += c * (v + da) ** n
        for v, c in L.norm_distribution(B).items():
            acc -= c * (v + da) ** n
    return LogPoly({n: (-r) ** n * acc})


def stieltjes_lhs(L, a, n):
    """n-th derivative at 0 of ((1 - |a|^{r(1-s)})/N^s) E(s), by the product rule."""
    a = _as_poly(L.p, a)
    q, r = L.q, L.r
    E = eis_exact(L, a)
    coeffs = taylor_at_zero(E, n)
    N = norm_exponent(L)
    A = q ** (r * a.deg)
    tot = LogPoly()
    for m in range(n + 1):
        f = LogPoly({m: N ** m}) - LogPoly({m: A * (N + r * a.deg) ** m})
        deriv = coeffs[n - m] * factorial(n - m)
        tot = tot + f * deriv * (comb(n, m) * (-1) ** m)
    return tot


def stieltjes_direct(L, a, n):
    a = _as_poly(L.p, a)
    q, r = L.q, L.r
    E = eis_exact(L, a)
    fac = ExpPoly({norm_exponent(L): 1}) * ExpPoly({0: 1, r * a.deg: -(q ** (r * a.deg))})
    return taylor_at_zero(E * fac, n)[n] * factorial(n)


def stieltjes_check(L, a, n):
    lhs = stieltjes_lhs(L, a, n)
    rhs = stieltjes_rhs(L, a, n)
    direct = stieltjes_direct(L, a, n)
    return {"lhs": lhs, "rhs": rhs, "direct": direct, "ok": lhs == rhs == direct}


# Schwartz data and finite adeles

def _det_deg(g):
    return mat_det(g).deg


def eis_schwartz(z, g, phi, a=None):
    """E((z, g), s; phi) = |det g|^s [D'(0) E^{Y'}(z,s) + sum D'(alpha) E^{Y'}(z, alpha_z, s)],
    with D' = rho(g) D living on k^r/(Y g^{-1})."""
    p = z.gf.p
    r = z.r
    if g is None:
        g = mat_identity(p, r)
    phi2 = phi.act(g)
    L = lattice_from_point(z, phi2.Y)
    E = eis_exact(L, a)
    pref = ExpPoly({-norm_exponent(L): 1})
    acc = ExpPoly()
    for beta, w in phi2.nonzero_support():
        acc = acc + bracket(L, L.from_basis_coords(beta)) * w
    # D(0) E + sum_beta D(beta) (E + N^s bracket)
    tot = E * phi2.mu + ExpRat(pref * acc)
    # |det g|_{A^inf}^s = q^{-(deg det g) s}
    return tot * ExpPoly({_det_deg(g): 1})


def mirabolic_series(z, phi, g=None, a=None):
    """E^inf(g, s; phi) = E(z_A, s; phi) / (1 - q^{-rs}) at a point z over the vertex."""
    r = z.r
    E = eis_schwartz(z, g, phi, a)
    return E / ExpPoly({0: 1, r: -1})


def units_mod(p, m):
    """Representatives in A of (A/m)^x."""
    from .lattices import _polys_lex
    if m.deg <= 0:
        return [Poly(p, (1,))]
    return [c for c in _polys_lex(p, m.deg - 1) if c and pgcd(c, m).deg == 0]


def averaged_mirabolic(z, phi, g=None, a=None):
    """Trivial-character integral: vol * mean over (A/m)^x of E^inf(g a; phi), vol = 1/(q-1)."""
    q = z.gf.p
    reps = units_mod(q, phi.level)
    tot = None
    for u in reps:
        E = mirabolic_series(z, phi.scaled_by(u), g, a)
        tot = E if tot is None else tot + E
    return tot * Fraction(1, (q - 1) * len(reps))


def mirabolic_vertex(label, phi, g=None, a=None, averaged=False):
    """Laurent data at s = 0 of E^inf at a vertex (label) or at an explicit point."""
    from .period_domain import PointH, vertex_point
    if isinstance(label, PointH):
        z = label
    else:
        from .algebra_core import GroundField
        z = vertex_point(label, GroundField(phi.p))
    R = averaged_mirabolic(z, phi, g, a) if averaged else mirabolic_series(z, phi, g, a)
    lau = R.laurent(0)
    return {"series": R, "residue": lau.coeff(-1), "constant": lau.coeff(0), "point": z}


def functional_equation_check(y=None, p=3):
    """Rank-1 weak functional equation for phi = 1_{yA}: E~(s) = q^{2s-1} vol E~(1-s; 1_{y^{-1}A})."""
    from .algebra_core import GroundField
    from .period_domain import PointH
    gf = GroundField(p)
    z = PointH(1, [], gf)
    y = RatFunc.const(p, 1) if y is None else y
    L = lattice_from_point(z, [[y]])
    Ld = lattice_from_point(z, [[y.inv()]])
    tilde = ExpPoly({0: 1, 1: -1})
    lhs = eis_exact(L) / tilde
    rhs_base = eis_exact(Ld) / tilde
    # vol(y A-hat) = q^{-deg y}; conductor delta_inf = -2 gives q^{-r delta (s - 1/2)} = q^{2s-1}
    rhs = rhs_base.substitute(p, -1, 1) * ExpPoly({-2: Fraction(1, p)}) * Fraction(p) ** (-y.deg)
    return {"lhs": lhs, "rhs": rhs, "ok": lhs == rhs}
