"""Exponential functions of lattices, discriminant valuations and Drinfeld module coefficients."""
from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .algebra_core import Poly, RatFunc
from .cinfty import CInftyElem
from .errors import ConsistencyFailure, DkronError, OnLattice


def _descriptor(x):
    out = []
    for xi in x:
        if not xi:
            out.append((None, None))
            continue
        P, f = xi.polypart(), xi.fracpart()
        out.append((P.deg if P else None, f.deg if f else None))
    return tuple(out)


def exp_valuation(L, w):
    """log_q |exp_L(w)|.

    w is either a list of mu-coordinates (exact shell counting) or a CInftyElem
    (explicit enumeration of the lattice points of norm <= |w|).
    """
    if isinstance(w, CInftyElem):
        return _exp_valuation_enum(L, w)
    cache = L.__dict__.setdefault("_expval_cache", {})
    key = _descriptor(w)
    if key in cache:
        return cache[key]
    B = L.coords_norm(w)
    if B is None:
        raise OnLattice("w is a lattice point")
    dist = L.shell_distribution(w, B)
    if None in dist:
        raise OnLattice("w is a lattice point")
    s1 = sum((v * c for v, c in dist.items()), Fraction(0))
    s2 = sum((v * c for v, c in L.norm_distribution(B).items()), Fraction(0))
    cache[key] = s1 - s2
    return s1 - s2


def _exp_valuation_enum(L, w):
    if w.is_known_zero():
        raise OnLattice("w is zero")
    B = w.log_abs()
    acc = B
    for _, lam in L.enumerate_points(B, with_values=True):
        d = lam - w
        if d.is_known_zero():
            raise OnLattice("w coincides with a lattice point at this precision")
        acc += d.log_abs() - lam.log_abs()
    return acc


def exp_value(L, w, Bcut):
    """w * prod_{0 < |lambda| <= q^Bcut} (1 - w/lambda), with the tail folded into prec."""
    if not isinstance(w, CInftyElem):
        w = L.value(w)
    acc = w
    for _, lam in L.enumerate_points(Bcut, with_values=True):
        acc = acc * (CInftyElem.const(lam.F, 1) - w / lam)
    # each omitted factor is 1 + eps with ord(eps) > ord(w) + Bcut
    bound = acc.ord() + w.ord() + Fraction(Bcut)
    units = ceil(bound * acc.e)
    prec = units if acc.prec is None else min(acc.prec, units)
    return CInftyElem(acc.F, acc.e, acc.terms, prec)


def _as_poly(p, a):
    return a if isinstance(a, Poly) else Poly(p, (a,))


def discriminant_a_valuation(L, a):
    """log_q |Delta_a| = deg a - sum of exp valuations over nonzero a-torsion."""
    a = _as_poly(L.p, a)
    if a.deg < 1:
        raise DkronError("need deg a >= 1")
    tot = Fraction(a.deg)
    for x in L.torsion_reps(a):
        if any(x):
            tot -= exp_valuation(L, x)
    return tot


def discriminant_valuation(L, check=True):
    """log_q |Delta| with Delta = Delta_T; optionally checked against a = T^2."""
    p, r, q = L.p, L.r, L.q
    cache = L.__dict__.setdefault("_disc", {})
    if "T" not in cache:
        cache["T"] = discriminant_a_valuation(L, Poly.T(p))
    d = cache["T"]
    if check and "T2" not in cache:
        d2 = discriminant_a_valuation(L, Poly.T(p) ** 2)
        cache["T2"] = d2
        if (q ** (2 * r) - 1) * d != (q ** r - 1) * d2:
            raise ConsistencyFailure(f"Delta_T and Delta_T^2 disagree: {d} vs {d2}")
    return d


def norm_compat_check(L, sub):
    """Both sides of Delta(L) = [L:L'] Delta(L') + (q^r-1) sum_{0 != u in L/L'} expval_{L'}(u)."""
    q, r = L.q, L.r
    lhs = discriminant_valuation(L, check=False)
    idx = sub.index_in_parent()
    acc = Fraction(0)
    for y in sub.quotient_reps():
        if any(y):
            acc += exp_valuation(sub, sub.to_child_coords(y))
    rhs = idx * discriminant_valuation(sub, check=False) + (q ** r - 1) * acc
    return {"lhs": lhs, "rhs": rhs, "index": idx, "ok": lhs == rhs}


@dataclass
class DrinfeldCoeffs:
    a: Poly
    coeffs: list   # l_0..l_{r deg a} as CInftyElem
    residual_free: bool

    def top_valuation(self):
        return self.coeffs[-1].log_abs()


def drinfeld_coeffs(L, a, Bcut=None):
    """rho_a(x) = a x prod_{0 != u in a^{-1}L/L} (1 - x/e_L(u)), expanded in x."""
    p = L.p
    a = _as_poly(p, a)
    if a.deg < 1:
        raise DkronError("need deg a >= 1")
    if Bcut is None:
        Bcut = max(L.norms) + 2
    F = None
    e_vals = []
    for x in L.torsion_reps(a):
        if any(x):
            e = exp_value(L, x, Bcut)
            e_vals.append(e)
    xs = CInftyElem.unify(*(e_vals + [CInftyElem.from_ratfunc(RatFunc(a), L.F)]))
    ac = xs[-1]
    F = ac.F
    # polynomial in x: coefficient list over CInftyElem, starting at x^1
    poly = [ac]
    for e in xs[:-1]:
        ie = e.inv()
        new = [CInftyElem.zero(F)] * (len(poly) + 1)
        for i, c in enumerate(poly):
            new[i] = new[i] + c
            new[i + 1] = new[i + 1] - c * ie
        poly = new
    n = L.r * a.deg
    coeffs = []
    clean = True
    for k, c in enumerate(poly):
        deg = k + 1
        j = _qlog(deg, p)
        if j is None:
            if c.terms:
                clean = False
            continue
        coeffs.append(c)
    if len(coeffs) != n + 1:
        raise DkronError("unexpected degree of rho_a")
    return DrinfeldCoeffs(a, coeffs, clean)


def _qlog(n, q):
    j = 0
    while n % q == 0:
        n //= q
        j += 1
    return j if n == 1 else None


def apply_rho(dc, x):
    acc = CInftyElem.zero(x.F)
    cur = x
    for i, c in enumerate(dc.coeffs):
        if i:
            cur = cur ** x.p
        acc = acc + c * cur
    return acc


def homothety_invariant(L):
    """Delta/(q^r-1) + log_q D_A: unchanged under L -> cL."""
    return discriminant_valuation(L, check=False) / (L.q ** L.r - 1) + L.covolume()


def ideal_star(order, ideal, A):
    """(A^{-1} I as a lattice, log_q |d_A|) where d_A is the product of exp_I over nonzero A^{-1}I/I."""
    from .cm_heights import ideal_lattice, sublattice_between
    big = order.ideal_inverse(A) * ideal
    Lbig = ideal_lattice(order, big)
    Lsmall = sublattice_between(order, Lbig, ideal)
    d = Fraction(0)
    for y in Lsmall.quotient_reps():
        if any(y):
            d += exp_valuation(Lsmall, Lsmall.to_child_coords(y))
    return Lbig, Lsmall, d
