"""Valuations of Drinfeld-Siegel units and the eta function."""
from dataclasses import dataclass
from fractions import Fraction

from .algebra_core import LogExact, LogPoly, mat_det, mat_identity, mat_mul
from .drinfeld import discriminant_valuation, exp_valuation
from .lattices import lattice_from_point
from .period_domain import j_factor, mobius_act


@dataclass
class SiegelReport:
    mu: int
    exponent: Fraction
    eta: Fraction

    def to_json(self):
        return {"mu": self.mu, "exponent": str(self.exponent), "eta": str(self.eta)}


def _lattice(z, D, g=None):
    Dg = D if g is None else D.act(g)
    return lattice_from_point(z, Dg.Y), Dg


def siegel_unit_valuation(z, D, g=None):
    """log_q |u| = mu(D) log_q|Delta| + (q^r-1) sum_{alpha != 0} D(alpha) log_q|exp(alpha_z)|."""
    L, Dg = _lattice(z, D, g)
    q, r = L.q, L.r
    tot = Dg.mu * discriminant_valuation(L, check=False) if Dg.mu else Fraction(0)
    for beta, w in Dg.nonzero_support():
        tot += (q ** r - 1) * w * exp_valuation(L, L.from_basis_coords(beta))
    return Fraction(tot)


def im_adelic_log(z, g=None):
    """log_q Im(z, g) = log_q Im(z) - deg det g for finite-adelic part g over k."""
    im = z.profile().im_total
    return im if g is None else im - mat_det(g).deg


def eta(z, D, g=None):
    q, r = z.gf.p, z.r
    return Fraction((q ** r - 1) * D.D0, r) * im_adelic_log(z, g) + siegel_unit_valuation(z, D, g)


def siegel_report(z, D, g=None):
    return SiegelReport(D.mu, siegel_unit_valuation(z, D, g), eta(z, D, g))


def transformation_check(gamma, z, D, g=None):
    """exponent(gamma z, gamma g) - exponent(z, g) = (q^r-1) D(0) log_q|j(gamma, z)|."""
    q, r = z.gf.p, z.r
    g0 = mat_identity(q, r) if g is None else g
    lhs = siegel_unit_valuation(mobius_act(gamma, z), D, mat_mul(gamma, g0)) - siegel_unit_valuation(z, D, g0)
    rhs = (q ** r - 1) * D.D0 * j_factor(gamma, z).log_abs()
    return {"lhs": lhs, "rhs": rhs, "ok": lhs == rhs}


def level_compat_check(z, D, S):
    """Refining Y to S.Y and pulling D back leaves the unit exponent unchanged."""
    a = siegel_unit_valuation(z, D)
    b = siegel_unit_valuation(z, D.refine(S))
    return {"coarse": a, "fine": b, "ok": a == b}


def lerch_check(z, D, g=None, a=None, averaged=True):
    """Constant term of E^inf at s = 0 against eta, plus the pole coefficient."""
    from .eisenstein import mirabolic_vertex, units_mod
    q, r = z.gf.p, z.r
    res = mirabolic_vertex(z, D, g, a, averaged=averaged)
    if averaged:
        reps = units_mod(q, D.level)
        vol = Fraction(1, q - 1)
        eta_v = vol * sum((eta(z, D.scaled_by(u), g) for u in reps), Fraction(0)) / len(reps)
    else:
        vol = Fraction(1)
        eta_v = eta(z, D, g)
    want_res = LogPoly({-1: -D.D0 * vol / r})
    want_const = LogPoly({0: -(D.D0 * vol / 2 + eta_v / (q ** r - 1))})
    ok = res["residue"] == want_res and res["constant"] == want_const
    return {"residue": res["residue"], "constant": res["constant"], "eta": eta_v,
            "want_residue": want_res, "want_constant": want_const, "ok": ok}


def lattice_jacobi_check(L, w, a=None):
    """dE(L, w, s)/ds at 0 = -r (ln|Delta|/(q^r-1) + ln|exp_L(w)|) for the lattice-normalized series."""
    from .eisenstein import analyze, eis_jacobi_exact, norm_exponent
    from .algebra_core import ExpPoly
    q, r = L.q, L.r
    shift = ExpPoly({norm_exponent(L) - r * L.covolume(): 1})
    res = analyze(eis_jacobi_exact(L, w, a) * shift, 1)
    d = discriminant_valuation(L, check=False)
    rhs = LogExact(0, -r * (Fraction(d, q ** r - 1) + exp_valuation(L, w)))
    return {"value0": res.value0, "deriv0": res.deriv0, "rhs": rhs,
            "ok": res.value0 == LogExact(0) and res.deriv0 == rhs}
