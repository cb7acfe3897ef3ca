"""Points of the Drinfeld period domain, their imaginary parts and building image."""
from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .algebra_core import (ExpPoly, ExpRat, Poly, RatFunc, field_tower, mat_identity, mat_inv,
                           mat_mul, vec_mat)
from .algebra_core.polys import ratfunc_from_laurent
from .cinfty import CInftyElem, OrthoVec, mult_to_ratfunc, parse_elem, reduce_against
from .errors import DkronError, NotInPeriodDomain, PrecisionLoss


class PointH:
    """z = (z_1 : ... : z_{r-1} : 1) with coordinates in C_inf."""

    def __init__(self, r, coords, gf=None):
        coords = list(coords)
        if len(coords) != r - 1:
            raise DkronError(f"rank {r} point needs {r - 1} coordinates")
        self.r = r
        if gf is None:
            if not coords:
                raise DkronError("rank-1 point needs the ground field")
            gf = coords[0].F.gf
        self.gf = gf
        one = CInftyElem.const(field_tower(gf, 1), 1)
        allc = CInftyElem.unify(*(coords + [one]))
        self.coords = tuple(allc[:-1])
        self._zt = tuple(allc)
        self._profile = None

    @classmethod
    def parse(cls, gf, r, texts, m=None):
        m = r if m is None else m
        if isinstance(texts, str):
            texts = [t for t in texts.split(",") if t.strip()] if texts.strip() else []
        return cls(r, [parse_elem(t, gf, m) for t in texts], gf)

    @property
    def F(self):
        return self._zt[0].F

    def ztilde(self):
        return list(self._zt)

    def pair(self, x):
        """x . z~ for x in k^r (list of RatFunc)."""
        acc = None
        for xi, zi in zip(x, self._zt):
            if not xi:
                continue
            term = zi * CInftyElem.from_ratfunc(xi, zi.F)
            acc = term if acc is None else acc + term
        if acc is None:
            return CInftyElem.zero(self.F)
        return acc

    def nu_log(self, x):
        """log_q nu_z(x) = log_q |x . z~|."""
        v = self.pair(x)
        if v.is_exact_zero():
            raise NotInPeriodDomain("rational vector pairs to zero")
        return v.log_abs()

    def profile(self):
        if self._profile is None:
            self._profile = imaginary_profile(self)
        return self._profile

    def __repr__(self):
        return f"PointH(r={self.r}, {[str(c) for c in self.coords]})"


@dataclass
class ImaginaryProfile:
    r: int
    im_log: list          # log_q Im(z)_i, i = 1..r-1
    ell: list             # l_1..l_r (l_r = 0)
    xi: list              # xi_0..xi_r (xi_0 = 0, xi_r = 1)
    sigma: list           # sigma(0..r)
    eps: list             # eps_0..eps_{r-1}
    omega: list           # omega_1..omega_r
    u: list               # omega = u z~ (rows)
    u_inv: list
    ell_simplex: list     # l^{(i)} for i = 0..r-1

    @property
    def im_total(self):
        return sum(self.im_log, Fraction(0))

    def im_simplex_log(self, i):
        """log_q [Im(z)]_i = -sum_j l^{(i)}_j."""
        return -sum(self.ell_simplex[i])

    def is_vertex(self):
        return all(x == 0 for x in self.xi[1:self.r])

    def nu_simplex_log(self, i, x):
        """log_q nu_{L_{z,i}}(x) for x in k^r."""
        y = vec_mat(x, self.u_inv)
        best = None
        for j, yj in enumerate(y):
            if yj:
                v = yj.deg - self.ell_simplex[i][j]
                best = v if best is None or v > best else best
        if best is None:
            raise DkronError("zero vector")
        return best

    def g_simplex(self, i):
        """g_{z,i} = u^{-1} diag(pi^{l^{(i)}})."""
        p = self.u[0][0].p
        d = [[RatFunc.t_power(p, self.ell_simplex[i][j]) if a == j else RatFunc.const(p, 0)
              for j in range(self.r)] for a in range(self.r)]
        return mat_mul(self.u_inv, d)


def imaginary_profile(z):
    r = z.r
    zt = z.ztilde()
    F = zt[0].F
    p = F.p
    omega = [None] * r
    omega[r - 1] = zt[r - 1]
    zero, one = RatFunc.const(p, 0), RatFunc.const(p, 1)
    rows = [None] * r
    rows[r - 1] = [one if j == r - 1 else zero for j in range(r)]
    for i in range(r - 2, -1, -1):
        fam = [OrthoVec(omega[j]) for j in range(i + 1, r)]
        x, mult = reduce_against(zt[i], fam, "kinf")
        omega[i] = x
        row = [one if j == i else zero for j in range(r)]
        for jj, m in enumerate(mult):
            if m:
                c = mult_to_ratfunc(p, m)
                j = i + 1 + jj
                row = [a - c * b for a, b in zip(row, rows[j])]
        rows[i] = row
    im_log = [omega[i].log_abs() for i in range(r - 1)]
    ell, xi = [], [Fraction(0)]
    for x in im_log:
        l = floor(1 - x)
        ell.append(l)
        xi.append(1 - x - l)
    ell.append(0)
    xi.append(Fraction(1))
    inner = sorted(range(1, r), key=lambda j: (xi[j], j))
    sigma = [0] + inner + [r]
    eps = [xi[sigma[i + 1]] - xi[sigma[i]] for i in range(r)]
    ell_simplex = []
    for i in range(r):
        li = list(ell)
        for jj in range(1, i + 1):
            li[sigma[jj] - 1] -= 1
        ell_simplex.append(li)
    u_inv = mat_inv(rows)
    return ImaginaryProfile(r, im_log, ell, xi, sigma, eps, omega, rows, u_inv, ell_simplex)


# vertex labels

class VertexLabel:
    """Normal form of an O_inf-lattice class: the row space of an upper triangular
    matrix with diagonal t^{d_i} (d_r = 0) and entries above the diagonal reduced
    modulo t^{d_j} to finite t-expansions."""

    __slots__ = ("diag", "entries")

    def __init__(self, diag, entries):
        self.diag = tuple(diag)
        self.entries = tuple(sorted((ij, tuple(sorted(v.items()))) for ij, v in entries.items() if v))

    @property
    def r(self):
        return len(self.diag)

    @classmethod
    def standard(cls, r):
        return cls([0] * r, {})

    def matrix(self, p):
        r = self.r
        m = [[RatFunc.const(p, 0) for _ in range(r)] for _ in range(r)]
        for i, d in enumerate(self.diag):
            m[i][i] = RatFunc.t_power(p, d)
        for (i, j), terms in self.entries:
            m[i][j] = ratfunc_from_laurent(p, dict(terms))
        return m

    def __eq__(self, other):
        return isinstance(other, VertexLabel) and self.diag == other.diag and self.entries == other.entries

    def __hash__(self):
        return hash((self.diag, self.entries))

    def to_json(self, p):
        r = self.r
        m = self.matrix(p)
        uni = []
        for i in range(r):
            row = []
            for j in range(r):
                if i == j:
                    row.append("1")
                elif j < i:
                    row.append("0")
                else:
                    row.append(str(m[i][j] * RatFunc.t_power(p, -self.diag[i])))
            uni.append(row)
        return {"diag": list(self.diag), "unipotent": uni}

    def __repr__(self):
        return f"VertexLabel(diag={self.diag}, entries={dict(self.entries)})"


def _ord(x):
    return -x.deg


def _trunc(x, a):
    """Finite t-expansion part of x with exponents < a."""
    return ratfunc_from_laurent(x.p, x.laurent(a))


def vertex_normal_form(g):
    """Canonical label of [L° g^{-1}] for g in GL_r(k)."""
    M = mat_inv(g)
    return lattice_normal_form(M)


def lattice_normal_form(M):
    """Canonical label of the O_inf-row-span of M, up to homothety."""
    r = len(M)
    p = M[0][0].p
    M = [list(row) for row in M]
    diag = []
    for c in range(r):
        cand = [i for i in range(c, r) if M[i][c]]
        if not cand:
            raise DkronError("singular matrix")
        best = min(cand, key=lambda i: (_ord(M[i][c]), i))
        M[c], M[best] = M[best], M[c]
        a = _ord(M[c][c])
        unit = RatFunc.t_power(p, a) / M[c][c]
        M[c] = [x * unit for x in M[c]]
        diag.append(a)
        ta_inv = RatFunc.t_power(p, -a)
        for i in range(c + 1, r):
            if M[i][c]:
                f = M[i][c] * ta_inv
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    for i in range(r):
        for j in range(i + 1, r):
            x = M[i][j]
            if not x:
                continue
            rest = x - _trunc(x, diag[j])
            if rest:
                f = rest * RatFunc.t_power(p, -diag[j])
                M[i] = [a - f * b for a, b in zip(M[i], M[j])]
    shift = diag[-1]
    sc = RatFunc.t_power(p, -shift)
    entries = {}
    for i in range(r):
        for j in range(i + 1, r):
            if M[i][j]:
                entries[(i, j)] = (M[i][j] * sc).laurent(diag[j] - shift)
    return VertexLabel([d - shift for d in diag], entries)


@dataclass
class BuildingPoint:
    simplex: list   # list of (VertexLabel, weight)

    def labels(self):
        return [v for v, _ in self.simplex]

    def as_dict(self):
        return {v: w for v, w in self.simplex}

    def __eq__(self, other):
        return isinstance(other, BuildingPoint) and self.as_dict() == other.as_dict()

    def to_json(self, p):
        return [{"vertex": v.to_json(p), "weight": f"{w.numerator}/{w.denominator}"} for v, w in self.simplex]


def building_map(z):
    prof = z.profile()
    out = {}
    for i in range(z.r):
        if prof.eps[i] > 0:
            lab = vertex_normal_form(prof.g_simplex(i))
            out[lab] = out.get(lab, Fraction(0)) + prof.eps[i]
    return BuildingPoint(list(out.items()))


def act_on_label(gamma, label, p):
    """gamma . [L° g^{-1}] = [L° (gamma g)^{-1}]."""
    g = mat_inv(label.matrix(p))
    return vertex_normal_form(mat_mul(gamma, g))


def coefficients_c(z):
    prof = z.profile()
    r = z.r
    xi, sigma, eps = prof.xi, prof.sigma, prof.eps
    out = []
    for i in range(r):
        if eps[i] == 0:
            out.append(ExpRat(ExpPoly()))
            continue
        A = sum((xi[sigma[i]] - xi[j] for j in range(1, r + 1)), Fraction(0))
        num = ExpPoly({-(A + r * eps[i]): 1, -A: -1})
        den = ExpPoly({-i: 1, r - i: -1})
        out.append(ExpRat(num, den))
    return out


def coefficient_identity_sides(z, x):
    """Both sides of the coefficient identity at x in k^r, as ExpRat."""
    prof = z.profile()
    r = z.r
    lhs = ExpRat(ExpPoly({r * z.nu_log(x) - prof.im_total: 1}))
    rhs = ExpRat(ExpPoly())
    for i, c in enumerate(coefficients_c(z)):
        if prof.eps[i] == 0:
            continue
        e = -prof.im_simplex_log(i) + r * prof.nu_simplex_log(i, x)
        rhs = rhs + c * ExpPoly({e: 1})
    return lhs, rhs


# group action

def _embed_row(row, F):
    return [CInftyElem.from_ratfunc(a, F) for a in row]


def mobius_parts(gamma, z):
    zt = z.ztilde()
    F = zt[0].F
    r = z.r
    new = []
    for i in range(r):
        acc = None
        for j in range(r):
            if gamma[i][j]:
                term = CInftyElem.from_ratfunc(gamma[i][j], F) * zt[j]
                acc = term if acc is None else acc + term
        new.append(acc if acc is not None else CInftyElem.zero(F))
    return new


def j_factor(gamma, z):
    j = mobius_parts(gamma, z)[-1]
    if not j.terms:
        raise NotInPeriodDomain("j(gamma, z) is not certified nonzero")
    return j


def mobius_act(gamma, z):
    new = mobius_parts(gamma, z)
    j = new[-1]
    if not j.terms:
        raise NotInPeriodDomain("j(gamma, z) is not certified nonzero")
    ji = j.inv()
    return PointH(z.r, [x * ji for x in new[:-1]], z.gf)


def standard_point(gf, r):
    """(zeta^{r-1}, ..., zeta) with zeta generating F_{q^r}; its building image is [L°]."""
    F = field_tower(gf, r)
    coords = []
    for k in range(r - 1, 0, -1):
        coords.append(CInftyElem.const(F, F.pow(F.zeta, k)))
    return PointH(r, coords, gf)


def vertex_point(label, gf):
    g = mat_inv(label.matrix(gf.p))
    return mobius_act(g, standard_point(gf, label.r))


def det_log(gamma):
    from .algebra_core import mat_det
    return mat_det(gamma).deg
