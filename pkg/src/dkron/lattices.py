"""A-lattices in C_inf with orthogonal bases, point enumeration and shell counts.

Vectors of k.Lambda are handled through their coordinates x in k^r with
respect to the reduced basis mu; orthogonality makes |sum x_i mu_i| equal to
max(deg x_i + n_i) in log_q units, so all norms below are exact rationals.
"""
from fractions import Fraction
from itertools import product
from math import floor

from . import config
from .algebra_core import Poly, RatFunc, hnf_rows, mat_identity, mat_inv, mat_mul, vec_mat
from .cinfty import CInftyElem, OrthoVec, mult_to_ratfunc, reduce_against
from .errors import BoundTooLarge, DkronError, NotInPeriodDomain, OnLattice


def _rf(p, x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, Poly):
        return RatFunc(x)
    return RatFunc.const(p, x)


def _zero(p):
    return RatFunc.const(p, 0)


class Lattice:
    def __init__(self, basis, provenance="generic", point=None, Y=None, order=None):
        basis = CInftyElem.unify(*basis)
        self.r = len(basis)
        self.F = basis[0].F
        self.p = self.F.p
        self.q = self.p
        self.basis = tuple(basis)
        self.provenance = provenance
        self.point = point
        self.Y = Y
        self.order = order
        self._reduce()

    def _reduce(self):
        p, r = self.p, self.r
        mu = list(self.basis)
        U = mat_identity(p, r)
        changed = True
        while changed:
            changed = False
            perm = sorted(range(r), key=lambda i: (mu[i].log_abs(), i))
            mu = [mu[i] for i in perm]
            U = [U[i] for i in perm]
            fam = []
            for k in range(r):
                try:
                    x, mult = reduce_against(mu[k], fam, "A")
                except NotInPeriodDomain:
                    raise DkronError("lattice generators are linearly dependent") from None
                if any(mult):
                    row = U[k]
                    for j, m in enumerate(mult):
                        if m:
                            c = mult_to_ratfunc(p, m)
                            row = [a - c * b for a, b in zip(row, U[j])]
                    mu[k], U[k] = x, row
                    changed = True
                    break
                fam.append(OrthoVec(mu[k]))
        self.mu = tuple(mu)
        self.norms = tuple(m.log_abs() for m in mu)
        self.U = U
        self.Uinv = mat_inv(U)

    # coordinates
    def coords_norm(self, x):
        """log_q |sum x_i mu_i|, or None for the zero vector."""
        best = None
        for xi, n in zip(x, self.norms):
            if xi:
                v = xi.deg + n
                if best is None or v > best:
                    best = v
        return best

    def value(self, x):
        acc = CInftyElem.zero(self.F)
        for xi, m in zip(x, self.mu):
            if xi:
                acc = acc + m * CInftyElem.from_ratfunc(_rf(self.p, xi), self.F)
        return acc

    def from_basis_coords(self, y):
        return vec_mat([_rf(self.p, a) for a in y], self.Uinv)

    def point_coords(self, alpha):
        """mu-coordinates of alpha_z = alpha . z~ for alpha in k^r (requires a point)."""
        if self.Y is None:
            return self.from_basis_coords(alpha)
        beta = vec_mat([_rf(self.p, a) for a in alpha], mat_inv(self.Y))
        return self.from_basis_coords(beta)

    def covolume(self):
        """log_q D_A(Lambda): the reduced basis is an A-basis, so the index factor is 1."""
        return sum(self.norms, Fraction(0)) / self.r

    def min_norm(self):
        return self.norms[0]

    # enumeration
    def box_degrees(self, B):
        return [floor(B - n) for n in self.norms]

    def count_box(self, B):
        """Number of lattice points with |lambda| <= q^B, zero included."""
        tot = 1
        for d in self.box_degrees(B):
            if d >= 0:
                tot *= self.q ** (d + 1)
        return tot

    def enumerate_points(self, B, with_values=False):
        """All nonzero lattice points of norm <= q^B as (A-coordinates, value)."""
        n = self.count_box(B) - 1
        if n > config.settings.enum_cap:
            raise BoundTooLarge(f"{n} points exceed the enumeration cap")
        p = self.p
        ranges = []
        for d in self.box_degrees(B):
            ranges.append(list(_polys_lex(p, d)))
        out = []
        for cs in product(*ranges):
            if not any(cs):
                continue
            x = [RatFunc(c) for c in cs]
            out.append((tuple(cs), self.value(x) if with_values else None))
        return out

    def shell_distribution(self, x, B):
        """{log_q |lambda - x| : count} over lattice points |lambda| <= q^B, zero included.

        Key None stands for lambda = x.
        """
        p = self.p
        per = []
        for xi, n, d in zip(x, self.norms, self.box_degrees(B)):
            per.append(_coord_dist(p, _rf(p, xi) if xi is not None else _zero(p), d, n))
        return _max_dist(per)

    def norm_distribution(self, B):
        dist = self.shell_distribution([_zero(self.p)] * self.r, B)
        dist.pop(None, None)
        return dist

    def torsion_reps(self, a):
        """mu-coordinates of representatives of (1/a)Lambda/Lambda, each of minimal norm."""
        p = self.p
        a = a if isinstance(a, Poly) else Poly(p, (a,))
        ar = RatFunc(a)
        res = [RatFunc(c) / ar for c in _polys_lex(p, a.deg - 1)]
        for cs in product(res, repeat=self.r):
            yield list(cs)

    def torsion_values(self, a):
        return [self.value(x) for x in self.torsion_reps(a)]

    # derived lattices
    def scaled(self, c):
        """c * Lambda for c a nonzero CInftyElem."""
        L = Lattice([c * b for b in self.basis], self.provenance, self.point, self.Y, self.order)
        return L

    def sublattice(self, S):
        """The sublattice generated by sum_j S_ij mu_j (S over A)."""
        p = self.p
        S = [[_rf(p, a) for a in row] for row in S]
        gens = [self.value(row) for row in S]
        sub = Lattice(gens, self.provenance, self.point, None, self.order)
        sub.parent = self
        sub.rel = mat_mul(sub.U, S)
        sub.rel_inv = mat_inv(sub.rel)
        return sub

    def index_in_parent(self):
        from .algebra_core import mat_det
        return self.q ** mat_det(self.rel).deg

    def quotient_reps(self):
        """Representatives of parent/self in parent mu-coordinates (zero first)."""
        p = self.p
        H = hnf_rows([[x.num for x in row] for row in self.rel])
        degs = [H[i][i].deg for i in range(self.r)]
        ranges = [[RatFunc(c) for c in _polys_lex(p, d - 1)] for d in degs]
        for cs in product(*ranges):
            yield list(cs)

    def to_child_coords(self, y):
        return vec_mat(y, self.rel_inv)

    def to_json(self):
        return {"rank": self.r, "provenance": self.provenance,
                "basis": [str(b) for b in self.basis],
                "reduced": [str(m) for m in self.mu],
                "norms": [f"{n.numerator}/{n.denominator}" for n in self.norms]}

    def __repr__(self):
        return f"Lattice(r={self.r}, norms={[str(n) for n in self.norms]}, {self.provenance})"


def _polys_lex(p, d):
    """Polynomials of degree <= d in lex order of coefficient vectors (just 0 if d < 0)."""
    if d < 0:
        yield Poly(p)
        return
    for digits in product(range(p), repeat=d + 1):
        yield Poly(p, tuple(reversed(digits)))


def _coord_dist(p, x, d, n):
    """Distribution of deg(c - x) + n over c in A with deg c <= d."""
    out = {}

    def add(v, k):
        key = None if v is None else v + n
        out[key] = out.get(key, 0) + k

    P = x.polypart() if x else Poly(p)
    f = x.fracpart() if x else None
    if d >= 0 and (not P or P.deg <= d):
        add(f.deg if f else None, 1)
        for j in range(d + 1):
            add(j, (p - 1) * p ** j)
    else:
        total = p ** (d + 1) if d >= 0 else 1
        add(x.deg if x else None, total)
    return out


def _max_dist(per):
    keys = set()
    for dist in per:
        keys.update(k for k in dist if k is not None)
    keys = sorted(keys)
    out = {}
    zero_all = 1
    for dist in per:
        zero_all *= dist.get(None, 0)
    if zero_all:
        out[None] = zero_all
    prev = zero_all
    for v in keys:
        le = 1
        for dist in per:
            le *= sum(c for k, c in dist.items() if k is None or k <= v)
        if le - prev:
            out[v] = le - prev
        prev = le
    return out


def lattice_from_point(z, Y=None):
    """Lambda_z^Y = {y . z~ : y in Y}; Y is a list of rows over k (default A^r)."""
    r = z.r
    p = z.gf.p
    zt = z.ztilde()
    if Y is None:
        basis = list(zt)
        Ym = None
    else:
        Ym = [[_rf(p, a) for a in row] for row in Y]
        basis = []
        for row in Ym:
            acc = CInftyElem.zero(zt[0].F)
            for a, zi in zip(row, zt):
                if a:
                    acc = acc + zi * CInftyElem.from_ratfunc(a, zi.F)
            basis.append(acc)
    return Lattice(basis, "from-point", z, Ym)


def y_norm_log(Y):
    """log_q ||Y|| = -deg det Y for Y = row basis over k."""
    from .algebra_core import mat_det
    return -mat_det(Y).deg


class SchwartzData:
    """Finitely supported Z-valued D on k^r/Y, keyed by beta = alpha Y^{-1} mod A^r."""

    def __init__(self, r, p, D, Y=None, level=None):
        self.r, self.p = r, p
        self.Y = Y if Y is None else [[_rf(p, a) for a in row] for row in Y]
        self.D = {}
        for beta, w in D.items():
            key = self._canon(beta)
            if w:
                self.D[key] = self.D.get(key, 0) + w
        self.level = level if level is not None else self._level()

    def _canon(self, beta):
        return tuple(_rf(self.p, b).fracpart() for b in beta)

    def _level(self):
        from .algebra_core.polys import pgcd
        m = Poly(self.p, (1,))
        for beta in self.D:
            for b in beta:
                d = b.den
                m = m * d // pgcd(m, d)
        return m

    @classmethod
    def delta0(cls, r, p, weight=1):
        return cls(r, p, {tuple([0] * r): weight})

    @classmethod
    def from_alpha(cls, r, p, alpha_weights, Y=None):
        Yinv = mat_inv(Y) if Y is not None else None
        D = {}
        for alpha, w in alpha_weights.items():
            a = [_rf(p, x) for x in alpha]
            beta = tuple(vec_mat(a, Yinv)) if Yinv is not None else tuple(a)
            D[beta] = D.get(beta, 0) + w
        return cls(r, p, D, Y)

    def value(self, beta):
        return self.D.get(self._canon(beta), 0)

    @property
    def D0(self):
        return self.D.get(tuple(_zero(self.p) for _ in range(self.r)), 0)

    @property
    def mu(self):
        return sum(self.D.values())

    def nonzero_support(self):
        out = []
        for beta in sorted(self.D, key=lambda b: [str(x) for x in b]):
            if any(beta):
                out.append((list(beta), self.D[beta]))
        return out

    def alpha(self, beta):
        if self.Y is None:
            return list(beta)
        return vec_mat(list(beta), self.Y)

    def act(self, g):
        """rho(g)D: D'(alpha) = D(alpha g) on k^r/(Y g^{-1})."""
        Y = self.Y if self.Y is not None else mat_identity(self.p, self.r)
        Y2 = mat_mul(Y, mat_inv(g))
        out = SchwartzData(self.r, self.p, dict(self.D), Y2, self.level)
        return out

    def scaled_by(self, a):
        """D_a(alpha) = D(a alpha) for a in A prime to the level (permutes cosets)."""
        ar = _rf(self.p, a)
        inv = {}
        # beta -> a*beta is a bijection of m^{-1}A^r/A^r; pull D back along it
        from .algebra_core.polys import pxgcd
        g, s, _ = pxgcd(ar.num, self.level)
        if g.deg != 0:
            raise DkronError("scaling factor is not prime to the level")
        sr = RatFunc(s)
        for beta, w in self.D.items():
            nb = tuple((sr * b).fracpart() for b in beta)
            inv[nb] = inv.get(nb, 0) + w
        return SchwartzData(self.r, self.p, inv, self.Y, self.level)

    def refine(self, S):
        """Pull D back to k^r/Y' for Y' = S.Y (S over A, full rank)."""
        p = self.p
        S = [[_rf(p, a) for a in row] for row in S]
        Y = self.Y if self.Y is not None else mat_identity(p, self.r)
        Y2 = mat_mul(S, Y)
        Sinv = mat_inv(S)
        # cosets of A^r S inside A^r: beta' = beta S^{-1} + t S^{-1}
        H = hnf_rows([[x.num for x in row] for row in S])
        degs = [H[i][i].deg for i in range(self.r)]
        reps = [list(cs) for cs in product(*[[RatFunc(c) for c in _polys_lex(p, d - 1)] for d in degs])]
        D2 = {}
        for beta, w in self.D.items():
            for t in reps:
                nb = vec_mat([b + tt for b, tt in zip(beta, t)], Sinv)
                key = tuple(x.fracpart() for x in nb)
                D2[key] = D2.get(key, 0) + w
        return SchwartzData(self.r, p, D2, Y2)

    def to_json(self):
        return {"r": self.r, "support": [[[str(x) for x in b], w] for b, w in
                                         sorted(((b, w) for b, w in self.D.items()), key=lambda t: [str(x) for x in t[0]])]}


def dual_lattice(L):
    """psi-dual of a rank-1 lattice y.A (the residue pairing makes A self-dual)."""
    if L.r != 1:
        raise DkronError("dual lattices are modeled for rank 1 only")
    if L.point is None:
        c = L.mu[0]
        return Lattice([c.inv()], "dual")
    Y = L.Y if L.Y is not None else [[RatFunc.const(L.p, 1)]]
    return lattice_from_point(L.point, [[Y[0][0].inv()]])
