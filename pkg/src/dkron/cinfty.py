"""Truncated Laurent series in t = 1/T with fractional exponents and
coefficients in a finite extension of F_q: a working model of C_inf.

Exponents are stored as ints k meaning t^(k/e). ``prec`` is an int in the same
units (terms at or beyond it are unknown) or None for an exactly known element.
"""
from fractions import Fraction
from math import gcd
import re

from . import config
from .algebra_core import ExtField, Poly, RatFunc, common_field, field_tower, fq_solve
from .algebra_core.polys import ratfunc_from_laurent
from .errors import DkronError, NotInPeriodDomain, PrecisionLoss


def _lcm(a, b):
    return a * b // gcd(a, b)


def _pmin(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class CInftyElem:
    __slots__ = ("F", "e", "terms", "prec")

    def __init__(self, F, e=1, terms=None, prec=None):
        self.F = F
        self.e = e
        t = {}
        for k, c in (terms or {}).items():
            if c and (prec is None or k < prec):
                t[k] = c
        self.terms = t
        self.prec = prec

    # constructors
    @classmethod
    def zero(cls, F, prec=None, e=1):
        return cls(F, e, {}, prec)

    @classmethod
    def const(cls, F, c):
        return cls(F, 1, {0: c % F.p if F.m == 1 else c})

    @classmethod
    def monomial(cls, F, c, k, e=1):
        """c * t^(k/e)."""
        return cls(F, e, {k: c})

    @classmethod
    def T(cls, F):
        return cls(F, 1, {-1: 1})

    @classmethod
    def from_ratfunc(cls, x, F, rel=None):
        if isinstance(x, int):
            x = RatFunc.const(F.p, x)
        if isinstance(x, Poly):
            x = RatFunc(x)
        if not x:
            return cls(F, 1, {})
        if x.is_poly():
            return cls(F, 1, {-i: c for i, c in enumerate(x.num.c) if c})
        rel = config.settings.precision if rel is None else rel
        v0 = -x.deg
        upto = v0 + rel
        return cls(F, 1, x.laurent(upto), upto)

    # basic data
    @property
    def p(self):
        return self.F.p

    def is_exact_zero(self):
        return not self.terms and self.prec is None

    def is_known_zero(self):
        """No term is known to be nonzero."""
        return not self.terms

    def lead(self):
        """(valuation as Fraction, leading coefficient code)."""
        if not self.terms:
            if self.prec is None:
                raise DkronError("leading term of exact zero")
            raise PrecisionLoss("leading term beyond precision")
        k = min(self.terms)
        return Fraction(k, self.e), self.terms[k]

    def ord(self):
        return self.lead()[0]

    def log_abs(self):
        """log_q |x|."""
        return -self.ord()

    def prec_val(self):
        return None if self.prec is None else Fraction(self.prec, self.e)

    # coercion
    def lift(self, F, e):
        if F is self.F and e == self.e:
            return self
        if e % self.e:
            raise DkronError("ramification index does not divide")
        s = e // self.e
        emb = self.F.embedding(F)
        if emb is None:
            terms = {k * s: c for k, c in self.terms.items()}
        else:
            terms = {k * s: emb[c] for k, c in self.terms.items()}
        return CInftyElem(F, e, terms, None if self.prec is None else self.prec * s)

    def _co(self, other):
        if isinstance(other, CInftyElem):
            return other
        if isinstance(other, (int, Poly, RatFunc)):
            return CInftyElem.from_ratfunc(other, self.F)
        return None

    @staticmethod
    def unify(*xs):
        F = xs[0].F
        e = xs[0].e
        for x in xs[1:]:
            F = common_field(F, x.F)
            e = _lcm(e, x.e)
        return [x.lift(F, e) for x in xs]

    # arithmetic
    def __add__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        a, b = CInftyElem.unify(self, o)
        F = a.F
        prec = _pmin(a.prec, b.prec)
        out = dict(a.terms)
        if F.m == 1:
            p = F.p
            for k, c in b.terms.items():
                out[k] = (out.get(k, 0) + c) % p
        else:
            for k, c in b.terms.items():
                out[k] = F.add(out.get(k, 0), c)
        return CInftyElem(F, a.e, out, prec)

    __radd__ = __add__

    def __neg__(self):
        F = self.F
        return CInftyElem(F, self.e, {k: F.neg(c) for k, c in self.terms.items()}, self.prec)

    def __sub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def scale_fq(self, c):
        """Multiply by a constant of F_q (given as int)."""
        c %= self.F.p
        if c == 0:
            return CInftyElem(self.F, self.e, {}, None if self.prec is None else self.prec)
        F = self.F
        return CInftyElem(F, self.e, {k: F.scalar(c, v) for k, v in self.terms.items()}, self.prec)

    def shift(self, k):
        """Multiply by t^(k/e) (k in units of self.e; k may be a Fraction of valuation)."""
        if isinstance(k, Fraction):
            if (k * self.e).denominator != 1:
                x = self.lift(self.F, self.e * k.denominator)
                return x.shift(k)
            k = int(k * self.e)
            return CInftyElem(self.F, self.e, {a + k: c for a, c in self.terms.items()},
                              None if self.prec is None else self.prec + k)
        return CInftyElem(self.F, self.e, {a + k: c for a, c in self.terms.items()},
                          None if self.prec is None else self.prec + k)

    def __mul__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        a, b = CInftyElem.unify(self, o)
        F = a.F
        if a.is_exact_zero() or b.is_exact_zero():
            return CInftyElem(F, a.e, {})
        va = min(a.terms) if a.terms else None
        vb = min(b.terms) if b.terms else None
        cand = []
        if a.prec is not None:
            if vb is None:
                cand.append(a.prec + b.prec)
            else:
                cand.append(a.prec + vb)
        if b.prec is not None:
            if va is None:
                cand.append(b.prec + a.prec)
            else:
                cand.append(b.prec + va)
        prec = min(cand) if cand else None
        out = {}
        if F.m == 1:
            p = F.p
            for k1, c1 in a.terms.items():
                for k2, c2 in b.terms.items():
                    k = k1 + k2
                    if prec is None or k < prec:
                        out[k] = out.get(k, 0) + c1 * c2
            out = {k: v % p for k, v in out.items()}
        else:
            mul, add = F.mul, F.add
            for k1, c1 in a.terms.items():
                for k2, c2 in b.terms.items():
                    k = k1 + k2
                    if prec is None or k < prec:
                        out[k] = add(out.get(k, 0), mul(c1, c2))
        return CInftyElem(F, a.e, out, prec)

    __rmul__ = __mul__

    def _normalized(self, rel):
        """(v, c, dense list y) with self = c t^v (1 + sum_{k>=1} y[k] t^k), rel terms."""
        v = min(self.terms)
        c = self.terms[v]
        F = self.F
        ci = F.inv(c)
        y = [0] * rel
        for k, a in self.terms.items():
            i = k - v
            if 0 < i < rel:
                y[i] = F.mul(a, ci)
        return v, c, y

    def _rel_prec(self):
        if not self.terms:
            raise PrecisionLoss("inverse of an element not certified nonzero")
        v = min(self.terms)
        if self.prec is None:
            if len(self.terms) == 1:
                return v, None
            return v, config.settings.precision * self.e
        return v, self.prec - v

    def inv(self):
        if self.is_exact_zero():
            raise DkronError("inverse of zero")
        v, rel = self._rel_prec()
        F = self.F
        if rel is None:
            c = self.terms[v]
            return CInftyElem(F, self.e, {-v: F.inv(c)})
        _, c, y = self._normalized(rel)
        s = [0] * rel
        s[0] = 1
        nz = [(j, y[j]) for j in range(1, rel) if y[j]]
        for k in range(1, rel):
            acc = 0
            for j, yj in nz:
                if j > k:
                    break
                if s[k - j]:
                    acc = F.add(acc, F.mul(yj, s[k - j]))
            s[k] = F.neg(acc)
        ci = F.inv(c)
        return CInftyElem(F, self.e, {-v + k: F.mul(ci, s[k]) for k in range(rel) if s[k]}, -v + rel)

    def __truediv__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        out = CInftyElem(self.F, self.e, {0: 1})
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def sqrt(self):
        if self.is_exact_zero():
            return self
        if not self.terms:
            raise PrecisionLoss("square root of an element with unknown leading term")
        x = self
        v = min(x.terms)
        if v % 2:
            x = x.lift(x.F, 2 * x.e)
        v = min(x.terms)
        c = x.terms[v]
        if not x.F.is_square(c):
            x = x.lift(field_tower(x.F.gf, 2 * x.F.m), x.e)
            c = x.terms[v]
        F = x.F
        cs = F.sqrt(c)
        _, rel = x._rel_prec()
        if rel is None:
            return CInftyElem(F, x.e, {v // 2: cs})
        _, _, y = x._normalized(rel)
        half = F.inv(2 % F.p)
        s = [0] * rel
        s[0] = 1
        for k in range(1, rel):
            acc = y[k]
            for j in range(1, k):
                if s[j] and s[k - j]:
                    acc = F.sub(acc, F.mul(s[j], s[k - j]))
            s[k] = F.mul(acc, half)
        return CInftyElem(F, x.e, {v // 2 + k: F.mul(cs, s[k]) for k in range(rel) if s[k]}, v // 2 + rel)

    # comparisons
    def agrees(self, other, upto=None):
        """x - y vanishes to the joint precision (or to valuation `upto`)."""
        d = self - other
        if upto is None:
            return not d.terms
        return all(Fraction(k, d.e) >= upto for k in d.terms)

    def truncated_key(self, upto):
        """Hashable representation of the terms with valuation < upto."""
        F1 = self
        items = tuple(sorted((Fraction(k, F1.e), F1.F.m, c) for k, c in F1.terms.items() if Fraction(k, F1.e) < upto))
        return items

    def __repr__(self):
        return f"CInftyElem({self})"

    def __str__(self):
        parts = []
        F, e = self.F, self.e
        for k in sorted(self.terms):
            c = F.fmt(self.terms[k])
            if "+" in c:
                c = f"({c})"
            parts.append(f"{c}*t^({_fs(k, e)})")
        if self.prec is not None:
            parts.append(f"O(t^({_fs(self.prec, e)}))")
        return " + ".join(parts) if parts else "0"


def _fs(k, e):
    f = Fraction(k, e)
    return f"{f.numerator}/{f.denominator}"


def _laurent_to_target(terms, e, F, target):
    """Split a sequence of terms into the cancellable prefix and the first obstruction."""
    approx = {}
    for k in sorted(terms):
        c = terms[k]
        integral = k % e == 0
        ok = integral and F.is_base(c)
        if ok and target == "A" and k > 0:
            ok = False
        if not ok:
            return approx, Fraction(k, e)
        approx[k // e] = c
    return approx, None


def best_subfield_approx(x, target="kinf"):
    """Best approximation of x by k_inf (target='kinf') or by A (target='A').

    Returns (approx, dist) where dist is the valuation of x - approx (so the
    distance is q^{-dist}); dist is None when x lies in the target exactly.
    """
    if target not in ("kinf", "A"):
        raise DkronError("target must be 'kinf' or 'A'")
    approx, dist = _laurent_to_target(x.terms, x.e, x.F, target)
    if dist is None and x.prec is not None:
        raise PrecisionLoss("all known terms are cancellable")
    a = ratfunc_from_laurent(x.p, approx)
    if target == "A":
        a = a.num
    return a, dist


class OrthoVec:
    """A vector of an orthogonal family, with its cached leading data."""

    __slots__ = ("x", "v", "c")

    def __init__(self, x):
        self.x = x
        self.v, self.c = x.lead()


def reduce_against(x, family, ring="kinf"):
    """Subtract from x the best combination of an orthogonal family.

    family: list of OrthoVec sharing x's field and ramification index.
    ring 'kinf': coefficients in k_inf; 'A': coefficients in A, so a vector can
    only be used when it is not longer than the current x.
    Returns (reduced x, multipliers) with multipliers[j] a dict {t-exponent: coefficient in F_q}.
    Stops as soon as the leading term of x is not in the span of the admissible
    leading terms; raises PrecisionLoss / NotInPeriodDomain if x runs out.
    """
    F = x.F
    p = F.p
    mult = [dict() for _ in family]
    while True:
        if not x.terms:
            if x.prec is None:
                raise NotInPeriodDomain("vector is a rational combination of the others")
            raise PrecisionLoss("reduction exhausted the precision")
        v, c = x.lead()
        idx = []
        for j, w in enumerate(family):
            d = v - w.v
            if d.denominator != 1:
                continue
            if ring == "A" and d > 0:
                continue
            idx.append(j)
        if not idx:
            return x, mult
        sol = fq_solve([F.digits(family[j].c) for j in idx], F.digits(c), p)
        if sol is None:
            return x, mult
        for j, a in zip(idx, sol):
            if not a:
                continue
            d = int(v - family[j].v)
            x = x - family[j].x.shift(Fraction(d)).scale_fq(a)
            mult[j][d] = (mult[j].get(d, 0) + a) % p


def mult_to_ratfunc(p, m):
    return ratfunc_from_laurent(p, {k: c for k, c in m.items() if c % p})


_TOK = re.compile(r"\s*(O\(|zeta|\d+|[Tt]|[()+\-*/^])")


def parse_elem(s, gf, m=2, e_hint=1):
    """Parse text such as 'zeta*T^2 + T', 'T^(1/2)', '2*t^(3/2) + O(t^(20/2))'."""
    F = field_tower(gf, m)
    return _ElemParser(s, F).parse()


class _ElemParser:
    def __init__(self, s, F):
        self.F = F
        self.toks = []
        pos = 0
        s = s.strip()
        while pos < len(s):
            mt = _TOK.match(s, pos)
            if not mt:
                raise DkronError(f"cannot parse element {s!r} at {pos}")
            self.toks.append(mt.group(1))
            pos = mt.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self):
        try:
            v = self.expr()
        except (ValueError, TypeError, IndexError, ZeroDivisionError) as e:
            raise DkronError(f"cannot parse expression: {e}") from None
        if self.peek() is not None:
            raise DkronError(f"trailing input after {self.toks[:self.i]}")
        return v

    def expr(self):
        neg = False
        if self.peek() == "-":
            self.take()
            neg = True
        v = self.term()
        if neg:
            v = -v
        while self.peek() in ("+", "-"):
            op = self.take()
            t = self.term()
            v = v + t if op == "+" else v - t
        return v

    def term(self):
        v = self.factor()
        while True:
            nxt = self.peek()
            if nxt in ("*", "/"):
                self.take()
                f = self.factor()
                v = v * f if nxt == "*" else v / f
            elif nxt in ("T", "t", "zeta", "(") or (nxt is not None and nxt.isdigit()):
                v = v * self.factor()
            else:
                return v

    def exponent(self):
        if self.peek() == "(":
            self.take()
            neg = False
            if self.peek() == "-":
                self.take()
                neg = True
            a = int(self.take())
            b = 1
            if self.peek() == "/":
                self.take()
                b = int(self.take())
            if self.take() != ")":
                raise DkronError("bad exponent")
            f = Fraction(a, b)
            return -f if neg else f
        neg = False
        if self.peek() == "-":
            self.take()
            neg = True
        a = Fraction(int(self.take()))
        return -a if neg else a

    def factor(self):
        F = self.F
        t = self.take()
        if t == "O(":
            base = self.take()
            if base not in ("t", "T"):
                raise DkronError("O() expects a power of t")
            ex = Fraction(1)
            if self.peek() == "^":
                self.take()
                ex = self.exponent()
            if self.take() != ")":
                raise DkronError("unbalanced O(")
            if base == "T":
                ex = -ex
            return CInftyElem(F, ex.denominator, {}, ex.numerator)
        if t == "(":
            v = self.expr()
            if self.take() != ")":
                raise DkronError("unbalanced parenthesis")
        elif t in ("T", "t"):
            ex = Fraction(1)
            if self.peek() == "^":
                self.take()
                ex = self.exponent()
            val = -ex if t == "T" else ex
            return CInftyElem(F, val.denominator, {val.numerator: 1})
        elif t == "zeta":
            if F.m == 1:
                raise DkronError("zeta needs an extension of degree > 1")
            v = CInftyElem(F, 1, {0: F.zeta})
        elif t is not None and t.isdigit():
            v = CInftyElem(F, 1, {0: int(t) % F.p})
        else:
            raise DkronError(f"unexpected token {t!r}")
        if self.peek() == "^":
            self.take()
            ex = self.exponent()
            if ex.denominator != 1:
                raise DkronError("fractional powers only for T and t")
            v = v ** int(ex)
        return v
