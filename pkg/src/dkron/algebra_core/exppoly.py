"""Exponential polynomials s -> sum c_e q^{-e s} and their quotients.

Taylor and Laurent data at s = 0 are computed in the variable u = s ln q, in
which q^{-e s} = exp(-e u) has rational Taylor coefficients; the coefficient
of s^k is then (rational) * (ln q)^k.
"""
from fractions import Fraction
from math import factorial, lcm

from ..errors import DkronError, ZeroDenominator
from .logexact import LogExact, LogPoly, frac_str


class Radical:
    """Element of Q(y) with y^N = q, stored on the basis y^0..y^{N-1}.

    y^N - q is Eisenstein at q, so this basis is a Q-basis and equality is
    coefficientwise after lifting to a common N.
    """

    __slots__ = ("q", "N", "c")

    def __init__(self, q, N, coeffs):
        self.q, self.N = q, N
        c = [Fraction(0)] * N
        for i, v in enumerate(coeffs):
            c[i] += v
        self.c = tuple(c)

    @classmethod
    def q_power(cls, q, x, coef=1):
        """coef * q^x for rational x."""
        x = Fraction(x)
        N = x.denominator
        k = x.numerator
        whole, rem = divmod(k, N)
        c = [Fraction(0)] * N
        c[rem] = Fraction(coef) * Fraction(q) ** whole
        return cls(q, N, c)

    def lift(self, N):
        if N == self.N:
            return self
        if N % self.N:
            raise DkronError("incompatible radical degrees")
        k = N // self.N
        c = [Fraction(0)] * N
        for i, v in enumerate(self.c):
            c[i * k] = v
        return Radical(self.q, N, c)

    def _pair(self, other):
        N = lcm(self.N, other.N)
        return self.lift(N), other.lift(N)

    def __add__(self, other):
        a, b = self._pair(other)
        return Radical(self.q, a.N, [x + y for x, y in zip(a.c, b.c)])

    def __sub__(self, other):
        a, b = self._pair(other)
        return Radical(self.q, a.N, [x - y for x, y in zip(a.c, b.c)])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Radical(self.q, self.N, [x * other for x in self.c])
        a, b = self._pair(other)
        N = a.N
        out = [Fraction(0)] * N
        for i, x in enumerate(a.c):
            if x:
                for j, y in enumerate(b.c):
                    if y:
                        k = i + j
                        if k >= N:
                            out[k - N] += x * y * self.q
                        else:
                            out[k] += x * y
        return Radical(self.q, N, out)

    def is_zero(self):
        return not any(self.c)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Radical(self.q, 1, [Fraction(other)])
        a, b = self._pair(other)
        return a.c == b.c

    def __hash__(self):
        return hash(self.lift(self.N).c)

    def approx(self):
        y = float(self.q) ** (1.0 / self.N)
        return sum(float(v) * y ** i for i, v in enumerate(self.c))

    def __repr__(self):
        return f"Radical(N={self.N}, {[str(x) for x in self.c]})"


class ExpPoly:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                t[Fraction(e)] = c
        self.terms = t

    @classmethod
    def const(cls, c):
        return cls({0: c})

    @classmethod
    def qpow(cls, e, c=1):
        """c * q^{-e s}."""
        return cls({e: c})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, ExpPoly):
            other = ExpPoly.const(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return ExpPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return ExpPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, ExpPoly):
            other = ExpPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExpPoly({e: c * other for e, c in self.terms.items()})
        if not isinstance(other, ExpPoly):
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return ExpPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = ExpPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExpPoly.const(other)
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def at_zero(self):
        return sum(self.terms.values(), Fraction(0))

    def u_series(self, order):
        """Rational Taylor coefficients in u = s ln q up to u^order."""
        out = []
        for j in range(order + 1):
            f = factorial(j)
            out.append(sum((c * (-e) ** j for e, c in self.terms.items()), Fraction(0)) / f)
        return out

    def substitute(self, q, scale, shift=0):
        """s -> scale*s + shift; needs e*shift integral for every exponent."""
        out = {}
        shift = Fraction(shift)
        for e, c in self.terms.items():
            x = -e * shift
            if x.denominator != 1:
                raise DkronError("shift leaves rational coefficients")
            ne = e * Fraction(scale)
            out[ne] = out.get(ne, 0) + c * Fraction(q) ** int(x)
        return ExpPoly(out)

    def evaluate(self, q, s):
        s = Fraction(s)
        acc = Radical(q, 1, [0])
        for e, c in self.terms.items():
            acc = acc + Radical.q_power(q, -e * s, c)
        return acc

    def max_denominator(self):
        return lcm(*[e.denominator for e in self.terms]) if self.terms else 1

    def to_json(self):
        return [[frac_str(e), frac_str(c)] for e, c in sorted(self.terms.items())]

    def __repr__(self):
        if not self.terms:
            return "ExpPoly(0)"
        return "ExpPoly(" + " + ".join(f"{c}*q^(-{e}s)" for e, c in sorted(self.terms.items())) + ")"


def expoly_taylor(P, order):
    """Taylor coefficients at s = 0 as LogPoly: coefficient j is (1/j!) sum c_e (-e ln q)^j."""
    return [LogPoly({j: a}) for j, a in enumerate(P.u_series(order))]


def _series_order(coeffs):
    for i, v in enumerate(coeffs):
        if v:
            return i
    return None


class Laurent:
    """Laurent expansion sum_{k >= start} c_k s^k with LogPoly coefficients."""

    def __init__(self, start, coeffs):
        self.start = start
        self.coeffs = list(coeffs)

    def coeff(self, k):
        i = k - self.start
        if i < 0:
            return LogPoly()
        if i >= len(self.coeffs):
            raise DkronError("Laurent coefficient beyond computed order")
        return self.coeffs[i]

    @property
    def stop(self):
        return self.start + len(self.coeffs) - 1

    def __mul__(self, other):
        start = self.start + other.start
        stop = min(self.stop + other.start, other.stop + self.start)
        out = []
        for k in range(start, stop + 1):
            acc = LogPoly()
            for i in range(self.start, k - other.start + 1):
                acc = acc + self.coeff(i) * other.coeff(k - i)
            out.append(acc)
        return Laurent(start, out)

    def __eq__(self, other):
        lo = min(self.start, other.start)
        hi = min(self.stop, other.stop)
        for k in range(lo, hi + 1):
            a = self.coeff(k) if k >= self.start else LogPoly()
            b = other.coeff(k) if k >= other.start else LogPoly()
            if a != b:
                return False
        return True

    def to_json(self):
        return {str(self.start + i): c.to_json() for i, c in enumerate(self.coeffs)}

    def __repr__(self):
        return f"Laurent(start={self.start}, {self.coeffs})"


class ExpRat:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, ExpPoly):
            num = ExpPoly.const(num)
        if den is None:
            den = ExpPoly.const(1)
        elif not isinstance(den, ExpPoly):
            den = ExpPoly.const(den)
        if den.is_zero():
            raise ZeroDenominator("ExpRat with zero denominator")
        self.num, self.den = num, den

    def __add__(self, other):
        if not isinstance(other, ExpRat):
            other = ExpRat(other)
        if self.den == other.den:
            return ExpRat(self.num + other.num, self.den)
        return ExpRat(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return ExpRat(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, ExpRat):
            other = ExpRat(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, ExpPoly) or isinstance(other, (int, Fraction)):
            return ExpRat(self.num * other, self.den)
        return ExpRat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, ExpPoly):
            return ExpRat(self.num, self.den * other)
        if isinstance(other, (int, Fraction)):
            return ExpRat(self.num, self.den * Fraction(other))
        return ExpRat(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        if not isinstance(other, ExpRat):
            other = ExpRat(other)
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("ExpRat is not hashable")

    def substitute(self, q, scale, shift=0):
        return ExpRat(self.num.substitute(q, scale, shift), self.den.substitute(q, scale, shift))

    def evaluate(self, q, s):
        """(numerator, denominator) as exact radicals at rational s."""
        d = self.den.evaluate(q, s)
        if d.is_zero():
            raise ZeroDenominator(f"pole at s = {s}")
        return self.num.evaluate(q, s), d

    def agrees_at(self, other, q, s):
        n1, d1 = self.evaluate(q, s)
        n2, d2 = other.evaluate(q, s)
        return n1 * d2 == n2 * d1

    def laurent(self, order):
        return exprat_laurent_at_zero(self, order)

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    def __repr__(self):
        return f"ExpRat({self.num} / {self.den})"


def exprat_laurent_at_zero(R, order):
    """Exact Laurent coefficients c_k (k from the pole order up to `order`) at s = 0."""
    if R.den.is_zero():
        raise ZeroDenominator("zero denominator")
    # a nonzero exponential polynomial with n terms vanishes to order < n at 0
    vd = _series_order(R.den.u_series(len(R.den.terms)))
    if R.num.is_zero():
        return Laurent(0, [LogPoly() for _ in range(max(order, 0) + 1)])
    vn = _series_order(R.num.u_series(len(R.num.terms)))
    start = vn - vd
    nterms = order - start + 1
    if nterms <= 0:
        return Laurent(start, [])
    a = R.num.u_series(vn + nterms)[vn:]
    b = R.den.u_series(vd + nterms)[vd:]
    q = []
    for k in range(nterms):
        acc = a[k]
        for j in range(1, k + 1):
            acc -= b[j] * q[k - j]
        q.append(acc / b[0])
    return Laurent(start, [LogPoly({start + i: v}) for i, v in enumerate(q)])


def taylor_value(R, k):
    """Coefficient of s^k of R at 0 as LogPoly (R regular at 0 if k >= 0)."""
    return exprat_laurent_at_zero(R, k).coeff(k)


def as_logexact(lp):
    return lp.to_logexact()


def log_of_qpower(x):
    """ln(q^x) as LogExact."""
    return LogExact(0, x)
