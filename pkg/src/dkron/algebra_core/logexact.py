from fractions import Fraction
import math


def _fr(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def frac_str(x):
    x = _fr(x)
    return f"{x.numerator}/{x.denominator}"


def parse_frac(s):
    return Fraction(str(s))


class LogExact:
    """A number rat + logq * ln(q), with rat and logq rational."""

    __slots__ = ("rat", "logq")

    def __init__(self, rat=0, logq=0):
        self.rat = _fr(rat)
        self.logq = _fr(logq)

    def __add__(self, other):
        if not isinstance(other, LogExact):
            other = LogExact(other)
        return LogExact(self.rat + other.rat, self.logq + other.logq)

    __radd__ = __add__

    def __neg__(self):
        return LogExact(-self.rat, -self.logq)

    def __sub__(self, other):
        if not isinstance(other, LogExact):
            other = LogExact(other)
        return self + (-other)

    def __mul__(self, k):
        if isinstance(k, LogExact):
            if k.logq and self.logq:
                raise TypeError("product leaves LogExact")
            return LogExact(self.rat * k.rat, self.rat * k.logq + self.logq * k.rat)
        k = _fr(k)
        return LogExact(self.rat * k, self.logq * k)

    __rmul__ = __mul__

    def __truediv__(self, k):
        k = _fr(k)
        return LogExact(self.rat / k, self.logq / k)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LogExact(other)
        if not isinstance(other, LogExact):
            return NotImplemented
        return self.rat == other.rat and self.logq == other.logq

    def __hash__(self):
        return hash((self.rat, self.logq))

    def approx(self, q):
        return float(self.rat) + float(self.logq) * math.log(q)

    def to_json(self):
        return {"rat": frac_str(self.rat), "logq": frac_str(self.logq)}

    @classmethod
    def from_json(cls, d):
        return cls(parse_frac(d["rat"]), parse_frac(d["logq"]))

    def __repr__(self):
        return f"LogExact({self.rat}, {self.logq}*ln q)"


class LogPoly:
    """Laurent polynomial in L = ln q with rational coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        self.c = {k: _fr(v) for k, v in (coeffs or {}).items() if v}

    @classmethod
    def from_logexact(cls, x):
        return cls({0: x.rat, 1: x.logq})

    def __add__(self, other):
        if not isinstance(other, LogPoly):
            other = LogPoly({0: other})
        out = dict(self.c)
        for k, v in other.c.items():
            out[k] = out.get(k, 0) + v
        return LogPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LogPoly({k: -v for k, v in self.c.items()})

    def __sub__(self, other):
        if not isinstance(other, LogPoly):
            other = LogPoly({0: other})
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LogPoly):
            o = _fr(other)
            return LogPoly({k: v * o for k, v in self.c.items()})
        out = {}
        for a, x in self.c.items():
            for b, y in other.c.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return LogPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, LogExact):
            other = LogPoly.from_logexact(other)
        elif isinstance(other, (int, Fraction)):
            other = LogPoly({0: other})
        if not isinstance(other, LogPoly):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(tuple(sorted(self.c.items())))

    def is_zero(self):
        return not self.c

    def coeff(self, k):
        return self.c.get(k, Fraction(0))

    def to_logexact(self):
        if any(k not in (0, 1) for k in self.c):
            raise ValueError(f"not of the form a + b ln q: {self}")
        return LogExact(self.coeff(0), self.coeff(1))

    def approx(self, q):
        L = math.log(q)
        return sum(float(v) * L ** k for k, v in self.c.items())

    def to_json(self):
        return [[k, frac_str(v)] for k, v in sorted(self.c.items())]

    def __repr__(self):
        if not self.c:
            return "LogPoly(0)"
        return "LogPoly(" + " + ".join(f"{v}*L^{k}" for k, v in sorted(self.c.items())) + ")"
