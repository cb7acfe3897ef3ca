"""Polynomials over a prime field F_p in the variable T, and rational functions.

Coefficients are stored low degree first as a tuple of ints in [0, p).
"""
from fractions import Fraction
import re

from ..errors import DkronError, ZeroDenominator


def _trim(c):
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


class Poly:
    __slots__ = ("p", "c")

    def __init__(self, p, coeffs=()):
        self.p = p
        self.c = _trim([x % p for x in coeffs])

    @classmethod
    def _raw(cls, p, c):
        obj = object.__new__(cls)
        obj.p = p
        obj.c = c
        return obj

    @classmethod
    def T(cls, p):
        return cls._raw(p, (0, 1))

    @classmethod
    def const(cls, p, a):
        return cls(p, (a,))

    @classmethod
    def monomial(cls, p, n, a=1):
        return cls(p, [0] * n + [a])

    @property
    def deg(self):
        """Degree, with -1 for the zero polynomial."""
        return len(self.c) - 1

    def is_zero(self):
        return not self.c

    def is_const(self):
        return len(self.c) <= 1

    @property
    def lc(self):
        return self.c[-1] if self.c else 0

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly(self.p, (other,))
        if not isinstance(other, Poly):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash((self.p, self.c))

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, int):
            return Poly(self.p, (other,))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.p
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] = (out[i] + x) % p
        return Poly._raw(p, _trim(out))

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return Poly._raw(p, tuple((-x) % p for x in self.c))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            k = other % self.p
            if k == 0:
                return Poly._raw(self.p, ())
            return Poly._raw(self.p, tuple((x * k) % self.p for x in self.c))
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.c, other.c
        if not a or not b:
            return Poly._raw(self.p, ())
        p = self.p
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly._raw(p, _trim([v % p for v in out]))

    __rmul__ = __mul__

    def __pow__(self, n):
        out = Poly._raw(self.p, (1,))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other):
        o = self._coerce(other)
        if not o:
            raise ZeroDenominator("polynomial division by zero")
        p = self.p
        r = list(self.c)
        db = o.deg
        inv = pow(o.lc, p - 2, p)
        if len(r) - 1 < db:
            return Poly._raw(p, ()), self
        quo = [0] * (len(r) - db)
        bc = o.c
        for k in range(len(r) - 1 - db, -1, -1):
            coef = (r[k + db] * inv) % p
            quo[k] = coef
            if coef:
                for j, y in enumerate(bc):
                    r[k + j] = (r[k + j] - coef * y) % p
        return Poly._raw(p, _trim(quo)), Poly._raw(p, _trim(r[:db]))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        if not self.c:
            return self
        return self * pow(self.lc, self.p - 2, self.p)

    def is_monic(self):
        return self.lc == 1

    def __call__(self, x):
        acc = 0
        for a in reversed(self.c):
            acc = (acc * x + a) % self.p
        return acc

    def derivative(self):
        return Poly(self.p, [i * a for i, a in enumerate(self.c)][1:])

    def coeff(self, i):
        return self.c[i] if 0 <= i < len(self.c) else 0

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.c:
            return "0"
        parts = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if not a:
                continue
            if i == 0:
                parts.append(str(a))
            else:
                mono = "T" if i == 1 else f"T^{i}"
                parts.append(mono if a == 1 else f"{a}*{mono}")
        return "+".join(parts)


def pgcd(a, b):
    while b:
        a, b = b, a % b
    return a.monic()


def pxgcd(a, b):
    """Return (g, s, t) with s*a + t*b = g monic."""
    p = a.p
    r0, r1 = a, b
    s0, s1 = Poly(p, (1,)), Poly(p)
    t0, t1 = Poly(p), Poly(p, (1,))
    while r1:
        qt, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - qt * s1
        t0, t1 = t1, t0 - qt * t1
    if not r0:
        return r0, s0, t0
    k = pow(r0.lc, p - 2, p)
    return r0 * k, s0 * k, t0 * k


def powmod(a, n, m):
    out = Poly(a.p, (1,)) % m
    base = a % m
    while n:
        if n & 1:
            out = (out * base) % m
        base = (base * base) % m
        n >>= 1
    return out


def monic_polys(p, d):
    """All monic polynomials of exact degree d, in lexicographic order of the lower coefficients."""
    if d < 0:
        return
    total = p ** d
    for code in range(total):
        c = []
        x = code
        for _ in range(d):
            c.append(x % p)
            x //= p
        c.append(1)
        yield Poly._raw(p, tuple(c))


def polys_upto(p, d):
    """All polynomials of degree <= d (including 0)."""
    if d < 0:
        yield Poly._raw(p, ())
        return
    for code in range(p ** (d + 1)):
        c = []
        x = code
        for _ in range(d + 1):
            c.append(x % p)
            x //= p
        yield Poly(p, c)


def is_irreducible(f):
    """Trial factorization by monic polynomials of degree <= deg f / 2."""
    d = f.deg
    if d <= 0:
        return False
    if d == 1:
        return True
    for k in range(1, d // 2 + 1):
        for g in monic_polys(f.p, k):
            if not (f % g):
                return False
    return True


def is_squarefree(f):
    if f.deg <= 0:
        return True
    return pgcd(f, f.derivative()).deg == 0


def factor_small(f):
    """Factor a nonzero polynomial by trial division; returns (lc, [(P, k)])."""
    p = f.p
    lc = f.lc
    g = f.monic()
    out = []
    d = 1
    while g.deg >= 2 * d:
        for P in monic_polys(p, d):
            if not is_irreducible(P):
                continue
            k = 0
            while True:
                qt, r = divmod(g, P)
                if r:
                    break
                g = qt
                k += 1
            if k:
                out.append((P, k))
        d += 1
    if g.deg >= 1:
        out.append((g, 1))
    out.sort(key=lambda t: (t[0].deg, t[0].c))
    merged = []
    for P, k in out:
        if merged and merged[-1][0] == P:
            merged[-1] = (P, merged[-1][1] + k)
        else:
            merged.append((P, k))
    return lc, merged


class RatFunc:
    """Element of k = F_p(T) in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, RatFunc):
            self.num, self.den = num.num, num.den
            return
        p = num.p
        if den is None:
            den = Poly._raw(p, (1,))
        elif isinstance(den, int):
            den = Poly(p, (den,))
        if not den:
            raise ZeroDenominator("rational function with zero denominator")
        if not num:
            self.num, self.den = num, Poly._raw(p, (1,))
            return
        g = pgcd(num, den)
        if g.deg > 0:
            num, den = num // g, den // g
        k = pow(den.lc, p - 2, p)
        self.num, self.den = num * k, den * k

    @classmethod
    def _raw(cls, num, den):
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @property
    def p(self):
        return self.num.p

    @classmethod
    def const(cls, p, a):
        return cls(Poly(p, (a,)))

    @classmethod
    def T(cls, p):
        return cls(Poly.T(p))

    @classmethod
    def t_power(cls, p, n):
        """t^n with t = 1/T."""
        if n <= 0:
            return cls(Poly.monomial(p, -n))
        return cls._raw(Poly._raw(p, (1,)), Poly.monomial(p, n))

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_poly(self):
        return self.den.deg == 0

    @property
    def deg(self):
        """-ord_inf; undefined (raises) for zero."""
        if not self.num:
            raise DkronError("degree of zero")
        return self.num.deg - self.den.deg

    def _co(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other)
        if isinstance(other, int):
            return RatFunc(Poly(self.p, (other,)))
        return None

    def __eq__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inv(self):
        if not self.num:
            raise ZeroDenominator("inverse of zero")
        return RatFunc(self.den, self.num)

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
        return RatFunc(self.num ** n, self.den ** n)

    def polypart(self):
        return self.num // self.den

    def fracpart(self):
        return RatFunc(self.num % self.den, self.den)

    def laurent(self, upto):
        """Coefficients {n: c} of the expansion sum c t^n (t = 1/T) for n < upto."""
        if not self.num:
            return {}
        p = self.p
        v = -self.deg
        if upto <= v:
            return {}
        nterms = upto - v
        a = list(reversed(self.num.c))
        b = list(reversed(self.den.c))
        out = {}
        rem = a + [0] * max(0, nterms - len(a))
        for i in range(nterms):
            coef = rem[i] % p
            if coef:
                out[v + i] = coef
                for j in range(1, min(len(b), nterms - i)):
                    rem[i + j] = (rem[i + j] - coef * b[j]) % p
        return out

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if self.den.deg == 0:
            return str(self.num)
        n, d = str(self.num), str(self.den)
        if "+" in n:
            n = f"({n})"
        if "+" in d or "*" in d:
            d = f"({d})"
        return f"{n}/{d}"


def ratfunc_from_laurent(p, terms):
    """Finite sum of c t^n as an element of k."""
    if not terms:
        return RatFunc(Poly(p))
    top = max(max(terms), 0)
    num = {}
    for n, a in terms.items():
        num[top - n] = a
    deg = max(num)
    c = [0] * (deg + 1)
    for i, a in num.items():
        c[i] = a
    return RatFunc(Poly(p, c), Poly.monomial(p, top))


_TOKEN = re.compile(r"\s*(\d+|T|[()+\-*/^])")


def parse_poly(p, s):
    """Parse a polynomial or rational function in T, e.g. 'T^2+2*T+1' or '(T+1)/T'."""
    return _ExprParser(p, s).parse()


class _ExprParser:
    def __init__(self, p, s):
        self.p = p
        self.toks = []
        pos = 0
        s = s.strip()
        while pos < len(s):
            m = _TOKEN.match(s, pos)
            if not m:
                raise DkronError(f"cannot parse {s!r}")
            self.toks.append(m.group(1))
            pos = m.end()
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
            raise DkronError("trailing input")
        return v

    def expr(self):
        sign = 1
        if self.peek() == "-":
            self.take()
            sign = -1
        v = self.term() * sign
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
            elif nxt is not None and (nxt == "T" or nxt == "(" or nxt.isdigit()):
                v = v * self.factor()
            else:
                return v

    def factor(self):
        t = self.take()
        if t == "(":
            v = self.expr()
            if self.take() != ")":
                raise DkronError("unbalanced parenthesis")
        elif t == "T":
            v = RatFunc.T(self.p)
        elif t is not None and t.isdigit():
            v = RatFunc.const(self.p, int(t))
        else:
            raise DkronError(f"unexpected token {t!r}")
        if self.peek() == "^":
            self.take()
            neg = False
            if self.peek() == "-":
                self.take()
                neg = True
            e = int(self.take())
            v = v ** (-e if neg else e)
        return v


# matrices over k as lists of lists of RatFunc

def mat_identity(p, r):
    return [[RatFunc.const(p, 1 if i == j else 0) for j in range(r)] for i in range(r)]


def mat_mul(a, b):
    n, m, l = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(l):
            acc = a[i][0] * b[0][j]
            for k in range(1, m):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def vec_mat(x, m):
    """Row vector times matrix."""
    return [sum((x[i] * m[i][j] for i in range(1, len(x))), x[0] * m[0][j]) for j in range(len(m[0]))]


def mat_inv(a):
    r = len(a)
    p = a[0][0].p
    m = [list(row) + [RatFunc.const(p, 1 if i == j else 0) for j in range(r)] for i, row in enumerate(a)]
    for col in range(r):
        piv = next((i for i in range(col, r) if m[i][col]), None)
        if piv is None:
            raise ZeroDenominator("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        inv = m[col][col].inv()
        m[col] = [x * inv for x in m[col]]
        for i in range(r):
            if i != col and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return [row[r:] for row in m]


def mat_det(a):
    r = len(a)
    p = a[0][0].p
    m = [list(row) for row in a]
    det = RatFunc.const(p, 1)
    for col in range(r):
        piv = next((i for i in range(col, r) if m[i][col]), None)
        if piv is None:
            return RatFunc.const(p, 0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det = det * m[col][col]
        inv = m[col][col].inv()
        for i in range(col + 1, r):
            if m[i][col]:
                f = m[i][col] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return det


def hnf_rows(rows):
    """Row Hermite normal form over F_p[T] of a list of Poly rows.

    Returns the nonzero rows of an upper echelon basis of the row module, with
    monic pivots and entries above each pivot reduced modulo the pivot.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return []
    ncol = len(rows[0])
    out = []
    col = 0
    while rows and col < ncol:
        active = [r for r in rows if r[col]]
        rest = [r for r in rows if not r[col]]
        if not active:
            col += 1
            continue
        while len(active) > 1:
            active.sort(key=lambda r: r[col].deg)
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                qt = r[col] // piv[col]
                r2 = [x - qt * y for x, y in zip(r, piv)]
                if r2[col]:
                    nxt.append(r2)
                elif any(r2):
                    rest.append(r2)
            active = nxt
        piv = active[0]
        k = pow(piv[col].lc, piv[col].p - 2, piv[col].p)
        piv = [x * k for x in piv]
        out.append((col, piv))
        rows = rest
        col += 1
    res = [r for _, r in out]
    for i in range(len(res)):
        ci = out[i][0]
        for j in range(i):
            qt = res[j][ci] // res[i][ci]
            if qt:
                res[j] = [x - qt * y for x, y in zip(res[j], res[i])]
    return res


def qval_str(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"
