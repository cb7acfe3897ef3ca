"""Finite fields F_q (q an odd prime) and their extensions F_{q^m}.

An element of F_{q^m} is an int code whose base-q digits are the coefficients
of the power basis 1, zeta, ..., zeta^{m-1}, with zeta a root of the tabled
irreducible polynomial. In particular the codes 0..q-1 are exactly F_q.
"""
from math import gcd

from .. import config
from ..errors import DkronError, NoIrreducibleTabled
from .polys import Poly, is_irreducible, monic_polys, powmod

TABLE_LIMIT = 1 << 21


def _is_prime(n):
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n ** 0.5) + 1))


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class GroundField:
    """The constant field F_q; also the registry of extension fields used in a session."""

    _instances = {}

    def __new__(cls, q):
        if q in cls._instances:
            return cls._instances[q]
        if not (_is_prime(q) and q % 2 == 1 and 3 <= q <= 31):
            raise DkronError(f"q must be an odd prime in [3, 31], got {q}")
        obj = super().__new__(cls)
        obj.q = obj.p = q
        obj.q_inf = q
        obj._ext = {}
        obj._irr = {}
        cls._instances[q] = obj
        return obj

    def irreducible(self, m):
        """First monic irreducible of degree m in lexicographic order of its coefficient list."""
        if m not in self._irr:
            for f in monic_polys(self.p, m):
                if is_irreducible(f):
                    self._irr[m] = f
                    break
        return self._irr[m]

    def ext(self, m):
        return field_tower(self, m)

    def __repr__(self):
        return f"GroundField({self.q})"


def field_tower(gf, m, bound=None):
    bound = config.settings.ext_bound if bound is None else bound
    if m < 1:
        raise DkronError("extension degree must be positive")
    if m not in gf._ext:
        if m > bound:
            raise NoIrreducibleTabled(f"extension degree {m} exceeds the session bound {bound}")
        gf._ext[m] = ExtField(gf, m)
    return gf._ext[m]


class ExtField:
    def __init__(self, gf, m):
        self.gf = gf
        self.p = p = gf.p
        self.m = m
        self.size = p ** m
        self.modulus = gf.irreducible(m)
        self._pw = [p ** i for i in range(m + 1)]
        self._embed = {}
        if self.size > TABLE_LIMIT:
            raise NoIrreducibleTabled(f"F_{p}^{m} is too large for table arithmetic")
        self._build_tables()

    # digit/poly conversions
    def digits(self, a):
        p = self.p
        out = []
        for _ in range(self.m):
            out.append(a % p)
            a //= p
        return out

    def from_digits(self, d):
        p = self.p
        code = 0
        for x in reversed(list(d)[: self.m]):
            code = code * p + (x % p)
        return code

    def _to_poly(self, a):
        return Poly(self.p, self.digits(a))

    def _from_poly(self, f):
        return self.from_digits(list(f.c) + [0] * (self.m - len(f.c)))

    def _build_tables(self):
        size, p, m = self.size, self.p, self.m
        n = size - 1
        if m == 1:
            g = next(x for x in range(1, p) if all(pow(x, n // l, p) != 1 for l in _prime_factors(n)) or n == 1)
        else:
            fl = _prime_factors(n)
            g = None
            for code in range(2, size):
                gp = self._to_poly(code)
                if all(powmod(gp, n // l, self.modulus) != Poly(p, (1,)) for l in fl):
                    g = code
                    break
        self.generator = g
        exp = [0] * n
        log = [0] * size
        if m == 1:
            x = 1
            for i in range(n):
                exp[i] = x
                log[x] = i
                x = (x * g) % p
        else:
            gd = self.digits(g)
            mod = list(self.modulus.c)
            cur = [1] + [0] * (m - 1)
            for i in range(n):
                code = self.from_digits(cur)
                exp[i] = code
                log[code] = i
                prod = [0] * (2 * m - 1)
                for a, x in enumerate(cur):
                    if x:
                        for b, y in enumerate(gd):
                            prod[a + b] += x * y
                for k in range(2 * m - 2, m - 1, -1):
                    c = prod[k] % p
                    if c:
                        for j in range(m + 1):
                            prod[k - m + j] -= c * mod[j]
                cur = [v % p for v in prod[:m]]
        self._exp = exp
        self._log = log
        if m > 1 and size <= 1024:
            self._addt = [[self._add_slow(a, b) for b in range(size)] for a in range(size)]
        else:
            self._addt = None
        self._negt = [self._neg_slow(a) for a in range(size)]

    def _add_slow(self, a, b):
        p = self.p
        out, pw = 0, 1
        for _ in range(self.m):
            out += ((a % p + b % p) % p) * pw
            a //= p
            b //= p
            pw *= p
        return out

    def _neg_slow(self, a):
        p = self.p
        out, pw = 0, 1
        for _ in range(self.m):
            out += ((-(a % p)) % p) * pw
            a //= p
            pw *= p
        return out

    # arithmetic on codes
    def add(self, a, b):
        if self.m == 1:
            return (a + b) % self.p
        if self._addt is not None:
            return self._addt[a][b]
        return self._add_slow(a, b)

    def neg(self, a):
        return self._negt[a]

    def sub(self, a, b):
        return self.add(a, self._negt[b])

    def mul(self, a, b):
        if not a or not b:
            return 0
        if self.m == 1:
            return (a * b) % self.p
        return self._exp[(self._log[a] + self._log[b]) % (self.size - 1)]

    def inv(self, a):
        if not a:
            raise DkronError("inverse of zero in finite field")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[(-self._log[a]) % (self.size - 1)]

    def pow(self, a, n):
        if not a:
            return 0 if n else 1
        return self._exp[(self._log[a] * n) % (self.size - 1)]

    def scalar(self, c, a):
        """Multiply by an element of F_q."""
        return self.mul(c % self.p, a)

    def is_base(self, a):
        return a < self.p

    def is_square(self, a):
        return a == 0 or self._log[a] % 2 == 0

    def sqrt(self, a):
        """Canonical square root g^{log(a)/2}, or None if a is not a square."""
        if a == 0:
            return 0
        la = self._log[a]
        if la % 2:
            return None
        return self._exp[la // 2]

    @property
    def zeta(self):
        return self.p if self.m > 1 else 0

    def embedding(self, target):
        """Code table of the embedding of self into target (m | target.m)."""
        if target is self:
            return None
        key = target.m
        if key in self._embed:
            return self._embed[key]
        if target.m % self.m:
            raise DkronError("no embedding between these fields")
        mod = list(self.modulus.c)
        root = None
        for code in range(target.size):
            acc = 0
            for c in reversed(mod):
                acc = target.add(target.mul(acc, code), c)
            if acc == 0:
                root = code
                break
        pows = [1]
        for _ in range(self.m - 1):
            pows.append(target.mul(pows[-1], root))
        table = []
        for code in range(self.size):
            acc = 0
            for d, pw in zip(self.digits(code), pows):
                if d:
                    acc = target.add(acc, target.scalar(d, pw))
            table.append(acc)
        self._embed[key] = table
        return table

    def fmt(self, a):
        if self.m == 1:
            return str(a)
        parts = []
        for i, d in reversed(list(enumerate(self.digits(a)))):
            if not d:
                continue
            if i == 0:
                parts.append(str(d))
            else:
                mono = "zeta" if i == 1 else f"zeta^{i}"
                parts.append(mono if d == 1 else f"{d}*{mono}")
        return "+".join(parts) if parts else "0"

    def __repr__(self):
        return f"F_{self.p}^{self.m}"


def common_field(f1, f2):
    if f1 is f2:
        return f1
    m = f1.m * f2.m // gcd(f1.m, f2.m)
    return field_tower(f1.gf, m)


def fq_solve(vectors, target, p):
    """Solve target = sum a_j vectors[j] over F_p; vectors are digit lists. Returns list or None."""
    n = len(vectors)
    if n == 0:
        return None if any(x % p for x in target) else []
    m = len(target)
    rows = [[vectors[j][i] % p for j in range(n)] + [target[i] % p] for i in range(m)]
    piv_cols = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, m):
        if rows[i][n]:
            return None
    sol = [0] * n
    for i, c in enumerate(piv_cols):
        sol[c] = rows[i][n]
    return sol
