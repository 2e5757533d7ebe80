"""The coefficient tower: A = F_q[t], A_n = A/(t^n), K = F_q(t), K_infinity.

Polynomials are immutable ascending coefficient tuples of F_q codes with a
nonzero leading coefficient; deg(0) is the -infinity sentinel so valuation
arithmetic needs no special cases.  Rational functions are stored reduced
with a monic denominator.  Laurent expansions live at the place at infinity
with uniformizer pi = 1/t; the expansion of a rational function to any
finite precision is exact, and v_infinity itself is read off from degrees
without expanding.
"""

from .fq import field

NEG_INF = float("-inf")
POS_INF = float("inf")


class Poly:
    """Element of A = F_q[t]."""

    __slots__ = ("fq", "coeffs")

    def __init__(self, fq, coeffs, normalize=True):
        coeffs = tuple(coeffs)
        if normalize:
            n = len(coeffs)
            while n and coeffs[n - 1] == 0:
                n -= 1
            coeffs = coeffs[:n]
        self.fq = fq
        self.coeffs = coeffs

    # -- constructors ---------------------------------------------------
    @staticmethod
    def zero(fq):
        return Poly(fq, (), normalize=False)

    @staticmethod
    def one(fq):
        return Poly(fq, (1,), normalize=False)

    @staticmethod
    def t(fq):
        return Poly(fq, (0, 1), normalize=False)

    @staticmethod
    def constant(fq, code):
        return Poly(fq, (code,) if code else ())

    @staticmethod
    def t_power(fq, k):
        return Poly(fq, (0,) * k + (1,), normalize=False)

    @staticmethod
    def from_ints(fq, ints):
        return Poly(fq, tuple(fq.from_int(n) for n in ints))

    # -- structure --------------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_one(self):
        return self.coeffs == (1,)

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def constant_coeff(self):
        return self.coeffs[0] if self.coeffs else 0

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def vt(self):
        """t-adic valuation, +infinity for 0."""
        if not self.coeffs:
            return POS_INF
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise AssertionError

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        fq = self.fq
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        add = fq._add
        out = list(a)
        for i, c in enumerate(b):
            out[i] = add[out[i]][c]
        return Poly(fq, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        fq = self.fq
        neg = fq._neg
        return Poly(fq, tuple(neg[c] for c in self.coeffs), normalize=False)

    def __mul__(self, other):
        fq = self.fq
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(fq, (), normalize=False)
        add = fq._add
        mul = fq._mul
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                row = mul[ai]
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = add[out[i + j]][row[bj]]
        return Poly(fq, out, normalize=False)

    def scale(self, code):
        if code == 0:
            return Poly(self.fq, (), normalize=False)
        mul = self.fq._mul[code]
        return Poly(self.fq, tuple(mul[c] for c in self.coeffs), normalize=False)

    def shift(self, k):
        """Multiply by t^k (k >= 0)."""
        if not self.coeffs:
            return self
        return Poly(self.fq, (0,) * k + self.coeffs, normalize=False)

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        fq = self.fq
        rem = list(self.coeffs)
        degd = len(other.coeffs) - 1
        inv_lead = fq.inv(other.coeffs[-1])
        quo = [0] * max(0, len(rem) - degd)
        sub, mul = fq.sub, fq.mul
        for k in range(len(rem) - 1, degd - 1, -1):
            c = rem[k]
            if c:
                f = mul(c, inv_lead)
                quo[k - degd] = f
                for j in range(degd + 1):
                    rem[k - degd + j] = sub(rem[k - degd + j], mul(f, other.coeffs[j]))
        return Poly(fq, quo), Poly(fq, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divexact(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def __pow__(self, n):
        result = Poly.one(self.fq)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def monic(self):
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        return self.scale(self.fq.inv(self.coeffs[-1]))

    def truncate(self, n):
        """Reduce modulo t^n."""
        return Poly(self.fq, self.coeffs[:n])

    def eval_code(self, x):
        """Evaluate at an F_q code."""
        fq = self.fq
        acc = 0
        for c in reversed(self.coeffs):
            acc = fq.add(fq.mul(acc, x), c)
        return acc

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs and self.fq.q == other.fq.q

    def __hash__(self):
        return hash((self.fq.q, self.coeffs))

    def __repr__(self):
        return f"Poly({self.fq.q}, {self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                tp = "t" if i == 1 else f"t^{i}"
                terms.append(tp if c == 1 else f"{c}*{tp}")
        return "+".join(terms)


def poly_gcd(a, b):
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a, b):
    """Return (g, x, y) with g = gcd(a, b) monic and x*a + y*b = g."""
    fq = a.fq
    r0, r1 = a, b
    x0, x1 = Poly.one(fq), Poly.zero(fq)
    y0, y1 = Poly.zero(fq), Poly.one(fq)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if r0.is_zero():
        return r0, x0, y0
    lead_inv = fq.inv(r0.leading())
    return r0.scale(lead_inv), x0.scale(lead_inv), y0.scale(lead_inv)


def poly_is_irreducible(m):
    """Naive irreducibility check, adequate for the small moduli used here."""
    fq = m.fq
    d = m.degree
    if d is NEG_INF or d == 0:
        return False
    if d == 1:
        return True
    for x in fq.elements():
        if m.eval_code(x) == 0:
            return False
    if d <= 3:
        return True
    for dd in range(2, d // 2 + 1):
        for div in iter_polys(fq, dd + 1):
            if div.degree == dd and div.is_monic() and (m % div).is_zero():
                return False
    return True


def iter_polys(fq, length):
    """All polynomials with deg < length, in graded-lexicographic code order."""
    q = fq.q

    def rec(prefix, rem):
        if rem == 0:
            yield Poly(fq, prefix)
            return
        for c in range(q):
            yield from rec(prefix + [c], rem - 1)

    # enumerate by increasing degree so earlier items have smaller degree
    seen = set()
    for deglen in range(length + 1):
        for p in rec([], deglen):
            if p.coeffs not in seen:
                seen.add(p.coeffs)
                yield p


def polys_of_degree_less_than(fq, k):
    """Deterministically ordered list of all polynomials of degree < k."""
    out = [Poly.zero(fq)]
    seen = {()}
    for deglen in range(1, k + 1):
        for codes in _code_tuples(fq.q, deglen):
            p = Poly(fq, codes)
            if p.coeffs not in seen:
                seen.add(p.coeffs)
                out.append(p)
    return out


def _code_tuples(q, length):
    if length == 0:
        yield ()
        return
    for rest in _code_tuples(q, length - 1):
        for c in range(q):
            yield rest + (c,)


class Residue:
    """Class in A_n = A/(t^n), stored by its canonical degree < n lift."""

    __slots__ = ("n", "poly")

    def __init__(self, n, poly, reduce=True):
        self.n = n
        self.poly = poly.truncate(n) if reduce else poly

    @staticmethod
    def zero(fq, n):
        return Residue(n, Poly.zero(fq), reduce=False)

    @staticmethod
    def one(fq, n):
        return Residue(n, Poly.one(fq), reduce=False)

    def __add__(self, other):
        return Residue(self.n, self.poly + other.poly, reduce=False)

    def __sub__(self, other):
        return Residue(self.n, self.poly - other.poly, reduce=False)

    def __neg__(self):
        return Residue(self.n, -self.poly, reduce=False)

    def __mul__(self, other):
        return Residue(self.n, self.poly * other.poly)

    def is_unit(self):
        return self.poly.constant_coeff() != 0

    def inverse(self):
        if not self.is_unit():
            raise ZeroDivisionError(f"{self.poly} is not a unit mod t^{self.n}")
        fq = self.poly.fq
        g, x, _ = poly_xgcd(self.poly, Poly.t_power(fq, self.n))
        if not g.is_one():
            raise AssertionError("xgcd of a unit must be 1")
        return Residue(self.n, x)

    def is_zero(self):
        return self.poly.is_zero()

    def lift(self):
        return self.poly

    def bar_vt(self):
        """min(v_t(any lift), n): the capped t-adic valuation of the class."""
        v = self.poly.vt()
        return self.n if v is POS_INF else min(v, self.n)

    def __eq__(self, other):
        return isinstance(other, Residue) and self.n == other.n and self.poly == other.poly

    def __hash__(self):
        return hash((self.n, self.poly))

    def __repr__(self):
        return f"Residue(t^{self.n}, {self.poly})"


class RatFunc:
    """Element of K = F_q(t), reduced with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den, reduce=True):
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if reduce:
            if num.is_zero():
                den = Poly.one(num.fq)
            else:
                g = poly_gcd(num, den)
                if not g.is_one():
                    num = num.divexact(g)
                    den = den.divexact(g)
                if not den.is_monic():
                    c = num.fq.inv(den.leading())
                    num = num.scale(c)
                    den = den.scale(c)
        self.num = num
        self.den = den

    @staticmethod
    def from_poly(p):
        return RatFunc(p, Poly.one(p.fq), reduce=False)

    @staticmethod
    def zero(fq):
        return RatFunc(Poly.zero(fq), Poly.one(fq), reduce=False)

    @staticmethod
    def one(fq):
        return RatFunc(Poly.one(fq), Poly.one(fq), reduce=False)

    @staticmethod
    def constant(fq, code):
        return RatFunc(Poly.constant(fq, code), Poly.one(fq), reduce=False)

    @property
    def fq(self):
        return self.num.fq

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def __add__(self, other):
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        return RatFunc(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __mul__(self, other):
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def inverse(self):
        return RatFunc(self.den, self.num)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = RatFunc.one(self.fq)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def vt(self):
        """t-adic valuation v_t, normalized v_t(t) = 1; +infinity for 0."""
        if self.num.is_zero():
            return POS_INF
        return self.num.vt() - self.den.vt()

    def v_inf(self):
        """Valuation at infinity in pi = 1/t: deg(den) - deg(num)."""
        if self.num.is_zero():
            return POS_INF
        return self.den.degree - self.num.degree

    def is_poly(self):
        return self.den.is_one()

    def as_poly(self):
        if not self.den.is_one():
            raise ArithmeticError(f"{self} is not a polynomial")
        return self.num

    def __eq__(self, other):
        return (
            isinstance(other, RatFunc)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"


def vt(x):
    """t-adic order of vanishing at t = 0 for Poly or RatFunc input."""
    if isinstance(x, Poly):
        return x.vt()
    if isinstance(x, RatFunc):
        return x.vt()
    raise TypeError(f"vt expects Poly or RatFunc, got {type(x)!r}")


def bar_vt(c):
    """Capped valuation of a residue class (independent of the lift)."""
    return c.bar_vt()


class Laurent:
    """Truncated expansion at infinity: sum coeffs[i] * pi^(lead+i), pi = 1/t.

    ``coeffs`` holds exactly ``precision`` known terms; the first is nonzero
    unless the series is identically zero to this precision.
    """

    __slots__ = ("fq", "lead", "coeffs")

    def __init__(self, fq, lead, coeffs):
        coeffs = tuple(coeffs)
        # strip leading zeros into the exponent so the invariant holds
        while coeffs and coeffs[0] == 0:
            lead += 1
            coeffs = coeffs[1:]
        self.fq = fq
        self.lead = lead if coeffs else 0
        self.coeffs = coeffs

    @property
    def precision(self):
        return len(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def coeff(self, exp):
        i = exp - self.lead
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def terms(self):
        return tuple((self.lead + i, c) for i, c in enumerate(self.coeffs) if c)

    def mul(self, other):
        """Product, truncated to the honestly shared precision."""
        if self.is_zero() or other.is_zero():
            return Laurent(self.fq, 0, ())
        prec = min(self.precision, other.precision)
        fq = self.fq
        out = [0] * prec
        for i, a in enumerate(self.coeffs[:prec]):
            if a:
                for j, b in enumerate(other.coeffs[:prec]):
                    if b and i + j < prec:
                        out[i + j] = fq.add(out[i + j], fq.mul(a, b))
        return Laurent(fq, self.lead + other.lead, out)

    def is_one_to_precision(self):
        return self.lead == 0 and bool(self.coeffs) and self.coeffs[0] == 1 and all(
            c == 0 for c in self.coeffs[1:]
        )

    def __eq__(self, other):
        return (
            isinstance(other, Laurent)
            and self.lead == other.lead
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.lead, self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return "Laurent(0)"
        ts = " + ".join(f"{c}*pi^{self.lead + i}" for i, c in enumerate(self.coeffs) if c)
        return f"Laurent({ts})"


def laurent_expand(x, precision):
    """Exact expansion of x in K at infinity to ``precision`` terms.

    The leading exponent is deg(den) - deg(num).  Both reversed numerator
    and denominator have nonzero constant term, so a plain power-series
    division in pi produces the expansion.
    """
    if precision < 1:
        raise ValueError("precision must be >= 1")
    fq = x.fq
    if x.is_zero():
        return Laurent(fq, 0, ())
    num, den = x.num, x.den
    lead = den.degree - num.degree
    rn = tuple(reversed(num.coeffs))
    rd = tuple(reversed(den.coeffs))
    out = []
    acc = list(rn[:precision]) + [0] * max(0, precision - len(rn))
    inv0 = fq.inv(rd[0])
    for i in range(precision):
        c = fq.mul(acc[i], inv0)
        out.append(c)
        if c:
            for j in range(1, min(len(rd), precision - i)):
                acc[i + j] = fq.sub(acc[i + j], fq.mul(c, rd[j]))
    return Laurent(fq, lead, out)


def laurent_tail(x, below):
    """Terms of the expansion of x with exponent < ``below``, as a tuple.

    This is the canonical representative of x modulo pi^below * O.
    """
    if x.is_zero():
        return ()
    v = x.v_inf()
    n_terms = below - v
    if n_terms <= 0:
        return ()
    series = laurent_expand(x, n_terms)
    return series.terms()


def tail_to_ratfunc(fq, tail):
    """Rebuild the finite Laurent polynomial sum c * t^(-exp) as an element of K."""
    if not tail:
        return RatFunc.zero(fq)
    max_exp = max(e for e, _ in tail)
    shift = max(0, max_exp)
    num = Poly.zero(fq)
    for e, c in tail:
        num = num + Poly.constant(fq, c).shift(shift - e)
    return RatFunc(num, Poly.t_power(fq, shift))
