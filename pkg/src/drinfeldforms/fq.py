"""Arithmetic in the finite field F_q, q = p^e.

Elements are represented by integer codes 0..q-1: the code of the element
with coordinate vector (c_0, ..., c_{e-1}) in the fixed polynomial basis
over F_p is sum c_i p^i.  The basis is F_p[x]/(modulus) where the modulus
is the lexicographically smallest monic irreducible of degree e over F_p,
chosen once per q, so codes are a stable encoding for serialization.

All operations are table driven (q is small in every intended use), and a
field object is created at most once per q via :func:`field`.
"""

from functools import lru_cache


def _is_prime(n):
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def _factor_prime_power(q):
    """Return (p, e) with q = p^e, or raise ValueError."""
    if q < 2:
        raise ValueError(f"q must be a prime power >= 2, got {q}")
    for p in range(2, q + 1):
        if _is_prime(p) and q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            if m != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, e
    raise ValueError(f"{q} is not a prime power")


def _fp_poly_mulmod(a, b, modulus, p):
    """Multiply coefficient tuples a, b over F_p modulo a monic modulus."""
    e = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # reduce modulo the monic modulus
    for k in range(len(prod) - 1, e - 1, -1):
        c = prod[k]
        if c:
            prod[k] = 0
            for j in range(e + 1):
                prod[k - e + j] = (prod[k - e + j] - c * modulus[j]) % p
    while len(prod) < e:
        prod.append(0)
    return tuple(prod[:e])


def _fp_poly_is_irreducible(coeffs, p):
    """Naive irreducibility test for a monic polynomial over F_p."""
    deg = len(coeffs) - 1
    if deg <= 0:
        return False
    if deg == 1:
        return True
    # no roots
    for r in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * r + c) % p
        if acc == 0:
            return False
    if deg <= 3:
        return True
    # trial division by monic polynomials of degree 2..deg/2
    for d in range(2, deg // 2 + 1):
        for code in range(p ** d):
            div = _decode(code, p, d) + (1,)
            if _fp_poly_divides(div, coeffs, p):
                return False
    return True


def _fp_poly_divides(d, f, p):
    f = list(f)
    degd = len(d) - 1
    while len(f) - 1 >= degd:
        lead = f[-1]
        if lead:
            shift = len(f) - 1 - degd
            for j in range(degd + 1):
                f[shift + j] = (f[shift + j] - lead * d[j]) % p
        f.pop()
    return all(c == 0 for c in f)


def _decode(code, p, e):
    digits = []
    for _ in range(e):
        digits.append(code % p)
        code //= p
    return tuple(digits)


def _encode(digits, p):
    code = 0
    for d in reversed(digits):
        code = code * p + d
    return code


class Fq:
    """The field F_q with table-driven arithmetic on integer codes."""

    def __init__(self, q):
        p, e = _factor_prime_power(q)
        if q > 256:
            raise ValueError(f"q = {q} exceeds the supported table size")
        self.q = q
        self.p = p
        self.e = e
        if e == 1:
            self.modulus = (0, 1)  # x: a formal placeholder, unused for e = 1
        else:
            self.modulus = self._find_modulus()
        self._build_tables()
        self.zero = 0
        self.one = 1

    def _find_modulus(self):
        p, e = self.p, self.e
        for code in range(p ** e):
            coeffs = _decode(code, p, e) + (1,)
            if _fp_poly_is_irreducible(coeffs, p):
                return coeffs
        raise AssertionError("no irreducible modulus found")

    def _build_tables(self):
        p, e, q = self.p, self.e, self.q
        vecs = [_decode(c, p, e) for c in range(q)]
        add = [[0] * q for _ in range(q)]
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            va = vecs[a]
            for b in range(q):
                vb = vecs[b]
                add[a][b] = _encode(tuple((x + y) % p for x, y in zip(va, vb)), p)
                mul[a][b] = _encode(_fp_poly_mulmod(va, vb, self.modulus, p), p)
        self._add = add
        self._mul = mul
        self._neg = [_encode(tuple((-x) % p for x in vecs[a]), p) for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        self._inv = inv

    # -- raw code arithmetic ------------------------------------------------
    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def mul(self, a, b):
        return self._mul[a][b]

    def neg(self, a):
        return self._neg[a]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_q")
        return self._inv[a]

    def div(self, a, b):
        return self._mul[a][self.inv(b)]

    def from_int(self, n):
        """Reduce an integer to a code: n mod q read in the fixed basis.

        For prime q this is the ring map Z -> F_q.
        """
        return n % self.q

    def elements(self):
        return range(self.q)

    def nonzero(self):
        return range(1, self.q)

    # -- element wrappers ---------------------------------------------------
    def elem(self, code):
        return FqElem(self, code % self.q if code >= 0 else self.from_int(code))

    def __repr__(self):
        return f"Fq({self.q})"

    def __eq__(self, other):
        return isinstance(other, Fq) and other.q == self.q

    def __hash__(self):
        return hash(("Fq", self.q))


class FqElem:
    """A wrapped F_q element, for generic code paths that want operators."""

    __slots__ = ("fq", "code")

    def __init__(self, fq, code):
        self.fq = fq
        self.code = code

    def __add__(self, other):
        return FqElem(self.fq, self.fq.add(self.code, other.code))

    def __sub__(self, other):
        return FqElem(self.fq, self.fq.sub(self.code, other.code))

    def __mul__(self, other):
        return FqElem(self.fq, self.fq.mul(self.code, other.code))

    def __truediv__(self, other):
        return FqElem(self.fq, self.fq.div(self.code, other.code))

    def __neg__(self):
        return FqElem(self.fq, self.fq.neg(self.code))

    def inverse(self):
        return FqElem(self.fq, self.fq.inv(self.code))

    def is_zero(self):
        return self.code == 0

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        return isinstance(other, FqElem) and self.code == other.code and self.fq.q == other.fq.q

    def __hash__(self):
        return hash((self.fq.q, self.code))

    def __repr__(self):
        return f"FqElem({self.fq.q}, {self.code})"


@lru_cache(maxsize=None)
def field(q):
    """The cached F_q context for a prime power q."""
    return Fq(q)
