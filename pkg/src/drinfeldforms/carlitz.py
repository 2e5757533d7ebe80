"""Carlitz module polynomials, Goss polynomials, and the u-expansion checks.

The Carlitz action sends t to Z -> tZ + Z^q; Phi_a is the additive
polynomial of the action of a, stored by its coefficients on Z^(q^i).  The
m-torsion exponential is e(z) = m^{-1} Phi_m(z), and the Goss polynomials
G_{i,m} express the power sums of 1/(z - lambda) over lambda in the
m-torsion as polynomials in u = 1/e(z):

    sum_i G_i(u) w^{i-1} = u / (1 - u * e(w)).

Two independent routes compute them: the classical recursion
G_i = X*(G_{i-1} + sum_j alpha_j G_{i-q^j}) with G_1 = X, and coefficient
extraction from the generating identity, G_i(X) = sum_j [w^{i-1}](e(w)^j)
X^{j+1}.  Tests pin them against each other; the engine's certificates
check the scaling and integrality facts the Hecke computations rely on:

  (1) G_1(mX) = mX;
  (2) G_i(mX) lies in m*A[X] with no linear term, for i >= 2;
  (3) u(mz), expanded as u^{q^r} / (1 + c_{r-1} u^{q^r - q^{r-1}} + ... +
      m u^{q^r - 1}), has all coefficients in A and order >= 2 in u;

together with the one-level pullback

    t*u / (1 + t^l * beta * zeta * u)  in  t*u*A[beta, zeta][[u]],

whose geometric expansion is carried out in the polynomial ring with beta
and zeta as formal symbols.
"""

from .linalg import KRing, UPoly
from .rings import Poly, RatFunc, poly_is_irreducible
from .series import KSeriesRing, SymPoly, SymRing, USeries


class AdditivePoly:
    """F_q-linear polynomial sum coeffs[i] * Z^(q^i), coeffs in A."""

    __slots__ = ("fq", "coeffs")

    def __init__(self, fq, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.fq = fq
        self.coeffs = tuple(coeffs)

    @property
    def tau_degree(self):
        return len(self.coeffs) - 1

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Poly.zero(self.fq)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return AdditivePoly(self.fq, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def scale(self, p):
        return AdditivePoly(self.fq, [p * c for c in self.coeffs])

    def compose(self, other):
        """(self o other): coefficient of Z^(q^(i+j)) is self_i * other_j^(q^i)."""
        q = self.fq.q
        n = len(self.coeffs) + len(other.coeffs) - 1
        out = [Poly.zero(self.fq) for _ in range(max(n, 0))]
        for i, fi in enumerate(self.coeffs):
            if fi.is_zero():
                continue
            for j, gj in enumerate(other.coeffs):
                if not gj.is_zero():
                    out[i + j] = out[i + j] + fi * (gj ** (q ** i))
        return AdditivePoly(self.fq, out)

    def __eq__(self, other):
        return isinstance(other, AdditivePoly) and self.coeffs == other.coeffs

    def __repr__(self):
        parts = [f"({c})*Z^q^{i}" for i, c in enumerate(self.coeffs) if not c.is_zero()]
        return " + ".join(parts) if parts else "0"


def carlitz_phi(a):
    """The additive polynomial Phi_a of the Carlitz action of a in A \\ {0}."""
    if a.is_zero():
        raise ValueError("the Carlitz action is defined for nonzero a")
    fq = a.fq
    phi_t = AdditivePoly(fq, [Poly.t(fq), Poly.one(fq)])
    # Horner in t: Phi_{sum a_i t^i} = sum a_i Phi_t^(o i)
    result = AdditivePoly(fq, [])
    power = AdditivePoly(fq, [Poly.one(fq)])  # Phi_t^(o 0) = Z
    for i, code in enumerate(a.coeffs):
        if i > 0:
            power = phi_t.compose(power)
        if code:
            result = result + power.scale(Poly.constant(fq, code))
    return result


def exp_coeffs(m):
    """Coefficients alpha_i of Z^(q^i) in m^{-1} Phi_m(Z), as elements of K.

    For monic irreducible m of degree r these satisfy alpha_i in A for
    i < r and alpha_r = 1/m; this is exactly testable and tested.
    """
    phi = carlitz_phi(m)
    minv = RatFunc(Poly.one(m.fq), m)
    return [RatFunc.from_poly(c) * minv for c in phi.coeffs]


def torsion_exponential(m):
    """e(w) = m^{-1} Phi_m(w) as a dense coefficient list over K (deg q^r)."""
    fq = m.fq
    q = fq.q
    alphas = exp_coeffs(m)
    deg = q ** (len(alphas) - 1)
    dense = [RatFunc.zero(fq) for _ in range(deg + 1)]
    for i, alpha in enumerate(alphas):
        dense[q ** i] = alpha
    return dense


def goss_polynomials(m, imax):
    """G_1..G_imax for the m-torsion lattice, by the classical recursion.

    G_1 = X, G_i = 0 for i <= 0, and for i >= 2
    G_i = X * (G_{i-1} + alpha_1 G_{i-q} + alpha_2 G_{i-q^2} + ...).
    """
    _require_monic_irreducible(m)
    if imax < 1:
        raise ValueError("imax must be >= 1")
    fq = m.fq
    q = fq.q
    ring = KRing(fq)
    alphas = exp_coeffs(m)
    x = UPoly.x(ring)
    gs = {1: x}
    for i in range(2, imax + 1):
        acc = gs.get(i - 1, UPoly.zero(ring))
        j = 1
        while q ** j < i:
            if j < len(alphas):
                prev = gs.get(i - q ** j)
                if prev is not None:
                    acc = acc + _upoly_scale(prev, alphas[j])
            j += 1
        gs[i] = x * acc
    return [gs[i] for i in range(1, imax + 1)]


def goss_polynomials_oracle(m, imax):
    """Independent route: G_i(X) = sum_j [w^{i-1}](e(w)^j) * X^{j+1}.

    Only coefficient arithmetic on e(w) = m^{-1} Phi_m(w); no roots are
    ever enumerated.
    """
    _require_monic_irreducible(m)
    fq = m.fq
    ring = KRing(fq)
    e_dense = torsion_exponential(m)
    # powers of e(w) truncated to degree imax - 1
    powers = [[RatFunc.one(fq)]]  # e^0 = 1
    for _ in range(1, imax):
        powers.append(_truncated_mul(powers[-1], e_dense, imax))
    out = []
    for i in range(1, imax + 1):
        coeffs = [ring.zero, ring.zero]  # X^0, X^1 slots to start
        for j in range(0, i):
            c = powers[j][i - 1] if i - 1 < len(powers[j]) else RatFunc.zero(fq)
            while len(coeffs) <= j + 1:
                coeffs.append(ring.zero)
            coeffs[j + 1] = c
        out.append(UPoly(ring, coeffs))
    return out


def _truncated_mul(a, b, prec):
    fq = a[0].fq
    out = [RatFunc.zero(fq) for _ in range(prec)]
    for i, x in enumerate(a[:prec]):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if i + j >= prec:
                break
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return out


def _upoly_scale(p, c):
    return UPoly(p.ring, [c * a for a in p.coeffs])


def _require_monic_irreducible(m):
    if not m.is_monic() or not poly_is_irreducible(m):
        raise ValueError(f"{m} is not monic irreducible over F_{m.fq.q}")


def verify_coeff_scaling(m, imax, precision):
    """Certificates for the torsion-scaling facts (1)-(3) above.

    Returns a report dict; ``status`` is True only if every item holds.
    """
    _require_monic_irreducible(m)
    fq = m.fq
    q = fq.q
    r = int(m.degree)
    if precision < q ** r + 2:
        raise ValueError(f"precision {precision} too small: need >= q^deg(m) + 2 = {q ** r + 2}")
    gs = goss_polynomials(m, imax)
    mk = RatFunc.from_poly(m)

    # (1) G_1(mX) = mX
    g1m = _substitute_scaled(gs[0], mk)
    item1 = len(g1m.coeffs) == 2 and g1m.coeffs[1] == mk and g1m.coeffs[0].is_zero()

    # (2) G_i(mX) in m*A[X], no linear term, for 2 <= i <= imax
    item2 = True
    item2_witness = None
    for i in range(2, imax + 1):
        gim = _substitute_scaled(gs[i - 1], mk)
        if not gim.coeff(1).is_zero() or not gim.coeff(0).is_zero():
            item2 = False
            item2_witness = {"i": i, "reason": "nonzero constant or linear term"}
            break
        for c in gim.coeffs:
            scaled = c / mk
            if not scaled.is_zero() and not scaled.is_poly():
                item2 = False
                item2_witness = {"i": i, "coefficient": str(c)}
                break
        if not item2:
            break

    # (3) u(mz) = u^{q^r} / (1 + c_{r-1} u^{q^r-q^{r-1}} + ... + m u^{q^r-1})
    phi = carlitz_phi(m)
    ring = KSeriesRing(fq)
    den = USeries.one(ring, precision)
    qr = q ** r
    for j in range(0, r):
        cj = phi.coeff(j)  # c_0 = m
        if not cj.is_zero():
            den = den + USeries.u_power(ring, qr - q ** j, precision) * USeries(
                ring, [RatFunc.from_poly(cj)], precision
            )
    series = den.inverse().shift(qr)
    order = series.order()
    item3 = order is not None and order >= 2
    coeffs_in_a = all(c.is_zero() or c.is_poly() for c in series.coeffs)
    item3 = item3 and coeffs_in_a

    status = bool(item1 and item2 and item3)
    return {
        "lemma": "torsion-scaling",
        "params": {"q": q, "m": str(m), "imax": imax, "precision": precision},
        "status": status,
        "items": {
            "linear-goss-scaling": bool(item1),
            "higher-goss-scaling": bool(item2),
            "pullback-order": bool(item3),
        },
        "witness": item2_witness,
        "pullback_order": order,
    }


def _substitute_scaled(g, c):
    """g(c*X) for a UPoly over K."""
    out = []
    power = RatFunc.one(c.fq)
    for a in g.coeffs:
        out.append(a * power)
        power = power * c
    return UPoly(g.ring, out)


def verify_uniformizer_pullback(fq, l, precision):
    """Certificate for the one-level uniformizer pullback expansion.

    Expands t*u / (1 + t^l * beta * zeta * u) as a u-series over
    A[beta, zeta] and certifies: order exactly 1, leading coefficient t,
    and every coefficient an honest polynomial in beta, zeta over A.
    Specializing beta = 0 must collapse the series to t*u exactly.
    """
    if l < 1:
        raise ValueError("l must be >= 1")
    if precision < 2:
        raise ValueError("precision must be >= 2")
    ring = SymRing(fq)
    t = Poly.t(fq)
    beta = SymPoly.symbol(fq, "beta")
    zeta = SymPoly.symbol(fq, "zeta")
    tl_beta_zeta = SymPoly.from_poly(Poly.t_power(fq, l)) * beta * zeta
    den = USeries.one(ring, precision) + USeries(ring, [ring.zero, tl_beta_zeta], precision)
    series = USeries(ring, [ring.zero, SymPoly.from_poly(t)], precision) * den.inverse()
    order = series.order()
    lead_ok = order == 1 and series.coeff(1) == SymPoly.from_poly(t)
    in_ring = all(c.coefficients_in_A() for c in series.coeffs)
    beta_zero = USeries(ring, [c.substitute_beta_zero() for c in series.coeffs], precision)
    beta_zero_ok = beta_zero == USeries(ring, [ring.zero, SymPoly.from_poly(t)], precision)
    status = bool(lead_ok and in_ring and beta_zero_ok)
    return {
        "lemma": "uniformizer-pullback",
        "params": {"q": fq.q, "l": l, "precision": precision},
        "status": status,
        "items": {
            "order-one-leading-t": bool(lead_ok),
            "coefficients-in-ring": bool(in_ring),
            "beta-zero-specialization": bool(beta_zero_ok),
        },
        "sample_terms": [repr(series.coeff(i)) for i in range(min(4, precision))],
    }
