import random

import pytest

from drinfeldforms.carlitz import (
    carlitz_phi,
    exp_coeffs,
    goss_polynomials,
    goss_polynomials_oracle,
    torsion_exponential,
    verify_coeff_scaling,
    verify_uniformizer_pullback,
)
from drinfeldforms.fq import field
from drinfeldforms.linalg import KRing, UPoly
from drinfeldforms.rings import Poly, RatFunc


def rand_poly(fq, rng, maxdeg):
    return Poly(fq, [rng.randrange(fq.q) for _ in range(rng.randrange(1, maxdeg + 2))])


def test_phi_t_and_examples():
    fq = field(2)
    t, one = Poly.t(fq), Poly.one(fq)
    phi_t = carlitz_phi(t)
    assert phi_t.coeffs == (t, one)
    assert carlitz_phi(one).coeffs == (one,)
    phi_t2 = carlitz_phi(t * t)
    assert phi_t2.coeffs == (t * t, t + t ** fq.q, one)
    with pytest.raises(ValueError):
        carlitz_phi(Poly.zero(fq))


@pytest.mark.parametrize("q", [2, 3])
def test_module_axiom_randomized(q):
    fq = field(q)
    rng = random.Random(q * 7)
    for _ in range(15):
        a = rand_poly(fq, rng, 3)
        b = rand_poly(fq, rng, 3)
        if a.is_zero() or b.is_zero():
            continue
        assert carlitz_phi(a * b) == carlitz_phi(a).compose(carlitz_phi(b))
        assert carlitz_phi(a).compose(carlitz_phi(b)) == carlitz_phi(b).compose(carlitz_phi(a))


def irreducibles(fq, maxdeg):
    from drinfeldforms.rings import poly_is_irreducible, polys_of_degree_less_than

    out = []
    for p in polys_of_degree_less_than(fq, maxdeg + 1):
        if p.is_monic() and poly_is_irreducible(p):
            out.append(p)
    return out


@pytest.mark.parametrize("q", [2, 3])
def test_exp_coeffs_integrality(q):
    fq = field(q)
    for m in irreducibles(fq, 3):
        alphas = exp_coeffs(m)
        r = int(m.degree)
        assert all(alphas[i].is_poly() for i in range(r))
        assert alphas[r] == RatFunc(Poly.one(fq), m)
        assert alphas[0].is_one() or alphas[0] == RatFunc.from_poly(m) / RatFunc.from_poly(m)


def test_goss_small_closed_forms():
    fq = field(2)
    t = Poly.t(fq)
    gs = goss_polynomials(t, 3)
    K = KRing(fq)
    x = UPoly.x(K)
    assert gs[0] == x
    assert gs[1] == x * x  # q = 2, m = t: G_2 = X^2
    tinv = RatFunc(Poly.one(fq), t)
    assert gs[2] == x ** 3 + UPoly(K, [K.zero, K.zero, tinv])


@pytest.mark.parametrize("q", [2, 3])
def test_goss_recursion_matches_generating_oracle(q):
    fq = field(q)
    for m in irreducibles(fq, 2):
        imax = q * q + 3
        rec = goss_polynomials(m, imax)
        ora = goss_polynomials_oracle(m, imax)
        assert rec == ora
        # G_1 = X; no constant or linear terms beyond G_1
        assert rec[0] == UPoly.x(KRing(fq))
        for g in rec[1:]:
            assert g.coeff(0).is_zero() and g.coeff(1).is_zero()


def test_goss_requires_irreducible():
    fq = field(3)
    t, one = Poly.t(fq), Poly.one(fq)
    with pytest.raises(ValueError):
        goss_polynomials(t * t + t + one, 4)  # (t-1)^2 over F_3
    with pytest.raises(ValueError):
        goss_polynomials(t * t, 4)


def test_torsion_exponential_is_sparse():
    fq = field(2)
    m = Poly.t(fq) * Poly.t(fq) + Poly.t(fq) + Poly.one(fq)
    dense = torsion_exponential(m)
    support = [i for i, c in enumerate(dense) if not c.is_zero()]
    assert support == [1, 2, 4]  # q^0, q^1, q^2


@pytest.mark.parametrize("q", [2, 3])
def test_coeff_scaling_certificates(q):
    fq = field(q)
    t, one = Poly.t(fq), Poly.one(fq)
    ms = [t, t + one]
    deg2 = t * t + t + one
    from drinfeldforms.rings import poly_is_irreducible

    if poly_is_irreducible(deg2):
        ms.append(deg2)
    else:
        ms.append(t * t + one)
    for m in ms:
        rep = verify_coeff_scaling(m, q * q, 64)
        assert rep["status"], rep
        assert rep["items"]["linear-goss-scaling"]
        assert rep["items"]["higher-goss-scaling"]
        assert rep["items"]["pullback-order"]
        assert rep["pullback_order"] == q ** int(m.degree)


def test_coeff_scaling_precision_guard():
    fq = field(2)
    with pytest.raises(ValueError):
        verify_coeff_scaling(Poly.t(fq), 4, 3)


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("l", [1, 2, 3])
def test_uniformizer_pullback(q, l):
    rep = verify_uniformizer_pullback(field(q), l, 6)
    assert rep["status"], rep


def test_uniformizer_pullback_leading_terms():
    # l = 1, q = 3: t*u - t^2 beta zeta u^2 + t^3 beta^2 zeta^2 u^3 - ...
    fq = field(3)
    from drinfeldforms.series import SymPoly, SymRing, USeries

    ring = SymRing(fq)
    t = Poly.t(fq)
    beta = SymPoly.symbol(fq, "beta")
    zeta = SymPoly.symbol(fq, "zeta")
    den = USeries.one(ring, 4) + USeries(ring, [ring.zero, SymPoly.from_poly(t) * beta * zeta], 4)
    series = USeries(ring, [ring.zero, SymPoly.from_poly(t)], 4) * den.inverse()
    assert series.coeff(1) == SymPoly.from_poly(t)
    assert series.coeff(2) == -(SymPoly.from_poly(t * t) * beta * zeta)
    assert series.coeff(3) == SymPoly.from_poly(t * t * t) * beta * beta * zeta * zeta


def test_torsion_pullback_expansion_coefficients():
    # m = t, q = 2: u(tz) = u^2/(1 + t u) = u^2 + t u^3 + t^2 u^4 + ...
    fq = field(2)
    from drinfeldforms.series import KSeriesRing, USeries

    ring = KSeriesRing(fq)
    t = RatFunc.from_poly(Poly.t(fq))
    den = USeries.one(ring, 6) + USeries(ring, [ring.zero, t], 6)
    series = den.inverse().shift(2)
    assert series.order() == 2
    for j in range(2, 6):
        assert series.coeff(j) == t ** (j - 2)
