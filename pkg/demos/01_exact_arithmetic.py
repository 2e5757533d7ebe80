"""A tour of the exact coefficient tower: F_q, A = F_q[t], K = F_q(t), and
Laurent expansions at the place at infinity (uniformizer pi = 1/t)."""

from drinfeldforms import (
    Poly,
    RatFunc,
    Residue,
    bar_vt,
    field,
    laurent_expand,
    newton_slope_zero_count,
    vt,
)
from drinfeldforms.linalg import KRing, UPoly

fq = field(4)
print(f"F_4 = F_2[x]/(modulus), modulus coefficients {fq.modulus}")
a, b = 2, 3  # codes: x and x+1
print(f"codes {a} * {b} = {fq.mul(a, b)}  (x * (x+1) = x^2 + x = 1 here)")

fq = field(3)
t = Poly.t(fq)
one = Poly.one(fq)

p = t ** 3 + t.scale(2) + one
print(f"\nin F_3[t]:  p = {p}, degree {p.degree}, v_t(p) = {vt(p)}")
print(f"deg(0) sentinel: {Poly.zero(fq).degree}")

x = RatFunc(t ** 3, one + t)
print(f"\nv_t(t^3/(1+t)) = {vt(x)}")
print(f"bar_vt of the class of t+t^2 in A/(t^2), cap 2: {bar_vt(Residue(2, t + t * t))}")

print("\nLaurent expansions at infinity:")
for rf, prec in ((RatFunc(one, t - one), 5), (RatFunc(t * t + one, t), 4)):
    series = laurent_expand(rf, prec)
    print(f"  {rf} = {series}")

ring = KRing(fq)
xx = UPoly.x(ring)
f = xx * xx - UPoly(ring, [ring.zero, RatFunc.from_poly(t)]) - UPoly(ring, [RatFunc.from_poly(t ** 3)])
print(f"\nNewton slope-zero count of X^2 - tX - t^3: {newton_slope_zero_count(f)}")
print("(both roots have positive t-adic valuation: slopes 1 and 2)")
