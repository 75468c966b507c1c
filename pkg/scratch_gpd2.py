"""Oracle checks for the semantic type formers."""
from ml2.gpdmodel import (
    point_groupoid, discrete_groupoid, walking_iso, cyclic_groupoid,
    check_groupoid, check_family, check_functor, identity_functor,
    functor_by, constant_family, family_by, comprehension, reindex,
    unit_family, sigma_family, pi_family, id_family, ResourceError,
)

P = point_groupoid()
W = walking_iso()
C2 = cyclic_groupoid(2)
D2 = discrete_groupoid(("a", "b"))

# unit: singleton fibers, total same size as base
u = unit_family(W)
assert check_family(u).passed
assert len(comprehension(u).total.objects) == 2

# sigma over a point base is the fiberwise total of B
a_pt = constant_family(P, D2)
ca = comprehension(a_pt)
b_over = constant_family(ca.total, C2)
sig = sigma_family(a_pt, b_over)
rep = check_family(sig)
assert rep.passed, rep.to_json()
f = sig.fibers[("pt")] if ("pt") in sig.fibers else sig.fiber("pt")
assert len(f.objects) == 2  # two D2 points, one C2 object each
assert len(f.morphisms) == 4  # identity base component x C2

# sigma over the walking iso with a swap family
swap = functor_by(D2, D2, lambda o: "b" if o == "a" else "a",
                  lambda m: D2.ids["b" if m[1] == "a" else "a"])
a_swap = family_by(W, lambda o: D2,
                   lambda m: identity_functor(D2)
                   if m[1] == m[2] else swap)
assert check_family(a_swap).passed
cswap = comprehension(a_swap)
b2 = constant_family(cswap.total, P)
sig2 = sigma_family(a_swap, b2)
rep = check_family(sig2)
assert rep.passed, rep.to_json()
print("sigma ok")

# pi with singleton A: one section per fiber object of B
a_one = constant_family(P, point_groupoid())
c_one = comprehension(a_one)
b_one = constant_family(c_one.total, W)
pi_one = pi_family(a_one, b_one)
rep = check_family(pi_one)
assert rep.passed, rep.to_json()
assert len(pi_one.fiber("pt").objects) == 2  # sections pick a W object

# point base, A = discrete 2, B = constant walking iso: 4 sections
b_wi = constant_family(ca.total, W)
pi2 = pi_family(a_pt, b_wi)
rep = check_family(pi2)
assert rep.passed, rep.to_json()
assert len(pi2.fiber("pt").objects) == 4, len(pi2.fiber("pt").objects)
# all sections isomorphic: homs are singletons in W
assert len(pi2.fiber("pt").morphisms) == 16

# pi over a nontrivial base with nontrivial transports
b3 = constant_family(cswap.total, C2)
pi3 = pi_family(a_swap, b3)
rep = check_family(pi3)
assert rep.passed, rep.to_json()
print("pi ok")

# identity family: discrete hom fibers
idf, ca2, caa = id_family(a_swap)
rep = check_family(idf)
assert rep.passed, rep.to_json()
for o in caa.total.objects:
    assert len(idf.fiber(o).objects) in (0, 1)
idf2, _, caa2 = id_family(constant_family(W, C2))
rep = check_family(idf2)
assert rep.passed, rep.to_json()
# hom-set count: fibers all have |C2| = 2 elements
for o in caa2.total.objects:
    assert len(idf2.fiber(o).objects) == 2
# trivial fibers give singleton Id fibers
idf3, _, caa3 = id_family(unit_family(W))
for o in caa3.total.objects:
    assert len(idf3.fiber(o).objects) == 1
print("id ok")

# resource bound: a deliberately large enumeration errors out
big = discrete_groupoid(tuple(range(30)))
a_big = constant_family(P, discrete_groupoid(tuple(range(18))))
c_big = comprehension(a_big)
b_big = constant_family(c_big.total, discrete_groupoid((0, 1, 2)))
try:
    pi_family(a_big, b_big)
except ResourceError as e:
    print("resource bound ok:", e)
else:
    raise AssertionError("expected ResourceError")

print("all type-former checks passed")
