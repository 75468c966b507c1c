"""Oracle checks for the groupoid core: groupoids, functors, families,
comprehension, reindexing, the canonical cleavage, slice 2-categories."""
from ml2.twocat import verify_two_category, verify_isofibration, \
    IsofibrationCleavage
from ml2.gpdmodel import (
    point_groupoid, discrete_groupoid, walking_iso, cyclic_groupoid,
    check_groupoid, check_functor, check_nat_iso, check_family,
    identity_functor, compose_functors, functor_by, all_functors,
    all_nat_isos, identity_nat, constant_family, family_by, family,
    comprehension, reindex, cleavage_lift, slice_two_category, nat_iso,
)

for g in (point_groupoid(), discrete_groupoid((0, 1, 2)), walking_iso(),
          cyclic_groupoid(2), cyclic_groupoid(3)):
    rep = check_groupoid(g)
    assert rep.passed, rep.to_json()
print("groupoid axioms ok")

W = walking_iso()
C2 = cyclic_groupoid(2)
D2 = discrete_groupoid(("a", "b"))

# enumeration sanity: functors point -> W = 2; W -> W = 4 object maps,
# all valid (homs are singletons); nat isos between any two W -> W
# functors exist uniquely
P = point_groupoid()
assert len(all_functors(P, W)) == 2
fs = all_functors(W, W)
assert len(fs) == 4, len(fs)
for f in fs:
    assert check_functor(f).passed
    assert len(all_nat_isos(f, fs[0])) == 1
# functors C2 -> C2: obj fixed, generator to z^0 or z^1 = group endos
assert len(all_functors(C2, C2)) == 2
print("enumeration ok")

# constant point family: total isomorphic to the base (same counts)
fam0 = constant_family(W, P)
assert check_family(fam0).passed
c0 = comprehension(fam0)
assert check_groupoid(c0.total).passed
assert check_functor(c0.proj).passed
assert len(c0.total.objects) == len(W.objects)
assert len(c0.total.morphisms) == len(W.morphisms)

# fibers of sizes 1 and 2 over a discrete base: total has 3 objects
fam1 = family_by(D2, lambda a: discrete_groupoid(
    (0,) if a == "a" else (0, 1)),
    lambda m: identity_functor(discrete_groupoid(
        (0,) if m[1] == "a" else (0, 1))))
assert check_family(fam1).passed
assert len(comprehension(fam1).total.objects) == 3

# constant C2 fiber over the walking iso: 2 objects, 8 morphisms
fam2 = constant_family(W, C2)
c2 = comprehension(fam2)
assert check_groupoid(c2.total).passed
assert check_functor(c2.proj).passed
assert len(c2.total.objects) == 2 and len(c2.total.morphisms) == 8
print("comprehension ok")

# reindex: identity is the same family; twice = along composite
incl = functor_by(P, W, lambda a: 0, lambda m: W.ids[0])
assert reindex(fam2, identity_functor(W)) == fam2
r1 = reindex(reindex(fam2, identity_functor(W)), incl)
r2 = reindex(fam2, compose_functors(identity_functor(W), incl))
assert r1 == r2
assert check_family(reindex(fam2, incl)).passed
print("reindex ok")

# slice 2-category over W with the projection and the identity; exhaustive
# two-category axioms and the canonical cleavage as a certified
# isofibration
id_w = identity_functor(W)
cat = slice_two_category((id_w, c2.proj, incl))
rep = verify_two_category(cat)
assert rep.passed, rep.to_json()
print(f"slice 2-category ok ({rep.checked} checks)")

p_cell = (c2.proj, id_w, c2.proj)
assert p_cell in cat.one_cells[(c2.proj, id_w)]

cleavage = {}
for xp in cat.objects:
    for gc in cat.homs(xp, c2.proj):
        pg = cat.compose1[(p_cell, gc)]
        for fc in cat.homs(xp, id_w):
            for ac in cat.cells(fc, pg):
                s, sigma = cleavage_lift(c2, gc[2], fc[2], ac[2])
                sc = (xp, c2.proj, s)
                cleavage[(gc, fc, ac)] = (
                    sc, (sc, gc, sigma))
rep = verify_isofibration(IsofibrationCleavage(cat, p_cell, cleavage))
assert rep.passed, rep.to_json()
print(f"canonical cleavage is a normal isofibration ({rep.checked} checks)")
print("all groupoid-core checks passed")
