"""Oracle checks for the finite 2-category machinery.

The main fixture is the walking retract equivalence: two objects x, y with
a section i : x -> y, retraction p : y -> x (p i = id), and an invertible
2-cell th : id_y => i p with th i = id and p th = id.
"""
import dataclasses

from ml2.twocat import (
    build_two_category, verify_two_category, TwoFunctor, verify_two_functor,
    IsofibrationCleavage, verify_isofibration,
    InjectiveEquivalence, verify_injective_equivalence,
    ArrowObjectCert, verify_arrow_object,
    BireflectionCert, verify_bireflection,
    BicoreflectionCert, verify_bicoreflection,
    LiftingSquare, filler, filler_solutions,
    TransportedProblem, pullback_filler_stability,
)

OBJS = ("x", "y")
HOMS = {("x", "x"): ("idx",), ("x", "y"): ("i",),
        ("y", "x"): ("p",), ("y", "y"): ("idy", "ip")}
COMP = {
    ("idx", "idx"): "idx", ("i", "idx"): "i",
    ("p", "i"): "idx", ("idy", "i"): "i", ("ip", "i"): "i",
    ("idx", "p"): "p", ("i", "p"): "ip",
    ("p", "idy"): "p", ("idy", "idy"): "idy", ("ip", "idy"): "ip",
    ("p", "ip"): "p", ("idy", "ip"): "ip", ("ip", "ip"): "ip",
}
VC = {
    ("1idy", "1idy"): "1idy", ("th", "1idy"): "th", ("1ip", "th"): "th",
    ("thi", "th"): "1idy", ("th", "thi"): "1ip", ("1idy", "thi"): "thi",
    ("thi", "1ip"): "thi", ("1ip", "1ip"): "1ip",
    ("1idx", "1idx"): "1idx", ("1i", "1i"): "1i", ("1p", "1p"): "1p",
}
LW = {("p", "th"): "1p", ("idy", "th"): "th", ("ip", "th"): "1ip",
      ("p", "thi"): "1p", ("idy", "thi"): "thi", ("ip", "thi"): "1ip"}
RW = {("th", "i"): "1i", ("th", "idy"): "th", ("th", "ip"): "1ip",
      ("thi", "i"): "1i", ("thi", "idy"): "thi", ("thi", "ip"): "1ip"}


def one_cells_fn(a, b):
    return HOMS.get((a, b), ())


def two_cells_fn(f, g):
    if f == g:
        return ("1" + f,)
    if (f, g) == ("idy", "ip"):
        return ("th",)
    if (f, g) == ("ip", "idy"):
        return ("thi",)
    return ()


def lw_fn(h, c):
    if c.startswith("1"):
        return "1" + COMP[(h, c[1:])]
    return LW[(h, c)]


def rw_fn(c, k):
    if c.startswith("1"):
        return "1" + COMP[(c[1:], k)]
    return RW[(c, k)]


K = build_two_category(
    OBJS, one_cells_fn, two_cells_fn,
    lambda g, f: COMP[(g, f)], lambda a: {"x": "idx", "y": "idy"}[a],
    lambda d, c: VC[(d, c)], lambda f: "1" + f,
    lambda c: {"th": "thi", "thi": "th"}.get(c, c),
    lw_fn, rw_fn)

rep = verify_two_category(K)
assert rep.passed, rep.to_json()
print(f"two-category axioms ok ({rep.checked} checks)")

# corrupted vertical composition is caught with a located counterexample
bad_vc = dict(K.vcomp)
bad_vc[("thi", "th")] = "1ip"
K_bad = dataclasses.replace(K, vcomp=bad_vc)
rep = verify_two_category(K_bad)
assert not rep.passed
assert any(f.clause == "two-cell-invertible" for f in rep.failures), \
    [f.clause for f in rep.failures]
print("corrupted vcomp rejected:", rep.failures[0].clause,
      rep.failures[0].witness)

# injective equivalence certificate
ie = InjectiveEquivalence(K, "i", "p", "th")
rep = verify_injective_equivalence(ie)
assert rep.passed, rep.to_json()
ie_bad = InjectiveEquivalence(K, "i", "p", "thi")
rep = verify_injective_equivalence(ie_bad)
assert not rep.passed and rep.failures[0].clause == "theta-endpoints"
print("injective equivalence ok (incl. corruption)")

# isofibration cleavage for p : y -> x (hom categories into x are discrete,
# so every instance is forced by normality)
cleavage = {}
for src, g in [("x", "i"), ("y", "idy"), ("y", "ip")]:
    pg = COMP[("p", g)]
    cleavage[(g, pg, "1" + pg)] = (g, "1" + g)
cl = IsofibrationCleavage(K, "p", cleavage)
rep = verify_isofibration(cl)
assert rep.passed, rep.to_json()
bad_cleavage = dict(cleavage)
bad_cleavage[("ip", "p", "1p")] = ("idy", "th")
rep = verify_isofibration(IsofibrationCleavage(K, "p", bad_cleavage))
assert not rep.passed
assert any(f.clause.startswith("normality") for f in rep.failures), \
    [f.clause for f in rep.failures]
print("isofibration cleavage ok (incl. corruption):",
      sorted({f.clause for f in rep.failures}))

# canonical filler: the square (i, i, p, p) commutes and the canonical
# diagonal is ip, one of the two strict solutions
sq = LiftingSquare("i", "i", "p", "p")
j = filler(sq, ie, cl)
assert j == "ip", j
assert set(filler_solutions(sq, K)) == {"idy", "ip"}
assert K.compose1[("p", j)] == "p" and K.compose1[(j, "i")] == "i"
print("canonical filler ok")

# stability under a (trivial) reindexing
prob = TransportedProblem(sq, ie, cl, sq, ie, cl, lambda c: c)
assert pullback_filler_stability(prob)
print("filler stability ok")

# arrow object: x classifies its own (discrete) 2-cells via the identity
ao = ArrowObjectCert(K, "x", "idx", "idx", "1idx")
rep = verify_arrow_object(ao)
assert rep.passed, rep.to_json()
# y does not classify 2-cells into x: idy and ip classify the same cell
ao_bad = ArrowObjectCert(K, "y", "p", "p", "1p")
rep = verify_arrow_object(ao_bad)
assert not rep.passed
assert any(f.clause == "classification-not-injective" for f in rep.failures)
print("arrow object ok (incl. negative instance)")

# the full sub-2-category on y, with the inclusion 2-functor
SUB_HOMS = {("y", "y"): ("idy", "ip")}
K_sub = build_two_category(
    ("y",), lambda a, b: SUB_HOMS.get((a, b), ()), two_cells_fn,
    lambda g, f: COMP[(g, f)], lambda a: "idy",
    lambda d, c: VC[(d, c)], lambda f: "1" + f,
    lambda c: {"th": "thi", "thi": "th"}.get(c, c),
    lw_fn, rw_fn)
assert verify_two_category(K_sub).passed
incl = TwoFunctor(K_sub, K, {"y": "y"},
                  {f: f for fs in K_sub.one_cells.values() for f in fs},
                  {c: c for cs in K_sub.two_cells.values() for c in cs})
rep = verify_two_functor(incl)
assert rep.passed, rep.to_json()
print("two-functor ok")

# x bireflects into the subcategory along the section, and bicoreflects
# along the retraction
br = BireflectionCert(incl, "x", "y", "i", {"i": "idy"})
rep = verify_bireflection(br)
assert rep.passed, rep.to_json()
br_bad = BireflectionCert(incl, "x", "y", "i", {"i": "p"})
rep = verify_bireflection(br_bad)
assert not rep.passed
assert rep.failures[0].clause == "factorization-missing"
bc = BicoreflectionCert(incl, "x", "y", "p", {"p": "idy"})
rep = verify_bicoreflection(bc)
assert rep.passed, rep.to_json()
print("bireflection/bicoreflection ok (incl. corruption)")

print("all 2-category checks passed")
