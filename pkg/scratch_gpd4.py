"""Oracle checks for base change stability."""
import time
from ml2.gpdmodel import (
    point_groupoid, discrete_groupoid, walking_iso, cyclic_groupoid,
    identity_functor, functor_by, constant_family, family_by,
    comprehension, stability_report, lift_base_change, reindex,
    check_functor,
)

P = point_groupoid()
W = walking_iso()
C2 = cyclic_groupoid(2)
D2 = discrete_groupoid(("a", "b"))

t0 = time.time()

# lift of a base change is a functor making the evident square commute
fam = constant_family(W, C2)
incl = functor_by(P, W, lambda a: 0, lambda m: W.ids[0])
k1 = lift_base_change(fam, incl)
assert check_functor(k1).passed
c1 = comprehension(fam)
c2 = comprehension(reindex(fam, incl))
from ml2.gpdmodel import compose_functors
assert compose_functors(c1.proj, k1) == compose_functors(incl, c2.proj)
print("lift ok")

# stability along an inclusion of the point
rep = stability_report(fam, constant_family(c1.total, C2), incl)
assert rep.passed, rep.to_json()
print(f"stability along point inclusion ok ({rep.checked} checks, "
      f"{time.time()-t0:.1f}s)")

# stability along the swap automorphism of the walking iso with a
# nontrivially transported family
t0 = time.time()
swap_w = functor_by(W, W, lambda a: 1 - a,
                    lambda m: W.ids[1 - m[1]] if m[1] == m[2]
                    else ("w", 1 - m[1], 1 - m[2]))
assert check_functor(swap_w).passed
swap = functor_by(D2, D2, lambda o: "b" if o == "a" else "a",
                  lambda m: D2.ids["b" if m[1] == "a" else "a"])
a_swap = family_by(W, lambda o: D2,
                   lambda m: identity_functor(D2)
                   if m[1] == m[2] else swap)
b_pt = constant_family(comprehension(a_swap).total, P)
rep = stability_report(a_swap, b_pt, swap_w)
assert rep.passed, rep.to_json()
print(f"stability along swap ok ({rep.checked} checks, "
      f"{time.time()-t0:.1f}s)")

# with probes
t0 = time.time()
rep = stability_report(a_swap, b_pt, incl, probes=(D2,))
assert rep.passed, rep.to_json()
print(f"stability with probes ok ({rep.checked} checks, "
      f"{time.time()-t0:.1f}s)")
print("all stability checks passed")
