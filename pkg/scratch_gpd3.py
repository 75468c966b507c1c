"""Oracle checks for the semantic structure certificates."""
import time

from ml2.twocat import (
    verify_two_category, verify_two_functor, verify_isofibration,
    verify_injective_equivalence, verify_arrow_object, verify_bireflection,
    verify_bicoreflection,
)
from ml2.gpdmodel import (
    point_groupoid, discrete_groupoid, walking_iso, cyclic_groupoid,
    identity_functor, functor_by, constant_family, family_by,
    comprehension, slice_two_category, projection_cleavage,
    id_arrow_cert, unit_bireflection_cert, weakening_structures,
    sigma_certs, pi_certs,
)

P = point_groupoid()
W = walking_iso()
C2 = cyclic_groupoid(2)
D2 = discrete_groupoid(("a", "b"))

t0 = time.time()

# unit bireflection over the walking iso with a probe family
probe = constant_family(W, D2)
k, l, cert = unit_bireflection_cert(W, probe_fams=(probe,))
rep = verify_two_category(l)
assert rep.passed, rep.to_json()
rep = verify_two_functor(cert.u)
assert rep.passed, rep.to_json()
rep = verify_bireflection(cert)
assert rep.passed, rep.to_json()
print(f"unit bireflection ok ({rep.checked} checks, "
      f"{time.time()-t0:.1f}s)")

# projection cleavage over the walking iso, exhaustive in the ambient
fam = constant_family(W, C2)
c = comprehension(fam)
cat = slice_two_category((identity_functor(W), c.proj))
cl = projection_cleavage(c, cat, c.proj, identity_functor(W))
rep = verify_isofibration(cl)
assert rep.passed, rep.to_json()
print(f"projection cleavage ok ({rep.checked} checks)")

# identity arrow object for a group-valued family and a set-valued one
t0 = time.time()
cat, ao = id_arrow_cert(constant_family(P, C2))
rep = verify_arrow_object(ao)
assert rep.passed, rep.to_json()
swap = functor_by(D2, D2, lambda o: "b" if o == "a" else "a",
                  lambda m: D2.ids["b" if m[1] == "a" else "a"])
a_swap = family_by(W, lambda o: D2,
                   lambda m: identity_functor(D2)
                   if m[1] == m[2] else swap)
cat2, ao2 = id_arrow_cert(a_swap)
rep = verify_arrow_object(ao2)
assert rep.passed, rep.to_json()
print(f"identity arrow object ok ({time.time()-t0:.1f}s)")

# weakening 2-functor is strict
t0 = time.time()
a_c2 = constant_family(P, C2)
ca = comprehension(a_c2)
b_c2 = constant_family(ca.total, C2)
k, l, u, weakened = weakening_structures(
    a_c2, (constant_family(P, D2),), extra_l=())
rep = verify_two_functor(u)
assert rep.passed, rep.to_json()
print(f"weakening 2-functor ok ({rep.checked} checks, "
      f"{time.time()-t0:.1f}s)")

# dependent sum certificates
t0 = time.time()
k, l, bire, amb, ie = sigma_certs(a_c2, b_c2)
rep = verify_two_functor(bire.u)
assert rep.passed, rep.to_json()
rep = verify_bireflection(bire)
assert rep.passed, rep.to_json()
rep = verify_injective_equivalence(ie)
assert rep.passed, rep.to_json()
print(f"sigma certificates ok ({time.time()-t0:.1f}s)")

# over a nontrivial base with a set-valued family
b_pt = constant_family(comprehension(a_swap).total, P)
k, l, bire2, amb2, ie2 = sigma_certs(a_swap, b_pt)
rep = verify_bireflection(bire2)
assert rep.passed, rep.to_json()
rep = verify_injective_equivalence(ie2)
assert rep.passed, rep.to_json()
print(f"sigma over walking iso ok ({time.time()-t0:.1f}s)")

# dependent product certificate
t0 = time.time()
k, l, bico = pi_certs(a_c2, b_c2)
rep = verify_two_functor(bico.u)
assert rep.passed, rep.to_json()
rep = verify_bicoreflection(bico)
assert rep.passed, rep.to_json()
print(f"pi certificate ok ({rep.checked} checks, {time.time()-t0:.1f}s)")

print("all certificate checks passed")
