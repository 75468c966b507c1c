"""Oracle checks for the 2-cell calculus."""
from ml2.syntax import (
    Context, Signature, TypeDecl, TermDecl, TypeConst, TermConst,
    Id, Var, Refl, Pi, App, Lam,
)
from ml2.kernel import EMPTY_STATE, normalize, convertible, admit_equation
from ml2.derived import (
    TwoCell, identity_cell, vertical_cell, whisker_left, whisker_right,
    horizontal_cell, horizontal_cell_alt, interchange_law, check_cell,
    check_law, ext_pack, check_derived, cell_type,
)

A = TypeConst("A", ())
B = TypeConst("B", ())
C = TypeConst("C", ())
SIG = (Signature()
       .with_type_decl(TypeDecl("A", Context(())))
       .with_type_decl(TypeDecl("B", Context(())))
       .with_type_decl(TypeDecl("C", Context(())))
       .with_term_decl(TermDecl("f", Context((A,)), B))
       .with_term_decl(TermDecl("g", Context((A,)), B))
       .with_term_decl(TermDecl("h", Context((B,)), C))
       .with_term_decl(TermDecl("k", Context((B,)), C))
       .with_term_decl(TermDecl("al", Context((A,)),
                                Id(B, TermConst("f", (Var(0),)),
                                   TermConst("g", (Var(0),)))))
       .with_term_decl(TermDecl("be", Context((B,)),
                                Id(C, TermConst("h", (Var(0),)),
                                   TermConst("k", (Var(0),))))))

ctx = Context(())
f = TermConst("f", (Var(0),))
g = TermConst("g", (Var(0),))
h = TermConst("h", (Var(0),))
k = TermConst("k", (Var(0),))
alpha = TwoCell(ctx, A, B, f, g, TermConst("al", (Var(0),)))
beta = TwoCell(ctx, B, C, h, k, TermConst("be", (Var(0),)))

check_cell(alpha, SIG)
check_cell(beta, SIG)

# vertical composition with identity on the left is definitional
v = vertical_cell(identity_cell(ctx, A, B, g), alpha)
check_cell(v, SIG)
ectx = ctx.extend(A)
assert convertible(ectx, v.component, alpha.component, cell_type(alpha),
                   SIG, EMPTY_STATE)
print("vertical + left unit ok")

# whiskers typecheck; whisker of an identity cell is an identity cell
wl = whisker_left(beta, f, A)
check_cell(wl, SIG)
wr = whisker_right(h, C, alpha)
check_cell(wr, SIG)
wid = whisker_right(h, C, identity_cell(ctx, A, B, f))
assert normalize(ectx, wid.component, SIG, EMPTY_STATE) == \
    Refl(TermConst("h", (f,))), "whisker of refl"
print("whiskers ok")

# horizontal composition both ways, and the interchange witness
hc = horizontal_cell(beta, alpha)
check_cell(hc, SIG)
hca = horizontal_cell_alt(beta, alpha)
check_cell(hca, SIG)
assert hc.source == hca.source and hc.target == hca.target
law = interchange_law(beta, alpha, SIG)
check_law(law, SIG)
st = admit_equation(law.context, law.lhs, law.rhs, law.at, law.witness,
                    SIG, EMPTY_STATE)
assert convertible(law.context, hc.component, hca.component, law.at, SIG, st)
print("horizontal + interchange ok")

# ext packaging
m = Lam(TermConst("f", (Var(0),)))
kk = Lam(TermConst("g", (Var(0),)))
pw = TermConst("al", (Var(0),))
# pointwise must prove Id(B, m x, g x) -- application beta-reduces, so the
# constants' equality proof works
dt = ext_pack(ctx, A, B, m, kk, pw)
check_derived(dt, SIG)
print("ext_pack ok")
print("all 2-cell checks passed")
