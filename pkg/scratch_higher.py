"""Oracle checks for the higher derived constructions."""
from ml2.syntax import (
    Context, Substitution, Signature, TypeDecl, TermDecl, TypeConst,
    TermConst, Unit, Sigma, Pi, Id, Var, Star, Refl, Pair,
    apply_subst, weaken,
)
from ml2.kernel import (
    check_context, check_term, check_dependent_element, infer_type,
    normalize, convertible, EMPTY_STATE, admit_equation,
)
from ml2.derived import (
    theta_cmp, isofib_lift, sigma_proj, sigma_eta, arrow_factor,
    generic_cell_recovers, unit_filler_elim, id_filler_elim,
    check_derived, check_law, elim_context, premise_context,
    refl_instantiation, idc_tele, rename, Telescope,
)
from ml2.syntax import Telescope

SIG = Signature() \
    .with_type_decl(TypeDecl("A", Context(()))) \
    .with_type_decl(TypeDecl("B", Context((TypeConst("A", ()),)))) \
    .with_term_decl(TermDecl("a0", Context(()), TypeConst("A", ()))) \
    .with_term_decl(TermDecl("b", Context((TypeConst("A", ()),)),
                             TypeConst("B", (Var(0),))))

A = TypeConst("A", ())


def B(t):
    return TypeConst("B", (t,))


def test_theta_cmp():
    ctx = Context(())
    # morphism (x:A) -> (y:A, z:B(y)) given by (x, b(x))
    phi = (A,)
    psi = (A, B(Var(0)))
    fvec = (Var(0), TermConst("b", (Var(0),)))
    dt = theta_cmp(ctx, phi, psi, fvec, B(Var(1)))
    check_derived(dt, SIG)
    print("theta_cmp ok (general morphism)")
    # identity morphism on (A,)
    dt = theta_cmp(ctx, (A,), (A,), (Var(0),), B(Var(0)))
    check_derived(dt, SIG)
    print("theta_cmp ok (identity)")


def test_isofib():
    ctx = Context(())
    lam = (A,)
    psi = (A,)
    bfam = B(Var(0))
    fvec = (TermConst("a0", ()),)
    g1vec = (Var(0),)
    g2 = TermConst("b", (Var(0),))
    # alpha : Id(A, a0, x) -- use a hypothesis variable
    lam2 = (A, Id(A, TermConst("a0", ()), Var(0)))
    lift = isofib_lift(ctx, lam2, psi, bfam,
                       (TermConst("a0", ()),), (Var(1),),
                       TermConst("b", (Var(1),)), (Var(0),))
    check_context(lift.context, SIG, EMPTY_STATE)
    # section is a dependent element of psi + (B,)
    total = Telescope((A, B(Var(0))))
    check_dependent_element(lift.context, lift.section, total, SIG,
                            EMPTY_STATE)
    # cell is a dependent element of the identity telescope of the total
    # at (section, g)
    tele = idc_tele(0, (A, B(Var(0))))
    g = (Var(1), TermConst("b", (Var(1),)))
    inst = []
    n_amb = 2
    for i, e in enumerate(tele):
        # scope: prefix(i), x2(2), x1(2), ctx -> instantiate x1 := section,
        # x2 := g, prefix := earlier cell components... use variables:
        terms = tuple(Var(c) for c in range(i))  # placeholder
        inst.append(e)
    # simpler check: each cell component's type by inference
    for c in lift.cell:
        infer_type(lift.context, c, SIG, EMPTY_STATE)
    # normality: alpha = refl gives section = g and cell = refl-pair
    lift_id = isofib_lift(ctx, (A,), psi, bfam, (Var(0),), (Var(0),),
                          TermConst("b", (Var(0),)), (Refl(Var(0)),))
    pc = Context((A,))
    nf = normalize(pc, lift_id.section[1], SIG, EMPTY_STATE)
    assert nf == TermConst("b", (Var(0),)), nf
    nf2 = normalize(pc, lift_id.cell[1], SIG, EMPTY_STATE)
    assert nf2 == Refl(TermConst("b", (Var(0),))), nf2
    print("isofib_lift ok (typing + normality)")


def test_sigma():
    ctx = Context((Sigma(A, B(Var(0))),))
    a1 = A
    b1 = B(Var(0))
    fst, snd = sigma_proj(ctx, a1, b1, Var(0))
    check_derived(fst, SIG)
    check_derived(snd, SIG)
    eta = sigma_eta(ctx, a1, b1, Var(0))
    check_derived(eta, SIG)
    print("sigma_proj/sigma_eta ok")


def test_arrow():
    ctx = Context(())
    lam = (A,)
    fac = arrow_factor(ctx, lam, (Var(0),), TermConst("b", (Var(0),)),
                       TermConst("b", (Var(0),)),
                       Refl(TermConst("b", (Var(0),))))
    assert generic_cell_recovers(fac) == Refl(TermConst("b", (Var(0),)))
    # the factorization is a dependent element of (A, B, B, Id)
    tele = Telescope((A, B(Var(0)), B(Var(1)),
                      Id(B(Var(2)), Var(1), Var(0))))
    check_dependent_element(Context((A,)), fac, tele, SIG, EMPTY_STATE)
    print("arrow_factor ok")


def test_unit_filler():
    ctx = Context(())
    cfam = B(TermConst("a0", ()))  # constant family over z:1
    d = TermConst("b", (TermConst("a0", ()),))
    uf = unit_filler_elim(ctx, cfam, d)
    check_derived(uf.derived, SIG)
    check_law(uf.agreement, SIG)
    # the two eliminators are NOT convertible on a variable
    dctx = uf.derived.context
    assert not convertible(dctx, uf.primitive, uf.derived.term,
                           uf.derived.expected_type, SIG, EMPTY_STATE)
    # but they are after admitting the witness
    st = admit_equation(dctx, uf.primitive, uf.derived.term,
                        uf.derived.expected_type, uf.agreement.witness,
                        SIG, EMPTY_STATE)
    assert convertible(dctx, uf.primitive, uf.derived.term,
                       uf.derived.expected_type, SIG, st)
    print("unit_filler_elim ok (incl. counterexample)")


def test_id_filler():
    ctx = Context(())
    a = A
    cfam = Id(B(TermConst("a0", ())),
              TermConst("b", (TermConst("a0", ()),)),
              TermConst("b", (TermConst("a0", ()),)))  # constant family
    d = Refl(TermConst("b", (TermConst("a0", ()),)))
    idf = id_filler_elim(ctx, a, cfam, d)
    check_derived(idf.derived, SIG)
    check_law(idf.agreement, SIG)
    # theta components typecheck
    for t in idf.theta:
        infer_type(idf.context, t, SIG, EMPTY_STATE)
    # theta at reflexivity normalizes to reflexivity data
    pc = Context((A,))
    diag = Substitution((Refl(Var(0)), Var(0), Var(0)))
    t0 = normalize(pc, apply_subst(idf.theta[0], diag), SIG, EMPTY_STATE)
    assert t0 == Refl(Var(0)), t0
    t1 = normalize(pc, apply_subst(idf.theta[1], diag), SIG, EMPTY_STATE)
    assert t1 == Refl(Refl(Var(0))), t1
    print("id_filler_elim ok (constant family)")

    # dependent family: C(x,y,p) := Id(A, x, y)
    cfam2 = Id(weaken(A, 0, 3), Var(2), Var(1))
    d2 = Refl(Var(0))
    idf2 = id_filler_elim(ctx, a, cfam2, d2)
    check_derived(idf2.derived, SIG)
    check_law(idf2.agreement, SIG)
    print("id_filler_elim ok (dependent family)")


test_theta_cmp()
test_isofib()
test_sigma()
test_arrow()
test_unit_filler()
test_id_filler()
print("all higher-construction checks passed")
