"""Derived constructions emitted as core terms the kernel must accept.

Every operation here is a term builder: it produces explicit, fully
annotated core syntax (no proof search).  Where a construction satisfies an
equation definitionally, the equation is emitted as a ``Law`` with no
witness; where it holds only propositionally, the law carries an identity
witness term that the kernel can check and, if desired, admit.

The module is organized in layers:

* scalar path operations: transport, composition, inverse, lifting along a
  function, argument instantiation of a function equality;
* telescopic identity machinery: identity contexts, the generalized
  eliminator, context transport, lifting of substitutions;
* higher constructions: the comparison cell between reindexed transports,
  isofibration lifts, pair projections and eta, arrow-object factorization,
  the derived unit and identity eliminators, and the 2-cell calculus.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    App, Context, Ext, Id, JElim, Lam, Pair, Pi, Refl, SigElim, Sigma,
    Signature, Star, Substitution, Telescope, Term, TypeExpr, Unit, UnitElim,
    Var, apply_subst, identity_subst, inst, subst1, weaken,
)


# ---------------------------------------------------------------------------
# Results


@dataclass(frozen=True)
class Law:
    """An equation between two terms at a type, in a context.

    ``witness is None`` means the equation is claimed definitional (the
    kernel identifies the sides with empty conversion state); otherwise the
    witness is an identity proof to be checked and possibly admitted.
    """

    context: Context
    lhs: Term
    rhs: Term
    at: TypeExpr
    witness: Term | None = None


@dataclass(frozen=True)
class DerivedTerm:
    """A constructed term, its type and context, and the laws it satisfies."""

    context: Context
    term: Term
    expected_type: TypeExpr
    definitional_laws: tuple[Law, ...] = ()
    propositional_laws: tuple[Law, ...] = ()


def check_law(law: Law, sig: Signature = Signature(), state=None) -> None:
    """Kernel-check a law: typing of both sides plus either conversion with
    empty state (definitional) or witness checking (propositional)."""
    from . import kernel
    if state is None:
        state = kernel.EMPTY_STATE
    kernel.check_context(law.context, sig, state)
    kernel.check_type(law.context, law.at, sig, state)
    for side in (law.lhs, law.rhs):
        try:
            kernel.check_term(law.context, side, law.at, sig, state)
        except kernel.KernelError:
            # eliminators applied to literal canonical forms are not
            # inferable in the unannotated syntax; their reducts are
            nf = kernel.normalize(law.context, side, sig, state)
            if nf == side:
                raise
            kernel.check_term(law.context, nf, law.at, sig, state)
    if law.witness is None:
        if not kernel.convertible(law.context, law.lhs, law.rhs, law.at,
                                  sig, state):
            raise kernel.KernelError("definitional law does not hold")
    else:
        a_norm = kernel.normalize(law.context, law.at, sig, state)
        kernel.check_term(law.context, law.witness,
                          Id(a_norm, law.lhs, law.rhs), sig, state)


def check_derived(dt: DerivedTerm, sig: Signature = Signature(),
                  state=None) -> None:
    """Kernel-check a derived term and every law it claims."""
    from . import kernel
    if state is None:
        state = kernel.EMPTY_STATE
    kernel.check_context(dt.context, sig, state)
    kernel.check_type(dt.context, dt.expected_type, sig, state)
    kernel.check_term(dt.context, dt.term, dt.expected_type, sig, state)
    for law in dt.definitional_laws + dt.propositional_laws:
        check_law(law, sig, state)


# ---------------------------------------------------------------------------
# Index plumbing


def rename(node, mapping: tuple[int, ...]):
    """Apply a variable renaming; ``mapping[k]`` is the new index of ``Var k``."""
    return apply_subst(node, Substitution(tuple(Var(j) for j in mapping)))


def shift_range(start: int, count: int, offset: int) -> tuple[int, ...]:
    return tuple(range(start + offset, start + offset + count))


def ctx_vars(n: int, above: int = 0) -> tuple[Term, ...]:
    """Substitution tail mapping ambient variables up by ``above``."""
    return tuple(Var(i + above) for i in range(n))


# ---------------------------------------------------------------------------
# Scalar path operations


def transport_term(b_family: TypeExpr, a1: Term, a2: Term, p: Term, b: Term,
                   n: int) -> Term:
    """Transport ``b`` from the fiber over ``a2`` to the fiber over ``a1``.

    ``b_family`` is scoped over the ambient context of length ``n`` plus one
    binder; ``p`` proves ``Id(A, a1, a2)``.
    """
    fam_at = lambda v, depth: apply_subst(
        b_family, Substitution((v,) + ctx_vars(n, depth)))
    motive = Pi(fam_at(Var(1), 3), fam_at(Var(3), 4))
    return App(JElim(motive, Lam(Var(0)), a1, a2, p), b)


def compose_term(a: TypeExpr, x: Term, y: Term, z: Term, p: Term, q: Term,
                 n: int) -> Term:
    """Path composition ``q`` after ``p`` (eliminating on ``q``), so that
    composing with reflexivity on the left is definitionally trivial."""
    motive = Pi(Id(weaken(a, 0, 3), weaken(x, 0, 3), Var(2)),
                Id(weaken(a, 0, 4), weaken(x, 0, 4), Var(2)))
    return App(JElim(motive, Lam(Var(0)), y, z, q), p)


def inverse_term(a: TypeExpr, x: Term, y: Term, p: Term) -> Term:
    motive = Id(weaken(a, 0, 3), Var(1), Var(2))
    return JElim(motive, Refl(Var(0)), x, y, p)


def lift_term(b: TypeExpr, f_body: Term, x: Term, y: Term, p: Term,
              n: int) -> Term:
    """Apply a function ``x. f_body`` to a path (the functorial lift)."""
    f_at = lambda v, depth: apply_subst(
        f_body, Substitution((v,) + ctx_vars(n, depth)))
    motive = Id(weaken(b, 0, 3), f_at(Var(2), 3), f_at(Var(1), 3))
    return JElim(motive, Refl(f_body), x, y, p)


def star_term(b_family: TypeExpr, m: Term, k: Term, p: Term, arg: Term,
              n: int) -> Term:
    """Instantiate a function equality at an argument."""
    fam_arg = subst1(b_family, arg)
    motive = Id(weaken(fam_arg, 0, 3),
                App(Var(2), weaken(arg, 0, 3)),
                App(Var(1), weaken(arg, 0, 3)))
    branch = Refl(App(Var(0), weaken(arg, 0, 1)))
    return JElim(motive, branch, m, k, p)


def transport(ctx: Context, a: TypeExpr, b_family: TypeExpr, a1: Term,
              a2: Term, p: Term, b: Term) -> DerivedTerm:
    """Leibnitz transport with its computation law at reflexivity."""
    n = len(ctx)
    term = transport_term(b_family, a1, a2, p, b, n)
    expected = subst1(b_family, a1)
    law_ctx = ctx.extend(a).extend(b_family)
    fam_x = apply_subst(b_family, Substitution((Var(1),) + ctx_vars(n, 2)))
    law = Law(law_ctx,
              transport_term(weaken(b_family, 1, 2), Var(1), Var(1),
                             Refl(Var(1)), Var(0), n + 2),
              Var(0), fam_x)
    return DerivedTerm(ctx, term, expected, definitional_laws=(law,))


def identity(ctx: Context, a: TypeExpr, x: Term) -> DerivedTerm:
    return DerivedTerm(ctx, Refl(x), Id(a, x, x))


def inverse(ctx: Context, a: TypeExpr, x: Term, y: Term, p: Term) -> DerivedTerm:
    term = inverse_term(a, x, y, p)
    law_ctx = ctx.extend(a)
    a1 = weaken(a, 0, 1)
    law = Law(law_ctx, inverse_term(a1, Var(0), Var(0), Refl(Var(0))),
              Refl(Var(0)), Id(a1, Var(0), Var(0)))
    return DerivedTerm(ctx, term, Id(a, y, x), definitional_laws=(law,))


def compose(ctx: Context, a: TypeExpr, x: Term, y: Term, z: Term, p: Term,
            q: Term) -> DerivedTerm:
    """Composite path, with the left unit law definitional and the other
    groupoid laws emitted as checkable witnesses."""
    n = len(ctx)
    term = compose_term(a, x, y, z, p, q, n)
    # left unit, in context extended by x, y, p
    lu_ctx = ctx.extend(a).extend(weaken(a, 0, 1)).extend(
        Id(weaken(a, 0, 2), Var(1), Var(0)))
    a3 = weaken(a, 0, 3)
    lu = Law(lu_ctx,
             compose_term(a3, Var(2), Var(1), Var(1), Var(0), Refl(Var(1)),
                          n + 3),
             Var(0), Id(a3, Var(2), Var(1)))
    props = (law_right_unit(ctx, a), law_assoc(ctx, a),
             law_left_inverse(ctx, a), law_right_inverse(ctx, a),
             law_double_inverse(ctx, a))
    return DerivedTerm(ctx, term, Id(a, x, z), definitional_laws=(lu,),
                       propositional_laws=props)


def _path_ctx(ctx: Context, a: TypeExpr) -> Context:
    """Extend by a generic path: x, y, p : Id(A, x, y)."""
    return (ctx.extend(a).extend(weaken(a, 0, 1))
            .extend(Id(weaken(a, 0, 2), Var(1), Var(0))))


def law_right_unit(ctx: Context, a: TypeExpr) -> Law:
    """Composing with reflexivity on the right, up to a J-built witness."""
    n = len(ctx)
    law_ctx = _path_ctx(ctx, a)
    a3 = weaken(a, 0, 3)
    lhs = compose_term(a3, Var(2), Var(2), Var(1), Refl(Var(2)), Var(0), n + 3)
    rhs = Var(0)
    at = Id(a3, Var(2), Var(1))
    # witness by eliminating the generic path; at reflexivity both sides
    # reduce to the same reflexivity path
    a6 = weaken(a, 0, 6)
    motive = Id(Id(a6, Var(2), Var(1)),
                compose_term(a6, Var(2), Var(2), Var(1), Refl(Var(2)), Var(0),
                             n + 6),
                Var(0))
    branch = Refl(Refl(Var(0)))
    witness = _generic_path_witness(ctx, a, motive, branch)
    return Law(law_ctx, lhs, rhs, at, witness)


def _generic_path_witness(ctx: Context, a: TypeExpr, motive: TypeExpr,
                          branch: Term) -> Term:
    """Eliminate the generic path ``Var 0`` of ``_path_ctx(ctx, a)``."""
    return JElim(motive, branch, Var(2), Var(1), Var(0))


def law_assoc(ctx: Context, a: TypeExpr) -> Law:
    """Associativity of composition, witnessed by eliminating the outer path."""
    n = len(ctx)
    # context: x, y, z, w : A; p : Id(x,y); q : Id(y,z); s : Id(z,w)
    law_ctx = (ctx.extend(a).extend(weaken(a, 0, 1)).extend(weaken(a, 0, 2))
               .extend(weaken(a, 0, 3))
               .extend(Id(weaken(a, 0, 4), Var(3), Var(2)))
               .extend(Id(weaken(a, 0, 5), Var(3), Var(2)))
               .extend(Id(weaken(a, 0, 6), Var(3), Var(2))))
    m = n + 7
    a7 = weaken(a, 0, 7)
    x, y, z, w = Var(6), Var(5), Var(4), Var(3)
    p, q, s = Var(2), Var(1), Var(0)
    qp = compose_term(a7, x, y, z, p, q, m)
    lhs = compose_term(a7, x, y, w,
                       p, compose_term(a7, y, z, w, q, s, m), m)
    rhs = compose_term(a7, x, z, w, qp, s, m)
    at = Id(a7, x, w)
    # witness: eliminate s with the middle path abstracted in the motive,
    # since the generalized endpoint would otherwise clash with its type;
    # at reflexivity both sides reduce to the inner composite
    a10 = weaken(a, 0, 10)
    a11 = weaken(a, 0, 11)
    # motive scope: law_ctx, zh, wh, sh; under the abstraction also qh
    x11, y11, p11 = Var(10), Var(9), Var(6)
    zh, wh, sh, qh = Var(3), Var(2), Var(1), Var(0)
    inner = compose_term(a11, y11, zh, wh, qh, sh, n + 11)
    lhs_m = compose_term(a11, x11, y11, wh, p11, inner, n + 11)
    qp_h = compose_term(a11, x11, y11, zh, p11, qh, n + 11)
    rhs_m = compose_term(a11, x11, zh, wh, qp_h, sh, n + 11)
    motive = Pi(Id(a10, Var(8), Var(2)),
                Id(Id(a11, x11, wh), lhs_m, rhs_m))
    # branch scope: law_ctx, zh; under the abstraction also qh
    a9 = weaken(a, 0, 9)
    branch = Lam(Refl(compose_term(a9, Var(8), Var(7), Var(1), Var(4), Var(0),
                                   n + 9)))
    witness = App(JElim(motive, branch, z, w, s), q)
    return Law(law_ctx, lhs, rhs, at, witness)


def law_left_inverse(ctx: Context, a: TypeExpr) -> Law:
    n = len(ctx)
    law_ctx = _path_ctx(ctx, a)
    m = n + 3
    a3 = weaken(a, 0, 3)
    x, y, p = Var(2), Var(1), Var(0)
    lhs = compose_term(a3, x, y, x, p, inverse_term(a3, x, y, p), m)
    rhs = Refl(x)
    at = Id(a3, x, x)
    a6 = weaken(a, 0, 6)
    x6, y6p, p6p = Var(2), Var(1), Var(0)
    motive = Id(Id(a6, x6, x6),
                compose_term(a6, x6, y6p, x6, p6p,
                             inverse_term(a6, x6, y6p, p6p), n + 6),
                Refl(x6))
    branch = Refl(Refl(Var(0)))
    witness = _generic_path_witness(ctx, a, motive, branch)
    return Law(law_ctx, lhs, rhs, at, witness)


def law_right_inverse(ctx: Context, a: TypeExpr) -> Law:
    n = len(ctx)
    law_ctx = _path_ctx(ctx, a)
    m = n + 3
    a3 = weaken(a, 0, 3)
    x, y, p = Var(2), Var(1), Var(0)
    lhs = compose_term(a3, y, x, y, inverse_term(a3, x, y, p), p, m)
    rhs = Refl(y)
    at = Id(a3, y, y)
    a6 = weaken(a, 0, 6)
    x6, y6p, p6p = Var(2), Var(1), Var(0)
    motive = Id(Id(a6, y6p, y6p),
                compose_term(a6, y6p, x6, y6p,
                             inverse_term(a6, x6, y6p, p6p), p6p, n + 6),
                Refl(y6p))
    branch = Refl(Refl(Var(0)))
    witness = _generic_path_witness(ctx, a, motive, branch)
    return Law(law_ctx, lhs, rhs, at, witness)


def law_double_inverse(ctx: Context, a: TypeExpr) -> Law:
    n = len(ctx)
    law_ctx = _path_ctx(ctx, a)
    a3 = weaken(a, 0, 3)
    x, y, p = Var(2), Var(1), Var(0)
    lhs = inverse_term(a3, y, x, inverse_term(a3, x, y, p))
    rhs = p
    at = Id(a3, x, y)
    a6 = weaken(a, 0, 6)
    x6p, y6p, p6p = Var(2), Var(1), Var(0)
    motive = Id(Id(a6, x6p, y6p),
                inverse_term(a6, y6p, x6p, inverse_term(a6, x6p, y6p, p6p)),
                p6p)
    branch = Refl(Refl(Var(0)))
    witness = _generic_path_witness(ctx, a, motive, branch)
    return Law(law_ctx, lhs, rhs, at, witness)


def lift_map(ctx: Context, a: TypeExpr, b: TypeExpr, f_body: Term, x: Term,
             y: Term, p: Term) -> DerivedTerm:
    """Functorial lift of a function to paths, with functoriality witnesses."""
    n = len(ctx)
    term = lift_term(b, f_body, x, y, p, n)
    f_at = lambda v: subst1(f_body, v)
    expected = Id(b, f_at(x), f_at(y))
    # computation at reflexivity
    comp_ctx = ctx.extend(a)
    b1 = weaken(b, 0, 1)
    comp = Law(comp_ctx,
               lift_term(b1, weaken(f_body, 1, 1), Var(0), Var(0),
                         Refl(Var(0)), n + 1),
               Refl(f_body), Id(b1, f_body, f_body))
    props = (law_lift_identity(ctx, a), law_lift_compose(ctx, a, b, f_body))
    return DerivedTerm(ctx, term, expected, definitional_laws=(comp,),
                       propositional_laws=props)


def law_lift_identity(ctx: Context, a: TypeExpr) -> Law:
    """Lifting the identity function is the identity on paths, up to witness."""
    n = len(ctx)
    law_ctx = _path_ctx(ctx, a)
    a3 = weaken(a, 0, 3)
    x, y, p = Var(2), Var(1), Var(0)
    lhs = lift_term(a3, Var(0), x, y, p, n + 3)
    rhs = p
    at = Id(a3, x, y)
    a6 = weaken(a, 0, 6)
    motive = Id(Id(a6, Var(2), Var(1)),
                lift_term(a6, Var(0), Var(2), Var(1), Var(0), n + 6),
                Var(0))
    branch = Refl(Refl(Var(0)))
    witness = _generic_path_witness(ctx, a, motive, branch)
    return Law(law_ctx, lhs, rhs, at, witness)


def law_lift_compose(ctx: Context, a: TypeExpr, b: TypeExpr,
                     f_body: Term) -> Law:
    """Lifting preserves composition, witnessed by eliminating the outer path."""
    n = len(ctx)
    # context: x, y, z : A; p : Id(x,y); q : Id(y,z)
    law_ctx = (ctx.extend(a).extend(weaken(a, 0, 1)).extend(weaken(a, 0, 2))
               .extend(Id(weaken(a, 0, 3), Var(2), Var(1)))
               .extend(Id(weaken(a, 0, 4), Var(2), Var(1))))
    m = n + 5
    a5, b5 = weaken(a, 0, 5), weaken(b, 0, 5)
    f5 = weaken(f_body, 1, 5)
    f_at = lambda v, d, fb: apply_subst(fb, Substitution((v,) + ctx_vars(n, d)))
    x, y, z, p, q = Var(4), Var(3), Var(2), Var(1), Var(0)
    lhs = lift_term(b5, f5, x, z, compose_term(a5, x, y, z, p, q, m), m)
    rhs = compose_term(b5, f_at(x, 5, f_body), f_at(y, 5, f_body),
                       f_at(z, 5, f_body),
                       lift_term(b5, f5, x, y, p, m),
                       lift_term(b5, f5, y, z, q, m), m)
    at = Id(b5, f_at(x, 5, f_body), f_at(z, 5, f_body))
    # witness: eliminate q with the first path abstracted in the motive;
    # at reflexivity both sides reduce to the lift of that path
    a8 = weaken(a, 0, 8)
    a9, b9 = weaken(a, 0, 9), weaken(b, 0, 9)
    f9 = weaken(f_body, 1, 8)
    x9, yh9, zh9, qh9, ph9 = Var(8), Var(3), Var(2), Var(1), Var(0)
    qp_h = compose_term(a9, x9, yh9, zh9, ph9, qh9, n + 9)
    motive = Pi(
        Id(a8, Var(7), Var(2)),
        Id(Id(b9, f_at(x9, 9, f_body), f_at(zh9, 9, f_body)),
           lift_term(b9, f9, x9, zh9, qp_h, n + 9),
           compose_term(b9, f_at(x9, 9, f_body), f_at(yh9, 9, f_body),
                        f_at(zh9, 9, f_body),
                        lift_term(b9, f9, x9, yh9, ph9, n + 9),
                        lift_term(b9, f9, yh9, zh9, qh9, n + 9), n + 9)))
    b7 = weaken(b, 0, 7)
    branch = Lam(Refl(lift_term(b7, weaken(f_body, 1, 6), Var(6), Var(1),
                                Var(0), n + 7)))
    witness = App(JElim(motive, branch, y, z, q), p)
    return Law(law_ctx, lhs, rhs, at, witness)


# ---------------------------------------------------------------------------
# Telescopic identity machinery
#
# Scope conventions (innermost index first).  For a base context of length n
# and a telescope Phi of length k with postcontext Delta of length m:
#
#   eliminator output context: ctx, x1:Phi, x2:Phi, p:Id_Phi, Delta
#     Delta 0..m-1 | p m..m+k-1 | x2 m+k..m+2k-1 | x1 m+2k..m+3k-1 | ctx
#   eliminator premise context: ctx, x:Phi, Delta[x,x,refl]
#     Delta 0..m-1 | x m..m+k-1 | ctx
#
# ``idc_tele`` produces the entries of the identity telescope, ``idc_refl``
# the reflexivity element, ``ctx_elim`` the generalized eliminator (with
# postcontext), and ``idc_transport`` context transport as its special case.


def single_elim(n: int, a: TypeExpr, delta: tuple[TypeExpr, ...],
                theta: tuple[TypeExpr, ...],
                dvec: tuple[Term, ...]) -> tuple[Term, ...]:
    """Generalized eliminator for a single type, into a telescope, with a
    postcontext.

    Works by induction on the target telescope: earlier components are
    eliminated first and substituted into the type of the next one; the
    postcontext is internalized by closing the motive under function types
    and reapplying the postcontext variables.
    """
    m = len(delta)
    t = len(theta)
    if t == 0:
        return ()
    prev = single_elim(n, a, delta, theta[:-1], dvec[:-1])
    big_n = n + 3 + m
    c = apply_subst(theta[-1],
                    Substitution(tuple(reversed(prev))
                                 + tuple(Var(i) for i in range(big_n))))
    # motive: close c over a fresh copy of the postcontext
    body_map = tuple(range(m + 3)) + tuple(2 * m + 6 + j for j in range(n))
    motive = rename(c, body_map)
    for i in reversed(range(m)):
        dom_map = tuple(range(i + 3)) + tuple(i + 6 + m + j for j in range(n))
        motive = Pi(rename(delta[i], dom_map), motive)
    # branch: the last premise term, under the fresh postcontext binders
    d_map = tuple(range(m + 1)) + tuple(2 * m + 4 + j for j in range(n))
    branch = rename(dvec[-1], d_map)
    for _ in range(m):
        branch = Lam(branch)
    core = JElim(motive, branch, Var(m + 2), Var(m + 1), Var(m))
    for i in range(m):
        core = App(core, Var(m - 1 - i))
    return prev + (core,)


def ctx_elim(n: int, phi: tuple[TypeExpr, ...], delta: tuple[TypeExpr, ...],
             theta: tuple[TypeExpr, ...],
             dvec: tuple[Term, ...]) -> tuple[Term, ...]:
    """Generalized eliminator over an identity telescope.

    Built by induction on the length of ``phi``: the last entry is handled
    by the single-type eliminator (over the prefix as base), and the prefix
    by recursion, with the last entry's data moved into the postcontext.
    """
    k = len(phi)
    m = len(delta)
    if k == 0:
        return dvec
    lam, d_ty = phi[:-1], phi[-1]
    np = n + (k - 1)

    # Step A: eliminate the last entry's path, with everything instantiated
    # along the diagonal of the prefix.
    def diag_sub(i: int, extra: int) -> Substitution:
        # maps the scope (ctx, x1:Phi, x2:Phi, p:Id_Phi, extra-prefix(i)) to
        # (ctx, x:prefix, y1, y2, q, extra-prefix(i)) along the diagonal,
        # where extra counts interleaved postcontext entries
        terms: list[Term] = []
        base = i + extra
        terms += [Var(j) for j in range(base)]            # local prefix
        terms.append(Var(base))                            # q
        terms += [Refl(Var(base + 3 + c)) for c in range(k - 1)]   # p -> refl
        terms.append(Var(base + 1))                        # y2
        terms += [Var(base + 3 + c) for c in range(k - 1)]         # x2 -> x
        terms.append(Var(base + 2))                        # y1
        terms += [Var(base + 3 + c) for c in range(k - 1)]         # x1 -> x
        terms += [Var(base + k + 2 + j) for j in range(n)]         # ambient
        return Substitution(tuple(terms))

    delta0 = tuple(apply_subst(delta[i], diag_sub(i, 0)) for i in range(m))
    theta0 = tuple(apply_subst(theta[i], diag_sub(i, m)) for i in range(len(theta)))
    dprime = single_elim(np, d_ty, delta0, theta0, dvec)

    # Step B: eliminate the prefix telescope, with the last entry's two
    # points and path moved into the postcontext.
    def move_map(i: int, extra: int) -> tuple[int, ...]:
        # renames (ctx, x1:Phi, x2:Phi, p:Id_Phi, extra(i)) to
        # (ctx, u1:prefix, u2:prefix, q:Id_prefix, y1, y2, q_last, extra(i))
        base = i + extra
        out = list(range(base))                            # local prefix
        out.append(base)                                   # q_last stays
        out += [base + 3 + c for c in range(k - 1)]        # p -> q-vector
        out.append(base + 1)                               # y2
        out += [base + k + 2 + c for c in range(k - 1)]    # x2 -> u2
        out.append(base + 2)                               # y1
        out += [base + 2 * k + 1 + c for c in range(k - 1)]  # x1 -> u1
        out += [base + 3 * k + j for j in range(n)]        # ambient
        return tuple(out)

    kk = k - 1
    # postcontext for the prefix elimination: y1, y2, q_last, then delta
    e0 = rename(d_ty, tuple(2 * kk + c for c in range(kk))
                + tuple(3 * kk + j for j in range(n)))
    e1 = rename(d_ty, tuple(1 + kk + c for c in range(kk))
                + tuple(1 + 3 * kk + j for j in range(n)))
    d_at_u1 = rename(d_ty, tuple(2 + 2 * kk + c for c in range(kk))
                     + tuple(2 + 3 * kk + j for j in range(n)))
    tr = idc_transport(n, lam, (d_ty,))[0]
    e2 = Id(d_at_u1, Var(1), weaken(tr, 1, 1))
    delta_rest = tuple(rename(delta[i], move_map(i, 0)) for i in range(m))
    delta_p = (e0, e1, e2) + delta_rest
    theta_p = tuple(rename(theta[i], move_map(i, m)) for i in range(len(theta)))
    res = ctx_elim(n, lam, delta_p, theta_p, dprime)

    # Step C: rename back to the interleaved output layout.
    back = (list(range(m + 1))
            + [m + k] + [m + 2 * k]
            + [m + 1 + c for c in range(kk)]
            + [m + k + 1 + c for c in range(kk)]
            + [m + 2 * k + 1 + c for c in range(kk)]
            + [m + 3 * k + j for j in range(n)])
    # layout of res: delta(m), q_last, y2, y1, q-vector(kk), u2(kk), u1(kk), ctx
    return tuple(rename(r, tuple(back)) for r in res)


def idc_tele(n: int, phi: tuple[TypeExpr, ...]) -> tuple[TypeExpr, ...]:
    """Entries of the identity telescope, scoped over ctx, x1:Phi, x2:Phi.

    Layout of entry i (innermost first): local prefix 0..i-1, then x2 with
    its last variable innermost, then x1, then the ambient context.
    """
    k = len(phi)
    if k == 0:
        return ()
    lam, d_ty = phi[:-1], phi[-1]
    prev = idc_tele(n, lam)
    entries = []
    for i, e in enumerate(prev):
        mapping = (tuple(range(i))
                   + tuple(i + 1 + c for c in range(k - 1))
                   + tuple(i + k + 1 + c for c in range(k - 1))
                   + tuple(i + 2 * k + j for j in range(n)))
        entries.append(rename(e, mapping))
    kk = k - 1
    d_at_x1 = rename(d_ty, tuple(2 * k + c for c in range(kk))
                     + tuple(3 * k - 1 + j for j in range(n)))
    tr = idc_transport(n, lam, (d_ty,))[0]
    tr_map = ((kk,)
              + tuple(range(kk))
              + tuple(k + c for c in range(kk))
              + tuple(2 * k + c for c in range(kk))
              + tuple(3 * k - 1 + j for j in range(n)))
    entries.append(Id(d_at_x1, Var(2 * k - 1), rename(tr, tr_map)))
    return tuple(entries)


def idc_refl(k: int) -> tuple[Term, ...]:
    """Reflexivity element of the identity telescope, over ctx, x:Phi."""
    return tuple(Refl(Var(k - 1 - i)) for i in range(k))


def idc_transport(n: int, lam: tuple[TypeExpr, ...],
                  upsilon: tuple[TypeExpr, ...]) -> tuple[Term, ...]:
    """Context transport of a dependent telescope along an identity-telescope
    element, as an instance of the generalized eliminator.

    Output scope: ctx, x1:lam, x2:lam, p:Id_lam, z:upsilon(x2); the result
    is an element of upsilon(x1).
    """
    k = len(lam)
    mu = len(upsilon)
    delta = []
    for i, e in enumerate(upsilon):
        mapping = (tuple(range(i))
                   + tuple(i + k + c for c in range(k))
                   + tuple(i + 3 * k + j for j in range(n)))
        delta.append(rename(e, mapping))
    theta = []
    for i, e in enumerate(upsilon):
        mapping = (tuple(range(i))
                   + tuple(i + mu + 2 * k + c for c in range(k))
                   + tuple(i + mu + 3 * k + j for j in range(n)))
        theta.append(rename(e, mapping))
    dvec = tuple(Var(mu - 1 - i) for i in range(mu))
    return ctx_elim(n, lam, tuple(delta), tuple(theta), dvec)


def refl_instantiation(n: int, k: int, m: int) -> Substitution:
    """Substitution collapsing the eliminator output context onto its
    premise context: both copies to the diagonal, paths to reflexivity,
    postcontext variables to themselves."""
    terms: list[Term] = []
    terms += [Var(i) for i in range(m)]
    terms += [Refl(Var(m + c)) for c in range(k)]
    terms += [Var(m + c) for c in range(k)]
    terms += [Var(m + c) for c in range(k)]
    terms += [Var(m + k + j) for j in range(n)]
    return Substitution(tuple(terms))


# ---------------------------------------------------------------------------
# Public identity-context interface


@dataclass(frozen=True)
class IdContext:
    """The identity telescope of a telescope, with its reflexivity element.

    ``telescope`` lives over ``context`` extended by two copies of
    ``entries``; ``refl`` lives over ``context`` extended by one copy and is
    a dependent element of the telescope pulled back to the diagonal.
    """

    context: Context
    entries: tuple[TypeExpr, ...]
    telescope: Telescope
    refl: tuple[Term, ...]


def doubled_entries(n: int, phi: tuple[TypeExpr, ...]) -> tuple[TypeExpr, ...]:
    """Two copies of a telescope: the second copy weakened over the first."""
    k = len(phi)
    return tuple(phi) + tuple(weaken(phi[i], i, k) for i in range(k))


def elim_context(ctx: Context, phi: tuple[TypeExpr, ...],
                 delta: tuple[TypeExpr, ...] = ()) -> Context:
    """The full eliminator context: ambient, both copies, identity telescope,
    postcontext."""
    n = len(ctx.entries)
    return Context(tuple(ctx.entries) + doubled_entries(n, phi)
                   + idc_tele(n, phi) + tuple(delta))


def premise_context(ctx: Context, phi: tuple[TypeExpr, ...],
                    delta: tuple[TypeExpr, ...] = ()) -> Context:
    """The eliminator premise context: ambient, one copy, postcontext on the
    diagonal with reflexivity paths."""
    n = len(ctx.entries)
    k = len(phi)
    delta_prem = tuple(apply_subst(delta[i], refl_instantiation(n, k, i))
                       for i in range(len(delta)))
    return Context(tuple(ctx.entries) + tuple(phi) + delta_prem)


def diagonal_telescope(n: int, phi: tuple[TypeExpr, ...]) -> Telescope:
    """The identity telescope pulled back to the diagonal, over one copy."""
    k = len(phi)
    out = []
    for i, e in enumerate(idc_tele(n, phi)):
        terms = (tuple(Var(c) for c in range(i))
                 + tuple(Var(i + c) for c in range(k)) * 2
                 + tuple(Var(i + k + j) for j in range(n)))
        out.append(apply_subst(e, Substitution(terms)))
    return Telescope(tuple(out))


def id_context(ctx: Context, phi: tuple[TypeExpr, ...]) -> IdContext:
    """Identity telescope and reflexivity element of a telescope."""
    n = len(ctx.entries)
    return IdContext(ctx, tuple(phi), Telescope(idc_tele(n, phi)),
                     idc_refl(len(phi)))


def id_elim(ctx: Context, phi: tuple[TypeExpr, ...],
            theta: tuple[TypeExpr, ...], dvec: tuple[Term, ...],
            delta: tuple[TypeExpr, ...] = ()) -> tuple[DerivedTerm, ...]:
    """Generalized identity eliminator, packaged with its computation laws.

    ``theta`` is the target telescope over the full eliminator context;
    ``dvec`` the premise element over the premise context.  Each component
    carries the definitional law that instantiating both copies to the
    diagonal and the paths to reflexivity recovers the premise.
    """
    n = len(ctx.entries)
    k = len(phi)
    m = len(delta)
    out = ctx_elim(n, phi, tuple(delta), tuple(theta), tuple(dvec))
    octx = elim_context(ctx, phi, delta)
    pctx = premise_context(ctx, phi, delta)
    sub = refl_instantiation(n, k, m)
    results = []
    for i, comp in enumerate(out):
        expected = apply_subst(
            theta[i],
            Substitution(tuple(reversed(out[:i]))
                         + tuple(Var(j) for j in range(n + 3 * k + m))))
        law = Law(pctx, apply_subst(comp, sub), dvec[i],
                  apply_subst(expected, sub))
        results.append(DerivedTerm(octx, comp, expected,
                                   definitional_laws=(law,)))
    return tuple(results)


def context_transport(ctx: Context, phi: tuple[TypeExpr, ...],
                      upsilon: TypeExpr) -> DerivedTerm:
    """Transport an element of a dependent type along an identity-telescope
    element, with the definitional law that reflexivity transports
    identically."""
    n = len(ctx.entries)
    k = len(phi)
    term = idc_transport(n, phi, (upsilon,))[0]
    ups_at_x2 = rename(upsilon, tuple(k + c for c in range(k))
                       + tuple(3 * k + j for j in range(n)))
    tctx = Context(tuple(elim_context(ctx, phi).entries) + (ups_at_x2,))
    expected = rename(upsilon, tuple(1 + 2 * k + c for c in range(k))
                      + tuple(1 + 3 * k + j for j in range(n)))
    pctx = Context(tuple(ctx.entries) + tuple(phi) + (upsilon,))
    law = Law(pctx, apply_subst(term, refl_instantiation(n, k, 1)), Var(0),
              weaken(upsilon, 0, 1))
    return DerivedTerm(tctx, term, expected, definitional_laws=(law,))


def subst_lift(ctx: Context, phi: tuple[TypeExpr, ...],
               psi: tuple[TypeExpr, ...],
               fvec: tuple[Term, ...]) -> tuple[Term, ...]:
    """Lift a context morphism to identity telescopes.

    ``fvec`` maps the extended context over ``phi`` into ``psi`` (component
    ``i`` scoped over ambient plus ``phi``); the lift maps the identity
    telescope of ``phi`` into that of ``psi`` over the two images.  When the
    morphism is the projection discarding final entries the lift is the
    prefix of the path variables, definitionally.
    """
    n = len(ctx.entries)
    k = len(phi)
    kp = len(psi)
    if (tuple(psi) == tuple(phi[:kp])
            and tuple(fvec) == tuple(Var(k - 1 - i) for i in range(kp))):
        return tuple(Var(k - 1 - i) for i in range(kp))
    tele = idc_tele(n, psi)
    theta = []
    for i, e in enumerate(tele):
        terms: list[Term] = [Var(c) for c in range(i)]
        for c in range(kp):
            terms.append(rename(fvec[kp - 1 - c],
                                tuple(i + k + cc for cc in range(k))
                                + tuple(i + 3 * k + j for j in range(n))))
        for c in range(kp):
            terms.append(rename(fvec[kp - 1 - c],
                                tuple(i + 2 * k + cc for cc in range(k))
                                + tuple(i + 3 * k + j for j in range(n))))
        terms += [Var(i + 3 * k + j) for j in range(n)]
        theta.append(apply_subst(e, Substitution(tuple(terms))))
    dvec = tuple(Refl(f) for f in fvec)
    return ctx_elim(n, phi, (), tuple(theta), dvec)


def star(ctx: Context, a: TypeExpr, b_family: TypeExpr, m: Term, k: Term,
         p: Term, arg: Term) -> DerivedTerm:
    """Instantiate a function equality at an argument, with its computation
    law at reflexivity."""
    n = len(ctx)
    term = star_term(b_family, m, k, p, arg, n)
    expected = Id(subst1(b_family, arg), App(m, arg), App(k, arg))
    # computation at reflexivity, generic in the function and the argument
    law_ctx = ctx.extend(Pi(a, b_family)).extend(weaken(a, 0, 1))
    fam2 = weaken(b_family, 1, 2)
    lhs = star_term(fam2, Var(1), Var(1), Refl(Var(1)), Var(0), n + 2)
    rhs = Refl(App(Var(1), Var(0)))
    at = Id(subst1(fam2, Var(0)), App(Var(1), Var(0)), App(Var(1), Var(0)))
    return DerivedTerm(ctx, term, expected,
                       definitional_laws=(Law(law_ctx, lhs, rhs, at),))


# ---------------------------------------------------------------------------
# Higher constructions


def theta_cmp(ctx: Context, phi: tuple[TypeExpr, ...],
              psi: tuple[TypeExpr, ...], fvec: tuple[Term, ...],
              b_family: TypeExpr) -> DerivedTerm:
    """Comparison cell between the two ways of transporting along a morphism.

    Given a context morphism from ``phi`` into ``psi`` and a dependent type
    over ``psi``, an element over the second image can be transported either
    in the pulled-back type along the original paths, or in the original
    type along the lifted paths.  The cell identifies the two, and reduces
    to reflexivity on reflexivity paths.
    """
    n = len(ctx)
    k = len(phi)
    kp = len(psi)
    # the pulled-back type over ambient plus phi
    b_pulled = apply_subst(
        b_family, Substitution(tuple(fvec[kp - 1 - c] for c in range(kp))
                               + ctx_vars(n, k)))
    # postcontext entry: the pulled-back type at the second copy
    b_at_x2 = rename(b_pulled, tuple(k + c for c in range(k))
                     + tuple(3 * k + j for j in range(n)))
    b_at_x1 = rename(b_pulled, tuple(1 + 2 * k + c for c in range(k))
                     + tuple(1 + 3 * k + j for j in range(n)))
    # transport of the pulled-back type along the original paths
    t1 = idc_transport(n, phi, (b_pulled,))[0]
    # transport of the original type along the lifted paths
    lifted = subst_lift(ctx, phi, psi, fvec)
    t2_gen = idc_transport(n, psi, (b_family,))[0]
    terms: list[Term] = [Var(0)]
    terms += [weaken(lifted[kp - 1 - c], 0, 1) for c in range(kp)]
    terms += [rename(fvec[kp - 1 - c], tuple(1 + k + cc for cc in range(k))
                     + tuple(1 + 3 * k + j for j in range(n)))
              for c in range(kp)]
    terms += [rename(fvec[kp - 1 - c], tuple(1 + 2 * k + cc for cc in range(k))
                     + tuple(1 + 3 * k + j for j in range(n)))
              for c in range(kp)]
    terms += [Var(1 + 3 * k + j) for j in range(n)]
    t2 = apply_subst(t2_gen, Substitution(tuple(terms)))
    target = Id(b_at_x1, t1, t2)
    return id_elim(ctx, phi, (target,), (Refl(Var(0)),), (b_at_x2,))[0]


@dataclass(frozen=True)
class IsofibLift:
    """Chosen lift of an identity-telescope cell through a projection.

    ``section`` is the lifted morphism into the total telescope;
    ``cell`` is the identity-telescope element from the lift to ``g``,
    whose projection is the original cell on the nose.
    """

    context: Context
    section: tuple[Term, ...]
    cell: tuple[Term, ...]


def isofib_lift(ctx: Context, lam: tuple[TypeExpr, ...],
                psi: tuple[TypeExpr, ...], b_family: TypeExpr,
                fvec: tuple[Term, ...], g1vec: tuple[Term, ...], g2: Term,
                alpha: tuple[Term, ...]) -> IsofibLift:
    """Lift a cell ``alpha`` between ``fvec`` and the base part of ``g``
    through the projection discarding the last entry.

    The section transports the last component of ``g`` backwards along the
    cell; the connecting cell is ``alpha`` extended by reflexivity.  When
    ``alpha`` is reflexivity the section reduces to ``g`` and the cell to
    reflexivity (normality, via the transport computation rule).
    """
    n = len(ctx)
    k = len(lam)
    kp = len(psi)
    tr_gen = idc_transport(n, psi, (b_family,))[0]
    terms: list[Term] = [g2]
    terms += [alpha[kp - 1 - c] for c in range(kp)]
    terms += [g1vec[kp - 1 - c] for c in range(kp)]
    terms += [fvec[kp - 1 - c] for c in range(kp)]
    terms += [Var(k + j) for j in range(n)]
    tr = apply_subst(tr_gen, Substitution(tuple(terms)))
    section = tuple(fvec) + (tr,)
    cell = tuple(alpha) + (Refl(tr),)
    return IsofibLift(Context(tuple(ctx.entries) + tuple(lam)), section, cell)


def fst_term(a: TypeExpr, s: Term) -> Term:
    """First pair projection by the dependent eliminator."""
    return SigElim(weaken(a, 0, 1), Var(1), s)


def snd_term(a: TypeExpr, b_family: TypeExpr, s: Term, n: int) -> Term:
    """Second pair projection; its motive applies the family to the first
    projection of the scrutinee."""
    fst_w = SigElim(weaken(a, 0, 2), Var(1), Var(0))
    motive = apply_subst(b_family, Substitution((fst_w,) + ctx_vars(n, 1)))
    return SigElim(motive, Var(0), s)


def sigma_proj(ctx: Context, a: TypeExpr, b_family: TypeExpr,
               s: Term) -> tuple[DerivedTerm, DerivedTerm]:
    """Both pair projections, with their computation laws on pairs."""
    n = len(ctx)
    pair_ctx = ctx.extend(a).extend(b_family)
    a2 = weaken(a, 0, 2)
    b2 = weaken(b_family, 1, 2)
    fst = DerivedTerm(
        ctx, fst_term(a, s), a,
        definitional_laws=(Law(pair_ctx, fst_term(a2, Pair(Var(1), Var(0))),
                               Var(1), a2),))
    snd_ty = apply_subst(b_family,
                         Substitution((fst_term(a, s),) + ctx_vars(n)))
    snd = DerivedTerm(
        ctx, snd_term(a, b_family, s, n), snd_ty,
        definitional_laws=(Law(pair_ctx,
                               snd_term(a2, b2, Pair(Var(1), Var(0)), n + 2),
                               Var(0), subst1(b2, Var(1))),))
    return fst, snd


def sigma_eta_term(a: TypeExpr, b_family: TypeExpr, s: Term, n: int) -> Term:
    """The eta cell from a pair-type element to the pair of its projections,
    by the dependent eliminator with a reflexivity branch."""
    a1, b1 = weaken(a, 0, 1), weaken(b_family, 1, 1)
    motive = Id(Sigma(a1, b1), Var(0),
                Pair(fst_term(a1, Var(0)), snd_term(a1, b1, Var(0), n + 1)))
    return SigElim(motive, Refl(Pair(Var(1), Var(0))), s)


def sigma_eta(ctx: Context, a: TypeExpr, b_family: TypeExpr,
              s: Term) -> DerivedTerm:
    """Eta cell with its computation law on pairs and the propositional law
    that its first-projection lift is reflexivity."""
    n = len(ctx)
    term = sigma_eta_term(a, b_family, s, n)
    expected = Id(Sigma(a, b_family), s,
                  Pair(fst_term(a, s), snd_term(a, b_family, s, n)))
    pair_ctx = ctx.extend(a).extend(b_family)
    a2, b2 = weaken(a, 0, 2), weaken(b_family, 1, 2)
    comp = Law(pair_ctx, sigma_eta_term(a2, b2, Pair(Var(1), Var(0)), n + 2),
               Refl(Pair(Var(1), Var(0))),
               Id(Sigma(a2, b2), Pair(Var(1), Var(0)),
                  Pair(Var(1), Var(0))))
    return DerivedTerm(ctx, term, expected, definitional_laws=(comp,),
                       propositional_laws=(proj_eta_law(ctx, a, b_family),))


def proj_eta_law(ctx: Context, a: TypeExpr, b_family: TypeExpr) -> Law:
    """The first-projection lift of the eta cell is reflexivity, witnessed
    by the dependent eliminator with a doubly-reflexive branch."""
    n = len(ctx)
    law_ctx = ctx.extend(Sigma(a, b_family))

    def pieces(depth: int):
        ad = weaken(a, 0, depth)
        bd = weaken(b_family, 1, depth)
        s = Var(0)
        eta = sigma_eta_term(ad, bd, s, n + depth)
        fst_body = SigElim(weaken(ad, 0, 2), Var(1), Var(0))
        lifted = lift_term(ad, fst_body, s,
                           Pair(fst_term(ad, s), snd_term(ad, bd, s, n + depth)),
                           eta, n + depth)
        return ad, lifted, fst_term(ad, s)

    a1, lifted1, fst1 = pieces(1)
    lhs, rhs = lifted1, Refl(fst1)
    at = Id(a1, fst1, fst1)
    # witness: eliminate the pair-type variable; on a literal pair both the
    # eta cell and its lift compute to reflexivity
    a2m, lifted2, fst2 = pieces(2)
    motive = Id(Id(a2m, fst2, fst2), lifted2, Refl(fst2))
    witness = SigElim(motive, Refl(Refl(Var(1))), Var(0))
    return Law(law_ctx, lhs, rhs, at, witness)


def arrow_factor(ctx: Context, lam: tuple[TypeExpr, ...],
                 hvec: tuple[Term, ...], f: Term, g: Term,
                 alpha: Term) -> tuple[Term, ...]:
    """Factor a cell through the walking-cell extension: the tuple of the
    base morphism, both endpoints and the cell itself.  Composing with the
    generic-cell projection recovers the cell on the nose."""
    return tuple(hvec) + (f, g, alpha)


def generic_cell_recovers(factor: tuple[Term, ...]) -> Term:
    """Compose the factorization with the generic-cell projection; this is
    literal substitution and returns the original cell unchanged."""
    kappa = Var(0)
    return apply_subst(kappa, Substitution(tuple(reversed(factor))
                                           + (Var(0),)))


@dataclass(frozen=True)
class UnitFiller:
    """The transport-derived unit eliminator, its primitive counterpart, and
    their comparison.

    ``derived`` computes on the canonical element but is not convertible to
    the primitive eliminator on a variable; ``agreement`` is the
    propositional law identifying the two.
    """

    derived: DerivedTerm
    primitive: Term
    collapse: Term
    agreement: Law


def unit_collapse_term(z: Term) -> Term:
    """The canonical path from a unit-type element to the canonical element,
    by unit elimination with a reflexivity branch."""
    return UnitElim(Id(Unit(), Var(0), Star()), Refl(Star()), z)


def unit_filler_elim(ctx: Context, c_family: TypeExpr, d: Term) -> UnitFiller:
    """Derive a unit eliminator from transport along the collapse path."""
    n = len(ctx)

    def uprime(z: Term, depth: int) -> Term:
        fam = weaken(c_family, 1, depth)
        return transport_term(fam, z, Star(), unit_collapse_term(z),
                              weaken(d, 0, depth), n + depth)

    dctx = ctx.extend(Unit())
    fam1 = weaken(c_family, 1, 1)
    term = uprime(Var(0), 1)
    primitive = UnitElim(fam1, weaken(d, 0, 1), Var(0))
    comp = Law(ctx, uprime(Star(), 0), d, subst1(c_family, Star()))
    motive = Id(weaken(c_family, 1, 1),
                UnitElim(weaken(c_family, 1, 2), weaken(d, 0, 2), Var(0)),
                uprime(Var(0), 2))
    agreement = Law(dctx, primitive, term, fam1,
                    UnitElim(motive, Refl(weaken(d, 0, 1)), Var(0)))
    derived = DerivedTerm(dctx, term, fam1, definitional_laws=(comp,))
    return UnitFiller(derived, primitive, unit_collapse_term(Var(0)),
                      agreement)


@dataclass(frozen=True)
class IdFiller:
    """The transport-derived identity eliminator.

    ``theta`` is the identity-telescope cell from a generic point-and-path
    pair to the reflexivity pair; ``derived`` transports the reflexivity
    branch along it; ``agreement`` identifies it with the primitive
    eliminator.
    """

    context: Context
    theta: tuple[Term, ...]
    derived: DerivedTerm
    agreement: Law


def id_filler_elim(ctx: Context, a: TypeExpr, c_family: TypeExpr,
                   d: Term) -> IdFiller:
    """Derive the identity eliminator from context transport along the cell
    connecting a generic path to reflexivity.

    ``c_family`` is scoped over the ambient context plus a point, a second
    point and a path; ``d`` over the ambient context plus one point, at the
    family instantiated to the reflexivity diagonal.
    """
    n = len(ctx)
    pctx = _path_ctx(ctx, a)
    a3 = weaken(a, 0, 3)
    x, y, p = Var(2), Var(1), Var(0)
    hat = tuple(range(3)) + tuple(6 + j for j in range(n + 3))

    # first component: the inverse path
    theta0 = inverse_term(a3, x, y, p)

    # second component: the generic path equals the transport of
    # reflexivity along the first component, by path elimination
    base_a = weaken(a, 0, 1)
    base_d = Id(weaken(a, 0, 2), Var(1), Var(0))
    tr_gen = idc_transport(n + 1, (base_a,), (base_d,))[0]

    def tr_at(u1: Term, u2: Term, q: Term, z: Term, basex: Term,
              depth: int) -> Term:
        return apply_subst(tr_gen, Substitution(
            (z, q, u2, u1, basex) + ctx_vars(n, depth)))

    t1_type = Id(Id(a3, x, y), p, tr_at(y, x, theta0, Refl(x), x, 3))
    theta1 = JElim(rename(t1_type, hat), Refl(Refl(Var(0))), x, y, p)

    # context transport of the branch along the cell
    phi2 = (base_a, base_d)
    trc_gen = idc_transport(n + 1, phi2, (c_family,))[0]

    def jprime_at(xv: Term, yv: Term, pv: Term, th0: Term, th1: Term,
                  dv: Term, depth: int) -> Term:
        return apply_subst(trc_gen, Substitution(
            (dv, th1, th0, Refl(xv), xv, pv, yv, xv) + ctx_vars(n, depth)))

    d3 = apply_subst(d, Substitution((Var(2),) + ctx_vars(n, 3)))
    jp = jprime_at(x, y, p, theta0, theta1, d3, 3)

    # computation at reflexivity
    diag = Substitution((Refl(Var(0)), Var(0), Var(0)) + ctx_vars(n, 1))
    comp = Law(ctx.extend(a), apply_subst(jp, diag), d,
               apply_subst(c_family, diag))
    derived = DerivedTerm(pctx, jp, c_family, definitional_laws=(comp,))

    # agreement with the primitive eliminator, by path elimination
    c_as_motive = rename(c_family, tuple(range(3)) + tuple(6 + j
                                                           for j in range(n)))
    d_as_branch = apply_subst(d, Substitution((Var(0),) + ctx_vars(n, 4)))
    primitive = JElim(c_as_motive, d_as_branch, x, y, p)
    w_type = Id(c_family, primitive, jp)
    d_at_hat = apply_subst(d, Substitution((Var(0),) + ctx_vars(n, 4)))
    witness = JElim(rename(w_type, hat), Refl(d_at_hat), x, y, p)
    agreement = Law(pctx, primitive, jp, c_family, witness)
    return IdFiller(pctx, (theta0, theta1), derived, agreement)


# ---------------------------------------------------------------------------
# 2-cell calculus


@dataclass(frozen=True)
class TwoCell:
    """A 2-cell of the syntactic 2-category: between two maps of types, a
    pointwise family of identity proofs.

    ``source``, ``target`` and ``component`` are scoped over the ambient
    context plus one variable of the domain type; the component proves the
    identity of the two images in the codomain.
    """

    context: Context
    domain: TypeExpr
    codomain: TypeExpr
    source: Term
    target: Term
    component: Term


def identity_cell(ctx: Context, a: TypeExpr, b: TypeExpr,
                  f_body: Term) -> TwoCell:
    return TwoCell(ctx, a, b, f_body, f_body, Refl(f_body))


def cell_type(cell: TwoCell) -> TypeExpr:
    """The identity type the component must inhabit, over the extended
    context."""
    return Id(weaken(cell.codomain, 0, 1), cell.source, cell.target)


def check_cell(cell: TwoCell, sig: Signature = Signature(),
               state=None) -> None:
    from . import kernel
    if state is None:
        state = kernel.EMPTY_STATE
    ectx = cell.context.extend(cell.domain)
    kernel.check_term(ectx, cell.component, cell_type(cell), sig, state)


def vertical_cell(beta: TwoCell, alpha: TwoCell) -> TwoCell:
    """Pointwise composition of consecutive cells (``beta`` after
    ``alpha``); composing with an identity cell on the left is
    definitionally trivial."""
    n = len(alpha.context) + 1
    comp = compose_term(weaken(alpha.codomain, 0, 1), alpha.source,
                        alpha.target, beta.target, alpha.component,
                        beta.component, n)
    return TwoCell(alpha.context, alpha.domain, alpha.codomain,
                   alpha.source, beta.target, comp)


def whisker_left(alpha: TwoCell, h_body: Term, h_domain: TypeExpr) -> TwoCell:
    """Precompose a cell with a map into its domain: the component is the
    original component at the image point."""
    n = len(alpha.context)
    at_h = Substitution((h_body,) + ctx_vars(n, 1))
    return TwoCell(alpha.context, h_domain, alpha.codomain,
                   apply_subst(alpha.source, at_h),
                   apply_subst(alpha.target, at_h),
                   apply_subst(alpha.component, at_h))


def whisker_right(k_body: Term, k_codomain: TypeExpr,
                  alpha: TwoCell) -> TwoCell:
    """Postcompose a cell with a map out of its codomain: the component is
    the functorial lift of the original component."""
    n = len(alpha.context) + 1
    comp = lift_term(weaken(k_codomain, 0, 1), weaken(k_body, 1, 1),
                     alpha.source, alpha.target, alpha.component, n)
    at = Substitution
    k_at = lambda t: apply_subst(weaken(k_body, 1, 1),
                                 Substitution((t,) + ctx_vars(n - 1, 1)))
    return TwoCell(alpha.context, alpha.domain, k_codomain,
                   k_at(alpha.source), k_at(alpha.target), comp)


def horizontal_cell(beta: TwoCell, alpha: TwoCell) -> TwoCell:
    """Horizontal composition: whisker ``beta`` at the target of ``alpha``,
    after the source-map lift of ``alpha``.  The opposite order is
    propositionally equal (see ``interchange_law``)."""
    left = whisker_left(beta, alpha.target, alpha.domain)
    right = whisker_right(beta.source, beta.codomain, alpha)
    return vertical_cell(left, right)


def horizontal_cell_alt(beta: TwoCell, alpha: TwoCell) -> TwoCell:
    """The other composition order: target-map lift of ``alpha`` after
    ``beta`` whiskered at the source of ``alpha``."""
    left = whisker_right(beta.target, beta.codomain, alpha)
    right = whisker_left(beta, alpha.source, alpha.domain)
    return vertical_cell(left, right)


def interchange_law(beta: TwoCell, alpha: TwoCell,
                    sig: Signature = Signature()) -> Law:
    """The two horizontal composition orders agree, witnessed by
    eliminating the component of ``alpha`` with a right-unit witness over
    the component of ``beta`` in the branch."""
    n = len(alpha.context)
    ectx = alpha.context.extend(alpha.domain)
    one = horizontal_cell(beta, alpha)
    two = horizontal_cell_alt(beta, alpha)
    at = cell_type(one)
    b1 = weaken(alpha.codomain, 0, 1)
    c1 = weaken(beta.codomain, 0, 1)

    def beta_at(t: Term, depth: int) -> Term:
        return apply_subst(beta.component,
                           Substitution((t,) + ctx_vars(n, depth)))

    def hk_at(body: Term, t: Term, depth: int) -> Term:
        return apply_subst(body, Substitution((t,) + ctx_vars(n, depth)))

    # motive: generic in the two endpoints and the path of alpha's component
    b4, c4 = weaken(alpha.codomain, 0, 4), weaken(beta.codomain, 0, 4)
    u, v, q = Var(2), Var(1), Var(0)
    m = n + 4
    h_u = hk_at(weaken(beta.source, 1, 4), u, 4)
    h_v = hk_at(weaken(beta.source, 1, 4), v, 4)
    k_u = hk_at(weaken(beta.target, 1, 4), u, 4)
    k_v = hk_at(weaken(beta.target, 1, 4), v, 4)
    beta_u = apply_subst(weaken(beta.component, 1, 4),
                         Substitution((u,) + ctx_vars(n, 5)))
    beta_v = apply_subst(weaken(beta.component, 1, 4),
                         Substitution((v,) + ctx_vars(n, 5)))
    h_lift = lift_term(c4, weaken(beta.source, 1, 5), u, v, q, m)
    k_lift = lift_term(c4, weaken(beta.target, 1, 5), u, v, q, m)
    lhs_gen = compose_term(c4, h_u, h_v, k_v, h_lift, beta_v, m)
    rhs_gen = compose_term(c4, h_u, k_u, k_v, beta_u, k_lift, m)
    motive = Id(Id(c4, h_u, k_v), lhs_gen, rhs_gen)
    # branch: at reflexivity the right side reduces to beta's component and
    # the left side composes it with reflexivity on the right, so the
    # right-unit witness over beta's component closes the goal
    c2 = weaken(beta.codomain, 0, 2)
    h_x = hk_at(weaken(beta.source, 1, 2), Var(0), 2)
    k_x = hk_at(weaken(beta.target, 1, 2), Var(0), 2)
    beta_x = apply_subst(weaken(beta.component, 1, 2),
                         Substitution((Var(0),) + ctx_vars(n, 3)))
    c5 = weaken(beta.codomain, 0, 5)
    ru_motive = Id(Id(c5, Var(2), Var(1)),
                   compose_term(c5, Var(2), Var(2), Var(1), Refl(Var(2)),
                                Var(0), n + 5),
                   Var(0))
    branch = JElim(ru_motive, Refl(Refl(Var(0))), h_x, k_x, beta_x)
    witness = JElim(motive, branch, alpha.source, alpha.target,
                    alpha.component)
    return Law(ectx, one.component, two.component, at, witness)


def apply_fn(fn: Term, arg: Term) -> Term:
    """Apply a function term, beta-reducing a literal abstraction so that
    law statements stay within the inferable fragment."""
    if isinstance(fn, Lam):
        return subst1(fn.body, arg)
    return App(fn, arg)


def ext_pack(ctx: Context, a: TypeExpr, b_family: TypeExpr, m: Term, k: Term,
             pointwise: Term) -> DerivedTerm:
    """Package a pointwise family of identities into a function equality,
    with its instantiation law and the self-reflexivity collapse."""
    n = len(ctx)
    term = Ext(m, k, pointwise)
    expected = Id(Pi(a, b_family), m, k)
    ectx = ctx.extend(a)
    fam1 = weaken(b_family, 1, 1)
    # instantiating the packaged equality at an argument projects the
    # pointwise family
    proj = Law(ectx,
               star_term(fam1, weaken(m, 0, 1), weaken(k, 0, 1),
                         Ext(weaken(m, 0, 1), weaken(k, 0, 1),
                             weaken(pointwise, 1, 1)),
                         Var(0), n + 1),
               pointwise,
               Id(b_family, apply_fn(weaken(m, 0, 1), Var(0)),
                  apply_fn(weaken(k, 0, 1), Var(0))))
    # packaging pointwise reflexivity collapses to reflexivity
    collapse = Law(ctx, Ext(m, m, Refl(apply_fn(weaken(m, 0, 1), Var(0)))),
                   Refl(m), Id(Pi(a, b_family), m, m))
    return DerivedTerm(ctx, term, expected,
                       definitional_laws=(proj, collapse))
