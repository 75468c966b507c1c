"""Interpretation of kernel judgements in the finite-groupoid model.

Contexts become iterated comprehension totals starting from the point
groupoid, types become split families over them, and terms become strict
sections of the corresponding projections.  Identity types land in
discrete fibers on hom-sets, so equality of interpreted sections is a
decidable, on-the-nose comparison; for equality judgements ``interpret``
returns that verdict.

An :class:`Environment` fixes the meaning of declared constants: every
type constant becomes the constant family at a chosen fiber groupoid and
every term constant the canonical element of its instantiated type built
from a chosen basepoint.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .syntax import (
    Unit, Sigma, Pi, Id, TypeConst, Var, Star, Pair, SigElim, UnitElim,
    Refl, JElim, Lam, App, Ext, TermConst, ConvHint, TypeExpr, Term,
    Context, Substitution, Signature, weaken, apply_subst, subst1, inst,
)
from .kernel import (
    Judgement, ConversionState, EMPTY_STATE, normalize,
    infer_type, check_context, check_type, check_term, check_judgement,
    _infer_identity_data,
)
from .gpdmodel import (
    FiniteGroupoid, GroupoidFunctor, GroupoidFamily, point_groupoid,
    comprehension, reindex, unit_family, constant_family, sigma_family,
    pi_family, id_family, restrict_to_fiber, functor_by, nat_iso,
    cyclic_groupoid, walking_iso, _transport_mor,
)


class InterpretError(Exception):
    """The judgement has no interpretation under the given environment."""


@dataclass(frozen=True)
class Environment:
    """Semantic data for signature constants.

    Type constants are interpreted as the constant family at ``fiber``;
    term constants as the canonical element of their result type grown
    from ``basepoint``.
    """

    label: str
    fiber: FiniteGroupoid
    basepoint: object

    def __post_init__(self):
        if self.basepoint not in self.fiber.objects:
            raise InterpretError(
                f"environment {self.label!r}: basepoint is not an object "
                "of the fiber groupoid")


def standard_environments() -> tuple[Environment, ...]:
    """Three inequivalent environments used by the soundness sweep."""
    return (Environment("trivial", point_groupoid(), "pt"),
            Environment("cyclic", cyclic_groupoid(2), "o"),
            Environment("interval", walking_iso(), 0))


@functools.lru_cache(maxsize=None)
def _chain_total(fams: tuple) -> FiniteGroupoid:
    g = point_groupoid()
    for fam in fams:
        g = comprehension(fam).total
    return g


def _strip(value, times: int):
    for _ in range(times):
        value = value[0]
    return value


class Interpreter:
    """Compositional interpretation relative to one environment."""

    def __init__(self, env: Environment, sig: Signature = Signature(),
                 state: ConversionState = EMPTY_STATE):
        self.env = env
        self.sig = sig
        self.state = state
        self._ctx_memo: dict = {}
        self._type_memo: dict = {}
        self._term_memo: dict = {}

    # -- contexts ----------------------------------------------------------

    def context(self, ctx: Context) -> tuple[GroupoidFamily, ...]:
        """One family per entry, each over the total of the prefix."""
        out = self._ctx_memo.get(ctx)
        if out is not None:
            return out
        fams: tuple[GroupoidFamily, ...] = ()
        prefix = Context()
        for ty in ctx.entries:
            fams = fams + (self.type_(prefix, ty),)
            prefix = prefix.extend(ty)
        self._ctx_memo[ctx] = fams
        return fams

    def base(self, ctx: Context) -> FiniteGroupoid:
        return _chain_total(self.context(ctx))

    # -- types -------------------------------------------------------------

    def _norm(self, ctx: Context, node):
        return normalize(ctx, node, self.sig, self.state)

    def type_(self, ctx: Context, a: TypeExpr) -> GroupoidFamily:
        an = self._norm(ctx, a)
        key = (ctx, an)
        out = self._type_memo.get(key)
        if out is not None:
            return out
        g = self.base(ctx)
        if isinstance(an, Unit):
            out = unit_family(g)
        elif isinstance(an, TypeConst):
            out = constant_family(g, self.env.fiber)
        elif isinstance(an, Sigma):
            fa = self.type_(ctx, an.domain)
            fb = self.type_(ctx.extend(an.domain), an.family)
            out = sigma_family(fa, fb)
        elif isinstance(an, Pi):
            fa = self.type_(ctx, an.domain)
            fb = self.type_(ctx.extend(an.domain), an.family)
            out = pi_family(fa, fb)
        elif isinstance(an, Id):
            out = self._id_type(ctx, an)
        else:
            raise InterpretError(f"uninterpretable type {an!r}")
        self._type_memo[key] = out
        return out

    def _id_type(self, ctx: Context, an: Id) -> GroupoidFamily:
        g = self.base(ctx)
        fa = self.type_(ctx, an.underlying)
        sl = self.term(ctx, an.left, an.underlying)
        sr = self.term(ctx, an.right, an.underlying)
        idf, _, caa = id_family(fa)
        pairing = functor_by(
            g, caa.total,
            lambda o: (sl.obj(o), sr.obj(o)[1]),
            lambda m: (sl.mor(m), sr.mor(m)[1], sr.mor(m)[2]))
        return reindex(idf, pairing)

    # -- terms -------------------------------------------------------------

    def term(self, ctx: Context, t: Term, a: TypeExpr) -> GroupoidFunctor:
        an = self._norm(ctx, a)
        key = (ctx, t, an)
        out = self._term_memo.get(key)
        if out is not None:
            return out
        out = self._term_uncached(ctx, t, an)
        self._term_memo[key] = out
        return out

    def _term_uncached(self, ctx: Context, t: Term,
                       an: TypeExpr) -> GroupoidFunctor:
        g = self.base(ctx)
        if isinstance(t, Var):
            return self._var(ctx, g, t.index)
        if isinstance(t, Star):
            return self._star(g)
        if isinstance(t, ConvHint):
            return self.term(ctx, t.body, an)
        if isinstance(t, Pair):
            if not isinstance(an, Sigma):
                raise InterpretError("pair against a non-pair type")
            return self._pair(ctx, g, t, an)
        if isinstance(t, SigElim):
            return self._sig_elim(ctx, g, t)
        if isinstance(t, UnitElim):
            return self.term(ctx, t.branch, subst1(t.motive, Star()))
        if isinstance(t, Refl):
            if not isinstance(an, Id):
                an = Id(infer_type(ctx, t.arg, self.sig, self.state),
                        t.arg, t.arg)
            fa = self.type_(ctx, an.underlying)
            st = self.term(ctx, t.arg, an.underlying)
            return self._refl_like(g, fa, st, self.type_(ctx, an))
        if isinstance(t, JElim):
            return self._j_elim(ctx, g, t)
        if isinstance(t, Lam):
            if not isinstance(an, Pi):
                raise InterpretError("abstraction against a non-function type")
            fa = self.type_(ctx, an.domain)
            fb = self.type_(ctx.extend(an.domain), an.family)
            sbody = self.term(ctx.extend(an.domain), t.body, an.family)
            return self._lam_section(g, fa, fb, sbody)
        if isinstance(t, App):
            return self._app(ctx, g, t)
        if isinstance(t, Ext):
            return self._ext(ctx, g, t, an)
        if isinstance(t, TermConst):
            decl = self.sig.term_decl(t.name)
            if decl is None:
                raise InterpretError(f"undeclared term constant {t.name!r}")
            inst_ty = apply_subst(
                decl.result, Substitution(tuple(reversed(t.args))))
            return self._default(ctx, inst_ty)
        raise InterpretError(f"uninterpretable term {t!r}")

    def _var(self, ctx: Context, g: FiniteGroupoid,
             index: int) -> GroupoidFunctor:
        fam_t = self.type_(ctx, ctx.var_type(index))
        ct = comprehension(fam_t)
        return functor_by(
            g, ct.total,
            lambda o: (o, _strip(o, index)[1]),
            lambda m: (m, _strip(m, index)[1], _strip(m, index)[2]))

    def _star(self, g: FiniteGroupoid) -> GroupoidFunctor:
        cu = comprehension(unit_family(g))
        return functor_by(g, cu.total,
                          lambda o: (o, "pt"),
                          lambda m: (m, "pt", ("id", "pt")))

    def _sigma_section(self, g: FiniteGroupoid, fa: GroupoidFamily,
                       fb: GroupoidFamily, parts_obj, parts_mor
                       ) -> GroupoidFunctor:
        cs = comprehension(sigma_family(fa, fb))

        def obj_fn(o):
            x, z = parts_obj(o)
            return (o, (x, z))

        def mor_fn(m):
            x, phi, z, psi = parts_mor(m)
            b0 = fb.transport(_transport_mor(g, m, x, fa)).obj(z)
            return (m, (x, z), (phi, b0, psi))

        return functor_by(g, cs.total, obj_fn, mor_fn)

    def _pair(self, ctx: Context, g: FiniteGroupoid, t: Pair,
              an: Sigma) -> GroupoidFunctor:
        fa = self.type_(ctx, an.domain)
        fb = self.type_(ctx.extend(an.domain), an.family)
        sa = self.term(ctx, t.fst, an.domain)
        ss = self.term(ctx, t.snd, subst1(an.family, t.fst))

        def parts_obj(o):
            return (sa.obj(o)[1], ss.obj(o)[1])

        def parts_mor(m):
            ma, ms = sa.mor(m), ss.mor(m)
            return (ma[1], ma[2], ms[1], ms[2])

        return self._sigma_section(g, fa, fb, parts_obj, parts_mor)

    def _sig_elim(self, ctx: Context, g: FiniteGroupoid,
                  t: SigElim) -> GroupoidFunctor:
        scr_ty = self._norm(
            ctx, infer_type(ctx, t.scrutinee, self.sig, self.state))
        if not isinstance(scr_ty, Sigma):
            raise InterpretError("pair elimination on a non-pair scrutinee")
        s = self.term(ctx, t.scrutinee, scr_ty)
        n = len(ctx)
        branch_ty = apply_subst(
            t.motive,
            Substitution((Pair(Var(1), Var(0)),)
                         + tuple(Var(i + 2) for i in range(n))))
        bctx = ctx.extend(scr_ty.domain).extend(scr_ty.family)
        sb = self.term(bctx, t.branch, branch_ty)
        cres = comprehension(self.type_(ctx, subst1(t.motive, t.scrutinee)))

        def obj_fn(o):
            x, z = s.obj(o)[1]
            return (o, sb.obj(((o, x), z))[1])

        def mor_fn(m):
            _, (x, z), fib_mor = s.mor(m)
            phi, _, psi = fib_mor
            big = ((m, x, phi), z, psi)
            return (m, obj_fn(g.src[m])[1], sb.mor(big)[2])

        return functor_by(g, cres.total, obj_fn, mor_fn)

    def _refl_like(self, g: FiniteGroupoid, fa: GroupoidFamily,
                   st: GroupoidFunctor, fid: GroupoidFamily
                   ) -> GroupoidFunctor:
        cid = comprehension(fid)

        def elem(o):
            return fa.fiber(o).ids[st.obj(o)[1]]

        return functor_by(
            g, cid.total,
            lambda o: (o, elem(o)),
            lambda m: (m, elem(g.src[m]), ("id", elem(g.tgt[m]))))

    def _j_elim(self, ctx: Context, g: FiniteGroupoid,
                t: JElim) -> GroupoidFunctor:
        a_u = _infer_identity_data(ctx, t, self.sig, self.state)
        fa = self.type_(ctx, a_u)
        sl = self.term(ctx, t.left, a_u)
        sp = self.term(ctx, t.proof, Id(a_u, t.left, t.right))
        a1 = weaken(a_u, 0, 1)
        a2 = weaken(a_u, 0, 2)
        mctx = ctx.extend(a_u).extend(a1).extend(Id(a2, Var(1), Var(0)))
        motive_fam = self.type_(mctx, t.motive)
        n = len(ctx)
        branch_ty = apply_subst(
            t.motive,
            Substitution((Refl(Var(0)), Var(0), Var(0))
                         + tuple(Var(i + 1) for i in range(n))))
        sb = self.term(ctx.extend(a_u), t.branch, branch_ty)
        cres = comprehension(
            self.type_(ctx, inst(t.motive, (t.proof, t.right, t.left))))

        def e_mor(o):
            # from the reflexivity point over the left endpoint to the
            # interpreted (left, right, proof) point, along the proof
            x = sl.obj(o)[1]
            p = sp.obj(o)[1]
            idx = fa.fiber(o).ids[x]
            return (((g.ids[o], x, idx), x, p), idx, ("id", p))

        def obj_fn(o):
            x = sl.obj(o)[1]
            d1 = sb.obj((o, x))[1]
            return (o, motive_fam.transport(e_mor(o)).obj(d1))

        def mor_fn(m):
            delta = sb.mor(sl.mor(m))[2]
            return (m, obj_fn(g.src[m])[1],
                    motive_fam.transport(e_mor(g.tgt[m])).mor(delta))

        return functor_by(g, cres.total, obj_fn, mor_fn)

    def _lam_section(self, g: FiniteGroupoid, fa: GroupoidFamily,
                     fb: GroupoidFamily, sbody: GroupoidFunctor
                     ) -> GroupoidFunctor:
        ca = comprehension(fa)
        fpi = pi_family(fa, fb)
        cp = comprehension(fpi)
        sects: dict = {}

        def sect(go):
            out = sects.get(go)
            if out is not None:
                return out
            fib = fa.fiber(go)
            rtot = comprehension(restrict_to_fiber(fb, ca, go)).total

            def s_obj(x):
                return (x, sbody.obj((go, x))[1])

            def s_mor(phi):
                mm = sbody.mor((g.ids[go], fib.src[phi], phi))
                return (phi, mm[1], mm[2])

            out = functor_by(fib, rtot, s_obj, s_mor)
            sects[go] = out
            return out

        def obj_fn(o):
            return (o, sect(o))

        def mor_fn(m):
            go, go2 = g.src[m], g.tgt[m]
            s = sect(go)
            fib2 = fa.fiber(go2)
            moved = fpi.transport(m).obj(s)
            ta_inv = fa.transport(g.inv[m])
            comps = {}
            for x2 in fib2.objects:
                x0 = ta_inv.obj(x2)
                psi = sbody.mor((m, x0, fib2.ids[x2]))[2]
                comps[x2] = (fib2.ids[x2], moved.obj(x2)[1], psi)
            return (m, s, nat_iso(moved, sect(go2), comps))

        return functor_by(g, cp.total, obj_fn, mor_fn)

    def _app(self, ctx: Context, g: FiniteGroupoid,
             t: App) -> GroupoidFunctor:
        fun_ty = self._norm(ctx, infer_type(ctx, t.fun, self.sig, self.state))
        if not isinstance(fun_ty, Pi):
            raise InterpretError("application of a non-function")
        fa = self.type_(ctx, fun_ty.domain)
        fb = self.type_(ctx.extend(fun_ty.domain), fun_ty.family)
        sf = self.term(ctx, t.fun, fun_ty)
        sa = self.term(ctx, t.arg, fun_ty.domain)
        cres = comprehension(self.type_(ctx, subst1(fun_ty.family, t.arg)))

        def obj_fn(o):
            return (o, sf.obj(o)[1].obj(sa.obj(o)[1])[1])

        def mor_fn(m):
            go2 = g.tgt[m]
            nu = sf.mor(m)[2]
            _, x, phi = sa.mor(m)
            s2 = sf.obj(go2)[1]
            tmx = fa.transport(m).obj(x)
            x2 = fa.fiber(go2).tgt[phi]
            psi_nu = nu.at(tmx)[2]
            psi_phi = s2.mor(phi)[2]
            lift_phi = fb.transport((g.ids[go2], tmx, phi))
            fib_b = fb.fiber((go2, x2))
            val = fib_b.comp[(psi_phi, lift_phi.mor(psi_nu))]
            return (m, obj_fn(g.src[m])[1], val)

        return functor_by(g, cres.total, obj_fn, mor_fn)

    def _ext(self, ctx: Context, g: FiniteGroupoid, t: Ext,
             an: TypeExpr) -> GroupoidFunctor:
        if isinstance(an, Id):
            under = self._norm(ctx, an.underlying)
            id_ty: TypeExpr = an
        else:
            under = self._norm(
                ctx, infer_type(ctx, t.left, self.sig, self.state))
            id_ty = Id(under, t.left, t.right)
        if not isinstance(under, Pi):
            raise InterpretError("pointwise equality at a non-function type")
        fa = self.type_(ctx, under.domain)
        sf = self.term(ctx, t.left, under)
        sg = self.term(ctx, t.right, under)
        pw_ty = Id(under.family,
                   App(weaken(t.left, 0, 1), Var(0)),
                   App(weaken(t.right, 0, 1), Var(0)))
        sp = self.term(ctx.extend(under.domain), t.pointwise, pw_ty)
        cid = comprehension(self.type_(ctx, id_ty))
        mods: dict = {}

        def modif(o):
            out = mods.get(o)
            if out is not None:
                return out
            s1 = sf.obj(o)[1]
            s2 = sg.obj(o)[1]
            fib = fa.fiber(o)
            comps = {x: (fib.ids[x], s1.obj(x)[1], sp.obj((o, x))[1])
                     for x in fib.objects}
            out = nat_iso(s1, s2, comps)
            mods[o] = out
            return out

        return functor_by(
            g, cid.total,
            lambda o: (o, modif(o)),
            lambda m: (m, modif(g.src[m]), ("id", modif(g.tgt[m]))))

    # -- canonical elements for declared constants -------------------------

    def _default(self, ctx: Context, ty: TypeExpr) -> GroupoidFunctor:
        an = self._norm(ctx, ty)
        g = self.base(ctx)
        if isinstance(an, Unit):
            return self._star(g)
        if isinstance(an, TypeConst):
            fam = constant_family(g, self.env.fiber)
            c = comprehension(fam)
            bp = self.env.basepoint
            bid = self.env.fiber.ids[bp]
            return functor_by(g, c.total,
                              lambda o: (o, bp), lambda m: (m, bp, bid))
        if isinstance(an, Sigma):
            fa = self.type_(ctx, an.domain)
            fb = self.type_(ctx.extend(an.domain), an.family)
            da = self._default(ctx, an.domain)
            db = self._default(ctx.extend(an.domain), an.family)

            def parts_obj(o):
                ga = da.obj(o)
                return (ga[1], db.obj(ga)[1])

            def parts_mor(m):
                ma = da.mor(m)
                mb = db.mor(ma)
                return (ma[1], ma[2], mb[1], mb[2])

            return self._sigma_section(g, fa, fb, parts_obj, parts_mor)
        if isinstance(an, Pi):
            fa = self.type_(ctx, an.domain)
            fb = self.type_(ctx.extend(an.domain), an.family)
            db = self._default(ctx.extend(an.domain), an.family)
            return self._lam_section(g, fa, fb, db)
        if isinstance(an, Id):
            fa = self.type_(ctx, an.underlying)
            sl = self.term(ctx, an.left, an.underlying)
            sr = self.term(ctx, an.right, an.underlying)
            fid = self.type_(ctx, an)
            if sl == sr:
                return self._refl_like(g, fa, sl, fid)
            cid = comprehension(fid)
            elems = {}
            for o in g.objects:
                obs = fid.fiber(o).objects
                if len(obs) != 1:
                    raise InterpretError(
                        "no canonical element: identity fiber is not a "
                        "singleton")
                elems[o] = obs[0]
            return functor_by(
                g, cid.total,
                lambda o: (o, elems[o]),
                lambda m: (m, elems[g.src[m]], ("id", elems[g.tgt[m]])))
        raise InterpretError(f"no canonical element for {an!r}")


def _check_components(j: Judgement, sig: Signature,
                      state: ConversionState) -> None:
    """Well-formedness of the judgement's parts, without requiring the
    asserted equality itself to hold (so refutations can be evaluated)."""
    ctx = j.context
    check_context(ctx, sig, state)
    if j.form == "term-eq":
        t, u, a = j.payload
        check_type(ctx, a, sig, state)
        check_term(ctx, t, a, sig, state)
        check_term(ctx, u, a, sig, state)
    elif j.form == "type-eq":
        a, b = j.payload
        check_type(ctx, a, sig, state)
        check_type(ctx, b, sig, state)
    elif j.form == "ctxt-eq":
        (other,) = j.payload
        check_context(other, sig, state)
    else:
        check_judgement(j, sig, state)


def interpret(j: Judgement, env: Environment,
              sig: Signature = Signature(),
              state: ConversionState = EMPTY_STATE,
              check: bool = True):
    """Interpret a judgement in the finite-groupoid model.

    Returns a groupoid for context judgements, a family for type
    judgements, a section for term judgements, a tuple of sections for
    dependent elements, and a boolean verdict for the equality forms.
    """
    it = Interpreter(env, sig, state)
    ctx = j.context
    if check:
        _check_components(j, sig, state)
    if j.form == "ctxt":
        return it.base(ctx)
    if j.form == "ctxt-eq":
        (other,) = j.payload
        return it.context(ctx) == it.context(other)
    if j.form == "type":
        return it.type_(ctx, j.payload[0])
    if j.form == "type-eq":
        a, b = j.payload
        return it.type_(ctx, a) == it.type_(ctx, b)
    if j.form == "term":
        t, a = j.payload
        return it.term(ctx, t, a)
    if j.form == "term-eq":
        t, u, a = j.payload
        return it.term(ctx, t, a) == it.term(ctx, u, a)
    if j.form == "dependent-element":
        terms, tele = j.payload
        out = []
        for i, (tm, ty) in enumerate(zip(terms, tele.entries)):
            expected = apply_subst(
                ty,
                Substitution(tuple(reversed(terms[:i]))
                             + tuple(Var(k) for k in range(len(ctx)))))
            out.append(it.term(ctx, tm, expected))
        return tuple(out)
    raise InterpretError(f"unknown judgement form {j.form!r}")
