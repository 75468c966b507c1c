"""Type checking, normalization, and conversion for the two-dimensional kernel.

The kernel implements the four judgement forms (type, term, type equality,
term equality) plus context and dependent-element forms, over an ambient
axiomatic signature.

Definitional equality is decided by normalization with oriented rewrites
(pair, unit, identity and function computation rules, the two pointwise
function-equality rules, and signature term equations read left to right),
extended by two sources of equality at identity types:

* any two inhabitants of an iterated identity type (an identity type whose
  underlying type is itself an identity type) are identified outright, and
* equations explicitly admitted with a checked identity witness
  (``admit_equation`` or a ``ConvHint`` wrapper) are identified.

The second mechanism is witness-driven only: the kernel never searches for
proofs.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .syntax import (
    App, ConvHint, Context, Ext, Id, JElim, Lam, Pair, Pi, Refl, ScopeError,
    SigElim, Sigma, Signature, Star, Substitution, Telescope, TermConst,
    TermDecl, TermEquation, TypeConst, TypeDecl, TypeEquation, Unit, UnitElim,
    Var, apply_subst, inst, scope_check, subst1, weaken,
)
from .syntax import Term, TypeExpr, Node


class KernelError(Exception):
    """A judgement failed to check; the message carries the rule trail."""


class FuelError(KernelError):
    """Normalization exceeded its rewrite-step budget."""


def default_fuel() -> int:
    """Rewrite-step budget; overridable through the ML2_FUEL variable."""
    try:
        return int(os.environ.get("ML2_FUEL", ""))
    except ValueError:
        return 1_000_000


# ---------------------------------------------------------------------------
# Judgements


@dataclass(frozen=True)
class Judgement:
    """One of the judgement forms, with its context and payload.

    Payload shapes by form:
      ``"ctxt"`` — ();            ``"ctxt-eq"`` — (Context,)
      ``"type"`` — (TypeExpr,);   ``"type-eq"`` — (TypeExpr, TypeExpr)
      ``"term"`` — (Term, TypeExpr)
      ``"term-eq"`` — (Term, Term, TypeExpr)
      ``"dependent-element"`` — (tuple-of-Term, Telescope)
    """

    form: str
    context: Context
    payload: tuple

    FORMS = ("ctxt", "ctxt-eq", "type", "type-eq", "term", "term-eq",
             "dependent-element")

    def __post_init__(self) -> None:
        if self.form not in self.FORMS:
            raise ValueError(f"unknown judgement form {self.form!r}")


@dataclass(frozen=True)
class ConversionState:
    """Immutable conversion context: admitted equations and a fuel budget.

    ``registered`` holds triples ``(type, lhs, rhs)`` in normal form; every
    entry was admitted through a checked identity witness.
    """

    registered: frozenset = frozenset()
    fuel: int = field(default_factory=default_fuel)


EMPTY_STATE = ConversionState()


# ---------------------------------------------------------------------------
# Fuel bookkeeping


class _Fuel:
    __slots__ = ("remaining",)

    def __init__(self, amount: int) -> None:
        self.remaining = amount

    def spend(self) -> None:
        if self.remaining <= 0:
            raise FuelError(
                "rewrite budget exhausted; signature equations may be "
                "non-terminating (raise ML2_FUEL to retry)")
        self.remaining -= 1


# ---------------------------------------------------------------------------
# Strengthening and first-order matching (signature equations as rewrites)


class _NoStrengthen(Exception):
    pass


def strengthen(node: Node, by: int, at: int = 0) -> Node:
    """Shift free indices >= ``at + by`` down by ``by``.

    Fails if any free index lies in ``[at, at + by)``, i.e. the node really
    mentions one of the binders being removed.
    """
    from .syntax import _map_node

    def on_var(k: int, depth: int) -> Term:
        if k < depth + at:
            return Var(k)
        if k < depth + at + by:
            raise _NoStrengthen()
        return Var(k - by)

    return _map_node(node, 0, on_var)


def _match(pattern: Node, target: Node, depth: int, n_params: int,
           bindings: dict[int, Term]) -> bool:
    """First-order matching; pattern variables are the parameter indices.

    A pattern ``Var(k)`` with ``k - depth`` in range of the parameter context
    is a match variable; bound subterms must not mention local binders.
    """
    if isinstance(pattern, Var):
        if pattern.index >= depth:
            j = pattern.index - depth
            if j < n_params:
                try:
                    value = strengthen(target, depth)
                except _NoStrengthen:
                    return False
                if j in bindings:
                    return bindings[j] == value
                bindings[j] = value
                return True
            return pattern == target
        return pattern == target
    if type(pattern) is not type(target):
        return False
    if isinstance(pattern, (TypeConst, TermConst)):
        if pattern.name != target.name or len(pattern.args) != len(target.args):
            return False
        return all(_match(p, t, depth, n_params, bindings)
                   for p, t in zip(pattern.args, target.args))
    from .syntax import _TERM_BINDERS, _TYPE_BINDERS
    fields = _TERM_BINDERS.get(type(pattern))
    if fields is None:
        fields = _TYPE_BINDERS.get(type(pattern))
    if fields is None:
        return False
    return all(
        _match(getattr(pattern, name), getattr(target, name),
               depth + extra, n_params, bindings)
        for name, extra in fields)


def _try_equation_rewrite(t: Node, eqs, get_lhs, get_rhs, get_params):
    """Try each signature equation left to right at the head of ``t``."""
    for eq in eqs:
        n = len(get_params(eq).entries)
        bindings: dict[int, Term] = {}
        if _match(get_lhs(eq), t, 0, n, bindings) and len(bindings) == n:
            return apply_subst(get_rhs(eq),
                               Substitution(tuple(bindings[k] for k in range(n))))
    return None


# ---------------------------------------------------------------------------
# Normalization


def strip_hints(node: Node) -> Node:
    """Erase every ConvHint wrapper (transparent for typing and equality)."""
    from .syntax import _map_node
    if isinstance(node, ConvHint):
        return strip_hints(node.body)
    if isinstance(node, (TypeConst, TermConst)):
        return type(node)(node.name, tuple(strip_hints(a) for a in node.args))
    from .syntax import _TERM_BINDERS, _TYPE_BINDERS
    fields = _TERM_BINDERS.get(type(node))
    if fields is None:
        fields = _TYPE_BINDERS.get(type(node))
    if not fields:
        return node
    return type(node)(*(strip_hints(getattr(node, name)) for name, _ in fields))


def _head_step(t: Node, sig: Signature):
    """One oriented rewrite at the head, or None.  Children assumed normal."""
    if isinstance(t, SigElim) and isinstance(t.scrutinee, Pair):
        return inst(t.branch, (t.scrutinee.snd, t.scrutinee.fst))
    if isinstance(t, UnitElim) and isinstance(t.scrutinee, Star):
        return t.branch
    if isinstance(t, JElim) and isinstance(t.proof, Refl):
        return subst1(t.branch, t.proof.arg)
    if isinstance(t, App) and isinstance(t.fun, Lam):
        return subst1(t.fun.body, t.arg)
    if isinstance(t, Ext) and t.left == t.right:
        # pointwise reflexivity collapses to reflexivity of the function;
        # for a literal abstraction the application is already beta-reduced
        # in the (normal) pointwise component
        cand = Refl(App(weaken(t.left, 0, 1), Var(0)))
        if isinstance(t.left, Lam):
            cand = Refl(t.left.body)
        if t.pointwise == cand:
            return Refl(t.left)
    if isinstance(t, JElim) and isinstance(t.proof, Ext):
        # an argument-instantiation eliminator applied to a pointwise
        # equality projects out the pointwise component
        br = t.branch
        if (isinstance(br, Refl) and isinstance(br.arg, App)
                and br.arg.fun == Var(0)):
            try:
                a = strengthen(br.arg.arg, 1)
            except _NoStrengthen:
                a = None
            if a is not None:
                return subst1(t.proof.pointwise, a)
    if isinstance(t, (TermConst, App, SigElim, UnitElim, JElim, Ext, Pair,
                      Refl, Lam, Star, Var)):
        return _try_equation_rewrite(
            t, sig.term_equations,
            lambda e: e.lhs, lambda e: e.rhs, lambda e: e.params)
    return None


def _type_head_step(a: TypeExpr, sig: Signature):
    if isinstance(a, (TypeConst, Unit, Sigma, Pi, Id)):
        return _try_equation_rewrite(
            a, sig.type_equations,
            lambda e: e.lhs, lambda e: e.rhs, lambda e: e.params)
    return None


def _normalize(node: Node, sig: Signature, fuel: _Fuel) -> Node:
    """Leftmost-innermost normalization with a step budget."""
    from .syntax import _TERM_BINDERS, _TYPE_BINDERS
    while True:
        cls = type(node)
        if cls is ConvHint:
            node = node.body
            continue
        if cls in (TypeConst, TermConst):
            node = cls(node.name,
                       tuple(_normalize(a, sig, fuel) for a in node.args))
        else:
            fields = _TERM_BINDERS.get(cls)
            if fields is None:
                fields = _TYPE_BINDERS.get(cls)
            if fields:
                node = cls(*(
                    _normalize(getattr(node, name), sig, fuel)
                    for name, _ in fields))
        stepped = _head_step(node, sig) if not isinstance(
            node, (Unit, Sigma, Pi, Id, TypeConst)) else _type_head_step(node, sig)
        if stepped is None:
            return node
        fuel.spend()
        node = stepped


def normalize(ctx: Context, t: Node, sig: Signature = Signature(),
              state: ConversionState = EMPTY_STATE) -> Node:
    """Exhaustively apply the oriented rewrites; deterministic, idempotent."""
    return _normalize(t, sig, _Fuel(state.fuel))


# ---------------------------------------------------------------------------
# Conversion


def _registered_equal(t: Term, u: Term, a: TypeExpr,
                      state: ConversionState) -> bool:
    """Reachability in the admitted-equation graph at the given type."""
    if not state.registered:
        return False
    adjacency: dict[Term, set[Term]] = {}
    for (ty, lhs, rhs) in state.registered:
        if ty == a:
            adjacency.setdefault(lhs, set()).add(rhs)
            adjacency.setdefault(rhs, set()).add(lhs)
    if t not in adjacency:
        return False
    seen = {t}
    stack = [t]
    while stack:
        cur = stack.pop()
        if cur == u:
            return True
        for nxt in adjacency.get(cur, ()):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return u in seen


def convertible(ctx: Context, t: Term, u: Term, a: TypeExpr,
                sig: Signature = Signature(),
                state: ConversionState = EMPTY_STATE) -> bool:
    """Definitional equality of two terms at a type.

    Holds when (i) normal forms coincide, (ii) the type is an iterated
    identity type (all inhabitants identified), (iii) the pair was admitted
    through ``admit_equation``, or (iv) one side carries a ConvHint whose
    witness checks as an identity proof against the other side.
    """
    fuel = _Fuel(state.fuel)
    a_norm = _normalize(a, sig, fuel)
    if isinstance(a_norm, Id) and isinstance(a_norm.underlying, Id):
        return True
    for this, other in ((t, u), (u, t)):
        if isinstance(this, ConvHint):
            if not isinstance(a_norm, Id):
                raise KernelError(
                    "conversion hint used at a non-identity type")
            body = strip_hints(this.body)
            witness_ty = Id(a_norm, body, strip_hints(other))
            witness_ty_rev = Id(a_norm, strip_hints(other), body)
            for wty in (witness_ty, witness_ty_rev):
                try:
                    check_term(ctx, this.witness, wty, sig, state)
                    return True
                except KernelError:
                    continue
            raise KernelError(
                "conversion hint witness does not check as an identity "
                "proof between the two sides")
    t_norm = _normalize(t, sig, fuel)
    u_norm = _normalize(u, sig, fuel)
    if t_norm == u_norm:
        return True
    return _registered_equal(t_norm, u_norm, a_norm, state)


def types_convertible(ctx: Context, a: TypeExpr, b: TypeExpr,
                      sig: Signature = Signature(),
                      state: ConversionState = EMPTY_STATE) -> bool:
    """Definitional equality of types (structural after normalization,
    with term conversion used at identity-type endpoints)."""
    fuel = _Fuel(state.fuel)
    return _types_conv(ctx, _normalize(a, sig, fuel), _normalize(b, sig, fuel),
                       sig, state)


def _types_conv(ctx: Context, a: TypeExpr, b: TypeExpr, sig: Signature,
                state: ConversionState) -> bool:
    if a == b:
        return True
    if type(a) is not type(b):
        return False
    if isinstance(a, (Sigma, Pi)):
        if not _types_conv(ctx, a.domain, b.domain, sig, state):
            return False
        return _types_conv(ctx.extend(a.domain), a.family, b.family, sig, state)
    if isinstance(a, Id):
        if not _types_conv(ctx, a.underlying, b.underlying, sig, state):
            return False
        return (convertible(ctx, a.left, b.left, a.underlying, sig, state)
                and convertible(ctx, a.right, b.right, a.underlying, sig, state))
    if isinstance(a, TypeConst):
        if a.name != b.name or len(a.args) != len(b.args):
            return False
        return all(ta == tb or convertible(ctx, ta, tb, _arg_type(a, i, sig), sig, state)
                   for i, (ta, tb) in enumerate(zip(a.args, b.args)))
    return False


def _arg_type(c, i: int, sig: Signature) -> TypeExpr:
    decl = sig.type_decl(c.name) if isinstance(c, TypeConst) else sig.term_decl(c.name)
    if decl is None:
        raise KernelError(f"undeclared constant {c.name!r}")
    return apply_subst(decl.params.entries[i],
                       Substitution(tuple(reversed(c.args[:i]))))


# ---------------------------------------------------------------------------
# Typing


def check_context(ctx: Context, sig: Signature = Signature(),
                  state: ConversionState = EMPTY_STATE) -> None:
    prefix = Context()
    for ty in ctx.entries:
        check_type(prefix, ty, sig, state)
        prefix = prefix.extend(ty)


def check_type(ctx: Context, a: TypeExpr, sig: Signature = Signature(),
               state: ConversionState = EMPTY_STATE) -> None:
    """Accept iff ``a`` is derivably a type in ``ctx``."""
    if isinstance(a, Unit):
        return
    if isinstance(a, (Sigma, Pi)):
        check_type(ctx, a.domain, sig, state)
        check_type(ctx.extend(a.domain), a.family, sig, state)
        return
    if isinstance(a, Id):
        check_type(ctx, a.underlying, sig, state)
        check_term(ctx, a.left, a.underlying, sig, state)
        check_term(ctx, a.right, a.underlying, sig, state)
        return
    if isinstance(a, TypeConst):
        decl = sig.type_decl(a.name)
        if decl is None:
            raise KernelError(f"type formation: undeclared type constant {a.name!r}")
        _check_const_args(ctx, a, decl.params, sig, state)
        return
    raise KernelError(f"type formation: unrecognized type expression {a!r}")


def _check_const_args(ctx: Context, c, params: Context, sig: Signature,
                      state: ConversionState) -> None:
    if len(c.args) != len(params.entries):
        raise KernelError(
            f"constant {c.name!r} expects {len(params.entries)} arguments, "
            f"got {len(c.args)}")
    for i, arg in enumerate(c.args):
        expected = apply_subst(params.entries[i],
                               Substitution(tuple(reversed(c.args[:i]))))
        check_term(ctx, arg, expected, sig, state)


def infer_type(ctx: Context, t: Term, sig: Signature = Signature(),
               state: ConversionState = EMPTY_STATE) -> TypeExpr:
    """Compute the annotation-determined type of ``t``."""
    if isinstance(t, Var):
        try:
            return ctx.var_type(t.index)
        except ScopeError as e:
            raise KernelError(str(e)) from e
    if isinstance(t, Star):
        return Unit()
    if isinstance(t, Refl):
        a = infer_type(ctx, t.arg, sig, state)
        return Id(a, t.arg, t.arg)
    if isinstance(t, SigElim):
        scr_ty = normalize(ctx, infer_type(ctx, t.scrutinee, sig, state), sig, state)
        if not isinstance(scr_ty, Sigma):
            raise KernelError("pair elimination: scrutinee is not of pair type")
        dom, fam = scr_ty.domain, scr_ty.family
        check_type(ctx.extend(scr_ty), t.motive, sig, state)
        n = len(ctx)
        # motive instantiated at the generic pair, in the two-binder scope
        branch_ty = apply_subst(
            t.motive,
            Substitution((Pair(Var(1), Var(0)),)
                         + tuple(Var(i + 2) for i in range(n))))
        branch_ctx = ctx.extend(dom).extend(fam)
        check_term(branch_ctx, t.branch, branch_ty, sig, state)
        return subst1(t.motive, t.scrutinee)
    if isinstance(t, UnitElim):
        check_term(ctx, t.scrutinee, Unit(), sig, state)
        check_type(ctx.extend(Unit()), t.motive, sig, state)
        check_term(ctx, t.branch, subst1(t.motive, Star()), sig, state)
        return subst1(t.motive, t.scrutinee)
    if isinstance(t, JElim):
        a = _infer_identity_data(ctx, t, sig, state)
        n = len(ctx)
        a1 = weaken(a, 0, 1)
        a2 = weaken(a, 0, 2)
        motive_ctx = (ctx.extend(a).extend(a1)
                      .extend(Id(a2, Var(1), Var(0))))
        check_type(motive_ctx, t.motive, sig, state)
        check_term(ctx, t.left, a, sig, state)
        check_term(ctx, t.right, a, sig, state)
        check_term(ctx, t.proof, Id(a, t.left, t.right), sig, state)
        branch_ty = apply_subst(
            t.motive,
            Substitution((Refl(Var(0)), Var(0), Var(0))
                         + tuple(Var(i + 1) for i in range(n))))
        check_term(ctx.extend(a), t.branch, branch_ty, sig, state)
        return inst(t.motive, (t.proof, t.right, t.left))
    if isinstance(t, App):
        fun_ty = normalize(ctx, infer_type(ctx, t.fun, sig, state), sig, state)
        if not isinstance(fun_ty, Pi):
            raise KernelError("application: head is not of function type")
        check_term(ctx, t.arg, fun_ty.domain, sig, state)
        return subst1(fun_ty.family, t.arg)
    if isinstance(t, Ext):
        pi_ty = _infer_function_data(ctx, t, sig, state)
        check_term(ctx, t.left, pi_ty, sig, state)
        check_term(ctx, t.right, pi_ty, sig, state)
        dom, fam = pi_ty.domain, pi_ty.family
        pw_ty = Id(fam,
                   App(weaken(t.left, 0, 1), Var(0)),
                   App(weaken(t.right, 0, 1), Var(0)))
        check_term(ctx.extend(dom), t.pointwise, pw_ty, sig, state)
        return Id(pi_ty, t.left, t.right)
    if isinstance(t, TermConst):
        decl = sig.term_decl(t.name)
        if decl is None:
            raise KernelError(f"undeclared term constant {t.name!r}")
        _check_const_args(ctx, t, decl.params, sig, state)
        return apply_subst(decl.result, Substitution(tuple(reversed(t.args))))
    if isinstance(t, ConvHint):
        return infer_type(ctx, t.body, sig, state)
    if isinstance(t, Lam):
        raise KernelError("cannot infer the type of a bare abstraction; "
                          "check it against a function type")
    if isinstance(t, Pair):
        raise KernelError("cannot infer the type of a bare pair; "
                          "check it against a pair type")
    raise KernelError(f"unrecognized term {t!r}")


def _infer_identity_data(ctx: Context, t: JElim, sig: Signature,
                         state: ConversionState) -> TypeExpr:
    """Underlying type of a J-eliminator, from whichever operand infers."""
    errors = []
    for cand, extract in ((t.left, lambda ty: ty),
                          (t.right, lambda ty: ty)):
        try:
            return extract(infer_type(ctx, cand, sig, state))
        except KernelError as e:
            errors.append(e)
    try:
        proof_ty = normalize(ctx, infer_type(ctx, t.proof, sig, state), sig, state)
    except KernelError as e:
        raise KernelError(
            "identity elimination: cannot determine the underlying type "
            f"({'; '.join(str(x) for x in errors + [e])})") from e
    if not isinstance(proof_ty, Id):
        raise KernelError("identity elimination: proof is not an identity proof")
    return proof_ty.underlying


def _infer_function_data(ctx: Context, t: Ext, sig: Signature,
                         state: ConversionState) -> Pi:
    errors = []
    for cand in (t.left, t.right):
        try:
            ty = normalize(ctx, infer_type(ctx, cand, sig, state), sig, state)
        except KernelError as e:
            errors.append(e)
            continue
        if isinstance(ty, Pi):
            return ty
        raise KernelError("pointwise equality: endpoints are not functions")
    raise KernelError(
        "pointwise equality: cannot determine the function type "
        f"({'; '.join(str(x) for x in errors)})")


def check_term(ctx: Context, t: Term, a: TypeExpr,
               sig: Signature = Signature(),
               state: ConversionState = EMPTY_STATE) -> None:
    """Accept iff ``t`` checks against ``a`` (inference plus conversion)."""
    a_norm = normalize(ctx, a, sig, state)
    if isinstance(t, Lam):
        if not isinstance(a_norm, Pi):
            raise KernelError("abstraction checked against a non-function type")
        check_term(ctx.extend(a_norm.domain), t.body, a_norm.family, sig, state)
        return
    if isinstance(t, Pair):
        if not isinstance(a_norm, Sigma):
            raise KernelError("pair checked against a non-pair type")
        check_term(ctx, t.fst, a_norm.domain, sig, state)
        check_term(ctx, t.snd, subst1(a_norm.family, t.fst), sig, state)
        return
    if isinstance(t, Refl):
        if isinstance(a_norm, Id):
            check_term(ctx, t.arg, a_norm.underlying, sig, state)
            if not (convertible(ctx, t.arg, a_norm.left, a_norm.underlying, sig, state)
                    and convertible(ctx, t.arg, a_norm.right, a_norm.underlying,
                                    sig, state)):
                raise KernelError(
                    "reflexivity checked against an identity type with "
                    "different endpoints")
            return
    if isinstance(t, Ext) and isinstance(a_norm, Id):
        under = normalize(ctx, a_norm.underlying, sig, state)
        if isinstance(under, Pi):
            for side, endpoint in ((t.left, a_norm.left), (t.right, a_norm.right)):
                check_term(ctx, side, under, sig, state)
                if not convertible(ctx, side, endpoint, under, sig, state):
                    raise KernelError(
                        "pointwise equality endpoints differ from the "
                        "identity type's endpoints")
            pw_ty = Id(under.family,
                       App(weaken(t.left, 0, 1), Var(0)),
                       App(weaken(t.right, 0, 1), Var(0)))
            check_term(ctx.extend(under.domain), t.pointwise, pw_ty, sig, state)
            return
    if isinstance(t, ConvHint):
        check_term(ctx, t.body, a, sig, state)
        return
    inferred = infer_type(ctx, t, sig, state)
    if not types_convertible(ctx, inferred, a, sig, state):
        raise KernelError(
            f"type mismatch: inferred {inferred!r} but expected {a!r}")


# ---------------------------------------------------------------------------
# Admitted equations


def admit_equation(ctx: Context, t: Term, u: Term, a: TypeExpr, witness: Term,
                   sig: Signature = Signature(),
                   state: ConversionState = EMPTY_STATE) -> ConversionState:
    """Register ``t = u : a`` after checking an identity witness.

    The witness must check against the identity type between the two
    sides; the equation is then treated as definitional by ``convertible``
    at that (normalized) ambient type.
    """
    fuel = _Fuel(state.fuel)
    a_norm = _normalize(a, sig, fuel)
    check_term(ctx, t, a, sig, state)
    check_term(ctx, u, a, sig, state)
    check_term(ctx, witness, Id(a_norm, strip_hints(t), strip_hints(u)),
               sig, state)
    t_norm = _normalize(t, sig, fuel)
    u_norm = _normalize(u, sig, fuel)
    return ConversionState(
        state.registered | {(a_norm, t_norm, u_norm)}, state.fuel)


# ---------------------------------------------------------------------------
# Signature validation and the judgement dispatcher


def validate_signature(sig: Signature) -> None:
    """Check declaration premisses over the preceding signature prefix."""
    prefix = Signature()
    seen: set[str] = set()
    for d in sig.type_decls + sig.term_decls:
        if d.name in seen:
            raise KernelError(f"signature name {d.name!r} is not fresh")
        seen.add(d.name)
    # declarations may reference earlier ones; rebuild in declaration order
    for d in sig.type_decls:
        check_context(d.params, prefix)
        prefix = prefix.with_type_decl(d)
    for d in sig.term_decls:
        check_context(d.params, prefix)
        check_type(d.params, d.result, prefix)
        prefix = prefix.with_term_decl(d)
    for e in sig.type_equations:
        check_context(e.params, prefix)
        check_type(e.params, e.lhs, prefix)
        check_type(e.params, e.rhs, prefix)
    for e in sig.term_equations:
        check_context(e.params, prefix)
        check_type(e.params, e.at, prefix)
        check_term(e.params, e.lhs, e.at, prefix)
        check_term(e.params, e.rhs, e.at, prefix)


def check_dependent_element(ctx: Context, terms: tuple[Term, ...],
                            tele: Telescope, sig: Signature = Signature(),
                            state: ConversionState = EMPTY_STATE) -> None:
    """Check a vector of terms against a telescope, entry by entry."""
    if len(terms) != len(tele.entries):
        raise KernelError(
            f"dependent element has {len(terms)} components but the "
            f"telescope has {len(tele.entries)}")
    for i, (tm, ty) in enumerate(zip(terms, tele.entries)):
        expected = apply_subst(
            ty,
            Substitution(tuple(reversed(terms[:i]))
                         + tuple(Var(k) for k in range(len(ctx)))))
        check_term(ctx, tm, expected, sig, state)


def check_judgement(j: Judgement, sig: Signature = Signature(),
                    state: ConversionState = EMPTY_STATE) -> None:
    """Dispatch over all judgement forms; raises KernelError on failure."""
    ctx = j.context
    if j.form == "ctxt":
        check_context(ctx, sig, state)
        return
    check_context(ctx, sig, state)
    if j.form == "ctxt-eq":
        (other,) = j.payload
        check_context(other, sig, state)
        if len(other) != len(ctx):
            raise KernelError("context equality: lengths differ")
        prefix = Context()
        for ta, tb in zip(ctx.entries, other.entries):
            if not types_convertible(prefix, ta, tb, sig, state):
                raise KernelError("context equality: entry mismatch")
            prefix = prefix.extend(ta)
        return
    if j.form == "type":
        (a,) = j.payload
        check_type(ctx, a, sig, state)
        return
    if j.form == "type-eq":
        a, b = j.payload
        check_type(ctx, a, sig, state)
        check_type(ctx, b, sig, state)
        if not types_convertible(ctx, a, b, sig, state):
            raise KernelError("type equality does not hold")
        return
    if j.form == "term":
        t, a = j.payload
        check_type(ctx, a, sig, state)
        check_term(ctx, t, a, sig, state)
        return
    if j.form == "term-eq":
        t, u, a = j.payload
        check_type(ctx, a, sig, state)
        check_term(ctx, t, a, sig, state)
        check_term(ctx, u, a, sig, state)
        if not convertible(ctx, t, u, a, sig, state):
            raise KernelError("term equality does not hold")
        return
    if j.form == "dependent-element":
        terms, tele = j.payload
        check_dependent_element(ctx, terms, tele, sig, state)
        return
    raise KernelError(f"unknown judgement form {j.form!r}")


def judgement_holds(j: Judgement, sig: Signature = Signature(),
                    state: ConversionState = EMPTY_STATE) -> bool:
    try:
        check_judgement(j, sig, state)
        return True
    except KernelError:
        return False
