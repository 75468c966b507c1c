"""Abstract syntax: terms, type expressions, contexts, substitutions.

Binding is by de Bruijn indices, so alpha-equivalent terms are structurally
identical and plain dataclass equality decides alpha-equivalence.  Index 0 is
the innermost binder.  Substitution is a primitive simultaneous operation; a
``Substitution`` is a context morphism with one term per entry of the target
context, ``terms[k]`` being the image of ``Var(k)``.

Eliminator motives are stored explicitly so that type inference is
syntax-directed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union


class ScopeError(Exception):
    """A variable index escapes the scope it is used in."""


# ---------------------------------------------------------------------------
# Type expressions


@dataclass(frozen=True)
class Unit:
    """The one-element type."""

    def __repr__(self) -> str:
        return "Unit"


@dataclass(frozen=True)
class Sigma:
    """Dependent pair type; ``family`` is scoped under one extra binder."""

    domain: "TypeExpr"
    family: "TypeExpr"


@dataclass(frozen=True)
class Pi:
    """Dependent function type; ``family`` is scoped under one extra binder."""

    domain: "TypeExpr"
    family: "TypeExpr"


@dataclass(frozen=True)
class Id:
    """Identity type between two terms of the underlying type."""

    underlying: "TypeExpr"
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class TypeConst:
    """Applied type constant declared in the ambient signature."""

    name: str
    args: tuple["Term", ...] = ()


TypeExpr = Union[Unit, Sigma, Pi, Id, TypeConst]


# ---------------------------------------------------------------------------
# Terms


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Star:
    """The canonical inhabitant of ``Unit``."""

    def __repr__(self) -> str:
        return "Star"


@dataclass(frozen=True)
class Pair:
    fst: "Term"
    snd: "Term"


@dataclass(frozen=True)
class SigElim:
    """Pair eliminator.

    ``motive`` is scoped under one binder (the scrutinee), ``branch`` under
    two (the components).
    """

    motive: "TypeExpr"
    branch: "Term"
    scrutinee: "Term"


@dataclass(frozen=True)
class UnitElim:
    """Unit eliminator; ``motive`` under one binder, ``branch`` closed."""

    motive: "TypeExpr"
    branch: "Term"
    scrutinee: "Term"


@dataclass(frozen=True)
class Refl:
    arg: "Term"


@dataclass(frozen=True)
class JElim:
    """Identity eliminator.

    ``motive`` is scoped under three binders (endpoint, endpoint, proof;
    the proof is innermost), ``branch`` under one (the diagonal point).
    """

    motive: "TypeExpr"
    branch: "Term"
    left: "Term"
    right: "Term"
    proof: "Term"


@dataclass(frozen=True)
class Lam:
    """Function abstraction; ``body`` under one binder."""

    body: "Term"


@dataclass(frozen=True)
class App:
    fun: "Term"
    arg: "Term"


@dataclass(frozen=True)
class Ext:
    """Pointwise-equality introduction for functions.

    ``pointwise`` is scoped under one binder and gives, for each argument,
    an identity proof between the applications of ``left`` and ``right``.
    """

    left: "Term"
    right: "Term"
    pointwise: "Term"


@dataclass(frozen=True)
class TermConst:
    """Applied term constant declared in the ambient signature."""

    name: str
    args: tuple["Term", ...] = ()


@dataclass(frozen=True)
class ConvHint:
    """Wrapper licensing one witness-driven conversion at an identity type.

    Transparent to typing of ``body``; the kernel may identify the wrapped
    term with another term of the same identity type when ``witness`` checks
    as an identity proof between them.
    """

    body: "Term"
    witness: "Term"


Term = Union[
    Var, Star, Pair, SigElim, UnitElim, Refl, JElim, Lam, App, Ext,
    TermConst, ConvHint,
]

Node = Union[Term, TypeExpr]


# ---------------------------------------------------------------------------
# Contexts, telescopes, substitutions


@dataclass(frozen=True)
class Context:
    """Ordered list of types; entry k may mention variables 0..k-1.

    Entries are outermost first: in a context of length n, ``Var(0)`` refers
    to ``entries[n-1]``.
    """

    entries: tuple[TypeExpr, ...] = ()

    def __len__(self) -> int:
        return len(self.entries)

    def extend(self, ty: TypeExpr) -> "Context":
        return Context(self.entries + (ty,))

    def var_type(self, index: int) -> TypeExpr:
        """Type of ``Var(index)``, weakened into the full context."""
        n = len(self.entries)
        if not 0 <= index < n:
            raise ScopeError(f"variable index {index} out of range in context of length {n}")
        return weaken(self.entries[n - 1 - index], 0, index + 1)


@dataclass(frozen=True)
class Telescope:
    """A context scoped over an ambient context (a dependent context)."""

    entries: tuple[TypeExpr, ...] = ()

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class Substitution:
    """Context morphism: one term per target-context entry.

    ``terms[k]`` replaces ``Var(k)``, so ``terms[0]`` corresponds to the
    innermost (last) entry of the target context.  All terms are scoped over
    the source context.
    """

    terms: tuple[Term, ...] = ()

    def __len__(self) -> int:
        return len(self.terms)


def identity_subst(n: int) -> Substitution:
    return Substitution(tuple(Var(i) for i in range(n)))


# ---------------------------------------------------------------------------
# Structural recursion helpers

_TERM_BINDERS: dict[type, tuple[tuple[str, int], ...]] = {
    Var: (),
    Star: (),
    Pair: (("fst", 0), ("snd", 0)),
    SigElim: (("motive", 1), ("branch", 2), ("scrutinee", 0)),
    UnitElim: (("motive", 1), ("branch", 0), ("scrutinee", 0)),
    Refl: (("arg", 0),),
    JElim: (("motive", 3), ("branch", 1), ("left", 0), ("right", 0), ("proof", 0)),
    Lam: (("body", 1),),
    App: (("fun", 0), ("arg", 0)),
    Ext: (("left", 0), ("right", 0), ("pointwise", 1)),
    ConvHint: (("body", 0), ("witness", 0)),
}

_TYPE_BINDERS: dict[type, tuple[tuple[str, int], ...]] = {
    Unit: (),
    Sigma: (("domain", 0), ("family", 1)),
    Pi: (("domain", 0), ("family", 1)),
    Id: (("underlying", 0), ("left", 0), ("right", 0)),
}


def _map_node(node: Node, depth: int, on_var) -> Node:
    """Rebuild ``node`` applying ``on_var(index, depth)`` to each variable."""
    cls = type(node)
    if cls is Var:
        return on_var(node.index, depth)
    if cls in (TypeConst, TermConst):
        return cls(node.name, tuple(_map_node(a, depth, on_var) for a in node.args))
    fields = _TERM_BINDERS.get(cls)
    if fields is None:
        fields = _TYPE_BINDERS[cls]
    if not fields:
        return node
    return cls(*(
        _map_node(getattr(node, name), depth + extra, on_var)
        for name, extra in fields
    ))


def weaken(node: Node, at: int, by: int) -> Node:
    """Shift free indices >= ``at`` up by ``by``."""
    if by == 0:
        return node
    if at < 0 or by < 0:
        raise ScopeError("weaken requires nonnegative position and count")

    def on_var(k: int, depth: int) -> Term:
        return Var(k + by) if k >= at + depth else Var(k)

    return _map_node(node, 0, on_var)


def apply_subst(node: Node, s: Substitution) -> Node:
    """Capture-avoiding simultaneous substitution.

    Every free index of ``node`` must be covered by ``s``; the result is
    scoped over the source context of ``s``.
    """

    def on_var(k: int, depth: int) -> Term:
        if k < depth:
            return Var(k)
        j = k - depth
        if j >= len(s.terms):
            raise ScopeError(f"variable index {j} not covered by substitution of length {len(s.terms)}")
        return weaken(s.terms[j], 0, depth)

    return _map_node(node, 0, on_var)


def inst(node: Node, args: tuple[Term, ...]) -> Node:
    """Instantiate the innermost ``len(args)`` binders and close the gap.

    ``args[0]`` replaces ``Var(0)``; remaining free indices shift down.  The
    replacement terms are scoped over the outer context (without the bound
    variables).
    """
    m = len(args)

    def on_var(k: int, depth: int) -> Term:
        if k < depth:
            return Var(k)
        j = k - depth
        if j < m:
            return weaken(args[j], 0, depth)
        return Var(k - m)

    return _map_node(node, 0, on_var)


def subst1(node: Node, arg: Term) -> Node:
    """Instantiate the single innermost binder."""
    return inst(node, (arg,))


def compose(s: Substitution, u: Substitution) -> Substitution:
    """Composite morphism: first ``s``, then ``u`` on its output terms.

    Satisfies ``apply_subst(apply_subst(t, s), u) == apply_subst(t, compose(s, u))``.
    """
    return Substitution(tuple(apply_subst(t, u) for t in s.terms))


def scope_check(node: Node, depth: int) -> bool:
    """True iff every variable index is below ``depth`` plus local binders."""
    ok = True

    def on_var(k: int, d: int) -> Term:
        nonlocal ok
        if k >= depth + d:
            ok = False
        return Var(k)

    _map_node(node, 0, on_var)
    return ok


def telescope_concat(ctx: Context, tele: Telescope) -> Context:
    """Append a telescope scoped over ``ctx``, re-basing its entries."""
    n = len(ctx.entries)
    for i, ty in enumerate(tele.entries):
        if not scope_check(ty, n + i):
            raise ScopeError(f"telescope entry {i} escapes its scope")
    return Context(ctx.entries + tele.entries)


def context_split(ctx: Context, prefix_len: int) -> tuple[Context, Telescope]:
    """Inverse of ``telescope_concat`` at a given split point."""
    if not 0 <= prefix_len <= len(ctx.entries):
        raise ScopeError("split point outside context")
    return (Context(ctx.entries[:prefix_len]), Telescope(ctx.entries[prefix_len:]))


# ---------------------------------------------------------------------------
# Signatures


@dataclass(frozen=True)
class TypeDecl:
    """Axiom: in context ``params``, ``name(params)`` is a type."""

    name: str
    params: Context = field(default_factory=Context)


@dataclass(frozen=True)
class TermDecl:
    """Axiom: in context ``params``, ``name(params)`` has type ``result``."""

    name: str
    params: Context = field(default_factory=Context)
    result: TypeExpr = Unit()


@dataclass(frozen=True)
class TypeEquation:
    """Axiom: in context ``params``, ``lhs`` and ``rhs`` are equal types."""

    params: Context
    lhs: TypeExpr
    rhs: TypeExpr


@dataclass(frozen=True)
class TermEquation:
    """Axiom: in context ``params``, ``lhs`` equals ``rhs`` at type ``at``.

    The kernel uses term equations as left-to-right rewrite rules.
    """

    params: Context
    lhs: Term
    rhs: Term
    at: TypeExpr


@dataclass(frozen=True)
class Signature:
    """Axiomatic extension: declared constants and equations."""

    type_decls: tuple[TypeDecl, ...] = ()
    term_decls: tuple[TermDecl, ...] = ()
    type_equations: tuple[TypeEquation, ...] = ()
    term_equations: tuple[TermEquation, ...] = ()

    def type_decl(self, name: str) -> TypeDecl | None:
        for d in self.type_decls:
            if d.name == name:
                return d
        return None

    def term_decl(self, name: str) -> TermDecl | None:
        for d in self.term_decls:
            if d.name == name:
                return d
        return None

    def declared_names(self) -> set[str]:
        return {d.name for d in self.type_decls} | {d.name for d in self.term_decls}

    def with_type_decl(self, d: TypeDecl) -> "Signature":
        self._require_fresh(d.name)
        return Signature(self.type_decls + (d,), self.term_decls,
                         self.type_equations, self.term_equations)

    def with_term_decl(self, d: TermDecl) -> "Signature":
        self._require_fresh(d.name)
        return Signature(self.type_decls, self.term_decls + (d,),
                         self.type_equations, self.term_equations)

    def with_type_equation(self, e: TypeEquation) -> "Signature":
        return Signature(self.type_decls, self.term_decls,
                         self.type_equations + (e,), self.term_equations)

    def with_term_equation(self, e: TermEquation) -> "Signature":
        return Signature(self.type_decls, self.term_decls,
                         self.type_equations, self.term_equations + (e,))

    def _require_fresh(self, name: str) -> None:
        if name in self.declared_names():
            raise ValueError(f"signature name {name!r} is not fresh")


EMPTY_SIGNATURE = Signature()
