"""The ``.ml2`` surface language: lexer, parser, printer, elaborator.

The grammar is keyword-led and layout-insensitive; every Unicode symbol
has an ASCII alias (see GRAMMAR.md at the repository root for the EBNF).
Parsing resolves names to de Bruijn indices on the fly, expands ``define``
macros by substitution, and records a source span on every declaration.
Printing is deterministic (binders get fresh names ``v0, v1, ...``), and
``parse(print_source(parse(s))) == parse(s)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    Unit, Sigma, Pi, Id, TypeConst, Var, Star, Pair, SigElim, UnitElim,
    Refl, JElim, Lam, App, Ext, TermConst, ConvHint, TypeExpr, Term,
    Context, Signature, TypeDecl, TermDecl, TypeEquation, TermEquation,
    inst,
)
from .derived import transport_term


class ParseError(Exception):
    """Lex/parse/scope error with a 1-based line and column."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# Lexer

_SYMBOL_ALIASES = {
    "⊢": "|-",      # turnstile
    "⋆": "*",       # star
    "λ": "fun",     # lambda
    "Σ": "Sigma",
    "Π": "Pi",
}

_PUNCT = (":=", "|-", "(", ")", ",", ".", ":", "=", "*", "^")

_KEYWORDS = frozenset((
    "type", "term", "equation", "type-equation", "define",
    "assert", "assert-equal", "assert-not-equal", "by",
    "fun", "refl", "J", "split", "case1", "ext", "pair", "hint",
    "transport", "Id", "Unit", "Sigma", "Pi",
))


@dataclass(frozen=True)
class Token:
    kind: str    # "punct", "keyword", "ident", "number", "eof"
    value: str
    line: int
    col: int


def _is_ident_start(ch: str) -> bool:
    return ch.isalpha() or ch == "_"


def _is_ident_char(ch: str) -> bool:
    return ch.isalnum() or ch in "_'-"


def lex(text: str) -> tuple[Token, ...]:
    tokens: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if text.startswith("--", i):
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch in _SYMBOL_ALIASES:
            alias = _SYMBOL_ALIASES[ch]
            kind = ("keyword" if alias in _KEYWORDS
                    else "punct")
            tokens.append(Token(kind, alias, line, col))
            i += 1
            col += 1
            continue
        matched = False
        for p in _PUNCT:
            if text.startswith(p, i):
                tokens.append(Token("punct", p, line, col))
                i += len(p)
                col += len(p)
                matched = True
                break
        if matched:
            continue
        if ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            tokens.append(Token("number", text[start:i], line, col))
            col += i - start
            continue
        if _is_ident_start(ch):
            start = i
            while i < n and _is_ident_char(text[i]):
                i += 1
            word = text[start:i]
            kind = "keyword" if word in _KEYWORDS else "ident"
            tokens.append(Token(kind, word, line, col))
            col += i - start
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("eof", "", line, col))
    return tuple(tokens)


# ---------------------------------------------------------------------------
# Surface declarations

@dataclass(frozen=True)
class Span:
    line: int
    col: int


@dataclass(frozen=True)
class STypeDecl:
    name: str
    params: Context
    param_names: tuple[str, ...]
    span: Span


@dataclass(frozen=True)
class STermDecl:
    name: str
    params: Context
    param_names: tuple[str, ...]
    result: TypeExpr
    span: Span


@dataclass(frozen=True)
class SEquation:
    params: Context
    param_names: tuple[str, ...]
    lhs: Term
    rhs: Term
    at: TypeExpr
    span: Span


@dataclass(frozen=True)
class STypeEquation:
    params: Context
    param_names: tuple[str, ...]
    lhs: TypeExpr
    rhs: TypeExpr
    span: Span


@dataclass(frozen=True)
class SDefine:
    name: str
    param_names: tuple[str, ...]
    body: Term   # scoped under the parameters
    span: Span


@dataclass(frozen=True)
class SAssert:
    kind: str    # "check", "check-type", "equal", "not-equal", "equal-type"
    context: Context
    binder_names: tuple[str, ...]
    payload: tuple   # terms/types per kind
    witness: Term | None
    span: Span


@dataclass(frozen=True)
class SourceFile:
    declarations: tuple


# ---------------------------------------------------------------------------
# Parser

class _Parser:
    def __init__(self, tokens: tuple[Token, ...]):
        self.tokens = tokens
        self.pos = 0
        self.type_consts: set[str] = set()
        self.term_consts: set[str] = set()
        self.macros: dict[str, SDefine] = {}

    # -- token plumbing ----------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def fail(self, message: str) -> ParseError:
        t = self.peek()
        return ParseError(message + f" (found {t.value!r})" if t.value
                          else message, t.line, t.col)

    def expect(self, kind: str, value: str | None = None) -> Token:
        t = self.peek()
        if t.kind != kind or (value is not None and t.value != value):
            want = value if value is not None else kind
            raise self.fail(f"expected {want!r}")
        return self.next()

    def at(self, kind: str, value: str | None = None) -> bool:
        t = self.peek()
        return t.kind == kind and (value is None or t.value == value)

    def accept(self, kind: str, value: str | None = None) -> bool:
        if self.at(kind, value):
            self.next()
            return True
        return False

    # -- files -------------------------------------------------------------

    def source_file(self) -> SourceFile:
        decls = []
        while not self.at("eof"):
            decls.append(self.declaration())
        return SourceFile(tuple(decls))

    def declaration(self):
        t = self.peek()
        span = Span(t.line, t.col)
        if self.accept("keyword", "type"):
            name = self.expect("ident").value
            params, names = self.opt_params()
            self.type_consts.add(name)
            return STypeDecl(name, params, names, span)
        if self.accept("keyword", "term"):
            name = self.expect("ident").value
            params, names = self.opt_params()
            self.expect("punct", ":")
            result = self.type_(list(names))
            self.term_consts.add(name)
            return STermDecl(name, params, names, result, span)
        if self.accept("keyword", "equation"):
            params, names = self.opt_params()
            scope = list(names)
            lhs = self.term(scope)
            self.expect("punct", "=")
            rhs = self.term(scope)
            self.expect("punct", ":")
            at = self.type_(scope)
            return SEquation(params, names, lhs, rhs, at, span)
        if self.accept("keyword", "type-equation"):
            params, names = self.opt_params()
            scope = list(names)
            lhs = self.type_(scope)
            self.expect("punct", "=")
            rhs = self.type_(scope)
            return STypeEquation(params, names, lhs, rhs, span)
        if self.accept("keyword", "define"):
            name = self.expect("ident").value
            pnames: tuple[str, ...] = ()
            if self.at("punct", "("):
                pnames = self.macro_params()
            self.expect("punct", ":=")
            body = self.term(list(pnames))
            d = SDefine(name, pnames, body, span)
            self.macros[name] = d
            return d
        if t.kind == "keyword" and t.value in ("assert", "assert-equal",
                                               "assert-not-equal"):
            return self.assertion()
        raise self.fail("expected a declaration")

    def assertion(self) -> SAssert:
        t = self.next()
        span = Span(t.line, t.col)
        ctx, names = Context(), ()
        if self.at("punct", "("):
            ctx, names = self.params()
        self.accept("punct", "|-")
        scope = list(names)
        if t.value == "assert":
            a = self.term_or_type(scope)
            if isinstance(a, tuple):  # a term
                self.expect("punct", ":")
                ty = self.type_(scope)
                return SAssert("check", ctx, names, (a[0], ty), None, span)
            return SAssert("check-type", ctx, names, (a,), None, span)
        lhs = self.term_or_type(scope)
        self.expect("punct", "=")
        if isinstance(lhs, tuple):
            rhs = self.term(scope)
            self.expect("punct", ":")
            at = self.type_(scope)
            payload = (lhs[0], rhs, at)
            kind = "equal" if t.value == "assert-equal" else "not-equal"
        else:
            rhs_ty = self.type_(scope)
            payload = (lhs, rhs_ty)
            if t.value == "assert-not-equal":
                raise ParseError("assert-not-equal applies to terms only",
                                 span.line, span.col)
            kind = "equal-type"
        witness = None
        if self.accept("keyword", "by"):
            if kind != "equal":
                raise self.fail("'by' requires a term equality")
            witness = self.term(scope)
        return SAssert(kind, ctx, names, payload, witness, span)

    def term_or_type(self, scope: list[str]):
        """A term (wrapped in a 1-tuple) or a type, by leading token."""
        t = self.peek()
        if t.kind == "keyword" and t.value in ("Unit", "Sigma", "Pi", "Id"):
            return self.type_(scope)
        if t.kind == "number" and t.value == "1":
            return self.type_(scope)
        if t.kind == "ident" and t.value in self.type_consts:
            return self.type_(scope)
        return (self.term(scope),)

    # -- parameter lists ---------------------------------------------------

    def opt_params(self) -> tuple[Context, tuple[str, ...]]:
        if self.at("punct", "("):
            return self.params()
        return Context(), ()

    def params(self) -> tuple[Context, tuple[str, ...]]:
        self.expect("punct", "(")
        entries: list[TypeExpr] = []
        names: list[str] = []
        if not self.at("punct", ")"):
            while True:
                name = self.expect("ident").value
                self.expect("punct", ":")
                entries.append(self.type_(list(names)))
                names.append(name)
                if not self.accept("punct", ","):
                    break
        self.expect("punct", ")")
        return Context(tuple(entries)), tuple(names)

    def macro_params(self) -> tuple[str, ...]:
        self.expect("punct", "(")
        names = []
        if not self.at("punct", ")"):
            while True:
                names.append(self.expect("ident").value)
                if not self.accept("punct", ","):
                    break
        self.expect("punct", ")")
        return tuple(names)

    # -- types -------------------------------------------------------------

    def type_(self, scope: list[str]) -> TypeExpr:
        t = self.peek()
        if self.accept("keyword", "Unit") or self.accept("number", "1"):
            return Unit()
        if t.kind == "number":
            raise self.fail("unexpected number in a type")
        if self.accept("keyword", "Sigma"):
            return self.binder_type(scope, Sigma)
        if self.accept("keyword", "Pi"):
            return self.binder_type(scope, Pi)
        if self.accept("keyword", "Id"):
            self.expect("punct", "(")
            under = self.type_(scope)
            self.expect("punct", ",")
            left = self.term(scope)
            self.expect("punct", ",")
            right = self.term(scope)
            self.expect("punct", ")")
            return Id(under, left, right)
        if t.kind == "ident":
            name = self.next().value
            if name not in self.type_consts:
                raise ParseError(f"unbound type constant {name!r}",
                                 t.line, t.col)
            args: tuple[Term, ...] = ()
            if self.at("punct", "("):
                args = self.call_args(scope)
            return TypeConst(name, args)
        if self.accept("punct", "("):
            out = self.type_(scope)
            self.expect("punct", ")")
            return out
        raise self.fail("expected a type")

    def binder_type(self, scope: list[str], former) -> TypeExpr:
        self.expect("punct", "(")
        name = self.expect("ident").value
        self.expect("punct", ":")
        dom = self.type_(scope)
        self.expect("punct", ")")
        self.expect("punct", ".")
        scope.append(name)
        fam = self.type_(scope)
        scope.pop()
        return former(dom, fam)

    # -- terms -------------------------------------------------------------

    def term(self, scope: list[str]) -> Term:
        if self.accept("keyword", "fun"):
            name = self.expect("ident").value
            self.expect("punct", ".")
            scope.append(name)
            body = self.term(scope)
            scope.pop()
            return Lam(body)
        out = self.atom(scope)
        while self.starts_atom():
            out = App(out, self.atom(scope))
        return out

    def starts_atom(self) -> bool:
        t = self.peek()
        if t.kind == "ident":
            return True
        if t.kind == "punct" and t.value in ("(", "*"):
            return True
        if t.kind == "keyword" and t.value in (
                "refl", "J", "split", "case1", "ext", "pair", "hint",
                "transport", "fun"):
            return True
        return False

    def atom(self, scope: list[str]) -> Term:
        t = self.peek()
        if self.accept("punct", "*"):
            return Star()
        if self.accept("keyword", "refl"):
            return Refl(self.atom(scope))
        if self.accept("keyword", "pair"):
            self.expect("punct", "(")
            fst = self.term(scope)
            self.expect("punct", ",")
            snd = self.term(scope)
            self.expect("punct", ")")
            return Pair(fst, snd)
        if self.accept("keyword", "split"):
            self.expect("punct", "(")
            scrutinee = self.term(scope)
            self.expect("punct", ",")
            motive = self.bound_type(scope, 1)
            self.expect("punct", ",")
            branch = self.bound_term(scope, 2)
            self.expect("punct", ")")
            return SigElim(motive, branch, scrutinee)
        if self.accept("keyword", "case1"):
            self.expect("punct", "(")
            scrutinee = self.term(scope)
            self.expect("punct", ",")
            motive = self.bound_type(scope, 1)
            self.expect("punct", ",")
            branch = self.term(scope)
            self.expect("punct", ")")
            return UnitElim(motive, branch, scrutinee)
        if self.accept("keyword", "J"):
            self.expect("punct", "(")
            left = self.term(scope)
            self.expect("punct", ",")
            right = self.term(scope)
            self.expect("punct", ",")
            proof = self.term(scope)
            self.expect("punct", ",")
            motive = self.bound_type(scope, 3)
            self.expect("punct", ",")
            branch = self.bound_term(scope, 1)
            self.expect("punct", ")")
            return JElim(motive, branch, left, right, proof)
        if self.accept("keyword", "ext"):
            self.expect("punct", "(")
            left = self.term(scope)
            self.expect("punct", ",")
            right = self.term(scope)
            self.expect("punct", ",")
            pointwise = self.bound_term(scope, 1)
            self.expect("punct", ")")
            return Ext(left, right, pointwise)
        if self.accept("keyword", "hint"):
            self.expect("punct", "(")
            body = self.term(scope)
            self.expect("punct", ",")
            witness = self.term(scope)
            self.expect("punct", ")")
            return ConvHint(body, witness)
        if (self.accept("keyword", "transport")
                or self.accept("punct", "^")):
            self.expect("punct", "(")
            family = self.bound_type(scope, 1)
            self.expect("punct", ",")
            a1 = self.term(scope)
            self.expect("punct", ",")
            a2 = self.term(scope)
            self.expect("punct", ",")
            proof = self.term(scope)
            self.expect("punct", ",")
            elem = self.term(scope)
            self.expect("punct", ")")
            return transport_term(family, a1, a2, proof, elem, len(scope))
        if t.kind == "ident":
            name = self.next().value
            if name in scope:
                index = len(scope) - 1 - _rindex(scope, name)
                return Var(index)
            if name in self.macros:
                macro = self.macros[name]
                args: tuple[Term, ...] = ()
                if self.at("punct", "(") and macro.param_names:
                    args = self.call_args(scope)
                if len(args) != len(macro.param_names):
                    raise ParseError(
                        f"macro {name!r} expects "
                        f"{len(macro.param_names)} arguments",
                        t.line, t.col)
                return _expand_macro(macro, args)
            if name in self.term_consts:
                args = ()
                if self.at("punct", "("):
                    args = self.call_args(scope)
                return TermConst(name, args)
            raise ParseError(f"unbound identifier {name!r}", t.line, t.col)
        if self.accept("punct", "("):
            out = self.term(scope)
            if self.accept("punct", ","):
                snd = self.term(scope)
                self.expect("punct", ")")
                return Pair(out, snd)
            self.expect("punct", ")")
            return out
        raise self.fail("expected a term")

    def call_args(self, scope: list[str]) -> tuple[Term, ...]:
        self.expect("punct", "(")
        args = []
        if not self.at("punct", ")"):
            while True:
                args.append(self.term(scope))
                if not self.accept("punct", ","):
                    break
        self.expect("punct", ")")
        return tuple(args)

    def binders(self, scope: list[str], count: int) -> None:
        for _ in range(count):
            scope.append(self.expect("ident").value)
        self.expect("punct", ".")

    def bound_term(self, scope: list[str], count: int) -> Term:
        self.binders(scope, count)
        out = self.term(scope)
        del scope[-count:]
        return out

    def bound_type(self, scope: list[str], count: int) -> TypeExpr:
        self.binders(scope, count)
        out = self.type_(scope)
        del scope[-count:]
        return out


def _rindex(scope: list[str], name: str) -> int:
    for i in range(len(scope) - 1, -1, -1):
        if scope[i] == name:
            return i
    raise ValueError(name)


def _expand_macro(macro: SDefine, args: tuple[Term, ...]) -> Term:
    if not args:
        return macro.body
    # the body is scoped under the parameters only (innermost = last)
    return inst(macro.body, tuple(reversed(args)))


def parse(text: str) -> SourceFile:
    return _Parser(lex(text)).source_file()


# ---------------------------------------------------------------------------
# Printer

def _fresh(depth: int) -> str:
    return f"v{depth}"


def print_type(a: TypeExpr, depth: int = 0) -> str:
    if isinstance(a, Unit):
        return "Unit"
    if isinstance(a, Sigma):
        return (f"Sigma ({_fresh(depth)} : {print_type(a.domain, depth)})"
                f" . {print_type(a.family, depth + 1)}")
    if isinstance(a, Pi):
        return (f"Pi ({_fresh(depth)} : {print_type(a.domain, depth)})"
                f" . {print_type(a.family, depth + 1)}")
    if isinstance(a, Id):
        return (f"Id({print_type(a.underlying, depth)}, "
                f"{print_term(a.left, depth)}, "
                f"{print_term(a.right, depth)})")
    if isinstance(a, TypeConst):
        if a.args:
            inner = ", ".join(print_term(t, depth) for t in a.args)
            return f"{a.name}({inner})"
        return a.name
    raise ValueError(f"unprintable type {a!r}")


def _binders(depth: int, count: int) -> str:
    return " ".join(_fresh(depth + i) for i in range(count))


def print_term(t: Term, depth: int = 0) -> str:
    out = _print_app(t, depth)
    return out


def _print_app(t: Term, depth: int) -> str:
    if isinstance(t, App):
        return f"{_print_app(t.fun, depth)} {_print_atom(t.arg, depth)}"
    if isinstance(t, Lam):
        return f"fun {_fresh(depth)} . {_print_app(t.body, depth + 1)}"
    return _print_atom(t, depth)


def _print_atom(t: Term, depth: int) -> str:
    if isinstance(t, Var):
        if t.index >= depth:
            raise ValueError(f"unbound index {t.index} at depth {depth}")
        return _fresh(depth - 1 - t.index)
    if isinstance(t, Star):
        return "*"
    if isinstance(t, Refl):
        return f"refl {_print_atom(t.arg, depth)}"
    if isinstance(t, Pair):
        return (f"pair({print_term(t.fst, depth)}, "
                f"{print_term(t.snd, depth)})")
    if isinstance(t, SigElim):
        return (f"split({print_term(t.scrutinee, depth)}, "
                f"{_binders(depth, 1)} . {print_type(t.motive, depth + 1)}, "
                f"{_binders(depth, 2)} . {print_term(t.branch, depth + 2)})")
    if isinstance(t, UnitElim):
        return (f"case1({print_term(t.scrutinee, depth)}, "
                f"{_binders(depth, 1)} . {print_type(t.motive, depth + 1)}, "
                f"{print_term(t.branch, depth)})")
    if isinstance(t, JElim):
        return (f"J({print_term(t.left, depth)}, "
                f"{print_term(t.right, depth)}, "
                f"{print_term(t.proof, depth)}, "
                f"{_binders(depth, 3)} . {print_type(t.motive, depth + 3)}, "
                f"{_binders(depth, 1)} . {print_term(t.branch, depth + 1)})")
    if isinstance(t, Ext):
        return (f"ext({print_term(t.left, depth)}, "
                f"{print_term(t.right, depth)}, "
                f"{_binders(depth, 1)} . "
                f"{print_term(t.pointwise, depth + 1)})")
    if isinstance(t, ConvHint):
        return (f"hint({print_term(t.body, depth)}, "
                f"{print_term(t.witness, depth)})")
    if isinstance(t, TermConst):
        if t.args:
            inner = ", ".join(print_term(a, depth) for a in t.args)
            return f"{t.name}({inner})"
        return t.name
    if isinstance(t, (Lam, App)):
        return f"({_print_app(t, depth)})"
    raise ValueError(f"unprintable term {t!r}")


def _print_params(params: Context, names: tuple[str, ...]) -> str:
    if not params.entries:
        return ""
    inner = ", ".join(f"{_fresh(i)} : {print_type(ty, i)}"
                      for i, ty in enumerate(params.entries))
    return f" ({inner})"


def _print_context(ctx: Context, names: tuple[str, ...]) -> str:
    if not ctx.entries:
        return "|- "
    inner = ", ".join(f"{_fresh(i)} : {print_type(ty, i)}"
                      for i, ty in enumerate(ctx.entries))
    return f"({inner}) |- "


def print_declaration(d) -> str:
    if isinstance(d, STypeDecl):
        return f"type {d.name}{_print_params(d.params, d.param_names)}"
    if isinstance(d, STermDecl):
        n = len(d.params)
        return (f"term {d.name}{_print_params(d.params, d.param_names)} : "
                f"{print_type(d.result, n)}")
    if isinstance(d, SEquation):
        n = len(d.params)
        return (f"equation{_print_params(d.params, d.param_names)} "
                f"{print_term(d.lhs, n)} = {print_term(d.rhs, n)} : "
                f"{print_type(d.at, n)}")
    if isinstance(d, STypeEquation):
        n = len(d.params)
        return (f"type-equation{_print_params(d.params, d.param_names)} "
                f"{print_type(d.lhs, n)} = {print_type(d.rhs, n)}")
    if isinstance(d, SDefine):
        n = len(d.param_names)
        inner = (f"({', '.join(_fresh(i) for i in range(n))})" if n else "")
        return f"define {d.name}{inner} := {print_term(d.body, n)}"
    if isinstance(d, SAssert):
        n = len(d.context)
        head = _print_context(d.context, d.binder_names)
        if d.kind == "check":
            t, a = d.payload
            return (f"assert {head}{print_term(t, n)} : "
                    f"{print_type(a, n)}")
        if d.kind == "check-type":
            (a,) = d.payload
            return f"assert {head}{print_type(a, n)}"
        if d.kind == "equal-type":
            a, b = d.payload
            return (f"assert-equal {head}{print_type(a, n)} = "
                    f"{print_type(b, n)}")
        word = "assert-equal" if d.kind == "equal" else "assert-not-equal"
        t, u, a = d.payload
        out = (f"{word} {head}{print_term(t, n)} = {print_term(u, n)} : "
               f"{print_type(a, n)}")
        if d.witness is not None:
            out += f" by {print_term(d.witness, n)}"
        return out
    raise ValueError(f"unprintable declaration {d!r}")


def print_source(src: SourceFile) -> str:
    return "\n".join(print_declaration(d) for d in src.declarations) + "\n"


# ---------------------------------------------------------------------------
# Elaboration

@dataclass(frozen=True)
class Assertion:
    """A checkable assertion extracted from a source file."""

    kind: str    # as in SAssert
    context: Context
    payload: tuple
    witness: Term | None
    span: Span
    text: str


def elaborate(src: SourceFile) -> tuple[Signature, tuple[Assertion, ...]]:
    """Build the signature (in declaration order) and the assertion list.

    The signature is not kernel-validated here; run
    ``kernel.validate_signature`` on the result.
    """
    sig = Signature()
    assertions = []
    for d in src.declarations:
        try:
            if isinstance(d, STypeDecl):
                sig = sig.with_type_decl(TypeDecl(d.name, d.params))
            elif isinstance(d, STermDecl):
                sig = sig.with_term_decl(
                    TermDecl(d.name, d.params, d.result))
        except ValueError as exc:
            raise ParseError(str(exc), d.span.line, d.span.col) from exc
        if isinstance(d, (STypeDecl, STermDecl)):
            continue
        if isinstance(d, SEquation):
            sig = sig.with_term_equation(
                TermEquation(d.params, d.lhs, d.rhs, d.at))
        elif isinstance(d, STypeEquation):
            sig = sig.with_type_equation(
                TypeEquation(d.params, d.lhs, d.rhs))
        elif isinstance(d, SDefine):
            pass
        elif isinstance(d, SAssert):
            assertions.append(Assertion(d.kind, d.context, d.payload,
                                        d.witness, d.span,
                                        print_declaration(d)))
        else:
            raise ValueError(f"unknown declaration {d!r}")
    return sig, tuple(assertions)
