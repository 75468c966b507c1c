"""Oracle checks for the surface-language parser."""
import random
import string

from ml2.syntax import (
    Unit, Sigma, Pi, Id, TypeConst, Var, Star, Pair, SigElim, Refl, JElim,
    Lam, App, TermConst, Context,
)
from ml2.kernel import (
    Judgement, judgement_holds, validate_signature, admit_equation,
    ConversionState, convertible,
)
from ml2.parser import (
    parse, print_source, elaborate, ParseError, lex,
)

SRC = """
-- a tiny theory of a constant type with a marked pair
type C
term c : C
term d : C
term pr : Sigma (x : C) . C
equation pr = (c, d) : Sigma (x : C) . C

define fst(p) := split(p, s . C, a b . a)
define ident := fun x . x

assert |- fst(pr) : C
assert-equal |- fst(pr) = c : C
assert-equal (f : Pi (x : C) . C, y : C) |- f y = f y : C
assert-not-equal |- c = pair(d, c) : Sigma (x : C) . C
assert (p : Id(C, c, d)) |- J(c, d, p, a b q . C, z . z) : C
assert-equal |- ext(ident, ident, x . refl x) = refl (fun x . x)
    : Id(Pi (x : C) . C, ident, ident)
assert (y : C) |- transport(x . C, c, c, refl c, y) : C
assert |- Sigma (x : C) . Id(C, x, x)
assert-equal (x : C) |- C = C
"""

src = parse(SRC)
sig, asserts = elaborate(src)
validate_signature(sig)
assert len(asserts) == 9
assert len(sig.term_equations) == 1

# the macro expanded to a projection eliminator
chk = asserts[0]
assert chk.kind == "check"
t, a = chk.payload
assert isinstance(t, SigElim) and t.branch == Var(1)
assert isinstance(t.scrutinee, TermConst) and t.scrutinee.name == "pr"
assert a == TypeConst("C")
assert judgement_holds(Judgement("term", Context(), (t, a)), sig)

eq = asserts[1]
assert eq.kind == "equal"
assert judgement_holds(Judgement("term-eq", Context(), eq.payload), sig)

fv = asserts[2]
assert fv.context == Context((Pi(TypeConst("C"), TypeConst("C")),
                              TypeConst("C")))
assert fv.payload[0] == App(Var(1), Var(0))

ne = asserts[3]
assert ne.kind == "not-equal"
assert ne.payload[1] == Pair(TermConst("d"), TermConst("c"))
assert not judgement_holds(Judgement("term-eq", Context(), ne.payload), sig)

jm = asserts[4]
assert isinstance(jm.payload[0], JElim)
assert judgement_holds(Judgement("term", jm.context, jm.payload), sig)

exts = asserts[5]
assert judgement_holds(Judgement("term-eq", exts.context, exts.payload), sig)

tr = asserts[6]
assert judgement_holds(Judgement("term", tr.context, tr.payload), sig)

ta = asserts[7]
assert ta.kind == "check-type"
assert ta.payload[0] == Sigma(TypeConst("C"), Id(TypeConst("C"), Var(0),
                                                 Var(0)))
tyeq = asserts[8]
assert tyeq.kind == "equal-type"
print("elaboration ok")

# round trip: parse . print . parse == parse
printed = print_source(src)
again = parse(printed)
sig2, asserts2 = elaborate(again)
assert sig2 == sig
assert tuple((a.kind, a.context, a.payload, a.witness) for a in asserts2) \
    == tuple((a.kind, a.context, a.payload, a.witness) for a in asserts)
assert print_source(again) == printed
print("round trip ok")

# unicode aliases lex to the same token stream as the ascii forms
uni = "assert (p : Σ (x : C) . C) ⊢ λ y . ⋆ : Π (z : C) . Unit"
asc = "assert (p : Sigma (x : C) . C) |- fun y . * : Pi (z : C) . Unit"
assert [(.0, t.kind, t.value)[1:] for t in lex(uni)] == \
       [(.0, t.kind, t.value)[1:] for t in lex(asc)]
print("aliases ok")

# witness discipline: 'by' attaches a witness term for admission
wsrc = """
type C
term c : C
term d : C
term w : Id(C, c, d)
assert-equal |- c = d : C by w
"""
wsig, wasserts = elaborate(parse(wsrc))
validate_signature(wsig)
(wa,) = wasserts
assert wa.witness == TermConst("w")
t, u, at = wa.payload
state = ConversionState()
assert not convertible(Context(), t, u, at, wsig, state)
state = admit_equation(Context(), t, u, at, wa.witness, wsig, state)
assert convertible(Context(), t, u, at, wsig, state)
print("witness desugaring ok")

# every error carries a 1-based span
cases = [
    ("type", 1, 5),                      # missing name
    ("assert |- x : Unit", 1, 11),       # unbound identifier
    ("term f : D", 1, 10),               # unbound type constant
    ("define two(a) := a\nassert |- two(*, *) : Unit", 2, 11),  # arity
    ("type C\ntype C", 2, 1),            # duplicate declaration
    ("assert |- \x01", 1, 11),           # bad character
]
for text, line, col in cases:
    try:
        elaborate(parse(text))
    except ParseError as exc:
        assert (exc.line, exc.col) == (line, col), (text, exc)
    else:
        raise AssertionError(f"no error for {text!r}")
print("error spans ok")

# fuzzing never raises anything but ParseError
rng = random.Random(7)
alphabet = string.ascii_letters + " ()*,.:=^|-\n'_" + "ΣΠλ⊢⋆"
words = ["type", "term", "assert", "assert-equal", "fun", "split", "J",
         "refl", "Sigma", "Pi", "Id", "Unit", ":", "(", ")", ".", "|-",
         "*", "=", "by", ",", "define", ":=", "hint", "ext", "case1"]
for i in range(4000):
    if i % 2:
        text = "".join(rng.choice(alphabet)
                       for _ in range(rng.randrange(60)))
    else:
        text = " ".join(rng.choice(words)
                        for _ in range(rng.randrange(20)))
    try:
        elaborate(parse(text))
    except ParseError:
        pass
# mutations of a valid file
base = SRC
for i in range(2000):
    pos = rng.randrange(len(base))
    text = base[:pos] + rng.choice(alphabet) + base[pos + 1:]
    try:
        elaborate(parse(text))
    except ParseError:
        pass
print("fuzz ok")

# empty input parses to an empty file
esig, easserts = elaborate(parse(""))
assert esig.type_decls == () and easserts == ()
print("all parser checks passed")
