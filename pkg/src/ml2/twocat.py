"""Finite locally-groupoidal 2-categories and structure verifiers.

Everything here is table-driven: a 2-category is a finite bundle of hom
categories together with horizontal composition tables, and every structure
(isofibration cleavage, injective equivalence, arrow object, bireflection,
bicoreflection) is certified by explicit data that an exhaustive verifier
checks clause by clause.  Verifiers never raise on mathematical failure;
they return a report listing each failed clause with a witness tuple, so
that corrupted certificates produce located counterexamples.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Mapping

Obj = Hashable
One = Hashable
Two = Hashable


class StructureError(Exception):
    """Raised when certificate data is structurally malformed (missing
    tables, wrong endpoints) as opposed to mathematically wrong."""


@dataclass(frozen=True)
class Failure:
    """A single failed clause with the instance that witnesses the failure."""

    clause: str
    witness: tuple

    def to_json(self) -> dict:
        return {"clause": self.clause,
                "witness": [repr(w) for w in self.witness]}


@dataclass(frozen=True)
class Report:
    """Outcome of an exhaustive verification."""

    subject: str
    checked: int
    failures: tuple[Failure, ...]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"subject": self.subject, "checked": self.checked,
                "passed": self.passed,
                "failures": [f.to_json() for f in self.failures]}


@dataclass(frozen=True)
class Finite2Category:
    """A finite 2-category with invertible 2-cells, given by tables.

    ``one_cells[(a, b)]`` lists the 1-cells from ``a`` to ``b``;
    ``two_cells[(f, g)]`` the 2-cells between parallel 1-cells.  The
    structure maps are total on their meaningful domains:

    * ``compose1[(g, f)]``: horizontal composite of 1-cells (``g`` after
      ``f``); ``id1[a]``: identity 1-cell;
    * ``vcomp[(beta, alpha)]``: vertical composite (``beta`` after
      ``alpha``); ``id2[f]``: identity 2-cell; ``inv2[alpha]``: vertical
      inverse (total, since the 2-category is locally groupoidal);
    * ``lwhisk[(h, alpha)]``: post-whisker by a 1-cell;
      ``rwhisk[(alpha, k)]``: pre-whisker by a 1-cell.
    """

    objects: tuple[Obj, ...]
    one_cells: Mapping[tuple[Obj, Obj], tuple[One, ...]]
    two_cells: Mapping[tuple[One, One], tuple[Two, ...]]
    compose1: Mapping[tuple[One, One], One]
    id1: Mapping[Obj, One]
    vcomp: Mapping[tuple[Two, Two], Two]
    id2: Mapping[One, Two]
    inv2: Mapping[Two, Two]
    lwhisk: Mapping[tuple[One, Two], Two]
    rwhisk: Mapping[tuple[Two, One], Two]
    one_src: Mapping[One, Obj] = field(default_factory=dict)
    one_tgt: Mapping[One, Obj] = field(default_factory=dict)
    two_src: Mapping[Two, One] = field(default_factory=dict)
    two_tgt: Mapping[Two, One] = field(default_factory=dict)

    # -- convenience accessors -------------------------------------------

    def homs(self, a: Obj, b: Obj) -> tuple[One, ...]:
        return self.one_cells.get((a, b), ())

    def cells(self, f: One, g: One) -> tuple[Two, ...]:
        return self.two_cells.get((f, g), ())

    def hcomp2(self, beta: Two, alpha: Two) -> Two:
        """Horizontal composite of 2-cells via whiskers."""
        f = self.two_src[beta]
        k = self.two_tgt[alpha]
        return self.vcomp[(self.rwhisk[(beta, k)],
                           self.lwhisk[(f, alpha)])]

    def all_one_cells(self):
        for pair, fs in self.one_cells.items():
            for f in fs:
                yield pair, f

    def all_two_cells(self):
        for pair, cs in self.two_cells.items():
            for c in cs:
                yield pair, c


def build_two_category(
        objects, one_cells_fn: Callable[[Obj, Obj], tuple],
        two_cells_fn: Callable[[One, One], tuple],
        compose1_fn, id1_fn, vcomp_fn, id2_fn, inv2_fn,
        lwhisk_fn, rwhisk_fn) -> Finite2Category:
    """Materialize the tables of a 2-category from callables."""
    objects = tuple(objects)
    one_cells: dict = {}
    one_src: dict = {}
    one_tgt: dict = {}
    for a in objects:
        for b in objects:
            fs = tuple(one_cells_fn(a, b))
            if fs:
                one_cells[(a, b)] = fs
            for f in fs:
                one_src[f] = a
                one_tgt[f] = b
    two_cells: dict = {}
    two_src: dict = {}
    two_tgt: dict = {}
    for (a, b), fs in one_cells.items():
        for f in fs:
            for g in fs:
                cs = tuple(two_cells_fn(f, g))
                if cs:
                    two_cells[(f, g)] = cs
                for c in cs:
                    two_src[c] = f
                    two_tgt[c] = g
    compose1 = {}
    for (b, c), gs in one_cells.items():
        for (a, b2), fs in one_cells.items():
            if b2 != b:
                continue
            for g in gs:
                for f in fs:
                    compose1[(g, f)] = compose1_fn(g, f)
    id1 = {a: id1_fn(a) for a in objects}
    vcomp = {}
    inv2 = {}
    id2 = {}
    lwhisk = {}
    rwhisk = {}
    for (f, g), cs in two_cells.items():
        for c in cs:
            inv2[c] = inv2_fn(c)
            for (g2, h), ds in two_cells.items():
                if g2 != g:
                    continue
                for d in ds:
                    vcomp[(d, c)] = vcomp_fn(d, c)
            a, b = one_src[f], one_tgt[f]
            for c2 in objects:
                for h in one_cells.get((b, c2), ()):
                    lwhisk[(h, c)] = lwhisk_fn(h, c)
            for z in objects:
                for k in one_cells.get((z, a), ()):
                    rwhisk[(c, k)] = rwhisk_fn(c, k)
    for f in one_src:
        id2[f] = id2_fn(f)
    return Finite2Category(objects, one_cells, two_cells, compose1, id1,
                           vcomp, id2, inv2, lwhisk, rwhisk,
                           one_src, one_tgt, two_src, two_tgt)


def verify_two_category(k: Finite2Category) -> Report:
    """Exhaustively check the 2-category axioms: hom-category structure,
    invertibility of 2-cells, functoriality of whiskering, associativity
    and unitality of horizontal composition, and the interchange law."""
    failures: list[Failure] = []
    checked = 0

    def fail(clause, *witness):
        failures.append(Failure(clause, witness))

    # hom-category axioms and inverses
    for (f, g), cs in k.two_cells.items():
        for c in cs:
            checked += 1
            if k.vcomp.get((c, k.id2[f])) != c:
                fail("vertical-right-unit", f, c)
            if k.vcomp.get((k.id2[g], c)) != c:
                fail("vertical-left-unit", f, c)
            ci = k.inv2.get(c)
            if ci is None or k.vcomp.get((ci, c)) != k.id2[f] \
                    or k.vcomp.get((c, ci)) != k.id2[g]:
                fail("two-cell-invertible", f, g, c)
    for (d, c), dc in k.vcomp.items():
        src, mid = k.two_src[c], k.two_tgt[c]
        if k.two_src[d] != mid:
            continue
        for e_pair, es in k.two_cells.items():
            if e_pair[0] != k.two_tgt[d]:
                continue
            for e in es:
                checked += 1
                left = k.vcomp.get((e, dc))
                ed = k.vcomp.get((e, d))
                right = k.vcomp.get((ed, c)) if ed is not None else None
                if left is None or left != right:
                    fail("vertical-associativity", c, d, e)
    # horizontal composition of 1-cells
    for (a, b), fs in k.one_cells.items():
        for f in fs:
            checked += 1
            if k.compose1.get((k.id1[b], f)) != f:
                fail("horizontal-left-unit", f)
            if k.compose1.get((f, k.id1[a])) != f:
                fail("horizontal-right-unit", f)
    for (g, f), gf in k.compose1.items():
        for (h, g2), hg in k.compose1.items():
            if g2 != g or k.one_tgt[g] != k.one_src[h]:
                continue
            if k.one_tgt[f] != k.one_src[g]:
                continue
            checked += 1
            if k.compose1[(h, gf)] != k.compose1[(hg, f)]:
                fail("horizontal-associativity", f, g, h)
    # whisker functoriality and units
    for (h, c), hc in k.lwhisk.items():
        checked += 1
        if k.two_src[hc] != k.compose1[(h, k.two_src[c])] \
                or k.two_tgt[hc] != k.compose1[(h, k.two_tgt[c])]:
            fail("left-whisker-endpoints", h, c)
    for (f, g), cs in k.two_cells.items():
        a, b = k.one_src[f], k.one_tgt[f]
        for c in cs:
            for c2 in k.objects:
                for h in k.one_cells.get((b, c2), ()):
                    checked += 1
                    if k.lwhisk[(h, k.id2[f])] != k.id2[k.compose1[(h, f)]]:
                        fail("left-whisker-identity", h, f)
            for z in k.objects:
                for w in k.one_cells.get((z, a), ()):
                    checked += 1
                    if k.rwhisk[(k.id2[f], w)] != k.id2[k.compose1[(f, w)]]:
                        fail("right-whisker-identity", f, w)
    for (d, c), dc in k.vcomp.items():
        if k.two_src[d] != k.two_tgt[c]:
            continue
        b = k.one_tgt[k.two_src[c]]
        a = k.one_src[k.two_src[c]]
        for c2 in k.objects:
            for h in k.one_cells.get((b, c2), ()):
                checked += 1
                if k.lwhisk.get((h, dc)) != k.vcomp.get(
                        (k.lwhisk[(h, d)], k.lwhisk[(h, c)])):
                    fail("left-whisker-functorial", h, c, d)
        for z in k.objects:
            for w in k.one_cells.get((z, a), ()):
                checked += 1
                if k.rwhisk.get((dc, w)) != k.vcomp.get(
                        (k.rwhisk[(d, w)], k.rwhisk[(c, w)])):
                    fail("right-whisker-functorial", c, d, w)
    # interchange
    for (f, g), cs in k.two_cells.items():
        b = k.one_tgt[f]
        for c in cs:
            for (h, kk), ds in k.two_cells.items():
                if k.one_src[h] != b:
                    continue
                for d in ds:
                    checked += 1
                    one = k.vcomp[(k.rwhisk[(d, g)], k.lwhisk[(h, c)])]
                    two = k.vcomp[(k.lwhisk[(kk, c)], k.rwhisk[(d, f)])]
                    if one != two:
                        fail("interchange", c, d)
    return Report("two-category", checked, tuple(failures))


# ---------------------------------------------------------------------------
# 2-functors


@dataclass(frozen=True)
class TwoFunctor:
    """A strict 2-functor between finite 2-categories, given by tables."""

    source: Finite2Category
    target: Finite2Category
    on_obj: Mapping[Obj, Obj]
    on_one: Mapping[One, One]
    on_two: Mapping[Two, Two]


def verify_two_functor(u: TwoFunctor) -> Report:
    failures: list[Failure] = []
    checked = 0
    k, l = u.source, u.target
    for (g, f), gf in k.compose1.items():
        checked += 1
        if u.on_one[gf] != l.compose1[(u.on_one[g], u.on_one[f])]:
            failures.append(Failure("functor-compose1", (f, g)))
    for a in k.objects:
        checked += 1
        if u.on_one[k.id1[a]] != l.id1[u.on_obj[a]]:
            failures.append(Failure("functor-id1", (a,)))
    for (d, c), dc in k.vcomp.items():
        if k.two_src[d] != k.two_tgt[c]:
            continue
        checked += 1
        if u.on_two[dc] != l.vcomp[(u.on_two[d], u.on_two[c])]:
            failures.append(Failure("functor-vcomp", (c, d)))
    for (h, c), hc in k.lwhisk.items():
        checked += 1
        if u.on_two[hc] != l.lwhisk[(u.on_one[h], u.on_two[c])]:
            failures.append(Failure("functor-lwhisk", (h, c)))
    for (c, w), cw in k.rwhisk.items():
        checked += 1
        if u.on_two[cw] != l.rwhisk[(u.on_two[c], u.on_one[w])]:
            failures.append(Failure("functor-rwhisk", (c, w)))
    return Report("two-functor", checked, tuple(failures))


# ---------------------------------------------------------------------------
# Certificates


@dataclass(frozen=True)
class IsofibrationCleavage:
    """A map with a chosen natural lifting of invertible 2-cells.

    ``cleavage`` maps each lifting instance — a 1-cell ``g`` into the total
    object, a 1-cell ``f`` into the base, and a 2-cell ``alpha`` from ``f``
    to the projection of ``g`` — to the chosen lift and connecting 2-cell.
    """

    cat: Finite2Category
    p: One
    cleavage: Mapping[tuple[One, One, Two], tuple[One, Two]]


def verify_isofibration(cl: IsofibrationCleavage) -> Report:
    k = cl.cat
    failures: list[Failure] = []
    checked = 0
    e = k.one_src[cl.p]
    b = k.one_tgt[cl.p]

    def fail(clause, *w):
        failures.append(Failure(clause, w))

    for x in k.objects:
        for g in k.homs(x, e):
            pg = k.compose1[(cl.p, g)]
            for f in k.homs(x, b):
                for alpha in k.cells(f, pg):
                    checked += 1
                    entry = cl.cleavage.get((g, f, alpha))
                    if entry is None:
                        fail("cleavage-missing", g, f, alpha)
                        continue
                    s, sigma = entry
                    if s not in k.homs(x, e):
                        fail("lift-endpoints", g, f, alpha, s)
                        continue
                    if k.compose1[(cl.p, s)] != f:
                        fail("lift-over-base", g, f, alpha, s)
                    if k.two_src.get(sigma) != s or k.two_tgt.get(sigma) != g:
                        fail("connecting-cell-endpoints", g, f, alpha, sigma)
                        continue
                    if k.lwhisk[(cl.p, sigma)] != alpha:
                        fail("connecting-cell-over-base", g, f, alpha, sigma)
                    # normality at identity 2-cells
                    if f == pg and alpha == k.id2[pg]:
                        if s != g:
                            fail("normality-lift", g, alpha, s)
                        if sigma != k.id2[g]:
                            fail("normality-cell", g, alpha, sigma)
                    # naturality under precomposition
                    for x2 in k.objects:
                        for w in k.homs(x2, x):
                            gk = k.compose1[(g, w)]
                            fk = k.compose1[(f, w)]
                            ak = k.rwhisk[(alpha, w)]
                            entry2 = cl.cleavage.get((gk, fk, ak))
                            if entry2 is None:
                                fail("naturality-missing", g, f, alpha, w)
                                continue
                            s2, sigma2 = entry2
                            if s2 != k.compose1[(s, w)]:
                                fail("naturality-lift", g, f, alpha, w)
                            if sigma2 != k.rwhisk[(sigma, w)]:
                                fail("naturality-cell", g, f, alpha, w)
    return Report("isofibration-cleavage", checked, tuple(failures))


@dataclass(frozen=True)
class InjectiveEquivalence:
    """A section with a retraction and an invertible connecting 2-cell."""

    cat: Finite2Category
    i: One
    retraction: One
    theta: Two  # id (on the big object) => i . retraction


def verify_injective_equivalence(ie: InjectiveEquivalence) -> Report:
    k = ie.cat
    failures: list[Failure] = []
    a, b = k.one_src[ie.i], k.one_tgt[ie.i]
    checked = 4
    if k.compose1.get((ie.retraction, ie.i)) != k.id1[a]:
        failures.append(Failure("retraction", (ie.retraction, ie.i)))
    ik = k.compose1.get((ie.i, ie.retraction))
    if k.two_src.get(ie.theta) != k.id1[b] or k.two_tgt.get(ie.theta) != ik:
        failures.append(Failure("theta-endpoints", (ie.theta,)))
        return Report("injective-equivalence", checked, tuple(failures))
    if k.rwhisk[(ie.theta, ie.i)] != k.id2[ie.i]:
        failures.append(Failure("theta-on-section", (ie.theta, ie.i)))
    if k.lwhisk[(ie.retraction, ie.theta)] != k.id2[ie.retraction]:
        failures.append(Failure("retraction-on-theta",
                                (ie.retraction, ie.theta)))
    return Report("injective-equivalence", checked, tuple(failures))


@dataclass(frozen=True)
class ArrowObjectCert:
    """A 2-cell classifier: 1-cells into ``y`` classify 2-cells into the
    base object via the generic cell ``kappa``."""

    cat: Finite2Category
    y: Obj
    s: One
    t: One
    kappa: Two  # s => t


def verify_arrow_object(cert: ArrowObjectCert) -> Report:
    k = cert.cat
    failures: list[Failure] = []
    checked = 0

    def fail(clause, *w):
        failures.append(Failure(clause, w))

    for a in k.objects:
        # object part: j |-> kappa . j is a bijection from 1-cells a -> y
        # onto 2-cells between 1-cells a -> x
        image: dict = {}
        for j in k.homs(a, cert.y):
            checked += 1
            cell = k.rwhisk[(cert.kappa, j)]
            if cell in image:
                fail("classification-not-injective", a, image[cell], j)
            image[cell] = j
        x = k.one_tgt[cert.s]
        for f in k.homs(a, x):
            for g in k.homs(a, x):
                for cell in k.cells(f, g):
                    checked += 1
                    if cell not in image:
                        fail("classification-not-surjective", a, cell)
        # morphism part: xi |-> (s.xi, t.xi) is a bijection from 2-cells
        # j => j' onto commuting squares between the classified cells
        for j in k.homs(a, cert.y):
            for j2 in k.homs(a, cert.y):
                aj = k.rwhisk[(cert.kappa, j)]
                aj2 = k.rwhisk[(cert.kappa, j2)]
                squares = set()
                for phi in k.cells(k.compose1[(cert.s, j)],
                                   k.compose1[(cert.s, j2)]):
                    for psi in k.cells(k.compose1[(cert.t, j)],
                                       k.compose1[(cert.t, j2)]):
                        if k.vcomp[(psi, aj)] == k.vcomp[(aj2, phi)]:
                            squares.add((phi, psi))
                seen = set()
                for xi in k.cells(j, j2):
                    checked += 1
                    pair = (k.lwhisk[(cert.s, xi)], k.lwhisk[(cert.t, xi)])
                    if pair not in squares:
                        fail("square-not-commuting", a, xi)
                    if pair in seen:
                        fail("cells-not-faithful", a, j, j2, xi)
                    seen.add(pair)
                for pair in squares:
                    checked += 1
                    if pair not in seen:
                        fail("cells-not-full", a, j, j2, pair)
    return Report("arrow-object", checked, tuple(failures))


@dataclass(frozen=True)
class BireflectionCert:
    """A chosen factorization structure exhibiting ``fx`` with unit
    ``eta : x -> U fx`` as a reflection-up-to-retract of ``x``."""

    u: TwoFunctor
    x: Obj
    fx: Obj
    unit: One  # x -> U fx in the target
    factor: Mapping[One, One]  # f : x -> U y  |->  fx -> y in the source


def verify_bireflection(cert: BireflectionCert) -> Report:
    u, k, l = cert.u, cert.u.source, cert.u.target
    failures: list[Failure] = []
    checked = 0

    def fail(clause, *w):
        failures.append(Failure(clause, w))

    ufx = u.on_obj[cert.fx]
    for y in k.objects:
        uy = u.on_obj[y]
        for f in l.homs(cert.x, uy):
            checked += 1
            fbar = cert.factor.get(f)
            if fbar is None or fbar not in k.homs(cert.fx, y):
                fail("factorization-missing", y, f)
                continue
            if l.compose1[(u.on_one[fbar], cert.unit)] != f:
                fail("factorization-triangle", y, f, fbar)
        for h in k.homs(cert.fx, y):
            for kk in k.homs(cert.fx, y):
                uh = l.compose1[(u.on_one[h], cert.unit)]
                uk = l.compose1[(u.on_one[kk], cert.unit)]
                for alpha in l.cells(uh, uk):
                    checked += 1
                    lifts = [c for c in k.cells(h, kk)
                             if l.rwhisk[(u.on_two[c], cert.unit)] == alpha]
                    if len(lifts) != 1:
                        fail("two-cell-lifting-not-unique", y, h, kk, alpha,
                             len(lifts))
    return Report("bireflection", checked, tuple(failures))


@dataclass(frozen=True)
class BicoreflectionCert:
    """Dual certificate: ``gx`` with counit ``eps : U gx -> x``."""

    u: TwoFunctor
    x: Obj
    gx: Obj
    counit: One  # U gx -> x in the target
    factor: Mapping[One, One]  # f : U y -> x  |->  y -> gx in the source


def verify_bicoreflection(cert: BicoreflectionCert) -> Report:
    u, k, l = cert.u, cert.u.source, cert.u.target
    failures: list[Failure] = []
    checked = 0

    def fail(clause, *w):
        failures.append(Failure(clause, w))

    for y in k.objects:
        uy = u.on_obj[y]
        for f in l.homs(uy, cert.x):
            checked += 1
            fbar = cert.factor.get(f)
            if fbar is None or fbar not in k.homs(y, cert.gx):
                fail("factorization-missing", y, f)
                continue
            if l.compose1[(cert.counit, u.on_one[fbar])] != f:
                fail("factorization-triangle", y, f, fbar)
        for h in k.homs(y, cert.gx):
            for kk in k.homs(y, cert.gx):
                uh = l.compose1[(cert.counit, u.on_one[h])]
                uk = l.compose1[(cert.counit, u.on_one[kk])]
                for alpha in l.cells(uh, uk):
                    checked += 1
                    lifts = [c for c in k.cells(h, kk)
                             if l.lwhisk[(cert.counit, u.on_two[c])] == alpha]
                    if len(lifts) != 1:
                        fail("two-cell-lifting-not-unique", y, h, kk, alpha,
                             len(lifts))
    return Report("bicoreflection", checked, tuple(failures))


# ---------------------------------------------------------------------------
# The canonical filler


@dataclass(frozen=True)
class LiftingSquare:
    """A commuting square ``p . f = g . i`` asking for a diagonal."""

    i: One  # x -> y, the left leg (injective equivalence)
    f: One  # x -> e, the top
    p: One  # e -> b, the right leg (isofibration)
    g: One  # y -> b, the bottom


def filler(square: LiftingSquare, ie: InjectiveEquivalence,
           cl: IsofibrationCleavage) -> One:
    """The canonical diagonal: lift the bottom leg along the connecting
    cell of the equivalence, then take the chosen cleavage lift."""
    k = cl.cat
    if ie.i != square.i or cl.p != square.p:
        raise StructureError("certificates do not match the square")
    if k.compose1[(square.p, square.f)] != k.compose1[(square.g, square.i)]:
        raise StructureError("square does not commute")
    fk = k.compose1[(square.f, ie.retraction)]
    gtheta = k.lwhisk[(square.g, ie.theta)]
    entry = cl.cleavage.get((fk, square.g, gtheta))
    if entry is None:
        raise StructureError("cleavage does not cover the induced instance")
    return entry[0]


def filler_solutions(square: LiftingSquare,
                     cat: Finite2Category) -> tuple[One, ...]:
    """All 1-cells satisfying both triangle identities (search oracle)."""
    k = cat
    y = k.one_src[square.g]
    e = k.one_src[square.p]
    return tuple(j for j in k.homs(y, e)
                 if k.compose1[(square.p, j)] == square.g
                 and k.compose1[(j, square.i)] == square.f)


@dataclass(frozen=True)
class TransportedProblem:
    """A lifting problem together with its image under a reindexing, for
    the stability check: the function maps original cells to transported
    ones."""

    original: LiftingSquare
    original_ie: InjectiveEquivalence
    original_cl: IsofibrationCleavage
    transported: LiftingSquare
    transported_ie: InjectiveEquivalence
    transported_cl: IsofibrationCleavage
    transport_one: Callable[[One], One]


def pullback_filler_stability(problem: TransportedProblem) -> bool:
    """True iff transporting the canonical filler equals the canonical
    filler of the transported problem."""
    j = filler(problem.original, problem.original_ie, problem.original_cl)
    j2 = filler(problem.transported, problem.transported_ie,
                problem.transported_cl)
    return problem.transport_one(j) == j2


def reports_to_json(reports: list[Report]) -> str:
    return json.dumps({"reports": [r.to_json() for r in reports]},
                      indent=2, sort_keys=True)
