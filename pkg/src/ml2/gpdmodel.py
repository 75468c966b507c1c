"""Finite-groupoid semantics for the two-dimensional kernel.

The model lives in the 2-category of finite groupoids: contexts are finite
groupoids, dependent types are split families of groupoids (a fiber per
object, a strictly functorial transport per morphism), and terms are
sections of the projection out of the total groupoid of a family.  All
structure is strict/split by representation; every universal property is
certified by explicit data and verified exhaustively within size bounds
through the generic machinery in :mod:`ml2.twocat`.
"""

from __future__ import annotations

import functools
import hashlib
import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Iterable, Mapping

from .twocat import (
    Failure, Report, Finite2Category, TwoFunctor, build_two_category,
    StructureError,
)

MAX_BASE_OBJECTS = 4
MAX_FIBER_OBJECTS = 3
MAX_HOM_SIZE = 4
MAX_SECTION_CANDIDATES = 100_000
MAX_SLICE_ONE_CELLS = 64


class ResourceError(Exception):
    """Raised when an enumeration would exceed the configured bounds; the
    message carries a size report."""


def _pairs(d: Mapping) -> tuple:
    return tuple(sorted(d.items(), key=repr))


def _cache_hash_and_repr(cls):
    """Memoize ``__hash__`` and shorten ``__repr__`` on a frozen dataclass.

    The tokens here nest deeply (section objects are whole functors), so
    recomputing hashes on every dict lookup dominates the runtime, and the
    default recursive reprs grow multiplicatively with nesting depth.  The
    replacement repr is a fixed-size content digest: it is deterministic
    across processes (unlike ``id``-based reprs), usable as a sort key for
    canonical orderings, and keeps reprs of tuples that embed these values
    bounded."""
    plain_hash = cls.__hash__
    fields = tuple(cls.__dataclass_fields__)

    def __hash__(self):
        h = self.__dict__.get("_hash_memo")
        if h is None:
            h = plain_hash(self)
            object.__setattr__(self, "_hash_memo", h)
        return h

    def __repr__(self):
        r = self.__dict__.get("_repr_memo")
        if r is None:
            digest = hashlib.sha1()
            for name in fields:
                digest.update(repr(getattr(self, name)).encode())
                digest.update(b"\x00")
            r = f"{cls.__name__}<{digest.hexdigest()[:20]}>"
            object.__setattr__(self, "_repr_memo", r)
        return r

    cls.__hash__ = __hash__
    cls.__repr__ = __repr__
    return cls


@dataclass(frozen=True)
class FiniteGroupoid:
    """A finite groupoid given by explicit tables (stored as sorted pair
    tuples so values are hashable and comparable)."""

    objects: tuple
    morphisms: tuple
    src_pairs: tuple
    tgt_pairs: tuple
    comp_pairs: tuple  # ((g, f), g . f) for tgt(f) == src(g)
    id_pairs: tuple
    inv_pairs: tuple

    @cached_property
    def src(self) -> dict:
        return dict(self.src_pairs)

    @cached_property
    def tgt(self) -> dict:
        return dict(self.tgt_pairs)

    @cached_property
    def comp(self) -> dict:
        return dict(self.comp_pairs)

    @cached_property
    def ids(self) -> dict:
        return dict(self.id_pairs)

    @cached_property
    def inv(self) -> dict:
        return dict(self.inv_pairs)

    def hom(self, a, b) -> tuple:
        return tuple(m for m in self.morphisms
                     if self.src[m] == a and self.tgt[m] == b)

    def compose(self, g, f):
        return self.comp[(g, f)]


def groupoid(objects: Iterable, src: Mapping, tgt: Mapping, comp: Mapping,
             ids: Mapping, inv: Mapping) -> FiniteGroupoid:
    morphisms = tuple(sorted(src, key=repr))
    return FiniteGroupoid(tuple(objects), morphisms, _pairs(src), _pairs(tgt),
                          _pairs(comp), _pairs(ids), _pairs(inv))


def check_groupoid(g: FiniteGroupoid) -> Report:
    """The groupoid axioms: sources/targets of composites and identities,
    associativity, unit laws, and two-sided inverses."""
    failures: list[Failure] = []
    checked = 0

    def fail(clause, *w):
        failures.append(Failure(clause, w))

    for a in g.objects:
        checked += 1
        i = g.ids.get(a)
        if i is None or g.src.get(i) != a or g.tgt.get(i) != a:
            fail("identity-endpoints", a)
    for m in g.morphisms:
        checked += 1
        a, b = g.src[m], g.tgt[m]
        if g.comp.get((m, g.ids[a])) != m or g.comp.get((g.ids[b], m)) != m:
            fail("unit-law", m)
        mi = g.inv.get(m)
        if mi is None or g.comp.get((mi, m)) != g.ids[a] \
                or g.comp.get((m, mi)) != g.ids[b]:
            fail("inverse-law", m)
    for f in g.morphisms:
        for h in g.morphisms:
            if g.tgt[f] != g.src[h]:
                continue
            checked += 1
            hf = g.comp.get((h, f))
            if hf is None or g.src.get(hf) != g.src[f] \
                    or g.tgt.get(hf) != g.tgt[h]:
                fail("composite-endpoints", f, h)
                continue
            for e in g.morphisms:
                if g.src[e] != g.tgt[h]:
                    continue
                checked += 1
                if g.comp[(e, hf)] != g.comp[(g.comp[(e, h)], f)]:
                    fail("associativity", f, h, e)
    return Report("groupoid", checked, tuple(failures))


def point_groupoid() -> FiniteGroupoid:
    return discrete_groupoid(("pt",))


def discrete_groupoid(labels: Iterable) -> FiniteGroupoid:
    labels = tuple(labels)
    ids = {a: ("id", a) for a in labels}
    src = {ids[a]: a for a in labels}
    comp = {(ids[a], ids[a]): ids[a] for a in labels}
    return groupoid(labels, src, dict(src), comp, ids,
                    {ids[a]: ids[a] for a in labels})


def walking_iso() -> FiniteGroupoid:
    """Two objects, one isomorphism between them (all homs singletons)."""
    objs = (0, 1)
    ms = {(a, b): ("w", a, b) for a in objs for b in objs}
    src = {m: a for (a, b), m in ms.items()}
    tgt = {m: b for (a, b), m in ms.items()}
    comp = {(ms[(b, c)], ms[(a, b2)]): ms[(a, c)]
            for a in objs for b in objs for b2 in objs for c in objs
            if b == b2}
    ids = {a: ms[(a, a)] for a in objs}
    inv = {ms[(a, b)]: ms[(b, a)] for a in objs for b in objs}
    return groupoid(objs, src, tgt, comp, ids, inv)


def cyclic_groupoid(n: int) -> FiniteGroupoid:
    """One object with the cyclic group of order ``n`` as automorphisms."""
    ms = {("z", i) for i in range(n)}
    src = {m: "o" for m in ms}
    comp = {(("z", i), ("z", j)): ("z", (i + j) % n)
            for i in range(n) for j in range(n)}
    ids = {"o": ("z", 0)}
    inv = {("z", i): ("z", (-i) % n) for i in range(n)}
    return groupoid(("o",), src, dict(src), comp, ids, inv)


@dataclass(frozen=True)
class GroupoidFunctor:
    source: FiniteGroupoid
    target: FiniteGroupoid
    obj_pairs: tuple
    mor_pairs: tuple

    @cached_property
    def on_obj(self) -> dict:
        return dict(self.obj_pairs)

    @cached_property
    def on_mor(self) -> dict:
        return dict(self.mor_pairs)

    def obj(self, a):
        return self.on_obj[a]

    def mor(self, m):
        return self.on_mor[m]


def functor(source: FiniteGroupoid, target: FiniteGroupoid,
            on_obj: Mapping, on_mor: Mapping) -> GroupoidFunctor:
    return GroupoidFunctor(source, target, _pairs(on_obj), _pairs(on_mor))


def functor_by(source: FiniteGroupoid, target: FiniteGroupoid,
               obj_fn: Callable, mor_fn: Callable) -> GroupoidFunctor:
    return functor(source, target,
                   {a: obj_fn(a) for a in source.objects},
                   {m: mor_fn(m) for m in source.morphisms})


def check_functor(f: GroupoidFunctor) -> Report:
    failures: list[Failure] = []
    checked = 0
    g, h = f.source, f.target
    for a in g.objects:
        checked += 1
        if f.on_obj.get(a) not in h.objects:
            failures.append(Failure("object-image", (a,)))
        elif f.on_mor.get(g.ids[a]) != h.ids[f.obj(a)]:
            failures.append(Failure("preserves-identity", (a,)))
    for m in g.morphisms:
        checked += 1
        fm = f.on_mor.get(m)
        if fm is None or h.src.get(fm) != f.obj(g.src[m]) \
                or h.tgt.get(fm) != f.obj(g.tgt[m]):
            failures.append(Failure("morphism-endpoints", (m,)))
    for m in g.morphisms:
        for m2 in g.morphisms:
            if g.tgt[m] != g.src[m2]:
                continue
            checked += 1
            if f.on_mor.get(g.comp[(m2, m)]) != \
                    h.comp.get((f.on_mor.get(m2), f.on_mor.get(m))):
                failures.append(Failure("preserves-composition", (m, m2)))
    return Report("functor", checked, tuple(failures))


def identity_functor(g: FiniteGroupoid) -> GroupoidFunctor:
    return functor_by(g, g, lambda a: a, lambda m: m)


@functools.lru_cache(maxsize=None)
def compose_functors(g: GroupoidFunctor, f: GroupoidFunctor
                     ) -> GroupoidFunctor:
    return functor_by(f.source, g.target,
                      lambda a: g.obj(f.obj(a)), lambda m: g.mor(f.mor(m)))


@dataclass(frozen=True)
class NatIso:
    """A natural transformation between parallel functors (automatically
    invertible since the target is a groupoid)."""

    f: GroupoidFunctor
    g: GroupoidFunctor
    component_pairs: tuple

    @cached_property
    def components(self) -> dict:
        return dict(self.component_pairs)

    def at(self, a):
        return self.components[a]


def nat_iso(f: GroupoidFunctor, g: GroupoidFunctor,
            components: Mapping) -> NatIso:
    return NatIso(f, g, _pairs(components))


def check_nat_iso(n: NatIso) -> Report:
    failures: list[Failure] = []
    checked = 0
    h = n.f.target
    for a in n.f.source.objects:
        checked += 1
        c = n.components.get(a)
        if c is None or h.src.get(c) != n.f.obj(a) \
                or h.tgt.get(c) != n.g.obj(a):
            failures.append(Failure("component-endpoints", (a,)))
    if failures:
        return Report("nat-iso", checked, tuple(failures))
    for m in n.f.source.morphisms:
        checked += 1
        a, b = n.f.source.src[m], n.f.source.tgt[m]
        if h.comp[(n.at(b), n.f.mor(m))] != h.comp[(n.g.mor(m), n.at(a))]:
            failures.append(Failure("naturality", (m,)))
    return Report("nat-iso", checked, tuple(failures))


def identity_nat(f: GroupoidFunctor) -> NatIso:
    return nat_iso(f, f, {a: f.target.ids[f.obj(a)]
                          for a in f.source.objects})


def vcomp_nat(b: NatIso, a: NatIso) -> NatIso:
    h = a.f.target
    return nat_iso(a.f, b.g, {x: h.comp[(b.at(x), a.at(x))]
                              for x in a.f.source.objects})


def inv_nat(a: NatIso) -> NatIso:
    h = a.f.target
    return nat_iso(a.g, a.f, {x: h.inv[a.at(x)]
                              for x in a.f.source.objects})


def whisker_functor_nat(h: GroupoidFunctor, a: NatIso) -> NatIso:
    return nat_iso(compose_functors(h, a.f), compose_functors(h, a.g),
                   {x: h.mor(a.at(x)) for x in a.f.source.objects})


def whisker_nat_functor(a: NatIso, k: GroupoidFunctor) -> NatIso:
    return nat_iso(compose_functors(a.f, k), compose_functors(a.g, k),
                   {x: a.at(k.obj(x)) for x in k.source.objects})


# ---------------------------------------------------------------------------
# Enumeration


def _generating_morphisms(g: FiniteGroupoid) -> tuple:
    """A small set of morphisms generating ``g`` under composition and
    inverses (greedy)."""
    closure = {g.ids[a] for a in g.objects}
    gens = []

    def close():
        changed = True
        while changed:
            changed = False
            for m in tuple(closure):
                if g.inv[m] not in closure:
                    closure.add(g.inv[m])
                    changed = True
                for m2 in tuple(closure):
                    if g.tgt[m] == g.src[m2]:
                        c = g.comp[(m2, m)]
                        if c not in closure:
                            closure.add(c)
                            changed = True

    for m in g.morphisms:
        if m not in closure:
            gens.append(m)
            closure.add(m)
            close()
    return tuple(gens)


def all_functors(g: FiniteGroupoid, h: FiniteGroupoid,
                 obj_candidates: Callable | None = None,
                 mor_candidates: Callable | None = None
                 ) -> tuple[GroupoidFunctor, ...]:
    """All functors from ``g`` to ``h``, optionally constrained (used for
    enumerating 1-cells over a fixed base).  Enumerates images only on a
    generating set and propagates to the rest.  Deterministic order."""
    if obj_candidates is None:
        obj_candidates = lambda a: h.objects
    if mor_candidates is None:
        mor_candidates = lambda m, x, y: h.hom(x, y)
    gens = _generating_morphisms(g)
    out = []
    for obj_choice in itertools.product(
            *(tuple(obj_candidates(a)) for a in g.objects)):
        on_obj = dict(zip(g.objects, obj_choice))
        pools = [tuple(mor_candidates(m, on_obj[g.src[m]],
                                      on_obj[g.tgt[m]]))
                 for m in gens]
        if any(not p for p in pools):
            continue
        for mor_choice in itertools.product(*pools):
            on_mor = {g.ids[a]: h.ids[on_obj[a]] for a in g.objects}
            on_mor.update(zip(gens, mor_choice))
            # propagate along inverses and composites until saturation
            ok = True
            changed = True
            while ok and changed and len(on_mor) < len(g.morphisms):
                changed = False
                for m in tuple(on_mor):
                    mi = g.inv[m]
                    im = h.inv[on_mor[m]]
                    if mi not in on_mor:
                        on_mor[mi] = im
                        changed = True
                    elif on_mor[mi] != im:
                        ok = False
                        break
                    for m2 in tuple(on_mor):
                        if g.tgt[m] != g.src[m2]:
                            continue
                        c = g.comp[(m2, m)]
                        ic = h.comp[(on_mor[m2], on_mor[m])]
                        if c not in on_mor:
                            on_mor[c] = ic
                            changed = True
                        elif on_mor[c] != ic:
                            ok = False
                            break
                    if not ok:
                        break
            if not ok or len(on_mor) < len(g.morphisms):
                continue
            if any(h.src[on_mor[m]] != on_obj[g.src[m]]
                   or h.tgt[on_mor[m]] != on_obj[g.tgt[m]]
                   for m in g.morphisms):
                continue
            if all(on_mor[g.comp[(m2, m)]] ==
                   h.comp[(on_mor[m2], on_mor[m])]
                   for m in g.morphisms for m2 in g.morphisms
                   if g.tgt[m] == g.src[m2]):
                out.append(functor(g, h, on_obj, on_mor))
    return tuple(out)


def all_nat_isos(f: GroupoidFunctor, g: GroupoidFunctor,
                 component_candidates: Callable | None = None
                 ) -> tuple[NatIso, ...]:
    h = f.target
    if component_candidates is None:
        component_candidates = lambda a: h.hom(f.obj(a), g.obj(a))
    out = []
    pools = [tuple(component_candidates(a)) for a in f.source.objects]
    for choice in itertools.product(*pools):
        cand = nat_iso(f, g, dict(zip(f.source.objects, choice)))
        if check_nat_iso(cand).passed:
            out.append(cand)
    return tuple(out)


# ---------------------------------------------------------------------------
# Split families, comprehension, reindexing


@dataclass(frozen=True)
class GroupoidFamily:
    """A split family: a fiber groupoid per base object and a strictly
    functorial transport functor per base morphism."""

    base: FiniteGroupoid
    fiber_pairs: tuple
    transport_pairs: tuple

    @cached_property
    def fibers(self) -> dict:
        return dict(self.fiber_pairs)

    @cached_property
    def transports(self) -> dict:
        return dict(self.transport_pairs)

    def fiber(self, a) -> FiniteGroupoid:
        return self.fibers[a]

    def transport(self, m) -> GroupoidFunctor:
        return self.transports[m]


def family(base: FiniteGroupoid, fibers: Mapping,
           transports: Mapping) -> GroupoidFamily:
    return GroupoidFamily(base, _pairs(fibers), _pairs(transports))


def family_by(base: FiniteGroupoid, fiber_fn: Callable,
              transport_fn: Callable) -> GroupoidFamily:
    return family(base, {a: fiber_fn(a) for a in base.objects},
                  {m: transport_fn(m) for m in base.morphisms})


def check_family(fam: GroupoidFamily) -> Report:
    """Fibers are groupoids, transports are functors between the right
    fibers, and transport is split: identities and composites on the nose."""
    failures: list[Failure] = []
    checked = 0
    g = fam.base
    for a in g.objects:
        checked += 1
        rep = check_groupoid(fam.fiber(a))
        if not rep.passed:
            failures.append(Failure("fiber-not-groupoid", (a, rep.failures)))
    for m in g.morphisms:
        checked += 1
        t = fam.transport(m)
        if t.source != fam.fiber(g.src[m]) or t.target != fam.fiber(g.tgt[m]):
            failures.append(Failure("transport-endpoints", (m,)))
            continue
        rep = check_functor(t)
        if not rep.passed:
            failures.append(Failure("transport-not-functor",
                                    (m, rep.failures)))
    for a in g.objects:
        checked += 1
        if fam.transport(g.ids[a]) != identity_functor(fam.fiber(a)):
            failures.append(Failure("split-identity", (a,)))
    for m in g.morphisms:
        for m2 in g.morphisms:
            if g.tgt[m] != g.src[m2]:
                continue
            checked += 1
            if fam.transport(g.comp[(m2, m)]) != compose_functors(
                    fam.transport(m2), fam.transport(m)):
                failures.append(Failure("split-composition", (m, m2)))
    return Report("family", checked, tuple(failures))


@functools.lru_cache(maxsize=None)
def constant_family(base: FiniteGroupoid,
                    fiber: FiniteGroupoid) -> GroupoidFamily:
    ident = identity_functor(fiber)
    return family_by(base, lambda a: fiber, lambda m: ident)


@dataclass(frozen=True)
class Comprehension:
    """The total groupoid of a family with its strict projection.

    Objects are pairs ``(a, x)`` with ``x`` in the fiber over ``a``;
    morphisms are pairs ``(m, phi)`` with ``phi : transport_m(x) -> x'``.
    """

    fam: GroupoidFamily
    total: FiniteGroupoid
    proj: GroupoidFunctor


for _cls in (FiniteGroupoid, GroupoidFunctor, NatIso, GroupoidFamily,
             Comprehension):
    _cache_hash_and_repr(_cls)
del _cls


@functools.lru_cache(maxsize=None)
def comprehension(fam: GroupoidFamily) -> Comprehension:
    g = fam.base
    objects = tuple((a, x) for a in g.objects
                    for x in fam.fiber(a).objects)
    src: dict = {}
    tgt: dict = {}
    for m in g.morphisms:
        a, b = g.src[m], g.tgt[m]
        t = fam.transport(m)
        fb = fam.fiber(b)
        for x in fam.fiber(a).objects:
            for phi in fb.morphisms:
                if fb.src[phi] != t.obj(x):
                    continue
                mm = (m, x, phi)
                src[mm] = (a, x)
                tgt[mm] = (b, fb.tgt[phi])
    comp: dict = {}
    for m1 in src:
        for m2 in src:
            if tgt[m1] != src[m2]:
                continue
            f, x, phi = m1
            gm, _, psi = m2
            gf = g.comp[(gm, f)]
            fc = fam.fiber(g.tgt[gm])
            comp[(m2, m1)] = (gf, x,
                              fc.comp[(psi, fam.transport(gm).mor(phi))])
    ids = {}
    inv = {}
    for (a, x) in objects:
        ids[(a, x)] = (g.ids[a], x, fam.fiber(a).ids[x])
    for m1, (a, x) in src.items():
        f, _, phi = m1
        b = g.tgt[f]
        fi = g.inv[f]
        fa = fam.fiber(a)
        # the fiber component of the inverse: transport the inverted
        # component back along the inverted base morphism
        phi_inv = fam.fiber(b).inv[phi]
        inv[m1] = (fi, tgt[m1][1], fam.transport(fi).mor(phi_inv))
    total = groupoid(objects, src, tgt, comp, ids, inv)
    proj = functor_by(total, g, lambda o: o[0], lambda m: m[0])
    return Comprehension(fam, total, proj)


@functools.lru_cache(maxsize=None)
def reindex(fam: GroupoidFamily, f: GroupoidFunctor) -> GroupoidFamily:
    """The strict composite family over the source of ``f``."""
    if f.target != fam.base:
        raise StructureError("reindexing functor does not land in the base")
    return family_by(f.source, lambda a: fam.fiber(f.obj(a)),
                     lambda m: fam.transport(f.mor(m)))


def section_functor(comp: Comprehension, obj_fn: Callable,
                    mor_fn: Callable) -> GroupoidFunctor:
    """A section of the projection: base object ``a`` goes to
    ``(a, obj_fn(a))``, base morphism ``m`` to ``(m, ..., mor_fn(m))``."""
    g = comp.fam.base
    return functor_by(g, comp.total,
                      lambda a: (a, obj_fn(a)),
                      lambda m: (m, obj_fn(g.src[m]), mor_fn(m)))


def cleavage_lift(comp: Comprehension, target: GroupoidFunctor,
                  base: GroupoidFunctor, alpha: NatIso
                  ) -> tuple[GroupoidFunctor, NatIso]:
    """The canonical lifting of an invertible 2-cell through the
    projection: given ``target : X -> total``, ``base : X -> Gamma`` and
    ``alpha : base => proj . target``, the chosen lift ``(s, sigma)`` with
    ``proj . s = base`` and ``proj . sigma = alpha``."""
    fam = comp.fam
    gb = fam.base

    def s_obj(x):
        a = base.obj(x)
        _, y = target.obj(x)
        return (a, fam.transport(gb.inv[alpha.at(x)]).obj(y))

    def s_mor(m):
        x0, x1 = target.source.src[m], target.source.tgt[m]
        _, _, phi = target.mor(m)
        # conjugate the fiber component back along the components of alpha
        chi = fam.transport(gb.inv[alpha.at(x1)]).mor(phi)
        return (base.mor(m), s_obj(x0)[1], chi)

    s = functor_by(target.source, comp.total, s_obj, s_mor)
    sigma = nat_iso(s, target,
                    {x: (alpha.at(x), s_obj(x)[1],
                         fam.fiber(gb.tgt[alpha.at(x)]).ids[
                             target.obj(x)[1]])
                     for x in target.source.objects})
    return s, sigma


# ---------------------------------------------------------------------------
# Slice 2-categories of groupoids over a base


def slice_two_category(projections: Iterable[GroupoidFunctor]
                       ) -> Finite2Category:
    """The 2-category whose objects are the given functors into a common
    base, 1-cells are strict triangles, and 2-cells are natural
    isomorphisms projecting to the identity (vertical over the base)."""
    projs = tuple(projections)
    base = projs[0].target
    if any(p.target != base for p in projs):
        raise StructureError("slice objects must share the base")

    def one_cells_fn(xp, yp):
        out = []
        for f in all_functors(
                xp.source, yp.source,
                obj_candidates=lambda a, xp=xp, yp=yp: tuple(
                    o for o in yp.source.objects
                    if yp.obj(o) == xp.obj(a)),
                mor_candidates=lambda m, x, y, xp=xp, yp=yp: tuple(
                    mm for mm in yp.source.morphisms
                    if yp.source.src[mm] == x and yp.source.tgt[mm] == y
                    and yp.mor(mm) == xp.mor(m))):
            out.append((xp, yp, f))
            if len(out) > MAX_SLICE_ONE_CELLS:
                raise ResourceError(
                    f"slice hom exceeds {MAX_SLICE_ONE_CELLS} one-cells; "
                    "pick smaller fibres or bases")
        return tuple(out)

    def two_cells_fn(fc, gc):
        xp, yp, f = fc
        _, _, g = gc
        return tuple((fc, gc, n) for n in all_nat_isos(
            f, g, component_candidates=lambda a: tuple(
                m for m in yp.source.hom(f.obj(a), g.obj(a))
                if yp.mor(m) == base.ids[xp.obj(a)])))

    def compose1_fn(gc, fc):
        return (fc[0], gc[1], compose_functors(gc[2], fc[2]))

    def id1_fn(xp):
        return (xp, xp, identity_functor(xp.source))

    def vcomp_fn(dc, cc):
        return (cc[0], dc[1], vcomp_nat(dc[2], cc[2]))

    def id2_fn(fc):
        return (fc, fc, identity_nat(fc[2]))

    def inv2_fn(cc):
        return (cc[1], cc[0], inv_nat(cc[2]))

    def lwhisk_fn(hc, cc):
        fc, gc, n = cc
        return (compose1_fn(hc, fc), compose1_fn(hc, gc),
                whisker_functor_nat(hc[2], n))

    def rwhisk_fn(cc, kc):
        fc, gc, n = cc
        return (compose1_fn(fc, kc), compose1_fn(gc, kc),
                whisker_nat_functor(n, kc[2]))

    return build_two_category(projs, one_cells_fn, two_cells_fn,
                              compose1_fn, id1_fn, vcomp_fn, id2_fn,
                              inv2_fn, lwhisk_fn, rwhisk_fn)


# ---------------------------------------------------------------------------
# Type formers


@functools.lru_cache(maxsize=None)
def unit_family(base: FiniteGroupoid) -> GroupoidFamily:
    """Singleton fibers over every object."""
    return constant_family(base, point_groupoid())


@functools.lru_cache(maxsize=None)
def restrict_to_fiber(b: GroupoidFamily, comp_a: Comprehension,
                      gamma_obj) -> GroupoidFamily:
    """Restrict a family over the total of ``comp_a`` to the fiber over a
    single base object: a family over that fiber groupoid."""
    fam_a = comp_a.fam
    g = fam_a.base
    fiber_a = fam_a.fiber(gamma_obj)
    ident = g.ids[gamma_obj]
    return family_by(
        fiber_a,
        lambda a: b.fiber((gamma_obj, a)),
        lambda phi: b.transport((ident, fiber_a.src[phi], phi)))


def _transport_mor(g: FiniteGroupoid, u, a_obj, fam_a: GroupoidFamily):
    """The cartesian morphism (u, id) of the comprehension total: from
    (src u, a) to (tgt u, transport_u a)."""
    t = fam_a.transport(u)
    return (u, a_obj, fam_a.fiber(g.tgt[u]).ids[t.obj(a_obj)])


@functools.lru_cache(maxsize=None)
def sigma_family(a: GroupoidFamily, b: GroupoidFamily) -> GroupoidFamily:
    """Fiberwise Grothendieck construction: the fiber over gamma is the
    total groupoid of ``b`` restricted to the fiber of ``a`` at gamma."""
    g = a.base
    comp_a = comprehension(a)
    if b.base != comp_a.total:
        raise StructureError("second family must live over the total of "
                             "the first")
    fibers = {go: comprehension(restrict_to_fiber(b, comp_a, go)).total
              for go in g.objects}

    def transport_fn(u):
        src_g, tgt_g = g.src[u], g.tgt[u]
        ta = a.transport(u)

        def obj_fn(pair):
            ao, bo = pair
            return (ta.obj(ao), b.transport(
                _transport_mor(g, u, ao, a)).obj(bo))

        def mor_fn(m):
            phi, bo, psi = m
            a1 = a.fiber(src_g).tgt[phi]
            return (ta.mor(phi), b.transport(
                _transport_mor(g, u, a.fiber(src_g).src[phi], a)).obj(bo),
                b.transport(_transport_mor(g, u, a1, a)).mor(psi))

        return functor_by(fibers[src_g], fibers[tgt_g], obj_fn, mor_fn)

    return family(g, fibers, {u: transport_fn(u) for u in g.morphisms})


@functools.lru_cache(maxsize=None)
def _section_groupoid(restr: GroupoidFamily) -> FiniteGroupoid:
    """The groupoid of strictly functorial sections of a family: objects
    are section functors into the comprehension total, morphisms are
    vertical natural isomorphisms (modifications)."""
    comp_r = comprehension(restr)
    base = restr.base
    count = 1
    for ao in base.objects:
        count *= max(1, len(restr.fiber(ao).objects))
        if count > MAX_SECTION_CANDIDATES:
            raise ResourceError(
                f"section enumeration over {len(base.objects)} objects "
                f"exceeds the cap of {MAX_SECTION_CANDIDATES} candidates")
    sections = all_functors(
        base, comp_r.total,
        obj_candidates=lambda ao: tuple(
            (ao, x) for x in restr.fiber(ao).objects),
        mor_candidates=lambda m, x, y: tuple(
            mm for mm in comp_r.total.morphisms
            if comp_r.total.src[mm] == x and comp_r.total.tgt[mm] == y
            and mm[0] == m))
    src: dict = {}
    tgt: dict = {}
    for s in sections:
        for t in sections:
            for n in all_nat_isos(
                    s, t, component_candidates=lambda ao, s=s, t=t: tuple(
                        m for m in comp_r.total.hom(s.obj(ao), t.obj(ao))
                        if m[0] == base.ids[ao])):
                src[n] = s
                tgt[n] = t
    comp = {}
    for n1 in src:
        for n2 in src:
            if tgt[n1] != src[n2]:
                continue
            comp[(n2, n1)] = vcomp_nat(n2, n1)
    ids = {s: identity_nat(s) for s in sections}
    inv = {n: inv_nat(n) for n in src}
    return groupoid(sections, src, tgt, comp, ids, inv)


@functools.lru_cache(maxsize=None)
def pi_family(a: GroupoidFamily, b: GroupoidFamily) -> GroupoidFamily:
    """The fiber over gamma is the groupoid of strictly functorial
    sections of ``b`` over the fiber of ``a``; transport conjugates a
    section by the (invertible) transports of ``a`` and ``b``."""
    g = a.base
    comp_a = comprehension(a)
    if b.base != comp_a.total:
        raise StructureError("second family must live over the total of "
                             "the first")
    restrictions = {go: restrict_to_fiber(b, comp_a, go)
                    for go in g.objects}
    fibers = {go: _section_groupoid(restrictions[go]) for go in g.objects}
    totals = {go: comprehension(restrictions[go]).total for go in g.objects}

    def transport_fn(u):
        src_g, tgt_g = g.src[u], g.tgt[u]
        ta = a.transport(u)
        ta_inv = a.transport(g.inv[u])
        fa_t = a.fiber(tgt_g)

        def move_section(s: GroupoidFunctor) -> GroupoidFunctor:
            def obj_fn(a1):
                a0 = ta_inv.obj(a1)
                return (a1, b.transport(_transport_mor(g, u, a0, a)).obj(
                    s.obj(a0)[1]))

            def mor_fn(phi1):
                a1 = fa_t.tgt[phi1]
                phi0 = ta_inv.mor(phi1)
                _, x0, chi = s.mor(phi0)
                return (phi1, obj_fn(fa_t.src[phi1])[1],
                        b.transport(_transport_mor(g, u, ta_inv.obj(a1),
                                                   a)).mor(chi))

            return functor_by(fa_t, totals[tgt_g], obj_fn, mor_fn)

        def move_mod(n: NatIso) -> NatIso:
            s2, t2 = move_section(n.f), move_section(n.g)
            comps = {}
            for a1 in fa_t.objects:
                a0 = ta_inv.obj(a1)
                _, x0, mu = n.at(a0)
                comps[a1] = (fa_t.ids[a1], s2.obj(a1)[1],
                             b.transport(_transport_mor(g, u, a0, a)).mor(
                                 mu))
            return nat_iso(s2, t2, comps)

        return functor_by(fibers[src_g], fibers[tgt_g],
                          move_section, move_mod)

    return family(g, fibers, {u: transport_fn(u) for u in g.morphisms})


@functools.lru_cache(maxsize=None)
def id_family(a: GroupoidFamily) -> tuple[GroupoidFamily, Comprehension,
                                          Comprehension]:
    """The identity family over the doubled context: discrete fibers on
    hom-sets.  Returns the family together with the comprehensions of the
    single and doubled context for reuse."""
    g = a.base
    comp_a = comprehension(a)
    a2 = reindex(a, comp_a.proj)
    comp_aa = comprehension(a2)

    def fiber_fn(o):
        (go, x), y = o
        return discrete_groupoid(a.fiber(go).hom(x, y))

    def transport_fn(m):
        (u, x, phi), y, psi = m
        (go, _), _ = comp_aa.total.src[m]
        (go2, _), _ = comp_aa.total.tgt[m]
        fib2 = a.fiber(go2)
        tu = a.transport(u)

        def obj_fn(p):
            return fib2.comp[(fib2.comp[(psi, tu.mor(p))], fib2.inv[phi])]

        src_f = fiber_fn(comp_aa.total.src[m])
        tgt_f = fiber_fn(comp_aa.total.tgt[m])
        return functor_by(src_f, tgt_f, obj_fn,
                          lambda mm: tgt_f.ids[obj_fn(src_f.src[mm])])

    fam = family_by(comp_aa.total, fiber_fn, transport_fn)
    return fam, comp_a, comp_aa


# ---------------------------------------------------------------------------
# Slice cells and structure certificates

from .twocat import (  # noqa: E402
    IsofibrationCleavage, InjectiveEquivalence, ArrowObjectCert,
    BireflectionCert, BicoreflectionCert,
)


def projection_cleavage(comp_: Comprehension, cat: Finite2Category,
                        src_token, tgt_token) -> IsofibrationCleavage:
    """The canonical cleavage of a comprehension projection, packaged for
    the generic verifier: every lifting instance expressible in the
    ambient slice 2-category is covered by :func:`cleavage_lift`."""
    p_cell = (src_token, tgt_token, comp_.proj)
    cleavage = {}
    for xp in cat.objects:
        for gc in cat.homs(xp, src_token):
            pg = cat.compose1[(p_cell, gc)]
            for fc in cat.homs(xp, tgt_token):
                for ac in cat.cells(fc, pg):
                    s, sigma = cleavage_lift(comp_, gc[2], fc[2], ac[2])
                    sc = (xp, src_token, s)
                    cleavage[(gc, fc, ac)] = (sc, (sc, gc, sigma))
    return IsofibrationCleavage(cat, p_cell, cleavage)


def id_arrow_cert(a: GroupoidFamily, probes: tuple = ()
                  ) -> tuple[Finite2Category, ArrowObjectCert]:
    """The identity family classifies 2-cells: its total with the two
    projections is an arrow object in the slice over the base."""
    idf, ca, caa = id_family(a)
    cid = comprehension(idf)
    gamma = a.base
    pi_a = ca.proj
    q_aa = compose_functors(pi_a, caa.proj)
    q_id = compose_functors(q_aa, cid.proj)

    def s_obj(o):
        ((go, x), y), p = o
        return (go, x)

    def s_mor(m):
        ((u, x, phi), y, chi), p, _ = m
        return (u, x, phi)

    def t_obj(o):
        ((go, x), y), p = o
        return (go, y)

    def t_mor(m):
        ((u, x, phi), y, chi), p, _ = m
        return (u, y, chi)

    s_f = functor_by(cid.total, ca.total, s_obj, s_mor)
    t_f = functor_by(cid.total, ca.total, t_obj, t_mor)
    kappa = nat_iso(s_f, t_f, {o: (gamma.ids[o[0][0][0]], o[0][0][1], o[1])
                               for o in cid.total.objects})
    cat = slice_two_category((identity_functor(gamma), pi_a, q_id) + probes)
    s_cell = (q_id, pi_a, s_f)
    t_cell = (q_id, pi_a, t_f)
    cert = ArrowObjectCert(cat, q_id, s_cell, t_cell,
                           (s_cell, t_cell, kappa))
    return cat, cert


def unit_section(gamma: FiniteGroupoid,
                 cu: Comprehension) -> GroupoidFunctor:
    return section_functor(cu, lambda go: "pt",
                           lambda m: point_groupoid().ids["pt"])


def unit_bireflection_cert(gamma: FiniteGroupoid,
                           probe_fams: tuple = ()
                           ) -> tuple[Finite2Category, Finite2Category,
                                      BireflectionCert]:
    """The singleton family reflects the whole base along comprehension:
    maps out of its total are determined by their restriction along the
    canonical section (semantic analogue of elimination for the one-point
    type)."""
    u_fam = unit_family(gamma)
    cu = comprehension(u_fam)
    k_objs = (cu.proj,) + tuple(comprehension(f).proj for f in probe_fams)
    id_tok = identity_functor(gamma)
    k = slice_two_category(k_objs)
    cat_l = slice_two_category((id_tok,) + k_objs)
    on_one = {c: c for cs in k.one_cells.values() for c in cs}
    on_two = {c: c for cs in k.two_cells.values() for c in cs}
    u = TwoFunctor(k, cat_l, {o: o for o in k.objects}, on_one, on_two)
    eta = (id_tok, cu.proj, unit_section(gamma, cu))
    factor = {}
    for y in k.objects:
        for fc in cat_l.homs(id_tok, y):
            # the canonical factorization precomposes with the projection
            factor[fc] = (cu.proj, y, compose_functors(fc[2], cu.proj))
    cert = BireflectionCert(u, id_tok, cu.proj, eta, factor)
    return k, cat_l, cert


def _weaken_one_cell(a: GroupoidFamily, ca: Comprehension,
                     weakened: Mapping, cell):
    """Weaken a 1-cell between family totals over the base: act as the
    identity on the new coordinate and as the original functor on the
    fiber components."""
    xp, yp, f = cell
    src_tot = weakened[xp].source
    tgt_tot = weakened[yp].source

    def obj_fn(o):
        gx, c = o
        return (gx, f.obj((gx[0], c))[1])

    def mor_fn(m):
        m_aa, c, psi = m
        u = m_aa[0]
        _, c_f, psi_f = f.mor((u, c, psi))
        return (m_aa, c_f, psi_f)

    return (weakened[xp], weakened[yp],
            functor_by(src_tot, tgt_tot, obj_fn, mor_fn))


def weakening_structures(a: GroupoidFamily, fams: tuple[GroupoidFamily, ...],
                         extra_l: tuple = ()
                         ) -> tuple[Finite2Category, Finite2Category,
                                    TwoFunctor, dict]:
    """Build the slice 2-category over the base on the given families, the
    slice over the total of ``a`` on their reindexings (plus any extra
    objects), and the strict weakening 2-functor between them."""
    ca = comprehension(a)
    k_tokens = tuple(comprehension(c).proj for c in fams)
    weakened = {comprehension(c).proj:
                comprehension(reindex(c, ca.proj)).proj for c in fams}
    k = slice_two_category(k_tokens)
    cat_l = slice_two_category(tuple(weakened.values()) + tuple(extra_l))
    on_one = {}
    on_two = {}
    for pair, cells in k.one_cells.items():
        for c in cells:
            on_one[c] = _weaken_one_cell(a, ca, weakened, c)
    for pair, cells in k.two_cells.items():
        for cell in cells:
            fc, gc, n = cell
            comps = {}
            for o in weakened[fc[0]].source.objects:
                gx, cobj = o
                _, c_f, chi = n.at((gx[0], cobj))
                comps[o] = (ca.total.ids[gx], c_f, chi)
            wf, wg = on_one[fc], on_one[gc]
            on_two[cell] = (wf, wg, nat_iso(wf[2], wg[2], comps))
    u = TwoFunctor(k, cat_l, dict(weakened), on_one, on_two)
    return k, cat_l, u, weakened


def sigma_certs(a: GroupoidFamily, b: GroupoidFamily,
                probe_fams: tuple[GroupoidFamily, ...] = ()
                ) -> tuple[Finite2Category, Finite2Category,
                           BireflectionCert, Finite2Category,
                           InjectiveEquivalence]:
    """The fiberwise total reflects the family along weakening (semantic
    analogue of the pairing/eliminator for dependent sums), and the
    pairing map into the total is an injective equivalence over the
    base."""
    sig = sigma_family(a, b)
    g = a.base
    ca = comprehension(a)
    cb = comprehension(b)
    csig = comprehension(sig)
    fams = (sig,) + tuple(probe_fams)
    k, cat_l, u, weakened = weakening_structures(
        a, fams, extra_l=(cb.proj,))
    sig_w_tok = weakened[csig.proj]

    def eta_obj(o):
        (go, x), z = o
        return ((go, x), (x, z))

    def eta_mor(m):
        (u_m, x, phi), z, psi = m
        hat = _transport_mor(g, u_m, x, a)
        return ((u_m, x, phi), (x, z),
                (phi, b.transport(hat).obj(z), psi))

    eta_f = functor_by(cb.total, sig_w_tok.source, eta_obj, eta_mor)
    eta = (cb.proj, sig_w_tok, eta_f)

    factor = {}
    for y in k.objects:
        wy = weakened[y]
        for fc in cat_l.homs(cb.proj, wy):
            f = fc[2]

            def fbar_obj(o, f=f):
                go, (x, z) = o
                return (go, f.obj(((go, x), z))[1])

            def fbar_mor(m, f=f):
                u_m, (x, z), (phi, _, psi) = m
                _, c_f, chi = f.mor(((u_m, x, phi), z, psi))
                return (u_m, f.obj(((g.src[u_m], x), z))[1], chi)

            factor[fc] = (csig.proj, y,
                          functor_by(csig.total, y.source,
                                     fbar_obj, fbar_mor))
    cert = BireflectionCert(u, cb.proj, csig.proj, eta, factor)

    # the pairing map as an injective equivalence over the base
    q_b = compose_functors(ca.proj, cb.proj)
    amb = slice_two_category((q_b, csig.proj, identity_functor(g)))

    def i_obj(o):
        (go, x), z = o
        return (go, (x, z))

    def i_mor(m):
        (u_m, x, phi), z, psi = m
        hat = _transport_mor(g, u_m, x, a)
        return (u_m, (x, z), (phi, b.transport(hat).obj(z), psi))

    def r_obj(o):
        go, (x, z) = o
        return ((go, x), z)

    def r_mor(m):
        u_m, (x, z), (phi, _, psi) = m
        return ((u_m, x, phi), z, psi)

    i_f = functor_by(cb.total, csig.total, i_obj, i_mor)
    r_f = functor_by(csig.total, cb.total, r_obj, r_mor)
    i_cell = (q_b, csig.proj, i_f)
    r_cell = (csig.proj, q_b, r_f)
    theta = (amb.id1[csig.proj], amb.compose1[(i_cell, r_cell)],
             nat_iso(identity_functor(csig.total),
                     compose_functors(i_f, r_f),
                     {o: csig.total.ids[o] for o in csig.total.objects}))
    ie = InjectiveEquivalence(amb, i_cell, r_cell, theta)
    return k, cat_l, cert, amb, ie


def pi_certs(a: GroupoidFamily, b: GroupoidFamily,
             probe_fams: tuple[GroupoidFamily, ...] = ()
             ) -> tuple[Finite2Category, Finite2Category,
                        BicoreflectionCert]:
    """The groupoid of sections coreflects the family along weakening
    (semantic analogue of abstraction/application for dependent
    products)."""
    pif = pi_family(a, b)
    g = a.base
    ca = comprehension(a)
    cb = comprehension(b)
    cpi = comprehension(pif)
    fams = (pif,) + tuple(probe_fams)
    k, cat_l, u, weakened = weakening_structures(
        a, fams, extra_l=(cb.proj,))
    pi_w_tok = weakened[cpi.proj]

    def eps_obj(o):
        (go, x), s = o
        return ((go, x), s.obj(x)[1])

    def eps_mor(m):
        (u_m, x, phi), s, nu = m
        go2 = g.tgt[u_m]
        x2 = a.fiber(go2).tgt[phi]
        t = pif.transport(u_m).obj(s)
        _, _, chi_t = t.mor(phi)
        _, _, mu = nu.at(x2)
        fib = b.fiber((go2, x2))
        return ((u_m, x, phi), s.obj(x)[1], fib.comp[(mu, chi_t)])

    eps_f = functor_by(pi_w_tok.source, cb.total, eps_obj, eps_mor)
    eps = (pi_w_tok, cb.proj, eps_f)

    factor = {}
    for y in k.objects:
        wy = weakened[y]
        for fc in cat_l.homs(wy, cb.proj):
            f = fc[2]

            def section_at(go, c, f=f, y=y):
                fib_a = a.fiber(go)
                restr_total = comprehension(
                    restrict_to_fiber(b, ca, go)).total
                c_id = y.source.ids[(go, c)][2]

                def s_obj(x):
                    return (x, f.obj(((go, x), c))[1])

                def s_mor(phi):
                    x = fib_a.src[phi]
                    _, _, psi = f.mor(((g.ids[go], x, phi), c, c_id))
                    return (phi, s_obj(x)[1], psi)

                return functor_by(fib_a, restr_total, s_obj, s_mor)

            def fbar_obj(o, f=f):
                go, c = o
                return (go, section_at(go, c))

            def fbar_mor(m, f=f):
                u_m, c, chi = m
                go, go2 = g.src[u_m], g.tgt[u_m]
                s = section_at(go, c)
                s2_obj = fbar_obj((go2, y.source.tgt[m][1]))[1]
                t = pif.transport(u_m).obj(s)
                comps = {}
                fib2 = a.fiber(go2)
                ta_inv = a.transport(g.inv[u_m])
                for x2 in fib2.objects:
                    x0 = ta_inv.obj(x2)
                    _, _, mu = f.mor((
                        (u_m, x0, fib2.ids[x2]), c, chi))
                    comps[x2] = (fib2.ids[x2], t.obj(x2)[1], mu)
                return (u_m, s, nat_iso(t, s2_obj, comps))

            factor[fc] = (y, cpi.proj,
                          functor_by(y.source, cpi.total,
                                     fbar_obj, fbar_mor))
    cert = BicoreflectionCert(u, cb.proj, cpi.proj, eps, factor)
    return k, cat_l, cert

# ---------------------------------------------------------------------------
# Base change and stability

def lift_base_change(fam: GroupoidFamily,
                     k: GroupoidFunctor) -> GroupoidFunctor:
    """The comparison functor between comprehension totals induced by a
    base change: ``k`` on the base coordinate, identity on the fibre."""
    c2 = comprehension(reindex(fam, k))
    c1 = comprehension(fam)
    return functor_by(c2.total, c1.total,
                      lambda o: (k.obj(o[0]), o[1]),
                      lambda m: (k.mor(m[0]), m[1], m[2]))


def stability_report(a: GroupoidFamily, b: GroupoidFamily | None,
                     k: GroupoidFunctor,
                     probes: tuple[FiniteGroupoid, ...] = ()) -> Report:
    """Check that every type former and its canonical structure commute
    on the nose with reindexing along ``k`` (exhaustively, as equalities
    of the constructed tables)."""
    gamma = a.base
    gamma2 = k.source
    if k.target != gamma:
        raise StructureError("base change must land in the family base")
    failures: list[Failure] = []
    checked = 0

    def eq(clause, lhs, rhs):
        nonlocal checked
        checked += 1
        if lhs != rhs:
            failures.append(Failure(clause, (lhs, rhs)))

    a2 = reindex(a, k)
    ca, ca2 = comprehension(a), comprehension(a2)
    k1 = lift_base_change(a, k)

    # the type formers themselves are stable
    eq("unit-family-stability", reindex(unit_family(gamma), k),
       unit_family(gamma2))
    ida, _, _ = id_family(a)
    ida2, _, _ = id_family(a2)
    k2 = lift_base_change(reindex(a, ca.proj), k1)
    eq("id-family-stability", reindex(ida, k2), ida2)
    if b is not None:
        b2 = reindex(b, k1)
        eq("sigma-family-stability", reindex(sigma_family(a, b), k),
           sigma_family(a2, b2))
        eq("pi-family-stability", reindex(pi_family(a, b), k),
           pi_family(a2, b2))

    # the canonical sections and (co)units are stable
    cu, cu2 = comprehension(unit_family(gamma)), \
        comprehension(unit_family(gamma2))
    ku = lift_base_change(unit_family(gamma), k)
    eq("unit-section-stability",
       compose_functors(ku, unit_section(gamma2, cu2)),
       compose_functors(unit_section(gamma, cu), k))
    if b is not None:
        sig = sigma_family(a, b)
        ksig = lift_base_change(sig, k)
        kb = lift_base_change(b, k1)
        cb, cb2 = comprehension(b), comprehension(b2)
        csig, csig2 = comprehension(sig), comprehension(reindex(sig, k))

        def pairing(fam_a, fam_b, base_g, c_b, c_sig):
            def i_obj(o):
                (go, x), z = o
                return (go, (x, z))

            def i_mor(m):
                (u_m, x, phi), z, psi = m
                hat = _transport_mor(base_g, u_m, x, fam_a)
                return (u_m, (x, z),
                        (phi, fam_b.transport(hat).obj(z), psi))

            return functor_by(c_b.total, c_sig.total, i_obj, i_mor)

        i1 = pairing(a, b, gamma, cb, csig)
        i2 = pairing(a2, b2, gamma2, cb2, csig2)
        eq("sigma-pairing-stability", compose_functors(ksig, i2),
           compose_functors(i1, kb))

        def counit(fam_a, fam_b, base_g, pif_, c_a, c_b):
            wtot = comprehension(reindex(pif_, c_a.proj)).total

            def eps_obj(o):
                (go, x), s = o
                return ((go, x), s.obj(x)[1])

            def eps_mor(m):
                (u_m, x, phi), s, nu = m
                go2 = base_g.tgt[u_m]
                x2 = fam_a.fiber(go2).tgt[phi]
                t = pif_.transport(u_m).obj(s)
                _, _, chi_t = t.mor(phi)
                _, _, mu = nu.at(x2)
                fib = fam_b.fiber((go2, x2))
                return ((u_m, x, phi), s.obj(x)[1],
                        fib.comp[(mu, chi_t)])

            return functor_by(wtot, c_b.total, eps_obj, eps_mor)

        pif = pi_family(a, b)
        pif2 = pi_family(a2, b2)
        eps1 = counit(a, b, gamma, pif, ca, cb)
        eps2 = counit(a2, b2, gamma2, pif2, ca2, cb2)
        m1 = lift_base_change(reindex(pif, ca.proj), k1)
        eq("pi-counit-stability", compose_functors(eps1, m1),
           compose_functors(kb, eps2))

    # the canonical cleavage is stable: lifting after base change agrees
    # with base-changing the lift
    for x in (gamma2,) + tuple(probes):
        for f in all_functors(x, gamma2):
            for g in all_functors(x, ca2.total):
                pg = compose_functors(ca2.proj, g)
                for alpha in all_nat_isos(f, pg):
                    checked += 1
                    s2, sig2 = cleavage_lift(ca2, g, f, alpha)
                    s1, sig1 = cleavage_lift(
                        ca, compose_functors(k1, g),
                        compose_functors(k, f),
                        whisker_functor_nat(k, alpha))
                    if (compose_functors(k1, s2) != s1
                            or whisker_functor_nat(k1, sig2) != sig1):
                        failures.append(Failure(
                            "cleavage-stability", (f, g, alpha)))
    return Report("stability", checked, tuple(failures))

# ---------------------------------------------------------------------------
# Full model certificates

from .twocat import (  # noqa: E402
    LiftingSquare, filler, verify_two_category, verify_two_functor,
    verify_isofibration, verify_injective_equivalence, verify_arrow_object,
    verify_bireflection, verify_bicoreflection,
)


def sigma_filler_report(a: GroupoidFamily, b: GroupoidFamily,
                        motive: GroupoidFamily | None = None) -> Report:
    """Check that the canonical filler for lifting squares along the
    pairing map reproduces the dependent-sum eliminator: every section of
    the motive restricted along pairing extends uniquely over the total,
    and the extension is the evident unpairing."""
    amb, ie, p_cell, cl, i_cell, csig, cc, q_b, q_c = \
        _sigma_filler_data(a, b, motive)
    g_cell = amb.id1[csig.proj]

    failures: list[Failure] = []
    checked = 0
    for f_cell in amb.homs(q_b, q_c):
        if amb.compose1[(p_cell, f_cell)] != i_cell:
            continue
        checked += 1
        square = LiftingSquare(i_cell, f_cell, p_cell, g_cell)
        try:
            j = filler(square, ie, cl)
        except StructureError as e:
            failures.append(Failure("filler-missing", (f_cell, str(e))))
            continue
        if amb.compose1[(p_cell, j)] != g_cell:
            failures.append(Failure("filler-not-section", (f_cell, j)))
        if amb.compose1[(j, i_cell)] != f_cell:
            failures.append(Failure("filler-not-extension", (f_cell, j)))
        elim = (csig.proj, q_c, compose_functors(f_cell[2], ie.retraction[2]))
        if j != elim:
            failures.append(Failure("filler-not-eliminator", (f_cell, j)))
    if checked == 0:
        failures.append(Failure("no-sections-found", ()))
    return Report("sigma-eliminator-filler", checked, tuple(failures))


@dataclass(frozen=True)
class ModelCert:
    """The bundle of certificates making one instance a model: groupoid
    and family well-formedness, slice 2-category axioms, the projection
    isofibration, the arrow object, the unit/sum/product structure, and
    stability under a base change when one is supplied."""

    label: str
    reports: tuple  # of (name, Report) pairs

    @property
    def passed(self) -> bool:
        return all(rep.passed for _, rep in self.reports)

    @property
    def checked(self) -> int:
        return sum(rep.checked for _, rep in self.reports)

    def to_json(self) -> dict:
        return {"label": self.label, "passed": self.passed,
                "checked": self.checked,
                "reports": {name: rep.to_json()
                            for name, rep in self.reports}}


def model_cert(label: str, gamma: FiniteGroupoid, a: GroupoidFamily,
               b: GroupoidFamily | None = None,
               base_change: GroupoidFunctor | None = None) -> ModelCert:
    reports: list[tuple[str, Report]] = []
    reports.append(("base-groupoid", check_groupoid(gamma)))
    reports.append(("family", check_family(a)))
    if b is not None:
        reports.append(("dependent-family", check_family(b)))
    ca = comprehension(a)
    id_tok = identity_functor(gamma)
    cat = slice_two_category((id_tok, ca.proj))
    reports.append(("slice-axioms", verify_two_category(cat)))
    reports.append(("projection-isofibration", verify_isofibration(
        projection_cleavage(ca, cat, ca.proj, id_tok))))
    _, ao = id_arrow_cert(a)
    reports.append(("identity-arrow-object", verify_arrow_object(ao)))
    _, cat_l, unit_cert = unit_bireflection_cert(gamma, probe_fams=(a,))
    reports.append(("unit-ambient-axioms", verify_two_category(cat_l)))
    reports.append(("unit-weakening-functor",
                    verify_two_functor(unit_cert.u)))
    reports.append(("unit-bireflection", verify_bireflection(unit_cert)))
    if b is not None:
        _, sig_l, sig_cert, _, ie = sigma_certs(a, b)
        reports.append(("sigma-ambient-axioms", verify_two_category(sig_l)))
        reports.append(("sigma-weakening-functor",
                        verify_two_functor(sig_cert.u)))
        reports.append(("sigma-bireflection",
                        verify_bireflection(sig_cert)))
        reports.append(("sigma-pairing-equivalence",
                        verify_injective_equivalence(ie)))
        _, _, pi_cert = pi_certs(a, b)
        reports.append(("pi-bicoreflection",
                        verify_bicoreflection(pi_cert)))
        reports.append(("sigma-eliminator-filler",
                        sigma_filler_report(a, b)))
    if base_change is not None:
        reports.append(("base-change-stability",
                        stability_report(a, b, base_change)))
    return ModelCert(label, tuple(reports))


def model_instances(max_base: int = MAX_BASE_OBJECTS,
                    max_fiber: int = MAX_FIBER_OBJECTS
                    ) -> tuple[tuple, ...]:
    """The catalogue of verification instances: tuples of
    ``(label, base, family, dependent family, base change)`` kept within
    the requested size bounds."""
    p = point_groupoid()
    w = walking_iso()
    c2 = cyclic_groupoid(2)
    d2 = discrete_groupoid(("a", "b"))
    d3 = discrete_groupoid(("a", "b", "c"))

    swap = functor_by(d2, d2, lambda o: "b" if o == "a" else "a",
                      lambda m: d2.ids["b" if m[1] == "a" else "a"])

    out = []

    a1 = constant_family(p, c2)
    out.append(("point-base-cyclic", p, a1,
                constant_family(comprehension(a1).total, c2),
                identity_functor(p)))

    a2 = constant_family(p, d2)
    out.append(("point-base-discrete", p, a2,
                constant_family(comprehension(a2).total, p),
                identity_functor(p)))

    # dependent family with a nontrivial transport action: the fibre is a
    # three-point set on which the loop acts by swapping two points
    d3f = discrete_groupoid(("x", "y", "w"))
    tau = functor_by(d3f, d3f,
                     lambda o: {"x": "y", "y": "x", "w": "w"}[o],
                     lambda m: d3f.ids[{"x": "y", "y": "x",
                                        "w": "w"}[m[1]]])
    ca1 = comprehension(a1)
    b_eq = family_by(ca1.total, lambda o: d3f,
                     lambda m: identity_functor(d3f)
                     if m[2] == ("z", 0) else tau)
    out.append(("point-base-equivariant", p, a1, b_eq,
                identity_functor(p)))

    a3 = family_by(w, lambda o: d2,
                   lambda m: identity_functor(d2)
                   if m[1] == m[2] else swap)
    incl = functor_by(p, w, lambda a: 0, lambda m: w.ids[0])
    out.append(("walking-iso-swap", w, a3,
                constant_family(comprehension(a3).total, p), incl))

    a4 = family_by(c2, lambda o: d2,
                   lambda m: identity_functor(d2)
                   if m == ("z", 0) else swap)
    to_c2 = functor_by(p, c2, lambda a: "o", lambda m: c2.ids["o"])
    out.append(("cyclic-base-swap", c2, a4,
                constant_family(comprehension(a4).total, p), to_c2))

    a5 = family_by(d3, lambda o: discrete_groupoid(
        ("x",) if o != "b" else ("x", "y")),
        lambda m: identity_functor(discrete_groupoid(
            ("x",) if m[1] != "b" else ("x", "y"))))
    into_d3 = functor_by(p, d3, lambda a: "a", lambda m: d3.ids["a"])
    out.append(("three-point-base", d3, a5,
                constant_family(comprehension(a5).total, p), into_d3))

    def fits(inst):
        _, gamma, a, b, _ = inst
        if len(gamma.objects) > max_base:
            return False
        fams = [a] + ([b] if b is not None else [])
        return all(len(f.fiber(o).objects) <= max_fiber
                   for f in fams for o in f.base.objects)

    return tuple(inst for inst in out if fits(inst))


def run_model_suite(max_base: int = MAX_BASE_OBJECTS,
                    max_fiber: int = MAX_FIBER_OBJECTS
                    ) -> tuple[ModelCert, ...]:
    return tuple(model_cert(label, gamma, a, b, base_change=k)
                 for label, gamma, a, b, k in
                 model_instances(max_base, max_fiber))

# ---------------------------------------------------------------------------
# Filler laws and their stability under base change

from .twocat import TransportedProblem, pullback_filler_stability  # noqa: E402


def _sigma_filler_data(a: GroupoidFamily, b: GroupoidFamily,
                       motive: GroupoidFamily | None = None):
    """The ambient slice, pairing equivalence, motive cleavage, and the
    cells needed to pose eliminator lifting problems for a dependent sum."""
    sig = sigma_family(a, b)
    g = a.base
    ca = comprehension(a)
    cb = comprehension(b)
    csig = comprehension(sig)
    if motive is None:
        motive = constant_family(csig.total, point_groupoid())
    cc = comprehension(motive)
    q_b = compose_functors(ca.proj, cb.proj)
    q_c = compose_functors(csig.proj, cc.proj)
    id_tok = identity_functor(g)
    amb = slice_two_category((q_b, csig.proj, q_c, id_tok))

    def i_obj(o):
        (go, x), z = o
        return (go, (x, z))

    def i_mor(m):
        (u_m, x, phi), z, psi = m
        hat = _transport_mor(g, u_m, x, a)
        return (u_m, (x, z), (phi, b.transport(hat).obj(z), psi))

    i_f = functor_by(cb.total, csig.total, i_obj, i_mor)
    r_f = functor_by(csig.total, cb.total,
                     lambda o: ((o[0], o[1][0]), o[1][1]),
                     lambda m: ((m[0], m[1][0], m[2][0]), m[1][1], m[2][2]))
    i_cell = (q_b, csig.proj, i_f)
    r_cell = (csig.proj, q_b, r_f)
    theta = (amb.id1[csig.proj], amb.compose1[(i_cell, r_cell)],
             nat_iso(identity_functor(csig.total),
                     compose_functors(i_f, r_f),
                     {o: csig.total.ids[o] for o in csig.total.objects}))
    ie = InjectiveEquivalence(amb, i_cell, r_cell, theta)
    p_cell = (q_c, csig.proj, cc.proj)
    cl = projection_cleavage(cc, amb, q_c, csig.proj)
    return amb, ie, p_cell, cl, i_cell, csig, cc, q_b, q_c


def filler_law_report(a: GroupoidFamily, b: GroupoidFamily,
                      motive: GroupoidFamily | None = None) -> Report:
    """Check both triangle identities of the canonical filler for every
    commuting lifting square of the pairing equivalence against the
    motive projection in the ambient slice."""
    amb, ie, p_cell, cl, i_cell, csig, cc, q_b, q_c = \
        _sigma_filler_data(a, b, motive)
    failures: list[Failure] = []
    checked = 0
    for f_cell in amb.homs(q_b, q_c):
        for g_cell in amb.homs(csig.proj, csig.proj):
            if amb.compose1[(p_cell, f_cell)] != \
                    amb.compose1[(g_cell, i_cell)]:
                continue
            checked += 1
            square = LiftingSquare(i_cell, f_cell, p_cell, g_cell)
            try:
                j = filler(square, ie, cl)
            except StructureError as e:
                failures.append(Failure("filler-missing",
                                        (f_cell, g_cell, str(e))))
                continue
            if amb.compose1[(p_cell, j)] != g_cell:
                failures.append(Failure("right-triangle",
                                        (f_cell, g_cell, j)))
            if amb.compose1[(j, i_cell)] != f_cell:
                failures.append(Failure("left-triangle",
                                        (f_cell, g_cell, j)))
    if checked == 0:
        failures.append(Failure("no-squares-found", ()))
    return Report("filler-laws", checked, tuple(failures))


def _retarget(j: GroupoidFunctor, k_src: GroupoidFunctor,
              src2: FiniteGroupoid, tgt2: FiniteGroupoid,
              first_obj: Callable, first_mor: Callable) -> GroupoidFunctor:
    """Transport a strictly-over-the-base functor along base-change
    lifts: keep the (already reindexed) first token coordinate, reuse the
    original functor for the fibre coordinates."""
    return functor_by(
        src2, tgt2,
        lambda o: (first_obj(o),) + j.obj(k_src.obj(o))[1:],
        lambda m: (first_mor(m),) + j.mor(k_src.mor(m))[1:])


def sigma_filler_stability_report(a: GroupoidFamily, b: GroupoidFamily,
                                  k: GroupoidFunctor) -> Report:
    """Pose each eliminator lifting problem on both sides of a base
    change and check that the canonical fillers correspond."""
    gamma2 = k.source
    a2 = reindex(a, k)
    k1 = lift_base_change(a, k)
    b2 = reindex(b, k1)
    kb = lift_base_change(b, k1)
    amb, ie, p_cell, cl, i_cell, csig, cc, q_b, q_c = \
        _sigma_filler_data(a, b)
    amb2, ie2, p2_cell, cl2, i2_cell, csig2, cc2, q_b2, q_c2 = \
        _sigma_filler_data(a2, b2)
    sig = csig.fam
    ksig = lift_base_change(sig, k)
    i2_f = i2_cell[2]

    failures: list[Failure] = []
    checked = 0
    g_cell = amb.id1[csig.proj]
    g2_cell = amb2.id1[csig2.proj]

    def transport_one(cell):
        _, _, j = cell
        j2 = _retarget(j, ksig, csig2.total, cc2.total,
                       lambda o: o, lambda m: m)
        return (csig2.proj, q_c2, j2)

    for f_cell in amb.homs(q_b, q_c):
        if amb.compose1[(p_cell, f_cell)] != i_cell:
            continue
        checked += 1
        f2 = _retarget(f_cell[2], kb, cb2_total := kb.source, cc2.total,
                       i2_f.obj, i2_f.mor)
        f2_cell = (q_b2, q_c2, f2)
        problem = TransportedProblem(
            LiftingSquare(i_cell, f_cell, p_cell, g_cell), ie, cl,
            LiftingSquare(i2_cell, f2_cell, p2_cell, g2_cell), ie2, cl2,
            transport_one)
        if not pullback_filler_stability(problem):
            failures.append(Failure("pullback-filler-stability",
                                    (f_cell,)))
    if checked == 0:
        failures.append(Failure("no-sections-found", ()))
    return Report("filler-stability", checked, tuple(failures))

# ---------------------------------------------------------------------------
# JSON descriptions

def _freeze(v):
    if isinstance(v, list):
        return tuple(_freeze(x) for x in v)
    return v


def _thaw(v):
    if isinstance(v, tuple):
        return [_thaw(x) for x in v]
    return v


def groupoid_to_json(g: FiniteGroupoid) -> dict:
    return {
        "objects": [_thaw(o) for o in g.objects],
        "morphisms": [{"name": _thaw(m), "src": _thaw(g.src[m]),
                       "tgt": _thaw(g.tgt[m]), "inv": _thaw(g.inv[m])}
                      for m in g.morphisms],
        "identities": [[_thaw(a), _thaw(i)] for a, i in g.id_pairs],
        "compose": [[_thaw(gm), _thaw(fm), _thaw(c)]
                    for (gm, fm), c in g.comp_pairs],
    }


def groupoid_from_json(data: Mapping) -> FiniteGroupoid:
    objects = [_freeze(o) for o in data["objects"]]
    src = {}
    tgt = {}
    inv = {}
    for m in data["morphisms"]:
        name = _freeze(m["name"])
        src[name] = _freeze(m["src"])
        tgt[name] = _freeze(m["tgt"])
        inv[name] = _freeze(m["inv"])
    ids = {_freeze(a): _freeze(i) for a, i in data["identities"]}
    comp = {(_freeze(gm), _freeze(fm)): _freeze(c)
            for gm, fm, c in data["compose"]}
    return groupoid(objects, src, tgt, comp, ids, inv)


def functor_to_json(f: GroupoidFunctor) -> dict:
    return {"objects": [[_thaw(a), _thaw(x)] for a, x in f.obj_pairs],
            "morphisms": [[_thaw(m), _thaw(x)] for m, x in f.mor_pairs]}


def functor_from_json(source: FiniteGroupoid, target: FiniteGroupoid,
                      data: Mapping) -> GroupoidFunctor:
    return functor(source, target,
                   {_freeze(a): _freeze(x) for a, x in data["objects"]},
                   {_freeze(m): _freeze(x) for m, x in data["morphisms"]})


def family_to_json(fam: GroupoidFamily) -> dict:
    return {
        "base": groupoid_to_json(fam.base),
        "fibers": [[_thaw(a), groupoid_to_json(fib)]
                   for a, fib in fam.fiber_pairs],
        "transports": [[_thaw(m), functor_to_json(t)]
                       for m, t in fam.transport_pairs],
    }


def family_from_json(data: Mapping) -> GroupoidFamily:
    base = groupoid_from_json(data["base"])
    fibers = {_freeze(a): groupoid_from_json(fib)
              for a, fib in data["fibers"]}
    transports = {}
    for m, t in data["transports"]:
        m = _freeze(m)
        transports[m] = functor_from_json(fibers[base.src[m]],
                                          fibers[base.tgt[m]], t)
    return family(base, fibers, transports)


# ---------------------------------------------------------------------------
# Interpretation of kernel judgements (defined in a sibling module to keep
# this one focused on the semantic structures themselves)

_INTERP_EXPORTS = ("Environment", "InterpretError", "Interpreter",
                   "interpret", "standard_environments")


def __getattr__(name):
    if name in _INTERP_EXPORTS:
        from . import interp as _interp
        return getattr(_interp, name)
    raise AttributeError(name)
