"""Compilation of graph formulas to slice automata.

Free variables are realized by annotating letters: every vertex-sorted
variable contributes one membership bit on the center vertex, every
edge-sorted variable a membership mark on each edge born at the letter (an
edge is born where its source vertex is the center). Marks of open edges do
not travel on frontiers; the primitive automata that need them track marked
open channels in their states instead.

The induction: atoms become primitive automata intersected with the
well-formed language (valid letter sequences with exactly-one marks per
first-order variable); conjunction and disjunction become product and union;
negation is complement relative to the well-formed language; an existential
quantifier erases its variable's annotation layer.
"""

from __future__ import annotations

import itertools
from collections import deque
from functools import lru_cache
from typing import Sequence

from .automata import (SliceAutomaton, difference, intersect, union)
from .config import DEFAULT_CONFIG, InputError, ResourceError, RunConfig
from . import mso
from .mso import (And, Coverable, EdgeSource, EdgeTarget, Exists, HasLabel, InSet,
                  Not, Or, PathAtom, Reduced, Truth, Var,
                  EDGE, ESET, VERTEX, VSET, to_graph_formula, to_text)
from .constructions import coverable_automaton, reduced_automaton, universal_automaton
from .slices import Slice, unit_alphabet


class AnnLetter:
    """A unit slice annotated with variable-membership marks."""

    __slots__ = ("base", "vbits", "ebits", "_hash")

    def __init__(self, base: Slice, vbits: tuple, ebits: tuple):
        self.base = base
        self.vbits = vbits
        self.ebits = ebits
        self._hash = hash((base, vbits, ebits))

    # Frontier geometry delegates to the base slice (gluability, Def-2 checks).
    @property
    def n_in(self):
        return self.base.n_in

    @property
    def n_out(self):
        return self.base.n_out

    def is_initial(self):
        return self.base.is_initial()

    def is_final(self):
        return self.base.is_final()

    def __eq__(self, other):
        return (isinstance(other, AnnLetter) and self.base == other.base
                and self.vbits == other.vbits and self.ebits == other.ebits)

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return (self.base.sort_key(), self.vbits,
                tuple(tuple(sorted(s)) for s in self.ebits))

    def __repr__(self):
        return f"AnnLetter({self.base!r}, v={self.vbits}, e={self.ebits})"


def vlike(ctx: tuple) -> tuple:
    return tuple(v for v in ctx if v.sort in (VERTEX, VSET))


def elike(ctx: tuple) -> tuple:
    return tuple(v for v in ctx if v.sort in (EDGE, ESET))


def _vpos(ctx: tuple, var: Var) -> int:
    return vlike(ctx).index(var)


def _epos(ctx: tuple, var: Var) -> int:
    return elike(ctx).index(var)


@lru_cache(maxsize=None)
def annotated_alphabet(c: int, labels: tuple, ctx: tuple) -> tuple:
    """The (c, T) unit alphabet with one annotation layer per context variable.

    First-order edge variables mark at most one born edge per letter; their
    global exactly-one constraint is the well-formed language's job.
    """
    base = unit_alphabet(c, labels)
    if not ctx:
        return base
    nv = len(vlike(ctx))
    evars = elike(ctx)
    letters = []
    for s in base:
        born = s.born_ports()
        per_var = []
        for v in evars:
            if v.sort == EDGE:
                per_var.append([frozenset()] + [frozenset([o]) for o in born])
            else:
                per_var.append([frozenset(sub) for r in range(len(born) + 1)
                                for sub in itertools.combinations(born, r)])
        for vbits in itertools.product((False, True), repeat=nv):
            for ebits in itertools.product(*per_var):
                letters.append(AnnLetter(s, vbits, tuple(ebits)))
    return tuple(sorted(letters))


@lru_cache(maxsize=None)
def well_formed(c: int, labels: tuple, ctx: tuple) -> SliceAutomaton:
    """Valid letter sequences in which every first-order variable is marked
    exactly once across the word."""
    alphabet = annotated_alphabet(c, labels, ctx)
    vl, el = vlike(ctx), elike(ctx)
    fo_slots = [("v", vl.index(v)) if v.sort == VERTEX else ("e", el.index(v))
                for v in ctx if v.sort in (VERTEX, EDGE)]
    by_width = {}
    for s in alphabet:
        by_width.setdefault(_base(s).n_in, []).append(s)

    def marks(letter, slot):
        kind, idx = slot
        if kind == "v":
            return 1 if letter.vbits[idx] else 0
        return len(letter.ebits[idx])

    start = ("start",)
    trans = []
    states = {start}
    work = deque()

    def step(src, counts, letter):
        new = tuple(a + marks(letter, slot) for a, slot in zip(counts, fo_slots))
        if any(m > 1 for m in new):
            return
        nxt = (_base(letter).n_out, new)
        trans.append((src, letter, nxt))
        if nxt not in states:
            states.add(nxt)
            work.append(nxt)

    for s in by_width.get(0, ()):
        step(start, tuple([0] * len(fo_slots)), s)
    while work:
        k, counts = work.popleft()
        for s in by_width.get(k, ()):
            step((k, counts), counts, s)
    finals = {st for st in states if st != start and st[0] == 0
              and all(m == 1 for m in st[1])}
    return SliceAutomaton(c, labels, alphabet, start, finals, trans,
                          states=states).trim()


def _base(letter) -> Slice:
    return getattr(letter, "base", letter)


def _filter_letters(auto: SliceAutomaton, pred) -> SliceAutomaton:
    trans = [(q, s, q2) for q, s, q2 in auto.transitions if pred(s)]
    return SliceAutomaton(auto.c, auto.labels, auto.alphabet, auto.initial,
                          auto.finals, trans, states=auto.states).trim()


def cylindrify(auto: SliceAutomaton, c: int, labels: tuple, ctx: tuple) -> SliceAutomaton:
    """Lift an automaton over base letters to the annotated alphabet of ctx."""
    if not ctx:
        return auto
    alphabet = annotated_alphabet(c, labels, ctx)
    by_base = {}
    for s in alphabet:
        by_base.setdefault(s.base, []).append(s)
    trans = []
    for q, s, q2 in auto.transitions:
        for ann in by_base.get(_base(s), ()):
            trans.append((q, ann, q2))
    return SliceAutomaton(c, labels, alphabet, auto.initial, auto.finals, trans,
                          states=auto.states)


# -- primitive automata for the stateful atoms -------------------------------------


def _target_tracker(c: int, labels: tuple, ctx: tuple, yvar: Var, xvar: Var) -> SliceAutomaton:
    """t(y,x): the edge marked y closes at the letter marked x."""
    alphabet = annotated_alphabet(c, labels, ctx)
    ypos, xpos = _epos(ctx, yvar), _vpos(ctx, xvar)
    by_width = {}
    for s in alphabet:
        by_width.setdefault(s.base.n_in, []).append(s)
    start = ("start", 0, "pre")
    trans = []
    states = {start}
    queue = deque([start])
    seen = {start}
    while queue:
        state = queue.popleft()
        _, k, phase = state
        for s in by_width.get(k, ()):
            base = s.base
            ymarks = s.ebits[ypos]
            isx = s.vbits[xpos]
            if phase == "pre":
                if len(ymarks) == 1:
                    nxt_phase = ("riding", next(iter(ymarks)))
                elif not ymarks:
                    nxt_phase = "pre"
                else:
                    continue
            elif phase == "done":
                if ymarks:
                    continue
                nxt_phase = "done"
            else:
                if ymarks:
                    continue
                port = phase[1]
                if port in base.closing_ports():
                    if not isx:
                        continue
                    nxt_phase = "done"
                else:
                    nxt_phase = ("riding", base.bypass_map()[port])
            nxt = ("st", base.n_out, nxt_phase)
            trans.append((state, s, nxt))
            states.add(nxt)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    finals = {st for st in states if st[1] == 0 and st[2] == "done"}
    return SliceAutomaton(c, labels, alphabet, start, finals, trans, states=states)


def _path_tracker(c: int, labels: tuple, ctx: tuple,
                  x1: Var, xset: Var, yset: Var, x2: Var) -> SliceAutomaton:
    """path(x1,X,Y,x2): the Y-marked edges form a path from the x1-marked to
    the x2-marked vertex whose internal vertices are exactly the X-marked ones.

    One Y-marked channel is open at any time; the pointer follows it."""
    alphabet = annotated_alphabet(c, labels, ctx)
    p1, px, p2 = _vpos(ctx, x1), _vpos(ctx, xset), _vpos(ctx, x2)
    py = _epos(ctx, yset)
    by_width = {}
    for s in alphabet:
        by_width.setdefault(s.base.n_in, []).append(s)
    start = ("start", 0, "pre")
    trans = []
    states = {start}
    queue = deque([start])
    seen = {start}
    while queue:
        state = queue.popleft()
        _, k, phase = state
        for s in by_width.get(k, ()):
            base = s.base
            isx1, in_x, isx2 = s.vbits[p1], s.vbits[px], s.vbits[p2]
            born_y = s.ebits[py]
            nxt_phase = None
            if phase == "pre":
                if isx1:
                    if in_x or isx2 or len(born_y) != 1:
                        continue
                    nxt_phase = ("riding", next(iter(born_y)))
                else:
                    if in_x or isx2 or born_y:
                        continue
                    nxt_phase = "pre"
            elif phase == "done":
                if in_x or born_y:
                    continue
                nxt_phase = "done"
            else:
                port = phase[1]
                if port in base.closing_ports():
                    if isx2:
                        if in_x or born_y:
                            continue
                        nxt_phase = "done"
                    elif in_x:
                        if len(born_y) != 1:
                            continue
                        nxt_phase = ("riding", next(iter(born_y)))
                    else:
                        continue
                else:
                    if in_x or isx2 or born_y:
                        continue
                    nxt_phase = ("riding", base.bypass_map()[port])
            nxt = ("st", base.n_out, nxt_phase)
            trans.append((state, s, nxt))
            states.add(nxt)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    finals = {st for st in states if st[1] == 0 and st[2] == "done"}
    return SliceAutomaton(c, labels, alphabet, start, finals, trans, states=states)


# -- the induction ---------------------------------------------------------------------


def compile_formula(phi, c: int, labels: Sequence,
                    config: RunConfig = DEFAULT_CONFIG) -> SliceAutomaton:
    """The slice automaton of all valid decompositions whose composed DAG
    satisfies the closed graph formula phi."""
    if not mso.is_graph_formula(phi):
        raise InputError("compilation needs a graph formula (rewrite order formulas first)")
    mso.check_sorts(phi)
    if mso.free_vars(phi):
        names = sorted(v.name for v in mso.free_vars(phi))
        raise InputError(f"compilation needs a closed formula; free: {names}")
    labels = tuple(labels)
    phi = _uniquify(phi, {}, itertools.count(1))
    return _compile(phi, c, labels, (), config)


def po_automaton(phi, c: int, labels: Sequence,
                 config: RunConfig = DEFAULT_CONFIG) -> SliceAutomaton:
    """The saturated, transitively reduced automaton of all partial orders
    with Hasse diagram coverable by c paths that satisfy the closed order
    formula phi (read as Hasse-diagram words)."""
    if not mso.is_order_formula(phi):
        raise InputError("po_automaton needs an order formula")
    labels = tuple(labels)
    out = intersect(compile_formula(to_graph_formula(phi), c, labels, config),
                    universal_automaton(c, labels))
    return SliceAutomaton(out.c, out.labels, out.alphabet, out.initial, out.finals,
                          out.transitions, states=out.states,
                          saturated=True, transitively_reduced=True)


def _uniquify(phi, scope: dict, counter):
    """Alpha-rename bound variables so contexts never shadow."""
    match phi:
        case Exists(var=v, body=b):
            fresh = Var(f"{v.name}_{next(counter)}", v.sort)
            inner = dict(scope)
            inner[v] = fresh
            return Exists(fresh, _uniquify(b, inner, counter))
        case Not(body=b):
            return Not(_uniquify(b, scope, counter))
        case And(left=a, right=b):
            return And(_uniquify(a, scope, counter), _uniquify(b, scope, counter))
        case Or(left=a, right=b):
            return Or(_uniquify(a, scope, counter), _uniquify(b, scope, counter))
        case InSet(elem=e, coll=cl):
            return InSet(scope.get(e, e), scope.get(cl, cl))
        case HasLabel(vertex=v, label=lab):
            return HasLabel(scope.get(v, v), lab)
        case EdgeSource(edge=y, vertex=x):
            return EdgeSource(scope.get(y, y), scope.get(x, x))
        case EdgeTarget(edge=y, vertex=x):
            return EdgeTarget(scope.get(y, y), scope.get(x, x))
        case PathAtom(src=a, vset=x, eset=y, dst=b):
            return PathAtom(scope.get(a, a), scope.get(x, x),
                            scope.get(y, y), scope.get(b, b))
        case _:
            return phi


def _compile(phi, c: int, labels: tuple, ctx: tuple,
             config: RunConfig) -> SliceAutomaton:
    wf = lambda: well_formed(c, labels, ctx)
    try:
        match phi:
            case Truth(value=v):
                if v:
                    return wf()
                base = wf()
                return SliceAutomaton(c, labels, base.alphabet, base.initial, (), ())
            case InSet(elem=e, coll=cl):
                if e.sort == VERTEX:
                    ep, cp = _vpos(ctx, e), _vpos(ctx, cl)
                    return _filter_letters(wf(), lambda s: not (s.vbits[ep] and not s.vbits[cp]))
                ep, cp = _epos(ctx, e), _epos(ctx, cl)
                return _filter_letters(wf(), lambda s: s.ebits[ep] <= s.ebits[cp])
            case HasLabel(vertex=v, label=lab):
                vp = _vpos(ctx, v)
                return _filter_letters(
                    wf(), lambda s: not (s.vbits[vp] and s.base.label != lab))
            case EdgeSource(edge=y, vertex=x):
                yp, xp = _epos(ctx, y), _vpos(ctx, x)
                return _filter_letters(
                    wf(), lambda s: not (s.ebits[yp] and not s.vbits[xp]))
            case EdgeTarget(edge=y, vertex=x):
                return intersect(_target_tracker(c, labels, ctx, y, x), wf())
            case PathAtom(src=a, vset=x, eset=y, dst=b):
                return intersect(_path_tracker(c, labels, ctx, a, x, y, b), wf())
            case Reduced():
                return intersect(cylindrify(reduced_automaton(c, labels), c, labels, ctx), wf())
            case Coverable(count=k):
                return intersect(
                    cylindrify(coverable_automaton(c, labels, budget=k), c, labels, ctx),
                    wf())
            case Not(body=b):
                return difference(wf(), _compile(b, c, labels, ctx, config), config)
            case And(left=a, right=b):
                return intersect(_compile(a, c, labels, ctx, config),
                                 _compile(b, c, labels, ctx, config))
            case Or(left=a, right=b):
                return union(_compile(a, c, labels, ctx, config),
                             _compile(b, c, labels, ctx, config))
            case Exists(var=v, body=b):
                inner = _compile(b, c, labels, ctx + (v,), config)
                return _erase(inner, c, labels, ctx, v).trim()
        raise InputError(f"not a compilable formula node: {phi!r}")
    except ResourceError as err:
        if err.context and "subformula" in err.context:
            raise
        raise ResourceError(str(err),
                            context=f"subformula {_clip(to_text(phi))}") from err


def _clip(text: str, n: int = 80) -> str:
    return text if len(text) <= n else text[: n - 3] + "..."


def _erase(auto: SliceAutomaton, c: int, labels: tuple, outer_ctx: tuple,
           var: Var) -> SliceAutomaton:
    """Project away one variable's annotation layer."""
    inner_ctx = outer_ctx + (var,)
    alphabet = annotated_alphabet(c, labels, outer_ctx)
    if var.sort in (VERTEX, VSET):
        drop = _vpos(inner_ctx, var)
        def down(s):
            vb = s.vbits[:drop] + s.vbits[drop + 1:]
            return AnnLetter(s.base, vb, s.ebits) if outer_ctx else s.base
    else:
        drop = _epos(inner_ctx, var)
        def down(s):
            eb = s.ebits[:drop] + s.ebits[drop + 1:]
            return AnnLetter(s.base, s.vbits, eb) if outer_ctx else s.base
    trans = [(q, down(s), q2) for q, s, q2 in auto.transitions]
    return SliceAutomaton(c, labels, alphabet, auto.initial, auto.finals, trans,
                          states=auto.states)
