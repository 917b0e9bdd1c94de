"""Direct automaton constructions over frontier summaries.

A state summarizes the open edges ("channels") of a composed prefix: which
channels share a source vertex (classes), which sources reach which by at
least one edge (a transitively closed, acyclic relation), and, where path
covering matters, how a budget of path slots rides the channels. Everything
a construction verifies at the closure of a channel is derivable from this
summary, which keeps the state space finite.
"""

from __future__ import annotations

import itertools
from collections import deque
from functools import lru_cache
from typing import Optional

from .automata import SliceAutomaton, difference, includes, letter_base
from .config import DEFAULT_CONFIG, InputError, PreconditionError, RunConfig
from .slices import Slice, unit_alphabet, unit_decompositions

START = ("start",)


@lru_cache(maxsize=None)
def _letters_by_width(c: int, labels: tuple) -> dict:
    groups = {}
    for s in unit_alphabet(c, labels):
        groups.setdefault(s.n_in, []).append(s)
    return groups


class _Frontier:
    """One step of channel bookkeeping for a letter read at the current frontier."""

    __slots__ = ("letter", "closing_ports", "closing_classes", "port_map",
                 "new_channels", "new_reach", "born_ports", "redundant")

    def __init__(self, channels: tuple, reach: frozenset, letter: Slice):
        self.letter = letter
        self.closing_ports = letter.closing_ports()
        bypass = letter.bypass_map()
        self.born_ports = letter.born_ports()
        self.port_map = dict(bypass)
        self.closing_classes = tuple(channels[p - 1] for p in self.closing_ports)

        # Redundancy per closing port: its source also reaches the center
        # through another closing channel, i.e. the closed edge is transitive.
        closing_set = set(self.closing_classes)
        self.redundant = []
        for cls in self.closing_classes:
            self.redundant.append(any(
                other != cls and (cls, other) in reach for other in closing_set))

        raw = []
        for o in range(1, letter.n_out + 1):
            src_port = next((i for i, t in bypass.items() if t == o), None)
            if src_port is not None:
                raw.append(channels[src_port - 1])
            else:
                raw.append("x")  # born at the center
        alive = set(raw)
        pairs = {(a, b) for a, b in reach if a in alive and b in alive}
        if "x" in alive:
            for a in alive - {"x"}:
                if a in closing_set or any((a, u) in reach for u in closing_set):
                    pairs.add((a, "x"))
        # Canonical class ids by first occurrence along the new frontier.
        rename = {}
        for cls in raw:
            if cls not in rename:
                rename[cls] = len(rename)
        self.new_channels = tuple(rename[cls] for cls in raw)
        self.new_reach = frozenset((rename[a], rename[b]) for a, b in pairs)

    def parallel_closure(self) -> bool:
        return len(set(self.closing_classes)) != len(self.closing_classes)

    def hasse_ok(self) -> bool:
        return not self.parallel_closure() and not any(self.redundant)


def _slot_assignments(slots: tuple, frontier: _Frontier):
    """All legal path-slot updates for this letter.

    Slots riding a closing channel must continue onto a born channel or
    finish; unstarted slots may start at the center; every born channel must
    end up ridden; a center without closing channels must be visited by a
    starter.
    """
    closing = set(frontier.closing_ports)
    born = frontier.born_ports
    options = []
    for st in slots:
        if st == "f":
            options.append(("f",))
        elif st == "u":
            options.append(("u", "f") + tuple(("r", o) for o in born))
        else:
            port = st[1]
            if port in closing:
                options.append(("f",) + tuple(("r", o) for o in born))
            else:
                options.append((("r", frontier.port_map[port]),))
    for combo in itertools.product(*options):
        ridden = {st[1] for st in combo if st != "f" and st != "u"}
        if any(o not in ridden for o in born):
            continue
        if not closing:
            # the center is a source vertex: some slot must start here
            visited = any(old == "u" and new != "u" for old, new in zip(slots, combo))
            if not visited:
                continue
        yield tuple(sorted(combo, key=repr))


def _explore(c: int, labels: tuple, initial_state, expand) -> SliceAutomaton:
    """Generic forward exploration; `expand(state)` yields (letter, next_state)."""
    labels = tuple(labels)
    alphabet = unit_alphabet(c, labels)
    trans = []
    seen = {initial_state}
    queue = deque([initial_state])
    finals = set()
    while queue:
        state = queue.popleft()
        if state != START and _is_final_summary(state):
            finals.add(state)
        for letter, nxt in expand(state):
            trans.append((state, letter, nxt))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return SliceAutomaton(c, labels, alphabet, START, finals, trans, states=seen)


def _is_final_summary(state) -> bool:
    channels = state[1]
    return channels == ()


def _state_channels(state) -> tuple:
    return ((), frozenset()) if state == START else (state[1], state[2])


@lru_cache(maxsize=None)
def reduced_automaton(c: int, labels: tuple) -> SliceAutomaton:
    """All valid sequences whose composed DAG is transitively reduced.

    Rejects, at closure time, every edge whose source reaches the center
    through another closing channel, and parallel closures.
    """
    groups = _letters_by_width(c, labels)

    def expand(state):
        channels, reach = _state_channels(state)
        for letter in groups.get(len(channels), ()):
            fr = _Frontier(channels, reach, letter)
            if not fr.hasse_ok():
                continue
            yield letter, ("r", fr.new_channels, fr.new_reach)

    a = _explore(c, labels, START, expand).relabel()
    return SliceAutomaton(a.c, a.labels, a.alphabet, a.initial, a.finals,
                          a.transitions, states=a.states,
                          saturated=None, transitively_reduced=True)


@lru_cache(maxsize=None)
def coverable_automaton(c: int, labels: tuple, budget: Optional[int] = None) -> SliceAutomaton:
    """All valid sequences whose composed DAG can be covered by `budget` paths
    (default c), over the width-c alphabet.

    A budget of path slots rides the open channels; every channel is ridden
    from birth to closure, so edge and vertex coverage hold by construction.
    """
    groups = _letters_by_width(c, labels)
    init_slots = tuple(["u"] * (c if budget is None else budget))

    def expand(state):
        if state == START:
            channels, slots = (), init_slots
        else:
            channels, slots = state[1], state[3]
        for letter in groups.get(len(channels), ()):
            fr = _Frontier(channels, frozenset(), letter)
            for new_slots in _slot_assignments(slots, fr):
                yield letter, ("g", fr.new_channels, frozenset(), new_slots)

    a = _explore(c, labels, START, expand).relabel()
    return SliceAutomaton(a.c, a.labels, a.alphabet, a.initial, a.finals,
                          a.transitions, states=a.states,
                          saturated=True, transitively_reduced=None)


@lru_cache(maxsize=None)
def universal_automaton(c: int, labels: tuple) -> SliceAutomaton:
    """The saturated, transitively reduced automaton of all partial orders
    whose Hasse diagram is coverable by c paths (read as Hasse-diagram words).

    Combines the transitive-reduction check and the path-slot budget in one
    construction; every unit decomposition of every accepted diagram is
    accepted.
    """
    groups = _letters_by_width(c, labels)
    init_slots = tuple(["u"] * c)

    def expand(state):
        if state == START:
            channels, reach, slots = (), frozenset(), init_slots
        else:
            channels, reach, slots = state[1], state[2], state[3]
        for letter in groups.get(len(channels), ()):
            fr = _Frontier(channels, reach, letter)
            if not fr.hasse_ok():
                continue
            for new_slots in _slot_assignments(slots, fr):
                yield letter, ("univ", fr.new_channels, fr.new_reach, new_slots)

    a = _explore(c, labels, START, expand).relabel()
    return SliceAutomaton(a.c, a.labels, a.alphabet, a.initial, a.finals,
                          a.transitions, states=a.states,
                          saturated=True, transitively_reduced=True)


def transitive_reduce_automaton(a: SliceAutomaton) -> SliceAutomaton:
    """An automaton denoting the Hasse diagrams of a's posets.

    Simulates a while tagging each open channel real or ghost (guessed at
    birth): emitted letters contain only real channels; at closure a ghost
    must be a transitive edge of the input DAG (or a parallel duplicate of a
    real channel) and a real channel must be a covering edge. The poset
    language is preserved; every composed output DAG is transitively reduced;
    one output witness is kept per input ordering.
    """
    problems = a.validate()
    if problems:
        raise InputError("transitive reduction needs a valid slice automaton: "
                         + problems[0])
    labels = tuple(a.labels)
    alphabet = unit_alphabet(a.c, labels)
    a_out = a._out()
    init = ("tr", a.initial, (), frozenset(), ())
    trans = []
    seen = {init}
    queue = deque([init])
    finals = set()
    while queue:
        state = queue.popleft()
        _, q, channels, reach, tags = state
        if q in a.finals and channels == ():
            finals.add(state)
        for s, q2 in a_out.get(q, ()):
            letter = letter_base(s)
            fr = _Frontier(channels, reach, letter)
            if not _tags_consistent(fr, tags):
                continue
            out_letter, bypass_tag_slots = _emit_reduced_letter(fr, tags)
            for born_tags in itertools.product("rg", repeat=len(fr.born_ports)):
                new_tags = list(bypass_tag_slots)
                for o, t in zip(fr.born_ports, born_tags):
                    new_tags[o - 1] = t
                final_letter = _attach_born(out_letter, fr, born_tags)
                nxt = ("tr", q2, fr.new_channels, fr.new_reach, tuple(new_tags))
                trans.append((state, final_letter, nxt))
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    out = SliceAutomaton(a.c, labels, alphabet, init, finals, trans, states=seen).trim().relabel()
    return SliceAutomaton(out.c, out.labels, out.alphabet, out.initial, out.finals,
                          out.transitions, states=out.states,
                          saturated=None, transitively_reduced=True)


def _tags_consistent(fr: _Frontier, tags: tuple) -> bool:
    """Ghost closures must be transitive (or duplicates of a real parallel
    channel); real closures must be covering and unique per source class."""
    closing = list(zip(fr.closing_ports, fr.closing_classes, fr.redundant))
    real_classes = [cls for p, cls, _ in closing if tags[p - 1] == "r"]
    if len(real_classes) != len(set(real_classes)):
        return False
    for p, cls, redundant in closing:
        if tags[p - 1] == "r":
            if redundant:
                return False
        else:
            has_real_sibling = cls in real_classes
            if not (redundant or has_real_sibling):
                return False
    return True


def _emit_reduced_letter(fr: _Frontier, tags: tuple):
    """Edges of the output letter contributed by existing real channels; born
    channels are attached separately per tag guess."""
    in_rank = {}
    for p in range(1, len(tags) + 1):
        if tags[p - 1] == "r":
            in_rank[p] = len(in_rank) + 1
    edges = []
    for p in fr.closing_ports:
        if tags[p - 1] == "r":
            edges.append((("i", in_rank[p]), ("c", 0)))
    bypass_tag_slots = ["g"] * len(fr.new_channels)
    for p, o in fr.port_map.items():
        bypass_tag_slots[o - 1] = tags[p - 1]
    return (len(in_rank), tuple(edges), dict(fr.port_map), in_rank), bypass_tag_slots


def _attach_born(partial, fr: _Frontier, born_tags: tuple) -> Slice:
    n_in, edges, port_map, in_rank = partial
    new_tags = {}
    for p, o in port_map.items():
        new_tags[o] = "r" if p in in_rank else None
        if new_tags[o] == "r":
            new_tags[o] = ("bypass", in_rank[p])
    for o, t in zip(fr.born_ports, born_tags):
        new_tags[o] = "born" if t == "r" else None
    out_rank = {}
    for o in sorted(new_tags):
        if new_tags[o] is not None:
            out_rank[o] = len(out_rank) + 1
    all_edges = list(edges)
    for o, t in new_tags.items():
        if t is None:
            continue
        if t == "born":
            all_edges.append((("c", 0), ("o", out_rank[o])))
        else:
            all_edges.append((("i", t[1]), ("o", out_rank[o])))
    return Slice(n_in, len(out_rank), (fr.letter.label,), all_edges)


def poset_complement(a: SliceAutomaton, config: RunConfig = DEFAULT_CONFIG) -> SliceAutomaton:
    """Complement of a's poset language within all c-coverable partial orders.

    Requires a saturated and transitively reduced: otherwise the syntactic
    difference does not denote the poset-level complement. Reducedness is
    decided exactly when unknown; saturation relies on the construction flag.
    """
    if a.transitively_reduced is None:
        a = SliceAutomaton(a.c, a.labels, a.alphabet, a.initial, a.finals,
                           a.transitions, states=a.states, saturated=a.saturated,
                           transitively_reduced=includes(a, reduced_automaton(a.c, a.labels),
                                                         config))
    if not a.transitively_reduced:
        raise PreconditionError(
            "poset complement requires a transitively reduced automaton; "
            "apply transitive_reduce_automaton first")
    if a.saturated is not True:
        raise PreconditionError(
            "poset complement requires a saturated automaton (construction flag); "
            "verify with check_saturated_upto or rebuild via a saturating construction")
    return difference(universal_automaton(a.c, a.labels), a, config)


def check_saturated_upto(a: SliceAutomaton, n: int,
                         config: RunConfig = DEFAULT_CONFIG) -> Optional[tuple]:
    """Bounded saturation check: every unit decomposition (of any width) of
    every accepted DAG with <= n vertices must be accepted.

    Returns None if no violation is found, else (dag, decomposition) where the
    decomposition is missing from the language (or not representable at all).
    """
    for h in a.graph_members_up_to(n, config):
        wide = max(len(h.edges), 1)
        for u in unit_decompositions(h, wide, config=config):
            if u.width() > a.c or not a.accepts(u):
                return (h, u)
    return None
