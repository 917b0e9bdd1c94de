"""Finite automata over slice alphabets.

A slice automaton is an NFA whose letters are unit slices (or annotated unit
slices, for the logic compiler): transitions out of the initial state carry
initial slices, transitions into final states carry final slices, and
consecutive transitions carry gluable slices. Languages are sets of unit
decompositions; the empty word is never a member.

Automata are immutable; Boolean operations return fresh automata; the
determinization of an automaton is memoized behind a lock so concurrent
readers see consistent values.
"""

from __future__ import annotations

import threading
from collections import deque
from typing import Iterable, Iterator, Optional, Sequence

from .config import DEFAULT_CONFIG, InputError, ResourceError, RunConfig
from .dag import LabeledDag, LabeledPoset, dedup_posets
from .slices import Slice, UnitDecomposition, can_glue, compose, from_literal, to_literal, unit_alphabet

_det_lock = threading.Lock()


def letter_base(letter) -> Slice:
    """The underlying unit slice of a letter (annotated letters carry `.base`)."""
    return getattr(letter, "base", letter)


class SliceAutomaton:
    """NFA over a slice alphabet, with optional language-property flags.

    `saturated` / `transitively_reduced` record properties guaranteed by the
    construction that produced the automaton; None means unknown.
    """

    def __init__(self, c: int, labels: Sequence, alphabet: Sequence, initial,
                 finals: Iterable, transitions: Iterable[tuple],
                 states: Optional[Iterable] = None,
                 saturated: Optional[bool] = None,
                 transitively_reduced: Optional[bool] = None):
        self.c = c
        self.labels = tuple(labels)
        self.alphabet = tuple(alphabet)
        self._alphabet_set = frozenset(self.alphabet)
        self.initial = initial
        self.transitions = frozenset(transitions)
        self.finals = frozenset(finals)
        st = set(states) if states is not None else set()
        st.add(initial)
        for q, s, q2 in self.transitions:
            st.add(q)
            st.add(q2)
        self.states = frozenset(st)
        if not self.finals <= self.states:
            raise InputError("final states must be states")
        for q, s, q2 in self.transitions:
            if s not in self._alphabet_set:
                raise InputError(f"transition letter not in the declared alphabet: {s!r}")
        self.saturated = saturated
        self.transitively_reduced = transitively_reduced
        self._det = None
        self._index = None

    # -- indexes ---------------------------------------------------------------

    def _out(self) -> dict:
        if self._index is None:
            idx = {}
            for q, s, q2 in self.transitions:
                idx.setdefault(q, []).append((s, q2))
            for q in idx:
                idx[q].sort(key=lambda t: (_letter_key(t[0]), repr(t[1])))
            self._index = idx
        return self._index

    def step(self, states: frozenset, letter) -> frozenset:
        out = self._out()
        nxt = set()
        for q in states:
            for s, q2 in out.get(q, ()):
                if s == letter:
                    nxt.add(q2)
        return frozenset(nxt)

    # -- Def-2 validation --------------------------------------------------------

    def validate(self) -> list[str]:
        """Report every violated slice-automaton condition; empty iff valid."""
        report = []
        for q, s, q2 in sorted(self.transitions, key=_trans_key):
            base = letter_base(s)
            if q == self.initial and not base.is_initial():
                report.append(
                    f"condition 1: transition out of the initial state carries a "
                    f"non-initial slice: {q!r} --{to_literal(base)}--> {q2!r}")
            if q2 in self.finals and not base.is_final():
                report.append(
                    f"condition 2: transition into a final state carries a "
                    f"non-final slice: {q!r} --{to_literal(base)}--> {q2!r}")
        out = self._out()
        for q, s, q2 in sorted(self.transitions, key=_trans_key):
            for s2, q3 in out.get(q2, ()):
                if not can_glue(letter_base(s), letter_base(s2)):
                    report.append(
                        f"condition 3: consecutive transitions carry non-gluable slices: "
                        f"{q!r} --{to_literal(letter_base(s))}--> {q2!r} "
                        f"--{to_literal(letter_base(s2))}--> {q3!r}")
        return report

    # -- language primitives -------------------------------------------------------

    def accepts(self, u) -> bool:
        """NFA acceptance over the letter sequence (a UnitDecomposition or tuple)."""
        letters = tuple(u)
        if not letters:
            return False
        cur = frozenset([self.initial])
        for s in letters:
            cur = self.step(cur, s)
            if not cur:
                return False
        return bool(cur & self.finals)

    def trim(self) -> "SliceAutomaton":
        """Drop states not on any accepting path."""
        out = self._out()
        reach = {self.initial}
        queue = deque([self.initial])
        while queue:
            q = queue.popleft()
            for s, q2 in out.get(q, ()):
                if q2 not in reach:
                    reach.add(q2)
                    queue.append(q2)
        rev = {}
        for q, s, q2 in self.transitions:
            rev.setdefault(q2, []).append(q)
        co = set(self.finals)
        queue = deque(self.finals)
        while queue:
            q = queue.popleft()
            for q2 in rev.get(q, ()):
                if q2 not in co:
                    co.add(q2)
                    queue.append(q2)
        live = reach & co
        live.add(self.initial)
        trans = [(q, s, q2) for q, s, q2 in self.transitions if q in live and q2 in live]
        return SliceAutomaton(self.c, self.labels, self.alphabet, self.initial,
                              self.finals & live, trans, states=live,
                              saturated=self.saturated,
                              transitively_reduced=self.transitively_reduced)

    def is_empty(self) -> bool:
        """True iff no nonempty decomposition is accepted."""
        t = self.trim()
        return not any(q2 in t.finals for _, _, q2 in t.transitions)

    def relabel(self) -> "SliceAutomaton":
        """Canonical integer state names in BFS order (deterministic serialization)."""
        out = self._out()
        names = {self.initial: 0}
        queue = deque([self.initial])
        while queue:
            q = queue.popleft()
            for s, q2 in out.get(q, ()):
                if q2 not in names:
                    names[q2] = len(names)
                    queue.append(q2)
        for q in sorted(self.states - set(names), key=repr):
            names[q] = len(names)
        trans = [(names[q], s, names[q2]) for q, s, q2 in self.transitions]
        return SliceAutomaton(self.c, self.labels, self.alphabet, 0,
                              {names[q] for q in self.finals}, trans,
                              states=set(names.values()),
                              saturated=self.saturated,
                              transitively_reduced=self.transitively_reduced)

    # -- word enumeration ------------------------------------------------------------

    def enumerate_words(self, max_len: int,
                        config: RunConfig = DEFAULT_CONFIG) -> Iterator[tuple]:
        """All accepted words of length <= max_len (letters as stored)."""
        out = self._out()
        budget = config.max_words

        def rec(q, word):
            nonlocal budget
            budget -= 1
            if budget < 0:
                raise ResourceError("word-enumeration cap exceeded",
                                    context=f"max_words={config.max_words}")
            if word and q in self.finals:
                yield tuple(word)
            if len(word) == max_len:
                return
            for s, q2 in out.get(q, ()):
                word.append(s)
                yield from rec(q2, word)
                word.pop()

        yield from rec(self.initial, [])

    def shortest_accepted(self) -> Optional[tuple]:
        """A length-minimal accepted word, or None (BFS, deterministic)."""
        out = self._out()
        seen = {self.initial}
        queue = deque([(self.initial, ())])
        while queue:
            q, word = queue.popleft()
            for s, q2 in out.get(q, ()):
                w2 = word + (s,)
                if q2 in self.finals:
                    return w2
                if q2 not in seen:
                    seen.add(q2)
                    queue.append((q2, w2))
        return None

    def po_members_up_to(self, n: int,
                         config: RunConfig = DEFAULT_CONFIG) -> list[LabeledPoset]:
        """Posets of accepted decompositions with <= n slices, up to isomorphism."""
        if n > config.max_enum_vertices:
            raise ResourceError(f"member enumeration beyond cap: {n}",
                                context=f"max_enum_vertices={config.max_enum_vertices}")
        posets = []
        for key in {tuple(letter_base(s) for s in w)
                    for w in self.enumerate_words(n, config)}:
            posets.append(compose(UnitDecomposition(key)).transitive_closure())
        return dedup_posets(posets)

    def graph_members_up_to(self, n: int,
                            config: RunConfig = DEFAULT_CONFIG) -> list[LabeledDag]:
        """Composed DAGs of accepted decompositions with <= n slices (deduplicated)."""
        if n > config.max_enum_vertices:
            raise ResourceError(f"member enumeration beyond cap: {n}",
                                context=f"max_enum_vertices={config.max_enum_vertices}")
        by_key = {}
        for w in self.enumerate_words(n, config):
            g = compose(UnitDecomposition(tuple(letter_base(s) for s in w)))
            by_key.setdefault(g.canonical_key(), g)
        return [by_key[k] for k in sorted(by_key)]

    # -- determinization (internal, memoized) ------------------------------------------

    def determinize(self, config: RunConfig = DEFAULT_CONFIG) -> "_Dfa":
        with _det_lock:
            if self._det is not None:
                return self._det
        out = self._out()
        start = frozenset([self.initial])
        table = {}
        finals = set()
        queue = deque([start])
        seen = {start}
        while queue:
            if len(seen) > config.max_states:
                raise ResourceError("determinization state cap exceeded",
                                    context=f"max_states={config.max_states}")
            p = queue.popleft()
            if p & self.finals:
                finals.add(p)
            by_letter = {}
            for q in p:
                for s, q2 in out.get(q, ()):
                    by_letter.setdefault(s, set()).add(q2)
            for s, nxt in by_letter.items():
                nxt = frozenset(nxt)
                table[(p, s)] = nxt
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        dfa = _Dfa(start, table, frozenset(finals))
        with _det_lock:
            self._det = dfa
        return dfa

    # -- serialization ------------------------------------------------------------------

    def to_text(self) -> str:
        a = self.relabel()
        header = f"slice-automaton c={a.c} alphabet={','.join(str(x) for x in a.labels)}"
        if a.saturated:
            header += " saturated"
        if a.transitively_reduced:
            header += " reduced"
        lines = [header]
        for q in sorted(a.states):
            flags = []
            if q == a.initial:
                flags.append("initial")
            if q in a.finals:
                flags.append("final")
            lines.append(" ".join(["state", str(q)] + flags))
        for q, s, q2 in sorted(a.transitions, key=_trans_key):
            lines.append(f"trans {q} {to_literal(letter_base(s))} {q2}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str) -> "SliceAutomaton":
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if not lines or not lines[0].startswith("slice-automaton"):
            raise InputError("expected a 'slice-automaton c=<c> alphabet=<T>' header")
        header = lines[0].split()
        c = None
        labels = ()
        saturated = None
        reduced = None
        for tok in header[1:]:
            if tok.startswith("c="):
                c = int(tok[2:])
            elif tok.startswith("alphabet="):
                labels = tuple(tok[len("alphabet="):].split(","))
            elif tok == "saturated":
                saturated = True
            elif tok == "reduced":
                reduced = True
            else:
                raise InputError(f"unknown header token {tok!r}")
        if c is None or not labels:
            raise InputError("header must declare c= and alphabet=")
        states, initial, finals, trans = set(), None, set(), []
        for ln in lines[1:]:
            parts = ln.split(None, 2)
            if parts[0] == "state":
                rest = parts[1:] if len(parts) > 1 else []
                if not rest:
                    raise InputError(f"malformed state line: {ln!r}")
                name = rest[0]
                flagtext = rest[1] if len(rest) > 1 else ""
                states.add(name)
                if "initial" in flagtext.split():
                    if initial is not None:
                        raise InputError("multiple initial states declared")
                    initial = name
                if "final" in flagtext.split():
                    finals.add(name)
            elif parts[0] == "trans":
                if len(parts) < 3:
                    raise InputError(f"malformed trans line: {ln!r}")
                src = parts[1]
                rest = parts[2]
                lit_end = rest.rindex("}")
                literal = rest[: lit_end + 1].strip()
                dst = rest[lit_end + 1:].strip()
                if not dst:
                    raise InputError(f"malformed trans line: {ln!r}")
                trans.append((src, from_literal(literal), dst))
            else:
                raise InputError(f"unexpected line in automaton file: {ln!r}")
        if initial is None:
            raise InputError("no initial state declared")
        alphabet = unit_alphabet(c, labels)
        return SliceAutomaton(c, labels, alphabet, initial, finals, trans, states=states,
                              saturated=saturated, transitively_reduced=reduced)

    def __repr__(self):
        return (f"SliceAutomaton(c={self.c}, labels={self.labels}, "
                f"|Q|={len(self.states)}, |trans|={len(self.transitions)})")


class _Dfa:
    """Deterministic view used for complementation; missing letters mean reject."""

    __slots__ = ("start", "table", "finals")

    def __init__(self, start, table, finals):
        self.start = start
        self.table = table
        self.finals = finals

    def step(self, state, letter):
        """None acts as the rejecting sink."""
        if state is None:
            return None
        return self.table.get((state, letter))

    def accepting(self, state) -> bool:
        return state is not None and state in self.finals


# -- Boolean operations ------------------------------------------------------------


def _require_same_alphabet(a: SliceAutomaton, b: SliceAutomaton):
    if a.c != b.c or a.labels != b.labels or a.alphabet != b.alphabet:
        raise InputError("operands must share the same (c, T) slice alphabet")


def intersect(a: SliceAutomaton, b: SliceAutomaton) -> SliceAutomaton:
    """Product automaton: L = L(a) ∩ L(b)."""
    _require_same_alphabet(a, b)
    out_b = {}
    for q, s, q2 in b.transitions:
        out_b.setdefault((q, s), set()).add(q2)
    start = (a.initial, b.initial)
    trans = []
    seen = {start}
    queue = deque([start])
    a_out = a._out()
    while queue:
        qa, qb = queue.popleft()
        for s, qa2 in a_out.get(qa, ()):
            for qb2 in out_b.get((qb, s), ()):
                trans.append(((qa, qb), s, (qa2, qb2)))
                if (qa2, qb2) not in seen:
                    seen.add((qa2, qb2))
                    queue.append((qa2, qb2))
    finals = {q for q in seen if q[0] in a.finals and q[1] in b.finals}
    sat = True if (a.saturated and b.saturated) else None
    tr = True if (a.transitively_reduced or b.transitively_reduced) else None
    return SliceAutomaton(a.c, a.labels, a.alphabet, start, finals, trans, states=seen,
                          saturated=sat, transitively_reduced=tr).trim()


def union(a: SliceAutomaton, b: SliceAutomaton) -> SliceAutomaton:
    """Disjoint union behind a fresh initial state: L = L(a) ∪ L(b)."""
    _require_same_alphabet(a, b)
    start = ("u",)
    trans = [((("a", q)), s, ("a", q2)) for q, s, q2 in a.transitions]
    trans += [((("b", q)), s, ("b", q2)) for q, s, q2 in b.transitions]
    for q, s, q2 in a.transitions:
        if q == a.initial:
            trans.append((start, s, ("a", q2)))
    for q, s, q2 in b.transitions:
        if q == b.initial:
            trans.append((start, s, ("b", q2)))
    finals = {("a", q) for q in a.finals} | {("b", q) for q in b.finals}
    sat = True if (a.saturated and b.saturated) else None
    tr = True if (a.transitively_reduced and b.transitively_reduced) else None
    return SliceAutomaton(a.c, a.labels, a.alphabet, start, finals, trans,
                          saturated=sat, transitively_reduced=tr).trim()


def difference(a: SliceAutomaton, b: SliceAutomaton,
               config: RunConfig = DEFAULT_CONFIG) -> SliceAutomaton:
    """L = L(a) \\ L(b): b is determinized and complemented over the full
    alphabet of valid letter sequences, then intersected with a."""
    _require_same_alphabet(a, b)
    dfa = b.determinize(config)
    start = (a.initial, dfa.start)
    trans = []
    seen = {start}
    queue = deque([start])
    a_out = a._out()
    while queue:
        qa, p = queue.popleft()
        for s, qa2 in a_out.get(qa, ()):
            p2 = dfa.step(p, s)
            nxt = (qa2, p2)
            trans.append(((qa, p), s, nxt))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    finals = {(qa, p) for qa, p in seen if qa in a.finals and not dfa.accepting(p)}
    sat = True if (a.saturated and b.saturated) else None
    tr = True if a.transitively_reduced else None
    return SliceAutomaton(a.c, a.labels, a.alphabet, start, finals, trans, states=seen,
                          saturated=sat, transitively_reduced=tr).trim()


def includes(a: SliceAutomaton, b: SliceAutomaton,
             config: RunConfig = DEFAULT_CONFIG) -> bool:
    """True iff L(a) ⊆ L(b). With b saturated and both transitively reduced,
    this decides poset-language inclusion as well."""
    return difference(a, b, config).is_empty()


def disjoint(a: SliceAutomaton, b: SliceAutomaton) -> bool:
    """True iff L(a) ∩ L(b) = ∅. With both transitively reduced and one
    saturated, this decides poset-language disjointness as well."""
    return intersect(a, b).is_empty()


def equivalent(a: SliceAutomaton, b: SliceAutomaton,
               config: RunConfig = DEFAULT_CONFIG) -> bool:
    return includes(a, b, config) and includes(b, a, config)


def from_decompositions(c: int, labels: Sequence,
                        decomps: Iterable) -> SliceAutomaton:
    """A trie-shaped automaton accepting exactly the given decompositions."""
    labels = tuple(labels)
    alphabet = unit_alphabet(c, labels)
    trans = set()
    finals = set()
    root = ()
    states = {root}
    for u in decomps:
        prefix = root
        letters = tuple(u)
        for s in letters:
            nxt = prefix + (s,)
            trans.add((prefix, s, nxt))
            states.add(nxt)
            prefix = nxt
        finals.add(prefix)
    return SliceAutomaton(c, labels, alphabet, root, finals, trans, states=states).relabel()


def valid_sequences(c: int, labels: Sequence) -> SliceAutomaton:
    """The automaton of all valid letter sequences over the (c, T) unit alphabet
    (first letter initial, consecutive letters gluable, last letter final).

    This is the complementation baseline; it is NOT the automaton of all
    width-c-coverable partial orders.
    """
    labels = tuple(labels)
    alphabet = unit_alphabet(c, labels)
    start = "start"
    trans = []
    for s in alphabet:
        src = start if s.n_in == 0 else f"w{s.n_in}"
        trans.append((src, s, f"w{s.n_out}"))
        if s.n_in == 0:
            trans.append((f"w0", s, f"w{s.n_out}"))
    return SliceAutomaton(c, labels, alphabet, start, {"w0"}, trans).trim()


def _letter_key(s):
    base = letter_base(s)
    return (base.sort_key(), repr(getattr(s, "bits", "")))


def _trans_key(t):
    q, s, q2 = t
    return (repr(q), _letter_key(s), repr(q2))
