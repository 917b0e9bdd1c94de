"""Slice automata: validation, membership, Boolean operations, file format."""

import pytest

from slw.automata import (SliceAutomaton, difference, equivalent, from_decompositions,
                          includes, intersect, union, valid_sequences)
from slw.config import InputError
from slw.constructions import universal_automaton
from slw.dag import LabeledDag
from slw.slices import UnitDecomposition, unit_alphabet, unit_decompositions, unit_slice

from conftest import poset_keys

T = ("t",)
ALPH = unit_alphabet(1, T)
INIT_FINAL = unit_slice("t", 0, 0)
INIT = unit_slice("t", 0, 1)
MID = unit_slice("t", 1, 1)
FINAL = unit_slice("t", 1, 0)


def chain_automaton():
    """All chains over {t}: q0 -INIT-> q1 -MID-> q1 -FINAL-> q2, plus one-vertex."""
    return SliceAutomaton(1, T, ALPH, 0, {2},
                          [(0, INIT, 1), (1, MID, 1), (1, FINAL, 2), (0, INIT_FINAL, 2)])


class TestValidation:
    def test_valid_chain_automaton(self):
        assert chain_automaton().validate() == []

    def test_condition_one(self):
        a = SliceAutomaton(1, T, ALPH, 0, {1}, [(0, FINAL, 1)])
        report = a.validate()
        assert any("condition 1" in r for r in report)

    def test_condition_two(self):
        a = SliceAutomaton(1, T, ALPH, 0, {1}, [(0, INIT, 1)])
        report = a.validate()
        assert any("condition 2" in r for r in report)

    def test_condition_three(self):
        wide = unit_alphabet(2, T)
        out1 = next(s for s in wide if s.n_in == 0 and s.n_out == 1)
        in2 = next(s for s in wide if s.n_in == 2 and s.n_out == 0)
        a = SliceAutomaton(2, T, wide, 0, {2}, [(0, out1, 1), (1, in2, 2)])
        report = a.validate()
        assert any("condition 3" in r for r in report)


class TestMembership:
    def test_empty_automaton_rejects(self):
        empty = SliceAutomaton(1, T, ALPH, 0, (), ())
        u = UnitDecomposition([INIT_FINAL])
        assert not empty.accepts(u)

    def test_from_decompositions_accepts_exactly(self):
        h = LabeledDag({0: "t", 1: "t"}, [(0, 1)])
        uds = unit_decompositions(h, 1)
        a = from_decompositions(1, T, uds)
        assert all(a.accepts(u) for u in uds)
        assert not a.accepts(UnitDecomposition([INIT_FINAL]))

    def test_universal_accepts_antichain_decomposition(self):
        h = LabeledDag({0: "t", 1: "t"}, [])
        u2 = universal_automaton(2, T)
        assert all(u2.accepts(u) for u in unit_decompositions(h, 2))


class TestBooleanOps:
    def test_intersect_with_valid_sequences_is_identity(self):
        a = chain_automaton()
        assert equivalent(intersect(a, valid_sequences(1, T)), a)

    def test_union_with_empty_is_identity(self):
        a = chain_automaton()
        empty = SliceAutomaton(1, T, ALPH, 0, (), ())
        assert equivalent(union(a, empty), a)

    def test_alphabet_mismatch(self):
        a = chain_automaton()
        b = valid_sequences(1, ("a",))
        with pytest.raises(InputError):
            intersect(a, b)

    def test_poset_level_intersection(self):
        # with both operands saturated and reduced, the poset members of the
        # product are the intersection of the members (<= 5 vertices)
        u2 = universal_automaton(2, T)
        chains = from_decompositions(2, T, [
            u for n in range(1, 5)
            for u in unit_decompositions(
                LabeledDag({i: "t" for i in range(n)},
                           [(i, i + 1) for i in range(n - 1)]), 2)])
        both = intersect(chains, u2)
        m = poset_keys(both.po_members_up_to(5))
        assert m == poset_keys(chains.po_members_up_to(5)) & poset_keys(u2.po_members_up_to(5))

    def test_difference_language(self):
        a = valid_sequences(1, T)
        b = chain_automaton()
        d = difference(a, b)
        # chains are exactly the valid sequences at width 1 whose composed DAG
        # is connected; the difference holds the disconnected ones
        w = d.shortest_accepted()
        assert w is not None and len(w) == 2
        assert all(s.n_out == 0 for s in w)

    def test_validity_preserved_by_ops(self):
        a = chain_automaton()
        u1 = universal_automaton(1, T)
        for out in (intersect(a, u1), union(a, u1), difference(u1, a)):
            assert out.validate() == []


class TestDecisions:
    def test_empty_after_trim(self):
        a = SliceAutomaton(1, T, ALPH, 0, {2}, [(0, INIT, 1)], states={0, 1, 2})
        assert a.is_empty()

    def test_includes_reflexive(self):
        a = chain_automaton()
        assert includes(a, a)

    def test_chains_included_in_universal(self):
        a = chain_automaton()
        assert includes(a, universal_automaton(1, T))
        short_chains = from_decompositions(1, T, [
            u for n in range(1, 4)
            for u in unit_decompositions(
                LabeledDag({i: "t" for i in range(n)},
                           [(i, i + 1) for i in range(n - 1)]), 1)])
        assert includes(short_chains, universal_automaton(1, T))
        assert not includes(universal_automaton(1, T), short_chains)

    def test_po_members_of_universal_one(self):
        mem = universal_automaton(1, T).po_members_up_to(3)
        sizes = sorted((m.n_vertices(), len(m.order)) for m in mem)
        assert sizes == [(1, 0), (2, 1), (3, 3)]


class TestSerialization:
    def test_round_trip(self):
        a = chain_automaton()
        b = SliceAutomaton.from_text(a.to_text())
        assert equivalent(a, b)
        assert b.to_text() == SliceAutomaton.from_text(b.to_text()).to_text()

    def test_flags_survive(self):
        u = universal_automaton(1, T)
        b = SliceAutomaton.from_text(u.to_text())
        assert b.saturated and b.transitively_reduced

    def test_deterministic_bytes(self):
        a = universal_automaton(2, ("a", "b"))
        assert a.to_text() == universal_automaton(2, ("a", "b")).to_text()

    def test_malformed_header(self):
        with pytest.raises(InputError):
            SliceAutomaton.from_text("automaton c=1\n")
