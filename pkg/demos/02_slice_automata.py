"""Slice automata: languages of decompositions, hence of DAGs and posets.

The universal automaton accepts every decomposition of every Hasse diagram
coverable by c paths; it is the complementation baseline for poset languages.
The transitive-reduction transform rewrites any automaton so its DAGs become
Hasse diagrams while the poset language stays fixed.
"""

from slw import (LabeledDag, from_decompositions, intersect, poset_complement,
                 transitive_reduce_automaton, unit_decompositions, universal_automaton)

T = ("t",)
u1 = universal_automaton(1, T)
u2 = universal_automaton(2, T)
print("universal width 1:", u1)
print("universal width 2:", u2)

anti = LabeledDag({0: "t", 1: "t"}, [])
decs = unit_decompositions(anti, 2)
print("\ntwo incomparable events need two paths:")
print("  accepted at width 1:", any(u1.accepts(u) for u in decs))
print("  accepted at width 2:", all(u2.accepts(u) for u in decs))

print("\nposet members of the width-1 universe up to 3 vertices (chains):")
for po in u1.po_members_up_to(3):
    print("  ", po)

# An automaton accepting only the 3-chain with a redundant shortcut edge:
# its transitive reduction denotes the plain 3-chain.
chord = LabeledDag({0: "a", 1: "b", 2: "c"}, [(0, 1), (1, 2), (0, 2)])
a = from_decompositions(2, ("a", "b", "c"), unit_decompositions(chord, 2))
tr_a = transitive_reduce_automaton(a)
print("\ngraph members before reduction:", [g.edges for g in a.graph_members_up_to(4)])
print("graph members after reduction: ", [g.edges for g in tr_a.graph_members_up_to(4)])
print("poset language unchanged:",
      {p.canonical_key() for p in a.po_members_up_to(4)}
      == {p.canonical_key() for p in tr_a.po_members_up_to(4)})

comp = poset_complement(u2)
print("\ncomplement of the whole width-2 universe is empty:", comp.is_empty())
