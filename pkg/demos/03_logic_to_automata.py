"""From logic to automata: order formulas over posets, graph formulas over
DAGs, and their compilation to slice automata.

The order atom x < y is rewritten as path reachability on the Hasse diagram;
conjoining the reduced-DAG and path-coverability builtins then yields a
saturated automaton whose poset language is exactly the formula's models.
"""

from slw import (LabeledDag, LabeledPoset, compile_formula, evaluate_dag, evaluate_po,
                 parse, po_automaton, to_graph_formula, to_text)

total = parse("ALL x. ALL y. (x<y | y<x | x=y)")
chain = LabeledPoset({0: "t", 1: "t"}, [(0, 1)])
anti = LabeledPoset({0: "t", 1: "t"}, [])
print("total order on a chain:", evaluate_po(chain, total))
print("total order on an antichain:", evaluate_po(anti, total))

print("\nrewritten for Hasse diagrams:")
print(" ", to_text(to_graph_formula(parse("EX x. EX y. x<y")))[:70], "...")

some_a = parse("EX x. l(x,a)")
aut = compile_formula(some_a, 1, ("a", "b"))
print("\ncompiled 'some vertex labeled a' at width 1:", aut)

h_yes = LabeledDag({0: "b", 1: "a"}, [(0, 1)])
h_no = LabeledDag({0: "b", 1: "b"}, [(0, 1)])
from slw import unit_decompositions
print("  b->a accepted:", all(aut.accepts(u) for u in unit_decompositions(h_yes, 1)))
print("  b->b accepted:", any(aut.accepts(u) for u in unit_decompositions(h_no, 1)))
print("  matches the evaluator:", evaluate_dag(h_yes, some_a), evaluate_dag(h_no, some_a))

# The poset automaton of the total-order formula at width 2 denotes chains
# only: the two-event antichain is representable at width 2 but unordered.
pa = po_automaton(total, 2, ("t",))
print("\nposet automaton of the total-order formula at width 2:", pa)
print("members up to 3 vertices:")
for po in pa.po_members_up_to(3):
    print("  ", po)
