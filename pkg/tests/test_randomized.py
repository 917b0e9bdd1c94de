"""Seeded differential sweeps: compiled automata against the brute-force
evaluators on randomly generated closed formulas, plus stress probes that
earlier surfaced edge cases (cyclic-language reduction, complement
involution, dead transitions)."""

import random

from slw.automata import valid_sequences
from slw.compiler import compile_formula, po_automaton
from slw.constructions import poset_complement, transitive_reduce_automaton
from slw.dag import all_dags
from slw.mso import (And, EdgeSource, EdgeTarget, Exists, HasLabel, InSet, Less, Not,
                     Or, Truth, Var, EDGE, ESET, VERTEX, VSET, evaluate_dag, evaluate_po,
                     free_vars, to_text)
from slw.netaut import net_automaton
from slw.ptnet import Place, PtNet, causal_orders, executions
from slw.slices import unit_decompositions

from conftest import cached_po_automaton, poset_keys
from slw import corpus


def random_graph_formula(rng, depth, scope):
    vertex_vars = [v for v in scope if v.sort == VERTEX]
    edge_vars = [v for v in scope if v.sort == EDGE]
    vset_vars = [v for v in scope if v.sort == VSET]
    eset_vars = [v for v in scope if v.sort == ESET]
    atoms = [lambda: Truth(rng.random() < 0.5)]
    if vertex_vars:
        atoms.append(lambda: HasLabel(rng.choice(vertex_vars), rng.choice("ab")))
        if vset_vars:
            atoms.append(lambda: InSet(rng.choice(vertex_vars), rng.choice(vset_vars)))
    if edge_vars and vertex_vars:
        atoms.append(lambda: EdgeSource(rng.choice(edge_vars), rng.choice(vertex_vars)))
        atoms.append(lambda: EdgeTarget(rng.choice(edge_vars), rng.choice(vertex_vars)))
    if edge_vars and eset_vars:
        atoms.append(lambda: InSet(rng.choice(edge_vars), rng.choice(eset_vars)))
    if depth == 0:
        return rng.choice(atoms)()
    roll = rng.random()
    if roll < 0.35 and len(scope) < 3:
        sort = rng.choice([VERTEX, EDGE, VSET, ESET])
        v = Var(f"v{len(scope)}{sort[0]}", sort)
        body = random_graph_formula(rng, depth - 1, scope + [v])
        q = Exists(v, body)
        return q if rng.random() < 0.7 else Not(Exists(v, Not(body)))
    if roll < 0.55:
        return Not(random_graph_formula(rng, depth - 1, scope))
    op = And if rng.random() < 0.5 else Or
    return op(random_graph_formula(rng, depth - 1, scope),
              random_graph_formula(rng, depth - 1, scope))


def random_order_formula(rng, depth, scope):
    vertex_vars = [v for v in scope if v.sort == VERTEX]
    vset_vars = [v for v in scope if v.sort == VSET]
    atoms = [lambda: Truth(rng.random() < 0.5)]
    if vertex_vars:
        atoms.append(lambda: HasLabel(rng.choice(vertex_vars), rng.choice("ab")))
        if len(vertex_vars) >= 2:
            atoms.append(lambda: Less(rng.choice(vertex_vars), rng.choice(vertex_vars)))
        if vset_vars:
            atoms.append(lambda: InSet(rng.choice(vertex_vars), rng.choice(vset_vars)))
    if depth == 0:
        return rng.choice(atoms)()
    roll = rng.random()
    if roll < 0.4 and len(scope) < 4:
        sort = rng.choice([VERTEX, VERTEX, VSET])
        v = Var(f"o{len(scope)}{sort[0]}", sort)
        body = random_order_formula(rng, depth - 1, scope + [v])
        return Exists(v, body) if rng.random() < 0.7 \
            else Not(Exists(v, Not(body)))
    if roll < 0.6:
        return Not(random_order_formula(rng, depth - 1, scope))
    op = And if rng.random() < 0.5 else Or
    return op(random_order_formula(rng, depth - 1, scope),
              random_order_formula(rng, depth - 1, scope))


def _closed_samples(generator, rng, want, depth=4):
    out = []
    tries = 0
    while len(out) < want and tries < 500:
        tries += 1
        phi = generator(rng, depth, [])
        if not free_vars(phi):
            out.append(phi)
    assert len(out) == want
    return out


def test_random_graph_formulas_match_evaluator():
    labels = ("a", "b")
    for c, seed, want in ((1, 42, 20), (2, 1234, 12)):
        sweep = []
        for n in (1, 2, 3):
            for h in all_dags(n, list(labels)):
                uds = unit_decompositions(h, c)
                if uds:
                    sweep.append((h, uds))
        rng = random.Random(seed)
        for phi in _closed_samples(random_graph_formula, rng, want):
            aut = compile_formula(phi, c, labels)
            for h, uds in sweep:
                expected = evaluate_dag(h, phi)
                for u in uds:
                    assert aut.accepts(u) == expected, (to_text(phi), h)


def test_random_order_formulas_match_evaluator():
    labels = ("a", "b")
    hasse = []
    for n in (1, 2, 3):
        for h in all_dags(n, list(labels)):
            if h.is_transitively_reduced() and h.min_path_cover()[0] <= 1:
                hasse.append((h, h.transitive_closure(), unit_decompositions(h, 1)))
    rng = random.Random(7)
    for phi in _closed_samples(random_order_formula, rng, 12):
        aut = po_automaton(phi, 1, labels)
        for h, po, uds in hasse:
            expected = evaluate_po(po, phi)
            for u in uds:
                assert aut.accepts(u) == expected, (to_text(phi), h)


def test_reduction_of_a_cyclic_language():
    # the full width-2 valid-sequence language is infinite and contains
    # non-reduced DAGs; its reduction keeps the poset language intact
    vs2 = valid_sequences(2, ("t",))
    tr_vs = transitive_reduce_automaton(vs2)
    assert poset_keys(tr_vs.po_members_up_to(5)) == poset_keys(vs2.po_members_up_to(5))
    assert all(g.is_transitively_reduced() for g in tr_vs.graph_members_up_to(5))
    assert tr_vs.validate() == []


def test_poset_complement_involution():
    even = cached_po_automaton(corpus.EVEN_CHAIN, 1, ("a",))
    twice = poset_complement(poset_complement(even))
    assert poset_keys(twice.po_members_up_to(5)) == poset_keys(even.po_members_up_to(5))


def test_dead_transition_net():
    # t needs two tokens from a place holding one: nothing ever fires
    net = PtNet(("t",), [Place(1, puts={"t": 2}, takes={"t": 2}),
                         Place(1, puts={"t": 1}, takes={"t": 1})],
                bound=2, name="dead")
    for sem, oracle in (("ex", executions), ("cau", causal_orders)):
        aut = net_automaton(net, 2, sem)
        assert aut.is_empty()
        assert not oracle(net, 4, 2)
