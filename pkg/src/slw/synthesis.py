"""Region-based synthesis and the five top-level decision procedures.

A candidate place is feasible for a specification automaton when the behavior
of the single-place probe net includes the specified language; the synthesized
net is the union of all feasible places (with full multiplicity under the
causal semantics, where repetition can enlarge behavior). Minimality for the
execution semantics follows from per-place conjunctivity of the token game:
any competitor's places are individually feasible, so the all-feasible-places
net is the most constrained net containing the specification.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

from .automata import SliceAutomaton, difference, disjoint, includes, intersect, letter_base
from .compiler import po_automaton
from .config import DEFAULT_CONFIG, InputError, PreconditionError, RunConfig
from .constructions import poset_complement
from .dag import LabeledPoset
from .mso import Formula, evaluate_po
from .netaut import net_automaton
from .ptnet import PtNet, Place, causal_orders, executions
from .slices import UnitDecomposition, compose


@dataclass(frozen=True)
class SynthesisSpec:
    """A target poset language plus the resource bounds of the net to build."""
    automaton: SliceAutomaton
    c: int
    b: int
    r: int
    sem: str
    labels: tuple

    def __post_init__(self):
        if self.sem not in ("ex", "cau"):
            raise InputError("sem must be 'ex' or 'cau'")
        if self.b < 1 or self.r < 1 or self.c < 1:
            raise InputError("bounds b, r, c must be >= 1")
        if self.automaton.c != self.c or tuple(self.automaton.labels) != self.labels:
            raise InputError("specification automaton must be over the declared (c, T)")
        if self.automaton.saturated is not True or self.automaton.transitively_reduced is not True:
            raise PreconditionError(
                "synthesis needs a saturated, transitively reduced specification automaton")


@dataclass
class VerificationReport:
    disjoint: bool
    net_subset_of_spec: bool
    spec_subset_of_net: bool
    counterexamples: dict = field(default_factory=dict)

    def to_text(self) -> str:
        lines = ["slw-report v1", "tool verify",
                 f"disjoint {str(self.disjoint).lower()}",
                 f"net-subset-of-spec {str(self.net_subset_of_spec).lower()}",
                 f"spec-subset-of-net {str(self.spec_subset_of_net).lower()}"]
        for which in sorted(self.counterexamples):
            lines.append(f"counterexample {which}")
            for ln in _poset_text(self.counterexamples[which]).splitlines():
                lines.append("  " + ln)
        return "\n".join(lines) + "\n"


def _poset_text(po: LabeledPoset) -> str:
    lines = [f"vertex {v} {po.labels[v]}" for v in po.vertices]
    lines += [f"edge {u} {v}" for u, v in sorted(po.order, key=repr)]
    return "\n".join(lines)


class ProofLog:
    """Machine-readable record of which reduction justified each step."""

    def __init__(self):
        self.steps: list[tuple] = []

    def step(self, claim: str, method: str, result):
        self.steps.append((claim, method, result))

    def to_text(self) -> str:
        lines = ["slw-proof v1"]
        for i, (claim, method, result) in enumerate(self.steps, 1):
            lines.append(f"step {i} {claim} = {result} [{method}]")
        return "\n".join(lines) + "\n"


# -- feasible places ------------------------------------------------------------------


def candidate_places(labels: Sequence, b: int):
    """All places with initial tokens and per-transition flows bounded by b."""
    labels = tuple(labels)
    rng = range(b + 1)
    for vals in itertools.product(rng, repeat=1 + 2 * len(labels)):
        tokens = vals[0]
        takes = dict(zip(labels, vals[1: 1 + len(labels)]))
        puts = dict(zip(labels, vals[1 + len(labels):]))
        yield Place(tokens, puts=puts, takes=takes)


@lru_cache(maxsize=None)
def _probe_automaton(place_key, labels: tuple, b: int, c: int, sem: str) -> SliceAutomaton:
    tokens, puts, takes = place_key
    probe = PtNet(labels, [Place(tokens, dict(puts), dict(takes))],
                  bound=b, name="probe", check_transitions=False)
    return net_automaton(probe, c, sem)


def feasible_place(place: Place, spec: SynthesisSpec,
                   config: RunConfig = DEFAULT_CONFIG) -> bool:
    """True iff the single-place probe net admits every specified behavior."""
    probe = _probe_automaton(place.key(), spec.labels, spec.b, spec.c, spec.sem)
    return includes(spec.automaton, probe, config)


# -- net synthesis (minimal containment) ------------------------------------------------


def synthesize(spec: SynthesisSpec, config: RunConfig = DEFAULT_CONFIG,
               log: Optional[ProofLog] = None) -> Optional[PtNet]:
    """The most constrained (b,r)-bounded net whose behavior contains the
    specified poset language, or None when no such net exists.

    Under the execution semantics the result is minimal: every place of any
    containing net is individually feasible, and the execution behavior of a
    union of places is the intersection of their single-place behaviors.
    """
    feasible = [p for p in candidate_places(spec.labels, spec.b)
                if feasible_place(p, spec, config)]
    if log:
        log.step("feasible-place count", "single-place probe inclusion", len(feasible))
    for t in spec.labels:
        if not any(p.put(t) > 0 for p in feasible) \
                or not any(p.take(t) > 0 for p in feasible):
            if log:
                log.step(f"transition {t} has feasible input and output places",
                         "region enumeration", False)
            return None
    copies = 1 if spec.sem == "ex" else spec.r
    places = [p for p in feasible for _ in range(copies)]
    net = PtNet(spec.labels, places, bound=spec.b, name="synthesized")
    achieved = net_automaton(net, spec.c, spec.sem, config)
    contains = includes(spec.automaton, achieved, config)
    if log:
        log.step("specification contained in synthesized behavior",
                 "slice-language inclusion on saturated reduced automata", contains)
    if not contains:
        return None
    return net


def separate(spec: SynthesisSpec, forbidden: SliceAutomaton,
             config: RunConfig = DEFAULT_CONFIG,
             log: Optional[ProofLog] = None) -> Optional[PtNet]:
    """Minimal containing net whose behavior avoids the forbidden language.

    By minimality, if the synthesized net's behavior meets the forbidden
    language then no solution exists at all.
    """
    if forbidden.saturated is not True or forbidden.transitively_reduced is not True:
        raise PreconditionError("the forbidden automaton must be saturated and "
                                "transitively reduced")
    net = synthesize(spec, config, log)
    if net is None:
        return None
    achieved = net_automaton(net, spec.c, spec.sem, config)
    clean = disjoint(achieved, forbidden)
    if log:
        log.step("synthesized behavior avoids the forbidden language",
                 "syntactic disjointness of saturated reduced automata", clean)
    return net if clean else None


# -- the five top-level procedures -------------------------------------------------------


def verify(net: PtNet, phi: Formula, c: int, sem: str,
           config: RunConfig = DEFAULT_CONFIG,
           log: Optional[ProofLog] = None) -> VerificationReport:
    """Compare a net's c-bounded behavior against an order formula:
    emptiness of intersection and inclusion in both directions, each with a
    minimal oracle-checked counterexample when it fails."""
    labels = tuple(net.transitions)
    spec_aut = po_automaton(phi, c, labels, config)
    net_aut = net_automaton(net, c, sem, config)
    both = intersect(net_aut, spec_aut)
    is_disjoint = both.is_empty()
    net_minus_spec = difference(net_aut, spec_aut, config)
    net_in_spec = net_minus_spec.is_empty()
    spec_minus_net = difference(spec_aut, net_aut, config)
    spec_in_net = spec_minus_net.is_empty()
    if log:
        log.step("behavior and specification disjoint",
                 "syntactic emptiness of product", is_disjoint)
        log.step("behavior within specification",
                 "syntactic inclusion (specification side saturated)", net_in_spec)
        log.step("specification within behavior",
                 "syntactic inclusion (behavior side saturated)", spec_in_net)
    report = VerificationReport(is_disjoint, net_in_spec, spec_in_net)
    if not is_disjoint:
        report.counterexamples["common"] = _witness_poset(both)
    if not net_in_spec:
        report.counterexamples["net-minus-spec"] = _witness_poset(net_minus_spec)
    if not spec_in_net:
        report.counterexamples["spec-minus-net"] = _witness_poset(spec_minus_net)
    _oracle_check_report(net, phi, c, sem, report, config)
    return report


def synth_from_mso(phi: Formula, labels: Sequence, b: int, r: int, c: int, sem: str,
                   config: RunConfig = DEFAULT_CONFIG,
                   log: Optional[ProofLog] = None) -> Optional[PtNet]:
    """Minimal (b,r)-bounded net containing every c-partial order satisfying phi."""
    labels = tuple(labels)
    spec = SynthesisSpec(po_automaton(phi, c, labels, config), c, b, r, sem, labels)
    if log:
        log.step("specification automaton from formula",
                 "order-to-graph rewrite + compilation + reduced/coverable product", "built")
    return synthesize(spec, config, log)


def safest_subsystem(net: PtNet, phi: Formula, b: int, r: int, c: int, sem: str,
                     config: RunConfig = DEFAULT_CONFIG,
                     log: Optional[ProofLog] = None) -> Optional[PtNet]:
    """Minimal net for (behavior of net) ∩ (phi) whose behavior stays within
    the original net's behavior."""
    labels = tuple(net.transitions)
    net_aut = net_automaton(net, c, sem, config)
    target = intersect(po_automaton(phi, c, labels, config), net_aut)
    forbidden = poset_complement(net_aut, config)
    if log:
        log.step("target language", "product of formula and behavior automata", "built")
        log.step("forbidden language", "poset complement of the behavior automaton", "built")
    spec = SynthesisSpec(target, c, b, r, sem, labels)
    return separate(spec, forbidden, config, log)


def repair(net: PtNet, phi: Formula, psi: Formula, b: int, r: int, c: int, sem: str,
           config: RunConfig = DEFAULT_CONFIG,
           log: Optional[ProofLog] = None) -> Optional[PtNet]:
    """Minimal net for (behavior of net) ∩ (phi) whose behavior satisfies psi
    everywhere."""
    labels = tuple(net.transitions)
    net_aut = net_automaton(net, c, sem, config)
    target = intersect(po_automaton(phi, c, labels, config), net_aut)
    forbidden = poset_complement(po_automaton(psi, c, labels, config), config)
    if log:
        log.step("target language", "product of keep-formula and behavior automata", "built")
        log.step("forbidden language", "poset complement of the allow-formula automaton",
                 "built")
    spec = SynthesisSpec(target, c, b, r, sem, labels)
    return separate(spec, forbidden, config, log)


def synth_from_contract(phi_yes: Formula, phi_no: Formula, labels: Sequence,
                        b: int, r: int, c: int, sem: str,
                        config: RunConfig = DEFAULT_CONFIG,
                        log: Optional[ProofLog] = None) -> Optional[PtNet]:
    """Minimal net containing every phi_yes order and no phi_no order.

    The contract hypothesis (the two languages are disjoint) is checked first
    and rejected with a witness poset when violated."""
    labels = tuple(labels)
    yes_aut = po_automaton(phi_yes, c, labels, config)
    no_aut = po_automaton(phi_no, c, labels, config)
    overlap = intersect(yes_aut, no_aut)
    if not overlap.is_empty():
        witness = _witness_poset(overlap)
        raise PreconditionError(
            "contract overlap: the good and bad languages share a poset:\n"
            + _poset_text(witness))
    if log:
        log.step("contract languages disjoint",
                 "syntactic disjointness of saturated reduced automata", True)
    spec = SynthesisSpec(yes_aut, c, b, r, sem, labels)
    return separate(spec, no_aut, config, log)


# -- counterexample handling -------------------------------------------------------------


def _witness_poset(aut: SliceAutomaton) -> LabeledPoset:
    word = aut.shortest_accepted()
    assert word is not None
    u = UnitDecomposition(tuple(letter_base(s) for s in word))
    return compose(u).transitive_closure()


def _oracle_check_report(net: PtNet, phi: Formula, c: int, sem: str,
                         report: VerificationReport, config: RunConfig):
    """Re-verify each emitted counterexample with the brute-force oracles."""
    oracle_fn = executions if sem == "ex" else causal_orders
    for which, po in report.counterexamples.items():
        in_spec = evaluate_po(po, phi, config=config)
        keys = {o.canonical_key() for o in oracle_fn(net, po.n_vertices(), c, config)}
        in_net = po.canonical_key() in keys
        expected = {"common": (True, True),
                    "net-minus-spec": (False, True),
                    "spec-minus-net": (True, False)}[which]
        if (in_spec, in_net) != expected:
            raise AssertionError(
                f"counterexample {which} failed oracle re-verification: "
                f"in_spec={in_spec}, in_net={in_net}")
