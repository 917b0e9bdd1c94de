"""The five decision procedures: verification, synthesis from a formula,
semantically safest subsystem, behavioral repair, and synthesis from a
contract.

Every step reduces to Boolean operations and inclusion tests on saturated,
transitively reduced slice automata; synthesis enumerates candidate places
and keeps those whose single-place token game admits every specified run.
"""

from slw import (Place, ProofLog, PtNet, parse, repair, safest_subsystem,
                 synth_from_contract, synth_from_mso, verify)
from slw.corpus import ALTERNATING_AB, CONSECUTIVE_AA, TOTAL_ORDER

footnote = PtNet(("t1", "t2"),
                 [Place(1, puts={"t1": 1}, takes={"t1": 1}, name="p1"),
                  Place(1, puts={"t2": 1}, takes={"t2": 1}, name="p2")],
                 bound=1, name="footnote")

print("== verification ==")
report = verify(footnote, parse(TOTAL_ORDER), 2, "ex")
print(report.to_text())

print("== synthesis from a formula ==")
log = ProofLog()
alternator = synth_from_mso(parse(ALTERNATING_AB), ("a", "b"), 1, 1, 1, "ex", log=log)
print(alternator.to_text())
print(log.to_text())

print("== semantically safest subsystem ==")
serialized = safest_subsystem(footnote, parse(TOTAL_ORDER), 1, 1, 2, "ex")
print("a net keeping every serial run but never the concurrent one:")
print(serialized.to_text())

print("== behavioral repair ==")
noisy = PtNet(("a", "b"), [Place(1, takes={"a": 1}, name="pa"),
                           Place(0, puts={"a": 1}, name="pout"),
                           Place(1, takes={"b": 1}, puts={"b": 1}, name="pb")],
              bound=1, name="noisy")
allow = parse("!(" + CONSECUTIVE_AA + ")")
repaired = repair(noisy, parse(ALTERNATING_AB), allow, 1, 1, 1, "ex")
print("repaired net preserves the alternating runs and never stutters on a:")
print(repaired.to_text())

print("== synthesis from a contract ==")
contracted = synth_from_contract(parse(ALTERNATING_AB), parse(CONSECUTIVE_AA),
                                 ("a", "b"), 1, 1, 1, "ex")
print(contracted.to_text())
