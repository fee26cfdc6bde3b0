import os
import random

import pytest
from hypothesis import given

from bblab.deciders import (CYCLE, NO_HALT, TRANSLATED, Verdict, decide, decide_cycle,
                            decide_no_halt_reachable, decide_translated_cycle, recheck)
from bblab.machine import parse_machine
from bblab.records import load_records
from bblab.simulate import Outcome, run_from_blank
from bblab.tnf import enumerate_tnf

from conftest import BB22, BB42, BB52, machines

SOUND_STEPS = 10 ** 7


def test_no_halt_anywhere():
    v = decide_no_halt_reachable(parse_machine("1RB1LB_1LA1RA"))
    assert v.nonhalting and v.reason == NO_HALT
    assert v.describe() == "NonHalting(NoHaltTransition)"


def test_halting_machine_is_unknown():
    assert not decide_no_halt_reachable(parse_machine(BB52)).nonhalting
    assert decide(parse_machine(BB52)).describe() == "Unknown"


def test_halt_only_in_unreachable_state():
    # the (2,2) champion's halt moved into an extra state C that nothing enters
    m = parse_machine("1RB1LB_1LA1LA_1RH1RH")
    assert decide_no_halt_reachable(m).nonhalting
    assert run_from_blank(m, 10_000).kind is Outcome.RUNNING


def test_undefined_slot_blocks_static_decider():
    assert not decide_no_halt_reachable(parse_machine("1RB1LB_1LA---")).nonhalting


def test_cycle_two_steps():
    v = decide_cycle(parse_machine("0RB1RH_0LA1RH"), 100)
    assert v.nonhalting and v.reason == CYCLE and v.period == 2
    assert v.describe() == "NonHalting(Cycle(2))"
    assert recheck("0RB1RH_0LA1RH", v)


def test_cycle_caught_before_translated():
    v = decide(parse_machine("0RB1RH_0LA1RH"), 100)
    assert v.reason == CYCLE
    assert not decide_translated_cycle(parse_machine("0RB1RH_0LA1RH"), 100).nonhalting


def test_translated_rightward_writer():
    v = decide_translated_cycle(parse_machine("1RB1RH_1RA1RH"), 100)
    assert v.nonhalting and v.reason == TRANSLATED
    assert (v.period, v.shift) == (2, 2)
    assert recheck("1RB1RH_1RA1RH", v)


def test_translated_leftward():
    m = parse_machine("1LB1RH_1LA1RH")
    v = decide_translated_cycle(m, 100)
    assert v.nonhalting and v.shift < 0 and recheck(m, v)


@pytest.mark.parametrize("code", [BB22, BB42])
def test_champions_are_unknown(code):
    m = parse_machine(code)
    assert not decide_cycle(m, 10_000).nonhalting
    assert not decide_translated_cycle(m, 10_000).nonhalting


def test_small_records_are_unknown():
    for e in load_records():
        if e.machine and e.s is not None and not e.s.lower and e.s.value <= 10 ** 5:
            assert decide(e.parsed(), 10 ** 5).describe() == "Unknown", e.id


def test_bad_arguments():
    with pytest.raises(ValueError):
        decide_cycle(parse_machine(BB22), 0)
    with pytest.raises(ValueError):
        decide(parse_machine(BB22), 10, deciders=("magic",))


def test_forged_witnesses_are_rejected():
    m = parse_machine("0RB1RH_0LA1RH")
    good = decide_cycle(m, 100)
    assert not recheck(m, Verdict(good.kind, CYCLE, 3, witness={"t1": 0, "t2": 3}))
    halting = parse_machine(BB22)
    assert not recheck(halting, Verdict("NonHalting", CYCLE, 2, witness={"t1": 1, "t2": 3}))
    assert not recheck(halting, Verdict("NonHalting", NO_HALT))
    assert not recheck(halting, Verdict("Unknown"))


def test_verdict_json_round_trip():
    v = decide_translated_cycle(parse_machine("1RB1RH_1RA1RH"), 100)
    assert Verdict.from_json(v.to_json()) == v


def test_python_and_jit_kernels_agree(rng):
    from conftest import random_machine
    for _ in range(150):
        m = random_machine(rng, rng.randint(2, 3), rng.randint(2, 3), rng.randint(0, 1))
        for fn in (decide_cycle, decide_translated_cycle):
            assert fn(m, 500, engine="jit") == fn(m, 500, engine="python")


@given(machines())
def test_every_verdict_rechecks(m):
    v = decide(m, 2_000)
    if v.nonhalting:
        assert recheck(m, v)
        assert run_from_blank(m, 20_000).kind is not Outcome.HALTED


def _hits(cls, cutoff):
    out = []
    enumerate_tnf(cls, lambda leaf: out.append(leaf) if leaf.kind == "decided" else None,
                  cutoff=cutoff)
    return out


@pytest.mark.parametrize("cls,cutoff", [((2, 2), 1000), ((3, 2), 10_000), ((2, 3), 10_000)])
def test_all_enumeration_hits_recheck(cls, cutoff):
    hits = _hits(cls, cutoff)
    assert hits
    bad = [leaf.machine.code() for leaf in hits if not recheck(leaf.machine, leaf.verdict)]
    assert bad == []


def test_soundness_all_22_hits():
    for leaf in _hits((2, 2), 1000):
        assert run_from_blank(leaf.machine, SOUND_STEPS).kind is not Outcome.HALTED


def _sample(cls, cutoff, n):
    hits = sorted(_hits(cls, cutoff), key=lambda leaf: leaf.machine.code())
    if os.environ.get("BBLAB_FULL"):
        return hits
    return random.Random(7).sample(hits, n)


@pytest.mark.parametrize("cls", [(3, 2), (2, 3)])
def test_soundness_sample(cls):
    # the full sweep over every hit runs with BBLAB_FULL=1
    for leaf in _sample(cls, 10_000, 60):
        assert run_from_blank(leaf.machine, SOUND_STEPS).kind is not Outcome.HALTED, leaf.machine
