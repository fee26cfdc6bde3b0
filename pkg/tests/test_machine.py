import itertools

import pytest
from hypothesis import given, strategies as st

from bblab.machine import (HALT, ClassId, MachineFormatError, Transition, class_size,
                           normalize, parse_machine, parse_machine_document, print_machine,
                           relabel)
from bblab.simulate import run_from_blank

from conftest import BB22, BB23, BB24, BB42, BB52, machines


@pytest.mark.parametrize("code", [BB22, BB23, BB24, BB42, BB52, "1RB---_1LA1RH"])
def test_round_trip(code):
    assert print_machine(parse_machine(code)) == code


def test_alternative_text_forms():
    assert parse_machine("1RB 1LB 1LA 1RH").code() == BB22
    assert parse_machine("1RB 1LB\n1LA 1RH\n").code() == BB22
    assert parse_machine("1RB 2LB 1RH 2LA 2RB 1LB").class_id == ClassId(2, 3)
    assert parse_machine("1RB 2LB 1RH 2LA 2RB 1LB", hint=(2, 3)).code() == BB23


def test_transition_fields():
    m = parse_machine(BB22)
    assert m[0, 0] == Transition(1, "R", 1)
    assert m[1, 1].halts and m[1, 1].next == HALT
    assert m.is_rado()
    assert not parse_machine("1RB1LB_1LA0LH").is_rado()


@pytest.mark.parametrize("bad", ["", "1RB1L", "1RB1LB_1LA", "1XB1LB_1LA1RH", "1RB1LC_1LA1RH",
                                 "3RB1LB_1LA1RH", "1SB1LB_1LA1RH"])
def test_malformed(bad):
    with pytest.raises(MachineFormatError):
        parse_machine(bad)


def test_rado_strict():
    with pytest.raises(MachineFormatError):
        parse_machine("1RB1LB_1LA0LH").validate(rado_strict=True)
    assert parse_machine(BB22).validate(rado_strict=True)


def test_json_document():
    assert parse_machine_document('{"machine": "1RB1LB_1LA1RH"}').code() == BB22
    with pytest.raises(MachineFormatError):
        parse_machine_document({"code": BB22})


def _alphabet(n, k):
    """Every legal transition for one slot: 2kn moving ones plus the halt."""
    return [Transition(w, d, q) for w in range(k) for d in "LR" for q in range(n)] + \
        [Transition(1, "R", HALT)]


@pytest.mark.parametrize("n,k", [(1, 2), (2, 2), (3, 3)])
def test_class_size_matches_explicit_alphabet(n, k):
    per_slot = len(set(_alphabet(n, k)))
    assert class_size((n, k)) == per_slot ** (n * k)


def test_class_size_values():
    assert class_size((1, 2)) == 25
    assert class_size((2, 2)) == 6561
    assert class_size((3, 3)) == 19 ** 9


def test_class_size_brute_force_12():
    # enumerate TM(1, 2) outright
    alpha = _alphabet(1, 2)
    assert len(list(itertools.product(alpha, repeat=2))) == class_size((1, 2))


def test_invalid_class():
    with pytest.raises(ValueError):
        class_size((0, 2))


def test_normalize_mirror():
    nm = normalize(parse_machine("1LB1RB_1RA1LH"))
    assert nm.mirrored
    assert nm.machine.code() == "1RB1LB_1LA1RH"


def test_normalize_renames_states_by_first_entry():
    # states B and C swapped relative to the (3,2) champion
    m = relabel(parse_machine("1RB1RH_1LB0RC_1LC1LA"), {1: 2, 2: 1})
    assert m.code() != "1RB1RH_1LB0RC_1LC1LA"
    assert normalize(m).machine.code() == "1RB1RH_1LB0RC_1LC1LA"


def test_relabel_rejects_bad_maps():
    m = parse_machine(BB23)
    with pytest.raises(ValueError):
        relabel(m, symbol_perm={0: 1, 1: 0})
    with pytest.raises(ValueError):
        relabel(m, state_perm={0: 1})


def _score(m):
    r = run_from_blank(m, 10_000)
    return r.kind, r.steps, r.sigma


@given(machines(), st.randoms(use_true_random=False), st.booleans())
def test_normalize_idempotent_and_score_invariant(m, rnd, mirror):
    perm = list(range(1, m.states))
    rnd.shuffle(perm)
    syms = list(range(1, m.symbols))
    rnd.shuffle(syms)
    other = relabel(m, {0: 0} | {q: p for q, p in zip(range(1, m.states), perm)},
                    {0: 0} | {a: b for a, b in zip(range(1, m.symbols), syms)}, mirror)
    assert _score(other) == _score(m)
    if m[0, 0] is None:
        return
    nm = normalize(m, 10_000)
    once = nm.machine
    assert normalize(once, 10_000).machine == once
    assert _score(once) == _score(m)
    # permuted and mirrored copies share the canonical form when every
    # state and symbol shows up during the run
    if nm.complete:
        assert normalize(other, 10_000).machine == once
