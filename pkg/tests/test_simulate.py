import random

import pytest
from hypothesis import given, strategies as st

from bblab.machine import HALT, parse_machine
from bblab.simulate import (Configuration, Outcome, config_equals, format_config, parse_config,
                            run_from, run_from_blank, step)

from conftest import (BB22, BB23, BB32_S, BB32_SIGMA, BB42, BB52, machines, random_machine)


@pytest.mark.parametrize("code,s,sigma", [
    (BB22, 6, 4), (BB32_S, 21, 5), (BB32_SIGMA, 14, 6), (BB42, 107, 13), (BB23, 38, 9),
])
@pytest.mark.parametrize("engine", ["jit", "python"])
def test_small_champions(code, s, sigma, engine):
    out = run_from_blank(parse_machine(code), 1000, engine=engine)
    assert out.kind is Outcome.HALTED
    assert (out.steps, out.sigma) == (s, sigma)


def test_budget_exactly_s_is_enough():
    m = parse_machine(BB42)
    assert run_from_blank(m, 107).kind is Outcome.HALTED
    short = run_from_blank(m, 106)
    assert short.kind is Outcome.RUNNING and short.steps == 106


def test_zero_budget():
    out = run_from_blank(parse_machine(BB22), 0)
    assert out.kind is Outcome.RUNNING and out.steps == 0 and out.sigma == 0


def test_negative_budget():
    with pytest.raises(ValueError):
        run_from_blank(parse_machine(BB22), -1)


def test_start_in_halt_state():
    c = parse_config("0 (A1) 1 0")
    c.state = HALT
    out = run_from(parse_machine(BB52), c, 100)
    assert out.kind is Outcome.HALTED and out.steps == 0 and out.sigma == 2


def test_undefined_slot_counts_the_step():
    # A0 -> 1RB, B0 undefined: one step, then the undefined slot
    out = run_from_blank(parse_machine("1RB---_------"), 10)
    assert out.kind is Outcome.UNDEFINED
    assert out.steps == 2


def test_champion_52_first_configuration():
    # 15 steps from the blank tape reach 0 (A0) 1^6 0
    m = parse_machine(BB52)
    out = run_from(m, Configuration.blank(), 15)
    assert config_equals(out.final, parse_config("0 (A0) 1^6 0"))
    assert out.final.steps == 15


def test_resume_matches_single_run():
    m = parse_machine(BB52)
    half = run_from_blank(m, 5_000_000)
    rest = run_from(m, half.final, 10 ** 8)
    assert rest.kind is Outcome.HALTED
    assert half.steps + rest.steps == 47_176_870
    assert rest.sigma == 4098


@pytest.mark.parametrize("text", ["0 (A0) 1^6 0", "1 (B2) (12)^3 0", "0 (C1) 0", "2^5 1 (A0)"])
def test_config_text_round_trip(text):
    c = parse_config(text)
    assert config_equals(parse_config(format_config(c)), c)


def test_config_parse_errors():
    for bad in ("0 1 0", "(A0)(B0)", "0 (A0) x"):
        with pytest.raises(ValueError):
            parse_config(bad)


def test_step_matches_kernel():
    m = parse_machine(BB42)
    c = Configuration.blank()
    for _ in range(50):
        step(m, c)
    assert config_equals(c, run_from_blank(m, 50).final)


@given(machines(), st.integers(0, 3000))
def test_jit_and_python_kernels_agree(m, n):
    a = run_from_blank(m, n, engine="jit")
    b = run_from_blank(m, n, engine="python")
    assert (a.kind, a.steps, a.sigma) == (b.kind, b.steps, b.sigma)
    assert config_equals(a.final, b.final)


def test_kernels_agree_on_random_sample(rng):
    for _ in range(200):
        m = random_machine(rng, rng.randint(2, 5), rng.randint(2, 4))
        a = run_from_blank(m, 20_000, engine="jit")
        b = run_from_blank(m, 20_000, engine="python")
        assert (a.kind, a.steps, a.sigma) == (b.kind, b.steps, b.sigma)


@given(st.lists(st.integers(0, 3), min_size=1, max_size=30), st.integers(0, 29),
       st.integers(0, 3), st.integers(-50, 50), st.integers(0, 20), st.integers(0, 20))
def test_config_equals_translation_invariant(cells, h, q, shift, pad_l, pad_r):
    h = h % len(cells)
    a = Configuration(bytearray(cells), h, q)
    b = Configuration(bytearray(pad_l) + bytearray(cells) + bytearray(pad_r), h + pad_l, q,
                      origin=shift)
    assert config_equals(a, b)
    assert config_equals(a, a.copy())


def test_config_equals_distinguishes():
    a = parse_config("0 (A0) 1^3 0")
    assert not config_equals(a, parse_config("0 (B0) 1^3 0"))
    assert not config_equals(a, parse_config("0 (A0) 1^4 0"))
    assert not config_equals(a, parse_config("0 0 (A0) 0 1^3 0"))
