import random

import pytest
from hypothesis import settings, strategies as st

from bblab.machine import HALT, Machine, Transition

settings.register_profile("default", deadline=None, derandomize=True, max_examples=60)
settings.load_profile("default")

# Machines used across several test modules (all halt from a blank tape).
BB22 = "1RB1LB_1LA1RH"
BB32_S = "1RB1RH_1LB0RC_1LC1LA"
BB32_SIGMA = "1RB1RH_0RC1RB_1LC1LA"
BB42 = "1RB1LB_1LA0LC_1RH1LD_1RD0RA"
BB23 = "1RB2LB1RH_2LA2RB1LB"
BB24 = "1RB2LA1RA1RA_1LB1LA3RB1RH"
BB52 = "1RB1LC_1RC1RB_1RD0LE_1LA1LD_1RH0LA"
BB52_RUNNERUP = "1RB0LD_1LC1RD_1LA1LC_1RH1RE_1RA0RB"
SURPRISE_BOX = "1RB2LB1LC_1LA2RB1RB_1RH2LA0LC"
BRADY33_ANALOGUE = "1RB1LC1RH_1LA1LC2RB_1RB2LC1RC"


def random_machine(rng: random.Random, n: int, k: int, halt_slots: int = 1) -> Machine:
    """A full (n, k) machine with ``halt_slots`` 1RH transitions."""
    slots = [(q, a) for q in range(n) for a in range(k)]
    halts = set(rng.sample(slots, halt_slots))
    rows = []
    for q in range(n):
        row = []
        for a in range(k):
            if (q, a) in halts:
                row.append(Transition(1, "R", HALT))
            else:
                row.append(Transition(rng.randrange(k), rng.choice("LR"), rng.randrange(n)))
        rows.append(tuple(row))
    return Machine(n, k, tuple(rows))


@st.composite
def machines(draw, n=None, k=None):
    n = n or draw(st.integers(2, 4))
    k = k or draw(st.integers(2, 3))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_machine(random.Random(seed), n, k, halt_slots=draw(st.integers(0, 2)))


@pytest.fixture
def rng():
    return random.Random(20240611)
