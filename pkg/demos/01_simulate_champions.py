"""Run the small-class champions on both engines and compare.

Direct simulation counts every base step.  The accelerated engine compresses
the tape into runs and jumps over them, so it reaches the same step count in
far fewer operations.
"""
import time

from bblab import parse_machine, run_from_blank
from bblab.accel import accel_run
from bblab.numfmt import exact

CHAMPIONS = {
    "(2,2)": "1RB1LB_1LA1RH",
    "(3,2)": "1RB1RH_1LB0RC_1LC1LA",
    "(2,4) Ligocki": "1RB2LA1RA1RA_1LB1LA3RB1RH",
    "(5,2) Marxen-Buntrock": "1RB1LC_1RC1RB_1RD0LE_1LA1LD_1RH0LA",
}

for name, code in CHAMPIONS.items():
    m = parse_machine(code)
    t = time.perf_counter()
    d = run_from_blank(m, 10**8)
    td = time.perf_counter() - t
    t = time.perf_counter()
    a = accel_run(m)
    ta = time.perf_counter() - t
    print(f"{name:24} {code}")
    print(f"  direct: {d.kind.value} s={exact(d.steps)} sigma={d.sigma} in {td:.2f}s")
    print(f"  accel:  {a.kind.value} s={exact(a.steps)} sigma={a.sigma} in {ta:.2f}s"
          f" ({a.extra.get('macro_ops')} macro ops)")
    assert (d.steps, d.sigma) == (a.steps, a.sigma)
