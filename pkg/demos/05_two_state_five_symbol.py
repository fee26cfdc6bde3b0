"""Two (2,5) records from late 2005, checked two independent ways.

The accelerated engine works on blocks of three cells with a memory of the
block behind the head, which absorbs the zig-zag these machines make through
long runs.  The rule systems give the same counts with no simulation of the
run at all.
"""
import time

from bblab.accel import accel_run
from bblab.data import rules_path
from bblab.numfmt import exact
from bblab.rules import load_rules, run_chain

for slug in ("tm25_lp_dec2005", "tm25_lp_oct2005"):
    sys = load_rules(rules_path(slug))
    t = time.perf_counter()
    a = accel_run(sys.machine, block=3)
    ta = time.perf_counter() - t
    c = run_chain(sys)
    print(f"{slug}: {sys.machine.code()}")
    print(f"  accel (block 3): s = {exact(a.steps)}, sigma = {a.sigma}, "
          f"{a.extra['macro_ops']} macro ops in {ta:.1f}s")
    print(f"  rule chain:      s = {exact(c.total_steps)}, sigma = {c.sigma}, "
          f"{c.transitions} transitions")
    assert (a.steps, a.sigma) == (c.total_steps, c.sigma)
