"""Follow a record machine through its Collatz-like rule system.

Kropitz's (6,2) machine runs for about 3.8e21132 steps, far beyond any
simulator.  Its behaviour is captured by a handful of rules on parameterised
tape families.  We first check each rule against direct simulation on small
parameters, then iterate the rules to halting.
"""
import time

from bblab.data import rules_path
from bblab.numfmt import exact, sci
from bblab.rules import load_rules, run_chain, validate_rules

for slug in ("tm52_mb_champion", "tm62_kropitz_2010"):
    sys = load_rules(rules_path(slug))
    print(f"== {slug}: {sys.machine.code()}")
    rep = validate_rules(sys)
    print("\n".join(rep.summary().splitlines()[:6]))
    t = time.perf_counter()
    res = run_chain(sys)
    print(f"chain: {res.kind} after {res.transitions} transitions, "
          f"s = {sci(res.total_steps)}, sigma = {sci(res.sigma)} ({time.perf_counter() - t:.1f}s)")
    print(f"s has {len(exact(res.total_steps))} decimal digits\n")
