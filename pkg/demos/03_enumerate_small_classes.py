"""Settle S and Sigma for (2,2) and (3,2) by exhaustive search.

Machines are generated in tree normal form: a slot is only filled when the
simulation first reads it, and new states and symbols are introduced in
order.  Each leaf either halts within the cutoff, is proved non-halting by a
decider, or is left as a holdout.
"""
import time

from bblab.tnf import search_class

for c in ((2, 2), (3, 2), (2, 3)):
    t = time.perf_counter()
    rep = search_class(c)
    print(f"class {c}: {rep.enumerated} leaves, {rep.halted} halted, "
          f"decided {rep.decided}, {len(rep.holdouts)} holdouts ({time.perf_counter() - t:.1f}s)")
    print(f"  S = {rep.best_s} by {rep.best_s_machines[:3]}")
    print(f"  Sigma = {rep.best_sigma} by {rep.best_sigma_machines[:3]}")
