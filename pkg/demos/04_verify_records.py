"""Re-derive the record table from machine descriptions.

Each record names the routes that can check it: direct simulation,
accelerated simulation, or a rule system.  Exact values must match; lower
bounds must be strictly exceeded.  Entries without a usable route are
skipped, never counted as passed.
"""
from collections import Counter

from bblab.records import cross_check, load_records, verify_all

entries = load_records()
summary = verify_all(entries, include_heavy=False)
skipped = Counter()
for r in summary.reports:
    if r.status == "fail":
        print("FAIL", r.to_json())
    elif r.status == "skip":
        skipped[r.to_json()["routes"][0]["detail"]] += 1
for reason, n in skipped.most_common():
    print(f"skipped {n:3}: {reason}")
print(summary.line(), f"(of {len(entries)} entries, heavy ones excluded)")

for cc in cross_check(entries):
    print(f"cross-check {cc.first} vs {cc.second}: {'ok' if cc.ok else 'MISMATCH'} {cc.detail}")
