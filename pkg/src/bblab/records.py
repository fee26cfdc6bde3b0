"""Record dataset and verification harness.

Each entry names a machine, who found it and when, the expected ``s`` and
``sigma`` (exact, or a strict lower bound stored as a decimal threshold), and
one or more verification routes:

* ``direct``: step-by-step simulation from the blank tape;
* ``accel``: accelerated simulation (optional ``block`` size for the macro engine);
* ``rules``: chain the named rule file;
* ``unverifiable``: nothing to run, with a reason.

An entry passes when every route it lists agrees with the expected values.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .accel import accel_run
from .data import data_dir, rules_path
from .machine import HALT, ClassId, Machine, parse_machine
from .numfmt import exact, parse_exact, sci
from .rules.system import load_rules, run_chain
from .simulate import _NEXT_UNDEFINED, Outcome, compile_table, run_from_blank

try:
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None

DIRECT = "direct"
ACCEL = "accel"
RULES = "rules"
UNVERIFIABLE = "unverifiable"

# run_from_blank gets the expected value plus this fraction as its step budget
STEP_MARGIN = 0.01


class DatasetError(ValueError):
    pass


@dataclass(frozen=True)
class Bound:
    """An expected value: exact, or a strict lower bound."""

    value: int
    lower: bool = False

    @classmethod
    def from_json(cls, d: dict | None) -> "Bound | None":
        if d is None:
            return None
        if "exact" in d:
            return cls(parse_exact(d["exact"]))
        if "lower_bound" in d:
            return cls(parse_exact(d["lower_bound"]), True)
        raise DatasetError(f"expected 'exact' or 'lower_bound' in {d!r}")

    def to_json(self) -> dict:
        return {"lower_bound" if self.lower else "exact": exact(self.value)}

    def accepts(self, got: int) -> bool:
        return got > self.value if self.lower else got == self.value

    def __str__(self) -> str:
        return ("> " if self.lower else "") + sci(self.value)


@dataclass(frozen=True)
class Route:
    kind: str
    rules: str | None = None
    block: int = 1
    reason: str | None = None

    @classmethod
    def from_json(cls, d: dict) -> "Route":
        kind = d.get("route")
        if kind not in (DIRECT, ACCEL, RULES, UNVERIFIABLE):
            raise DatasetError(f"unknown route {kind!r}")
        if kind == RULES and not d.get("rules"):
            raise DatasetError("rules route needs a rule file id")
        return cls(kind, d.get("rules"), int(d.get("block", 1)), d.get("reason"))

    def to_json(self) -> dict:
        out = {"route": self.kind}
        if self.rules:
            out["rules"] = self.rules
        if self.kind == ACCEL and self.block != 1:
            out["block"] = self.block
        if self.reason:
            out["reason"] = self.reason
        return out

    def __str__(self) -> str:
        if self.kind == RULES:
            return f"rules:{self.rules}"
        if self.kind == ACCEL and self.block != 1:
            return f"accel:b{self.block}"
        return self.kind


@dataclass(frozen=True)
class RecordEntry:
    id: str
    class_id: ClassId
    machine: str | None
    discoverer: str
    date: str
    s: Bound | None
    sigma: Bound | None
    routes: tuple[Route, ...]
    source: str = ""
    notes: str = ""
    heavy: bool = False
    variant: bool = False

    @classmethod
    def from_json(cls, d: dict) -> "RecordEntry":
        n, k = d["class"]
        routes = tuple(Route.from_json(r) for r in d.get("verification", []))
        if not routes:
            raise DatasetError(f"{d.get('id')}: no verification route")
        e = cls(d["id"], ClassId(n, k), d.get("machine"), d.get("discoverer", ""),
                d.get("date", ""), Bound.from_json(d.get("s")), Bound.from_json(d.get("sigma")),
                routes, d.get("source", ""), d.get("notes", ""), bool(d.get("heavy", False)),
                bool(d.get("variant", False)))
        if e.machine is None and any(r.kind != UNVERIFIABLE for r in routes):
            raise DatasetError(f"{e.id}: runnable route without a machine")
        return e

    def to_json(self) -> dict:
        out = {"id": self.id, "class": list(self.class_id), "machine": self.machine,
               "discoverer": self.discoverer, "date": self.date}
        if self.s is not None:
            out["s"] = self.s.to_json()
        if self.sigma is not None:
            out["sigma"] = self.sigma.to_json()
        out["verification"] = [r.to_json() for r in self.routes]
        for key in ("source", "notes"):
            if getattr(self, key):
                out[key] = getattr(self, key)
        if self.heavy:
            out["heavy"] = True
        if self.variant:
            out["variant"] = True
        return out

    def parsed(self) -> Machine:
        if self.machine is None:
            raise DatasetError(f"{self.id} has no machine table")
        return parse_machine(self.machine, self.class_id)

    @property
    def verifiable(self) -> bool:
        return any(r.kind != UNVERIFIABLE for r in self.routes)


def records_path() -> Path:
    return data_dir() / "records.json"


def load_records(path: str | Path | None = None) -> list[RecordEntry]:
    with open(path or records_path()) as fh:
        doc = json.load(fh)
    entries = [RecordEntry.from_json(d) for d in doc["entries"]]
    seen = set()
    for e in entries:
        if e.id in seen:
            raise DatasetError(f"duplicate id {e.id}")
        seen.add(e.id)
    return entries


def select(entries, class_id=None, date=None, ids=None, include_heavy=True) -> list[RecordEntry]:
    """Filter by class (``(n, k)``), a substring of the date, or explicit ids."""
    out = []
    for e in entries:
        if class_id is not None and tuple(e.class_id) != tuple(class_id):
            continue
        if date is not None and date.lower() not in e.date.lower():
            continue
        if ids is not None and e.id not in ids:
            continue
        if e.heavy and not include_heavy:
            continue
        out.append(e)
    return out


# ------------------------------------------------------------- verification

@dataclass
class RouteResult:
    route: str
    status: str  # "pass", "fail", "skip", "error"
    s: int | None = None
    sigma: int | None = None
    detail: str = ""
    seconds: float = 0.0
    transitions: int | None = None

    def to_json(self) -> dict:
        out = {"route": self.route, "status": self.status, "seconds": round(self.seconds, 3)}
        if self.s is not None:
            out["s"] = exact(self.s)
        if self.sigma is not None:
            out["sigma"] = exact(self.sigma)
        if self.transitions is not None:
            out["transitions"] = self.transitions
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class EntryReport:
    id: str
    results: list[RouteResult] = field(default_factory=list)

    @property
    def status(self) -> str:
        kinds = {r.status for r in self.results}
        if kinds & {"fail", "error"}:
            return "fail"
        if "pass" in kinds:
            return "pass"
        return "skip"

    def to_json(self) -> dict:
        return {"id": self.id, "status": self.status, "routes": [r.to_json() for r in self.results]}


def _compare(e: RecordEntry, route: str, s: int, sigma: int, t0: float, **extra) -> RouteResult:
    bad = []
    if e.s is not None and not e.s.accepts(s):
        bad.append(f"s: expected {e.s}, got {sci(s)}")
    if e.sigma is not None and not e.sigma.accepts(sigma):
        bad.append(f"sigma: expected {e.sigma}, got {sci(sigma)}")
    return RouteResult(route, "fail" if bad else "pass", s, sigma, "; ".join(bad),
                       time.perf_counter() - t0, **extra)


def _budget(e: RecordEntry) -> int | None:
    if e.s is None or e.s.lower:
        return None
    return e.s.value + max(1, int(e.s.value * STEP_MARGIN))


def run_route(e: RecordEntry, r: Route) -> RouteResult:
    t0 = time.perf_counter()
    name = str(r)
    if r.kind == UNVERIFIABLE:
        return RouteResult(name, "skip", detail=r.reason or "")
    try:
        if r.kind == RULES:
            res = run_chain(load_rules(rules_path(r.rules)))
            if not res.halted:
                return RouteResult(name, "fail", detail=f"chain ended with {res.kind}",
                                   seconds=time.perf_counter() - t0, transitions=res.transitions)
            return _compare(e, name, res.total_steps, res.sigma, t0, transitions=res.transitions)
        m = e.parsed()
        budget = _budget(e)
        if r.kind == DIRECT:
            if budget is None:
                return RouteResult(name, "error", detail="direct route needs an exact s")
            out = run_from_blank(m, budget)
        else:
            out = accel_run(m, budget, block=r.block)
        if out.kind != Outcome.HALTED:
            return RouteResult(name, "fail", out.steps, out.sigma,
                               f"{out.kind.value} after {out.steps} steps", time.perf_counter() - t0)
        return _compare(e, name, out.steps, out.sigma, t0)
    except Exception as exc:  # route failure is a reportable result, not a crash
        return RouteResult(name, "error", detail=f"{type(exc).__name__}: {exc}",
                           seconds=time.perf_counter() - t0)


def verify_entry(e: RecordEntry, routes: set[str] | None = None) -> EntryReport:
    """Run every route of ``e`` (or only those whose kind is in ``routes``)."""
    rep = EntryReport(e.id)
    for r in e.routes:
        if routes is not None and r.kind not in routes and r.kind != UNVERIFIABLE:
            continue
        rep.results.append(run_route(e, r))
    return rep


@dataclass
class Summary:
    reports: list[EntryReport]

    def count(self, status: str) -> int:
        return sum(1 for r in self.reports if r.status == status)

    @property
    def passed(self) -> int:
        return self.count("pass")

    @property
    def failed(self) -> int:
        return self.count("fail")

    @property
    def skipped(self) -> int:
        return self.count("skip")

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def line(self) -> str:
        return f"{self.passed} passed, {self.failed} failed, {self.skipped} skipped"

    def to_json(self) -> dict:
        return {"passed": self.passed, "failed": self.failed, "skipped": self.skipped,
                "entries": [r.to_json() for r in self.reports]}


def _verify_one(args):
    e, routes = args
    return verify_entry(e, routes)


def verify_all(entries: list[RecordEntry] | None = None, class_id=None, date=None, ids=None,
               include_heavy: bool = True, routes: set[str] | None = None,
               workers: int = 1) -> Summary:
    """Verify a filtered slice of the dataset.  Report order follows the
    dataset regardless of ``workers``."""
    if entries is None:
        entries = load_records()
    chosen = select(entries, class_id, date, ids, include_heavy)
    jobs = [(e, routes) for e in chosen]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as pool:
            reports = list(pool.map(_verify_one, jobs))
    else:
        reports = [_verify_one(j) for j in jobs]
    return Summary(reports)


# ------------------------------------------------------------ cross-checks

CROSS_CHECKS = (
    # (first id, second id, what must agree)
    ("tm24_ligocki_champion", "tm33_brady_2004_analogue", ("s", "sigma")),
    ("tm62_mb_1997", "tm33_ligocki_aug2006", ("sigma",)),
)


def _lockstep(wr1, mv1, nx1, k1, wr2, mv2, nx2, k2, max_steps):
    size = 2 * max_steps + 3
    t1 = np.zeros(size, np.uint8)
    t2 = np.zeros(size, np.uint8)
    h1 = h2 = max_steps + 1
    q1 = q2 = 0
    n1 = n2 = 0
    t = 0
    while t < max_steps:
        i1 = q1 * k1 + t1[h1]
        i2 = q2 * k2 + t2[h2]
        if nx1[i1] == _NEXT_UNDEFINED or nx2[i2] == _NEXT_UNDEFINED:
            return False, t
        n1 += (wr1[i1] != 0) - (t1[h1] != 0)
        n2 += (wr2[i2] != 0) - (t2[h2] != 0)
        t1[h1] = wr1[i1]
        t2[h2] = wr2[i2]
        h1 += mv1[i1]
        h2 += mv2[i2]
        q1 = nx1[i1]
        q2 = nx2[i2]
        t += 1
        if n1 != n2:
            return False, t
        if q1 == HALT or q2 == HALT:
            return q1 == q2, t
    return True, t


_lockstep_jit = njit(cache=True)(_lockstep) if njit is not None else _lockstep


def score_trace_equal(a: Machine, b: Machine, max_steps: int) -> tuple[bool, int]:
    """Run two machines side by side from blank tapes and compare their
    nonblank counts after every step.

    Returns ``(equal, steps compared)``.  Stops when either machine halts;
    a halt by only one of them counts as a mismatch.
    """
    ok, t = _lockstep_jit(*compile_table(a), a.symbols, *compile_table(b), b.symbols, int(max_steps))
    return bool(ok), int(t)


@dataclass
class CrossCheck:
    first: str
    second: str
    fields: tuple[str, ...]
    ok: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"first": self.first, "second": self.second, "fields": list(self.fields),
                "ok": self.ok, "detail": self.detail}


def cross_check(entries: list[RecordEntry] | None = None, lockstep: bool = True) -> list[CrossCheck]:
    """Pairs of machines with the same behaviour must verify to the same values.

    With ``lockstep`` the pair that agrees on both ``s`` and ``sigma`` is also
    compared step by step.
    """
    if entries is None:
        entries = load_records()
    by_id = {e.id: e for e in entries}
    out = []
    for a_id, b_id, fields in CROSS_CHECKS:
        a, b = by_id.get(a_id), by_id.get(b_id)
        if a is None or b is None:
            out.append(CrossCheck(a_id, b_id, fields, False, "entry missing"))
            continue
        ra, rb = verify_entry(a), verify_entry(b)
        va = _values(ra)
        vb = _values(rb)
        bad = [f for f in fields if va.get(f) is None or va.get(f) != vb.get(f)]
        detail = "" if not bad else "disagree on " + ", ".join(bad)
        ok = not bad and ra.status == rb.status == "pass"
        if ok and lockstep and set(fields) == {"s", "sigma"}:
            same, t = score_trace_equal(a.parsed(), b.parsed(), va["s"])
            ok = same and t == va["s"]
            detail = f"nonblank counts equal for all {t} steps" if ok else f"traces diverge at step {t}"
        out.append(CrossCheck(a_id, b_id, fields, ok, detail))
    return out


def _values(rep: EntryReport) -> dict:
    for r in rep.results:
        if r.status == "pass":
            return {"s": r.s, "sigma": r.sigma}
    return {}
