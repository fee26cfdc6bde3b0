"""Sound non-halting recognizers.

Each decider returns a :class:`Verdict`.  ``NonHalting`` verdicts carry a
witness that :func:`recheck` replays with the direct simulator, so a decider
bug cannot silently turn into a wrong claim.  Deciders never claim halting.

The two dynamic deciders run a fixed-size tape of ``2*max_steps + 3`` cells
centred on the start cell, so the head can never leave the buffer.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .machine import HALT, Machine, parse_machine
from .simulate import Configuration, _NEXT_UNDEFINED, compile_table, run_from_blank, step

try:
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None

NO_HALT = "NoHaltTransition"
CYCLE = "Cycle"
TRANSLATED = "TranslatedCycle"

NONHALTING = "NonHalting"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Verdict:
    kind: str  # NONHALTING or UNKNOWN
    reason: str | None = None
    period: int | None = None
    shift: int | None = None
    witness: dict = field(default_factory=dict)
    machine: str = ""

    @property
    def nonhalting(self) -> bool:
        return self.kind == NONHALTING

    def describe(self) -> str:
        if not self.nonhalting:
            return UNKNOWN
        if self.reason == CYCLE:
            return f"{NONHALTING}({CYCLE}({self.period}))"
        if self.reason == TRANSLATED:
            return f"{NONHALTING}({TRANSLATED}({self.period}, {self.shift}))"
        return f"{NONHALTING}({self.reason})"

    def to_json(self) -> dict:
        out = {"machine": self.machine, "kind": self.kind}
        if self.nonhalting:
            out["reason"] = self.reason
            if self.period is not None:
                out["period"] = self.period
            if self.shift is not None:
                out["shift"] = self.shift
            out["witness"] = dict(self.witness)
        return out

    @classmethod
    def from_json(cls, d: dict) -> "Verdict":
        return cls(d["kind"], d.get("reason"), d.get("period"), d.get("shift"),
                   dict(d.get("witness", {})), d.get("machine", ""))


def _unknown(m: Machine) -> Verdict:
    return Verdict(UNKNOWN, machine=m.code())


# ------------------------------------------------------------------ static

def reachable_states(m: Machine) -> set[int]:
    """States reachable from A in the transition graph (any symbol)."""
    seen = {0}
    todo = [0]
    while todo:
        q = todo.pop()
        for tr in m.table[q]:
            if tr is not None and not tr.halts and tr.next not in seen:
                seen.add(tr.next)
                todo.append(tr.next)
    return seen


def decide_no_halt_reachable(m: Machine) -> Verdict:
    """NonHalting when no state reachable from A has a halting or undefined slot."""
    states = reachable_states(m)
    for q in states:
        for tr in m.table[q]:
            if tr is None or tr.halts:
                return _unknown(m)
    return Verdict(NONHALTING, NO_HALT, witness={"reachable": sorted(states)}, machine=m.code())


# ----------------------------------------------------------------- kernels

# status codes shared by both kernels
_K_LIMIT, _K_HALT, _K_UNDEF, _K_FOUND = 0, 1, 2, 3


def _cycle_kernel(wr, mv, nx, k, max_steps):
    size = 2 * max_steps + 3
    tape = np.zeros(size, np.uint8)
    snap = np.zeros(size, np.uint8)
    head = max_steps + 1
    state = 0
    lo = head
    hi = head
    snap_state = 0
    snap_head = head
    snap_t = 0
    next_cp = 1
    t = 0
    while t < max_steps:
        i = state * k + tape[head]
        nq = nx[i]
        if nq == _NEXT_UNDEFINED:
            return _K_UNDEF, t, 0
        tape[head] = wr[i]
        head += mv[i]
        t += 1
        if nq == HALT:
            return _K_HALT, t, 0
        state = nq
        if head < lo:
            lo = head
        elif head > hi:
            hi = head
        if state == snap_state and head == snap_head:
            same = True
            for j in range(lo, hi + 1):
                if tape[j] != snap[j]:
                    same = False
                    break
            if same:
                return _K_FOUND, snap_t, t
        if t == next_cp:
            snap[lo:hi + 1] = tape[lo:hi + 1]
            snap_state = state
            snap_head = head
            snap_t = t
            next_cp *= 2
    return _K_LIMIT, t, 0


def _translated_kernel(wr, mv, nx, k, max_steps):
    """Returns (status, t1, t2, side, edge, pos1, pos2); ``edge`` is the
    furthest excursion away from the escape direction during [t1, t2]."""
    size = 2 * max_steps + 3
    tape = np.zeros(size, np.uint8)
    head = max_steps + 1
    state = 0
    lo = head
    hi = head
    # one snapshot per side: [active, t, pos, state, edge since t]
    r_snap = np.zeros(size, np.uint8)
    l_snap = np.zeros(size, np.uint8)
    r_on = False
    l_on = False
    r_t = 0
    r_pos = 0
    r_q = 0
    r_min = 0
    l_t = 0
    l_pos = 0
    l_q = 0
    l_max = 0
    r_want = True
    l_want = True
    next_cp = 1
    t = 0
    while t < max_steps:
        i = state * k + tape[head]
        nq = nx[i]
        if nq == _NEXT_UNDEFINED:
            return _K_UNDEF, t, 0, 0, 0, 0, 0
        tape[head] = wr[i]
        head += mv[i]
        t += 1
        if nq == HALT:
            return _K_HALT, t, 0, 0, 0, 0, 0
        state = nq
        if r_on and head < r_min:
            r_min = head
        if l_on and head > l_max:
            l_max = head
        if head > hi:
            hi = head
            if r_on and state == r_q:
                d = head - r_pos
                same = True
                for j in range(r_min, r_pos + 1):
                    if tape[j + d] != r_snap[j]:
                        same = False
                        break
                if same:
                    return _K_FOUND, r_t, t, 1, r_min, r_pos, head
            if r_want:
                r_snap[lo:hi + 1] = tape[lo:hi + 1]
                r_on = True
                r_want = False
                r_t = t
                r_pos = head
                r_q = state
                r_min = head
        elif head < lo:
            lo = head
            if l_on and state == l_q:
                d = head - l_pos
                same = True
                for j in range(l_pos, l_max + 1):
                    if tape[j + d] != l_snap[j]:
                        same = False
                        break
                if same:
                    return _K_FOUND, l_t, t, -1, l_max, l_pos, head
            if l_want:
                l_snap[lo:hi + 1] = tape[lo:hi + 1]
                l_on = True
                l_want = False
                l_t = t
                l_pos = head
                l_q = state
                l_max = head
        if t == next_cp:
            r_want = True
            l_want = True
            next_cp *= 2
    return _K_LIMIT, t, 0, 0, 0, 0, 0


if njit is not None:
    _cycle_jit = njit(cache=True, nogil=True)(_cycle_kernel)
    _translated_jit = njit(cache=True, nogil=True)(_translated_kernel)
else:  # pragma: no cover
    _cycle_jit = _cycle_kernel
    _translated_jit = _translated_kernel


def _kernel(fn_jit, fn_py, engine: str):
    if engine == "python":
        return fn_py
    return fn_jit


# ----------------------------------------------------------------- dynamic

def decide_cycle(m: Machine, max_steps: int, engine: str = "auto") -> Verdict:
    """Exact (translation-sensitive) configuration recurrence within ``max_steps``.

    Snapshots are taken at steps 1, 2, 4, 8, ... and each later configuration
    is compared with the latest one, so a cycle with pre-period mu and period
    p is found by step ``2*max(mu, p)``.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    if m.allow_stay:
        raise ValueError("deciders support L/R machines only")
    wr, mv, nx = compile_table(m)
    fn = _kernel(_cycle_jit, _cycle_kernel, engine)
    status, t1, t2 = fn(wr, mv, nx, m.symbols, int(max_steps))
    if status != _K_FOUND:
        return _unknown(m)
    t1, t2 = int(t1), int(t2)
    return Verdict(NONHALTING, CYCLE, period=t2 - t1, witness={"t1": t1, "t2": t2},
                   machine=m.code())


def decide_translated_cycle(m: Machine, max_steps: int, engine: str = "auto") -> Verdict:
    """Recurrence of state and nearby tape at two record positions of the head.

    At steps t1 < t2 the head stands on a never-visited cell on the same side,
    in the same state.  If the cells the machine could have read between t1
    and t2 (from the furthest point it backed off to, up to the record cell)
    look the same at t2, shifted, then the stretch repeats forever.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    if m.allow_stay:
        raise ValueError("deciders support L/R machines only")
    wr, mv, nx = compile_table(m)
    fn = _kernel(_translated_jit, _translated_kernel, engine)
    status, t1, t2, side, edge, p1, p2 = (int(v) for v in fn(wr, mv, nx, m.symbols, int(max_steps)))
    if status != _K_FOUND:
        return _unknown(m)
    origin = max_steps + 1
    return Verdict(NONHALTING, TRANSLATED, period=t2 - t1, shift=p2 - p1,
                   witness={"t1": t1, "t2": t2, "side": "R" if side > 0 else "L",
                            "edge": edge - origin, "pos1": p1 - origin, "pos2": p2 - origin},
                   machine=m.code())


DEFAULT_DECIDERS = ("no_halt", "cycle", "translated")


def decide(m: Machine, max_steps: int = 10_000, deciders=DEFAULT_DECIDERS,
           engine: str = "auto") -> Verdict:
    """Apply deciders in order and return the first NonHalting verdict."""
    for name in deciders:
        if name == "no_halt":
            v = decide_no_halt_reachable(m)
        elif name == "cycle":
            v = decide_cycle(m, max_steps, engine)
        elif name == "translated":
            v = decide_translated_cycle(m, max_steps, engine)
        else:
            raise ValueError(f"unknown decider {name!r}")
        if v.nonhalting:
            return v
    return _unknown(m)


# --------------------------------------------------------------- re-check

def _absolute(c: Configuration) -> tuple[int, int, dict[int, int]]:
    cells = {c.origin + i: s for i, s in enumerate(c.tape) if s}
    return c.state, c.position, cells


def recheck(m: Machine | str, v: Verdict) -> bool:
    """Replay a NonHalting witness with the direct simulator."""
    if isinstance(m, str):
        m = parse_machine(m)
    if not v.nonhalting:
        return False
    if v.reason == NO_HALT:
        return decide_no_halt_reachable(m).nonhalting
    w = v.witness
    t1, t2 = int(w["t1"]), int(w["t2"])
    if not 0 <= t1 < t2:
        return False
    first = run_from_blank(m, t1)
    if first.steps != t1 or first.kind.value != "StillRunning":
        return False
    if v.reason == CYCLE:
        second = run_from_blank(m, t2)
        return second.steps == t2 and _absolute(first.final) == _absolute(second.final)
    if v.reason == TRANSLATED:
        # Sufficient conditions, checked independently of how the decider
        # found them: same state at t1 and t2, everything beyond the head
        # (in the escape direction) blank at both times, and the span the
        # head covered during [t1, t2] reappears shifted by d at t2.
        right = w["side"] == "R"
        a = first.final
        c = a.copy()
        p1 = c.position
        edge = p1
        for _ in range(t2 - t1):
            step(m, c)
            if c.state == HALT:
                return False
            edge = min(edge, c.position) if right else max(edge, c.position)
        p2 = c.position
        d = p2 - p1
        if c.state != a.state or d == 0 or (d > 0) != right:
            return False

        def blank_beyond(cfg, pos):
            return all(((cfg.origin + i) <= pos) if right else ((cfg.origin + i) >= pos)
                       for i, sym in enumerate(cfg.tape) if sym)

        if not (blank_beyond(a, p1) and blank_beyond(c, p2)):
            return False
        span = range(edge, p1 + 1) if right else range(p1, edge + 1)
        return all(a.read(x - a.origin) == c.read(x + d - c.origin) for x in span)
    return False
