"""Exact step-by-step simulation.

The hot loop exists twice: a numba kernel (used when numba imports) and a
plain Python kernel.  Both operate on a fixed window of tape and hand control
back when the head leaves it, so the wrapper can grow the window.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from .machine import HALT, Machine, state_index, state_name

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None

_HALTED, _LIMIT, _UNDEFINED, _EDGE = 0, 1, 2, 3
_NEXT_UNDEFINED = -2
_CHUNK = 1 << 62
MAX_TAPE = 1 << 31


class Outcome(str, Enum):
    HALTED = "Halted"
    RUNNING = "StillRunning"
    UNDEFINED = "ReachedUndefined"


@dataclass
class Configuration:
    """Finite tape window plus head, state and step counter.

    ``head`` indexes into ``tape`` and may point past either end (blank).
    ``origin`` is the absolute position of ``tape[0]``; only deciders that are
    sensitive to translation look at it.
    """

    tape: bytearray
    head: int
    state: int
    steps: int = 0
    origin: int = 0

    @classmethod
    def blank(cls, state: int = 0) -> "Configuration":
        return cls(bytearray(1), 0, state)

    @property
    def position(self) -> int:
        return self.origin + self.head

    def read(self, i: int | None = None) -> int:
        i = self.head if i is None else i
        return self.tape[i] if 0 <= i < len(self.tape) else 0

    def nonblanks(self) -> int:
        return len(self.tape) - self.tape.count(0)

    def copy(self) -> "Configuration":
        return replace(self, tape=bytearray(self.tape))

    def signature(self) -> tuple:
        """Translation-invariant key: state, offset of first nonblank from the
        head, and the trimmed nonblank content."""
        t = self.tape
        lo = next((i for i, s in enumerate(t) if s), None)
        if lo is None:
            return (self.state, None, b"")
        hi = len(t) - next(i for i, s in enumerate(reversed(t)) if s)
        return (self.state, lo - self.head, bytes(t[lo:hi]))

    @classmethod
    def parse(cls, text: str, steps: int = 0) -> "Configuration":
        """Read the bracketed-head notation, e.g. ``...0(A0)1^6 0...`` or
        ``1 (B2) (12)^3 0``.  Ellipses are ignored."""
        return parse_config(text, steps)

    def __str__(self) -> str:
        return format_config(self)


_TOKEN = re.compile(
    r"\s*(?:(?P<head>\((?P<hs>[A-Z])(?P<hy>\d)\))"
    r"|(?P<grp>\((?P<blk>\d+)\)|(?P<one>\d))\^\{?(?P<exp>\d+)\}?"
    r"|(?P<lit>\d+))"
)


def parse_config(text: str, steps: int = 0) -> Configuration:
    text = text.replace("…", " ").replace("...", " ").replace("\\ldots", " ").strip()
    cells = bytearray()
    head = None
    state = 0
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        mt = _TOKEN.match(text, pos)
        if mt is None or mt.end() == pos:
            raise ValueError(f"cannot parse configuration near {text[pos:pos + 12]!r}")
        pos = mt.end()
        if mt.group("head"):
            if head is not None:
                raise ValueError("configuration has two heads")
            head = len(cells)
            state = state_index(mt.group("hs"))
            cells.append(int(mt.group("hy")))
        elif mt.group("exp") is not None:
            block = mt.group("blk") or mt.group("one")
            cells.extend(bytes(int(c) for c in block) * int(mt.group("exp")))
        else:
            cells.extend(int(c) for c in mt.group("lit"))
    if head is None:
        raise ValueError("configuration has no head marker")
    return Configuration(cells, head, state, steps)


def _runs(seq: bytes) -> list[tuple[int, int]]:
    out: list[tuple[int, int]] = []
    for s in seq:
        if out and out[-1][0] == s:
            out[-1] = (s, out[-1][1] + 1)
        else:
            out.append((s, 1))
    return out


def _fmt_runs(seq: bytes) -> str:
    return " ".join(f"{s}^{c}" if c > 3 else str(s) * c for s, c in _runs(seq))


def format_config(c: Configuration) -> str:
    state, rel, body = c.signature()
    hs = c.read()
    if rel is None:
        return f"0({state_name(state)}{hs})0"
    lo = c.head + rel
    hi = lo + len(body)
    left = bytes(c.read(i) for i in range(min(lo, c.head), c.head))
    right = bytes(c.read(i) for i in range(c.head + 1, max(hi, c.head + 1)))
    parts = ["0", _fmt_runs(left), f"({state_name(state)}{hs})", _fmt_runs(right), "0"]
    return " ".join(p for p in parts if p)


def config_equals(a: Configuration, b: Configuration) -> bool:
    """Equality up to translation of the tape window."""
    return a.signature() == b.signature()


@dataclass
class RunOutcome:
    kind: Outcome
    steps: int
    nonblanks: int
    final: Configuration
    note: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def sigma(self) -> int:
        return self.nonblanks

    def to_json(self) -> dict:
        out = {"kind": self.kind.value, "steps": str(self.steps), "sigma": str(self.nonblanks)}
        out.update({k: str(v) for k, v in self.extra.items()})
        return out


def compile_table(m: Machine) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    size = m.states * m.symbols
    wr = np.zeros(size, np.int64)
    mv = np.zeros(size, np.int64)
    nx = np.full(size, _NEXT_UNDEFINED, np.int64)
    for q, a, tr in m.slots():
        if tr is not None:
            i = q * m.symbols + a
            wr[i], mv[i], nx[i] = tr.write, tr.delta, tr.next
    return wr, mv, nx


def _kernel_py(wr, mv, nx, k, tape, head, state, max_steps):
    wr, mv, nx = list(wr), list(mv), list(nx)
    n = len(tape)
    steps = 0
    while steps < max_steps:
        if head < 0 or head >= n:
            return _EDGE, head, state, steps
        i = state * k + tape[head]
        nq = nx[i]
        if nq == _NEXT_UNDEFINED:
            return _UNDEFINED, head, state, steps
        tape[head] = wr[i]
        head += mv[i]
        steps += 1
        if nq == HALT:
            return _HALTED, head, HALT, steps
        state = nq
    return _LIMIT, head, state, steps


if njit is not None:
    @njit(cache=True, nogil=True)
    def _kernel_jit(wr, mv, nx, k, tape, head, state, max_steps):
        n = tape.shape[0]
        steps = 0
        while steps < max_steps:
            if head < 0 or head >= n:
                return _EDGE, head, state, steps
            i = state * k + tape[head]
            nq = nx[i]
            if nq == _NEXT_UNDEFINED:
                return _UNDEFINED, head, state, steps
            tape[head] = wr[i]
            head += mv[i]
            steps += 1
            if nq == HALT:
                return _HALTED, head, HALT, steps
            state = nq
        return _LIMIT, head, state, steps
else:  # pragma: no cover
    _kernel_jit = None


def _grow(tape, head):
    """Double the window, keeping the old content centred."""
    old = len(tape)
    if old * 2 > MAX_TAPE:
        raise MemoryError("tape window would exceed 2**31 cells")
    pad = old // 2 + 1
    new = np.zeros(old + 2 * pad, np.uint8) if isinstance(tape, np.ndarray) else bytearray(old + 2 * pad)
    new[pad:pad + old] = tape
    return new, head + pad, pad


def run_from(m: Machine, start: Configuration, max_steps: int, engine: str = "auto") -> RunOutcome:
    """Run ``m`` from ``start`` for at most ``max_steps`` new steps.

    ``engine`` is ``"jit"``, ``"python"`` or ``"auto"`` (jit when available).
    """
    if max_steps < 0:
        raise ValueError("max_steps must be >= 0")
    if start.state == HALT:
        final = start.copy()
        return RunOutcome(Outcome.HALTED, 0, final.nonblanks(), final, note="start state is H")
    use_jit = engine == "jit" or (engine == "auto" and _kernel_jit is not None)
    if use_jit and _kernel_jit is None:
        raise RuntimeError("numba is not available")
    wr, mv, nx = compile_table(m)
    k = m.symbols
    if use_jit:
        kernel = _kernel_jit
        tape = np.frombuffer(bytes(start.tape), np.uint8).copy()
        if tape.size == 0:
            tape = np.zeros(1, np.uint8)
    else:
        kernel = _kernel_py
        tape = bytearray(start.tape) or bytearray(1)
    head, state, origin = start.head, start.state, start.origin
    done = 0
    while True:
        if head < 0 or head >= len(tape):
            tape, head, pad = _grow(tape, head)
            origin -= pad
            continue
        budget = min(max_steps - done, _CHUNK)
        status, head, state, steps = kernel(wr, mv, nx, k, tape, head, state, budget)
        done += int(steps)
        head, state = int(head), int(state)
        if status == _EDGE:
            continue
        if status == _LIMIT and done < max_steps:
            continue
        break
    final = Configuration(bytearray(tape.tobytes() if use_jit else tape), head, state,
                          start.steps + done, origin)
    if status == _HALTED:
        kind = Outcome.HALTED
    elif status == _UNDEFINED:
        # the step that reaches an undefined slot is counted
        kind = Outcome.UNDEFINED
        done += 1
        final.steps += 1
    else:
        kind = Outcome.RUNNING
    return RunOutcome(kind, done, final.nonblanks(), final)


def run_from_blank(m: Machine, max_steps: int, engine: str = "auto") -> RunOutcome:
    """Simulate ``m`` on a blank tape starting in state A."""
    return run_from(m, Configuration.blank(), max_steps, engine)


def step(m: Machine, c: Configuration) -> Configuration:
    """Apply one transition in place; returns ``c``.  Slow path for tracing."""
    tr = m[c.state, c.read()]
    if tr is None:
        raise ValueError("undefined transition")
    if c.head < 0:
        c.tape[0:0] = bytes(-c.head)
        c.origin += c.head
        c.head = 0
    elif c.head >= len(c.tape):
        c.tape.extend(bytes(c.head - len(c.tape) + 1))
    c.tape[c.head] = tr.write
    c.head += tr.delta
    c.state = tr.next
    c.steps += 1
    return c
