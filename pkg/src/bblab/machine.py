"""Turing machine tables under Rado's conventions.

States are stored as integer indices (0 is the start state ``A``), the halt
state is ``HALT`` (-1).  Symbol 0 is the blank.  Text forms:

* standard one-line form, rows separated by ``_``: ``1RB1LB_1LA1RH``
* whitespace separated triples, row-major by state: ``1RB 1LB 1LA 1RH``
* one row per line, triples separated by whitespace

``---`` marks an undefined slot.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import NamedTuple

HALT = -1
MOVES = ("L", "R", "S")

# 'H' is reserved for the halting state, so state letters skip it.
_STATE_LETTERS = "ABCDEFGIJKLMNOPQRSTUVWXYZ"
_TRIPLE = re.compile(r"^([0-9])([LRS])([A-Z])$")


class MachineFormatError(ValueError):
    """Raised for text that does not describe a valid machine."""


def state_name(q: int) -> str:
    return "H" if q == HALT else _STATE_LETTERS[q]


def state_index(letter: str) -> int:
    if letter == "H":
        return HALT
    idx = _STATE_LETTERS.find(letter)
    if idx < 0:
        raise MachineFormatError(f"unknown state letter {letter!r}")
    return idx


class ClassId(NamedTuple):
    """An (n states, k symbols) machine class."""

    n: int
    k: int

    def validate(self) -> "ClassId":
        if self.n < 1 or self.k < 2:
            raise ValueError(f"invalid class ({self.n},{self.k}): need n >= 1, k >= 2")
        return self

    def __str__(self) -> str:
        return f"({self.n},{self.k})"


@dataclass(frozen=True)
class Transition:
    write: int
    move: str
    next: int

    @property
    def halts(self) -> bool:
        return self.next == HALT

    @property
    def delta(self) -> int:
        return {"L": -1, "R": 1, "S": 0}[self.move]

    def __str__(self) -> str:
        return f"{self.write}{self.move}{state_name(self.next)}"


@dataclass(frozen=True)
class Machine:
    """Immutable transition table; ``table[q][a]`` is a Transition or None."""

    states: int
    symbols: int
    table: tuple[tuple[Transition | None, ...], ...]
    allow_stay: bool = False

    def __post_init__(self):
        ClassId(self.states, self.symbols).validate()
        if self.states > len(_STATE_LETTERS):
            raise ValueError("too many states")
        if len(self.table) != self.states or any(len(row) != self.symbols for row in self.table):
            raise MachineFormatError("table shape does not match (states, symbols)")
        for row in self.table:
            for tr in row:
                if tr is None:
                    continue
                if not 0 <= tr.write < self.symbols:
                    raise MachineFormatError(f"symbol {tr.write} out of range for k={self.symbols}")
                if tr.next != HALT and not 0 <= tr.next < self.states:
                    raise MachineFormatError(f"state {state_name(tr.next)} out of range for n={self.states}")
                if tr.move not in MOVES:
                    raise MachineFormatError(f"bad direction {tr.move!r}")
                if tr.move == "S" and not self.allow_stay:
                    raise MachineFormatError("stay move requires allow_stay")

    @property
    def class_id(self) -> ClassId:
        return ClassId(self.states, self.symbols)

    def __getitem__(self, key: tuple[int, int]) -> Transition | None:
        q, a = key
        return self.table[q][a]

    def slots(self):
        """Yield ``(state, symbol, transition)`` for all n*k slots."""
        for q, row in enumerate(self.table):
            for a, tr in enumerate(row):
                yield q, a, tr

    def undefined_slots(self) -> list[tuple[int, int]]:
        return [(q, a) for q, a, tr in self.slots() if tr is None]

    def with_transition(self, q: int, a: int, tr: Transition | None) -> "Machine":
        rows = [list(r) for r in self.table]
        rows[q][a] = tr
        return Machine(self.states, self.symbols, tuple(tuple(r) for r in rows), self.allow_stay)

    def is_rado(self) -> bool:
        """True when every halting transition is exactly 1RH."""
        return all(
            tr is None or not tr.halts or (tr.write == 1 and tr.move == "R")
            for _, _, tr in self.slots()
        )

    def validate(self, rado_strict: bool = False) -> "Machine":
        if rado_strict:
            for q, a, tr in self.slots():
                if tr is not None and tr.halts and (tr.write != 1 or tr.move != "R"):
                    raise MachineFormatError(
                        f"non-Rado halt transition {tr} at {state_name(q)}{a}"
                    )
            if self.allow_stay:
                raise MachineFormatError("stay moves are not allowed under Rado's rules")
        return self

    def code(self) -> str:
        return print_machine(self)

    def __str__(self) -> str:
        return print_machine(self)


def print_machine(m: Machine) -> str:
    """Canonical one-line form, e.g. ``1RB1LB_1LA1RH``."""
    return "_".join(
        "".join("---" if tr is None else str(tr) for tr in row) for row in m.table
    )


def _parse_triple(tok: str) -> Transition | None:
    if tok in ("---", "..."):
        return None
    mt = _TRIPLE.match(tok)
    if mt is None:
        raise MachineFormatError(f"malformed transition {tok!r}")
    write, move, letter = mt.groups()
    return Transition(int(write), move, state_index(letter))


def _split_row(row: str) -> list[str]:
    row = "".join(row.split())
    if len(row) % 3:
        raise MachineFormatError(f"row {row!r} is not a sequence of 3-character triples")
    return [row[i:i + 3] for i in range(0, len(row), 3)]


def _infer_shape(triples: list[Transition | None], hint: ClassId | None) -> ClassId:
    count = len(triples)
    if hint is not None:
        if hint.n * hint.k != count:
            raise MachineFormatError(f"{count} transitions do not fit class {hint}")
        return hint
    max_sym = max((t.write for t in triples if t), default=1)
    max_state = max((t.next for t in triples if t), default=0)
    candidates = []
    for k in range(2, count + 1):
        if count % k:
            continue
        n = count // k
        if k > max_sym and n > max_state:
            # prefer shapes where the highest state letter is the last row
            candidates.append((n != max_state + 1, k, n))
    if not candidates:
        raise MachineFormatError(f"cannot infer a class for {count} transitions")
    _, k, n = min(candidates)
    return ClassId(n, k)


def parse_machine(text: str, hint: ClassId | tuple[int, int] | None = None,
                  allow_stay: bool | None = None) -> Machine:
    """Parse any supported text form into a Machine.

    >>> print_machine(parse_machine("1RB 1LB 1LA 1RH"))
    '1RB1LB_1LA1RH'
    """
    if hint is not None:
        hint = ClassId(*hint)
    text = text.strip()
    if not text:
        raise MachineFormatError("empty machine text")
    if "_" in text:
        rows = [_split_row(r) for r in text.split("_")]
    elif "\n" in text:
        rows = [r.split() for r in text.splitlines() if r.strip()]
    else:
        rows = None

    if rows is not None:
        widths = {len(r) for r in rows}
        if len(widths) != 1:
            raise MachineFormatError("inconsistent row lengths")
        flat = [_parse_triple(t) for r in rows for t in r]
        shape = ClassId(len(rows), widths.pop())
        if hint is not None and hint != shape:
            raise MachineFormatError(f"rows describe class {shape}, hint says {hint}")
    else:
        toks = text.split()
        if len(toks) == 1:
            toks = _split_row(toks[0])
        flat = [_parse_triple(t) for t in toks]
        shape = _infer_shape(flat, hint)

    n, k = shape
    stay = any(t is not None and t.move == "S" for t in flat)
    if allow_stay is None:
        allow_stay = False
    if stay and not allow_stay:
        raise MachineFormatError("direction S requires allow_stay")
    table = tuple(tuple(flat[q * k:(q + 1) * k]) for q in range(n))
    return Machine(n, k, table, allow_stay)


def parse_machine_document(doc: str | dict) -> Machine:
    """Read a machine embedded in a JSON document under key ``"machine"``."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    if "machine" not in doc:
        raise MachineFormatError('JSON document lacks a "machine" key')
    hint = doc.get("class")
    return parse_machine(doc["machine"], hint=tuple(hint) if hint else None,
                         allow_stay=doc.get("allow_stay", False))


def class_size(c: ClassId | tuple[int, int]) -> int:
    """Number of machines in TM(n, k): (2kn + 1) ** (kn)."""
    n, k = ClassId(*c).validate()
    return (2 * k * n + 1) ** (k * n)


def relabel(m: Machine, state_perm: dict[int, int] | None = None,
            symbol_perm: dict[int, int] | None = None, mirror: bool = False) -> Machine:
    """Apply a renaming of states and symbols and optionally swap L/R.

    Maps are old -> new.  HALT and the blank symbol must map to themselves.
    """
    sp = {q: q for q in range(m.states)}
    sp.update(state_perm or {})
    yp = {a: a for a in range(m.symbols)}
    yp.update(symbol_perm or {})
    if sorted(sp.values()) != list(range(m.states)) or sorted(yp.values()) != list(range(m.symbols)):
        raise ValueError("state and symbol maps must be bijections")
    if yp[0] != 0:
        raise ValueError("the blank symbol cannot be permuted")
    flip = {"L": "R", "R": "L", "S": "S"}
    rows: list[list[Transition | None]] = [[None] * m.symbols for _ in range(m.states)]
    for q, a, tr in m.slots():
        if tr is not None:
            nxt = HALT if tr.halts else sp[tr.next]
            tr = Transition(yp[tr.write], flip[tr.move] if mirror else tr.move, nxt)
        rows[sp[q]][yp[a]] = tr
    return Machine(m.states, m.symbols, tuple(tuple(r) for r in rows), m.allow_stay)


@dataclass(frozen=True)
class Normalization:
    machine: Machine
    state_map: dict[str, str]
    symbol_map: dict[int, int]
    mirrored: bool
    complete: bool

    @property
    def is_identity(self) -> bool:
        return (not self.mirrored
                and all(k == v for k, v in self.state_map.items())
                and all(k == v for k, v in self.symbol_map.items()))


class NormalizationError(ValueError):
    pass


def normalize(m: Machine, max_steps: int = 10**6) -> Normalization:
    """Rename states by first entry, symbols by first write, and mirror if the
    first move is to the left, observing the run from a blank tape.

    Entities not witnessed within ``max_steps`` keep their relative order after
    the witnessed ones; ``complete`` is False in that case.
    """
    if m[0, 0] is None:
        raise NormalizationError("first transition is undefined")
    state_order = [0]
    symbol_order: list[int] = []
    first_move: str | None = None
    tape: dict[int, int] = {}
    pos, q = 0, 0
    steps = 0
    need_states, need_syms = m.states, m.symbols - 1
    while steps < max_steps:
        if len(state_order) == need_states and len(symbol_order) == need_syms and first_move:
            break
        tr = m[q, tape.get(pos, 0)]
        if tr is None:
            break
        if tr.write and tr.write not in symbol_order:
            symbol_order.append(tr.write)
        if first_move is None and tr.move != "S":
            first_move = tr.move
        tape[pos] = tr.write
        pos += tr.delta
        steps += 1
        if tr.halts:
            break
        q = tr.next
        if q not in state_order:
            state_order.append(q)
    complete = (len(state_order) == need_states and len(symbol_order) == need_syms
                and first_move is not None)
    state_order += [s for s in range(m.states) if s not in state_order]
    symbol_order += [a for a in range(1, m.symbols) if a not in symbol_order]
    sp = {old: new for new, old in enumerate(state_order)}
    yp = {0: 0} | {old: new for new, old in enumerate(symbol_order, start=1)}
    mirrored = first_move == "L"
    out = relabel(m, sp, yp, mirrored)
    return Normalization(
        machine=out,
        state_map={state_name(o): state_name(n) for o, n in sp.items()},
        symbol_map=yp,
        mirrored=mirrored,
        complete=complete,
    )
