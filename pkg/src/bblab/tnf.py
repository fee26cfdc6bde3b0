"""Tree-normal-form enumeration of (n, k) classes.

Transitions are defined lazily: a partial machine is simulated from the
blank tape until it reaches an undefined slot, and the enumeration branches
there on the halting fill ``1RH`` plus every fill whose target state is at
most one past the states in use and whose symbol is at most one past the
symbols written so far.  Children resume from the parent's configuration,
so no prefix is simulated twice.  For n >= 2 the root fixes
``A0 = 1RB``; machines whose first move is left are mirror images.

Leaves are of three kinds: halting fills (exact s and sigma), machines that
run to the cutoff and are then passed to deciders, and holdouts that no
decider settles.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from . import deciders as dec
from .machine import HALT, ClassId, Machine, Transition
from .simulate import _grow, _kernel_jit, _kernel_py, compile_table

DEFAULT_CUTOFFS = {(2, 2): 1_000, (3, 2): 10_000, (2, 3): 10_000, (4, 2): 100_000}

# kernel status codes (see simulate._kernel_py)
from .simulate import _EDGE, _HALTED, _UNDEFINED  # noqa: E402


@dataclass
class Node:
    table: list  # flat, q*k + a -> Transition | None
    tape: np.ndarray
    head: int
    state: int
    steps: int
    used_states: int
    used_symbols: int

    def machine(self, c: ClassId) -> Machine:
        rows = tuple(tuple(self.table[q * c.k:(q + 1) * c.k]) for q in range(c.n))
        return Machine(c.n, c.k, rows)


@dataclass
class Leaf:
    machine: Machine
    kind: str  # "halted", "decided", "holdout"
    steps: int  # s for halted, steps simulated otherwise
    sigma: int | None = None
    verdict: dec.Verdict | None = None


def _root(c: ClassId) -> Node:
    table = [None] * (c.n * c.k)
    if c.n == 1:
        return Node(table, np.zeros(1, np.uint8), 0, 0, 0, 1, 1)
    table[0] = Transition(1, "R", 1)
    tape = np.zeros(2, np.uint8)
    tape[0] = 1
    return Node(table, tape, 1, 1, 1, 2, 2)


def _fills(c: ClassId, node: Node):
    for w in range(min(c.k, node.used_symbols + 1)):
        for move in "RL":
            for q in range(min(c.n, node.used_states + 1)):
                yield Transition(w, move, q)


def _advance(m: Machine, node: Node, budget: int, jit: bool):
    """Run in place for at most ``budget`` steps; returns the kernel status."""
    wr, mv, nx = compile_table(m)
    kernel = _kernel_jit if jit and _kernel_jit is not None else _kernel_py
    tape = node.tape if kernel is _kernel_jit else bytearray(node.tape.tobytes())
    head, state = node.head, node.state
    done = 0
    while True:
        if head < 0 or head >= len(tape):
            tape, head, _ = _grow(tape, head)
            continue
        status, head, state, n = kernel(wr, mv, nx, m.symbols, tape, head, state, budget - done)
        done += int(n)
        head, state = int(head), int(state)
        if status != _EDGE:
            break
    node.tape = tape if isinstance(tape, np.ndarray) else np.frombuffer(bytes(tape), np.uint8).copy()
    node.head, node.state = head, state
    node.steps += done
    return status


def _reachable_undefined(m: Machine) -> bool:
    return any(tr is None or tr.halts for q in dec.reachable_states(m) for tr in m.table[q])


def _nonblanks(tape: np.ndarray) -> int:
    return int(np.count_nonzero(tape))


def _visit(c: ClassId, node: Node, cutoff: int, deciders, decider_steps: int,
           jit: bool, out: Callable[[Leaf], None], stack: list) -> None:
    m = node.machine(c)
    if not _reachable_undefined(m):
        # no halting or undefined slot can ever be reached: simulation to the
        # cutoff would be a no-op as far as the outcome is concerned
        status = None
    else:
        status = _advance(m, node, cutoff - node.steps, jit)
    if status == _UNDEFINED:
        q, a = node.state, int(node.tape[node.head])
        slot = q * c.k + a
        halt_tape = node.tape.copy()
        halt_tape[node.head] = 1
        halt_table = list(node.table)
        halt_table[slot] = Transition(1, "R", HALT)
        hm = Machine(c.n, c.k, tuple(tuple(halt_table[i * c.k:(i + 1) * c.k]) for i in range(c.n)))
        out(Leaf(hm, "halted", node.steps + 1, _nonblanks(halt_tape)))
        for tr in _fills(c, node):
            table = list(node.table)
            table[slot] = tr
            stack.append(Node(table, node.tape.copy(), node.head, node.state, node.steps,
                              max(node.used_states, tr.next + 1),
                              max(node.used_symbols, tr.write + 1)))
        return
    if status == _HALTED:  # pragma: no cover - partial machines carry no halts
        raise AssertionError("partial machine halted")
    verdict = dec.decide(m, decider_steps, deciders) if deciders else dec._unknown(m)
    kind = "decided" if verdict.nonhalting else "holdout"
    out(Leaf(m, kind, node.steps, None, verdict))


def _walk(c: ClassId, roots: Iterable[Node], cutoff: int, deciders, decider_steps: int,
          jit: bool, visitor: Callable[[Leaf], None], max_nodes: int | None) -> tuple[int, bool]:
    stack = list(roots)
    stack.reverse()
    nodes = 0
    while stack:
        if max_nodes is not None and nodes >= max_nodes:
            return nodes, True
        node = stack.pop()
        nodes += 1
        before = len(stack)
        _visit(c, node, cutoff, deciders, decider_steps, jit, visitor, stack)
        # keep depth-first order stable: children in fill order
        stack[before:] = stack[before:][::-1]
    return nodes, False


def enumerate_tnf(c: ClassId | tuple[int, int], visitor: Callable[[Leaf], None] | None = None,
                  cutoff: int | None = None, deciders=dec.DEFAULT_DECIDERS,
                  decider_steps: int | None = None, max_nodes: int | None = None,
                  jit: bool = True) -> int:
    """Visit every TNF leaf machine of class ``c``; returns the leaf count.

    ``max_nodes`` bounds the number of tree nodes processed; when it runs out
    the enumeration stops early and the count covers only what was visited.
    """
    c = ClassId(*c).validate()
    cutoff = cutoff or DEFAULT_CUTOFFS.get(tuple(c), 10_000)
    count = 0

    def out(leaf: Leaf):
        nonlocal count
        count += 1
        if visitor is not None:
            visitor(leaf)

    _walk(c, [_root(c)], cutoff, deciders, decider_steps or cutoff, jit, out, max_nodes)
    return count


# ------------------------------------------------------------------ report

@dataclass
class SearchReport:
    class_id: ClassId
    cutoff: int
    enumerated: int = 0
    halted: int = 0
    decided: dict = field(default_factory=dict)
    holdouts: list = field(default_factory=list)
    best_s: int = 0
    best_s_machines: list = field(default_factory=list)
    best_sigma: int = 0
    best_sigma_machines: list = field(default_factory=list)
    partial: bool = False

    @property
    def decided_total(self) -> int:
        return sum(self.decided.values())

    def add(self, leaf: Leaf) -> None:
        self.enumerated += 1
        code = leaf.machine.code()
        if leaf.kind == "halted":
            self.halted += 1
            if leaf.steps > self.best_s:
                self.best_s, self.best_s_machines = leaf.steps, [code]
            elif leaf.steps == self.best_s:
                self.best_s_machines.append(code)
            if leaf.sigma > self.best_sigma:
                self.best_sigma, self.best_sigma_machines = leaf.sigma, [code]
            elif leaf.sigma == self.best_sigma:
                self.best_sigma_machines.append(code)
        elif leaf.kind == "decided":
            r = leaf.verdict.reason
            self.decided[r] = self.decided.get(r, 0) + 1
        else:
            self.holdouts.append(code)

    def merge(self, other: "SearchReport") -> "SearchReport":
        """Order-independent combination of two partial reports."""
        out = SearchReport(self.class_id, self.cutoff)
        out.enumerated = self.enumerated + other.enumerated
        out.halted = self.halted + other.halted
        out.decided = {r: self.decided.get(r, 0) + other.decided.get(r, 0)
                       for r in set(self.decided) | set(other.decided)}
        out.holdouts = sorted(self.holdouts + other.holdouts)
        for attr in ("s", "sigma"):
            a, b = getattr(self, f"best_{attr}"), getattr(other, f"best_{attr}")
            best = max(a, b)
            codes = []
            if a == best:
                codes += getattr(self, f"best_{attr}_machines")
            if b == best:
                codes += getattr(other, f"best_{attr}_machines")
            setattr(out, f"best_{attr}", best)
            setattr(out, f"best_{attr}_machines", sorted(codes))
        out.partial = self.partial or other.partial
        return out

    def canonical(self) -> "SearchReport":
        return self.merge(SearchReport(self.class_id, self.cutoff))

    def to_json(self) -> dict:
        return {
            "class": [self.class_id.n, self.class_id.k],
            "cutoff": self.cutoff,
            "enumerated": self.enumerated,
            "halted": self.halted,
            "decided_nonhalting": dict(sorted(self.decided.items())),
            "holdouts": {"count": len(self.holdouts), "machines": sorted(self.holdouts)},
            "best_s": str(self.best_s),
            "best_s_machines": sorted(self.best_s_machines),
            "best_sigma": str(self.best_sigma),
            "best_sigma_machines": sorted(self.best_sigma_machines),
            "partial": self.partial,
        }

    def summary(self) -> str:
        dec_txt = ", ".join(f"{k} {v}" for k, v in sorted(self.decided.items())) or "none"
        return (f"class {self.class_id}, cutoff {self.cutoff}: {self.enumerated} machines, "
                f"{self.halted} halted, decided {self.decided_total} ({dec_txt}), "
                f"{len(self.holdouts)} holdouts; best_s {self.best_s}, best_sigma {self.best_sigma}"
                + (" [partial]" if self.partial else ""))


def _frontier(c: ClassId, want: int, cutoff: int, deciders, decider_steps: int, jit: bool,
              report: SearchReport) -> list[Node]:
    """Expand breadth-first until at least ``want`` open subtrees exist."""
    level = [_root(c)]
    while level and len(level) < want:
        nxt: list[Node] = []
        for node in level:
            _visit(c, node, cutoff, deciders, decider_steps, jit, report.add, nxt)
        level = nxt
    return level


def _search_subtrees(args) -> SearchReport:
    c, nodes, cutoff, deciders, decider_steps, jit = args
    rep = SearchReport(c, cutoff)
    _walk(c, nodes, cutoff, deciders, decider_steps, jit, rep.add, None)
    return rep


def search_class(c: ClassId | tuple[int, int], cutoff: int | None = None,
                 deciders=dec.DEFAULT_DECIDERS, decider_steps: int | None = None,
                 workers: int = 1, max_nodes: int | None = None, jit: bool = True) -> SearchReport:
    """Enumerate ``c`` in TNF, run each leaf up to ``cutoff`` steps and apply deciders.

    With ``workers > 1`` the tree is split into subtrees that run in separate
    processes; the merged report does not depend on the worker count.
    """
    c = ClassId(*c).validate()
    cutoff = cutoff or DEFAULT_CUTOFFS.get(tuple(c), 10_000)
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    deciders = tuple(deciders)
    dsteps = decider_steps or cutoff
    if workers <= 1 or max_nodes is not None:
        rep = SearchReport(c, cutoff)
        _, rep.partial = _walk(c, [_root(c)], cutoff, deciders, dsteps, jit, rep.add, max_nodes)
        return rep.canonical()
    rep = SearchReport(c, cutoff)
    roots = _frontier(c, 8 * workers, cutoff, deciders, dsteps, jit, rep)
    chunks = [roots[i::workers] for i in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_search_subtrees, [(c, ch, cutoff, deciders, dsteps, jit) for ch in chunks])
        for part in parts:
            rep = rep.merge(part)
    return rep.canonical()


def write_holdouts(report: SearchReport, path) -> None:
    with open(path, "w") as fh:
        for code in sorted(report.holdouts):
            fh.write(code + "\n")


def load_report(path) -> dict:
    with open(path) as fh:
        return json.load(fh)
