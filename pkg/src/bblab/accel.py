"""Run-length compressed simulation with chain steps.

The tape is two stacks of ``[symbol, count]`` runs, the top of each stack
being the run adjacent to the head.  When ``delta(q, a) = (b, d, q)`` and the
run ahead in direction ``d`` is made of ``a``, the whole run is rewritten to
``b`` in one operation.

Chain steps alone do little for machines whose head zig-zags through a run
(one cell back for every cell forward).  :func:`macro_run` handles those by
stepping over blocks of cells while remembering the block behind the head
(Marxen's back-symbol macro machines).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .machine import HALT, Machine
from .simulate import MAX_TAPE, Configuration, Outcome, RunOutcome


@dataclass
class CompressedTape:
    left: list[list[int]] = field(default_factory=list)
    head_symbol: int = 0
    right: list[list[int]] = field(default_factory=list)
    state: int = 0
    steps: int = 0

    def nonblanks(self) -> int:
        n = sum(c for s, c in self.left if s) + sum(c for s, c in self.right if s)
        return n + (self.head_symbol != 0)

    def cells(self) -> int:
        return sum(c for _, c in self.left) + sum(c for _, c in self.right) + 1

    def is_canonical(self) -> bool:
        for stack in (self.left, self.right):
            if any(c < 1 for _, c in stack):
                return False
            if any(stack[i][0] == stack[i + 1][0] for i in range(len(stack) - 1)):
                return False
            if stack and stack[0][0] == 0:
                return False
        return True

    def __str__(self) -> str:
        lft = " ".join(f"{s}^{c}" for s, c in self.left)
        rgt = " ".join(f"{s}^{c}" for s, c in reversed(self.right))
        from .machine import state_name
        return f"0^inf {lft} ({state_name(self.state)}{self.head_symbol}) {rgt} 0^inf"


def _push(stack: list[list[int]], sym: int, count: int) -> None:
    if stack:
        top = stack[-1]
        if top[0] == sym:
            top[1] += count
            return
    elif sym == 0:
        return  # merges into the infinite blank run
    stack.append([sym, count])


def _runs_toward_head(cells) -> list[list[int]]:
    """Runs of ``cells`` listed so that the last run is nearest the head; the
    first element of ``cells`` is the farthest from the head."""
    stack: list[list[int]] = []
    for s in cells:
        _push(stack, s, 1)
    return stack


def compress(c: Configuration) -> CompressedTape:
    t = c.tape
    left = [t[i] if 0 <= i < len(t) else 0 for i in range(min(0, c.head), c.head)]
    right = [t[i] if 0 <= i < len(t) else 0 for i in range(c.head + 1, max(len(t), c.head + 1))]
    return CompressedTape(_runs_toward_head(left), c.read(), _runs_toward_head(reversed(right)),
                          c.state, c.steps)


def decompress(t: CompressedTape) -> Configuration:
    if t.cells() >= MAX_TAPE:
        raise OverflowError("tape too long to decompress")
    cells = bytearray()
    for s, c in t.left:
        cells.extend(bytes([s]) * c)
    head = len(cells)
    cells.append(t.head_symbol)
    for s, c in reversed(t.right):
        cells.extend(bytes([s]) * c)
    return Configuration(cells, head, t.state, t.steps)


def accel_run(m: Machine, max_base_steps: int | None = None,
              start: Configuration | CompressedTape | None = None,
              block: int = 1, back: bool = True) -> RunOutcome:
    """Accelerated simulation with exact base-step counts.

    From a blank tape this uses the back-symbol macro engine
    (:func:`macro_run`); from an explicit ``start`` or with ``back=False`` and
    ``block=1`` it uses plain chain steps (:func:`chain_run`).
    """
    if m.allow_stay:
        raise ValueError("accelerated simulation does not support stay moves")
    if start is None and (back or block > 1):
        return macro_run(m, block, max_base_steps, back)
    return chain_run(m, max_base_steps, start)


def chain_run(m: Machine, max_base_steps: int | None = None,
              start: Configuration | CompressedTape | None = None) -> RunOutcome:
    """Simulate with chain steps.  Step counts are exact base steps.

    ``max_base_steps=None`` runs until the machine halts or reaches an
    undefined slot.  The outcome's ``extra`` carries ``base_steps`` and
    ``macro_ops``; ``final`` is decompressed only when small enough.
    """
    if m.allow_stay:
        raise ValueError("accelerated simulation does not support stay moves")
    if start is None:
        tape = CompressedTape()
    elif isinstance(start, Configuration):
        tape = compress(start)
    else:
        tape = CompressedTape([list(r) for r in start.left], start.head_symbol,
                              [list(r) for r in start.right], start.state, start.steps)
    k = m.symbols
    table = [None] * (m.states * k)
    for q, a, tr in m.slots():
        if tr is not None:
            table[q * k + a] = (tr.write, tr.delta > 0, tr.next)

    left, right = tape.left, tape.right
    head, q = tape.head_symbol, tape.state
    limit = max_base_steps
    steps = 0
    ops = 0
    kind = Outcome.RUNNING
    while q != HALT:
        if limit is not None and steps >= limit:
            break
        tr = table[q * k + head]
        if tr is None:
            kind = Outcome.UNDEFINED
            steps += 1
            break
        w, rightward, nq = tr
        if rightward:
            ahead, behind = right, left
        else:
            ahead, behind = left, right
        ops += 1
        if nq == q and ahead and ahead[-1][0] == head:
            run = ahead[-1]
            span = run[1] + 1
            if limit is not None and span > limit - steps:
                span = limit - steps
                run[1] -= span
                if run[1] == 0:
                    ahead.pop()
                _push(behind, w, span)
                steps += span
                continue
            ahead.pop()
            _push(behind, w, span)
            steps += span
        else:
            _push(behind, w, 1)
            steps += 1
            q = nq
        if ahead:
            top = ahead[-1]
            head = top[0]
            top[1] -= 1
            if top[1] == 0:
                ahead.pop()
        else:
            head = 0
    if q == HALT:
        kind = Outcome.HALTED
    tape.head_symbol, tape.state = head, q
    tape.steps += steps
    final = decompress(tape) if tape.cells() < 1 << 26 else None
    out = RunOutcome(kind, steps, tape.nonblanks(), final,
                     extra={"base_steps": steps, "macro_ops": ops})
    out.compressed = tape
    return out


def _blocks_to_cells(stack: list, reverse_cells: bool) -> list[list[int]]:
    out: list[list[int]] = []
    for blk, c in stack:
        cells = blk[::-1] if reverse_cells else blk
        if len(set(cells)) == 1:
            _push(out, cells[0], len(cells) * c)
        else:
            for _ in range(c):
                for s in cells:
                    _push(out, s, 1)
    return out


def _window_transition(table, k: int, cells: list, pos: int, q: int, bound: int):
    """Run on ``cells`` from ``pos`` until the head leaves the window.
    Returns ``(cells', exits_right, q', steps)``, or None when the run halts,
    hits an undefined slot or stays inside for more than ``bound`` steps."""
    cells = list(cells)
    n = len(cells)
    steps = 0
    while 0 <= pos < n:
        tr = table[q * k + cells[pos]]
        if tr is None:
            return None
        w, rightward, nq = tr
        cells[pos] = w
        pos += 1 if rightward else -1
        steps += 1
        if nq == HALT or steps > bound:
            return None
        q = nq
    return tuple(cells), pos >= n, q, steps


def macro_run(m: Machine, block: int, max_base_steps: int | None = None,
              back: bool = True) -> RunOutcome:
    """Block-macro variant of :func:`accel_run` from a blank tape.

    The tape is cut into blocks of ``block`` cells.  A macro step runs the
    machine on the block being entered (plus, with ``back=True``, the block
    just behind the head) until the head leaves that window.  Runs of
    identical blocks are crossed in one operation when the macro step is a
    fixed point: same state, same direction and, with ``back``, the same
    block left behind the head.  Near the step bound, and for the final steps
    before a halt, the run finishes on the cell-level engine, so counts stay
    exact.
    """
    if m.allow_stay:
        raise ValueError("accelerated simulation does not support stay moves")
    if block < 1:
        raise ValueError("block size must be >= 1")
    if block == 1 and not back:
        return chain_run(m, max_base_steps)
    k = m.symbols
    b = block
    table = [None] * (m.states * k)
    for q, a, tr in m.slots():
        if tr is not None:
            table[q * k + a] = (tr.write, tr.delta > 0, tr.next)
    width = 2 * b if back else b
    bound = min(m.states * width * k ** width, 1 << 20)
    blank = (0,) * b
    cache: dict = {}
    left: list[list] = []
    right: list[list] = []
    q, facing_right = 0, True
    behind_blk = blank  # block adjacent to the head on the side it came from
    steps = ops = 0
    limit = max_base_steps

    def push(stack, blk, c):
        if stack:
            top = stack[-1]
            if top[0] == blk:
                top[1] += c
                return
        elif blk == blank:
            return
        stack.append([blk, c])

    while True:
        ahead, behind = (right, left) if facing_right else (left, right)
        x = ahead[-1][0] if ahead else blank
        key = (q, facing_right, x, behind_blk)
        res = cache.get(key, key)
        if res is key:
            if not back:
                cells, pos = x, (0 if facing_right else b - 1)
            elif facing_right:
                cells, pos = behind_blk + x, b
            else:
                cells, pos = x + behind_blk, b - 1
            res = cache[key] = _window_transition(table, k, cells, pos, q, bound)
        if res is None:
            break
        cells, exits_right, nq, cost = res
        if back:
            lo, hi = cells[:b], cells[b:]
            if exits_right:
                new_behind, out_left, out_right = hi, lo, None
            else:
                new_behind, out_left, out_right = lo, None, hi
        else:
            new_behind = blank
            out_left, out_right = (cells, None) if exits_right else (None, cells)
        same = nq == q and exits_right == facing_right and new_behind == behind_blk
        if same and ahead and ahead[-1][0] == x:
            top = ahead[-1]
            reps = top[1]
            if limit is not None:
                reps = min(reps, (limit - steps) // cost)
                if reps == 0:
                    break
            top[1] -= reps
            if top[1] == 0:
                ahead.pop()
            push(behind, out_left if exits_right else out_right, reps)
            steps += reps * cost
        else:
            if limit is not None and steps + cost > limit:
                break
            if ahead:
                top = ahead[-1]
                top[1] -= 1
                if top[1] == 0:
                    ahead.pop()
            if out_left is not None:
                push(left, out_left, 1)
            if out_right is not None:
                push(right, out_right, 1)
            q, facing_right, behind_blk = nq, exits_right, new_behind
            steps += cost
        ops += 1

    # hand over to the cell-level engine at a block boundary
    if back:
        push(left if facing_right else right, behind_blk, 1)
    ahead = right if facing_right else left
    x = list(ahead[-1][0] if ahead else blank)
    if ahead:
        ahead[-1][1] -= 1
        if ahead[-1][1] == 0:
            ahead.pop()
    lcells = _blocks_to_cells(left, False)
    rcells = _blocks_to_cells(right, True)
    if facing_right:
        head = x[0]
        for s in x[:0:-1]:
            _push(rcells, s, 1)
    else:
        head = x[-1]
        for s in x[:-1]:
            _push(lcells, s, 1)
    tape = CompressedTape(lcells, head, rcells, q, 0)
    rest = None if limit is None else limit - steps
    out = chain_run(m, rest, tape)
    out.steps += steps
    out.extra = {"base_steps": out.steps, "macro_ops": ops + out.extra["macro_ops"]}
    out.compressed.steps = out.steps
    if out.final is not None:
        out.final.steps = out.steps
    return out
