"""Configuration families and Collatz-like rewrite rules.

A family is a tape template with integer parameters, e.g. ``C(n) = 0 (A0) 1^n 0``.
A rule matches each parameter against ``a*q + b`` (or an exact value), and
either moves to another family instance or halts with a final template.
Everything is exact: parameters and step counts are Python ints.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Iterable, Sequence, Union

from ..machine import HALT, Machine, parse_machine, state_index, state_name
from ..simulate import Configuration, Outcome, config_equals, run_from
from ..numfmt import exact
from .intexpr import IntExpr

DEFAULT_CELL_CAP = 2_000_000
DEFAULT_STEP_CAP = 200_000_000


class RuleError(ValueError):
    """Malformed rule file or family reference."""


class NoRuleMatched(LookupError):
    def __init__(self, instance: "Instance", transitions: int = 0, total_steps: int = 0):
        super().__init__(f"no rule matches {instance} (after {transitions} transitions, "
                         f"{total_steps} steps)")
        self.instance = instance
        self.transitions = transitions
        self.total_steps = total_steps


# ------------------------------------------------------------- templates

@dataclass(frozen=True)
class Literal:
    symbols: str


@dataclass(frozen=True)
class Repeat:
    block: str
    exp: IntExpr


@dataclass(frozen=True)
class Binary:
    param: str
    reversed: bool = True


@dataclass(frozen=True)
class Head:
    state: int
    symbol: int


Segment = Union[Literal, Repeat, Binary, Head]


def _bits(value: int, rev: bool) -> str:
    if value < 0:
        raise ValueError("binary segment of a negative value")
    s = format(value, "b") if value else ""
    return s[::-1] if rev else s


@dataclass(frozen=True)
class Template:
    """Tape description between implicit blanks; exactly one Head."""

    segments: tuple[Segment, ...]

    def __post_init__(self):
        if sum(isinstance(s, Head) for s in self.segments) != 1:
            raise RuleError("a template needs exactly one head segment")

    @property
    def head(self) -> Head:
        return next(s for s in self.segments if isinstance(s, Head))

    def variables(self) -> set[str]:
        out: set[str] = set()
        for s in self.segments:
            if isinstance(s, Repeat):
                out |= s.exp.variables()
            elif isinstance(s, Binary):
                out.add(s.param)
        return out

    def _counts(self, env) -> list[int]:
        out = []
        for s in self.segments:
            if isinstance(s, Repeat):
                n = s.exp.evaluate(env)
                if n < 0:
                    raise ValueError(f"negative repeat count {n} in template")
                out.append(n)
            elif isinstance(s, Binary):
                out.append(env[s.param])
            else:
                out.append(0)
        return out

    def length(self, env) -> int:
        total = 0
        for s, n in zip(self.segments, self._counts(env)):
            if isinstance(s, Literal):
                total += len(s.symbols)
            elif isinstance(s, Repeat):
                total += len(s.block) * n
            elif isinstance(s, Binary):
                total += n.bit_length()
            else:
                total += 1
        return total

    def sigma(self, env) -> int:
        """Nonblank count read off the template, without building the tape."""
        total = 0
        for s, n in zip(self.segments, self._counts(env)):
            if isinstance(s, Literal):
                total += sum(c != "0" for c in s.symbols)
            elif isinstance(s, Repeat):
                total += sum(c != "0" for c in s.block) * n
            elif isinstance(s, Binary):
                total += bin(n).count("1")
            else:
                total += s.symbol != 0
        return total

    def render(self, env, cap: int = DEFAULT_CELL_CAP) -> Configuration:
        size = self.length(env)
        if size > cap:
            raise OverflowError(f"template instance has {size} cells (cap {cap})")
        cells = bytearray()
        head = 0
        state = 0
        for s, n in zip(self.segments, self._counts(env)):
            if isinstance(s, Literal):
                cells.extend(int(c) for c in s.symbols)
            elif isinstance(s, Repeat):
                cells.extend(bytes(int(c) for c in s.block) * n)
            elif isinstance(s, Binary):
                cells.extend(int(c) for c in _bits(n, s.reversed))
            else:
                head = len(cells)
                state = s.state
                cells.append(s.symbol)
        return Configuration(cells, head, state)

    def describe(self, env: dict | None = None) -> str:
        parts = []
        for s in self.segments:
            if isinstance(s, Literal):
                parts.append(s.symbols)
            elif isinstance(s, Repeat):
                e = str(s.exp.evaluate(env)) if env is not None else str(s.exp)
                blk = s.block if len(s.block) == 1 else f"({s.block})"
                parts.append(f"{blk}^{e}" if len(e) == 1 else f"{blk}^{{{e}}}")
            elif isinstance(s, Binary):
                name = f"bin({env[s.param] if env is not None else s.param})"
                parts.append(f"R({name})" if s.reversed else name)
            else:
                parts.append(f"({state_name(s.state)}{s.symbol})")
        return "…" + " ".join(parts) + "…"

    # JSON ---------------------------------------------------------------
    @classmethod
    def from_json(cls, segs: list) -> "Template":
        out: list[Segment] = []
        for seg in segs:
            if "lit" in seg:
                out.append(Literal(str(seg["lit"])))
            elif "rep" in seg:
                out.append(Repeat(str(seg["rep"]["block"]), IntExpr.from_json(seg["rep"]["exp"])))
            elif "bin" in seg:
                out.append(Binary(seg["bin"]["param"], bool(seg["bin"].get("reversed", True))))
            elif "head" in seg:
                st = seg["head"]["state"]
                out.append(Head(state_index(st) if isinstance(st, str) else int(st),
                                int(seg["head"]["symbol"])))
            else:
                raise RuleError(f"unknown segment {seg!r}")
        return cls(tuple(out))

    def to_json(self) -> list:
        out = []
        for s in self.segments:
            if isinstance(s, Literal):
                out.append({"lit": s.symbols})
            elif isinstance(s, Repeat):
                out.append({"rep": {"block": s.block, "exp": s.exp.to_json()}})
            elif isinstance(s, Binary):
                out.append({"bin": {"param": s.param, "reversed": s.reversed}})
            else:
                out.append({"head": {"state": state_name(s.state), "symbol": s.symbol}})
        return out


@dataclass(frozen=True)
class Family:
    name: str
    params: tuple[str, ...]
    template: Template

    def instance(self, *values: int) -> "Instance":
        return Instance(self.name, tuple(values))

    def env(self, values: Sequence[int]) -> dict[str, int]:
        if len(values) != len(self.params):
            raise RuleError(f"{self.name} takes {len(self.params)} parameters")
        return dict(zip(self.params, values))


@dataclass(frozen=True)
class Instance:
    family: str
    params: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.family}({', '.join(map(str, self.params))})"


# ------------------------------------------------------------------ rules

@dataclass(frozen=True)
class Matcher:
    """Matches ``value == eq`` or ``value == a*var + b`` with ``var >= 0``."""

    param: str
    a: int = 1
    b: int = 0
    var: str | None = None
    eq: int | None = None

    def match(self, value: int) -> int | None:
        """Quotient on success (0 for exact matches), None on failure."""
        if self.eq is not None:
            return 0 if value == self.eq else None
        q, r = divmod(value - self.b, self.a)
        return q if r == 0 and q >= 0 else None

    def value(self, q: int) -> int:
        return self.eq if self.eq is not None else self.a * q + self.b

    def describe(self) -> str:
        if self.eq is not None:
            return str(self.eq)
        v = self.var or self.param
        s = v if self.a == 1 else f"{self.a}{v}"
        return f"{s}+{self.b}" if self.b else s

    def to_json(self) -> dict:
        if self.eq is not None:
            return {"param": self.param, "eq": self.eq}
        return {"param": self.param, "a": self.a, "b": self.b, "var": self.var or self.param}


@dataclass(frozen=True)
class Rule:
    family: str
    matchers: tuple[Matcher, ...]
    steps: IntExpr
    target_family: str | None = None
    target_params: tuple[IntExpr, ...] = ()
    halt: Template | None = None
    normalize: bool = False

    @property
    def halts(self) -> bool:
        return self.halt is not None

    def quotient_vars(self) -> list[str]:
        return [m.var or m.param for m in self.matchers if m.eq is None]

    def match(self, inst: Instance, family: Family) -> dict[str, int] | None:
        if inst.family != self.family:
            return None
        env: dict[str, int] = {}
        values = family.env(inst.params)
        for m in self.matchers:
            q = m.match(values[m.param])
            if q is None:
                return None
            if m.eq is None:
                env[m.var or m.param] = q
        return env

    def source_params(self, family: Family, env: dict[str, int]) -> tuple[int, ...]:
        by_param = {m.param: m for m in self.matchers}
        out = []
        for p in family.params:
            m = by_param.get(p)
            if m is None:
                raise RuleError(f"rule on {family.name} has no matcher for {p}")
            out.append(m.value(env.get(m.var or m.param, 0)))
        return tuple(out)

    def describe(self) -> str:
        src = f"{self.family}({', '.join(m.describe() for m in self.matchers)})"
        if self.normalize:
            return f"{src} = {self.target_family}({', '.join(map(str, self.target_params))})"
        if self.halt is not None:
            tgt = "halt " + self.halt.describe()
        else:
            tgt = f"{self.target_family}({', '.join(map(str, self.target_params))})"
        return f"{src} ⊢({self.steps}) {tgt}"


@dataclass(frozen=True)
class InitialRule:
    steps: IntExpr
    family: str
    params: tuple[IntExpr, ...]

    def instance(self) -> Instance:
        return Instance(self.family, tuple(p.evaluate({}) for p in self.params))


@dataclass
class RuleSystem:
    name: str
    families: dict[str, Family]
    rules: list[Rule]
    initial: InitialRule | None = None
    machine: Machine | None = None
    description: str = ""
    source: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        refs = [r.family for r in self.rules] + [r.target_family for r in self.rules if r.target_family]
        if self.initial is not None:
            refs.append(self.initial.family)
        for name in refs:
            if name not in self.families:
                raise RuleError(f"unknown family {name!r}")
        for r in self.rules:
            fam = self.families[r.family]
            if {m.param for m in r.matchers} != set(fam.params):
                raise RuleError(f"rule {r.describe()} must match every parameter of {fam.name}")
            if r.target_family and len(r.target_params) != len(self.families[r.target_family].params):
                raise RuleError(f"rule {r.describe()} has the wrong number of target parameters")

    def family_of(self, inst: Instance) -> Family:
        try:
            return self.families[inst.family]
        except KeyError:
            raise RuleError(f"unknown family {inst.family!r}") from None

    def render(self, inst: Instance, cap: int = DEFAULT_CELL_CAP) -> Configuration:
        fam = self.family_of(inst)
        return fam.template.render(fam.env(inst.params), cap)

    # JSON ---------------------------------------------------------------
    @classmethod
    def from_json(cls, data: dict, name: str = "") -> "RuleSystem":
        machine = None
        if data.get("machine"):
            machine = parse_machine(data["machine"])
        families = {}
        for f in data["families"]:
            families[f["name"]] = Family(f["name"], tuple(f["params"]), Template.from_json(f["segments"]))
        rules = []
        for r in data["rules"]:
            matchers = []
            for m in r["match"]:
                if "eq" in m:
                    matchers.append(Matcher(m["param"], eq=int(m["eq"])))
                else:
                    a = int(m.get("a", 1))
                    if a < 1:
                        raise RuleError("matcher coefficient a must be >= 1")
                    matchers.append(Matcher(m["param"], a, int(m.get("b", 0)), m.get("var", m["param"])))
            steps = IntExpr.from_json(r.get("steps", 0))
            if "halt" in r:
                rules.append(Rule(r["family"], tuple(matchers), steps,
                                  halt=Template.from_json(r["halt"]["segments"])))
            else:
                tgt = r["target"]
                rules.append(Rule(r["family"], tuple(matchers), steps, tgt["family"],
                                  tuple(IntExpr.from_json(p) for p in tgt["params"]),
                                  normalize=bool(r.get("normalize", False))))
        initial = None
        if data.get("initial"):
            i = data["initial"]
            initial = InitialRule(IntExpr.from_json(i.get("steps", 0)), i["family"],
                                  tuple(IntExpr.from_json(p) for p in i["params"]))
        return cls(data.get("name", name), families, rules, initial, machine,
                   data.get("description", ""), data)

    def to_json(self) -> dict:
        out: dict = {"name": self.name}
        if self.description:
            out["description"] = self.description
        out["machine"] = self.machine.code() if self.machine else None
        out["families"] = [{"name": f.name, "params": list(f.params), "segments": f.template.to_json()}
                           for f in self.families.values()]
        if self.initial is not None:
            out["initial"] = {"steps": self.initial.steps.to_json(), "family": self.initial.family,
                              "params": [p.to_json() for p in self.initial.params]}
        rules = []
        for r in self.rules:
            d: dict = {"family": r.family, "match": [m.to_json() for m in r.matchers],
                       "steps": r.steps.to_json()}
            if r.halt is not None:
                d["halt"] = {"segments": r.halt.to_json()}
            else:
                d["target"] = {"family": r.target_family, "params": [p.to_json() for p in r.target_params]}
            if r.normalize:
                d["normalize"] = True
            rules.append(d)
        out["rules"] = rules
        return out


def load_rules(path: str | Path) -> RuleSystem:
    """Read a rule file; any schema problem is reported as :class:`RuleError`."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
        return RuleSystem.from_json(data, name=path.stem)
    except RuleError:
        raise
    except (json.JSONDecodeError, KeyError, TypeError, ValueError, AttributeError) as exc:
        what = f"missing field {exc}" if isinstance(exc, KeyError) else str(exc)
        raise RuleError(f"{path.name}: {what}") from exc


# ------------------------------------------------------------- execution

@dataclass
class Fired:
    rule_index: int
    steps: int
    next: Instance | None  # None when the rule halts
    env: dict[str, int]


def apply_rule(sys: RuleSystem, at: Instance) -> Fired:
    """Fire the first rule (in file order) matching ``at``."""
    fam = sys.family_of(at)
    if any(v < 0 for v in at.params):
        raise ValueError(f"negative parameter in {at}")
    for i, rule in enumerate(sys.rules):
        env = rule.match(at, fam)
        if env is None:
            continue
        steps = rule.steps.evaluate(env)
        if steps < 0 or (steps == 0 and not rule.normalize):
            raise ArithmeticError(f"rule {rule.describe()} gives {steps} steps at {env}")
        if rule.halts:
            return Fired(i, steps, None, env)
        params = tuple(p.evaluate(env) for p in rule.target_params)
        if any(v < 0 for v in params):
            raise ArithmeticError(f"rule {rule.describe()} gives negative parameters at {env}")
        return Fired(i, steps, Instance(rule.target_family, params), env)
    raise NoRuleMatched(at)


@dataclass
class ChainResult:
    kind: str  # "halted", "limit", "no_rule"
    transitions: int
    total_steps: int
    instance: Instance | None = None  # current instance unless halted
    sigma: int | None = None
    final: str | None = None  # halting template with values filled in
    final_template: Template | None = None
    final_env: dict | None = None
    trace: list[tuple[str, int]] | None = None

    @property
    def halted(self) -> bool:
        return self.kind == "halted"

    def to_json(self) -> dict:
        out = {"kind": self.kind, "transitions": self.transitions, "steps": exact(self.total_steps)}
        if self.sigma is not None:
            out["sigma"] = exact(self.sigma)
        if self.instance is not None:
            out["instance"] = str(self.instance) if _small(self.instance.params) else self.instance.family
        return out


def run_chain(sys: RuleSystem, max_transitions: int = 1_000_000, start: Instance | None = None,
              start_steps: int = 0, trace: bool = False) -> ChainResult:
    """Iterate rules from the initial rule (or from ``start``).

    ``transitions`` counts fired rules, skipping zero-step ``normalize``
    rewrites. The initial rule counts as one transition when it takes at
    least one step (``init |- 47 ...``) and not when it only names the
    blank tape (``blank = C(0)``).
    """
    if max_transitions < 0:
        raise ValueError("max_transitions must be >= 0")
    if start is None:
        if sys.initial is None:
            raise RuleError(f"{sys.name} has no initial rule")
        inst = sys.initial.instance()
        total = sys.initial.steps.evaluate({})
        count = 1 if total > 0 else 0
    else:
        inst, total = start, start_steps
        count = 0
    log = [(str(inst), total)] if trace else None
    while True:
        if count >= max_transitions:
            return ChainResult("limit", count, total, inst, trace=log)
        try:
            fired = apply_rule(sys, inst)
        except NoRuleMatched:
            return ChainResult("no_rule", count, total, inst, trace=log)
        rule = sys.rules[fired.rule_index]
        total += fired.steps
        if not rule.normalize:
            count += 1
        if fired.next is None:
            env = fired.env
            if log is not None:
                log.append(("halt", total))
            return ChainResult("halted", count, total, None, rule.halt.sigma(env),
                               rule.halt.describe(env) if _small(env) else None, rule.halt, env, log)
        inst = fired.next
        if log is not None and not rule.normalize:
            log.append((str(inst) if _small(inst.params) else inst.family, total))


def _small(values) -> bool:
    vals = values.values() if isinstance(values, dict) else values
    return all(v.bit_length() < 4000 for v in vals)


# ------------------------------------------------------------ validation

@dataclass
class PointCheck:
    env: dict[str, int]
    ok: bool
    detail: str = ""


@dataclass
class RuleReport:
    index: int
    text: str
    checked: int = 0
    failures: list[PointCheck] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass
class ValidationReport:
    system: str
    rules: list[RuleReport]
    initial_ok: bool | None = None
    warnings: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.initial_ok is not False and all(r.passed for r in self.rules)

    def summary(self) -> str:
        lines = [f"{self.system}: {'PASS' if self.passed else 'FAIL'}"]
        if self.initial_ok is not None:
            lines.append(f"  initial: {'ok' if self.initial_ok else 'FAILED'}")
        for r in self.rules:
            status = "ok" if r.passed else f"FAILED at {[f.env for f in r.failures][:3]}"
            extra = f", {len(r.skipped)} skipped" if r.skipped else ""
            lines.append(f"  [{r.index}] {r.text}: {r.checked} points {status}{extra}")
        lines += [f"  warning: {w}" for w in self.warnings]
        return "\n".join(lines)


def _check_transition(m: Machine, src: Configuration, steps: int, expect: Configuration | None,
                      halt_expect: Configuration | None) -> tuple[bool, str]:
    out = run_from(m, src, steps)
    if halt_expect is not None:
        if out.kind is not Outcome.HALTED or out.steps != steps:
            return False, f"expected halt after {steps} steps, got {out.kind.value} after {out.steps}"
        if not config_equals(out.final, halt_expect):
            return False, f"halting tape {out.final} differs from {halt_expect}"
        return True, ""
    if out.kind is not Outcome.RUNNING or out.steps != steps:
        return False, f"{out.kind.value} after {out.steps} of {steps} steps"
    if not config_equals(out.final, expect):
        return False, f"reached {out.final}, expected {expect}"
    return True, ""


def _default_points(nvars: int, single: int, pair: int) -> Iterable[tuple[int, ...]]:
    hi = single if nvars <= 1 else pair
    return product(range(hi + 1), repeat=nvars)


def validate_rules(sys: RuleSystem, single_range: int = 6, pair_range: int = 4,
                   cell_cap: int = DEFAULT_CELL_CAP, step_cap: int = DEFAULT_STEP_CAP,
                   rules: Iterable[int] | None = None, check_initial: bool = True) -> ValidationReport:
    """Check each rule against direct simulation of ``sys.machine``.

    Quotient variables range over ``0..single_range`` for one-variable rules
    and ``0..pair_range`` for two-variable rules.  Instances whose tapes
    exceed ``cell_cap`` cells or whose step counts exceed ``step_cap`` are
    skipped and listed.
    """
    if sys.machine is None:
        raise RuleError(f"{sys.name} has no machine to validate against")
    m = sys.machine
    report = ValidationReport(sys.name, [])
    if check_initial and sys.initial is not None:
        steps = sys.initial.steps.evaluate({})
        ok, detail = _check_transition(m, Configuration.blank(), steps,
                                       sys.render(sys.initial.instance(), cell_cap), None)
        report.initial_ok = ok
        if not ok:
            report.warnings.append(f"initial rule: {detail}")
    wanted = set(range(len(sys.rules))) if rules is None else set(rules)
    for idx, rule in enumerate(sys.rules):
        if idx not in wanted:
            continue
        rr = RuleReport(idx, rule.describe())
        fam = sys.families[rule.family]
        qvars = rule.quotient_vars()
        for point in _default_points(len(qvars), single_range, pair_range):
            env = dict(zip(qvars, point))
            params = rule.source_params(fam, env)
            inst = Instance(fam.name, params)
            for j in range(idx):
                if sys.rules[j].match(inst, fam) is not None:
                    report.warnings.append(f"{inst} is matched by rule {j} before rule {idx}")
                    break
            try:
                steps = rule.steps.evaluate(env)
                if steps > step_cap:
                    raise OverflowError(f"{steps} steps (cap {step_cap})")
                src = sys.render(inst, cell_cap)
                if rule.halts:
                    ok, detail = _check_transition(m, src, steps, None, rule.halt.render(env, cell_cap))
                else:
                    tgt = Instance(rule.target_family, tuple(p.evaluate(env) for p in rule.target_params))
                    ok, detail = _check_transition(m, src, steps, sys.render(tgt, cell_cap), None)
            except OverflowError as exc:
                rr.skipped.append(f"{env}: {exc}")
                continue
            rr.checked += 1
            if not ok:
                rr.failures.append(PointCheck(env, False, detail))
        report.rules.append(rr)
    return report


# ---------------------------------------------------------- numeric maps

@dataclass
class Trajectory:
    values: list[tuple[int, ...]]
    cycle_start: int | None = None
    cycle_length: int | None = None
    stopped: str = "limit"  # "limit", "cycle", "halt", "no_rule"

    @property
    def cycle_found(self) -> bool:
        return self.cycle_length is not None


def iterate_map(sys: RuleSystem, start: int | Sequence[int], max_transitions: int,
                family: str | None = None, detect_cycle: bool = True) -> Trajectory:
    """Iterate a machine-free rule system as a map on parameter tuples."""
    fam = family or next(iter(sys.families))
    inst = Instance(fam, (start,) if isinstance(start, int) else tuple(start))
    values = [inst.params]
    seen = {(inst.family, inst.params): 0}
    for _ in range(max_transitions):
        try:
            fired = apply_rule(sys, inst)
        except NoRuleMatched:
            return Trajectory(values, stopped="no_rule")
        if fired.next is None:
            return Trajectory(values, stopped="halt")
        inst = fired.next
        values.append(inst.params)
        key = (inst.family, inst.params)
        if detect_cycle and key in seen:
            first = seen[key]
            return Trajectory(values, first, len(values) - 1 - first, "cycle")
        seen[key] = len(values) - 1
    return Trajectory(values)
