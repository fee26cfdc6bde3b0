"""``bblab`` command line.

Exit status: 0 success, 1 verification failure, 2 usage or input error.
Every subcommand accepts ``--json``; numbers are always exact decimal
strings, ``--sci`` adds a rounded scientific form next to big values.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .machine import ClassId, MachineFormatError, class_size, normalize, parse_machine, parse_machine_document
from .numfmt import exact, parse_exact, sci

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
CONFIG_ENV = "BB_LAB_CONFIG"


class UsageError(Exception):
    pass


# ------------------------------------------------------------ helpers

def _class(text: str) -> ClassId:
    try:
        n, k = (int(x) for x in text.replace("x", ",").split(","))
        return ClassId(n, k).validate()
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"bad class {text!r}, expected n,k") from exc


def _int(text: str) -> int:
    """Decimal integer, also accepting 1e6 style and digit separators."""
    t = text.replace(",", "").replace("_", "").strip()
    try:
        if "e" in t.lower():
            mant, ex = t.lower().split("e")
            if "." in mant:
                whole, frac = mant.split(".")
                return int(whole + frac) * 10 ** (int(ex) - len(frac))
            return int(mant) * 10 ** int(ex)
        return parse_exact(t)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer {text!r}") from exc


def _load_machine(spec: str):
    p = Path(spec)
    if p.suffix in (".json", ".txt", ".tm") and p.is_file():
        text = p.read_text()
        if p.suffix == ".json":
            return parse_machine_document(json.loads(text))
        return parse_machine(text.strip())
    return parse_machine(spec)


def _num(n: int | None, args) -> str | None:
    if n is None:
        return None
    return f"{exact(n)} ({sci(n)})" if args.sci and n >= 10 ** 6 else exact(n)


def _emit(args, text_lines: list[str], payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(text_lines))


def _num_fields(payload: dict, keys, args) -> None:
    if args.sci:
        for k in keys:
            if payload.get(k) is not None:
                payload[k + "_sci"] = sci(parse_exact(payload[k]))


# ------------------------------------------------------------ commands

def cmd_simulate(args) -> int:
    from .accel import accel_run
    from .simulate import Configuration, parse_config, run_from

    m = _load_machine(args.machine)
    start = Configuration.blank() if args.start is None else parse_config(args.start)
    limit = args.max_steps
    if args.mode == "direct":
        if limit is None:
            raise UsageError("--mode direct needs --max-steps")
        out = run_from(m, start, limit)
    else:
        out = accel_run(m, limit, start=None if args.start is None else start, block=args.block)
    payload = {"machine": m.code(), "mode": args.mode, **out.to_json()}
    _num_fields(payload, ("steps", "sigma"), args)
    lines = [f"machine {m.code()}", f"kind {out.kind.value}",
             f"steps {_num(out.steps, args)}", f"sigma {_num(out.sigma, args)}"]
    lines += [f"{k} {v}" for k, v in out.extra.items()]
    _emit(args, lines, payload)
    return EXIT_OK


def _rule_system(path: str):
    from .data import rules_path
    from .rules import load_rules

    p = rules_path(path)
    if not p.is_file():
        raise UsageError(f"no rule file {path!r}")
    return load_rules(p)


def cmd_rules(args) -> int:
    from .rules import run_chain, validate_rules

    sys_ = _rule_system(args.rules)
    if args.action == "validate":
        rep = validate_rules(sys_, single_range=args.range, pair_range=args.pair_range)
        payload = {
            "system": rep.system, "passed": rep.passed, "initial_ok": rep.initial_ok,
            "rules": [{"index": r.index, "rule": r.text, "checked": r.checked, "passed": r.passed,
                       "failures": [f.detail for f in r.failures], "skipped": len(r.skipped)}
                      for r in rep.rules],
            "warnings": rep.warnings,
        }
        _emit(args, [rep.summary()], payload)
        return EXIT_OK if rep.passed else EXIT_FAIL
    res = run_chain(sys_, max_transitions=args.max_transitions)
    payload = {"system": sys_.name, **res.to_json()}
    _num_fields(payload, ("steps", "sigma"), args)
    lines = [f"system {sys_.name}", f"kind {res.kind}", f"transitions {res.transitions}",
             f"total_steps {_num(res.total_steps, args)}"]
    if res.sigma is not None:
        lines.append(f"sigma {_num(res.sigma, args)}")
    if "instance" in payload:
        lines.append(f"instance {payload['instance']}")
    _emit(args, lines, payload)
    return EXIT_OK if res.halted else EXIT_FAIL


def cmd_verify_records(args) -> int:
    from .records import DatasetError, cross_check, load_records, records_path, verify_all

    path = Path(args.records) if args.records else records_path()
    try:
        entries = load_records(path)
    except (OSError, DatasetError, ValueError) as exc:
        raise UsageError(f"cannot load {path}: {exc}") from exc
    ids = args.id or None
    summ = verify_all(entries, class_id=args.cls, date=args.date, ids=ids,
                      include_heavy=args.include_heavy, workers=args.workers)
    lines = []
    for rep in summ.reports:
        if args.verbose or rep.status == "fail":
            for r in rep.results:
                tail = f" {r.detail}" if r.detail else ""
                nums = f" s={_num(r.s, args)} sigma={_num(r.sigma, args)}" if r.s is not None else ""
                lines.append(f"{rep.id} [{r.route}] {r.status}{nums}{tail}")
    payload = summ.to_json()
    ok = summ.ok
    if args.cross_check:
        checks = cross_check(entries)
        payload["cross_checks"] = [c.to_json() for c in checks]
        for c in checks:
            lines.append(f"cross-check {c.first} ~ {c.second}: {'ok' if c.ok else 'FAILED'} {c.detail}")
        ok = ok and all(c.ok for c in checks)
    lines.append(f"{summ.passed} passed, {summ.failed} failed" +
                 (f", {summ.skipped} skipped" if summ.skipped else ""))
    _emit(args, lines, payload)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_enumerate(args) -> int:
    from .tnf import search_class, write_holdouts

    rep = search_class(args.cls, cutoff=args.cutoff, workers=args.workers)
    if args.holdouts_out:
        write_holdouts(rep, args.holdouts_out)
    payload = rep.to_json()
    if not args.show_holdouts:
        payload["holdouts"].pop("machines")
    lines = [rep.summary()]
    lines += [f"best_s machine {c}" for c in rep.best_s_machines]
    lines += [f"best_sigma machine {c}" for c in rep.best_sigma_machines]
    if args.show_holdouts:
        lines += [f"holdout {c}" for c in sorted(rep.holdouts)]
    _emit(args, lines, payload)
    return EXIT_OK


def cmd_decide(args) -> int:
    from .deciders import decide, recheck

    m = _load_machine(args.machine)
    v = decide(m, args.max_steps)
    payload = v.to_json()
    payload["machine"] = m.code()
    lines = [f"machine {m.code()}", v.describe()]
    if v.nonhalting:
        ok = recheck(m, v)
        payload["rechecked"] = ok
        lines.append(f"witness re-check {'ok' if ok else 'FAILED'}")
        if not ok:
            _emit(args, lines, payload)
            return EXIT_FAIL
    _emit(args, lines, payload)
    return EXIT_OK


def cmd_normalize(args) -> int:
    m = _load_machine(args.machine)
    nm = normalize(m, args.max_steps)
    payload = {"input": m.code(), "normalized": nm.machine.code(), "mirrored": nm.mirrored,
               "state_map": nm.state_map, "symbol_map": {str(k): v for k, v in nm.symbol_map.items()},
               "complete": nm.complete}
    lines = [nm.machine.code()]
    if args.verbose:
        lines.append(f"states {nm.state_map}, symbols {nm.symbol_map}, mirrored {nm.mirrored}, "
                     f"complete {nm.complete}")
    _emit(args, lines, payload)
    return EXIT_OK


def cmd_class_size(args) -> int:
    n = class_size(args.cls)
    payload = {"class": list(args.cls), "size": exact(n)}
    _num_fields(payload, ("size",), args)
    _emit(args, [_num(n, args)], payload)
    return EXIT_OK


# ------------------------------------------------------------- parser

def _load_config(path: str | None) -> dict:
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return {}
    try:
        cfg = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise UsageError("config must be a JSON object")
    return cfg


def build_parser(cfg: dict | None = None) -> argparse.ArgumentParser:
    cfg = cfg or {}

    def dflt(cmd: str, key: str, fallback):
        return cfg.get(cmd, {}).get(key, cfg.get(key, fallback))

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--sci", action="store_true", help="add scientific notation to big numbers")

    p = argparse.ArgumentParser(prog="bblab", description="Busy beaver laboratory.")
    p.add_argument("--config", help="JSON file with default cutoffs and worker counts")
    p.add_argument("--data", help="dataset directory (overrides $BB_LAB_DATA)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simulate", parents=[common], help="run a machine")
    s.add_argument("--machine", required=True, help="machine code or file")
    s.add_argument("--mode", choices=("direct", "accel"), default=dflt("simulate", "mode", "accel"))
    s.add_argument("--max-steps", type=_int, default=dflt("simulate", "max_steps", None))
    s.add_argument("--from", dest="start", help="start configuration, e.g. '0 (A0) 1^6 0'")
    s.add_argument("--block", type=int, default=dflt("simulate", "block", 1),
                   help="macro block size for --mode accel")
    s.set_defaults(func=cmd_simulate)

    r = sub.add_parser("rules", parents=[common], help="validate or run a rule file")
    r.add_argument("action", choices=("validate", "run"))
    r.add_argument("--rules", required=True, help="rule file path or shipped slug")
    r.add_argument("--range", type=int, default=dflt("rules", "range", 6),
                   help="largest quotient for one-variable rules")
    r.add_argument("--pair-range", type=int, default=dflt("rules", "pair_range", 4),
                   help="largest quotient for two-variable rules")
    r.add_argument("--max-transitions", type=_int, default=dflt("rules", "max_transitions", 10 ** 6))
    r.set_defaults(func=cmd_rules)

    v = sub.add_parser("verify-records", parents=[common], help="re-verify the record dataset")
    v.add_argument("--class", dest="cls", type=_class)
    v.add_argument("--date", help="substring of the entry date, e.g. 2007 or 'Oct 2005'")
    v.add_argument("--id", action="append", help="entry id (repeatable)")
    v.add_argument("--workers", type=int, default=dflt("verify-records", "workers", 1))
    v.add_argument("--include-heavy", action=argparse.BooleanOptionalAction,
                   default=dflt("verify-records", "include_heavy", True))
    v.add_argument("--cross-check", action="store_true", help="also run similar-behaviour checks")
    v.add_argument("--records", help="alternative records.json")
    v.add_argument("-v", "--verbose", action="store_true")
    v.set_defaults(func=cmd_verify_records)

    e = sub.add_parser("enumerate", parents=[common], help="tree-normal-form search of a class")
    e.add_argument("--class", dest="cls", type=_class, required=True)
    e.add_argument("--cutoff", type=_int, default=dflt("enumerate", "cutoff", None))
    e.add_argument("--workers", type=int, default=dflt("enumerate", "workers", 1))
    e.add_argument("--holdouts-out", help="write holdout machine codes here, one per line")
    e.add_argument("--show-holdouts", action="store_true")
    e.set_defaults(func=cmd_enumerate)

    d = sub.add_parser("decide", parents=[common], help="run the non-halting deciders")
    d.add_argument("--machine", required=True)
    d.add_argument("--max-steps", type=_int, default=dflt("decide", "max_steps", 10_000))
    d.set_defaults(func=cmd_decide)

    n = sub.add_parser("normalize", parents=[common], help="canonical relabelling of a machine")
    n.add_argument("--machine", required=True)
    n.add_argument("--max-steps", type=_int, default=10 ** 6)
    n.add_argument("-v", "--verbose", action="store_true")
    n.set_defaults(func=cmd_normalize)

    c = sub.add_parser("class-size", parents=[common], help="number of machines in a class")
    c.add_argument("--class", dest="cls", type=_class, required=True)
    c.set_defaults(func=cmd_class_size)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    try:
        cfg = _load_config(known.config)
    except UsageError as exc:
        print(f"bblab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    parser = build_parser(cfg)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.data:
        os.environ["BB_LAB_DATA"] = args.data
    from .rules import RuleError
    from .rules.intexpr import IntExprSyntaxError
    try:
        return args.func(args)
    except (UsageError, MachineFormatError, RuleError, IntExprSyntaxError) as exc:
        print(f"bblab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, json.JSONDecodeError) as exc:
        print(f"bblab: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
