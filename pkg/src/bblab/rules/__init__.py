"""Collatz-like rule systems over parameterised tape families."""

from .intexpr import DivisibilityError, IntExpr, IntExprSyntaxError, parse_intexpr
from .system import (Binary, ChainResult, Family, Head, InitialRule, Instance, Literal,
                     Matcher, NoRuleMatched, Repeat, Rule, RuleError, RuleSystem, Template,
                     Trajectory, ValidationReport, apply_rule, iterate_map, load_rules,
                     run_chain, validate_rules)
from .text import parse_family, parse_rule, parse_template, system_from_text

__all__ = [
    "DivisibilityError", "IntExpr", "IntExprSyntaxError", "parse_intexpr", "Binary",
    "ChainResult", "Family", "Head", "InitialRule", "Instance", "Literal", "Matcher",
    "NoRuleMatched", "Repeat", "Rule", "RuleError", "RuleSystem", "Template", "Trajectory",
    "ValidationReport", "apply_rule", "iterate_map", "load_rules", "run_chain",
    "validate_rules", "parse_family", "parse_rule", "parse_template", "system_from_text",
]
