"""Shipped datasets: the record table and rule files."""

from __future__ import annotations

import os
from pathlib import Path

ENV_VAR = "BB_LAB_DATA"


def data_dir() -> Path:
    """Directory holding ``records.json`` and ``rules/``.

    ``$BB_LAB_DATA`` overrides the copy shipped inside the package.
    """
    override = os.environ.get(ENV_VAR)
    return Path(override) if override else Path(__file__).resolve().parent


def rules_path(name: str) -> Path:
    """Resolve a rule file by slug (``tm52_mb_champion``) or by path."""
    p = Path(name)
    if p.suffix == ".json" and p.exists():
        return p
    return data_dir() / "rules" / f"{p.stem}.json"


def rule_names() -> list[str]:
    return sorted(p.stem for p in (data_dir() / "rules").glob("*.json"))
