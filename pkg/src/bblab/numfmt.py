"""Formatting for integers too large for the default str() digit limit."""

from __future__ import annotations

import sys
from contextlib import contextmanager
from math import log10


@contextmanager
def _unlimited_digits():
    get = getattr(sys, "get_int_max_str_digits", None)
    if get is None:
        yield
        return
    old = get()
    sys.set_int_max_str_digits(0)
    try:
        yield
    finally:
        sys.set_int_max_str_digits(old)


def exact(n: int) -> str:
    """Decimal digits of ``n`` regardless of size."""
    with _unlimited_digits():
        return str(n)


def parse_exact(text: str) -> int:
    with _unlimited_digits():
        return int(text)


def sci(n: int, digits: int = 3) -> str:
    """``n`` as ``d.dd x 10^e`` style text (``3.80e21132``), truncated, not rounded.

    Small values are printed exactly.
    """
    if abs(n) < 10 ** (digits + 3):
        return str(n)
    sign = "-" if n < 0 else ""
    n = abs(n)
    # estimate the exponent from the bit length, then correct by one if needed
    e = int(n.bit_length() * log10(2))
    while 10 ** e > n:
        e -= 1
    while 10 ** (e + 1) <= n:
        e += 1
    lead = n // 10 ** (e - digits + 1)
    s = str(lead)
    return f"{sign}{s[0]}.{s[1:]}e{e}"
