"""Parsing and printing of exact rationals, optionally in units of pi."""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def parse_pi(text: str) -> Fraction:
    """``"12pi"`` -> 12, ``"1/3pi"`` -> 1/3, ``"pi"`` -> 1. The suffix is required."""
    body = text.strip()
    if not body.endswith("pi"):
        raise ValueError(f"expected a multiple of pi like '12pi', got {text!r}")
    body = body[:-2].strip()
    if body in ("", "+"):
        return Fraction(1)
    if body == "-":
        return Fraction(-1)
    return parse_rational(body)


def fmt(q: Fraction | int) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def fmt_pi(q: Fraction | int) -> str:
    return f"{fmt(q)}pi"


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out
