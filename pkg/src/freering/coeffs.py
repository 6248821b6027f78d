"""Exact rational coefficients.

Integral values are kept as ``int`` (much faster than ``Fraction``); anything
else is a ``Fraction`` in lowest terms.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

Coeff = Union[int, Fraction]


def as_coeff(x) -> Coeff:
    if isinstance(x, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, Rational):
        return as_coeff(Fraction(x.numerator, x.denominator))
    if isinstance(x, str):
        return as_coeff(Fraction(x))
    raise TypeError(f"inexact or unsupported coefficient {x!r}")


def coeff_div(a: Coeff, b: Coeff) -> Coeff:
    if isinstance(a, int) and isinstance(b, int) and a % b == 0:
        return a // b
    return as_coeff(Fraction(a) / Fraction(b))


def coeff_to_json(c: Coeff) -> dict:
    c = Fraction(c)
    return {"num": c.numerator, "den": c.denominator}


def coeff_from_json(obj: dict) -> Coeff:
    den = obj.get("den", 1)
    if den == 0:
        raise ValueError("zero denominator")
    return as_coeff(Fraction(obj["num"], den))


def coeff_str(c: Coeff) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
