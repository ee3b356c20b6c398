"""Exact rational scalars and vectors, plus fair enumerations of both.

All numeric values in this package are `fractions.Fraction` instances, which
gives canonical lowest-terms representation, positive denominators and
arbitrary-precision integer components for free.  Straight-line programs
square values repeatedly, so fixed-width arithmetic is not an option
anywhere.

The enumeration scheme is frozen because search fuel bounds and replayable
certificates reference enumeration indices:

* rationals: index 0 is 0; positive rationals follow the Calkin-Wilf
  sequence (index 2k-1 is the k-th Calkin-Wilf rational, index 2k its
  negative);
* vectors: index 0 is the empty vector, index n >= 1 unpacks through a
  Cantor pairing into (dimension, entry indices).

Both enumerations are bijections with computable inverses; golden prefixes
live in tests/golden/.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Sequence

Rat = Fraction
RatVec = tuple[Fraction, ...]


class DivisionByZero(ArithmeticError):
    """Division node with zero divisor; the machine level treats it as divergence."""


_OPS = ("add", "sub", "mul", "div")


def rat(p, q=1) -> Fraction:
    return Fraction(p, q)


def rat_op(kind: str, a: Fraction, b: Fraction) -> Fraction:
    """Exact field operation; `div` by zero raises DivisionByZero."""
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        if b == 0:
            raise DivisionByZero(f"{a} / 0")
        return a / b
    raise ValueError(f"unknown operation {kind!r}")


def format_rat(x: Fraction) -> str:
    """Serialize as "p/q", omitting "/q" when the denominator is 1."""
    return str(x)


def parse_rat(text: str) -> Fraction:
    """Parse "p/q" (optional sign on p; q must be positive) or "p"."""
    s = text.strip()
    if "/" in s:
        num, _, den = s.partition("/")
        p = int(num.strip())
        q = int(den.strip())
        if q <= 0:
            raise ValueError(f"denominator must be positive in {text!r}")
        return Fraction(p, q)
    return Fraction(int(s))


def parse_vec(text: str) -> RatVec:
    """Comma-separated rationals; empty string is the empty vector."""
    s = text.strip()
    if not s:
        return ()
    return tuple(parse_rat(part) for part in s.split(","))


def format_vec(v: Sequence[Fraction]) -> str:
    return ",".join(format_rat(x) for x in v)


# -- Cantor pairing ----------------------------------------------------------

def pair(a: int, b: int) -> int:
    s = a + b
    return s * (s + 1) // 2 + b


def unpair(n: int) -> tuple[int, int]:
    s = (isqrt(8 * n + 1) - 1) // 2
    b = n - s * (s + 1) // 2
    return s - b, b


# -- Calkin-Wilf enumeration of the positive rationals -----------------------

def _calkin_wilf(n: int) -> Fraction:
    # n-th positive rational, n >= 1; walks the bits of n below the MSB.
    assert n >= 1
    p, q = 1, 1
    for c in bin(n)[3:]:
        if c == "0":
            q = p + q
        else:
            p = p + q
    return Fraction(p, q)


def _calkin_wilf_index(x: Fraction) -> int:
    assert x > 0
    p, q = x.numerator, x.denominator
    bits: list[str] = []
    while (p, q) != (1, 1):
        if p < q:
            bits.append("0")
            q -= p
        else:
            bits.append("1")
            p -= q
    return int("1" + "".join(reversed(bits)), 2)


def enumerate_rationals(index: int) -> Fraction:
    """Deterministic bijection from the naturals onto the rationals."""
    if index < 0:
        raise ValueError("index must be a natural number")
    if index == 0:
        return Fraction(0)
    if index % 2 == 1:
        return _calkin_wilf((index + 1) // 2)
    return -_calkin_wilf(index // 2)


def rational_index(x: Fraction) -> int:
    """Inverse of enumerate_rationals."""
    if x == 0:
        return 0
    k = _calkin_wilf_index(abs(x))
    return 2 * k - 1 if x > 0 else 2 * k


# -- enumeration of all finite rational vectors ------------------------------

def _nat_tuple(d: int, m: int) -> tuple[int, ...]:
    if d == 1:
        return (m,)
    a, b = unpair(m)
    return (a,) + _nat_tuple(d - 1, b)


def _nat_tuple_index(t: Sequence[int]) -> int:
    if len(t) == 1:
        return t[0]
    return pair(t[0], _nat_tuple_index(t[1:]))


def enumerate_vectors(index: int) -> RatVec:
    """Deterministic bijection from the naturals onto all finite rational vectors."""
    if index < 0:
        raise ValueError("index must be a natural number")
    if index == 0:
        return ()
    d1, m = unpair(index - 1)
    entries = _nat_tuple(d1 + 1, m)
    return tuple(enumerate_rationals(e) for e in entries)


def vector_index(v: Sequence[Fraction]) -> int:
    """Inverse of enumerate_vectors."""
    if len(v) == 0:
        return 0
    m = _nat_tuple_index([rational_index(x) for x in v])
    return pair(len(v) - 1, m) + 1


def vec_of_arity(arity: int, m: int) -> RatVec:
    """m-th vector of exactly the given arity (used by parameter streams)."""
    if arity == 0:
        if m != 0:
            raise ValueError("there is a single vector of arity 0")
        return ()
    entries = _nat_tuple(arity, m)
    return tuple(enumerate_rationals(e) for e in entries)


def vec_arity_index(v: Sequence[Fraction]) -> int:
    if len(v) == 0:
        return 0
    return _nat_tuple_index([rational_index(x) for x in v])
