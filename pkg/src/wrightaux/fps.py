"""Truncated formal power series in one variable.

A series is a plain list ``[a0, a1, ..., a_{N-1}]``; all operations truncate
to the length of their inputs. Coefficients may be Fractions (exact) or mpf;
only ``+ - * /`` and integer literals are used, so the field is whatever the
caller supplies. Don't mix Fractions with mpf in one computation.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Sequence


def mul(a: Sequence, b: Sequence, n: int | None = None) -> list:
    n = min(len(a), len(b)) if n is None else n
    out = [0] * n
    for i, ai in enumerate(a[:n]):
        if ai == 0:
            continue
        for j in range(min(n - i, len(b))):
            out[i + j] += ai * b[j]
    return out


def product(series: Sequence[Sequence], n: int) -> list:
    out = [1] + [0] * (n - 1)
    for s in series:
        out = mul(out, s, n)
    return out


def inverse(a: Sequence, n: int | None = None) -> list:
    """Reciprocal of a series with nonzero constant term."""
    n = len(a) if n is None else n
    if a[0] == 0:
        raise ZeroDivisionError("series has zero constant term")
    out = [0] * n
    out[0] = 1 / a[0] if not isinstance(a[0], int) else Fraction(1, a[0])
    for k in range(1, n):
        acc = 0
        for j in range(1, min(k, len(a) - 1) + 1):
            acc += a[j] * out[k - j]
        out[k] = -acc * out[0]
    return out


def exp(a: Sequence, n: int | None = None) -> list:
    """exp of a series whose constant term is zero."""
    n = len(a) if n is None else n
    if a and a[0] != 0:
        raise ValueError("exp needs a zero constant term")
    out = [0] * n
    out[0] = 1
    for k in range(1, n):
        acc = 0
        for j in range(1, min(k, len(a) - 1) + 1):
            acc += j * a[j] * out[k - j]
        out[k] = acc / k
    return out


def binomial_power(b, k: int, n: int) -> list:
    """(1 + b t)^(-k) for integer k >= 0, truncated to n terms."""
    out = []
    bm = 1
    for m in range(n):
        out.append((-1) ** m * comb(k + m - 1, m) * bm if k else (1 if m == 0 else 0))
        bm = bm * b
    return out


def scale(a: Sequence, c) -> list:
    return [c * v for v in a]


def add(a: Sequence, b: Sequence) -> list:
    return [x + y for x, y in zip(a, b)]


def evaluate(a: Sequence, t):
    """Horner evaluation of the truncated series at t."""
    acc = 0
    for coef in reversed(a):
        acc = acc * t + coef
    return acc
