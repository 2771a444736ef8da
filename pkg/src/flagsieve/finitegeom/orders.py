"""Exact orders of classical groups, their tabulated bounds, and related counts."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, prod

from .field import factor_prime_power

KINDS = ("GL", "PSL", "GU", "PSU", "Sp")


def gaussian_binomial(m: int, i: int, q: int) -> int:
    """Number of i-dimensional subspaces of GF(q)^m."""
    if not 0 <= i <= m:
        raise ValueError(f"need 0 <= i <= m, got m={m}, i={i}")
    num = prod(q ** (m - i + j) - 1 for j in range(1, i + 1))
    den = prod(q**j - 1 for j in range(1, i + 1))
    assert num % den == 0
    return num // den


def _check_kind(kind: str, n: int, q: int) -> None:
    factor_prime_power(q)
    if kind not in KINDS:
        raise ValueError(f"unknown group kind {kind!r}")
    if n < 2:
        raise ValueError("n must be at least 2")
    if kind == "PSU" and n < 3:
        raise ValueError("PSU needs n >= 3")
    if kind == "Sp" and (n < 4 or n % 2):
        raise ValueError("Sp needs even n >= 4")


def classical_order(kind: str, n: int, q: int) -> int:
    _check_kind(kind, n, q)
    if kind == "GL":
        return prod(q**n - q**i for i in range(n))
    if kind == "PSL":
        return classical_order("GL", n, q) // (q - 1) // gcd(n, q - 1)
    gu = q ** (n * (n - 1) // 2) * prod(q**i - (-1) ** i for i in range(1, n + 1))
    if kind == "GU":
        return gu
    if kind == "PSU":
        return gu // (q + 1) // gcd(n, q + 1)
    m = n // 2
    return q ** (m * m) * prod(q ** (2 * i) - 1 for i in range(1, m + 1))


def order_bounds(kind: str, n: int, q: int) -> tuple[Fraction, bool, Fraction]:
    """``(lower, lower_is_strict, upper)``; the upper bound is always weak."""
    _check_kind(kind, n, q)
    Q = Fraction(q)
    if kind == "GL":
        return (1 - 1 / Q - Q**-2) * Q ** (n * n), True, (1 - 1 / Q) * (1 - Q**-2) * Q ** (n * n)
    if kind == "PSL":
        return Q ** (n * n - 2), True, (1 - Q**-2) * Q ** (n * n - 1)
    if kind == "GU":
        base = (1 + 1 / Q) * (1 - Q**-2) * Q ** (n * n)
        return base, False, base * (1 + Q**-3)
    if kind == "PSU":
        return (1 - 1 / Q) * Q ** (n * n - 2), True, (1 - Q**-2) * (1 + Q**-3) * Q ** (n * n - 1)
    e = n * (n + 1) // 2
    return (1 - Q**-2 - Q**-4) * Q**e, True, (1 - Q**-2) * (1 - Q**-4) * Q**e


def check_order_bounds(kind: str, n: int, q: int) -> bool:
    order = classical_order(kind, n, q)
    lower, strict, upper = order_bounds(kind, n, q)
    above = order > lower if strict else order >= lower
    return above and order <= upper


def gcd_identity(variant: str, n: int, p: int, e: int, f: int = 0) -> tuple[int | Fraction, int | Fraction]:
    """Both sides of the gcd/lcm identity for ``q0 = p**e`` and ``q = p**f``.

    Variant ``"iii"`` ignores ``e`` (the subfield is ``q**(1/2)``).  In
    variant ``"ii"`` with ``f/e`` even, ``(q+1)/(q0+1)`` is not integral;
    both sides are then exact fractions and the gcd is the rational one.
    """
    if n <= 1:
        raise ValueError("need n > 1")
    if variant == "iii":
        if f < 2 or f % 2:
            raise ValueError("variant iii needs even f")
        q, half = p**f, p ** (f // 2)
        lhs = (q - 1) // _lcm(half + 1, (q - 1) // gcd(n, q - 1))
        return lhs, gcd(n, half - 1)
    if e < 1 or f < 1 or f % e:
        raise ValueError("need e | f")
    q0, q = p**e, p**f
    if variant == "i":
        lhs = Fraction(q - 1, _lcm(q0 - 1, (q - 1) // gcd(n, q - 1)))
        return _as_int(lhs), gcd(n, (q - 1) // (q0 - 1))
    if variant == "ii":
        lhs = Fraction(q + 1, _lcm(q0 + 1, (q + 1) // gcd(n, q + 1)))
        rhs = _gcd_fraction(Fraction(n), Fraction(q + 1, q0 + 1))
        return _simplify(lhs), _simplify(rhs)
    raise ValueError(f"unknown variant {variant!r}")


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _as_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise ValueError(f"{x} is not an integer")
    return x.numerator


def _gcd_fraction(x: Fraction, y: Fraction) -> Fraction:
    d = _lcm(x.denominator, y.denominator)
    return Fraction(gcd(int(x * d), int(y * d)), d)


def _simplify(x: Fraction) -> int | Fraction:
    return x.numerator if x.denominator == 1 else x


def parabolic_index(kind: str, n: int, q: int, node: int) -> int:
    """Index of the maximal parabolic subgroup ``P_node``."""
    factor_prime_power(q)
    if kind == "PSL":
        if not 1 <= node < n:
            raise ValueError(f"PSL({n},q) has nodes 1..{n - 1}")
        return gaussian_binomial(n, node, q)
    table = {
        ("PSp", 4): {1: (q + 1) * (q**2 + 1), 2: (q + 1) * (q**2 + 1)},
        ("PSp", 6): {
            1: (q**3 + 1) * (q**2 + q + 1),
            2: (q**3 + 1) * (q**2 + q + 1) * (q**2 + 1),
            3: (q**3 + 1) * (q**2 + 1) * (q + 1),
        },
        ("PSU", 3): {1: q**3 + 1},
        ("PSU", 4): {1: (q**2 + 1) * (q**3 + 1), 2: (q + 1) * (q**3 + 1)},
        ("PSU", 5): {1: (q**2 + 1) * (q**5 + 1), 2: (q**3 + 1) * (q**5 + 1)},
    }
    try:
        return table[kind, n][node]
    except KeyError:
        raise ValueError(f"unsupported parabolic ({kind}, {n}, {node})") from None
