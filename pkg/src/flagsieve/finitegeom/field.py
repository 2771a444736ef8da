"""Arithmetic in GF(p^f) with a polynomial basis.

Elements are integers ``0..q-1``; the base-``p`` digits of an element are
its coefficients, least significant digit = constant term.  The modulus is
the least monic irreducible polynomial of degree ``f`` under that same
integer encoding of its lower coefficients.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

MAX_ORDER = 2**16


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, f)`` with ``q == p**f``; raise ValueError otherwise."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next((d for d in range(2, int(q**0.5) + 1) if q % d == 0), q)
    f, rest = 0, q
    while rest % p == 0:
        rest //= p
        f += 1
    if rest != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, f


def is_prime_power(q: int) -> bool:
    try:
        factor_prime_power(q)
    except ValueError:
        return False
    return True


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def _poly_rem(a: list[int], m: list[int], p: int) -> list[int]:
    # coefficient lists low -> high, m monic
    a = a[:]
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return [x % p for x in a[:dm]] + [0] * max(0, dm - len(a))


def is_irreducible(coeffs: tuple[int, ...], p: int) -> bool:
    """Trial division of a monic polynomial by every monic polynomial of lower degree."""
    f = len(coeffs) - 1
    for deg in range(1, f // 2 + 1):
        for low in product(range(p), repeat=deg):
            divisor = list(low) + [1]
            if not any(_poly_rem(list(coeffs), divisor, p)):
                return False
    return True


def least_irreducible(p: int, f: int) -> tuple[int, ...]:
    for code in range(p**f):
        low = [(code // p**i) % p for i in range(f)]
        coeffs = tuple(low) + (1,)
        if is_irreducible(coeffs, p):
            return coeffs
    raise AssertionError("an irreducible polynomial of every degree exists")


class GF:
    """The finite field of order ``q = p**f``.  Use :func:`field` to get cached instances."""

    def __init__(self, p: int, f: int = 1):
        if not is_prime(p) or f < 1:
            raise ValueError(f"invalid field parameters p={p}, f={f}")
        q = p**f
        if q > MAX_ORDER:
            raise ValueError(f"field order {q} exceeds {MAX_ORDER}")
        self.p, self.f, self.q = p, f, q
        self.modulus = least_irreducible(p, f)
        self._exp, self._log = self._build_tables()
        self._frob = tuple(self.pow(a, p) for a in range(q))

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GF) and (self.p, self.f) == (other.p, other.f)

    def __hash__(self) -> int:
        return hash((self.p, self.f))

    def _digits(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.f)]

    def _from_digits(self, ds: list[int]) -> int:
        return sum(d * self.p**i for i, d in enumerate(ds))

    def _slow_mul(self, a: int, b: int) -> int:
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.f - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return self._from_digits(_poly_rem(prod, list(self.modulus), self.p))

    def _build_tables(self) -> tuple[list[int], list[int]]:
        n = self.q - 1
        for g in range(2 if self.q > 2 else 1, self.q):
            exp = [1]
            x = g
            while x != 1:
                exp.append(x)
                x = self._slow_mul(x, g)
            if len(exp) == n:
                log = [0] * self.q
                for i, y in enumerate(exp):
                    log[y] = i
                return exp, log
        raise AssertionError("multiplicative group is cyclic")

    @property
    def primitive_element(self) -> int:
        return self._exp[1 % (self.q - 1)] if self.q > 2 else 1

    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        if self.f == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self._from_digits([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def neg(self, a: int) -> int:
        if self.f == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self._from_digits([(-x) % self.p for x in self._digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e > 0 else 1
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def frobenius(self, a: int) -> int:
        return self._frob[a]

    def embed_prime(self, c: int) -> int:
        """The prime-field element ``c mod p``."""
        return c % self.p


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    p, f = factor_prime_power(q)
    return GF(p, f)
