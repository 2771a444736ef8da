"""Arithmetic feasibility filters for flag-transitive 2-(v,k,lambda) designs.

Filters never delete candidates.  Each one marks survivors it rejects with
its own identifier, so the output keeps the first link of every
elimination chain.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from math import gcd
from typing import Iterable, Sequence

from .finitegeom import classical_order, factor_prime_power

PASS, FAIL = "pass", "fail"


@dataclass(frozen=True)
class SieveCandidate:
    r: int
    k: int
    b: int
    status: str = PASS
    eliminated_by: str | None = None

    def fail(self, filter_id: str) -> SieveCandidate:
        if self.status == FAIL:
            return self
        return replace(self, status=FAIL, eliminated_by=filter_id)

    def as_dict(self) -> dict:
        return {"b": self.b, "eliminated_by": self.eliminated_by, "k": self.k, "r": self.r, "status": self.status}


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def admissible_rk(v: int, lam: int) -> list[SieveCandidate]:
    """Every ``(r, k, b)`` allowed by the counting identities and Fisher's inequality."""
    if v < 4 or lam < 1:
        raise ValueError("need v >= 4 and lambda >= 1")
    total = lam * (v - 1)
    out = []
    for r in divisors(total):
        k = total // r + 1
        if not 2 < k < v or (v * r) % k:
            continue
        b = v * r // k
        if b >= v and r >= k and r * r > lam * v:
            out.append(SieveCandidate(r, k, b))
    return sorted(out, key=lambda c: c.k)


def filter_stabilizer(cands: Iterable[SieveCandidate], v: int, lam: int, stab_order: int) -> list[SieveCandidate]:
    """``r`` must divide ``gcd(lambda (v-1), |G_alpha|)``."""
    if stab_order < 1:
        raise ValueError("stabiliser order must be positive")
    g = gcd(lam * (v - 1), stab_order)
    return [c if g % c.r == 0 else c.fail("stabilizer") for c in cands]


def filter_subdegrees(cands: Iterable[SieveCandidate], lam: int, subdegrees: Sequence[int]) -> list[SieveCandidate]:
    """``r`` must divide ``s * gcd(r, lambda)`` for every nontrivial subdegree ``s``."""
    if any(s < 1 for s in subdegrees):
        raise ValueError("subdegrees must be positive")
    out = []
    for c in cands:
        ok = all((s * gcd(c.r, lam)) % c.r == 0 for s in subdegrees)
        out.append(c if ok else c.fail("subdegrees"))
    return out


def p_part(n: int, p: int) -> int:
    part = 1
    while n % p == 0:
        n //= p
        part *= p
    return part


@dataclass(frozen=True)
class GroupData:
    """Socle PSL(n, q) with point stabiliser order ``stabilizer_order``."""

    n: int
    q: int
    stabilizer_order: int
    subdegrees: tuple[int, ...] = ()
    subgroup_order: int | None = None
    p: int = field(init=False)
    f: int = field(init=False)
    d: int = field(init=False)

    def __post_init__(self) -> None:
        p, f = factor_prime_power(self.q)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "d", gcd(self.n, self.q - 1))
        if self.n < 3:
            raise ValueError("socle PSL(n, q) needs n >= 3")
        if self.stabilizer_order < 1 or (self.subgroup_order is not None and self.subgroup_order < 1):
            raise ValueError("orders must be positive")

    @property
    def socle_order(self) -> int:
        return classical_order("PSL", self.n, self.q)

    @property
    def v(self) -> int:
        if self.socle_order % self.stabilizer_order:
            raise ValueError(f"|X_alpha| = {self.stabilizer_order} does not divide |X| = {self.socle_order}")
        return self.socle_order // self.stabilizer_order


@dataclass(frozen=True)
class PslBoundsReport:
    order_bound_holds: bool
    r_divisor_bound: int
    p_divides_v: bool
    refined_r_divisor_bound: int | None
    refined_order_bound_holds: bool | None

    def as_dict(self) -> dict:
        return {
            "order_bound_holds": self.order_bound_holds,
            "p_divides_v": self.p_divides_v,
            "r_divisor_bound": self.r_divisor_bound,
            "refined_order_bound_holds": self.refined_order_bound_holds,
            "refined_r_divisor_bound": self.refined_r_divisor_bound,
        }


def psl_bounds(gd: GroupData) -> PslBoundsReport:
    """The order inequality and the divisor bounds on ``r`` for socle PSL(n, q), lambda = 2."""
    X, Xa, d, f, p = gd.socle_order, gd.stabilizer_order, gd.d, gd.f, gd.p
    v = gd.v
    holds = X < 2 * (d * f) ** 2 * Xa**3
    bound = 2 * d * f * Xa
    if v % p:
        return PslBoundsReport(holds, bound, False, None, None)
    xa_pprime = Xa // p_part(Xa, p)
    refined = 2 * d * f * xa_pprime
    refined_holds = X < 2 * (d * f) ** 2 * xa_pprime**2 * Xa
    return PslBoundsReport(holds, bound, True, refined, refined_holds)


def subgroup_div_bound(gd: GroupData) -> int:
    """``4 d f |X_alpha| / |H|`` for a subgroup ``H`` of a two-point stabiliser."""
    if gd.subgroup_order is None:
        raise ValueError("GroupData has no subgroup order")
    num = 4 * gd.d * gd.f * gd.stabilizer_order
    if num % gd.subgroup_order:
        raise ValueError(f"{num} is not divisible by |H| = {gd.subgroup_order}")
    return num // gd.subgroup_order


@dataclass(frozen=True)
class ImprimitiveFamily:
    x: int
    y: int
    z: int
    ell: int
    v: int
    b: int
    r: int
    k: int
    divisibility_ok: bool
    note: str = ""

    def as_dict(self) -> dict:
        return dict(sorted(self.__dict__.items()))


IMPRIMITIVE_NOTES = {
    4: "realised by the quadric biplane (biplane16)",
    6: "eliminated externally: no 2-(36,8,2) design exists (Handbook of Combinatorial Designs, II.1.35)",
    10: "eliminated by the 2-transitive kernel argument on the parts (not replayed here)",
    22: "eliminated by the 2-transitive kernel argument on the parts (not replayed here)",
}


def imprimitive_parameters(x: int) -> tuple[int, int, int, int, int, int, int] | None:
    """``(y, z, ell, v, b, r, k)`` forced for part size ``x``, or None when b is not integral."""
    y, z, ell = x, 1, 2
    r, k, v = 2 * x - 2, x + 2, x * x
    if (v * r) % k:
        return None
    return y, z, ell, v, v * r // k, r, k


def imprimitive_families(lam: int = 2) -> list[ImprimitiveFamily]:
    """The parameter families left for a point-imprimitive flag-transitive group.

    With parts of size ``x`` meeting each block in ``ell`` points, counting
    forces ``z = k - 1 - y(ell - 1) = 1`` and ``ell = 2``; then
    ``b = 2x^2 - 6x + 12 - 24/(x+2)`` makes ``x + 2`` a divisor of 24, and
    ``ell | k`` makes ``x`` even.
    """
    if lam != 2:
        raise ValueError("only lambda = 2 is supported")
    out = []
    for d in divisors(24):
        x = d - 2
        if x < 4 or x % 2:
            continue
        params = imprimitive_parameters(x)
        assert params is not None
        y, z, ell, v, b, r, k = params
        assert z == k - 1 - y * (ell - 1) and v == x * y and 2 * (x - 1) == r * (ell - 1)
        assert b == 2 * x * x - 6 * x + 12 - 24 // (x + 2)
        out.append(ImprimitiveFamily(x, y, z, ell, v, b, r, k, True, IMPRIMITIVE_NOTES.get(x, "")))
    return out


TABLE3_Q = (2, 3, 4, 5, 7, 8, 9, 16, 32)


def table3_row(q: int, f: int | None = None) -> tuple[int, int]:
    """``(v, R)`` for X = PSL(3, q) with stabiliser of order 3(q^2+q+1)/d."""
    p, f_actual = factor_prime_power(q)
    if f is not None and f != f_actual:
        raise ValueError(f"q = {q} is not p^{f}")
    f = f_actual
    num = q**3 * (q * q - 1) * (q - 1)
    assert num % 3 == 0
    v = num // 3
    R = gcd(6 * f * (q * q + q + 1), 2 * (v - 1))
    return v, R


def table3() -> list[tuple[int, int, int]]:
    return [(q, *table3_row(q)) for q in TABLE3_Q]


def table3_q_survives(q: int) -> bool:
    """``54 f^2 (q^2+q+1)^2 > q^3 (q^2-1)(q-1)``; only these q reach the R check."""
    _, f = factor_prime_power(q)
    return 54 * f * f * (q * q + q + 1) ** 2 > q**3 * (q * q - 1) * (q - 1)
