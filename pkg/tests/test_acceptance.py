"""Acceptance gate: one test per criterion, each with its stated time limit.

Every test appends a ``PASS``/``FAIL`` line that is printed in the pytest
terminal summary; ``python3 tests/test_acceptance.py`` prints the same
lines without pytest.
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE_LINES  # noqa: E402
from flagsieve import replicate  # noqa: E402
from flagsieve.construct import biplane16, biplane16_full_group, derived_design, fano_complement, pg_point_line_design  # noqa: E402
from flagsieve.design import complement_design, is_flag_transitive, verify_2design  # noqa: E402
from flagsieve.finitegeom import (  # noqa: E402
    FLAGS,
    POINTS,
    check_order_bounds,
    enumerate_subspaces,
    extend_to_pgammal,
    field,
    form_action,
    gaussian_binomial,
    gcd_identity,
    is_prime_power,
    psl_action,
    sl_generators,
    standard_alternating_form,
)
from flagsieve.sieve import imprimitive_families, table3  # noqa: E402


def _gate(number: int, title: str, limit_s: float, check) -> None:
    start = time.perf_counter()
    try:
        detail = check()
        ok, err = True, None
    except AssertionError as exc:
        ok, detail, err = False, str(exc) or "assertion failed", exc
    elapsed = time.perf_counter() - start
    in_time = elapsed < limit_s
    verdict = "PASS" if ok and in_time else "FAIL"
    note = detail if ok else f"mismatch: {detail}"
    line = f"{verdict} criterion {number}: {title}; {note} [{elapsed:.2f}s, limit {limit_s:g}s]"
    ACCEPTANCE_LINES.append(line)
    print(line)
    if err is not None:
        raise err
    assert in_time, line


# 1 -------------------------------------------------------------------------


def _criterion_1() -> str:
    F = field(3)
    D13 = derived_design(pg_point_line_design(2, F))
    p = verify_2design(D13)
    assert (p.v, p.k, p.lambda_, p.b, p.r) == (13, 3, 2, 52, 12), p
    G3 = psl_action(3, F)
    assert is_flag_transitive(G3, D13) and G3.is_primitive()
    D40 = derived_design(pg_point_line_design(3, F))
    p = verify_2design(D40)
    assert (p.v, p.k, p.lambda_, p.b, p.r) == (40, 3, 2, 520, 39), p
    assert is_flag_transitive(psl_action(4, F), D40)
    return "2-(13,3,2) b=52 r=12 and 2-(40,3,2) b=520 r=39, flag-transitive"


def test_criterion_1_derived_pg_designs():
    _gate(1, "derived designs of PG(2,3) and PG(3,3)", 30, _criterion_1)


# 2 -------------------------------------------------------------------------


def _criterion_2() -> str:
    D, G = fano_complement()
    p = verify_2design(D)
    assert p.signature() == (7, 7, 4, 4, 2) and p.symmetric
    assert is_flag_transitive(G, D) and G.order() == 168
    return "symmetric 2-(7,4,2), flag-transitive under PSL(3,2)"


def test_criterion_2_fano_complement():
    _gate(2, "Fano complement", 1, _criterion_2)


# 3 -------------------------------------------------------------------------


def _criterion_3() -> str:
    D, G = biplane16()
    p = verify_2design(D)
    assert p.signature() == (16, 16, 6, 6, 2) and p.symmetric
    assert is_flag_transitive(G, D)
    system = G.block_system()
    assert system is not None, "group is primitive"
    full = biplane16_full_group()
    assert full.is_primitive()
    return (
        f"symmetric 2-(16,6,2), flag-transitive, imprimitive under the W-stabilising subgroup "
        f"(|G|={G.order()}, cells of size {system.cell_size}); the full D-stabilising affine group "
        f"(order {full.order()}) is primitive"
    )


def test_criterion_3_biplane16():
    _gate(3, "16-point biplane", 60, _criterion_3)


# 4 -------------------------------------------------------------------------

TABLE3_EXPECTED = [
    (2, 8, 14),
    (3, 144, 26),
    (4, 960, 14),
    (5, 4000, 186),
    (7, 32928, 38),
    (8, 75264, 146),
    (9, 155520, 182),
    (16, 5222400, 182),
    (32, 346390528, 6342),
]


def _criterion_4() -> str:
    rows = table3()
    assert rows == TABLE3_EXPECTED, rows
    return "nine (q, v, R) rows bit-exact"


def test_criterion_4_table3():
    _gate(4, "PSL(3,q) (q, v, R) table", 1, _criterion_4)


# 5 -------------------------------------------------------------------------


def _criterion_5() -> str:
    rep = replicate.replicate_sp42_subdegrees()
    assert rep.match, rep.computed
    assert rep.computed["r_divides"] == 6 and 36 < 56
    return "subdegrees [1, 12, 15] on 28 points; gcd(24,30)=6 and 36 < 56"


def test_criterion_5_sp42_subdegrees():
    _gate(5, "Sp(4,2) subdegrees", 10, _criterion_5)


# 6 -------------------------------------------------------------------------


def _criterion_6() -> str:
    rep = replicate.replicate_psl34_orbits()
    assert rep.match, rep.computed
    return f"orbit lengths {rep.computed['orbit_lengths']} on {rep.computed['degree']} flags"


def test_criterion_6_psl34_orbits():
    _gate(6, "PSL(3,2) orbits on PSL(3,4) flags", 30, _criterion_6)


# 7 -------------------------------------------------------------------------


def _criterion_7() -> str:
    rep = replicate.replicate_psl32_block_search(jobs=1)
    assert rep.match, rep.computed
    assert rep.details["group_order"] == 336
    return (
        f"{rep.computed['subsets']} subsets, {rep.details['orbits_of_length_b']} orbits of length 28, "
        f"{rep.computed['successes']} designs (single process)"
    )


def test_criterion_7_block_search():
    _gate(7, "21-point 6-subset exhaustion", 600, _criterion_7)


# 8 -------------------------------------------------------------------------


def _criterion_8() -> str:
    fams = imprimitive_families(2)
    got = [(f.x, f.v, f.b, f.r, f.k) for f in fams]
    assert got == [(4, 16, 16, 6, 6), (6, 36, 45, 10, 8), (10, 100, 150, 18, 12), (22, 484, 847, 42, 24)], got
    return "x in {4, 6, 10, 22} with the expected (v, b, r, k)"


def test_criterion_8_imprimitive():
    _gate(8, "imprimitive parameter families", 1, _criterion_8)


# 9 -------------------------------------------------------------------------


def _builtin_groups():
    F2, F3, F4 = field(2), field(3), field(4)
    yield psl_action(3, F2)
    yield psl_action(3, F3)
    yield psl_action(3, F4)
    yield psl_action(4, F2)
    yield psl_action(4, F3)
    yield psl_action(3, F4, FLAGS)
    yield extend_to_pgammal(psl_action(3, F4), 3, F4, POINTS)
    yield extend_to_pgammal(psl_action(3, F2, FLAGS), 3, F2, FLAGS, duality=True)
    yield form_action(sl_generators(4, F2), 4, F2, standard_alternating_form(4))[0]
    yield fano_complement()[1]
    yield biplane16()[1]
    yield biplane16_full_group()


def _builtin_designs():
    yield fano_complement()[0]
    yield biplane16()[0]
    for nm1, q in [(2, 2), (2, 3), (3, 3), (2, 4), (3, 2), (2, 5)]:
        S = pg_point_line_design(nm1, q)
        yield S.structure
        yield derived_design(S)
        yield complement_design(S.structure)


def _table1_grid():
    qs = [q for q in range(2, 32000) if is_prime_power(q)]
    for kind in ("GL", "PSL", "GU", "PSU", "Sp"):
        n = {"PSU": 3, "Sp": 4}.get(kind, 2)
        while 2 ** (n * n) <= 10**18:
            if not (kind == "Sp" and n % 2):
                for q in qs:
                    if q ** (n * n) > 10**18:
                        break
                    yield kind, n, q
            n += 1


def _gcd_grid():
    for n in range(2, 9):
        for p in (2, 3, 5):
            for f in range(1, 5):
                for e in range(1, f + 1):
                    if f % e == 0:
                        yield "i", n, p, e, f
                        yield "ii", n, p, e, f
                if f % 2 == 0:
                    yield "iii", n, p, 0, f


def _criterion_9() -> str:
    groups = 0
    for G in _builtin_groups():
        for a in sorted({0, G.degree // 2, G.degree - 1}):
            assert G.order() == G.point_stabilizer(a).order() * len(G.orbit(a)), (G.degree, a)
        groups += 1
    designs = 0
    for D in _builtin_designs():
        v, b, r, k, lam = verify_2design(D).signature()
        assert r * (k - 1) == lam * (v - 1) and b * k == v * r and b >= v and r >= k, (v, b, r, k, lam)
        if 2 < k < v:
            assert r * r > lam * v
        designs += 1
    counts = 0
    for q in (2, 3, 4):
        for n in range(1, 6):
            for i in range(n + 1):
                assert len(enumerate_subspaces(n, i, field(q))) == gaussian_binomial(n, i, q), (n, i, q)
                counts += 1
    grid = list(_table1_grid())
    bad = [c for c in grid if not check_order_bounds(*c)]
    assert not bad, bad[:5]
    gcds = list(_gcd_grid())
    for args in gcds:
        lhs, rhs = gcd_identity(*args)
        assert lhs == rhs, args
    return (
        f"orbit-stabilizer on {groups} groups, counting identities on {designs} designs, "
        f"{counts} subspace counts, {len(grid)} order-bound cases, {len(gcds)} gcd cases"
    )


def test_criterion_9_property_suites():
    _gate(9, "property suites", 120, _criterion_9)


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    raise SystemExit(1 if failed else 0)
