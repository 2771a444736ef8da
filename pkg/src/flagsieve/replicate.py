"""Brute-force reproductions of the computer-checked group facts.

Orbit and subdegree computations here go through :mod:`flagsieve.permgroup`
only; the designs being tested are rebuilt from raw orbits, not taken from
:mod:`flagsieve.construct`.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb, gcd
from typing import Callable

import numpy as np

from .design import block_intersection_sizes, is_flag_transitive, verify_2design
from .finitegeom import FLAGS, extend_to_pgammal, field as gf, form_action, matrix_action
from .finitegeom import psl_action, sl_generators, standard_alternating_form
from .permgroup import PermGroup, mask_orbit_data, masks_to_sets


@dataclass
class ReplicationReport:
    claim: str
    expected: dict
    computed: dict
    match: bool
    wall_time_ms: int = 0
    details: dict = field(default_factory=dict)

    def as_dict(self, timing: bool = False) -> dict:
        out = {
            "claim": self.claim,
            "computed": self.computed,
            "details": self.details,
            "expected": self.expected,
            "match": self.match,
        }
        if timing:
            out["wall_time_ms"] = self.wall_time_ms
        return out


def _timed(fn: Callable[..., ReplicationReport]) -> Callable[..., ReplicationReport]:
    def wrapper(*args, **kwargs) -> ReplicationReport:
        start = time.perf_counter()
        report = fn(*args, **kwargs)
        report.wall_time_ms = int((time.perf_counter() - start) * 1000)
        return report

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@_timed
def replicate_psl34_orbits() -> ReplicationReport:
    """Orbits of the GF(2)-subfield subgroup PSL(3,2) on the 105 flags of PG(2,4)."""
    F4 = gf(4)
    X = psl_action(3, F4, FLAGS)
    # SL(3,2) generators have 0/1 entries, which embed verbatim into GF(4)
    sub = matrix_action(sl_generators(3, gf(2)), 3, F4, FLAGS)
    lengths = sorted(len(o) for o in sub.orbits())
    expected = {"orbit_lengths": [14, 14, 21, 56], "orbit_count": 4, "degree": 105}
    computed = {"orbit_lengths": lengths, "orbit_count": len(lengths), "degree": sub.degree}
    details = {"socle_order": X.order(), "subgroup_order": sub.order(), "socle_degree": X.degree}
    return ReplicationReport("psl34-orbits", expected, computed, expected == computed, details=details)


@_timed
def replicate_sp42_subdegrees() -> ReplicationReport:
    """PSL(4,2) on the 28 cosets of Sp(4,2), via its action on alternating forms."""
    F2 = gf(2)
    G, _ = form_action(sl_generators(4, F2), 4, F2, standard_alternating_form(4))
    subs = G.subdegrees(0)
    nontrivial = [s for s in subs if s > 1]
    bound = gcd(*(2 * s for s in nontrivial))
    v = G.degree
    expected = {"degree": 28, "subdegrees": [1, 12, 15], "r_divides": 6, "eliminated": True}
    computed = {"degree": v, "subdegrees": subs, "r_divides": bound, "eliminated": bound**2 <= 2 * v}
    details = {"group_order": G.order(), "stabilizer_order": G.point_stabilizer(0).order()}
    return ReplicationReport("sp42-subdegrees", expected, computed, expected == computed, details=details)


def pgl27_on_flags() -> PermGroup:
    """PSL(3,2) extended by the duality, on the 21 point-line flags of PG(2,2)."""
    F2 = gf(2)
    return extend_to_pgammal(psl_action(3, F2, FLAGS), 3, F2, FLAGS, duality=True)


def _is_2design_masks(masks: list[int], v: int, lam: int) -> bool:
    sets = masks_to_sets(masks)
    counts = np.zeros((v, v), dtype=np.int64)
    for s in sets:
        idx = np.array(s)
        counts[np.ix_(idx, idx)] += 1
    off = counts[~np.eye(v, dtype=bool)]
    return bool(np.all(off == lam))


def _scan_range(args: tuple[np.ndarray, np.ndarray, int, int, int]) -> dict:
    elements, masks, v, b, lam = args
    data = mask_orbit_data(elements, masks)
    hit = data.orbit_lengths == b
    reps = sorted(set(int(c) for c in data.canonical[hit]))
    return {"scanned": int(len(masks)), "orbit_hits": int(hit.sum()), "reps": reps}


def _orbit_masks(elements: np.ndarray, mask: int) -> list[int]:
    bits = [(mask >> i) & 1 for i in range(elements.shape[1])]
    out = set()
    for g in elements:
        out.add(sum(bit << int(g[i]) for i, bit in enumerate(bits)))
    return sorted(out)


def colex_masks(v: int, k: int) -> np.ndarray:
    """k-subsets of 0..v-1 as bitmasks; numeric order of masks is colex order."""
    return np.array(sorted(sum(1 << i for i in c) for c in combinations(range(v), k)), dtype=np.int64)


@_timed
def replicate_psl32_block_search(jobs: int = 1, chunks: int = 8) -> ReplicationReport:
    """Every 6-subset of the 21 flags whose orbit has 28 images: does the orbit form a 2-(21,6,2) design?"""
    v, k, lam = 21, 6, 2
    r = lam * (v - 1) // (k - 1)
    b = v * r // k
    G = pgl27_on_flags()
    elements = G.element_array()
    masks = colex_masks(v, k)
    parts = np.array_split(masks, max(1, chunks))
    tasks = [(elements, part, v, b, lam) for part in parts]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan_range, tasks))
    else:
        results = [_scan_range(t) for t in tasks]
    reps = sorted(set().union(*(res["reps"] for res in results)))
    successes = 0
    hits = sum(res["orbit_hits"] for res in results)
    design_subsets = 0
    for rep in reps:
        orbit = _orbit_masks(elements, rep)
        if _is_2design_masks(orbit, v, lam):
            successes += 1
            design_subsets += len(orbit)
    expected = {"subsets": comb(21, 6), "target": [21, 28, 8, 6, 2], "successes": 0}
    computed = {"subsets": int(sum(res["scanned"] for res in results)), "target": [v, b, r, k, lam], "successes": successes}
    details = {
        "group_order": G.order(),
        "subsets_with_orbit_length_b": hits,
        "orbits_of_length_b": len(reps),
        "design_subsets": design_subsets,
    }
    return ReplicationReport("psl32-block-search", expected, computed, expected == computed, details=details)


@_timed
def replicate_biplane16_properties() -> ReplicationReport:
    """The quadric biplane: parameters, flag-transitivity, imprimitivity."""
    from .construct import biplane16, biplane16_full_group

    D, G = biplane16()
    params = verify_2design(D)
    system = G.block_system()
    flag_count = sum(len(blk) for blk in D.blocks)
    expected = {"params": [16, 16, 6, 6, 2], "flag_transitive": True, "primitive": False, "flags": 96, "lambda_all_pairs": 2}
    computed = {
        "params": list(params.signature()),
        "flag_transitive": is_flag_transitive(G, D),
        "primitive": system is None,
        "flags": flag_count,
        "lambda_all_pairs": params.lambda_,
    }
    details = {
        "group_order": G.order(),
        "block_system_cell_size": system.cell_size if system else None,
        "full_affine_group_order": biplane16_full_group().order(),
        "block_intersections": sorted(block_intersection_sizes(D)),
    }
    return ReplicationReport("biplane16", expected, computed, expected == computed, details=details)


def unreplicated_psl33_144() -> ReplicationReport:
    """The 144-point PSL(3,3).2 check needs subgroup enumeration; documented, not run."""
    return ReplicationReport(
        "psl33-144-points",
        {"successes": 0},
        {},
        False,
        details={"status": "not replicated: requires enumerating subgroups of index 312"},
    )


CLAIMS: dict[str, Callable[..., ReplicationReport]] = {
    "psl34-orbits": replicate_psl34_orbits,
    "sp42-subdegrees": replicate_sp42_subdegrees,
    "psl32-block-search": replicate_psl32_block_search,
    "biplane16": replicate_biplane16_properties,
}


def run_claim(name: str, jobs: int = 1) -> ReplicationReport:
    fn = CLAIMS[name]
    if name == "psl32-block-search":
        return fn(jobs=jobs)
    return fn()


def run_all(jobs: int = 1) -> list[ReplicationReport]:
    return [run_claim(name, jobs) for name in CLAIMS]
