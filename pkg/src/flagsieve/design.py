"""Incidence structures, 2-design verification and flag-transitivity."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

from .permgroup import Permutation, PermGroup


class DesignError(ValueError):
    """A structure failed verification; ``reason`` says where."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@dataclass(frozen=True)
class IncidenceStructure:
    """``v`` points and a list (multiset) of blocks, each a sorted tuple."""

    v: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        blocks = tuple(tuple(sorted(set(b))) for b in self.blocks)
        for i, b in enumerate(blocks):
            if not b:
                raise ValueError(f"block {i} is empty")
            if b[0] < 0 or b[-1] >= self.v:
                raise ValueError(f"block {i} has points outside 0..{self.v - 1}")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_blocks(cls, v: int, blocks: Iterable[Iterable[int]]) -> IncidenceStructure:
        return cls(v, tuple(tuple(b) for b in blocks))

    @property
    def b(self) -> int:
        return len(self.blocks)


@dataclass(frozen=True)
class DesignParams:
    v: int
    b: int
    r: int
    k: int
    lambda_: int
    symmetric: bool
    nontrivial: bool

    def as_dict(self) -> dict:
        d = asdict(self)
        d["lambda"] = d.pop("lambda_")
        return dict(sorted(d.items()))

    def signature(self) -> tuple[int, int, int, int, int]:
        return self.v, self.b, self.r, self.k, self.lambda_


@dataclass(frozen=True)
class Flag:
    point: int
    block: int


def verify_2design(D: IncidenceStructure) -> DesignParams:
    """Check constant block size and constant pair coverage; raise DesignError otherwise."""
    if D.v < 2:
        raise DesignError("need at least 2 points")
    if not D.blocks:
        raise DesignError("no blocks")
    v = D.v
    k = len(D.blocks[0])
    for i, blk in enumerate(D.blocks):
        if len(blk) != k:
            raise DesignError(f"block {i} has size {len(blk)}, block 0 has size {k}")
    if k >= v:
        raise DesignError(f"degenerate: block size k={k} is not less than v={v}")
    if k < 2:
        raise DesignError("degenerate: blocks of size 1 cover no pairs")
    # row-major upper triangle, pair (i, j) with i < j
    offsets = [i * v - i * (i + 1) // 2 for i in range(v)]
    counts = [0] * (v * (v - 1) // 2)
    for blk in D.blocks:
        for a in range(k):
            i, base = blk[a], offsets[blk[a]]
            for j in blk[a + 1 :]:
                counts[base + j - i - 1] += 1
    lam = counts[0]
    for i in range(v):
        for j in range(i + 1, v):
            c = counts[offsets[i] + j - i - 1]
            if c != lam:
                raise DesignError(f"pair ({i}, {j}) lies in {c} blocks, pair (0, 1) in {lam}")
    if lam == 0:
        raise DesignError("no pair is covered")
    replication = Counter(x for blk in D.blocks for x in blk)
    r = replication[0]
    for x in range(v):
        if replication[x] != r:
            raise DesignError(f"point {x} lies in {replication[x]} blocks, point 0 in {r}")
    b = D.b
    assert r * (k - 1) == lam * (v - 1) and b * k == v * r
    return DesignParams(v, b, r, k, lam, v == b, 2 < k < v)


def complement_design(D: IncidenceStructure) -> IncidenceStructure:
    full = set(range(D.v))
    out = []
    for i, blk in enumerate(D.blocks):
        if len(blk) == D.v:
            raise ValueError(f"block {i} is the whole point set")
        out.append(tuple(sorted(full.difference(blk))))
    return IncidenceStructure(D.v, tuple(out))


def flags(D: IncidenceStructure) -> list[Flag]:
    return [Flag(x, i) for i, blk in enumerate(D.blocks) for x in blk]


def is_automorphism(g: Permutation, D: IncidenceStructure) -> bool:
    if g.degree != D.v:
        raise ValueError(f"permutation degree {g.degree} but v={D.v}")
    before = Counter(D.blocks)
    after = Counter(g.apply_to_set(blk) for blk in D.blocks)
    return before == after


def flag_orbit(G: PermGroup, D: IncidenceStructure, start: tuple[int, int] | None = None) -> set:
    """Orbit of one flag ``(point, block-set)`` under the induced action."""
    for i, g in enumerate(G.generators):
        if not is_automorphism(g, D):
            raise ValueError(f"generator {i} is not an automorphism")
    if start is None:
        start = (D.blocks[0][0], 0)
    seed = (start[0], D.blocks[start[1]])
    seen = {seed}
    queue = deque([seed])
    gens = [g.images for g in G.generators]
    while queue:
        x, blk = queue.popleft()
        for g in gens:
            img = (g[x], tuple(sorted(g[y] for y in blk)))
            if img not in seen:
                seen.add(img)
                queue.append(img)
    return seen


def is_flag_transitive(G: PermGroup, D: IncidenceStructure) -> bool:
    """True iff one flag's orbit has ``b*k`` elements.

    Repeated blocks give flags that the point action cannot tell apart, so a
    structure with repeated blocks is never reported flag-transitive.
    """
    return len(flag_orbit(G, D)) == sum(len(blk) for blk in D.blocks)


def pair_coverage_ok(params: DesignParams) -> bool:
    """The counting identities and Fisher's inequality hold for ``params``."""
    v, b, r, k, lam = params.signature()
    ok = r * (k - 1) == lam * (v - 1) and b * k == v * r and b >= v and r >= k
    if params.nontrivial:
        ok = ok and r * r > lam * v
    return ok


def block_intersection_sizes(D: IncidenceStructure) -> set[int]:
    sets = [set(b) for b in D.blocks]
    return {len(sets[i] & sets[j]) for i in range(len(sets)) for j in range(i + 1, len(sets))}


def structure_from_sets(v: int, sets: Sequence[Iterable[int]]) -> IncidenceStructure:
    return IncidenceStructure(v, tuple(tuple(sorted(s)) for s in sets))
