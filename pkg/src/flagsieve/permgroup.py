"""Exact permutation-group computations on the points ``0..degree-1``.

Permutations are stored as tuples of images.  Products are read left to
right: ``a * b`` first applies ``a`` and then ``b``, so ``(a * b)[x] ==
b[a[x]]``.  Group orders, stabilisers and membership come from a
deterministic Schreier-Sims stabiliser chain whose base is filled in the
order ``prefix, 0, 1, 2, ...``.
"""

from __future__ import annotations

import os
import threading
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

DEFAULT_ORBIT_BUDGET = 10**7
ORBIT_BUDGET_ENV = "FLAGSIEVE_ORBIT_BUDGET"


class BudgetExceeded(RuntimeError):
    """Raised when an enumeration grows past its configured cap."""


def orbit_budget() -> int:
    raw = os.environ.get(ORBIT_BUDGET_ENV)
    return int(raw) if raw else DEFAULT_ORBIT_BUDGET


def _compose(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(map(b.__getitem__, a))


def _invert(a: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``{0..degree-1}`` given by its image list."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images) - 1}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        images = list(range(degree))
        for cycle in cycles:
            for i, x in enumerate(cycle):
                images[x] = cycle[(i + 1) % len(cycle)]
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Permutation(_compose(self.images, other.images))

    def inverse(self) -> Permutation:
        return Permutation(_invert(self.images))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def apply_to_set(self, points: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted(self.images[x] for x in points))

    def __str__(self) -> str:
        seen: set[int] = set()
        out = []
        for i in range(self.degree):
            if i in seen or self.images[i] == i:
                continue
            cycle = [i]
            j = self.images[i]
            while j != i:
                seen.add(j)
                cycle.append(j)
                j = self.images[j]
            out.append("(" + " ".join(map(str, cycle)) + ")")
        return "".join(out) or "()"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` first, then ``q``."""
    return p * q


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


@dataclass(frozen=True)
class BlockSystem:
    """A partition of the points into cells of equal size."""

    parts: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        parts = tuple(sorted(tuple(sorted(c)) for c in self.parts))
        sizes = {len(c) for c in parts}
        if len(sizes) != 1 or 0 in sizes:
            raise ValueError("cells must be nonempty and of equal size")
        flat = [x for c in parts for x in c]
        if sorted(flat) != list(range(len(flat))):
            raise ValueError("cells must partition 0..v-1")
        object.__setattr__(self, "parts", parts)

    @property
    def cell_size(self) -> int:
        return len(self.parts[0])

    @property
    def num_cells(self) -> int:
        return len(self.parts)

    def is_trivial(self) -> bool:
        return self.cell_size == 1 or self.num_cells == 1


class _Chain:
    """Base, strong generators per level and incrementally grown transversals."""

    def __init__(self, degree: int, gens: list[tuple[int, ...]], prefix: Sequence[int]):
        self.degree = degree
        self.identity = tuple(range(degree))
        self.base: list[int] = []
        self.gens: list[list[tuple[int, ...]]] = []
        self.trans: list[dict[int, tuple[int, ...]]] = []
        self.trans_inv: list[dict[int, tuple[int, ...]]] = []
        self._checked: list[set[tuple[int, int]]] = []
        for b in prefix:
            self._new_level(b)
        strong = [g for g in gens if g != self.identity]
        for g in strong:
            if all(g[b] == b for b in self.base):
                self._new_level(next(x for x in range(degree) if g[x] != x))
        for level in range(len(self.base)):
            fixed = self.base[:level]
            self.gens[level] = [g for g in strong if all(g[b] == b for b in fixed)]
            self._grow_orbit(level)
        self._run()

    def _new_level(self, point: int) -> None:
        self.base.append(point)
        self.gens.append([])
        self.trans.append({point: self.identity})
        self.trans_inv.append({point: self.identity})
        self._checked.append(set())

    def _next_base_point(self, g: tuple[int, ...]) -> int:
        return next(x for x in range(self.degree) if g[x] != x and x not in self.base)

    def _grow_orbit(self, level: int) -> None:
        trans, trans_inv, gens = self.trans[level], self.trans_inv[level], self.gens[level]
        queue = deque(trans)
        while queue:
            x = queue.popleft()
            ux = trans[x]
            for g in gens:
                y = g[x]
                if y not in trans:
                    uy = _compose(ux, g)
                    trans[y] = uy
                    trans_inv[y] = _invert(uy)
                    queue.append(y)

    def strip(self, g: tuple[int, ...], start: int = 0) -> tuple[tuple[int, ...], int]:
        for level in range(start, len(self.base)):
            x = g[self.base[level]]
            inv = self.trans_inv[level].get(x)
            if inv is None:
                return g, level
            g = _compose(g, inv)
        return g, len(self.base)

    def _run(self) -> None:
        i = len(self.base) - 1
        while i >= 0:
            residue = self._find_residue(i)
            if residue is None:
                i -= 1
                continue
            y, j = residue
            if j == len(self.base):
                self._new_level(self._next_base_point(y))
            for level in range(i + 1, j + 1):
                self.gens[level].append(y)
                self._grow_orbit(level)
            i = j

    def _find_residue(self, i: int) -> tuple[tuple[int, ...], int] | None:
        trans, trans_inv, checked = self.trans[i], self.trans_inv[i], self._checked[i]
        for gi, s in enumerate(self.gens[i]):
            for beta in list(trans):
                if (beta, gi) in checked:
                    continue
                checked.add((beta, gi))
                h = _compose(_compose(trans[beta], s), trans_inv[s[beta]])
                if h == self.identity:
                    continue
                y, j = self.strip(h, i + 1)
                if j < len(self.base) or y != self.identity:
                    return y, j
        return None

    def order(self) -> int:
        total = 1
        for t in self.trans:
            total *= len(t)
        return total

    def contains(self, g: tuple[int, ...]) -> bool:
        y, j = self.strip(g)
        return j == len(self.base) and y == self.identity

    def elements(self) -> Iterator[tuple[int, ...]]:
        def rec(level: int, acc: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
            if level < 0:
                yield acc
                return
            for u in self.trans[level].values():
                yield from rec(level - 1, _compose(acc, u))

        yield from rec(len(self.base) - 1, self.identity)


class PermGroup:
    """The group generated by a list of permutations of a common degree.

    Immutable after construction.  Stabiliser chains are built lazily, once
    per base prefix, under a lock so instances can be shared across threads.
    """

    def __init__(self, degree: int, generators: Iterable[Permutation | Sequence[int]] = ()):
        if degree < 1:
            raise ValueError("degree must be positive")
        gens = []
        for g in generators:
            p = g if isinstance(g, Permutation) else Permutation(tuple(g))
            if p.degree != degree:
                raise ValueError(f"generator of degree {p.degree} in a group of degree {degree}")
            gens.append(p)
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(gens)
        self._raw = [g.images for g in gens]
        self._chains: dict[tuple[int, ...], _Chain] = {}
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, generators={len(self.generators)})"

    def chain(self, prefix: Sequence[int] = ()) -> _Chain:
        key = tuple(prefix)
        with self._lock:
            ch = self._chains.get(key)
            if ch is None:
                ch = _Chain(self.degree, self._raw, key)
                self._chains[key] = ch
        return ch

    def order(self) -> int:
        return self.chain().order()

    def __contains__(self, g: Permutation) -> bool:
        return self.chain().contains(g.images)

    def elements(self) -> Iterator[Permutation]:
        for g in self.chain().elements():
            yield Permutation(g)

    def element_array(self) -> np.ndarray:
        """All elements as an ``(order, degree)`` integer array."""
        if self.order() > orbit_budget():
            raise BudgetExceeded(f"group order {self.order()} exceeds budget")
        return np.array(list(self.chain().elements()), dtype=np.int64).reshape(-1, self.degree)

    def _check_point(self, point: int) -> None:
        if not 0 <= point < self.degree:
            raise IndexError(f"point {point} out of range 0..{self.degree - 1}")

    def orbit(self, point: int) -> list[int]:
        self._check_point(point)
        seen = {point}
        queue = deque([point])
        while queue:
            x = queue.popleft()
            for g in self._raw:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    def orbits(self) -> list[list[int]]:
        out, seen = [], set()
        for x in range(self.degree):
            if x not in seen:
                orb = self.orbit(x)
                seen.update(orb)
                out.append(orb)
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def point_stabilizer(self, point: int) -> PermGroup:
        self._check_point(point)
        ch = self.chain((point,))
        gens = ch.gens[1] if len(ch.base) > 1 else []
        return PermGroup(self.degree, [Permutation(g) for g in gens])

    def subdegrees(self, point: int = 0) -> list[int]:
        """Orbit lengths of the stabiliser of ``point``, trivial orbit included, ascending."""
        if not self.is_transitive():
            raise ValueError("subdegrees need a transitive group")
        return sorted(len(o) for o in self.point_stabilizer(point).orbits())

    def minimal_block(self, alpha: int, beta: int) -> BlockSystem:
        """Finest invariant partition with ``alpha`` and ``beta`` in one cell (Atkinson)."""
        parent = list(range(self.degree))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        parent[find(beta)] = find(alpha)
        queue = deque([(alpha, beta)])
        while queue:
            a, b = queue.popleft()
            for g in self._raw:
                ra, rb = find(g[a]), find(g[b])
                if ra != rb:
                    parent[rb] = ra
                    queue.append((ra, rb))
        cells: dict[int, list[int]] = {}
        for x in range(self.degree):
            cells.setdefault(find(x), []).append(x)
        return BlockSystem(tuple(tuple(c) for c in cells.values()))

    def block_system(self) -> BlockSystem | None:
        """A nontrivial invariant partition, or None when the group is primitive."""
        if self.degree < 2:
            raise ValueError("primitivity needs degree >= 2")
        if not self.is_transitive():
            raise ValueError("primitivity is only defined for transitive groups")
        for beta in range(1, self.degree):
            bs = self.minimal_block(0, beta)
            if not bs.is_trivial():
                return bs
        return None

    def is_primitive(self) -> bool:
        return self.block_system() is None

    def orbit_of_set(self, points: Iterable[int], budget: int | None = None) -> list[tuple[int, ...]]:
        """All images of a point set, as sorted tuples in discovery order."""
        start = tuple(sorted(set(points)))
        for x in start:
            self._check_point(x)
        cap = orbit_budget() if budget is None else budget
        seen = {start}
        out = [start]
        queue = deque([start])
        while queue:
            s = queue.popleft()
            for g in self._raw:
                t = tuple(sorted(g[x] for x in s))
                if t not in seen:
                    if len(seen) >= cap:
                        raise BudgetExceeded(f"set orbit exceeds {cap} images")
                    seen.add(t)
                    out.append(t)
                    queue.append(t)
        return out

    def setwise_stabilizer_order(self, points: Iterable[int], budget: int | None = None) -> int:
        return self.order() // len(self.orbit_of_set(points, budget))


def group_order(group: PermGroup) -> int:
    return group.order()


def orbit(group: PermGroup, point: int) -> list[int]:
    return group.orbit(point)


def point_stabilizer(group: PermGroup, point: int) -> PermGroup:
    return group.point_stabilizer(point)


def subdegrees(group: PermGroup, point: int = 0) -> list[int]:
    return group.subdegrees(point)


def is_primitive(group: PermGroup) -> tuple[bool, BlockSystem | None]:
    """``(True, None)`` for primitive groups, else ``(False, witness)``."""
    bs = group.block_system()
    return bs is None, bs


def orbit_of_set(group: PermGroup, points: Iterable[int], budget: int | None = None) -> list[tuple[int, ...]]:
    return sorted(group.orbit_of_set(points, budget))


def setwise_stabilizer_order(group: PermGroup, points: Iterable[int], budget: int | None = None) -> int:
    return group.setwise_stabilizer_order(points, budget)


def masks_to_sets(masks: Iterable[int]) -> list[tuple[int, ...]]:
    return [tuple(i for i in range(int(m).bit_length()) if m >> i & 1) for m in masks]


def set_to_mask(points: Iterable[int]) -> int:
    m = 0
    for x in points:
        m |= 1 << x
    return m


@dataclass
class MaskOrbitData:
    """Per-set orbit lengths and canonical (least-mask) representatives."""

    masks: np.ndarray
    orbit_lengths: np.ndarray
    canonical: np.ndarray
    group_order: int = field(default=0)


def mask_orbit_data(elements: np.ndarray, masks: np.ndarray) -> MaskOrbitData:
    """Vectorised set-orbit statistics for point sets encoded as bitmasks.

    ``elements`` is the full element array of a group (see
    :meth:`PermGroup.element_array`).  For every mask the stabiliser size is
    counted directly, so the orbit length is ``|G| / |G_S|``.
    """
    degree = elements.shape[1]
    if degree > 62:
        raise ValueError("bitmask orbits support degree <= 62")
    masks = np.asarray(masks, dtype=np.int64)
    bits = [(masks >> i) & 1 for i in range(degree)]
    fixed = np.zeros(masks.shape, dtype=np.int64)
    canonical = masks.copy()
    for g in elements:
        image = np.zeros_like(masks)
        for i in range(degree):
            image |= bits[i] << int(g[i])
        fixed += image == masks
        np.minimum(canonical, image, out=canonical)
    order = len(elements)
    return MaskOrbitData(masks, order // fixed, canonical, order)
