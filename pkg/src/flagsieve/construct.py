"""The concrete designs: derived designs of linear spaces, projective
point-line designs, the Fano complement and a 16-point biplane."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .design import DesignError, IncidenceStructure, complement_design, is_flag_transitive, verify_2design
from .finitegeom import GF, POINTS, enumerate_subspaces, field, psl_action
from .finitegeom.actions import objects
from .finitegeom.linalg import rref
from .permgroup import Permutation, PermGroup


@dataclass(frozen=True)
class LinearSpace:
    """An incidence structure in which every pair of points lies on exactly one line."""

    structure: IncidenceStructure

    def __post_init__(self) -> None:
        params = verify_2design(self.structure)
        if params.lambda_ != 1:
            raise DesignError(f"a linear space needs lambda = 1, got {params.lambda_}")

    @property
    def v(self) -> int:
        return self.structure.v

    @property
    def lines(self) -> tuple[tuple[int, ...], ...]:
        return self.structure.blocks


def derived_design(S: LinearSpace | IncidenceStructure) -> IncidenceStructure:
    """All blocks ``line - {point}``, ordered by (line index, removed point)."""
    lines = S.lines if isinstance(S, LinearSpace) else S.blocks
    sizes = {len(line) for line in lines}
    if len(sizes) != 1:
        raise ValueError("lines must all have the same size")
    (k,) = sizes
    if k < 3:
        raise ValueError(f"line size must be at least 3, got {k}")
    blocks = [tuple(x for x in line if x != alpha) for line in lines for alpha in line]
    return IncidenceStructure(S.v, tuple(blocks))


def pg_point_line_design(n_minus_1: int, F: GF | int) -> LinearSpace:
    """Points and lines of PG(n-1, q); point labels follow the sorted point list."""
    F = field(F) if isinstance(F, int) else F
    n = n_minus_1 + 1
    if n < 3:
        raise ValueError("need a projective space of dimension at least 2")
    points = objects(n, F, POINTS)
    index = {p.basis: i for i, p in enumerate(points)}
    lines = []
    for line in objects(n, F, ("subspaces", 2)):
        a, b = line.basis
        members = set()
        for s, t in product(F.elements(), repeat=2):
            if s or t:
                vec = tuple(F.add(F.mul(s, x), F.mul(t, y)) for x, y in zip(a, b))
                members.add(index[rref(F, [vec])])
        lines.append(tuple(sorted(members)))
    return LinearSpace(IncidenceStructure(len(points), tuple(lines)))


def fano_complement() -> tuple[IncidenceStructure, PermGroup]:
    F = field(2)
    D = complement_design(pg_point_line_design(2, F).structure)
    return D, psl_action(3, F, POINTS)


def _bits(x: int) -> tuple[int, int, int, int]:
    return (x >> 3) & 1, (x >> 2) & 1, (x >> 1) & 1, x & 1


def quadric_difference_set() -> tuple[int, ...]:
    """``{x in F_2^4 : x1 x2 + x3 x4 = 1}`` with x1 as the most significant bit."""
    out = []
    for x in range(16):
        x1, x2, x3, x4 = _bits(x)
        if (x1 & x2) ^ (x3 & x4):
            out.append(x)
    return tuple(out)


def _row_map(rows: tuple[int, ...], x: int) -> int:
    # row vector x times the matrix whose i-th row is rows[i] (row 0 <-> x1)
    y = 0
    for i, bit in enumerate(_bits(x)):
        if bit:
            y ^= rows[i]
    return y


def _invertible(rows: tuple[int, ...]) -> bool:
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r == 0:
            return False
        basis.append(r)
    return True


@dataclass(frozen=True)
class BiplaneScan:
    invertible: int
    matches: int
    affine_maps: tuple[tuple[tuple[int, ...], int], ...]


def scan_difference_set_stabilizer(dset: tuple[int, ...]) -> BiplaneScan:
    """Invertible ``A`` over GF(2) with ``D A = D + c``, scanned in row order."""
    target = frozenset(dset)
    translates = {frozenset(d ^ c for d in dset): c for c in range(16)}
    invertible = 0
    found = []
    for rows in product(range(16), repeat=4):
        if not _invertible(rows):
            continue
        invertible += 1
        image = frozenset(_row_map(rows, d) for d in target)
        c = translates.get(image)
        if c is not None:
            found.append((rows, c))
    return BiplaneScan(invertible, len(found), tuple(found))


def _affine_group(maps) -> PermGroup:
    translations = [Permutation(tuple(x ^ (1 << i) for x in range(16))) for i in (3, 2, 1, 0)]
    gens = list(translations)
    group = PermGroup(16, gens)
    for rows, c in maps:
        g = Permutation(tuple(_row_map(rows, x) ^ c for x in range(16)))
        # drop maps already generated; the generated group is unchanged
        if g not in group:
            gens.append(g)
            group = PermGroup(16, gens)
    return group


def _span_f2(basis: tuple[tuple[int, ...], ...]) -> frozenset[int]:
    elems = {0}
    for row in basis:
        b = row[0] << 3 | row[1] << 2 | row[2] << 1 | row[3]
        elems |= {e ^ b for e in elems}
    return frozenset(elems)


def biplane16_blocks() -> IncidenceStructure:
    dset = quadric_difference_set()
    return IncidenceStructure(16, tuple(tuple(sorted(d ^ g for d in dset)) for g in range(16)))


def biplane16_full_group() -> PermGroup:
    """Translations plus every affine ``x -> xA + c`` with ``D A = D + c``."""
    return _affine_group(scan_difference_set_stabilizer(quadric_difference_set()).affine_maps)


def biplane16() -> tuple[IncidenceStructure, PermGroup]:
    """The quadric biplane with a flag-transitive, point-imprimitive group.

    The full affine group found by the GL(4,2) scan is primitive, so the
    group returned is the subgroup whose linear part fixes a subspace ``W``;
    ``W`` is the first proper nonzero subspace in echelon order for which
    that subgroup is flag-transitive.  The cosets of ``W`` are then blocks
    of imprimitivity.
    """
    D = biplane16_blocks()
    maps = scan_difference_set_stabilizer(quadric_difference_set()).affine_maps
    F = field(2)
    for dim in (1, 2, 3):
        for W in enumerate_subspaces(4, dim, F):
            elems = _span_f2(W.basis)
            kept = [(rows, c) for rows, c in maps if frozenset(_row_map(rows, e) for e in elems) == elems]
            group = _affine_group(kept)
            if is_flag_transitive(group, D):
                return D, group
    raise AssertionError("no flag-transitive subspace stabiliser")
