"""Permutation actions of linear groups on projective objects.

Objects are canonical: subspaces by their echelon basis, flags as pairs
``(U, W)`` of a point ``U`` inside a hyperplane ``W``.  Object lists are
sorted, so the index of an object (its point label) is reproducible.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Hashable, Sequence, Union

from ..permgroup import BudgetExceeded, Permutation, PermGroup, orbit_budget
from .field import GF
from .linalg import Matrix, ProjSubspace, echelon_forms, frobenius_matrix, identity, mat_mul, transpose
from .orders import gaussian_binomial

POINTS = "points"
FLAGS = "flags"
# ("subspaces", i) selects the i-spaces
ObjectKind = Union[str, tuple[str, int]]

Flag = tuple[ProjSubspace, ProjSubspace]


def _dim_of(n: int, kind: ObjectKind) -> int | None:
    if kind == POINTS:
        return 1
    if isinstance(kind, tuple) and kind[0] == "subspaces":
        return kind[1]
    return None


def enumerate_subspaces(n: int, i: int, F: GF, budget: int | None = None) -> list[ProjSubspace]:
    """All i-spaces of GF(q)^n, each once, sorted by echelon basis."""
    if not 0 <= i <= n:
        raise ValueError(f"need 0 <= i <= n, got n={n}, i={i}")
    cap = orbit_budget() if budget is None else budget
    if gaussian_binomial(n, i, F.q) > cap:
        raise BudgetExceeded(f"{gaussian_binomial(n, i, F.q)} subspaces exceed budget {cap}")
    return sorted(ProjSubspace(m, n) for m in echelon_forms(F, n, i))


def enumerate_flags(n: int, F: GF, budget: int | None = None) -> list[Flag]:
    """Incident (point, hyperplane) pairs, sorted lexicographically."""
    points = enumerate_subspaces(n, 1, F, budget)
    hyperplanes = enumerate_subspaces(n, n - 1, F, budget)
    out = []
    for W in hyperplanes:
        normal = W.perp(F).basis[0]
        for U in points:
            if _dot(F, U.basis[0], normal) == 0:
                out.append((U, W))
    return sorted(out)


def _dot(F: GF, x: Sequence[int], y: Sequence[int]) -> int:
    s = 0
    for a, b in zip(x, y):
        if a and b:
            s = F.add(s, F.mul(a, b))
    return s


@lru_cache(maxsize=None)
def objects(n: int, F: GF, kind: ObjectKind) -> tuple:
    if kind == FLAGS:
        return tuple(enumerate_flags(n, F))
    dim = _dim_of(n, kind)
    if dim is None:
        raise ValueError(f"unknown object kind {kind!r}")
    return tuple(enumerate_subspaces(n, dim, F))


def _image(F: GF, obj, g: Matrix):
    if isinstance(obj, tuple):
        return obj[0].image(F, g), obj[1].image(F, g)
    return obj.image(F, g)


def _perm_from_map(objs: Sequence[Hashable], mapping) -> Permutation:
    index = {o: i for i, o in enumerate(objs)}
    return Permutation(tuple(index[mapping(o)] for o in objs))


def sl_generators(n: int, F: GF) -> list[Matrix]:
    """Transvections ``I + E_12`` (and ``I + w E_12`` for a primitive ``w`` when
    ``f > 1``) together with a signed cyclic permutation matrix of determinant 1."""
    def transvection(a: int) -> Matrix:
        m = [list(r) for r in identity(n)]
        m[0][1] = a
        return tuple(tuple(r) for r in m)

    cyc = [[0] * n for _ in range(n)]
    for i in range(n):
        cyc[i][(i + 1) % n] = 1
    if n % 2 == 0:
        cyc[n - 1][0] = F.neg(1)
    gens = [transvection(1)]
    if F.f > 1:
        gens.append(transvection(F.primitive_element))
    gens.append(tuple(tuple(r) for r in cyc))
    return gens


def matrix_action(matrices: Sequence[Matrix], n: int, F: GF, kind: ObjectKind) -> PermGroup:
    """Permutation group induced by ``matrices`` on the chosen object set."""
    objs = objects(n, F, kind)
    gens = [_perm_from_map(objs, lambda o, g=g: _image(F, o, g)) for g in matrices]
    return PermGroup(len(objs), gens)


def psl_action(n: int, F: GF, kind: ObjectKind = POINTS) -> PermGroup:
    """PSL(n, q) acting on points, i-spaces or point-hyperplane flags."""
    return matrix_action(sl_generators(n, F), n, F, kind)


def frobenius_permutation(n: int, F: GF, kind: ObjectKind) -> Permutation:
    objs = objects(n, F, kind)

    def frob(o):
        if isinstance(o, tuple):
            return tuple(ProjSubspace.span(F, frobenius_matrix(F, s.basis), n) for s in o)
        return ProjSubspace.span(F, frobenius_matrix(F, o.basis), n)

    return _perm_from_map(objs, frob)


def duality_permutation(n: int, F: GF) -> Permutation:
    """The graph automorphism on flags: ``(U, W) -> (W^perp, U^perp)``."""
    objs = objects(n, F, FLAGS)
    return _perm_from_map(objs, lambda o: (o[1].perp(F), o[0].perp(F)))


def extend_to_pgammal(
    group: PermGroup, n: int, F: GF, kind: ObjectKind = POINTS, duality: bool = False
) -> PermGroup:
    """Add the Frobenius automorphism and, on flags, optionally the duality."""
    extra = []
    if F.f > 1:
        extra.append(frobenius_permutation(n, F, kind))
    if duality:
        if kind != FLAGS:
            raise ValueError("the duality only acts on point-hyperplane flags")
        extra.append(duality_permutation(n, F))
    if group.degree != len(objects(n, F, kind)):
        raise ValueError("group degree does not match the object set")
    return PermGroup(group.degree, list(group.generators) + extra)


def _canonical_form(F: GF, m: Matrix) -> Matrix:
    """Scale a nonzero matrix so its first nonzero entry is 1."""
    lead = next(x for row in m for x in row if x)
    inv = F.inv(lead)
    return tuple(tuple(F.mul(inv, x) for x in row) for row in m)


def standard_alternating_form(n: int) -> Matrix:
    """Gram matrix of ``sum_i (x_{2i} y_{2i+1} - x_{2i+1} y_{2i})`` in characteristic-free form."""
    if n % 2:
        raise ValueError("alternating forms need even n")
    m = [[0] * n for _ in range(n)]
    for i in range(0, n, 2):
        m[i][i + 1] = 1
        m[i + 1][i] = -1
    return tuple(tuple(r) for r in m)


def form_action(
    matrices: Sequence[Matrix], n: int, F: GF, form: Matrix, budget: int | None = None
) -> tuple[PermGroup, list[Matrix]]:
    """Action ``J -> g^T J g`` on the orbit of a bilinear form, up to scalars.

    The point stabiliser is the stabiliser of the form, so this realises the
    coset action on that subgroup.
    """
    start = _canonical_form(F, tuple(tuple(x % F.p for x in r) for r in form))
    cap = orbit_budget() if budget is None else budget

    def act(J: Matrix, g: Matrix) -> Matrix:
        return _canonical_form(F, mat_mul(F, mat_mul(F, transpose(g), J), g))

    forms = [start]
    seen = {start}
    i = 0
    while i < len(forms):
        for g in matrices:
            J = act(forms[i], g)
            if J not in seen:
                if len(seen) >= cap:
                    raise BudgetExceeded("form orbit exceeds budget")
                seen.add(J)
                forms.append(J)
        i += 1
    forms.sort()
    gens = [_perm_from_map(forms, lambda J, g=g: act(J, g)) for g in matrices]
    return PermGroup(len(forms), gens), forms
