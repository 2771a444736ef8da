"""Plain-text design and group files.

Design file::

    v 7
    0 1 2
    ...

Group file::

    degree 7
    1 2 0 3 4 5 6
    ...

One block or permutation per line; ``#`` starts a comment.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterator

from .design import IncidenceStructure
from .permgroup import Permutation, PermGroup


class FormatError(ValueError):
    def __init__(self, path: str, line: int, message: str):
        super().__init__(f"{path}:{line}: {message}")
        self.path, self.line = path, line


def _content_lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield number, body.split()


def _ints(path: str, number: int, fields: list[str]) -> list[int]:
    try:
        return [int(x) for x in fields]
    except ValueError:
        raise FormatError(path, number, f"expected integers, got {' '.join(fields)!r}") from None


def _header(path: str, lines: Iterator[tuple[int, list[str]]], key: str) -> int:
    try:
        number, fields = next(lines)
    except StopIteration:
        raise FormatError(path, 1, f"missing '{key} <int>' header") from None
    if len(fields) != 2 or fields[0] != key:
        raise FormatError(path, number, f"expected '{key} <int>', got {' '.join(fields)!r}")
    (value,) = _ints(path, number, fields[1:])
    if value < 1:
        raise FormatError(path, number, f"{key} must be positive")
    return value


def parse_design(text: str, path: str = "<design>") -> IncidenceStructure:
    lines = _content_lines(text)
    v = _header(path, lines, "v")
    blocks = []
    for number, fields in lines:
        blk = _ints(path, number, fields)
        if any(x < 0 or x >= v for x in blk):
            raise FormatError(path, number, f"point outside 0..{v - 1}")
        if blk != sorted(set(blk)):
            raise FormatError(path, number, "block must list distinct points in ascending order")
        blocks.append(tuple(blk))
    return IncidenceStructure(v, tuple(blocks))


def format_design(D: IncidenceStructure) -> str:
    return "".join([f"v {D.v}\n"] + [" ".join(map(str, b)) + "\n" for b in D.blocks])


def parse_group(text: str, path: str = "<group>") -> PermGroup:
    lines = _content_lines(text)
    degree = _header(path, lines, "degree")
    gens = []
    for number, fields in lines:
        images = _ints(path, number, fields)
        if len(images) != degree:
            raise FormatError(path, number, f"expected {degree} images, got {len(images)}")
        try:
            gens.append(Permutation(tuple(images)))
        except ValueError as exc:
            raise FormatError(path, number, str(exc)) from None
    return PermGroup(degree, gens)


def format_group(G: PermGroup) -> str:
    return "".join([f"degree {G.degree}\n"] + [" ".join(map(str, g.images)) + "\n" for g in G.generators])


def read_design(path: str | Path) -> IncidenceStructure:
    return parse_design(Path(path).read_text(), str(path))


def read_group(path: str | Path) -> PermGroup:
    return parse_group(Path(path).read_text(), str(path))


def write_design(path: str | Path, D: IncidenceStructure) -> None:
    Path(path).write_text(format_design(D))


def write_group(path: str | Path, G: PermGroup) -> None:
    Path(path).write_text(format_group(G))
