"""Admissible figures built from overlapping k×(k+1) and (k+1)×k rectangles.

Coordinates are 1-based ``(row, col)`` with row 1 at the top.  Tiles are
indexed 0..n-1 in row-major order of their cells.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable

import numpy as np

from .perm import Permutation

__all__ = [
    "AdmissibilityError",
    "Figure",
    "FigureSpec",
    "RectPlacement",
    "RotationSite",
    "build_figure",
    "checkerboard_orbit_sets",
    "generators",
    "load_figure",
    "parse_figure",
    "rectangle",
    "rotation_permutation",
]

Cell = tuple[int, int]


class AdmissibilityError(ValueError):
    """A placement does not overlap the figure built so far as required."""

    def __init__(self, index: int, message: str):
        super().__init__(f"placement {index}: {message}")
        self.index = index


@dataclass(frozen=True)
class RectPlacement:
    row: int
    col: int
    orientation: str = "H"  # H: k rows × (k+1) cols, V: (k+1) rows × k cols

    def __post_init__(self):
        if self.row < 1 or self.col < 1:
            raise ValueError("rectangle anchors are 1-based")
        if self.orientation not in ("H", "V"):
            raise ValueError(f"orientation must be H or V, got {self.orientation!r}")

    def cells(self, k: int) -> set[Cell]:
        h, w = (k, k + 1) if self.orientation == "H" else (k + 1, k)
        return {(self.row + i, self.col + j) for i in range(h) for j in range(w)}


@dataclass(frozen=True)
class FigureSpec:
    k: int
    placements: tuple[RectPlacement, ...]

    def __post_init__(self):
        object.__setattr__(self, "placements", tuple(self.placements))

    def text(self) -> str:
        lines = [f"k={self.k}"]
        lines += [f"rect {p.row} {p.col} {p.orientation}" for p in self.placements]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True, order=True)
class RotationSite:
    """Top-left cell of a k×k block lying inside the figure."""

    row: int
    col: int

    @property
    def anchor(self) -> Cell:
        return (self.row, self.col)


@dataclass(frozen=True)
class Figure:
    k: int
    cells: tuple[Cell, ...]  # row-major; position = tile index
    sites: tuple[RotationSite, ...]
    spec: FigureSpec | None = field(default=None, compare=False)

    @cached_property
    def tile_index(self) -> dict[Cell, int]:
        return {c: i for i, c in enumerate(self.cells)}

    @property
    def n(self) -> int:
        return len(self.cells)

    @property
    def m(self) -> int:
        """Number of cells with row + col even."""
        return sum(1 for r, c in self.cells if (r + c) % 2 == 0)

    def index(self, cell: Cell) -> int:
        return self.tile_index[tuple(cell)]

    def coord(self, tile: int) -> Cell:
        return self.cells[tile]

    def site_index(self, anchor: Cell) -> int:
        return self.sites.index(RotationSite(*anchor))

    def cycle_perm(self, *cycles: Iterable[Cell]) -> Permutation:
        """Permutation from cycles written in cell coordinates."""
        return Permutation.from_cycles(self.n, [[self.index(c) for c in cyc] for cyc in cycles])

    @cached_property
    def generators(self) -> tuple[Permutation, ...]:
        return tuple(rotation_permutation(self, s) for s in self.sites)

    def render(self, checkerboard: bool = False) -> str:
        rows = [r for r, _ in self.cells]
        cols = [c for _, c in self.cells]
        occupied = set(self.cells)
        lines = []
        for r in range(1, max(rows) + 1):
            line = []
            for c in range(1, max(cols) + 1):
                if (r, c) not in occupied:
                    line.append(" " if checkerboard else ".")
                elif checkerboard:
                    line.append("B" if (r + c) % 2 == 0 else "W")
                else:
                    line.append("#")
            lines.append("".join(line).rstrip())
        return "\n".join(lines)


def _has_adjacent_pair(cells: set[Cell]) -> bool:
    return any((r, c + 1) in cells or (r + 1, c) in cells for r, c in cells)


def build_figure(spec: FigureSpec) -> Figure:
    k = spec.k
    if k < 2:
        raise ValueError(f"block size k must be at least 2, got {k}")
    if not spec.placements:
        raise ValueError("a figure needs at least one rectangle")
    union: set[Cell] = set()
    for idx, placement in enumerate(spec.placements):
        rect = placement.cells(k)
        if idx:
            overlap = rect & union
            if k % 2 == 0 and not overlap:
                raise AdmissibilityError(idx, "rectangle does not overlap the figure")
            if k % 2 == 1 and not _has_adjacent_pair(overlap):
                raise AdmissibilityError(
                    idx, "for odd k the overlap must contain two edge-adjacent tiles"
                )
        union |= rect
    cells = tuple(sorted(union))
    sites = tuple(
        RotationSite(r, c)
        for r, c in cells
        if all((r + i, c + j) in union for i in range(k) for j in range(k))
    )
    return Figure(k, cells, sites, spec)


def rectangle(k: int, orientation: str = "H") -> Figure:
    return build_figure(FigureSpec(k, (RectPlacement(1, 1, orientation),)))


def rotation_permutation(f: Figure, s: RotationSite) -> Permutation:
    """Clockwise quarter turn of the k×k block at site s."""
    if s not in f.sites:
        raise ValueError(f"site {s.anchor} is not a rotation site of this figure")
    k, r0, c0 = f.k, s.row, s.col
    a = np.arange(f.n, dtype=np.intp)
    idx = f.tile_index
    for i in range(r0, r0 + k):
        for j in range(c0, c0 + k):
            a[idx[(i, j)]] = idx[(r0 + (j - c0), c0 + (k - 1) - (i - r0))]
    return Permutation(a, check=False)


def generators(f: Figure) -> list[Permutation]:
    return list(f.generators)


def checkerboard_orbit_sets(f: Figure) -> tuple[frozenset[int], frozenset[int]]:
    """Tiles on cells with row + col even, and the rest."""
    even = frozenset(i for i, (r, c) in enumerate(f.cells) if (r + c) % 2 == 0)
    return even, frozenset(range(f.n)) - even


def parse_figure(text: str) -> FigureSpec:
    k = None
    placements = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if k is None:
            key, _, value = line.partition("=")
            if key.strip() != "k" or not value.strip().lstrip("-").isdigit():
                raise ValueError(f"line {lineno}: expected 'k=<int>', got {raw!r}")
            k = int(value)
            continue
        parts = line.split()
        if len(parts) != 4 or parts[0] != "rect":
            raise ValueError(f"line {lineno}: expected 'rect <row> <col> <H|V>', got {raw!r}")
        try:
            placements.append(RectPlacement(int(parts[1]), int(parts[2]), parts[3].upper()))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if k is None:
        raise ValueError("figure file has no 'k=' line")
    return FigureSpec(k, tuple(placements))


def load_figure(path: str | Path) -> Figure:
    return build_figure(parse_figure(Path(path).read_text(encoding="utf-8")))
