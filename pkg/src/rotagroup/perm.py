"""Exact permutation algebra on the points 0..n-1.

Products follow function composition: ``compose(p, q)(x) == p(q(x))``, so a
product written left to right acts right to left.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

__all__ = [
    "CycleType",
    "Permutation",
    "commutator",
    "compose",
    "conjugate",
    "cycle_type",
    "element_order",
    "format_cycles",
    "identity",
    "inverse",
    "power",
    "restrict",
    "sign",
]


class Permutation:
    """Immutable bijection of ``{0, ..., n-1}`` stored as an image array."""

    __slots__ = ("_a", "_hash")

    def __init__(self, images: Sequence[int] | np.ndarray, *, check: bool = True):
        a = np.array(images, dtype=np.intp, copy=True)
        if a.ndim != 1 or a.size == 0:
            raise ValueError("a permutation needs a non-empty 1-d image array")
        if check:
            seen = np.zeros(a.size, dtype=bool)
            if a.min() < 0 or a.max() >= a.size:
                raise ValueError("images out of range")
            seen[a] = True
            if not seen.all():
                raise ValueError("images do not form a bijection")
        a.flags.writeable = False
        self._a = a
        self._hash: int | None = None

    @classmethod
    def _wrap(cls, a: np.ndarray) -> Permutation:
        # trusted internal constructor: a is a fresh bijection array
        p = object.__new__(cls)
        a.flags.writeable = False
        p._a = a
        p._hash = None
        return p

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls._wrap(np.arange(n, dtype=np.intp))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        """Each listed point maps to the next one, the last to the first."""
        a = np.arange(n, dtype=np.intp)
        touched: set[int] = set()
        for cyc in cycles:
            cyc = list(cyc)
            if touched.intersection(cyc) or len(set(cyc)) != len(cyc):
                raise ValueError("cycles must be disjoint")
            touched.update(cyc)
            for x, y in zip(cyc, cyc[1:] + cyc[:1]):
                a[x] = y
        return cls(a)

    @property
    def images(self) -> np.ndarray:
        return self._a

    @property
    def degree(self) -> int:
        return int(self._a.size)

    def __call__(self, x: int) -> int:
        return int(self._a[x])

    def __len__(self) -> int:
        return int(self._a.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._a.size == other._a.size and bool(np.array_equal(self._a, other._a))

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._a.tobytes())
        return self._hash

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __pow__(self, e: int) -> Permutation:
        return power(self, e)

    def __invert__(self) -> Permutation:
        return inverse(self)

    def __repr__(self) -> str:
        if self.degree <= 40:
            return f"Permutation({self._a.tolist()})"
        return f"Permutation(<degree {self.degree}>)"

    def is_identity(self) -> bool:
        return bool(np.array_equal(self._a, np.arange(self._a.size)))

    def support(self) -> list[int]:
        return np.nonzero(self._a != np.arange(self._a.size))[0].tolist()

    def cycles(self, *, include_fixed: bool = False) -> list[list[int]]:
        """Cycles in canonical form: each starts at its minimum point."""
        img = self._a.tolist()
        seen = bytearray(len(img))
        out = []
        for start in range(len(img)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = 1
            x = img[start]
            while x != start:
                cyc.append(x)
                seen[x] = 1
                x = img[x]
            if include_fixed or len(cyc) > 1:
                out.append(cyc)
        return out


@dataclass(frozen=True)
class CycleType:
    """Cycle decomposition summary, fixed points included as 1-cycles.

    ``cycles`` holds ``(representative, length)`` with the representative the
    minimum point of its cycle, ordered by representative.
    """

    degree: int
    cycles: tuple[tuple[int, int], ...]

    @property
    def lengths(self) -> list[int]:
        return sorted((length for _, length in self.cycles), reverse=True)

    def counts(self) -> Counter:
        return Counter(length for _, length in self.cycles)

    def __iter__(self):
        return iter(self.cycles)


def identity(n: int) -> Permutation:
    return Permutation.identity(n)


def _check_degrees(*ps: Permutation) -> None:
    n = ps[0].degree
    for p in ps[1:]:
        if p.degree != n:
            raise ValueError(f"degree mismatch: {n} vs {p.degree}")


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p∘q``: apply q first."""
    _check_degrees(p, q)
    return Permutation._wrap(p._a[q._a])


def inverse(p: Permutation) -> Permutation:
    a = np.empty_like(p._a)
    a[p._a] = np.arange(p._a.size, dtype=np.intp)
    return Permutation._wrap(a)


def conjugate(y: Permutation, x: Permutation) -> Permutation:
    """``y x y⁻¹``; if x sends a to b, the result sends y(a) to y(b)."""
    _check_degrees(y, x)
    a = np.empty_like(x._a)
    a[y._a] = y._a[x._a]
    return Permutation._wrap(a)


def commutator(g: Permutation, h: Permutation) -> Permutation:
    """``[g, h] = g h g⁻¹ h⁻¹``."""
    _check_degrees(g, h)
    return compose(compose(g, h), compose(inverse(g), inverse(h)))


def power(p: Permutation, e: int) -> Permutation:
    n = p.degree
    if e < 0:
        p, e = inverse(p), -e
    result = np.arange(n, dtype=np.intp)
    base = p._a
    while e:
        if e & 1:
            result = base[result]
        e >>= 1
        if e:
            base = base[base]
    return Permutation._wrap(np.ascontiguousarray(result))


def sign(p: Permutation) -> int:
    ncycles = len(p.cycles(include_fixed=True))
    return -1 if (p.degree - ncycles) % 2 else 1


def cycle_type(p: Permutation) -> CycleType:
    cycles = p.cycles(include_fixed=True)
    return CycleType(p.degree, tuple((c[0], len(c)) for c in cycles))


def element_order(p: Permutation) -> int:
    return math.lcm(*{len(c) for c in p.cycles(include_fixed=True)})


def restrict(p: Permutation, points: Iterable[int]) -> Permutation:
    """Action of p on an invariant point set, relabelled in increasing order."""
    pts = sorted(set(points))
    index = {x: i for i, x in enumerate(pts)}
    try:
        images = [index[p(x)] for x in pts]
    except KeyError:
        raise ValueError("point set is not invariant under the permutation") from None
    return Permutation(images, check=False)


def format_cycles(p: Permutation, label: Callable[[int], object] = str) -> str:
    """Cycle notation, e.g. ``((1,2),(2,2),(2,1),(1,1))`` for tile labels."""
    parts = []
    for cyc in p.cycles():
        parts.append("(" + ",".join(_fmt_label(label(x)) for x in cyc) + ")")
    return "".join(parts) if parts else "()"


def _fmt_label(v: object) -> str:
    if isinstance(v, tuple):
        return "(" + ",".join(str(c) for c in v) + ")"
    return str(v)
