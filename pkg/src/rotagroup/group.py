"""Orbits, double transitivity and a deterministic Schreier–Sims BSGS.

Internally the engine works on raw image arrays; :class:`Permutation` is
used at the API boundary.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .perm import Permutation, restrict, sign
from .word import Word

__all__ = [
    "BSGS",
    "NonMemberError",
    "double_transitivity_witness",
    "enumerate_group",
    "is_doubly_transitive_on",
    "orbit_transversal",
    "orbits",
    "parity_signature",
    "schreier_sims",
    "stabilizer_generators",
]


def _degree(gens: Sequence[Permutation], n: int | None) -> int:
    if gens:
        d = gens[0].degree
        if any(g.degree != d for g in gens):
            raise ValueError("generators have different degrees")
        return d
    if n is None:
        raise ValueError("degree required when there are no generators")
    return n


def orbits(gens: Sequence[Permutation], n: int | None = None) -> list[frozenset[int]]:
    """Orbits of ⟨gens⟩, ordered by their smallest point."""
    n = _degree(gens, n)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for x, y in enumerate(g.images.tolist()):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
    groups: dict[int, set[int]] = {}
    for x in range(n):
        groups.setdefault(find(x), set()).add(x)
    return [frozenset(groups[r]) for r in sorted(groups)]


def orbit_transversal(gens: Sequence[Permutation], point: int) -> dict[int, Permutation]:
    """BFS Schreier tree: maps each orbit point q to an element sending point to q."""
    n = gens[0].degree
    tree = {point: np.arange(n, dtype=np.intp)}
    queue = deque([point])
    arrays = [g.images for g in gens]
    while queue:
        p = queue.popleft()
        u = tree[p]
        for s in arrays:
            q = int(s[p])
            if q not in tree:
                tree[q] = s[u]
                queue.append(q)
    return {q: Permutation._wrap(u) for q, u in tree.items()}


def _inv(a: np.ndarray) -> np.ndarray:
    b = np.empty_like(a)
    b[a] = np.arange(a.size, dtype=np.intp)
    return b


def stabilizer_generators(gens: Sequence[Permutation], point: int) -> list[Permutation]:
    """Schreier generators of the point stabilizer, identity and duplicates dropped."""
    tree = {q: u.images for q, u in orbit_transversal(gens, point).items()}
    out: dict[bytes, Permutation] = {}
    ident = np.arange(gens[0].degree, dtype=np.intp)
    for p, u in tree.items():
        for g in gens:
            s = g.images
            h = _inv(tree[int(s[p])])[s[u]]
            if not np.array_equal(h, ident):
                out.setdefault(h.tobytes(), Permutation._wrap(h))
    return list(out.values())


def _check_invariant(gens: Sequence[Permutation], points: Iterable[int]) -> frozenset[int]:
    pts = frozenset(points)
    idx = np.fromiter(pts, dtype=np.intp)
    for g in gens:
        if not pts.issuperset(g.images[idx].tolist()):
            raise ValueError("point set is not invariant under the generators")
    return pts


def is_doubly_transitive_on(gens: Sequence[Permutation], orbit: Iterable[int]) -> bool:
    O = _check_invariant(gens, orbit)
    x = min(O)
    if set(orbit_transversal(gens, x)) != O:
        return False
    rest = O - {x}
    if len(rest) <= 1:
        return True
    stab = stabilizer_generators(gens, x)
    if not stab:
        return False
    y = min(rest)
    return set(orbit_transversal(stab, y)) == rest


def double_transitivity_witness(
    gens: Sequence[Permutation], orbit: Iterable[int], src: tuple[int, int], dst: tuple[int, int]
) -> Permutation:
    """A member of ⟨gens⟩ sending src[0]→dst[0] and src[1]→dst[1]."""
    (a, b), (c, d) = src, dst
    if a == b or c == d:
        raise ValueError("pairs must consist of distinct points")
    O = _check_invariant(gens, orbit)
    if not {a, b, c, d} <= O:
        raise ValueError("pair points must lie in the orbit")
    x = min(O)
    tree = orbit_transversal(gens, x)
    stab = stabilizer_generators(gens, x)
    # u: a -> c, then t s t⁻¹ with t: x -> c and s in stab(x) fixes c
    u = tree[c] * ~tree[a]
    t = tree[c]
    stab_tree = orbit_transversal(stab, (~t)(u(b))) if stab else {(~t)(u(b)): Permutation.identity(len(t))}
    target = (~t)(d)
    if target not in stab_tree:
        raise ValueError("group is not doubly transitive on this orbit")
    # stab_tree[q] maps the start point to q; we need start -> target
    s = stab_tree[target]
    return t * s * ~t * u


def parity_signature(gens: Sequence[Permutation], orbit_list: Sequence[Iterable[int]]) -> list[tuple[int, ...]]:
    """Per generator, the sign of its restriction to each orbit."""
    sets = [_check_invariant(gens, O) for O in orbit_list]
    return [tuple(sign(restrict(g, O)) for O in sets) for g in gens]


def enumerate_group(gens: Sequence[Permutation], limit: int = 10_000) -> set[Permutation]:
    """All elements by breadth-first search of the Cayley graph."""
    n = _degree(gens, None)
    ident = Permutation.identity(n)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g * x
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > limit:
                        raise ValueError(f"group larger than {limit} elements")
        frontier = nxt
    return seen


class NonMemberError(ValueError):
    """Sifting failed: ``level`` is the first base level whose orbit misses the image."""

    def __init__(self, level: int, residue: Permutation):
        super().__init__(f"not a member: sifting fails at base level {level}")
        self.level = level
        self.residue = residue


@dataclass
class _Level:
    point: int
    # orbit point -> (u, u⁻¹) with u(point) == orbit point
    trans: dict[int, tuple[np.ndarray, np.ndarray]]
    # orbit point -> (source orbit point, strong generator index); None at the root
    tree: dict[int, tuple[int, int] | None]


class BSGS:
    """Base and strong generating set with Schreier-tree transversals.

    Transversal words are spelled over the original generators; they are
    built lazily and share sub-words, so their expanded length may be huge
    even though evaluation is cheap.
    """

    def __init__(self, degree: int, gens: Sequence[Permutation]):
        self.degree = degree
        self.gens = tuple(gens)
        self.base: list[int] = []
        self.strong: list[np.ndarray] = []
        self.strong_words: list[Word] = []
        self.levels: list[_Level] = []
        self._trans_words: list[dict[int, Word]] = []

    # construction ------------------------------------------------------

    def _fixes_prefix(self, s: np.ndarray, i: int) -> bool:
        return all(s[b] == b for b in self.base[:i])

    def _level_gens(self, i: int) -> list[int]:
        return [j for j, s in enumerate(self.strong) if self._fixes_prefix(s, i)]

    def _extend(self, i: int) -> None:
        """Grow level i's orbit under its current generators.

        Existing representatives are kept, so Schreier generators already
        checked against them stay valid.
        """
        if i == len(self.levels):
            b = self.base[i]
            ident = np.arange(self.degree, dtype=np.intp)
            self.levels.append(_Level(b, {b: (ident, ident)}, {b: None}))
            self._trans_words.append({})
        level = self.levels[i]
        trans, tree = level.trans, level.tree
        queue = deque(trans)
        gi = self._level_gens(i)
        while queue:
            p = queue.popleft()
            u = trans[p][0]
            for j in gi:
                s = self.strong[j]
                q = int(s[p])
                if q not in trans:
                    nu = s[u]
                    trans[q] = (nu, _inv(nu))
                    tree[q] = (p, j)
                    queue.append(q)

    def _sift_arr(self, g: np.ndarray, start: int = 0) -> tuple[np.ndarray, int, list[int]]:
        path = []
        for i in range(start, len(self.base)):
            lv = self.levels[i]
            q = int(g[lv.point])
            t = lv.trans.get(q)
            if t is None:
                return g, i, path
            path.append(q)
            g = t[1][g]
        return g, len(self.base), path

    def _add_strong(self, s: np.ndarray, word: Word) -> None:
        self.strong.append(s)
        self.strong_words.append(word)

    # words -----------------------------------------------------------

    def transversal_word(self, i: int, q: int) -> Word:
        cache = self._trans_words[i]
        if q in cache:
            return cache[q]
        lv = self.levels[i]
        chain = []
        x = q
        while x not in cache and lv.tree[x] is not None:
            chain.append(x)
            x = lv.tree[x][0]
        w = cache.get(x, Word())
        cache[x] = w
        for y in reversed(chain):
            p, j = lv.tree[y]
            w = self.strong_words[j] * cache[p]
            cache[y] = w
        return cache[q]

    # queries ---------------------------------------------------------

    def order(self) -> int:
        return math.prod(len(lv.trans) for lv in self.levels)

    def transversal_sizes(self) -> list[int]:
        return [len(lv.trans) for lv in self.levels]

    def strong_generators(self) -> list[Permutation]:
        return [Permutation._wrap(s.copy()) for s in self.strong]

    def sift(self, p: Permutation) -> tuple[Permutation, int]:
        if p.degree != self.degree:
            raise ValueError("degree mismatch")
        g, level, _ = self._sift_arr(p.images)
        return Permutation._wrap(np.array(g)), level

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise ValueError("degree mismatch")
        g, _, _ = self._sift_arr(p.images)
        return bool(np.array_equal(g, np.arange(self.degree)))

    def __contains__(self, p: Permutation) -> bool:
        return self.contains(p)

    def sift_with_word(self, p: Permutation) -> Word:
        """Word over the original generators evaluating to p; raises NonMemberError."""
        g, level, path = self._sift_arr(p.images)
        if not np.array_equal(g, np.arange(self.degree)):
            raise NonMemberError(level, Permutation._wrap(np.array(g)))
        # p = u_0 u_1 ... u_r
        return Word.product(self.transversal_word(i, q) for i, q in enumerate(path))

    def random_element(self, rng: random.Random) -> Permutation:
        """Uniformly random member: one random coset representative per level."""
        g = np.arange(self.degree, dtype=np.intp)
        for lv in reversed(self.levels):
            q = rng.choice(sorted(lv.trans))
            g = lv.trans[q][0][g]
        return Permutation._wrap(g)


def schreier_sims(gens: Sequence[Permutation]) -> BSGS:
    """Deterministic Schreier–Sims; base points are chosen as smallest moved points."""
    if not gens:
        raise ValueError("schreier_sims needs at least one generator")
    n = _degree(gens, None)
    ident = np.arange(n, dtype=np.intp)
    b = BSGS(n, gens)

    def first_moved(a: np.ndarray) -> int | None:
        nz = np.flatnonzero(a != ident)
        return int(nz[0]) if nz.size else None

    for idx, g in enumerate(gens):
        if first_moved(g.images) is not None:
            b._add_strong(np.array(g.images), Word.letter(idx))
    for s in b.strong:
        if b._fixes_prefix(s, len(b.base)):
            b.base.append(first_moved(s))
    for i in range(len(b.base)):
        b._extend(i)

    checked: list[set[tuple[int, int]]] = [set() for _ in b.base]
    seen: list[set[bytes]] = [set() for _ in b.base]
    i = len(b.base) - 1
    while i >= 0:
        added = False
        lv = b.levels[i]
        gi = b._level_gens(i)
        for p in list(lv.trans):
            u = lv.trans[p][0]
            for j in gi:
                if (p, j) in checked[i]:
                    continue
                checked[i].add((p, j))
                s = b.strong[j]
                q = int(s[p])
                g = lv.trans[q][1][s[u]]
                if np.array_equal(g, ident):
                    continue
                key = g.tobytes()
                if key in seen[i]:
                    continue
                seen[i].add(key)
                h, lvl, path = b._sift_arr(g, i + 1)
                if np.array_equal(h, ident):
                    continue
                # residue word: sifted Schreier generator u_q⁻¹ s u_p
                w = b.transversal_word(i, q).inverse() * b.strong_words[j] * b.transversal_word(i, p)
                for l, x in enumerate(path, start=i + 1):
                    w = b.transversal_word(l, x).inverse() * w
                if lvl == len(b.base):
                    b.base.append(first_moved(h))
                    checked.append(set())
                    seen.append(set())
                b._add_strong(np.array(h), w)
                for l in range(i + 1, lvl + 1):
                    b._extend(l)
                i = lvl
                added = True
                break
            if added:
                break
        if not added:
            i -= 1
    return b
