"""Solvability and solving for scrambled arrangements.

Conventions
-----------
``placement[cell] = tile`` where tiles are named by their home cell index.
The arrangement-as-permutation ``pos = placement⁻¹`` sends each tile to the
cell it occupies.  A rotation ``g`` turns ``pos`` into ``g ∘ pos``, so
applying a word ``w`` gives ``eval(w) ∘ pos`` (rightmost letter acts first).
An arrangement is solved by ``w`` exactly when ``eval(w) = pos⁻¹``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from .classifier import BSGS_LIMIT, GroupClass, predict
from .figure import Figure
from .group import BSGS, orbits, schreier_sims
from .perm import Permutation, restrict, sign
from .three_cycle import figure_three_cycles
from .word import Letter, Word, evaluate

__all__ = [
    "Arrangement",
    "SolvabilityVerdict",
    "UnsolvableError",
    "apply_word",
    "format_state",
    "is_solvable",
    "load_state",
    "parse_state",
    "solve",
]


@dataclass(frozen=True)
class Arrangement:
    placement: tuple[int, ...]  # placement[cell] = tile

    def __post_init__(self):
        p = tuple(int(x) for x in self.placement)
        if sorted(p) != list(range(len(p))):
            raise ValueError("placement is not a bijection on 0..n-1")
        object.__setattr__(self, "placement", p)

    @classmethod
    def solved(cls, n: int) -> Arrangement:
        return cls(tuple(range(n)))

    @classmethod
    def from_positions(cls, pos: Permutation) -> Arrangement:
        return cls(tuple((~pos).images.tolist()))

    @property
    def n(self) -> int:
        return len(self.placement)

    @property
    def positions(self) -> Permutation:
        return ~Permutation(self.placement)

    def is_solved(self) -> bool:
        return self.placement == tuple(range(self.n))


@dataclass
class SolvabilityVerdict:
    solvable: bool
    reason: str | None = None  # orbit-violation | parity-violation | non-member
    word: Word | None = None

    def text(self) -> str:
        if self.solvable:
            return "solvable"
        return f"not solvable: {self.reason}"


class UnsolvableError(ValueError):
    def __init__(self, verdict: SolvabilityVerdict):
        super().__init__(verdict.text())
        self.verdict = verdict


@dataclass
class _Context:
    figure: Figure
    cls: GroupClass
    orbits: list[list[int]]
    signs: dict[tuple[int, ...], Word]  # reachable parity signatures
    bsgs: BSGS | None


def _signature(p: Permutation, orbit_list) -> tuple[int, ...]:
    return tuple(sign(restrict(p, O)) for O in orbit_list)


@lru_cache(maxsize=32)
def _context(f: Figure) -> _Context:
    gens = f.generators
    orbit_list = [sorted(O) for O in orbits(list(gens), f.n)]
    gsig = [_signature(g, orbit_list) for g in gens]
    # shortest word for every reachable signature
    start = tuple(1 for _ in orbit_list)
    signs = {start: Word()}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for i, gs in enumerate(gsig):
            t = tuple(a * b for a, b in zip(s, gs))
            if t not in signs:
                signs[t] = Word.letter(i) * signs[s]
                queue.append(t)
    cls = predict(f)
    bsgs = schreier_sims(list(gens)) if (f.n <= BSGS_LIMIT or cls.exceptional) else None
    return _Context(f, cls, orbit_list, signs, bsgs)


def _check_degree(f: Figure, a: Arrangement) -> None:
    if a.n != f.n:
        raise ValueError(f"arrangement has {a.n} tiles, figure has {f.n}")


def is_solvable(f: Figure, a: Arrangement) -> SolvabilityVerdict:
    _check_degree(f, a)
    ctx = _context(f)
    pos = a.positions
    for O in ctx.orbits:
        if set(pos.images[O].tolist()) != set(O):
            return SolvabilityVerdict(False, "orbit-violation")
    if _signature(pos, ctx.orbits) not in ctx.signs:
        return SolvabilityVerdict(False, "parity-violation")
    if ctx.bsgs is not None and not ctx.bsgs.contains(pos):
        return SolvabilityVerdict(False, "non-member")
    # larger figures: orbits and parity decide, the group containing every
    # even permutation of each orbit
    return SolvabilityVerdict(True)


def apply_word(f: Figure, a: Arrangement, w: Word) -> Arrangement:
    _check_degree(f, a)
    p = evaluate(w, f.generators) if w else Permutation.identity(f.n)
    return Arrangement.from_positions(p * a.positions)


# words for members --------------------------------------------------


def _strip_to_three_cycles(y: np.ndarray, orbit: list[int]) -> list[tuple[int, int, int]]:
    """3-cycles (b, a, x) with c_r ∘ … ∘ c_1 ∘ y fixing the orbit pointwise.

    (b, a, x) denotes b→a→x→b; y must be even on the orbit.
    """
    y = y.copy()
    out = []
    for i, a in enumerate(orbit[:-2]):
        b = int(y[a])
        if b == a:
            continue
        x = next(x for x in orbit[i + 1:] if x != b)
        c = np.arange(len(y))
        c[b], c[a], c[x] = a, x, b
        y = c[y]
        out.append((b, a, x))
    if any(int(y[p]) != p for p in orbit):
        raise ValueError("permutation is odd on the orbit")
    return out


class _TripleMover:
    """Breadth-first search over ordered triples from a fixed start triple."""

    def __init__(self, gens: tuple[Permutation, ...], start: tuple[int, int, int]):
        n = gens[0].degree
        self.n = n
        imgs = [g.images for g in gens]
        size = n ** 3
        parent_gen = np.full(size, -1, dtype=np.int16)
        parent = np.full(size, -1, dtype=np.int64)
        a, b, c = start
        root = (a * n + b) * n + c
        parent_gen[root] = len(gens)  # marks the root
        seen = np.zeros(size, dtype=bool)
        seen[root] = True
        frontier = np.array([root], dtype=np.int64)
        while frontier.size:
            fa, rem = np.divmod(frontier, n * n)
            fb, fc = np.divmod(rem, n)
            nxt = []
            for gi, im in enumerate(imgs):
                code = (im[fa] * n + im[fb]) * n + im[fc]
                new = ~seen[code]
                code, src = code[new], frontier[new]
                code, first = np.unique(code, return_index=True)
                seen[code] = True
                parent[code] = src[first]
                parent_gen[code] = gi
                nxt.append(code)
            frontier = np.unique(np.concatenate(nxt)) if nxt else np.array([], dtype=np.int64)
        self.parent = parent
        self.parent_gen = parent_gen
        self.root = root
        self.ngens = len(gens)

    def word_to(self, triple: tuple[int, int, int]) -> Word:
        """Word t with t(start) = triple, pointwise."""
        a, b, c = triple
        code = (a * self.n + b) * self.n + c
        if self.parent_gen[code] < 0:
            raise ValueError(f"triple {triple} unreachable")
        letters = []
        while code != self.root:
            letters.append(Letter(int(self.parent_gen[code]), 1))
            code = int(self.parent[code])
        # the root-to-code path applies letters last-found last, i.e. leftmost
        return Word(letters)


@lru_cache(maxsize=32)
def _chain_tools(f: Figure):
    tools = {}
    certs = figure_three_cycles(f)
    for tag, cert in certs.items():
        cyc = cert.perm.cycles()[0]
        start = (cyc[0], cyc[1], cyc[2])  # start → cyc[1] → cyc[2]
        tools[tag] = (cert.word, _TripleMover(f.generators, start))
    return tools


def _orbit_tag(f: Figure, orbit: list[int]) -> str:
    if f.k % 2 == 0:
        return "all"
    r, c = f.coord(orbit[0])
    return "E" if (r + c) % 2 == 0 else "Ec"


def _member_word(f: Figure, h: Permutation) -> Word:
    """Word over the generators evaluating to the member h."""
    ctx = _context(f)
    if ctx.cls.exceptional:
        return ctx.bsgs.sift_with_word(h)
    z = ctx.signs[_signature(h, ctx.orbits)]
    zp = evaluate(z, f.generators) if z else Permutation.identity(f.n)
    y = (~zp) * h  # h = eval(z) ∘ y, y even on every orbit
    tools = _chain_tools(f)
    strips = []
    for O in ctx.orbits:
        c0, mover = tools[_orbit_tag(f, O)]
        for b, a, x in _strip_to_three_cycles(y.images, O):
            t = mover.word_to((b, a, x))
            # t c0 t⁻¹ is b→a→x→b
            strips.append(t * c0 * t.inverse())
    # c_r … c_1 y = id  ⇒  y = c_1⁻¹ … c_r⁻¹
    w = z
    for c in strips:
        w = w * c.inverse()
    return w


def solve(f: Figure, a: Arrangement) -> Word:
    verdict = is_solvable(f, a)
    if not verdict.solvable:
        raise UnsolvableError(verdict)
    if a.is_solved():
        return Word()
    return _member_word(f, ~a.positions)


# state files ---------------------------------------------------------


def parse_state(text: str) -> Arrangement:
    """``perm`` followed by n 1-based tile ids in row-major cell order."""
    tokens = [t for line in text.splitlines() for t in line.split("#", 1)[0].split()]
    if not tokens or tokens[0] != "perm":
        raise ValueError("state file must start with 'perm'")
    try:
        ids = [int(t) - 1 for t in tokens[1:]]
    except ValueError:
        raise ValueError("state entries must be integers") from None
    return Arrangement(tuple(ids))


def load_state(path: str | Path) -> Arrangement:
    return parse_state(Path(path).read_text(encoding="utf-8"))


def format_state(a: Arrangement) -> str:
    return "perm\n" + " ".join(str(t + 1) for t in a.placement) + "\n"
