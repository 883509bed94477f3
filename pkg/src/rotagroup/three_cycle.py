"""Explicit 3-cycle words and certificates for rotation puzzles."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .figure import Figure, FigureSpec, RectPlacement, build_figure, rectangle
from .identities import L, R, alpha_word
from .perm import Permutation, element_order, restrict
from .word import Letter, Word, evaluate

__all__ = [
    "EXTENSION_SHAPES",
    "ThreeCycleCertificate",
    "ThreeCycleError",
    "alpha_for",
    "certify",
    "even_three_cycle",
    "even_three_cycle_word",
    "extension_figure",
    "extension_three_cycles",
    "figure_three_cycles",
    "k3_rectangle_three_cycle",
    "mirror",
    "odd_base_word",
    "odd_three_cycle",
    "odd_three_cycle_word",
    "orbit_tag",
    "search_three_cycle",
]

Cell = tuple[int, int]
SWAP_LR = {0: 1, 1: 0}


class ThreeCycleError(ValueError):
    pass


def alpha_for(k: int) -> int:
    if k % 2 == 0 or k <= 3:
        raise ValueError(f"alpha is defined for odd k > 3, got {k}")
    if k % 18 != 3:
        return 3
    return {3: 4, 21: 2, 57: 2, 39: 12}[k % 72]


def orbit_tag(f: Figure, tiles) -> str:
    """'all' for even k, else 'E' (row+col even) or 'Ec'; mixed tiles raise."""
    if f.k % 2 == 0:
        return "all"
    colours = {sum(f.coord(t)) % 2 for t in tiles}
    if len(colours) != 1:
        raise ThreeCycleError("tiles span both checkerboard orbits")
    return "E" if colours == {0} else "Ec"


@dataclass
class ThreeCycleCertificate:
    word: Word
    perm: Permutation
    tiles: tuple[Cell, Cell, Cell]  # in cycle order
    orbit: str
    figure: Figure

    def text(self) -> str:
        cyc = "(" + ",".join(f"({r},{c})" for r, c in self.tiles) + ")"
        return f"{self.word.text()} | {cyc} | {self.orbit}"


def certify(f: Figure, word: Word, perm: Permutation | None = None) -> ThreeCycleCertificate:
    """Check that word evaluates to a single 3-cycle inside one orbit."""
    if perm is None:
        perm = evaluate(word, f.generators)
    cycles = perm.cycles()
    if len(cycles) != 1 or len(cycles[0]) != 3:
        lengths = sorted(len(c) for c in cycles)
        raise ThreeCycleError(f"word evaluates to cycle type {lengths}, not a 3-cycle")
    tiles = tuple(f.coord(t) for t in cycles[0])
    return ThreeCycleCertificate(word, perm, tiles, orbit_tag(f, cycles[0]), f)


@lru_cache(maxsize=64)
def _rect(k: int) -> Figure:
    return rectangle(k)


def even_three_cycle_word(k: int) -> Word:
    if k % 2 or k <= 3:
        raise ValueError(f"the even construction needs even k > 3, got {k}")
    conj = (R ** 2 * L ** 2) ** math.ceil(k / 4)
    third = R if k % 4 == 0 else L
    return (conj * third * conj.inverse() * (R ** -1 * L ** -1) ** 2) ** 20


def even_three_cycle(k: int) -> ThreeCycleCertificate:
    return certify(_rect(k), even_three_cycle_word(k))


def odd_base_word(k: int) -> Word:
    return alpha_word(k, alpha_for(k))


def _odd_variants(k: int):
    f = _rect(k)
    base = odd_base_word(k)
    base_perm = evaluate(base, f.generators)
    beta = element_order(base_perm)
    if beta % 3:
        raise ThreeCycleError(f"order {beta} of the k={k} base word is not divisible by 3")
    return f, base, base_perm, beta


def odd_three_cycle(k: int, orbit: str = "E") -> ThreeCycleCertificate:
    """3-cycle on the requested checkerboard orbit of the k×(k+1) rectangle.

    The plain base-word power lands on one orbit; swapping σ_L and σ_R gives
    the mirror image on the other.
    """
    if orbit not in ("E", "Ec"):
        raise ValueError("orbit must be 'E' or 'Ec'")
    f, base, base_perm, beta = _odd_variants(k)
    cert = certify(f, base ** (beta // 3), base_perm ** (beta // 3))
    if cert.orbit != orbit:
        swapped = base.relabel(SWAP_LR)
        cert = certify(f, swapped ** (beta // 3))
    return cert


def odd_three_cycle_word(k: int, orbit: str = "E") -> Word:
    return odd_three_cycle(k, orbit).word


def mirror(f: Figure, p: Permutation) -> Permutation:
    """Conjugate p by the half-turn of the rectangle about its centre."""
    k = f.k
    rho = Permutation([f.index((k + 1 - r, k + 2 - c)) for r, c in f.cells])
    return rho * p * ~rho


def k3_rectangle_three_cycle() -> tuple[Word, Permutation, Permutation]:
    """(σ_Lσ_R²)² on the 3×4 rectangle, its full action and its restriction to E."""
    f = _rect(3)
    word = (L * R ** 2) ** 2
    perm = evaluate(word, f.generators)
    even = [t for t, (r, c) in enumerate(f.cells) if (r + c) % 2 == 0]
    return word, perm, restrict(perm, even)


# shapes that every larger k=2 or k=3 figure contains, up to symmetry

def _comm(a: Word, b: Word) -> Word:
    return a * b * a.inverse() * b.inverse()


S1, S2, S3 = Word.letter(0), Word.letter(1), Word.letter(2)


@dataclass(frozen=True)
class ExtensionShape:
    k: int
    spec: FigureSpec
    third_site: Cell
    words: tuple[Callable[[], Word], ...]
    expected: tuple[tuple[Cell, ...] | None, ...]


def _spec(k: int, *rects: tuple[int, int, str]) -> FigureSpec:
    return FigureSpec(k, tuple(RectPlacement(*r) for r in rects))


EXTENSION_SHAPES: dict[str, ExtensionShape] = {
    "k2-2x4": ExtensionShape(
        2, _spec(2, (1, 1, "H"), (1, 2, "H")), (1, 3),
        (lambda: (S3 ** 2 * _comm(S2, S1)) ** 2,),
        (((1, 2), (1, 3), (2, 4)),),
    ),
    "k2-corner": ExtensionShape(
        2, _spec(2, (1, 1, "H"), (2, 3, "V")), (2, 3),
        (lambda: _comm(S3, S2),),
        (((2, 2), (2, 3), (2, 4)),),
    ),
    "k2-3x3-minus-corner": ExtensionShape(
        2, _spec(2, (1, 1, "H"), (1, 2, "V")), (2, 2),
        (lambda: _comm(S3, S1),),
        (((2, 1), (2, 2), (2, 3)),),
    ),
    "k3-3x5": ExtensionShape(
        3, _spec(3, (1, 1, "H"), (1, 2, "H")), (1, 3),
        (lambda: _comm(S1, S3) ** 2, lambda: (S3 ** 2 * S2 ** -1 * S1) ** 20),
        (((1, 4), (3, 2), (2, 3)), ((1, 3), (3, 5), (2, 4))),
    ),
    "k3-near-corner-side": ExtensionShape(
        3, _spec(3, (1, 1, "H"), (2, 4, "V")), (2, 4),
        (lambda: (S3 ** 2 * _comm(S2 ** 2, S1 ** 2)) ** 2, lambda: (S1 ** 2 * _comm(S3 ** 2, S2 ** 2)) ** 4),
        (None, None),
    ),
    "k3-near-corner-bottom": ExtensionShape(
        3, _spec(3, (1, 1, "H"), (3, 3, "V")), (3, 3),
        (lambda: _comm(S1, S3) ** 4, lambda: (_comm(S1, S3) * _comm(S2, S3)) ** 2),
        (None, None),
    ),
    "k3-4x4-minus-corner": ExtensionShape(
        3, _spec(3, (1, 1, "H"), (1, 2, "V")), (2, 2),
        (lambda: (S2 * _comm(S3 ** 2, S1 ** 2)) ** 4, lambda: (S3 * S2 ** 2 * S1 ** 2) ** 20),
        (None, None),
    ),
}


def extension_figure(shape: str) -> Figure:
    if shape not in EXTENSION_SHAPES:
        raise ValueError(f"unknown extension shape {shape!r}; known: {sorted(EXTENSION_SHAPES)}")
    return build_figure(EXTENSION_SHAPES[shape].spec)


def extension_three_cycles(shape: str, k: int | None = None) -> list[ThreeCycleCertificate]:
    """Certificates for the σ₁, σ₂, σ₃ words of an extension shape.

    Words are written over σ₁ (site (1,1)), σ₂ (site (1,2)) and σ₃, then
    renamed to the figure's site numbering.
    """
    f = extension_figure(shape)
    info = EXTENSION_SHAPES[shape]
    if k is not None and k != info.k:
        raise ValueError(f"shape {shape!r} is defined for k={info.k}")
    mapping = {0: f.site_index((1, 1)), 1: f.site_index((1, 2)), 2: f.site_index(info.third_site)}
    certs = []
    for build in info.words:
        certs.append(certify(f, build().relabel(mapping)))
    if f.k == 3 and {c.orbit for c in certs} != {"E", "Ec"}:
        raise ThreeCycleError(f"shape {shape!r}: 3-cycles do not cover both orbits")
    return certs


def search_three_cycle(
    f: Figure, orbit: str, max_length: int = 4, gens: tuple[Permutation, ...] | None = None
) -> ThreeCycleCertificate | None:
    """Shortest-expansion word w^e that is a 3-cycle in the orbit, over short w.

    w^e isolates a 3-cycle when w has exactly one cycle of length divisible
    by 3 and that cycle has length 3; then e = order(w) / 3.
    """
    gens = f.generators if gens is None else gens
    best: tuple[int, Word] | None = None
    letters = [(g, e) for g in range(len(gens)) for e in (1, 2, 3)]
    powers = {(g, e): gens[g] ** e for g, e in letters}
    for length in range(1, max_length + 1):
        for combo in itertools.product(letters, repeat=length):
            if any(a[0] == b[0] for a, b in zip(combo, combo[1:])):
                continue
            if length > 1 and combo[0][0] == combo[-1][0]:
                continue  # conjugate of a shorter word
            p = powers[combo[0]]
            for lt in combo[1:]:
                p = p * powers[lt]
            lens = [len(c) for c in p.cycles()]
            div3 = [l for l in lens if l % 3 == 0]
            if div3 != [3]:
                continue
            e = math.lcm(*lens) // 3
            cost = e * length
            if best is not None and cost >= best[0]:
                continue
            cyc = next(c for c in p.cycles() if len(c) == 3)
            try:
                tag = orbit_tag(f, cyc)
            except ThreeCycleError:
                continue
            if tag != orbit:
                continue
            best = (cost, Word(Letter(g, x) for g, x in combo) ** e)
        if best is not None:
            break
    if best is None:
        return None
    return certify(f, best[1])


def _rectangle_words_in(f: Figure, placement: RectPlacement) -> dict[str, ThreeCycleCertificate]:
    """The rectangle 3-cycle words transplanted onto one rectangle of a larger figure.

    For a vertical rectangle the top block plays σ_L and the bottom block σ_R
    (a quarter-turn of the horizontal picture).
    """
    k, r, c = f.k, placement.row, placement.col
    other = (r, c + 1) if placement.orientation == "H" else (r + 1, c)
    mapping = {0: f.site_index((r, c)), 1: f.site_index(other)}
    if k % 2 == 0:
        return {"all": certify(f, even_three_cycle_word(k).relabel(mapping))}
    _, base, _, beta = _odd_variants(k)
    out = {}
    for w in (base, base.relabel(SWAP_LR)):
        cert = certify(f, (w ** (beta // 3)).relabel(mapping))
        out[cert.orbit] = cert
    return out


def _random_search(f: Figure, orbit: str, seed: int, tries: int) -> ThreeCycleCertificate | None:
    import random

    rng = random.Random(seed)
    gens = f.generators
    for _ in range(tries):
        length = rng.randint(5, 10)
        combo = [(rng.randrange(len(gens)), rng.randint(1, 3)) for _ in range(length)]
        w = Word(Letter(g, e) for g, e in combo)
        p = evaluate(w, gens)
        lens = [len(c) for c in p.cycles()]
        if [l for l in lens if l % 3 == 0] != [3]:
            continue
        cert = certify(f, w ** (math.lcm(*lens) // 3))
        if cert.orbit == orbit:
            return cert
    return None


def figure_three_cycles(f: Figure) -> dict[str, ThreeCycleCertificate]:
    """One 3-cycle certificate per orbit ('all' for even k, else 'E' and 'Ec').

    Empty for the two exceptional figures (k=2, n=6 and k=3, n=12), whose
    groups contain no 3-cycle confined to one orbit.
    """
    if (f.k == 2 and f.n == 6) or (f.k == 3 and f.n == 12):
        return {}
    if f.k >= 4 and f.spec is not None:
        return _rectangle_words_in(f, f.spec.placements[0])
    wanted = ["all"] if f.k % 2 == 0 else ["E", "Ec"]
    out = {}
    for orbit in wanted:
        cert = search_three_cycle(f, orbit) or _random_search(f, orbit, seed=0, tries=20_000)
        if cert is None:
            raise ThreeCycleError(f"no 3-cycle word found on orbit {orbit}")
        out[orbit] = cert
    return out
