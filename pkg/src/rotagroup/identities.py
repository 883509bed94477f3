"""Closed-form actions of small generator products on the k×(k+1) rectangle.

Every closed form here is transcribed by hand and checked tile by tile
against the permutation obtained by composing the actual rotations.  On the
rectangle, generator 0 is the left k×k block (σ_L) and generator 1 the right
one (σ_R).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache

from .figure import Figure, rectangle
from .perm import Permutation
from .word import Word, evaluate

__all__ = [
    "ChartEntry",
    "FormulaId",
    "IdentityReport",
    "L",
    "R",
    "alpha_word",
    "check_chart",
    "closed_form",
    "even_chart",
    "expected_cycle_chart",
    "formula_word",
    "verify_identity",
]

Cell = tuple[int, int]

L = Word.letter(0)
R = Word.letter(1)


class FormulaId(enum.Enum):
    SIGMA_L = "sigma_L"
    SIGMA_R = "sigma_R"
    COMM_LRINV = "[sigma_L,sigma_R^-1]"
    COMM_LR = "[sigma_L,sigma_R]"
    RR_LL = "sigma_R^2 sigma_L^2"
    RINV_L = "sigma_R^-1 sigma_L"
    BOUNDARY_SQ = "(sigma_R^-1 sigma_L^-1)^2"
    POW_K4 = "(sigma_R^2 sigma_L^2)^(k/4)"
    ODD_MAIN = "(sigma_R^2 sigma_L^2)^((k-1)/2)"
    ODD_MAIN_L2 = "(sigma_R^2 sigma_L^2)^((k-1)/2) sigma_L^2"
    ALPHA2_ACTION = "(sigma_R^-1 sigma_L)^2 (sigma_R^2 sigma_L^2)^((k-1)/2) sigma_L^2"
    ALPHA_ACTION = "(sigma_R^-1 sigma_L)^a (sigma_R^2 sigma_L^2)^((k-1)/2) sigma_L^2"


_ODD_ONLY = {
    FormulaId.ODD_MAIN,
    FormulaId.ODD_MAIN_L2,
    FormulaId.ALPHA2_ACTION,
    FormulaId.ALPHA_ACTION,
}


def _check(fid: FormulaId, k: int, alpha: int | None) -> None:
    if k < 2:
        raise ValueError("k must be at least 2")
    if fid in _ODD_ONLY and k % 2 == 0:
        raise ValueError(f"{fid.name} needs odd k")
    if fid is FormulaId.POW_K4 and k % 4:
        raise ValueError("POW_K4 needs k divisible by 4")
    if fid is FormulaId.ALPHA_ACTION:
        if alpha is None or not 3 <= alpha <= k:
            raise ValueError("ALPHA_ACTION needs 3 <= alpha <= k")
    elif alpha is not None:
        raise ValueError(f"{fid.name} takes no alpha")


def alpha_word(k: int, alpha: int) -> Word:
    """(σ_R⁻¹σ_L)^α (σ_R²σ_L²)^((k-1)/2) σ_L², the odd-k base word."""
    return (R ** -1 * L) ** alpha * (R ** 2 * L ** 2) ** ((k - 1) // 2) * L ** 2


def formula_word(fid: FormulaId, k: int, alpha: int | None = None) -> Word:
    _check(fid, k, alpha)
    F = FormulaId
    if fid is F.SIGMA_L:
        return L
    if fid is F.SIGMA_R:
        return R
    if fid is F.COMM_LRINV:
        return L * R ** -1 * L ** -1 * R
    if fid is F.COMM_LR:
        return L * R * L ** -1 * R ** -1
    if fid is F.RR_LL:
        return R ** 2 * L ** 2
    if fid is F.RINV_L:
        return R ** -1 * L
    if fid is F.BOUNDARY_SQ:
        return (R ** -1 * L ** -1) ** 2
    if fid is F.POW_K4:
        return (R ** 2 * L ** 2) ** (k // 4)
    if fid is F.ODD_MAIN:
        return (R ** 2 * L ** 2) ** ((k - 1) // 2)
    if fid is F.ODD_MAIN_L2:
        return (R ** 2 * L ** 2) ** ((k - 1) // 2) * L ** 2
    if fid is F.ALPHA2_ACTION:
        return alpha_word(k, 2)
    return alpha_word(k, alpha)


def _boundary(k: int, i: int, j: int) -> Cell:
    # path up the left column, along the top row, down the right column
    if j == 1:
        t = k - i
    elif i == 1:
        t = k - 2 + j
    elif j == k + 1:
        t = 2 * k - 2 + i
    else:
        return (i, j)
    t = (t + k + 1) % (3 * k - 1)
    if t <= k - 1:
        return (k - t, 1)
    if t <= 2 * k - 1:
        return (1, t - k + 2)
    return (t - 2 * k + 2, k + 1)


def _alpha2(k: int, i: int, j: int) -> Cell:
    if j <= k - 2:
        return (i + 2, k + 1 - j) if i <= k - 2 else (k - j, i - (k - 2))
    if j in (k - 1, k):
        return (1, k + 1 - j) if i == 1 else (k + 1 - j, k + 1 - (i - 2))
    return (k, 3 - i) if i <= 2 else (k + 1 - (i - 2), k + 1)


def _alpha(k: int, a: int, i: int, j: int) -> Cell:
    if j <= a - 3:
        return (a - 2 - j, i + a) if i <= k - a + 1 else (i + a - k - 1, a - 2 - j)
    if j < k - 1:
        return (i + a, k + a - 1 - j) if i <= k - a else (k + a - 2 - j, i + a - k)
    return (a - i, k + a - 1 - j) if i <= a - 1 else (k + a - 1 - j, k + a + 1 - i)


def closed_form(fid: FormulaId, k: int, cell: Cell, alpha: int | None = None) -> Cell | None:
    """Image of tile (i, j) under the formula, or None outside its stated domain."""
    _check(fid, k, alpha)
    i, j = cell
    if not (1 <= i <= k and 1 <= j <= k + 1):
        raise ValueError(f"tile {cell} is not in the {k}x{k + 1} rectangle")
    F = FormulaId
    if fid is F.SIGMA_L:
        return (j, k + 1 - i) if j != k + 1 else (i, k + 1)
    if fid is F.SIGMA_R:
        return (j - 1, k + 2 - i) if j != 1 else (i, 1)
    if fid is F.COMM_LRINV:
        return (i, j - 2) if i > 1 and j > 2 else None
    if fid is F.COMM_LR:
        return (i + 2, j) if i < k - 1 and 1 < j < k + 1 else None
    if fid is F.RR_LL:
        return (i, j + 2) if j < k else (k + 1 - i, j - (k - 1))
    if fid is F.RINV_L:
        if j == k + 1:
            return (1, i + 1)
        return (i + 1, j + 1) if i < k else (j, 1)
    if fid is F.BOUNDARY_SQ:
        return _boundary(k, i, j)
    if fid is F.POW_K4:
        h = k // 2
        return (i, j + h) if j <= h + 1 else (k + 1 - i, j - (h + 1))
    if fid is F.ODD_MAIN:
        return (i, k - 1 + j) if j <= 2 else (k + 1 - i, j - 2)
    if fid is F.ODD_MAIN_L2:
        return (i, k - 1 - j) if j < k - 1 else (k + 1 - i, 2 * k - j)
    if fid is F.ALPHA2_ACTION:
        return _alpha2(k, i, j)
    return _alpha(k, alpha, i, j)


@dataclass
class IdentityReport:
    formula: FormulaId
    k: int
    alpha: int | None
    domain_size: int
    mismatches: list[tuple[Cell, Cell, Cell]] = field(default_factory=list)  # tile, expected, actual

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def text(self) -> str:
        name = self.formula.name + (f"({self.alpha})" if self.alpha is not None else "")
        status = "PASS" if self.passed else "FAIL"
        line = f"{name} k={self.k} domain={self.domain_size} {status}"
        if self.mismatches:
            tile, want, got = self.mismatches[0]
            line += f" first mismatch {tile}: expected {want}, got {got}"
        return line


@lru_cache(maxsize=64)
def _rect(k: int) -> Figure:
    return rectangle(k)


def verify_identity(fid: FormulaId, k: int, alpha: int | None = None) -> IdentityReport:
    f = _rect(k)
    perm = evaluate(formula_word(fid, k, alpha), f.generators)
    report = IdentityReport(fid, k, alpha, 0)
    for t, cell in enumerate(f.cells):
        want = closed_form(fid, k, cell, alpha)
        if want is None:
            continue
        report.domain_size += 1
        got = f.coord(perm(t))
        if got != want:
            report.mismatches.append((cell, want, got))
    return report


# cycle charts ------------------------------------------------------------


@dataclass(frozen=True)
class ChartEntry:
    """Cycles of one length, identified by representative tiles.

    With ``same_cycle`` all tiles lie in a single cycle (listed in cycle
    order when ``ordered``); otherwise each tile sits in its own cycle, so the
    entry stands for ``len(tiles)`` cycles.
    """

    length: int
    tiles: tuple[Cell, ...]
    same_cycle: bool = False
    ordered: bool = False

    @property
    def count(self) -> int:
        return 1 if self.same_cycle else len(self.tiles)


def _alpha_for(k: int) -> int:
    if k % 18 != 3:
        return 3
    return {3: 4, 21: 2, 57: 2, 39: 12}[k % 72]


def expected_cycle_chart(k: int, alpha: int | None = None) -> list[ChartEntry]:
    """Predicted cycle structure of the odd-k base word for the charted residues."""
    if k % 2 == 0 or k <= 3:
        raise ValueError("charts exist for odd k > 3 only")
    a = _alpha_for(k)
    if alpha is not None and alpha != a:
        raise ValueError(f"no chart for alpha={alpha} at k={k} (expected alpha={a})")
    E = ChartEntry
    if a == 3:
        chart = [
            E(3, ((1, 2), (4, k), (2, k)), same_cycle=True, ordered=True),
            E(10, ((1, 1),)),
            E(8, ((2, 1),)),
            E(4, ((k, 1), (k, 2))),
            E(1, ((k - 1, 2),)),
        ]
        if k % 6 in (1, 5):
            chart.append(E(k + 6, tuple((1, j) for j in range(4, k - 1))))
        else:
            chart.append(
                E((k + 6) // 3, tuple((i, j) for i in range(1, 4) for j in range(4, k - 1)))
            )
        return chart
    if a == 4:
        return [
            E(1, ((k - 1, 3),)),
            E(3, ((1, 3),)),
            E(4, ((k - 2, 2), (k - 2, 3))),
            E(8, ((2, 2),)),
            E(10, ((1, 2),)),
            E((k + 11) // 2, ((k - 4, 1), (k - 4, 2))),
            E(k + 7, tuple((1, j) for j in range(8, k - 1))),
            E(k + 11, ((1, 1), (1, k - 1))),
        ]
    if a == 2:
        h = (k + 1) // 2
        return [
            E(1, (((k + 3) // 2, k + 1), (k - 1, 1))),
            E(2, tuple((i, k + 1) for i in range(3, h + 1))),
            E(3, ((1, 1),)),
            E((k + 19) // 2, ((1, 2),)),
            E(k + 4, ((1, h),)),
            E((3 * k + 25) // 2, ((1, 3),)),
            E(2 * k + 8, tuple((1, j) for j in range(4, (k - 1) // 2 + 1))),
        ]
    chart = [
        E(1, ((k - 1, 11),)),
        E(3, ((1, 11),)),
        E(4, ((k, 11), (k, 12))),
        E(8, ((2, 12),)),
        E(10, ((1, 12),)),
        E((k + 9) // 6, tuple((i, j) for i in range(12, k - 13) for j in range(1, 4))),
    ]
    r = k % 360
    if r in (39, 255):
        chart += [
            E((192 + 19 * k + k * k) // 6, ((1, 1), (1, 2))),
            E((111 + 16 * k + k * k) // 12, ((1, 18), (1, 19))),
        ]
    elif r in (183, 327):
        chart += [
            E((192 + 19 * k + k * k) // 6, ((1, 1), (1, 2))),
            E((111 + 16 * k + k * k) // 12, ((1, 14), (1, 15))),
        ]
    else:  # 111
        chart += [
            E((k * k - 201) // 120, ((2, 22), (2, 31))),
            E((309 + 30 * k + k * k) // 120, tuple((i, j) for i in range(1, 9) for j in range(1, 4))),
            E((k * k - 201) // 30, ((1, 21), (1, 22), (1, 30), (1, 31))),
            E((339 + 20 * k + k * k) // 120, tuple((i, j) for i in range(k - 8, k - 2) for j in range(10, 13))),
        ]
    return chart


def even_chart(k: int) -> list[ChartEntry]:
    """Cycle structure of the conjugated σ_R times (σ_R⁻¹σ_L⁻¹)², for k ≡ 0 mod 4."""
    if k % 4 or k < 4:
        raise ValueError("the even chart covers k ≡ 0 mod 4, k >= 4")
    h = k // 2
    four = [(i, j) for i in range(2, h) for j in range(1, h + 1)]
    four += [(h, j) for j in range(2, k) if j != h + 1]
    return [
        ChartEntry(1, tuple((i, h + 1) for i in range(2, k + 1))),
        ChartEntry(3, ((1, h + 1), (h, k), (h + 2, 1)), same_cycle=True, ordered=True),
        ChartEntry(4, tuple(four)),
        ChartEntry(10, ((h, 1), (h, k + 1)), same_cycle=True),
    ]


def check_chart(perm: Permutation, f: Figure, chart: list[ChartEntry]) -> list[str]:
    """Compare a permutation's cycles with a chart; returns the list of problems."""
    problems = []
    predicted = sorted(l for e in chart for l in [e.length] * e.count)
    if sum(predicted) != f.n:
        problems.append(f"chart covers {sum(predicted)} tiles, figure has {f.n}")
    cycles = perm.cycles(include_fixed=True)
    actual = sorted(len(c) for c in cycles)
    if actual != predicted:
        problems.append("cycle-length multiset differs from chart")
    cycle_of = {}
    for ci, c in enumerate(cycles):
        for x in c:
            cycle_of[x] = ci
    used: set[int] = set()
    for e in chart:
        ids = []
        for cell in e.tiles:
            ci = cycle_of[f.index(cell)]
            if len(cycles[ci]) != e.length:
                problems.append(f"tile {cell}: cycle length {len(cycles[ci])}, chart says {e.length}")
            ids.append(ci)
        if e.same_cycle:
            if len(set(ids)) != 1:
                problems.append(f"tiles {e.tiles} are not in one cycle")
            if e.ordered:
                pts = [f.index(c) for c in e.tiles]
                if any(perm(x) != y for x, y in zip(pts, pts[1:] + pts[:1])):
                    problems.append(f"cycle {e.tiles} runs in a different order")
            ids = ids[:1]
        elif len(set(ids)) != len(ids):
            problems.append(f"representatives of the {e.length}-cycles share a cycle")
        if used.intersection(ids):
            problems.append(f"representatives of the {e.length}-cycles reuse another entry's cycle")
        used.update(ids)
    div3 = [len(c) for c in cycles if len(c) % 3 == 0]
    if len(div3) != 1:
        problems.append(f"{len(div3)} cycles have length divisible by 3")
    return problems
