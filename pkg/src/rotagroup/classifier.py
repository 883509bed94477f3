"""Predict the rotation-puzzle group from (k, n, m) and check the prediction."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field

from .figure import Figure, checkerboard_orbit_sets, rectangle
from .group import (
    enumerate_group,
    is_doubly_transitive_on,
    orbits,
    parity_signature,
    schreier_sims,
)
from .perm import Permutation, restrict, sign
from .three_cycle import figure_three_cycles, k3_rectangle_three_cycle
from .word import Word, evaluate

__all__ = [
    "BSGS_LIMIT",
    "ClassificationReport",
    "GroupClass",
    "PGL25Report",
    "SpotCheck",
    "orbit_projection_order",
    "pgl25_oracle",
    "predict",
    "verify",
]

BSGS_LIMIT = 200  # full Schreier–Sims only up to this many tiles

KINDS = ("Alt", "Sym", "AltProduct", "EvenProduct", "PGL25", "ExceptionalS6")


@dataclass(frozen=True)
class GroupClass:
    kind: str
    n: int
    m: int | None = None  # size of the row+col even orbit, product classes only

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown group class {self.kind!r}")

    @property
    def expected_order(self) -> int:
        f = math.factorial
        if self.kind == "Alt":
            return f(self.n) // 2
        if self.kind == "Sym":
            return f(self.n)
        if self.kind == "AltProduct":
            return f(self.m) * f(self.n - self.m) // 4
        if self.kind == "EvenProduct":
            return f(self.m) * f(self.n - self.m) // 2
        return 120 if self.kind == "PGL25" else 720

    @property
    def exceptional(self) -> bool:
        return self.kind in ("PGL25", "ExceptionalS6")

    def name(self) -> str:
        n, m = self.n, self.m
        return {
            "Alt": f"A{n}",
            "Sym": f"S{n}",
            "AltProduct": f"A{m} x A{n - m if m is not None else '?'}",
            "EvenProduct": f"Even(S{m} x S{n - m if m is not None else '?'})",
            "PGL25": "PGL2(5)",
            "ExceptionalS6": "S6 (on both orbits)",
        }[self.kind]


def predict(f: Figure) -> GroupClass:
    k, n = f.k, f.n
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    if k % 2 == 0:
        if n == 6:
            return GroupClass("PGL25", n)
        return GroupClass("Alt" if k % 4 == 0 else "Sym", n)
    if n == 12:
        return GroupClass("ExceptionalS6", n, f.m)
    kind = "AltProduct" if k % 8 in (1, 7) else "EvenProduct"
    return GroupClass(kind, n, f.m)


@dataclass
class SpotCheck:
    name: str
    expected: bool
    observed: bool

    @property
    def passed(self) -> bool:
        return self.expected == self.observed


@dataclass
class ClassificationReport:
    k: int
    n: int
    m: int
    predicted: GroupClass
    computed_order: int | None
    orbit_sizes: list[int]
    doubly_transitive: list[bool]
    parity: list[tuple[int, ...]]
    parity_ok: bool
    spot_checks: list[SpotCheck] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def expected_order(self) -> int:
        return self.predicted.expected_order

    @property
    def order_match(self) -> bool | None:
        if self.computed_order is None:
            return None
        return self.computed_order == self.expected_order

    @property
    def passed(self) -> bool:
        return (
            self.order_match is not False
            and all(self.doubly_transitive)
            and self.parity_ok
            and all(c.passed for c in self.spot_checks)
        )

    def failures(self) -> list[str]:
        out = []
        if self.order_match is False:
            out.append(f"order {self.computed_order} != expected {self.expected_order}")
        for i, ok in enumerate(self.doubly_transitive):
            if not ok:
                out.append(f"orbit {i} not doubly transitive")
        if not self.parity_ok:
            out.append("parity signature inconsistent with predicted class")
        out += [f"spot check {c.name}: expected {c.expected}, got {c.observed}" for c in self.spot_checks if not c.passed]
        return out

    def summary(self) -> str:
        if self.computed_order is None:
            order = "order not computed"
        elif self.order_match:
            order = f"order {self.computed_order} = expected"
        else:
            order = f"order {self.computed_order} != expected {self.expected_order}"
        return f"predicted {self.predicted.name()}; {order}; {'PASS' if self.passed else 'FAIL'}"

    def text(self) -> str:
        lines = [
            f"figure: k={self.k} n={self.n} m={self.m}",
            f"predicted: {self.predicted.name()}",
            f"expected order: {self.expected_order}",
            f"computed order: {self.computed_order if self.computed_order is not None else 'not computed'}",
            f"orbits: {self.orbit_sizes}",
            f"doubly transitive: {self.doubly_transitive}",
            f"parity signature: {_fmt_parity(self.parity)} ({'consistent' if self.parity_ok else 'INCONSISTENT'})",
        ]
        for c in self.spot_checks:
            lines.append(f"check {c.name}: expected {c.expected}, got {c.observed} {'ok' if c.passed else 'FAIL'}")
        lines += [f"note: {x}" for x in self.notes]
        lines.append(self.summary())
        return "\n".join(lines)

    def kv(self) -> dict[str, str]:
        d = {
            "k": str(self.k),
            "n": str(self.n),
            "m": str(self.m),
            "predicted": self.predicted.kind,
            "predicted_name": self.predicted.name(),
            "expected_order": str(self.expected_order),
            "computed_order": "none" if self.computed_order is None else str(self.computed_order),
            "order_match": "skipped" if self.order_match is None else str(self.order_match).lower(),
            "orbits": ",".join(map(str, self.orbit_sizes)),
            "doubly_transitive": ",".join(str(x).lower() for x in self.doubly_transitive),
            "parity_signature": _fmt_parity(self.parity),
            "parity_ok": str(self.parity_ok).lower(),
        }
        for c in self.spot_checks:
            d[f"check.{c.name}"] = "pass" if c.passed else "fail"
        d["passed"] = str(self.passed).lower()
        return d


def _fmt_parity(parity: list[tuple[int, ...]]) -> str:
    return " ".join("(" + ",".join("+1" if s > 0 else "-1" for s in sig) + ")" for sig in parity)


def _parity_consistent(cls: GroupClass, parity: list[tuple[int, ...]]) -> bool:
    if cls.kind in ("Alt", "AltProduct"):
        return all(s == 1 for sig in parity for s in sig)
    if cls.kind == "Sym":
        return any(sig[0] == -1 for sig in parity)
    if cls.kind == "PGL25":
        # PGL2(5) is not inside A6
        return any(sig[0] == -1 for sig in parity)
    # EvenProduct and the S6 case: equal signs on both orbits, some odd pair
    return all(len(set(sig)) == 1 for sig in parity) and any(sig[0] == -1 for sig in parity)


def _orbit_list(f: Figure) -> list[frozenset[int]]:
    if f.k % 2:
        return list(checkerboard_orbit_sets(f))
    return [frozenset(range(f.n))]


def verify(f: Figure, seed: int = 0, samples: int = 100, bsgs_limit: int = BSGS_LIMIT) -> ClassificationReport:
    """Check predict(f) against the computed group."""
    cls = predict(f)
    gens = list(f.generators)
    computed = orbits(gens, f.n)
    expected_orbits = _orbit_list(f)
    notes = []
    if sorted(computed, key=min) != sorted(expected_orbits, key=min):
        notes.append("computed orbits differ from the checkerboard classes")
    dt = [is_doubly_transitive_on(gens, O) for O in computed]
    parity = parity_signature(gens, computed)
    report = ClassificationReport(
        f.k, f.n, f.m, cls, None, [len(O) for O in computed], dt, parity,
        _parity_consistent(cls, parity) and not notes, notes=notes,
    )
    if cls.kind == "PGL25":
        notes.append("n=6 with k even forces k=2 and the single 2x3 rectangle")
    if cls.kind == "ExceptionalS6":
        notes.append("n=12 with k odd forces k=3 and the single 3x4 rectangle")

    bsgs = schreier_sims(gens) if f.n <= bsgs_limit else None
    if bsgs is None:
        notes.append(f"order not computed (n > {bsgs_limit})")
        member = None
    else:
        report.computed_order = bsgs.order()
        member = bsgs.contains

    O0 = sorted(computed[0])
    if member is not None:
        t = Permutation.from_cycles(f.n, [O0[:2]])
        report.spot_checks.append(SpotCheck("transposition_member", cls.kind == "Sym", member(t)))
        if len(computed) == 2:
            O1 = sorted(computed[1])
            tt = Permutation.from_cycles(f.n, [O0[:2], O1[:2]])
            report.spot_checks.append(SpotCheck("double_transposition_member", cls.kind == "EvenProduct", member(tt)))
        if cls.exceptional:
            c = Permutation.from_cycles(f.n, [O0[:3]])
            report.spot_checks.append(SpotCheck("pure_3cycle_member", False, member(c)))

    for tag, cert in sorted(figure_three_cycles(f).items()):
        ok = member(cert.perm) if member is not None else cert.perm == evaluate(cert.word, gens)
        report.spot_checks.append(SpotCheck(f"3cycle_{tag}_member", True, ok))
    if cls.kind == "ExceptionalS6":
        _, _, on_e = k3_rectangle_three_cycle()
        report.spot_checks.append(SpotCheck("3cycle_on_E_projection", True, len(on_e.support()) == 3))
        for i, O in enumerate(computed):
            proj = orbit_projection_order(f, O)
            report.spot_checks.append(SpotCheck(f"projection_{i}_order_720", True, proj == 720))

    if bsgs is not None and cls.kind in ("Alt", "AltProduct", "EvenProduct"):
        rng = random.Random(seed)
        sigs = [tuple(sign(restrict(p, O)) for O in computed) for p in (bsgs.random_element(rng) for _ in range(samples))]
        if cls.kind == "EvenProduct":
            report.spot_checks.append(SpotCheck("random_members_equal_parity", True, all(len(set(s)) == 1 for s in sigs)))
            report.spot_checks.append(SpotCheck("random_member_odd_odd", True, any(s[0] == -1 for s in sigs)))
        else:
            report.spot_checks.append(SpotCheck("random_members_even", True, all(set(s) == {1} for s in sigs)))
    return report


def orbit_projection_order(f: Figure, orbit) -> int:
    """Order of the group generated by the generators restricted to orbit."""
    pts = sorted(orbit)
    gens = [restrict(g, pts) for g in f.generators]  # raises if not invariant
    return schreier_sims(gens).order()


# PGL2(5) on the projective line over the 5-element field

INF = 5
# tile cell -> point of the projective line
PGL_LABELS = {(1, 2): INF, (1, 1): 0, (2, 1): 1, (2, 2): 2, (2, 3): 3, (1, 3): 4}


def _mobius(a: int, b: int, c: int, d: int) -> tuple[int, ...]:
    out = []
    for z in range(6):
        if z == INF:
            num, den = a, c
        else:
            num, den = (a * z + b) % 5, (c * z + d) % 5
        out.append(INF if den == 0 else num * pow(den, -1, 5) % 5)
    return tuple(out)


@dataclass
class PGL25Report:
    group: set[tuple[int, ...]]
    g1_match: bool
    g2_match: bool
    generators_in_puzzle: bool
    puzzle_order: int
    same_set: bool

    @property
    def passed(self) -> bool:
        return (
            len(self.group) == 120
            and self.g1_match
            and self.g2_match
            and self.generators_in_puzzle
            and self.puzzle_order == 120
            and self.same_set
        )

    def text(self) -> str:
        return (
            f"oracle order {len(self.group)}; puzzle order {self.puzzle_order}; "
            f"g1=z->3/(z+3): {self.g1_match}; g2=z->z+1: {self.g2_match}; "
            f"equal as sets: {self.same_set}; {'PASS' if self.passed else 'FAIL'}"
        )


def _to_labels(f: Figure, p: Permutation) -> tuple[int, ...]:
    lab = [PGL_LABELS[f.coord(t)] for t in range(f.n)]
    out = [0] * 6
    for t in range(f.n):
        out[lab[t]] = lab[p(t)]
    return tuple(out)


def pgl25_oracle() -> PGL25Report:
    group = {
        _mobius(a, b, c, d)
        for a, b, c, d in itertools.product(range(5), repeat=4)
        if (a * d - b * c) % 5
    }
    f = rectangle(2)
    L, R = (Word.letter(i) for i in range(2))
    g1 = _to_labels(f, evaluate(L.inverse(), f.generators))
    g2 = _to_labels(f, evaluate(L.inverse() * R.inverse(), f.generators))
    bsgs = schreier_sims(list(f.generators))
    puzzle = {_to_labels(f, p) for p in enumerate_group(list(f.generators))}
    lab_to_tile = {v: f.index(c) for c, v in PGL_LABELS.items()}

    def as_tiles(m: tuple[int, ...]) -> Permutation:
        a = [0] * 6
        for z in range(6):
            a[lab_to_tile[z]] = lab_to_tile[m[z]]
        return Permutation(a)

    gens_in = all(bsgs.contains(as_tiles(_mobius(*abcd))) for abcd in ((0, 3, 1, 3), (1, 1, 0, 1), (2, 0, 0, 1)))
    return PGL25Report(
        group,
        g1 == _mobius(0, 3, 1, 3),
        g2 == _mobius(1, 1, 0, 1),
        gens_in,
        bsgs.order(),
        puzzle == group,
    )

