"""Command-line front end: ``rotagroup <subcommand> [options]``."""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field

from .classifier import pgl25_oracle, predict, verify
from .figure import load_figure
from .group import orbits, parity_signature
from .identities import L, R, FormulaId, check_chart, closed_form, even_chart, expected_cycle_chart, verify_identity
from .perm import element_order
from .solver import apply_word, is_solvable, load_state, solve
from .three_cycle import (
    EXTENSION_SHAPES,
    ThreeCycleError,
    alpha_for,
    even_three_cycle,
    extension_three_cycles,
    k3_rectangle_three_cycle,
    mirror,
    odd_base_word,
    odd_three_cycle,
)
from .word import Word, evaluate

CHARTED_K = (5, 7, 9, 11, 13, 15, 21, 27, 33, 39, 57, 75, 111, 183)
EXTENDED_K = (255, 327)


@dataclass
class Report:
    """Lines for text output, ordered key/value pairs for kv output, failures."""

    lines: list[str] = field(default_factory=list)
    kv: list[tuple[str, str]] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    def add(self, key: str, value, line: str | None = None) -> None:
        self.kv.append((key, str(value)))
        if line is not None:
            self.lines.append(line)

    def check(self, name: str, ok: bool) -> bool:
        if not ok:
            self.failures.append(name)
        return ok


def _status(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def _cells(tiles) -> str:
    return "(" + ",".join(f"({r},{c})" for r, c in tiles) + ")"


def _k_values(args) -> list[int]:
    if args.k is not None:
        return [args.k]
    if args.k_range is not None:
        a, sep, b = args.k_range.partition("..")
        if not sep or not a.strip().isdigit() or not b.strip().isdigit():
            raise ValueError(f"--k-range expects A..B, got {args.k_range!r}")
        return list(range(int(a), int(b) + 1))
    if args.charted:
        return list(CHARTED_K + (EXTENDED_K if args.extended else ()))
    raise ValueError("one of --k, --k-range or --charted is required")


# subcommands ---------------------------------------------------------


def cmd_classify(args, rep: Report) -> None:
    f = load_figure(args.figure)
    cls = predict(f)
    rep.add("k", f.k)
    rep.add("n", f.n)
    rep.add("m", f.m)
    rep.add("predicted", cls.kind)
    rep.add("expected_order", cls.expected_order)
    rep.lines.append(f"k={f.k} n={f.n} m={f.m}: {cls.name()}, order {cls.expected_order}")


def cmd_verify_theorem(args, rep: Report) -> None:
    f = load_figure(args.figure)
    seed = int(os.environ.get("ROTAGROUP_SEED", "0"))
    r = verify(f, seed=seed)
    rep.lines.append(r.summary())
    rep.lines += r.text().splitlines()[:-1]
    rep.kv += list(r.kv().items())
    for msg in r.failures():
        rep.failures.append(msg)
    if r.predicted.kind == "PGL25":
        o = pgl25_oracle()
        rep.add("pgl25_oracle", "pass" if o.passed else "fail", "PGL2(5) oracle: " + o.text())
        rep.check("PGL2(5) oracle", o.passed)


def _identity_alphas(k: int) -> list[int]:
    if k <= 13:
        return list(range(3, k + 1))
    return sorted({a for a in (3, 4, 12, alpha_for(k)) if a <= k})


def cmd_verify_identities(args, rep: Report) -> None:
    for k in _k_values(args):
        todo: list[tuple[FormulaId, int | None]] = []
        for fid in FormulaId:
            if fid is FormulaId.ALPHA_ACTION:
                if k % 2:
                    todo += [(fid, a) for a in _identity_alphas(k)]
                continue
            try:
                closed_form(fid, k, (1, 1))
            except ValueError:
                continue
            todo.append((fid, None))
        bad = 0
        for fid, a in todo:
            r = verify_identity(fid, k, a)
            name = fid.name + (f"({a})" if a is not None else "")
            rep.add(f"k{k}.{name}", "pass" if r.passed else "fail", r.text())
            if not rep.check(f"k={k} {name}", r.passed):
                bad += 1
        rep.add(f"k{k}.checked", len(todo))
        rep.add(f"k{k}.failed", bad)


def _small_k_certificates(k: int, rep: Report) -> None:
    if k == 3:
        w, full, on_e = k3_rectangle_three_cycle()
        ok = len(on_e.support()) == 3 and len(on_e.cycles()) == 1
        rep.add("k3.rectangle_E", _status(ok).lower(), f"k=3 3x4: {w.text()} restricted to E is a 3-cycle: {_status(ok)}")
        rep.check("k=3 rectangle restriction", ok)
    for name, shape in EXTENSION_SHAPES.items():
        if shape.k != k:
            continue
        try:
            certs = extension_three_cycles(name)
            ok = all(exp is None or c.tiles == exp for c, exp in zip(certs, shape.expected))
        except ThreeCycleError as exc:
            certs, ok = [], False
            rep.lines.append(f"{name}: {exc}")
        for i, c in enumerate(certs):
            rep.add(f"{name}.{i}", c.text(), f"{name}: {c.text()}")
        rep.add(f"{name}.status", _status(ok).lower())
        rep.check(name, ok)


def cmd_verify_lemma3(args, rep: Report) -> None:
    for k in _k_values(args):
        if k < 2:
            raise ValueError("k must be at least 2")
        if k <= 3:
            _small_k_certificates(k, rep)
            continue
        if k % 2 == 0:
            c = even_three_cycle(k)
            ok = len(c.perm.support()) == 3
            line = f"k={k}: 3-cycle {_cells(c.tiles)}: {_status(ok)}"
            if k % 4 == 0:
                conj = (R ** 2 * L ** 2) ** ((k + 3) // 4)
                base = conj * R * conj.inverse() * (R ** -1 * L ** -1) ** 2
                problems = check_chart(evaluate(base, c.figure.generators), c.figure, even_chart(k))
                line += f"; chart: {_status(not problems)}"
                ok = ok and not problems
            rep.add(f"k{k}.tiles", _cells(c.tiles), line)
            rep.add(f"k{k}.status", _status(ok).lower())
            rep.check(f"k={k}", ok)
            continue
        try:
            a = alpha_for(k)
            e = odd_three_cycle(k, "E")
            ec = odd_three_cycle(k, "Ec")
        except ThreeCycleError as exc:
            rep.add(f"k{k}.status", "fail", f"k={k}: {exc}")
            rep.check(f"k={k}", False)
            continue
        base = evaluate(odd_base_word(k), e.figure.generators)
        beta = element_order(base)
        problems = check_chart(base, e.figure, expected_cycle_chart(k, a))
        ok_e, ok_ec = e.orbit == "E", ec.orbit == "Ec"
        ok_mirror = mirror(e.figure, e.perm) == ec.perm
        line = (
            f"k={k}: alpha={a}, beta={beta}, 3-cycle on E: {_status(ok_e)}; "
            f"mirrored on E^c: {_status(ok_ec and ok_mirror)}; chart: {_status(not problems)}"
        )
        rep.add(f"k{k}.alpha", a, line)
        rep.add(f"k{k}.beta", beta)
        rep.add(f"k{k}.E", _cells(e.tiles))
        rep.add(f"k{k}.Ec", _cells(ec.tiles))
        rep.add(f"k{k}.chart", "pass" if not problems else "fail")
        for p in problems:
            rep.lines.append(f"  chart problem: {p}")
        ok = ok_e and ok_ec and ok_mirror and not problems
        rep.add(f"k{k}.status", _status(ok).lower())
        rep.check(f"k={k}", ok)


def cmd_orbits(args, rep: Report) -> None:
    f = load_figure(args.figure)
    orbs = orbits(list(f.generators), f.n)
    sizes = [len(O) for O in orbs]
    rep.add("orbits", len(orbs), f"{len(orbs)} orbit(s) of sizes {', '.join(map(str, sizes))}")
    rep.add("orbit_sizes", ",".join(map(str, sizes)))
    for i, sig in enumerate(parity_signature(list(f.generators), orbs), 1):
        s = "(" + ",".join("+1" if x > 0 else "-1" for x in sig) + ")"
        site = f.sites[i - 1]
        rep.add(f"s{i}", s, f"s{i} at ({site.row},{site.col}): parity {s}")


def cmd_render(args, rep: Report) -> None:
    f = load_figure(args.figure)
    rep.lines += [f.render(), "", f.render(checkerboard=True)]
    rep.add("occupancy", f.render().replace("\n", "/"))
    rep.add("checkerboard", f.render(checkerboard=True).replace("\n", "/"))


def cmd_solve(args, rep: Report) -> None:
    f = load_figure(args.figure)
    a = load_state(args.state)
    v = is_solvable(f, a)
    rep.add("solvable", str(v.solvable).lower())
    if not v.solvable:
        rep.add("reason", v.reason, f"not solvable: {v.reason}")
        rep.failures.append(f"not solvable: {v.reason}")
        return
    w = solve(f, a)
    ok = apply_word(f, a, w).is_solved()
    text = " ".join(f"s{l.gen + 1}^{l.exp}" for l in w.letters())
    rep.add("length", len(Word(w.letters())), f"solvable; {len(Word(w.letters()))} letters (rightmost acts first)")
    rep.add("word", text, text)
    rep.add("verified", str(ok).lower())
    rep.check("solution does not solve the arrangement", ok)


COMMANDS = {
    "classify": cmd_classify,
    "verify-theorem": cmd_verify_theorem,
    "verify-identities": cmd_verify_identities,
    "verify-lemma3": cmd_verify_lemma3,
    "orbits": cmd_orbits,
    "solve": cmd_solve,
    "render": cmd_render,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rotagroup", description="Groups of rotation puzzles on k×k blocks.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "kv"), default="text")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    for name, helptext in (
        ("classify", "predict the group of a figure"),
        ("verify-theorem", "compute the group and compare with the prediction"),
        ("orbits", "orbits and per-generator parity signature"),
        ("render", "ASCII picture of a figure"),
    ):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("--figure", required=True, metavar="FILE")

    for name, helptext in (
        ("verify-identities", "check closed-form generator actions"),
        ("verify-lemma3", "certify the 3-cycle words"),
    ):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        g = sp.add_mutually_exclusive_group(required=True)
        g.add_argument("--k", type=int)
        g.add_argument("--k-range", metavar="A..B")
        g.add_argument("--charted", action="store_true")
        sp.add_argument("--extended", action="store_true", help="with --charted, add k=255 and 327")

    sp = sub.add_parser("solve", parents=[common], help="decide solvability and print a solving word")
    sp.add_argument("--figure", required=True, metavar="FILE")
    sp.add_argument("--state", required=True, metavar="FILE")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    rep = Report()
    try:
        COMMANDS[args.command](args, rep)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "kv":
        for key, value in rep.kv:
            print(f"{key}={value}")
        print(f"failures={len(rep.failures)}")
    else:
        for line in rep.lines:
            print(line)
    if rep.failures:
        print(f"FAIL: {rep.failures[0]}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
