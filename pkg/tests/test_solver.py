import itertools
import random

import pytest

from conftest import L_shape, random_word
from rotagroup.figure import rectangle
from rotagroup.solver import (
    Arrangement,
    UnsolvableError,
    apply_word,
    format_state,
    is_solvable,
    parse_state,
    solve,
)
from rotagroup.word import Word, evaluate


def scramble(f, rng, length=40):
    return apply_word(f, Arrangement.solved(f.n), random_word(len(f.sites), length, rng))


def test_arrangement_validation():
    with pytest.raises(ValueError):
        Arrangement((0, 0, 1))
    a = Arrangement((2, 0, 1))
    assert Arrangement.from_positions(a.positions) == a


def test_solved_is_solvable_with_empty_word():
    f = rectangle(3)
    a = Arrangement.solved(f.n)
    assert is_solvable(f, a).solvable
    assert len(solve(f, a)) == 0


def test_degree_mismatch():
    with pytest.raises(ValueError):
        is_solvable(rectangle(2), Arrangement.solved(5))


def test_transposition_on_4x5_is_parity_violation():
    f = rectangle(4)
    p = list(range(f.n))
    p[0], p[1] = p[1], p[0]
    v = is_solvable(f, Arrangement(tuple(p)))
    assert not v.solvable and v.reason == "parity-violation"
    with pytest.raises(UnsolvableError) as exc:
        solve(f, Arrangement(tuple(p)))
    assert exc.value.verdict.reason == "parity-violation"


def test_cross_colour_move_is_orbit_violation():
    f = rectangle(3)
    p = list(range(f.n))
    p[0], p[1] = p[1], p[0]  # (1,1) and (1,2) have different colours
    v = is_solvable(f, Arrangement(tuple(p)))
    assert v.reason == "orbit-violation"


def test_non_member_on_exceptional_group():
    f = rectangle(3)
    # a single 3-cycle on E: right orbits, even, but not in the S6 image
    a = Arrangement.from_positions(f.cycle_perm([(1, 1), (3, 1), (1, 3)]))
    assert is_solvable(f, a).reason == "non-member"


def test_single_rotation_undone():
    f = rectangle(4)
    g = Word.letter(2 % len(f.sites))
    a = apply_word(f, Arrangement.solved(f.n), g)
    assert apply_word(f, a, g ** 3).is_solved()
    assert apply_word(f, a, solve(f, a)).is_solved()


def test_pgl_five_cycle():
    f = rectangle(2)
    label_cells = [(1, 1), (2, 1), (2, 2), (2, 3), (1, 3)]
    cyc = f.cycle_perm(label_cells)
    a = Arrangement.from_positions(cyc)
    assert is_solvable(f, a).solvable
    w = solve(f, a)
    assert evaluate(w, f.generators) == ~cyc
    assert apply_word(f, a, w).is_solved()


def test_apply_word_laws(rng):
    f = rectangle(3)
    a = scramble(f, rng)
    assert apply_word(f, a, Word()) == a
    g = Word.letter(1)
    b = a
    for _ in range(4):
        b = apply_word(f, b, g)
    assert b == a
    w = random_word(2, 30, rng)
    assert apply_word(f, apply_word(f, a, w), w.inverse()) == a


def test_apply_word_physical_move():
    # a quarter turn sends the tile at (1,1) to (1,2) on the 2x3
    f = rectangle(2)
    a = apply_word(f, Arrangement.solved(6), Word.letter(0))
    assert a.placement[f.index((1, 2))] == f.index((1, 1))


def test_apply_word_bad_generator():
    with pytest.raises(ValueError):
        apply_word(rectangle(2), Arrangement.solved(6), Word.letter(7))


def test_completeness_2x3():
    f = rectangle(2)
    solvable = 0
    for images in itertools.permutations(range(6)):
        a = Arrangement(images)
        v = is_solvable(f, a)
        if v.solvable:
            solvable += 1
            assert apply_word(f, a, solve(f, a)).is_solved()
        else:
            assert v.reason in ("orbit-violation", "parity-violation", "non-member")
    assert solvable == 120


@pytest.mark.parametrize("make", [lambda: rectangle(2), lambda: rectangle(3), lambda: rectangle(4), lambda: L_shape(3)])
def test_round_trips(make):
    f = make()
    rng = random.Random(7)
    for _ in range(60):
        a = scramble(f, rng)
        assert apply_word(f, a, solve(f, a)).is_solved()


def test_trichotomy_consistency():
    f = rectangle(3)
    rng = random.Random(3)
    from rotagroup.group import schreier_sims

    b = schreier_sims(list(f.generators))
    for _ in range(200):
        images = list(range(f.n))
        rng.shuffle(images)
        a = Arrangement(tuple(images))
        v = is_solvable(f, a)
        assert v.solvable == b.contains(a.positions)


def test_state_round_trip(rng):
    f = rectangle(3)
    a = scramble(f, rng)
    text = format_state(a)
    assert text.startswith("perm\n")
    assert parse_state(text) == a


@pytest.mark.parametrize("text", ["1 2 3", "perm 1 1 2", "perm a b", ""])
def test_state_errors(text):
    with pytest.raises(ValueError):
        parse_state(text)
